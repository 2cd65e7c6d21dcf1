//! Hastings-McLeod solution of Painlevé II, `q'' = s q + 2 q^3`, `q ~ Ai(s)`
//! as `s -> +inf`.
//!
//! The solution is the separatrix between solutions that blow up and
//! solutions that oscillate, so forward shooting is hopeless and even the
//! leftward initial value problem loses about `exp((2√2/3)|s|^{3/2})` in
//! accuracy on the negative axis. We therefore
//!
//! 1. integrate leftward from `s_max` with a high-order Taylor method down
//!    to [`JOIN`], where the amplification is still harmless, and
//! 2. solve the remaining stretch `[s_min, JOIN]` as a two-point boundary
//!    value problem (Numerov discretization, Newton relaxation) with the
//!    asymptotic expansion `q ~ sqrt(-s/2)` as the left boundary value.
//!
//! The running integrals needed by the Tracy-Widom laws are accumulated
//! from the right with the end-corrected trapezoid rule.

use super::airy::{airy_unchecked, AIRY_MAX};
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

/// Where the initial value problem hands over to the boundary value solve.
pub const JOIN: f64 = -5.0;
const BLOW_UP: f64 = 1e3;
const TAYLOR_ORDER: usize = 24;

/// Tabulated Hastings-McLeod solution on a uniform descending grid.
#[derive(Clone, Debug)]
pub struct PainleveSolution {
    pub s_max: f64,
    pub step: f64,
    /// Abscissae, `grid[0] = s_max` descending to `s_min`.
    pub grid: Vec<f64>,
    pub q: Vec<f64>,
    pub q_prime: Vec<f64>,
    /// `∫_s^∞ q dx`.
    pub int_q: Vec<f64>,
    /// `∫_s^∞ q² dx`.
    pub int_q2: Vec<f64>,
    /// `∫_s^∞ (x - s) q² dx`.
    pub int_q2_weighted: Vec<f64>,
}

/// The quantities interpolated at one abscissa.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PainlevePoint {
    pub q: f64,
    pub int_q: f64,
    pub int_q2: f64,
    pub int_q2_weighted: f64,
}

impl PainleveSolution {
    pub fn s_min(&self) -> f64 {
        *self.grid.last().expect("non-empty grid")
    }

    /// Leading left asymptotics `sqrt(-s/2) (1 + 1/(8 s^3) - 73/(128 s^6))`.
    pub fn left_asymptotic(s: f64) -> f64 {
        let s3 = s * s * s;
        (-s / 2.0).sqrt() * (1.0 + 1.0 / (8.0 * s3) - 73.0 / (128.0 * s3 * s3))
    }

    /// Quantities at `s`. Inside the grid they come from cubic Hermite
    /// interpolation; outside, from the Airy tail on the right and the
    /// `sqrt(-s/2)` asymptotics on the left.
    pub fn at(&self, s: f64) -> PainlevePoint {
        if s >= self.s_max {
            return right_tail(s);
        }
        let s_min = self.s_min();
        if s <= s_min {
            return self.left_extension(s);
        }
        let pos = (self.s_max - s) / self.step;
        let i = (pos.floor() as usize).min(self.grid.len() - 2);
        let t = pos - i as f64;
        let h = -self.step; // grid runs downward
        let herm = |y0: f64, y1: f64, d0: f64, d1: f64| {
            let t2 = t * t;
            let t3 = t2 * t;
            (2.0 * t3 - 3.0 * t2 + 1.0) * y0
                + (t3 - 2.0 * t2 + t) * h * d0
                + (-2.0 * t3 + 3.0 * t2) * y1
                + (t3 - t2) * h * d1
        };
        let (q0, q1) = (self.q[i], self.q[i + 1]);
        PainlevePoint {
            q: herm(q0, q1, self.q_prime[i], self.q_prime[i + 1]),
            int_q: herm(self.int_q[i], self.int_q[i + 1], -q0, -q1),
            int_q2: herm(self.int_q2[i], self.int_q2[i + 1], -q0 * q0, -q1 * q1),
            int_q2_weighted: herm(
                self.int_q2_weighted[i],
                self.int_q2_weighted[i + 1],
                -self.int_q2[i],
                -self.int_q2[i + 1],
            ),
        }
    }

    fn left_extension(&self, s: f64) -> PainlevePoint {
        let last = self.grid.len() - 1;
        let s0 = self.grid[last];
        let (i0, v0, u0) = (self.int_q[last], self.int_q2[last], self.int_q2_weighted[last]);
        // q² ≈ -x/2 on [s, s0]
        let dv = (s * s - s0 * s0) / 4.0;
        let di = std::f64::consts::SQRT_2 / 3.0 * ((-s).powf(1.5) - (-s0).powf(1.5));
        // ∫_s^{s0} v(x) dx with v(x) = v0 + (x² - s0²)/4
        let du = v0 * (s0 - s) + ((s0.powi(3) - s.powi(3)) / 3.0 - s0 * s0 * (s0 - s)) / 4.0;
        PainlevePoint { q: Self::left_asymptotic(s), int_q: i0 + di, int_q2: v0 + dv, int_q2_weighted: u0 + du }
    }
}

fn right_tail(s: f64) -> PainlevePoint {
    if s >= AIRY_MAX {
        return PainlevePoint { q: 0.0, int_q: 0.0, int_q2: 0.0, int_q2_weighted: 0.0 };
    }
    let (a, ap) = airy_unchecked(s);
    PainlevePoint {
        q: a,
        int_q: airy_tail_integral(s),
        int_q2: ap * ap - s * a * a,
        int_q2_weighted: (2.0 * s * s * a * a - 2.0 * s * ap * ap - a * ap) / 3.0,
    }
}

/// `∫_s^∞ Ai(x) dx`, truncated at the end of the Airy range.
fn airy_tail_integral(s: f64) -> f64 {
    if s >= AIRY_MAX {
        return 0.0;
    }
    let gl = GaussLegendre::new(30);
    let panels = ((AIRY_MAX - s) * 2.0).ceil() as usize;
    gl.composite(s, AIRY_MAX, panels, |x| airy_unchecked(x).0)
}

/// One Taylor step of `q'' = s q + 2 q^3` from `(s0, q, q')` by `h`.
fn taylor_step(s0: f64, q: f64, dq: f64, h: f64) -> (f64, f64) {
    let n = TAYLOR_ORDER;
    let mut a = [0.0f64; TAYLOR_ORDER + 1];
    let mut sq = [0.0f64; TAYLOR_ORDER + 1];
    a[0] = q;
    a[1] = dq;
    for k in 0..=(n - 2) {
        // squares up to index k are needed; sq[k] uses a[0..=k]
        sq[k] = (0..=k).map(|i| a[i] * a[k - i]).sum();
        let cube: f64 = (0..=k).map(|i| sq[i] * a[k - i]).sum();
        let lin = s0 * a[k] + if k >= 1 { a[k - 1] } else { 0.0 };
        a[k + 2] = (lin + 2.0 * cube) / ((k + 2) as f64 * (k + 1) as f64);
    }
    let mut val = 0.0;
    let mut der = 0.0;
    for k in (0..=n).rev() {
        val = val * h + a[k];
    }
    for k in (1..=n).rev() {
        der = der * h + k as f64 * a[k];
    }
    (val, der)
}

/// Integrate the initial value problem from `(s_start, q0, dq0)` to `s_end`
/// with step `step`, returning `(s, q, q')` at every grid point. Fails with
/// [`Error::BlowUp`] once `|q|` exceeds 1e3.
pub fn shoot(s_start: f64, s_end: f64, step: f64, q0: f64, dq0: f64) -> Result<Vec<(f64, f64, f64)>> {
    let steps = ((s_end - s_start).abs() / step).round().max(1.0) as usize;
    let h = (s_end - s_start) / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    let (mut q, mut dq) = (q0, dq0);
    out.push((s_start, q, dq));
    for i in 0..steps {
        let s = s_start + h * i as f64;
        let (nq, ndq) = taylor_step(s, q, dq, h);
        q = nq;
        dq = ndq;
        let s_next = s_start + h * (i + 1) as f64;
        if !q.is_finite() || q.abs() > BLOW_UP {
            return Err(Error::BlowUp { s: s_next, q });
        }
        out.push((s_next, q, dq));
    }
    Ok(out)
}

/// Solve on `[s_min, s_max]` with grid spacing at most `step`.
pub fn solve_hastings_mcleod(s_min: f64, s_max: f64, step: f64) -> Result<PainleveSolution> {
    if !(6.0..=AIRY_MAX).contains(&s_max) {
        return Err(Error::InvalidConfig(format!("s_max = {s_max} must lie in [6, {AIRY_MAX}]")));
    }
    if !(-40.0..=-10.0).contains(&s_min) {
        return Err(Error::InvalidConfig(format!("s_min = {s_min} must lie in [-40, -10]")));
    }
    if !(step > 0.0 && step <= 0.01) {
        return Err(Error::InvalidConfig(format!("step = {step} must lie in (0, 0.01]")));
    }
    let n_join = ((s_max - JOIN) / step).ceil() as usize;
    let h = (s_max - JOIN) / n_join as f64;
    let n_total = n_join + ((JOIN - s_min) / h).ceil() as usize;
    let grid: Vec<f64> = (0..=n_total).map(|i| s_max - h * i as f64).collect();

    let (a, ap) = airy_unchecked(s_max);
    let ivp = shoot(s_max, JOIN, h, a, ap)?;
    let mut q = vec![0.0; grid.len()];
    let mut dq = vec![0.0; grid.len()];
    for (i, &(_, qi, dqi)) in ivp.iter().enumerate() {
        q[i] = qi;
        dq[i] = dqi;
    }

    relax_left(&grid, &mut q, n_join, h)?;
    left_derivatives(&mut dq, &q, n_join, h);

    let tail = right_tail(s_max);
    let mut int_q = vec![0.0; grid.len()];
    let mut int_q2 = vec![0.0; grid.len()];
    let mut int_w = vec![0.0; grid.len()];
    int_q[0] = tail.int_q;
    int_q2[0] = tail.int_q2;
    int_w[0] = tail.int_q2_weighted;
    let c = h * h / 12.0;
    for i in 0..grid.len() - 1 {
        let (q0, q1, d0, d1) = (q[i], q[i + 1], dq[i], dq[i + 1]);
        int_q[i + 1] = int_q[i] + 0.5 * h * (q0 + q1) - c * (d0 - d1);
        int_q2[i + 1] = int_q2[i] + 0.5 * h * (q0 * q0 + q1 * q1) - c * (2.0 * q0 * d0 - 2.0 * q1 * d1);
        int_w[i + 1] = int_w[i] + 0.5 * h * (int_q2[i] + int_q2[i + 1]) - c * (-q0 * q0 + q1 * q1);
    }

    Ok(PainleveSolution {
        s_max,
        step: h,
        grid,
        q,
        q_prime: dq,
        int_q,
        int_q2,
        int_q2_weighted: int_w,
    })
}

/// Numerov discretization on grid indices `join..=last`, Dirichlet data at
/// both ends, solved by Newton iteration with a tridiagonal Jacobian.
fn relax_left(grid: &[f64], q: &mut [f64], join: usize, h: f64) -> Result<()> {
    let last = grid.len() - 1;
    q[last] = PainleveSolution::left_asymptotic(grid[last]);
    // initial guess: asymptotic profile shifted to match the join value
    let offset = q[join] - PainleveSolution::left_asymptotic(grid[join]);
    let span = grid[join] - grid[last];
    for i in join + 1..last {
        let w = (grid[i] - grid[last]) / span;
        q[i] = PainleveSolution::left_asymptotic(grid[i]) + w * offset;
    }
    let m = last - join - 1; // interior unknowns
    if m == 0 {
        return Ok(());
    }
    let c = h * h / 12.0;
    let force = |s: f64, y: f64| s * y + 2.0 * y * y * y;
    let dforce = |s: f64, y: f64| s + 6.0 * y * y;
    let mut lower = vec![0.0; m];
    let mut diag = vec![0.0; m];
    let mut upper = vec![0.0; m];
    let mut rhs = vec![0.0; m];
    for _ in 0..50 {
        for k in 0..m {
            let i = join + 1 + k;
            let (fm, f0, fp) = (force(grid[i - 1], q[i - 1]), force(grid[i], q[i]), force(grid[i + 1], q[i + 1]));
            rhs[k] = -(q[i + 1] - 2.0 * q[i] + q[i - 1] - c * (fp + 10.0 * f0 + fm));
            diag[k] = -2.0 - 10.0 * c * dforce(grid[i], q[i]);
            lower[k] = 1.0 - c * dforce(grid[i - 1], q[i - 1]);
            upper[k] = 1.0 - c * dforce(grid[i + 1], q[i + 1]);
        }
        let delta = thomas(&lower, &diag, &upper, &rhs);
        let mut worst = 0.0f64;
        for (k, d) in delta.iter().enumerate() {
            q[join + 1 + k] += d;
            worst = worst.max(d.abs());
        }
        if !worst.is_finite() {
            return Err(Error::BlowUp { s: grid[join], q: worst });
        }
        if worst < 1e-14 {
            return Ok(());
        }
    }
    Err(Error::BlowUp { s: grid[join], q: f64::NAN })
}

fn thomas(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = upper[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let den = diag[i] - lower[i] * c[i - 1];
        c[i] = upper[i] / den;
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / den;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

/// Fourth-order finite differences for q' on the relaxed stretch. The grid
/// runs downward, hence the sign flip.
fn left_derivatives(dq: &mut [f64], q: &[f64], join: usize, h: f64) {
    let last = q.len() - 1;
    for i in join + 1..=last {
        dq[i] = if i + 2 <= last {
            // index increases as s decreases
            -(-q[i + 2] + 8.0 * q[i + 1] - 8.0 * q[i - 1] + q[i - 2]) / (12.0 * h)
        } else {
            // one-sided five-point stencil toward larger s
            let at = |o: usize| q[i - o];
            (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4)) / (12.0 * h)
        };
    }
}
