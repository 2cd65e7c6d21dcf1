"""Smoke test for the pycorrwish extension module."""

import json
import math
import tempfile
from pathlib import Path

from scipy.special import gammainc

import pycorrwish as cw


def close(a, b, tol):
    assert abs(a - b) <= tol, f"{a} vs {b}"


def main():
    # F2(0) and the moments of f2
    close(cw.tw_cdf(2, [0.0])[0], 0.96937, 1e-5)
    mean, var = cw.tw_moments(2)
    close(mean, -1.7711, 2e-4)
    close(var, 0.8132, 2e-4)
    cdf = cw.tw_cdf(1, [-3.0, -1.0, 1.0, 3.0])
    assert all(x < y for x, y in zip(cdf, cdf[1:]))
    assert all(v >= 0.0 for v in cw.tw_pdf(4, [-4.0, -2.0, 0.0], "sqrt2"))

    # largest-eigenvalue centering (1 + sqrt(p/n))^2 n
    s = cw.johnstone_params(300, 100)
    close(s["mu"], 300 * (1 + math.sqrt(1 / 3)) ** 2, 1e-9)

    # one eigenvalue: lower regularized incomplete gamma
    ts = [0.5, 1.0, 3.0, 7.0]
    got = cw.gap_exact_beta2("max_below_t", [1.0], 4, ts)
    for t, v in zip(ts, got):
        close(v, gammainc(4, t), 1e-10)

    # the two exact routes agree
    value, imag = cw.gap_max_matrix_model([0.8, 1.2], 2, 3.0)
    exact = cw.gap_exact_beta2("max_below_t", [0.8, 1.2], 2, [3.0])[0]
    close(value, exact, 1e-3 * exact)
    assert imag <= 1e-6

    report = json.loads(cw.variance_condition([1.0] * 10, 30))
    assert report["pass"]

    config = {
        "beta": 2, "p": 8, "n": 24, "trials": 200,
        "spectrum": {"kind": "identity"}, "seed": 5,
    }
    with tempfile.TemporaryDirectory() as tmp:
        summary = json.loads(cw.simulate(json.dumps(config), tmp, 2))
        assert (Path(tmp) / "samples.csv").exists()
    close(summary["gamma_squared"], 1 / 3, 1e-12)
    assert [e["edge"] for e in summary["edges"]] == ["max", "min"]

    try:
        cw.tw_cdf(3, [0.0])
    except cw.CorrwishError:
        pass
    else:
        raise AssertionError("beta = 3 accepted")

    print(f"pycorrwish {cw.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
