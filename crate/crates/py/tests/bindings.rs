use pyo3::prelude::*;
use pyo3::types::PyDict;

use pycorrwish::pycorrwish;

#[test]
fn module_functions_from_embedded_python() {
    pyo3::append_to_inittab!(pycorrwish);
    Python::initialize();
    Python::attach(|py| -> PyResult<()> {
        let m = py.import("pycorrwish")?;
        let f2: Vec<f64> = m.getattr("tw_cdf")?.call1((2u8, vec![0.0]))?.extract()?;
        assert!((f2[0] - 0.96937).abs() < 1e-5);

        // one eigenvalue, n = 2: P(2, t) = 1 - e^{-t}(1 + t)
        let gap: Vec<f64> = m.getattr("gap_exact_beta2")?.call1(("max_below_t", vec![1.0], 2usize, vec![1.5]))?.extract()?;
        assert!((gap[0] - (1.0 - (-1.5f64).exp() * 2.5)).abs() < 1e-12);

        let params = m.getattr("johnstone_params")?.call1((300usize, 100usize, "min"))?;
        let params = params.cast::<PyDict>()?;
        let nu: usize = params.get_item("nu")?.unwrap().extract()?;
        assert_eq!(nu, 200);

        let e = m.getattr("tw_cdf")?.call1((3u8, vec![0.0])).unwrap_err();
        assert!(e.is_instance(py, &m.getattr("CorrwishError")?));
        Ok(())
    })
    .unwrap();
}
