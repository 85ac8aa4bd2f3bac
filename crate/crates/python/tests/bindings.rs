use pyo3::prelude::*;

use unexpected_curves::unexpected_curves;

fn with_module<R>(f: impl FnOnce(Python<'_>, &Bound<'_, PyModule>) -> PyResult<R>) -> R {
    static INIT: std::sync::Once = std::sync::Once::new();
    INIT.call_once(|| {
        pyo3::append_to_inittab!(unexpected_curves);
        Python::initialize();
    });
    Python::attach(|py| {
        let m = py.import("unexpected_curves").unwrap();
        f(py, &m).unwrap()
    })
}

#[test]
fn b3_through_python() {
    with_module(|_, m| {
        let a = m.getattr("Arrangement")?.call_method1("catalog", ("B3",))?;
        let (r, _): (u32, (String, String, String)) = a.call_method0("mdr")?.extract()?;
        assert_eq!(r, 3);
        let rep = a.call_method0("unexpected")?;
        let range: Vec<u64> = rep.get_item("degree_range")?.extract()?;
        assert_eq!(range, vec![4, 4]);
        Ok(())
    })
}

#[test]
fn errors_map_to_python_exceptions() {
    with_module(|py, m| {
        let e = m.call_method1("parse_scalar", ("1/(2-2)",)).unwrap_err();
        assert!(e.is_instance_of::<pyo3::exceptions::PyValueError>(py));
        let cat = m.getattr("Arrangement")?;
        let e = cat.call_method1("catalog", ("nosuch",)).unwrap_err();
        assert!(e.is_instance_of::<pyo3::exceptions::PyValueError>(py));
        let a = cat.call_method1("catalog", ("fermat",));
        assert!(a.is_err());
        Ok(())
    })
}

#[test]
fn keyword_parameters() {
    with_module(|_, m| {
        let kw = pyo3::types::PyDict::new(m.py());
        kw.set_item("m", 4)?;
        let a = m
            .getattr("Arrangement")?
            .call_method("catalog", ("fermat",), Some(&kw))?;
        assert_eq!(a.len()?, 12);
        let inv = a.call_method0("invariants")?;
        let tau: u64 = inv.get_item("tau")?.extract()?;
        assert_eq!(tau, 91);
        Ok(())
    })
}
