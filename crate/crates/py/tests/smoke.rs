use std::ffi::CString;

use pyo3::prelude::*;
use pystirling::pystirling;

#[test]
fn python_smoke_script() {
    pyo3::append_to_inittab!(pystirling);
    Python::initialize();
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../python/smoke_test.py");
    let code = CString::new(std::fs::read_to_string(path).unwrap()).unwrap();
    Python::attach(|py| {
        if let Err(e) = py.run(&code, None, None) {
            e.display(py);
            panic!("smoke script failed: {e}");
        }
    });
}
