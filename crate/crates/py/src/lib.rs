use pyo3::prelude::*;

#[pymodule]
fn theta_spanner(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
