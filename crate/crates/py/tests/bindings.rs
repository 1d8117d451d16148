use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module(code: &str) {
    Python::initialize();
    Python::attach(|py| {
        let module = pyo3::wrap_pymodule!(cyclequiv_py::cyclequiv_py)(py);
        let globals = PyDict::new(py);
        globals.set_item("cq", module).unwrap();
        let code = std::ffi::CString::new(code).unwrap();
        if let Err(e) = py.run(&code, Some(&globals), None) {
            e.display(py);
            panic!("python check failed");
        }
    });
}

#[test]
fn hom_dims() {
    with_module(
        r#"
u = cq.NilpRep(4, [(1, 4, 2), (4, 2)])
x = cq.NilpRep(4, [(3, 5), (4, 5)])
assert cq.hom_dim(u, u) == 5
assert cq.hom_dim(x, x) == 6
assert cq.hom_dim_matrix(u, u) == 5
assert u.dim_vector() == [2, 2, 3, 3]
assert cq.NilpRep.from_json(u.to_json()) == u
"#,
    );
}

#[test]
fn flag_invariants() {
    with_module(
        r#"
assert cq.poincare(n=2) == [1, 2, 5, 4, 3]
assert cq.euler(n=3) == 226
assert cq.poincare(n=2, corank=[1, 1]) == [1, 2, 2]
assert cq.count_points(2, n=2) == sum(c * 2**k for k, c in enumerate(cq.poincare(n=2)))
assert len(cq.fixed_points(n=2, omega=2)) == 65
assert cq.poincare(n=2, method="tangent") == cq.poincare(n=2)
assert len(cq.components(4)) == 19
assert cq.count_grand_motzkin(10) == 8953
"#,
    );
}

#[test]
fn dellac() {
    with_module(
        r#"
configs = cq.dellac_enumerate(2)
assert len(configs) == 15
assert all(cq.dellac_validate(c)[0] for c in configs)
assert len(cq.dellac_to_cell(configs[0])) == 4
try:
    cq.poincare(n=0)
except ValueError:
    pass
else:
    raise AssertionError("expected ValueError")
"#,
    );
}
