use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(code: &std::ffi::CStr) {
    Python::attach(|py| {
        let m = PyModule::new(py, "rrspace_py").unwrap();
        rrspace_py::rrspace_py(&m).unwrap();
        let g = PyDict::new(py);
        g.set_item("rr", m).unwrap();
        py.run(code, Some(&g), None).unwrap_or_else(|e| panic!("{e}"));
    });
}

#[test]
fn example_space() {
    run(c"
c = rr.Curve('GF(2)', 'y^3 + x^3 + x^2*z')
d = c.place('(1:0:1)')
b = c.rr_basis(d)
assert (b.denominator, b.numerators) == ('y', ['y', 'x'])
assert c.verify(d, b) == []
assert str(c.adjoint()) == '2*P((0:0:1),0)' and c.genus() == 0
");
}

#[test]
fn codes_and_errors() {
    run(c"
line = rr.Curve('GF(5)', 'y')
pts = ['(%d:0:1)' % a for a in range(4)]
assert line.ag_generator_matrix(line.place('(1:0:0)', 2), pts) == rr.rs_generator_matrix('GF(5)', 3, [0, 1, 2, 3])
s = rr.shamir_share('GF(101)', 5, 2, [1, 2, 3], seed=1)
assert rr.shamir_reconstruct('GF(101)', s[:2], 2) == '5'
try:
    line.place('(1:1:1)')
    raise AssertionError('point off the curve accepted')
except rr.RRSpaceError:
    pass
");
}
