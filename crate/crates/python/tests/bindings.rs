use pyo3::prelude::*;
use pyo3::py_run;

#[test]
fn module_surface_from_python() {
    Python::initialize();
    Python::attach(|py| {
        let m = pyo3::wrap_pymodule!(lrcreal_py::lrcreal_py)(py);
        py_run!(
            py,
            m,
            r#"
            third = m.ExactReal("1/3")
            sixth = m.ExactReal("1/6")
            assert third.digits(6) == "LRLRLR"
            assert m.affine("1", "1", "0", third, sixth, checked=False).digits(8) == "CCCCCCCC"
            assert third.average(sixth).contains("1/4", 40)
            assert m.prefix_bounds("CLL") == ("1/4", "3/8")
            assert m.decide(0, 1, 0, 1, 1, 2) == "R"
            assert m.eval("avg(1/3, 1/6)", 3, "interval") == "[3/16, 5/16]"
            assert m.fib(6) == [1, 1, 2, 3, 5, 8]
            try:
                m.eval("avg(1/3", 6)
                raise AssertionError("no error")
            except ValueError as e:
                assert "position 8" in str(e)
            "#
        );
    });
}
