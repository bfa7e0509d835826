"""Smoke test for the rrspace_py extension module.

Build and install first, for example:
    pip install maturin
    maturin develop -m crates/py/Cargo.toml
"""

import rrspace_py as rr


def main():
    cusp = rr.Curve("GF(2)", "y^3 + x^3 + x^2*z")
    assert cusp.degree == 3
    assert cusp.singular_points() == ["(0:0:1)"]
    assert str(cusp.adjoint()) == "2*P((0:0:1),0)"
    assert cusp.genus() == 0
    assert cusp.places_at("(0:0:1)") == [("P((0:0:1),0)", 1, 3)]
    assert cusp.valuation("(0:0:1)", "x") == 3
    assert cusp.valuation("(0:0:1)", "y") == 2
    assert str(cusp.divisor_of("y")) == "2*P((0:0:1),0) + 1*P((1:0:1),0)"

    d = cusp.place("(1:0:1)")
    basis = cusp.rr_basis(d)
    assert basis.denominator == "y"
    assert basis.numerators == ["y", "x"]
    assert len(basis) == 2
    assert cusp.verify(d, basis) == []
    assert cusp.divisor("point=(1:0:1) mult=1") == d

    d2 = d + d
    assert d2.degree == 2 and (d2 - d) == d and (-d).degree == -1

    line = rr.Curve("GF(5)", "y")
    inf2 = line.place("(1:0:0)", 2)
    pts = ["(0:0:1)", "(1:0:1)", "(2:0:1)", "(3:0:1)"]
    assert line.ag_generator_matrix(inf2, pts) == rr.rs_generator_matrix("GF(5)", 3, [0, 1, 2, 3])

    assert rr.newton_polygon("GF(101)", "x^3*y + 2*x*y^2 - x^2*y^4 + y^5 + 3*x*y^6 + y^7") == [
        (1, 3), (2, 1), (5, 0), (7, 0)]
    assert rr.newton_polynomial("GF(101)", "x^3*y + 2*x*y^2 - x^2*y^4 + y^5 + 3*x*y^6 + y^7",
                                (2, 1), (5, 0)) == "y^3 + 2*x"

    shares = rr.shamir_share("GF(101)", 42, 3, [1, 2, 3, 4, 5], seed=7)
    assert rr.shamir_reconstruct("GF(101)", [(int(a), int(b)) for a, b in shares[1:4]], 3) == "42"

    code, out, _ = rr.run_cli(["adjoint", "--help"])
    assert code == 0 and "adjoint" in out.lower()

    try:
        rr.Curve("GF(6)", "x")
    except rr.RRSpaceError:
        pass
    else:
        raise AssertionError("GF(6) accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
