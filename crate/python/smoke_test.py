"""Smoke test for the unexpected_curves extension.

Install first with `pip install --no-build-isolation -e crates/python`, then
run `python3 python/smoke_test.py`.
"""

import json

import unexpected_curves as u


def main():
    assert u.parse_scalar("3/2") == "3/2"
    assert u.parse_scalar("1 + z(4)*z(4)") == "0"
    assert u.parse_scalar("z(3)^2") == "-1 - z(3)"
    try:
        u.parse_scalar("1/0")
    except ValueError:
        pass
    else:
        raise AssertionError("division by zero accepted")

    names = {c["name"] for c in u.catalog()}
    assert {"fermat", "B3", "hessian"} <= names

    b3 = u.Arrangement.catalog("B3")
    assert len(b3) == 9
    r, witness = b3.mdr()
    assert r == 3 and len(witness) == 3
    inv = b3.invariants()
    assert inv["tau"] == 49 and inv["is_free"] and inv["exponents"] == [3, 5]
    rep = b3.unexpected()
    assert rep["admits_unexpected"] and rep["degree_range"] == [4, 4] and rep["irreducible"]

    base, equation = b3.curve(4, seed=1)
    assert len(base) == 3 and "x" in equation

    o = b3.oracle(4)
    assert o["unexpected"] and o["generic_h0"] == 1
    assert b3.cross_validate()["agree"]

    report = json.loads(b3.report(seed=7))
    assert report["schema_version"] == u.SCHEMA_VERSION
    assert report == json.loads(b3.report(seed=7))

    f5 = u.Arrangement.catalog("fermat", m=5)
    assert f5.mdr()[0] == 6 and not f5.is_supersolvable()
    g = f5.add_generic_line(seed=3)
    assert len(g) == 16 and g.max_multiplicity() == f5.max_multiplicity()
    t = u.Arrangement.catalog("hessian").add_line_through_max_point()
    assert t.max_multiplicity() == 5

    a2 = u.Arrangement.catalog("A2", m=3)
    assert a2.modular_points() == [["0", "0", "1"]]
    assert len(u.Arrangement.catalog("M", m=5).delete_line(0)) == 11

    tri = u.Arrangement([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]])
    assert tri.mdr()[0] == 1 and tri.defining_polynomial() == "x*y*z"
    pts = u.Arrangement.from_points(tri.dual_points())
    assert pts == tri
    assert u.Arrangement.parse(tri.to_text()) == tri

    print("smoke test passed")


if __name__ == "__main__":
    main()
