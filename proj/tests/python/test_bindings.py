import pytest

import nambu


def test_star_of_position_and_momentum():
    x = nambu.expr(1, "x[1]")
    p = nambu.expr(1, "p[1]")
    assert str(nambu.star(x, p)) == "x1*p1 + (1/2)*i*hbar"
    assert nambu.moyal(x, p) == nambu.expr(1, "1")
    assert nambu.poisson(x, p) == nambu.expr(1, "1")


def test_brackets_on_two_dimensional_phase_space():
    e = [nambu.expr(2, t) for t in ("x[1]", "p[1]", "x[2]", "p[2]")]
    assert nambu.nambu_jacobian(e) == nambu.expr(2, "1")
    assert nambu.qnb(e) == nambu.expr(2, "-2*hbar*hbar")
    assert nambu.qnb(e) == nambu.qnb(e, naive=True)
    assert nambu.jordan(e) == nambu.jordan(e, naive=True)
    assert nambu.symplectic_trace(e[:2], 2) == nambu.expr(2, "1")


def test_sphere_model_charges_and_correction():
    m = nambu.build_model("sphere:2")
    assert m.n == 2
    assert m.eval("mb(Lx,Ly)") == m.charge("Lz")
    assert m.eval("mb(Lx,Hqm)").is_zero()
    correction = m.eval("Hqm - H")
    assert correction == nambu.expr(2, "hbar*hbar/8") * (
        nambu.expr(2, "1 - x[1]*x[1] - x[2]*x[2]").inverse() - nambu.expr(2, "3")
    )
    assert m.h_quantum.substitute_hbar_zero() == m.h_classical
    assert set(m.conserved) <= set(m.charges)


def test_errors_map_to_python_exceptions():
    with pytest.raises(nambu.ExprSyntaxError) as info:
        nambu.expr(1, "pb(x[1],")
    assert info.value.begin == 8
    with pytest.raises(nambu.NambuError):
        nambu.expr(1, "divh(x[1],1)")
    with pytest.raises(nambu.NambuError):
        nambu.build_model("torus:2")
    with pytest.raises(nambu.NambuError):
        nambu.qnb([])


def test_catalog_report():
    ids = nambu.catalog_ids()
    assert len(ids) == len(set(ids)) == 47
    report = nambu.check(id="S2-*")
    assert report["summary"] == {"pass": 7, "fail": 0, "error": 0}
    assert all(r["elapsed_ms"] == 0 for r in report["results"])
    perturbed = nambu.check(id="S2-03", perturb=True)
    assert perturbed["results"][0]["status"] == "fail"
    with pytest.raises(nambu.NambuError):
        nambu.check(id="ZZ-*")
