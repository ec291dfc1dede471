import numpy as np
import pytest

from kenmotsu.catalog import coordinate_projection, product_projection, second_projection
from kenmotsu.contact import AlmostContactStructure, flat_kaehler, standard_complex
from kenmotsu.geometry import VectorField, sample_points
from kenmotsu.oneill import ONeillContext, mean_curvature
from kenmotsu.submersion import XiPosition
from kenmotsu.suite import (
    Hypotheses,
    RunConfig,
    run_all,
    run_fibers_not_geodesic,
    run_integrability_equivalence,
    run_lemma_horAT,
    run_mean_curvature_remark,
    run_nonexistence_wpk,
    run_not_harmonic,
    run_totally_geodesic_horizontal,
)
from kenmotsu.warped import make_warped, interval


@pytest.fixture(scope="module")
def report2():
    return run_all(RunConfig("example2", samples=30))


@pytest.fixture(scope="module")
def report3():
    return run_all(RunConfig("example3", samples=30))


def by_name(report):
    return {c.name: c for c in report.checks}


def test_example2_full_pass(report2):
    assert report2.summary == "pass"
    recs = by_name(report2)
    assert recs["dimension_theorem"].details["n"] == 3
    assert recs["mean_curvature_xi"].passed
    assert recs["not_harmonic"].mode == "witness" and recs["not_harmonic"].max_residual > 1.9
    assert not recs["no_riemannian_submersion"].applicable
    assert recs["integrability_pivot"].details["Corollary 1"] < 1e-9
    assert recs["horizontal_totally_geodesic"].details["consistent"]
    assert report2.profile["xi"] == "horizontal"


def test_example3_conformal_profile(report3):
    assert report3.summary == "pass"
    recs = by_name(report3)
    assert recs["riemannian_submersion"].informational and not recs["riemannian_submersion"].passed
    assert recs["dilation_reference"].passed
    assert recs["no_riemannian_submersion"].passed
    assert recs["reeb_obstruction"].passed
    for name in ("lemma3_A_xi", "integrability_pivot", "mean_curvature_xi", "dimension_theorem"):
        assert not recs[name].applicable


def test_require_riemannian_flips_verdict():
    rep = run_all(RunConfig("example3", samples=10, require_riemannian=True))
    assert rep.summary == "fail"
    assert [c.name for c in rep.failures()] == ["riemannian_submersion"]


def test_structure_only_certificate():
    rep = run_all(RunConfig("example1", samples=20))
    assert rep.summary == "pass"
    assert [c.name for c in rep.checks] == ["almost_contact", "kenmotsu", "div_xi"]


def test_unattainable_tolerance_fails():
    rep = run_all(RunConfig("example2", samples=5, tol=1e-20))
    assert rep.summary == "fail"


def test_reports_are_deterministic():
    a = run_all(RunConfig("example2", samples=8, seed=3)).to_json()
    b = run_all(RunConfig("example2", samples=8, seed=3)).to_json()
    assert a == b
    c = run_all(RunConfig("example2", samples=8, seed=4)).to_json()
    assert a != c


def test_every_record_carries_an_anchor(report2, report3):
    for rep in (report2, report3):
        assert all(c.anchor for c in rep.checks)


def test_seven_dimensional_example(ken7):
    K, F = ken7
    S = K.structure
    pts = sample_points(S.manifold, 12, seed=21)
    hyp = Hypotheses.evaluate(F, S, pts)
    assert hyp.kenmotsu and hyp.anti_invariant and hyp.riemannian
    assert hyp.xi is XiPosition.HORIZONTAL and not hyp.mu_span_xi
    recs = run_lemma_horAT(F, S, pts, hyp=hyp)
    assert [r.anchor for r in recs] == ["Eq.(IKE1)", "Eq.(IKE2)", "Eq.(IKE4)"]
    assert all(r.passed for r in recs)
    piv = run_integrability_equivalence(F, S, pts, hyp=hyp)[0]
    assert piv.passed and piv.details["max |C|"] > 0.1
    assert run_totally_geodesic_horizontal(F, S, pts, hyp=hyp).passed
    assert run_mean_curvature_remark(F, S, pts, hyp=hyp).passed


def test_three_dimensional_example(ken3):
    K, F = ken3
    S = K.structure
    pts = sample_points(S.manifold, 12, seed=22)
    hyp = Hypotheses.evaluate(F, S, pts)
    rec = run_mean_curvature_remark(F, S, pts, hyp=hyp)
    assert rec.passed and rec.details["g(H,xi) min"] == pytest.approx(-1.0, abs=1e-9)
    fib = run_fibers_not_geodesic(F, S, pts, hyp=hyp)
    assert all(r.passed for r in fib)
    tau = run_not_harmonic(F, S, pts, hyp=hyp)
    assert tau.passed and tau.max_residual == pytest.approx(1.0, abs=1e-6)


def test_product_projection_has_minimal_fibers():
    W, P = product_projection(4)
    ctx = ONeillContext(P)
    for p in sample_points(W.manifold, 5):
        np.testing.assert_allclose(mean_curvature(ctx, p), 0, atol=1e-9)


def test_gates(ex2, ex3, ken, pts5):
    S = ken.structure
    proj = coordinate_projection(ken)
    recs = run_lemma_horAT(proj, S, pts5)
    assert all(not r.applicable and "anti-invariant" in r.note for r in recs)
    assert all(not r.applicable for r in run_lemma_horAT(ex3.map, ex3.structure, pts5))
    assert not run_nonexistence_wpk(ex2.map, ex2.structure, pts5).applicable


def test_non_kenmotsu_source_is_refused():
    W = make_warped(interval(), flat_kaehler(2).manifold, lambda a: 1.0 + 0.0 * a[0])
    n = W.manifold.dim
    J = standard_complex(2)

    def phi(q):
        out = np.zeros((n, n))
        out[1:, 1:] = J
        return out

    e0 = np.eye(n)[0]
    S = AlmostContactStructure(W.manifold, phi, VectorField(lambda q: e0), lambda q: e0)
    F = second_projection(W)
    pts = sample_points(W.manifold, 8)
    rec = run_nonexistence_wpk(F, S, pts)
    assert not rec.applicable and "Kenmotsu" in rec.note


def test_user_setup_through_run_config(ex2):
    rep = run_all(RunConfig(samples=6, setup=ex2))
    assert rep.profile["setup"] == "example2"
    assert rep.summary == "pass"
