"""Acceptance gate: one line per criterion, at the stated tolerance, 200 points, seed 42."""

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from kenmotsu.catalog import example2, example3, planar_projection, product_projection
from kenmotsu.config import DEFAULT
from kenmotsu.contact import example_ken, verify_almost_contact, verify_divergence, verify_kenmotsu
from kenmotsu.geometry import sample_points
from kenmotsu.oneill import (
    ONeillContext,
    is_harmonic,
    target_norm,
    tension_field,
    verify_fundamental_equations,
    verify_lemma_identities,
    verify_second_fundamental_form,
    verify_skew_symmetry,
)
from kenmotsu.submersion import (
    XiPosition,
    check_dim_theorem,
    conformal_dilation,
    is_anti_invariant,
    is_riemannian_submersion,
    mu_is_span_xi,
    xi_position,
)
from kenmotsu.suite import (
    Hypotheses,
    RunConfig,
    dilation_law,
    run_all,
    run_lemma_horAT,
    run_mean_curvature_remark,
    run_reeb_obstruction,
)
from kenmotsu.warped import compose_with_submersion, flat, interval, make_warped, second_projection, \
    verify_oneill_proposition, wpc_obstruction

N, SEED = DEFAULT.samples, DEFAULT.seed


def gate(label, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def pts():
    return sample_points(example_ken().manifold, N, SEED)


@pytest.fixture(scope="module")
def setup2():
    return example2()


@pytest.fixture(scope="module")
def ctx2(setup2, pts):
    return ONeillContext.build(setup2.map, pts, setup2.structure)


def warped_exp(k):
    return make_warped(interval(), flat(k), lambda a: np.exp(a[0]))


def test_a01_example1_certificate(pts):
    S = example_ken().structure
    ac = verify_almost_contact(S, pts)
    ken = verify_kenmotsu(S, pts)
    div = verify_divergence(S, pts)
    ok = ac.max_residual < 1e-8 and ken.details["Eq.(4)"] < 1e-5 and div.max_residual < 1e-5
    gate("Example-1 Kenmotsu certificate", ok,
         f"Eqs.(1)-(3) {ac.max_residual:.2e} < 1e-8, Eq.(4) {ken.details['Eq.(4)']:.2e} < 1e-5, "
         f"|div xi - 4| {div.max_residual:.2e} < 1e-5")


def test_a02_example2_profile(setup2, pts):
    F, S = setup2.map, setup2.structure
    riem = is_riemannian_submersion(F, pts).max_residual
    anti = is_anti_invariant(F, S, pts).max_residual
    mu = mu_is_span_xi(F, S, pts)
    dim = check_dim_theorem(F, S, pts)
    ok = riem < 1e-6 and anti < 1e-7 and mu and dim.passed and dim.details["dim_ker"] + 1 == dim.details["n"] == 3
    gate("Example-2 profile", ok,
         f"riemannian {riem:.2e} < 1e-6, anti-invariance {anti:.2e} < 1e-7, mu=span(xi) {mu}, "
         f"dim ker + 1 = {dim.details.get('dim_ker', -1) + 1} = n = {dim.details.get('n')}")


def test_a03_lemma3(setup2, pts, ctx2):
    F, S = setup2.map, setup2.structure
    recs = run_lemma_horAT(F, S, pts, ctx=ctx2)
    a, t = recs[0].max_residual, recs[1].max_residual
    gate("Lemma 3 (A_X xi = 0, T_U xi = U)", a < 1e-5 and t < 1e-5,
         f"|A_X xi| {a:.2e} < 1e-5, |T_U xi - U| {t:.2e} < 1e-5")


def test_a04_mean_curvature_and_harmonicity(setup2, pts, ctx2):
    F, S = setup2.map, setup2.structure
    rem = run_mean_curvature_remark(F, S, pts, hyp=Hypotheses.evaluate(F, S, pts), ctx=ctx2)
    harm = is_harmonic(ctx2, pts)
    tau_min = min(target_norm(ctx2, p, tension_field(ctx2, p)) for p in pts)
    ok = rem.max_residual < 1e-5 and not harm.passed and tau_min >= 1.9
    gate("Remark 4 and non-harmonicity", ok,
         f"|g(H,xi)+1| {rem.max_residual:.2e} < 1e-5, is_harmonic {harm.verdict}, min |tau| {tau_min:.4f} >= 1.9")


def _oneill(ctx, pts):
    recs = [verify_lemma_identities(ctx, pts), verify_fundamental_equations(ctx, pts), verify_skew_symmetry(ctx, pts)]
    worst = {}
    for r in recs:
        worst.update(r.details)
    return worst


def test_a05_oneill_identities(ctx2, pts):
    w2 = _oneill(ctx2, pts)
    W = warped_exp(4)
    wpts = sample_points(W.manifold, N, SEED)
    wctx = ONeillContext.build(second_projection(W), wpts)
    ww = _oneill(wctx, wpts)
    bad = [f"{ctx} {k} {v:.2e}" for ctx, w in (("example2", w2), ("pi_2", ww)) for k, v in w.items() if not v < 1e-5]
    gate("O'Neill identities (11)-(16), (19)-(20) on example2 and pi_2 of I x_e^t R^4", not bad,
         f"example2 max {max(w2.values()):.2e}, pi_2 max {max(ww.values()):.2e} (tol 1e-5)"
         + (f"; failing: {', '.join(bad)}" if bad else ""))


def test_a06_second_fundamental_form(ctx2, pts):
    rec = verify_second_fundamental_form(ctx2, pts)
    gate("Second fundamental form symmetry and Eq.(22)", rec.max_residual < 1e-4,
         f"symmetry {rec.details['symmetry']:.2e}, horizontal pairs {rec.details['Eq.(22)']:.2e} < 1e-4")


def test_a07_warped_connection():
    res = {}
    for k in (2, 4):
        W = warped_exp(k)
        res[k] = verify_oneill_proposition(W, sample_points(W.manifold, N, SEED)).max_residual
    gate("Proposition 1 on I x_e^t R^2 and R^4", all(v < 1e-4 for v in res.values()),
         f"R^2 {res[2]:.2e}, R^4 {res[4]:.2e} < 1e-4")


def test_a08_warping_obstruction(pts):
    out = {}
    for s in (1.0, 2.0):
        W = make_warped(interval(), flat(4), lambda a, s=s: s * np.exp(a[0]))
        F = compose_with_submersion(W, planar_projection(W.fiber))
        out[s] = wpc_obstruction(W, F, sample_points(W.manifold, N, SEED)).max_residual
    s3 = example3()
    reeb = run_reeb_obstruction(s3.map, s3.structure, pts).max_residual
    riem3 = is_riemannian_submersion(s3.map, pts)
    Wp, Pp = product_projection(4)
    F1 = compose_with_submersion(Wp, planar_projection(Wp.fiber))
    ppts = sample_points(Wp.manifold, N, SEED)
    riem1 = is_riemannian_submersion(F1, ppts)
    ok = max(out.values()) < 1e-4 and reeb < 1e-4 and not riem3.passed and riem1.passed
    gate("Warping obstruction consistency", ok,
         f"|A_X dt - X| (s=1) {out[1.0]:.2e}, (s=2) {out[2.0]:.2e}, example3 {reeb:.2e} < 1e-4; "
         f"example3 riemannian {riem3.verdict}; f=1 riemannian {riem1.verdict}")


def test_a09_composition_dilation():
    res = {}
    for label, f in (("e^t", lambda a: np.exp(a[0])), ("2+sin t", lambda a: 2.0 + np.sin(a[0]))):
        W = make_warped(interval(), flat(4), f)
        F = compose_with_submersion(W, planar_projection(W.fiber))
        res[label] = dilation_law(F, W.warp_at, sample_points(W.manifold, N, SEED)).max_residual
    gate("Composition dilation e^(2 lambda) = f^2", all(v < 1e-6 for v in res.values()),
         ", ".join(f"f={k} {v:.2e}" for k, v in res.items()) + " < 1e-6")


def test_a10_example3_profile(pts):
    s = example3()
    lam = max(abs(conformal_dilation(s.map, p) - p[4]) for p in pts)
    anti = is_anti_invariant(s.map, s.structure, pts)
    pos = xi_position(s.map, s.structure, pts)
    ok = lam < 1e-6 and anti.passed and pos is XiPosition.VERTICAL
    gate("Example-3 profile", ok,
         f"|lambda - z| {lam:.2e} < 1e-6, anti-invariance {anti.max_residual:.2e}, xi {pos.value}")


def test_a11_determinism():
    a = run_all(RunConfig("example2")).to_json()
    b = run_all(RunConfig("example2")).to_json()
    gate("Determinism", a == b, f"two example2 reports ({len(a)} bytes) identical: {a == b}")
