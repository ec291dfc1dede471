"""Named verification procedures for anti-invariant submersions from Kenmotsu manifolds.

Each procedure returns a :class:`CheckRecord`.  Hypotheses (Kenmotsu
certificate, anti-invariance, Riemannian submersion, position of ξ) gate
the procedures: a procedure whose hypotheses fail is reported
inapplicable, not failed.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .catalog import Setup, builtin
from .config import DEFAULT, Tolerances
from .contact import AlmostContactStructure, verify_almost_contact, verify_divergence, verify_kenmotsu
from .errors import AnisotropyError, RankError
from .geometry import VectorField, _metric, inner, lie_bracket, norm, random_field, sample_points
from .oneill import (
    ONeillContext,
    is_totally_umbilical,
    mean_curvature,
    second_fundamental_form,
    target_norm,
    tension_field,
    tensor_A,
    tensor_T,
    verify_basic_fields,
    verify_fundamental_equations,
    verify_lemma_identities,
    verify_second_fundamental_form,
    verify_skew_symmetry,
)
from .report import CheckRecord, VerificationReport, inapplicable
from .submersion import (
    SmoothMap,
    XiPosition,
    check_dim_theorem,
    conformal_dilation,
    fiber_dimension,
    is_anti_invariant,
    is_riemannian_submersion,
    mu_is_span_xi,
    mu_space,
    split,
    xi_position,
)
from .warped import verify_oneill_proposition, warping_obstruction, wpc_consistency, wpc_obstruction


@dataclass(frozen=True)
class Hypotheses:
    """Certificates that gate the theorem procedures."""

    kenmotsu: bool
    anti_invariant: bool
    riemannian: bool
    xi: XiPosition
    mu_span_xi: bool

    @classmethod
    def evaluate(cls, F: SmoothMap, S: AlmostContactStructure, points,
                 tol: Tolerances = DEFAULT) -> "Hypotheses":
        ken = (verify_almost_contact(S, points, tol).passed and verify_kenmotsu(S, points, tol).passed)
        return cls(ken, is_anti_invariant(F, S, points, tol).passed,
                   is_riemannian_submersion(F, points, tol).passed,
                   xi_position(F, S, points, tol), mu_is_span_xi(F, S, points, tol))

    def horizontal_gate(self) -> str | None:
        if not self.kenmotsu:
            return "source fails the Kenmotsu check"
        if not self.anti_invariant:
            return "map is not anti-invariant"
        if not self.riemannian:
            return "map is not a Riemannian submersion"
        if self.xi is not XiPosition.HORIZONTAL:
            return f"xi is {self.xi.value}, not horizontal"
        return None


def _context(F, S, points, tol, hyp, ctx):
    hyp = hyp or Hypotheses.evaluate(F, S, points, tol)
    ctx = ctx or ONeillContext(F, S, tol, hyp.riemannian, fiber_dimension(F, points, tol))
    return hyp, ctx


def _rng(tol):
    return np.random.default_rng(tol.seed)


def _phi_field(ctx: ONeillContext, X: VectorField, part: str = "") -> VectorField:
    """``φX``, or its vertical (``B``) or horizontal (``C``) part."""
    S = ctx.structure

    def func(q):
        v = S.phi_at(q) @ X(q)
        if part == "B":
            return ctx.PV(q) @ v
        if part == "C":
            return ctx.PH(q) @ v
        return v

    return VectorField(func, ad=False, label=f"{part or 'phi'}({X.label})")


def _fields(ctx, rng, kinds):
    n = ctx.source.dim
    return [ctx.vertical(random_field(rng, n)) if k == "v" else ctx.horizontal(random_field(rng, n))
            for k in kinds]


def run_lemma_horAT(F: SmoothMap, S: AlmostContactStructure, points, tol: Tolerances = DEFAULT,
                    hyp: Hypotheses | None = None, ctx: ONeillContext | None = None) -> list[CheckRecord]:
    """``A_X ξ = 0``, ``T_U ξ = U`` and ``g(∇_Y CX, φU) = −g(CX, φ A_Y U)``."""
    hyp, ctx = _context(F, S, points, tol, hyp, ctx)
    names = (("lemma3_A_xi", "Eq.(IKE1)"), ("lemma3_T_xi", "Eq.(IKE2)"), ("lemma3_CX", "Eq.(IKE4)"))
    reason = hyp.horizontal_gate()
    if reason:
        return [inapplicable(n, a, tol.first, reason) for n, a in names]
    rng = _rng(tol)
    r1 = r2 = r4 = 0.0
    for p in points:
        X, Y, U = _fields(ctx, rng, "hhv")
        g = ctx.metric(p)
        phi = S.phi_at(p)
        r1 = max(r1, norm(g, tensor_A(ctx, X, S.xi, p)))
        r2 = max(r2, norm(g, tensor_T(ctx, U, S.xi, p) - U(p)))
        CX = _phi_field(ctx, X, "C")
        lhs = inner(g, ctx.nabla(Y, CX, p), phi @ U(p))
        rhs = -inner(g, CX(p), phi @ tensor_A(ctx, Y, U, p))
        r4 = max(r4, abs(lhs - rhs))
    n = len(points)
    return [CheckRecord(names[0][0], names[0][1], r1, tol.first, n),
            CheckRecord(names[1][0], names[1][1], r2, tol.first, n),
            CheckRecord(names[2][0], names[2][1], r4, tol.first, n)]


def run_integrability_equivalence(F: SmoothMap, S: AlmostContactStructure, points,
                                  tol: Tolerances = DEFAULT, hyp: Hypotheses | None = None,
                                  ctx: ONeillContext | None = None) -> list[CheckRecord]:
    """Pivot identity linking ``g([X, Y], V)`` with the A-tensor expression.

    Also reports the second-fundamental-form form of the same identity
    (informational) and, when ``C`` vanishes, the reduced form built from
    ``A_X φY − A_Y φX``.
    """
    hyp, ctx = _context(F, S, points, tol, hyp, ctx)
    name, anchor = "integrability_pivot", "Theorem 2"
    reason = hyp.horizontal_gate()
    if reason:
        return [inapplicable(name, anchor, tol.first, reason),
                inapplicable("integrability_sff_form", "Theorem 2(ii)", tol.second, reason)]
    rng = _rng(tol)
    worst = worst_sff = worst_c1 = max_lhs = max_rhs = max_c = 0.0
    for p in points:
        X, Y, V = _fields(ctx, rng, "hhv")
        g = ctx.metric(p)
        phi = S.phi_at(p)
        phiV = phi @ V(p)
        BX, BY = _phi_field(ctx, X, "B"), _phi_field(ctx, Y, "B")
        CX, CY = _phi_field(ctx, X, "C")(p), _phi_field(ctx, Y, "C")(p)
        AXV, AYV = tensor_A(ctx, X, V, p), tensor_A(ctx, Y, V, p)
        tail = inner(g, CX, phi @ AYV) - inner(g, CY, phi @ AXV)
        lhs = inner(g, lie_bracket(X, Y, p, tol), V(p))
        rhs = inner(g, tensor_A(ctx, X, BY, p) - tensor_A(ctx, Y, BX, p), phiV) + tail
        worst = max(worst, abs(lhs - rhs))
        max_lhs, max_rhs = max(max_lhs, abs(lhs)), max(max_rhs, abs(rhs))

        J = F.jacobian(p)
        gN = _metric(F.target, F(p))
        sff = second_fundamental_form(ctx, Y, BX, p) - second_fundamental_form(ctx, X, BY, p)
        worst_sff = max(worst_sff, abs(lhs - (inner(gN, sff, J @ phiV) + tail)))

        max_c = max(max_c, norm(g, CX), norm(g, CY))
        c1 = inner(g, tensor_A(ctx, X, _phi_field(ctx, Y), p) - tensor_A(ctx, Y, _phi_field(ctx, X), p), phiV)
        worst_c1 = max(worst_c1, abs(lhs - c1))
    details = {"max |lhs|": max_lhs, "max |rhs|": max_rhs, "max |C|": max_c}
    if max_c < tol.first:
        details["Corollary 1"] = worst_c1
    n = len(points)
    return [CheckRecord(name, anchor, worst, tol.first, n, details=details),
            CheckRecord("integrability_sff_form", "Theorem 2(ii)", worst_sff, tol.second, n,
                        informational=True)]


def run_totally_geodesic_horizontal(F: SmoothMap, S: AlmostContactStructure, points,
                                    tol: Tolerances = DEFAULT, hyp: Hypotheses | None = None,
                                    ctx: ONeillContext | None = None) -> CheckRecord:
    """``g(∇_X Y, V) = g(A_X BY, φV) − g(CY, φ A_X V)`` and verdict consistency.

    The record passes when the identity holds and condition (ii) agrees with
    the direct test ``V∇_X Y = 0`` on whether the horizontal distribution is
    totally geodesic.
    """
    hyp, ctx = _context(F, S, points, tol, hyp, ctx)
    name, anchor = "horizontal_totally_geodesic", "Theorem 3"
    reason = hyp.horizontal_gate()
    if reason:
        return inapplicable(name, anchor, tol.first, reason)
    rng = _rng(tol)
    pivot = cond = vert = cor2 = sff_form = 0.0
    for p in points:
        X, Y, V = _fields(ctx, rng, "hhv")
        g = ctx.metric(p)
        phi = S.phi_at(p)
        phiV = phi @ V(p)
        CY = _phi_field(ctx, Y, "C")(p)
        AXV = tensor_A(ctx, X, V, p)
        a = inner(g, tensor_A(ctx, X, _phi_field(ctx, Y, "B"), p), phiV)
        b = inner(g, CY, phi @ AXV)
        nXY = ctx.nabla(X, Y, p)
        pivot = max(pivot, abs(inner(g, nXY, V(p)) - (a - b)))
        cond = max(cond, abs(a - b))
        vert = max(vert, norm(g, ctx.PV(p) @ nXY))
        if hyp.mu_span_xi:
            cor2 = max(cor2, norm(g, tensor_A(ctx, X, _phi_field(ctx, Y), p)))
        gN = _metric(F.target, F(p))
        sff = second_fundamental_form(ctx, X, _phi_field(ctx, Y), p)
        sff_form = max(sff_form, abs(inner(gN, sff, F.jacobian(p) @ phiV) + b))
    consistent = (cond < tol.first) == (vert < tol.first)
    details = {"condition (ii)": cond, "max |V nabla_X Y|": vert, "consistent": consistent,
               "totally_geodesic": vert < tol.first, "condition (iii)": sff_form}
    if hyp.mu_span_xi:
        details["Corollary 2 |A_X phi Y|"] = cor2
    return CheckRecord(name, anchor, pivot if consistent else float("inf"), tol.first, len(points),
                       note="" if consistent else "condition (ii) and V(nabla_X Y) disagree",
                       details=details)


def run_fibers_not_geodesic(F: SmoothMap, S: AlmostContactStructure, points, tol: Tolerances = DEFAULT,
                            hyp: Hypotheses | None = None,
                            ctx: ONeillContext | None = None) -> list[CheckRecord]:
    """``T_V ξ = V`` for unit vertical ``V`` (so ``T ≠ 0``) and ``(∇F_*)(V, V) ≠ 0``."""
    hyp, ctx = _context(F, S, points, tol, hyp, ctx)
    names = (("fibers_not_totally_geodesic", "Theorem 4"), ("map_not_totally_geodesic", "Theorem 5"))
    reason = hyp.horizontal_gate()
    if reason is None and ctx.fiber_dim == 0:
        reason = "zero-dimensional fibers"
    if reason:
        return [inapplicable(names[0][0], names[0][1], tol.first, reason),
                inapplicable(names[1][0], names[1][1], tol.second, reason)]
    worst = 0.0
    min_t = min_sff = float("inf")
    for p in points:
        sp = split(F, p, tol)
        g = sp.metric
        for v in sp.vertical.vectors.T:
            t = tensor_T(ctx, v, S.xi, p)
            worst = max(worst, norm(g, t - v), abs(norm(g, v) - 1.0))
            min_t = min(min_t, norm(g, t))
            min_sff = min(min_sff, target_norm(ctx, p, second_fundamental_form(ctx, v, v, p)))
    n = len(points)
    return [CheckRecord(names[0][0], names[0][1], worst, tol.first, n, details={"min |T_V xi|": min_t}),
            CheckRecord(names[1][0], names[1][1], min_sff, tol.second, n, mode="witness",
                        details={"min |(nabla F_*)(V,V)|": min_sff})]


def run_mean_curvature_remark(F: SmoothMap, S: AlmostContactStructure, points, tol: Tolerances = DEFAULT,
                              hyp: Hypotheses | None = None,
                              ctx: ONeillContext | None = None) -> CheckRecord:
    """``g(H, ξ) = −1``: the fibers are never minimal."""
    hyp, ctx = _context(F, S, points, tol, hyp, ctx)
    name, anchor = "mean_curvature_xi", "Remark 4"
    reason = hyp.horizontal_gate()
    if reason is None and ctx.fiber_dim == 0:
        reason = "zero-dimensional fibers"
    if reason:
        return inapplicable(name, anchor, tol.first, reason)
    vals = [inner(ctx.metric(p), mean_curvature(ctx, p), S.xi(p)) for p in points]
    return CheckRecord(name, anchor, max(abs(v + 1.0) for v in vals), tol.first, len(points),
                       details={"g(H,xi) min": min(vals), "g(H,xi) max": max(vals)})


def run_not_harmonic(F: SmoothMap, S: AlmostContactStructure, points, tol: Tolerances = DEFAULT,
                     hyp: Hypotheses | None = None, ctx: ONeillContext | None = None) -> CheckRecord:
    """Witness ``‖τ‖ ≥ tolerance``; the expected size is the fiber dimension."""
    hyp, ctx = _context(F, S, points, tol, hyp, ctx)
    name, anchor = "not_harmonic", "Theorem 6"
    reason = hyp.horizontal_gate()
    if reason is None and ctx.fiber_dim == 0:
        reason = "zero-dimensional fibers"
    if reason:
        return inapplicable(name, anchor, tol.second, reason)
    tau = min(target_norm(ctx, p, tension_field(ctx, p)) for p in points)
    return CheckRecord(name, anchor, tau, tol.second, len(points), mode="witness",
                       details={"min |tau|": tau, "fiber_dim": ctx.fiber_dim})


def run_nonexistence_wpk(F: SmoothMap, S: AlmostContactStructure, points, tol: Tolerances = DEFAULT,
                         hyp: Hypotheses | None = None) -> CheckRecord:
    """With ξ vertical on a Kenmotsu source the map cannot be a Riemannian submersion.

    Witness record: passes when the Riemannian residual is at least its
    tolerance, i.e. the prediction is confirmed.
    """
    hyp = hyp or Hypotheses.evaluate(F, S, points, tol)
    name, anchor = "no_riemannian_submersion", "Theorem 8"
    if not hyp.kenmotsu:
        return inapplicable(name, anchor, tol.isometry, "source fails the Kenmotsu check")
    if hyp.xi is not XiPosition.VERTICAL:
        return inapplicable(name, anchor, tol.isometry, f"xi is {hyp.xi.value}, not vertical")
    rec = is_riemannian_submersion(F, points, tol)
    return CheckRecord(name, anchor, rec.max_residual, tol.isometry, len(points), mode="witness",
                       note=rec.note, details={"riemannian_residual": rec.max_residual})


def run_reeb_obstruction(F: SmoothMap, S: AlmostContactStructure, points, tol: Tolerances = DEFAULT,
                         hyp: Hypotheses | None = None) -> CheckRecord:
    """``A_X ξ = X`` when ξ (playing ``∂t`` with ``f = s e^t``) is vertical."""
    hyp = hyp or Hypotheses.evaluate(F, S, points, tol)
    name, anchor = "reeb_obstruction", "Eq.(RIE2)"
    if not hyp.kenmotsu:
        return inapplicable(name, anchor, tol.second, "source fails the Kenmotsu check")
    if hyp.xi is not XiPosition.VERTICAL:
        return inapplicable(name, anchor, tol.second, f"xi is {hyp.xi.value}, not vertical")
    return warping_obstruction(F, S.xi, lambda p: 1.0, points, tol, name=name, anchor=anchor)


# ---------------------------------------------------------------------------
# dilation


def horizontally_conformal(F: SmoothMap, points, tol: Tolerances = DEFAULT, expected=None) -> list[CheckRecord]:
    """Isotropy of ``F_*`` on horizontal vectors, and ``λ`` against a reference."""
    lams, spread, note = [], 0.0, ""
    for p in points:
        try:
            lams.append(conformal_dilation(F, p, tol.with_overrides(conformal_spread=np.inf)))
        except RankError as exc:
            spread, note = float("inf"), str(exc)
            break
        sp = split(F, p, tol)
        JH = sp.jacobian @ sp.horizontal.vectors
        ev = np.linalg.eigvalsh(JH.T @ _metric(F.target, F(p)) @ JH)
        spread = max(spread, float((ev[-1] - ev[0]) / ev[-1]))
    details = {"lambda min": min(lams), "lambda max": max(lams)} if lams and not note else {}
    out = [CheckRecord("horizontally_conformal", "Eq.(9)", spread, tol.conformal_spread, len(points),
                       note=note, details=details)]
    if expected is not None:
        if note or spread >= tol.conformal_spread:
            out.append(inapplicable("dilation_reference", "Eq.(9)", tol.isometry, "map is not conformal"))
        else:
            err = max(abs(lam - expected(p)) for lam, p in zip(lams, points))
            out.append(CheckRecord("dilation_reference", "Eq.(9)", err, tol.isometry, len(points)))
    return out


def dilation_law(F: SmoothMap, warp, points, tol: Tolerances = DEFAULT) -> CheckRecord:
    """``|e^{2λ} − f²| / f²`` for ``f₂ = f₁ ∘ π₂`` on a warped product."""
    worst = 0.0
    for p in points:
        try:
            lam = conformal_dilation(F, p, tol)
        except (RankError, AnisotropyError) as exc:
            return CheckRecord("composition_dilation", "Theorem 9", float("inf"), tol.isometry,
                               len(points), note=str(exc))
        f2 = warp(p) ** 2
        worst = max(worst, abs(np.exp(2 * lam) - f2) / f2)
    return CheckRecord("composition_dilation", "Theorem 9", worst, tol.isometry, len(points))


# ---------------------------------------------------------------------------
# full runs


@dataclass(frozen=True)
class RunConfig:
    """What to verify and how densely.

    ``tol`` overrides the first-derivative tolerance, ``tol2`` the
    second-derivative one.
    """

    source: str = "example2"
    samples: int | None = None
    seed: int | None = None
    tol: float | None = None
    tol2: float | None = None
    require_riemannian: bool = False
    setup: Setup | None = None

    def tolerances(self) -> Tolerances:
        return DEFAULT.with_overrides(samples=self.samples, seed=self.seed, first=self.tol, second=self.tol2)

    def resolve(self) -> Setup:
        return self.setup if self.setup is not None else builtin(self.source)


def describe(setup: Setup, tol: Tolerances = DEFAULT, points=None) -> dict:
    """Dimensions, ξ position, μ dimension and the Riemannian / conformal class."""
    S, F = setup.structure, setup.map
    M = S.manifold if S is not None else F.source
    if points is None:
        points = sample_points(M, tol.samples, tol.seed, tol)
    out: dict = {"dim M": M.dim}
    if F is None:
        return out
    out["dim N"] = F.target.dim
    out["fiber_dim"] = fiber_dimension(F, points, tol)
    if S is not None:
        out["xi"] = xi_position(F, S, points, tol).value
        mu = mu_space(F, S, points[0], tol)
        out["mu_dim"] = len(mu)
        out["mu_span_xi"] = mu_is_span_xi(F, S, points, tol)
    if is_riemannian_submersion(F, points, tol).passed:
        out["class"] = "riemannian"
    else:
        try:
            lams = [conformal_dilation(F, p, tol) for p in points]
            out["class"] = "horizontally conformal"
            out["lambda range"] = [min(lams), max(lams)]
        except (RankError, AnisotropyError):
            out["class"] = "neither"
    return out


def describe_text(setup: Setup, info: dict) -> str:
    parts = [f"dim M={info['dim M']}"]
    if "dim N" in info:
        parts.append(f"dim N={info['dim N']}")
        parts.append(f"fibers {info['fiber_dim']}-dimensional")
    if "xi" in info:
        parts.append(f"ξ {info['xi']}")
        parts.append("μ=span{ξ}" if info["mu_span_xi"] else f"dim μ={info['mu_dim']}")
    if info.get("class") == "horizontally conformal":
        lo, hi = info["lambda range"]
        label = "conformal"
        if setup.dilation is not None:
            label += " λ=z" if setup.name == "example3" else " λ=log f"
        parts.append(f"{label} (λ in [{lo:.4g}, {hi:.4g}])")
    elif "class" in info:
        parts.append(info["class"])
    return f"{setup.name}: " + ", ".join(parts)


def run_all(config: RunConfig) -> VerificationReport:
    """Every applicable check for the configured setup; deterministic given the seed."""
    tol = config.tolerances()
    setup = config.resolve()
    S, F = setup.structure, setup.map
    M = S.manifold if S is not None else F.source
    points = sample_points(M, tol.samples, tol.seed, tol)
    checks: list[CheckRecord] = []

    if S is not None:
        ac = verify_almost_contact(S, points, tol)
        ken = verify_kenmotsu(S, points, tol)
        checks += [ac, ken, verify_divergence(S, points, tol)]

    if F is not None:
        profile = describe(setup, tol, points)
        riem = is_riemannian_submersion(F, points, tol)
        conformal = setup.profile == "conformal"
        if conformal and not config.require_riemannian and not riem.passed:
            riem.informational = True
        checks.append(riem)
        if conformal:
            checks += horizontally_conformal(F, points, tol, setup.dilation)
        ctx = ONeillContext(F, S, tol, riem.passed, profile["fiber_dim"])
        checks += _oneill_records(ctx, points)
        if S is not None:
            hyp = Hypotheses(ac.passed and ken.passed, False, riem.passed,
                             xi_position(F, S, points, tol), profile["mu_span_xi"])
            anti = is_anti_invariant(F, S, points, tol)
            hyp = Hypotheses(hyp.kenmotsu, anti.passed, hyp.riemannian, hyp.xi, hyp.mu_span_xi)
            checks.append(anti)
            checks.append(check_dim_theorem(F, S, points, tol))
            checks += run_lemma_horAT(F, S, points, tol, hyp, ctx)
            checks += run_integrability_equivalence(F, S, points, tol, hyp, ctx)
            checks.append(run_totally_geodesic_horizontal(F, S, points, tol, hyp, ctx))
            checks += run_fibers_not_geodesic(F, S, points, tol, hyp, ctx)
            checks.append(run_mean_curvature_remark(F, S, points, tol, hyp, ctx))
            checks.append(run_not_harmonic(F, S, points, tol, hyp, ctx))
            checks.append(run_nonexistence_wpk(F, S, points, tol, hyp))
            checks.append(run_reeb_obstruction(F, S, points, tol, hyp))
        if setup.warped is not None:
            W = setup.warped
            checks.append(verify_oneill_proposition(W, points, tol))
            checks.append(wpc_obstruction(W, F, points, tol))
            checks.append(wpc_consistency(W, F, points, tol))
            checks.append(dilation_law(F, W.warp_at, points, tol))
    else:
        profile = describe(setup, tol, points)

    return VerificationReport(
        source=M.label or setup.name,
        map=F.label if F is not None else "",
        samples=len(points),
        seed=tol.seed,
        tolerances={k: v for k, v in asdict(tol).items() if k not in ("samples", "seed")},
        checks=checks,
        profile={"setup": setup.name, **profile},
    )


def _oneill_records(ctx: ONeillContext, points) -> list[CheckRecord]:
    """O'Neill identity suite.

    On a non-Riemannian map the identities that rely on horizontal
    isometry (Eq. (12), Eq. (22)) are informational.
    """
    lemma = verify_lemma_identities(ctx, points)
    sff = verify_second_fundamental_form(ctx, points)
    if not ctx.riemannian:
        lemma.informational = sff.informational = True
    out = [lemma, verify_skew_symmetry(ctx, points), verify_fundamental_equations(ctx, points),
           verify_basic_fields(ctx, points), sff]
    if ctx.fiber_dim:
        out.append(is_totally_umbilical(ctx, points))
    return out


def run_suite(config: RunConfig, names=("example1", "example2", "example3")) -> list[VerificationReport]:
    return [run_all(RunConfig(n, config.samples, config.seed, config.tol, config.tol2,
                              config.require_riemannian)) for n in names]
