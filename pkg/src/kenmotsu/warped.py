"""Warped products ``M1 ×_f M2`` and the submersions they carry."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import autodiff
from .config import DEFAULT, Tolerances
from .errors import GeometryError, PreconditionError
from .geometry import (
    ChartManifold,
    VectorField,
    _metric,
    covariant_derivative,
    gradient,
    inner,
    norm,
    random_field,
    sample_points,
)
from .oneill import ONeillContext, tensor_A
from .report import CheckRecord, inapplicable
from .submersion import SmoothMap, is_riemannian_submersion


@dataclass(frozen=True)
class WarpedProduct:
    base: ChartManifold
    fiber: ChartManifold
    warp: Callable = field(repr=False)
    manifold: ChartManifold = field(repr=False, default=None)

    @property
    def split_index(self) -> int:
        return self.base.dim

    def warp_at(self, p) -> float:
        return float(self.warp(np.asarray(p, dtype=float)[: self.base.dim]))


def interval(lo: float = -1.0, hi: float = 1.0, name: str = "t") -> ChartManifold:
    return ChartManifold(1, (lo,), (hi,), lambda p: np.ones((1, 1)), label=f"I[{lo},{hi}]",
                         coords=(name,))


def flat(dim: int, half_width: float = 1.0, coords: tuple = (), label: str = "") -> ChartManifold:
    return ChartManifold(dim, (-half_width,) * dim, (half_width,) * dim,
                         lambda p: np.eye(dim), label=label or f"R^{dim}", coords=coords)


def make_warped(M1: ChartManifold, M2: ChartManifold, f: Callable, tol: Tolerances = DEFAULT,
                label: str = "") -> WarpedProduct:
    """Product chart with metric ``g1 ⊕ f² g2``; ``f`` takes base coordinates."""
    probes = np.vstack([sample_points(M1, tol.samples, tol.seed, tol),
                        np.array(M1.lower), np.array(M1.upper), M1.center()])
    for a in probes:
        try:
            val = float(f(a))
        except (ValueError, ArithmeticError) as exc:
            raise GeometryError(f"warping function failed at {a.tolist()}: {exc}") from exc
        if not np.isfinite(val) or val <= 0.0:
            raise PreconditionError(f"warping function not positive at {a.tolist()} (value {val})")

    d1, d2 = M1.dim, M2.dim
    n = d1 + d2

    def metric(q):
        a, b = q[:d1], q[d1:]
        out = np.zeros((n, n), dtype=object)
        out[:d1, :d1] = np.asarray(M1.metric(a), dtype=object)
        w = f(a)
        out[d1:, d1:] = (w * w) * np.asarray(M2.metric(b), dtype=object)
        return out

    product = ChartManifold(
        n,
        M1.lower + M2.lower,
        M1.upper + M2.upper,
        metric,
        label=label or f"{M1.label} x_f {M2.label}",
        coords=M1.coords + M2.coords,
    )
    return WarpedProduct(M1, M2, f, product)


def _lift(W: WarpedProduct, Y: VectorField, factor: int) -> VectorField:
    """Lift a field on one factor to the product (zero in the other block)."""
    d1, d2 = W.base.dim, W.fiber.dim

    def func(q):
        if factor == 1:
            head = np.asarray(Y.func(q[:d1]), dtype=object)
            return np.concatenate([head, np.zeros(d2, dtype=object)])
        tail = np.asarray(Y.func(q[d1:]), dtype=object)
        return np.concatenate([np.zeros(d1, dtype=object), tail])

    return VectorField(func, label=f"lift{factor}({Y.label})")


def _pad(W: WarpedProduct, v, factor: int) -> np.ndarray:
    d1, d2 = W.base.dim, W.fiber.dim
    return np.concatenate([v, np.zeros(d2)]) if factor == 1 else np.concatenate([np.zeros(d1), v])


def verify_oneill_proposition(W: WarpedProduct, points, tol: Tolerances = DEFAULT,
                              seed: int | None = None) -> CheckRecord:
    """The four warped-connection identities for random lifted fields.

    ``nor`` and ``tan`` are the coordinate block projections, which are
    g-orthogonal because the warped metric is block diagonal.
    """
    rng = np.random.default_rng(tol.seed if seed is None else seed)
    M, d1 = W.manifold, W.base.dim
    worst = {"(i)": 0.0, "(ii)": 0.0, "(iii)": 0.0, "(iv)": 0.0}
    for p in points:
        p = np.asarray(p, dtype=float)
        a, b = p[:d1], p[d1:]
        X1, Y1 = random_field(rng, d1), random_field(rng, d1)
        X2, Y2 = random_field(rng, W.fiber.dim), random_field(rng, W.fiber.dim)
        LX1, LY1, LX2, LY2 = (_lift(W, X1, 1), _lift(W, Y1, 1), _lift(W, X2, 2), _lift(W, Y2, 2))
        g = _metric(M, p)
        f = W.warp_at(p)
        x1f = autodiff.jvp(W.warp, a, X1(a))[1]
        ratio = float(np.reshape(x1f, -1)[0]) / f

        r1 = covariant_derivative(M, LX1(p), LY1, p, tol) - _pad(W, covariant_derivative(
            W.base, X1(a), Y1, a, tol), 1)
        r2a = covariant_derivative(M, LX1(p), LX2, p, tol) - ratio * LX2(p)
        r2b = covariant_derivative(M, LX2(p), LX1, p, tol) - ratio * LX2(p)
        n22 = covariant_derivative(M, LX2(p), LY2, p, tol)
        grad_f = _pad(W, gradient(W.base, W.warp, a, tol), 1)
        nor = _pad(W, n22[:d1], 1)
        tan = _pad(W, n22[d1:], 2)
        r3 = nor + inner(g, LX2(p), LY2(p)) / f * grad_f
        r4 = tan - _pad(W, covariant_derivative(W.fiber, X2(b), Y2, b, tol), 2)
        for k, v in (("(i)", r1), ("(ii)", r2a), ("(ii)", r2b), ("(iii)", r3), ("(iv)", r4)):
            worst[k] = max(worst[k], norm(g, v))
    return CheckRecord("warped_connection", "Proposition 1", max(worst.values()), tol.second,
                       points_sampled=len(points), details=worst)


def second_projection(W: WarpedProduct) -> SmoothMap:
    """``π₂(p, q) = q``, horizontally conformal with ``e^{2λ} = f²(p)``."""
    d1 = W.base.dim
    return SmoothMap(W.manifold, W.fiber, lambda p: p[d1:], label="pi_2")


def compose_with_submersion(W: WarpedProduct, f1: SmoothMap, tol: Tolerances = DEFAULT) -> SmoothMap:
    """``f₂ = f₁ ∘ π₂`` for a Riemannian submersion ``f₁`` from the fiber."""
    if f1.source is not W.fiber and f1.source.dim != W.fiber.dim:
        raise PreconditionError("submersion must be defined on the fiber")
    pts = sample_points(f1.source, min(tol.samples, 50), tol.seed, tol)
    rec = is_riemannian_submersion(f1, pts, tol)
    if not rec.passed:
        raise PreconditionError(f"{f1.label or 'map'} is not a Riemannian submersion "
                                f"(residual {rec.max_residual:.3e})")
    d1, g = W.base.dim, f1.func
    return SmoothMap(W.manifold, f1.target, lambda p: g(p[d1:]), label=f"{f1.label} o pi_2")


def warping_obstruction(F: SmoothMap, dt, ratio, points, tol: Tolerances = DEFAULT,
                        seed: int | None = None, name: str = "wpc_obstruction",
                        anchor: str = "Eq.(RIE2)") -> CheckRecord:
    """``A_X ∂t − (f'/f) X`` over random horizontal ``X``.

    ``dt`` is the field playing ``∂t`` and ``ratio(p)`` returns ``f'/f``.
    Inapplicable when ``dt`` is not vertical at every sample.
    """
    ctx = ONeillContext(F, tol=tol)
    for p in points:
        v = dt(p)
        if norm(_metric(F.source, p), ctx.PH(p) @ v) > tol.position * max(1.0, norm(_metric(F.source, p), v)):
            return inapplicable(name, anchor, tol.second, "d/dt is not vertical")
    rng = np.random.default_rng(tol.seed if seed is None else seed)
    worst = 0.0
    for p in points:
        X = ctx.horizontal(random_field(rng, F.source.dim))
        r = tensor_A(ctx, X, dt, p) - ratio(p) * X(p)
        worst = max(worst, norm(_metric(F.source, p), r))
    return CheckRecord(name, anchor, worst, tol.second, points_sampled=len(points),
                       details={"max |f'/f|": max(abs(ratio(p)) for p in points)})


def _log_derivative(W: WarpedProduct):
    def ratio(p):
        a = np.asarray(p, dtype=float)[: W.base.dim]
        val, d = autodiff.jvp(W.warp, a, np.eye(W.base.dim)[0])
        return float(np.reshape(d, -1)[0]) / float(np.reshape(val, -1)[0])

    return ratio


def wpc_obstruction(W: WarpedProduct, F: SmoothMap, points, tol: Tolerances = DEFAULT,
                    seed: int | None = None) -> CheckRecord:
    """Warping obstruction for a map from ``I ×_f M₂`` with ``∂t`` vertical."""
    if W.base.dim != 1:
        raise PreconditionError("obstruction needs a one-dimensional base")
    n = W.manifold.dim
    dt = VectorField(lambda q: np.eye(n)[0], label="d/dt")
    return warping_obstruction(F, dt, _log_derivative(W), points, tol, seed)


def wpc_consistency(W: WarpedProduct, F: SmoothMap, points, tol: Tolerances = DEFAULT) -> CheckRecord:
    """A Riemannian submersion with vertical ``∂t`` forces ``f' ≡ 0``.

    The residual is ``max |f'/f|`` when ``F`` is Riemannian and 0 otherwise,
    so the record passes exactly when the prediction holds.
    """
    riem = is_riemannian_submersion(F, points, tol).passed
    ratio = _log_derivative(W)
    lr = max(abs(ratio(p)) for p in points)
    return CheckRecord("warping_constant", "Theorem 7", lr if riem else 0.0, tol.first,
                       points_sampled=len(points),
                       details={"riemannian": riem, "max |f'/f|": lr})
