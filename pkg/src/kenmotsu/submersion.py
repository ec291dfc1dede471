"""Smooth maps between charts and the vertical / horizontal splitting they induce."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import autodiff
from .config import DEFAULT, Tolerances
from .errors import AnisotropyError, InstabilityError, PreconditionError, RankError
from .geometry import ChartManifold, Frame, _metric, gram_schmidt, inner, norm
from .report import CheckRecord, inapplicable


@dataclass(frozen=True)
class SmoothMap:
    source: ChartManifold
    target: ChartManifold
    func: Callable = field(repr=False)
    label: str = ""

    def __call__(self, p) -> np.ndarray:
        return np.asarray(self.func(np.asarray(p, dtype=float)), dtype=float)

    def jacobian(self, p) -> np.ndarray:
        """``J[a, i] = ∂_i F^a``."""
        return autodiff.value_and_jacobian(self.func, p)[1]

    def value_and_jacobian(self, p):
        return autodiff.value_and_jacobian(self.func, p)


def compose(outer: SmoothMap, inner_map: SmoothMap, label: str = "") -> SmoothMap:
    f, g = outer.func, inner_map.func
    return SmoothMap(inner_map.source, outer.target, lambda p: f(g(p)),
                     label=label or f"{outer.label} o {inner_map.label}")


def maps_into_target(F: SmoothMap, points) -> bool:
    return all(F.target.contains(F(p)) for p in points)


@dataclass(frozen=True)
class SubmersionSplit:
    base: np.ndarray
    vertical: Frame
    horizontal: Frame
    jacobian: np.ndarray
    metric: np.ndarray
    rank: int

    @property
    def vertical_projector(self) -> np.ndarray:
        K = self.vertical.vectors
        return K @ K.T @ self.metric

    @property
    def horizontal_projector(self) -> np.ndarray:
        return np.eye(self.metric.shape[0]) - self.vertical_projector

    def vproj(self, v) -> np.ndarray:
        return self.vertical_projector @ v

    def hproj(self, v) -> np.ndarray:
        return v - self.vproj(v)


@dataclass(frozen=True)
class PhiDecomposition:
    B: np.ndarray
    C: np.ndarray


class XiPosition(str, enum.Enum):
    VERTICAL = "vertical"
    HORIZONTAL = "horizontal"
    MIXED = "mixed"


def differential(F: SmoothMap, p, v) -> np.ndarray:
    return autodiff.jvp(F.func, p, v)[1]


def _rank(s: np.ndarray, rel: float) -> int:
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > rel * s[0]))


def jacobian_rank(F: SmoothMap, p, threshold: float = DEFAULT.rank_rel) -> int:
    return _rank(np.linalg.svd(F.jacobian(p), compute_uv=False), threshold)


def horizontal_projector(F: SmoothMap, q, tol: Tolerances = DEFAULT) -> np.ndarray:
    """g-orthogonal projector onto ``(ker F_*)^⊥``: ``G⁻¹Jᵀ (J G⁻¹ Jᵀ)⁺ J``.

    Basis free, hence smooth in ``q`` wherever the rank is constant; this is
    what the difference stencils differentiate.
    """
    J = F.jacobian(q)
    G = _metric(F.source, q)
    GiJt = np.linalg.solve(G, J.T)
    return GiJt @ np.linalg.pinv(J @ GiJt, rcond=tol.rank_rel, hermitian=True) @ J


def vertical_projector(F: SmoothMap, q, tol: Tolerances = DEFAULT) -> np.ndarray:
    return np.eye(F.source.dim) - horizontal_projector(F, q, tol)


def split(F: SmoothMap, p, tol: Tolerances = DEFAULT) -> SubmersionSplit:
    """Orthonormal vertical and horizontal frames at ``p``.

    The kernel comes from the SVD of the Jacobian (vectors ordered by
    ascending singular value), the horizontal space from ``G⁻¹Jᵀ`` applied to
    the leading left singular vectors; both are Gram-Schmidt'ed in ``g_M``.
    """
    p = np.asarray(p, dtype=float)
    J = F.jacobian(p)
    G = _metric(F.source, p)
    n = F.source.dim
    U, s, Vt = np.linalg.svd(J, full_matrices=True)
    r = _rank(s, tol.rank_rel)
    padded = np.zeros(n)
    padded[: s.size] = s
    kernel_rows = sorted(range(r, n), key=lambda i: (padded[i], i))
    K = Vt[kernel_rows].T if kernel_rows else np.zeros((n, 0))
    Hraw = np.linalg.solve(G, J.T @ U[:, :r]) if r else np.zeros((n, 0))
    vertical = gram_schmidt(Frame(p, K), G, tol)
    horizontal = gram_schmidt(Frame(p, Hraw), G, tol)
    return SubmersionSplit(p, vertical, horizontal, J, G, r)


def fiber_dimension(F: SmoothMap, points, tol: Tolerances = DEFAULT) -> int:
    """Kernel dimension, asserted constant over ``points``."""
    ranks = {jacobian_rank(F, p, tol.rank_rel) for p in points}
    if len(ranks) != 1:
        raise InstabilityError(f"rank of {F.label} varies over the sample: {sorted(ranks)}")
    return F.source.dim - ranks.pop()


def _pushforward_gram(F: SmoothMap, sp: SubmersionSplit) -> np.ndarray:
    JH = sp.jacobian @ sp.horizontal.vectors
    GN = _metric(F.target, F(sp.base))
    return JH.T @ GN @ JH


def is_riemannian_submersion(F: SmoothMap, points, tol: Tolerances = DEFAULT) -> CheckRecord:
    """max ``|g_M(X, Y) − g_N(F_*X, F_*Y)|`` over orthonormal horizontal pairs."""
    worst = 0.0
    note = ""
    for p in points:
        sp = split(F, p, tol)
        if sp.rank != F.target.dim:
            worst = float("inf")
            note = f"rank {sp.rank} < dim N = {F.target.dim} at {np.round(p, 6).tolist()}"
            break
        R = _pushforward_gram(F, sp)
        worst = max(worst, float(np.max(np.abs(R - np.eye(sp.rank)), initial=0.0)))
    return CheckRecord("riemannian_submersion", "S1-S2", worst, tol.isometry,
                       points_sampled=len(points), note=note)


def conformal_dilation(F: SmoothMap, p, tol: Tolerances = DEFAULT) -> float:
    """``λ`` with ``g_M = e^{2λ} g_N(F_*, F_*)`` on horizontal vectors at ``p``."""
    sp = split(F, p, tol)
    if sp.rank != F.target.dim or sp.rank == 0:
        raise RankError(f"rank {sp.rank} is not maximal (dim N = {F.target.dim})")
    ev = np.linalg.eigvalsh(_pushforward_gram(F, sp))
    spread = (ev[-1] - ev[0]) / ev[-1]
    if spread > tol.conformal_spread:
        raise AnisotropyError(f"horizontal stretch ratios {ev.tolist()} differ (spread {spread:.2e})")
    return float(-0.5 * np.log(np.mean(ev)))


def _phi_vertical_leak(F, S, p, tol) -> float:
    sp = split(F, p, tol)
    phi = S.phi_at(p)
    return max((norm(sp.metric, sp.vproj(phi @ v)) for v in sp.vertical.vectors.T), default=0.0)


def is_anti_invariant(F: SmoothMap, S, points, tol: Tolerances = DEFAULT) -> CheckRecord:
    """``φ(ker F_*) ⊆ (ker F_*)^⊥``: worst vertical part of ``φv`` over unit vertical ``v``."""
    worst = max((_phi_vertical_leak(F, S, p, tol) for p in points), default=0.0)
    return CheckRecord("anti_invariant", "Definition 1", worst, tol.anti_invariance,
                       points_sampled=len(points))


def phi_decompose(F: SmoothMap, S, X, p, tol: Tolerances = DEFAULT) -> PhiDecomposition:
    """``φX = BX + CX`` for horizontal ``X``; ``B`` vertical, ``C`` in ``μ``."""
    p = np.asarray(p, dtype=float)
    X = np.asarray(X, dtype=float)
    sp = split(F, p, tol)
    scale = max(1.0, norm(sp.metric, X))
    if norm(sp.metric, sp.vproj(X)) > tol.anti_invariance * scale:
        raise PreconditionError("phi_decompose needs a horizontal vector")
    phiX = S.phi_at(p) @ X
    B = sp.vproj(phiX)
    return PhiDecomposition(B, phiX - B)


def mu_space(F: SmoothMap, S, p, tol: Tolerances = DEFAULT) -> Frame:
    """Orthonormal basis of the complement of ``φ(ker F_*)`` inside ``(ker F_*)^⊥``."""
    p = np.asarray(p, dtype=float)
    sp = split(F, p, tol)
    H = sp.horizontal.vectors
    if H.shape[1] == 0:
        return Frame(p, H, orthonormal=True)
    phiK = np.column_stack([sp.hproj(S.phi_at(p) @ v) for v in sp.vertical.vectors.T]) \
        if len(sp.vertical) else np.zeros((F.source.dim, 0))
    # components of φ(ker) in the orthonormal horizontal frame
    A = H.T @ sp.metric @ phiK
    if A.shape[1] == 0:
        null = np.eye(H.shape[1])
    else:
        u, s, _ = np.linalg.svd(A, full_matrices=True)
        r = _rank(s, tol.rank_rel)
        null = u[:, r:]
    return gram_schmidt(Frame(p, H @ null), sp.metric, tol)


def xi_components(F: SmoothMap, S, p, tol: Tolerances = DEFAULT):
    """g-norms of the vertical and horizontal parts of ``ξ`` at ``p``."""
    sp = split(F, p, tol)
    xi = S.xi(p)
    v = sp.vproj(xi)
    return norm(sp.metric, v), norm(sp.metric, xi - v)


def xi_position(F: SmoothMap, S, points, tol: Tolerances = DEFAULT) -> XiPosition:
    comps = [xi_components(F, S, p, tol) for p in points]
    if max(c[0] for c in comps) < tol.position:
        return XiPosition.HORIZONTAL
    if max(c[1] for c in comps) < tol.position:
        return XiPosition.VERTICAL
    return XiPosition.MIXED


def mu_is_span_xi(F: SmoothMap, S, points, tol: Tolerances = DEFAULT) -> bool:
    for p in points:
        mu = mu_space(F, S, p, tol)
        if len(mu) != 1:
            return False
        g = _metric(F.source, p)
        if abs(abs(inner(g, mu[0], S.xi(p))) - 1.0) > tol.first:
            return False
    return True


def check_dim_theorem(F: SmoothMap, S, points, tol: Tolerances = DEFAULT) -> CheckRecord:
    """``dim ker F_* + 1 = dim N`` under the hypotheses of the dimension theorem."""
    name, anchor = "dimension_theorem", "Theorem 1"
    if not is_anti_invariant(F, S, points, tol).passed:
        return inapplicable(name, anchor, 0.5, "map is not anti-invariant")
    if not is_riemannian_submersion(F, points, tol).passed:
        return inapplicable(name, anchor, 0.5, "map is not a Riemannian submersion")
    if not mu_is_span_xi(F, S, points, tol):
        return inapplicable(name, anchor, 0.5, "horizontal space is not phi(ker) + span{xi}")
    k = fiber_dimension(F, points, tol)
    m = (F.source.dim - 1) // 2
    n = F.target.dim
    return CheckRecord(name, anchor, float(abs(k + 1 - n)), 0.5, points_sampled=len(points),
                       details={"m": m, "dim_ker": k, "n": n, "m+1": m + 1})
