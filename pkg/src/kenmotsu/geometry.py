"""Single-chart Riemannian manifolds and the Levi-Civita calculus on them.

Points and tangent vectors are plain ``numpy`` arrays of coordinate
components.  Metric, vector-field and scalar-field callables receive a
coordinate vector and must be written with arithmetic and ``numpy``
elementary functions so that they also evaluate on :class:`~kenmotsu.autodiff.Dual`
inputs; that gives exact first derivatives.  Fields that cannot be evaluated
on duals (projections built from an SVD, for instance) are flagged with
``ad=False`` and differentiated by central differences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import autodiff
from .config import DEFAULT, Tolerances
from .errors import ConditioningError, DegeneracyError, DomainError, GeometryError


@dataclass(frozen=True)
class ChartManifold:
    """A manifold covered by one coordinate box with a smooth metric."""

    dim: int
    lower: tuple
    upper: tuple
    metric: Callable = field(repr=False)
    label: str = ""
    coords: tuple = ()

    def __post_init__(self):
        lo = tuple(float(x) for x in self.lower)
        hi = tuple(float(x) for x in self.upper)
        if self.dim < 1 or len(lo) != self.dim or len(hi) != self.dim:
            raise GeometryError(f"{self.label or 'chart'}: box does not match dimension {self.dim}")
        if any(a >= b for a, b in zip(lo, hi)):
            raise GeometryError(f"{self.label or 'chart'}: empty coordinate box")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        if not self.coords:
            object.__setattr__(self, "coords", tuple(f"x{i}" for i in range(self.dim)))
        elif len(self.coords) != self.dim:
            raise GeometryError("coordinate names do not match dimension")

    def center(self) -> np.ndarray:
        return 0.5 * (np.array(self.lower) + np.array(self.upper))

    def margin(self, tol: Tolerances = DEFAULT) -> np.ndarray:
        scale = 1.0 + np.maximum(np.abs(self.lower), np.abs(self.upper))
        return tol.margin_factor * tol.fd_step * scale

    def contains(self, p) -> bool:
        p = np.asarray(p, dtype=float)
        return bool(np.all(p >= self.lower) and np.all(p <= self.upper))


@dataclass(frozen=True)
class VectorField:
    """Coordinate components of a vector field as a function of the point."""

    func: Callable = field(repr=False)
    ad: bool = True
    label: str = ""

    def __call__(self, p) -> np.ndarray:
        return np.asarray(self.func(p), dtype=float)


@dataclass(frozen=True)
class Frame:
    """A family of tangent vectors at one point, stored as matrix columns."""

    base: np.ndarray
    vectors: np.ndarray
    orthonormal: bool = False

    def __len__(self):
        return self.vectors.shape[1]

    def __getitem__(self, i) -> np.ndarray:
        return self.vectors[:, i]


def constant_field(v, label="") -> VectorField:
    v = np.array(v, dtype=float)
    return VectorField(lambda p: v, label=label)


def coordinate_field(dim: int, i: int) -> VectorField:
    e = np.zeros(dim)
    e[i] = 1.0
    return constant_field(e, label=f"d{i}")


def affine_field(offset, matrix, label="") -> VectorField:
    """``p ↦ offset + matrix @ p``; written element-wise so duals pass through."""
    offset = np.array(offset, dtype=float)
    matrix = np.array(matrix, dtype=float)

    def func(p):
        return offset + matrix.dot(p)

    return VectorField(func, label=label)


def random_field(rng: np.random.Generator, dim: int, label="") -> VectorField:
    """Smooth, non-constant test field with O(1) components."""
    a = rng.normal(size=dim)
    b = rng.normal(size=(dim, dim)) * 0.5
    c = rng.normal(size=(dim, dim)) * 0.5
    k = rng.normal(size=dim)

    def func(p):
        return a + b.dot(p) + c.dot(_sines(p, k))

    return VectorField(func, label=label)


def _sines(p, k):
    return np.array([np.sin(k[i] * p[i]) for i in range(len(p))], dtype=object)


def check_point(M: ChartManifold, p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (M.dim,):
        raise DomainError(f"{M.label}: point has shape {p.shape}, expected ({M.dim},)")
    if not M.contains(p):
        raise DomainError(f"{M.label}: point {p.tolist()} outside coordinate box")
    return p


def sample_points(M: ChartManifold, n: int | None = None, seed: int | None = None,
                  tol: Tolerances = DEFAULT) -> np.ndarray:
    """Uniform points in the box shrunk by the differencing margin."""
    n = tol.samples if n is None else n
    seed = tol.seed if seed is None else seed
    rng = np.random.default_rng(seed)
    m = M.margin(tol)
    lo = np.array(M.lower) + m
    hi = np.array(M.upper) - m
    return rng.uniform(lo, hi, size=(n, M.dim))


# ---------------------------------------------------------------------------
# metric


def _metric(M: ChartManifold, p) -> np.ndarray:
    return np.asarray(M.metric(np.asarray(p, dtype=float)), dtype=float)


def metric_at(M: ChartManifold, p, tol: Tolerances = DEFAULT) -> np.ndarray:
    p = check_point(M, p)
    g = _metric(M, p)
    if g.shape != (M.dim, M.dim):
        raise GeometryError(f"{M.label}: metric has shape {g.shape}")
    scale = max(1.0, float(np.max(np.abs(g))))
    if np.max(np.abs(g - g.T)) > tol.structure * scale:
        raise GeometryError(f"{M.label}: metric not symmetric at {p.tolist()}")
    if np.linalg.eigvalsh(g)[0] <= tol.structure * scale:
        raise GeometryError(f"{M.label}: metric not positive definite at {p.tolist()}")
    return g


def metric_jacobian(M: ChartManifold, p):
    """``(g, dg)`` with ``dg[i, j, l] = ∂_l g_ij``."""
    return autodiff.value_and_jacobian(M.metric, p)


def inner(g, X, Y) -> float:
    return float(np.dot(X, g.dot(Y)))


def norm(g, X) -> float:
    return float(np.sqrt(max(inner(g, X, X), 0.0)))


def _guarded_solve(g, rhs, tol: Tolerances):
    if np.linalg.cond(g) > tol.cond_max:
        raise ConditioningError("metric condition number exceeds guard")
    return np.linalg.solve(g, rhs)


def christoffel_raw(M: ChartManifold, p, tol: Tolerances = DEFAULT) -> np.ndarray:
    g, dg = metric_jacobian(M, p)
    n = M.dim
    # lowered[l, i, j] = ∂_i g_jl + ∂_j g_il − ∂_l g_ij
    lowered = np.transpose(dg, (1, 2, 0)) + np.transpose(dg, (1, 0, 2)) - np.transpose(dg, (2, 0, 1))
    gamma = _guarded_solve(g, lowered.reshape(n, n * n), tol)
    return 0.5 * gamma.reshape(n, n, n)


def christoffel(M: ChartManifold, p, tol: Tolerances = DEFAULT) -> np.ndarray:
    """Christoffel symbols ``Γ[k, i, j] = Γ^k_ij`` of the Levi-Civita connection."""
    p = check_point(M, p)
    return christoffel_raw(M, p, tol)


# ---------------------------------------------------------------------------
# differentiation of fields


def _at(X, p) -> np.ndarray:
    if isinstance(X, VectorField):
        return X(p)
    return np.asarray(X, dtype=float)


def fd_step(p, v, tol: Tolerances = DEFAULT) -> float:
    vmax = float(np.max(np.abs(v)))
    return tol.fd_step * (1.0 + float(np.max(np.abs(p)))) / vmax


def derivative_along(func, ad: bool, p, v, tol: Tolerances = DEFAULT) -> np.ndarray:
    """Directional derivative of a vector- or scalar-valued chart function."""
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    if isinstance(func, VectorField):
        func = func.func
    if ad:
        return autodiff.jvp(func, p, v)[1]
    if not np.any(v):
        return np.zeros_like(np.asarray(func(p), dtype=float))
    h = fd_step(p, v, tol)
    fp = np.asarray(func(p + h * v), dtype=float)
    fm = np.asarray(func(p - h * v), dtype=float)
    return (fp - fm) / (2.0 * h)


def field_jacobian(Y: VectorField, p, tol: Tolerances = DEFAULT) -> np.ndarray:
    """``D[k, i] = ∂_i Y^k`` at ``p``."""
    p = np.asarray(p, dtype=float)
    if Y.ad:
        return autodiff.value_and_jacobian(Y.func, p)[1]
    n = p.shape[0]
    return np.column_stack([derivative_along(Y, False, p, np.eye(n)[i], tol) for i in range(n)])


def covariant_derivative(M: ChartManifold, X, Y: VectorField, p, tol: Tolerances = DEFAULT,
                         gamma: np.ndarray | None = None) -> np.ndarray:
    """``∇_X Y`` at ``p``.  ``X`` may be a field or a vector at ``p``."""
    p = np.asarray(p, dtype=float)
    x = _at(X, p)
    if gamma is None:
        gamma = christoffel_raw(M, p, tol)
    return derivative_along(Y, Y.ad, p, x, tol) + np.einsum("kij,i,j->k", gamma, x, Y(p))


def lie_bracket(X: VectorField, Y: VectorField, p, tol: Tolerances = DEFAULT) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    return derivative_along(Y, Y.ad, p, X(p), tol) - derivative_along(X, X.ad, p, Y(p), tol)


def divergence(M: ChartManifold, X: VectorField, p, tol: Tolerances = DEFAULT) -> float:
    """Trace of ``v ↦ ∇_v X``; the trace is frame independent, so the coordinate one is used."""
    p = check_point(M, p)
    gamma = christoffel_raw(M, p, tol)
    return float(np.trace(field_jacobian(X, p, tol)) + np.einsum("iij,j->", gamma, X(p)))


def gradient(M: ChartManifold, f: Callable, p, tol: Tolerances = DEFAULT) -> np.ndarray:
    p = check_point(M, p)
    _, df = autodiff.value_and_jacobian(f, p)
    return _guarded_solve(_metric(M, p), np.reshape(df, (M.dim,)), tol)


# ---------------------------------------------------------------------------
# frames


def gram_schmidt(frame: Frame, g: np.ndarray, tol: Tolerances = DEFAULT) -> Frame:
    """Orthonormalize ``frame`` against ``g`` in input order (modified Gram-Schmidt).

    Raises DegeneracyError when a vector is dependent on its predecessors.
    """
    vecs = np.asarray(frame.vectors, dtype=float)
    out = []
    for j in range(vecs.shape[1]):
        v = vecs[:, j].copy()
        size = norm(g, v)
        for _ in range(2):  # second pass restores orthogonality lost to rounding
            for u in out:
                v -= inner(g, u, v) * u
        r = norm(g, v)
        if size == 0.0 or r <= max(tol.rank_rel, 1e-12) * size:
            raise DegeneracyError(f"vector {j} is linearly dependent on its predecessors")
        out.append(v / r)
    mat = np.column_stack(out) if out else np.zeros((vecs.shape[0], 0))
    return Frame(np.asarray(frame.base, dtype=float), mat, orthonormal=True)


def orthonormal_frame(M: ChartManifold, p, tol: Tolerances = DEFAULT) -> Frame:
    p = np.asarray(p, dtype=float)
    return gram_schmidt(Frame(p, np.eye(M.dim)), _metric(M, p), tol)


def is_orthonormal(frame: Frame, g: np.ndarray, atol: float = 1e-10) -> bool:
    V = frame.vectors
    return bool(np.max(np.abs(V.T @ g @ V - np.eye(V.shape[1])), initial=0.0) < atol)
