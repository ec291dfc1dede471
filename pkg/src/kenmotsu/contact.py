"""Almost contact metric structures and the Kenmotsu condition."""

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
    _at,
    _metric,
    christoffel_raw,
    covariant_derivative,
    derivative_along,
    divergence,
    inner,
    norm,
    orthonormal_frame,
    random_field,
    sample_points,
)
from .report import CheckRecord
from .warped import WarpedProduct, interval, make_warped


@dataclass(frozen=True)
class AlmostContactStructure:
    """``(φ, ξ, η, g)`` given by coordinate components on one chart."""

    manifold: ChartManifold
    phi: Callable = field(repr=False)
    xi: VectorField = field(repr=False)
    eta: Callable = field(repr=False)
    label: str = ""

    def __post_init__(self):
        p = self.manifold.center()
        n = self.manifold.dim
        shapes = (np.shape(self.phi_at(p)), np.shape(self.xi(p)), np.shape(self.eta_at(p)))
        if shapes != ((n, n), (n,), (n,)):
            raise GeometryError(f"structure components have shapes {shapes}, manifold dimension {n}")

    def phi_at(self, p) -> np.ndarray:
        return np.asarray(self.phi(np.asarray(p, dtype=float)), dtype=float)

    def eta_at(self, p) -> np.ndarray:
        return np.asarray(self.eta(np.asarray(p, dtype=float)), dtype=float)

    def apply_phi(self, Y: VectorField) -> VectorField:
        """The field ``q ↦ φ_q Y_q``."""
        phi = self.phi

        def func(q):
            return np.asarray(phi(q), dtype=object).dot(np.asarray(Y.func(q), dtype=object))

        return VectorField(func, ad=Y.ad, label=f"phi({Y.label})")


@dataclass(frozen=True)
class KenmotsuManifold:
    structure: AlmostContactStructure
    warped: WarpedProduct | None = None

    @property
    def manifold(self) -> ChartManifold:
        return self.structure.manifold


def _frame_matrices(S: AlmostContactStructure, p):
    """φ, ξ, η expressed in a g-orthonormal frame at ``p``."""
    E = orthonormal_frame(S.manifold, p).vectors
    Einv = np.linalg.inv(E)
    return Einv @ S.phi_at(p) @ E, Einv @ S.xi(p), S.eta_at(p) @ E


def verify_almost_contact(S: AlmostContactStructure, points, tol: Tolerances = DEFAULT) -> CheckRecord:
    """Residuals of the algebraic identities of an almost contact metric structure.

    Everything is written in an orthonormal frame, so the matrix residuals
    bound the identities for all unit vectors at once.
    """
    n = S.manifold.dim
    eye = np.eye(n)
    worst = {"Eq.(1)": 0.0, "Eq.(2)": 0.0, "Eq.(3)": 0.0}
    for p in points:
        phi, xi, eta = _frame_matrices(S, p)
        r1 = max(
            np.max(np.abs(phi @ phi + eye - np.outer(xi, eta))),
            np.max(np.abs(phi @ xi)),
            np.max(np.abs(eta @ phi)),
            abs(eta @ xi - 1.0),
        )
        r2 = np.max(np.abs(phi.T @ phi - eye + np.outer(eta, eta)))
        r3 = max(np.max(np.abs(phi + phi.T)), np.max(np.abs(eta - xi)))
        worst["Eq.(1)"] = max(worst["Eq.(1)"], float(r1))
        worst["Eq.(2)"] = max(worst["Eq.(2)"], float(r2))
        worst["Eq.(3)"] = max(worst["Eq.(3)"], float(r3))
    return CheckRecord("almost_contact", "Eqs.(1)-(3)", max(worst.values()), tol.structure,
                       points_sampled=len(points), details=worst)


def fundamental_two_form(S: AlmostContactStructure, p, X, Y) -> float:
    """``Φ(X, Y) = g(X, φY)``."""
    g = _metric(S.manifold, p)
    return inner(g, np.asarray(X, dtype=float), S.phi_at(p) @ np.asarray(Y, dtype=float))


def kenmotsu_defect_vector(S: AlmostContactStructure, X, Y: VectorField, p,
                           tol: Tolerances = DEFAULT) -> np.ndarray:
    M = S.manifold
    p = np.asarray(p, dtype=float)
    gamma = christoffel_raw(M, p, tol)
    g = _metric(M, p)
    phi = S.phi_at(p)
    x, y = _at(X, p), Y(p)
    nabla_phi = (covariant_derivative(M, x, S.apply_phi(Y), p, tol, gamma)
                 - phi @ covariant_derivative(M, x, Y, p, tol, gamma))
    return nabla_phi - inner(g, phi @ x, y) * S.xi(p) + (S.eta_at(p) @ y) * (phi @ x)


def kenmotsu_defect(S: AlmostContactStructure, X, Y: VectorField, p, tol: Tolerances = DEFAULT) -> float:
    """g-norm of ``(∇_X φ)Y − g(φX, Y)ξ + η(Y)φX``."""
    return norm(_metric(S.manifold, p), kenmotsu_defect_vector(S, X, Y, p, tol))


def nabla_eta_check(S: AlmostContactStructure, X, Y: VectorField, p, tol: Tolerances = DEFAULT) -> float:
    """``|(∇_X η)Y − g(X, Y) + η(X)η(Y)|``."""
    M = S.manifold
    p = np.asarray(p, dtype=float)
    x, y = _at(X, p), Y(p)
    eta = S.eta_at(p)
    g = _metric(M, p)

    def eta_of_y(q):
        return np.asarray(S.eta(q), dtype=object).dot(np.asarray(Y.func(q), dtype=object))

    d = float(derivative_along(eta_of_y, Y.ad, p, x, tol))
    lhs = d - eta @ covariant_derivative(M, x, Y, p, tol)
    return abs(lhs - inner(g, x, y) + (eta @ x) * (eta @ y))


def reeb_defect(S: AlmostContactStructure, X, p, tol: Tolerances = DEFAULT) -> float:
    """g-norm of ``∇_X ξ − X + η(X)ξ``."""
    p = np.asarray(p, dtype=float)
    x = _at(X, p)
    v = covariant_derivative(S.manifold, x, S.xi, p, tol) - x + (S.eta_at(p) @ x) * S.xi(p)
    return norm(_metric(S.manifold, p), v)


def verify_kenmotsu(S: AlmostContactStructure, points, tol: Tolerances = DEFAULT,
                    seed: int | None = None) -> CheckRecord:
    """Kenmotsu defect with random fields at every sample point."""
    rng = np.random.default_rng(tol.seed if seed is None else seed)
    n = S.manifold.dim
    worst = 0.0
    worst_eta = 0.0
    worst_reeb = 0.0
    for p in points:
        X = random_field(rng, n)
        Y = random_field(rng, n)
        worst = max(worst, kenmotsu_defect(S, X, Y, p, tol))
        worst_eta = max(worst_eta, nabla_eta_check(S, X, Y, p, tol))
        worst_reeb = max(worst_reeb, reeb_defect(S, X, p, tol))
    return CheckRecord("kenmotsu", "Eq.(4)", worst, tol.first, points_sampled=len(points),
                       details={"Eq.(4)": worst, "Eq.(5)": worst_reeb, "Eq.(6)": worst_eta})


def verify_divergence(S: AlmostContactStructure, points, tol: Tolerances = DEFAULT) -> CheckRecord:
    """``div ξ = 2m`` on a ``(2m+1)``-dimensional Kenmotsu manifold."""
    m = (S.manifold.dim - 1) // 2
    worst = max(abs(divergence(S.manifold, S.xi, p, tol) - 2 * m) for p in points)
    return CheckRecord("div_xi", "div xi = 2m", float(worst), tol.first, points_sampled=len(points),
                       details={"expected": 2 * m})


# ---------------------------------------------------------------------------
# built-in and constructed structures


EXAMPLE1_PHI = np.array([
    [0, 0, -1, 0, 0],
    [0, 0, 0, -1, 0],
    [1, 0, 0, 0, 0],
    [0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0],
], dtype=float)


def example_ken(half_width: float = 1.0) -> KenmotsuManifold:
    """R^5 with ``g = e^{2z} Σ (dx_i² + dy_i²) + dz²``, ``η = dz``, ``ξ = ∂z``."""

    def metric(p):
        w = np.exp(2 * p[4])
        return np.array([
            [w, 0, 0, 0, 0],
            [0, w, 0, 0, 0],
            [0, 0, w, 0, 0],
            [0, 0, 0, w, 0],
            [0, 0, 0, 0, 1.0],
        ], dtype=object)

    M = ChartManifold(5, (-half_width,) * 5, (half_width,) * 5, metric, label="example1",
                      coords=("x1", "x2", "y1", "y2", "z"))
    xi = np.array([0, 0, 0, 0, 1.0])
    S = AlmostContactStructure(
        M,
        phi=lambda p: EXAMPLE1_PHI,
        xi=VectorField(lambda p: xi, label="xi"),
        eta=lambda p: xi,
        label="example1",
    )
    return KenmotsuManifold(S)


def phi_basis(p) -> np.ndarray:
    """Columns ``E1..E5`` of the φ-basis of the R^5 example at ``p``."""
    s = np.exp(-p[4])
    E = np.zeros((5, 5))
    E[2, 0] = s  # E1 = e^{-z} ∂y1
    E[3, 1] = s  # E2 = e^{-z} ∂y2
    E[0, 2] = s  # E3 = e^{-z} ∂x1
    E[1, 3] = s  # E4 = e^{-z} ∂x2
    E[4, 4] = 1.0
    return E


@dataclass(frozen=True)
class KaehlerManifold:
    manifold: ChartManifold
    J: Callable = field(repr=False)


def standard_complex(k: int) -> np.ndarray:
    """``J ∂x_i = ∂y_i`` on coordinates ``(x_1..x_k, y_1..y_k)``."""
    J = np.zeros((2 * k, 2 * k))
    J[k:, :k] = np.eye(k)
    J[:k, k:] = -np.eye(k)
    return J


def flat_kaehler(k: int, half_width: float = 1.0) -> KaehlerManifold:
    coords = tuple(f"x{i + 1}" for i in range(k)) + tuple(f"y{i + 1}" for i in range(k))
    M = ChartManifold(2 * k, (-half_width,) * (2 * k), (half_width,) * (2 * k),
                      lambda p: np.eye(2 * k), label=f"C^{k}", coords=coords)
    J = standard_complex(k)
    return KaehlerManifold(M, lambda p: J)


def kaehler_defects(L: KaehlerManifold, points, tol: Tolerances = DEFAULT) -> dict:
    """Worst residuals of ``J² = −I``, ``J``-invariance of ``g`` and ``∇J = 0``."""
    n = L.manifold.dim
    worst = {"J^2=-I": 0.0, "hermitian": 0.0, "parallel": 0.0}
    for p in points:
        J, dJ = autodiff.value_and_jacobian(L.J, p)  # dJ[k, j, i] = ∂_i J^k_j
        g = _metric(L.manifold, p)
        gamma = christoffel_raw(L.manifold, p, tol)
        worst["J^2=-I"] = max(worst["J^2=-I"], float(np.max(np.abs(J @ J + np.eye(n)))))
        worst["hermitian"] = max(worst["hermitian"], float(np.max(np.abs(J.T @ g @ J - g))))
        # (∇_i J)^k_j = ∂_i J^k_j + Γ^k_im J^m_j − J^k_m Γ^m_ij
        nab = (np.transpose(dJ, (2, 0, 1))
               + np.einsum("kim,mj->ikj", gamma, J)
               - np.einsum("km,mij->ikj", J, gamma))
        worst["parallel"] = max(worst["parallel"], float(np.max(np.abs(nab))))
    return worst


def kenmotsu_from_kaehler(L: KaehlerManifold, s: float = 1.0, t_range=(-1.0, 1.0),
                          tol: Tolerances = DEFAULT) -> KenmotsuManifold:
    """``I ×_f L`` with ``f(t) = s e^t``, ``ξ = ∂t``, ``η = dt`` and ``φ`` lifted from ``J``.

    The Kaehler conditions on ``L`` are checked at sample points first.
    """
    if not s > 0:
        raise PreconditionError(f"scale s must be positive, got {s}")
    pts = sample_points(L.manifold, tol.samples, tol.seed, tol)
    bad = {k: v for k, v in kaehler_defects(L, pts, tol).items() if not v < tol.first}
    if bad:
        raise PreconditionError(f"input is not Kaehler: {bad}")

    W = make_warped(interval(*t_range), L.manifold, lambda a: s * np.exp(a[0]), tol,
                    label=f"I x_{{{s}e^t}} {L.manifold.label}")
    n = W.manifold.dim
    Jfun = L.J

    def phi(q):
        out = np.zeros((n, n), dtype=object)
        out[1:, 1:] = np.asarray(Jfun(q[1:]), dtype=object)
        return out

    e0 = np.zeros(n)
    e0[0] = 1.0
    S = AlmostContactStructure(
        W.manifold,
        phi=phi,
        xi=VectorField(lambda q: e0, label="d_t"),
        eta=lambda q: e0,
        label=W.manifold.label,
    )
    return KenmotsuManifold(S, warped=W)
