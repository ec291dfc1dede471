"""O'Neill's fundamental tensors T and A, and the second fundamental form of a map.

Vertical and horizontal parts of a field are taken with the basis-free
projectors of :func:`kenmotsu.submersion.horizontal_projector`; their
derivatives come from central differences, everything else from duals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import GeometryError
from .geometry import (
    VectorField,
    _at,
    _metric,
    christoffel_raw,
    constant_field,
    covariant_derivative,
    inner,
    lie_bracket,
    norm,
    orthonormal_frame,
    random_field,
)
from .report import CheckRecord
from .submersion import SmoothMap, fiber_dimension, horizontal_projector, is_riemannian_submersion, split


@dataclass
class ONeillContext:
    """A map together with cached per-point projectors.

    ``riemannian`` is False when the map failed the Riemannian-submersion
    test at construction; tensors are still evaluated from their defining
    formulas but records carry a conformal-context note.
    """

    map: SmoothMap
    structure: object | None = None
    tol: Tolerances = DEFAULT
    riemannian: bool = True
    fiber_dim: int | None = None
    _ph: dict = field(default_factory=dict, repr=False)
    _gamma: dict = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, F: SmoothMap, points, structure=None, tol: Tolerances = DEFAULT) -> "ONeillContext":
        riem = is_riemannian_submersion(F, points, tol).passed
        return cls(F, structure, tol, riem, fiber_dimension(F, points, tol))

    @property
    def source(self):
        return self.map.source

    @property
    def note(self) -> str:
        return "" if self.riemannian else "conformal context: map is not a Riemannian submersion"

    def PH(self, q) -> np.ndarray:
        key = np.asarray(q, dtype=float).tobytes()
        P = self._ph.get(key)
        if P is None:
            if len(self._ph) > 4096:
                self._ph.clear()
            P = horizontal_projector(self.map, q, self.tol)
            self._ph[key] = P
        return P

    def PV(self, q) -> np.ndarray:
        return np.eye(self.source.dim) - self.PH(q)

    def gamma(self, p) -> np.ndarray:
        key = np.asarray(p, dtype=float).tobytes()
        G = self._gamma.get(key)
        if G is None:
            if len(self._gamma) > 4096:
                self._gamma.clear()
            G = christoffel_raw(self.source, p, self.tol)
            self._gamma[key] = G
        return G

    def vertical(self, E) -> VectorField:
        E = _as_field(E)
        return VectorField(lambda q: self.PV(q) @ E(q), ad=False, label=f"V({E.label})")

    def horizontal(self, E) -> VectorField:
        E = _as_field(E)
        return VectorField(lambda q: self.PH(q) @ E(q), ad=False, label=f"H({E.label})")

    def nabla(self, X, Y, p) -> np.ndarray:
        return covariant_derivative(self.source, _at(X, p), _as_field(Y), p, self.tol, self.gamma(p))

    def metric(self, p) -> np.ndarray:
        return _metric(self.source, p)


def _as_field(E) -> VectorField:
    return E if isinstance(E, VectorField) else constant_field(E)


def tensor_T(ctx: ONeillContext, E, G, p) -> np.ndarray:
    """``T_E G = H ∇_{VE} VG + V ∇_{VE} HG``."""
    p = np.asarray(p, dtype=float)
    G = _as_field(G)
    ve = ctx.PV(p) @ _at(E, p)
    return (ctx.PH(p) @ ctx.nabla(ve, ctx.vertical(G), p)
            + ctx.PV(p) @ ctx.nabla(ve, ctx.horizontal(G), p))


def tensor_A(ctx: ONeillContext, E, G, p) -> np.ndarray:
    """``A_E G = V ∇_{HE} HG + H ∇_{HE} VG``."""
    p = np.asarray(p, dtype=float)
    G = _as_field(G)
    he = ctx.PH(p) @ _at(E, p)
    return (ctx.PV(p) @ ctx.nabla(he, ctx.horizontal(G), p)
            + ctx.PH(p) @ ctx.nabla(he, ctx.vertical(G), p))


def _fields(ctx, rng, kinds):
    n = ctx.source.dim
    out = []
    for k in kinds:
        f = random_field(rng, n)
        out.append(ctx.vertical(f) if k == "v" else ctx.horizontal(f) if k == "h" else f)
    return out


def _rng(ctx, seed):
    return np.random.default_rng(ctx.tol.seed if seed is None else seed)


def verify_lemma_identities(ctx: ONeillContext, points, seed: int | None = None) -> CheckRecord:
    """``T_U W = T_W U`` and ``A_X Y = ½ V[X, Y]`` for random vertical U, W and horizontal X, Y."""
    rng = _rng(ctx, seed)
    r11 = r12 = 0.0
    for p in points:
        U, W, X, Y = _fields(ctx, rng, "vvhh")
        g = ctx.metric(p)
        r11 = max(r11, norm(g, tensor_T(ctx, U, W, p) - tensor_T(ctx, W, U, p)))
        half = 0.5 * ctx.PV(p) @ lie_bracket(X, Y, p, ctx.tol)
        r12 = max(r12, norm(g, tensor_A(ctx, X, Y, p) - half))
    return CheckRecord("lemma1_T_A", "Eqs.(11)-(12)", max(r11, r12), ctx.tol.first,
                       points_sampled=len(points), note=ctx.note,
                       details={"Eq.(11)": r11, "Eq.(12)": r12})


def verify_skew_symmetry(ctx: ONeillContext, points, seed: int | None = None) -> CheckRecord:
    """``g(T_D E, G) + g(T_D G, E) = 0`` and the same for ``A``."""
    rng = _rng(ctx, seed)
    rt = ra = 0.0
    for p in points:
        D, E, G = _fields(ctx, rng, "aaa")
        g = ctx.metric(p)
        e, gg = E(p), G(p)
        rt = max(rt, abs(inner(g, tensor_T(ctx, D, E, p), gg) + inner(g, tensor_T(ctx, D, G, p), e)))
        ra = max(ra, abs(inner(g, tensor_A(ctx, D, E, p), gg) + inner(g, tensor_A(ctx, D, G, p), e)))
    return CheckRecord("skew_symmetry", "Eqs.(19)-(20)", max(rt, ra), ctx.tol.first,
                       points_sampled=len(points), note=ctx.note,
                       details={"Eq.(19)": rt, "Eq.(20)": ra})


def verify_fundamental_equations(ctx: ONeillContext, points, seed: int | None = None) -> CheckRecord:
    """The four splittings of ``∇`` along vertical and horizontal arguments."""
    rng = _rng(ctx, seed)
    worst = {"Eq.(13)": 0.0, "Eq.(14)": 0.0, "Eq.(15)": 0.0, "Eq.(16)": 0.0}
    for p in points:
        V, W, X, Y = _fields(ctx, rng, "vvhh")
        g = ctx.metric(p)
        PV, PH = ctx.PV(p), ctx.PH(p)
        nVW, nVX, nXV, nXY = (ctx.nabla(V, W, p), ctx.nabla(V, X, p),
                              ctx.nabla(X, V, p), ctx.nabla(X, Y, p))
        res = {
            "Eq.(13)": nVW - tensor_T(ctx, V, W, p) - PV @ nVW,
            "Eq.(14)": nVX - PH @ nVX - tensor_T(ctx, V, X, p),
            "Eq.(15)": nXV - tensor_A(ctx, X, V, p) - PV @ nXV,
            "Eq.(16)": nXY - PH @ nXY - tensor_A(ctx, X, Y, p),
        }
        for k, v in res.items():
            worst[k] = max(worst[k], norm(g, v))
    return CheckRecord("fundamental_equations", "Eqs.(13)-(16)", max(worst.values()), ctx.tol.first,
                       points_sampled=len(points), note=ctx.note, details=worst)


def verify_basic_fields(ctx: ONeillContext, points, seed: int | None = None) -> CheckRecord:
    """Pointwise consequences for basic fields lifted from target coordinate fields.

    For a basic ``X`` and vertical ``U``: ``[X, U]`` is vertical and
    ``H ∇_U X = A_X U``.
    """
    rng = _rng(ctx, seed)
    F = ctx.map
    n_t = F.target.dim
    rb = ra = 0.0
    for p in points:
        coeffs = rng.normal(size=n_t)
        X = basic_lift(ctx, coeffs)
        (U,) = _fields(ctx, rng, "v")
        g = ctx.metric(p)
        rb = max(rb, norm(g, ctx.PH(p) @ lie_bracket(X, U, p, ctx.tol)))
        ra = max(ra, norm(g, ctx.PH(p) @ ctx.nabla(U, X, p) - tensor_A(ctx, X, U, p)))
    return CheckRecord("basic_fields", "Lemma 2", max(rb, ra), ctx.tol.first, points_sampled=len(points),
                       note=ctx.note, details={"H[X,U]": rb, "H(nabla_U X)-A_X U": ra})


def basic_lift(ctx: ONeillContext, coeffs) -> VectorField:
    """Horizontal lift of the constant-coefficient target field ``Σ c_a ∂/∂y_a``."""
    F = ctx.map
    c = np.asarray(coeffs, dtype=float)

    def func(q):
        J = F.jacobian(q)
        G = _metric(F.source, q)
        GiJt = np.linalg.solve(G, J.T)
        return GiJt @ np.linalg.solve(J @ GiJt, c)

    return VectorField(func, ad=False, label="basic")


def mean_curvature(ctx: ONeillContext, p) -> np.ndarray:
    """``H = (1/k) Σ_j T_{U_j} U_j`` over an orthonormal vertical frame."""
    sp = split(ctx.map, p, ctx.tol)
    k = len(sp.vertical)
    if k == 0:
        raise GeometryError("mean curvature undefined for zero-dimensional fibers")
    return sum(tensor_T(ctx, u, u, p) for u in sp.vertical.vectors.T) / k


def is_totally_umbilical(ctx: ONeillContext, points, seed: int | None = None) -> CheckRecord:
    rng = _rng(ctx, seed)
    worst = 0.0
    for p in points:
        U, W = _fields(ctx, rng, "vv")
        g = ctx.metric(p)
        H = mean_curvature(ctx, p)
        worst = max(worst, norm(g, tensor_T(ctx, U, W, p) - inner(g, U(p), W(p)) * H))
    return CheckRecord("totally_umbilical", "Eq.(17)", worst, ctx.tol.first, points_sampled=len(points),
                       informational=True, note=ctx.note)


# ---------------------------------------------------------------------------
# second fundamental form of the map


def pushforward_derivative(ctx: ONeillContext, X, Y, p) -> np.ndarray:
    """``∇^F_X (F_* Y)`` along the line ``c(t) = p + tX``, 4-point stencil."""
    F = ctx.map
    p = np.asarray(p, dtype=float)
    Y = _as_field(Y)
    x = _at(X, p)
    h = ctx.tol.curve_step

    def W(t):
        q = p + t * x
        return F.jacobian(q) @ Y(q)

    dW = (W(-2 * h) - 8 * W(-h) + 8 * W(h) - W(2 * h)) / (12 * h)
    Fp, J = F.value_and_jacobian(p)
    gamma_n = christoffel_raw(F.target, Fp, ctx.tol)
    return dW + np.einsum("kij,i,j->k", gamma_n, J @ x, J @ Y(p))


def second_fundamental_form(ctx: ONeillContext, X, Y, p) -> np.ndarray:
    """``(∇F_*)(X, Y) = ∇^F_X F_*Y − F_*(∇_X Y)`` as a vector at ``F(p)``."""
    p = np.asarray(p, dtype=float)
    J = ctx.map.jacobian(p)
    return pushforward_derivative(ctx, X, Y, p) - J @ ctx.nabla(X, Y, p)


def tension_field(ctx: ONeillContext, p) -> np.ndarray:
    """``τ = Σ_i (∇F_*)(e_i, e_i)`` over a g-orthonormal frame."""
    frame = orthonormal_frame(ctx.source, p, ctx.tol)
    return sum(second_fundamental_form(ctx, e, e, p) for e in frame.vectors.T)


def target_norm(ctx: ONeillContext, p, w) -> float:
    return norm(_metric(ctx.map.target, ctx.map(p)), w)


def verify_second_fundamental_form(ctx: ONeillContext, points, seed: int | None = None) -> CheckRecord:
    """Symmetry of ``∇F_*`` and its vanishing on horizontal pairs."""
    rng = _rng(ctx, seed)
    rs = rh = 0.0
    for p in points:
        X, Y, Xh, Yh = _fields(ctx, rng, "aahh")
        rs = max(rs, target_norm(ctx, p, second_fundamental_form(ctx, X, Y, p)
                                 - second_fundamental_form(ctx, Y, X, p)))
        rh = max(rh, target_norm(ctx, p, second_fundamental_form(ctx, Xh, Yh, p)))
    return CheckRecord("second_fundamental_form", "Eqs.(21)-(22)", max(rs, rh), ctx.tol.second,
                       points_sampled=len(points), note=ctx.note,
                       details={"symmetry": rs, "Eq.(22)": rh})


def is_harmonic(ctx: ONeillContext, points) -> CheckRecord:
    worst = max(target_norm(ctx, p, tension_field(ctx, p)) for p in points)
    return CheckRecord("harmonic", "Eq.(24)", worst, ctx.tol.second, points_sampled=len(points),
                       note=ctx.note)
