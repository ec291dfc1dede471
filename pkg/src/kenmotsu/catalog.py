"""Built-in manifolds, structures and maps used by the suite and the CLI."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .contact import AlmostContactStructure, KenmotsuManifold, example_ken, flat_kaehler, kenmotsu_from_kaehler
from .geometry import ChartManifold
from .submersion import SmoothMap
from .warped import WarpedProduct, compose_with_submersion, flat, interval, make_warped, second_projection

R2 = np.sqrt(2.0)


@dataclass(frozen=True)
class Setup:
    """A map from a (possibly structured) source, with the expected profile."""

    name: str
    map: SmoothMap | None
    structure: AlmostContactStructure | None
    profile: str  # "riemannian", "conformal" or "structure"
    warped: WarpedProduct | None = None
    dilation: Callable | None = field(default=None, repr=False)  # expected λ(p), if known


def warped_target(half_width: float = 2.0, z_range=(-1.0, 1.0)) -> ChartManifold:
    """``R ×_{e^z} R²`` with ``g = e^{2z}(du² + dv²) + dz²``."""

    def metric(q):
        w = np.exp(2 * q[2])
        return np.array([[w, 0, 0], [0, w, 0], [0, 0, 1.0]], dtype=object)

    return ChartManifold(3, (-half_width, -half_width, z_range[0]), (half_width, half_width, z_range[1]),
                         metric, label="N=R x_e^z R^2", coords=("u", "v", "z"))


def example2(K: KenmotsuManifold | None = None) -> Setup:
    """``F(x1, x2, y1, y2, z) = ((x1 + y2)/√2, (x2 + y1)/√2, z)`` onto ``R ×_{e^z} R²``."""
    K = K or example_ken()
    F = SmoothMap(K.manifold, warped_target(),
                  lambda p: np.array([(p[0] + p[3]) / R2, (p[1] + p[2]) / R2, p[4]], dtype=object),
                  label="example2")
    return Setup("example2", F, K.structure, "riemannian")


def example3(K: KenmotsuManifold | None = None) -> Setup:
    """``F(x1, x2, y1, y2, z) = ((x1 + y2)/√2, (x2 + y1)/√2)`` onto flat ``R²``.

    The target carries the flat metric; the map is then horizontally
    conformal with dilation ``λ = z``.
    """
    K = K or example_ken()
    F = SmoothMap(K.manifold, flat(2, 2.0, coords=("u", "v"), label="R^2"),
                  lambda p: np.array([(p[0] + p[3]) / R2, (p[1] + p[2]) / R2], dtype=object),
                  label="example3")
    return Setup("example3", F, K.structure, "conformal", dilation=lambda p: p[4])


def coordinate_projection(K: KenmotsuManifold | None = None) -> SmoothMap:
    """``(x2, y2, z)`` onto ``R ×_{e^z} R²``; its kernel ``span{∂x1, ∂y1}`` is φ-invariant."""
    K = K or example_ken()
    return SmoothMap(K.manifold, warped_target(),
                     lambda p: np.array([p[1], p[3], p[4]], dtype=object), label="proj(x2,y2,z)")


def tilted_map(K: KenmotsuManifold | None = None) -> SmoothMap:
    """Example-3 style map whose kernel leans toward ξ: third component ``z + x1``."""
    K = K or example_ken()
    tgt = ChartManifold(3, (-2.0, -2.0, -2.5), (2.0, 2.0, 2.5), lambda q: np.eye(3), label="R^3",
                        coords=("u", "v", "w"))
    return SmoothMap(K.manifold, tgt,
                     lambda p: np.array([(p[0] + p[3]) / R2, (p[1] + p[2]) / R2, p[4] + p[0]], dtype=object),
                     label="tilted")


def planar_projection(fiber: ChartManifold) -> SmoothMap:
    """``((x1 + y2)/√2, (x2 + y1)/√2)`` from flat ``R⁴`` onto flat ``R²``."""
    if fiber.dim != 4:
        raise ValueError("planar projection needs a 4-dimensional fiber")
    return SmoothMap(fiber, flat(2, 2.0, coords=("u", "v"), label="R^2"),
                     lambda p: np.array([(p[0] + p[3]) / R2, (p[1] + p[2]) / R2], dtype=object),
                     label="planar")


def kenmotsu7() -> tuple[KenmotsuManifold, SmoothMap]:
    """``I ×_{e^t} C³`` with an anti-invariant Riemannian submersion whose μ is 5-dimensional.

    Coordinates ``(t, x1, x2, x3, y1, y2, y3)``; the map is
    ``((x1 + y2)/√2, x2, x3, y1, y3, t)`` onto ``R ×_{e^t} R⁵``.
    """
    K = kenmotsu_from_kaehler(flat_kaehler(3))

    def metric(q):
        w = np.exp(2 * q[5])
        out = np.zeros((6, 6), dtype=object)
        for i in range(5):
            out[i, i] = w
        out[5, 5] = 1.0
        return out

    tgt = ChartManifold(6, (-2.0,) * 5 + (-1.0,), (2.0,) * 5 + (1.0,), metric, label="R x_e^t R^5",
                        coords=("a1", "a2", "a3", "a4", "a5", "t"))
    F = SmoothMap(K.manifold, tgt,
                  lambda p: np.array([(p[1] + p[5]) / R2, p[2], p[3], p[4], p[6], p[0]], dtype=object),
                  label="kenmotsu7")
    return K, F


def kenmotsu3() -> tuple[KenmotsuManifold, SmoothMap]:
    """``I ×_{e^t} C¹`` mapped by ``(y, t)`` onto ``R ×_{e^t} R``; one-dimensional fibers."""
    K = kenmotsu_from_kaehler(flat_kaehler(1))

    def metric(q):
        return np.array([[np.exp(2 * q[1]), 0], [0, 1.0]], dtype=object)

    tgt = ChartManifold(2, (-2.0, -1.0), (2.0, 1.0), metric, label="R x_e^t R", coords=("a", "t"))
    F = SmoothMap(K.manifold, tgt, lambda p: np.array([p[2], p[0]], dtype=object), label="kenmotsu3")
    return K, F


def warped_flat(f, fiber_dim: int = 4, t_range=(-1.0, 1.0), label: str = "") -> WarpedProduct:
    coords = ("x1", "x2", "y1", "y2") if fiber_dim == 4 else ()
    return make_warped(interval(*t_range), flat(fiber_dim, coords=coords), f, label=label)


def product_projection(fiber_dim: int = 4) -> tuple[WarpedProduct, SmoothMap]:
    """Riemannian product ``I × R^k`` with its second projection (a Riemannian submersion)."""
    W = warped_flat(lambda a: 1.0 + 0.0 * a[0], fiber_dim, label=f"I x R^{fiber_dim}")
    return W, second_projection(W)


def identity_map(M: ChartManifold) -> SmoothMap:
    return SmoothMap(M, M, lambda p: p, label="id")


def coordinate_submersion(M: ChartManifold, k: int) -> SmoothMap:
    """Projection of flat ``R^n`` onto its first ``k`` coordinates."""
    if not 0 < k <= M.dim:
        raise ValueError(f"cannot project {M.dim} coordinates onto {k}")
    return SmoothMap(M, flat(k, 2.0), lambda p: p[:k], label=f"proj{k}")


def warped_setup(warp: str, submersion: str = "planar", fiber_dim: int = 4,
                 t_range=(-1.0, 1.0)) -> Setup:
    """``f₂ = f₁ ∘ π₂`` on ``I ×_f R^k`` for a warp expression in ``t``.

    ``submersion`` is ``planar`` (needs ``k = 4``), ``identity`` or
    ``coords:j`` (first ``j`` fiber coordinates).
    """
    from .expr import parse

    f = parse(warp, ("t",))
    W = warped_flat(f, fiber_dim, t_range, label=f"I x_({warp}) R^{fiber_dim}")
    if submersion == "planar":
        f1 = planar_projection(W.fiber)
    elif submersion == "identity":
        f1 = identity_map(W.fiber)
    elif submersion.startswith("coords:"):
        f1 = coordinate_submersion(W.fiber, int(submersion.split(":", 1)[1]))
    else:
        raise ValueError(f"unknown submersion {submersion!r}")
    F = compose_with_submersion(W, f1)

    def dilation(p):
        return float(np.log(f(np.asarray(p, dtype=float)[:1])))

    return Setup(f"warped({warp})", F, None, "conformal", warped=W, dilation=dilation)


_WARPED = re.compile(r"^warped\((.+)\)$")


def builtin(name: str) -> Setup:
    from .errors import ConfigError

    if name in ("example1", "example1-structure-only"):
        return Setup("example1", None, example_ken().structure, "structure")
    if name == "example2":
        return example2()
    if name == "example3":
        return example3()
    m = _WARPED.match(name.strip())
    if m:
        return warped_setup(m.group(1))
    raise ConfigError(f"unknown built-in {name!r} (choose from {', '.join(BUILTINS)}, warped(<expr>))")


BUILTINS = ("example1", "example2", "example3")
