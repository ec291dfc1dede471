"""Numerical knobs shared by every module."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    # differencing
    fd_step: float = 1e-5          # relative central-difference step
    curve_step: float = 1e-4       # step for the pullback-connection stencil
    margin_factor: float = 10.0    # sampling margin, in units of fd_step
    cond_max: float = 1e12         # metric condition-number guard
    rank_rel: float = 1e-8         # relative singular-value threshold

    # verdict thresholds
    structure: float = 1e-8        # algebraic identities of the structure
    first: float = 1e-5            # first-derivative checks
    second: float = 1e-4           # second-derivative checks
    anti_invariance: float = 1e-7
    isometry: float = 1e-6         # Riemannian-submersion residual
    conformal_spread: float = 1e-6  # relative spread of horizontal stretch ratios
    position: float = 1e-7         # xi vertical / horizontal classification

    # sampling
    samples: int = 200
    seed: int = 42

    def with_overrides(self, **kw) -> "Tolerances":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw)


DEFAULT = Tolerances()
