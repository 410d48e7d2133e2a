"""Pseudo-integral operators: g-integrals, sup-integrals, 2-D Sugeno integral.

The g-integral reduces pseudo-integration to classical quadrature through the
generator:  ∫^⊕ f = g⁻¹(∫ g∘f).  The sup-integral is the idempotent (⊕=max)
counterpart: the sup over the domain of f ⊙ ψ with ψ the density of the
sup-measure.  The Sugeno integral is sup_α min(α, μ{f ≥ α}) with μ the
Lebesgue product measure, solved by bisection on the decreasing map
α ↦ μ{f ≥ α} − α.

Decreasing generators are accepted: the formulas use g and g⁻¹ directly, the
declared direction only matters for validation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import expr as expr_mod
from .generators import Generator, RangeError, eval_inverse
from .quadrature import (
    DEFAULT_LEVEL_SET_GRID,
    DEFAULT_MAX_DEPTH,
    DEFAULT_SUP_LEVELS,
    DEFAULT_TOL,
    DIVERGED,
    UNIT_SQUARE,
    QuadratureResult,
    Rect,
    grid_eval,
    integrate_1d,
    integrate_2d,
    level_set_samples,
)
from .semiring import SUP_PLUS, SaturationFlags, Semiring, pseudo_mul

SUGENO_BISECTION_TOL = 1e-9


class DivergenceError(ArithmeticError):
    """An inner classical integral diverged."""

    def __init__(self, message: str, result: QuadratureResult | None = None):
        super().__init__(message)
        self.result = result


class DomainError(ValueError):
    """g∘f left the generator's domain or range during integration."""


@dataclass(frozen=True)
class PsiDensity:
    """Density of the sup-measure: an expression in x, evaluated per axis point.

    Must map a sampling grid of [0,1] into the carrier [0,1] (checked by the
    constructors).
    """

    expr: expr_mod.Expr
    description: str = ""

    @classmethod
    def constant(cls, value: float) -> "PsiDensity":
        psi = cls(expr_mod.Const(float(value)), description=f"constant {value:g}")
        psi.validate()
        return psi

    @classmethod
    def from_string(cls, src: str) -> "PsiDensity":
        psi = cls(expr_mod.parse(src), description=src)
        psi.validate()
        return psi

    def validate(self, samples: int = 101):
        ts = np.linspace(0.0, 1.0, samples)
        vals = np.asarray(self(ts), dtype=float)
        if np.any(vals < -1e-12) or np.any(vals > 1.0 + 1e-12):
            raise ValueError(f"psi density {self.description!r} leaves the carrier [0,1]")

    def __call__(self, t):
        return expr_mod._eval(self.expr, t, t)


def unit_psi(s: Semiring) -> PsiDensity:
    """Default density: the ⊙-unit constant (0 for sup_plus, else 1)."""
    if s.kind == SUP_PLUS:
        return PsiDensity.constant(0.0)
    return PsiDensity.constant(1.0 if s.unit is None else s.unit)


def _wrap_g_of_f_1d(gen: Generator, f):
    def gf(x: float) -> float:
        v = f(x)
        if not np.isfinite(v):
            raise DomainError(f"f({x!r}) is not finite")
        return float(gen.forward(v))

    return gf


def _wrap_g_of_f_2d(gen: Generator, f):
    def gf(s: float, t: float) -> float:
        v = f(s, t)
        if not np.isfinite(v):
            raise DomainError(f"f({s!r},{t!r}) is not finite")
        return float(gen.forward(v))

    return gf


def g_integral_1d_result(gen: Generator, f, low: float, high: float,
                         tol: float = DEFAULT_TOL,
                         max_depth: int = DEFAULT_MAX_DEPTH) -> tuple[float, QuadratureResult]:
    """g-integral with its inner quadrature result; raises on divergence."""
    res = integrate_1d(_wrap_g_of_f_1d(gen, f), low, high, tol, max_depth)
    if res.status == DIVERGED:
        raise DivergenceError("inner classical integral diverged", res)
    try:
        value = eval_inverse(gen, res.value)
    except RangeError as e:
        raise DomainError(str(e)) from e
    return value, res


def g_integral_1d(gen: Generator, f, low: float, high: float,
                  tol: float = DEFAULT_TOL) -> float:
    """∫^⊕_[low,high] f dx = g⁻¹(∫ g(f(x)) dx)."""
    return g_integral_1d_result(gen, f, low, high, tol)[0]


def g_integral_2d_result(gen: Generator, f, r: Rect,
                         tol: float = DEFAULT_TOL,
                         max_depth: int = DEFAULT_MAX_DEPTH) -> tuple[float, QuadratureResult]:
    res = integrate_2d(_wrap_g_of_f_2d(gen, f), r, tol, max_depth)
    if res.status == DIVERGED:
        raise DivergenceError("inner classical integral diverged", res)
    try:
        value = eval_inverse(gen, res.value)
    except RangeError as e:
        raise DomainError(str(e)) from e
    return value, res


def g_integral_2d(gen: Generator, f, r: Rect, tol: float = DEFAULT_TOL) -> float:
    """∫∫^⊕_r f dtds = g⁻¹(∬_r g(f(s,t)) dt ds)."""
    return g_integral_2d_result(gen, f, r, tol)[0]


def sup_integral_2d(s: Semiring, f, psi: PsiDensity | None = None,
                    r: Rect = UNIT_SQUARE, levels: int = DEFAULT_SUP_LEVELS,
                    flags: SaturationFlags | None = None) -> float:
    """Iterated sup-integral: sup_x ( (sup_y f(x,y) ⊙ ψ(y)) ⊙ ψ(x) ).

    The weighted surface f(x,y) ⊙ ψ(y) ⊙ ψ(x) is scanned on a tensor grid
    (⊙ is monotone, so the iterated sup equals the joint sup of the weighted
    surface), with local refinement around the best cell up to `levels`.
    """
    if psi is None:
        psi = unit_psi(s)
    base = min(levels, 9)
    n = 2**base + 1
    xs = np.linspace(r.x_low, r.x_high, n)
    ys = np.linspace(r.y_low, r.y_high, n)
    best_x, best_y, best = _weighted_sup_on_grid(s, f, psi, xs, ys, flags)
    span_x = (r.x_high - r.x_low) / 2**base
    span_y = (r.y_high - r.y_low) / 2**base
    for _ in range(base + 1, levels + 2):
        span_x /= 2.0
        span_y /= 2.0
        xs = np.clip(np.linspace(best_x - 4 * span_x, best_x + 4 * span_x, 9), r.x_low, r.x_high)
        ys = np.clip(np.linspace(best_y - 4 * span_y, best_y + 4 * span_y, 9), r.y_low, r.y_high)
        bx, by, val = _weighted_sup_on_grid(s, f, psi, xs, ys, flags)
        if val > best:
            best_x, best_y, best = bx, by, val
    return best


def _weighted_sup_on_grid(s: Semiring, f, psi: PsiDensity, xs, ys,
                          flags: SaturationFlags | None):
    vals = grid_eval(f, xs, ys)
    psix = np.asarray(psi(np.asarray(xs, dtype=float)), dtype=float)
    psiy = np.asarray(psi(np.asarray(ys, dtype=float)), dtype=float)
    psix = np.broadcast_to(psix, xs.shape)
    psiy = np.broadcast_to(psiy, ys.shape)
    weighted = pseudo_mul(s, vals, psiy[np.newaxis, :], flags)
    weighted = pseudo_mul(s, weighted, psix[:, np.newaxis], flags)
    weighted = np.where(np.isfinite(vals), weighted, -np.inf)
    idx = np.unravel_index(np.argmax(weighted), weighted.shape)
    return float(xs[idx[0]]), float(ys[idx[1]]), float(weighted[idx])


def sugeno_integral_2d(f, r: Rect = UNIT_SQUARE,
                       grid: int = DEFAULT_LEVEL_SET_GRID) -> float:
    """Sugeno integral sup_α min(α, μ{f ≥ α} ∩ r) by bisection on μ(α) − α.

    f is sampled once on the midpoint grid; level-set areas come from that
    cache, so the bisection is cheap.
    """
    if grid < 2:
        raise ValueError("grid must be >= 2")
    samples = level_set_samples(f, r, grid)
    cell = r.area / (grid * grid)
    finite = samples[np.isfinite(samples)]
    if finite.size == 0:
        return 0.0

    def mu(alpha: float) -> float:
        return float(np.sum(finite >= alpha)) * cell

    lo, hi = 0.0, min(1.0, float(np.max(finite)))
    if mu(hi) >= hi:
        return hi
    for _ in range(200):
        if hi - lo <= SUGENO_BISECTION_TOL:
            break
        mid = 0.5 * (lo + hi)
        if mu(mid) - mid >= 0.0:
            lo = mid
        else:
            hi = mid
    # lo is the crossing of μ(α) = α, which is sup_α min(α, μ(α)):
    # below it min(α,μ)=α increases to lo, above it min=μ(α) ≤ μ(lo⁺) ≤ lo.
    return lo


def sugeno_from_sorted(descending: np.ndarray, cell_area: float) -> float:
    """Exact Sugeno integral of the empirical measure: max_k min(v_(k), k·cell)."""
    if descending.size == 0:
        return 0.0
    k = np.arange(1, descending.size + 1) * cell_area
    return float(np.max(np.minimum(descending, k)))
