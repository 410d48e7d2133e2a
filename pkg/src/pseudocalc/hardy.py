"""Hardy kernels, Hardy constants, and the four inequality verifiers.

Checks:

    g_hardy       ∫∫^⊕ R^p ≤ (p/(p-1))^{2p} ∫∫^⊕ f^p          (g-integrals, p>1)
    sup_hardy     same shape with iterated sup-integrals          (p>1)
    sugeno_hardy  (∫∫ f^p dμ²)^{1/(2p+1)} ≥ (4/5)^{16p/(9(2p+1))} ∫∫ (R/xy)^p dμ²
                  with Sugeno integrals                           (p≥1)
    classical     (p/(p-1))^p ∫ f^p > ∫ (F/x)^p on [low,high]     (p>1)

The g-kernel is R(x,y) = (1/(xy)) ∫∫^⊕_{[0,x]×[0,y]} f.  For the check's own
double integral of R^p, R is evaluated on a cubic-graded tensor grid via
4th-order cumulative Simpson prefix integrals (the grading concentrates nodes
near the axes where monomial integrands have unbounded derivatives, and its
Jacobian vanishes on the axes, so the 1/(xy) factor needs no boundary
handling); the public hardy_kernel_g and the right-hand side use adaptive
quadrature directly.  Exact for polynomial data, O(h⁴) otherwise.

The sup-kernel is the ψ-weighted running sup
R(x,y) = sup_{s≤x,t≤y} f(s,t)⊙ψ(t)⊙ψ(s): the idempotent analogue of the
averaging operator (the 1/(xy) normalization cancels against the sup-measure
of the rectangle, which the proof chain of the sup theorem equates with xy).
Reports note this convention.

The right-hand side combines the constant with the integral by ordinary real
multiplication, exactly as the worked examples do, not by ⊙.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import expr as expr_mod
from .generators import Generator, make_generator
from .pseudo_integral import (
    DivergenceError,
    DomainError,
    PsiDensity,
    g_integral_2d_result,
    sugeno_from_sorted,
    sugeno_integral_2d,
    unit_psi,
)
from .quadrature import (
    CONVERGED,
    DIVERGED,
    Rect,
    cumulative_simpson,
    grid_eval,
    integrate_1d,
    integrate_2d,
    level_set_samples,
)
from .semiring import SaturationFlags, Semiring, parse_semiring, pseudo_mul

# verdict tolerances: shield quadrature noise without masking real violations
VERDICT_REL = 1e-9
VERDICT_ABS = 1e-12
SUGENO_SLACK = 1e-6
AXIS_INSET = 1e-6

G_HARDY = "g_hardy"
SUP_HARDY = "sup_hardy"
SUGENO_HARDY = "sugeno_hardy"
CLASSICAL = "classical"

CHECK_KINDS = (G_HARDY, SUP_HARDY, SUGENO_HARDY, CLASSICAL)


class HypothesisError(ValueError):
    """A theorem hypothesis is violated (e.g. p outside the admissible range)."""


@dataclass
class HardyConfig:
    quad_tol: float = 1e-8
    max_depth: int = 30             # adaptive refinement depth cap
    kernel_panels: int = 256        # graded prefix grid for the lhs integral
    pointwise_panels: int = 512     # uniform prefix grid behind the R≤f check
    pointwise_points: int = 64      # check grid is pointwise_points² interior points
    sup_level: int = 9              # 2^level+1 nodes per axis for sup checks
    sugeno_outer: int = 48          # outer Sugeno grid for the kernel side
    sugeno_samples: int = 192       # f-sample grid behind kernel Sugeno prefixes
    sugeno_lhs_grid: int = 1024     # grid for the f^p Sugeno side


DEFAULT_CONFIG = HardyConfig()


@dataclass
class HardyReport:
    kind: str
    p: float
    lhs: float | None
    rhs_integral: float | None
    constant: float
    rhs: float | None
    holds: bool | None          # None when not evaluable (divergence)
    direction: str              # "le" (g/sup), "ge" (sugeno), "lt" (classical, strict)
    pointwise_max: float | None = None
    pointwise_location: tuple[float, float] | None = None
    statuses: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    not_evaluable: bool = False

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "p": self.p,
            "lhs": self.lhs,
            "rhs_integral": self.rhs_integral,
            "constant": self.constant,
            "rhs": self.rhs,
            "holds": self.holds,
            "direction": self.direction,
            "pointwise_max": self.pointwise_max,
            "pointwise_location": list(self.pointwise_location) if self.pointwise_location else None,
            "statuses": dict(sorted(self.statuses.items())),
            "notes": list(self.notes),
            "not_evaluable": self.not_evaluable,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HardyReport":
        loc = d.get("pointwise_location")
        return cls(
            kind=d["kind"],
            p=d["p"],
            lhs=d["lhs"],
            rhs_integral=d["rhs_integral"],
            constant=d["constant"],
            rhs=d["rhs"],
            holds=d["holds"],
            direction=d["direction"],
            pointwise_max=d.get("pointwise_max"),
            pointwise_location=tuple(loc) if loc else None,
            statuses=dict(d.get("statuses", {})),
            notes=list(d.get("notes", [])),
            not_evaluable=d.get("not_evaluable", False),
        )


def _le_verdict(lhs: float, rhs: float) -> bool:
    return lhs <= rhs * (1.0 + VERDICT_REL) + VERDICT_ABS


@dataclass(frozen=True)
class HardyScenario:
    """Bundle of check inputs. domain must be anchored at the origin for 2-D kinds;
    classical checks reuse (x_low, x_high) as the 1-D interval."""

    f_src: str
    check_kind: str
    p: float
    gen_spec: str | None = None
    semiring_spec: str | None = None
    psi_src: str | None = None
    domain: Rect = Rect(0.0, 1.0, 0.0, 1.0)

    def __post_init__(self):
        if self.check_kind not in CHECK_KINDS:
            raise ValueError(f"unknown check kind {self.check_kind!r}")
        expr_mod.parse(self.f_src)  # f must parse; evaluation errors surface later
        if not math.isfinite(self.p):
            raise ValueError("p must be finite")

    @property
    def f(self) -> expr_mod.Expr:
        return expr_mod.parse(self.f_src)

    @property
    def generator(self) -> Generator:
        if self.gen_spec is None:
            raise ValueError("scenario has no generator")
        return make_generator(self.gen_spec)

    @property
    def semiring(self) -> Semiring:
        if self.semiring_spec is None:
            raise ValueError("scenario has no semiring")
        return parse_semiring(self.semiring_spec)

    @property
    def psi(self) -> PsiDensity | None:
        if self.psi_src is None:
            return None
        return PsiDensity.from_string(self.psi_src)

    def to_dict(self) -> dict:
        d = {
            "f": self.f_src,
            "kind": self.check_kind,
            "p": self.p,
            "domain": self.domain.as_list(),
        }
        if self.gen_spec is not None:
            d["g"] = self.gen_spec
        if self.semiring_spec is not None:
            d["semiring"] = self.semiring_spec
        if self.psi_src is not None:
            d["psi"] = self.psi_src
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "HardyScenario":
        dom = d.get("domain", [0.0, 1.0, 0.0, 1.0])
        return cls(
            f_src=d["f"],
            check_kind=d["kind"],
            p=float(d["p"]),
            gen_spec=d.get("g"),
            semiring_spec=d.get("semiring"),
            psi_src=d.get("psi"),
            domain=Rect(*[float(v) for v in dom]),
        )


# --- constants ---------------------------------------------------------------


def hardy_constant(p: float) -> float:
    """(p/(p-1))^{2p}, the two-dimensional Hardy constant; always ≥ 1 for p>1.

    The ratio is formed first, so the evaluation lives in the log domain of
    pow: finite (no inf) for any p ≥ 1+1e-6 and exact on integer cases.
    """
    if p <= 1.0:
        raise HypothesisError(
            "hardy_constant requires p > 1; use remark_diagnostics for p <= 1"
        )
    return (p / (p - 1.0)) ** (2.0 * p)


def classical_hardy_constant(p: float) -> float:
    """(p/(p-1))^p, the one-dimensional classical constant."""
    if p <= 1.0:
        raise HypothesisError("classical constant requires p > 1")
    return (p / (p - 1.0)) ** p


def sugeno_hardy_constant(p: float) -> float:
    """(4/5)^{16p/(9(2p+1))}; valid for p ≥ 1."""
    if p < 1.0:
        raise HypothesisError("sugeno_hardy_constant requires p >= 1")
    return (4.0 / 5.0) ** (16.0 * p / (9.0 * (2.0 * p + 1.0)))


# --- kernels -----------------------------------------------------------------


def hardy_kernel_g(gen: Generator, f, x: float, y: float, tol: float = 1e-9) -> float:
    """R(x,y) = (1/(xy)) ∫∫^⊕_{[0,x]×[0,y]} f, via adaptive quadrature."""
    if not (0.0 < x <= 1.0 and 0.0 < y <= 1.0):
        raise ValueError("hardy_kernel_g requires 0 < x, y <= 1")
    value, _ = g_integral_2d_result(gen, f, Rect(0.0, x, 0.0, y), tol)
    return value / (x * y)


class GKernelGrid:
    """R on a cubic-graded tensor grid over [0,X]×[0,Y] via prefix integrals.

    Nodes x_i = X·(i/M)³ pack toward the axes; the substitution Jacobian
    9XY·u²v² vanishes there, so integrals of R-based integrands need no
    boundary values of R.
    """

    def __init__(self, gen: Generator, f, x_high: float, y_high: float,
                 panels: int = 256):
        if panels % 2 != 0 or panels < 8:
            raise ValueError("panels must be even and >= 8")
        self.gen = gen
        self.x_high = x_high
        self.y_high = y_high
        M = panels
        self.u = np.linspace(0.0, 1.0, M + 1)
        self.h = 1.0 / M
        self.x = x_high * self.u**3
        self.y = y_high * self.u**3
        fv = grid_eval(f, self.x, self.y)
        if not np.all(np.isfinite(fv)):
            raise DomainError("f failed to evaluate on the kernel grid")
        W = np.asarray(gen.forward(fv), dtype=float)
        if not np.all(np.isfinite(W)):
            raise DomainError("g∘f is not finite on the kernel grid")
        jac = 9.0 * x_high * y_high * np.outer(self.u**2, self.u**2)
        W = W * jac
        inner = cumulative_simpson(W, self.h, axis=1)
        self.prefix = cumulative_simpson(inner, self.h, axis=0)
        self.clipped = False
        lo, hi = gen.range_low, gen.range_high
        if np.any(self.prefix < lo - 1e-12) or np.any(self.prefix > hi + 1e-12):
            self.clipped = True
        pref = np.clip(self.prefix, lo, hi)
        inv = np.asarray(gen.inverse(pref), dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            denom = np.outer(self.x, self.y)
            R = np.where(denom > 0.0, inv / np.where(denom > 0.0, denom, 1.0), 0.0)
        self.R = R

    def integral_of_g_of_R_pow(self, p: float) -> float:
        """Classical value ∬ g(R^p) dxdy over [0,X]×[0,Y] (Simpson on the grid)."""
        integrand = np.zeros_like(self.R)
        interior = np.asarray(self.gen.forward(self.R[1:, 1:] ** p), dtype=float)
        if not np.all(np.isfinite(interior)):
            raise DomainError("g(R^p) is not finite on the kernel grid")
        integrand[1:, 1:] = interior
        jac = 9.0 * self.x_high * self.y_high * np.outer(self.u**2, self.u**2)
        integrand = integrand * jac
        w = _simpson_weights(len(self.u), self.h)
        return float(w @ integrand @ w)


def _simpson_weights(n_nodes: int, h: float) -> np.ndarray:
    w = np.ones(n_nodes)
    w[1:-1:2] = 4.0
    w[2:-2:2] = 2.0
    return w * h / 3.0


class _UniformPrefix:
    """Prefix g-integrals on a uniform grid; backs the pointwise R ≤ f check."""

    def __init__(self, gen: Generator, f, x_high: float, y_high: float, panels: int):
        M = panels
        self.x = np.linspace(0.0, x_high, M + 1)
        self.y = np.linspace(0.0, y_high, M + 1)
        fv = grid_eval(f, self.x, self.y)
        if not np.all(np.isfinite(fv)):
            raise DomainError("f failed to evaluate on the pointwise grid")
        W = np.asarray(gen.forward(fv), dtype=float)
        inner = cumulative_simpson(W, y_high / M, axis=1)
        self.prefix = cumulative_simpson(inner, x_high / M, axis=0)
        self.gen = gen
        self.fv = fv


def pointwise_proof_check(gen: Generator, f, domain: Rect,
                          config: HardyConfig = DEFAULT_CONFIG) -> tuple[float, tuple[float, float]]:
    """max over an n×n interior grid of R(x,y) − f(x,y) and its location.

    The proof step of the g-Hardy theorem needs R ≤ f whenever f is
    nondecreasing in each coordinate.
    """
    M = config.pointwise_panels
    n = config.pointwise_points
    stride = M // n
    grid = _UniformPrefix(gen, f, domain.x_high, domain.y_high, M)
    idx = np.arange(1, n + 1) * stride
    xs = grid.x[idx]
    ys = grid.y[idx]
    pref = grid.prefix[np.ix_(idx, idx)]
    lo, hi = gen.range_low, gen.range_high
    inv = np.asarray(gen.inverse(np.clip(pref, lo, hi)), dtype=float)
    R = inv / np.outer(xs, ys)
    diff = R - grid.fv[np.ix_(idx, idx)]
    k = np.unravel_index(np.argmax(diff), diff.shape)
    return float(diff[k]), (float(xs[k[0]]), float(ys[k[1]]))


# --- checks ------------------------------------------------------------------


def _require_origin_anchor(r: Rect):
    if r.x_low != 0.0 or r.y_low != 0.0:
        raise ValueError("Hardy checks require a domain anchored at the origin")


def check_hardy_g(scn: HardyScenario, config: HardyConfig = DEFAULT_CONFIG) -> HardyReport:
    """Verify the g-integral Hardy inequality for one scenario."""
    if scn.p <= 1.0:
        raise HypothesisError("g_hardy requires p > 1; use remark_diagnostics for p <= 1")
    _require_origin_anchor(scn.domain)
    gen = scn.generator
    f = expr_mod.as_function(scn.f)
    p = scn.p
    constant = hardy_constant(p)
    notes: list[str] = []
    statuses: dict[str, str] = {}

    try:
        rhs_integral, rhs_quad = g_integral_2d_result(
            gen, lambda s, t: f(s, t) ** p, scn.domain, config.quad_tol,
            config.max_depth,
        )
        statuses["rhs"] = rhs_quad.status
    except DivergenceError as e:
        return HardyReport(
            kind=G_HARDY, p=p, lhs=None, rhs_integral=None, constant=constant,
            rhs=None, holds=None, direction="le",
            statuses={"rhs": DIVERGED}, notes=[str(e)], not_evaluable=True,
        )

    try:
        kernel = GKernelGrid(gen, f, scn.domain.x_high, scn.domain.y_high,
                             config.kernel_panels)
        lhs_inner = kernel.integral_of_g_of_R_pow(p)
        lo, hi = gen.range_low, gen.range_high
        if lhs_inner < lo - 1e-12 or lhs_inner > hi + 1e-12:
            notes.append("lhs inner integral clamped to the generator range")
        lhs = float(gen.inverse(min(max(lhs_inner, lo), hi)))
        statuses["lhs"] = CONVERGED
        if kernel.clipped:
            notes.append("kernel prefix integrals clamped to the generator range")
    except (DomainError, DivergenceError) as e:
        return HardyReport(
            kind=G_HARDY, p=p, lhs=None, rhs_integral=rhs_integral, constant=constant,
            rhs=constant * rhs_integral, holds=None, direction="le",
            statuses={**statuses, "lhs": DIVERGED}, notes=[str(e)], not_evaluable=True,
        )

    pw_max, pw_loc = pointwise_proof_check(gen, f, scn.domain, config)
    rhs = constant * rhs_integral
    return HardyReport(
        kind=G_HARDY, p=p, lhs=lhs, rhs_integral=rhs_integral, constant=constant,
        rhs=rhs, holds=_le_verdict(lhs, rhs), direction="le",
        pointwise_max=pw_max, pointwise_location=pw_loc,
        statuses=statuses, notes=notes,
    )


def sup_kernel_grid(s: Semiring, f, psi: PsiDensity, domain: Rect, level: int,
                    flags: SaturationFlags | None = None):
    """(xs, ys, F, R) with R the ψ-weighted running sup of f over [0,x]×[0,y]."""
    n = 2**level + 1
    xs = np.linspace(domain.x_low, domain.x_high, n)
    ys = np.linspace(domain.y_low, domain.y_high, n)
    F = grid_eval(f, xs, ys)
    if not np.all(np.isfinite(F)):
        raise DomainError("f failed to evaluate on the sup grid")
    psix = np.broadcast_to(np.asarray(psi(xs), dtype=float), xs.shape)
    psiy = np.broadcast_to(np.asarray(psi(ys), dtype=float), ys.shape)
    weighted = pseudo_mul(s, F, psiy[np.newaxis, :], flags)
    weighted = pseudo_mul(s, weighted, psix[:, np.newaxis], flags)
    R = np.maximum.accumulate(np.maximum.accumulate(weighted, axis=0), axis=1)
    return xs, ys, F, R, psix, psiy


def check_hardy_sup(scn: HardyScenario, config: HardyConfig = DEFAULT_CONFIG) -> HardyReport:
    """Verify the sup-integral Hardy inequality for one scenario."""
    if scn.p <= 1.0:
        raise HypothesisError("sup_hardy requires p > 1")
    _require_origin_anchor(scn.domain)
    s = scn.semiring
    psi = scn.psi or unit_psi(s)
    f = expr_mod.as_function(scn.f)
    p = scn.p
    constant = hardy_constant(p)
    flags = SaturationFlags()
    notes = [
        "sup kernel: psi-weighted running sup (the 1/(xy) normalization cancels "
        "against the sup-measure of the rectangle)",
        "rhs combines constant and integral by real multiplication",
    ]

    try:
        xs, ys, F, R, psix, psiy = sup_kernel_grid(
            s, f, psi, scn.domain, config.sup_level, flags
        )
    except DomainError as e:
        return HardyReport(
            kind=SUP_HARDY, p=p, lhs=None, rhs_integral=None, constant=constant,
            rhs=None, holds=None, direction="le",
            statuses={"lhs": DIVERGED}, notes=[str(e)], not_evaluable=True,
        )
    if np.any(F < 0):
        notes.append("f takes negative values: theorem hypotheses not met")

    def weighted_sup(vals: np.ndarray) -> float:
        w = pseudo_mul(s, vals, psiy[np.newaxis, :], flags)
        w = pseudo_mul(s, w, psix[:, np.newaxis], flags)
        return float(np.max(w))

    lhs = weighted_sup(R**p)
    rhs_integral = weighted_sup(F**p)
    rhs = constant * rhs_integral
    diff = R - F
    k = np.unravel_index(np.argmax(diff), diff.shape)
    if flags.saturated:
        notes.append(
            f"saturation: {flags.add_saturations} add / {flags.mul_saturations} mul clamps"
        )
    return HardyReport(
        kind=SUP_HARDY, p=p, lhs=lhs, rhs_integral=rhs_integral, constant=constant,
        rhs=rhs, holds=_le_verdict(lhs, rhs), direction="le",
        pointwise_max=float(diff[k]), pointwise_location=(float(xs[k[0]]), float(ys[k[1]])),
        statuses={"lhs": CONVERGED, "rhs": CONVERGED}, notes=notes,
    )


def check_hardy_sugeno(scn: HardyScenario, config: HardyConfig = DEFAULT_CONFIG) -> HardyReport:
    """Verify the Sugeno Hardy inequality (direction ≥, p ≥ 1)."""
    if scn.p < 1.0:
        raise HypothesisError("sugeno_hardy requires p >= 1")
    _require_origin_anchor(scn.domain)
    f = expr_mod.as_function(scn.f)
    p = scn.p
    constant = sugeno_hardy_constant(p)
    X, Y = scn.domain.x_high, scn.domain.y_high

    lhs_integral = sugeno_integral_2d(
        lambda x, y: f(x, y) ** p, scn.domain, grid=config.sugeno_lhs_grid
    )
    lhs = lhs_integral ** (1.0 / (2.0 * p + 1.0))

    n = config.sugeno_samples
    m = config.sugeno_outer
    if n % m != 0:
        raise ValueError("sugeno_samples must be a multiple of sugeno_outer")
    F = level_set_samples(f, scn.domain, n)
    if not np.all(np.isfinite(F)):
        raise DomainError("f failed to evaluate on the Sugeno sample grid")
    cell = scn.domain.area / (n * n)
    stride = n // m
    h_vals = np.zeros((m, m))
    # outer midpoints (i+1/2)/m align exactly with sample-cell boundaries
    for i in range(m):
        a = stride * i + stride // 2
        xi = (i + 0.5) / m * X
        for j in range(m):
            b = stride * j + stride // 2
            yj = (j + 0.5) / m * Y
            block = np.sort(F[:a, :b], axis=None)[::-1]
            R = sugeno_from_sorted(block, cell)
            h_vals[i, j] = (R / (xi * yj)) ** p
    rhs_integral = sugeno_from_sorted(
        np.sort(h_vals, axis=None)[::-1], scn.domain.area / (m * m)
    )
    rhs = constant * rhs_integral
    return HardyReport(
        kind=SUGENO_HARDY, p=p, lhs=lhs, rhs_integral=rhs_integral, constant=constant,
        rhs=rhs, holds=bool(lhs >= rhs - SUGENO_SLACK), direction="ge",
        statuses={"lhs": CONVERGED, "rhs": CONVERGED},
        notes=["kernel Sugeno integrals use the empirical measure of midpoint samples"],
    )


def check_hardy_classical(f, p: float, low: float, high: float,
                          tol: float = 1e-9) -> HardyReport:
    """Classical baseline: (p/(p-1))^p ∫ f^p > ∫ (F/x)^p on [low, high], F(x)=∫₀ˣf."""
    if p <= 1.0:
        raise HypothesisError("classical Hardy requires p > 1")
    if not (0.0 < low < high):
        raise HypothesisError("requires 0 < low < high")
    probe = np.linspace(low, high, 101)
    vals = np.array([f(x) for x in probe])
    if np.any(vals < -1e-12):
        raise HypothesisError("classical Hardy requires f >= 0")
    if np.max(np.abs(vals)) <= 1e-12:
        raise HypothesisError("classical Hardy requires f not identically zero")
    constant = classical_hardy_constant(p)

    def mean_pow(x: float) -> float:
        F = integrate_1d(f, 0.0, x, tol * 0.01)
        if F.status == DIVERGED:
            raise DivergenceError("F(x) diverged", F)
        return (F.value / x) ** p

    statuses = {}
    try:
        lhs_res = integrate_1d(mean_pow, low, high, tol)
        statuses["lhs"] = lhs_res.status
        rhs_res = integrate_1d(lambda x: f(x) ** p, low, high, tol)
        statuses["rhs"] = rhs_res.status
    except DivergenceError as e:
        return HardyReport(
            kind=CLASSICAL, p=p, lhs=None, rhs_integral=None, constant=constant,
            rhs=None, holds=None, direction="lt", statuses={"lhs": DIVERGED},
            notes=[str(e)], not_evaluable=True,
        )
    if DIVERGED in (lhs_res.status, rhs_res.status):
        return HardyReport(
            kind=CLASSICAL, p=p, lhs=lhs_res.value, rhs_integral=rhs_res.value,
            constant=constant, rhs=None, holds=None, direction="lt",
            statuses=statuses, notes=["divergent side"], not_evaluable=True,
        )
    lhs = lhs_res.value
    rhs_integral = rhs_res.value
    rhs = constant * rhs_integral
    margin = rhs - lhs
    return HardyReport(
        kind=CLASSICAL, p=p, lhs=lhs, rhs_integral=rhs_integral, constant=constant,
        rhs=rhs, holds=bool(margin > 0.0), direction="lt",
        statuses=statuses, notes=[f"strictness margin {margin!r}"],
    )


def run_check(scn: HardyScenario, config: HardyConfig = DEFAULT_CONFIG) -> HardyReport:
    """Dispatch a scenario to its verifier."""
    if scn.check_kind == G_HARDY:
        return check_hardy_g(scn, config)
    if scn.check_kind == SUP_HARDY:
        return check_hardy_sup(scn, config)
    if scn.check_kind == SUGENO_HARDY:
        return check_hardy_sugeno(scn, config)
    f = expr_mod.as_function(scn.f)
    return check_hardy_classical(
        lambda x: f(x, 0.0), scn.p, scn.domain.x_low, scn.domain.x_high
    )


# --- the non-theorem regime (p ≤ 1) ------------------------------------------


@dataclass
class DiagnosticsReport:
    p: float
    branch: str                     # "0<p<1" | "p<0" | "p=0"
    constant: float | None
    constant_defined: bool
    lhs_inner: float | None = None   # classical value before g⁻¹
    rhs_inner: float | None = None
    lhs_value: float | None = None   # after g⁻¹
    rhs_value: float | None = None
    lhs_status: str | None = None
    inequality_fails: bool | None = None
    criterion_value: float | None = None   # p=0 branch: ∫∫^⊕ f
    criterion_met: bool | None = None
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "branch": self.branch,
            "constant": self.constant,
            "constant_defined": self.constant_defined,
            "lhs_inner": self.lhs_inner,
            "rhs_inner": self.rhs_inner,
            "lhs_value": self.lhs_value,
            "rhs_value": self.rhs_value,
            "lhs_status": self.lhs_status,
            "inequality_fails": self.inequality_fails,
            "criterion_value": self.criterion_value,
            "criterion_met": self.criterion_met,
            "notes": list(self.notes),
        }


def odd_denominator_rational(x: float, max_den: int = 1000,
                             tol: float = 1e-9) -> tuple[int, int] | None:
    """x as num/den in lowest terms with den odd, or None."""
    frac = Fraction(x).limit_denominator(max_den)
    if abs(float(frac) - x) > tol or frac.denominator % 2 == 0:
        return None
    return frac.numerator, frac.denominator


def signed_real_root(base: float, num: int, den: int) -> float:
    """base^{num/den} over the reals for odd den (e.g. (-1/5)^{1/3})."""
    if den % 2 == 0:
        raise ValueError("denominator must be odd")
    mag = abs(base) ** (num / den)
    if base < 0 and num % 2 == 1:
        return -mag
    return mag


def remark_diagnostics(gen: Generator, f, p: float,
                       config: HardyConfig = DEFAULT_CONFIG) -> DiagnosticsReport:
    """Diagnose why p ≤ 1 breaks the g-Hardy inequality (three branches)."""
    if p > 1.0:
        raise HypothesisError("remark_diagnostics covers the p <= 1 regime")
    if p == 1.0:
        raise HypothesisError("p = 1 boundary: the constant (p/(p-1))^{2p} is undefined")

    if 0.0 < p < 1.0:
        rat = odd_denominator_rational(2.0 * p)
        base = p / (p - 1.0)
        if rat is None:
            constant, defined = None, False
            notes = ["(p/(p-1))^{2p} is undefined over the reals "
                     "(2p has no odd-denominator rational form)"]
        else:
            constant = signed_real_root(base, *rat)
            defined = True
            notes = [f"constant via real root: ({base!r})^{{{rat[0]}/{rat[1]}}}"]
        kernel = GKernelGrid(gen, f, 1.0, 1.0, config.kernel_panels)
        lhs_inner = kernel.integral_of_g_of_R_pow(p)
        rhs_inner_val, _ = _classical_double(gen, f, p, config)
        lo, hi = gen.range_low, gen.range_high
        lhs_value = float(gen.inverse(min(max(lhs_inner, lo), hi)))
        rhs_value = float(gen.inverse(min(max(rhs_inner_val, lo), hi)))
        fails = (constant is None) or (constant * rhs_value < lhs_value)
        notes.append("right side is non-positive while the left side is positive"
                     if defined and constant is not None and constant <= 0 else
                     "inequality direction checked against the recomputed sides")
        return DiagnosticsReport(
            p=p, branch="0<p<1", constant=constant, constant_defined=defined,
            lhs_inner=lhs_inner, rhs_inner=rhs_inner_val,
            lhs_value=lhs_value, rhs_value=rhs_value,
            lhs_status=CONVERGED, inequality_fails=fails, notes=notes,
        )

    if p < 0.0:
        try:
            value, res = g_integral_2d_result(
                gen, lambda s, t: f(s, t) ** p, Rect(0.0, 1.0, 0.0, 1.0),
                config.quad_tol, config.max_depth,
            )
            return DiagnosticsReport(
                p=p, branch="p<0", constant=None, constant_defined=False,
                lhs_value=value, lhs_status=res.status,
                inequality_fails=None,
                notes=["lhs integral converged unexpectedly"],
            )
        except DivergenceError:
            return DiagnosticsReport(
                p=p, branch="p<0", constant=None, constant_defined=False,
                lhs_status=DIVERGED, inequality_fails=True,
                notes=["the lhs integral does not converge"],
            )

    # p == 0: both sides reduce to the pseudo-integral of f⁰ ≡ 1;
    # the criterion checked is the asserted ∫∫^⊕ f ≥ 1
    value, res = g_integral_2d_result(gen, f, Rect(0.0, 1.0, 0.0, 1.0),
                                      config.quad_tol, config.max_depth)
    return DiagnosticsReport(
        p=0.0, branch="p=0", constant=1.0, constant_defined=True,
        criterion_value=value, criterion_met=bool(value >= 1.0),
        lhs_status=res.status,
        inequality_fails=not bool(value >= 1.0),
        notes=["criterion ∫∫^⊕ f ≥ 1 is asserted, not derived"],
    )


def _classical_double(gen: Generator, f, p: float, config: HardyConfig):
    """∬ g(f^p) over the unit square via iterated adaptive quadrature."""
    res = integrate_2d(
        lambda s, t: float(gen.forward(f(s, t) ** p)),
        Rect(0.0, 1.0, 0.0, 1.0), config.quad_tol, config.max_depth,
    )
    if res.status == DIVERGED:
        raise DivergenceError("classical double integral diverged", res)
    return res.value, res
