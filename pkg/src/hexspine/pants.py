"""Metric data of the pair of pants built from 2k-2 deformed hexagons.

The boundary curves are ``C`` and ``C'`` (each made of ``k`` edges of
length ``L``) and ``D``.  ``H`` is the common perpendicular of ``C`` and
``C'``, ``h`` the one between ``C`` and ``D``, ``d`` half the length of
``D``, and ``p0`` the signed distance along ``C`` from the foot ``S`` of
``H`` to the endpoint ``P`` of the eps-edge.  The angles ``omega_i`` are
those between ``D`` and the eps-edges ``e_i`` crossing the pants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple, Union

import numpy as np

from .errors import BadGrid, DomainError, OutOfRange
from .hplane import Angle, Geodesic, omega_at

LOG_SPACE_BELOW = 1e-3
_LOG2 = math.log(2.0)


def logsinh(x: float) -> float:
    if x <= 0:
        raise ValueError("logsinh needs x > 0")
    if x < 1.0:
        return math.log(math.sinh(x))
    return x + math.log1p(-math.exp(-2.0 * x)) - _LOG2


def logcosh(x: float) -> float:
    x = abs(x)
    return x + math.log1p(math.exp(-2.0 * x)) - _LOG2


def acosh_from_log(y: float) -> float:
    """``acosh(exp(y))`` for ``y >= 0`` without forming ``exp(y)``."""
    if y < 20:
        return math.acosh(math.exp(y))
    return y + math.log1p(math.sqrt(-math.expm1(-2.0 * y)))


def _check(k: int, eps: float) -> None:
    if int(k) != k or k < 3:
        raise OutOfRange(f"k={k} must be an integer >= 3")
    if not (0.0 < eps < math.pi):
        raise OutOfRange(f"eps={eps} outside (0, pi)")


def edge_length(eps: float) -> float:
    """``acosh(1 + 1/sin eps)``, evaluated without cancellation."""
    s = math.sin(eps)
    # acosh(1 + x) = log1p(x + sqrt(x (x + 2)))
    x = 1.0 / s
    return math.log1p(x + math.sqrt(x * (x + 2.0)))


def perpendicular_H(eps: float) -> float:
    """Distance between ``C`` and ``C'``: ``cosh H = 1 + sin eps``."""
    return 2.0 * math.asinh(math.sqrt(math.sin(eps) / 2.0))


def signed_foot_offset(eps: float, L: float) -> float:
    """``p0 = artanh(cos eps tanh(L/2))``, positive for acute eps."""
    c = math.cos(eps)
    if c == 0:
        return 0.0
    # q = 1 - |cos eps| tanh(L/2), assembled from small pieces
    ac = abs(c)
    q = (1.0 - ac) + ac * 2.0 / (math.exp(L) + 1.0)
    p = 0.5 * math.log((2.0 - q) / q)
    return math.copysign(p, c)


@dataclass(frozen=True)
class PantsMetrics:
    k: int
    eps: float
    L: float
    H: float
    d: float
    h: float
    p0: float
    omega: Tuple[float, ...]
    log_cosh_d: float
    log_sinh_h: float

    @property
    def cosh_L(self) -> float:
        return 1.0 + 1.0 / math.sin(self.eps)

    @property
    def cosh_H(self) -> float:
        return 1.0 + math.sin(self.eps)

    @property
    def cosh_d(self) -> float:
        return math.exp(self.log_cosh_d)

    def identity_residuals(self) -> dict:
        """Relative residuals of the three closed-form identities, recomputed from ``L``, ``H``, ``d``, ``h``."""
        half = self.k * self.L / 2.0
        out = {}
        out["cosh_L"] = abs(math.cosh(self.L) - self.cosh_L) / self.cosh_L
        out["cosh_H"] = abs(math.cosh(self.H) - self.cosh_H) / self.cosh_H
        # 1 + cosh d = sinh^2(kL/2) (cosh H - 1), compared in logs
        lhs = logcosh(self.d) + math.log1p(math.exp(-logcosh(self.d)))
        rhs = 2.0 * logsinh(half) + math.log(2.0 * math.sinh(self.H / 2.0) ** 2)
        out["cosh_d"] = abs(math.expm1(lhs - rhs))
        lhs = math.log(math.sinh(self.h))
        rhs = logsinh(self.H) + logsinh(half) - logsinh(self.d)
        out["sinh_h"] = abs(math.expm1(lhs - rhs))
        return out


def _lengths(k: int, eps: float):
    L = edge_length(eps)
    H = perpendicular_H(eps)
    half = k * L / 2.0
    if min(eps, math.pi - eps) < LOG_SPACE_BELOW:
        log_one_plus_cosh_d = 2.0 * logsinh(half) + math.log(math.sin(eps))
        log_cosh_d = log_one_plus_cosh_d + math.log1p(-math.exp(-log_one_plus_cosh_d))
        d = acosh_from_log(log_cosh_d)
        log_sinh_h = logsinh(H) + logsinh(half) - logsinh(d)
    else:
        cosh_d = math.sinh(half) ** 2 * math.sin(eps) - 1.0
        d = math.acosh(cosh_d)
        log_cosh_d = math.log(cosh_d)
        log_sinh_h = math.log(math.sinh(H) * math.sinh(half) / math.sinh(d))
    h = math.asinh(math.exp(log_sinh_h))
    p0 = signed_foot_offset(eps, L)
    return L, H, d, h, p0, log_cosh_d, log_sinh_h


def developed_lines(k: int, eps: float):
    """The boundary line ``C`` and the line of ``D`` in a developed quadrilateral.

    ``C`` is the x-axis with the foot ``N`` of ``h`` at parameter 0;
    ``D`` is the line perpendicular to ``h`` at distance ``h`` on the right
    of ``C``.  Returns ``(delta, deltap, positions)`` where ``positions``
    holds the parameters of ``P_1 .. P_{k-1}``.
    """
    L, _, _, h, p0, _, _ = _lengths(k, eps)
    delta = Geodesic(np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0]))
    base = np.array([0.0, -math.sinh(h), math.cosh(h)])
    deltap = Geodesic(base, np.array([1.0, 0.0, 0.0]))
    positions = [(i - k / 2.0) * L + p0 for i in range(1, k)]
    return delta, deltap, positions


def omega_angles(k: int, eps: float) -> List[Angle]:
    """Angles between ``D`` and the edges ``e_1 .. e_{k-1}`` via the developed picture."""
    _check(k, eps)
    delta, deltap, xs = developed_lines(k, eps)
    return [omega_at(delta, deltap, x, eps) for x in xs]


def _acos_arg(x: float, what: str) -> float:
    if abs(x) > 1.0 + 1e-9:
        raise DomainError(f"{what}: argument {x} outside [-1, 1]")
    return max(-1.0, min(1.0, x))


def omega_last_parts(k: int, eps: float) -> dict:
    """Intermediate quantities of the exact chain for ``omega_{k-1}``."""
    _check(k, eps)
    L, H, d, h, p0, _, log_sinh_h = _lengths(k, eps)
    a = (k / 2.0 - 1.0) * L + p0
    # cosh v = cosh a cosh h
    log_cosh_v = logcosh(a) + logcosh(h)
    v = acosh_from_log(log_cosh_v)
    sin_em = _acos_arg(math.exp(log_sinh_h - logsinh(v)), "sin eps-")
    eps_minus = math.asin(sin_em)
    eps_plus = eps - eps_minus
    sin_gp = _acos_arg(sin_em * math.cosh(a), "cos gamma-")
    gamma_plus = math.asin(sin_gp)
    one_minus_cos = (
        math.sin(eps_plus) * sin_gp * math.exp(log_cosh_v)
        + 2.0 * math.sin(eps_plus / 2.0) ** 2
        + math.cos(eps_plus) * 2.0 * math.sin(gamma_plus / 2.0) ** 2
    )
    half = one_minus_cos / 2.0
    if half < -1e-9 or half > 1.0 + 1e-9:
        raise DomainError(f"1 - cos(omega) = {one_minus_cos} outside [0, 2]")
    omega = 2.0 * math.asin(math.sqrt(max(0.0, min(1.0, half))))
    return {
        "a": a, "v": v, "eps_minus": eps_minus, "eps_plus": eps_plus,
        "gamma_plus": gamma_plus, "one_minus_cos_omega": one_minus_cos, "omega": omega,
    }


def omega_last_exact(k: int, eps: float) -> Angle:
    """``omega_{k-1}`` from the triangle chain ``P_{k-1} N Omega`` / ``P_{k-1} Omega Omega_{k-1}``."""
    return Angle(omega_last_parts(k, eps)["omega"])


def pants_metrics(k: int, eps: float, with_omega: bool = True) -> PantsMetrics:
    _check(k, eps)
    L, H, d, h, p0, lcd, lsh = _lengths(k, eps)
    omega: Tuple[float, ...] = ()
    if with_omega:
        omega = tuple(float(w) for w in omega_angles(k, eps))
    return PantsMetrics(k, float(eps), L, H, d, h, p0, omega, lcd, lsh)


Sampled = Union[Callable[[float], float], Sequence[float]]


def asymptotic_slope(f: Sampled, grid: Sequence[float]) -> float:
    """Least-squares slope of ``log f`` against ``log eps``.

    ``grid`` must decrease strictly toward 0 and have at least four points.
    ``f`` is either a callable or the list of sampled values.
    """
    g = [float(x) for x in grid]
    if len(g) < 4:
        raise BadGrid("need at least four grid points")
    if any(x <= 0 for x in g) or any(b >= a for a, b in zip(g, g[1:])):
        raise BadGrid("grid must be positive and strictly decreasing")
    vals = [float(f(x)) for x in g] if callable(f) else [float(v) for v in f]
    if len(vals) != len(g):
        raise BadGrid("sample count does not match grid")
    if any(v <= 0 or not math.isfinite(v) for v in vals):
        raise BadGrid("samples must be positive and finite")
    slope, _ = np.polyfit(np.log(g), np.log(vals), 1)
    return float(slope)


def log_grid(lo: float, hi: float, n: int) -> List[float]:
    """Decreasing geometric grid from ``hi`` down to ``lo``."""
    return [float(x) for x in np.geomspace(hi, lo, n)]
