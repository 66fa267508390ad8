"""Main terms of the counting asymptotics and spectral second-moment sums.

For the modular group the main term is a single exponential; the secondary
branches (small eigenvalues, eigenvalue 1/4, cusp boundary values) are
implemented for synthetic datasets so the general formula stays testable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaincc

from ..errors import DomainError
from ..fracint import FracOrder
from ..geometry import Point
from .data import Amplitude, SpectralDataset, amplitude
from .transforms import r_alpha

__all__ = [
    "MODULAR_COVOLUME",
    "main_term",
    "main_term_alpha",
    "MainTermAlpha",
    "spectral_variance",
    "VarianceSum",
    "f_alpha_sum",
    "weyl_b_constant",
]

# Hyperbolic area of the modular surface.
MODULAR_COVOLUME = math.pi / 3.0

_LOG2M1 = math.log(2.0) - 1.0


def _as_alpha(order) -> float:
    return order.alpha if isinstance(order, FracOrder) else FracOrder(float(order)).alpha


def main_term(s, z: Point = None, w: Point = None,
              dataset: SpectralDataset | None = None,
              volume: float = MODULAR_COVOLUME):
    """Smooth prediction for the ball count of radius s.

    pi e^s / vol plus, when the dataset carries them, the small-eigenvalue
    terms sqrt(pi) Gamma(r)/Gamma(3/2+r) e^{s(1/2+r)} phi phi, the
    eigenvalue-1/4 term 4(s + 2(log2 - 1)) e^{s/2} phi phi, and the cusp
    term e^{s/2} sum E_a E_a.  For the modular group only the first term is
    nonzero.
    """
    s_arr = np.asarray(s, dtype=float)
    out = math.pi * np.exp(s_arr) / volume
    if dataset is not None:
        for r, mode in dataset.small_modes:
            coeff = math.sqrt(math.pi) * math.gamma(r) / math.gamma(1.5 + r)
            out = out + coeff * np.exp(s_arr * (0.5 + r)) * abs(mode) ** 2
        for mode in dataset.zero_modes:
            out = out + 4.0 * (s_arr + 2.0 * _LOG2M1) * np.exp(0.5 * s_arr) * abs(mode) ** 2
        for val in dataset.cusp_values:
            out = out + np.exp(0.5 * s_arr) * abs(val) ** 2
    return float(out) if s_arr.ndim == 0 else out


@dataclass(frozen=True)
class MainTermAlpha:
    """Fractionally integrated normalized main term with its error budget.

    value omits the integration-tail correction; error_budget is that
    correction's exact magnitude for the leading exponential, computed from
    the upper incomplete gamma (it decays like 2 (pi/vol) / (Gamma(a) s^(1-a))).
    """

    value: float
    error_budget: float


def main_term_alpha(s: float, z: Point = None, w: Point = None,
                    dataset: SpectralDataset | None = None, order=0.5,
                    volume: float = MODULAR_COVOLUME) -> MainTermAlpha:
    """Fractional integral (order alpha, based at 0) of main_term(s) e^{-s/2}.

    Modular-group reduction: (pi/vol) 2^alpha e^{s/2}.  The synthetic
    branches mirror main_term with e^{s(1/2+r)} -> e^{s r}/r^alpha and the
    polynomial terms picking up s^{a+1}/Gamma(a+2), s^a/Gamma(a+1).
    """
    alpha = _as_alpha(order)
    if not s > 0.0:
        raise DomainError(f"requires s > 0, got {s}")
    value = (math.pi / volume) * 2.0 ** alpha * math.exp(0.5 * s)
    if dataset is not None:
        for r, mode in dataset.small_modes:
            coeff = math.sqrt(math.pi) * math.gamma(r) / (r ** alpha * math.gamma(1.5 + r))
            value += coeff * math.exp(s * r) * abs(mode) ** 2
        for mode in dataset.zero_modes:
            value += 4.0 * (s ** (alpha + 1.0) / math.gamma(alpha + 2.0)
                            + 2.0 * _LOG2M1 * s ** alpha / math.gamma(alpha + 1.0)) * abs(mode) ** 2
        for val in dataset.cusp_values:
            value += s ** alpha / math.gamma(alpha + 1.0) * abs(val) ** 2
    # exact leading-term integration tail: (pi/vol) e^{s/2} Q(a, s/2) 2^a
    budget = (math.pi / volume) * math.exp(0.5 * s) * gammaincc(alpha, 0.5 * s) * 2.0 ** alpha
    return MainTermAlpha(value=value, error_budget=float(budget))


@dataclass(frozen=True)
class VarianceSum:
    """Partial spectral variance sum with a growth-extrapolated tail bound."""

    value: float
    tail_bound: float
    terms: int


def _variance_weight(t: float, alpha: float) -> float:
    """2 pi |Gamma(it)|^2 / (t^{2 alpha} |Gamma(3/2+it)|^2), evaluated stably.

    |Gamma(it)|^2 = pi/(t sinh(pi t)) and Gamma(3/2+it) = (1/2+it) Gamma(1/2+it)
    with |Gamma(1/2+it)|^2 = pi/cosh(pi t), so the ratio is
    cosh(pi t)/(t sinh(pi t) (1/4+t^2)) -- no huge intermediates.
    """
    ratio = 1.0 / (math.tanh(math.pi * t) * t * (0.25 + t * t))
    return 2.0 * math.pi * ratio / t ** (2.0 * alpha)


def weyl_b_constant(amplitudes: list[Amplitude]) -> float:
    """Quadratic-growth constant of cumulative |b_j|^2, estimated at the
    largest available spectral parameter: sum_{t_j <= t_top} |b_j|^2 / t_top^2.

    The endpoint estimator tracks the asymptotic law; a sup over all T would
    be dominated by whichever single form happens to be largest early on.
    """
    if not amplitudes:
        return 0.0
    t_top = max(a.t for a in amplitudes)
    return sum(abs(a.b) ** 2 for a in amplitudes) / t_top ** 2


def spectral_variance(amplitudes, order, t_max: float,
                      z: Point = None, w: Point = None) -> VarianceSum:
    """Partial sum of 2 pi |Gamma(it_j)|^2 |b_j|^2 / |t_j^a Gamma(3/2+it_j)|^2.

    `amplitudes` is either a list of Amplitude or a SpectralDataset (then z, w
    are required and amplitudes are computed on the fly).

    tail_bound is the remainder estimate obtained by continuing the measured
    quadratic growth of cumulative |b_j|^2 as a density 2 C_b u du against
    the summand envelope 2 pi coth(pi u) u^{-3-2a}:

        tail = 2 pi coth(pi t_max) * 2 C_b / (1 + 2a) * t_max^{-1-2a}.

    It is an extrapolation report, not a proof; on the bundled data the
    internal partial sums stay well inside it.  An empty amplitude list
    carries no growth information, so the tail is reported as infinity.
    """
    alpha = _as_alpha(order)
    amps = _resolve_amplitudes(amplitudes, z, w)
    inside = [a for a in amps if 0.0 < a.t <= t_max]
    value = sum(_variance_weight(a.t, alpha) * abs(a.b) ** 2 for a in inside)
    if not amps:
        return VarianceSum(value=0.0, tail_bound=math.inf, terms=0)
    c_b = weyl_b_constant(amps)
    t_ref = max(t_max, 1.0)
    tail = (2.0 * math.pi / math.tanh(math.pi * t_ref)
            * 2.0 * c_b / (1.0 + 2.0 * alpha) * t_ref ** (-1.0 - 2.0 * alpha))
    return VarianceSum(value=float(value), tail_bound=float(tail), terms=len(inside))


def f_alpha_sum(amplitudes, order, s, t_max: float = math.inf,
                z: Point = None, w: Point = None):
    """Finite trigonometric model sum_j Re(r_alpha(t_j) e^{i t_j s}) b_j.

    Vectorized over s; b_j are treated as complex and the real part of the
    whole summand is taken, matching Re(r b e^{its}) for Hermitian pairs.
    """
    alpha = _as_alpha(order)
    amps = [a for a in _resolve_amplitudes(amplitudes, z, w) if 0.0 < a.t < t_max]
    s_arr = np.asarray(s, dtype=float)
    out = np.zeros(s_arr.shape)
    for a in amps:
        r = r_alpha(a.t, alpha) * a.b
        out = out + r.real * np.cos(a.t * s_arr) - r.imag * np.sin(a.t * s_arr)
    return float(out) if s_arr.ndim == 0 else out


def _resolve_amplitudes(amplitudes, z, w) -> list[Amplitude]:
    if isinstance(amplitudes, SpectralDataset):
        if z is None or w is None:
            raise DomainError("dataset input requires z and w")
        return amplitude(amplitudes, z, w)
    return list(amplitudes)
