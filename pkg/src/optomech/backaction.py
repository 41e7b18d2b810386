"""Dynamical backaction under detuned drive: gain, threshold, saturation.

For a critically coupled cavity driven at detuning Delta, the backaction
rate is

    G_ba = (g*x_zp/kappa)^2 * (P_in/(hbar*w0)) * 8/(1 + 4*Delta^2/kappa^2)
           * [ 1/(1 + 4*(Delta+Om)^2/kappa^2)
             - 1/(1 + 4*(Delta-Om)^2/kappa^2) ],

positive (extra damping) for red detuning, negative (gain) for blue. At
Delta = +kappa/2 this reduces to

    G_ba = -(g*x_zp/kappa)^2 * (P_in/(hbar*w0))
           * 8*(Om/kappa)/(1 + 4*Om^4/kappa^4),

and the parametric-instability threshold G_ba = -G_m gives

    P_thres = (w0/4) * m_eff*G_m*Om * (kappa^2/g^2) * (kappa/Om)
              * (1 + 4*Om^4/kappa^4).

Above threshold the oscillation saturates near (kappa/2)/g; the
square-root interpolation between threshold and asymptote is
phenomenological. Transmission modulation uses the quasi-static Lorentzian
dip of a critically coupled cavity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .devices import Microcavity
from .mechanics import MechanicalMode, zero_point
from .sensing import DriveCondition
from .units import HBAR, TWO_PI

Regime = Literal["cooling", "amplification", "neutral", "above_threshold"]


@dataclass(frozen=True)
class BackactionResult:
    """Backaction rate and the resulting total linewidth."""

    gamma_ba: float     # rad/s; negative = gain
    gamma_total: float  # rad/s, Gamma_m + Gamma_ba
    regime: Regime


@dataclass(frozen=True)
class OscillationState:
    """Steady oscillation above the parametric instability threshold."""

    amplitude: float         # m; 0 below threshold
    modulation_depth: float  # in [0, 1]


def backaction_rate(cav: Microcavity, mode: MechanicalMode, g: float,
                    drive: DriveCondition) -> BackactionResult:
    """Dynamical backaction rate at the drive detuning (rad/s)."""
    x_zp, _ = zero_point(mode)
    kappa = cav.kappa
    delta = drive.detuning
    om = mode.omega_m
    photon_flux = drive.p_in / (HBAR * cav.omega0)
    lor = lambda d: 1.0 / (1.0 + 4.0 * d * d / (kappa * kappa))
    gamma_ba = ((g * x_zp / kappa) ** 2 * photon_flux
                * 8.0 * lor(delta) * (lor(delta + om) - lor(delta - om)))
    gamma_total = mode.gamma_m + gamma_ba
    if gamma_total < 0:
        regime: Regime = "above_threshold"
    elif gamma_ba > 0:
        regime = "cooling"
    elif gamma_ba < 0:
        regime = "amplification"
    else:
        regime = "neutral"
    return BackactionResult(gamma_ba=gamma_ba, gamma_total=gamma_total,
                            regime=regime)


def blue_detuned_rate(cav: Microcavity, mode: MechanicalMode, g: float,
                      p_in: float) -> float:
    """Closed-form backaction rate at Delta = +kappa/2 (rad/s, negative)."""
    x_zp, _ = zero_point(mode)
    kappa = cav.kappa
    om = mode.omega_m
    return -((g * x_zp / kappa) ** 2 * p_in / (HBAR * cav.omega0)
             * 8.0 * (om / kappa) / (1.0 + 4.0 * om ** 4 / kappa ** 4))


def threshold_power(cav: Microcavity, mode: MechanicalMode, g: float) -> float:
    """Parametric instability threshold power at Delta = +kappa/2 (W)."""
    if g <= 0:
        raise ValueError("require g > 0")
    kappa = cav.kappa
    om = mode.omega_m
    return (cav.omega0 / 4.0 * mode.m_eff * mode.gamma_m * om
            * kappa ** 2 / g ** 2 * (kappa / om)
            * (1.0 + 4.0 * om ** 4 / kappa ** 4))


def linewidth_vs_coupling(cav: Microcavity, mode: MechanicalMode,
                          drive: DriveCondition,
                          g_grid: Iterable[float]) -> np.ndarray:
    """Total linewidth against squared coupling at Delta = +kappa/2.

    Returns rows (g^2 in (rad/s/m)^2, Gamma_total/2pi in Hz); the linewidth
    is affine in g^2 with negative slope and clipped at zero above
    threshold.
    """
    rows = []
    for g in g_grid:
        gamma_ba = blue_detuned_rate(cav, mode, g, drive.p_in)
        gamma_total = max(mode.gamma_m + gamma_ba, 0.0)
        rows.append((g * g, gamma_total / TWO_PI))
    return np.array(rows)


def linewidth_slope(cav: Microcavity, mode: MechanicalMode,
                    p_in: float) -> float:
    """d(Gamma_total)/d(g^2) at Delta = +kappa/2 (rad/s per (rad/s/m)^2)."""
    x_zp, _ = zero_point(mode)
    kappa = cav.kappa
    om = mode.omega_m
    return -(x_zp ** 2 / kappa ** 2) * (p_in / (HBAR * cav.omega0)) \
        * 8.0 * (om / kappa) / (1.0 + 4.0 * om ** 4 / kappa ** 4)


def oscillation_amplitude(cav: Microcavity, mode: MechanicalMode, g: float,
                          drive: DriveCondition) -> OscillationState:
    """Saturated oscillation amplitude above threshold at Delta = +kappa/2.

    amplitude = (kappa/2)/g * sqrt(1 - P_thres/P_in) above threshold and 0
    below; the asymptote (kappa/2)/g is the point where the swing across
    the cavity line saturates the gain.
    """
    p_thres = threshold_power(cav, mode, g)
    if drive.p_in <= p_thres:
        amplitude = 0.0
    else:
        amplitude = (cav.kappa / 2.0) / g \
            * math.sqrt(1.0 - p_thres / drive.p_in)
    depth = transmission_modulation(cav, g, amplitude, cav.kappa / 2.0)
    return OscillationState(amplitude=amplitude, modulation_depth=depth)


def transmission_modulation(cav: Microcavity, g: float, amplitude: float,
                            delta: float) -> float:
    """Quasi-static transmission modulation depth in [0, 1].

    The critically coupled dip T(d) = 1 - 1/(1 + 4d^2/kappa^2) is swept by
    the instantaneous detuning d(t) = delta + g*a*cos(Om*t); the depth is
    (T_max - T_min)/T_max, reaching unity whenever the sweep crosses
    resonance.
    """
    if amplitude < 0:
        raise ValueError("require amplitude >= 0")
    kappa = cav.kappa
    swing = g * amplitude
    trans = lambda d: 1.0 - 1.0 / (1.0 + 4.0 * d * d / (kappa * kappa))
    lo, hi = delta - swing, delta + swing
    d_max = max(abs(lo), abs(hi))
    d_min = 0.0 if lo <= 0.0 <= hi else min(abs(lo), abs(hi))
    t_max, t_min = trans(d_max), trans(d_min)
    if t_max == 0.0:
        return 0.0
    return (t_max - t_min) / t_max
