"""Microcavity and nano-oscillator geometry with derived optical parameters.

The toroid's optical mode cross-section is treated as a circle of diameter
D_mode, and the evanescent field outside the rim decays as exp(-alpha*x)
with 1/alpha = (lambda/2pi)/sqrt(n^2 - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .errors import NonEvanescent, NotAString
from .units import C_LIGHT, TWO_PI

Orientation = Literal["horizontal", "vertical", "sheet"]
OscillatorKind = Literal["string", "sheet"]


@dataclass(frozen=True)
class Microcavity:
    """Toroidal microcavity geometry and optical mode parameters.

    All lengths in metres; kappa is the energy decay rate in rad/s;
    xi is the field fraction at the cavity surface; n2 the Kerr
    coefficient in m^2/W.
    """

    R: float          # major radius
    r: float          # minor radius
    wavelength: float
    n: float          # material refractive index
    n_eff: float      # effective mode index
    kappa: float      # energy decay rate, rad/s
    D_mode: float     # optical mode diameter
    xi: float         # surface field fraction
    n2: float = 3e-20  # Kerr coefficient of silica, m^2/W

    def __post_init__(self):
        if not (self.R > self.r > 0):
            raise ValueError("require R > r > 0")
        if self.n <= 0 or self.n_eff <= 0:
            raise ValueError("require n > 0 and n_eff > 0")
        if not (0 < self.xi <= 1):
            raise ValueError("require 0 < xi <= 1")
        if self.kappa <= 0:
            raise ValueError("require kappa > 0")
        if not (0 < self.D_mode < 2 * self.r):
            raise ValueError("require 0 < D_mode < 2r")
        if self.wavelength <= 0:
            raise ValueError("require wavelength > 0")

    @property
    def omega0(self) -> float:
        """Unperturbed optical resonance frequency (rad/s)."""
        return TWO_PI * C_LIGHT / self.wavelength

    @property
    def mode_area(self) -> float:
        """Optical mode cross-section pi*(D_mode/2)^2 (m^2)."""
        return math.pi * (self.D_mode / 2.0) ** 2

    @property
    def roundtrip_time(self) -> float:
        """Cavity roundtrip time 2*pi*R*n_eff/c (s)."""
        return TWO_PI * self.R * self.n_eff / C_LIGHT


@dataclass(frozen=True)
class NanoOscillator:
    """Doubly clamped string or 2-D sheet oscillator.

    For sheets, L and w are the two lateral extents. `stress` is the
    internal tensile stress in Pa.
    """

    kind: OscillatorKind
    L: float
    w: float
    t: float
    rho: float
    stress: float
    n_nano: float
    Q: float
    mode_index: int = 1

    def __post_init__(self):
        for name in ("L", "w", "t", "rho", "stress"):
            if getattr(self, name) <= 0:
                raise ValueError(f"require {name} > 0")
        if self.Q <= 1:
            raise ValueError("require Q > 1")
        if self.kind not in ("string", "sheet"):
            raise ValueError(f"unknown oscillator kind {self.kind!r}")
        if self.mode_index < 1:
            raise ValueError("mode_index must be a positive integer")

    @property
    def physical_mass(self) -> float:
        """rho * t * w * L (kg)."""
        return self.rho * self.t * self.w * self.L


@dataclass(frozen=True)
class CouplingGeometry:
    """Separation and orientation of the oscillator in the near field."""

    x0: float
    orientation: Orientation
    standing_wave_phase: float = 0.0

    def __post_init__(self):
        if self.x0 < 0:
            raise ValueError("require x0 >= 0")
        if self.orientation not in ("horizontal", "vertical", "sheet"):
            raise ValueError(f"unknown orientation {self.orientation!r}")


def decay_constant(cav: Microcavity) -> float:
    """Evanescent field decay constant alpha = 2*pi*sqrt(n^2-1)/lambda (1/m).

    The field decays as exp(-alpha*x); the intensity decay length is
    1/(2*alpha).
    """
    if cav.n <= 1:
        raise NonEvanescent("refractive index must exceed 1")
    return TWO_PI * math.sqrt(cav.n ** 2 - 1.0) / cav.wavelength


def index_for_decay_length(wavelength: float, decay_length: float) -> float:
    """Refractive index giving a target field decay length 1/alpha."""
    if wavelength <= 0 or decay_length <= 0:
        raise ValueError("require positive wavelength and decay length")
    return math.sqrt(1.0 + (wavelength / (TWO_PI * decay_length)) ** 2)


def mode_volume(cav: Microcavity) -> float:
    """Toroid mode volume 2*pi*R * pi*(D_mode/2)^2 (m^3)."""
    return TWO_PI * cav.R * cav.mode_area


def finesse(cav: Microcavity) -> float:
    """Optical finesse F = c / (n_eff * R * kappa)."""
    return C_LIGHT / (cav.n_eff * cav.R * cav.kappa)


def sampling_lengths(cav: Microcavity, alpha: float) -> tuple[float, float]:
    """Transverse sampling lengths (l_x, l_y) of the evanescent field.

    l_y = sqrt(pi*R/alpha) along the whispering-gallery trajectory
    (set by the major radius), l_x = sqrt(pi*r/alpha) across it (minor
    radius).
    """
    if alpha <= 0:
        raise ValueError("require alpha > 0")
    l_y = math.sqrt(math.pi * cav.R / alpha)
    l_x = math.sqrt(math.pi * cav.r / alpha)
    return l_x, l_y


def string_mode_frequency(osc: NanoOscillator, n: int | None = None) -> float:
    """Stress-dominated string eigenfrequency f_n = (n/2L)*sqrt(S/rho) (Hz)."""
    if osc.kind != "string":
        raise NotAString("mode frequencies defined for string oscillators only")
    if n is None:
        n = osc.mode_index
    return (n / (2.0 * osc.L)) * math.sqrt(osc.stress / osc.rho)


def infer_stress(osc: NanoOscillator, measured_f1: float) -> float:
    """Invert the fundamental frequency for tensile stress S = rho*(2L*f1)^2."""
    if measured_f1 < 0:
        raise ValueError("require measured_f1 >= 0")
    return osc.rho * (2.0 * osc.L * measured_f1) ** 2
