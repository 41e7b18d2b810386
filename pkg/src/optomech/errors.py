"""Exception hierarchy shared across the package."""

from __future__ import annotations


class OptomechError(Exception):
    """Base class for all domain errors raised by this package."""


class DimensionMismatch(OptomechError):
    """Arithmetic or check between quantities of incompatible dimension."""

    def __init__(self, got, expected):
        self.got = got
        self.expected = expected
        super().__init__(f"dimension mismatch: got {got}, expected {expected}")


class NonEvanescent(OptomechError):
    """Refractive index <= 1: no evanescent field outside the resonator."""


class NotAString(OptomechError):
    """Operation defined only for string-type oscillators."""


class GeometryMismatch(OptomechError):
    """Oscillator kind inconsistent with the coupling orientation."""


class OutOfDomain(OptomechError):
    """Coordinate outside the oscillator extent."""


class DivergentMass(OptomechError):
    """Probe overlap with the mode shape vanishes; effective mass diverges."""


class IllConditioned(OptomechError):
    """Fit input does not constrain the model parameters."""


class ZeroPower(OptomechError):
    """Shot-noise floor undefined at zero input power."""


class GridMismatch(OptomechError):
    """Spectral densities on different grids or with different sidedness."""


class NoResonanceInWindow(OptomechError):
    """Response data does not bracket the interference extremum pair."""


class NotCriticallyCoupled(OptomechError):
    """Model derived under critical coupling; other regimes are rejected."""
