"""Material response models on the real and imaginary frequency axes.

All models are causal closed forms with time dependence ``exp(-i*omega*t)``.
On the imaginary axis (``omega = i*xi``, ``xi > 0``) every model evaluates
to a real positive number, which is what the vacuum-pressure integrand
consumes; real-axis values are complex and feed the Kramers-Kronig
consistency check.

Imaginary-axis forms realized here (substitutions ``omega**2 -> -xi**2``,
``i*gamma*omega -> -gamma*xi``):

* ``Drude``:           1 + Op**2 / (xi**2 + g*xi)
* ``DrudeLorentz``:    1 + Os**2 / (xi**2 + w0**2 + g*xi)
* ``PendryEffective``: 1 - f*xi**2 / (xi**2 + wm**2 + 2*g*xi)

Note the factor 2 in the split-cylinder dissipation term; the Drude-Lorentz
form carries no such factor.  Frequencies are unit-agnostic: parameters and
evaluation points just have to share one unit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np


class DomainError(ValueError):
    """Evaluation requested outside a model's frequency domain."""


class PoleError(ArithmeticError):
    """Undamped model evaluated exactly on its real-axis resonance."""


def _positive_frequency(value, name):
    arr = np.asarray(value, dtype=float)
    if arr.size == 0 or not np.all(arr > 0.0):
        raise DomainError(f"{name} must be > 0, got {value!r}")
    return arr


def _as_input_shape(result, reference):
    if np.ndim(reference) == 0:
        return result[()].item()
    return result


@dataclass(frozen=True)
class Vacuum:
    """Identity response, 1 at every frequency."""

    def eval_imag(self, xi):
        arr = _positive_frequency(xi, "xi")
        return _as_input_shape(np.ones_like(arr), xi)

    def eval_real(self, omega):
        arr = _positive_frequency(omega, "omega")
        return _as_input_shape(np.ones_like(arr, dtype=complex), omega)


@dataclass(frozen=True)
class Constant:
    """Frequency-independent response, used for ideal-limit materials."""

    value: float

    def __post_init__(self):
        if not self.value >= 0.0:
            raise ValueError(f"value must be >= 0, got {self.value}")

    def eval_imag(self, xi):
        arr = _positive_frequency(xi, "xi")
        return _as_input_shape(np.full_like(arr, self.value), xi)

    def eval_real(self, omega):
        arr = _positive_frequency(omega, "omega")
        return _as_input_shape(np.full_like(arr, self.value, dtype=complex), omega)


@dataclass(frozen=True)
class Drude:
    """Metallic permittivity 1 - Op**2/(omega**2 + i*gamma*omega).

    Diverges like 1/xi at the low end of the imaginary axis, which is why
    xi = 0 is outside the domain everywhere in this package.
    """

    plasma_frequency: float
    dissipation: float = 0.0

    def __post_init__(self):
        if not self.plasma_frequency > 0.0:
            raise ValueError(f"plasma_frequency must be > 0, got {self.plasma_frequency}")
        if self.dissipation < 0.0:
            raise ValueError(f"dissipation must be >= 0, got {self.dissipation}")

    def eval_imag(self, xi):
        arr = _positive_frequency(xi, "xi")
        out = 1.0 + self.plasma_frequency**2 / (arr * arr + self.dissipation * arr)
        return _as_input_shape(out, xi)

    def eval_real(self, omega):
        arr = _positive_frequency(omega, "omega")
        # denominator omega**2 + i*gamma*omega never vanishes for omega > 0
        out = 1.0 - self.plasma_frequency**2 / (arr * arr + 1j * self.dissipation * arr)
        return _as_input_shape(out, omega)


@dataclass(frozen=True)
class DrudeLorentz:
    """Bound-oscillator response 1 - Os**2/(omega**2 - w0**2 + i*gamma*omega).

    Paramagnetic on the imaginary axis when used as a permeability: the
    value exceeds 1 for every xi > 0.
    """

    oscillator_strength: float
    resonance: float
    dissipation: float = 0.0

    def __post_init__(self):
        if self.oscillator_strength < 0.0:
            raise ValueError(f"oscillator_strength must be >= 0, got {self.oscillator_strength}")
        if not self.resonance > 0.0:
            raise ValueError(f"resonance must be > 0, got {self.resonance}")
        if self.dissipation < 0.0:
            raise ValueError(f"dissipation must be >= 0, got {self.dissipation}")

    def eval_imag(self, xi):
        arr = _positive_frequency(xi, "xi")
        out = 1.0 + self.oscillator_strength**2 / (
            arr * arr + self.resonance**2 + self.dissipation * arr
        )
        return _as_input_shape(out, xi)

    def eval_real(self, omega):
        arr = _positive_frequency(omega, "omega")
        den = arr * arr - self.resonance**2 + 1j * self.dissipation * arr
        if np.any(den == 0.0):
            raise PoleError(
                f"undamped resonance hit exactly at omega = {self.resonance}"
            )
        out = 1.0 - self.oscillator_strength**2 / den
        return _as_input_shape(out, omega)


@dataclass(frozen=True)
class PendryEffective:
    """Split-cylinder-array effective permeability.

    1 - f*omega**2/(omega**2 - wm**2 + 2i*gamma*omega): a resonant form
    whose imaginary-axis values sit strictly between 1 - f and 1, i.e. a
    diamagnet at every xi.  f < 1 is required for positivity on the
    imaginary axis (equivalently r/b < 1/sqrt(pi) for the physical array);
    f = 0 is an allowed degenerate case that reduces to vacuum.
    """

    filling_factor: float
    resonance: float
    dissipation: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.filling_factor < 1.0):
            raise ValueError(
                f"filling_factor must be in [0, 1), got {self.filling_factor}"
            )
        if not self.resonance > 0.0:
            raise ValueError(f"resonance must be > 0, got {self.resonance}")
        if self.dissipation < 0.0:
            raise ValueError(f"dissipation must be >= 0, got {self.dissipation}")

    def eval_imag(self, xi):
        arr = _positive_frequency(xi, "xi")
        out = 1.0 - self.filling_factor * arr * arr / (
            arr * arr + self.resonance**2 + 2.0 * self.dissipation * arr
        )
        return _as_input_shape(out, xi)

    def eval_real(self, omega):
        arr = _positive_frequency(omega, "omega")
        den = arr * arr - self.resonance**2 + 2j * self.dissipation * arr
        if np.any(den == 0.0):
            raise PoleError(
                f"undamped resonance hit exactly at omega = {self.resonance}"
            )
        out = 1.0 - self.filling_factor * arr * arr / den
        return _as_input_shape(out, omega)


DispersionModel = Union[Vacuum, Constant, Drude, DrudeLorentz, PendryEffective]


def eval_imag(model: DispersionModel, xi):
    """Model value at omega = i*xi (real, positive for valid parameters)."""
    return model.eval_imag(xi)


def eval_real(model: DispersionModel, omega):
    """Complex model value at real angular frequency omega."""
    return model.eval_real(omega)


@dataclass(frozen=True)
class HalfSpaceMaterial:
    """Permittivity/permeability pair describing one half-space."""

    epsilon: DispersionModel
    mu: DispersionModel


VACUUM_HALF_SPACE = HalfSpaceMaterial(Vacuum(), Vacuum())


def imag_bounded_above_by_one(model: DispersionModel) -> bool:
    """True when the model family guarantees eval_imag(xi) <= 1 for all xi."""
    if isinstance(model, (Vacuum, PendryEffective)):
        return True
    if isinstance(model, Constant):
        return model.value <= 1.0
    if isinstance(model, DrudeLorentz):
        return model.oscillator_strength == 0.0
    return False


def imag_bounded_below_by_one(model: DispersionModel) -> bool:
    """True when the model family guarantees eval_imag(xi) >= 1 for all xi."""
    if isinstance(model, (Vacuum, Drude, DrudeLorentz)):
        return True
    if isinstance(model, Constant):
        return model.value >= 1.0
    if isinstance(model, PendryEffective):
        return model.filling_factor == 0.0
    return False
