"""Homogenization micro-model for an array of split conducting cylinders.

Gaussian (CGS) units throughout: lengths in cm, sheet resistivity in s/cm
(the Gaussian resistance unit), capacitance per unit length dimensionless
(cm per cm), frequencies in rad/s.  An applied axial field H drives a
circulating current J on each cylinder; Ampere's law puts J/c inside, and
every cylinder leaks a fraction pi*r^2/b^2 of its flux back over the whole
array with opposite sign.  Averaging B over a unit-cell face and H along a
cell edge turns the field pair into an effective permeability.

The chain reproduces the closed-form response exactly:

    mu_eff(omega) = 1 - f*omega**2 / (omega**2 - wm**2 + 2i*gm*omega)

with f = pi*r^2/b^2, wm = sqrt(c^2/(pi*r^2*C)), gm = alpha*c^2/r, which is
what ``geometry_to_params`` extracts for the dispersion module.  (In the
current-balance denominator the resistive term reduces to 2*alpha*c/r; the
dissipation read off the closed form is then alpha*c^2/r, consistent with
the field chain.)

Operations accept scalar or ndarray omega.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .constants import C_CM_PER_S
from .dispersion import PendryEffective, PoleError, _positive_frequency


class GeometryValidityWarning(UserWarning):
    """Soft validity condition of the effective-medium picture violated."""


_SOFT_RATIO_LIMIT = 0.1


@dataclass(frozen=True)
class CylinderArrayGeometry:
    """Physical parameters of the split-cylinder array.

    radius, sheet_gap, period, length in cm; sheet_resistivity in s/cm;
    capacitance_per_length dimensionless (Gaussian capacitance is a length).
    Cylinders must not overlap (radius < period/2), which automatically
    keeps the filling factor below pi/4.
    """

    radius: float
    sheet_gap: float
    period: float
    length: float
    sheet_resistivity: float
    capacitance_per_length: float

    def __post_init__(self):
        for name in ("radius", "sheet_gap", "period", "length"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")
        if self.sheet_resistivity < 0.0:
            raise ValueError(
                f"sheet_resistivity must be >= 0, got {self.sheet_resistivity}"
            )
        if not self.capacitance_per_length > 0.0:
            raise ValueError(
                f"capacitance_per_length must be > 0, got {self.capacitance_per_length}"
            )
        if not self.radius < self.period / 2.0:
            raise ValueError(
                "cylinders overlap: radius must be < period/2 "
                f"(radius={self.radius}, period={self.period})"
            )
        for note in self.validity_notes():
            warnings.warn(note, GeometryValidityWarning, stacklevel=3)

    def validity_notes(self):
        """Diagnostics for the thin-gap and long-cylinder assumptions."""
        notes = []
        if self.sheet_gap / self.radius > _SOFT_RATIO_LIMIT:
            notes.append(
                f"sheet_gap/radius = {self.sheet_gap / self.radius:.3g} exceeds "
                f"{_SOFT_RATIO_LIMIT}; the thin double-sheet approximation degrades"
            )
        if self.radius / self.length > _SOFT_RATIO_LIMIT:
            notes.append(
                f"radius/length = {self.radius / self.length:.3g} exceeds "
                f"{_SOFT_RATIO_LIMIT}; the long-cylinder approximation degrades"
            )
        return notes

    @property
    def filling_factor(self) -> float:
        return np.pi * self.radius**2 / self.period**2


@dataclass(frozen=True)
class FieldState:
    """Applied field, induced sheet current and the two region fields.

    The Ampere split h_inside - h_outside = J/c holds by construction
    (checked here to float rounding).
    """

    applied: complex
    current_per_length: complex
    h_inside: complex
    h_outside: complex

    def __post_init__(self):
        lhs = np.asarray(self.h_inside) - np.asarray(self.h_outside)
        rhs = np.asarray(self.current_per_length) / C_CM_PER_S
        scale = np.maximum(
            np.abs(np.asarray(self.h_inside)), np.maximum(np.abs(rhs), 1e-300)
        )
        if not np.all(np.abs(lhs - rhs) <= 1e-9 * scale):
            raise ValueError("inconsistent fields: h_inside - h_outside != J/c")


def induced_current(geom: CylinderArrayGeometry, applied_field, omega):
    """Circulating current per unit length driven by an axial field.

    Current balance of the cylinder viewed as an RC loop threaded by the
    total flux:

        J = i*omega*H / [2*alpha*c/r - c/(i*omega*C*pi*r^2)
                         - (i*omega/c)*(1 - pi*r^2/b^2)]
    """
    w = _positive_frequency(omega, "omega")
    c = C_CM_PER_S
    r = geom.radius
    fill = geom.filling_factor
    denom = (
        2.0 * geom.sheet_resistivity * c / r
        - c / (1j * w * geom.capacitance_per_length * np.pi * r**2)
        - (1j * w / c) * (1.0 - fill)
    )
    out = 1j * w * np.asarray(applied_field) / denom
    if np.ndim(omega) == 0 and np.ndim(applied_field) == 0:
        return complex(out)
    return out


def total_fields(geom: CylinderArrayGeometry, applied_field, current_per_length) -> FieldState:
    """Region fields for a given applied field and sheet current.

    Outside: the applied field minus the leaked-flux correction
    (pi*r^2/b^2)*J/c.  Inside: the same plus the full Ampere term J/c.
    """
    h = np.asarray(applied_field, dtype=complex)
    j_over_c = np.asarray(current_per_length, dtype=complex) / C_CM_PER_S
    h_outside = h - geom.filling_factor * j_over_c
    h_inside = h_outside + j_over_c
    if np.ndim(applied_field) == 0 and np.ndim(current_per_length) == 0:
        return FieldState(
            applied=complex(h),
            current_per_length=complex(current_per_length),
            h_inside=complex(h_inside),
            h_outside=complex(h_outside),
        )
    return FieldState(
        applied=h,
        current_per_length=np.asarray(current_per_length, dtype=complex),
        h_inside=h_inside,
        h_outside=h_outside,
    )


def effective_mu_from_fields(geom: CylinderArrayGeometry, omega):
    """Effective permeability from the averaged fields.

    B averaged over a unit-cell face equals the applied H (the induced flux
    inside a cylinder is exactly compensated by what it leaks outside); H
    averaged along a cell edge is the outside field.  Their ratio is the
    effective permeability.
    """
    current = induced_current(geom, 1.0, omega)
    state = total_fields(geom, 1.0, current)
    h_out = np.asarray(state.h_outside)
    if np.any(h_out == 0.0):
        raise PoleError("averaged field vanishes (undamped resonance)")
    out = np.asarray(state.applied) / h_out
    if np.ndim(omega) == 0:
        return complex(out)
    return out


def geometry_to_params(geom: CylinderArrayGeometry) -> PendryEffective:
    """Map the geometry to (filling factor, resonance, dissipation).

    Frequencies come out in rad/s; rescale before mixing with quantities in
    other units.
    """
    fill = geom.filling_factor
    c = C_CM_PER_S
    resonance = np.sqrt(c**2 / (np.pi * geom.radius**2 * geom.capacitance_per_length))
    dissipation = geom.sheet_resistivity * c**2 / geom.radius
    return PendryEffective(
        filling_factor=fill, resonance=float(resonance), dissipation=float(dissipation)
    )
