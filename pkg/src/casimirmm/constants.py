"""Physical constants and the internal unit system.

Internal units used throughout the computational modules:

* angular frequencies are multiples of a scale frequency ``omega_scale``
  (default 1.43e16 rad/s),
* lengths are multiples of ``lambda_scale = 2*pi*c / omega_scale``,
* pressures are multiples of ``hbar * omega_scale / lambda_scale**3``.

In these units the vacuum speed of light equals ``1/(2*pi)``, which keeps
the pressure integrand near unity.  Conversion to SI happens only at the
I/O boundary (CLI); this module is the single source of truth for it.

The micro-model works in Gaussian (CGS) units, so the geometry conversions
(SI lengths, ohms per square, farads per meter) also live here.
"""

import math

HBAR_J_S = 1.054571817e-34
C_M_PER_S = 2.99792458e8
C_CM_PER_S = 2.99792458e10

# Speed of light in internal units (lambda_scale per 1/omega_scale).
C_INTERNAL = 1.0 / (2.0 * math.pi)

DEFAULT_OMEGA_SCALE_RAD_S = 1.43e16

# Gaussian resistance unit (s/cm) expressed in ohms, and the farad in cm.
_SECONDS_PER_CM_IN_OHM = 1e-9 * C_CM_PER_S**2   # 8.98755...e11
_FARAD_IN_CM = _SECONDS_PER_CM_IN_OHM           # same numerical factor


def lambda_scale_m(omega_scale_rad_s: float) -> float:
    """Internal length unit in meters for a given scale frequency."""
    return 2.0 * math.pi * C_M_PER_S / omega_scale_rad_s


def pressure_internal_to_pa(pressure_internal: float, omega_scale_rad_s: float) -> float:
    """Convert a pressure from hbar*omega_scale/lambda_scale^3 to pascal."""
    lam = lambda_scale_m(omega_scale_rad_s)
    return pressure_internal * HBAR_J_S * omega_scale_rad_s / lam**3


def ohm_per_square_to_gaussian(alpha_ohm: float) -> float:
    """Sheet resistivity: ohm (per square) to Gaussian s/cm."""
    return alpha_ohm / _SECONDS_PER_CM_IN_OHM


def farad_per_m_to_gaussian(cap_f_per_m: float) -> float:
    """Capacitance per unit length: F/m to the dimensionless Gaussian value."""
    return cap_f_per_m * _FARAD_IN_CM / 100.0


def meter_to_cm(length_m: float) -> float:
    return length_m * 100.0
