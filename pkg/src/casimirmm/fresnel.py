"""TE/TM reflection off a half-space at imaginary frequency.

Everything is real on this axis: passive models give eps(i*xi), mu(i*xi) > 0,
both wavevector roots are positive, and the coefficients land in (-1, 1).
Internal units (frequencies in the scale frequency, transverse wavenumbers
in 1/lambda_scale, speed of light 1/(2*pi)).

With K3 = sqrt(k_par^2 + xi^2/c^2) and the in-medium root
K_med = sqrt(k_par^2 + mu*eps*xi^2/c^2):

    r_te = (mu*K3 - K_med) / (mu*K3 + K_med)
    r_tm = (eps*K3 - K_med) / (eps*K3 + K_med)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import C_INTERNAL
from .dispersion import HalfSpaceMaterial


@dataclass(frozen=True)
class ImagFreqPoint:
    """One (xi, |k_par|) evaluation point on the imaginary-frequency axis."""

    xi: float
    k_par: float

    def __post_init__(self):
        if not self.xi > 0.0:
            raise ValueError(f"xi must be > 0, got {self.xi}")
        if self.k_par < 0.0:
            raise ValueError(f"k_par must be >= 0, got {self.k_par}")


@dataclass(frozen=True)
class ReflectionPair:
    """TE and TM amplitude reflection coefficients at one point."""

    r_te: float
    r_tm: float


def k3(point: ImagFreqPoint) -> float:
    """Vacuum-side wavenumber sqrt(k_par^2 + xi^2/c^2)."""
    return math.hypot(point.k_par, point.xi / C_INTERNAL)


def reflection_te_tm(eps, mu, k3_sq, xi_over_c_sq):
    """Vectorized reflection coefficients from precomputed squares.

    k3_sq = k_par^2 + (xi/c)^2 and xi_over_c_sq = (xi/c)^2; all arguments
    broadcast.  K_med is formed as sqrt(k3_sq + (mu*eps - 1)*(xi/c)^2),
    whose radicand stays positive for positive eps, mu.
    """
    k3v = np.sqrt(k3_sq)
    kmed = np.sqrt(k3_sq + (mu * eps - 1.0) * xi_over_c_sq)
    r_te = (mu * k3v - kmed) / (mu * k3v + kmed)
    r_tm = (eps * k3v - kmed) / (eps * k3v + kmed)
    return r_te, r_tm


def reflection(material: HalfSpaceMaterial, point: ImagFreqPoint) -> ReflectionPair:
    """Reflection coefficients of one half-space at one point."""
    eps = material.epsilon.eval_imag(point.xi)
    mu = material.mu.eval_imag(point.xi)
    xi_c_sq = (point.xi / C_INTERNAL) ** 2
    k3_sq = point.k_par**2 + xi_c_sq
    r_te, r_tm = reflection_te_tm(eps, mu, k3_sq, xi_c_sq)
    assert abs(r_te) <= 1.0 and abs(r_tm) <= 1.0
    return ReflectionPair(r_te=float(r_te), r_tm=float(r_tm))


def sign_numerators(eps, mu, k_par_sq, xi_over_c_sq):
    """Cancellation-free quantities with the signs of the TE/TM numerators.

    (mu*K3)^2 - K_med^2 = (mu^2 - 1)*k_par^2 + mu*(mu - eps)*(xi/c)^2
    (eps*K3)^2 - K_med^2 = (eps^2 - 1)*k_par^2 + eps*(eps - mu)*(xi/c)^2

    Each right-hand side is a sum of two like-signed terms whenever
    mu <= 1 <= eps, so the sign is exact in floating point; the left-hand
    differences share the sign of the corresponding reflection numerator.
    """
    te = (mu * mu - 1.0) * k_par_sq + mu * (mu - eps) * xi_over_c_sq
    tm = (eps * eps - 1.0) * k_par_sq + eps * (eps - mu) * xi_over_c_sq
    return te, tm
