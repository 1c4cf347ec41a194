"""Vacuum pressure between two dispersive half-spaces at zero temperature.

After the angular integral and the substitution to K3 = sqrt(k_par^2 +
xi^2/c^2), the pressure across a gap d is

    F/A = (hbar / 2 pi^2) Int_0^inf dxi Int_{xi/c}^inf dK3 K3^2
          Sum_j  r1j r2j e^{-2 K3 d} / (1 - r1j r2j e^{-2 K3 d}) ,

positive = attraction.  The inner variable is transformed to u = 2*K3*d, so
the exponential decay lives in a fixed coordinate and both cutoffs
(u <= u_cutoff, xi <= xi_cutoff_factor * c/(2d)) discard tails bounded by
e^{-cutoff}.  Both axes use the deterministic adaptive Gauss-Kronrod panels
from ``quadrature``; nodes are interior, so neither xi = 0 nor u = u_min is
ever evaluated.  Internal units throughout (pressure in
hbar*omega_scale/lambda_scale^3); identical inputs give bit-identical
results for any thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .constants import C_INTERNAL
from .dispersion import HalfSpaceMaterial
from .fresnel import reflection_te_tm
from .quadrature import _WK, gk_combine, integrate_rows_adaptive, panel_nodes


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances, cutoffs and panel budgets for the pressure integral.

    Cutoffs must keep the discarded tail factor e^{-cutoff} below 1e-13,
    hence the lower bound of 30.
    """

    rel_tol: float = 1e-8
    abs_tol: float = 0.0
    max_subdivisions: int = 200
    xi_cutoff_factor: float = 60.0
    u_cutoff: float = 60.0

    def __post_init__(self):
        if self.rel_tol < 0.0 or self.abs_tol < 0.0:
            raise ValueError("tolerances must be >= 0")
        if not (self.rel_tol > 0.0 or self.abs_tol > 0.0):
            raise ValueError("need rel_tol > 0 or abs_tol > 0")
        if self.max_subdivisions < 8:
            raise ValueError("max_subdivisions must be >= 8")
        if self.xi_cutoff_factor < 30.0 or self.u_cutoff < 30.0:
            raise ValueError("cutoffs must be >= 30 (tail bound e^-30 ~ 1e-13)")


@dataclass(frozen=True)
class PressureResult:
    """Pressure for one (materials, distance) evaluation, internal units."""

    total: float
    te_part: float
    tm_part: float
    error_estimate: float
    node_count: int

    def __post_init__(self):
        assert self.total == self.te_part + self.tm_part
        assert self.error_estimate >= 0.0


class NonConvergenceError(RuntimeError):
    """Quadrature budget exhausted before the tolerance was met.

    Carries the partial result (with its achieved error estimate).
    """

    def __init__(self, message, result: PressureResult):
        super().__init__(message)
        self.result = result


def _tail_bound(d, spec, p_max):
    """Analytic bound on the discarded double-integral tail.

    Uses |sum_j u^2 p e^{-u}/(1 - p e^{-u})| <= 2 p_max u^2 e^{-u}/(1 - q)
    with q = p_max * e^{-u_cutoff}, integrated in closed form over both
    discarded regions (u beyond u_cutoff, xi beyond the xi cutoff); p_max
    is the largest sampled |r1 r2|, at most 1.
    """
    if p_max <= 0.0:
        return 0.0
    c = C_INTERNAL
    ucut = spec.u_cutoff
    vcut = spec.xi_cutoff_factor
    guard = 2.0 * p_max / (1.0 - p_max * math.exp(-ucut))
    xi_span = min(vcut, ucut) * c / (2.0 * d)
    gamma3 = math.exp(-ucut) * (ucut * ucut + 2.0 * ucut + 2.0)
    region_a = xi_span * gamma3
    region_b = (c / (2.0 * d)) * math.exp(-vcut) * (vcut * vcut + 4.0 * vcut + 6.0)
    return guard * (region_a + region_b) / (16.0 * math.pi**2 * d**3)


def _make_integrand(mat1, mat2, d, sign_definite, p_max_cell):
    c = C_INTERNAL

    def inner_rows(xi_nodes):
        """Inner u-integrals for a batch of xi nodes; (R,2) te/tm values."""
        eps1 = np.asarray(mat1.epsilon.eval_imag(xi_nodes))[:, None]
        mu1 = np.asarray(mat1.mu.eval_imag(xi_nodes))[:, None]
        eps2 = np.asarray(mat2.epsilon.eval_imag(xi_nodes))[:, None]
        mu2 = np.asarray(mat2.mu.eval_imag(xi_nodes))[:, None]
        xi_c_sq = (np.asarray(xi_nodes)[:, None] / c) ** 2
        u_min = 2.0 * d * np.asarray(xi_nodes) / c

        def f(u):
            k3_sq = (u / (2.0 * d)) ** 2
            r_te1, r_tm1 = reflection_te_tm(eps1, mu1, k3_sq, xi_c_sq)
            r_te2, r_tm2 = reflection_te_tm(eps2, mu2, k3_sq, xi_c_sq)
            p_te = r_te1 * r_te2
            p_tm = r_tm1 * r_tm2
            sampled_max = max(np.abs(p_te).max(), np.abs(p_tm).max())
            p_max_cell[0] = max(p_max_cell[0], float(sampled_max))
            decay = np.exp(-u)
            den_te = 1.0 - p_te * decay
            den_tm = 1.0 - p_tm * decay
            # |r1 r2| < 1 keeps the geometric-series denominator positive
            assert np.all(den_te > 0.0) and np.all(den_tm > 0.0)
            u_sq = u * u
            g_te = u_sq * p_te * decay / den_te
            g_tm = u_sq * p_tm * decay / den_tm
            if sign_definite:
                assert np.all(g_te >= 0.0) and np.all(g_tm >= 0.0)
            return np.stack([g_te, g_tm], axis=-1)

        return f, u_min

    return inner_rows


def pressure(
    mat1: HalfSpaceMaterial,
    mat2: HalfSpaceMaterial,
    distance: float,
    spec: QuadratureSpec | None = None,
    *,
    sign_definite: bool = False,
) -> PressureResult:
    """Casimir pressure across a vacuum gap, internal units.

    ``sign_definite=True`` additionally asserts that every integrand sample
    is nonnegative, which must hold whenever both materials obey the
    r_te <= 0 <= r_tm sign pattern pointwise (feasibility-mode runs).

    Raises NonConvergenceError (carrying the partial result) if the panel
    budget is exhausted before the tolerances are met.
    """
    if not distance > 0.0:
        raise ValueError(f"distance must be > 0, got {distance}")
    spec = spec or QuadratureSpec()
    d = float(distance)
    c = C_INTERNAL
    xi_max = spec.xi_cutoff_factor * c / (2.0 * d)
    prefactor = 1.0 / (16.0 * math.pi**2 * d**3)
    p_max_cell = [0.0]
    inner_rows = _make_integrand(mat1, mat2, d, sign_definite, p_max_cell)
    inner_rel = spec.rel_tol / 20.0 if spec.rel_tol > 0.0 else 1e-10

    def eval_panel(a, b):
        nodes, half = panel_nodes(np.array([a]), np.array([b]))
        xi_nodes = nodes[0]
        f, u_min = inner_rows(xi_nodes)
        rows = integrate_rows_adaptive(
            f, u_min, spec.u_cutoff, inner_rel, max_panels=spec.max_subdivisions
        )
        te = float(rows.integral[:, 0] @ _WK) * half[0]
        tm = float(rows.integral[:, 1] @ _WK) * half[0]
        combined = rows.integral.sum(axis=-1)
        _, gk_err = gk_combine(combined[None, :], half)
        propagated = float(rows.error @ _WK) * half[0]
        return [a, b, te, tm, float(gk_err[0]) + propagated, rows.neval]

    # geometric seed panels resolve the decades between material features
    # and the exponential cutoff scale
    seeds = [0.0] + list(xi_max * 2.0 ** -np.arange(10, -1, -1, dtype=float))
    panels = [eval_panel(a, b) for a, b in zip(seeds[:-1], seeds[1:])]

    while True:
        panels.sort(key=lambda p: p[0])
        te_total = math.fsum(p[2] for p in panels)
        tm_total = math.fsum(p[3] for p in panels)
        err_sum = math.fsum(p[4] for p in panels)
        node_count = sum(p[5] for p in panels)
        tail = _tail_bound(d, spec, p_max_cell[0])
        total = te_total + tm_total
        err_total = err_sum * prefactor + tail
        target = max(spec.abs_tol, spec.rel_tol * abs(total * prefactor))
        if err_total <= target:
            return PressureResult(
                total=prefactor * te_total + prefactor * tm_total,
                te_part=prefactor * te_total,
                tm_part=prefactor * tm_total,
                error_estimate=err_total,
                node_count=node_count,
            )
        if len(panels) >= spec.max_subdivisions:
            partial = PressureResult(
                total=prefactor * te_total + prefactor * tm_total,
                te_part=prefactor * te_total,
                tm_part=prefactor * tm_total,
                error_estimate=err_total,
                node_count=node_count,
            )
            raise NonConvergenceError(
                f"pressure quadrature did not reach tolerance at d={d}: "
                f"error {err_total:.3e} > target {target:.3e}",
                partial,
            )
        worst = max(range(len(panels)), key=lambda i: panels[i][4])
        a, b = panels[worst][0], panels[worst][1]
        mid = 0.5 * (a + b)
        panels[worst] = eval_panel(a, mid)
        panels.append(eval_panel(mid, b))


@dataclass(frozen=True)
class SweepPoint:
    """One distance of a sweep; ``converged`` is False for flagged failures."""

    distance: float
    result: PressureResult
    converged: bool


def pressure_sweep(
    mat1: HalfSpaceMaterial,
    mat2: HalfSpaceMaterial,
    d_values,
    spec: QuadratureSpec | None = None,
    *,
    n_workers: int = 1,
) -> list[SweepPoint]:
    """Pressure at each distance of a strictly increasing list.

    Per-point non-convergence is captured in the returned points rather
    than aborting the sweep.  Distances are independent, so worker count
    affects wall time only; results are identical for any ``n_workers``.
    """
    d_values = [float(d) for d in d_values]
    if any(d <= 0.0 for d in d_values):
        raise ValueError("all distances must be > 0")
    if any(b <= a for a, b in zip(d_values, d_values[1:])):
        raise ValueError("distances must be strictly increasing")

    def one(d):
        try:
            return SweepPoint(d, pressure(mat1, mat2, d, spec), True)
        except NonConvergenceError as exc:
            return SweepPoint(d, exc.result, False)

    if n_workers <= 1 or len(d_values) <= 1:
        return [one(d) for d in d_values]
    with ThreadPoolExecutor(max_workers=n_workers) as pool:
        return list(pool.map(one, d_values))
