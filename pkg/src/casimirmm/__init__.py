"""Casimir pressure between dispersive half-spaces.

Evaluates the zero-temperature vacuum pressure across a gap via the
imaginary-frequency reflection integral, with material models including
the split-cylinder metamaterial permeability derived from its micro-model,
plus diagnostics for whether a material pair can ever produce repulsion.
"""

from .constants import C_INTERNAL, DEFAULT_OMEGA_SCALE_RAD_S
from .dispersion import (
    Constant,
    DispersionModel,
    DomainError,
    Drude,
    DrudeLorentz,
    HalfSpaceMaterial,
    PendryEffective,
    PoleError,
    Vacuum,
    eval_imag,
    eval_real,
)
from .micromodel import (
    CylinderArrayGeometry,
    FieldState,
    GeometryValidityWarning,
    effective_mu_from_fields,
    geometry_to_params,
    induced_current,
    total_fields,
)
from .fresnel import ImagFreqPoint, ReflectionPair, k3, reflection
from .lifshitz import (
    NonConvergenceError,
    PressureResult,
    QuadratureSpec,
    SweepPoint,
    pressure,
    pressure_sweep,
)
from .analysis import (
    AnalyticityCheck,
    Classification,
    FeasibilityReport,
    KKReport,
    PrincipalValueSpec,
    RuleOfThumbReport,
    ScanGrid,
    Verdict,
    Witness,
    analyticity_check,
    kk_check,
    repulsion_feasibility,
    rule_of_thumb,
)

__version__ = "0.1.0"
