"""Batch command-line front end.

Subcommands: ``pressure``, ``sweep``, ``feasibility``, ``kk-check``,
``homogenize``.  Runs are described by a sectioned key-value config file;
material frequency parameters are multiples of the scale frequency, sweep
distances are multiples of lambda_scale = 2*pi*c/omega_scale, geometry for
``homogenize`` comes in over flags (CGS by default, SI with --units si).

Sweeps write CSV plus a JSON run manifest capturing every resolved
parameter, and a rerun pointed at the manifest reproduces the CSV byte for
byte.  All numeric fields carry 17 significant digits.  Exit codes:
0 success, 2 config/validation error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import configparser
import dataclasses
import hashlib
import io
import json
import os
import sys
import tempfile
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import __version__
from .analysis import ScanGrid, kk_check, repulsion_feasibility, scan_products
from .constants import (
    DEFAULT_OMEGA_SCALE_RAD_S,
    farad_per_m_to_gaussian,
    lambda_scale_m,
    meter_to_cm,
    ohm_per_square_to_gaussian,
    pressure_internal_to_pa,
)
from .dispersion import (
    Constant,
    Drude,
    DrudeLorentz,
    HalfSpaceMaterial,
    PendryEffective,
    Vacuum,
)
from .lifshitz import NonConvergenceError, QuadratureSpec, pressure, pressure_sweep
from .micromodel import CylinderArrayGeometry, geometry_to_params
from .analysis import PrincipalValueSpec, analyticity_check


class ConfigError(Exception):
    """Invalid configuration; the message names the offending key."""


@dataclass(frozen=True)
class DistanceSweep:
    min_over_lambda: float
    max_over_lambda: float
    count: int
    spacing: str = "log"

    def __post_init__(self):
        if not self.min_over_lambda > 0.0:
            raise ConfigError("distances.min_over_lambda: must be > 0")
        if self.count < 1:
            raise ConfigError("distances.count: must be >= 1")
        if self.count > 1 and not self.max_over_lambda > self.min_over_lambda:
            raise ConfigError("distances.max_over_lambda: must exceed min_over_lambda")
        if self.spacing not in ("log", "linear"):
            raise ConfigError("distances.spacing: must be 'log' or 'linear'")

    def values(self):
        if self.count == 1:
            return [self.min_over_lambda]
        if self.spacing == "log":
            pts = np.geomspace(self.min_over_lambda, self.max_over_lambda, self.count)
        else:
            pts = np.linspace(self.min_over_lambda, self.max_over_lambda, self.count)
        return [float(p) for p in pts]


@dataclass(frozen=True)
class KKSettings:
    omega_min: float = 1e-3
    omega_max: float = 10.0
    count: int = 200
    threshold: float = 1e-3
    rel_tol: float = 1e-9
    window_fraction: float = 0.3


@dataclass(frozen=True)
class RunConfig:
    omega_scale: float
    material_left: HalfSpaceMaterial
    material_right: HalfSpaceMaterial
    distances: Optional[DistanceSweep]
    quadrature: QuadratureSpec
    output_path: Optional[str]
    si: bool
    feasibility_grid: ScanGrid
    kk: KKSettings


_MODEL_TAGS = {
    Vacuum: "vacuum",
    Constant: "constant",
    Drude: "drude",
    DrudeLorentz: "drude_lorentz",
    PendryEffective: "pendry",
}

# config key -> dataclass field, per model tag
_MODEL_KEYS = {
    "vacuum": {},
    "constant": {"value": "value"},
    "drude": {"omega_p": "plasma_frequency", "gamma": "dissipation"},
    "drude_lorentz": {
        "omega_osc": "oscillator_strength",
        "omega_0": "resonance",
        "gamma": "dissipation",
    },
    "pendry": {"f": "filling_factor", "omega_m": "resonance", "gamma_m": "dissipation"},
}

_MODEL_CLASSES = {
    "vacuum": Vacuum,
    "constant": Constant,
    "drude": Drude,
    "drude_lorentz": DrudeLorentz,
    "pendry": PendryEffective,
}


def _parse_float(raw, path):
    try:
        return float(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{path}: expected a number, got {raw!r}") from None


def _parse_int(raw, path):
    try:
        return int(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{path}: expected an integer, got {raw!r}") from None


def _parse_bool(raw, path):
    val = str(raw).strip().lower()
    if val in ("true", "1", "yes", "on"):
        return True
    if val in ("false", "0", "no", "off"):
        return False
    raise ConfigError(f"{path}: expected a boolean, got {raw!r}")


def _build_model(tag, params, path):
    if tag not in _MODEL_CLASSES:
        raise ConfigError(
            f"{path}: unknown model {tag!r} (expected one of "
            f"{', '.join(sorted(_MODEL_CLASSES))})"
        )
    keys = _MODEL_KEYS[tag]
    for key in params:
        if key not in keys:
            raise ConfigError(f"{path}.{key}: unknown parameter for model {tag!r}")
    kwargs = {}
    for key, field_name in keys.items():
        if key in params:
            kwargs[field_name] = _parse_float(params[key], f"{path}.{key}")
    missing = [k for k, fname in keys.items()
               if fname not in kwargs and k not in ("gamma", "gamma_m")]
    if missing:
        raise ConfigError(f"{path}.{missing[0]}: required for model {tag!r}")
    try:
        return _MODEL_CLASSES[tag](**kwargs)
    except ValueError as exc:
        bad_field = str(exc).split()[0]
        field_to_key = {v: k for k, v in keys.items()}
        key = field_to_key.get(bad_field, bad_field)
        raise ConfigError(f"{path}.{key}: {exc}") from None


def _model_params(model):
    tag = _MODEL_TAGS[type(model)]
    out = {"model": tag}
    for key, field_name in _MODEL_KEYS[tag].items():
        out[key] = getattr(model, field_name)
    return out


_KNOWN_SECTIONS = {
    "scale",
    "material_left",
    "material_left.epsilon",
    "material_left.mu",
    "material_right",
    "material_right.epsilon",
    "material_right.mu",
    "distances",
    "quadrature",
    "output",
    "feasibility",
    "kk",
}


def _material_from_sections(cp, side):
    if side not in cp:
        raise ConfigError(f"{side}: section missing")
    sec = cp[side]
    for key in sec:
        if key not in ("epsilon", "mu"):
            raise ConfigError(f"{side}.{key}: unknown key")
    models = {}
    for role in ("epsilon", "mu"):
        if role not in sec:
            raise ConfigError(f"{side}.{role}: model tag missing")
        tag = sec[role].strip()
        sub = f"{side}.{role}"
        params = dict(cp[sub]) if sub in cp else {}
        models[role] = _build_model(tag, params, sub)
    return HalfSpaceMaterial(epsilon=models["epsilon"], mu=models["mu"])


def _section_floats(cp, name, defaults, parsers=None):
    out = dict(defaults)
    if name not in cp:
        return out
    parsers = parsers or {}
    for key, raw in cp[name].items():
        if key not in defaults:
            raise ConfigError(f"{name}.{key}: unknown key")
        parse = parsers.get(key, _parse_float)
        out[key] = parse(raw, f"{name}.{key}")
    return out


def parse_config_text(text: str) -> RunConfig:
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config syntax: {exc}") from None
    for section in cp.sections():
        if section not in _KNOWN_SECTIONS:
            raise ConfigError(f"{section}: unknown section")

    scale = _section_floats(
        cp, "scale", {"omega_scale_rad_per_s": DEFAULT_OMEGA_SCALE_RAD_S}
    )["omega_scale_rad_per_s"]
    if not scale > 0.0:
        raise ConfigError("scale.omega_scale_rad_per_s: must be > 0")

    left = _material_from_sections(cp, "material_left")
    right = _material_from_sections(cp, "material_right")

    distances = None
    if "distances" in cp:
        vals = _section_floats(
            cp,
            "distances",
            {
                "min_over_lambda": None,
                "max_over_lambda": None,
                "count": None,
                "spacing": "log",
            },
            parsers={"count": _parse_int, "spacing": lambda raw, path: str(raw).strip()},
        )
        for key in ("min_over_lambda", "max_over_lambda", "count"):
            if vals[key] is None:
                raise ConfigError(f"distances.{key}: required")
        distances = DistanceSweep(
            min_over_lambda=vals["min_over_lambda"],
            max_over_lambda=vals["max_over_lambda"],
            count=vals["count"],
            spacing=vals["spacing"],
        )

    quad_vals = _section_floats(
        cp,
        "quadrature",
        {
            "rel_tol": 1e-8,
            "abs_tol": 0.0,
            "max_subdivisions": 200,
            "xi_cutoff_factor": 60.0,
            "u_cutoff": 60.0,
        },
        parsers={"max_subdivisions": _parse_int},
    )
    try:
        quadrature = QuadratureSpec(**quad_vals)
    except ValueError as exc:
        raise ConfigError(f"quadrature: {exc}") from None

    output_path = None
    si = False
    if "output" in cp:
        for key, raw in cp["output"].items():
            if key == "path":
                output_path = raw.strip()
            elif key == "si":
                si = _parse_bool(raw, "output.si")
            else:
                raise ConfigError(f"output.{key}: unknown key")

    grid_vals = _section_floats(
        cp,
        "feasibility",
        {
            "xi_min": 1e-3,
            "xi_max": 1e3,
            "k_min": 1e-3,
            "k_max": 1e3,
            "n_xi": 100,
            "n_k": 100,
        },
        parsers={"n_xi": _parse_int, "n_k": _parse_int},
    )
    try:
        grid = ScanGrid(**grid_vals)
    except ValueError as exc:
        raise ConfigError(f"feasibility: {exc}") from None

    kk_vals = _section_floats(
        cp,
        "kk",
        dataclasses.asdict(KKSettings()),
        parsers={"count": _parse_int},
    )
    kk = KKSettings(**kk_vals)

    return RunConfig(
        omega_scale=scale,
        material_left=left,
        material_right=right,
        distances=distances,
        quadrature=quadrature,
        output_path=output_path,
        si=si,
        feasibility_grid=grid,
        kk=kk,
    )


def config_to_ini(config: RunConfig) -> str:
    """Serialize to the sectioned text format; reparses to an equal config."""
    out = io.StringIO()

    def fmt(value):
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, str):
            return value
        return repr(value)

    def section(name, pairs):
        print(f"[{name}]", file=out)
        for key, value in pairs:
            print(f"{key} = {fmt(value)}", file=out)
        print(file=out)

    def material(side, mat):
        section(side, [("epsilon", _MODEL_TAGS[type(mat.epsilon)]),
                       ("mu", _MODEL_TAGS[type(mat.mu)])])
        for role in ("epsilon", "mu"):
            model = getattr(mat, role)
            params = _model_params(model)
            params.pop("model")
            if params:
                section(f"{side}.{role}", sorted(params.items()))

    section("scale", [("omega_scale_rad_per_s", config.omega_scale)])
    material("material_left", config.material_left)
    material("material_right", config.material_right)
    if config.distances is not None:
        section(
            "distances",
            [
                ("min_over_lambda", config.distances.min_over_lambda),
                ("max_over_lambda", config.distances.max_over_lambda),
                ("count", config.distances.count),
                ("spacing", config.distances.spacing),
            ],
        )
    section("quadrature", sorted(dataclasses.asdict(config.quadrature).items()))
    output_pairs = [("si", config.si)]
    if config.output_path is not None:
        output_pairs.insert(0, ("path", config.output_path))
    section("output", output_pairs)
    section("feasibility", sorted(dataclasses.asdict(config.feasibility_grid).items()))
    section("kk", sorted(dataclasses.asdict(config.kk).items()))
    return out.getvalue()


def config_to_dict(config: RunConfig) -> dict:
    return {
        "scale": {"omega_scale_rad_per_s": config.omega_scale},
        "material_left": {
            "epsilon": _model_params(config.material_left.epsilon),
            "mu": _model_params(config.material_left.mu),
        },
        "material_right": {
            "epsilon": _model_params(config.material_right.epsilon),
            "mu": _model_params(config.material_right.mu),
        },
        "distances": dataclasses.asdict(config.distances) if config.distances else None,
        "quadrature": dataclasses.asdict(config.quadrature),
        "output": {"si": config.si},
        "feasibility": dataclasses.asdict(config.feasibility_grid),
        "kk": dataclasses.asdict(config.kk),
    }


def config_from_dict(data: dict) -> RunConfig:
    def model_from(params, path):
        params = dict(params)
        tag = params.pop("model", None)
        return _build_model(tag, {k: v for k, v in params.items()}, path)

    try:
        left = HalfSpaceMaterial(
            epsilon=model_from(data["material_left"]["epsilon"], "material_left.epsilon"),
            mu=model_from(data["material_left"]["mu"], "material_left.mu"),
        )
        right = HalfSpaceMaterial(
            epsilon=model_from(data["material_right"]["epsilon"], "material_right.epsilon"),
            mu=model_from(data["material_right"]["mu"], "material_right.mu"),
        )
        distances = (
            DistanceSweep(**data["distances"]) if data.get("distances") else None
        )
        return RunConfig(
            omega_scale=float(data["scale"]["omega_scale_rad_per_s"]),
            material_left=left,
            material_right=right,
            distances=distances,
            quadrature=QuadratureSpec(**data["quadrature"]),
            output_path=None,
            si=bool(data["output"]["si"]),
            feasibility_grid=ScanGrid(**data["feasibility"]),
            kk=KKSettings(**data["kk"]),
        )
    except KeyError as exc:
        raise ConfigError(f"manifest: missing entry {exc}") from None
    except ValueError as exc:
        raise ConfigError(f"manifest: {exc}") from None


def load_config(path: str) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"manifest {path}: {exc}") from None
        return config_from_dict(data.get("config", data))
    return parse_config_text(text)


def manifest_digest(config: RunConfig) -> str:
    payload = json.dumps(config_to_dict(config), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(payload.encode()).hexdigest()


def build_manifest(config: RunConfig, command: str, columns) -> dict:
    return {
        "tool": "casimir-mm",
        "version": __version__,
        "format": "casimir-mm-manifest-v1",
        "command": command,
        "columns": list(columns),
        "config": config_to_dict(config),
        "digest": manifest_digest(config),
    }


PRESSURE_COLUMNS = (
    "d_over_lambda",
    "pressure_internal",
    "pressure_pa",
    "pressure_d3_scaled",
    "te_part",
    "tm_part",
    "error_estimate",
    "node_count",
)


def _g17(value) -> str:
    return f"{value:.17g}"


def _pressure_row(config, d, result, si):
    cells = [
        _g17(d),
        _g17(result.total),
        _g17(pressure_internal_to_pa(result.total, config.omega_scale)),
        _g17(result.total * d**3),
        _g17(result.te_part),
        _g17(result.tm_part),
        _g17(result.error_estimate),
        str(result.node_count),
    ]
    if si:
        cells.insert(1, _g17(d * lambda_scale_m(config.omega_scale)))
    return cells


def _columns(si, status=False):
    cols = list(PRESSURE_COLUMNS)
    if si:
        cols.insert(1, "d_m")
    if status:
        cols.append("status")
    return cols


def _atomic_write(path, text):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".casimir-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_pressure(config: RunConfig, d_over_lambda: float) -> int:
    if not d_over_lambda > 0.0:
        raise ConfigError("--distance: must be > 0")
    cols = _columns(config.si)
    status = 0
    try:
        result = pressure(
            config.material_left, config.material_right, d_over_lambda, config.quadrature
        )
    except NonConvergenceError as exc:
        print(f"warning: {exc}", file=sys.stderr)
        result = exc.result
        status = 3
    print(",".join(cols))
    print(",".join(_pressure_row(config, d_over_lambda, result, config.si)))
    return status


def cmd_sweep(config: RunConfig, output: str, threads: int) -> int:
    if config.distances is None:
        raise ConfigError("distances: section required for sweep")
    if not output:
        raise ConfigError("output.path: required for sweep (or pass --output)")
    cols = _columns(config.si, status=True)
    manifest = build_manifest(config, "sweep", cols)
    points = pressure_sweep(
        config.material_left,
        config.material_right,
        config.distances.values(),
        config.quadrature,
        n_workers=max(1, threads),
    )
    lines = [
        f"# casimir-mm {__version__} sweep",
        f"# manifest_digest: {manifest['digest']}",
        ",".join(cols),
    ]
    for point in points:
        row = _pressure_row(config, point.distance, point.result, config.si)
        row.append("ok" if point.converged else "failed")
        lines.append(",".join(row))
    _atomic_write(output, "\n".join(lines) + "\n")
    _atomic_write(
        output + ".manifest.json",
        json.dumps(manifest, sort_keys=True, indent=2) + "\n",
    )
    failed = sum(1 for p in points if not p.converged)
    if failed:
        print(
            f"warning: {failed}/{len(points)} points did not converge", file=sys.stderr
        )
        return 3
    return 0


def cmd_feasibility(config: RunConfig, output: Optional[str]) -> int:
    report = repulsion_feasibility(
        config.material_left, config.material_right, config.feasibility_grid
    )
    grid = report.grid_spec
    print(f"verdict: {report.verdict.value} ({'analytic' if report.analytic else 'grid'})")
    print(f"samples_checked: {report.samples_checked}")
    print(
        f"grid: xi in [{_g17(grid.xi_min)}, {_g17(grid.xi_max)}] x {grid.n_xi}, "
        f"k_par in [{_g17(grid.k_min)}, {_g17(grid.k_max)}] x {grid.n_k}"
    )
    if report.witness is not None:
        print(f"witness_xi: {_g17(report.witness.xi)}")
        print(f"witness_k_par: {_g17(report.witness.k_par)}")
        print(f"witness_polarization: {report.witness.polarization}")
        print(f"witness_product: {_g17(report.witness.product)}")
    if output:
        xis, ks, p_te, p_tm = scan_products(
            config.material_left, config.material_right, grid
        )
        lines = [
            f"# casimir-mm {__version__} feasibility scan",
            f"# verdict: {report.verdict.value}",
            "xi,k_par,product_te,product_tm",
        ]
        for i, xi in enumerate(xis):
            for j, k in enumerate(ks):
                lines.append(
                    f"{_g17(xi)},{_g17(k)},{_g17(p_te[i, j])},{_g17(p_tm[i, j])}"
                )
        _atomic_write(output, "\n".join(lines) + "\n")
    return 0


def cmd_kk_check(config: RunConfig) -> int:
    model = config.material_right.mu
    if not isinstance(model, PendryEffective):
        raise ConfigError(
            "material_right.mu: kk-check needs the split-cylinder (pendry) model, "
            f"got {_MODEL_TAGS[type(model)]!r}"
        )
    kk = config.kk
    grid = np.logspace(np.log10(kk.omega_min), np.log10(kk.omega_max), kk.count)
    spec = PrincipalValueSpec(rel_tol=kk.rel_tol, window_fraction=kk.window_fraction)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            report = kk_check(model, omega_grid=grid, pv_spec=spec)
    except ValueError as exc:
        raise ConfigError(f"material_right.mu: {exc}") from None
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    print(f"max_residual_real: {_g17(report.max_residual_real)}")
    print(f"max_residual_imag: {_g17(report.max_residual_imag)}")
    print(f"asymptote_used: {_g17(report.asymptote_used)}")
    print(f"omega_grid: {report.omega_grid}")
    print(f"node_count: {report.node_count}")
    print(f"note: {report.formula_note}")
    print(f"threshold: {_g17(kk.threshold)}")
    passed = report.max_residual_real <= kk.threshold
    print(f"verdict: {'pass' if passed else 'fail'}")
    return 0 if passed else 3


def cmd_homogenize(args, omega_scale: float) -> int:
    values = {}
    for name in ("radius", "gap", "period", "length", "alpha", "capacitance"):
        raw = getattr(args, name)
        if raw is None:
            print(f"error: --{name} is required", file=sys.stderr)
            return 2
        values[name] = raw
    if args.units == "si":
        geom_kwargs = dict(
            radius=meter_to_cm(values["radius"]),
            sheet_gap=meter_to_cm(values["gap"]),
            period=meter_to_cm(values["period"]),
            length=meter_to_cm(values["length"]),
            sheet_resistivity=ohm_per_square_to_gaussian(values["alpha"]),
            capacitance_per_length=farad_per_m_to_gaussian(values["capacitance"]),
        )
    else:
        geom_kwargs = dict(
            radius=values["radius"],
            sheet_gap=values["gap"],
            period=values["period"],
            length=values["length"],
            sheet_resistivity=values["alpha"],
            capacitance_per_length=values["capacitance"],
        )
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            geom = CylinderArrayGeometry(**geom_kwargs)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    params = geometry_to_params(geom)
    check = analyticity_check(geom)
    print(f"f: {_g17(params.filling_factor)}")
    print(f"omega_m_rad_per_s: {_g17(params.resonance)}")
    print(f"omega_m_over_scale: {_g17(params.resonance / omega_scale)}")
    print(f"gamma_m_rad_per_s: {_g17(params.dissipation)}")
    print(f"gamma_m_over_scale: {_g17(params.dissipation / omega_scale)}")
    print(f"analyticity: {'pass' if check.passed else 'fail'}")
    print(f"analyticity_margin: {_g17(check.margin)}")
    for note in geom.validity_notes():
        print(f"warning: {note}")
    return 0


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="path to a run config (or a run manifest)")
    common.add_argument("--output", help="output file path (overrides output.path)")
    common.add_argument("--rel-tol", type=float, help="override quadrature.rel_tol")
    common.add_argument(
        "--threads", type=int, default=1,
        help="worker threads for sweeps (results are identical for any value)",
    )
    common.add_argument(
        "--si", action="store_true", help="emit SI columns in addition to internal units"
    )

    parser = argparse.ArgumentParser(
        prog="casimir-mm",
        description="Casimir pressure between dispersive half-spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pressure", parents=[common], help="one pressure evaluation")
    p.add_argument(
        "--distance", type=float, required=True, help="gap in units of lambda_scale"
    )

    sub.add_parser("sweep", parents=[common], help="pressure over a distance sweep")
    sub.add_parser(
        "feasibility", parents=[common], help="scan for a repulsion-compatible sign pattern"
    )
    sub.add_parser(
        "kk-check", parents=[common], help="Kramers-Kronig consistency of the pendry mu"
    )

    h = sub.add_parser(
        "homogenize", parents=[common],
        help="map split-cylinder geometry to effective-mu parameters",
    )
    h.add_argument("--radius", type=float, help="cylinder radius")
    h.add_argument("--gap", type=float, help="spacing between the two sheets")
    h.add_argument("--period", type=float, help="array period")
    h.add_argument("--length", type=float, help="cylinder length")
    h.add_argument("--alpha", type=float, help="sheet resistivity")
    h.add_argument("--capacitance", type=float, help="capacitance per unit length")
    h.add_argument(
        "--units", choices=("cgs", "si"), default="cgs",
        help="cgs: cm, s/cm, dimensionless; si: m, ohm/square, F/m",
    )
    h.add_argument(
        "--scale-frequency", type=float, default=None,
        help="scale frequency in rad/s for the _over_scale outputs",
    )
    return parser


def _resolved_config(args) -> RunConfig:
    if not args.config:
        raise ConfigError("--config is required for this command")
    config = load_config(args.config)
    if args.rel_tol is not None:
        try:
            quad = dataclasses.replace(config.quadrature, rel_tol=args.rel_tol)
        except ValueError as exc:
            raise ConfigError(f"--rel-tol: {exc}") from None
        config = dataclasses.replace(config, quadrature=quad)
    if args.si:
        config = dataclasses.replace(config, si=True)
    return config


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "homogenize":
            scale = args.scale_frequency
            if scale is None and args.config:
                scale = load_config(args.config).omega_scale
            if scale is None:
                scale = DEFAULT_OMEGA_SCALE_RAD_S
            return cmd_homogenize(args, scale)
        config = _resolved_config(args)
        if args.command == "pressure":
            return cmd_pressure(config, args.distance)
        if args.command == "sweep":
            output = args.output or config.output_path
            return cmd_sweep(config, output, args.threads)
        if args.command == "feasibility":
            output = args.output or config.output_path
            return cmd_feasibility(config, output)
        if args.command == "kk-check":
            return cmd_kk_check(config)
        raise AssertionError(f"unhandled command {args.command}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NonConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
