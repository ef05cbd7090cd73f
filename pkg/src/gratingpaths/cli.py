"""Command-line entry point.

Each run reads one JSON scenario (a bundled name or a file path), applies
``--set`` overrides, validates everything, then writes either a CSV profile
or a JSON summary. Angles are degrees at this boundary.
"""

from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import math
import sys
import warnings
from importlib import resources
from pathlib import Path

import numpy as np

from . import core, decay_source, electron_grating, kinematics, photon_grating, profile, verify
from .core import DomainError
from .oracles import QuadratureError

EXIT_OK, EXIT_INVALID, EXIT_VERIFY, EXIT_NONCONVERGENCE = 0, 1, 2, 3

KINDS = ("photon_grating", "electron_grating", "kinematics", "cat", "verify")
COMMAND_KIND = {"photon": "photon_grating", "electron": "electron_grating",
                "kinematics": "kinematics", "cat": "cat"}
DEFAULT_SCENARIO = {"photon_grating": "photon_reference", "electron_grating": "davisson_germer",
                    "kinematics": "kinematics", "cat": "cat"}

PARAMETERS = {
    "photon_grating": {"photon_energy", "lifetime", "pitch", "strip_width", "n_strips",
                       "r_source", "r_observer", "scale"},
    "electron_grating": {"kinetic_energy", "mean_momentum", "filament_temperature", "row_spacing",
                         "n_rows", "r_source", "r_observer", "hypothesis", "scale"},
    "kinematics": {"s_a", "s_b", "mean_momentum", "ratio", "difference", "mass_energy"},
    "cat": {"mean_lifetime", "t_delay"},
    "verify": {"suite"},
}
SWEEP_KEYS = {"variable", "low", "high", "n_samples"}
SWEEP_VARIABLE = {"photon_grating": "theta_deg", "electron_grating": "theta_deg", "cat": "t"}
TOP_KEYS = {"kind", "parameters", "sweep"}


class ScenarioError(ValueError):
    """Scenario document failed validation."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def load_scenario(ref: str) -> dict:
    """Read a scenario from a file path or the bundled ``scenarios`` directory."""
    path = Path(ref)
    if path.is_file():
        text = path.read_text()
    else:
        name = ref[:-5] if ref.endswith(".json") else ref
        bundled = resources.files("gratingpaths") / "scenarios" / f"{name}.json"
        if not bundled.is_file():
            raise ScenarioError(f"scenario {ref!r} is neither a file nor a bundled scenario")
        text = bundled.read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario {ref!r} is not valid JSON: {exc.msg} at line {exc.lineno}")
    if not isinstance(doc, dict):
        raise ScenarioError("scenario document must be a JSON object")
    return doc


def _parse_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def apply_overrides(doc: dict, assignments: list[str]) -> dict:
    """Apply ``key=value`` overrides; ``sweep.<key>`` targets the sweep block."""
    doc = copy.deepcopy(doc)
    for item in assignments:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ScenarioError(f"override {item!r} is not of the form key=value")
        if key.startswith("sweep."):
            doc.setdefault("sweep", {})[key[len("sweep."):]] = _parse_value(value)
        else:
            doc.setdefault("parameters", {})[key] = _parse_value(value)
    return doc


def validate_scenario(doc: dict) -> dict:
    for key in doc:
        if key not in TOP_KEYS:
            raise ScenarioError(f"unknown key {key!r} in scenario")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ScenarioError(f"unknown scenario kind {kind!r}; expected one of {', '.join(KINDS)}")
    params = doc.get("parameters", {})
    if not isinstance(params, dict):
        raise ScenarioError("parameters must be an object")
    for key in params:
        if key not in PARAMETERS[kind]:
            raise ScenarioError(f"unknown key {key!r} for kind {kind}")
    sweep = doc.get("sweep")
    if sweep is not None:
        if kind not in SWEEP_VARIABLE:
            raise ScenarioError(f"kind {kind} does not support a sweep")
        for key in sweep:
            if key not in SWEEP_KEYS:
                raise ScenarioError(f"unknown key {key!r} in sweep")
        if sweep.get("variable", SWEEP_VARIABLE[kind]) != SWEEP_VARIABLE[kind]:
            raise ScenarioError(f"kind {kind} sweeps {SWEEP_VARIABLE[kind]!r} only")
        n = sweep.get("n_samples", 2001)
        if not isinstance(n, int) or isinstance(n, bool) or n < 2:
            raise ScenarioError("sweep n_samples must be an integer >= 2")
        if "high" in sweep and not float(sweep["high"]) > float(sweep.get("low", 0.0)):
            raise ScenarioError("sweep needs high > low")
    return doc


def _numeric(params: dict, key: str):
    value = params[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"parameter {key!r} must be a number")
    return value


def build_photon(params: dict) -> photon_grating.PhotonGratingConfig:
    missing = PARAMETERS["photon_grating"] - {"scale"} - params.keys()
    if missing:
        raise ScenarioError(f"missing parameter {sorted(missing)[0]!r}")
    values = {k: _numeric(params, k) for k in params}
    if not math.isfinite(values["lifetime"]):
        raise ScenarioError("lifetime must be finite")
    return photon_grating.PhotonGratingConfig(**values)


def build_electron(params: dict) -> electron_grating.ElectronGratingConfig:
    params = dict(params)
    if ("kinetic_energy" in params) == ("mean_momentum" in params):
        raise ScenarioError("give exactly one of 'kinetic_energy' or 'mean_momentum'")
    hypothesis = params.pop("hypothesis", "EPT")
    try:
        hypothesis = electron_grating.Hypothesis(hypothesis)
    except ValueError:
        raise ScenarioError(f"hypothesis must be 'EPT' or 'EV', got {hypothesis!r}") from None
    values = {k: _numeric(params, k) for k in params}
    required = {"filament_temperature", "row_spacing", "n_rows", "r_source", "r_observer"}
    missing = required - values.keys()
    if missing:
        raise ScenarioError(f"missing parameter {sorted(missing)[0]!r}")
    if "kinetic_energy" in values:
        kinetic = values.pop("kinetic_energy")
        return electron_grating.ElectronGratingConfig.from_kinetic_energy(
            kinetic, hypothesis=hypothesis, **values)
    return electron_grating.ElectronGratingConfig(hypothesis=hypothesis, **values)


def _sweep_grid(doc: dict, samples: int | None) -> np.ndarray:
    sweep = doc.get("sweep") or {}
    n = samples if samples is not None else sweep.get("n_samples", 2001)
    if n < 2:
        raise ScenarioError("--samples must be at least 2")
    default_high = 5.0 if doc["kind"] == "cat" else 90.0
    return np.linspace(float(sweep.get("low", 0.0)), float(sweep.get("high", default_high)), n)


def profile_csv(theta_deg, intensity) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["theta_deg", "intensity"])
    for t, i in zip(theta_deg, intensity):
        writer.writerow([_fmt(t), _fmt(i)])
    return buf.getvalue()


def run_grating(doc: dict, samples: int | None
                ) -> tuple[np.ndarray, profile.IntensityProfile, list[dict]]:
    """Profile over the sweep grid; returns (grid in degrees, profile, checks)."""
    grid = _sweep_grid(doc, samples)
    theta = np.radians(grid)
    params = doc.get("parameters", {})
    if doc["kind"] == "photon_grating":
        cfg = build_photon(params)
        prof = profile.photon_profile(cfg, theta)
        checks = [{"name": "damping_bound", "value": photon_grating.damping_bound(cfg)}]
    else:
        cfg = build_electron(params)
        prof = profile.electron_profile(cfg, theta)
        checks = []
        try:
            first = electron_grating.first_maximum_angle(cfg)
            checks.append({"name": "first_maximum_deg", "value": math.degrees(first)})
            exps = electron_grating.damping_exponents(cfg, first)
            checks.append({"name": "damping_exponents_at_first_maximum",
                           "value": [float(e) for e in exps]})
        except electron_grating.NoPhysicalMaximum:
            checks.append({"name": "first_maximum_deg", "value": None})
    return grid, prof, checks


def run_kinematics(doc: dict) -> dict:
    params = dict(doc.get("parameters", {}))
    required = {"s_a", "s_b", "mean_momentum", "ratio", "difference"}
    missing = required - params.keys()
    if missing:
        raise ScenarioError(f"missing parameter {sorted(missing)[0]!r}")
    v = {k: _numeric(params, k) for k in params}
    mass = v.get("mass_energy", core.CODATA.electron_rest_energy_ev)
    s_a, s_b, p = v["s_a"], v["s_b"], v["mean_momentum"]
    if not (s_a > 0 and s_b > 0 and p > 0):
        raise DomainError("s_a, s_b and mean_momentum must be positive")
    ratio_ev = s_a / s_b
    mean_s, delta_s = 0.5 * (s_a + s_b), s_a - s_b
    report = {
        "ratio_ev": ratio_ev,
        "classification": kinematics.classify_timing(v["ratio"], ratio_ev),
        "phase_difference_first_order": kinematics.phase_difference_first_order(
            mean_s, delta_s, p, mass, v["ratio"], ratio_ev),
        "phase_difference_equal_times": kinematics.phase_difference_equal_times(p, delta_s),
        "phase_difference_equal_velocities": kinematics.phase_difference_equal_velocities(
            p, delta_s, mass),
    }
    pair = kinematics.pair_from_ratio(s_a, s_b, p, v["ratio"], mass)
    report["phase_difference_exact"] = kinematics.phase_difference_exact(pair)
    try:
        vel = kinematics.velocities_from_timing((s_a, s_b), kinematics.TimingRatio(
            v["ratio"], v["difference"]))
        report["velocities"] = {"beta_a": vel.beta_a, "beta_b": vel.beta_b,
                                "superluminal": vel.superluminal}
    except kinematics.IndeterminateVelocities as exc:
        report["velocities"] = {"indeterminate": str(exc)}
    return report


def run_cat(doc: dict, samples: int | None) -> dict:
    params = doc.get("parameters", {})
    if "mean_lifetime" not in params:
        raise ScenarioError("missing parameter 'mean_lifetime'")
    tau = _numeric(params, "mean_lifetime")
    delay = _numeric(params, "t_delay") if "t_delay" in params else 0.0
    if not tau > 0 or delay < 0:
        raise DomainError("need mean_lifetime > 0 and t_delay >= 0")
    t = _sweep_grid(doc, samples)
    alive = decay_source.cat_alive_probability(tau, t, delay)
    return {"t": t, "alive": np.asarray(alive), "dead": 1.0 - np.asarray(alive)}


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


class _Parser(argparse.ArgumentParser):
    # usage errors are validation errors; exit status 2 is kept for verify failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"error: {message}\n")


def _run_verify(suite: str, fmt: str, out: str | None) -> int:
    checks = verify.run_verify(suite)
    if fmt == "json":
        text = _dump({"checks": [
            {"name": f"{c.suite}.{c.name}", "measured": c.measured,
             "tolerance": c.tolerance, "passed": c.passed} for c in checks]})
    else:
        text = "".join(c.line() + "\n" for c in checks)
    _write(text, out)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="gratingpaths",
        description="Path-amplitude diffraction predictions for photon and electron gratings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, sweepable=True):
        p.add_argument("--scenario", help="bundled scenario name or path to a JSON file")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--format", choices=("csv", "json"), default="csv" if sweepable else "json")
        p.add_argument("--set", dest="overrides", action="append", default=[],
                       metavar="KEY=VALUE", help="override a parameter (sweep.KEY for the sweep)")
        if sweepable:
            p.add_argument("--samples", type=int, help="number of sweep samples")

    for name, help_text in (("photon", "photon reflection grating profile"),
                            ("electron", "electron row-grating profile")):
        common(sub.add_parser(name, help=help_text))
    common(sub.add_parser("kinematics", help="two-path timing and phase report"), sweepable=False)
    common(sub.add_parser("cat", help="alive/dead probabilities against time"))
    p = sub.add_parser("sweep", help="run the sweep of any scenario, dispatching on its kind")
    common(p)
    p = sub.add_parser("verify", help="run the self-check suite")
    p.add_argument("suite", nargs="?", default="all",
                   choices=("all",) + verify.SUITES)
    p.add_argument("--out")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _run(args) -> int:
    if args.command == "verify":
        return _run_verify(args.suite, args.format, args.out)

    if args.command == "sweep":
        if not args.scenario:
            raise ScenarioError("sweep needs --scenario")
        doc = load_scenario(args.scenario)
        kind = doc.get("kind")
    else:
        kind = COMMAND_KIND[args.command]
        doc = load_scenario(args.scenario or DEFAULT_SCENARIO[kind])
        if doc.get("kind") != kind:
            raise ScenarioError(f"scenario kind {doc.get('kind')!r} does not match command "
                                f"{args.command!r}")
    doc = validate_scenario(apply_overrides(doc, args.overrides))
    kind = doc["kind"]
    samples = getattr(args, "samples", None)

    if kind in ("photon_grating", "electron_grating"):
        grid, prof, checks = run_grating(doc, samples)
        if args.format == "csv":
            # echo the requested degree grid rather than a radian round trip
            text = profile_csv(grid, prof.intensity)
        else:
            text = _dump({
                "peaks": [{"theta_deg": math.degrees(pk.theta), "intensity": pk.intensity,
                           "order": pk.order} for pk in prof.peaks],
                "config_echo": doc,
                "checks": checks,
            })
    elif kind == "cat":
        res = run_cat(doc, samples)
        if args.format == "csv":
            rows = ["t,alive,dead"] + [f"{_fmt(a)},{_fmt(b)},{_fmt(c)}"
                                       for a, b, c in zip(res["t"], res["alive"], res["dead"])]
            text = "\n".join(rows) + "\n"
        else:
            text = _dump({"config_echo": doc, "checks": [
                {"name": "alive_at_mean_lifetime", "value": float(
                    decay_source.cat_alive_probability(
                        doc["parameters"]["mean_lifetime"],
                        doc["parameters"]["mean_lifetime"] + doc["parameters"].get("t_delay", 0.0),
                        doc["parameters"].get("t_delay", 0.0)))}]})
    elif kind == "kinematics":
        report = run_kinematics(doc)
        if args.format == "csv":
            flat = {k: v for k, v in report.items() if not isinstance(v, dict)}
            text = "key,value\n" + "".join(
                f"{k},{_fmt(v) if isinstance(v, float) else v}\n" for k, v in flat.items())
        else:
            text = _dump({"config_echo": doc, "checks": [], "report": report})
    else:
        suite = doc.get("parameters", {}).get("suite", "all")
        return _run_verify(suite, "json" if args.format == "json" else "text", args.out)
    _write(text, args.out)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return _run(args)
    except BrokenPipeError:
        # downstream reader closed early (e.g. piped into head)
        sys.stderr.close()
        return EXIT_OK
    except QuadratureError as exc:
        print(f"error: non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (ScenarioError, DomainError, ValueError, TypeError) as exc:
        print(f"error: {exc}".replace("\n", " "), file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
