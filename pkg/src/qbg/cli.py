"""Command-line front end emitting deterministic CSV reports.

Every run writes exactly one CSV file: a ``#``-prefixed metadata header
(tool version, subcommand, parameters), a column-name row, then data rows.
Floats are rendered with ``repr`` (shortest round-trip form), line endings
are LF, and identical configurations produce byte-identical files.  On any
error nothing is written; the error name and message go to stderr and the
exit status is nonzero.

Parameters may come from flags or from a JSON config file (``--config``);
flags win on conflict.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .equivalence import (
    clayton_to_q,
    equivalence_report,
    multipliers_to_q,
    q_to_multipliers,
)
from .errors import QbgError
from .extbg import (
    ClaytonParams,
    MomentVector,
    bg_entropy,
    clayton_multipliers,
    ext_distribution,
    load_multipliers,
)
from .maxent import SolverOptions, solve_multipliers
from .qstat import (
    CUTOFF,
    QParams,
    escort_energy,
    q_distribution,
    q_log_weight,
    tsallis_entropy,
)
from .spectrum import load_spectrum

SUBCOMMANDS = (
    "dist-q",
    "dist-ext",
    "map",
    "invert-map",
    "clayton",
    "equiv",
    "solve",
    "entropy",
)


@dataclass
class RunConfig:
    subcommand: str
    spectrum: str | None = None
    multipliers: str | None = None
    q: float | None = None
    beta: float | None = None
    delta: float | None = None
    order: int | None = None
    max_order: int | None = None
    targets: tuple[float, ...] | None = None
    tol: float | None = None
    out: str | None = None

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ValueError(f"unknown subcommand {self.subcommand!r}")
        for name in ("q", "beta", "delta", "tol"):
            value = getattr(self, name)
            if value is not None and not math.isfinite(value):
                raise ValueError(f"--{name} must be finite, got {value!r}")
        if self.targets is not None:
            if len(self.targets) == 0:
                raise ValueError("--targets must list at least one moment")
            if any(not math.isfinite(t) for t in self.targets):
                raise ValueError("--targets entries must be finite")


def _fmt(x) -> str:
    return repr(float(x))


def _require(config: RunConfig, *names: str):
    for name in names:
        if getattr(config, name) is None:
            flag = "--" + name.replace("_", "-")
            raise ValueError(f"{config.subcommand} requires {flag}")


def _run_dist_q(config: RunConfig):
    _require(config, "spectrum", "q", "beta")
    spectrum = load_spectrum(config.spectrum)
    params = QParams(config.q, config.beta)
    dist, log_z = q_distribution(spectrum, params)
    meta = [("q", _fmt(params.q)), ("beta", _fmt(params.beta)),
            ("log_partition", _fmt(log_z))]
    rows = []
    for energy, g, p in zip(spectrum.levels, spectrum.degeneracies, dist.probs):
        cut = q_log_weight(params, energy) is CUTOFF
        prob = "0" if cut else _fmt(p)
        rows.append(f"{_fmt(energy)},{g},{prob},{'true' if cut else 'false'}")
    return meta, "energy,degeneracy,probability,cutoff", rows


def _run_dist_ext(config: RunConfig):
    _require(config, "spectrum", "multipliers")
    spectrum = load_spectrum(config.spectrum)
    m = load_multipliers(config.multipliers)
    dist, log_z = ext_distribution(spectrum, m)
    meta = [("order", str(m.order)), ("log_partition", _fmt(log_z))]
    rows = [
        f"{_fmt(energy)},{g},{_fmt(p)}"
        for energy, g, p in zip(spectrum.levels, spectrum.degeneracies, dist.probs)
    ]
    return meta, "energy,degeneracy,probability", rows


def _run_map(config: RunConfig):
    _require(config, "q", "beta", "order")
    m = q_to_multipliers(QParams(config.q, config.beta), config.order)
    meta = [("q", _fmt(config.q)), ("beta", _fmt(config.beta)),
            ("order", str(config.order))]
    rows = [f"{n},{_fmt(c)}" for n, c in enumerate(m.coeffs, start=1)]
    return meta, "n,beta_n", rows


def _run_invert_map(config: RunConfig):
    _require(config, "multipliers")
    tol = 1e-9 if config.tol is None else config.tol
    m = load_multipliers(config.multipliers)
    params = multipliers_to_q(m, tol)
    meta = [("order", str(m.order)), ("tol", _fmt(tol)),
            ("matched", "true" if params is not None else "false")]
    rows = [] if params is None else [f"{_fmt(params.q)},{_fmt(params.beta)}"]
    return meta, "q,beta", rows


def _run_clayton(config: RunConfig):
    _require(config, "beta", "delta")
    m = clayton_multipliers(ClaytonParams(config.beta, config.delta))
    meta = [("beta", _fmt(config.beta)), ("delta", _fmt(config.delta)),
            ("q", _fmt(clayton_to_q(config.delta)))]
    rows = [f"{n},{_fmt(c)}" for n, c in enumerate(m.coeffs, start=1)]
    return meta, "n,beta_n", rows


def _run_equiv(config: RunConfig):
    _require(config, "spectrum", "q", "beta", "max_order")
    spectrum = load_spectrum(config.spectrum)
    params = QParams(config.q, config.beta)
    report = equivalence_report(spectrum, params, config.max_order)
    meta = [("q", _fmt(params.q)), ("beta", _fmt(params.beta)),
            ("max_order", str(config.max_order)),
            ("domain_ratio", _fmt(report.domain_ratio))]
    rows = [f"{n},{_fmt(d)}" for n, d in zip(report.orders, report.sup_distances)]
    return meta, "N,sup_distance", rows


def _run_solve(config: RunConfig):
    _require(config, "spectrum", "targets")
    spectrum = load_spectrum(config.spectrum)
    targets = MomentVector(config.targets)
    opts = SolverOptions() if config.tol is None else SolverOptions(tol=config.tol)
    m, report = solve_multipliers(spectrum, targets, opts)
    meta = [
        ("order", str(targets.order)),
        ("tol", _fmt(opts.tol)),
        ("converged", "true" if report.converged else "false"),
        ("iterations", str(report.iterations)),
        ("residual_norm", _fmt(report.residual_norm)),
        ("final_step_size", _fmt(report.final_step_size)),
        ("rescale_factor", _fmt(report.rescale_factor)),
    ]
    rows = [f"{n},{_fmt(c)}" for n, c in enumerate(m.coeffs, start=1)]
    return meta, "n,beta_n", rows


def _run_entropy(config: RunConfig):
    _require(config, "spectrum")
    spectrum = load_spectrum(config.spectrum)
    has_q = config.q is not None or config.beta is not None
    if has_q and config.multipliers is not None:
        raise ValueError("entropy takes either --q/--beta or --multipliers, not both")
    if has_q:
        _require(config, "q", "beta")
        params = QParams(config.q, config.beta)
        dist, log_z = q_distribution(spectrum, params)
        meta = [("q", _fmt(params.q)), ("beta", _fmt(params.beta))]
        mean = float(np.dot(dist.probs, spectrum.levels))
        quantities = [
            ("log_partition", log_z),
            ("mean_energy", mean),
            ("escort_energy", escort_energy(dist, spectrum, params.q)),
            ("bg_entropy", bg_entropy(dist)),
            ("tsallis_entropy", tsallis_entropy(dist, params.q)),
        ]
    elif config.multipliers is not None:
        m = load_multipliers(config.multipliers)
        dist, log_z = ext_distribution(spectrum, m)
        meta = [("order", str(m.order))]
        mean = float(np.dot(dist.probs, spectrum.levels))
        quantities = [
            ("log_partition", log_z),
            ("mean_energy", mean),
            ("bg_entropy", bg_entropy(dist)),
        ]
    else:
        raise ValueError("entropy requires --q/--beta or --multipliers")
    rows = [f"{name},{_fmt(value)}" for name, value in quantities]
    return meta, "quantity,value", rows


_HANDLERS = {
    "dist-q": _run_dist_q,
    "dist-ext": _run_dist_ext,
    "map": _run_map,
    "invert-map": _run_invert_map,
    "clayton": _run_clayton,
    "equiv": _run_equiv,
    "solve": _run_solve,
    "entropy": _run_entropy,
}


def run(config: RunConfig) -> int:
    """Execute one subcommand and write its CSV report; returns 0 on success.

    The report text is assembled fully before the file is opened, so a
    failing run leaves no partial output behind.
    """
    if config.out is None:
        raise ValueError(f"{config.subcommand} requires --out")
    meta, header, rows = _HANDLERS[config.subcommand](config)
    lines = [f"# tool: qbg {__version__}", f"# subcommand: {config.subcommand}"]
    lines.extend(f"# {key}={value}" for key, value in meta)
    lines.append(header)
    lines.extend(rows)
    text = "\n".join(lines) + "\n"
    with open(config.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return 0


def _parse_targets(value) -> tuple[float, ...]:
    if isinstance(value, str):
        return tuple(float(part) for part in value.split(","))
    return tuple(float(part) for part in value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbg",
        description="Distributions on finite energy spectra: q-exponential, "
        "exponential-polynomial, the multiplier mapping between them, and a "
        "moment-matching solver.  Output is a deterministic CSV report.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--spectrum", help="spectrum file: 'energy,degeneracy' per line")
        p.add_argument("--multipliers", help="multiplier file: 'n,beta_n' per line")
        p.add_argument("--q", type=float, help="entropic index")
        p.add_argument("--beta", type=float, help="inverse temperature")
        p.add_argument("--delta", type=float, help="quadratic correction")
        p.add_argument("--order", type=int, help="multiplier order")
        p.add_argument("--max-order", type=int, dest="max_order", help="largest truncation order")
        p.add_argument("--targets", help="comma-separated raw moments")
        p.add_argument("--tol", type=float, help="tolerance")
        p.add_argument("--out", help="output CSV path")
        p.add_argument("--config", help="JSON config file; flags win on conflict")
    return parser


def _merge_config(args: argparse.Namespace) -> RunConfig:
    values = {
        "spectrum": args.spectrum,
        "multipliers": args.multipliers,
        "q": args.q,
        "beta": args.beta,
        "delta": args.delta,
        "order": args.order,
        "max_order": args.max_order,
        "targets": args.targets,
        "tol": args.tol,
        "out": args.out,
    }
    if args.config is not None:
        with open(args.config, "r", encoding="utf-8") as fh:
            file_values = json.load(fh)
        if not isinstance(file_values, dict):
            raise ValueError("config file must hold a JSON object")
        for key, value in file_values.items():
            key = key.replace("-", "_")
            if key not in values:
                raise ValueError(f"unknown config key {key!r}")
            if values[key] is None:
                values[key] = value
    if values["targets"] is not None:
        values["targets"] = _parse_targets(values["targets"])
    for int_key in ("order", "max_order"):
        if values[int_key] is not None:
            values[int_key] = int(values[int_key])
    for float_key in ("q", "beta", "delta", "tol"):
        if values[float_key] is not None:
            values[float_key] = float(values[float_key])
    return RunConfig(subcommand=args.subcommand, **values)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _merge_config(args)
        return run(config)
    except (QbgError, ValueError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
