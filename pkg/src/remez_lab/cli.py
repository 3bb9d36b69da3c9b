"""Command-line entry point: ``remez-lab <command> --config FILE [options]``.

Exit codes: 0 when every record holds (possibly within noise), 2 when any
record is violated, 3 when any record is inconclusive, 1 on usage or
configuration errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import asdict

import yaml

from . import certifier
from .config import COMMANDS, ExperimentConfig, parse_config
from .errors import ConfigError, RemezLabError
from .report import emit_plot, write_report
from .sets import IntervalUnion

EXIT_OK, EXIT_USAGE, EXIT_VIOLATED, EXIT_INCONCLUSIVE = 0, 1, 2, 3

log = logging.getLogger("remez_lab")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="remez-lab", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", help="YAML/JSON experiment file")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--c", type=float, help="universal constant used in the bounds")
    ap.add_argument("--R", type=float, help="1-D Remez constant for algebraic polynomials")
    ap.add_argument("--out", help="report path")
    ap.add_argument("--format", choices=("json", "csv"))
    ap.add_argument("--plot", help="SVG plot path")
    ap.add_argument("--samples", type=int)
    ap.add_argument("--instances", type=int)
    ap.add_argument("--workers", type=int)
    ap.add_argument("--fixed-clock", action="store_true",
                    help="zero all timings so reports are byte-identical across runs")
    ap.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                    help="override any config key, e.g. --set grid.d=[1,2]")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def overrides_from_args(args) -> dict:
    out = {"command": args.command}
    flat = {"seed": args.seed, "c": args.c, "R": args.R, "output.path": args.out,
            "output.format": args.format, "output.plot": args.plot,
            "budget.samples": args.samples, "budget.instances": args.instances,
            "workers": args.workers}
    out.update({k: v for k, v in flat.items() if v is not None})
    if args.fixed_clock:
        out["fixed_clock"] = True
    for item in args.set:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        out[key.strip()] = yaml.safe_load(raw)
    return out


def exit_code(verdicts: dict[str, int]) -> int:
    if verdicts.get("violated"):
        return EXIT_VIOLATED
    if verdicts.get("inconclusive"):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def run(cfg: ExperimentConfig) -> tuple[list, dict, list | None]:
    """Execute the configured command; returns (records, summary, plottable)."""
    suite = cfg.suite_config()
    if cfg.command in ("verify-theorem1", "fit-constant"):
        reports = certifier.run_theorem1_suite(suite)
        summary = {}
        if any(r.suite == "theorem1" for r in reports):
            summary["c_hat"] = certifier.fit_empirical_constant(reports)
            summary["boundary_branches"] = certifier.boundary_comparison(reports)
        return reports, summary, reports
    if cfg.command == "verify-cw":
        reports = certifier.run_cw_suite(suite)
        return reports, {"levelsets_monotone": certifier.levelsets_monotone(reports)}, reports
    if cfg.command == "verify-classical":
        reports = certifier.run_classical_suite(suite)
        return reports, {}, reports
    if cfg.command == "tightness":
        results = [certifier.tightness_exponential(d, e, cfg.c)
                   for d in cfg.tightness.d for e in cfg.tightness.eps]
        records = [dict(asdict(r), verdict="holds" if _tight_ok(r) else "violated")
                   for r in results]
        return records, {"all_invariants_hold": all(map(_tight_ok, results))}, results
    return _run_search(cfg)


def _tight_ok(r) -> bool:
    return r.restricted_integral <= r.upper_bound and r.full_norm >= r.factorial_lower


def _run_search(cfg: ExperimentConfig):
    s = cfg.search
    measure = cfg.measure.build(s.n)
    if s.family == "monomial":
        family = certifier.MonomialFamily(s.d)
    else:
        family = certifier.DenseFamily(s.n, s.d)
    if s.set.kind == "interval":
        set_family = certifier.FixedSetFamily(IntervalUnion(((s.set.lo, s.set.hi),)))
    else:
        set_family = certifier.HalfspaceFamily(measure.n, cfg.sets.quantiles)
    res = certifier.search_extremal(family, measure, set_family, s.p,
                                    iterations=cfg.budget.iterations,
                                    restarts=cfg.budget.restarts, seed=cfg.seed,
                                    budget=cfg.budget.samples, c=cfg.c, step=s.step,
                                    decay=s.decay, method=cfg.method)
    record = {"best_polynomial": res.best_polynomial.to_text(), "best_set": res.best_set,
              "best_ratio": res.best_ratio, "c_hat": res.c_hat, "trace": res.trace,
              "best_params": list(res.best_params)}
    return [record], {"best_ratio": res.best_ratio, "c_hat": res.c_hat}, None


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = parse_config(args.config, overrides_from_args(args))
    except ConfigError as exc:
        print(f"remez-lab: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter()
    try:
        records, summary, plottable = run(cfg)
    except (RemezLabError, ValueError) as exc:
        print(f"remez-lab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    runtime = 0.0 if cfg.fixed_clock else time.perf_counter() - t0
    echo = cfg.model_dump(mode="json")
    if cfg.output.path:
        doc = write_report(records, cfg.output.path, cfg.output.format, echo, cfg.command,
                           runtime, summary)
    else:
        from .report import build_document
        doc = build_document(records, echo, cfg.command, runtime, summary)
    if cfg.output.plot and plottable:
        emit_plot(plottable, cfg.output.plot)
    print(json.dumps(doc["summary"], sort_keys=True))
    return exit_code(doc["summary"]["verdicts"])


if __name__ == "__main__":
    sys.exit(main())
