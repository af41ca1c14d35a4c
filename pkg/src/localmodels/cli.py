"""Command-line front end.

Subcommands: alcoves (admissible enumeration), poset (strata closure
order as JSON/DOT, optionally a figure), equations (one chart ideal in
the text or JSON format), verify (flatness/dimension/reducedness
battery with a report), export (ideal in both formats to a directory).

Exit codes: 0 success, 2 usage or invalid parameters, 3 failed checks
or chart timeouts.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from .alcoves import enumerate_admissible, length, relative_position, strata_poset
from .charts import equations_generic_tuple, equations_parahoric_pair, equations_U_tau
from .errors import ComputationError, DomainError, MalformedAlcove
from .figures import render_poset_figure, render_verify_summary
from .ioformats import (
    alcoves_to_dict,
    ideal_to_json,
    ideal_to_text,
    poset_to_dot,
    poset_to_json,
    report_to_csv,
    report_to_json,
)
from .verify import run_verification, select_charts

import json


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int = 0
    r: int = 0
    chart: str | None = None
    parahoric: tuple[int, ...] | None = None
    generic: tuple | None = None
    field: str = "Q"
    out: str | None = None
    fmt: str | None = None
    figure: str | None = None
    timeout: int | None = None
    strict: bool = False
    jobs: int | None = None


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise DomainError(f"expected a comma-separated integer list, got {text!r}")


def _parse_generic(text: str) -> tuple:
    parts = [x.strip() for x in text.split(",")]
    if len(parts) != 3:
        raise DomainError("generic tuple selector is m,k,target (target pi or 0)")
    try:
        m, k = int(parts[0]), int(parts[1])
    except ValueError:
        raise DomainError("generic tuple selector needs integer m and k")
    return (m, k, parts[2])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="localmodels",
        description="Local models of type-A Shimura varieties: strata, equations, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_nr(p):
        p.add_argument("--n", type=int, required=True, help="module rank n")
        p.add_argument("--r", type=int, required=True, help="subspace rank r")

    p_alc = sub.add_parser("alcoves", help="enumerate the admissible alcoves")
    add_nr(p_alc)
    p_alc.add_argument("--out", help="write JSON here instead of stdout")

    p_pos = sub.add_parser("poset", help="strata poset (closure order)")
    add_nr(p_pos)
    p_pos.add_argument("--format", choices=("json", "dot"), default="json")
    p_pos.add_argument("--out", help="write the document here instead of stdout")
    p_pos.add_argument("--figure", help="also render a Hasse-diagram PNG to this path")

    p_equ = sub.add_parser("equations", help="emit one chart ideal")
    add_nr(p_equ)
    p_equ.add_argument("--chart", default=None,
                       help="tau | extreme:<i> | profile:<path> (default tau)")
    p_equ.add_argument("--parahoric", default=None,
                       help="comma-separated chain positions, e.g. 0,2")
    p_equ.add_argument("--generic", default=None,
                       help="m,k,target for a fully generic tuple (target pi or 0)")
    p_equ.add_argument("--format", choices=("text", "json"), default="text")
    p_equ.add_argument("--out", help="write the ideal here instead of stdout")

    p_ver = sub.add_parser("verify", help="flatness / dimension / reducedness battery")
    add_nr(p_ver)
    p_ver.add_argument("--chart", "--charts", dest="chart", default=None,
                       help="tau | extreme:<i> | all | profile:<path> (default: tau + extremes)")
    p_ver.add_argument("--parahoric", default=None,
                       help="comma-separated chain positions; a pair selects the AB/BA chart")
    p_ver.add_argument("--field", default="Q", help="Q or Fp:<prime> (default Q)")
    p_ver.add_argument("--timeout", type=int, default=None,
                       help="per-chart budget in seconds (default LOCALMODEL_TIMEOUT_SECS or 600)")
    p_ver.add_argument("--strict", action="store_true",
                       help="count an inconclusive reducedness certificate as failure")
    p_ver.add_argument("--jobs", type=int, default=None, help="worker processes")
    p_ver.add_argument("--out", help="directory for report.json, report.csv, summary.png")

    p_exp = sub.add_parser("export", help="write one chart ideal in both formats")
    add_nr(p_exp)
    p_exp.add_argument("--chart", default=None)
    p_exp.add_argument("--parahoric", default=None)
    p_exp.add_argument("--generic", default=None)
    p_exp.add_argument("--out", required=True, help="output directory")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        n=getattr(args, "n", 0),
        r=getattr(args, "r", 0),
        chart=getattr(args, "chart", None),
        parahoric=_parse_int_list(args.parahoric) if getattr(args, "parahoric", None) else None,
        generic=_parse_generic(args.generic) if getattr(args, "generic", None) else None,
        field=getattr(args, "field", "Q"),
        out=getattr(args, "out", None),
        fmt=getattr(args, "format", None),
        figure=getattr(args, "figure", None),
        timeout=getattr(args, "timeout", None),
        strict=getattr(args, "strict", False),
        jobs=getattr(args, "jobs", None),
    )


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        parent = os.path.dirname(out)
        if parent:
            os.makedirs(parent, exist_ok=True)
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _check_nr(cfg: RunConfig) -> None:
    if not (0 < cfg.r < cfg.n):
        raise DomainError(f"need 0 < r < n, got n={cfg.n}, r={cfg.r}")


def cmd_alcoves(cfg: RunConfig) -> int:
    _check_nr(cfg)
    alcoves = enumerate_admissible(cfg.n, cfg.r)
    lengths = [length(relative_position(a)) for a in alcoves]
    doc = alcoves_to_dict(cfg.n, cfg.r, alcoves, lengths)
    _emit(json.dumps(doc, ensure_ascii=False, indent=2) + "\n", cfg.out)
    return 0


def cmd_poset(cfg: RunConfig) -> int:
    _check_nr(cfg)
    poset = strata_poset(cfg.n, cfg.r)
    text = poset_to_dot(poset) if cfg.fmt == "dot" else poset_to_json(poset)
    _emit(text, cfg.out)
    if cfg.figure:
        render_poset_figure(poset, cfg.figure)
    return 0


def _single_ideal(cfg: RunConfig):
    """The one ideal an equations/export run is about."""
    if cfg.generic is not None:
        m, k, target = cfg.generic
        return f"generic:{m},{k},{target}", equations_generic_tuple(m, k, target)
    if cfg.parahoric is not None:
        _check_nr(cfg)
        if len(cfg.parahoric) == 2:
            kappa = cfg.parahoric[1] - cfg.parahoric[0]
            spec, _ = equations_parahoric_pair(cfg.n, cfg.r, kappa)
            return f"parahoric:{cfg.parahoric[0]},{cfg.parahoric[1]}", spec
        job = select_charts(cfg.n, cfg.r, None, cfg.parahoric)[0]
        return job.name, job.spec
    _check_nr(cfg)
    selector = cfg.chart or "tau"
    if selector == "tau":
        return "tau", equations_U_tau(cfg.n, cfg.r)
    if selector == "all":
        raise DomainError("equations emits a single ideal; pick one chart")
    job = select_charts(cfg.n, cfg.r, selector)[0]
    return job.name, job.spec


def cmd_equations(cfg: RunConfig) -> int:
    name, spec = _single_ideal(cfg)
    text = ideal_to_json(spec) if cfg.fmt == "json" else ideal_to_text(spec)
    _emit(text, cfg.out)
    print(
        f"{name}: raw {spec.raw_count} deduplicated {len(spec.generators)}",
        file=sys.stderr,
    )
    return 0


def cmd_export(cfg: RunConfig) -> int:
    name, spec = _single_ideal(cfg)
    os.makedirs(cfg.out, exist_ok=True)
    text_path = os.path.join(cfg.out, "ideal.txt")
    json_path = os.path.join(cfg.out, "ideal.json")
    with open(text_path, "w", encoding="utf-8") as fh:
        fh.write(ideal_to_text(spec))
    with open(json_path, "w", encoding="utf-8") as fh:
        fh.write(ideal_to_json(spec))
    print(
        f"{name}: raw {spec.raw_count} deduplicated {len(spec.generators)} -> "
        f"{text_path}, {json_path}",
        file=sys.stderr,
    )
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    _check_nr(cfg)
    report = run_verification(
        cfg.n,
        cfg.r,
        field_tag=cfg.field,
        selector=cfg.chart,
        parahoric=cfg.parahoric,
        timeout_secs=cfg.timeout,
        strict_radical=cfg.strict,
        jobs=cfg.jobs,
    )
    text = report_to_json(report)
    sys.stdout.write(text)
    if cfg.out:
        os.makedirs(cfg.out, exist_ok=True)
        with open(os.path.join(cfg.out, "report.json"), "w", encoding="utf-8") as fh:
            fh.write(text)
        with open(os.path.join(cfg.out, "report.csv"), "w", encoding="utf-8") as fh:
            fh.write(report_to_csv(report))
        render_verify_summary(report, os.path.join(cfg.out, "summary.png"))
    return 0 if report["all_passed"] else 3


_COMMANDS = {
    "alcoves": cmd_alcoves,
    "poset": cmd_poset,
    "equations": cmd_equations,
    "verify": cmd_verify,
    "export": cmd_export,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        return _COMMANDS[cfg.command](cfg)
    except (DomainError, MalformedAlcove, FileNotFoundError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ComputationError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 3


def console_entry() -> None:
    sys.exit(main(sys.argv[1:]))
