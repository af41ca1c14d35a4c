"""Chart verification runs.

Selects chart ideals (the worst-singularity chart, extreme charts, the
full admissible cover, a parahoric pair, or a profile from a file),
runs the algebra battery on each in a process pool with a per-chart
wall-clock budget, and grades the results against the expected common
dimension r(n-r).
"""

from __future__ import annotations

import json
import os
import signal
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .alcoves import enumerate_admissible, extreme_alcoves, profile_of
from .charts import (
    GeneralizedModelDatum,
    PolyIdealSpec,
    TypeProfile,
    alcove_datum,
    chart_presentation,
    equations_from_presentation,
    equations_U_tau,
    equations_parahoric_pair,
)
from .errors import ChartTimeout, DomainError
from .groebner import verification_report
from .polynomials import field_from_tag

DEFAULT_TIMEOUT_SECS = 600


def timeout_budget(explicit: int | None = None) -> int:
    """Per-chart wall-clock budget: flag wins, then the
    LOCALMODEL_TIMEOUT_SECS environment variable, then 600."""
    if explicit is not None:
        return explicit
    env = os.environ.get("LOCALMODEL_TIMEOUT_SECS")
    if env is not None:
        try:
            return max(1, int(env))
        except ValueError:
            raise DomainError(f"LOCALMODEL_TIMEOUT_SECS must be an integer, got {env!r}")
    return DEFAULT_TIMEOUT_SECS


@dataclass(frozen=True)
class ChartJob:
    name: str
    spec: PolyIdealSpec
    affine_dim: int
    expected_dim: int


def _alcove_job(name: str, alcove, n: int, r: int) -> ChartJob:
    pres = chart_presentation(profile_of(alcove), alcove_datum(n, r))
    spec = equations_from_presentation(pres)
    return ChartJob(name, spec, pres.affine_dim, r * (n - r))


def _profile_job(path: str, n: int, r: int) -> ChartJob:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    profile = TypeProfile(tuple(tuple(row) for row in doc["rows"]))
    if "eps" in doc:
        datum = GeneralizedModelDatum(
            profile.m, profile.n, profile.r, tuple(tuple(row) for row in doc["eps"])
        )
    elif profile.m == profile.n:
        datum = alcove_datum(profile.n, profile.r)
    else:
        raise DomainError("profile files with m != n must carry an eps matrix")
    if (profile.n, profile.r) != (n, r):
        raise DomainError(
            f"profile file is for (n,r)=({profile.n},{profile.r}), run asked ({n},{r})"
        )
    pres = chart_presentation(profile, datum)
    spec = equations_from_presentation(pres)
    return ChartJob(f"profile:{os.path.basename(path)}", spec, pres.affine_dim, r * (n - r))


def select_charts(n: int, r: int, selector: str | None,
                  parahoric: tuple[int, ...] | None = None) -> list[ChartJob]:
    """Default: the worst-singularity chart plus every extreme chart."""
    if parahoric is not None:
        if selector not in (None, "tau"):
            raise DomainError("parahoric runs take no chart selector")
        positions = tuple(parahoric)
        if len(positions) == 2:
            kappa = positions[1] - positions[0]
            spec, affine = equations_parahoric_pair(n, r, kappa)
            name = f"parahoric:{positions[0]},{positions[1]}"
            return [ChartJob(name, spec, affine, r * (n - r))]
        from .charts import parahoric_datum, parahoric_profile

        profile = parahoric_profile(n, r, positions)
        datum = parahoric_datum(n, r, positions)
        pres = chart_presentation(profile, datum)
        spec = equations_from_presentation(pres)
        name = "parahoric:" + ",".join(str(p) for p in positions)
        return [ChartJob(name, spec, pres.affine_dim, r * (n - r))]

    expected = r * (n - r)
    if selector is None:
        jobs = [ChartJob("tau", equations_U_tau(n, r), 0, expected)]
        for i, x in enumerate(extreme_alcoves(n, r)):
            jobs.append(_alcove_job(f"extreme:{i}", x, n, r))
        return jobs
    if selector == "tau":
        return [ChartJob("tau", equations_U_tau(n, r), 0, expected)]
    if selector == "all":
        return [
            _alcove_job(f"alcove:{i}", a, n, r)
            for i, a in enumerate(enumerate_admissible(n, r))
        ]
    if selector.startswith("extreme:"):
        idx = int(selector.split(":", 1)[1])
        extremes = extreme_alcoves(n, r)
        if not (0 <= idx < len(extremes)):
            raise DomainError(f"extreme index out of range 0..{len(extremes) - 1}")
        return [_alcove_job(f"extreme:{idx}", extremes[idx], n, r)]
    if selector.startswith("profile:"):
        return [_profile_job(selector.split(":", 1)[1], n, r)]
    raise DomainError(f"unknown chart selector {selector!r}")


def _run_chart(job: ChartJob, field_tag: str, budget: int) -> dict:
    """Worker body: alarm-bounded verification of one chart."""
    field = field_from_tag(field_tag)

    def _expire(signum, frame):
        raise ChartTimeout(f"chart exceeded {budget} s")

    old = signal.signal(signal.SIGALRM, _expire)
    signal.alarm(budget)
    try:
        report = verification_report(job.name, job.spec, field)
    except ChartTimeout:
        return {
            "ideal": job.name,
            "field": field_tag,
            "flat": None,
            "dim_special": None,
            "dim_generic": None,
            "radical_cert": None,
            "wall_ms": budget * 1000,
            "status": "timeout",
        }
    finally:
        signal.alarm(0)
        signal.signal(signal.SIGALRM, old)
    return report


def _grade(report: dict, job: ChartJob, strict_radical: bool) -> dict:
    out = dict(report)
    out["affine_dim"] = job.affine_dim
    if out.get("status") == "timeout":
        out["dim_chart_special"] = None
        out["dim_chart_generic"] = None
        out["expected_dim"] = job.expected_dim
        return out
    total_special = (
        out["dim_special"] + job.affine_dim if out["dim_special"] >= 0 else -1
    )
    total_generic = (
        out["dim_generic"] + job.affine_dim if out["dim_generic"] >= 0 else -1
    )
    out["dim_chart_special"] = total_special
    out["dim_chart_generic"] = total_generic
    out["expected_dim"] = job.expected_dim
    ok = (
        out["flat"] is True
        and total_special == job.expected_dim
        and total_generic == job.expected_dim
    )
    if strict_radical and out["radical_cert"] != "certified":
        ok = False
    out["status"] = "ok" if ok else "failed"
    return out


def run_verification(
    n: int,
    r: int,
    field_tag: str = "Q",
    selector: str | None = None,
    parahoric: tuple[int, ...] | None = None,
    timeout_secs: int | None = None,
    strict_radical: bool = False,
    jobs: int | None = None,
) -> dict:
    """Full verification run; returns the report document."""
    field_from_tag(field_tag)  # validate early
    budget = timeout_budget(timeout_secs)
    charts = select_charts(n, r, selector, parahoric)
    workers = jobs or min(len(charts), os.cpu_count() or 1)
    if workers <= 1 or len(charts) <= 1:
        raw = [_run_chart(job, field_tag, budget) for job in charts]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            raw = list(
                pool.map(_run_chart, charts, [field_tag] * len(charts), [budget] * len(charts))
            )
    graded = [_grade(rep, job, strict_radical) for rep, job in zip(raw, charts)]
    statuses = [c["status"] for c in graded]
    return {
        "n": n,
        "r": r,
        "field": field_tag,
        "timeout_secs": budget,
        "charts": graded,
        "all_passed": all(s == "ok" for s in statuses),
        "timeouts": sum(1 for s in statuses if s == "timeout"),
    }
