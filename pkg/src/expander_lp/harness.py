"""Experiment engine: sweep error weights, decode, build witnesses, report.

Reports are deterministic functions of (graph, config): error sets are
enumerated lexicographically or drawn from per-trial generators seeded with
``(seed, weight, trial)``, and JSON is written with sorted keys.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .code import (
    ExpansionCertificate,
    ExpansionParams,
    TannerGraph,
    build_graph,
    certify_expansion,
    codewords,
    dimension,
    generate_regular,
    min_distance,
    random_codeword,
    search_expander,
    word_from_support,
    xor_words,
)
from .decoders import DecodeStatus, flip_decode, lp_decode, nearest_codeword
from .witness import WitnessError, construct_witness, decoding_radius, fraction_str

log = logging.getLogger(__name__)

EXHAUSTIVE = "exhaustive"
ALL = "all"
MAX_EXHAUSTIVE_N = 16
MAX_FAILURE_SAMPLES = 20


def word_str(w: Sequence[int]) -> str:
    return "".join(map(str, w))


@dataclass(frozen=True)
class ExperimentConfig:
    epsilon: Fraction
    delta: Fraction
    weights: tuple[int, ...] | None = None  # None: 0 .. radius + 2
    trials: int | str = EXHAUSTIVE
    decoders: tuple[str, ...] = ("lp", "flip")
    witness_check: bool = True
    seed: int = 0
    codewords_per_set: int | str = 2  # or "all"
    allow_uncertified: bool = False
    cert_budget: int = 10**6
    flip_rounds: int = 1000
    source: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        object.__setattr__(self, "delta", Fraction(self.delta))
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(sorted(set(self.weights))))
        bad = set(self.decoders) - {"lp", "flip"}
        if bad:
            raise ValueError(f"unknown decoders {sorted(bad)}")
        if self.trials != EXHAUSTIVE and (not isinstance(self.trials, int) or self.trials < 1):
            raise ValueError("trials must be a positive count or 'exhaustive'")
        if self.codewords_per_set != ALL and (
                not isinstance(self.codewords_per_set, int) or self.codewords_per_set < 1):
            raise ValueError("codewords_per_set must be a positive count or 'all'")


@dataclass
class ReportRow:
    weight: int
    trials: int = 0
    witness_ok_count: int | None = None
    lp_success_count: int | None = None
    flip_success_count: int | None = None
    failure_count: int = 0
    failures: list[dict] = field(default_factory=list)  # first few only

    def as_dict(self) -> dict:
        return {
            "weight": self.weight,
            "trials": self.trials,
            "witness_ok_count": self.witness_ok_count,
            "lp_success_count": self.lp_success_count,
            "flip_success_count": self.flip_success_count,
            "failure_count": self.failure_count,
            "failures": self.failures,
        }


@dataclass
class Report:
    meta: dict
    rows: list[ReportRow]
    violations: list[dict] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "instance": self.meta,
            "rows": [r.as_dict() for r in self.rows],
            "theorem_violations": self.violations,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["weight", "trials", "witness_ok_count", "lp_success_count",
                         "flip_success_count", "failure_count"])
        for r in self.rows:
            writer.writerow([
                r.weight, r.trials,
                "" if r.witness_ok_count is None else r.witness_ok_count,
                "" if r.lp_success_count is None else r.lp_success_count,
                "" if r.flip_success_count is None else r.flip_success_count,
                r.failure_count,
            ])
        return buf.getvalue()


class TheoremViolation(Exception):
    """Decoding or witness construction failed inside the guaranteed radius."""

    def __init__(self, report: Report):
        first = report.violations[0]
        super().__init__(f"guarantee violated at U={first['U']} codeword={first['codeword']}")
        self.report = report


def error_sets(
    n: int, weight: int, trials: int | str, seed: int
) -> Iterator[tuple[int, tuple[int, ...], np.random.Generator]]:
    """Yield (index, U, rng) for one weight; the rng is private to that trial."""
    if trials == EXHAUSTIVE:
        for k, U in enumerate(itertools.combinations(range(n), weight)):
            yield k, U, np.random.default_rng([seed, weight, k])
        return
    for k in range(trials):
        rng = np.random.default_rng([seed, weight, k])
        U = tuple(sorted(int(i) for i in rng.choice(n, size=weight, replace=False)))
        yield k, U, rng


def run_experiment(
    g: TannerGraph,
    config: ExperimentConfig,
    certificate: ExpansionCertificate | None = None,
) -> Report:
    """Run the sweep and return a report.

    Raises :class:`TheoremViolation` (carrying the full report) when the
    instance is certified and some error set within the radius defeats the
    LP decoder or the witness construction.
    """
    if config.trials == EXHAUSTIVE and g.n > MAX_EXHAUSTIVE_N:
        raise ValueError(f"exhaustive mode needs n <= {MAX_EXHAUSTIVE_N}")
    params = ExpansionParams(config.epsilon, config.delta, g.c)
    if certificate is None:
        certificate = certify_expansion(g, params, config.cert_budget)
    if not certificate.certified and not config.allow_uncertified:
        raise ValueError(
            f"instance is {certificate.status.value} for epsilon={params.epsilon}, "
            f"delta={params.delta}; pass allow_uncertified to run anyway")
    radius_ok = params.epsilon > Fraction(2, 3) and params.size_bound(g.n) >= 1
    radius = decoding_radius(params, g.n) if radius_ok else None
    witness_on = config.witness_check and radius_ok and params.eps_c_integral
    weights = config.weights
    if weights is None:
        weights = tuple(range(0, (radius or 0) + 3))
    weights = tuple(w for w in weights if w <= g.n)

    meta = {
        "n": g.n,
        "m": g.m,
        "c": g.c,
        "max_check_degree": g.max_check_degree,
        "dimension": dimension(g),
        "epsilon": fraction_str(params.epsilon),
        "delta": fraction_str(params.delta),
        "floor_delta_n": params.size_bound(g.n),
        "radius": radius,
        "certificate": certificate.status.value,
        "certificate_checked": certificate.checked_budget,
        "seed": config.seed,
        "trials": config.trials,
        "codewords_per_set": config.codewords_per_set,
        "decoders": sorted(config.decoders),
        "witness_check": witness_on,
        "source": config.source,
    }
    every_codeword = list(codewords(g)) if config.codewords_per_set == ALL else []
    rows: list[ReportRow] = []
    violations: list[dict] = []
    guaranteed = certificate.certified and radius is not None
    for w in weights:
        row = ReportRow(
            weight=w,
            witness_ok_count=0 if witness_on else None,
            lp_success_count=0 if "lp" in config.decoders else None,
            flip_success_count=0 if "flip" in config.decoders else None,
        )
        for k, U, rng in error_sets(g.n, w, config.trials, config.seed):
            witness_stage = None
            if witness_on:
                try:
                    construct_witness(g, U, params, certificate=certificate.status)
                    witness_stage = "ok"
                except WitnessError as exc:
                    witness_stage = exc.stage
            zero = (0,) * g.n
            if config.codewords_per_set == ALL:
                sent_words = every_codeword
            elif config.trials == EXHAUSTIVE:
                extra = config.codewords_per_set - 1
                sent_words = [zero] + [random_codeword(g, rng) for _ in range(extra)]
            else:
                sent_words = [zero] if k == 0 else [random_codeword(g, rng)]
            for sent in sent_words:
                y = xor_words(sent, word_from_support(g.n, U))
                row.trials += 1
                outcome = {"U": list(U), "codeword": word_str(sent)}
                failed = False
                if witness_on:
                    outcome["witness"] = witness_stage
                    if witness_stage == "ok":
                        row.witness_ok_count += 1
                    else:
                        failed = True
                if "lp" in config.decoders:
                    res = lp_decode(g, y)
                    ok = res.decoded and res.word == sent
                    outcome["lp"] = "ok" if ok else (
                        "wrong_codeword" if res.decoded else res.status.value)
                    if ok:
                        row.lp_success_count += 1
                    else:
                        failed = True
                if "flip" in config.decoders:
                    res = flip_decode(g, y, config.flip_rounds)
                    ok = res.decoded and res.word == sent
                    outcome["flip"] = "ok" if ok else (
                        "wrong_codeword" if res.decoded else res.status.value)
                    if ok:
                        row.flip_success_count += 1
                    else:
                        failed = True
                if failed:
                    row.failure_count += 1
                    if len(row.failures) < MAX_FAILURE_SAMPLES:
                        row.failures.append(outcome)
                if guaranteed and w <= radius and (
                    outcome.get("lp", "ok") != "ok" or outcome.get("witness", "ok") != "ok"
                ):
                    violations.append(outcome)
        log.info("weight %d: %d trials", w, row.trials)
        rows.append(row)
    report = Report(meta, rows, violations)
    if violations:
        raise TheoremViolation(report)
    return report


def generate_certified(
    n: int,
    m: int,
    c: int,
    epsilon: Fraction,
    delta: Fraction,
    seed: int,
    *,
    attempts: int = 10**4,
    budget: int = 10**6,
    method: str = "sample",
    search_steps: int = 20_000,
) -> tuple[TannerGraph, ExpansionCertificate, int]:
    """Find a certified instance, trying seeds ``seed, seed+1, ...``.

    ``method="sample"`` rejection-samples :func:`generate_regular`;
    ``method="search"`` runs :func:`search_expander` from each seed. Either
    way the result is certified by exhaustive enumeration. Returns the graph,
    its certificate and the seed that produced it.
    """
    params = ExpansionParams(epsilon, delta, c)
    if not params.eps_c_integral:
        raise ValueError(f"epsilon*c = {params.eps_c} must be an integer")
    if method not in ("sample", "search"):
        raise ValueError(f"unknown method {method!r}")
    for k in range(attempts):
        if method == "sample":
            g = generate_regular(n, m, c, seed + k)
        else:
            g = search_expander(n, m, c, params, seed + k, max_steps=search_steps)
            if g is None:
                continue
        cert = certify_expansion(g, params, budget)
        if cert.certified:
            return g, cert, seed + k
    raise RuntimeError(
        f"no certified instance in {attempts} attempts; try a smaller delta or epsilon")


def counterexample_graph() -> TannerGraph:
    """n=4, c=2: variables 0,1 share checks 0,1 and variables 2,3 share checks 2,3."""
    edges = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3)]
    return build_graph(4, 4, edges)


def run_counterexample() -> dict:
    """Check the distance-2 regression instance at expansion 1/2."""
    g = counterexample_graph()
    params = ExpansionParams(Fraction(1, 2), Fraction(1, 2), 2)
    cert = certify_expansion(g, params)
    y = word_from_support(g.n, [0])
    res = lp_decode(g, y)
    nearest = nearest_codeword(g, y)
    recovered = res.status is DecodeStatus.DECODED and res.word == (0,) * g.n
    return {
        "n": g.n,
        "m": g.m,
        "c": g.c,
        "epsilon": fraction_str(params.epsilon),
        "delta": fraction_str(params.delta),
        "certificate": cert.status.value,
        "min_distance": min_distance(g, g.n),
        "received": word_str(y),
        "lp_status": res.status.value,
        "lp_value": None if res.lp_value is None else fraction_str(res.lp_value),
        "nearest_codeword": word_str(nearest),
        "unique_recovery": recovered,
    }
