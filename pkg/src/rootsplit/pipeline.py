"""Classification pipelines: single pairs, batch runs, caching.

A pair (g, h) runs through: build, normalize (skipped for G2), isotropy
weights, symmetry test, Wolf recognition, splitting search and case
analysis; a verdict is then assigned with precedence

  not_eligible > no_splitting > wolf_space > so7_u3 > s2xs2_type
  > symmetric_candidate

Weight-level positives that the classification excludes only by non-weight
arguments are surfaced honestly as symmetric_candidate.
"""

from __future__ import annotations

import itertools
import json
import os
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from . import catalog
from .catalog import (
    CartanLabel,
    G2Component,
    build_sum,
    identify_type,
    normalize,
    parse_label_sum,
)
from .linalg import Vector, parse_rational
from .rootcore import RootsplitError, RootSystem
from .splitting import (
    CaseTag,
    ConstraintReport,
    EmptyWeights,
    SplittingCertificate,
    case_analysis,
    check_constraints,
    find_splittings,
)
from .subalgebra import (
    ClosedSubsystem,
    IsotropyWeights,
    closed_subsystem,
    enumerate_closed_subsystems,
    is_symmetric_pair,
    is_wolf_pair,
    isotropy_weights,
    wolf_subsystem,
)

SCHEMA_VERSION = 1

VERDICTS = (
    "not_eligible",
    "no_splitting",
    "wolf_space",
    "s2xs2_type",
    "so7_u3",
    "symmetric_candidate",
)


class ParseError(RootsplitError):
    """Unparseable g or h specification string."""


class InvariantViolation(RootsplitError):
    """A report is inconsistent with its own invariants (exit code 2)."""


@dataclass(frozen=True)
class PairReport:
    g_label: str
    h_description: str
    dim_M: int
    quaternionic_n: Fraction
    eligible: bool
    symmetric: bool
    is_wolf: bool
    certificates: tuple[SplittingCertificate, ...]
    verdict: str
    cases: tuple[CaseTag, ...] = ()
    constraints: tuple[ConstraintReport, ...] = ()
    constraints_checked: bool = False


@dataclass(frozen=True)
class ClassificationReport:
    max_rank: int
    pairs: tuple[PairReport, ...]
    systems_visited: int
    subsystems_enumerated: int
    elapsed_seconds: float = field(compare=False, default=0.0)


def check_report_invariants(report: PairReport) -> None:
    """Raise InvariantViolation if verdict and fields disagree."""
    v = report.verdict
    if v not in VERDICTS:
        raise InvariantViolation(f"unknown verdict {v}")
    if v == "no_splitting" and report.certificates:
        raise InvariantViolation("no_splitting with certificates present")
    if v == "wolf_space" and not (report.is_wolf and report.certificates):
        raise InvariantViolation("wolf_space requires is_wolf and certificates")
    if v == "so7_u3":
        if report.symmetric or not report.certificates:
            raise InvariantViolation("so7_u3 must be non-symmetric with certificates")
        if not any(t.tag == "case_d3" for t in report.cases):
            raise InvariantViolation("so7_u3 requires a case_d3 tag")
    if v == "symmetric_candidate" and report.is_wolf:
        raise InvariantViolation("symmetric_candidate cannot be a Wolf pair")


def parse_g_spec(g_spec: str) -> tuple[str, RootSystem]:
    """Build g from a direct-sum label string such as 'B3' or 'A1+A1'."""
    try:
        labels = parse_label_sum(g_spec)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    labels.sort(key=str)
    return "+".join(str(l) for l in labels), build_sum(labels)


def _parse_vector(entry) -> Vector:
    return tuple(parse_rational(str(c)) for c in entry)


def parse_h_spec(parent: RootSystem, h_spec: str) -> ClosedSubsystem:
    """Resolve an h specification against g.

    Grammar: 'torus' (the empty subsystem, h = maximal torus), 'wolf'
    (highest-root normalizer), 'TYPE#k' (k-th Weyl class with that
    component type, e.g. 'A2#0'), or a JSON list of root vectors with
    rationals as 'p/q' strings.
    """
    h_spec = h_spec.strip()
    if h_spec in ("torus", ""):
        return closed_subsystem(parent, ())
    if h_spec == "wolf":
        return wolf_subsystem(parent)
    if h_spec.startswith("["):
        try:
            data = json.loads(h_spec)
            roots = [_parse_vector(row) for row in data]
        except (ValueError, TypeError) as exc:
            raise ParseError(f"bad root list: {exc}") from exc
        return closed_subsystem(parent, roots)
    if "#" in h_spec:
        type_part, _, idx_part = h_spec.rpartition("#")
        if not idx_part.isdigit():
            raise ParseError(f"bad subsystem index in {h_spec!r}")
        wanted = _type_key(type_part)
        matches = [
            h for h in enumerate_closed_subsystems(parent, dedup=True)
            if h.roots and _type_key_of(h) == wanted
        ]
        k = int(idx_part)
        if k >= len(matches):
            raise ParseError(
                f"no subsystem {h_spec!r}: only {len(matches)} classes of type {type_part}"
            )
        return matches[k]
    raise ParseError(f"cannot parse subsystem spec {h_spec!r}")


def _type_key(text: str) -> tuple[str, ...]:
    try:
        return tuple(sorted(str(l) for l in parse_label_sum(text)))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _type_key_of(h: ClosedSubsystem) -> tuple[str, ...]:
    from .rootcore import make_root_system

    sub = make_root_system(h.roots, validate=False)
    return tuple(sorted(str(l) for l in identify_type(sub)))


def describe_subsystem(h: ClosedSubsystem) -> str:
    """Deterministic human-readable description: component types plus the
    central torus rank, e.g. 'A1+A1+T1' or 'torus(T3)'."""
    if not h.roots:
        return f"torus(T{h.torus_corank})"
    parts = list(_type_key_of(h))
    if h.torus_corank:
        parts.append(f"T{h.torus_corank}")
    return "+".join(parts)


def classify_subsystem(
    g_label: str,
    parent: RootSystem,
    h: ClosedSubsystem,
    h_description: str | None = None,
) -> PairReport:
    """Full pipeline for one equal-rank pair."""
    w = isotropy_weights(parent, h)
    if w.dim_M == 0:
        raise EmptyWeights("h = g: the quotient is a point")
    if h_description is None:
        h_description = describe_subsystem(h)

    eligible = w.dim_M % 4 == 0
    symmetric = is_symmetric_pair(w)
    g_types = identify_type(parent)
    irreducible = len(g_types) == 1

    wolf = False
    if irreducible:
        if set(h.roots) == set(wolf_subsystem(parent).roots):
            wolf = True
        elif parent.rank <= catalog.WEYL_RANK_CAP:
            wolf = is_wolf_pair(parent, h)

    certificates: tuple[SplittingCertificate, ...] = ()
    cases: tuple[CaseTag, ...] = ()
    constraints: tuple[ConstraintReport, ...] = ()
    constraints_checked = False
    if eligible:
        certificates = tuple(find_splittings(w))
        cases = tuple(case_analysis(w, c) for c in certificates)
        if certificates and irreducible:
            try:
                normalized = normalize(parent)
            except G2Component:
                normalized = None  # G2 handled raw; constraints skipped
            if normalized is not None:
                constraints = tuple(
                    check_constraints(normalized, c) for c in certificates
                )
                constraints_checked = True

    verdict = _assign_verdict(
        g_types, eligible, symmetric, wolf, certificates, cases, h
    )
    report = PairReport(
        g_label,
        h_description,
        w.dim_M,
        w.quaternionic_n,
        eligible,
        symmetric,
        wolf,
        certificates,
        verdict,
        cases,
        constraints,
        constraints_checked,
    )
    check_report_invariants(report)
    return report


def _assign_verdict(g_types, eligible, symmetric, wolf, certificates, cases, h):
    if not eligible:
        return "not_eligible"
    if not certificates:
        return "no_splitting"
    if wolf:
        return "wolf_space"
    type_strs = [str(t) for t in g_types]
    if len(g_types) == 1:
        if (
            not symmetric
            and type_strs == ["B3"]
            and any(t.tag == "case_d3" for t in cases)
        ):
            return "so7_u3"
        if symmetric:
            return "symmetric_candidate"
        raise InvariantViolation(
            "non-symmetric splitting on an irreducible pair outside the "
            "classification; weights falsify an internal invariant"
        )
    # reducible g: only (A1+A1, torus) is a confirmed product positive
    if type_strs == ["A1", "A1"] and not h.roots:
        return "s2xs2_type"
    return "symmetric_candidate"


def classify_pair(g_spec: str, h_spec: str) -> PairReport:
    """Classify one pair given CLI spec strings."""
    g_label, parent = parse_g_spec(g_spec)
    h = parse_h_spec(parent, h_spec)
    return classify_subsystem(g_label, parent, h)


def _product_labels(max_rank: int, series) -> list[list[CartanLabel]]:
    simples = catalog.simple_labels_up_to(max_rank - 1, series)
    out = []
    for size in range(2, max_rank + 1):
        for combo in itertools.combinations_with_replacement(simples, size):
            if sum(l.rank for l in combo) <= max_rank:
                out.append(sorted(combo, key=str))
    return out


def classify_all(
    max_rank: int,
    series: Iterable[str] | None = None,
    include_products: bool = False,
    include_ineligible: bool = False,
    jobs: int = 1,
    cache_dir: str | None = None,
) -> ClassificationReport:
    """Classify every equal-rank pair over the catalog up to max_rank.

    Simple g by default; products of total rank <= max_rank when
    requested. Subsystems are enumerated up to Weyl equivalence, so the
    rank cap of the Weyl machinery applies.
    """
    if max_rank > catalog.WEYL_RANK_CAP:
        raise ValueError(f"classify_all is capped at rank {catalog.WEYL_RANK_CAP}")
    started = time.monotonic()
    groups: list[tuple[str, RootSystem]] = []
    for lab in catalog.simple_labels_up_to(max_rank, series):
        groups.append((str(lab), catalog.build(lab)))
    if include_products:
        for combo in _product_labels(max_rank, series):
            groups.append(("+".join(str(l) for l in combo), build_sum(combo)))

    tasks = []
    n_subsystems = 0
    for g_label, parent in groups:
        subsystems = _enumerate_cached(g_label, parent, cache_dir)
        n_subsystems += len(subsystems)
        for h in subsystems:
            w_size = len(parent.roots) - len(h.roots)
            if w_size == 0:
                continue
            if not include_ineligible and w_size % 4 != 0:
                continue
            tasks.append((g_label, parent, h))

    def run(task):
        g_label, parent, h = task
        return classify_subsystem(g_label, parent, h)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            pairs = list(pool.map(run, tasks))
    else:
        pairs = [run(t) for t in tasks]

    pairs.sort(key=lambda p: (p.g_label, p.h_description, p.dim_M))
    return ClassificationReport(
        max_rank,
        tuple(pairs),
        len(groups),
        n_subsystems,
        time.monotonic() - started,
    )


def _enumerate_cached(g_label, parent, cache_dir) -> list[ClosedSubsystem]:
    if cache_dir is None:
        return enumerate_closed_subsystems(parent, dedup=True)
    path = Path(cache_dir) / f"subsystems_v{SCHEMA_VERSION}_{g_label}_dedup.json"
    if path.exists():
        data = json.loads(path.read_text())
        return [
            closed_subsystem(parent, [_parse_vector(r) for r in entry])
            for entry in data
        ]
    subsystems = enumerate_closed_subsystems(parent, dedup=True)
    payload = [
        [[str(c) for c in root] for root in h.roots] for h in subsystems
    ]
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(payload, fh)
    os.replace(tmp, path)  # atomic: last writer wins
    return subsystems
