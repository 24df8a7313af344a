"""Exhaustive enumeration of splitting types, classification tables and the verification sweep."""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Iterable, Iterator, Optional, Sequence

from . import classify as C
from . import core
from . import count as _count
from .core import BNDatum, SplittingType


@dataclass(frozen=True)
class SweepDomain:
    k_min: int = 2
    k_max: int = 5
    part_min: int = -5
    part_max: int = 5
    genus_slack: int = 4
    # None means every admissible p in 0..k-1
    p_values: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.k_min < 1 or self.k_max < self.k_min:
            raise ValueError(f"bad rank bounds {self.k_min}..{self.k_max}")
        if self.part_min > self.part_max:
            raise ValueError(f"bad part bounds {self.part_min}..{self.part_max}")
        if self.genus_slack < 0:
            raise ValueError("genus_slack must be nonnegative")

    def ps(self, k: int) -> list[int]:
        if self.p_values is None:
            return list(range(k))
        return [p for p in self.p_values if 0 <= p <= k - 1]

    def splitting_types(self) -> Iterator[SplittingType]:
        for k in range(self.k_min, self.k_max + 1):
            yield from enumerate_splitting_types(k, self.part_min, self.part_max)

    def data(self) -> Iterator[BNDatum]:
        """Every valid datum: ``g`` runs from ``u(e)`` to ``u(e) + genus_slack``."""
        for e in self.splitting_types():
            base = core.u(e)
            for g in range(base, base + self.genus_slack + 1):
                yield BNDatum(g, e)


DEFAULT_DOMAIN = SweepDomain()


def enumerate_splitting_types(
    k: int, part_min: int, part_max: int, deg_filter: Optional[int] = None
) -> Iterator[SplittingType]:
    """Nondecreasing ``k``-tuples with entries in ``[part_min, part_max]``, lexicographically."""
    values = range(part_min, part_max + 1)
    for parts in itertools.combinations_with_replacement(values, k):
        if deg_filter is None or sum(parts) == deg_filter:
            yield SplittingType(parts)


def multiset_count(k: int, part_min: int, part_max: int) -> int:
    return comb(part_max - part_min + k, k)


# -- classification table ----------------------------------------------------


@dataclass(frozen=True)
class TableRow:
    g: int
    e: tuple[int, ...]
    invariants: dict
    bpf: C.Decision
    birational_va: C.Decision
    va: C.Decision
    # per admissible p: (p, birational relative decision, relative decision, N or None)
    per_p: tuple

    def to_dict(self) -> dict:
        return {
            "input": {"g": self.g, "e": list(self.e)},
            "invariants": dict(self.invariants),
            "decisions": {
                "bpf": {**self.bpf.to_dict(), "pullback_twist": self.bpf.pullback_twist},
                "birational_va": self.birational_va.to_dict(),
                "va": self.va.to_dict(),
                "birational_rel_pva": [{"p": p, **b.to_dict()} for p, b, _, _ in self.per_p],
                "rel_pva": [{"p": p, **r.to_dict()} for p, _, r, _ in self.per_p],
                "N": [{"p": p, "N": n} for p, _, _, n in self.per_p],
            },
        }


def table_row(d: BNDatum, ps: Optional[Sequence[int]] = None) -> TableRow:
    if ps is None:
        ps = range(d.k)
    nn = core.nonneg_parts(d.e)
    per_p = []
    for p in ps:
        n = _count.dependent_divisor_count(d, p).N if nn == p + 1 else None
        per_p.append((p, C.birationally_rel_pva(d, p), C.rel_pva(d, p), n))
    return TableRow(
        g=d.g,
        e=d.e.parts,
        invariants=core.invariants(d),
        bpf=C.basepoint_free(d),
        birational_va=C.birationally_va(d),
        va=C.very_ample(d),
        per_p=tuple(per_p),
    )


def classification_table(domain: SweepDomain) -> Iterator[TableRow]:
    if domain.k_min < 2:
        raise ValueError("classifier sweeps need k_min >= 2")
    for d in domain.data():
        yield table_row(d, domain.ps(d.k))


def csv_header(k_max: int, ps: Iterable[int]) -> list[str]:
    cols = ["g"] + [f"e{i}" for i in range(1, k_max + 1)]
    cols += ["u", "rho", "h0", "r", "degL", "bpf", "bpf_case", "birat_va", "va", "va_case"]
    for p in ps:
        cols += [f"birat_rel_p{p}", f"rel_p{p}", f"rel_p{p}_case", f"N_p{p}"]
    return cols


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "1" if x else "0"
    return str(x)


def csv_cells(row: TableRow, k_max: int, ps: Iterable[int]) -> list[str]:
    """Cells in :func:`csv_header` order; missing parts and out-of-domain counts are empty."""
    inv = row.invariants
    e = list(row.e) + [None] * (k_max - len(row.e))
    cells = [row.g, *e, inv["u"], inv["rho"], inv["h0"], inv["r"], inv["degL"]]
    cells += [row.bpf.value, row.bpf.case, row.birational_va.value, row.va.value, row.va.case]
    by_p = {p: rest for p, *rest in row.per_p}
    for p in ps:
        if p in by_p:
            b, rel, n = by_p[p]
            cells += [b.value, rel.value, rel.case, n]
        else:
            cells += [None] * 4
    return [_cell(c) for c in cells]


# -- verification sweep ------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    property: str
    g: int
    e: tuple[int, ...]
    p: Optional[int]
    observed: str
    expected: str


def _violation_key(v: Violation):
    return (v.property, v.g, v.e, -1 if v.p is None else v.p, v.observed, v.expected)


@dataclass
class ViolationReport:
    violations: list[Violation] = field(default_factory=list)
    # property id -> number of instances at which it was evaluated
    checked: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "ViolationReport") -> "ViolationReport":
        merged = ViolationReport(
            sorted(self.violations + other.violations, key=_violation_key), dict(self.checked)
        )
        for key, n in other.checked.items():
            merged.checked[key] = merged.checked.get(key, 0) + n
        return merged

    def by_property(self, prop: str) -> list[Violation]:
        return [v for v in self.violations if v.property == prop]

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checked": dict(sorted(self.checked.items())),
            "violations": [
                {
                    "property": v.property,
                    "g": v.g,
                    "e": list(v.e),
                    "p": v.p,
                    "observed": v.observed,
                    "expected": v.expected,
                }
                for v in self.violations
            ],
        }


class _Checker:
    def __init__(self, selected: Optional[frozenset]):
        self.selected = selected
        self.report = ViolationReport()

    def wants(self, prop: str) -> bool:
        return self.selected is None or prop in self.selected

    def check(self, prop, holds, g, e, p=None, observed="", expected=""):
        self.report.checked[prop] = self.report.checked.get(prop, 0) + 1
        if not holds:
            self.report.violations.append(
                Violation(prop, g, tuple(e), p, str(observed), str(expected))
            )


def _plane_pattern_data(e: tuple[int, ...]):
    """Genus for which ``e`` is one of the degenerate plane-curve patterns."""
    k = len(e)
    if k >= 3 and e == (-1,) * (k - 3) + (0, 0, 0):
        return 1
    if k >= 4 and e == (-2,) + (-1,) * (k - 4) + (0, 0, 0):
        return 3
    return None


def _check_splitting_type(ck: _Checker, e: SplittingType, domain: SweepDomain):
    parts = e.parts
    k = e.k
    ue = core.u(e)
    if ck.wants("core.u_twist_invariant"):
        bad = [n for n in range(-3, 4) if core.u(core.twist(e, n)) != ue]
        ck.check("core.u_twist_invariant", not bad, ue, parts, observed=bad, expected="[]")
    lo, hi = -parts[-1] - 2, -parts[0] + 1
    profile = {n: core.h0_profile(e, n) for n in range(lo, hi + 1)}
    if ck.wants("core.h0_profile_shape"):
        vals = [profile[n] for n in range(lo, hi + 1)]
        monotone = all(a <= b for a, b in zip(vals, vals[1:]))
        tail = all(
            core.h0_profile(e, n) == k * (n + 1) + core.degree(e) for n in range(hi - 1, hi + 3)
        )
        ck.check("core.h0_profile_shape", monotone and tail, ue, parts, observed=vals)
    if ck.wants("core.profile_round_trip"):
        back = core.from_h0_profile(profile)
        ck.check("core.profile_round_trip", back == e, ue, parts, observed=back, expected=e)


def _check_datum(ck: _Checker, d: BNDatum, domain: SweepDomain):
    g, e = d.g, d.e
    parts = e.parts
    k = e.k
    rho = core.rho_prime(g, e)
    nn = core.nonneg_parts(e)

    if ck.wants("core.rho_equals_g_iff_balanced"):
        ck.check(
            "core.rho_equals_g_iff_balanced",
            (rho == g) == core.is_balanced(e),
            g, parts, observed=rho, expected=f"balanced={core.is_balanced(e)}",
        )
    plane_g = _plane_pattern_data(parts)
    if plane_g is not None and plane_g == g and ck.wants("core.plane_curve_degree"):
        deg_L = core.line_bundle_degree(d)
        ck.check(
            "core.plane_curve_degree",
            deg_L == (3 if g == 1 else 4) and core.plane_curve_genus(deg_L) == g,
            g, parts, observed=deg_L,
        )

    if k < 2:
        return

    bpf = C.basepoint_free(d)
    va = C.very_ample(d)
    bva = C.birationally_va(d)

    if ck.wants("classify.va_implies_bpf"):
        ck.check("classify.va_implies_bpf", not va.value or bpf.value, g, parts,
                 observed=f"va={va.case}, bpf={bpf.value}")
    if ck.wants("classify.va_implies_rel1"):
        rel1 = C.rel_pva(d, 1)
        ck.check("classify.va_implies_rel1", not va.value or rel1.value, g, parts, 1,
                 observed=f"va={va.case}, rel1={rel1.value}")
    if ck.wants("classify.rel0_equals_bpf"):
        rel0 = C.rel_pva(d, 0)
        ck.check("classify.rel0_equals_bpf", rel0.value == bpf.value, g, parts, 0,
                 observed=rel0.value, expected=bpf.value)
    if ck.wants("classify.sufficient_implies_va"):
        suff = C.pva_sufficient(d, 1)
        ck.check("classify.sufficient_implies_va", not suff or va.value, g, parts, 1,
                 observed=f"sufficient={suff}, va={va.value}")
    if ck.wants("classify.birat_sufficient_implies_birat_va"):
        suff = C.birat_pva_sufficient(d, 1)
        ck.check("classify.birat_sufficient_implies_birat_va", not suff or bva.value, g, parts, 1,
                 observed=f"sufficient={suff}, birat_va={bva.value}")
    if ck.wants("classify.conjecture_p1_equals_va1"):
        conj = C.conjectured_pva(d, 1)
        va1 = C.very_ample_clauses(d)[0]
        ck.check("classify.conjecture_p1_equals_va1", conj == va1, g, parts, 1,
                 observed=conj, expected=va1)
    if ck.wants("classify.clause_order_independent"):
        consistent = True
        for dec, clauses, labels in (
            (va, C.very_ample_clauses(d), C.VA_CASES),
            (bva, C.birationally_va_clauses(d), C.BIRAT_VA_CASES),
        ):
            fired = [lab for lab, c in zip(labels, clauses) if c]
            consistent &= dec.value == any(reversed(clauses)) == bool(fired)
            consistent &= dec.case == (fired[0] if fired else None)
        ck.check("classify.clause_order_independent", consistent, g, parts)

    for p in domain.ps(k):
        rel = C.rel_pva(d, p)
        birat = C.birationally_rel_pva(d, p)
        if ck.wants("classify.rel_implies_birational"):
            ck.check("classify.rel_implies_birational", not rel.value or birat.value, g, parts, p,
                     observed=f"rel={rel.case}, birat={birat.value}")
        if ck.wants("classify.sufficient_implies_rel"):
            suff = C.pva_sufficient(d, p)
            ck.check("classify.sufficient_implies_rel", not suff or rel.value, g, parts, p,
                     observed=f"sufficient={suff}, rel={rel.value}")
        if ck.wants("classify.clause_order_independent"):
            clauses = C.rel_pva_clauses(d, p)
            fired = [lab for lab, c in zip(C.REL_CASES, clauses) if c]
            ok = rel.value == any(reversed(clauses)) and rel.case == (fired[0] if fired else None)
            ck.check("classify.clause_order_independent", ok, g, parts, p)

        # raw formula, no part-count precondition
        raw = _count.closed_form_count(g, parts, p)
        if p == k - 1 and ck.wants("count.top_degree_zero"):
            ck.check("count.top_degree_zero", raw == 0, g, parts, p, observed=raw, expected=0)
        if p == 0 and ck.wants("count.degZ_p0_zero"):
            z = _count.deg_Z(g, k, 0)
            ck.check("count.degZ_p0_zero", z == 0, g, parts, p, observed=z, expected=0)
        bracket = _count.assembled_bracket(g, parts, p)
        if ck.wants("count.integrality"):
            ck.check("count.integrality", bracket % factorial(p + 1) == 0, g, parts, p,
                     observed=bracket, expected=f"multiple of {factorial(p + 1)}")

        exact = nn == p + 1
        if ck.wants("count.rel_pva_via_count"):
            n_zero = exact and raw == 0
            derived = nn >= p + 1 and (nn >= p + 2 or n_zero)
            ck.check("count.rel_pva_via_count", rel.value == derived, g, parts, p,
                     observed=rel.value, expected=derived)
        if not exact:
            continue

        assembled = bracket // factorial(p + 1)
        if ck.wants("count.oracle_identity"):
            ck.check("count.oracle_identity", raw == assembled, g, parts, p,
                     observed=raw, expected=assembled)
        if ck.wants("count.nonnegative"):
            ck.check("count.nonnegative", raw >= 0, g, parts, p, observed=raw, expected=">= 0")
        clauses = C.rel_pva_clauses(d, p)
        if ck.wants("count.edge_case_equivalence"):
            expected = g == 0 or any(clauses[1:4])
            ck.check("count.edge_case_equivalence", (raw == 0) == expected, g, parts, p,
                     observed=f"N={raw}", expected=f"N==0 is {expected}")
        if ck.wants("count.last_inequality") and rho == 0 and g > 0 and raw == 0:
            ck.check("count.last_inequality", (p + 1) * (k - 1 - p) <= k - 1, g, parts, p)

    if ck.wants("enum.rows_pure"):
        ps = domain.ps(k)
        try:
            same = table_row(d, ps) == table_row(BNDatum(g, SplittingType(parts)), ps)
        except core.HBNError as exc:
            ck.check("enum.rows_pure", False, g, parts, observed=f"{type(exc).__name__}: {exc}")
        else:
            ck.check("enum.rows_pure", same, g, parts)


PROPERTIES = (
    "core.u_twist_invariant",
    "core.h0_profile_shape",
    "core.profile_round_trip",
    "core.rho_equals_g_iff_balanced",
    "core.plane_curve_degree",
    "classify.rel_implies_birational",
    "classify.va_implies_rel1",
    "classify.va_implies_bpf",
    "classify.rel0_equals_bpf",
    "classify.sufficient_implies_va",
    "classify.sufficient_implies_rel",
    "classify.birat_sufficient_implies_birat_va",
    "classify.conjecture_p1_equals_va1",
    "classify.clause_order_independent",
    "count.oracle_identity",
    "count.edge_case_equivalence",
    "count.rel_pva_via_count",
    "count.nonnegative",
    "count.top_degree_zero",
    "count.degZ_p0_zero",
    "count.integrality",
    "count.last_inequality",
    "enum.complete",
    "enum.rows_pure",
    "sweep.no_errors",
)


def _sweep_rank(args) -> ViolationReport:
    domain, k, selected = args
    ck = _Checker(selected)
    if ck.wants("enum.complete"):
        types = list(enumerate_splitting_types(k, domain.part_min, domain.part_max))
        expected = multiset_count(k, domain.part_min, domain.part_max)
        distinct = len(set(types)) == len(types)
        ordered = all(a.parts < b.parts for a, b in zip(types, types[1:]))
        ck.check("enum.complete", len(types) == expected and distinct and ordered,
                 -1, (), observed=len(types), expected=expected)
    for e in enumerate_splitting_types(k, domain.part_min, domain.part_max):
        _check_splitting_type(ck, e, domain)
        base = core.u(e)
        for g in range(base, base + domain.genus_slack + 1):
            try:
                _check_datum(ck, BNDatum(g, e), domain)
            except core.HBNError as exc:
                # only reachable when a checked routine is broken
                ck.check("sweep.no_errors", False, g, e.parts,
                         observed=f"{type(exc).__name__}: {exc}")
    return ck.report


def default_jobs() -> int:
    env = os.environ.get("HBN_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def verify_sweep(
    domain: SweepDomain = DEFAULT_DOMAIN,
    properties: Optional[Iterable[str]] = None,
    jobs: Optional[int] = None,
) -> ViolationReport:
    """Evaluate the selected properties (all by default) at every point of the domain.

    Violations are returned as data.  Work is split by rank; with ``jobs > 1``
    the ranks run in worker processes and the per-rank reports are merged.
    """
    selected = None
    if properties is not None:
        selected = frozenset(properties)
        unknown = selected - set(PROPERTIES)
        if unknown:
            raise ValueError(f"unknown properties: {sorted(unknown)}")
    if jobs is None:
        jobs = default_jobs()
    tasks = [(domain, k, selected) for k in range(domain.k_min, domain.k_max + 1)]
    jobs = min(jobs, len(tasks))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_sweep_rank, tasks))
    else:
        parts = [_sweep_rank(t) for t in tasks]
    report = ViolationReport()
    for part in parts:
        report = report.merge(part)
    return report
