import itertools

import pytest

from hbn import count as N
from hbn.core import BNDatum, SplittingType
from hbn.enumeration import (
    PROPERTIES,
    SweepDomain,
    classification_table,
    csv_cells,
    csv_header,
    enumerate_splitting_types,
    multiset_count,
    table_row,
    verify_sweep,
)

SMALL = SweepDomain(k_min=2, k_max=3, part_min=-3, part_max=2, genus_slack=2)


def brute_force_types(k, lo, hi, deg=None):
    found = {tuple(sorted(t)) for t in itertools.product(range(lo, hi + 1), repeat=k)}
    return sorted(t for t in found if deg is None or sum(t) == deg)


def test_enumeration_examples():
    assert [e.parts for e in enumerate_splitting_types(2, -1, 2, 1)] == [(-1, 2), (0, 1)]
    assert len(list(enumerate_splitting_types(3, -1, 1))) == 10
    assert [e.parts for e in enumerate_splitting_types(1, 0, 0)] == [(0,)]


@pytest.mark.parametrize("k,lo,hi,deg", [(1, -2, 2, None), (3, -2, 1, None), (4, -1, 2, 0), (2, 0, 0, 5)])
def test_enumeration_matches_brute_force(k, lo, hi, deg):
    got = [e.parts for e in enumerate_splitting_types(k, lo, hi, deg)]
    assert got == brute_force_types(k, lo, hi, deg)
    if deg is None:
        assert len(got) == multiset_count(k, lo, hi)


def test_enumeration_is_lazy():
    stream = enumerate_splitting_types(12, -50, 50)
    assert next(stream).parts == (-50,) * 12


def test_domain_validation():
    with pytest.raises(ValueError):
        SweepDomain(k_min=3, k_max=2)
    with pytest.raises(ValueError):
        SweepDomain(part_min=1, part_max=0)
    with pytest.raises(ValueError):
        list(classification_table(SweepDomain(k_min=1, k_max=2)))


def test_table_contains_paper_rows():
    rows = {(r.g, r.e): r for r in classification_table(SweepDomain(3, 3, -2, 1, 0))}
    row = rows[(3, (-2, 0, 1))]
    assert row.va.value and row.va.case.value == "VA.Case7"

    rows = {(r.g, r.e): r for r in classification_table(SweepDomain(2, 2, 0, 3, 2))}
    assert rows[(2, (0, 2))].va.case.value == "VA.Case4"


def test_table_rows_are_valid_and_reproducible():
    rows = list(classification_table(SMALL))
    assert all(r.invariants["rho"] >= 0 for r in rows)
    again = list(classification_table(SMALL))
    assert rows == again
    for r in rows[:50]:
        assert table_row(BNDatum(r.g, SplittingType(r.e))) == r


def test_csv_layout():
    ps = range(3)
    header = csv_header(3, ps)
    assert header[:4] == ["g", "e1", "e2", "e3"]
    assert header[4:14] == ["u", "rho", "h0", "r", "degL", "bpf", "bpf_case", "birat_va", "va", "va_case"]
    row = table_row(BNDatum(5, SplittingType((-3, 0))))
    cells = csv_cells(row, 3, ps)
    assert len(cells) == len(header)
    # rank 2 row padded on e3, p = 2 absent
    assert cells[3] == "" and cells[-4:] == ["", "", "", ""]


def test_sweep_clean_on_small_domain():
    report = verify_sweep(SMALL, jobs=1)
    assert report.ok, report.violations[:5]
    assert set(report.checked) <= set(PROPERTIES)
    assert report.checked["count.oracle_identity"] > 0


def test_sweep_parallel_matches_serial():
    serial = verify_sweep(SMALL, jobs=1)
    parallel = verify_sweep(SMALL, jobs=2)
    assert serial == parallel


def test_property_selection():
    report = verify_sweep(SMALL, ["count.oracle_identity"], jobs=1)
    assert set(report.checked) == {"count.oracle_identity"}
    with pytest.raises(ValueError):
        verify_sweep(SMALL, ["no.such.property"], jobs=1)


def test_sweep_catches_mutated_binomial(monkeypatch):
    def off_by_one(g, parts, p):
        k = len(parts)
        return (
            N.binom(k - 1, p) * (sum(parts) + g + k - 1)
            - N.binom(k, p + 1) * sum(parts[k - p - 1 :])
            - (g - 1 + k) * N.binom(k - 2, p)
        )

    monkeypatch.setattr(N, "closed_form_count", off_by_one)
    report = verify_sweep(SMALL, jobs=1)
    assert not report.ok
    assert report.by_property("count.oracle_identity")


def test_violations_are_order_independent(monkeypatch):
    monkeypatch.setattr(N, "closed_form_count", lambda g, parts, p: 1)
    forward = verify_sweep(SMALL, jobs=1)
    swapped = verify_sweep(SMALL, jobs=1).merge(verify_sweep(SweepDomain(4, 4, 0, 0, 0), jobs=1))
    again = verify_sweep(SweepDomain(4, 4, 0, 0, 0), jobs=1).merge(verify_sweep(SMALL, jobs=1))
    assert not forward.ok
    assert swapped == again
