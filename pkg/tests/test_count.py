import itertools
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from hbn import classify as C
from hbn import count as N
from hbn.count import EdgeCase
from hbn.core import BNDatum, SplittingType, nonneg_parts, u


def D(g, *parts):
    return BNDatum(g, SplittingType(parts))


# -- brute-force oracles for the degree bookkeeping --------------------------


def ordered_distinct_tuples(k, p):
    """Points of the (p+1)-fold fiber product over an unramified point."""
    return sum(1 for _ in itertools.permutations(range(k), p + 1))


def tuples_with_first_fixed(k, p):
    return sum(1 for t in itertools.permutations(range(k), p + 1) if t[0] == 0)


def collided_tuples(k, p):
    """Tuples over a simple branch point where the ramification point R fills exactly two slots.

    The fiber has ``k - 1`` points: R and ``k - 2`` unramified ones.
    """
    labels = ["R"] + list(range(k - 2))
    count = 0
    for t in itertools.product(labels, repeat=p + 1):
        others = [x for x in t if x != "R"]
        if t.count("R") == 2 and len(set(others)) == len(others):
            count += 1
    return count


def deg_Z_oracle(g, k, p):
    # Riemann-Hurwitz: 2g - 2 + 2k simple branch points for a general cover
    return (2 * g - 2 + 2 * k) * collided_tuples(k, p)


def directrix_oracle(g, e2):
    """[C].D on the Hirzebruch surface with F^2 = 0, F.D = 1, D^2 = -e2."""
    a, b = e2 + g + 1, 2
    return a * 1 + b * (-e2)


def meq_scaled_count(g, parts, p):
    """(p+1)! (k-1-p)! / (k-2)! times N, rewritten as (p+1)(k-1-p) g - (k-1) X."""
    k = len(parts)
    low, high = parts[: k - p - 1], parts[k - p - 1 :]
    x = sum(ej - ei - 1 for ei in low for ej in high)
    return (p + 1) * (k - 1 - p) * g - (k - 1) * x


# -- sub-formulas ------------------------------------------------------------


@pytest.mark.parametrize("k", range(2, 7))
def test_degrees_against_enumeration(k):
    for p in range(k):
        assert N.deg_h(k, p) == ordered_distinct_tuples(k, p)
        assert N.deg_pi(k, p) == tuples_with_first_fixed(k, p)
        for g in range(4):
            assert N.deg_Z(g, k, p) == deg_Z_oracle(g, k, p)


def test_sub_formula_examples():
    assert N.deg_Z(5, 3, 1) == 14
    assert N.deg_Z(0, 2, 1) == 2
    assert all(N.deg_Z(g, k, 0) == 0 for g in range(5) for k in range(2, 7))
    assert (N.deg_h(3, 1), N.deg_pi(3, 1)) == (6, 2)
    assert (N.deg_h(2, 1), N.deg_pi(2, 1)) == (2, 1)
    for k in range(2, 8):
        assert (N.deg_h(k, 0), N.deg_pi(k, 0)) == (k, 1)


def test_sub_formula_domain_errors():
    with pytest.raises(ValueError):
        N.deg_h(1, 0)
    with pytest.raises(ValueError):
        N.deg_pi(3, 3)
    with pytest.raises(ValueError):
        N.deg_Z(-1, 3, 1)


def test_binomial_convention():
    assert N.binom(3, -1) == 0 and N.binom(3, 4) == 0 and N.binom(4, 2) == 6


# -- the count ---------------------------------------------------------------


def test_count_examples():
    rep = N.dependent_divisor_count(D(5, -3, 0, 0), 1)
    assert (rep.N, rep.n_assembled) == (1, 1)
    assert (rep.deg_Z, rep.deg_h, rep.deg_pi, rep.deg_L) == (14, 6, 2, 4)
    assert Fraction(2 * 2 * 4 - 6 * 0 - 14, 2) == 1
    assert rep.edge_case is EdgeCase.POSITIVE

    rep = N.dependent_divisor_count(D(2, -2, 0, 0), 1)
    assert rep.N == 0 and rep.edge_case is EdgeCase.REL_VA_CASE3


def test_all_parts_nonnegative_gives_zero():
    for parts in itertools.combinations_with_replacement(range(0, 4), 3):
        d = BNDatum(u(SplittingType(parts)) + 1, SplittingType(parts))
        rep = N.dependent_divisor_count(d, 2)
        assert rep.N == 0 and rep.edge_case is EdgeCase.REL_VA_CASE4


def test_precondition_enforced():
    with pytest.raises(N.PreconditionNonnegParts):
        N.dependent_divisor_count(D(4, -2, 0, 0, 1), 1)
    with pytest.raises(C.BadAmpleDegree):
        N.dependent_divisor_count(D(5, -3, 0, 0), 3)
    with pytest.raises(N.PreconditionNonnegParts):
        N.edge_case_classify(D(4, -2, 0, 0, 1), 0)


def test_permissive_variant_tags_out_of_domain():
    rep = N.dependent_divisor_count(D(4, -2, 0, 0, 1), 1, strict=False)
    assert rep.edge_case is EdgeCase.NOT_APPLICABLE
    assert rep.N == N.closed_form_count(4, (-2, 0, 0, 1), 1)


def test_report_rejects_disagreement():
    with pytest.raises(N.OracleMismatch):
        N.CountReport(1, 1, 2, 0, 0, 0, 0, EdgeCase.POSITIVE)


def test_edge_case_examples():
    for parts in [(-1, 0), (-1, -1, 0, 0), (-1, 0, 0, 0)]:
        d = BNDatum(0, SplittingType(parts))
        p = nonneg_parts(d.e) - 1
        assert N.edge_case_classify(d, p) is EdgeCase.GENUS_ZERO
        assert N.dependent_divisor_count(d, p).N == 0
    d = D(3, -1, 3)
    assert u(d.e) == 3
    assert N.edge_case_classify(d, 0) is EdgeCase.REL_VA_CASE2
    assert N.dependent_divisor_count(d, 0).N == 0
    assert N.edge_case_classify(D(5, -3, 0, 0), 1) is EdgeCase.POSITIVE


def test_directrix_intersection():
    for g in range(10):
        assert N.directrix_intersection(g, g + 1) == 0
        assert N.directrix_intersection(g, g) == 1
        for e2 in range(0, 12):
            assert N.directrix_intersection(g, e2) == directrix_oracle(g, e2)
    assert N.directrix_intersection(4, 2) == 3


# -- properties --------------------------------------------------------------


@st.composite
def counted(draw):
    """A valid datum and p with exactly p + 1 nonnegative parts."""
    k = draw(st.integers(2, 7))
    p = draw(st.integers(0, k - 1))
    neg = draw(st.lists(st.integers(-7, -1), min_size=k - p - 1, max_size=k - p - 1))
    pos = draw(st.lists(st.integers(0, 7), min_size=p + 1, max_size=p + 1))
    e = SplittingType.normalized(neg + pos)
    g = u(e) + draw(st.integers(0, 5))
    return BNDatum(g, e), p


@given(counted())
def test_closed_form_equals_assembled(dp):
    d, p = dp
    rep = N.dependent_divisor_count(d, p)
    assert rep.n_closed == rep.n_assembled
    bracket = N.assembled_bracket(d.g, d.e.parts, p)
    assert bracket % factorial(p + 1) == 0


@given(counted())
def test_count_matches_rearranged_form(dp):
    d, p = dp
    k = d.k
    scale = Fraction(factorial(p + 1) * factorial(k - 1 - p), factorial(k - 2))
    assert scale * N.closed_form_count(d.g, d.e.parts, p) == meq_scaled_count(d.g, d.e.parts, p)


@given(counted())
def test_count_nonnegative_and_edge_cases(dp):
    d, p = dp
    n = N.dependent_divisor_count(d, p).N
    assert n >= 0
    clauses = C.rel_pva_clauses(d, p)
    assert (n == 0) == (d.g == 0 or any(clauses[1:4]))
    if n == 0 and d.g > 0:
        k = d.k
        assert (p + 1) * (k - 1 - p) <= k - 1


@given(counted())
def test_rel_pva_through_count(dp):
    d, p = dp
    nn = nonneg_parts(d.e)
    n = N.dependent_divisor_count(d, p).N
    assert C.rel_pva(d, p).value == (nn >= p + 2 or n == 0)
