"""Counting dependent fibral divisors by intersection theory.

A fibral divisor of degree ``p + 1`` is dependent when its points span less
than a ``p``-plane in the fiber of the nonnegative scroll.  When exactly
``p + 1`` parts of ``e`` are nonnegative there are finitely many such
divisors, and their number ``N`` (with multiplicity) is a degeneracy-locus
degree.  ``N`` is computed twice: from the simplified closed form, and by
assembling the degrees of the ingredients (the fiber product, its
projections and its diagonal locus) before simplification.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb, factorial

from .classify import BadAmpleDegree, rel_pva_clauses
from .core import BNDatum, HBNError, line_bundle_degree, nonneg_parts


class PreconditionNonnegParts(HBNError, ValueError):
    pass


class OracleMismatch(HBNError, AssertionError):
    pass


class EdgeCase(str, Enum):
    GENUS_ZERO = "GenusZero"
    REL_VA_CASE2 = "RelVACase2"
    REL_VA_CASE3 = "RelVACase3"
    REL_VA_CASE4 = "RelVACase4"
    POSITIVE = "Positive"
    NOT_APPLICABLE = "NotApplicable"

    def __str__(self):
        return self.value


def binom(n: int, m: int) -> int:
    """Binomial coefficient, zero outside ``0 <= m <= n``."""
    if m < 0 or n < 0 or m > n:
        return 0
    return comb(n, m)


def _check_domain(k: int, p: int):
    if k < 2:
        raise ValueError(f"need k >= 2, got k = {k}")
    if not 0 <= p <= k - 1:
        raise BadAmpleDegree(f"p must satisfy 0 <= p <= k - 1 = {k - 1}, got {p}")


def deg_Z(g: int, k: int, p: int) -> int:
    """Degree of the locus of tuples with a repeated point: ``(2g-2+2k) C(p+1,2) (k-2)!/(k-p-1)!``."""
    _check_domain(k, p)
    if g < 0:
        raise ValueError(f"need g >= 0, got g = {g}")
    return (2 * g - 2 + 2 * k) * comb(p + 1, 2) * factorial(k - 2) // factorial(k - p - 1)


def deg_h(k: int, p: int) -> int:
    """Degree over P^1 of the space of ordered ``(p+1)``-tuples of distinct fiber points."""
    _check_domain(k, p)
    return factorial(k) // factorial(k - p - 1)


def deg_pi(k: int, p: int) -> int:
    _check_domain(k, p)
    return factorial(k - 1) // factorial(k - p - 1)


def closed_form_count(g: int, parts: tuple[int, ...], p: int) -> int:
    """``C(k-1,p)(deg e + g + k - 1) - C(k,p+1)(e_{k-p}+...+e_k) - (g-1+k) C(k-2,p-1)``."""
    k = len(parts)
    top = sum(parts[k - p - 1 :])
    return (
        binom(k - 1, p) * (sum(parts) + g + k - 1)
        - binom(k, p + 1) * top
        - (g - 1 + k) * binom(k - 2, p - 1)
    )


def assembled_bracket(g: int, parts: tuple[int, ...], p: int) -> int:
    """``(p+1) deg(pi) deg(L) - deg(h)(e_{k-p}+...+e_k) - deg Z``; equals ``(p+1)! N``."""
    k = len(parts)
    deg_L = sum(parts) + g + k - 1
    top = sum(parts[k - p - 1 :])
    return (p + 1) * deg_pi(k, p) * deg_L - deg_h(k, p) * top - deg_Z(g, k, p)


def assembled_count(g: int, parts: tuple[int, ...], p: int) -> int:
    bracket = assembled_bracket(g, parts, p)
    q, rem = divmod(bracket, factorial(p + 1))
    if rem:
        raise OracleMismatch(f"(p+1)! = {factorial(p + 1)} does not divide {bracket}")
    return q


@dataclass(frozen=True)
class CountReport:
    p: int
    n_closed: int
    n_assembled: int
    deg_Z: int
    deg_h: int
    deg_pi: int
    deg_L: int
    edge_case: EdgeCase

    def __post_init__(self):
        if self.n_closed != self.n_assembled:
            raise OracleMismatch(
                f"closed form gives {self.n_closed}, assembled count gives {self.n_assembled}"
            )

    @property
    def N(self) -> int:
        return self.n_closed

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "N": self.n_closed,
            "N_assembled": self.n_assembled,
            "degZ": self.deg_Z,
            "degH": self.deg_h,
            "degPi": self.deg_pi,
            "degL": self.deg_L,
            "edge_case": self.edge_case.value,
        }


def _require_exact_parts(d: BNDatum, p: int):
    if d.k < 2:
        raise ValueError(f"need k >= 2, got k = {d.k}")
    if isinstance(p, bool) or not isinstance(p, int) or not 0 <= p <= d.k - 1:
        raise BadAmpleDegree(f"p must satisfy 0 <= p <= k - 1 = {d.k - 1}, got {p!r}")
    nn = nonneg_parts(d.e)
    if nn != p + 1:
        raise PreconditionNonnegParts(
            f"the count needs exactly p + 1 = {p + 1} nonnegative parts, e = {d.e} has {nn}"
        )


def _edge_case(d: BNDatum, p: int, n: int) -> EdgeCase:
    if d.g == 0:
        return EdgeCase.GENUS_ZERO
    if n > 0:
        return EdgeCase.POSITIVE
    clauses = rel_pva_clauses(d, p)
    for tag, holds in zip(
        (EdgeCase.REL_VA_CASE2, EdgeCase.REL_VA_CASE3, EdgeCase.REL_VA_CASE4), clauses[1:4]
    ):
        if holds:
            return tag
    return EdgeCase.NOT_APPLICABLE


def edge_case_classify(d: BNDatum, p: int) -> EdgeCase:
    """Why the count vanishes (or that it does not)."""
    _require_exact_parts(d, p)
    return _edge_case(d, p, closed_form_count(d.g, d.e.parts, p))


def dependent_divisor_count(d: BNDatum, p: int, strict: bool = True) -> CountReport:
    """Number of dependent fibral divisors of degree ``p + 1``, counted with multiplicity.

    With ``strict=False`` the part-count precondition is not enforced; outside
    it the raw formula value is returned tagged ``NotApplicable``.
    """
    in_domain = True
    try:
        _require_exact_parts(d, p)
    except PreconditionNonnegParts:
        if strict:
            raise
        in_domain = False
    k, g, parts = d.k, d.g, d.e.parts
    n_closed = closed_form_count(g, parts, p)
    n_assembled = assembled_count(g, parts, p)
    tag = _edge_case(d, p, n_closed) if in_domain else EdgeCase.NOT_APPLICABLE
    return CountReport(
        p=p,
        n_closed=n_closed,
        n_assembled=n_assembled,
        deg_Z=deg_Z(g, k, p),
        deg_h=deg_h(k, p),
        deg_pi=deg_pi(k, p),
        deg_L=line_bundle_degree(d),
        edge_case=tag,
    )


def directrix_intersection(g: int, e2: int) -> int:
    """``C . D`` on the Hirzebruch surface for ``e = (0, e2)``, where ``[C] = (e2 + g + 1) F + 2 D`` and ``D^2 = -e2``."""
    if g < 0:
        raise ValueError(f"need g >= 0, got g = {g}")
    return g + 1 - e2
