"""Decision procedures for ampleness of a general line bundle in a splitting locus.

Every procedure evaluates all clauses of its criterion in their customary
numbering and reports the lowest-numbered clause that holds.  Index
conditions such as ``e_{k-p-1} >= 0`` are phrased as counts of nonnegative
parts so they stay meaningful when the index would fall off the tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .core import BNDatum, EmptyLocus, HBNError, h0, nonneg_parts, rho_prime


class RankTooSmall(HBNError, ValueError):
    pass


class BadAmpleDegree(HBNError, ValueError):
    pass


class Case(str, Enum):
    BPF_SUBBUNDLE = "Bpf.Subbundle"
    BPF_PULLBACK = "Bpf.Pullback"
    BIRAT_REL = "BiratRelVA.NonnegParts"
    REL_1 = "RelVA.Case1"
    REL_2 = "RelVA.Case2"
    REL_3 = "RelVA.Case3"
    REL_4 = "RelVA.Case4"
    REL_5 = "RelVA.Case5"
    BIRAT_VA_1 = "BiratVA.Case1"
    BIRAT_VA_2 = "BiratVA.Case2"
    BIRAT_VA_3 = "BiratVA.Case3"
    VA_1 = "VA.Case1"
    VA_2 = "VA.Case2"
    VA_3 = "VA.Case3"
    VA_4 = "VA.Case4"
    VA_5 = "VA.Case5"
    VA_6 = "VA.Case6"
    VA_7 = "VA.Case7"

    def __str__(self):
        return self.value


REL_CASES = (Case.REL_1, Case.REL_2, Case.REL_3, Case.REL_4, Case.REL_5)
BIRAT_VA_CASES = (Case.BIRAT_VA_1, Case.BIRAT_VA_2, Case.BIRAT_VA_3)
VA_CASES = (Case.VA_1, Case.VA_2, Case.VA_3, Case.VA_4, Case.VA_5, Case.VA_6, Case.VA_7)


@dataclass(frozen=True)
class Decision:
    value: bool
    case: Optional[Case] = None
    note: Optional[str] = None
    # degree of the line bundle on P^1 whose pullback is L (Pullback branch only)
    pullback_twist: Optional[int] = None

    def __post_init__(self):
        if self.value != (self.case is not None):
            raise ValueError("a positive decision needs a case label and vice versa")

    def __bool__(self):
        return self.value

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "case": None if self.case is None else self.case.value,
            "note": self.note,
        }


def _first(labels: Sequence[Case], clauses: Sequence[bool], note=None, **extra) -> Decision:
    for label, holds in zip(labels, clauses):
        if holds:
            return Decision(True, label, note, **extra)
    return Decision(False, None, note)


def _require_rank(d: BNDatum):
    if d.k < 2:
        raise RankTooSmall(f"classification needs k >= 2, got k = {d.k}")


def _require_p(d: BNDatum, p: int):
    if isinstance(p, bool) or not isinstance(p, int) or not 0 <= p <= d.k - 1:
        raise BadAmpleDegree(f"p must satisfy 0 <= p <= k - 1 = {d.k - 1}, got {p!r}")


def bpf_clauses(d: BNDatum) -> tuple[bool, bool]:
    """(subbundle clause, pullback clause)."""
    e = d.e.parts
    k = len(e)
    a = nonneg_parts(d.e) >= 2
    b = e[-1] >= 0 and e[k - 2] - e[0] <= 1 and rho_prime(d.g, d.e) == 0
    return a, b


def basepoint_free(d: BNDatum) -> Decision:
    _require_rank(d)
    a, b = bpf_clauses(d)
    if a:
        return Decision(True, Case.BPF_SUBBUNDLE)
    if b:
        twist = d.e.parts[-1]
        return Decision(
            True,
            Case.BPF_PULLBACK,
            f"general member is the pullback of O({twist}) from P^1",
            pullback_twist=twist,
        )
    return Decision(False)


def birationally_rel_pva(d: BNDatum, p: int) -> Decision:
    _require_rank(d)
    _require_p(d, p)
    return _first((Case.BIRAT_REL,), (nonneg_parts(d.e) >= p + 1,))


def rel_pva_clauses(d: BNDatum, p: int) -> tuple[bool, ...]:
    e = d.e.parts
    k = len(e)
    nn = nonneg_parts(d.e)
    rho0 = rho_prime(d.g, d.e) == 0
    return (
        nn >= p + 2,
        p == 0 and e[-1] >= 0 and e[k - 2] - e[0] <= 1 and rho0,
        p == k - 2 and e[1] >= 0 and e[-1] - e[1] <= 1 and rho0,
        p == k - 1 and e[0] >= 0,
        d.g == 0 and nn >= p + 1,
    )


def rel_pva(d: BNDatum, p: int) -> Decision:
    """Relative ``p``-very ampleness: every fibral divisor of degree ``p + 1`` imposes independent conditions."""
    _require_rank(d)
    _require_p(d, p)
    return _first(REL_CASES, rel_pva_clauses(d, p))


def birationally_va_clauses(d: BNDatum) -> tuple[bool, ...]:
    e = d.e.parts
    nn = nonneg_parts(d.e)
    return (
        nn >= 3,
        nn >= 2 and e[-1] >= 1,
        d.g == 0 and nn >= 2,
    )


def birationally_va(d: BNDatum) -> Decision:
    _require_rank(d)
    return _first(BIRAT_VA_CASES, birationally_va_clauses(d))


def _plane_pattern(parts: tuple[int, ...], head: tuple[int, ...]) -> Optional[int]:
    """Number of ``-1`` entries if ``parts == head + (-1,)*m + (0, 0, 0)``, else None."""
    if len(parts) < len(head) + 3 or parts[: len(head)] != head or parts[-3:] != (0, 0, 0):
        return None
    middle = parts[len(head) : -3]
    if any(x != -1 for x in middle):
        return None
    return len(middle)


def very_ample_clauses(d: BNDatum) -> tuple[bool, ...]:
    e = d.e.parts
    k = len(e)
    g = d.g
    nn = nonneg_parts(d.e)
    return (
        nn >= 3 and h0(d.e) - 1 >= 3,
        k == 3 and e[1] >= 1 and e[2] - e[1] <= 1 and rho_prime(g, d.e) == 0,
        k == 2 and e[0] >= 1,
        k == 2 and (e == (0, g) or e == (0, g + 1)),
        g == 0 and nn >= 2,
        g == 1 and (e == (-1, 0, 1) or _plane_pattern(e, ()) is not None),
        g == 3 and (e == (-2, 0, 1) or _plane_pattern(e, (-2,)) is not None),
    )


def very_ample(d: BNDatum) -> Decision:
    _require_rank(d)
    clauses = very_ample_clauses(d)
    note = None
    if clauses[5] or clauses[6]:
        head = () if d.g == 1 else (-2,)
        m = _plane_pattern(d.e.parts, head)
        curve = "cubic" if d.g == 1 else "quartic"
        note = f"smooth plane {curve}"
        if m is not None:
            note += f"; pattern matched with {m} copies of -1 (zero copies allowed)"
    return _first(VA_CASES, clauses, note)


def pva_sufficient(d: BNDatum, p: int) -> bool:
    """Sufficient chain for ``p``-very ampleness: ``e_k >= p`` and ``e_{k-j} >= p - j + 1`` for ``1 <= j <= p + 1``."""
    _require_p(d, p)
    e = d.e.parts
    k = len(e)
    if k < p + 2:
        return False
    if e[-1] < p:
        return False
    return all(e[k - j - 1] >= p - j + 1 for j in range(1, p + 2))


def birat_pva_sufficient(d: BNDatum, p: int) -> bool:
    """Sufficient chain for birational ``p``-very ampleness: ``e_{k-j} >= p - j`` for ``0 <= j <= p``."""
    _require_p(d, p)
    e = d.e.parts
    k = len(e)
    return all(e[k - j - 1] >= p - j for j in range(p + 1))


def conjectured_pva(d: BNDatum, p: int) -> bool:
    _require_p(d, p)
    return nonneg_parts(d.e) >= p + 2 and h0(d.e) - 1 >= 2 * p + 1


def classical_rho(g: int, r: int, dd: int) -> int:
    return g - (r + 1) * (g - dd + r)


CLASSICAL_EXCEPTIONS = frozenset({(0, 1, 1), (0, 2, 2), (1, 2, 3), (3, 2, 4)})


def classical_va(g: int, r: int, dd: int) -> bool:
    """Very ampleness of a general line bundle in the classical Brill-Noether component."""
    if min(g, r, dd) < 0:
        raise ValueError(f"g, r, d must be nonnegative, got {(g, r, dd)}")
    rho = classical_rho(g, r, dd)
    if rho < 0:
        raise EmptyLocus(f"rho(g={g}, r={r}, d={dd}) = {rho} < 0")
    return r >= 3 or (g, r, dd) in CLASSICAL_EXCEPTIONS

