"""Exact integer invariants of splitting types on the projective line.

A splitting type is the multidegree ``(e_1 <= ... <= e_k)`` of a split bundle
``O(e_1) + ... + O(e_k)``.  Everything here is closed-form integer arithmetic
on those tuples; Python ints keep it arbitrary precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping


class HBNError(Exception):
    """Base class for value-level refusals raised by this package."""


class InvalidSplittingType(HBNError, ValueError):
    pass


class InvalidDatum(HBNError, ValueError):
    pass


class EmptyLocus(HBNError):
    """The splitting locus is empty for a general cover (negative expected dimension)."""


class InconsistentProfile(HBNError, ValueError):
    pass


@dataclass(frozen=True)
class SplittingType:
    """A nondecreasing tuple of integers.

    The constructor validates and never reorders; use :meth:`normalized` to
    sort arbitrary input.
    """

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise InvalidSplittingType("a splitting type needs at least one part")
        for x in parts:
            if isinstance(x, bool) or not isinstance(x, int):
                raise InvalidSplittingType(f"parts must be integers, got {x!r}")
        if any(a > b for a, b in zip(parts, parts[1:])):
            raise InvalidSplittingType(f"parts not nondecreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def normalized(cls, parts: Iterable[int]) -> "SplittingType":
        return cls(tuple(sorted(parts)))

    @property
    def k(self) -> int:
        return len(self.parts)

    def part(self, i: int) -> int:
        """1-based access, ``e.part(1) == e_1``."""
        if not 1 <= i <= len(self.parts):
            raise IndexError(f"part index {i} outside 1..{len(self.parts)}")
        return self.parts[i - 1]

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class BNDatum:
    """A genus together with a splitting type whose locus is nonempty."""

    g: int
    e: SplittingType

    def __post_init__(self):
        if isinstance(self.g, bool) or not isinstance(self.g, int):
            raise InvalidDatum(f"genus must be an integer, got {self.g!r}")
        if not isinstance(self.e, SplittingType):
            object.__setattr__(self, "e", SplittingType(tuple(self.e)))
        if self.g < 0:
            raise InvalidDatum(f"genus must be nonnegative, got {self.g}")
        rho = rho_prime(self.g, self.e)
        if rho < 0:
            raise EmptyLocus(
                f"rho'(g={self.g}, e={self.e}) = {rho} < 0; "
                f"the locus needs g >= u(e) = {u(self.e)}"
            )

    @property
    def k(self) -> int:
        return self.e.k


def degree(e: SplittingType) -> int:
    return sum(e.parts)


def u(e: SplittingType) -> int:
    """``h^1(End O(e))``: the sum over pairs ``i < j`` of ``max(0, e_j - e_i - 1)``."""
    p = e.parts
    total = 0
    for j in range(1, len(p)):
        ej = p[j]
        for i in range(j):
            gap = ej - p[i] - 1
            if gap > 0:
                total += gap
    return total


def rho_prime(g: int, e: SplittingType) -> int:
    return g - u(e)


def h0(e: SplittingType) -> int:
    return sum(x + 1 for x in e.parts if x >= 0)


def r(e: SplittingType) -> int:
    return h0(e) - 1


def h0_profile(e: SplittingType, n: int) -> int:
    """Sections of the twist ``O(e)(n)``."""
    return sum(x + n + 1 for x in e.parts if x + n + 1 > 0)


def from_h0_profile(samples: Mapping[int, int]) -> SplittingType:
    """Recover the splitting type from sampled values of ``n -> h0(O(e)(n))``.

    The samples must be consecutive in ``n``, start where the profile is still
    zero, and extend far enough that every part has contributed (past
    ``-e_1``).  The first difference at ``n`` counts the parts ``>= -n``, so its
    jumps give the multiplicities.
    """
    if not samples:
        raise InconsistentProfile("empty profile")
    ns = sorted(samples)
    if ns != list(range(ns[0], ns[-1] + 1)):
        raise InconsistentProfile("profile samples must be at consecutive twists")
    values = [samples[n] for n in ns]
    if any(v < 0 for v in values):
        raise InconsistentProfile("section counts cannot be negative")
    if values[0] != 0:
        raise InconsistentProfile(
            f"profile must start at zero sections, got {values[0]} at n={ns[0]}"
        )
    parts: list[int] = []
    prev_diff = 0
    for n, lo, hi in zip(ns[1:], values, values[1:]):
        diff = hi - lo
        if diff < prev_diff:
            raise InconsistentProfile(f"first difference decreases at n={n}")
        # diff - prev_diff parts equal to -n
        parts.extend([-n] * (diff - prev_diff))
        prev_diff = diff
    if not parts:
        raise InconsistentProfile("profile never leaves zero; no parts recovered")
    e = SplittingType.normalized(parts)
    if any(h0_profile(e, n) != v for n, v in zip(ns, values)):
        raise InconsistentProfile("samples do not match any splitting type")
    return e


def twist(e: SplittingType, n: int) -> SplittingType:
    return SplittingType(tuple(x + n for x in e.parts))


def nonneg_parts(e: SplittingType) -> int:
    return sum(1 for x in e.parts if x >= 0)


def nonpos_parts(e: SplittingType) -> int:
    return sum(1 for x in e.parts if x <= 0)


def neg_parts(e: SplittingType) -> int:
    return sum(1 for x in e.parts if x < 0)


def line_bundle_degree(d: BNDatum) -> int:
    """Degree of the line bundle on the curve, by Riemann-Roch: ``deg e + g + k - 1``."""
    return degree(d.e) + d.g + d.k - 1


def is_balanced(e: SplittingType) -> bool:
    return e.parts[-1] - e.parts[0] <= 1


def plane_curve_genus(degree: int) -> int:
    """Arithmetic genus ``(d - 1)(d - 2) / 2`` of a plane curve of the given degree."""
    return (degree - 1) * (degree - 2) // 2


def invariants(d: BNDatum) -> dict[str, int]:
    """The audit block reported alongside every verdict."""
    e = d.e
    return {
        "k": e.k,
        "deg_e": degree(e),
        "u": u(e),
        "rho": rho_prime(d.g, e),
        "h0": h0(e),
        "r": r(e),
        "degL": line_bundle_degree(d),
        "nonneg_parts": nonneg_parts(e),
    }
