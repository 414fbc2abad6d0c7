"""Exact arithmetic on finite sets of rationals.

Everything downstream (lattice searches, collision sweeps, certification)
bottoms out in a handful of questions about a finite set A of rationals:

    how many distinct pairwise sums a + b does A determine?
    how many distinct pairwise products a * b?
    is A a Sidon set (all pairwise sums distinct)?
    what is the longest arithmetic / geometric progression inside A?

All arithmetic is exact via fractions.Fraction; no floats anywhere.
Sets are represented by FiniteRationalSet, an immutable sorted tuple of
Fractions, but every operation also accepts any iterable of values
convertible to Fraction (ints, strings like "3/2", Fractions).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rational = Union[int, str, Fraction]

__all__ = [
    "FiniteRationalSet",
    "ProgressionReport",
    "sumset",
    "productset",
    "is_sidon",
    "progression_analysis",
    "reduce",
    "is_multiplicatively_dependent",
]


@dataclass(frozen=True)
class FiniteRationalSet:
    """Immutable finite set of rationals, kept as a strictly increasing tuple."""

    elements: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.elements:
            raise ValueError("set must be nonempty")
        if any(not isinstance(x, Fraction) for x in self.elements):
            raise TypeError("elements must be Fractions; use FiniteRationalSet.of")
        if any(a >= b for a, b in zip(self.elements, self.elements[1:])):
            raise ValueError("elements must be strictly increasing")

    @classmethod
    def of(cls, values: Iterable[Rational]) -> "FiniteRationalSet":
        return cls(tuple(sorted({Fraction(v) for v in values})))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, value: object) -> bool:
        return value in self.elements

    def min(self) -> Fraction:
        return self.elements[0]

    def max(self) -> Fraction:
        return self.elements[-1]


@dataclass(frozen=True)
class ProgressionReport:
    """Longest progression of a given kind found inside a set.

    kind is "arithmetic" or "geometric" when a progression of length >= 2
    exists (step_or_ratio then holds its step resp. ratio), and "neither"
    for singletons, where no step is defined.
    """

    kind: str
    start: Fraction
    step_or_ratio: Fraction
    max_contained: int


def _elements(A: Iterable[Rational]) -> tuple[Fraction, ...]:
    if isinstance(A, FiniteRationalSet):
        return A.elements
    elems = tuple(sorted({Fraction(v) for v in A}))
    if not elems:
        raise ValueError("set must be nonempty")
    return elems


def sumset(A: Iterable[Rational]) -> FiniteRationalSet:
    """A + A = {a + b : a, b in A}, unordered pairs with repetition.

    |A + A| ranges from 2|A| - 1 (arithmetic progressions) up to
    |A|(|A| + 1)/2 (Sidon sets).
    """
    elems = _elements(A)
    out = set()
    for i, a in enumerate(elems):
        for b in elems[i:]:
            out.add(a + b)
    return FiniteRationalSet(tuple(sorted(out)))


def productset(A: Iterable[Rational]) -> FiniteRationalSet:
    """A * A = {a * b : a, b in A}, unordered pairs with repetition."""
    elems = _elements(A)
    out = set()
    for i, a in enumerate(elems):
        for b in elems[i:]:
            out.add(a * b)
    return FiniteRationalSet(tuple(sorted(out)))


def is_sidon(A: Iterable[Rational]) -> bool:
    """True iff all pairwise sums of A are distinct: |A+A| = k(k+1)/2."""
    elems = _elements(A)
    k = len(elems)
    return len(sumset(elems)) == k * (k + 1) // 2


def progression_analysis(A: Iterable[Rational], mode: str) -> ProgressionReport:
    """Longest arithmetic resp. geometric progression contained in A.

    Scans every ordered pair (x, y) of distinct elements, takes it as the
    first two terms of a progression, and walks x, x+d, x+2d, ... (resp.
    x, x*q, x*q^2, ...) counting consecutive terms that lie in A.  The
    report's max_contained is the best run length over all pairs; singleton
    sets report max_contained = 1 with kind "neither".

    Geometric mode requires every element nonzero (ratio undefined at 0).
    """
    if mode not in ("arithmetic", "geometric"):
        raise ValueError(f"unknown mode {mode!r}")
    elems = _elements(A)
    if mode == "geometric" and any(x == 0 for x in elems):
        raise ValueError("geometric mode requires all elements nonzero")
    if len(elems) == 1:
        return ProgressionReport("neither", elems[0], Fraction(0), 1)

    members = set(elems)
    best = (2, elems[0], elems[1] - elems[0] if mode == "arithmetic" else elems[1] / elems[0])
    for x in elems:
        for y in elems:
            if x == y:
                continue
            if mode == "arithmetic":
                step = y - x
                term = y + step
                count = 2
                while term in members:
                    count += 1
                    term += step
            else:
                ratio = y / x
                term = y * ratio
                count = 2
                while term in members:
                    count += 1
                    term *= ratio
            if count > best[0]:
                best = (count, x, step if mode == "arithmetic" else ratio)
    count, start, step = best
    return ProgressionReport(mode, start, step, count)


def reduce(L: Iterable[Rational]) -> FiniteRationalSet:
    """Affine normalization (L - min L) / (second smallest - min L).

    The image has minimum 0 and second smallest element 1; sumset and
    progression structure are invariant under this map.  Requires >= 2
    elements.
    """
    elems = _elements(L)
    if len(elems) < 2:
        raise ValueError("reduce needs at least two elements")
    m, m2 = elems[0], elems[1]
    d = m2 - m
    return FiniteRationalSet(tuple((x - m) / d for x in elems))


def _prime_exponents(n: int) -> dict[int, int]:
    # trial division; inputs in this project stay far below 10**6
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _exponent_vector(x: Fraction) -> dict[int, int]:
    vec = dict(_prime_exponents(x.numerator))
    for p, e in _prime_exponents(x.denominator).items():
        vec[p] = vec.get(p, 0) - e
    return {p: e for p, e in vec.items() if e != 0}


def is_multiplicatively_dependent(r: Rational, s: Rational) -> bool:
    """True iff r^p = s^q for some nonzero integers p, q.

    Positive rationals r, s are multiplicatively dependent exactly when
    their prime exponent vectors are proportional.  Equivalently, for
    r != 1: log_r(s) is rational and nonzero, or s = r^0 = ... never;
    note s = 1 is dependent on nothing except r = 1.
    """
    r, s = Fraction(r), Fraction(s)
    if r <= 0 or s <= 0:
        raise ValueError("r and s must be positive")
    va, vb = _exponent_vector(r), _exponent_vector(s)
    if not va or not vb:
        # r = 1 or s = 1: r^p = s^q with p, q nonzero forces both to be 1
        return not va and not vb
    if set(va) != set(vb):
        return False
    primes = sorted(va)
    p0 = primes[0]
    return all(va[p0] * vb[p] == vb[p0] * va[p] for p in primes[1:])
