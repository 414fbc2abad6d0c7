"""Bivariate integer polynomial arithmetic: gcd, resultants, rational roots.

The collision analysis needs exact answers to three questions about pairs
of polynomials p, q in Z[r, s]:

    what is gcd(p, q), up to sign?
    what are the resultants res_s(p, q) in Z[r] and res_r(p, q) in Z[s]?
    which rational numbers are roots of a univariate integer polynomial?

Representation.  A BivariatePolynomial stores a dict mapping exponent
pairs (deg_r, deg_s) to nonzero integer coefficients.  Internally, the
heavy algorithms view p as an element of (Z[r])[s]: a list of univariate
integer polynomials (dense ascending coefficient lists) indexed by the
power of s.  Univariate helpers (_uadd, _umul, _ugcd, ...) operate on
plain lists and are shared with the collision sweep's fast paths.

Algorithms.
  * gcd: content/primitive-part splitting over (Z[r])[s] with a primitive
    pseudo-remainder sequence; the result is sign-normalized so that its
    graded-lex leading coefficient is positive.
  * resultant: Sylvester matrix with entries in the retained variable,
    determinant by the Bareiss fraction-free algorithm (all intermediate
    divisions are exact over Z[x]).
  * rational_roots: strip the power-of-x factor and the integer content,
    then test candidates +-(divisor of trailing)/(divisor of leading) by
    exact evaluation.  Candidates are pre-filtered by the classical
    conditions (n - d) | f(1) and (n + d) | f(-1).

Degree conventions.  The zero polynomial has degree -1 in every variable.
The resultant of two constants is 1 (empty Sylvester matrix); if either
argument is the zero polynomial the resultant is 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _igcd
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "BivariatePolynomial",
    "UnivariatePolynomial",
    "poly_gcd",
    "resultant",
    "rational_roots",
    "evaluate",
]


# ----------------------------------------------------------------------
# univariate layer: dense ascending int coefficient lists, zero == []
# ----------------------------------------------------------------------

def _unorm(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _uadd(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _unorm(out)


def _usub(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _unorm(out)


def _uneg(a: Sequence[int]) -> list[int]:
    return [-c for c in a]


def _umul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _unorm(out)


def _uscale(a: Sequence[int], c: int) -> list[int]:
    return [] if c == 0 else _unorm([c * x for x in a])


def _ucontent(a: Sequence[int]) -> int:
    g = 0
    for c in a:
        g = _igcd(g, abs(c))
        if g == 1:
            break
    return g


def _udivexact(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact division in Z[x]; raises ArithmeticError if b does not divide a."""
    if not a:
        return []
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    if len(r) - 1 < db:
        raise ArithmeticError("inexact polynomial division")
    q = [0] * (len(r) - db)
    for k in range(len(q) - 1, -1, -1):
        c = r[db + k]
        if c % lb:
            raise ArithmeticError("inexact polynomial division")
        ck = c // lb
        q[k] = ck
        if ck:
            for i, bc in enumerate(b):
                r[i + k] -= ck * bc
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return _unorm(q)


def _uprem(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Pseudo-remainder: lb^t * a mod b for some t >= 0, staying in Z[x]."""
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while True:
        _unorm(r)
        if len(r) - 1 < db:
            return r
        top = r[-1]
        r = [lb * c for c in r]
        shift = len(r) - 1 - db
        for i, bc in enumerate(b):
            r[shift + i] -= top * bc
        r.pop()


def _ugcd(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """gcd in Z[x] including integer content, positive leading coefficient."""
    A, B = _unorm(list(a)), _unorm(list(b))
    if not A:
        return [c for c in B] if not B or B[-1] > 0 else _uneg(B)
    if not B:
        return list(A) if A[-1] > 0 else _uneg(A)
    ca, cb = _ucontent(A), _ucontent(B)
    g = _igcd(ca, cb)
    A = [c // ca for c in A]
    B = [c // cb for c in B]
    while B:
        R = _uprem(A, B)
        cr = _ucontent(R)
        if cr > 1:
            R = [c // cr for c in R]
        A, B = B, R
    if A[-1] < 0:
        A = _uneg(A)
    return _uscale(A, g)


def _ueval(a: Sequence[int], x: Fraction) -> Fraction:
    v = Fraction(0)
    for c in reversed(a):
        v = v * x + c
    return v


# ----------------------------------------------------------------------
# public univariate polynomial
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class UnivariatePolynomial:
    """Integer polynomial in one variable, dense ascending coefficients."""

    coeffs: tuple[int, ...]
    variable: str = "x"

    def __post_init__(self) -> None:
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("coefficient list has trailing zeros")

    @classmethod
    def of(cls, coeffs: Iterable[int], variable: str = "x") -> "UnivariatePolynomial":
        return cls(tuple(_unorm([int(c) for c in coeffs])), variable)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def evaluate(self, x: Union[int, Fraction]) -> Fraction:
        return _ueval(self.coeffs, Fraction(x))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (self.variable if i == 1 else f"{self.variable}^{i}")
            mag = abs(c)
            body = mono if mag == 1 and mono else (f"{mag}*{mono}" if mono else str(mag))
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


# ----------------------------------------------------------------------
# bivariate polynomials
# ----------------------------------------------------------------------

def _grlex_key(exp: tuple[int, int]) -> tuple[int, int]:
    i, j = exp
    return (i + j, i)


@dataclass(frozen=True)
class BivariatePolynomial:
    """Element of Z[r, s]: dict from (deg_r, deg_s) to nonzero int coefficient."""

    terms: tuple[tuple[tuple[int, int], int], ...]

    @classmethod
    def from_terms(
        cls, terms: Union[Mapping[tuple[int, int], int], Iterable[tuple[int, int, int]]]
    ) -> "BivariatePolynomial":
        acc: dict[tuple[int, int], int] = {}
        items = terms.items() if isinstance(terms, Mapping) else ((
            (i, j), c) for i, j, c in terms)
        for exp, c in items:
            acc[exp] = acc.get(exp, 0) + int(c)
        clean = {e: c for e, c in acc.items() if c != 0}
        return cls(tuple(sorted(clean.items())))

    @classmethod
    def zero(cls) -> "BivariatePolynomial":
        return cls(())

    @classmethod
    def constant(cls, c: int) -> "BivariatePolynomial":
        return cls.from_terms({(0, 0): c})

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(e == (0, 0) for e, _ in self.terms)

    def degree(self, variable: str) -> int:
        idx = {"r": 0, "s": 1}[variable]
        return max((e[idx] for e, _ in self.terms), default=-1)

    def __add__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return BivariatePolynomial.from_terms(acc)

    def __neg__(self) -> "BivariatePolynomial":
        return BivariatePolynomial(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        return self + (-other)

    def __mul__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        acc: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self.terms:
            for (i2, j2), c2 in other.terms:
                e = (i1 + i2, j1 + j2)
                acc[e] = acc.get(e, 0) + c1 * c2
        return BivariatePolynomial.from_terms(acc)

    def evaluate(self, r0: Union[int, Fraction], s0: Union[int, Fraction]) -> Fraction:
        r0, s0 = Fraction(r0), Fraction(s0)
        v = Fraction(0)
        for (i, j), c in self.terms:
            v += c * r0**i * s0**j
        return v

    # -- conversions between the dict form and (Z[r])[s] / (Z[s])[r] views

    def s_coefficients(self) -> list[list[int]]:
        """Coefficients as polynomials in r, indexed by the power of s."""
        ds = self.degree("s")
        out: list[list[int]] = [[] for _ in range(ds + 1)]
        for (i, j), c in self.terms:
            coeff = out[j]
            if len(coeff) <= i:
                coeff.extend([0] * (i + 1 - len(coeff)))
            coeff[i] = c
        return [_unorm(c) for c in out]

    def r_coefficients(self) -> list[list[int]]:
        """Coefficients as polynomials in s, indexed by the power of r."""
        dr = self.degree("r")
        out: list[list[int]] = [[] for _ in range(dr + 1)]
        for (i, j), c in self.terms:
            coeff = out[i]
            if len(coeff) <= j:
                coeff.extend([0] * (j + 1 - len(coeff)))
            coeff[j] = c
        return [_unorm(c) for c in out]

    @classmethod
    def from_s_coefficients(cls, coeffs: Sequence[Sequence[int]]) -> "BivariatePolynomial":
        return cls.from_terms(
            [(i, j, c) for j, poly in enumerate(coeffs) for i, c in enumerate(poly) if c]
        )

    def div_exact(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        """Exact quotient self / other in Z[r, s]; ArithmeticError if inexact."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return BivariatePolynomial.zero()
        R = self.s_coefficients()
        D = other.s_coefficients()
        if len(R) < len(D):
            raise ArithmeticError("inexact polynomial division")
        out: list[list[int]] = [[] for _ in range(len(R) - len(D) + 1)]
        while R:
            while R and not R[-1]:
                R.pop()
            if not R:
                break
            if len(R) < len(D):
                raise ArithmeticError("inexact polynomial division")
            k = len(R) - len(D)
            qk = _udivexact(R[-1], D[-1])
            out[k] = qk
            for i, dc in enumerate(D):
                R[k + i] = _usub(R[k + i], _umul(qk, dc))
        return BivariatePolynomial.from_s_coefficients(out)

    def sign_normalized(self) -> "BivariatePolynomial":
        """Flip the sign if the graded-lex leading coefficient is negative."""
        if not self.terms:
            return self
        lead = max(self.terms, key=lambda t: _grlex_key(t[0]))
        return -self if lead[1] < 0 else self

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms, key=lambda t: _grlex_key(t[0]), reverse=True):
            factors = []
            if i:
                factors.append("r" if i == 1 else f"r^{i}")
            if j:
                factors.append("s" if j == 1 else f"s^{j}")
            mono = "*".join(factors)
            mag = abs(c)
            body = mono if mag == 1 and mono else (f"{mag}*{mono}" if mono else str(mag))
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"BivariatePolynomial({self})"


# ----------------------------------------------------------------------
# gcd
# ----------------------------------------------------------------------

def _slist_content(coeffs: list[list[int]]) -> list[int]:
    g: list[int] = []
    for c in coeffs:
        if c:
            g = _ugcd(g, c)
            if g == [1]:
                break
    return g


def _slist_divexact(coeffs: list[list[int]], d: list[int]) -> list[list[int]]:
    return [_udivexact(c, d) if c else [] for c in coeffs]


def _slist_prem(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    """Pseudo-remainder in (Z[r])[s]: lc(B)^t * A mod B up to an r-polynomial factor."""
    R = [list(c) for c in A]
    db, lb = len(B) - 1, B[-1]
    while True:
        while R and not R[-1]:
            R.pop()
        if len(R) - 1 < db:
            return R
        top = R[-1]
        R = [_umul(lb, c) for c in R]
        shift = len(R) - 1 - db
        for i, bc in enumerate(B):
            R[shift + i] = _usub(R[shift + i], _umul(top, bc))
        R.pop()


def poly_gcd(p: BivariatePolynomial, q: BivariatePolynomial) -> BivariatePolynomial:
    """gcd of p and q in Z[r, s], graded-lex leading coefficient positive.

    Computed by splitting off the content in (Z[r])[s] and running a
    primitive pseudo-remainder sequence on the primitive parts; the
    content gcd reduces to the univariate case in Z[r].
    """
    if p.is_zero():
        return q.sign_normalized()
    if q.is_zero():
        return p.sign_normalized()
    A, B = p.s_coefficients(), q.s_coefficients()
    contA, contB = _slist_content(A), _slist_content(B)
    cont_gcd = _ugcd(contA, contB)
    A = _slist_divexact(A, contA)
    B = _slist_divexact(B, contB)
    if len(A) < len(B):
        A, B = B, A
    while B:
        R = _slist_prem(A, B)
        while R and not R[-1]:
            R.pop()
        if R:
            cr = _slist_content(R)
            R = _slist_divexact(R, cr)
        A, B = B, R
    # A is the primitive gcd in s; multiply back the r-content gcd
    out = [(_umul(cont_gcd, c) if c else []) for c in A]
    return BivariatePolynomial.from_s_coefficients(out).sign_normalized()


# ----------------------------------------------------------------------
# resultants
# ----------------------------------------------------------------------

def _bareiss_det(M: list[list[list[int]]]) -> list[int]:
    """Determinant of a matrix with entries in Z[x], fraction-free."""
    n = len(M)
    if n == 0:
        return [1]
    M = [row[:] for row in M]
    sign = 1
    prev: list[int] = [1]
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return []
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _usub(_umul(M[k][k], M[i][j]), _umul(M[i][k], M[k][j]))
                M[i][j] = _udivexact(num, prev)
            M[i][k] = []
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return _uneg(det) if sign < 0 else det


def _sylvester_det(P: list[list[int]], Q: list[list[int]]) -> list[int]:
    """Resultant of two polynomials given by coefficient lists over Z[x]."""
    m, n = len(P) - 1, len(Q) - 1
    if m < 0 or n < 0:
        return []
    if m == 0 and n == 0:
        return [1]
    size = m + n
    M: list[list[list[int]]] = [[[] for _ in range(size)] for _ in range(size)]
    for row in range(n):
        for i, c in enumerate(reversed(P)):
            M[row][row + i] = list(c)
    for row in range(m):
        for i, c in enumerate(reversed(Q)):
            M[n + row][row + i] = list(c)
    return _bareiss_det(M)


def resultant(
    p: BivariatePolynomial, q: BivariatePolynomial, eliminate: str
) -> UnivariatePolynomial:
    """Sylvester resultant eliminating "r" or "s"; result in the other variable.

    res(p, q) vanishes at x0 exactly when p(x0, .) and q(x0, .) share a
    root over an algebraic closure or both drop degree there.  Conventions:
    zero input gives the zero polynomial, two constants give 1.
    """
    if eliminate not in ("r", "s"):
        raise ValueError(f"eliminate must be 'r' or 's', got {eliminate!r}")
    keep = "r" if eliminate == "s" else "s"
    if p.is_zero() or q.is_zero():
        return UnivariatePolynomial.of([], keep)
    if eliminate == "s":
        P, Q = p.s_coefficients(), q.s_coefficients()
    else:
        P, Q = p.r_coefficients(), q.r_coefficients()
    return UnivariatePolynomial.of(_sylvester_det(P, Q), keep)


# ----------------------------------------------------------------------
# rational roots
# ----------------------------------------------------------------------

def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _int_coeffs(f) -> list[int]:
    if isinstance(f, UnivariatePolynomial):
        return list(f.coeffs)
    f = list(f)
    if all(isinstance(c, int) for c in f):
        return _unorm(f)
    coeffs = [Fraction(c) for c in f]
    if not coeffs:
        return []
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // _igcd(lcm, c.denominator)
    return _unorm([int(c * lcm) for c in coeffs])


def rational_roots(f) -> tuple[Fraction, ...]:
    """All rational roots of f, multiplicity collapsed, sorted ascending.

    Accepts a UnivariatePolynomial or an ascending coefficient sequence
    (ints or Fractions).  The zero polynomial is rejected.  The search
    strips the power-of-x factor (recording the root 0), divides out the
    integer content, and tests each candidate +-n/d with n a divisor of
    the trailing coefficient and d a divisor of the leading one, gcd(n, d)
    = 1, by exact integer evaluation of d^deg * f(n/d).  Candidates are
    pre-screened with (n - d) | f(1) and (n + d) | f(-1).
    """
    coeffs = _int_coeffs(f)
    if not coeffs:
        raise ValueError("the zero polynomial has every rational as a root")
    roots: set[Fraction] = set()
    v = 0
    while coeffs[v] == 0:
        v += 1
    if v:
        roots.add(Fraction(0))
        coeffs = coeffs[v:]
    if len(coeffs) == 1:
        return tuple(sorted(roots))
    content = _ucontent(coeffs)
    coeffs = [c // content for c in coeffs]
    f1 = sum(coeffs)
    fm1 = sum(c if i % 2 == 0 else -c for i, c in enumerate(coeffs))
    for n in _divisors(coeffs[0]):
        for d in _divisors(coeffs[-1]):
            if _igcd(n, d) != 1:
                continue
            for num in (n, -n):
                if f1 and num != d and f1 % (num - d):
                    continue
                if fm1 and num != -d and fm1 % (num + d):
                    continue
                if _scaled_eval(coeffs, num, d) == 0:
                    roots.add(Fraction(num, d))
    return tuple(sorted(roots))


def _scaled_eval(coeffs: Sequence[int], num: int, den: int) -> int:
    """den^deg * f(num/den) as an exact integer."""
    acc = 0
    dpow = 1
    for c in reversed(coeffs):
        acc = acc * num + c * dpow
        dpow *= den
    return acc


def evaluate(
    p: BivariatePolynomial, r0: Union[int, Fraction], s0: Union[int, Fraction]
) -> Fraction:
    """Exact value p(r0, s0)."""
    return p.evaluate(r0, s0)
