"""Simultaneous-collision sweeps over two-row and three-row power grids.

A collision in a grid {r^m s^n} is a coincidence of two pairwise sums,
witnessed by an equation

    r^a + s^t r^b  =  s^u r^c + s^v r^d,

normalized so that min(a, b, c, d) = 0.  The shape triple (t, u, v)
identifies the collision type; T1 lists the four two-row types and T2
the fourteen types available with three rows.  This module enumerates
pairs of such equations (p, q), removes redundant and degenerate
octuples, and finds every rational (r, s) with r, s > 1 at which both
equations vanish simultaneously.  Solution pairs survive elimination:
res_s(p, q) confines r to the rational roots of an integer polynomial,
after which s is pinned by the specialized equations; every candidate
is confirmed by exact evaluation before it is recorded.

A nonconstant gcd of p and q would make the resultants vanish
identically, so gcds are detected first and divided out, exactly as a
hand computation would.  Every nonconstant gcd encountered anywhere is
classified against a closed whitelist; an unrecognized factor aborts
the sweep rather than being ignored.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .poly import (
    BivariatePolynomial,
    poly_gcd,
    rational_roots,
    resultant,
    _igcd,
    _uadd,
    _ueval,
    _ugcd,
    _umul,
    _unorm,
    _usub,
)
from .sets import is_multiplicatively_dependent

# Shape triples in the order the equations are stated: the four two-row
# types, then T2 extends them with every type reachable once a third row
# (s^2) is present.
T1: tuple[tuple[int, int, int], ...] = ((0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1))
T2: tuple[tuple[int, int, int], ...] = (
    (0, 1, 1), (0, 0, 1), (1, 1, 1), (1, 0, 1),
    (0, 2, 2), (0, 0, 2), (2, 2, 2), (2, 0, 2),
    (1, 1, 2), (2, 1, 1), (1, 2, 2), (2, 1, 2),
    (0, 1, 2), (1, 0, 2),
)

TWO_ROW_LENGTH = 8
THREE_ROW_LENGTH = 4


def _ordered_pairs(triples: Sequence[tuple[int, int, int]]) -> tuple:
    """Systems are symmetric in (p, q), so one orientation per pair suffices."""
    out = []
    for i in range(len(triples)):
        for j in range(i, len(triples)):
            out.append((triples[i], triples[j]))
    return tuple(out)


E1 = _ordered_pairs(T1)
E2 = _ordered_pairs(T2)


def collision_poly(triple: tuple[int, int, int], quad: tuple[int, int, int, int]) -> BivariatePolynomial:
    """The polynomial r^a + s^t r^b - s^u r^c - s^v r^d for one equation."""
    t, u, v = triple
    a, b, c, d = quad
    return BivariatePolynomial.from_terms(
        [(a, 0, 1), (b, t, 1), (c, u, -1), (d, v, -1)]
    )


def _quad_allowed(triple: tuple[int, int, int], quad: tuple[int, int, int, int]) -> bool:
    # Cheap per-equation filters, each justified independently of the pair:
    #   t = 0: the left side r^a + r^b is symmetric, keep a >= b.
    #   u = v: the right side s^u (r^c + r^d) is symmetric, keep c >= d.
    #   u = 0, t = v: the whole equation is symmetric under swapping the
    #     sides, keep a > c (a = c forces s to be a power of r).
    #   u = 0, t != v: a = c forces s^t r^b = s^v r^d, again a rational
    #     power relation, so only a != c can carry solutions.
    t, u, v = triple
    a, b, c, d = quad
    if min(quad) != 0:
        return False
    if t == 0 and a < b:
        return False
    if u == v and c < d:
        return False
    if u == 0:
        if t == v:
            if a <= c:
                return False
        elif a == c:
            return False
    return True


def good_octuple(
    octuple: Sequence[int],
    triples: tuple[tuple[int, int, int], tuple[int, int, int]],
    row_length: int,
    disable_dedup: bool = False,
) -> bool:
    """Admission test for one (p, q) system candidate.

    Applies the per-equation filters to both quadruples, rejects systems
    whose two equations coincide (one constraint repeated cannot isolate
    solution pairs, it traces the whole curve p = 0), and applies one
    pure dedup filter: for side-symmetric types the swap
    (a,b,c,d) = (g,h,e,f) reproduces q = -p.  The dedup filter removes
    only duplicates, never solutions; the equivalence run in the
    acceptance suite re-sweeps with it off.
    """
    if len(octuple) != 8:
        raise ValueError("octuple must have eight entries")
    if any(not 0 <= x < row_length for x in octuple):
        raise ValueError(f"exponents must lie in [0, {row_length})")
    quad_p = tuple(octuple[:4])
    quad_q = tuple(octuple[4:])
    tuv, xyz = triples
    if not _quad_allowed(tuv, quad_p) or not _quad_allowed(xyz, quad_q):
        return False
    if tuv == xyz and quad_p == quad_q:
        return False
    if not disable_dedup:
        t, u, v = tuv
        x, y, z = xyz
        if (0, t) == (u, v) and (0, x) == (y, z):
            if quad_p == (quad_q[2], quad_q[3], quad_q[0], quad_q[1]):
                return False
    return True


# ---------------------------------------------------------------------------
# Precomputed per-quadruple data.  A polynomial is stored as its tuple of
# s-coefficients, each a dense integer polynomial in r (ascending), which is
# all the elimination step needs.


def _s_coefficients(triple, quad):
    t, u, v = triple
    a, b, c, d = quad
    deg = max(t, u, v)
    size = max(a, b, c, d) + 1
    cols = [[0] * size for _ in range(deg + 1)]
    cols[0][a] += 1
    cols[t][b] += 1
    cols[u][c] -= 1
    cols[v][d] -= 1
    out = [tuple(_unorm(col)) for col in cols]
    while out and not out[-1]:
        out.pop()
    return tuple(out)


@lru_cache(maxsize=None)
def _quad_table(row_length: int, triple: tuple[int, int, int]):
    """All admissible quadruples for one equation type, with their
    s-coefficient forms and contents."""
    rows = []
    for quad in itertools.product(range(row_length), repeat=4):
        if not _quad_allowed(triple, quad):
            continue
        coeffs = _s_coefficients(triple, quad)
        content = ()
        for col in coeffs:
            if col:
                content = tuple(_ugcd(list(content), list(col)))
        rows.append((quad, coeffs, content))
    return tuple(rows)


def _closed_res_s(pc, qc):
    """Resultant in s of two polynomials given by s-coefficient lists.

    Degrees here never exceed 2, so the Sylvester determinants collapse
    to closed forms; cross-validated against the generic routine in the
    test suite."""
    m = len(pc) - 1
    n = len(qc) - 1
    if m <= 0 and n <= 0:
        return (1,)
    if m <= 0:
        base = pc[0] if pc else ()
        out = [1]
        for _ in range(n):
            out = _umul(out, base)
        return tuple(out)
    if n <= 0:
        base = qc[0] if qc else ()
        out = [1]
        for _ in range(m):
            out = _umul(out, base)
        return tuple(out)
    p0, p1 = pc[0], pc[1]
    q0, q1 = qc[0], qc[1]
    if m == 1 and n == 1:
        return tuple(_usub(_umul(p1, q0), _umul(p0, q1)))
    if m == 1 and n == 2:
        head = _usub(_umul(_umul(p1, p1), q0), _umul(_umul(p1, p0), q1))
        return tuple(_uadd(head, _umul(_umul(p0, p0), qc[2])))
    if m == 2 and n == 1:
        head = _usub(_umul(_umul(q1, q1), p0), _umul(_umul(q1, q0), p1))
        return tuple(_uadd(head, _umul(_umul(q0, q0), pc[2])))
    if m == 2 and n == 2:
        p2, q2 = pc[2], qc[2]
        e20 = _usub(_umul(p2, q0), _umul(p0, q2))
        e21 = _usub(_umul(p2, q1), _umul(p1, q2))
        e10 = _usub(_umul(p1, q0), _umul(p0, q1))
        return tuple(_usub(_umul(e20, e20), _umul(e21, e10)))
    raise ValueError(f"unsupported s-degrees ({m}, {n})")


def _sign_varies(coeffs) -> bool:
    last = 0
    for x in coeffs:
        if x:
            if last and (x > 0) != (last > 0):
                return True
            last = x
    return False


def _may_have_root_above_one(coeffs) -> bool:
    # Descartes twice over: no sign variation at all rules out positive
    # roots outright; otherwise shift x -> x + 1 and test again, since no
    # variation there means no real roots above 1.  Either exit skips the
    # divisor enumeration.
    if not _sign_varies(coeffs):
        return False
    c = list(coeffs)
    n = len(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += c[j + 1]
    return _sign_varies(c)


@lru_cache(maxsize=None)
def _contents_coprime(c1: tuple, c2: tuple) -> bool:
    return len(_ugcd(list(c1), list(c2))) <= 1


def _roots_above_one(coeffs) -> tuple[Fraction, ...]:
    lst = list(coeffs)
    if not lst:
        raise ValueError("zero polynomial reached the root scan")
    if not _may_have_root_above_one(lst):
        return ()
    return tuple(x for x in rational_roots(lst) if x > 1)


def _specialized_s_roots(scoeffs, r0: Fraction) -> set[Fraction]:
    vals = [_ueval(col, r0) for col in scoeffs]
    while vals and not vals[-1]:
        vals.pop()
    if not vals:
        # The s^0 coefficient of an admissible equation is positive for
        # r > 1 (it is r^a + r^b, r^a, or r^a - r^c with a > c), so the
        # specialization can never vanish identically.
        raise RuntimeError("identically vanishing specialization")
    if len(vals) == 1:
        return set()
    return {x for x in rational_roots(vals) if x > 1}


# ---------------------------------------------------------------------------
# GCD handling.


# Zero-free (or dependence-only) factors that show up multiplied into
# common factors of equation pairs.  None has a zero with r, s > 1 except
# r - s, whose locus is the excluded dependence s = r.
_PEEL_BASIS = tuple(
    BivariatePolynomial.from_terms({exps[0]: 1, exps[1]: coeff})
    for exps, coeff in (
        (((1, 0), (0, 0)), -1),   # r - 1
        (((1, 0), (0, 0)), 1),    # r + 1
        (((0, 1), (0, 0)), -1),   # s - 1
        (((0, 1), (0, 0)), 1),    # s + 1
        (((1, 0), (0, 1)), -1),   # r - s
        (((1, 0), (0, 1)), 1),    # r + s
        (((1, 1), (0, 0)), -1),   # r*s - 1
        (((1, 1), (0, 0)), 1),    # r*s + 1
        (((2, 0), (0, 0)), 1),    # r^2 + 1
    )
)
_R_MINUS_S = _PEEL_BASIS[4]


def _strip_trivial(D: BivariatePolynomial) -> dict[tuple[int, int], int]:
    # Remove the monomial and integer content; neither vanishes for
    # r, s > 1.
    terms = D.as_dict()
    min_r = min(i for (i, j) in terms)
    min_s = min(j for (i, j) in terms)
    content = 0
    for c in terms.values():
        content = _igcd(content, c)
    return {
        (i - min_r, j - min_s): c // content for (i, j), c in terms.items()
    }


def classify_gcd(D: BivariatePolynomial) -> str:
    """Closed whitelist for nonconstant common factors.

    Categories:
      ignorable_rs_dependent    zero locus forces a multiplicative relation
                                between r and s, which the hypotheses forbid
      ignorable_no_rational_locus  no rational zeros with r, s > 1
      ignorable_sign            all terms share a sign on r, s > 0
      double_collision_family   s^w r^j = r^{2l} - r^l + 1 in either
                                orientation, the one genuine coexistence
      flagged_unknown           anything else; callers must abort

    Zero-free basis factors (r - 1, s + 1, r*s - 1, ...) are divided out
    first, so products of harmless factors classify by their core.
    """
    if D.is_constant():
        raise ValueError("classify_gcd expects a nonconstant polynomial")
    cur = BivariatePolynomial.from_terms(_strip_trivial(D))
    peeled_dependence = False
    progress = True
    while progress and not cur.is_constant():
        progress = False
        for f in _PEEL_BASIS:
            try:
                cur = BivariatePolynomial.from_terms(
                    _strip_trivial(cur.div_exact(f))
                )
            except ArithmeticError:
                continue
            if f is _R_MINUS_S:
                peeled_dependence = True
            progress = True
            break
    if cur.is_constant():
        return (
            "ignorable_rs_dependent"
            if peeled_dependence
            else "ignorable_no_rational_locus"
        )
    terms = cur.as_dict()
    if all(c > 0 for c in terms.values()) or all(c < 0 for c in terms.values()):
        return "ignorable_sign"
    s_degrees = {j for (i, j) in terms}
    # Two-term cores A r^i s^j - B r^k s^l pin s^|j-l| to a rational
    # multiple of a power of r: a multiplicative dependence.
    if len(terms) == 2:
        (e1, c1), (e2, c2) = sorted(terms.items())
        if e1[1] != e2[1]:
            return "ignorable_rs_dependent"
        # Same s-power, monomial stripped: r^k = A/B.  Equation pairs only
        # share such a factor with A = B, pinning r to a root of unity.
        if abs(c1) == abs(c2):
            return "ignorable_no_rational_locus"
        return "flagged_unknown"
    if s_degrees <= {0}:
        # Pure r-polynomial: ignorable exactly when it has no rational
        # root above 1.
        coeffs = [0] * (max(i for (i, j) in terms) + 1)
        for (i, _j), c in terms.items():
            coeffs[i] = c
        if all(x <= 1 for x in rational_roots(coeffs)):
            return "ignorable_no_rational_locus"
        return "flagged_unknown"
    if _double_collision_gcd(terms):
        return "double_collision_family"
    return "flagged_unknown"


def _double_collision_gcd(terms: Mapping[tuple[int, int], int]) -> bool:
    # Match +-(s^w r^j - (r^{2l} - r^l + 1)) for w in {1, 2}, l >= 1, and
    # the reflected form +-((r^{2l} - r^l + 1) s^w - r^j) coming from the
    # reciprocal families.  Either way the support splits into a lone
    # monomial at one s-level and the three-term characteristic
    # polynomial 1 - r^l + r^{2l} (up to sign) at the other.
    s_parts: dict[int, dict[int, int]] = {}
    for (i, j), c in terms.items():
        s_parts.setdefault(j, {})[i] = c
    if len(s_parts) != 2 or 0 not in s_parts:
        return False
    w = max(s_parts)
    if w not in (1, 2):
        return False
    for lone, char in ((s_parts[w], s_parts[0]), (s_parts[0], s_parts[w])):
        if len(lone) != 1 or len(char) != 3:
            continue
        (_j, cj), = lone.items()
        if abs(cj) != 1:
            continue
        exps = sorted(char)
        base, mid, top = exps
        ell = mid - base
        if ell == 0 or top - mid != ell:
            continue
        if (
            char.get(base) == -cj
            and char.get(mid) == cj
            and char.get(top) == -cj
        ):
            return True
    return False


# ---------------------------------------------------------------------------
# The sweeps.


@dataclass(frozen=True)
class CollisionSystem:
    """One admissible pair of collision equations."""

    octuple: tuple[int, int, int, int, int, int, int, int]
    triples: tuple[tuple[int, int, int], tuple[int, int, int]]

    @property
    def p(self) -> BivariatePolynomial:
        return collision_poly(self.triples[0], self.octuple[:4])

    @property
    def q(self) -> BivariatePolynomial:
        return collision_poly(self.triples[1], self.octuple[4:])


@dataclass(frozen=True)
class CollisionRecord:
    r0: Fraction
    s0: Fraction
    system: CollisionSystem


@dataclass
class ExceptionalPairSet:
    pairs: tuple[tuple[Fraction, Fraction], ...]
    source: str
    witnesses: dict[tuple[Fraction, Fraction], CollisionRecord]

    def __contains__(self, pair) -> bool:
        return tuple(pair) in set(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def r_values(self) -> set[Fraction]:
        return {r for (r, _s) in self.pairs}


def possible_gcds(row_length: int, tuple_pairs: Sequence, disable_dedup: bool = False):
    """All nonconstant gcds over admissible systems, keyed by tuple pair.

    Follows the collection algorithm directly, except that systems whose
    gcd is provably constant (nonzero eliminant and coprime contents) are
    skipped without running the full gcd routine; the test suite checks
    that shortcut against the full computation on a sample.
    """
    out: dict[tuple, set[BivariatePolynomial]] = {}
    for pair in tuple_pairs:
        tuv, xyz = pair
        t, u, v = tuv
        x, y, z = xyz
        swap_filter = (0, t) == (u, v) and (0, x) == (y, z)
        same_type = tuv == xyz
        p_rows = _quad_table(row_length, tuv)
        q_rows = _quad_table(row_length, xyz)
        found: set[BivariatePolynomial] = set()
        for i, (quad_p, pc, pcont) in enumerate(p_rows):
            # For a same-type pair the system is symmetric in its two
            # equations, so half the quadruple matrix is redundant.
            q_iter = q_rows[i + 1:] if same_type and not disable_dedup else q_rows
            for quad_q, qc, qcont in q_iter:
                # A repeated equation is one constraint, not a system.
                if same_type and quad_p == quad_q:
                    continue
                if not disable_dedup and swap_filter:
                    if quad_p == (quad_q[2], quad_q[3], quad_q[0], quad_q[1]):
                        continue
                res = _closed_res_s(pc, qc)
                if any(res) and _contents_coprime(pcont, qcont):
                    continue
                D = poly_gcd(collision_poly(tuv, quad_p), collision_poly(xyz, quad_q))
                if not D.is_constant():
                    found.add(D)
        out[pair] = found
    return out


def collision_check(
    row_length: int,
    tuple_pairs: Sequence,
    disable_dedup: bool = False,
) -> list[CollisionRecord]:
    """Every exact rational solution (r0, s0), r0, s0 > 1, over all
    admissible systems for the given tuple pairs.

    For each system: divide out the gcd if there is one (classifying it
    against the whitelist), confine r to the rational roots of the
    s-eliminant, pin s at each candidate r both through the specialized
    equations, and keep exactly the pairs where both polynomials vanish.
    """
    records: list[CollisionRecord] = []
    for pair in tuple_pairs:
        tuv, xyz = pair
        t, u, v = tuv
        x, y, z = xyz
        swap_filter = (0, t) == (u, v) and (0, x) == (y, z)
        same_type = tuv == xyz
        p_rows = _quad_table(row_length, tuv)
        q_rows = _quad_table(row_length, xyz)
        for i, (quad_p, pc, pcont) in enumerate(p_rows):
            # Same-type pairs are symmetric in (p, q): skip the
            # redundant half of the quadruple matrix.
            q_iter = q_rows[i + 1:] if same_type and not disable_dedup else q_rows
            for quad_q, qc, qcont in q_iter:
                # A repeated equation is one constraint, not a system.
                if same_type and quad_p == quad_q:
                    continue
                if not disable_dedup and swap_filter:
                    if quad_p == (quad_q[2], quad_q[3], quad_q[0], quad_q[1]):
                        continue
                res = _closed_res_s(pc, qc)
                if not any(res) or not _contents_coprime(pcont, qcont):
                    records.extend(
                        _slow_system(row_length, pair, quad_p, quad_q)
                    )
                    continue
                roots_r = _roots_above_one(res)
                if not roots_r:
                    continue
                for r0 in roots_r:
                    cands = _specialized_s_roots(pc, r0) & _specialized_s_roots(qc, r0)
                    for s0 in sorted(cands):
                        records.append(
                            CollisionRecord(
                                r0,
                                s0,
                                CollisionSystem(quad_p + quad_q, pair),
                            )
                        )
    records.sort(key=_record_key)
    return records


def _record_key(rec: CollisionRecord):
    return (rec.system.triples, rec.system.octuple, rec.r0, rec.s0)


def _slow_system(row_length, pair, quad_p, quad_q) -> list[CollisionRecord]:
    """By-the-book path for systems with a nonconstant common factor."""
    tuv, xyz = pair
    p = collision_poly(tuv, quad_p)
    q = collision_poly(xyz, quad_q)
    D = poly_gcd(p, q)
    if not D.is_constant():
        category = classify_gcd(D)
        if category == "flagged_unknown":
            raise RuntimeError(
                f"unclassified common factor {D} for system "
                f"{pair} {quad_p + quad_q}"
            )
        p = p.div_exact(D)
        q = q.div_exact(D)
    res1 = resultant(p, q, "s")
    res2 = resultant(p, q, "r")
    if res1.degree < 0 or res2.degree < 0:
        raise RuntimeError(
            f"vanishing resultant after gcd division for {pair} {quad_p + quad_q}"
        )
    roots_r = [x for x in rational_roots(res1) if x > 1]
    roots_s = [x for x in rational_roots(res2) if x > 1]
    out = []
    for r0 in roots_r:
        for s0 in roots_s:
            if p.evaluate(r0, s0) == 0 and q.evaluate(r0, s0) == 0:
                out.append(
                    CollisionRecord(r0, s0, CollisionSystem(quad_p + quad_q, pair))
                )
    return out


def extract_pairs(records: Iterable[CollisionRecord], source: str) -> ExceptionalPairSet:
    """Deduplicated (r, s) pairs from a sweep, keeping one witness each.

    Pairs where s is a rational power of r (or vice versa) fall outside
    the hypotheses and are dropped.
    """
    witnesses: dict[tuple[Fraction, Fraction], CollisionRecord] = {}
    for rec in records:
        key = (rec.r0, rec.s0)
        if key not in witnesses:
            witnesses[key] = rec
    for key in [k for k in witnesses if is_multiplicatively_dependent(k[0], k[1])]:
        del witnesses[key]
    pairs = tuple(sorted(witnesses))
    return ExceptionalPairSet(pairs=pairs, source=source, witnesses=witnesses)


# ---------------------------------------------------------------------------
# Consequences: closed-form sumset lower bounds, and the single-family check.


def two_row_lower_bound(k: int, k1: int, k2: int, double_collision: bool = False) -> int:
    """Minimum sums for a k-subset of an 8x2 grid split k1/k2 across rows."""
    if k1 + k2 != k or k1 < k2 or k2 < 0 or k < 3:
        raise ValueError("need k = k1 + k2 with k1 >= k2 >= 0 and k >= 3")
    base = (k * k + k) // 2
    if k2 == 0:
        return base
    if double_collision:
        deduction = min(k - 3, 2 * k2 - 1)
    else:
        deduction = min(k1 - 1, k2)
    return base - max(deduction, 0)


def two_row_worst_case_bound(k: int, double_collision: bool = False) -> int:
    """Worst split in closed form: (k^2-k+6)/2 resp. (2k^2+3+(-1)^k)/4."""
    if k < 3:
        raise ValueError("need k >= 3")
    if double_collision:
        return (k * k - k + 6) // 2
    return (2 * k * k + 3 + (-1) ** k) // 4


def three_row_lower_bound(k: int) -> int:
    """Minimum sums for a k-subset of a 4x3 grid, floored at 2k - 1."""
    if k < 1:
        raise ValueError("need k >= 1")
    return max((k * k + k) // 2 - 6, 2 * k - 1)


@dataclass(frozen=True)
class FamilyCheck:
    accepted: bool
    family: Optional[tuple[int, int, str]]
    solutions: tuple[tuple[tuple[int, int, int], tuple[int, int, int, int]], ...]


def family_membership(r: Fraction, s: Fraction) -> Optional[tuple[int, int, str, bool]]:
    """Parameters (ell, j, form, squared) when (r, s) lies on a family.

    Checks both the plain and the squared-level orientations; None means
    the pair sits on no coexisting-family curve at all.
    """
    for squared in (False, True):
        hit = _family_parameters(Fraction(r), Fraction(s), squared)
        if hit is not None:
            return (*hit, squared)
    return None


def _family_parameters(r: Fraction, s: Fraction, squared: bool) -> Optional[tuple[int, int, str]]:
    # Direct families have s r^j equal to r^{2l} - r^l + 1; j may be
    # negative (s carries extra powers of r), bounded below by the grid
    # width since the normalized quadruples must fit.
    target = s * s if squared else s
    ells = (1,) if squared else (1, 2)
    for ell in ells:
        val = r ** (2 * ell) - r ** ell + 1
        for j in range(3 * ell - TWO_ROW_LENGTH + 1, 2 * ell):
            if target * r ** j == val:
                return (ell, j, "direct")
        power = r ** (2 * ell)
        j = 2 * ell
        while power <= target * val:
            if target * val == power:
                return (ell, j, "reciprocal")
            power *= r
            j += 1
    return None


def family_quadruples(ell: int, j: int, form: str, squared: bool = False):
    """The two coexisting families, with the equation types they solve.

    With squared=True the same exponent structure holds against s^2, so
    every s-power in the types doubles.
    """
    if form == "direct":
        if j >= 0:
            base = (
                ((0, 1, 1), (3 * ell, 0, j + ell, j)),
                ((0, 0, 1), (2 * ell, 0, ell, j)),
            )
        else:
            # s itself carries r^{-j}; normalizing min = 0 moves the
            # shift onto the s-free side.
            base = (
                ((0, 1, 1), (3 * ell - j, -j, ell, 0)),
                ((0, 0, 1), (2 * ell - j, -j, ell - j, 0)),
            )
    else:
        base = (
            ((0, 1, 1), (j + ell, j, 3 * ell, 0)),
            ((1, 1, 1), (j, ell, 2 * ell, 0)),
        )
    if not squared:
        return base
    return tuple(((2 * t, 2 * u, 2 * v), quad) for (t, u, v), quad in base)


def verify_single_family(
    row_length: int,
    pair: tuple[Fraction, Fraction],
    exceptional: Optional[ExceptionalPairSet] = None,
) -> FamilyCheck:
    """Confirm that coexisting collisions at (r, s) are fully explained.

    Enumerates every admissible single equation that vanishes at the
    pair.  Accepted when there is at most one, or when the solutions are
    exactly a double-collision family instance, or when the pair is a
    recorded exceptional pair (which the end verification checks one by
    one anyway).
    """
    r0, s0 = Fraction(pair[0]), Fraction(pair[1])
    squared = row_length == THREE_ROW_LENGTH
    triples = T1 if row_length == TWO_ROW_LENGTH else T2
    sols = []
    for triple in triples:
        for quad, coeffs, _content in _quad_table(row_length, triple):
            value = Fraction(0)
            for power, col in enumerate(coeffs):
                if col:
                    value += _ueval(col, r0) * s0 ** power
            if value == 0:
                sols.append((triple, quad))
    family = _family_parameters(r0, s0, squared=squared)
    solutions = tuple(sols)
    if len(solutions) <= 1:
        return FamilyCheck(True, family, solutions)
    if family is not None:
        expected = set(family_quadruples(*family, squared=squared))
        in_range = {
            (tr, quad)
            for tr, quad in expected
            if max(quad) < row_length
        }
        if set(solutions) == in_range and in_range:
            return FamilyCheck(True, family, solutions)
    if exceptional is not None and (r0, s0) in exceptional:
        return FamilyCheck(True, family, solutions)
    return FamilyCheck(False, family, solutions)


# ---------------------------------------------------------------------------
# Serialization.


def pairs_to_csv(pair_set: ExceptionalPairSet) -> str:
    lines = ["r_num,r_den,s_num,s_den,source,tuple_pair,octuple"]
    for r, s in pair_set.pairs:
        rec = pair_set.witnesses[(r, s)]
        tp = "|".join(",".join(map(str, t)) for t in rec.system.triples)
        oc = ",".join(map(str, rec.system.octuple))
        lines.append(
            f"{r.numerator},{r.denominator},{s.numerator},{s.denominator},"
            f"{pair_set.source},{tp},\"{oc}\""
        )
    return "\n".join(lines) + "\n"


def pairs_from_csv(text: str) -> list[tuple[Fraction, Fraction]]:
    lines = [ln for ln in text.strip().splitlines() if ln]
    if not lines or not lines[0].startswith("r_num"):
        raise ValueError("missing exceptional-pair header row")
    out = []
    for line in lines[1:]:
        parts = line.split(",")
        rn, rd, sn, sd = (int(x) for x in parts[:4])
        out.append((Fraction(rn, rd), Fraction(sn, sd)))
    return out


def gcds_to_json(gcd_map: Mapping) -> str:
    payload = {}
    for pair, polys in sorted(gcd_map.items(), key=lambda kv: str(kv[0])):
        key = "|".join(",".join(map(str, t)) for t in pair)
        payload[key] = sorted(str(p) for p in polys)
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
