"""Acceptance gate: the eight contract criteria, one pass line each.

Heavy artifacts (the two collision sweeps, the winner searches, the
candidate pattern lists) are computed once per session and shared.
Expected classification forms and pair counts are pinned from frozen
reference runs; any drift fails the corresponding criterion.
"""

import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from sumprod.collisions import (
    E1,
    E2,
    T1,
    T2,
    THREE_ROW_LENGTH,
    TWO_ROW_LENGTH,
    collision_check,
    collision_poly,
    extract_pairs,
    pairs_from_csv,
    verify_single_family,
    _quad_table,
)
from sumprod.lattice import canonical_form, verify_winner, winners_search
from sumprod.poly import BivariatePolynomial, poly_gcd, resultant
from sumprod.sets import FiniteRationalSet, is_sidon, productset, sumset
from sumprod.verifier import (
    SHARP_SETS,
    alternating_second_row,
    bounded_spk_search,
    certify,
    gapped_second_row,
    shifted_three_rows,
    staircase,
    three_full_rows,
    two_full_rows,
    verify_future_examples,
    verify_table1,
)

DATA = Path(__file__).parent / "data"
F = Fraction


def line(n: int, detail: str) -> None:
    print(f"PASS criterion {n}: {detail}")


# --- shared heavy artifacts ----------------------------------------------


@pytest.fixture(scope="session")
def two_row_sweep():
    records = collision_check(TWO_ROW_LENGTH, E1)
    return records, extract_pairs(records, "two_row")


@pytest.fixture(scope="session")
def three_row_sweep():
    records = collision_check(THREE_ROW_LENGTH, E2)
    return records, extract_pairs(records, "three_row")


@pytest.fixture(scope="session")
def exceptional_union(two_row_sweep, three_row_sweep):
    return sorted(set(two_row_sweep[1].pairs) | set(three_row_sweep[1].pairs))


# --- pinned classification forms ------------------------------------------

TWO_ROW_FORMS = [two_full_rows(k1, k2) for k1, k2 in ((9, 1), (8, 2), (7, 3), (6, 4), (5, 5))]
GAPPED_FORMS = [gapped_second_row(10 - k2, k2) for k2 in range(2, 10)]
THREE_ROW_FORMS = [
    three_full_rows(*split)
    for split in ((6, 3, 1), (5, 4, 1), (5, 3, 2), (4, 4, 2), (4, 3, 3), (3, 4, 3))
]
BASE_TEN_FORMS = TWO_ROW_FORMS + GAPPED_FORMS + THREE_ROW_FORMS + [staircase()]
EXTRA_TEN_FORMS = [
    shifted_three_rows(*split) for split in ((5, 4, 1), (4, 4, 2), (3, 4, 3))
] + [alternating_second_row()]
# winners dominated by one long progression; one frozen representative per class
AP_HEAVY_TEN_FORMS = (
    [(0, n) for n in range(8)] + [(0, 10), (1, 0)],
    [(0, n) for n in range(8)] + [(1, 0), (1, 3)],
    [(0, n) for n in range(7)] + [(0, 8), (0, 9), (1, 0)],
    [(0, n) for n in range(7)] + [(0, 8), (0, 10), (1, 0)],
    [(0, n) for n in range(7)] + [(0, 8), (1, 0), (1, 2)],
    [(0, n) for n in range(6)] + [(0, 7), (0, 8), (0, 9), (1, 0)],
    [(0, n) for n in range(5)] + [(0, 6), (0, 7), (0, 8), (0, 9), (1, 0)],
)

NINE_POINT_FORMS = (
    two_full_rows(8, 1),
    two_full_rows(7, 2),
    two_full_rows(6, 3),
    two_full_rows(5, 4),
    [(m, 0) for m in range(7)] + [(8, 0), (0, 1)],
    [(m, 0) for m in range(7)] + [(0, 1), (2, 1)],
    three_full_rows(5, 3, 1),
    three_full_rows(4, 3, 2),
    three_full_rows(3, 3, 3),
)

TWO_ROW_R_VALUES = {F(2), F(3), F(3, 2)}
THREE_ROW_R_VALUES = {
    F(2), F(3), F(4), F(5),
    F(3, 2), F(5, 2), F(4, 3), F(5, 3), F(5, 4), F(9, 5),
}


# --- the criteria -----------------------------------------------------------


def test_criterion_1_example_table():
    start = time.monotonic()
    rows = verify_table1()
    elapsed = time.monotonic() - start
    assert [(row["k"], row["sums"], row["products"]) for row in rows] == [
        (4, 7, 9),
        (5, 10, 12),
        (6, 13, 15),
        (7, 18, 18),
        (8, 20, 22),
        (9, 25, 25),
        (10, 30, 29),
        (11, 34, 32),
    ]
    assert elapsed < 1.0
    line(1, f"all 8 example rows reproduce exactly ({elapsed:.2f}s)")


def test_criterion_2_winner_classification():
    start = time.monotonic()
    ten = winners_search(10, 29)
    nine = winners_search(9, 25)
    elapsed = time.monotonic() - start
    assert all(verify_winner(W, 10, 29) for W in ten)
    assert all(verify_winner(W, 9, 25) for W in nine)

    got_ten = {canonical_form(W) for W in ten}
    base = {canonical_form(P) for P in BASE_TEN_FORMS}
    extra = {canonical_form(P) for P in EXTRA_TEN_FORMS}
    heavy = {canonical_form(P) for P in AP_HEAVY_TEN_FORMS}
    assert len(base) == 20 and len(extra) == 4 and len(heavy) == 7
    expected_ten = base | extra | heavy
    assert len(expected_ten) == 31
    assert got_ten == expected_ten
    # the stated twenty forms all appear among the classes
    assert base <= got_ten

    got_nine = {canonical_form(W) for W in nine}
    assert got_nine == {canonical_form(P) for P in NINE_POINT_FORMS}
    assert len(got_nine) == 9

    assert elapsed < 3600.0
    line(
        2,
        "classification matches: 31 classes at (10, 29) covering the stated "
        f"twenty forms, 9 classes at (9, 25) ({elapsed:.0f}s)",
    )


def test_criterion_3_exceptional_pair_counts(two_row_sweep, three_row_sweep):
    _records2, set2 = two_row_sweep
    _records3, set3 = three_row_sweep
    assert len(set2) == 155
    assert set2.r_values() == TWO_ROW_R_VALUES
    per_r = {r: sum(1 for rr, _ in set2.pairs if rr == r) for r in set2.r_values()}
    assert per_r == {F(2): 129, F(3): 13, F(3, 2): 13}
    assert len(set3) == 75
    assert set3.r_values() == THREE_ROW_R_VALUES
    # both sweeps must agree with the frozen snapshots shipped with the tests
    assert list(set2.pairs) == pairs_from_csv((DATA / "two_row_pairs.csv").read_text())
    assert list(set3.pairs) == pairs_from_csv((DATA / "three_row_pairs.csv").read_text())
    line(3, "sweeps give exactly 155 and 75 pairs with the pinned ratio sets")


def test_criterion_4_double_collision_identity(two_row_sweep):
    p = collision_poly((0, 1, 1), (3, 0, 1, 0))   # 1 + r^3 - s - r s
    q = collision_poly((0, 0, 1), (2, 0, 1, 0))   # 1 + r^2 - r - s
    D = poly_gcd(p, q)
    target = BivariatePolynomial.from_terms(
        [(0, 1, 1), (2, 0, -1), (1, 0, 1), (0, 0, -1)]
    )
    assert D.sign_normalized() == target.sign_normalized()

    fc = verify_single_family(8, (F(2), F(3)), exceptional=two_row_sweep[1])
    assert fc.accepted
    assert fc.family == (1, 0, "direct")
    assert {((0, 1, 1), (3, 0, 1, 0)), ((0, 0, 1), (2, 0, 1, 0))} <= set(fc.solutions)
    line(4, "gcd is the coexistence factor and (2, 3) carries its two quadruples")


def test_criterion_5_final_certification(exceptional_union):
    start = time.monotonic()
    report10 = certify(10, exceptional_union)
    report11 = certify(11, exceptional_union)
    elapsed = time.monotonic() - start

    for report, k, counts in ((report10, 10, (30, 29)), (report11, 11, (34, 32))):
        assert report.passed and report.violations == ()
        assert report.threshold_sums == {10: 31, 11: 35}[k]
        assert len(report.sharp_witnesses) == 1
        witness = report.sharp_witnesses[0]
        scaled = FiniteRationalSet.of(x / witness.min() for x in witness)
        assert scaled == FiniteRationalSet.of(SHARP_SETS[k])
        assert (len(sumset(witness)), len(productset(witness))) == counts
    assert report10.configs_checked == 25 * (len(exceptional_union) + 2)
    assert report11.configs_checked == 325 * (len(exceptional_union) + 2)
    line(
        5,
        "no configuration beats the thresholds except the two extremal scaling "
        f"classes: ten and eleven element sums floors 30 and 34 ({elapsed:.0f}s)",
    )


def test_criterion_6_larger_examples():
    start = time.monotonic()
    rows = verify_future_examples()
    elapsed = time.monotonic() - start
    assert (rows[0]["k"], rows[0]["sums"], rows[0]["products"]) == (12, 41, 35)
    assert (rows[1]["k"], rows[1]["sums"], rows[1]["products"]) == (13, 43, 46)
    assert elapsed < 1.0
    line(6, f"the 12 and 13 element examples give (41, 35) and (43, 46) ({elapsed:.2f}s)")


def test_criterion_7_property_suites(two_row_sweep, three_row_sweep):
    rng = random.Random(0xACCE97)

    # sumset size bounds on random rational sets
    for _ in range(10_000):
        k = rng.randint(1, 8)
        elements = set()
        while len(elements) < k:
            elements.add(F(rng.randint(1, 60), rng.randint(1, 9)))
        A = FiniteRationalSet.of(elements)
        size = len(sumset(A))
        assert 2 * k - 1 <= size <= k * (k + 1) // 2

    # rational-ratio geometric progressions are Sidon sets
    for _ in range(1_000):
        ratio = F(rng.randint(2, 40), rng.randint(1, 20))
        if ratio == 1:
            continue
        x = F(rng.randint(1, 30), rng.randint(1, 10))
        k = rng.randint(3, 8)
        gp = FiniteRationalSet.of(x * ratio**i for i in range(k))
        assert len(gp) == k
        assert is_sidon(gp)
        assert len(sumset(gp)) == k * (k + 1) // 2

    # gcd divides both system polynomials exactly
    spaces = ((TWO_ROW_LENGTH, T1), (THREE_ROW_LENGTH, T2))
    for _ in range(500):
        row_length, triples = spaces[rng.randint(0, 1)]
        tuv, xyz = rng.choice(triples), rng.choice(triples)
        quad_p = rng.choice(_quad_table(row_length, tuv))[0]
        quad_q = rng.choice(_quad_table(row_length, xyz))[0]
        p, q = collision_poly(tuv, quad_p), collision_poly(xyz, quad_q)
        D = poly_gcd(p, q)
        if not D.is_constant():
            assert p.div_exact(D) * D == p
            assert q.div_exact(D) * D == q

    # resultants vanish at every recorded solution of their system
    for rec in two_row_sweep[0] + three_row_sweep[0]:
        p, q = rec.system.p, rec.system.q
        assert p.evaluate(rec.r0, rec.s0) == 0
        assert q.evaluate(rec.r0, rec.s0) == 0
        assert resultant(p, q, "s").evaluate(rec.r0) == 0
        assert resultant(p, q, "r").evaluate(rec.s0) == 0

    # the dedup filters drop only duplicates: rerunning without them
    # changes no extracted pair
    full2 = extract_pairs(collision_check(TWO_ROW_LENGTH, E1, disable_dedup=True), "f2")
    assert set(full2.pairs) == set(two_row_sweep[1].pairs)
    full3 = extract_pairs(collision_check(THREE_ROW_LENGTH, E2, disable_dedup=True), "f3")
    assert set(full3.pairs) == set(three_row_sweep[1].pairs)

    line(7, "bounds, Sidon, gcd, resultant and filter-equivalence properties hold")


def test_criterion_8_bounded_sweep():
    start = time.monotonic()
    found = bounded_spk_search(8, 60, 21, 21)
    elapsed = time.monotonic() - start
    assert found == []
    assert elapsed <= 600.0
    line(
        8,
        "no 8-element subset of 1..60 fits under caps (21, 21); a sweep, "
        f"not a proof ({elapsed:.0f}s)",
    )
