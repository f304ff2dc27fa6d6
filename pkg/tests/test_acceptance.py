"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines; every
criterion carries its stated tolerance (exact unless noted) and wall-clock
budget.
"""

import itertools
import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

from conftest import (A8_NEG, E8, NINE_ONE_SEIFERT, NINE_ONE_SYM,
                      random_even_form_rows, random_seifert_rows,
                      witt_zero_bruteforce)
from wittlink import (PretzelKnot, boundary_at_prime, boundary_is_zero,
                      determinant, diagonalize, discriminant_form,
                      find_metabolizer, finite_witt_add,
                      finite_witt_from_units, form_from_rows, gauss_sum,
                      gauss_sum_check, is_even, murasugi_check,
                      overlattice_from_metabolizer, pretzel_signature,
                      pretzel_witt_class, rational_witt_class,
                      residue_prefilter, search, seifert_from_rows, signature,
                      symmetric_window, symmetrize, verify_main_theorem,
                      witt_from_diagonal, witt_q_equal, witt_sum)

DIAG_2_M2 = [[2, 0], [0, -2]]


@contextmanager
def criterion(number, budget_s, description):
    start = time.monotonic()
    try:
        yield
    except Exception:
        print(f"ACCEPTANCE {number} FAIL: {description}")
        raise
    elapsed = time.monotonic() - start
    print(f"ACCEPTANCE {number} PASS ({elapsed:.2f}s): {description}")
    assert elapsed < budget_s, f"criterion {number} exceeded {budget_s}s budget"


def test_criterion_1_nine_one_pipeline():
    with criterion(1, 1.0, "9_1 pipeline: exact diagonal, zero residues, "
                           "sigma -8, det 9"):
        s = seifert_from_rows(NINE_ONE_SEIFERT)
        f = symmetrize(s)
        assert f.gram == tuple(tuple(r) for r in NINE_ONE_SYM)
        d = diagonalize(f)
        assert d.entries == tuple(Fraction(-(k + 2), k + 1) for k in range(8))
        c = witt_from_diagonal(d.entries)
        for p in (3, 5, 7):
            assert boundary_at_prime(c, p).zero
        assert boundary_is_zero(c)
        assert signature(f) == -8
        assert determinant(f) == 9


def test_criterion_2_lens_space_fixture():
    with criterion(2, 1.0, "-A8 chain: sigma -8, det 9, even; cyclic "
                           "discriminant of order 9 with an order-3 "
                           "metabolizer; main check applies and holds"):
        f = form_from_rows(A8_NEG)
        assert signature(f) == -8
        assert determinant(f) == 9
        assert is_even(f)
        d = discriminant_form(f)
        assert d.orders == (9,)
        meta = find_metabolizer(d)
        assert meta == [(3,)]
        # the witness subgroup <3> has order 3 = sqrt(9)
        assert {(k * meta[0][0] % 9,) for k in range(3)} == {(0,), (3,), (6,)}
        rep = verify_main_theorem(f)
        assert rep.theorem_applies and rep.conclusion_holds


def test_criterion_3_gauss_sum_theorem():
    with criterion(3, 60.0, "Gauss sums: E8 = 1 and -A8 = 3 exactly; 30+ "
                            "random even forms match sqrt|det|*e^(2pi i s/8) "
                            "(exact on square dets, else 1e-9)"):
        g = gauss_sum(form_from_rows(E8))
        assert g.terms == ((0, 1),)
        assert gauss_sum_check(form_from_rows(E8))

        f = form_from_rows(A8_NEG)
        assert abs(gauss_sum(f).approx() - 3) < 1e-12
        assert gauss_sum_check(f)

        rng = random.Random(3)
        exact_path = 0
        for i in range(35):
            if i < 5:
                # direct sums h + (-h) have square determinant, forcing the
                # exact cyclotomic comparison path
                h = random_even_form_rows(rng, rng.randint(1, 2),
                                          entry_bound=6, max_abs_det=70)
                rows = [row + [0] * len(h) for row in h] + \
                       [[0] * len(h) + [-x for x in row] for row in h]
            else:
                rows = random_even_form_rows(rng, rng.randint(1, 5),
                                             entry_bound=6, max_abs_det=5000)
            f = form_from_rows(rows)
            adet = abs(determinant(f))
            m = math.isqrt(adet)
            if m * m == adet:
                exact_path += 1
            assert gauss_sum_check(f), rows
        assert exact_path >= 5


def test_criterion_4_index_lemma():
    with criterion(4, 30.0, "index lemma: G(L) = [L1:L] * G(L1) and "
                            "G(L1) = 1 exactly on every metabolizer fixture"):
        fixtures = [E8, A8_NEG, NINE_ONE_SYM, DIAG_2_M2]
        for rows in fixtures:
            f = form_from_rows(rows)
            d = discriminant_form(f)
            meta = find_metabolizer(d)
            assert meta is not None
            f1, index = overlattice_from_metabolizer(f, d, meta)
            assert is_even(f1)
            g1 = gauss_sum(f1)
            assert g1.terms == ((0, 1),)  # G(L1) = 1 exactly
            # G(L) = index * G(L1): exact comparison via the cyclotomic check
            # and the multiset size |L#/L| = index^2
            g = gauss_sum(f)
            assert g.total_count() == index * index
            assert gauss_sum_check(f)
            assert index * index * abs(determinant(f1)) == abs(determinant(f))
            sig = signature(f)
            if index > 1:
                assert sig % 8 == 0


def test_criterion_5_main_theorem_property():
    with criterion(5, 120.0, "200+ random even odd-determinant forms: "
                             "vanishing residues force sigma = 0 mod 8, "
                             "zero violations"):
        rng = random.Random(5)
        applicable = 0
        for i in range(200):
            if i % 7 == 0:
                # direct sums h + (-h) are guaranteed boundary-zero samples
                h = random_even_form_rows(rng, 2, entry_bound=8, odd_det=True)
                rows = [row + [0] * len(h) for row in h] + \
                       [[0] * len(h) + [-x for x in row] for row in h]
            else:
                rows = random_even_form_rows(rng, 2 * rng.randint(1, 3),
                                             entry_bound=8, odd_det=True)
            f = form_from_rows(rows)
            det = determinant(f)
            assert det % 2 == 1, "sample must have odd determinant"
            assert is_even(f)
            if boundary_is_zero(rational_witt_class(f)):
                applicable += 1
                assert signature(f) % 8 == 0, rows
        assert applicable >= 20


def test_criterion_6_witt_relations():
    with criterion(6, 60.0, "Witt relations R1-R3 on 100+ samples, residue "
                            "additivity, and agreement with the brute-force "
                            "hyperbolicity oracle for p <= 13, rank <= 4"):
        rng = random.Random(6)

        def rand_rat():
            num = 0
            while num == 0:
                num = rng.randint(-40, 40)
            return Fraction(num, rng.randint(1, 40))

        for _ in range(100):
            a, b = rand_rat(), rand_rat()
            # R1: <a> + <-a> = 0 and <a> is not its own inverse
            assert witt_q_equal(witt_from_diagonal([a, -a]),
                                witt_from_diagonal([]))
            # R2: <a t^2> = <a>
            t = rand_rat()
            assert witt_from_diagonal([a * t * t]) == witt_from_diagonal([a])
            # R3: <a> + <b> = <a+b> + <ab(a+b)>
            if a + b != 0:
                assert witt_q_equal(
                    witt_from_diagonal([a, b]),
                    witt_from_diagonal([a + b, a * b * (a + b)]))

        for _ in range(30):
            c1 = witt_from_diagonal([rand_rat() for _ in range(rng.randint(1, 3))])
            c2 = witt_from_diagonal([rand_rat() for _ in range(rng.randint(1, 3))])
            for p in (2, 3, 5, 7, 11, 13):
                assert boundary_at_prime(witt_sum(c1, c2), p) == finite_witt_add(
                    boundary_at_prime(c1, p), boundary_at_prime(c2, p))

        for p in (2, 3, 5, 7, 11, 13):
            if p == 2:
                units = [1]
            else:
                nonsquare = next(u for u in range(2, p)
                                 if pow(u, (p - 1) // 2, p) != 1)
                units = [1, nonsquare]
            for rank in range(0, 5):
                for combo in itertools.combinations_with_replacement(units, rank):
                    cls = finite_witt_from_units(p, combo)
                    assert cls.zero == witt_zero_bruteforce(list(combo), p), \
                        (p, combo)


def test_criterion_7_murasugi():
    with criterion(7, 60.0, "Murasugi congruence on all fixtures and 100+ "
                            "random valid Seifert matrices, zero violations"):
        from conftest import SEIFERT_6_3, SEIFERT_8_1, TREFOIL_SEIFERT
        fixtures = [TREFOIL_SEIFERT, NINE_ONE_SEIFERT, SEIFERT_6_3,
                    SEIFERT_8_1, []]
        for rows in fixtures:
            assert murasugi_check(seifert_from_rows(rows))
        rng = random.Random(7)
        for _ in range(100):
            s = seifert_from_rows(random_seifert_rows(rng, rng.randint(1, 3)))
            assert murasugi_check(s)


def test_criterion_8_diophantine_restriction():
    with criterion(8, 120.0, "exhaustive |p|,|q| <= 99, |r| <= 100, m <= 99: "
                             "every pq+pr+qr = -m^2 solution has p+q = 0 "
                             "mod 8, vanishing pretzel residues, and "
                             "signature -(p+q)"):
        w = symmetric_window(99, 100, 99)
        records = search(w, -1)
        assert len(records) >= 1
        for rec in records:
            assert rec.p_plus_q_mod_8 == 0
            assert rec.p * rec.q + rec.p * rec.r + rec.q * rec.r == -rec.m ** 2
            k = PretzelKnot(rec.p, rec.q, rec.r)
            if rec.r != 0:
                assert boundary_is_zero(pretzel_witt_class(k))
            if rec.p + rec.q != 0:
                assert pretzel_signature(k) == -(rec.p + rec.q)


def test_criterion_9_positive_sign_contrast():
    with criterion(9, 10.0, "positive-sign table rows reproduced exactly; "
                            "coarse residue filters are {0,4} and {2,6}"):
        w = symmetric_window(9, 10, 11)
        rows = {(r.p, r.q, r.r): (r.m, r.p_plus_q_mod_8) for r in search(w, 1)}
        assert rows[(3, 7, 6)] == (9, 2)
        assert rows[(-9, 3, -6)] == (3, 2)
        assert rows[(-7, -3, -10)] == (11, 6)
        assert rows[(3, -5, -8)] == (1, 6)
        assert residue_prefilter(-1) == {0, 4}
        assert residue_prefilter(1) == {2, 6}


def test_note_10_external_fixtures_are_optional():
    # Knots beyond 9_1 from the low-crossing list (11a263, 11a334, 11a364,
    # 12a0093, 7_5 # 8_2) need externally supplied Seifert matrices; the CLI
    # knot subcommand ingests them as JSON/CSV but the suite does not gate
    # on unavailable data.
    print("ACCEPTANCE 10 NOTE: external KnotInfo fixtures are optional; "
          "ingestion covered by CLI tests")
