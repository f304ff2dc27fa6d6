"""Shared fixtures: reference matrices and independent oracles.

The oracles here (cofactor determinants, brute-force isotropic-subspace
search, alternate-pivot diagonalization, naive window search) deliberately
reimplement functionality along different paths so the library can be
checked against them.
"""

from fractions import Fraction

import pytest

# --- reference Gram matrices -------------------------------------------------

# Symmetrized Seifert form of the (2,9) torus knot: -2 diagonal, -1 elsewhere.
NINE_ONE_SYM = [[-2 if i == j else -1 for j in range(8)] for i in range(8)]

# A Seifert matrix for it: lower triangular, all entries -1 on and below
# the diagonal.  S + S^T is NINE_ONE_SYM and det(S - S^T) = 1.
NINE_ONE_SEIFERT = [[-1 if i >= j else 0 for j in range(8)] for i in range(8)]

# Linear chain of eight -2 vertices (negated A8 Cartan matrix); bounds the
# lens space L(9,1), determinant 9, signature -8.
A8_NEG = [[-2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(8)]
          for i in range(8)]

# Even unimodular rank-8 form: E8 Cartan matrix (chain 0..6, node 7 on 2).
E8 = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
for _i, _j in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)]:
    E8[_i][_j] = E8[_j][_i] = -1

HYPERBOLIC = [[0, 1], [1, 0]]

TREFOIL_SEIFERT = [[-1, 1], [0, -1]]

# Genus-2 Seifert matrix with Alexander polynomial t^4 - 3t^3 + 5t^2 - 3t + 1,
# determinant 13, signature 0 (the 6_3 knot).
SEIFERT_6_3 = [[-1, 1, 0, 0], [0, -1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1]]

# Genus-1 twist-knot Seifert matrix with Alexander polynomial 3t^2 - 7t + 3,
# determinant 13, signature 0 (the 8_1 knot).
SEIFERT_8_1 = [[1, 1], [0, -3]]


# --- independent oracles -----------------------------------------------------

def cofactor_det(rows):
    """Determinant by recursive cofactor expansion along the first row."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
        term = rows[0][j] * cofactor_det(minor)
        total += term if j % 2 == 0 else -term
    return total


def alt_pivot_signs(gram):
    """Sign count from a congruence diagonalization with the opposite
    tie-breaking: pivot on the largest-index nonzero diagonal entry."""
    n = len(gram)
    b = [[Fraction(x) for x in row] for row in gram]

    def swap(i, j):
        b[i], b[j] = b[j], b[i]
        for row in b:
            row[i], row[j] = row[j], row[i]

    for k in range(n):
        if b[k][k] == 0:
            for j in range(n - 1, k, -1):
                if b[j][j] != 0:
                    swap(k, j)
                    break
            else:
                for j in range(n - 1, k, -1):
                    if b[k][j] != 0:
                        b[k] = [x + y for x, y in zip(b[k], b[j])]
                        for row in b:
                            row[k] = row[k] + row[j]
                        break
        for i in range(k + 1, n):
            if b[i][k] == 0:
                continue
            t = b[i][k] / b[k][k]
            b[i] = [x - t * y for x, y in zip(b[i], b[k])]
            for row in b:
                row[i] = row[i] - t * row[k]
    return sum(1 if b[i][i] > 0 else -1 for i in range(n))


def witt_zero_bruteforce(units, p):
    """Is the diagonal form <units> over F_p metabolic?

    Searches directly for a totally isotropic subspace of half the rank,
    enumerating echelonized vectors; independent of the canonical-form
    bookkeeping in the library.
    """
    k = len(units)
    if k == 0:
        return True
    if k % 2:
        return False
    target = k // 2

    def bil(v, w):
        return sum(u * x * y for u, x, y in zip(units, v, w)) % p

    stack = [()]
    for _ in range(k):
        stack = [v + (c,) for v in stack for c in range(p)]
    # one representative per projective point (leading coefficient 1), kept
    # only when isotropic
    isotropic = [v for v in stack
                 if next((x for x in v if x), None) == 1 and bil(v, v) == 0]

    def independent(basis, v):
        rows = [list(b) for b in basis] + [list(v)]
        rank = 0
        for col in range(k):
            piv = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            inv = pow(rows[rank][col], -1, p)
            rows[rank] = [x * inv % p for x in rows[rank]]
            for r in range(len(rows)):
                if r != rank and rows[r][col] % p:
                    f = rows[r][col]
                    rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
            rank += 1
        return rank == len(rows)

    def extend(basis):
        if len(basis) == target:
            return True
        for v in isotropic:
            if any(bil(v, b) != 0 for b in basis):
                continue
            if not independent(basis, v):
                continue
            if extend(basis + [v]):
                return True
        return False

    return extend([])


def naive_window_search(bound, sign, m_max):
    """Triple loop plus an explicit loop over m; no perfect-square fast path."""
    out = []
    for p in range(-bound, bound + 1):
        if p % 2 == 0:
            continue
        for q in range(-bound, bound + 1):
            if q % 2 == 0:
                continue
            for r in range(-bound, bound + 1, 1):
                if r % 2 != 0:
                    continue
                t = p * q + p * r + q * r
                for m in range(1, m_max + 1, 2):
                    if t == sign * m * m:
                        out.append((p, q, r, m))
    return sorted(out)


def is_rational_square(x: Fraction) -> bool:
    import math
    if x <= 0:
        return False
    n, d = x.numerator, x.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


# --- random generators --------------------------------------------------------

def random_even_form_rows(rng, rank, entry_bound=8, odd_det=False,
                          max_abs_det=None):
    """Random symmetric even-diagonal integer matrices, rejection-sampled to
    be nondegenerate (and optionally odd/bounded determinant)."""
    if odd_det and rank % 2:
        # an even form of odd rank is alternating mod 2, hence has even det
        raise ValueError("odd determinant requires even rank")
    while True:
        rows = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            rows[i][i] = 2 * rng.randint(-entry_bound // 2, entry_bound // 2)
            for j in range(i + 1, rank):
                rows[i][j] = rows[j][i] = rng.randint(-entry_bound, entry_bound)
        det = cofactor_det(rows)
        if det == 0:
            continue
        if odd_det and det % 2 == 0:
            continue
        if max_abs_det is not None and abs(det) > max_abs_det:
            continue
        return rows


def random_seifert_rows(rng, genus, shears=6):
    """Random valid Seifert matrices: block sums of [[a,1],[0,b]] conjugated
    by unimodular shear matrices, so det(S - S^T) = 1 exactly."""
    n = 2 * genus
    rows = [[0] * n for _ in range(n)]
    for g in range(genus):
        i = 2 * g
        rows[i][i] = rng.randint(-2, 2)
        rows[i + 1][i + 1] = rng.randint(-2, 2)
        rows[i][i + 1] = 1
    for _ in range(shears):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        c = rng.choice((-1, 1))
        # S -> E S E^T with E the shear row_i += c*row_j
        for col in range(n):
            rows[i][col] += c * rows[j][col]
        for row in rows:
            row[i] += c * row[j]
    return rows


@pytest.fixture
def rng():
    import random
    return random.Random(20240811)
