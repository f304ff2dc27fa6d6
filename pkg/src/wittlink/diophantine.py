"""Window searches for pq + pr + qr = (+-)m^2 with p, q, m odd and r even.

The negative-sign equation forces p + q = 0 mod 8 (the underlying even
form satisfies the vanishing hypothesis, so its signature -(p+q) is a
multiple of 8); the positive-sign variant only forces p + q to 2 or 6
mod 8 and realizes both.  Searches are exhaustive over finite windows.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from multiprocessing import Pool

from .errors import NotFoundError


@dataclass(frozen=True)
class SearchWindow:
    """Inclusive parameter ranges; parity is enforced during iteration."""

    p_range: tuple[int, int]
    q_range: tuple[int, int]
    r_range: tuple[int, int]
    m_max: int

    def __post_init__(self):
        for lo, hi in (self.p_range, self.q_range, self.r_range):
            if lo > hi:
                raise ValueError("empty range")
        if self.m_max < 1:
            raise ValueError("m_max must be at least 1")


def symmetric_window(pq_bound: int, r_bound: int, m_max: int) -> SearchWindow:
    return SearchWindow(p_range=(-pq_bound, pq_bound),
                        q_range=(-pq_bound, pq_bound),
                        r_range=(-r_bound, r_bound), m_max=m_max)


@dataclass(frozen=True)
class SolutionRecord:
    p: int
    q: int
    r: int
    m: int
    sign: int
    p_plus_q_mod_8: int


def _parity_values(lo: int, hi: int, parity: int):
    start = lo if lo % 2 == parity % 2 else lo + 1
    return range(start, hi + 1, 2)


def _search_chunk(args):
    p_values, q_range, r_range, m_max, sign = args
    out = []
    for p in p_values:
        for q in _parity_values(*q_range, 1):
            base = p * q
            s = p + q
            for r in _parity_values(*r_range, 0):
                t = base + r * s
                v = sign * t
                if v <= 0:
                    continue
                m = math.isqrt(v)
                if m * m == v and m % 2 == 1 and m <= m_max:
                    out.append(SolutionRecord(p=p, q=q, r=r, m=m, sign=sign,
                                              p_plus_q_mod_8=s % 8))
    return out


def search(w: SearchWindow, sign: int, jobs: int = 1,
           dedupe: bool = False) -> list[SolutionRecord]:
    """All (p,q,r) in the window with pq+pr+qr = sign*m^2, m odd <= m_max.

    Records are sorted lexicographically by (p,q,r), so the output does not
    depend on how the (p,q) grid was partitioned across workers.  With
    ``dedupe`` only representatives with p <= q are kept.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    p_values = list(_parity_values(*w.p_range, 1))
    if jobs > 1 and len(p_values) > 1:
        step = -(-len(p_values) // jobs)
        chunks = [(p_values[i:i + step], w.q_range, w.r_range, w.m_max, sign)
                  for i in range(0, len(p_values), step)]
        with Pool(jobs) as pool:
            parts = pool.map(_search_chunk, chunks)
        records = list(itertools.chain.from_iterable(parts))
    else:
        records = _search_chunk((p_values, w.q_range, w.r_range, w.m_max, sign))
    if dedupe:
        records = [rec for rec in records if rec.p <= rec.q]
    return sorted(records, key=lambda rec: (rec.p, rec.q, rec.r, rec.m))


def verify_negative_restriction(w: SearchWindow, jobs: int = 1) -> bool:
    """Every solution of pq+pr+qr = -m^2 in the window has p+q = 0 mod 8."""
    return all(rec.p_plus_q_mod_8 == 0 for rec in search(w, -1, jobs=jobs))


def residue_prefilter(sign: int) -> set[int]:
    """Residues of p+q mod 8 surviving the elementary coarse filter.

    Brute force over residue tuples (p,q,r,m) mod 8 with the parity
    constraints, testing the equation modulo 4 (r(p+q) is 0 mod 4 and
    m^2 is 1, so only pq mod 4 constrains anything at this level).  This
    is the cheap screen: {0,4} for the -m^2 equation, {2,6} for +m^2.
    Only the deeper vanishing argument cuts {0,4} down to {0}.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    odd = (1, 3, 5, 7)
    even = (0, 2, 4, 6)
    out = set()
    for p in odd:
        for q in odd:
            for r in even:
                for m in odd:
                    if (p * q + p * r + q * r - sign * m * m) % 4 == 0:
                        out.add((p + q) % 8)
    return out


def witness_both_positive_residues(w: SearchWindow, jobs: int = 1):
    """One solution of pq+pr+qr = +m^2 with p+q = 2 mod 8 and one with 6."""
    two = six = None
    for rec in search(w, 1, jobs=jobs):
        if rec.p_plus_q_mod_8 == 2 and two is None:
            two = rec
        elif rec.p_plus_q_mod_8 == 6 and six is None:
            six = rec
        if two and six:
            return two, six
    raise NotFoundError("window contains no witness pair for residues 2 and 6")
