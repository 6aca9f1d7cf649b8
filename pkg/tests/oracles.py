"""Brute-force reference computations used only by the tests.

Nothing here calls into the package's combinatorial routines; each value is
recomputed from definitions (explicit permutations, tableaux, monomials).
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial


@lru_cache(maxsize=None)
def partition_count(n: int, largest: int | None = None) -> int:
    """Number of partitions of n with parts <= largest, by plain recursion."""
    if largest is None:
        largest = n
    if n == 0:
        return 1
    return sum(partition_count(n - p, p) for p in range(1, min(n, largest) + 1))


def brute_partitions(n: int) -> list[tuple[int, ...]]:
    """All partitions of n via multisets of parts, deduplicated."""
    out = set()
    for parts in range(1, n + 1):
        for combo in itertools.combinations_with_replacement(range(1, n + 1), parts):
            if sum(combo) == n:
                out.add(tuple(sorted(combo, reverse=True)))
    return sorted(out, reverse=True)


def perm_cycle_type(perm) -> tuple[int, ...]:
    seen, lens = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        j, c = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            c += 1
        lens.append(c)
    return tuple(sorted(lens, reverse=True))


def class_sizes(n: int) -> Counter:
    return Counter(perm_cycle_type(p) for p in itertools.permutations(range(n)))


def ssyt(shape, entries: int):
    """Semistandard tableaux of ``shape`` with entries 0..entries-1, as row tuples."""
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    filling: dict = {}

    def rec(idx):
        if idx == len(cells):
            yield dict(filling)
            return
        i, j = cells[idx]
        lo = 0
        if j > 0:
            lo = max(lo, filling[(i, j - 1)])
        if i > 0:
            lo = max(lo, filling[(i - 1, j)] + 1)
        for v in range(lo, entries):
            filling[(i, j)] = v
            yield from rec(idx + 1)
        filling.pop((i, j), None)

    yield from rec(0)


def kostka_brute(lam, content) -> int:
    want = tuple(content)
    return sum(1 for t in ssyt(lam, len(want))
               if tuple(Counter(t.values()).get(i, 0) for i in range(len(want))) == want)


def schur_brute(lam, k: int) -> Counter:
    """Monomial expansion of s_lam(q_1..q_k)."""
    out: Counter = Counter()
    for t in ssyt(lam, k):
        c = Counter(t.values())
        out[tuple(c.get(i, 0) for i in range(k))] += 1
    return out


def tabloid_fixed_points(mu, perm) -> int:
    """Trace of perm on the permutation module of row tabloids of shape mu."""
    n = len(perm)
    count = 0
    # a tabloid is a map from letters to rows; fixed iff constant on cycles
    for rows in itertools.product(range(len(mu)), repeat=n):
        if Counter(rows) == Counter({i: mu[i] for i in range(len(mu))}) and all(
                rows[perm[i]] == rows[i] for i in range(n)):
            count += 1
    return count


def representative(tau) -> tuple[int, ...]:
    perm, start = [], 0
    for c in tau:
        perm.extend(start + (i + 1) % c for i in range(c))
        start += c
    return tuple(perm)


def monomials(nvars: int, d: int):
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        yield tuple(e)


def fixed_monomials(perm, d: int) -> int:
    """h_d at the eigenvalues of a permutation matrix: fixed monomials of degree d."""
    n = len(perm)
    return sum(1 for e in monomials(n, d) if all(e[perm[i]] == e[i] for i in range(n)))


def det(matrix) -> Fraction:
    m = [[Fraction(x) for x in row] for row in matrix]
    size, sign, out = len(m), 1, Fraction(1)
    for c in range(size):
        p = next((r for r in range(c, size) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        out *= m[c][c]
        for r in range(c + 1, size):
            f = m[r][c] / m[c][c]
            for j in range(c, size):
                m[r][j] -= f * m[c][j]
    return sign * out


def weyl_trace_brute(lam, perm) -> int:
    """Trace of a permutation matrix on the Weyl module, by Jacobi-Trudi in
    the complete homogeneous traces."""
    ell = len(lam)
    if ell == 0:
        return 1

    def h(r):
        return 0 if r < 0 else fixed_monomials(perm, r)

    return int(det([[h(lam[i] - i + j) for j in range(ell)] for i in range(ell)]))


def orbit_count(n: int, k: int, d: int) -> int:
    """Distinct S_n orbits on degree-d monomials in k sets of n variables."""
    seen = set()
    for e in monomials(n * k, d):
        rows = tuple(sorted(tuple(e[i * k:(i + 1) * k]) for i in range(n)))
        seen.add(rows)
    return len(seen)


def invariant_dim_average(n: int, k: int, d: int) -> int:
    """Average number of fixed monomials over all of S_n (Burnside)."""
    total = 0
    for perm in itertools.permutations(range(n)):
        full = tuple(perm[i // k] * k + i % k for i in range(n * k))
        total += fixed_monomials(full, d)
    q, r = divmod(total, factorial(n))
    assert r == 0
    return q


def fillings_brute(mu, k: int, bound: int) -> Counter:
    """Column-strict fillings of mu by monomials in k variables (total degree
    <= bound), counted by total multidegree.  Column strictness is taken with
    respect to a fixed total order of monomials; the count does not depend on it."""
    mons = sorted((e for d in range(bound + 1) for e in monomials(k, d)), key=lambda e: (sum(e), e))
    index = {e: i for i, e in enumerate(mons)}
    cells = [(i, j) for i, row in enumerate(mu) for j in range(row)]
    out: Counter = Counter()
    for choice in itertools.product(mons, repeat=len(cells)):
        if sum(map(sum, choice)) > bound:
            continue
        f = dict(zip(cells, choice))
        ok = all(index[f[(i, j)]] >= index[f[(i, j - 1)]] for i, j in cells if j > 0) and all(
            index[f[(i, j)]] > index[f[(i - 1, j)]] for i, j in cells if i > 0)
        if ok:
            out[tuple(sum(c[v] for c in choice) for v in range(k))] += 1
    return out
