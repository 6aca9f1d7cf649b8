"""Exact sparse linear algebra over Q.

Vectors are dicts mapping a hashable column label (a monomial, usually) to a
nonzero int or Fraction.  ``EchelonForm`` keeps integer rows and eliminates
fraction-free, dividing out row content to keep entries small.  ``nullspace``
works with Fractions in reduced row echelon form because its output must be
a basis reduced on the free columns.

``rank`` and ``nullspace`` first work modulo a prime and only accept that
answer when it certifies itself over Q: the rank mod p never exceeds the
rank over Q, so a mod-p rank equal to the row or column count is exact; a
reconstructed kernel basis is checked row by row in integers, and since the
nullity mod p is at least the nullity over Q a verified basis of that size
spans the rational kernel.  Otherwise they fall back to exact elimination.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Hashable, Iterable, Mapping

import numpy as np

Vector = dict


def _integral(row: Mapping) -> dict:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    out = {}
    for c, v in row.items():
        if v:
            out[c] = int(v * den) if den != 1 else int(v)
    return out


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


class EchelonForm:
    """Row echelon form grown one row at a time.

    The leading column of a row is its maximum under ``key``; stored rows have
    pairwise distinct leading columns, so ``rank`` is the number of rows.
    """

    def __init__(self, key: Callable[[Hashable], object] | None = None):
        self.key = key
        self.pivots: dict[Hashable, dict] = {}

    def _lead(self, row: dict) -> Hashable:
        return max(row, key=self.key) if self.key else max(row)

    def reduce(self, row: Mapping) -> dict:
        """Remainder of ``row`` (scaled to a primitive integer row) after elimination."""
        work = _primitive(_integral(row))
        while work:
            lead = self._lead(work)
            prow = self.pivots.get(lead)
            if prow is None:
                return work
            a, b = prow[lead], work[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {c: a * v for c, v in work.items()}
            for c, v in prow.items():
                t = new.get(c, 0) - b * v
                if t:
                    new[c] = t
                else:
                    new.pop(c, None)
            work = _primitive(new)
        return work

    def insert(self, row: Mapping) -> bool:
        """Add ``row``; True if it was independent of the rows already present."""
        rem = self.reduce(row)
        if not rem:
            return False
        lead = self._lead(rem)
        if rem[lead] < 0:
            rem = {c: -v for c, v in rem.items()}
        self.pivots[lead] = rem
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def leads(self) -> list:
        return sorted(self.pivots, key=self.key, reverse=True) if self.key else sorted(self.pivots, reverse=True)


PRIME = 2 ** 127 - 1
# products of two residues must fit in int64
WORD_PRIME = 2 ** 31 - 1


def _mod(v) -> int:
    if isinstance(v, Fraction):
        return v.numerator * pow(v.denominator, -1, PRIME) % PRIME
    return v % PRIME


class _ModularEchelon:
    """Reduced row echelon form over Z/PRIME; pivot rows are monic."""

    def __init__(self):
        self.pivots: dict[Hashable, dict] = {}

    def insert(self, row: Mapping) -> bool:
        work = {}
        for c, v in row.items():
            v = _mod(v)
            if v:
                work[c] = v
        for p in [c for c in work if c in self.pivots]:
            f = work.get(p)
            if not f:
                continue
            for c, v in self.pivots[p].items():
                t = (work.get(c, 0) - f * v) % PRIME
                if t:
                    work[c] = t
                else:
                    work.pop(c, None)
        if not work:
            return False
        pivot = max(work)
        inv = pow(work[pivot], -1, PRIME)
        work = {c: v * inv % PRIME for c, v in work.items()}
        for prow in self.pivots.values():
            f = prow.get(pivot)
            if f:
                for c, v in work.items():
                    t = (prow.get(c, 0) - f * v) % PRIME
                    if t:
                        prow[c] = t
                    else:
                        prow.pop(c, None)
        self.pivots[pivot] = work
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _reconstruct(a: int) -> Fraction | None:
    """The fraction r/s with |r|, s below sqrt(PRIME/2) congruent to a, if any."""
    bound = 1 << 63
    r0, r1, s0, s1 = PRIME, a, 0, 1
    while r1 >= bound:
        q = r0 // r1
        r0, r1, s0, s1 = r1, r0 - q * r1, s1, s0 - q * s1
    if abs(s1) >= bound or s1 == 0:
        return None
    return Fraction(r1, s1)


def _word_residue(v) -> int:
    if isinstance(v, Fraction):
        return v.numerator * pow(v.denominator, -1, WORD_PRIME) % WORD_PRIME
    return v % WORD_PRIME


def _dense_rank_mod(rows: list, columns: list) -> int:
    p = WORD_PRIME
    index = {c: j for j, c in enumerate(columns)}
    a = np.zeros((len(rows), len(columns)), dtype=np.int64)
    for i, r in enumerate(rows):
        for c, v in r.items():
            a[i, index[c]] = _word_residue(v)
    top = 0
    for j in range(len(columns)):
        if top == len(rows):
            break
        nz = np.flatnonzero(a[top:, j])
        if not nz.size:
            continue
        i = top + int(nz[0])
        if i != top:
            a[[top, i]] = a[[i, top]]
        a[top, j:] = a[top, j:] * pow(int(a[top, j]), -1, p) % p
        below = top + 1 + np.flatnonzero(a[top + 1:, j])
        if below.size:
            a[below, j:] = (a[below, j:] - a[below, j, None] * a[top, j:]) % p
        top += 1
    return top


def rank(rows: Iterable[Mapping]) -> int:
    rows = [r for r in rows if any(r.values())]
    columns = sorted({c for r in rows for c, v in r.items() if v})
    if not rows:
        return 0
    try:
        fast = _dense_rank_mod(rows, columns)
    except ValueError:  # a denominator divisible by the prime
        fast = -1
    if fast == min(len(rows), len(columns)):
        return fast
    exact = EchelonForm()
    for r in rows:
        exact.insert(r)
    return exact.rank


class ReducedEchelon:
    """Reduced row echelon form over Q: each pivot row has 1 at its pivot and
    0 at every other pivot column."""

    def __init__(self):
        self.pivots: dict[Hashable, dict] = {}

    def insert(self, row: Mapping) -> bool:
        work = {c: Fraction(v) for c, v in row.items() if v}
        for p in [c for c in work if c in self.pivots]:
            f = work.get(p)
            if not f:
                continue
            for c, v in self.pivots[p].items():
                t = work.get(c, 0) - f * v
                if t:
                    work[c] = t
                else:
                    work.pop(c, None)
        if not work:
            return False
        pivot = max(work)
        inv = 1 / work[pivot]
        work = {c: v * inv for c, v in work.items()}
        for p, prow in self.pivots.items():
            f = prow.get(pivot)
            if f:
                for c, v in work.items():
                    t = prow.get(c, 0) - f * v
                    if t:
                        prow[c] = t
                    else:
                        prow.pop(c, None)
        self.pivots[pivot] = work
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def nullspace(rows: Iterable[Mapping], columns: Iterable[Hashable]) -> list[tuple[Hashable, dict]]:
    """Basis of {v : row . v = 0 for every row}, v supported on ``columns``.

    Returns ``(free_column, vector)`` pairs.  Each vector has coefficient 1 at
    its own free column and 0 at every other free column.
    """
    rows = list(rows)
    columns = list(columns)
    fast = _modular_nullspace(rows, columns)
    if fast is not None:
        return fast
    form = ReducedEchelon()
    for r in rows:
        form.insert(r)
    pivots = form.pivots
    basis = []
    for f in columns:
        if f in pivots:
            continue
        vec = {f: Fraction(1)}
        for p, prow in pivots.items():
            v = prow.get(f)
            if v:
                vec[p] = -v
        basis.append((f, vec))
    return basis


def _modular_nullspace(rows: list, columns: list) -> list | None:
    form = _ModularEchelon()
    for r in rows:
        form.insert(r)
    pivots = form.pivots
    basis = []
    for f in columns:
        if f in pivots:
            continue
        vec = {f: Fraction(1)}
        for p, prow in pivots.items():
            v = prow.get(f)
            if v:
                q = _reconstruct(PRIME - v)
                if q is None:
                    return None
                vec[p] = q
        basis.append((f, vec))
    if not _annihilates(rows, [v for _, v in basis]):
        return None
    return basis


def _annihilates(rows: list, vectors: list) -> bool:
    by_column: dict = {}
    for i, r in enumerate(rows):
        for c, v in r.items():
            if v:
                by_column.setdefault(c, []).append((i, v))
    for vec in vectors:
        acc: dict = {}
        for c, x in _integral(vec).items():
            for i, v in by_column.get(c, ()):
                acc[i] = acc.get(i, 0) + v * x
        if any(acc.values()):
            return False
    return True
