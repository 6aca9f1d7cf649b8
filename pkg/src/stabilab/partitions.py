"""Partitions, exponent vectors, profiles and cycle-type bookkeeping.

Partitions are plain tuples of positive integers in weakly decreasing order;
the partition of 0 is the empty tuple.  Exponent vectors are tuples of ``k``
nonnegative integers.  A profile is a multiset of ``n`` exponent vectors,
stored canonically as a lexicographically sorted tuple.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterable, Sequence

Partition = tuple[int, ...]
ExponentVector = tuple[int, ...]
Profile = tuple[ExponentVector, ...]


def as_partition(parts: Iterable[int]) -> Partition:
    """Validate ``parts`` and return it as a canonical partition.

    Trailing zeros are dropped; anything else that is not weakly decreasing
    and nonnegative raises ``ValueError``.
    """
    seq = list(parts)
    while seq and seq[-1] == 0:
        seq.pop()
    for i, p in enumerate(seq):
        if not isinstance(p, int) or p < 1:
            raise ValueError(f"partition parts must be positive integers, got {seq}")
        if i and seq[i - 1] < p:
            raise ValueError(f"partition parts must be weakly decreasing, got {seq}")
    return tuple(seq)


def parse_partition(text: str) -> Partition:
    """Parse ``"3,1"``, ``"3+1"``, ``"[3, 1]"`` or ``""`` into a partition."""
    cleaned = text.strip().strip("[]()")
    if not cleaned:
        return ()
    for sep in "+ ":
        cleaned = cleaned.replace(sep, ",")
    return as_partition(int(tok) for tok in cleaned.split(",") if tok)


def partition_key(lam: Partition) -> str:
    """Cache key for a partition, e.g. ``"3+1"`` for (3, 1)."""
    return "+".join(map(str, lam))


def size(lam: Sequence[int]) -> int:
    return sum(lam)


def length(lam: Sequence[int]) -> int:
    return sum(1 for p in lam if p)


def second_part(mu: Partition) -> int:
    """``mu[1]``, with 0 for partitions with fewer than two parts."""
    return mu[1] if len(mu) > 1 else 0


def enumerate_partitions(
    n: int, max_length: int | None = None, max_part: int | None = None
) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order.

    >>> enumerate_partitions(4)
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_partitions(n, n if max_part is None else max_part,
                            n if max_length is None else max_length))


@lru_cache(maxsize=None)
def _partitions(n: int, max_part: int, max_length: int) -> tuple[Partition, ...]:
    if n == 0:
        return ((),)
    if max_length == 0:
        return ()
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first, max_length - 1):
            out.append((first,) + rest)
    return tuple(out)


def dominates(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """True iff every prefix sum of ``lam`` is at least that of ``mu``.

    Both vectors are padded with zeros to a common length.
    """
    width = max(len(lam), len(mu))
    a = list(lam) + [0] * (width - len(lam))
    b = list(mu) + [0] * (width - len(mu))
    sa = sb = 0
    for x, y in zip(a, b):
        sa += x
        sb += y
        if sa < sb:
            return False
    return True


def enumerate_exponent_vectors(k: int, d: int) -> list[ExponentVector]:
    """All ``a`` in Z^k_{>=0} with ``|a| = d``, in decreasing lex order."""
    if k < 1:
        raise ValueError("k must be positive")
    if d < 0:
        raise ValueError("d must be nonnegative")
    return list(_compositions(k, d))


@lru_cache(maxsize=None)
def _compositions(k: int, d: int) -> tuple[ExponentVector, ...]:
    if k == 1:
        return ((d,),)
    return tuple((first,) + rest
                 for first in range(d, -1, -1)
                 for rest in _compositions(k - 1, d - first))


def exponent_vectors_upto(k: int, d: int) -> list[ExponentVector]:
    """Exponent vectors of degree at most ``d``, grouped by increasing degree."""
    return [a for e in range(d + 1) for a in enumerate_exponent_vectors(k, e)]


def canonical_profile(vectors: Iterable[Sequence[int]]) -> Profile:
    return tuple(sorted(tuple(v) for v in vectors))


def enumerate_profiles(n: int, k: int, d: int) -> list[Profile]:
    """The set P^{n,k}_d: multisets of ``n`` exponent vectors of total degree ``d``.

    Each profile is returned in canonical (sorted) form, zero vectors first.
    """
    if n < 1 or k < 1 or d < 0:
        raise ValueError("need n >= 1, k >= 1, d >= 0")
    nonzero = [a for a in exponent_vectors_upto(k, d) if any(a)]
    zero = (0,) * k
    out: list[Profile] = []

    def extend(start: int, budget: int, chosen: list[ExponentVector]) -> None:
        if budget == 0:
            out.append(canonical_profile([zero] * (n - len(chosen)) + chosen))
            return
        if len(chosen) == n:
            return
        for idx in range(start, len(nonzero)):
            vec = nonzero[idx]
            deg = sum(vec)
            if deg > budget:
                continue
            chosen.append(vec)
            extend(idx, budget - deg, chosen)
            chosen.pop()

    extend(0, d, [])
    return sorted(set(out))


def profile_of_monomial(exps: Sequence[int], k: int, n: int) -> Profile:
    """Profile of a monomial in interleaved variable order (x1, y1, x2, y2, ...)."""
    return canonical_profile(tuple(exps[j * k:(j + 1) * k]) for j in range(n))


def bump_first_part(mu: Partition, r: int) -> Partition:
    """``mu + r e_1``: add ``r`` to the first part (the empty partition becomes (r,))."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        return tuple(mu)
    if not mu:
        return (r,)
    return (mu[0] + r,) + tuple(mu[1:])


# -- cycle types -------------------------------------------------------------

def cycle_multiplicities(tau: Partition) -> dict[int, int]:
    """Map part size ``d`` to the number of parts equal to ``d``."""
    return dict(Counter(tau))


def centralizer_order(tau: Partition) -> int:
    """z_tau = prod_d d^{m_d} m_d!."""
    return prod(d ** m * factorial(m) for d, m in Counter(tau).items())


def class_size(tau: Partition) -> int:
    return factorial(sum(tau)) // centralizer_order(tau)


def class_representative(tau: Partition) -> tuple[int, ...]:
    """A permutation (0-based image list) whose cycles are consecutive blocks."""
    perm: list[int] = []
    start = 0
    for c in tau:
        perm.extend(start + (i + 1) % c for i in range(c))
        start += c
    return tuple(perm)


def cycle_type(perm: Sequence[int]) -> Partition:
    """Cycle type of a 0-based permutation."""
    seen = [False] * len(perm)
    lengths = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        c = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            c += 1
        lengths.append(c)
    return tuple(sorted(lengths, reverse=True))


def distinct_rearrangements(vec: Sequence[int], width: int) -> int:
    """Number of distinct permutations of ``vec`` padded with zeros to ``width``."""
    padded = list(vec) + [0] * (width - len(vec))
    if len(padded) > width:
        raise ValueError("vector longer than width")
    out = factorial(width)
    for m in Counter(padded).values():
        out //= factorial(m)
    return out


def binomial_count(k: int, d: int) -> int:
    """Number of exponent vectors in Z^k_{>=0} of degree d: C(d+k-1, k-1)."""
    return comb(d + k - 1, k - 1)
