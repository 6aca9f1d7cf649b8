"""Characters of S_n and traces of permutations on Weyl modules.

Everything is exact integer or rational arithmetic.  Irreducible characters
come from the Murnaghan-Nakayama rule in its beta-set form; the trace of a
permutation on the Weyl module nF^lam is the Schur polynomial s_lam at the
permutation's eigenvalues, evaluated through the power-sum expansion of
s_lam so no roots of unity are needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod

from . import cache
from .errors import ConsistencyError, ResourceError
from .partitions import (
    Partition,
    as_partition,
    centralizer_order,
    cycle_multiplicities,
    enumerate_partitions,
    partition_key,
    parse_partition,
)

MAX_TABLE_N = 20


@lru_cache(maxsize=None)
def _mn(lam: Partition, rho: Partition) -> int:
    # Remove a rim hook of length rho[0]; rim hooks are beta-number moves b -> b - r.
    if not rho:
        return 1 if not lam else 0
    r, rest = rho[0], rho[1:]
    width = len(lam)
    beta = [lam[i] + width - 1 - i for i in range(width)]
    members = set(beta)
    total = 0
    for b in beta:
        target = b - r
        if target < 0 or target in members:
            continue
        crossed = sum(1 for c in beta if target < c < b)
        moved = sorted((members - {b}) | {target}, reverse=True)
        smaller = tuple(p for p in (moved[i] - (width - 1 - i) for i in range(width)) if p)
        value = _mn(smaller, rest)
        total += -value if crossed % 2 else value
    return total


def character(mu: Partition, tau: Partition) -> int:
    """chi^mu evaluated on the class of cycle type ``tau``."""
    if sum(mu) != sum(tau):
        raise ValueError(f"{mu} and {tau} have different sizes")
    return _mn(tuple(mu), tuple(sorted(tau, reverse=True)))


@dataclass(frozen=True)
class CharacterTable:
    """Square integer table; rows are irreducibles V^mu, columns cycle types."""

    n: int
    partitions: tuple[Partition, ...]
    classes: tuple[Partition, ...]
    rows: dict[Partition, tuple[int, ...]] = field(repr=False)

    def __call__(self, mu: Partition, tau: Partition) -> int:
        return self.rows[tuple(mu)][self.classes.index(tuple(tau))]

    def row(self, mu: Partition) -> tuple[int, ...]:
        return self.rows[tuple(mu)]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "classes": [list(t) for t in self.classes],
            "rows": {partition_key(mu): list(self.rows[mu]) for mu in self.partitions},
        }

    @classmethod
    def from_json(cls, data: dict) -> "CharacterTable":
        classes = tuple(tuple(c) for c in data["classes"])
        rows = {parse_partition(key): tuple(vals) for key, vals in data["rows"].items()}
        parts = tuple(sorted(rows, reverse=True))
        return cls(int(data["n"]), parts, classes, rows)


def _cache_name(n: int) -> str:
    return f"chartable_n{n}.json"


@lru_cache(maxsize=None)
def _table(n: int) -> CharacterTable:
    stored = cache.read_json(_cache_name(n))
    if stored is not None and stored.get("n") == n:
        return CharacterTable.from_json(stored)
    parts = tuple(enumerate_partitions(n))
    rows = {mu: tuple(_mn(mu, tau) for tau in parts) for mu in parts}
    table = CharacterTable(n, parts, parts, rows)
    cache.write_json(_cache_name(n), table.to_json())
    return table


def character_table(n: int) -> CharacterTable:
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_TABLE_N:
        raise ResourceError(f"character table for n={n} exceeds cap {MAX_TABLE_N}")
    table = _table(n)
    # A disk-backed cache may have been configured after the memory copy was built.
    if cache.cache_dir() is not None and not cache.exists(_cache_name(n)):
        cache.write_json(_cache_name(n), table.to_json())
    return table


def power_sum_trace(r: int, tau: Partition) -> int:
    """p_r at the eigenvalues of a permutation of type ``tau``: fixed points of sigma^r."""
    if r < 1:
        raise ValueError("r must be positive")
    return sum(d * m for d, m in cycle_multiplicities(tau).items() if r % d == 0)


@lru_cache(maxsize=None)
def _weyl_trace(lam: Partition, tau: Partition) -> int:
    size = sum(lam)
    if size == 0:
        return 1
    table = character_table(size)
    total = Fraction(0)
    for rho in table.classes:
        chi = table(lam, rho)
        if chi:
            total += Fraction(chi * prod(power_sum_trace(p, tau) for p in rho),
                              centralizer_order(rho))
    if total.denominator != 1:
        raise ConsistencyError(f"trace on F^{lam} at {tau} is not integral: {total}")
    return int(total)


def weyl_trace(lam: Partition, tau: Partition, n: int) -> int:
    """Trace of a permutation of cycle type ``tau`` on the GL(n) Weyl module nF^lam."""
    lam = as_partition(lam)
    tau = as_partition(sorted(tau, reverse=True))
    if sum(tau) != n:
        raise ValueError(f"cycle type {tau} is not a partition of {n}")
    if len(lam) > n:
        return 0
    return _weyl_trace(lam, tau)


def weyl_dimension(lam: Partition, n: int) -> int:
    """dim nF^lam by the hook-content formula."""
    lam = as_partition(lam)
    if len(lam) > n:
        return 0
    num = den = 1
    conj = conjugate(lam)
    for i, row in enumerate(lam):
        for j in range(row):
            num *= n + j - i
            den *= (row - j - 1) + (conj[j] - i - 1) + 1
    return num // den


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def horizontal_strips_inside(outer: Partition, strip: int) -> list[Partition]:
    """All nu with outer/nu a horizontal strip of ``strip`` boxes."""
    out: list[Partition] = []
    width = len(outer)

    def rec(i: int, left: int, acc: list[int]) -> None:
        if i == width:
            if left == 0:
                out.append(tuple(p for p in acc if p))
            return
        lo = outer[i + 1] if i + 1 < width else 0
        for part in range(outer[i], lo - 1, -1):
            removed = outer[i] - part
            if removed > left:
                break
            acc.append(part)
            rec(i + 1, left - removed, acc)
            acc.pop()

    rec(0, strip, [])
    return out


def pieri_expand(eta: Partition, j: int) -> list[Partition]:
    """Partitions mu of |eta|+j with mu_1 >= eta_1 >= mu_2 >= eta_2 >= ...

    These index the constituents of Ind(V^eta x trivial) by the Pieri rule.
    Returned in decreasing lexicographic order.
    """
    eta = as_partition(eta)
    if j < 0:
        raise ValueError("j must be nonnegative")
    padded = list(eta) + [0]
    out: list[Partition] = []

    def rec(i: int, left: int, acc: list[int]) -> None:
        if i == len(padded):
            if left == 0:
                out.append(tuple(p for p in acc if p))
            return
        hi = padded[i] + left if i == 0 else min(padded[i - 1], padded[i] + left)
        for part in range(hi, padded[i] - 1, -1):
            acc.append(part)
            rec(i + 1, left - (part - padded[i]), acc)
            acc.pop()

    rec(0, j, [])
    return out


@lru_cache(maxsize=None)
def _kostka(lam: Partition, content: tuple[int, ...]) -> int:
    if not content:
        return 1 if not lam else 0
    if len(lam) > len(content):
        return 0
    return sum(_kostka(nu, content[:-1]) for nu in horizontal_strips_inside(lam, content[-1]))


def kostka(lam: Partition, xi) -> int:
    """Number of semistandard tableaux of shape ``lam`` and content ``xi``.

    ``xi`` may be any composition (zeros allowed); for dominant ``xi`` this is
    the dimension of the xi weight space of F^lam.
    """
    lam = as_partition(lam)
    content = tuple(int(c) for c in xi)
    if any(c < 0 for c in content):
        raise ValueError("content must be nonnegative")
    if sum(lam) != sum(content):
        raise ValueError(f"|{lam}| != |{content}|")
    return _kostka(lam, content)
