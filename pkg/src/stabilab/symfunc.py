"""Truncated multigraded power series and the symmetric functions built on them.

A ``MultigradedSeries`` in q_1..q_k keeps only the monomials q^L with
``|L| <= bound``; products are truncated eagerly.  The plethystic series
s_mu[1/((1-q_1)...(1-q_k))] is computed as the weight generating function of
column-strict fillings of the diagram of mu by monomials in the q_i.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from math import comb
from typing import Iterable, Mapping

from .characters import horizontal_strips_inside
from .errors import ConsistencyError
from .partitions import ExponentVector, Partition, as_partition, exponent_vectors_upto

MONOMIAL_ORDERS = ("graded-lex", "graded-reverse-lex")


@dataclass(frozen=True)
class MultigradedSeries:
    k: int
    bound: int
    coeffs: dict[ExponentVector, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for exps, c in self.coeffs.items():
            exps = tuple(exps)
            if len(exps) != self.k:
                raise ValueError(f"exponent {exps} does not have {self.k} entries")
            if c and sum(exps) <= self.bound:
                clean[exps] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def one(cls, k: int, bound: int) -> "MultigradedSeries":
        return cls(k, bound, {(0,) * k: 1})

    @classmethod
    def univariate(cls, coefficients: Iterable[int], bound: int | None = None) -> "MultigradedSeries":
        coefficients = list(coefficients)
        if bound is None:
            bound = len(coefficients) - 1
        return cls(1, bound, {(d,): c for d, c in enumerate(coefficients)})

    def coefficient(self, exps: Iterable[int]) -> int:
        exps = tuple(exps)
        if sum(exps) > self.bound:
            raise ValueError(f"q^{exps} lies above the truncation bound {self.bound}")
        return self.coeffs.get(exps, 0)

    def component(self, d: int) -> dict[ExponentVector, int]:
        """The homogeneous degree-``d`` part as a plain dict."""
        if d > self.bound:
            raise ValueError(f"degree {d} lies above the truncation bound {self.bound}")
        return {e: c for e, c in self.coeffs.items() if sum(e) == d}

    def specialize(self) -> list[int]:
        """Coefficients after setting every q_i = q, for degrees 0..bound."""
        out = [0] * (self.bound + 1)
        for e, c in self.coeffs.items():
            out[sum(e)] += c
        return out

    def truncate(self, bound: int) -> "MultigradedSeries":
        return MultigradedSeries(self.k, min(bound, self.bound), self.coeffs)

    def _check(self, other: "MultigradedSeries") -> None:
        if self.k != other.k:
            raise ValueError("series in different numbers of variables")

    def __add__(self, other: "MultigradedSeries") -> "MultigradedSeries":
        self._check(other)
        acc: dict = defaultdict(int, self.coeffs)
        for e, c in other.coeffs.items():
            acc[e] += c
        return MultigradedSeries(self.k, min(self.bound, other.bound), acc)

    def __neg__(self) -> "MultigradedSeries":
        return self.scale(-1)

    def __sub__(self, other: "MultigradedSeries") -> "MultigradedSeries":
        return self + (-other)

    def scale(self, c) -> "MultigradedSeries":
        return MultigradedSeries(self.k, self.bound, {e: c * v for e, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, MultigradedSeries):
            return self.scale(other)
        self._check(other)
        bound = min(self.bound, other.bound)
        acc: dict = defaultdict(int)
        right = sorted(other.coeffs.items(), key=lambda t: sum(t[0]))
        for e1, c1 in self.coeffs.items():
            room = bound - sum(e1)
            for e2, c2 in right:
                if sum(e2) > room:
                    break
                acc[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
        return MultigradedSeries(self.k, bound, acc)

    __rmul__ = __mul__

    def to_json(self) -> list[dict]:
        return [{"exponents": list(e), "coeff": str(c)} for e, c in sorted(self.coeffs.items())]

    @classmethod
    def from_json(cls, data: list[dict], k: int | None = None, bound: int | None = None) -> "MultigradedSeries":
        terms = {tuple(t["exponents"]): int(t["coeff"]) for t in data}
        if k is None:
            if not terms:
                raise ValueError("cannot infer k from an empty series")
            k = len(next(iter(terms)))
        if bound is None:
            bound = max((sum(e) for e in terms), default=0)
        return cls(k, bound, terms)


def geometric_series(k: int, step: int, bound: int) -> MultigradedSeries:
    """prod_i 1/(1 - q_i^step), truncated."""
    coeffs = {}
    for e in exponent_vectors_upto(k, bound // step):
        coeffs[tuple(step * a for a in e)] = 1
    return MultigradedSeries(k, bound, coeffs)


# -- Schur polynomials -------------------------------------------------------

@lru_cache(maxsize=None)
def _schur_terms(lam: Partition, k: int) -> tuple[tuple[ExponentVector, int], ...]:
    # Branching: strip the cells holding the largest letter k, a horizontal strip.
    if k == 0:
        return (((), 1),) if not lam else ()
    if len(lam) > k:
        return ()
    acc: dict = defaultdict(int)
    for strip in range((lam[0] if lam else 0) + 1):
        for nu in horizontal_strips_inside(lam, strip):
            for exps, c in _schur_terms(nu, k - 1):
                acc[exps + (strip,)] += c
    return tuple(sorted(acc.items()))


def schur_poly(lam: Partition, k: int, bound: int | None = None) -> MultigradedSeries:
    """s_lam(q_1, ..., q_k); zero when lam has more than k parts."""
    lam = as_partition(lam)
    if k < 1:
        raise ValueError("k must be positive")
    if bound is None:
        bound = sum(lam)
    return MultigradedSeries(k, bound, dict(_schur_terms(lam, k)))


# -- monomial fillings -------------------------------------------------------

def monomial_list(k: int, bound: int, order: str = "graded-lex") -> list[ExponentVector]:
    """Monomials of degree <= bound in a graded total order with 1 minimal."""
    monos = exponent_vectors_upto(k, bound)
    if order == "graded-lex":
        return sorted(monos, key=lambda e: (sum(e), e))
    if order == "graded-reverse-lex":
        return sorted(monos, key=lambda e: (sum(e), tuple(-a for a in reversed(e))))
    raise ValueError(f"unknown monomial order {order!r}; expected one of {MONOMIAL_ORDERS}")


def plethysm_series(mu: Partition, k: int, bound: int, order: str = "graded-lex") -> MultigradedSeries:
    """s_mu[1/((1-q_1)...(1-q_k))] truncated at total degree ``bound``.

    The coefficient of q^L counts column-strict fillings of mu by monomials
    (weakly increasing along rows, strictly down columns) of weight q^L.
    """
    mu = as_partition(mu)
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    monos = monomial_list(k, bound, order)
    degs = [sum(m) for m in monos]
    cells = [(i, j) for i, row in enumerate(mu) for j in range(row)]
    counts: dict = defaultdict(int)
    if len(mu) > len(monos):
        return MultigradedSeries(k, bound, {})
    tail = [0] * (len(cells) + 1)
    for c in range(len(cells) - 1, -1, -1):
        tail[c] = tail[c + 1] + degs[cells[c][0]]
    grid = [[0] * row for row in mu]
    weight = [0] * k

    def rec(c: int, used: int) -> None:
        if c == len(cells):
            counts[tuple(weight)] += 1
            return
        i, j = cells[c]
        lo = grid[i][j - 1] if j else 0
        if i:
            lo = max(lo, grid[i - 1][j] + 1)
        for idx in range(lo, len(monos)):
            d = degs[idx]
            if used + d + tail[c + 1] > bound:
                break
            grid[i][j] = idx
            m = monos[idx]
            for t in range(k):
                weight[t] += m[t]
            rec(c + 1, used + d)
            for t in range(k):
                weight[t] -= m[t]

    rec(0, 0)
    return MultigradedSeries(k, bound, counts)


def product_series(k: int, bound: int) -> MultigradedSeries:
    """prod_{r>=1} (1 - q^r)^(-C(r+k-1, k-1)) in one variable, truncated."""
    if k < 1 or bound < 0:
        raise ValueError("need k >= 1 and bound >= 0")
    coeffs = [1] + [0] * bound
    for r in range(1, bound + 1):
        for _ in range(comb(r + k - 1, k - 1)):
            for d in range(r, bound + 1):
                coeffs[d] += coeffs[d - r]
    return MultigradedSeries.univariate(coeffs, bound)


def truncated_product_inverse(k: int, bound: int) -> list[int]:
    """Coefficients of prod_{r=1}^{bound} (1 - q^r)^C(r+k-1, k-1), degrees 0..bound."""
    coeffs = [1] + [0] * bound
    for r in range(1, bound + 1):
        for _ in range(comb(r + k - 1, k - 1)):
            for d in range(bound, r - 1, -1):
                coeffs[d] -= coeffs[d - r]
    return coeffs


def schur_expand(f: Mapping[ExponentVector, int] | MultigradedSeries, k: int) -> dict[Partition, int]:
    """Coefficients c_lam with f = sum c_lam s_lam(q_1..q_k).

    ``f`` must be symmetric in q_1..q_k (a dict of exponent vectors or a
    series; a series is expanded in every degree up to its bound).
    """
    terms = dict(f.coeffs if isinstance(f, MultigradedSeries) else f)
    work: dict = defaultdict(int)
    for e, c in terms.items():
        e = tuple(e)
        if len(e) != k:
            raise ValueError(f"exponent {e} does not have {k} entries")
        if c:
            work[e] += c
    for e, c in work.items():
        for other in set(permutations(e)):
            if work.get(other, 0) != c:
                raise ValueError(f"input is not symmetric: q^{e} and q^{other} have different coefficients")
    out: dict[Partition, int] = {}
    while work:
        lead = max(work)
        c = work[lead]
        if list(lead) != sorted(lead, reverse=True):
            raise ConsistencyError(f"leading monomial {lead} is not dominant")
        lam = as_partition(lead)
        out[lam] = c
        for e, v in _schur_terms(lam, k):
            new = work.get(e, 0) - c * v
            if new:
                work[e] = new
            else:
                work.pop(e, None)
        if work.get(lead):
            raise ConsistencyError(f"elimination failed to clear {lead}")
    return out
