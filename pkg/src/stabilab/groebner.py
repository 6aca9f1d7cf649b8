"""Homogeneous Buchberger over Q for the ideal of positive-degree polarized power sums.

Polynomials are handled internally as dicts from exponent tuples to
Fractions.  For homogeneous input and a graded order the computation can be
truncated at a degree cap: the result is then a Groebner basis of the ideal
in every degree up to the cap.
"""

from __future__ import annotations

import hashlib
import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from . import cache
from .errors import ResourceError
from .partitions import enumerate_exponent_vectors
from .polyring import MultiPoly, polarized_power_sum, weyl_generators
from .reports import Perturb, StabilityReport

FAMILIES = ("graded-reverse-lex", "graded-lex", "lex")
SIGNIFICANCE_SCHEMES = ("interleaved", "reversed")
MAX_BASIS = 20_000

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order given by a family and a variable significance list.

    ``significance`` lists variable indices from most to least significant.
    """

    family: str
    significance: tuple[int, ...]

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown order family {self.family!r}; expected one of {FAMILIES}")
        if sorted(self.significance) != list(range(len(self.significance))):
            raise ValueError("significance must be a permutation of the variable indices")

    @classmethod
    def make(cls, k: int, n: int, family: str = "graded-reverse-lex",
             significance: str | Sequence[int] = "interleaved") -> "MonomialOrder":
        """Build the order for k sets of n variables.

        "interleaved" makes x1 > y1 > x2 > y2 > ... ; "reversed" makes
        yn > xn > ... > y1 > x1, so the last variable is the most significant.
        """
        width = k * n
        if significance == "interleaved":
            sig = tuple(range(width))
        elif significance == "reversed":
            sig = tuple(reversed(range(width)))
        else:
            sig = tuple(significance)
        return cls(family, sig)

    @property
    def graded(self) -> bool:
        return self.family != "lex"

    @property
    def scheme(self) -> str:
        width = len(self.significance)
        if self.significance == tuple(range(width)):
            return "interleaved"
        if self.significance == tuple(reversed(range(width))):
            return "reversed"
        return "custom-" + hashlib.sha1(repr(self.significance).encode()).hexdigest()[:10]

    def key(self, e: Monomial):
        s = tuple(e[i] for i in self.significance)
        if self.family == "lex":
            return s
        if self.family == "graded-lex":
            return (sum(s), s)
        return (sum(s), tuple(-x for x in reversed(s)))

    def to_json(self) -> dict:
        return {"family": self.family, "significance": list(self.significance)}


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _shift(poly: dict, mono: Monomial, scale) -> dict:
    return {tuple(x + y for x, y in zip(e, mono)): c * scale for e, c in poly.items()}


class _Reducer:
    def __init__(self, order: MonomialOrder):
        self.key = order.key
        self.leads: list[Monomial] = []
        self.polys: list[dict] = []

    def add(self, lead: Monomial, poly: dict) -> None:
        self.leads.append(lead)
        self.polys.append(poly)

    def divisor(self, t: Monomial, skip: int | None = None) -> int | None:
        for idx, lead in enumerate(self.leads):
            if idx != skip and _divides(lead, t):
                return idx
        return None

    def reduce(self, f: dict, skip: int | None = None) -> dict:
        """Full normal form of ``f`` (every term reduced)."""
        work = {e: Fraction(c) for e, c in f.items() if c}
        rem: dict = {}
        key = self.key
        while work:
            t = max(work, key=key)
            c = work[t]
            idx = self.divisor(t, skip)
            if idx is None:
                rem[t] = work.pop(t)
                continue
            lead = self.leads[idx]
            q = tuple(x - y for x, y in zip(t, lead))
            for e, v in self.polys[idx].items():
                m = tuple(x + y for x, y in zip(e, q))
                nv = work.get(m, 0) - c * v
                if nv:
                    work[m] = nv
                else:
                    work.pop(m, None)
        return rem


def _monic(poly: dict, key) -> tuple[Monomial, dict]:
    lead = max(poly, key=key)
    inv = 1 / Fraction(poly[lead])
    return lead, {e: c * inv for e, c in poly.items()}


@dataclass
class GroebnerBasis:
    """Reduced monic basis; complete through degree ``d_cap`` (None: complete)."""

    k: int
    n: int
    order: MonomialOrder
    d_cap: int | None
    polys: list[dict]

    @property
    def leads(self) -> list[Monomial]:
        return [max(p, key=self.order.key) for p in self.polys]

    def elements(self) -> list[MultiPoly]:
        return [MultiPoly(self.k, self.n, p) for p in self.polys]

    def lead_monomials(self, upto: int | None = None) -> "LeadMonomialSet":
        if upto is not None and self.d_cap is not None and upto > self.d_cap:
            raise ValueError(f"basis is only complete through degree {self.d_cap}")
        mons = [m for m in self.leads if upto is None or sum(m) <= upto]
        return LeadMonomialSet(self.k, self.n, frozenset(mons))

    def reduce(self, f: MultiPoly | dict) -> dict:
        red = _Reducer(self.order)
        for p in self.polys:
            red.add(max(p, key=self.order.key), p)
        return red.reduce(f.terms if isinstance(f, MultiPoly) else f)

    def standard_monomial_counts(self, bound: int) -> list[int]:
        """Number of monomials outside the lead ideal in each degree 0..bound."""
        if self.d_cap is not None and bound > self.d_cap:
            raise ValueError(f"basis is only complete through degree {self.d_cap}")
        leads = self.leads
        width = self.k * self.n
        return [sum(1 for e in enumerate_exponent_vectors(width, d)
                    if not any(_divides(l, e) for l in leads))
                for d in range(bound + 1)]

    def to_json(self) -> dict:
        return {
            "k": self.k, "n": self.n, "order": self.order.to_json(), "d_cap": self.d_cap,
            "basis": [MultiPoly(self.k, self.n, p).to_json() for p in self.polys],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GroebnerBasis":
        k, n = data["k"], data["n"]
        order = MonomialOrder(data["order"]["family"], tuple(data["order"]["significance"]))
        polys = [{e: Fraction(c) for e, c in MultiPoly.from_json(p, k, n).terms.items()}
                 for p in data["basis"]]
        return cls(k, n, order, data["d_cap"], polys)


@dataclass(frozen=True)
class LeadMonomialSet:
    k: int
    n: int
    monomials: frozenset

    def embedded(self, n: int) -> "LeadMonomialSet":
        """Same monomials viewed in k sets of ``n >= self.n`` variables."""
        if n < self.n:
            raise ValueError("can only embed into a larger ring")
        pad = (0,) * (self.k * (n - self.n))
        return LeadMonomialSet(self.k, n, frozenset(m + pad for m in self.monomials))

    def is_minimal(self) -> bool:
        return not any(a != b and _divides(a, b) for a in self.monomials for b in self.monomials)

    def to_json(self) -> list[list[int]]:
        return [list(m) for m in sorted(self.monomials)]

    def names(self) -> list[str]:
        return [monomial_name(m, self.k) for m in sorted(self.monomials, key=lambda t: (sum(t), t), reverse=True)]


def monomial_name(e: Monomial, k: int) -> str:
    return repr(MultiPoly(k, len(e) // k, {e: 1}))


def buchberger_homogeneous(generators: Iterable[MultiPoly | dict], order: MonomialOrder,
                           d_cap: int | None = None, max_basis: int = MAX_BASIS,
                           k: int | None = None, n: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal spanned by homogeneous ``generators``.

    Pairs are processed lowest lcm degree first with Buchberger's product and
    chain criteria.  With ``d_cap`` only S-pairs and generators of degree at
    most ``d_cap`` are treated, which requires a graded order.
    """
    gens: list[dict] = []
    for g in generators:
        if isinstance(g, MultiPoly):
            k, n = g.k, g.n
            g = g.terms
        if any(g.values()):
            gens.append({e: Fraction(c) for e, c in g.items() if c})
    for g in gens:
        if len({sum(e) for e in g}) > 1:
            raise ValueError("generators must be homogeneous")
    if d_cap is not None and not order.graded:
        raise ValueError("degree truncation needs a graded monomial order")
    width = len(order.significance)
    if k is None or n is None:
        k, n = 1, width
    key = order.key
    red = _Reducer(order)
    pending_gens = sorted(gens, key=lambda g: sum(next(iter(g))))
    heap: list = []
    live: set[tuple[int, int]] = set()
    counter = 0

    def push_pairs(t: int) -> None:
        nonlocal counter
        lt = red.leads[t]
        for i in range(t):
            li = red.leads[i]
            lc = _lcm(li, lt)
            if d_cap is not None and sum(lc) > d_cap:
                continue
            if all(min(x, y) == 0 for x, y in zip(li, lt)):
                continue  # coprime leads: S-polynomial reduces to zero
            live.add((i, t))
            heapq.heappush(heap, (sum(lc), counter, i, t))
            counter += 1

    def chain_skip(i: int, j: int) -> bool:
        lc = _lcm(red.leads[i], red.leads[j])
        for l, ll in enumerate(red.leads):
            if l in (i, j) or not _divides(ll, lc):
                continue
            if (min(i, l), max(i, l)) not in live and (min(j, l), max(j, l)) not in live:
                return True
        return False

    def absorb(h: dict) -> None:
        if not h:
            return
        lead, h = _monic(h, key)
        red.add(lead, h)
        if len(red.leads) > max_basis:
            raise ResourceError(f"Groebner basis exceeded {max_basis} elements")
        push_pairs(len(red.leads) - 1)

    gi = 0
    while gi < len(pending_gens) or heap:
        gdeg = sum(next(iter(pending_gens[gi]))) if gi < len(pending_gens) else None
        pdeg = heap[0][0] if heap else None
        if pdeg is not None and (gdeg is None or pdeg <= gdeg):
            _, _, i, j = heapq.heappop(heap)
            if chain_skip(i, j):
                live.discard((i, j))
                continue
            live.discard((i, j))
            li, lj = red.leads[i], red.leads[j]
            lc = _lcm(li, lj)
            s = _shift(red.polys[i], tuple(x - y for x, y in zip(lc, li)), 1)
            for e, c in _shift(red.polys[j], tuple(x - y for x, y in zip(lc, lj)), -1).items():
                v = s.get(e, 0) + c
                if v:
                    s[e] = v
                else:
                    s.pop(e, None)
            absorb(red.reduce(s))
        else:
            g = pending_gens[gi]
            gi += 1
            if d_cap is not None and gdeg > d_cap:
                continue
            absorb(red.reduce(g))

    return GroebnerBasis(k, n, order, d_cap, _interreduce(red.leads, red.polys, order))


def _interreduce(leads: list[Monomial], polys: list[dict], order: MonomialOrder) -> list[dict]:
    keep = [i for i, li in enumerate(leads)
            if not any(j != i and _divides(lj, li) and (lj != li or j < i) for j, lj in enumerate(leads))]
    red = _Reducer(order)
    for i in keep:
        red.add(leads[i], polys[i])
    out = []
    for idx, i in enumerate(keep):
        tail = {e: c for e, c in polys[i].items() if e != leads[i]}
        reduced = red.reduce(tail, skip=idx)
        reduced[leads[i]] = Fraction(1)
        out.append(reduced)
    # a tail in normal form has no term divisible by any lead, so one pass suffices
    out.sort(key=lambda p: order.key(max(p, key=order.key)))
    return out


def ideal_generators(k: int, n: int, max_degree: int | None = None) -> list[MultiPoly]:
    """p_a for 0 < |a| <= n (and <= max_degree)."""
    return [polarized_power_sum(a, n) for a in weyl_generators(k, n, max_degree)]


def _cache_name(k: int, n: int, order: MonomialOrder, d_cap: int | None) -> str:
    cap = "full" if d_cap is None else f"d{d_cap}"
    return f"groebner_k{k}_n{n}_{order.family}_{order.scheme}_{cap}.json"


def ideal_basis(k: int, n: int, order: MonomialOrder | None = None,
                d_cap: int | None = None) -> GroebnerBasis:
    """Groebner basis of I_{k,n}, read from or written to the disk cache."""
    order = order or MonomialOrder.make(k, n)
    if len(order.significance) != k * n:
        raise ValueError("order does not match the ring")
    name = _cache_name(k, n, order, d_cap)
    stored = cache.read_json(name)
    if stored is not None:
        basis = GroebnerBasis.from_json(stored)
        if basis.order == order and basis.d_cap == d_cap:
            return basis
    basis = buchberger_homogeneous(ideal_generators(k, n, d_cap), order, d_cap, k=k, n=n)
    cache.write_json(name, basis.to_json())
    return basis


def _order_for(k: int, n: int, family: str, significance: str) -> MonomialOrder:
    return MonomialOrder.make(k, n, family, significance)


def lead_monomials_upto(k: int, n: int, m: int, family: str = "graded-reverse-lex",
                        significance: str = "interleaved") -> LeadMonomialSet:
    """LG^{<=m}_{k,n}: lead monomials of degree <= m of the basis of I_{k,n}."""
    if m < 1:
        raise ValueError("m must be positive")
    basis = ideal_basis(k, n, _order_for(k, n, family, significance), d_cap=m)
    return basis.lead_monomials(upto=m)


def verify_conjecture2(k: int, n: int, m: int, family: str = "graded-reverse-lex",
                       significance: str = "interleaved",
                       perturb: Perturb | None = None) -> StabilityReport:
    """LG^{<=m}_{k,n} = LG^{<=m}_{k,m}: one membership instance per monomial
    in the union, so any failure names the monomials in the symmetric difference."""
    if not 1 <= m < n:
        raise ValueError("need 1 <= m < n")
    rep = StabilityReport("conjecture2", kind="conjecture",
                          grid={"k": k, "n": n, "m": m, "family": family, "significance": significance},
                          perturb=perturb)
    with rep.timed():
        big = lead_monomials_upto(k, n, m, family, significance)
        small = lead_monomials_upto(k, m, m, family, significance).embedded(n)
        for mono in sorted(big.monomials | small.monomials, key=lambda t: (sum(t), t), reverse=True):
            rep.add({"k": k, "n": n, "m": m, "family": family, "significance": significance,
                     "monomial": monomial_name(mono, k)},
                    int(mono in big.monomials), int(mono in small.monomials))
    return rep


def coinvariant_hilbert(k: int, n: int, bound: int, family: str = "graded-reverse-lex",
                        significance: str = "interleaved", complete: bool = False) -> list[int]:
    """Coinvariant Hilbert series through ``bound`` by counting standard monomials.

    ``complete`` computes the full (untruncated) basis first.
    """
    order = _order_for(k, n, family, significance)
    basis = ideal_basis(k, n, order, d_cap=None if complete else bound)
    return basis.standard_monomial_counts(bound)


def coinvariant_hilbert_check(k: int, n: int, m: int, family: str = "graded-reverse-lex",
                              significance: str = "interleaved",
                              perturb: Perturb | None = None) -> StabilityReport:
    """(h_{k,n})_{<=m} = (h_{k,m} / (1-q)^{k(n-m)})_{<=m}, degree by degree."""
    if not 1 <= m < n:
        raise ValueError("need 1 <= m < n")
    rep = StabilityReport("coinvariants", kind="conjecture",
                          grid={"k": k, "n": n, "m": m, "family": family, "significance": significance},
                          perturb=perturb)
    with rep.timed():
        big = coinvariant_hilbert(k, n, m, family, significance)
        small = coinvariant_hilbert(k, m, m, family, significance)
        width = k * (n - m)
        free = [comb(d + width - 1, width - 1) for d in range(m + 1)]
        rhs = [sum(small[i] * free[d - i] for i in range(d + 1)) for d in range(m + 1)]
        for d in range(m + 1):
            rep.add({"k": k, "n": n, "m": m, "d": d}, big[d], rhs[d])
    return rep


def q_factorial(n: int) -> list[int]:
    """Coefficients of [n]_q! = prod_{i=1}^n (1 + q + ... + q^{i-1})."""
    coeffs = [1]
    for i in range(1, n + 1):
        nxt = [0] * (len(coeffs) + i - 1)
        for a, c in enumerate(coeffs):
            for b in range(i):
                nxt[a + b] += c
        coeffs = nxt
    return coeffs


def verify_qfactorial(n: int, family: str = "graded-reverse-lex",
                      significance: str = "interleaved",
                      perturb: Perturb | None = None) -> StabilityReport:
    """Standard monomials of the one-set ideal reproduce [n]_q! in every degree."""
    rep = StabilityReport("coinvariants-k1", grid={"n": n, "family": family,
                                                   "significance": significance}, perturb=perturb)
    with rep.timed():
        target = q_factorial(n)
        top = len(target)
        counts = coinvariant_hilbert(1, n, top, family, significance, complete=True)
        for d in range(top + 1):
            rep.add({"n": n, "d": d}, counts[d], target[d] if d < top else 0)
    return rep
