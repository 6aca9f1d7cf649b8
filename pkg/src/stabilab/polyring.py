"""The ring of k sets of n variables with the diagonal S_n action.

Monomials are exponent tuples of length k*n in interleaved order: the variable
of set i (0-based) at position j (0-based) has index ``j*k + i``, so for k = 2
the order is x1, y1, x2, y2, ...  With this layout the ring for m <= n
variables per set embeds by zero padding.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, prod
from typing import Iterable, Mapping, Sequence

from .characters import character_table
from .errors import ConsistencyError, ResourceError
from .linalg import nullspace, rank
from .partitions import (
    ExponentVector,
    Partition,
    as_partition,
    centralizer_order,
    class_representative,
    enumerate_exponent_vectors,
    enumerate_partitions,
    enumerate_profiles,
)
from .reports import Perturb, StabilityReport
from .symfunc import truncated_product_inverse

Monomial = tuple[int, ...]
VAR_LETTERS = "xyzwuv"
MAX_COLUMNS = 200_000


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class MultiPoly:
    """Sparse polynomial with exact rational coefficients in k*n variables."""

    __slots__ = ("k", "n", "terms")

    def __init__(self, k: int, n: int, terms: Mapping[Monomial, object] | None = None):
        self.k = k
        self.n = n
        clean = {}
        if terms:
            width = k * n
            for e, c in terms.items():
                if c:
                    e = tuple(e)
                    if len(e) != width:
                        raise ValueError(f"monomial {e} does not have {width} exponents")
                    clean[e] = _norm(c)
        self.terms: dict[Monomial, object] = clean

    @classmethod
    def constant(cls, k: int, n: int, c=1) -> "MultiPoly":
        return cls(k, n, {(0,) * (k * n): c})

    @classmethod
    def variable(cls, k: int, n: int, i: int, j: int) -> "MultiPoly":
        """The variable of set ``i`` at position ``j`` (both 0-based)."""
        e = [0] * (k * n)
        e[j * k + i] = 1
        return cls(k, n, {tuple(e): 1})

    def _same_ring(self, other: "MultiPoly") -> None:
        if (self.k, self.n) != (other.k, other.n):
            raise ValueError("polynomials live in different rings")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return (self.k, self.n) == (other.k, other.n) and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.k, self.n, frozenset(self.terms.items())))

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._same_ring(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc.get(e, 0) + c
        return MultiPoly(self.k, self.n, acc)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.k, self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return MultiPoly(self.k, self.n, {e: c * other for e, c in self.terms.items()})
        self._same_ring(other)
        acc: dict = defaultdict(int)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                acc[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
        return MultiPoly(self.k, self.n, acc)

    def __rmul__(self, other) -> "MultiPoly":
        return self * other

    def multidegree_of(self, e: Monomial) -> ExponentVector:
        k = self.k
        return tuple(sum(e[i::k]) for i in range(k))

    def multidegrees(self) -> set[ExponentVector]:
        return {self.multidegree_of(e) for e in self.terms}

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_multihomogeneous(self) -> bool:
        return len(self.multidegrees()) <= 1

    def coefficient(self, e: Monomial):
        return self.terms.get(tuple(e), 0)

    def variable_name(self, idx: int) -> str:
        i, j = idx % self.k, idx // self.k
        if self.k <= len(VAR_LETTERS):
            return f"{VAR_LETTERS[i]}{j + 1}"
        return f"x{i + 1}_{j + 1}"

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda t: (sum(t), t), reverse=True):
            c = self.terms[e]
            mono = "*".join(
                self.variable_name(i) + (f"^{p}" if p > 1 else "") for i, p in enumerate(e) if p
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list[dict]:
        out = []
        for e in sorted(self.terms):
            c = Fraction(self.terms[e])
            out.append({"exps": list(e), "num": str(c.numerator), "den": str(c.denominator)})
        return out

    @classmethod
    def from_json(cls, data: list[dict], k: int, n: int) -> "MultiPoly":
        return cls(k, n, {tuple(t["exps"]): Fraction(int(t["num"]), int(t["den"])) for t in data})


def polarized_power_sum(a: Sequence[int], n: int) -> MultiPoly:
    """p_a = sum_j prod_i (x_{i,j})^{a_i}; the constant 1 when a = 0."""
    a = tuple(a)
    k = len(a)
    if any(v < 0 for v in a):
        raise ValueError("exponents must be nonnegative")
    if not any(a):
        return MultiPoly.constant(k, n)
    terms = {}
    for j in range(n):
        e = [0] * (k * n)
        e[j * k:(j + 1) * k] = a
        terms[tuple(e)] = 1
    return MultiPoly(k, n, terms)


def act(sigma: Sequence[int], f: MultiPoly) -> MultiPoly:
    """Diagonal action x_{i,j} -> x_{i,sigma[j]} of a 0-based permutation."""
    k, n = f.k, f.n
    if sorted(sigma) != list(range(n)):
        raise ValueError(f"{sigma} is not a permutation of range({n})")
    out = {}
    for e, c in f.terms.items():
        new = [0] * (k * n)
        for j in range(n):
            t = sigma[j] * k
            new[t:t + k] = e[j * k:(j + 1) * k]
        out[tuple(new)] = c
    return MultiPoly(k, n, out)


def compose(sigma: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    """(sigma tau)(j) = sigma(tau(j))."""
    return tuple(sigma[t] for t in tau)


def _falling(e: int, a: int) -> int:
    out = 1
    for t in range(a):
        out *= e - t
    return out


def apply_power_sum_operator(a: Sequence[int], f: MultiPoly) -> MultiPoly:
    """p_a(d) f, where x_{i,j} acts as the partial derivative in x_{i,j}."""
    k, n = f.k, f.n
    a = tuple(a)
    if not any(a):
        return f
    acc: dict = defaultdict(int)
    for e, c in f.terms.items():
        for j in range(n):
            block = e[j * k:(j + 1) * k]
            if all(x >= y for x, y in zip(block, a)):
                coeff = prod(_falling(x, y) for x, y in zip(block, a))
                new = list(e)
                new[j * k:(j + 1) * k] = [x - y for x, y in zip(block, a)]
                acc[tuple(new)] += c * coeff
    return MultiPoly(k, n, acc)


def polarization_operator(i: int, f: MultiPoly) -> MultiPoly:
    """L_i f = sum_j d f / d x_{i,j}."""
    a = [0] * f.k
    a[i] = 1
    return apply_power_sum_operator(a, f)


# -- generators and their products -----------------------------------------

def weyl_generators(k: int, n: int, max_degree: int | None = None) -> list[ExponentVector]:
    """Nonzero a with |a| <= n (and <= max_degree), by increasing degree."""
    top = n if max_degree is None else min(n, max_degree)
    return [a for d in range(1, top + 1) for a in enumerate_exponent_vectors(k, d)]


def generator_multisets(k: int, n: int, d_max: int) -> list[tuple[ExponentVector, ...]]:
    """Multisets of Weyl generators with total degree <= d_max, by degree."""
    gens = weyl_generators(k, n, d_max)
    out: list[tuple[ExponentVector, ...]] = []

    def rec(start: int, budget: int, acc: list) -> None:
        out.append(tuple(acc))
        for idx in range(start, len(gens)):
            d = sum(gens[idx])
            if d <= budget:
                acc.append(gens[idx])
                rec(idx, budget - d, acc)
                acc.pop()

    rec(0, d_max, [])
    return sorted(out, key=lambda ms: (sum(map(sum, ms)), ms))


@lru_cache(maxsize=4096)
def _product(k: int, n: int, multiset: tuple[ExponentVector, ...]) -> MultiPoly:
    if not multiset:
        return MultiPoly.constant(k, n)
    return _product(k, n, multiset[:-1]) * polarized_power_sum(multiset[-1], n)


def power_sum_product(multiset: Iterable[Sequence[int]], k: int, n: int) -> MultiPoly:
    return _product(k, n, tuple(tuple(a) for a in multiset))


def generator_products(k: int, n: int, d_max: int) -> list[tuple[tuple[ExponentVector, ...], MultiPoly]]:
    """(multiset, p_{a^1}...p_{a^r}) for every multiset of Weyl generators of degree <= d_max."""
    return [(ms, _product(k, n, ms)) for ms in generator_multisets(k, n, d_max)]


def multiset_degree(ms: Iterable[Sequence[int]]) -> int:
    return sum(sum(a) for a in ms)


def multiset_multidegree(ms: Iterable[Sequence[int]], k: int) -> ExponentVector:
    out = [0] * k
    for a in ms:
        for i, v in enumerate(a):
            out[i] += v
    return tuple(out)


def rank_of(polys: Iterable[MultiPoly]) -> int:
    """Dimension of the span (exact; see ``linalg.rank``)."""
    return rank(p.terms for p in polys)


def orbit_sum(e: Monomial, k: int, n: int) -> MultiPoly:
    """Sum of the S_n orbit of the monomial ``e``."""
    blocks = [tuple(e[j * k:(j + 1) * k]) for j in range(n)]
    seen = set()
    for perm in permutations(blocks):
        seen.add(tuple(x for b in perm for x in b))
    return MultiPoly(k, n, {m: 1 for m in seen})


def orbit_sums(k: int, n: int, d: int) -> list[MultiPoly]:
    """One orbit sum per profile in P^{n,k}_d."""
    return [orbit_sum(tuple(x for b in prof for x in b), k, n) for prof in enumerate_profiles(n, k, d)]


def verify_theorem1(k: int, n: int, perturb: Perturb | None = None) -> StabilityReport:
    """Products of Weyl generators of degree d <= n+1 are independent and as
    many as |P^{n,k}_d|."""
    rep = StabilityReport("theorem1", grid={"k": k, "n": n}, perturb=perturb)
    with rep.timed():
        by_degree: dict[int, list[MultiPoly]] = defaultdict(list)
        for ms, poly in generator_products(k, n, n + 1):
            by_degree[multiset_degree(ms)].append(poly)
        for d in range(n + 2):
            expected = len(enumerate_profiles(n, k, d))
            polys = by_degree.get(d, [])
            rep.add({"k": k, "n": n, "d": d, "quantity": "rank"}, rank_of(polys), expected)
            rep.add({"k": k, "n": n, "d": d, "quantity": "count"}, len(polys), expected)
    return rep


def product_counts(k: int, n: int, d_cap: int) -> list[int]:
    """Number of products of Weyl generators (|a| <= n) in each degree 0..d_cap."""
    coeffs = [1] + [0] * d_cap
    for r in range(1, min(n, d_cap) + 1):
        for _ in range(comb(r + k - 1, k - 1)):
            for d in range(r, d_cap + 1):
                coeffs[d] += coeffs[d - r]
    return coeffs


def first_relation_degree(k: int, n: int, d_cap: int, confirm_rank: bool = False) -> int | None:
    """Smallest degree d <= d_cap where products of generators outnumber
    dim R_d^{S_n}, or None.

    The products always span the invariants, so an excess is a relation.
    With ``confirm_rank`` the rank of the degree-d products is also checked.
    """
    counts = product_counts(k, n, d_cap)
    for d in range(d_cap + 1):
        dim = len(enumerate_profiles(n, k, d))
        if confirm_rank:
            polys = [p for ms, p in generator_products(k, n, d) if multiset_degree(ms) == d]
            r = rank_of(polys)
            if r != dim:
                raise ConsistencyError(f"degree-{d} products have rank {r}, expected {dim}")
        if counts[d] > dim:
            return d
    return None


# -- harmonics ---------------------------------------------------------------

def monomials_of_multidegree(k: int, n: int, L: Sequence[int]) -> list[Monomial]:
    """All monomials whose set-i degree is L[i]."""
    per_set = [enumerate_exponent_vectors(n, l) for l in L]
    result: list[list[int]] = [[0] * (k * n)]
    for i, options in enumerate(per_set):
        nxt = []
        for base in result:
            for comp in options:
                e = list(base)
                for j, v in enumerate(comp):
                    e[j * k + i] = v
                nxt.append(e)
        result = nxt
    return sorted((tuple(e) for e in result), reverse=True)


class GradedBasis:
    """A basis of a homogeneous subspace, reduced on its pivot monomials.

    ``elements[i]`` has coefficient 1 at ``pivots[i]`` and 0 at every other
    pivot, so coordinates of any vector in the span are read off at pivots.
    """

    def __init__(self, degree, elements: list[MultiPoly], pivots: list[Monomial]):
        self.degree = degree
        self.elements = elements
        self.pivots = pivots

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return len(self.elements)

    def coordinates(self, f: MultiPoly) -> list:
        return [f.coefficient(p) for p in self.pivots]

    def trace(self, sigma: Sequence[int]) -> Fraction:
        """Trace of the permutation on the span (assumed S_n-stable)."""
        return sum((Fraction(act(sigma, h).coefficient(p)) for h, p in zip(self.elements, self.pivots)),
                   Fraction(0))

    def __repr__(self) -> str:
        return f"GradedBasis(degree={self.degree}, dim={self.dim})"


@lru_cache(maxsize=None)
def _harmonics_component(k: int, n: int, L: ExponentVector) -> GradedBasis:
    columns = monomials_of_multidegree(k, n, L)
    if len(columns) > MAX_COLUMNS:
        raise ResourceError(f"{len(columns)} monomials in multidegree {L} exceeds cap {MAX_COLUMNS}")
    gens = [a for a in weyl_generators(k, n) if all(x <= y for x, y in zip(a, L))]
    rows: dict = defaultdict(dict)
    for e in columns:
        mono = MultiPoly(k, n, {e: 1})
        for a in gens:
            for out, c in apply_power_sum_operator(a, mono).terms.items():
                rows[(a, out)][e] = c
    basis = nullspace(rows.values(), columns)
    elements = [MultiPoly(k, n, vec) for _, vec in basis]
    return GradedBasis(L, elements, [f for f, _ in basis])


def harmonics_component(k: int, n: int, L: Sequence[int]) -> GradedBasis:
    """Harmonics of multidegree L: joint kernel of p_a(d) for 0 < |a| <= n."""
    L = tuple(L)
    if len(L) != k or any(l < 0 for l in L):
        raise ValueError(f"multidegree {L} must have {k} nonnegative entries")
    return _harmonics_component(k, n, L)


def harmonics_basis(k: int, n: int, d: int) -> GradedBasis:
    """Harmonics of total degree d, assembled from the multidegree pieces."""
    elements: list[MultiPoly] = []
    pivots: list[Monomial] = []
    for L in enumerate_exponent_vectors(k, d):
        part = harmonics_component(k, n, L)
        elements.extend(part.elements)
        pivots.extend(part.pivots)
    return GradedBasis(d, elements, pivots)


def harmonic_dims(k: int, n: int, bound: int) -> list[int]:
    return [harmonics_basis(k, n, d).dim for d in range(bound + 1)]


# -- quasi-freeness ----------------------------------------------------------

PROVED_QUASIFREE_DEGREE = 3


def _kind(m: int) -> str:
    # injectivity is known in degrees <= 3; beyond that it is an open claim
    return "theorem" if m <= PROVED_QUASIFREE_DEGREE else "conjecture"


def quasifree_index(k: int, n: int, m: int, index: str = "products") -> list[tuple[ExponentVector, ...]]:
    """Index set alpha of the quasi-free map in degree m.

    "products": every monomial p_{a^1}...p_{a^r} in Weyl generators of degree
    <= m (the empty product is p = 1).  "generators": 1 and the single p_a.
    """
    if index == "products":
        return generator_multisets(k, n, m)
    if index == "generators":
        return [()] + [(a,) for a in weyl_generators(k, n, m)]
    raise ValueError(f"unknown index set {index!r}")


def quasifree_check(k: int, n: int, m: int, index: str = "products",
                    perturb: Perturb | None = None) -> StabilityReport:
    """Injectivity of (h_alpha) -> sum h_alpha p_alpha from the sum of
    H^{m - d(alpha)} into R_m, one instance per multidegree L with |L| = m.

    lhs is the domain dimension and rhs the rank; equality means injective.
    """
    if m > n:
        raise ValueError("the quasi-free map is only considered for m <= n")
    rep = StabilityReport("quasifree", kind=_kind(m),
                          grid={"k": k, "n": n, "m": m, "index": index}, perturb=perturb)
    alphas = quasifree_index(k, n, m, index)
    with rep.timed():
        for L in enumerate_exponent_vectors(k, m):
            images = []
            for ms in alphas:
                deg = multiset_multidegree(ms, k)
                rest = tuple(l - x for l, x in zip(L, deg))
                if any(x < 0 for x in rest):
                    continue
                p = power_sum_product(ms, k, n)
                images.extend((h * p).terms for h in harmonics_component(k, n, rest).elements)
            rep.add({"k": k, "n": n, "m": m, "L": L, "dim_R": prod(comb(l + n - 1, n - 1) for l in L)},
                    len(images), rank(images))
    return rep


def harmonic_isotypic_dims(lam: Partition, k: int, bound: int) -> list[int]:
    """mu_lam(r) = dim Hom_{S_n}(V^lam, H^r) for r <= bound (n = |lam|), by
    tracing class representatives on the harmonic bases."""
    lam = as_partition(lam)
    n = sum(lam)
    table = character_table(n)
    out = []
    for r in range(bound + 1):
        total = Fraction(0)
        pieces = [harmonics_component(k, n, L) for L in enumerate_exponent_vectors(k, r)]
        for tau, chi in zip(table.classes, table.row(lam)):
            if not chi:
                continue
            sigma = class_representative(tau)
            trace = sum((piece.trace(sigma) for piece in pieces), Fraction(0))
            total += Fraction(chi) * trace / centralizer_order(tau)
        if total.denominator != 1 or total < 0:
            raise ConsistencyError(f"mu_{lam}({r}) = {total} is not a nonnegative integer")
        out.append(int(total))
    return out


def _series_mul(a: list, b: list, bound: int) -> list:
    out = [0] * (bound + 1)
    for i, x in enumerate(a[:bound + 1]):
        if x:
            for j, y in enumerate(b[:bound + 1 - i]):
                out[i + j] += x * y
    return out


def verify_quasifree_corollaries(k: int, n: int, m: int, lam: Partition | None = None,
                                 perturb: Perturb | None = None) -> StabilityReport:
    """Truncated Hilbert-series identities implied by quasi-freeness.

    Without ``lam``: dim H^r = [q^r] prod_{r<=m}(1-q^r)^C(r+k-1,k-1) / (1-q)^{kn}.
    With ``lam`` (a partition of n): mu_lam(r) = [q^r] prod_{r<=m}(1-q^r)^C * sum_s tau_lam(s) q^s.
    """
    from .multiplicities import isotypic_total

    if m > n:
        raise ValueError("m must not exceed n")
    factor = truncated_product_inverse(k, m)
    if lam is None:
        rep = StabilityReport("quasifree-hilbert", kind=_kind(m),
                              grid={"k": k, "n": n, "m": m}, perturb=perturb)
        with rep.timed():
            free = [comb(r + k * n - 1, k * n - 1) for r in range(m + 1)]
            rhs = _series_mul(factor, free, m)
            lhs = harmonic_dims(k, n, m)
            for r in range(m + 1):
                rep.add({"k": k, "n": n, "m": m, "r": r}, lhs[r], rhs[r])
        return rep
    lam = as_partition(lam)
    if sum(lam) != n:
        raise ValueError(f"lambda={lam} is not a partition of n={n}")
    rep = StabilityReport("quasifree-isotypic", kind=_kind(m),
                          grid={"k": k, "n": n, "m": m, "lambda": lam}, perturb=perturb)
    with rep.timed():
        rhs = _series_mul(factor, isotypic_total(lam, k, m), m)
        lhs = harmonic_isotypic_dims(lam, k, m)
        for r in range(m + 1):
            rep.add({"k": k, "n": n, "m": m, "lambda": lam, "r": r}, lhs[r], rhs[r])
    return rep


def all_isotypic_reports(k: int, n: int, m: int) -> list[StabilityReport]:
    return [verify_quasifree_corollaries(k, n, m, lam) for lam in enumerate_partitions(n)]


def free_dims(k: int, n: int, bound: int) -> list[int]:
    """dim R_d for d <= bound."""
    return [comb(d + k * n - 1, k * n - 1) for d in range(bound + 1)]
