"""Multiplicity counts by class sums and by enumeration, and the stability verifiers.

Class sums run over cycle types tau of n weighted by 1/z_tau, never over
group elements.  Every such sum is reduced exactly and must come out
integral; a fractional result raises ``ConsistencyError``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable

from .characters import character_table, weyl_trace
from .errors import ConsistencyError
from .partitions import (
    ExponentVector,
    Partition,
    as_partition,
    bump_first_part,
    centralizer_order,
    enumerate_partitions,
    enumerate_profiles,
    exponent_vectors_upto,
    second_part,
)
from .reports import Perturb, StabilityReport
from .symfunc import MultigradedSeries, plethysm_series, product_series, schur_expand

METHODS = ("enumeration", "molien")


def _integral(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ConsistencyError(f"{what} is not an integer: {value}")
    if value < 0:
        raise ConsistencyError(f"{what} is negative: {value}")
    return int(value)


@lru_cache(maxsize=None)
def cycle_series(tau: Partition, bound: int) -> tuple[int, ...]:
    """Coefficients of prod_{cycles c of tau} 1/(1 - q^|c|) through ``bound``.

    The coefficient of q^l is the trace of a permutation of type tau on the
    degree-l polynomials in one set of n variables.
    """
    coeffs = [1] + [0] * bound
    for c in tau:
        for d in range(c, bound + 1):
            coeffs[d] += coeffs[d - c]
    return tuple(coeffs)


@lru_cache(maxsize=None)
def _molien_total(tau: Partition, k: int, bound: int) -> tuple[int, ...]:
    single = cycle_series(tau, bound)
    out = [1] + [0] * bound
    for _ in range(k):
        nxt = [0] * (bound + 1)
        for i, a in enumerate(out):
            if a:
                for j in range(bound + 1 - i):
                    nxt[i + j] += a * single[j]
        out = nxt
    return tuple(out)


def graded_trace(tau: Partition, k: int, bound: int) -> tuple[int, ...]:
    """Trace of a type-tau permutation on R_d (k sets of variables), d <= bound."""
    return _molien_total(tuple(tau), k, bound)


@lru_cache(maxsize=None)
def _invariant_dim_enum(n: int, k: int, d: int) -> int:
    return len(enumerate_profiles(n, k, d))


@lru_cache(maxsize=None)
def _invariant_dim_molien(n: int, k: int, d: int) -> int:
    total = sum(Fraction(graded_trace(tau, k, d)[d], centralizer_order(tau))
                for tau in enumerate_partitions(n))
    return _integral(total, f"Molien class sum for (n={n}, k={k}, d={d})")


def invariant_dim(n: int, k: int, d: int, method: str = "enumeration") -> int:
    """dim S^d(C^k (x) C^n)^{S_n}.

    ``method`` is "enumeration" (count profiles), "molien" (class sum of
    graded traces) or "both" (compute both, raise if they differ).
    """
    if n < 1 or k < 1 or d < 0:
        raise ValueError("need n >= 1, k >= 1, d >= 0")
    if method == "enumeration":
        return _invariant_dim_enum(n, k, d)
    if method == "molien":
        return _invariant_dim_molien(n, k, d)
    if method == "both":
        a, b = _invariant_dim_enum(n, k, d), _invariant_dim_molien(n, k, d)
        if a != b:
            raise ConsistencyError(f"enumeration {a} != molien {b} at n={n}, k={k}, d={d}")
        return a
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=None)
def weyl_invariant_dim(lam: Partition, n: int) -> int:
    """dim (nF^lam)^{S_n} = sum_tau weyl_trace(lam, tau, n) / z_tau."""
    lam = as_partition(lam)
    if n < 1:
        raise ValueError("n must be positive")
    total = sum(Fraction(weyl_trace(lam, tau, n), centralizer_order(tau))
                for tau in enumerate_partitions(n))
    return _integral(total, f"dim (F^{lam})^S_{n}")


@lru_cache(maxsize=None)
def g_coeff(lam: Partition, mu: Partition) -> int:
    """g^lam_mu = dim Hom_{S_n}(V^mu, nF^lam) with n = |mu|."""
    lam, mu = as_partition(lam), as_partition(mu)
    n = sum(mu)
    if n < 1:
        raise ValueError("mu must be a partition of a positive integer")
    table = character_table(n)
    total = Fraction(0)
    for tau, chi in zip(table.classes, table.row(mu)):
        if chi:
            total += Fraction(chi * weyl_trace(lam, tau, n), centralizer_order(tau))
    return _integral(total, f"g^{lam}_{mu}")


def g_via_plethysm(mu: Partition, k: int, bound: int) -> dict[Partition, int]:
    """g^lam_mu for |lam| <= bound, l(lam) <= k, read off from the Schur
    expansion of s_mu[1/prod(1 - q_i)]."""
    series = plethysm_series(mu, k, bound)
    out: dict[Partition, int] = {}
    for d in range(bound + 1):
        for lam, c in schur_expand(series.component(d), k).items():
            if c < 0:
                raise ConsistencyError(f"negative Schur coefficient {c} for {lam} in degree {d}")
            out[lam] = c
    return out


@lru_cache(maxsize=None)
def _isotypic_weights(mu: Partition) -> dict[Partition, Fraction]:
    n = sum(mu)
    table = character_table(n)
    return {tau: Fraction(chi, centralizer_order(tau))
            for tau, chi in zip(table.classes, table.row(mu)) if chi}


def m_mu_L(mu: Partition, L: Iterable[int], n: int | None = None) -> int:
    """m^mu_L = dim Hom_{S_n}(V^mu, S^L(C^k (x) C^n))."""
    mu = as_partition(mu)
    L = tuple(L)
    if n is not None and n != sum(mu):
        raise ValueError(f"mu={mu} is not a partition of n={n}")
    bound = max(L, default=0)
    total = Fraction(0)
    for tau, w in _isotypic_weights(mu).items():
        single = cycle_series(tau, bound)
        prod = 1
        for l in L:
            prod *= single[l]
        total += w * prod
    return _integral(total, f"m^{mu}_{L}")


def isotypic_series(mu: Partition, k: int, bound: int) -> MultigradedSeries:
    """sum_L m^mu_L q^L through total degree ``bound``, by class sums."""
    mu = as_partition(mu)
    coeffs = {L: m_mu_L(mu, L) for L in exponent_vectors_upto(k, bound)}
    return MultigradedSeries(k, bound, coeffs)


def isotypic_total(lam: Partition, k: int, bound: int) -> list[int]:
    """tau_lam(r) = dim Hom_{S_n}(V^lam, R_r) for r <= bound, n = |lam|."""
    lam = as_partition(lam)
    out = []
    weights = _isotypic_weights(lam)
    for r in range(bound + 1):
        total = sum(w * graded_trace(tau, k, bound)[r] for tau, w in weights.items())
        out.append(_integral(Fraction(total), f"tau_{lam}({r})"))
    return out


# -- verifiers ---------------------------------------------------------------

def verify_corollary2(k: int, n_max: int, methods: Iterable[str] = METHODS,
                      perturb: Perturb | None = None) -> list[StabilityReport]:
    """dim S^r(C^k (x) C^m)^{S_m} = dim S^r(C^k (x) C^n)^{S_n} for r <= m <= n <= n_max."""
    methods = tuple(methods)
    stab = StabilityReport("corollary2", grid={"k": k, "n_max": n_max, "methods": list(methods)},
                           perturb=perturb)
    agree = StabilityReport("invariant-methods", grid={"k": k, "n_max": n_max}, perturb=perturb)
    with stab.timed():
        for n in range(1, n_max + 1):
            for m in range(1, n + 1):
                for r in range(0, m + 1):
                    for method in methods:
                        stab.add({"k": k, "r": r, "m": m, "n": n, "method": method},
                                 invariant_dim(m, k, r, method), invariant_dim(n, k, r, method))
    if len(methods) > 1:
        with agree.timed():
            for n in range(1, n_max + 1):
                for r in range(0, n_max + 1):
                    agree.add({"k": k, "n": n, "d": r},
                              invariant_dim(n, k, r, methods[0]), invariant_dim(n, k, r, methods[1]))
        return [stab, agree]
    return [stab]


def verify_product_formula(k: int, bound: int, perturb: Perturb | None = None) -> StabilityReport:
    """Coefficients of prod (1-q^r)^-C(r+k-1,k-1) equal |P^{n,k}_d| for every n >= d."""
    rep = StabilityReport("product-formula", grid={"k": k, "bound": bound}, perturb=perturb)
    with rep.timed():
        coeffs = product_series(k, bound).specialize()
        for d in range(bound + 1):
            for n in range(max(d, 1), bound + 1):
                rep.add({"k": k, "d": d, "n": n}, coeffs[d], len(enumerate_profiles(n, k, d)))
    return rep


def verify_weyl_stability(n_max: int, perturb: Perturb | None = None) -> StabilityReport:
    """dim (mF^lam)^{S_m} = dim (nF^lam)^{S_n} for |lam| <= m <= n <= n_max."""
    rep = StabilityReport("weyl", grid={"n_max": n_max}, perturb=perturb)
    with rep.timed():
        for size in range(1, n_max + 1):
            for lam in enumerate_partitions(size):
                for m in range(size, n_max + 1):
                    for n in range(m, n_max + 1):
                        rep.add({"lambda": lam, "m": m, "n": n},
                                weyl_invariant_dim(lam, m), weyl_invariant_dim(lam, n))
    return rep


def verify_g_stability(n_max: int, r_max: int, perturb: Perturb | None = None) -> StabilityReport:
    """g^lam_mu = g^lam_{mu + r e_1} for mu |- n <= n_max, |lam| <= n - mu_2, r <= r_max."""
    rep = StabilityReport("gstab", grid={"n_max": n_max, "r_max": r_max}, perturb=perturb)
    with rep.timed():
        for n in range(1, n_max + 1):
            for mu in enumerate_partitions(n):
                for size in range(0, n - second_part(mu) + 1):
                    for lam in enumerate_partitions(size):
                        base = g_coeff(lam, mu)
                        for r in range(1, r_max + 1):
                            rep.add({"lambda": lam, "mu": mu, "r": r}, base,
                                    g_coeff(lam, bump_first_part(mu, r)))
    return rep


def verify_g_oracle(mu_max: int, k_max: int, bound: int,
                    perturb: Perturb | None = None) -> StabilityReport:
    """Schur-expansion extraction of g^lam_mu agrees with the class-sum value."""
    rep = StabilityReport("g-oracle", grid={"mu_max": mu_max, "k_max": k_max, "bound": bound},
                          perturb=perturb)
    with rep.timed():
        for n in range(1, mu_max + 1):
            for mu in enumerate_partitions(n):
                for k in range(1, k_max + 1):
                    extracted = g_via_plethysm(mu, k, bound)
                    for size in range(0, bound + 1):
                        for lam in enumerate_partitions(size, max_length=k):
                            rep.add({"lambda": lam, "mu": mu, "k": k},
                                    extracted.get(lam, 0), g_coeff(lam, mu))
    return rep


def verify_multigraded(k: int, n_max: int, r_max: int,
                       perturb: Perturb | None = None) -> StabilityReport:
    """Degree <= n - mu_2 parts of s_mu[1/prod(1-q_i)] and s_{mu+re_1}[...] coincide."""
    rep = StabilityReport("multigraded", grid={"k": k, "n_max": n_max, "r_max": r_max},
                          perturb=perturb)
    with rep.timed():
        for n in range(1, n_max + 1):
            for mu in enumerate_partitions(n):
                bound = n - second_part(mu)
                base = plethysm_series(mu, k, bound)
                for r in range(1, r_max + 1):
                    bumped = plethysm_series(bump_first_part(mu, r), k, bound)
                    for L in exponent_vectors_upto(k, bound):
                        rep.add({"mu": mu, "r": r, "L": L},
                                base.coefficient(L), bumped.coefficient(L))
    return rep


def verify_stability_suite(k: int, n_max: int, r_max: int,
                           perturb: Perturb | None = None) -> list[StabilityReport]:
    """Reports for dimension stability, Weyl stability, g-stability and the
    multigraded equality over the given grid."""
    reports = verify_corollary2(k, n_max, perturb=perturb)
    reports.append(verify_weyl_stability(n_max, perturb=perturb))
    reports.append(verify_g_stability(n_max, r_max, perturb=perturb))
    reports.append(verify_multigraded(k, n_max, r_max, perturb=perturb))
    return reports


def dimension_of_VL(L: ExponentVector, n: int) -> int:
    """dim V_L = prod_i C(l_i + n - 1, n - 1)."""
    out = 1
    for l in L:
        out *= comb(l + n - 1, n - 1)
    return out
