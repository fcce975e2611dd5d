"""The g- and f-bases: generating-kernel coefficients built by finite shifted products.

Slots are ordered so that the expansion variables grow in modulus with the slot
index.  A pair factor (1 - u_a/u_b)^e with a < b then expands in powers of
u_a/u_b, and its q-th term moves q units of weight from slot b to slot a of the
generator index.  Since every such move lowers suffix sums, f_n only involves
finitely many generator products and vanishes unless all suffix sums of n are
non-negative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .coeffs import binomial, rising
from .errors import KappaZero, LengthMismatch, NotHomogeneous
from .linalg import solve, transpose
from .model import ModelSpec
from .symcore import (
    BiSymmetricPoly,
    SymmetricPoly,
    _add_into,
    block_symmetrize,
    order_key,
    pad,
    partitions,
    sort_to_partition,
    tail_valid,
)


@dataclass
class FExpansion:
    """sum_m u(m) f_m for a fixed model and slot layout."""

    spec: ModelSpec
    M: int
    Mtilde: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        for m in self.terms:
            if not tail_valid(m):
                raise ValueError(f"f_{m} vanishes identically and cannot carry a coefficient")

    @property
    def deformed(self) -> bool:
        return is_deformed(self.spec, self.M, self.Mtilde)

    def ordered(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: order_key(kv[0]), reverse=True)

    def assemble(self):
        """The polynomial sum_m u(m) f_m."""
        if self.deformed:
            out = BiSymmetricPoly(self.spec.N, self.spec.Ntilde)
            for m, c in self.ordered():
                out = out + f_deformed(m, self.spec, self.M, self.Mtilde).scale(c)
            return out
        out = SymmetricPoly(self.spec.N)
        for m, c in self.ordered():
            out = out + f_vector(m, self.spec).scale(c)
        return out


def is_deformed(spec: ModelSpec, M: int, Mtilde: int) -> bool:
    return not (spec.Ntilde == 0 and Mtilde == 0 and M == spec.N)


# ---------------------------------------------------------------------------
# shift enumeration shared by both constructions

@lru_cache(maxsize=None)
def _pair_weight(e, q: int):
    return binomial(e, q) * (-1) ** q


def shift_coefficients(n: Sequence[int], exponents: dict) -> dict:
    """Map generator index m -> weight for the product of pair factors.

    ``exponents[(a, b)]`` (a < b, 0-based) is the power e of (1 - u_a/u_b).
    The result contains only m with all entries non-negative.
    """
    state = {tuple(n): 1}
    if not tail_valid(n):
        return {}
    for (a, b), e in sorted(exponents.items()):
        new: dict = {}
        for m, c in state.items():
            q = 0
            while True:
                t = list(m)
                t[a] += q
                t[b] -= q
                t = tuple(t)
                if not tail_valid(t):
                    break
                w = _pair_weight(e, q)
                if w:
                    _add_into(new, t, c * w)
                q += 1
        state = new
    return {m: c for m, c in state.items() if all(x >= 0 for x in m)}


def _kernel_exponents(kappa, M: int, Mtilde: int) -> dict:
    kinv = 1 / kappa if Mtilde else None
    ex = {}
    L = M + Mtilde
    for a in range(L):
        for b in range(a + 1, L):
            if b < M:
                ex[(a, b)] = kappa
            elif a >= M:
                ex[(a, b)] = kinv
            else:
                ex[(a, b)] = -1
    return ex


# ---------------------------------------------------------------------------
# g-basis

def g_row(r: int, N: int, kappa) -> SymmetricPoly:
    """Coefficient of t^r in prod_j (1 - z_j t)^(-kappa)."""
    if r < 0:
        raise ValueError("r must be non-negative")
    return _g_row(r, N, kappa)


@lru_cache(maxsize=None)
def _g_row(r: int, N: int, kappa) -> SymmetricPoly:
    # convolution of the one-variable series rising(kappa, s) z^s, collected on orbits
    terms = {}
    for lam in partitions(r, N):
        c = 1
        for part in lam:
            c = c * rising(kappa, part)
        terms[lam] = c
    return SymmetricPoly._raw(N, {k: v for k, v in terms.items() if v})


def g_partition(lam: Sequence[int], N: int, kappa) -> SymmetricPoly:
    return _g_partition(sort_to_partition(lam), N, kappa)


@lru_cache(maxsize=None)
def _g_partition(lam: tuple, N: int, kappa) -> SymmetricPoly:
    if not lam:
        return SymmetricPoly.one(N, 1)
    return _g_partition(lam[:-1], N, kappa) * _g_row(lam[-1], N, kappa)


# ---------------------------------------------------------------------------
# f-basis (one block)

def g_expansion_of_f(n: Sequence[int], N: int, kappa) -> dict:
    """Coefficients K with f_n = sum_mu K[mu] g_mu (mu partitions)."""
    n = tuple(n)
    if len(n) != N:
        raise LengthMismatch(f"n must have length N={N}")
    out: dict = {}
    for m, c in shift_coefficients(n, _kernel_exponents(kappa, N, 0)).items():
        _add_into(out, sort_to_partition(m), c)
    return out


def f_vector(n: Sequence[int], spec: ModelSpec) -> SymmetricPoly:
    """f_n: coefficient of w^(-n) in the one-block kernel."""
    return _f_vector(tuple(n), spec.N, spec.kappa)


@lru_cache(maxsize=4096)
def _f_vector(n: tuple, N: int, kappa) -> SymmetricPoly:
    acc: dict = {}
    for mu, c in g_expansion_of_f(n, N, kappa).items():
        for lam, v in _g_partition(mu, N, kappa).terms.items():
            _add_into(acc, lam, c * v)
    return SymmetricPoly._raw(N, acc)


def f_partition_labels(d: int, N: int) -> list[tuple]:
    """Partitions of d with at most N parts, highest first in the tail-sum order."""
    return sorted(partitions(d, N), key=lambda lam: order_key(pad(lam, N)), reverse=True)


def transition_matrix_K(d: int, N: int, kappa) -> tuple[list, list]:
    """(labels, K) with f_lambda = sum_mu K[lambda][mu] g_mu."""
    labels = f_partition_labels(d, N)
    index = {lam: i for i, lam in enumerate(labels)}
    K = [[0] * len(labels) for _ in labels]
    for i, lam in enumerate(labels):
        for mu, c in g_expansion_of_f(pad(lam, N), N, kappa).items():
            K[i][index[mu]] = c
    return labels, K


def monomial_matrix(polys: Sequence[SymmetricPoly], labels: Sequence[tuple]) -> list[list]:
    """Rows: coefficients of each polynomial on m_label."""
    return [[P.terms.get(lam, 0) for lam in labels] for P in polys]


def expand_in_f_basis(P: SymmetricPoly, spec: ModelSpec) -> FExpansion:
    """Write a homogeneous symmetric polynomial as sum_lambda c_lambda f_lambda.

    The f monomial matrix is not triangular, so P is first written in the
    g-basis (a dense exact solve) and then converted with the unitriangular
    matrix K by back-substitution.
    """
    N, kappa = spec.N, spec.kappa
    degs = P.degrees()
    if len(degs) > 1:
        raise NotHomogeneous(f"degrees {sorted(degs)} present")
    if not degs:
        return FExpansion(spec, N, 0, {})
    d = degs.pop()
    labels, K = transition_matrix_K(d, N, kappa)
    G = monomial_matrix([g_partition(mu, N, kappa) for mu in labels], labels)
    rhs = [P.terms.get(lam, 0) for lam in labels]
    c = solve(transpose(G), rhs)
    # c_mu = sum_nu d_nu K[nu][mu]; K[nu][mu] != 0 only for nu above mu
    n = len(labels)
    dvals = [0] * n
    for i in range(n):
        acc = c[i]
        for j in range(i):
            if K[j][i]:
                acc = acc - dvals[j] * K[j][i]
        dvals[i] = acc
    terms = {pad(labels[i], N): dvals[i] for i in range(n) if dvals[i]}
    return FExpansion(spec, N, 0, terms)


# ---------------------------------------------------------------------------
# deformed f-basis (two blocks)

def _h_generator(r: int, N: int, Nt: int, kappa, tilde: bool) -> BiSymmetricPoly:
    return _h_gen(r, N, Nt, kappa, tilde)


@lru_cache(maxsize=None)
def _h_gen(r: int, N: int, Nt: int, kappa, tilde: bool) -> BiSymmetricPoly:
    """Series coefficient of u^(-r) in the one-slot factor.

    w slot:  prod_j (1 - z_j/u)^(-kappa)   prod_J (1 - zt_J/u)
    wt slot: prod_J (1 - zt_J/u)^(-1/kappa) prod_j (1 - z_j/u)
    """
    e = (1 / kappa) if tilde else kappa
    full, lin = (Nt, N) if tilde else (N, Nt)
    terms = {}
    for s in range(0, min(r, lin) + 1):
        lin_part = (1,) * s + (0,) * (lin - s)
        sign = (-1) ** s
        for lam in partitions(r - s, full):
            c = sign
            for part in lam:
                c = c * rising(e, part)
            full_part = pad(lam, full)
            key = (lin_part + full_part) if tilde else (full_part + lin_part)
            terms[key] = c
    return BiSymmetricPoly._raw(N, Nt, {k: v for k, v in terms.items() if v})


@lru_cache(maxsize=None)
def _h_product(w_parts: tuple, wt_parts: tuple, N: int, Nt: int, kappa) -> BiSymmetricPoly:
    if not w_parts and not wt_parts:
        one = (0,) * (N + Nt)
        return BiSymmetricPoly._raw(N, Nt, {one: 1})
    if wt_parts:
        rest = _h_product(w_parts, wt_parts[:-1], N, Nt, kappa)
        gen = _h_gen(wt_parts[-1], N, Nt, kappa, True)
    else:
        rest = _h_product(w_parts[:-1], (), N, Nt, kappa)
        gen = _h_gen(w_parts[-1], N, Nt, kappa, False)
    if len(rest.terms) == 1 and not any(next(iter(rest.terms))):
        return gen.scale(next(iter(rest.terms.values())))
    return block_symmetrize(rest.to_expanded() * gen.to_expanded(), N, Nt)


def f_deformed(n: Sequence[int], spec: ModelSpec, M: int, Mtilde: int) -> BiSymmetricPoly:
    """f^{(M,Mtilde)}_n: coefficient of w^(-n) in the two-block kernel."""
    n = tuple(n)
    if len(n) != M + Mtilde:
        raise LengthMismatch(f"n must have length M+Mtilde={M + Mtilde}")
    return _f_deformed(n, spec.N, spec.Ntilde, spec.kappa, M, Mtilde)


@lru_cache(maxsize=4096)
def _f_deformed(n: tuple, N: int, Nt: int, kappa, M: int, Mtilde: int) -> BiSymmetricPoly:
    if Mtilde and not kappa:
        raise KappaZero("kappa must be invertible")
    grouped: dict = {}
    for m, c in shift_coefficients(n, _kernel_exponents(kappa, M, Mtilde)).items():
        key = (sort_to_partition(m[:M]), sort_to_partition(m[M:]))
        _add_into(grouped, key, c)
    acc: dict = {}
    for (wp, wtp), c in grouped.items():
        for k, v in _h_product(wp, wtp, N, Nt, kappa).terms.items():
            _add_into(acc, k, c * v)
    return BiSymmetricPoly._raw(N, Nt, acc)


def clear_caches() -> None:
    for fn in (_g_row, _g_partition, _f_vector, _h_gen, _h_product, _f_deformed, _pair_weight):
        fn.cache_clear()
