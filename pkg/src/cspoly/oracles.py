"""Independent reference implementations used only for cross-checking.

Nothing here goes through the f-basis machinery or the action tables: Schur
polynomials come from the Jacobi-Trudi determinant, Jack polynomials from
Gram-Schmidt in the power-sum inner product, the one-variable families from
their textbook recurrences and f_n from literal multiplication of the kernel
series.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Sequence

from .coeffs import reciprocal
from .errors import CutoffExceeded, KappaZero, LengthMismatch
from .linalg import solve
from .model import DEFAULT_PARAMS, ModelSpec
from .symcore import (
    ExpandedPoly,
    SymmetricPoly,
    _add_into,
    block_symmetrize,
    partitions,
    tail_sums,
    trim,
)

# ---------------------------------------------------------------------------
# Schur polynomials


def _complete_h(r: int, N: int) -> SymmetricPoly:
    if r < 0:
        return SymmetricPoly(N)
    return SymmetricPoly._raw(N, {lam: Fraction(1) for lam in partitions(r, N)})


def _perm_sign(p: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def schur(lam: Sequence[int], N: int) -> SymmetricPoly:
    """det(h_{lambda_i - i + j}) by full permutation expansion."""
    lam = trim(lam)
    if len(lam) > N:
        return SymmetricPoly(N)
    L = len(lam)
    if L == 0:
        return SymmetricPoly.one(N, Fraction(1))
    h = {}
    out = SymmetricPoly(N)
    for p in permutations(range(L)):
        term = SymmetricPoly.one(N, Fraction(_perm_sign(p)))
        for i in range(L):
            r = lam[i] - i + p[i]
            if r not in h:
                h[r] = _complete_h(r, N)
            term = term * h[r]
            if not term:
                break
        out = out + term
    return out


# ---------------------------------------------------------------------------
# Jack polynomials by Gram-Schmidt


def z_lambda(lam: Sequence[int]) -> int:
    out = 1
    for part in set(lam):
        a = list(lam).count(part)
        out *= part ** a * factorial(a)
    return out


def inner_product_table(d: int, kappa) -> dict:
    """<p_rho, p_rho> = z_rho kappa^(-l(rho)) for all rho of size d."""
    if not kappa:
        raise KappaZero("kappa must be invertible")
    kinv = reciprocal(kappa)
    return {rho: z_lambda(rho) * kinv ** len(rho) for rho in partitions(d)}


def _power_to_monomial(d: int) -> tuple[list, list]:
    """Labels (ascending lex) and A with p_rho = sum_mu A[rho][mu] m_mu in d variables."""
    labels = sorted(partitions(d))
    idx = {lam: i for i, lam in enumerate(labels)}
    A = []
    for rho in labels:
        P = SymmetricPoly.one(d, Fraction(1))
        for r in rho:
            P = P * SymmetricPoly.monomial(d, (r,), Fraction(1))
        row = [Fraction(0)] * len(labels)
        for mu, c in P.terms.items():
            row[idx[mu]] = c
        A.append(row)
    return labels, A


def jack_monic(lam: Sequence[int], N: int, kappa) -> SymmetricPoly:
    """Monic Jack polynomial P_lambda with parameter 1/kappa, restricted to N variables."""
    lam = trim(lam)
    if len(lam) > N:
        raise LengthMismatch(f"{lam} has more than {N} parts")
    d = sum(lam)
    if d == 0:
        return SymmetricPoly.one(N, kappa * 0 + 1)
    labels, A = _power_to_monomial(d)
    n = len(labels)
    # m_mu = sum_rho B[mu][rho] p_rho with B = A^{-1}
    cols = [solve(A, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    B = [[cols[j][i] for j in range(n)] for i in range(n)]
    weights = inner_product_table(d, kappa)
    w = [weights[rho] for rho in labels]
    zero = kappa * 0

    def form(x: list, y: list):
        # coordinates in the m basis -> power-sum coordinates -> diagonal form
        px = [sum((x[i] * B[i][r] for i in range(n) if x[i]), zero) for r in range(n)]
        py = [sum((y[i] * B[i][r] for i in range(n) if y[i]), zero) for r in range(n)]
        return sum((px[r] * py[r] * w[r] for r in range(n)), zero)

    basis: list[list] = []
    norms: list = []
    target = labels.index(lam)
    for i in range(target + 1):
        v = [zero + int(j == i) for j in range(n)]
        for b, nb in zip(basis, norms):
            c = form(v, b) / nb
            if c:
                v = [vi - c * bi for vi, bi in zip(v, b)]
        basis.append(v)
        norms.append(form(v, v))
    P = basis[-1]
    return SymmetricPoly(N, {mu: P[i] for i, mu in enumerate(labels) if len(mu) <= N and P[i]})


# ---------------------------------------------------------------------------
# one-variable classical families (coefficient lists, low degree first)


def _poly_add(p: list, q: list) -> list:
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def _poly_scale(p: list, s) -> list:
    return [c * s for c in p]


def _times_z(p: list) -> list:
    return [Fraction(0)] + list(p)


def _three_term(n: int, p0: list, p1: list, step) -> list:
    """Run P_k = (A_k z + B_k) P_{k-1} + C_k P_{k-2}; step(k) -> (A_k, B_k, C_k)."""
    if n == 0:
        return list(p0)
    prev, cur = p0, p1
    for k in range(2, n + 1):
        A, B, C = step(k)
        nxt = _poly_add(_poly_add(_poly_scale(_times_z(cur), A), _poly_scale(cur, B)), _poly_scale(prev, C))
        prev, cur = cur, nxt
    return cur


def hermite(n: int) -> list:
    """Physicists' H_n: H_{k} = 2x H_{k-1} - 2(k-1) H_{k-2}."""
    return _three_term(n, [Fraction(1)], [Fraction(0), Fraction(2)],
                       lambda k: (Fraction(2), Fraction(0), Fraction(-2 * (k - 1))))


def laguerre(n: int, A) -> list:
    """L_n^(A): k L_k = (2k - 1 + A - x) L_{k-1} - (k - 1 + A) L_{k-2}."""
    A = Fraction(A)
    return _three_term(n, [Fraction(1)], [1 + A, Fraction(-1)],
                       lambda k: (Fraction(-1, k), (2 * k - 1 + A) / k, -(k - 1 + A) / k))


def gegenbauer(n: int, lam) -> list:
    """C_n^(lam): k C_k = 2(k + lam - 1) x C_{k-1} - (k + 2 lam - 2) C_{k-2}."""
    lam = Fraction(lam)
    return _three_term(n, [Fraction(1)], [Fraction(0), 2 * lam],
                       lambda k: (2 * (k + lam - 1) / k, Fraction(0), -(k + 2 * lam - 2) / k))


def jacobi(n: int, A, B) -> list:
    A, B = Fraction(A), Fraction(B)
    p1 = [(A - B) / 2, (A + B + 2) / 2]

    def step(k):
        s = 2 * k + A + B
        den = 2 * k * (k + A + B) * (s - 2)
        return ((s - 1) * s * (s - 2) / den, (s - 1) * (A * A - B * B) / den,
                -2 * (k + A - 1) * (k + B - 1) * s / den)

    return _three_term(n, [Fraction(1)], p1, step)


def bessel_generalised(n: int, a, b) -> list:
    """Krall-Frink y_n(x; a, b), normalised by y_n(0) = 1.

    y_k = (A_k x + B_k) y_{k-1} + C_k y_{k-2} with
    A_k = (2k+a-2)(2k+a-3) / (b (k+a-2)),
    B_k = (a-2)(2k+a-3) / ((k+a-2)(2k+a-4)),
    C_k = (k-1)(2k+a-2) / ((k+a-2)(2k+a-4)).
    """
    a, b = Fraction(a), Fraction(b)

    def step(k):
        d1 = k + a - 2
        d2 = 2 * k + a - 4
        if not d1 or not d2:
            raise ZeroDivisionError(f"generalised Bessel recurrence is singular at n={k} for a={a}")
        return ((2 * k + a - 2) * (2 * k + a - 3) / (b * d1),
                (a - 2) * (2 * k + a - 3) / (d1 * d2),
                (k - 1) * (2 * k + a - 2) / (d1 * d2))

    return _three_term(n, [Fraction(1)], [Fraction(1), a / b], step)


def bessel_explicit(n: int, a, b) -> list:
    """y_n(x; a, b) = sum_k C(n,k) (n+a-1)_k (x/b)^k."""
    a, b = Fraction(a), Fraction(b)
    out = []
    rf = Fraction(1)
    for k in range(n + 1):
        if k:
            rf *= n + a - 1 + (k - 1)
        out.append(Fraction(factorial(n), factorial(k) * factorial(n - k)) * rf / b ** k)
    return out


def classical_1var(case: str, n: int, omega=None, a=None, b=None, c=None) -> list:
    """The Table-type classical polynomial p_n(z) of a one-body case, as coefficients in z.

    Hermite is returned as H_n(sqrt(omega) z) / omega^(n/2), which keeps the
    coefficients rational and leaves the monic form unchanged.
    """
    w = Fraction(DEFAULT_PARAMS["omega"] if omega is None else omega)
    a = Fraction(DEFAULT_PARAMS["a"] if a is None else a)
    b = Fraction(DEFAULT_PARAMS["b"] if b is None else b)
    c = Fraction(DEFAULT_PARAMS["c"] if c is None else c)
    case = case.upper()
    if case == "I":
        h = hermite(n)
        out = []
        for j, cj in enumerate(h):
            out.append(cj * w ** ((j - n) // 2) if cj else Fraction(0))
        return out
    if case == "II":
        return [Fraction(0)] * n + [Fraction(1)]
    if case == "III":
        return gegenbauer(n, -c)
    if case == "IV":
        return [cj * w ** j for j, cj in enumerate(laguerre(n, a - Fraction(1, 2)))]
    if case == "V":
        return gegenbauer(n, a)
    if case == "VI":
        return jacobi(n, a - Fraction(1, 2), b - Fraction(1, 2))
    if case == "VII":
        return bessel_generalised(n, 1 - 2 * c, 2 * w)
    raise ValueError(f"unknown case {case!r}")


def monic(p: list) -> list:
    while p and not p[-1]:
        p = p[:-1]
    if not p:
        return []
    lead = p[-1]
    return [x / lead for x in p]


# ---------------------------------------------------------------------------
# brute-force kernel expansion


def _power_series(e, order: int, zero, one) -> list:
    """Coefficients of (1 - x)^e up to x^order."""
    out = [one]
    for q in range(1, order + 1):
        out.append(out[-1] * (q - 1 - e) / q)
    return out


def _kernel_layout(spec: ModelSpec, M: int, Mtilde: int):
    """Literal factor list: (pair exponents, per-slot z exponents)."""
    k = spec.kappa
    kinv = reciprocal(k) if (Mtilde or spec.Ntilde) else None
    L = M + Mtilde
    pairs = []
    for a_ in range(L):
        for b_ in range(a_ + 1, L):
            if b_ < M:
                pairs.append((a_, b_, k))
            elif a_ >= M:
                pairs.append((a_, b_, kinv))
            else:
                pairs.append((a_, b_, -1))
    nz = spec.N + spec.Ntilde
    zexp = []
    for s in range(L):
        row = []
        for v in range(nz):
            own = v < spec.N
            if s < M:
                row.append(-k if own else 1)
            else:
                row.append(1 if own else -kinv)
        zexp.append(row)
    return pairs, zexp


def series_extract_f(n: Sequence[int], spec: ModelSpec, M: int | None = None, Mtilde: int | None = None,
                     cutoff: int | None = None):
    """Coefficient of w^(-n) in the kernel, by truncated series multiplication.

    Every factor is expanded in (smaller)/(larger) with slot moduli increasing
    along the slot order and all z below every slot.  Pair factors are
    truncated at order ``cutoff``; the result is recomputed at cutoff + 2 and
    must agree.
    """
    M = spec.N if M is None else M
    Mtilde = spec.Ntilde if Mtilde is None else Mtilde
    n = tuple(n)
    if len(n) != M + Mtilde:
        raise LengthMismatch(f"n must have length {M + Mtilde}")
    if cutoff is None:
        cutoff = max([0] + tail_sums(n)) + 1
    first = _extract(n, spec, M, Mtilde, cutoff)
    second = _extract(n, spec, M, Mtilde, cutoff + 2)
    if first != second:
        raise CutoffExceeded(f"series for n={n} not stable at cutoff {cutoff}")
    return first


def _extract(n: tuple, spec: ModelSpec, M: int, Mtilde: int, Q: int):
    L = M + Mtilde
    nz = spec.N + spec.Ntilde
    one = spec.scalar(1)
    zero = one * 0
    pairs, zexp = _kernel_layout(spec, M, Mtilde)
    d = sum(n)
    # terms: (w exponents) -> {z exponents: coefficient}
    state = {(0,) * L: {(0,) * nz: one}}
    for a_, b_, e in pairs:
        ser = _power_series(e, Q, zero, one)
        new: dict = {}
        for wexp, zs in state.items():
            for q, cq in enumerate(ser):
                if not cq:
                    continue
                t = list(wexp)
                t[a_] += q
                t[b_] -= q
                t = tuple(t)
                bucket = new.setdefault(t, {})
                for zk, c in zs.items():
                    _add_into(bucket, zk, c * cq)
        state = new
    # each z factor lowers a slot exponent, so the pair part must sit at or above -n
    state = {w: zs for w, zs in state.items() if all(w[s] >= -n[s] for s in range(L))}
    for s in range(L):
        for v in range(nz):
            ser = _power_series(zexp[s][v], d, zero, one)
            new = {}
            for wexp, zs in state.items():
                room = wexp[s] + n[s]
                for zk, c in zs.items():
                    deg = sum(zk)
                    for p, cp in enumerate(ser):
                        if p > room or deg + p > d:
                            break
                        if not cp:
                            continue
                        t = list(wexp)
                        t[s] -= p
                        zt = list(zk)
                        zt[v] += p
                        _add_into(new.setdefault(tuple(t), {}), tuple(zt), c * cp)
            state = new
        # slot s is finished: its exponent must now be exactly -n_s
        state = {w: zs for w, zs in state.items() if w[s] == -n[s]}
    zs = state.get(tuple(-x for x in n), {})
    E = ExpandedPoly(nz, {k: v for k, v in zs.items() if v})
    if spec.Ntilde == 0 and Mtilde == 0:
        return SymmetricPoly.from_expanded(E)
    return block_symmetrize(E, spec.N, spec.Ntilde, check=True)


def series_extract_batch(ns: Sequence[Sequence[int]], spec: ModelSpec, M: int | None = None,
                         Mtilde: int | None = None) -> dict:
    return {tuple(n): series_extract_f(n, spec, M, Mtilde) for n in ns}
