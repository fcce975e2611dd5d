"""Model data, presets, eigenvalues, constants and the f-basis action tables.

The model is fixed by alpha(z) = a2 z^2 + a1 z + a0, beta(z) = b1 z + b0, the
coupling kappa and the block sizes (N, Ntilde).  Vectors are indexed by slots;
for the deformed construction the first M slots are "w" slots and the next
Mtilde slots are "w-tilde" slots.  Slot formulas below use 1-based j.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .coeffs import KAPPA, KRational, as_scalar, reciprocal
from .errors import LengthMismatch, NotInFatHook
from .symcore import conjugate, pad, tail_valid, trim

CASES = ("I", "II", "III", "IV", "V", "VI", "VII")


@dataclass(frozen=True)
class AlphaBeta:
    a2: object
    a1: object
    a0: object
    b1: object
    b0: object

    def __post_init__(self):
        for name in ("a2", "a1", "a0", "b1", "b0"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if not (self.a2 or self.a1 or self.a0):
            raise ValueError("alpha must not vanish identically")

    @property
    def alpha_coeffs(self) -> tuple:
        return (self.a0, self.a1, self.a2)

    @property
    def beta_coeffs(self) -> tuple:
        return (self.b0, self.b1)

    def alpha(self, z):
        return (self.a2 * z + self.a1) * z + self.a0

    def dalpha(self, z):
        return 2 * self.a2 * z + self.a1

    def beta(self, z):
        return self.b1 * z + self.b0

    def as_tuple(self) -> tuple:
        return (self.a2, self.a1, self.a0, self.b1, self.b0)


@dataclass(frozen=True)
class ModelSpec:
    ab: AlphaBeta
    kappa: object = KAPPA
    N: int = 1
    Ntilde: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kappa", as_scalar(self.kappa))
        if isinstance(self.kappa, Fraction) and self.kappa <= 0:
            raise ValueError("fixed kappa must be positive")
        if self.N < 0 or self.Ntilde < 0:
            raise ValueError("block sizes must be non-negative")

    @property
    def symbolic(self) -> bool:
        return isinstance(self.kappa, KRational)

    def scalar(self, x):
        return as_scalar(x, like=self.kappa)

    def with_kappa(self, kappa) -> "ModelSpec":
        return ModelSpec(self.ab, kappa, self.N, self.Ntilde)

    def with_sizes(self, N: int, Ntilde: int = 0) -> "ModelSpec":
        return ModelSpec(self.ab, self.kappa, N, Ntilde)


@dataclass(frozen=True)
class CasePreset:
    case: str
    omega: Fraction
    a: Fraction
    b: Fraction
    c: Fraction
    ab: AlphaBeta
    family: str


_FAMILY = {
    "I": "Hermite H_n(sqrt(omega) z)",
    "II": "z^n",
    "III": "Gegenbauer C_n^(-c)(z)",
    "IV": "Laguerre L_n^(a-1/2)(omega z)",
    "V": "Gegenbauer C_n^(a)(z)",
    "VI": "Jacobi P_n^(a-1/2, b-1/2)(z)",
    "VII": "generalised Bessel y_n(z; 1-2c, 2 omega)",
}

DEFAULT_PARAMS = {"omega": Fraction(1), "a": Fraction(2, 3), "b": Fraction(3, 5), "c": Fraction(1, 2)}


def preset(case: str, omega=None, a=None, b=None, c=None) -> CasePreset:
    """The alpha/beta pair of one of the seven exactly solvable one-body cases."""
    w = Fraction(DEFAULT_PARAMS["omega"] if omega is None else omega)
    a = Fraction(DEFAULT_PARAMS["a"] if a is None else a)
    b = Fraction(DEFAULT_PARAMS["b"] if b is None else b)
    c = Fraction(DEFAULT_PARAMS["c"] if c is None else c)
    table = {
        "I": (0, 0, 1, -2 * w, 0),
        "II": (-1, 0, 0, -1, 0),
        "III": (1, 0, -1, 1 - 2 * c, 0),
        "IV": (0, 4, 0, -4 * w, 2 + 4 * a),
        "V": (-1, 0, 1, -(1 + 2 * a), 0),
        "VI": (-1, 0, 1, -(1 + a + b), b - a),
        "VII": (1, 0, 0, 1 - 2 * c, 2 * w),
    }
    case = case.upper()
    if case not in table:
        raise ValueError(f"unknown case {case!r}; expected one of {', '.join(CASES)}")
    return CasePreset(case, w, a, b, c, AlphaBeta(*table[case]), _FAMILY[case])


# ---------------------------------------------------------------------------
# one-body data

def beta_m(ab: AlphaBeta, m, kappa) -> tuple:
    """Coefficients (b1_m, b0_m) of m*beta(z) + (1-m)(1-kappa*m) alpha'(z)/2."""
    f = (1 - m) * (1 - kappa * m) / 2
    return (m * ab.b1 + f * 2 * ab.a2, m * ab.b0 + f * ab.a1)


def _padd(p: Sequence, q: Sequence) -> list:
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def _pmul(p: Sequence, q: Sequence) -> list:
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] = out[i + j] + x * y
    return out


def _pscale(p: Sequence, s) -> list:
    return [x * s for x in p]


def _peval(p: Sequence, z):
    acc = 0
    for c in reversed(p):
        acc = acc * z + c
    return acc


@dataclass(frozen=True)
class ZRational:
    """A rational function num(z)/den(z) given by coefficient lists (low to high)."""

    num: tuple
    den: tuple

    def evaluate(self, z):
        d = _peval(self.den, z)
        if not d:
            raise ZeroDivisionError(f"pole at z={z}")
        return _peval(self.num, z) / d

    def equals(self, other: "ZRational") -> bool:
        lhs = _pmul(self.num, other.den)
        rhs = _pmul(other.num, self.den)
        diff = _padd(lhs, _pscale(rhs, -1))
        return all(not c for c in diff)


def v_m(ab: AlphaBeta, m, kappa) -> ZRational:
    """The rational function v_m(z) of the one-body potential with mass m."""
    b1m, b0m = beta_m(ab, m, kappa)
    alpha = [ab.a0, ab.a1, ab.a2]
    dalpha = [ab.a1, 2 * ab.a2]
    bm = [b0m, b1m]
    first = _pmul(_padd(_pscale(bm, 2), _pscale(dalpha, -1)), _padd(_pscale(bm, 2), _pscale(dalpha, -3)))
    second = _pscale(alpha, -8 * ab.a2 + 8 * b1m)
    num = _padd(first, second)
    den = _pscale(alpha, 16)
    return ZRational(tuple(num), tuple(den))


def dw_m(ab: AlphaBeta, m, kappa) -> ZRational:
    """w'_m(z) = (alpha'(z) - 2 beta_m(z)) / (4 alpha(z))."""
    b1m, b0m = beta_m(ab, m, kappa)
    num = (ab.a1 - 2 * b0m, 2 * ab.a2 - 2 * b1m)
    return ZRational(num, (4 * ab.a0, 4 * ab.a1, 4 * ab.a2))


# ---------------------------------------------------------------------------
# eigenvalues and constants

def groundstate_energy_masses(masses: Sequence, ab: AlphaBeta, kappa):
    """Ground-state constant of the variable-mass operator (power sums of masses)."""
    p1 = sum(masses, 0)
    p2 = sum((m * m for m in masses), 0)
    p3 = sum((m * m * m for m in masses), 0)
    return (-(kappa * kappa * ab.a2) / 3 * (p1 ** 3 - p3)
            - kappa * (ab.b1 - (1 + kappa) * ab.a2) / 2 * (p1 ** 2 - p2))


def E0(spec: ModelSpec):
    N, k, ab = spec.N, spec.kappa, spec.ab
    return (-(ab.a2 * k * k) / 3 * N * (N * N - 1)
            - k * (ab.b1 - (1 + k) * ab.a2) / 2 * N * (N - 1))


def eigenvalue(n: Sequence[int], spec: ModelSpec):
    """E_n of the non-deformed reduced operator (including the ground-state offset)."""
    if len(n) != spec.N:
        raise LengthMismatch(f"n must have length N={spec.N}")
    ab, k, N = spec.ab, spec.kappa, spec.N
    total = spec.scalar(E0(spec))
    for j, nj in enumerate(n, start=1):
        total = total - (ab.a2 * nj * (nj - 1) + (2 * k * ab.a2 * (N - j) + ab.b1) * nj)
    return total


def constant_CN(spec: ModelSpec):
    k, ab = spec.kappa, spec.ab
    return spec.scalar(k * (ab.b1 - ab.a2 * (1 + k)) * spec.N)


def constant_CNNMM(spec: ModelSpec, M: int, Mtilde: int):
    k, ab = spec.kappa, spec.ab
    kinv = reciprocal(k)
    Nm, Np = spec.N - M, spec.N + M
    Tm, Tp = spec.Ntilde - Mtilde, spec.Ntilde + Mtilde
    s = Nm - Tm * kinv
    return spec.scalar(
        -(k * k * ab.a2) / 3 * (s ** 3 - Nm + Tm * kinv ** 3)
        - k * (ab.b1 - (1 + k) * ab.a2) / 2 * (s ** 2 - Np - Tp * kinv ** 2)
    )


def E0_deformed(spec: ModelSpec):
    return constant_CNNMM(spec, 0, 0)


def eigenvalue_deformed(n: Sequence[int], spec: ModelSpec, M: int, Mtilde: int):
    """E^{(M,Mtilde)}_n for the deformed construction (including E0 of the deformed operator).

    The w-tilde slot coefficient uses Ntilde + M + 1 - j, which is what the
    shifted vector produces and what makes the conjugate-index identity hold.
    """
    if len(n) != M + Mtilde:
        raise LengthMismatch(f"n must have length M+Mtilde={M + Mtilde}")
    ab, k, N, Nt = spec.ab, spec.kappa, spec.N, spec.Ntilde
    total = spec.scalar(E0_deformed(spec))
    for j in range(1, M + 1):
        nj = n[j - 1]
        total = total - (ab.a2 * nj * (nj - 1) + (2 * ab.a2 * (k * (N - j) - Nt) + ab.b1) * nj)
    for j in range(M + 1, M + Mtilde + 1):
        nj = n[j - 1]
        total = total + (k * ab.a2 * nj * (nj + 1)
                         + (2 * ab.a2 * (Nt + M + 1 - j - k * (N - M)) - ab.b1) * nj)
    return total


def in_fat_hook(lam: Sequence[int], N: int, Ntilde: int) -> bool:
    lam = trim(lam)
    return len(lam) <= N or lam[N] <= Ntilde


def eigenvalue_partition_deformed(lam: Sequence[int], spec: ModelSpec):
    """E_lambda labelled by a fat-hook partition."""
    lam = trim(lam)
    if not in_fat_hook(lam, spec.N, spec.Ntilde):
        raise NotInFatHook(f"{lam} is not in the fat ({spec.N},{spec.Ntilde}) hook")
    ab, k, N, Nt = spec.ab, spec.kappa, spec.N, spec.Ntilde
    total = spec.scalar(E0_deformed(spec))
    for j, lj in enumerate(lam, start=1):
        total = total - (ab.a2 * lj * (lj - 1) + (2 * ab.a2 * (k * (N - j) - Nt) + ab.b1) * lj)
    return total


def index_vector(lam: Sequence[int], M: int, Mtilde: int) -> tuple:
    """The slot vector (m, mu) with lambda = (m, mu') for the (M, Mtilde) representation."""
    lam = trim(lam)
    head = pad(lam[:M], M)
    mu = conjugate(lam[M:])
    if len(mu) > Mtilde:
        raise NotInFatHook(f"{lam} has lambda_{M + 1} > {Mtilde}")
    return head + pad(mu, Mtilde)


def partition_of_index(n: Sequence[int], M: int) -> tuple:
    """Inverse of :func:`index_vector`: lambda = (m, mu')."""
    return trim(tuple(n[:M]) + conjugate(n[M:]))


# ---------------------------------------------------------------------------
# shifts and moves

def _slots(spec: ModelSpec, M, Mtilde) -> tuple[int, int]:
    if M is None:
        M = spec.N
    if Mtilde is None:
        Mtilde = spec.Ntilde
    return M, Mtilde


def parity(j: int, M: int) -> int:
    """0 for w slots (j <= M), 1 for w-tilde slots (1-based j)."""
    return 0 if j <= M else 1


def shifted_vector(n: Sequence[int], spec: ModelSpec, M: int | None = None, Mtilde: int | None = None) -> tuple:
    M, Mtilde = _slots(spec, M, Mtilde)
    if len(n) != M + Mtilde:
        raise LengthMismatch(f"n must have length {M + Mtilde}")
    k, N, Nt = spec.kappa, spec.N, spec.Ntilde
    out = []
    for j, nj in enumerate(n, start=1):
        if j <= M:
            out.append(spec.scalar(nj + k * (N + 1 - j) - Nt))
        else:
            out.append(spec.scalar(nj + (Nt + M + 1 - j) * reciprocal(k) - N + M))
    return tuple(out)


@dataclass(frozen=True)
class Move:
    kind: str  # "E1", "E2" or "PAIR"
    j: int
    k: int | None
    p: int | None
    nu: int | None
    target: tuple
    coefficient: object = field(compare=False)


def _neg_kappa_pow(k, e: int):
    return (-k) ** e if e >= 0 else 1 / ((-k) ** (-e))


def move_records(n: Sequence[int], spec: ModelSpec, M: int | None = None, Mtilde: int | None = None) -> list[Move]:
    """Every non-diagonal term of the f-basis action, one record per move.

    Targets with a negative tail sum are omitted since the corresponding f
    vanishes identically.
    """
    M, Mtilde = _slots(spec, M, Mtilde)
    n = tuple(n)
    L = len(n)
    if L != M + Mtilde:
        raise LengthMismatch(f"n must have length {M + Mtilde}")
    ab, k = spec.ab, spec.kappa
    npl = shifted_vector(n, spec, M, Mtilde)
    out: list[Move] = []
    for j in range(1, L + 1):
        q = parity(j, M)
        x = npl[j - 1]
        sq = _neg_kappa_pow(k, q)
        if ab.a1 or ab.b0:
            c = -(sq * ab.a1 * x * (x - 1) + (ab.b0 - (1 - _neg_kappa_pow(k, 1 - q)) * ab.a1) * (x - 1))
            t = n[: j - 1] + (n[j - 1] - 1,) + n[j:]
            if c and tail_valid(t):
                out.append(Move("E1", j, None, None, None, t, spec.scalar(c)))
        if ab.a0:
            c = -ab.a0 * sq * (x - 1) * (x - 2)
            t = n[: j - 1] + (n[j - 1] - 2,) + n[j:]
            if c and tail_valid(t):
                out.append(Move("E2", j, None, None, None, t, spec.scalar(c)))
    a = (ab.a0, ab.a1, ab.a2)
    for j in range(1, L + 1):
        for kk in range(j + 1, L + 1):
            g = (1 - k) * _neg_kappa_pow(k, 1 - parity(j, M) - parity(kk, M))
            if not g:
                continue
            for p in range(3):
                if not a[p]:
                    continue
                nu = 1
                while True:
                    t = list(n)
                    t[j - 1] += nu - 1
                    t[kk - 1] -= nu + 1 - p
                    t = tuple(t)
                    if not tail_valid(t):
                        break
                    c = a[p] * (2 * nu - p)
                    if c:
                        out.append(Move("PAIR", j, kk, p, nu, t, spec.scalar(g * c)))
                    nu += 1
    return out


def action_moves(n: Sequence[int], spec: ModelSpec, M: int | None = None, Mtilde: int | None = None) -> list[tuple]:
    """(target, coefficient) pairs of the action, duplicates merged, zeros dropped."""
    acc: dict = {}
    for mv in move_records(n, spec, M, Mtilde):
        acc[mv.target] = acc.get(mv.target, 0) + mv.coefficient
    return [(t, c) for t, c in acc.items() if c]


def diagonal(n: Sequence[int], spec: ModelSpec, M: int | None = None, Mtilde: int | None = None):
    """Eigenvalue shift E_n - E_0 of the triangular action on f_n."""
    M, Mtilde = _slots(spec, M, Mtilde)
    if spec.Ntilde == 0 and Mtilde == 0 and M == spec.N:
        return eigenvalue(n, spec) - E0(spec)
    return eigenvalue_deformed(n, spec, M, Mtilde) - E0_deformed(spec)


def slot_eigenvalue(n: Sequence[int], spec: ModelSpec, M: int | None = None, Mtilde: int | None = None):
    M, Mtilde = _slots(spec, M, Mtilde)
    if spec.Ntilde == 0 and Mtilde == 0 and M == spec.N:
        return eigenvalue(n, spec)
    return eigenvalue_deformed(n, spec, M, Mtilde)
