"""Partitions, integer vectors, the tail-sum order and sparse exact polynomials.

Three polynomial containers are provided:

* :class:`ExpandedPoly` -- plain sparse polynomial, exponent vector -> coefficient.
* :class:`SymmetricPoly` -- symmetric polynomial in the monomial basis m_lambda.
* :class:`BiSymmetricPoly` -- polynomial in two blocks (z, zt), separately
  symmetric, stored by block-sorted orbit representatives.

Variable indices are 0-based throughout.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import LengthMismatch, NegativePart, NotDivisible

IntVector = tuple
Partition = tuple


# ---------------------------------------------------------------------------
# integer vectors and partitions

def weight(n: Sequence[int]) -> int:
    return sum(n)


def tail_sums(n: Sequence[int]) -> list[int]:
    """Suffix sums [n_1+...+n_N, n_2+...+n_N, ..., n_N]."""
    out = [0] * len(n)
    acc = 0
    for i in range(len(n) - 1, -1, -1):
        acc += n[i]
        out[i] = acc
    return out


def tail_valid(n: Sequence[int]) -> bool:
    """True iff every suffix sum of n is non-negative (n dominates 0)."""
    acc = 0
    for i in range(len(n) - 1, -1, -1):
        acc += n[i]
        if acc < 0:
            return False
    return True


def tail_order_leq(m: Sequence[int], n: Sequence[int]) -> bool:
    """m <= n in the tail-sum order: every suffix sum of m is at most that of n."""
    if len(m) != len(n):
        raise LengthMismatch(f"lengths {len(m)} and {len(n)} differ")
    return all(a <= b for a, b in zip(tail_sums(m), tail_sums(n)))


def order_key(n: Sequence[int]) -> tuple:
    """Sort key refining the tail-sum order (larger key = higher in the order)."""
    ts = tail_sums(n)
    return (ts[0] if ts else 0, sum(ts), tuple(n))


def conjugate(lam: Sequence[int]) -> Partition:
    lam = [p for p in lam if p > 0]
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p >= j) for j in range(1, lam[0] + 1))


def sort_to_partition(m: Sequence[int]) -> Partition:
    if any(x < 0 for x in m):
        raise NegativePart(f"negative part in {tuple(m)}")
    return tuple(sorted((x for x in m if x), reverse=True))


def trim(lam: Sequence[int]) -> Partition:
    lam = list(lam)
    while lam and lam[-1] == 0:
        lam.pop()
    return tuple(lam)


def pad(lam: Sequence[int], length: int) -> tuple:
    if len(lam) > length:
        if any(lam[length:]):
            raise LengthMismatch(f"{tuple(lam)} has more than {length} non-zero parts")
        return tuple(lam[:length])
    return tuple(lam) + (0,) * (length - len(lam))


def is_partition(n: Sequence[int]) -> bool:
    return all(n[i] >= n[i + 1] for i in range(len(n) - 1)) and (not n or n[-1] >= 0)


def partitions(d: int, max_len: int | None = None, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of d in reverse lexicographic order (largest first)."""
    if max_part is None:
        max_part = d
    if d == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(d, max_part), 0, -1):
        rest_len = None if max_len is None else max_len - 1
        for rest in partitions(d - first, rest_len, first):
            yield (first,) + rest


def partitions_upto(d: int, max_len: int | None = None) -> Iterator[Partition]:
    for k in range(d + 1):
        yield from partitions(k, max_len)


def compositions(d: int, length: int) -> Iterator[tuple]:
    """Non-negative integer vectors of the given length and weight d."""
    if length == 0:
        if d == 0:
            yield ()
        return
    for first in range(d, -1, -1):
        for rest in compositions(d - first, length - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def distinct_permutations(vec: tuple) -> tuple:
    """All distinct rearrangements of vec (cached)."""
    return tuple(sorted(set(permutations(vec)), reverse=True))


def unit(length: int, i: int, k: int = 1) -> tuple:
    v = [0] * length
    v[i] = k
    return tuple(v)


def vadd(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# sparse polynomials

def _add_into(acc: dict, key, c) -> None:
    v = acc.get(key)
    if v is None:
        if c:
            acc[key] = c
    else:
        v = v + c
        if v:
            acc[key] = v
        else:
            del acc[key]


class _SparseBase:
    """Shared dict-of-coefficients behaviour."""

    __slots__ = ("terms",)

    def _like(self, terms: dict):
        raise NotImplementedError

    def _check(self, other) -> None:
        pass

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, key):
        return self.terms.get(key, 0)

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return self._like(out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, -c)
        return self._like(out)

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def scale(self, s):
        if not s:
            return self._like({})
        out = {}
        for k, c in self.terms.items():
            v = c * s
            if v:
                out[k] = v
        return self._like(out)

    def map_coeffs(self, fn: Callable):
        out = {}
        for k, c in self.terms.items():
            v = fn(c)
            if v:
                out[k] = v
        return self._like(out)

    def __eq__(self, other) -> bool:
        if type(self) is not type(other):
            return NotImplemented
        return self._shape() == other._shape() and self.terms == other.terms

    __hash__ = None

    def _shape(self):
        raise NotImplementedError

    def degrees(self) -> set[int]:
        return {sum(k) for k in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def sorted_items(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0])))


class ExpandedPoly(_SparseBase):
    """Sparse polynomial in ``nvars`` variables."""

    __slots__ = ("nvars",)

    def __init__(self, nvars: int, terms: Mapping | None = None):
        self.nvars = nvars
        out = {}
        for k, c in (terms or {}).items():
            k = tuple(k)
            if len(k) != nvars:
                raise LengthMismatch(f"exponent {k} does not have length {nvars}")
            if c:
                out[k] = c
        self.terms = out

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "ExpandedPoly":
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    def _like(self, terms):
        return ExpandedPoly._raw(self.nvars, terms)

    def _shape(self):
        return self.nvars

    def _check(self, other):
        if not isinstance(other, ExpandedPoly) or other.nvars != self.nvars:
            raise LengthMismatch("incompatible polynomials")

    @classmethod
    def constant(cls, nvars: int, c) -> "ExpandedPoly":
        return cls(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, i: int, c=1) -> "ExpandedPoly":
        return cls(nvars, {unit(nvars, i): c})

    def __mul__(self, other):
        if not isinstance(other, ExpandedPoly):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                _add_into(out, tuple(x + y for x, y in zip(ka, kb)), ca * cb)
        return ExpandedPoly._raw(self.nvars, out)

    def derivative(self, i: int) -> "ExpandedPoly":
        out: dict = {}
        for k, c in self.terms.items():
            e = k[i]
            if e:
                kk = list(k)
                kk[i] = e - 1
                _add_into(out, tuple(kk), c * e)
        return ExpandedPoly._raw(self.nvars, out)

    def mul_var_poly(self, i: int, coeffs: Sequence) -> "ExpandedPoly":
        """Multiply by the univariate polynomial sum_p coeffs[p] z_i^p."""
        out: dict = {}
        for p, a in enumerate(coeffs):
            if not a:
                continue
            for k, c in self.terms.items():
                kk = list(k)
                kk[i] += p
                _add_into(out, tuple(kk), c * a)
        return ExpandedPoly._raw(self.nvars, out)

    def evaluate(self, point: Sequence):
        total = 0
        for k, c in self.terms.items():
            t = c
            for x, e in zip(point, k):
                if e:
                    t = t * x ** e
            total = total + t
        return total

    def restrict_equal(self, i: int, j: int) -> "ExpandedPoly":
        """Substitute z_j := z_i (variable j is kept with exponent 0)."""
        out: dict = {}
        for k, c in self.terms.items():
            kk = list(k)
            kk[i] += kk[j]
            kk[j] = 0
            _add_into(out, tuple(kk), c)
        return ExpandedPoly._raw(self.nvars, out)

    def __repr__(self) -> str:
        return f"ExpandedPoly({self.nvars}, {self.terms!r})"


def divided_difference(P: ExpandedPoly, i: int, j: int) -> ExpandedPoly:
    """Exact quotient Q with Q*(z_i - z_j) = P."""
    if i == j:
        raise ValueError("indices must differ")
    groups: dict = defaultdict(dict)
    for k, c in P.terms.items():
        rest = list(k)
        a, b = rest[i], rest[j]
        rest[i] = rest[j] = 0
        groups[(tuple(rest), a + b)][a] = c
    out: dict = {}
    for (rest, d), cs in groups.items():
        q = 0
        for a in range(d, 0, -1):
            q = q + cs.get(a, 0)
            if q:
                kk = list(rest)
                kk[i] = a - 1
                kk[j] = d - a
                _add_into(out, tuple(kk), q)
        if q + cs.get(0, 0):
            raise NotDivisible(f"polynomial does not vanish on z_{i} = z_{j}")
    return ExpandedPoly._raw(P.nvars, out)


class SymmetricPoly(_SparseBase):
    """Symmetric polynomial sum c_lambda m_lambda in ``nvars`` variables."""

    __slots__ = ("nvars",)

    def __init__(self, nvars: int, terms: Mapping | None = None):
        self.nvars = nvars
        out: dict = {}
        for k, c in (terms or {}).items():
            lam = trim(k)
            if not is_partition(lam):
                raise ValueError(f"{k} is not a partition")
            if len(lam) > nvars:
                raise LengthMismatch(f"{lam} has more than {nvars} parts")
            _add_into(out, lam, c)
        self.terms = out

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "SymmetricPoly":
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    def _like(self, terms):
        return SymmetricPoly._raw(self.nvars, terms)

    def _shape(self):
        return self.nvars

    def _check(self, other):
        if not isinstance(other, SymmetricPoly) or other.nvars != self.nvars:
            raise LengthMismatch("incompatible symmetric polynomials")

    @classmethod
    def one(cls, nvars: int, c=1) -> "SymmetricPoly":
        return cls._raw(nvars, {(): c} if c else {})

    @classmethod
    def monomial(cls, nvars: int, lam: Sequence[int], c=1) -> "SymmetricPoly":
        return cls(nvars, {tuple(lam): c})

    def __mul__(self, other):
        if isinstance(other, SymmetricPoly):
            return mono_mul(self, other)
        return self.scale(other)

    def to_expanded(self) -> ExpandedPoly:
        out = {}
        for lam, c in self.terms.items():
            for e in distinct_permutations(pad(lam, self.nvars)):
                out[e] = c
        return ExpandedPoly._raw(self.nvars, out)

    @classmethod
    def from_expanded(cls, P: ExpandedPoly, check: bool = True) -> "SymmetricPoly":
        """Collect an expanded symmetric polynomial (coefficients read at sorted exponents)."""
        out = {}
        for k, c in P.terms.items():
            if all(k[i] >= k[i + 1] for i in range(len(k) - 1)):
                out[trim(k)] = c
        S = cls._raw(P.nvars, out)
        if check and S.to_expanded().terms != P.terms:
            raise ValueError("polynomial is not symmetric")
        return S

    def evaluate(self, point: Sequence):
        return self.to_expanded().evaluate(point)

    def leading_normalized(self, lam: Sequence[int]) -> "SymmetricPoly":
        """Divide by the coefficient of m_lam."""
        c = self.terms.get(trim(lam))
        if not c:
            raise ZeroDivisionError(f"coefficient of m_{trim(lam)} vanishes")
        return self.scale(1 / c)

    def __repr__(self) -> str:
        return f"SymmetricPoly({self.nvars}, {self.terms!r})"


def mono_mul(a: SymmetricPoly, b: SymmetricPoly) -> SymmetricPoly:
    """Product of symmetric polynomials via orbit expansion of one factor."""
    if a.nvars != b.nvars:
        raise LengthMismatch("incompatible symmetric polynomials")
    if len(a.terms) > len(b.terms):
        a, b = b, a
    n = a.nvars
    bexp = b.to_expanded().terms
    out: dict = {}
    for lam, ca in a.terms.items():
        for sigma in distinct_permutations(pad(lam, n)):
            for e, cb in bexp.items():
                s = tuple(x + y for x, y in zip(sigma, e))
                if all(s[i] >= s[i + 1] for i in range(n - 1)):
                    _add_into(out, trim(s), ca * cb)
    return SymmetricPoly._raw(n, out)


class BiSymmetricPoly(_SparseBase):
    """Polynomial in (z_1..z_N, zt_1..zt_Nt), symmetric within each block."""

    __slots__ = ("nvars", "nvars_tilde")

    def __init__(self, nvars: int, nvars_tilde: int, terms: Mapping | None = None):
        self.nvars = nvars
        self.nvars_tilde = nvars_tilde
        out: dict = {}
        for k, c in (terms or {}).items():
            k = tuple(k)
            if len(k) != nvars + nvars_tilde:
                raise LengthMismatch(f"representative {k} has wrong length")
            _add_into(out, _block_sort(k, nvars), c)
        self.terms = out

    @classmethod
    def _raw(cls, nvars: int, nvars_tilde: int, terms: dict) -> "BiSymmetricPoly":
        p = object.__new__(cls)
        p.nvars = nvars
        p.nvars_tilde = nvars_tilde
        p.terms = terms
        return p

    def _like(self, terms):
        return BiSymmetricPoly._raw(self.nvars, self.nvars_tilde, terms)

    def _shape(self):
        return (self.nvars, self.nvars_tilde)

    def _check(self, other):
        if not isinstance(other, BiSymmetricPoly) or other._shape() != self._shape():
            raise LengthMismatch("incompatible bisymmetric polynomials")

    def to_expanded(self) -> ExpandedPoly:
        N = self.nvars
        out = {}
        for k, c in self.terms.items():
            for a in distinct_permutations(k[:N]):
                for b in distinct_permutations(k[N:]):
                    out[a + b] = c
        return ExpandedPoly._raw(N + self.nvars_tilde, out)

    def __mul__(self, other):
        if isinstance(other, BiSymmetricPoly):
            self._check(other)
            return block_symmetrize(self.to_expanded() * other.to_expanded(), self.nvars, self.nvars_tilde)
        return self.scale(other)

    def to_symmetric(self) -> SymmetricPoly:
        if self.nvars_tilde:
            raise ValueError("second block is not empty")
        return SymmetricPoly._raw(self.nvars, {trim(k): c for k, c in self.terms.items()})

    @classmethod
    def from_symmetric(cls, S: SymmetricPoly) -> "BiSymmetricPoly":
        return cls._raw(S.nvars, 0, {pad(k, S.nvars): c for k, c in S.terms.items()})

    def evaluate(self, point: Sequence):
        return self.to_expanded().evaluate(point)

    def __repr__(self) -> str:
        return f"BiSymmetricPoly({self.nvars}, {self.nvars_tilde}, {self.terms!r})"


def _block_sort(k: tuple, N: int) -> tuple:
    return tuple(sorted(k[:N], reverse=True)) + tuple(sorted(k[N:], reverse=True))


def _is_block_sorted(k: tuple, N: int) -> bool:
    return all(k[i] >= k[i + 1] for i in range(N - 1)) and all(
        k[i] >= k[i + 1] for i in range(N, len(k) - 1)
    )


def is_block_symmetric(P: ExpandedPoly, N: int, Nt: int) -> bool:
    if P.nvars != N + Nt:
        raise LengthMismatch("nvars must equal N + Ntilde")
    for k, c in P.terms.items():
        if P.terms.get(_block_sort(k, N)) != c:
            return False
    reps = {}
    for k, c in P.terms.items():
        if _is_block_sorted(k, N):
            reps[k] = c
    return BiSymmetricPoly._raw(N, Nt, reps).to_expanded().terms == P.terms


def block_symmetrize(P: ExpandedPoly, N: int, Nt: int, check: bool = False) -> BiSymmetricPoly:
    """Canonical orbit form; coefficients are read at block-sorted exponents."""
    if P.nvars != N + Nt:
        raise LengthMismatch("nvars must equal N + Ntilde")
    if check and not is_block_symmetric(P, N, Nt):
        raise ValueError("polynomial is not block symmetric")
    out = {k: c for k, c in P.terms.items() if _is_block_sorted(k, N)}
    return BiSymmetricPoly._raw(N, Nt, out)


def as_expanded(P) -> ExpandedPoly:
    if isinstance(P, ExpandedPoly):
        return P
    return P.to_expanded()


def proportionality(P, Q):
    """Return c with P = c*Q, or None if no such c exists (Q must be non-zero)."""
    if not Q.terms:
        return None
    key = Q.sorted_items()[0][0]
    num, den = P.terms.get(key, 0), Q.terms[key]
    c = Fraction(num, den) if isinstance(num, int) and isinstance(den, int) else num / den
    return c if Q.scale(c).terms == P.terms else None


def linear_combination(items: Iterable, like):
    out = like._like({})
    acc: dict = {}
    for c, P in items:
        if not c:
            continue
        for k, v in P.terms.items():
            _add_into(acc, k, c * v)
    return like._like(acc) if acc else out
