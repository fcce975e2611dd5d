"""Exact coefficients: rationals, polynomials in the coupling symbol kappa and their ratios.

Two modes coexist.  In fixed mode every scalar is a :class:`fractions.Fraction`.
In symbolic mode scalars are :class:`KRational` values, canonical ratios of
:class:`KPolynomial` objects.  Mixed arithmetic promotes ``int``/``Fraction``
operands to the symbolic type, so integer constants can be used freely.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Union

from .errors import DenominatorVanishes, KappaZero

Rational = Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class KPolynomial:
    """Dense univariate polynomial in kappa with rational coefficients (low to high)."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple) -> "KPolynomial":
        # caller guarantees trimmed Fractions
        p = object.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "KPolynomial":
        return cls((c,))

    # -- basic queries --------------------------------------------------
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _F0

    def __eq__(self, other) -> bool:
        if isinstance(other, KPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.coeffs
            return len(self.coeffs) == 1 and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("KPolynomial", self.coeffs))
        return self._hash

    # -- ring operations ------------------------------------------------
    def __add__(self, other) -> "KPolynomial":
        if not isinstance(other, KPolynomial):
            other = KPolynomial.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        while out and out[-1] == 0:
            out.pop()
        return KPolynomial._raw(tuple(out))

    __radd__ = __add__

    def __neg__(self) -> "KPolynomial":
        return KPolynomial._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "KPolynomial":
        if not isinstance(other, KPolynomial):
            other = KPolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "KPolynomial":
        return (-self) + other

    def scale(self, f) -> "KPolynomial":
        f = _frac(f)
        if f == 0:
            return KPolynomial._raw(())
        if f == 1:
            return self
        return KPolynomial._raw(tuple(c * f for c in self.coeffs))

    def __mul__(self, other) -> "KPolynomial":
        if not isinstance(other, KPolynomial):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return KPolynomial._raw(())
        if len(b) == 1:
            return self.scale(b[0])
        if len(a) == 1:
            return other.scale(a[0])
        out = [_F0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return KPolynomial._raw(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "KPolynomial":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = KPolynomial.constant(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def divmod(self, other: "KPolynomial") -> tuple["KPolynomial", "KPolynomial"]:
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.coeffs)
        db = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        if len(r) - 1 < db:
            return KPolynomial._raw(()), self
        q = [_F0] * (len(r) - db)
        bc = other.coeffs
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] / lead
            q[k] = c
            if c:
                for i, y in enumerate(bc):
                    r[k + i] -= c * y
        r = r[:db]
        while r and r[-1] == 0:
            r.pop()
        while q and q[-1] == 0:
            q.pop()
        return KPolynomial._raw(tuple(q)), KPolynomial._raw(tuple(r))

    def __floordiv__(self, other: "KPolynomial") -> "KPolynomial":
        return self.divmod(other)[0]

    def __mod__(self, other: "KPolynomial") -> "KPolynomial":
        return self.divmod(other)[1]

    def monic(self) -> "KPolynomial":
        if not self.coeffs:
            return self
        return self.scale(1 / self.coeffs[-1])

    def content(self) -> Fraction:
        """Positive-or-negative rational c with self/c primitive integral, sign of the leading term."""
        if not self.coeffs:
            return _F1
        g = 0
        m = 1
        for c in self.coeffs:
            g = gcd(g, c.numerator)
            m = lcm(m, c.denominator)
        c = Fraction(g, m)
        return c if self.coeffs[-1] > 0 else -c

    def evaluate(self, k):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * k + c
        return acc if self.coeffs else _F0

    def __repr__(self) -> str:
        return f"KPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return format_kpoly(self)


def _primitive_ints(p: KPolynomial) -> list[int]:
    m = 1
    for c in p.coeffs:
        m = lcm(m, c.denominator)
    ints = [int(c * m) for c in p.coeffs]
    return _int_primitive(ints)


def _int_primitive(ints: list[int]) -> list[int]:
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints] if g > 1 else ints


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b over Z, made primitive."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for i, y in enumerate(b):
            r[shift + i] -= lr * y
        while r and r[-1] == 0:
            r.pop()
        if r:
            r = _int_primitive(r)
    return r


def kpoly_gcd(a: KPolynomial, b: KPolynomial) -> KPolynomial:
    """Monic gcd over Q[kappa] (zero if both are zero).

    Uses the primitive pseudo-remainder sequence over the integers, which keeps
    coefficient growth in check compared with Euclid over Q.
    """
    if not a.coeffs:
        return b.monic()
    if not b.coeffs:
        return a.monic()
    if len(a.coeffs) == 1 or len(b.coeffs) == 1:
        return _P1
    x, y = _primitive_ints(a), _primitive_ints(b)
    if len(x) < len(y):
        x, y = y, x
    while y:
        if len(y) == 1:
            return _P1
        x, y = y, _int_prem(x, y)
    lead = x[-1]
    return KPolynomial._raw(tuple(Fraction(c, lead) for c in x))


def format_kpoly(p: KPolynomial, var: str = "κ") -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mon = var if i == 1 else f"{var}^{i}"
            body = mon if a == 1 else f"{a}*{mon}"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


_P0 = KPolynomial._raw(())
_P1 = KPolynomial._raw((_F1,))


class KRational:
    """Canonical ratio num/den of kappa-polynomials.

    The denominator is primitive (integral coefficients with gcd 1) with a
    positive leading coefficient, and gcd(num, den) = 1.  Equal values have
    identical fields, so hashing is structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if not isinstance(num, KPolynomial):
            num = KPolynomial.constant(num)
        if den is None:
            den = _P1
        elif not isinstance(den, KPolynomial):
            den = KPolynomial.constant(den)
        n, d = _canonical(num, den)
        self.num = n
        self.den = d
        self._hash = None

    @classmethod
    def _raw(cls, num: KPolynomial, den: KPolynomial) -> "KRational":
        r = object.__new__(cls)
        r.num = num
        r.den = den
        r._hash = None
        return r

    # -- queries --------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.num.coeffs)

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and len(self.num.coeffs) <= 1

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} depends on kappa")
        return self.num.coeffs[0] if self.num.coeffs else _F0

    def __eq__(self, other) -> bool:
        if isinstance(other, KRational):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.to_fraction() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, KRational):
            if not other.num.coeffs:
                return self
            if not self.num.coeffs:
                return other
            if self.den == other.den:
                num = self.num + other.num
                if self.den.is_one():
                    return KRational._raw(num, _P1)
                return KRational(num, self.den)
            if other.den.is_one():
                return KRational._raw(self.num + other.num * self.den, self.den)
            if self.den.is_one():
                return KRational._raw(self.num * other.den + other.num, other.den)
            return KRational(self.num * other.den + other.num * self.den, self.den * other.den)
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self
            return KRational._raw(self.num + self.den.scale(other), self.den)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return KRational._raw(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (KRational, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, KRational):
            if not self.num.coeffs or not other.num.coeffs:
                return KRational._raw(_P0, _P1)
            if self.den.is_one() and other.den.is_one():
                return KRational._raw(self.num * other.num, _P1)
            a, b, c, d = self.num, self.den, other.num, other.den
            g1 = kpoly_gcd(a, d)
            g2 = kpoly_gcd(c, b)
            if not g1.is_one():
                a, d = a // g1, d // g1
            if not g2.is_one():
                c, b = c // g2, b // g2
            return _normalized(a * c, b * d)
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return KRational._raw(_P0, _P1)
            return KRational._raw(self.num.scale(other), self.den)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "KRational":
        if not self.num.coeffs:
            raise ZeroDivisionError("inverse of zero")
        return _normalized(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, KRational):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return KRational._raw(self.num.scale(Fraction(1) / other), self.den)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = KRational._raw(_P1, _P1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def evaluate(self, k) -> Fraction:
        d = self.den.evaluate(k)
        if d == 0:
            raise DenominatorVanishes(f"denominator of {self} vanishes at kappa={k}")
        return self.num.evaluate(k) / d

    def __repr__(self) -> str:
        return f"KRational({self})"

    def __str__(self) -> str:
        if self.den.is_one():
            return format_kpoly(self.num)
        return f"({format_kpoly(self.num)})/({format_kpoly(self.den)})"


def _normalized(num: KPolynomial, den: KPolynomial) -> KRational:
    """Fix the content/sign of a coprime pair."""
    if not den.coeffs:
        raise ZeroDivisionError("zero denominator")
    if not num.coeffs:
        return KRational._raw(_P0, _P1)
    c = den.content()
    if c != 1:
        inv = 1 / c
        num, den = num.scale(inv), den.scale(inv)
    return KRational._raw(num, den)


def _canonical(num: KPolynomial, den: KPolynomial) -> tuple[KPolynomial, KPolynomial]:
    if not den.coeffs:
        raise ZeroDivisionError("zero denominator")
    if not num.coeffs:
        return _P0, _P1
    if den.degree() > 0:
        g = kpoly_gcd(num, den)
        if not g.is_one():
            num, den = num // g, den // g
    r = _normalized(num, den)
    return r.num, r.den


Scalar = Union[Fraction, KRational]

KAPPA = KRational._raw(KPolynomial._raw((_F0, _F1)), _P1)


def is_symbolic(x) -> bool:
    return isinstance(x, KRational)


def as_scalar(x, like=None):
    """Coerce x into the mode of ``like`` (symbolic if like is a KRational)."""
    if isinstance(like, KRational) and not isinstance(x, KRational):
        return KRational(_frac(x))
    if isinstance(x, int):
        return Fraction(x)
    return x


def kappa_binomial(q: int) -> KPolynomial:
    """binom(kappa, q) as a degree-q polynomial in kappa."""
    if q < 0:
        raise ValueError("q must be non-negative")
    return _kappa_binomial(q)


@lru_cache(maxsize=None)
def _kappa_binomial(q: int) -> KPolynomial:
    p = _P1
    for i in range(q):
        p = p * KPolynomial((Fraction(-i, i + 1), Fraction(1, i + 1)))
    return p


def rising_binomial(s: int) -> KPolynomial:
    """binom(kappa+s-1, s) = kappa(kappa+1)...(kappa+s-1)/s!."""
    if s < 0:
        raise ValueError("s must be non-negative")
    return _rising_binomial(s)


@lru_cache(maxsize=None)
def _rising_binomial(s: int) -> KPolynomial:
    p = _P1
    for i in range(s):
        p = p * KPolynomial((Fraction(i, i + 1), Fraction(1, i + 1)))
    return p


def binomial(e, q: int):
    """Generalised binomial coefficient e(e-1)...(e-q+1)/q! for any scalar e."""
    out = 1
    for i in range(q):
        out = out * (e - i) / Fraction(i + 1)
    return out if q else as_scalar(1, like=e)


def rising(e, s: int):
    """binom(e+s-1, s): coefficients of (1-x)^(-e)."""
    out = 1
    for i in range(s):
        out = out * (e + i) / Fraction(i + 1)
    return out if s else as_scalar(1, like=e)


def evaluate_at_kappa(p, k) -> Fraction:
    """Substitute a rational value for kappa."""
    k = _frac(k)
    if isinstance(p, KPolynomial):
        return p.evaluate(k)
    if isinstance(p, KRational):
        return p.evaluate(k)
    return _frac(p)


def kappa_of(value) -> "Scalar":
    if isinstance(value, str):
        if value.strip().lower() in ("kappa", "κ", "symbolic"):
            return KAPPA
        return Fraction(value)
    return as_scalar(value)


def reciprocal(x):
    if not x:
        raise KappaZero("kappa must be invertible")
    return 1 / x


def positive_rational_roots(p: KPolynomial) -> list[Fraction]:
    """Positive rational roots of p (rational root theorem)."""
    if p.degree() < 1:
        return []
    cs = list(p.coeffs)
    while cs and cs[0] == 0:
        cs.pop(0)
    if len(cs) < 2:
        return []
    m = 1
    for c in cs:
        m = lcm(m, c.denominator)
    ints = [int(c * m) for c in cs]
    a0, an = abs(ints[0]), abs(ints[-1])
    roots = set()
    for num in _divisors(a0):
        for den in _divisors(an):
            r = Fraction(num, den)
            if KPolynomial(cs).evaluate(r) == 0:
                roots.add(r)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i * i != n:
                out.append(n // i)
        i += 1
    return out


def numerator_of(x) -> KPolynomial:
    if isinstance(x, KRational):
        return x.num
    return KPolynomial.constant(x)


# -- serialization ----------------------------------------------------------

def scalar_to_json(x) -> dict:
    if isinstance(x, KRational):
        num, den = x.num.coeffs, x.den.coeffs
    else:
        x = _frac(x)
        num, den = ((x,) if x else ()), (_F1,)
    return {"num": [str(c) for c in num], "den": [str(c) for c in den]}


def scalar_from_json(obj: dict, symbolic: bool | None = None):
    num = KPolynomial(Fraction(s) for s in obj["num"])
    den = KPolynomial(Fraction(s) for s in obj["den"])
    if symbolic is None:
        symbolic = num.degree() > 0 or den.degree() > 0
    value = KRational(num, den)
    if symbolic:
        return value
    return value.to_fraction()


def scalar_str(x) -> str:
    return str(x)


def scalar_latex(x) -> str:
    def poly_tex(p: KPolynomial) -> str:
        s = format_kpoly(p, var="\\kappa")
        s = s.replace("*", " ")
        return _fraction_tex(s)

    if isinstance(x, KRational):
        if x.den.is_one():
            return poly_tex(x.num)
        return f"\\frac{{{poly_tex(x.num)}}}{{{poly_tex(x.den)}}}"
    x = _frac(x)
    if x.denominator == 1:
        return str(x.numerator)
    sign = "-" if x < 0 else ""
    return f"{sign}\\frac{{{abs(x.numerator)}}}{{{x.denominator}}}"


def _fraction_tex(s: str) -> str:
    return re.sub(r"(\d+)/(\d+)", r"\\tfrac{\1}{\2}", s)
