"""Reduced operators, their exact action on polynomials, and the ground-state identity.

Conjugating the variable-mass operator

    sum_j (1/m_j)(-d^2/dX_j^2 + V_{m_j}) + pair interactions

by its ground state and passing to z-coordinates (z'^2 = alpha, z'' = alpha'/2)
gives the first-order-in-pairs operator

    sum_j (1/m_j) [-alpha(z_j) d_j^2 - beta_{m_j}(z_j) d_j]
      - 2 kappa sum_{j<k} [m_k alpha(z_j) d_j - m_j alpha(z_k) d_k] / (z_j - z_k).

All masses equal to 1 give the one-block reduced operator.  Masses 1 (z block)
and -1/kappa (zt block) give the deformed one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .coeffs import as_scalar, reciprocal
from .errors import KappaZero, PoleAtPoint
from .model import AlphaBeta, ModelSpec, beta_m, dw_m, groundstate_energy_masses, v_m
from .symcore import (
    BiSymmetricPoly,
    ExpandedPoly,
    SymmetricPoly,
    as_expanded,
    block_symmetrize,
    divided_difference,
    is_block_symmetric,
)


@dataclass(frozen=True)
class PairTerm:
    """[left * alpha(z_i) d_i P + right * alpha(z_j) d_j P] / (z_i - z_j)."""

    i: int
    j: int
    left: object
    right: object


@dataclass(frozen=True)
class ReducedOperator:
    ab: AlphaBeta
    kappa: object
    N: int
    Ntilde: int
    masses: tuple
    diffusion: tuple  # coefficient of alpha(z_i) d_i^2
    drift: tuple  # (c1, c0): coefficient polynomial c1 z_i + c0 of d_i
    pairs: tuple

    @property
    def nvars(self) -> int:
        return self.N + self.Ntilde


@dataclass(frozen=True)
class MassConfig:
    masses: tuple

    def __post_init__(self):
        ms = tuple(as_scalar(m) for m in self.masses)
        if any(not m for m in ms):
            raise ValueError("masses must be non-zero")
        object.__setattr__(self, "masses", ms)

    def __len__(self) -> int:
        return len(self.masses)


def reduced_operator_for_masses(ab: AlphaBeta, kappa, masses: Sequence, N: int | None = None,
                                Ntilde: int = 0) -> ReducedOperator:
    masses = tuple(masses)
    if N is None:
        N = len(masses) - Ntilde
    diffusion = []
    drift = []
    for m in masses:
        s = reciprocal(m)
        b1m, b0m = beta_m(ab, m, kappa)
        diffusion.append(-s)
        drift.append((-s * b1m, -s * b0m))
    pairs = []
    for i in range(len(masses)):
        for j in range(i + 1, len(masses)):
            pairs.append(PairTerm(i, j, -2 * kappa * masses[j], 2 * kappa * masses[i]))
    return ReducedOperator(ab, kappa, N, Ntilde, masses, tuple(diffusion), tuple(drift), tuple(pairs))


def build_reduced_operator(spec: ModelSpec) -> ReducedOperator:
    """The one-block reduced operator in N variables."""
    one = spec.scalar(1)
    return reduced_operator_for_masses(spec.ab, spec.kappa, [one] * spec.N, spec.N, 0)


def build_deformed_reduced_operator(spec: ModelSpec) -> ReducedOperator:
    """The two-block reduced operator (masses 1 on z, -1/kappa on zt)."""
    if not spec.kappa:
        raise KappaZero("kappa must be invertible")
    one = spec.scalar(1)
    mt = -reciprocal(spec.kappa)
    masses = [one] * spec.N + [mt] * spec.Ntilde
    return reduced_operator_for_masses(spec.ab, spec.kappa, masses, spec.N, spec.Ntilde)


def apply(op: ReducedOperator, P):
    """Apply the operator exactly; the result has the same container type as P."""
    E = as_expanded(P)
    n = op.nvars
    if E.nvars != n:
        raise ValueError(f"operator acts on {n} variables, polynomial has {E.nvars}")
    alpha = op.ab.alpha_coeffs
    result = ExpandedPoly(n)
    a_d = []
    for i in range(n):
        d1 = E.derivative(i)
        ad1 = d1.mul_var_poly(i, alpha)
        a_d.append(ad1)
        d2 = d1.derivative(i)
        if op.diffusion[i]:
            result = result + d2.mul_var_poly(i, alpha).scale(op.diffusion[i])
        c1, c0 = op.drift[i]
        if c1 or c0:
            result = result + d1.mul_var_poly(i, (c0, c1))
    for pt in op.pairs:
        num = a_d[pt.i].scale(pt.left) + a_d[pt.j].scale(pt.right)
        if num:
            result = result + divided_difference(num, pt.i, pt.j)
    if isinstance(P, SymmetricPoly):
        return SymmetricPoly.from_expanded(result, check=False)
    if isinstance(P, BiSymmetricPoly):
        return block_symmetrize(result, P.nvars, P.nvars_tilde)
    return result


def membership_check(P, spec: ModelSpec, all_pairs: bool = False) -> bool:
    """Block symmetry plus (d_{z_j} + kappa d_{zt_J}) P = 0 on z_j = zt_J."""
    N, Nt = spec.N, spec.Ntilde
    E = as_expanded(P)
    if E.nvars != N + Nt:
        return False
    if not isinstance(P, BiSymmetricPoly) and not is_block_symmetric(E, N, Nt):
        return False
    if N == 0 or Nt == 0:
        return True
    pairs = [(j, N + J) for j in range(N) for J in range(Nt)] if all_pairs else [(0, N)]
    for j, J in pairs:
        D = E.derivative(j) + E.derivative(J).scale(spec.kappa)
        if D.restrict_equal(j, J):
            return False
    return True


# ---------------------------------------------------------------------------
# ground-state identity

class LogDerivField:
    """G_j(Z) = -w'_{m_j}(Z_j) + sum_{k != j} kappa m_j m_k / (Z_j - Z_k) and its d/dZ_j."""

    def __init__(self, masses: Sequence, ab: AlphaBeta, kappa):
        self.masses = tuple(masses)
        self.ab = ab
        self.kappa = kappa
        self._dw = [dw_m(ab, m, kappa) for m in self.masses]

    def _one_body(self, j: int, z):
        ab = self.ab
        al = ab.alpha(z)
        if not al:
            raise PoleAtPoint(f"alpha vanishes at {z}")
        b1m, b0m = beta_m(ab, self.masses[j], self.kappa)
        A = ab.dalpha(z) - 2 * (b1m * z + b0m)
        A1 = 2 * ab.a2 - 2 * b1m
        w1 = A / (4 * al)
        w2 = (A1 * al - A * ab.dalpha(z)) / (4 * al * al)
        return w1, w2

    def drift(self, j: int, Z: Sequence):
        return self.values(j, Z)[0]

    def values(self, j: int, Z: Sequence):
        w1, w2 = self._one_body(j, Z[j])
        g, dg = -w1, -w2
        mj = self.masses[j]
        for k, zk in enumerate(Z):
            if k == j:
                continue
            d = Z[j] - zk
            if not d:
                raise PoleAtPoint(f"coincident coordinates {j}, {k}")
            c = self.kappa * mj * self.masses[k]
            g = g + c / d
            dg = dg - c / (d * d)
        return g, dg


def interaction_W(ab: AlphaBeta, z1, z2):
    d = z1 - z2
    if not d:
        raise PoleAtPoint("coincident coordinates")
    return (ab.alpha(z1) + ab.alpha(z2)) / (d * d) - ab.a2


def source_identity_residual(masses, ab: AlphaBeta, kappa, points: Sequence[Sequence]) -> list:
    """H Phi0 / Phi0 - E0 at each point; identically zero when the identity holds."""
    if isinstance(masses, MassConfig):
        masses = masses.masses
    masses = tuple(as_scalar(m) for m in masses)
    field = LogDerivField(masses, ab, kappa)
    vs = [v_m(ab, m, kappa) for m in masses]
    E0 = groundstate_energy_masses(masses, ab, kappa)
    out = []
    for Z in points:
        Z = tuple(Fraction(z) for z in Z)
        total = 0
        for j, m in enumerate(masses):
            z = Z[j]
            g, dg = field.values(j, Z)
            try:
                v = vs[j].evaluate(z)
            except ZeroDivisionError as exc:
                raise PoleAtPoint(str(exc)) from exc
            total = total + (v - ab.alpha(z) * (g * g + dg) - ab.dalpha(z) * g / 2) / m
        for j in range(len(masses)):
            for k in range(j + 1, len(masses)):
                mj, mk = masses[j], masses[k]
                total = total + kappa / 2 * (kappa * mj * mk - 1) * (mj + mk) * interaction_W(ab, Z[j], Z[k])
        out.append(total - E0)
    return out


def random_points(count: int, nvars: int, ab: AlphaBeta, seed: int = 0xC5D0, height: int = 10 ** 6) -> list[tuple]:
    """Seeded rational points with distinct coordinates avoiding zeros of alpha."""
    rng = random.Random(seed)
    pts = []
    while len(pts) < count:
        Z = tuple(Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(nvars))
        if len(set(Z)) < nvars or any(not ab.alpha(z) for z in Z):
            continue
        pts.append(Z)
    return pts
