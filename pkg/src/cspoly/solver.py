"""Eigenpolynomials from the triangular action on the f-basis.

Writing P_n = sum_m u(m) f_m with u(n) = 1, the eigen-equation reduces to

    (E_n - E_m) u(m) = sum_{m'} u(m') A(m' -> m),

where A(m' -> m) is the coefficient of f_m in the action on f_{m'}.  All moves
lower the tail-sum order, so processing the support in descending linear
extension order determines every u(m) from already known values.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .coeffs import KRational, numerator_of, positive_rational_roots
from .errors import DegenerateEigenvalue, LengthMismatch, NotProportional
from .fbasis import FExpansion
from .model import ModelSpec, _slots, action_moves, index_vector, preset, slot_eigenvalue
from .symcore import _add_into, as_expanded, order_key, proportionality, tail_valid, trim


@dataclass
class EigenResult:
    n: tuple
    expansion: FExpansion
    eigenvalue: object
    degeneracy_roots: list = field(default_factory=list)
    _monomial: object = field(default=None, repr=False)

    @property
    def M(self) -> int:
        return self.expansion.M

    @property
    def Mtilde(self) -> int:
        return self.expansion.Mtilde

    @property
    def monomial_form(self):
        if self._monomial is None:
            self._monomial = self.expansion.assemble()
        return self._monomial


def _check_length(n: Sequence[int], M: int, Mtilde: int) -> tuple:
    n = tuple(n)
    if len(n) != M + Mtilde:
        raise LengthMismatch(f"n has length {len(n)}, expected M+Mtilde={M + Mtilde}")
    return n


def _sorted_desc(states) -> list:
    return sorted(states, key=order_key, reverse=True)


def support_set(n: Sequence[int], spec: ModelSpec, M: int | None = None, Mtilde: int | None = None) -> list[tuple]:
    """Every index reachable from n by action moves, n first, then descending."""
    M, Mtilde = _slots(spec, M, Mtilde)
    n = _check_length(n, M, Mtilde)
    if not tail_valid(n):
        return []
    seen = {n}
    queue = deque([n])
    while queue:
        m = queue.popleft()
        for t, _ in action_moves(m, spec, M, Mtilde):
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return _sorted_desc(seen)


def _gap_roots(gap) -> list:
    if isinstance(gap, KRational):
        return positive_rational_roots(numerator_of(gap))
    return []


def solve_eigenfunction(n: Sequence[int], spec: ModelSpec, M: int | None = None,
                        Mtilde: int | None = None) -> EigenResult:
    M, Mtilde = _slots(spec, M, Mtilde)
    n = _check_length(n, M, Mtilde)
    En = slot_eigenvalue(n, spec, M, Mtilde)
    if not tail_valid(n):
        return EigenResult(n, FExpansion(spec, M, Mtilde, {}), En)
    # every support state must be separated from n, including those whose
    # forcing happens to cancel: their coefficient would otherwise be arbitrary
    gaps = {}
    roots: set = set()
    for m in support_set(n, spec, M, Mtilde)[1:]:
        gap = En - slot_eigenvalue(m, spec, M, Mtilde)
        if not gap:
            raise DegenerateEigenvalue(m)
        gaps[m] = gap
        roots.update(_gap_roots(gap))
    u = {n: spec.scalar(1)}
    pending: dict = {}
    for t, c in action_moves(n, spec, M, Mtilde):
        _add_into(pending, t, c)
    # pending only ever grows with states strictly below everything processed
    while pending:
        m = max(pending, key=order_key)
        rhs = pending.pop(m)
        um = rhs / gaps[m]
        u[m] = um
        for t, c in action_moves(m, spec, M, Mtilde):
            _add_into(pending, t, um * c)
    terms = {m: c for m, c in u.items() if c}
    return EigenResult(n, FExpansion(spec, M, Mtilde, terms), En, sorted(roots))


def case_II_closed_form(n: Sequence[int], N: int, kappa) -> FExpansion:
    """The explicit nested sum over chains of pair moves n -> n + nu (e_j - e_k), j < k.

    Each chain contributes prod (2 kappa (1 - kappa) nu) / (E_n - E_state) over its
    states.  Tail sums decrease along a chain, so only finitely many chains end
    at a non-vanishing f.
    """
    spec = ModelSpec(preset("II").ab, kappa, N, 0)
    n = _check_length(n, N, 0)
    one = spec.scalar(1)
    if not tail_valid(n):
        return FExpansion(spec, N, 0, {})
    En = slot_eigenvalue(n, spec)
    factor = 2 * spec.kappa * (1 - spec.kappa)
    # chains sharing a state share their continuation, so sum each tail once
    tails: dict = {}

    def chains_below(state: tuple) -> dict:
        if state in tails:
            return tails[state]
        out: dict = {}
        for j in range(N):
            for k in range(j + 1, N):
                nu = 1
                while True:
                    t = list(state)
                    t[j] += nu
                    t[k] -= nu
                    t = tuple(t)
                    if not tail_valid(t):
                        break
                    gap = En - slot_eigenvalue(t, spec)
                    if not gap:
                        raise DegenerateEigenvalue(t)
                    w = factor * nu / gap
                    _add_into(out, t, w)
                    for m, c in chains_below(t).items():
                        _add_into(out, m, w * c)
                    nu += 1
        tails[state] = out
        return out

    acc = {n: one}
    for m, c in chains_below(n).items():
        _add_into(acc, m, c)
    return FExpansion(spec, N, 0, {m: c for m, c in acc.items() if c})


def choose_representation(lam: Sequence[int]) -> tuple[int, int]:
    """(M, Mtilde) minimising M + Mtilde among valid index layouts of lambda."""
    lam = trim(lam)
    best = None
    for j in range(len(lam) + 1):
        nxt = lam[j] if j < len(lam) else 0
        if best is None or j + nxt < best[0]:
            best = (j + nxt, j, nxt)
    return best[1], best[2]


def eigenpolynomial_for_partition(lam: Sequence[int], spec: ModelSpec, M: int, Mtilde: int) -> EigenResult:
    return solve_eigenfunction(index_vector(lam, M, Mtilde), spec, M, Mtilde)


def representation_equivalent(lam: Sequence[int], spec: ModelSpec, rep1: tuple, rep2: tuple):
    """c with P^{rep1} = c P^{rep2}; raises NotProportional otherwise."""
    P1 = as_expanded(eigenpolynomial_for_partition(lam, spec, *rep1).monomial_form)
    P2 = as_expanded(eigenpolynomial_for_partition(lam, spec, *rep2).monomial_form)
    if not P1 and not P2:
        return spec.scalar(1)
    c = proportionality(P1, P2) if P2 else None
    if c is None or not c:
        raise NotProportional(f"representations {rep1} and {rep2} of {trim(lam)} differ")
    return c
