"""Chevalley basis structure constants for the nilpotent radical u and its dual.

Signs follow the extraspecial-pair construction: for every non-simple
positive root xi, the pair (a, b) with a + b = xi and a minimal in the root
order gets N_{a,b} = +(p_ab + 1) (or the sign supplied by the caller); all
other constants follow from the standard Chevalley relations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .rootsys import RootSystem, build_root_system


def _neg(c):
    return tuple(-x for x in c)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _positive(c) -> bool:
    return any(x > 0 for x in c)


def string_below(R: RootSystem, a, b) -> int:
    """max{i : b - i a is a root} (a, b roots in simple coordinates)."""
    roots = R.root_index
    i, cur = 0, b
    while True:
        cur = _sub(cur, a)
        c = cur if _positive(cur) else _neg(cur)
        if c in roots and any(cur):
            i += 1
        else:
            return i


class _ConstantSolver:
    """Structure constants N_{x,y} of the full Chevalley basis, on demand."""

    def __init__(self, R: RootSystem, signs: dict | None):
        self.R = R
        self.signs = signs or {}
        self.roots = R.root_index
        self.memo: dict = {}
        self.extraspecial = {}
        for xi in R.positive_roots:
            pairs = [(a, _sub(xi, a)) for a in R.positive_roots
                     if _sub(xi, a) in self.roots and R.root_index[a] < R.root_index[_sub(xi, a)]]
            if pairs:
                self.extraspecial[xi] = min(pairs, key=lambda ab: R.root_index[ab[0]])

    def is_root(self, c) -> bool:
        return any(c) and (c if _positive(c) else _neg(c)) in self.roots

    def norm(self, c) -> int:
        return self.R.inner(c, c)

    def N(self, x, y) -> Fraction:
        key = (x, y)
        if key not in self.memo:
            self.memo[key] = self._compute(x, y)
        return self.memo[key]

    def _compute(self, x, y) -> Fraction:
        s = _add(x, y)
        if not self.is_root(s):
            return Fraction(0)
        px, py = _positive(x), _positive(y)
        if not px and not py:
            return -self.N(_neg(x), _neg(y))
        if px and py:
            return self._positive_pair(x, y)
        z = _neg(s)
        pz = _positive(z)
        if py == pz:
            return Fraction(self.norm(z), self.norm(x)) * self.N(y, z)
        return Fraction(self.norm(z), self.norm(y)) * self.N(z, x)

    def _positive_pair(self, x, y) -> Fraction:
        xi = _add(x, y)
        a, b = self.extraspecial[xi]
        sign = self.signs.get(xi, 1)
        mag = string_below(self.R, a, b) + 1
        if (x, y) == (a, b):
            return Fraction(sign * mag)
        if (y, x) == (a, b):
            return Fraction(-sign * mag)
        # four-term relation on (x, y, -a, -b)
        na, nb = _neg(a), _neg(b)
        total = Fraction(0)
        ya = _add(y, na)
        if self.is_root(ya):
            total += self.N(y, na) * self.N(x, nb) / self.norm(ya)
        xa = _add(x, na)
        if self.is_root(xa):
            total += self.N(na, x) * self.N(y, nb) / self.norm(xa)
        return Fraction(self.norm(xi)) * total / (sign * mag)


@dataclass(frozen=True, eq=False)
class NilpotentAlgebra:
    """u = span{x_{-a} : a > 0} with [x_{-a}, x_{-b}] = N[a, b] x_{-(a+b)}.

    Roots are addressed by their index in ``system.positive_roots``.
    """

    system: RootSystem
    constants: dict  # (i, j) -> integer N_{-a_i,-a_j}, both orders stored
    sums: dict  # (i, j) -> k with a_i + a_j = a_k

    @property
    def dim(self) -> int:
        return self.system.num_positive

    def bracket(self, i: int, j: int) -> tuple[int, int] | None:
        k = self.sums.get((i, j))
        return None if k is None else (k, self.constants[(i, j)])

    @cached_property
    def decompositions(self) -> tuple[tuple[tuple[int, int, int], ...], ...]:
        """For each k: the triples (i, j, N) with i < j and a_i + a_j = a_k."""
        out = [[] for _ in range(self.dim)]
        for (i, j), k in sorted(self.sums.items()):
            if i < j:
                out[k].append((i, j, self.constants[(i, j)]))
        return tuple(tuple(x) for x in out)

    @cached_property
    def ustar_action(self) -> dict:
        """(a, t) -> (s, c) meaning x_{-a} . phi_t = c phi_s, from (x.phi)(y) = -phi([x, y])."""
        out = {}
        for (a, s), t in self.sums.items():
            out[(a, t)] = (s, -self.constants[(a, s)])
        return out

    def weight(self, i: int):
        return self.system.positive_roots[i]


def structure_constants(R: RootSystem | str, signs: dict | None = None, check: bool = True) -> NilpotentAlgebra:
    """Integral structure constants of u.

    ``signs`` optionally maps a non-simple positive root (simple coordinates)
    to the sign of its extraspecial constant; any choice gives a Chevalley basis.
    """
    if isinstance(R, str):
        R = build_root_system(R)
    solver = _ConstantSolver(R, signs)
    roots = R.positive_roots
    idx = R.root_index
    constants, sums = {}, {}
    for i, a in enumerate(roots):
        for j, b in enumerate(roots):
            s = _add(a, b)
            if s in idx:
                val = solver.N(a, b)
                assert val.denominator == 1, (a, b, val)
                # N_{-a,-b} = -N_{a,b}
                constants[(i, j)] = -int(val)
                sums[(i, j)] = idx[s]
    A = NilpotentAlgebra(R, constants, sums)
    if check:
        check_algebra(A)
    return A


def check_algebra(A: NilpotentAlgebra) -> None:
    """Antisymmetry, the magnitude rule, and the Jacobi identity over Z."""
    R = A.system
    roots = R.positive_roots
    for (i, j), c in A.constants.items():
        assert A.constants[(j, i)] == -c
        assert abs(c) == string_below(R, roots[i], roots[j]) + 1, (roots[i], roots[j], c)
    n = A.dim
    idx = R.root_index
    for i in range(n):
        for j in range(i + 1, n):
            ij = _add(roots[i], roots[j])
            for k in range(j + 1, n):
                # every term vanishes unless the three roots sum to a root
                if _add(ij, roots[k]) not in idx:
                    continue
                # [x,[y,z]] + [y,[z,x]] + [z,[x,y]]
                total = 0
                for a, (b, c) in ((i, (j, k)), (j, (k, i)), (k, (i, j))):
                    inner = A.bracket(b, c)
                    if inner is None:
                        continue
                    outer = A.bracket(a, inner[0])
                    if outer is not None:
                        total += inner[1] * outer[1]
                assert total == 0, ("Jacobi", roots[i], roots[j], roots[k])


def d1(A: NilpotentAlgebra, gamma: int, p: int | None = None) -> dict[tuple[int, int], int]:
    """d_1 phi_gamma as {(i, j): coeff} over i < j, meaning coeff * phi_i ∧ phi_j.

    From (d phi)(x ∧ y) = -phi([x, y]).
    """
    out = {}
    for i, j, c in A.decompositions[gamma]:
        v = -c if p is None else (-c) % p
        if v:
            out[(i, j)] = v
    return out
