"""Weight-graded Chevalley–Eilenberg cohomology of u with coefficients in k or u*.

Cochains are Λ^n(u*) ⊗ M.  A basis monomial is a sorted tuple of positive
root indices (for M = k) or such a tuple paired with the index of a basis
vector φ_t of u* (for M = u*).  The differential preserves the T-weight, so
everything is computed one weight block at a time.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np

from .chevalley import NilpotentAlgebra
from .errors import DegreeOutOfRange
from .fp import rank_mod_p
from .gates import kostant_gate, u1_gate, admissible_gate
from .rootsys import RootSystem, Weight, elements_of_length

TRIVIAL, USTAR = "trivial", "u_star"


class TChar(Mapping):
    """Formal character: weights with positive multiplicities."""

    def __init__(self, data: Mapping[Weight, int] | Iterable[Weight] = ()):
        counts: dict[Weight, int] = defaultdict(int)
        if isinstance(data, Mapping):
            for w, m in data.items():
                counts[w] += m
        else:
            for w in data:
                counts[w] += 1
        if any(m < 0 for m in counts.values()):
            raise ValueError("negative multiplicity")
        self._d = {w: m for w, m in sorted(counts.items()) if m}

    def __getitem__(self, w):
        return self._d.get(w, 0)

    def __iter__(self):
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __contains__(self, w):
        return w in self._d

    def __eq__(self, other):
        if isinstance(other, TChar):
            return self._d == other._d
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._d.items()))

    def __add__(self, other: TChar) -> TChar:
        out = dict(self._d)
        for w, m in other.items():
            out[w] = out.get(w, 0) + m
        return TChar(out)

    def __repr__(self):
        return "TChar({" + ", ".join(f"{list(w.coords)}: {m}" for w, m in self._d.items()) + "})"

    @property
    def dim(self) -> int:
        return sum(self._d.values())

    def minus(self, other: TChar) -> tuple[TChar, TChar]:
        """(excess, missing): what self has beyond other, and what it lacks."""
        keys = set(self._d) | set(other)
        excess = {w: self[w] - other[w] for w in keys if self[w] > other[w]}
        missing = {w: other[w] - self[w] for w in keys if other[w] > self[w]}
        return TChar(excess), TChar(missing)

    def shift(self, v: Weight) -> TChar:
        return TChar({w + v: m for w, m in self._d.items()})

    def scale(self, k: int) -> TChar:
        return TChar({w * k: m for w, m in self._d.items()})


def root_char(R: RootSystem, coords: Iterable[tuple[int, ...]]) -> TChar:
    """TChar from weights given in simple-root coordinates."""
    return TChar([R.root_weight(c) for c in coords])


# -- cochain complex --------------------------------------------------------


def _sort_sign(seq: tuple[int, ...]) -> tuple[int, tuple[int, ...]] | None:
    """Sign of the sorting permutation, or None if an index repeats."""
    if len(set(seq)) < len(seq):
        return None
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return (-1) ** inv, tuple(sorted(seq))


class CEComplex:
    """Integral cochain complex Λ^•(u*) ⊗ M, graded by weight in simple-root coordinates."""

    def __init__(self, A: NilpotentAlgebra, coeff: str = TRIVIAL):
        if coeff not in (TRIVIAL, USTAR):
            raise ValueError(f"unknown coefficients {coeff!r}")
        self.A, self.coeff = A, coeff
        self.R = A.system
        self.m = A.dim
        self._basis: dict[int, dict] = {}
        self._blocks: dict[int, dict] = {}
        self._ranks: dict[tuple[int, int], dict] = {}

    @property
    def top_degree(self) -> int:
        return self.m

    def _weight(self, key) -> tuple[int, ...]:
        roots = self.R.positive_roots
        S, t = (key, None) if self.coeff == TRIVIAL else key
        w = [0] * self.R.rank
        for i in S:
            for k, c in enumerate(roots[i]):
                w[k] += c
        if t is not None:
            for k, c in enumerate(roots[t]):
                w[k] += c
        return tuple(w)

    def basis(self, n: int) -> dict[tuple[int, ...], list]:
        """Weight -> sorted list of basis monomials of C^n."""
        if n not in self._basis:
            out = defaultdict(list)
            if 0 <= n <= self.m:
                for S in combinations(range(self.m), n):
                    if self.coeff == TRIVIAL:
                        out[self._weight(S)].append(S)
                    else:
                        for t in range(self.m):
                            out[self._weight((S, t))].append((S, t))
            self._basis[n] = dict(out)
        return self._basis[n]

    def _d_wedge(self, S: tuple[int, ...]) -> dict[tuple[int, ...], int]:
        out: dict = defaultdict(int)
        decomp = self.A.decompositions
        for pos, g in enumerate(S):
            for i, j, N in decomp[g]:
                # d phi_g contains -N phi_i ∧ phi_j
                res = _sort_sign(S[:pos] + (i, j) + S[pos + 1:])
                if res is None:
                    continue
                sign, T = res
                out[T] += (-1) ** pos * sign * (-N)
        return out

    def differential(self, key) -> dict:
        """d of a single basis monomial, as {monomial: integer coefficient}."""
        if self.coeff == TRIVIAL:
            return {k: v for k, v in self._d_wedge(key).items() if v}
        S, t = key
        out: dict = defaultdict(int)
        for T, c in self._d_wedge(S).items():
            out[(T, t)] += c
        # (-1)^n sum_a (omega ∧ phi_a) ⊗ x_{-a}.phi_t
        n = len(S)
        act = self.A.ustar_action
        for a in range(self.m):
            hit = act.get((a, t))
            if hit is None:
                continue
            s, c = hit
            res = _sort_sign(S + (a,))
            if res is None:
                continue
            sign, T = res
            out[(T, s)] += (-1) ** n * sign * c
        return {k: v for k, v in out.items() if v}

    def blocks(self, n: int) -> dict[tuple[int, ...], tuple[list, list, dict]]:
        """Weight -> (columns, rows, entries) of the integral map d_n: C^n -> C^{n+1}."""
        if n not in self._blocks:
            blocks = {}
            for wt, cols in self.basis(n).items():
                rows: dict = {}
                entries = {}
                for ci, key in enumerate(cols):
                    for img, c in self.differential(key).items():
                        ri = rows.setdefault(img, len(rows))
                        entries[(ri, ci)] = c
                blocks[wt] = (cols, list(rows), entries)
            self._blocks[n] = blocks
        return self._blocks[n]

    def block_matrix(self, n: int, wt, p: int | None = None) -> np.ndarray:
        cols, rows, entries = self.blocks(n)[wt]
        M = np.zeros((len(rows), len(cols)), dtype=np.int64)
        for (r, c), v in entries.items():
            M[r, c] = v if p is None else v % p
        return M

    def ranks(self, n: int, p: int) -> dict[tuple[int, ...], int]:
        if (n, p) not in self._ranks:
            out = {}
            if 0 <= n <= self.m:
                for wt, (cols, rows, entries) in self.blocks(n).items():
                    out[wt] = rank_mod_p(self.block_matrix(n, wt, p), p) if entries else 0
            self._ranks[(n, p)] = out
        return self._ranks[(n, p)]

    def cohomology(self, n: int, p: int) -> dict[tuple[int, ...], int]:
        """Weight (simple-root coordinates) -> dim H^n."""
        out = {}
        rk_n = self.ranks(n, p)
        rk_prev = self.ranks(n - 1, p) if n >= 1 else {}
        for wt, cols in self.basis(n).items():
            dim = len(cols) - rk_n.get(wt, 0) - rk_prev.get(wt, 0)
            if dim:
                out[wt] = dim
        return out


@lru_cache(maxsize=64)
def complex_for(A: NilpotentAlgebra, coeff: str = TRIVIAL) -> CEComplex:
    return CEComplex(A, coeff)


def ce_cohomology(A: NilpotentAlgebra, p: int, n: int, coeff: str = TRIVIAL) -> TChar:
    """H^n(u, M) over F_p as a T-character, M = k or u*."""
    top = A.dim + (1 if coeff == USTAR else 0)
    if n < 0 or n > top:
        raise DegreeOutOfRange(f"degree {n} outside [0, {top}]")
    C = complex_for(A, coeff)
    R = A.system
    return TChar({R.root_weight(wt): m for wt, m in C.cohomology(n, p).items()})


# -- closed forms --------------------------------------------------------


def kostant_char(R: RootSystem, n: int) -> TChar:
    """⊕_{ℓ(w)=n} −w·0."""
    return TChar([-w.dot(R.zero()) for w in elements_of_length(R, n)])


@dataclass(frozen=True)
class DegreeReport:
    degree: int
    computed: TChar
    expected: TChar
    excess: TChar
    missing: TChar

    @property
    def match(self) -> bool:
        return not self.excess and not self.missing


def kostant_check(A: NilpotentAlgebra, p: int, n_max: int, degrees: Iterable[int] | None = None) -> list[DegreeReport]:
    """Compare H^n(u, k) with the dot-orbit character for n ≤ n_max."""
    if n_max > A.dim:
        raise DegreeOutOfRange(f"degree {n_max} exceeds {A.dim}")
    out = []
    for n in (range(n_max + 1) if degrees is None else degrees):
        comp = ce_cohomology(A, p, n)
        exp = kostant_char(A.system, n)
        ex, mi = comp.minus(exp)
        out.append(DegreeReport(n, comp, exp, ex, mi))
    return out


def kostant_admitted(R: RootSystem, p: int) -> bool:
    return kostant_gate(R, p).admissible


def closed_form_h1(R: RootSystem, p: int) -> TChar:
    """H^1(u, k): the simple roots, plus 3α1+α2 for G2 at p = 3."""
    roots = [R.simple_root(i) for i in range(R.rank)]
    if R.label == "G2" and p == 3:
        roots.append((3, 1))
    return root_char(R, roots)


def _unit(R: RootSystem, coeffs: dict[int, int]) -> tuple[int, ...]:
    return tuple(coeffs.get(i, 0) for i in range(R.rank))


def extra_h2_classes(R: RootSystem, p: int) -> list[tuple[int, ...]]:
    """The classes of H^2(u, k) outside the length-2 dot orbit (simple-root coordinates)."""
    if p != 3:
        return []
    n, f = R.rank, R.family
    if f == "B" and n >= 3:
        return [_unit(R, {n - 3: 1, n - 2: 2, n - 1: 3})]
    if f == "C" and n >= 3:
        return [_unit(R, {n - 3: 1, n - 2: 3, n - 1: 1})]
    if f == "F":
        return [(1, 2, 3, 0), (0, 1, 3, 1)]
    if f == "G":
        return [(3, 1), (3, 3), (6, 3), (4, 2)]
    return []


def closed_form_h2(R: RootSystem, p: int) -> TChar:
    """The multiset union π ∪ π′ for H^2(u, k), p ≥ 3."""
    return kostant_char(R, 2) + root_char(R, extra_h2_classes(R, p))


def closed_form_h1_u_ustar(R: RootSystem) -> TChar:
    """Five-case table for H^1(u, u*)."""
    out: list[Weight] = []
    simple = [R.simple_root(i) for i in range(R.rank)]
    alpha = R.simple_weights
    idx = R.root_index
    for i in range(R.rank):
        out.append(alpha[i] * 2)
        for j in range(i + 1, R.rank):
            s = tuple(a + b for a, b in zip(simple[i], simple[j]))
            if s in idx:
                out.append(alpha[i] + alpha[j])
            else:
                out += [alpha[i] + alpha[j]] * 2
    for i in range(R.rank):
        for j in range(R.rank):
            s = tuple(a + b for a, b in zip(simple[i], simple[j]))
            if i != j and s in idx:
                out.append(-R.element((i, j)).dot(R.zero()))
    return TChar(out)


def h1_u_ustar(A: NilpotentAlgebra, p: int, force: bool = False) -> TChar:
    admissible_gate(A.system, p).enforce(force)
    return ce_cohomology(A, p, 1, USTAR)


def h3_U1_char(A: NilpotentAlgebra, p: int, force: bool = False) -> TChar:
    """Character of H^3(u, k) ⊕ (u*)^(1) ⊗ H^1(u, k)."""
    R = A.system
    u1_gate(R, p).enforce(force)
    h3 = ce_cohomology(A, p, 3) if A.dim >= 3 else TChar()
    h1 = ce_cohomology(A, p, 1)
    twisted = TChar([w * p + h for w in R.positive_root_weights for h, m in h1.items() for _ in range(m)])
    return h3 + twisted


def euler_characteristic(C: CEComplex, p: int) -> tuple[dict, dict]:
    """Per-weight alternating sums of cohomology and of cochain dimensions."""
    coh, ch = defaultdict(int), defaultdict(int)
    for n in range(C.top_degree + 1):
        for wt, cols in C.basis(n).items():
            ch[wt] += (-1) ** n * len(cols)
        for wt, d in C.cohomology(n, p).items():
            coh[wt] += (-1) ** n * d
    return ({k: v for k, v in coh.items() if v}, {k: v for k, v in ch.items() if v})
