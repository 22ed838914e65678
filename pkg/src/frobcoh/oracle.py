"""Ext over the distribution algebras of U_1 (and of U_r in rank one).

Cohomology H^n(U_r, k) = Ext^n_{Dist(U_r)}(k, k) is computed from a
weight-graded minimal free resolution of k, built degree by degree with
linear algebra over F_p.  It uses only the algebra's multiplication, so it is
independent of the Chevalley–Eilenberg code.  A plain bar complex is kept
for small cross-checks.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import comb

import numpy as np
import scipy.sparse as sp

from .chevalley import NilpotentAlgebra, structure_constants
from .cohomology import TChar
from .errors import ScopeExceeded
from .fp import Echelon, nullspace, rank_mod_p
from .rootsys import RootSystem, Weight, build_root_system

# -- algebras ------------------------------------------------------------


@dataclass
class FiniteGradedAlgebra:
    """Augmented F_p-algebra with a basis of weight vectors; basis element 0 is the unit.

    ``factor[m] = (g, m2, c)`` records e_m = c * (x_g . e_m2) for a generator x_g,
    which lets any basis element act through the generator matrices.
    """

    p: int
    weights: list[tuple[int, ...]]  # simple-root coordinates, non-positive
    gen_weights: list[tuple[int, ...]]
    gen_matrices: list[sp.csr_matrix]  # left multiplication by each generator
    factor: list[tuple[int, int, int] | None]
    names: list[str] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.weights)

    def act(self, m: int, X: np.ndarray, memo: dict | None = None) -> np.ndarray:
        """e_m . X for X of shape (dim, k) (columns are algebra elements)."""
        if memo is not None and m in memo:
            return memo[m]
        if m == 0:
            out = X % self.p
        else:
            g, m2, c = self.factor[m]
            out = (c * (self.gen_matrices[g] @ self.act(m2, X, memo))) % self.p
        if memo is not None:
            memo[m] = out
        return out

    def product(self, a: int, b: int) -> np.ndarray:
        e = np.zeros((self.dim, 1), dtype=np.int64)
        e[b, 0] = 1
        return self.act(a, e)[:, 0]

    def check_associative(self, samples: int | None = None, seed: int = 0) -> None:
        n = self.dim
        triples = (product(range(n), repeat=3) if samples is None else
                   ((lambda r: (r.randrange(n), r.randrange(n), r.randrange(n)))(random.Random(seed + k))
                    for k in range(samples)))
        for a, b, c in triples:
            bc = self.product(b, c)
            left = self.act(a, bc[:, None])[:, 0]
            ab = self.product(a, b)
            right = np.zeros(n, dtype=np.int64)
            for k in np.flatnonzero(ab):
                right = (right + ab[k] * self.product(int(k), c)) % self.p
            assert np.array_equal(left % self.p, right), ("associativity", a, b, c)


def restricted_enveloping_algebra(A: NilpotentAlgebra, p: int) -> FiniteGradedAlgebra:
    """u(u) with PBW basis of ordered monomials, exponents < p, p-th powers zero."""
    R = A.system
    roots = R.positive_roots
    m = len(roots)
    monos = list(product(range(p), repeat=m))
    index = {mono: k for k, mono in enumerate(monos)}
    memo: dict = {}

    def lmul(b: int, mono: tuple[int, ...]) -> dict:
        key = (b, mono)
        if key in memo:
            return memo[key]
        j = next((k for k, e in enumerate(mono) if e), None)
        out: dict = defaultdict(int)
        if j is None or b <= j:
            if mono[b] + 1 < p:
                new = list(mono)
                new[b] += 1
                out[tuple(new)] = 1
        else:
            # x_b x_j^a R = x_j (x_b x_j^(a-1) R) + [x_b, x_j] x_j^(a-1) R
            rest = list(mono)
            rest[j] -= 1
            rest = tuple(rest)
            for t, c in lmul(b, rest).items():
                for t2, c2 in lmul(j, t).items():
                    out[t2] += c * c2
            br = A.bracket(b, j)
            if br is not None:
                k, N = br
                for t, c in lmul(k, rest).items():
                    out[t] += N * c
        res = {t: c % p for t, c in out.items() if c % p}
        memo[key] = res
        return res

    mats = []
    for b in range(m):
        rows, cols, vals = [], [], []
        for k, mono in enumerate(monos):
            for t, c in lmul(b, mono).items():
                rows.append(index[t])
                cols.append(k)
                vals.append(c)
        mats.append(sp.csr_matrix((vals, (rows, cols)), shape=(len(monos), len(monos)), dtype=np.int64))
    weights = [tuple(-sum(e * roots[k][i] for k, e in enumerate(mono)) for i in range(R.rank)) for mono in monos]
    factor: list = [None]
    for mono in monos[1:]:
        j = next(k for k, e in enumerate(mono) if e)
        rest = list(mono)
        rest[j] -= 1
        factor.append((j, index[tuple(rest)], 1))
    gen_weights = [tuple(-c for c in r) for r in roots]
    return FiniteGradedAlgebra(p, weights, gen_weights, mats, factor, names=[f"x_-{r}" for r in roots])


def divided_power_algebra(p: int, r: int) -> FiniteGradedAlgebra:
    """Dist(U_r) for U the root subgroup of SL2: basis x^(n), n < p^r, weight -n·α."""
    N = p ** r
    mats = []
    for i in range(r):
        q = p ** i
        rows, cols, vals = [], [], []
        for n in range(N - q):
            c = comb(n + q, q) % p
            if c:
                rows.append(n + q)
                cols.append(n)
                vals.append(c)
        mats.append(sp.csr_matrix((vals, (rows, cols)), shape=(N, N), dtype=np.int64))
    factor: list = [None]
    for n in range(1, N):
        i = next(k for k in range(r) if (n // p ** k) % p)
        q = p ** i
        # x^(q) x^(n-q) = C(n, q) x^(n)
        factor.append((i, n - q, pow(comb(n, q) % p, -1, p)))
    return FiniteGradedAlgebra(p, [(-n,) for n in range(N)], [(-(p ** i),) for i in range(r)], mats, factor,
                               names=[f"x^({p ** i})" for i in range(r)])


# -- minimal resolution ----------------------------------------------------


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class MinimalResolution:
    """Minimal graded free resolution P_n = ⊕_g A e_g of the trivial module.

    Elements of P_n are flattened (dim, G_n) arrays, index m * G_n + g.
    """

    def __init__(self, alg: FiniteGradedAlgebra):
        self.alg = alg
        self.p = alg.p
        self.gens: list[list[tuple[int, ...]]] = [[tuple(0 for _ in alg.weights[0])]]
        self.images: list[np.ndarray | None] = [None]  # images[n]: (dim * G_{n-1}, G_n)
        self._kernel: dict[int, dict] = {}
        self._kernel[0] = self._augmentation_kernel()

    def _augmentation_kernel(self) -> dict:
        out = defaultdict(list)
        for m in range(1, self.alg.dim):
            v = np.zeros(self.alg.dim, dtype=np.int64)
            v[m] = 1
            out[self.alg.weights[m]].append(v)
        return {w: np.array(vs) for w, vs in out.items()}

    def index_weights(self, n: int) -> list[tuple[int, ...]]:
        G = self.gens[n]
        return [_add(mw, gw) for mw in self.alg.weights for gw in G]

    def _left_generator(self, h: int, V: np.ndarray, n: int) -> np.ndarray:
        """x_h . v for each row v of V (elements of P_n)."""
        G = len(self.gens[n])
        out = []
        for v in V:
            X = v.reshape(self.alg.dim, G)
            out.append((self.alg.gen_matrices[h] @ X % self.p).reshape(-1))
        return np.array(out, dtype=np.int64)

    def extend(self, degree: int) -> None:
        """Compute generators of P_0, ..., P_degree."""
        while len(self.gens) <= degree:
            n = len(self.gens)  # new generators of P_n from ker(P_{n-1} -> P_{n-2})
            K = self.kernel(n - 1)
            new_w, new_v = [], []
            for w in sorted(K, key=lambda w: (-sum(w), w)):
                ech = Echelon(K[w].shape[1], self.p)
                for h, hw in enumerate(self.alg.gen_weights):
                    src = tuple(a - b for a, b in zip(w, hw))
                    if src in K:
                        for row in self._left_generator(h, K[src], n - 1):
                            ech.add(row)
                for row in K[w]:
                    if ech.add(row):
                        new_w.append(w)
                        new_v.append(row)
            self.gens.append(new_w)
            size = self.alg.dim * len(self.gens[n - 1])
            self.images.append(np.array(new_v, dtype=np.int64).T.reshape(size, len(new_w))
                               if new_v else np.zeros((size, 0), dtype=np.int64))

    def differential(self, n: int) -> np.ndarray:
        """Matrix of d: P_n -> P_{n-1}, shape (dim G_{n-1}, dim G_n)."""
        dim = self.alg.dim
        Gp, Gn = len(self.gens[n - 1]), len(self.gens[n])
        D = self.images[n]  # column g: d(e_g) flattened (m', g')
        X = D.reshape(dim, Gp * Gn) if Gn else np.zeros((dim, 0), dtype=np.int64)
        memo: dict = {}
        out = np.zeros((dim * Gp, dim * Gn), dtype=np.int64)
        for m in range(dim):
            Y = self.alg.act(m, X, memo).reshape(dim, Gp, Gn)
            # column (m, g) = e_m . d(e_g)
            for g in range(Gn):
                out[:, m * Gn + g] = Y[:, :, g].reshape(-1)
        return out

    def kernel(self, n: int) -> dict:
        if n not in self._kernel:
            self.extend(n)
            d = self.differential(n)
            col_w = self.index_weights(n)
            row_w = self.index_weights(n - 1)
            cols_by, rows_by = defaultdict(list), defaultdict(list)
            for k, w in enumerate(col_w):
                cols_by[w].append(k)
            for k, w in enumerate(row_w):
                rows_by[w].append(k)
            out = {}
            size = len(col_w)
            for w, cols in cols_by.items():
                rows = rows_by.get(w, [])
                block = d[np.ix_(rows, cols)] if rows else np.zeros((0, len(cols)), dtype=np.int64)
                ns = nullspace(block, self.p)
                if len(ns):
                    full = np.zeros((len(ns), size), dtype=np.int64)
                    full[:, cols] = ns
                    out[w] = full
            self._kernel[n] = out
        return self._kernel[n]

    def ext(self, n: int) -> dict[tuple[int, ...], int]:
        """Ext^n(k, k) by weight (simple-root coordinates, cohomological sign)."""
        self.extend(n)
        out: dict = defaultdict(int)
        for w in self.gens[n]:
            out[tuple(-x for x in w)] += 1
        return dict(out)

    def ext_with_coefficients(self, n: int, module: list[np.ndarray], module_weights: list) -> dict:
        """Ext^n(k, M) for a finite-dimensional module given by generator matrices."""
        self.extend(n + 1)
        alg = self.alg
        dimM = len(module_weights)
        memo: dict = {}

        def rho(m: int) -> np.ndarray:
            if m not in memo:
                if m == 0:
                    memo[m] = np.eye(dimM, dtype=np.int64)
                else:
                    g, m2, c = alg.factor[m]
                    memo[m] = (c * (module[g] @ rho(m2))) % self.p
            return memo[m]

        def delta(k: int) -> np.ndarray:
            # Hom(P_k, M) -> Hom(P_{k+1}, M); basis (g, v) -> index g * dimM + v
            Gk, Gk1 = len(self.gens[k]), len(self.gens[k + 1])
            D = self.images[k + 1].reshape(alg.dim, Gk, Gk1)
            out = np.zeros((Gk1 * dimM, Gk * dimM), dtype=np.int64)
            for g1 in range(Gk1):
                for g in range(Gk):
                    block = np.zeros((dimM, dimM), dtype=np.int64)
                    for m in np.flatnonzero(D[:, g, g1]):
                        block = (block + D[m, g, g1] * rho(int(m))) % self.p
                    out[g1 * dimM:(g1 + 1) * dimM, g * dimM:(g + 1) * dimM] = block
            return out

        def weights(k: int):
            return [tuple(a - b for a, b in zip(module_weights[v], gw)) for gw in self.gens[k] for v in range(dimM)]

        cur = delta(n)
        prev = delta(n - 1) if n >= 1 else np.zeros((len(self.gens[0]) * dimM, 0), dtype=np.int64)
        wn, wprev = weights(n), (weights(n - 1) if n >= 1 else [])
        wnext = weights(n + 1)
        out = {}
        for w in sorted(set(wn)):
            cols = [k for k, x in enumerate(wn) if x == w]
            rows_next = [k for k, x in enumerate(wnext) if x == w]
            cols_prev = [k for k, x in enumerate(wprev) if x == w]
            r1 = rank_mod_p(cur[np.ix_(rows_next, cols)], self.p) if rows_next else 0
            r0 = rank_mod_p(prev[np.ix_(cols, cols_prev)], self.p) if cols_prev else 0
            dim = len(cols) - r1 - r0
            if dim:
                out[w] = dim
        return out


# -- bar complex (small cross-check) -----------------------------------


@dataclass(frozen=True)
class BarBlock:
    weight: tuple[int, ...]
    degree: int
    columns: tuple  # tuples of n basis indices of the augmentation ideal
    rows: tuple
    matrix: np.ndarray  # coboundary C^n -> C^{n+1} restricted to this weight


def _tuples_of_weight(alg: FiniteGradedAlgebra, n: int, target) -> list[tuple[int, ...]]:
    by_w = defaultdict(list)
    for m in range(1, alg.dim):
        by_w[alg.weights[m]].append(m)
    out = []

    def rec(prefix, remaining, k):
        if k == 0:
            if not any(remaining):
                out.append(tuple(prefix))
            return
        for w, ms in by_w.items():
            rest = tuple(a - b for a, b in zip(remaining, w))
            if any(x > 0 for x in rest):
                continue
            if k == 1 and any(rest):
                continue
            for m in ms:
                rec(prefix + [m], rest, k - 1)

    rec([], target, n)
    return sorted(out)


def bar_block(alg: FiniteGradedAlgebra, n: int, weight) -> BarBlock:
    """Normalized bar cochains: (δf)(a_1..a_{n+1}) = Σ_i (-1)^i f(.., a_i a_{i+1}, ..)."""
    cols = _tuples_of_weight(alg, n, weight)
    rows = _tuples_of_weight(alg, n + 1, weight)
    col_index = {c: k for k, c in enumerate(cols)}
    M = np.zeros((len(rows), len(cols)), dtype=np.int64)
    p = alg.p
    for ri, row in enumerate(rows):
        for i in range(n):
            prod_ = alg.product(row[i], row[i + 1])
            for k in np.flatnonzero(prod_):
                if k == 0:
                    continue
                key = row[:i] + (int(k),) + row[i + 2:]
                if key in col_index:
                    M[ri, col_index[key]] += (-1) ** (i + 1) * prod_[k]
    return BarBlock(tuple(weight), n, tuple(cols), tuple(rows), M % p)


def bar_ext_dim(alg: FiniteGradedAlgebra, n: int, weight) -> int:
    """dim Ext^n(k, k) at a homological weight via the bar complex."""
    cur = bar_block(alg, n, weight)
    dim = len(cur.columns) - rank_mod_p(cur.matrix, alg.p)
    if n >= 1:
        prev = bar_block(alg, n - 1, weight)
        dim -= rank_mod_p(prev.matrix, alg.p)
    return dim


# -- public entry points --------------------------------------------------


def _check_scope(R: RootSystem, p: int, r: int, n: int) -> None:
    label = R.internal_label
    if p > 5 or label not in ("A1", "A2", "B2"):
        raise ScopeExceeded(f"oracle supports A1, A2, B2 with p <= 5, got {R.label} p={p}")
    if r < 1 or (label != "A1" and r != 1) or r > 3:
        raise ScopeExceeded(f"r={r} outside the oracle envelope for {R.label}")
    if n < 0 or n > 3:
        raise ScopeExceeded(f"degree {n} outside 0..3")


@lru_cache(maxsize=None)
def _resolution(label: str, p: int, r: int) -> MinimalResolution:
    R = build_root_system(label)
    if r == 1:
        alg = restricted_enveloping_algebra(structure_constants(R), p)
    else:
        alg = divided_power_algebra(p, r)
    return MinimalResolution(alg)


def _to_weight(R: RootSystem, w) -> Weight:
    return R.root_weight(w)


def restricted_ext(R: RootSystem | str, p: int, r: int, n: int) -> TChar:
    """H^n(U_r, k) as a T-character."""
    if isinstance(R, str):
        R = build_root_system(R)
    _check_scope(R, p, r, n)
    res = _resolution(R.internal_label, p, r)
    return TChar({_to_weight(R, w): m for w, m in res.ext(n).items()})


def h1_U1_ustar(R: RootSystem | str, p: int) -> TChar:
    """H^1(U_1, u*) as a T-character."""
    if isinstance(R, str):
        R = build_root_system(R)
    _check_scope(R, p, 1, 1)
    A = structure_constants(R)
    res = _resolution(R.internal_label, p, 1)
    m = A.dim
    mats = []
    for a in range(m):
        M = np.zeros((m, m), dtype=np.int64)
        for t in range(m):
            hit = A.ustar_action.get((a, t))
            if hit is not None:
                s, c = hit
                M[s, t] = c % p
        mats.append(M)
    out = res.ext_with_coefficients(1, mats, list(R.positive_roots))
    return TChar({_to_weight(R, w): k for w, k in out.items()})


@dataclass(frozen=True)
class OracleResult:
    dim: int
    nu: TChar  # untwisted weights ν, with H^n(B_r, λ) having weights p^r ν

    def twisted(self, p: int, r: int) -> TChar:
        return self.nu.scale(p ** r)


def br_cohomology_oracle(R: RootSystem | str, p: int, r: int, n: int, lam: Weight) -> OracleResult:
    """H^n(B_r, λ) = (H^n(U_r, k) ⊗ λ)^{T_r}."""
    if isinstance(R, str):
        R = build_root_system(R)
    coh = restricted_ext(R, p, r, n)
    q = p ** r
    sel = {}
    for mu, m in coh.items():
        tot = mu + lam
        if tot.divisible_by(q):
            nu = tot.exact_div(q)
            sel[nu] = sel.get(nu, 0) + m
    nu = TChar(sel)
    return OracleResult(nu.dim, nu)
