"""Closed-form classifiers for low-degree cohomology of B_1, B_r and B.

Every classifier returns a :class:`CohClass`.  Weights are in internal
fundamental-weight coordinates.  A result ``Line(ν, r, m)`` stands for
``m`` copies of the one-dimensional module ν^(r).  ``UStarTensor(ν, r)``
stands for (u* ⊗ ν)^(r).

The B_r classification is a list of eleven shape families.  A weight λ
lies in a family when ``λ = p^r ν + s`` for one of the family's shapes ``s``.
Shapes depend only on ``(R, p, r)``, so they are tabulated once per
residue class mod p^r.  Classifying a weight is then a dictionary lookup.
"""

from __future__ import annotations

import math
import warnings
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator

from .cohomology import TChar, ce_cohomology
from .chevalley import structure_constants
from .errors import InternalInconsistency, NotRestricted, PrimeGateWarning
from .gammaw import GammaRow, GammaW, gamma_for, gamma_w, gamma_w_table_check
from .gates import PrimeGate, admissible_gate, u1_gate
from .rootsys import RootSystem, Weight, elements_of_length, restricted_decompose

__all__ = [
    "CohClass", "GammaW", "GammaRow", "PrimeGate", "Shape", "BResult",
    "gamma_w", "gamma_for", "gamma_w_table_check", "admissible_gate",
    "low_degree_B1", "classify_H3_B1", "cohomology_B1",
    "h0_Br", "h1_Br", "classify_H3_Br", "classify_H3_B",
    "CASE_LABELS", "br_shapes", "b_shapes", "br_conflicts",
    "br_weights_in_box", "b_weights_in_box", "StabilizationRow", "stabilization_report",
    "bridge_h3_B1",
]

ZERO, LINE, USTAR = "Zero", "Line", "UStarTensor"


@dataclass(frozen=True)
class CohClass:
    """One of 0, m·ν^(r) or (u* ⊗ ν)^(r)."""

    tag: str
    nu: Weight | None = None
    twist: int = 0
    mult: int = 0
    num_positive: int = field(default=0, compare=False)
    case: str = field(default="", compare=False)
    conflicts: tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def zero(cls) -> CohClass:
        return cls(ZERO)

    @classmethod
    def line(cls, nu: Weight, twist: int, mult: int = 1, case: str = "") -> CohClass:
        if mult not in (1, 2):
            raise ValueError("line multiplicity must be 1 or 2")
        return cls(LINE, nu, twist, mult, case=case)

    @classmethod
    def ustar(cls, R: RootSystem, nu: Weight, twist: int, case: str = "") -> CohClass:
        return cls(USTAR, nu, twist, 1, R.num_positive, case=case)

    @property
    def dim(self) -> int:
        if self.tag == LINE:
            return self.mult
        if self.tag == USTAR:
            return self.num_positive
        return 0

    def weights(self, R: RootSystem) -> TChar:
        """Untwisted character: multiply by p^twist for the actual weights."""
        if self.tag == LINE:
            return TChar({self.nu: self.mult})
        if self.tag == USTAR:
            return TChar([b + self.nu for b in R.positive_root_weights])
        return TChar()

    def twisted_weights(self, R: RootSystem, p: int) -> TChar:
        return self.weights(R).scale(p ** self.twist)

    def shifted(self, by: Weight) -> CohClass:
        if self.tag == ZERO:
            return self
        return CohClass(self.tag, self.nu + by, self.twist, self.mult, self.num_positive,
                        self.case, self.conflicts)

    def with_conflicts(self, labels) -> CohClass:
        return CohClass(self.tag, self.nu, self.twist, self.mult, self.num_positive,
                        self.case, tuple(labels))


def _gate(R: RootSystem, p: int, force: bool) -> None:
    admissible_gate(R, p).enforce(force)


def _resolve(found: list[tuple[str, CohClass]], force: bool, what: str) -> CohClass:
    """Pick the unique firing case, or fail loudly on a double fire."""
    if not found:
        return CohClass.zero()
    outputs = {c for _, c in found}
    if len(outputs) == 1:
        return found[0][1]
    labels = [lab for lab, _ in found]
    msg = f"{what}: cases {labels} fire together"
    if not force:
        raise InternalInconsistency(msg)
    warnings.warn(msg, PrimeGateWarning, stacklevel=3)
    return found[0][1].with_conflicts(labels[1:])


def _check_restricted(lam0: Weight, p: int) -> None:
    if not all(0 <= c < p for c in lam0):
        raise NotRestricted(f"{lam0} is not p-restricted for p={p}")


def _residue(lam: Weight, q: int) -> tuple[int, ...]:
    return tuple(c % q for c in lam)


# -- B_1 ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def _dot_residues(R: RootSystem, p: int, length: int) -> dict[tuple[int, ...], tuple]:
    out = defaultdict(list)
    for w in elements_of_length(R, length):
        out[_residue(w.dot(R.zero()), p)].append(w)
    return {k: tuple(v) for k, v in out.items()}


@lru_cache(maxsize=None)
def _simple_residues(R: RootSystem, p: int) -> dict[tuple[int, ...], tuple[int, ...]]:
    out = defaultdict(list)
    for i, a in enumerate(R.simple_weights):
        out[_residue(-a, p)].append(i)
    return {k: tuple(v) for k, v in out.items()}


def _dot_matches(R, lam0, p, length) -> list[tuple[str, CohClass]]:
    found = []
    for w in _dot_residues(R, p, length).get(_residue(lam0, p), ()):
        gamma = (lam0 - w.dot(R.zero())).exact_div(p)
        label = f"w.0 + p*gamma_w, w = {w.label}"
        found.append((label, CohClass.line(gamma, 1, 1, label)))
    return found


def low_degree_B1(R: RootSystem, lam0: Weight, n: int, p: int, force: bool = False) -> CohClass:
    """H^n(B_1, λ0) for n = 0, 1, 2 and λ0 ∈ X_1(T)."""
    _gate(R, p, force)
    _check_restricted(lam0, p)
    if n == 0:
        if lam0.is_zero():
            return CohClass.line(R.zero(), 1, 1, "H0: lambda0 = 0")
        return CohClass.zero()
    if n == 1:
        found = []
        for i in _simple_residues(R, p).get(_residue(lam0, p), ()):
            label = f"H1: -a{i + 1} + p*w{i + 1}"
            found.append((label, CohClass.line(R.fundamental(i), 1, 1, label)))
        return _resolve(found, force, "H1(B1)")
    if n == 2:
        found = []
        if lam0.is_zero():
            found.append(("H2: lambda0 = 0", CohClass.ustar(R, R.zero(), 1, "H2: lambda0 = 0")))
        found += _dot_matches(R, lam0, p, 2)
        return _resolve(found, force, "H2(B1)")
    if n == 3:
        return classify_H3_B1(R, lam0, p, force)
    raise ValueError("degree must be 0..3")


def classify_H3_B1(R: RootSystem, lam0: Weight, p: int, force: bool = False) -> CohClass:
    """H^3(B_1, λ0) for λ0 ∈ X_1(T)."""
    _gate(R, p, force)
    _check_restricted(lam0, p)
    found = _dot_matches(R, lam0, p, 3)
    for i in _simple_residues(R, p).get(_residue(lam0, p), ()):
        label = f"u* twist: -a{i + 1} + p*w{i + 1}"
        found.append((label, CohClass.ustar(R, R.fundamental(i), 1, label)))
    return _resolve(found, force, "H3(B1)")


def cohomology_B1(R: RootSystem, lam: Weight, n: int, p: int, force: bool = False) -> CohClass:
    """H^n(B_1, λ) for any λ: classify λ0 and shift by λ1, where λ = λ0 + pλ1."""
    lam0, lam1 = restricted_decompose(lam, p)
    return low_degree_B1(R, lam0, n, p, force).shifted(lam1)


def bridge_h3_B1(R: RootSystem, p: int) -> dict[Weight, int]:
    """dim H^3(B_1, λ0) per λ0 ∈ X_1(T), from H^3(u,k) ⊕ (u*)^(1) ⊗ H^1(u,k).

    A weight μ of that module contributes to λ0 ≡ −μ (mod p).
    """
    A = structure_constants(R)
    u1_gate(R, p).enforce(force=True)
    h3 = ce_cohomology(A, p, 3) if A.dim >= 3 else TChar()
    h1 = ce_cohomology(A, p, 1)
    out: dict[Weight, int] = defaultdict(int)
    for mu, m in h3.items():
        out[Weight(_residue(-mu, p))] += m
    for b in R.positive_root_weights:
        for h, m in h1.items():
            out[Weight(_residue(-(b * p + h), p))] += m
    return dict(out)


# -- B_r -------------------------------------------------------------------

CASE_LABELS = {
    1: "u* twist: -p^l a",
    2: "p^l w.0, l(w)=3",
    3: "-p^m a + p^l w.0, l(w)=2",
    4: "p^m w.0 - p^l a, l(w)=2",
    5: "-p^l b - a",
    6: "-p^m b - p^l a, doubled",
    7: "-p^n c - p^m b - p^l a",
    8: "-p^l(a+b), a+b not a root, doubled",
    9: "-2p^l a",
    10: "-p^l(a+b), a+b a root",
    11: "p^l s_a s_b.0, a+b a root",
}
DOUBLED = {6, 8}
# dimension of H^3(B, λ) for the ν = 0 shapes; case 1 does not survive
B_DIMS = {1: 0, 2: 1, 3: 1, 4: 1, 5: 1, 6: 2, 7: 1, 8: 2, 9: 1, 10: 1, 11: 1}


@dataclass(frozen=True)
class Shape:
    case: int
    shift: Weight
    detail: str

    @property
    def label(self) -> str:
        return f"case {self.case} ({CASE_LABELS[self.case]}): {self.detail}"

    def output(self, R: RootSystem, nu: Weight, r: int) -> CohClass:
        if self.case == 1:
            return CohClass.ustar(R, nu, r, self.label)
        return CohClass.line(nu, r, 2 if self.case in DOUBLED else 1, self.label)


def _user(R: RootSystem) -> dict[int, int]:
    return {R.user_index(i): i + 1 for i in range(R.rank)}


def _generate(R: RootSystem, p: int, top: int) -> Iterator[Shape]:
    """All shapes with every exponent in [0, top]."""
    a = R.simple_weights
    n = R.rank
    name = {i: f"a{u}" for i, u in _user(R).items()}
    exps = range(top + 1)
    pos = range(1, top + 1)
    w3 = [(w, w.dot(R.zero())) for w in elements_of_length(R, 3)]
    w2 = [(w, w.dot(R.zero())) for w in elements_of_length(R, 2)]
    adjacent = [(i, j) for i in range(n) for j in range(n) if R.adjacent(i, j)]
    apart = [(i, j) for i, j in combinations(range(n), 2) if not R.adjacent(i, j)]

    for l, i in product(exps, range(n)):
        yield Shape(1, -(a[i] * p ** l), f"l={l}, a={name[i]}")
    for l, (w, d) in product(exps, w3):
        yield Shape(2, d * p ** l, f"l={l}, w={w.label}")
    for (l, m), i, (w, d) in product(combinations(exps, 2), range(n), w2):
        yield Shape(3, d * p ** l - a[i] * p ** m, f"l={l}, m={m}, a={name[i]}, w={w.label}")
        yield Shape(4, d * p ** m - a[i] * p ** l, f"l={l}, m={m}, a={name[i]}, w={w.label}")
    for l, i, j in product(pos, range(n), range(n)):
        yield Shape(5, -(a[j] * p ** l) - a[i], f"l={l}, a={name[i]}, b={name[j]}")
    for (l, m), i, j in product(combinations(pos, 2), range(n), range(n)):
        yield Shape(6, -(a[j] * p ** m) - a[i] * p ** l, f"l={l}, m={m}, a={name[i]}, b={name[j]}")
    for (l, m, k), i, j, c in product(combinations(exps, 3), range(n), range(n), range(n)):
        yield Shape(7, -(a[c] * p ** k) - a[j] * p ** m - a[i] * p ** l,
                    f"l={l}, m={m}, n={k}, a={name[i]}, b={name[j]}, c={name[c]}")
    for l, (i, j) in product(pos, apart):
        yield Shape(8, -((a[i] + a[j]) * p ** l), f"l={l}, a={name[i]}, b={name[j]}")
    for l, i in product(pos, range(n)):
        yield Shape(9, -(a[i] * (2 * p ** l)), f"l={l}, a={name[i]}")
    for l, (i, j) in product(pos, adjacent):
        if i < j:
            yield Shape(10, -((a[i] + a[j]) * p ** l), f"l={l}, a={name[i]}, b={name[j]}")
        d = R.element((i, j)).dot(R.zero())
        yield Shape(11, d * p ** l, f"l={l}, a={name[i]}, b={name[j]}")


def _dedupe(shapes) -> list[Shape]:
    """One shape per (case, shift); the family quantifies existence, not count."""
    seen: dict[tuple[int, Weight], Shape] = {}
    for s in shapes:
        seen.setdefault((s.case, s.shift), s)
    return list(seen.values())


@lru_cache(maxsize=None)
def br_shapes(R: RootSystem, p: int, r: int) -> tuple[Shape, ...]:
    return tuple(_dedupe(_generate(R, p, r - 1)))


@lru_cache(maxsize=None)
def _br_table(R: RootSystem, p: int, r: int) -> dict[tuple[int, ...], tuple[Shape, ...]]:
    q = p ** r
    table = defaultdict(list)
    for s in br_shapes(R, p, r):
        table[_residue(s.shift, q)].append(s)
    return {k: tuple(v) for k, v in table.items()}


def classify_H3_Br(R: RootSystem, lam: Weight, p: int, r: int, force: bool = False) -> CohClass:
    """H^3(B_r, λ) as a B/B_r-module.

    At r = 1 only cases 1 and 2 can occur and the result agrees with
    :func:`cohomology_B1` in degree 3.
    """
    if r < 1:
        raise ValueError("r must be positive")
    _gate(R, p, force)
    q = p ** r
    found = []
    for s in _br_table(R, p, r).get(_residue(lam, q), ()):
        nu = (lam - s.shift).exact_div(q)
        found.append((s.label, s.output(R, nu, r)))
    return _resolve(found, force, f"H3(B_{r})")


def h0_Br(R: RootSystem, lam: Weight, p: int, r: int) -> CohClass:
    q = p ** r
    if lam.divisible_by(q):
        return CohClass.line(lam.exact_div(q), r, 1, "H0: lambda = p^r nu")
    return CohClass.zero()


def h1_Br(R: RootSystem, lam: Weight, p: int, r: int, force: bool = False) -> CohClass:
    """H^1(B_r, λ) = ν^(r) exactly when λ = p^r ν − p^i α with 0 ≤ i < r."""
    _gate(R, p, force)
    q = p ** r
    found = []
    for i, l in product(range(R.rank), range(r)):
        rest = lam + R.simple_weights[i] * p ** l
        if rest.divisible_by(q):
            label = f"H1: -p^{l} a{_user(R)[i]}"
            found.append((label, CohClass.line(rest.exact_div(q), r, 1, label)))
    return _resolve(found, force, f"H1(B_{r})")


@dataclass(frozen=True)
class Conflict:
    r: int
    first: Shape
    second: Shape


def _box_hits(shift: Weight, q: int, box: int) -> bool:
    """Whether some λ ≡ shift (mod q) has every coordinate in [−box, box]."""
    for c in shift:
        first = -box + (c + box) % q  # least value ≥ −box congruent to c
        if first > box:
            return False
    return True


def br_conflicts(R: RootSystem, p: int, r: int, box: int | None = None) -> list[Conflict]:
    """Pairs of shapes from different cases sharing a residue class mod p^r.

    With ``box`` given, only classes meeting [−box, box]^rank count.
    """
    q = p ** r
    out = []
    for shapes in _br_table(R, p, r).values():
        for s, t in combinations(shapes, 2):
            if box is not None and not _box_hits(s.shift, q, box):
                continue
            out.append(Conflict(r, s, t))
    return out


def _nu_range(c: int, q: int, box: int) -> range:
    """Integers ν with |qν + c| ≤ box."""
    return range(math.ceil((-box - c) / q), math.floor((box - c) / q) + 1)


def br_weights_in_box(R: RootSystem, p: int, r: int, box: int,
                      dominant: bool = False) -> Iterator[tuple[Weight, Shape]]:
    """Every (λ, shape) with λ = p^r ν + shift in [−box, box]^rank.

    Every λ with H^3(B_r, λ) ≠ 0 in the box appears; all others classify as zero.
    """
    q = p ** r
    for s in br_shapes(R, p, r):
        ranges = []
        for c in s.shift:
            rg = _nu_range(c, q, box)
            if dominant:
                rg = range(max(rg.start, math.ceil(-c / q)), rg.stop)
            ranges.append(rg)
        for nu in product(*ranges):
            yield Weight(tuple(q * x + c for x, c in zip(nu, s.shift))), s


# -- B ---------------------------------------------------------------------


@dataclass(frozen=True)
class BResult:
    dim: int
    cases: tuple[str, ...]


def _exponent_bound(lam: Weight, p: int) -> int:
    """No shape with a larger exponent can equal λ."""
    big = max((abs(c) for c in lam), default=0)
    e = 0
    while p ** e < big + 1:
        e += 1
    return e + 2


@lru_cache(maxsize=None)
def b_shapes(R: RootSystem, p: int, top: int) -> dict[Weight, tuple[Shape, ...]]:
    """ν = 0 shapes with exponents ≤ top, keyed by the weight itself."""
    out = defaultdict(list)
    for s in _dedupe(_generate(R, p, top)):
        if B_DIMS[s.case]:
            out[s.shift].append(s)
    return {k: tuple(v) for k, v in out.items()}


def classify_H3_B(R: RootSystem, lam: Weight, p: int, force: bool = False) -> BResult:
    """dim H^3(B, λ) with the matching case."""
    _gate(R, p, force)
    hits = b_shapes(R, p, _exponent_bound(lam, p)).get(lam, ())
    dims = {B_DIMS[s.case] for s in hits}
    if len(dims) > 1:
        msg = f"H3(B): cases {[s.label for s in hits]} fire together"
        if not force:
            raise InternalInconsistency(msg)
        warnings.warn(msg, PrimeGateWarning, stacklevel=2)
    if not hits:
        return BResult(0, ())
    return BResult(B_DIMS[hits[0].case], tuple(s.label for s in hits))


def b_weights_in_box(R: RootSystem, p: int, box: int) -> list[Weight]:
    """Every λ in [−box, box]^rank with H^3(B, λ) ≠ 0."""
    top = _exponent_bound(R.weight((box,) * R.rank), p)
    return sorted(lam for lam in b_shapes(R, p, top) if all(abs(c) <= box for c in lam))


@dataclass(frozen=True)
class StabilizationRow:
    lam: Weight
    b_dim: int
    br_dims: tuple[int, ...]
    br_fixed: tuple[int, ...]

    @property
    def stable(self) -> bool:
        return all(d == self.b_dim for d in self.br_dims)

    @property
    def fixed_stable(self) -> bool:
        return all(d == self.b_dim for d in self.br_fixed)


def _fixed_dim(c: CohClass) -> int:
    """Dimension of the weight-zero part, the only part B can act trivially on."""
    return c.mult if c.tag == LINE and c.nu.is_zero() else 0


def stabilization_report(R: RootSystem, p: int, box: int, rs=range(6, 9)) -> list[StabilizationRow]:
    """Compare H^3(B_r, λ) for r in ``rs`` with H^3(B, λ) over the box.

    Only weights where some side is non-zero are listed; elsewhere both vanish.
    """
    support = set(b_weights_in_box(R, p, box))
    for r in rs:
        support.update(lam for lam, _ in br_weights_in_box(R, p, r, box))
    rows = []
    for lam in sorted(support):
        b = classify_H3_B(R, lam, p).dim
        cls = [classify_H3_Br(R, lam, p, r) for r in rs]
        rows.append(StabilizationRow(lam, b, tuple(c.dim for c in cls), tuple(_fixed_dim(c) for c in cls)))
    return rows
