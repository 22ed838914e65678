"""Irreducible root systems in Bourbaki numbering, weights, and Weyl group elements.

Weights are integer vectors in the basis of fundamental weights.  Roots are
stored as non-negative integer vectors in the basis of simple roots and
converted on demand.  Indices are 0-based internally; user-facing labels
(``s1``, ``a2``, ``w3``) are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product

from .errors import InvalidType, LengthError


@dataclass(frozen=True, order=True)
class Weight:
    """A weight in fundamental-weight coordinates."""

    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @classmethod
    def zero(cls, rank: int) -> Weight:
        return cls((0,) * rank)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other: Weight) -> Weight:
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: Weight) -> Weight:
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> Weight:
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> Weight:
        return Weight(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def divisible_by(self, m: int) -> bool:
        return all(c % m == 0 for c in self.coords)

    def exact_div(self, m: int) -> Weight:
        if not self.divisible_by(m):
            raise ValueError(f"{self.coords} is not divisible by {m}")
        return Weight(tuple(c // m for c in self.coords))

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def __repr__(self):
        return f"Weight({list(self.coords)})"


_FAMILIES = "ABCDEFG"


def _cartan(family: str, n: int) -> tuple[list[list[int]], list[int]]:
    """Cartan matrix ``A[i][j] = <alpha_i, alpha_j^vee>`` and squared half-lengths."""
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    d = [1] * n

    def bond(i, j):
        A[i][j] = A[j][i] = -1

    if family in "ABCD":
        for i in range(n - 1):
            bond(i, i + 1)
    if family == "B":
        # alpha_n short
        A[n - 2][n - 1] = -2
        d = [2] * (n - 1) + [1]
    elif family == "C":
        # alpha_n long
        A[n - 1][n - 2] = -2
        d = [1] * (n - 1) + [2]
    elif family == "D":
        A[n - 2][n - 1] = A[n - 1][n - 2] = 0
        bond(n - 3, n - 1)
    elif family == "E":
        for i, j in [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]:
            bond(i, j)
    elif family == "F":
        bond(0, 1)
        bond(2, 3)
        A[1][2], A[2][1] = -2, -1
        d = [2, 2, 1, 1]
    elif family == "G":
        A[0][1], A[1][0] = -1, -3
        d = [1, 3]
    return A, d


_VALID = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

_EXPONENTS = {
    "E6": (1, 4, 5, 7, 8, 11),
    "E7": (1, 5, 7, 9, 11, 13, 17),
    "E8": (1, 7, 11, 13, 17, 19, 23, 29),
    "F4": (1, 5, 7, 11),
    "G2": (1, 5),
}


def parse_type(label: str, rank: int | None = None) -> tuple[str, int]:
    """Split labels like ``"B3"`` or ``("B", 3)`` into family and rank."""
    label = label.strip().upper()
    if not label or label[0] not in _FAMILIES:
        raise InvalidType(f"unknown root system type {label!r}")
    family, rest = label[0], label[1:]
    if rest:
        if not rest.isdigit():
            raise InvalidType(f"unknown root system type {label!r}")
        if rank is not None and int(rest) != rank:
            raise InvalidType(f"conflicting rank in {label!r} and {rank}")
        rank = int(rest)
    if rank is None or not _VALID[family](rank):
        raise InvalidType(f"{family}{rank} is not an irreducible root system")
    return family, rank


@lru_cache(maxsize=None)
def build_root_system(type_label: str, rank: int | None = None) -> RootSystem:
    family, n = parse_type(type_label, rank)
    label = f"{family}{n}"
    relabel = tuple(range(n))
    if label == "C2":
        family, relabel = "B", (1, 0)
    A, d = _cartan(family, n)
    return RootSystem(label=label, family=family, rank=n, cartan=tuple(map(tuple, A)),
                      lengths=tuple(d), relabel=relabel)


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Combinatorial data of an irreducible root system.

    ``relabel[i]`` is the internal index of the user's simple root ``i``; it
    is only non-trivial for ``C2``, which is stored as ``B2``.
    """

    label: str
    family: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    lengths: tuple[int, ...]
    relabel: tuple[int, ...] = field(default=())

    def __repr__(self):
        return f"RootSystem({self.label})"

    @property
    def internal_label(self) -> str:
        return f"{self.family}{self.rank}"

    # -- roots ---------------------------------------------------------

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots in simple-root coordinates, ordered by height then index."""
        n, A = self.rank, self.cartan
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        found = set(simple)
        layer = list(simple)
        while layer:
            nxt = []
            for beta in layer:
                for i in range(n):
                    # alpha_i-string through beta: beta - p a_i, ..., beta + q a_i
                    if beta == simple[i]:
                        continue
                    p = 0
                    cur = list(beta)
                    while True:
                        cur[i] -= 1
                        if tuple(cur) in found:
                            p += 1
                        else:
                            break
                    pairing = sum(beta[j] * A[j][i] for j in range(n))
                    if p - pairing > 0:
                        up = list(beta)
                        up[i] += 1
                        up = tuple(up)
                        if up not in found:
                            found.add(up)
                            nxt.append(up)
            layer = nxt
        return tuple(sorted(found, key=lambda c: (sum(c), tuple(-x for x in c))))

    @cached_property
    def root_index(self) -> dict[tuple[int, ...], int]:
        return {c: k for k, c in enumerate(self.positive_roots)}

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    def simple_root(self, i: int) -> tuple[int, ...]:
        return tuple(int(i == j) for j in range(self.rank))

    def height(self, c) -> int:
        return sum(c)

    def inner(self, a, b) -> int:
        """Invariant form in simple-root coordinates, short roots of square length 2."""
        n, A, d = self.rank, self.cartan, self.lengths
        return sum(a[i] * b[j] * A[i][j] * d[j] for i in range(n) for j in range(n) if a[i] and b[j])

    def root_length(self, c) -> int:
        """Half the squared length; 1 for short roots."""
        return self.inner(c, c) // 2

    def is_short(self, c) -> bool:
        return self.root_length(c) == min(self.lengths)

    # -- weights ---------------------------------------------------------

    def weight(self, coords) -> Weight:
        return Weight(tuple(coords))

    def zero(self) -> Weight:
        return Weight.zero(self.rank)

    def fundamental(self, i: int) -> Weight:
        return Weight(tuple(int(i == j) for j in range(self.rank)))

    @cached_property
    def rho(self) -> Weight:
        return Weight((1,) * self.rank)

    def root_weight(self, c) -> Weight:
        """Fundamental-weight coordinates of sum_i c_i alpha_i."""
        n, A = self.rank, self.cartan
        return Weight(tuple(sum(c[i] * A[i][j] for i in range(n)) for j in range(n)))

    @cached_property
    def simple_weights(self) -> tuple[Weight, ...]:
        return tuple(self.root_weight(self.simple_root(i)) for i in range(self.rank))

    @cached_property
    def positive_root_weights(self) -> tuple[Weight, ...]:
        return tuple(self.root_weight(c) for c in self.positive_roots)

    @cached_property
    def _cartan_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        n = self.rank
        # solve lambda_j = sum_i c_i A[i][j]: invert A^T
        M = [[Fraction(self.cartan[j][i]) for j in range(n)] + [Fraction(int(i == k)) for k in range(n)]
             for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if M[r][col] != 0)
            M[col], M[piv] = M[piv], M[col]
            pv = M[col][col]
            M[col] = [x / pv for x in M[col]]
            for r in range(n):
                if r != col and M[r][col] != 0:
                    f = M[r][col]
                    M[r] = [a - f * b for a, b in zip(M[r], M[col])]
        return tuple(tuple(row[n:]) for row in M)

    def to_simple(self, lam: Weight) -> tuple[Fraction, ...]:
        """Exact simple-root coordinates of a weight."""
        inv = self._cartan_inverse
        return tuple(sum((inv[i][j] * lam[j] for j in range(self.rank)), Fraction(0))
                     for i in range(self.rank))

    def in_root_lattice(self, lam: Weight) -> bool:
        return all(c.denominator == 1 for c in self.to_simple(lam))

    def simple_coords(self, lam: Weight) -> tuple[int, ...]:
        """Integer simple-root coordinates; raises if λ is not in the root lattice."""
        cs = self.to_simple(lam)
        if any(c.denominator != 1 for c in cs):
            raise ValueError(f"{lam} is not in the root lattice")
        return tuple(int(c) for c in cs)

    def coroot_pairing(self, lam: Weight, c) -> int:
        """<λ, β^vee> for the root β with simple-root coordinates c (any sign)."""
        d, lb = self.lengths, self.root_length(c)
        num = sum(c[i] * d[i] * lam[i] for i in range(self.rank))
        q, r = divmod(num, lb)
        assert r == 0
        return q

    @cached_property
    def coxeter_number(self) -> int:
        short = [c for c in self.positive_roots if self.is_short(c)]
        top = max(short, key=sum)
        return self.coroot_pairing(self.rho, top) + 1

    @cached_property
    def highest_root(self) -> tuple[int, ...]:
        return self.positive_roots[-1]

    @cached_property
    def weyl_order(self) -> int:
        out = 1
        for e in self.exponents:
            out *= e + 1
        return out

    @cached_property
    def exponents(self) -> tuple[int, ...]:
        n, f = self.rank, self.family
        if f == "A":
            return tuple(range(1, n + 1))
        if f in "BC":
            return tuple(range(1, 2 * n, 2))
        if f == "D":
            return tuple(sorted(list(range(1, 2 * n - 2, 2)) + [n - 1]))
        return _EXPONENTS[self.internal_label]

    def neighbors(self, i: int) -> tuple[int, ...]:
        return tuple(j for j in range(self.rank) if j != i and self.cartan[i][j] != 0)

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and self.cartan[i][j] != 0

    # -- Weyl group --------------------------------------------------------

    def reflect(self, i: int, lam: Weight) -> Weight:
        a = lam[i]
        if a == 0:
            return lam
        row = self.cartan[i]
        return Weight(tuple(lam[j] - a * row[j] for j in range(self.rank)))

    def act(self, word, lam: Weight) -> Weight:
        for i in reversed(word):
            lam = self.reflect(i, lam)
        return lam

    def element(self, word) -> WeylElement:
        """Weyl element from a word in 0-based simple reflection indices."""
        word = tuple(word)
        image = self.act(word, self.rho)
        length = sum(1 for w in self.positive_root_weights
                     if _is_negative(self.to_simple(self.act(word, w))))
        return WeylElement(self, word, image, length)

    def user_index(self, i: int) -> int:
        """Internal index of the user's 0-based simple root i."""
        return self.relabel[i] if self.relabel else i

    def to_user(self, lam: Weight) -> Weight:
        if not self.relabel or self.relabel == tuple(range(self.rank)):
            return lam
        return Weight(tuple(lam[self.relabel[i]] for i in range(self.rank)))

    def from_user(self, lam: Weight) -> Weight:
        if not self.relabel or self.relabel == tuple(range(self.rank)):
            return lam
        out = [0] * self.rank
        for i in range(self.rank):
            out[self.relabel[i]] = lam[i]
        return Weight(tuple(out))


def _is_negative(cs) -> bool:
    return all(c <= 0 for c in cs) and any(c < 0 for c in cs)


@dataclass(frozen=True, eq=False)
class WeylElement:
    """A Weyl group element: canonical reduced word plus its image of ρ.

    The image of ρ determines the element, so equality and hashing use it.
    """

    system: RootSystem
    word: tuple[int, ...]
    rho_image: Weight
    length: int

    def __eq__(self, other):
        return (isinstance(other, WeylElement) and other.system is self.system
                and other.rho_image == self.rho_image)

    def __hash__(self):
        return hash((self.system.label, self.rho_image))

    def __repr__(self):
        return f"WeylElement({self.label})"

    @property
    def label(self) -> str:
        if not self.word:
            return "e"
        R = self.system
        inv = {R.user_index(i): i for i in range(R.rank)}
        return " ".join(f"s{inv[i] + 1}" for i in self.word)

    def act(self, lam: Weight) -> Weight:
        return self.system.act(self.word, lam)

    def dot(self, lam: Weight) -> Weight:
        R = self.system
        return self.act(lam + R.rho) - R.rho

    @cached_property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        """Action matrix on fundamental-weight coordinates (columns are images of ω_j)."""
        R = self.system
        cols = [self.act(R.fundamental(j)).coords for j in range(R.rank)]
        return tuple(tuple(cols[j][i] for j in range(R.rank)) for i in range(R.rank))

    def inverse(self) -> WeylElement:
        return self.system.element(tuple(reversed(self.word)))


def dot_action(w: WeylElement, lam: Weight) -> Weight:
    """w·λ = w(λ+ρ) − ρ."""
    return w.dot(lam)


@lru_cache(maxsize=None)
def _levels(R: RootSystem, n: int) -> tuple[tuple[tuple[int, ...], Weight], ...]:
    if n == 0:
        return (((), R.rho),)
    out: dict[Weight, tuple[int, ...]] = {}
    for i in range(R.rank):
        for word, img in _levels(R, n - 1):
            # s_i w is longer than w iff <w(ρ), α_i^vee> > 0
            if img[i] > 0:
                new = R.reflect(i, img)
                if new not in out:
                    out[new] = (i,) + word
    return tuple(sorted(((w, img) for img, w in out.items()), key=lambda t: t[0]))


def elements_of_length(R: RootSystem, n: int) -> list[WeylElement]:
    """All elements of length n, each with its lexicographically least reduced word."""
    if n < 0:
        raise LengthError("length must be non-negative")
    if n > R.num_positive:
        return []
    return [WeylElement(R, word, img, n) for word, img in _levels(R, n)]


def poincare_coefficient(R: RootSystem, n: int) -> int:
    """Coefficient of q^n in prod_i (1 + q + ... + q^{e_i})."""
    poly = [1]
    for e in R.exponents:
        new = [0] * (len(poly) + e)
        for k, c in enumerate(poly):
            for j in range(e + 1):
                new[k + j] += c
        poly = new
    return poly[n] if n < len(poly) else 0


def restricted_decompose(lam: Weight, p: int) -> tuple[Weight, Weight]:
    """Split λ = λ0 + p λ1 with every coordinate of λ0 in [0, p)."""
    lo = tuple(c % p for c in lam)
    hi = tuple((c - r) // p for c, r in zip(lam, lo))
    return Weight(lo), Weight(hi)


def restricted_weights(R: RootSystem, p: int, r: int = 1):
    """Iterate over X_r(T) in lexicographic order."""
    for c in product(range(p ** r), repeat=R.rank):
        yield Weight(c)
