"""The weights γ_w with w·0 + pγ_w restricted, and their case-by-case table.

``gamma_for`` computes γ_w directly.  ``table_gamma_w`` evaluates the
case table for length-3 elements (six adjacency patterns, each with a generic
value and type-specific exceptions) so the two can be compared.  The table
works in the caller's labeling, so C2 is read with C-type rules.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import LengthError
from .rootsys import RootSystem, Weight, WeylElement, elements_of_length


@dataclass(frozen=True)
class GammaW:
    w: WeylElement
    p: int
    gamma: Weight

    @property
    def restricted_weight(self) -> Weight:
        return self.w.dot(self.w.system.zero()) + self.gamma * self.p


def gamma_for(w: WeylElement, p: int) -> Weight:
    """The unique γ with w·0 + pγ ∈ X_1(T), for any length."""
    c = w.dot(w.system.zero())
    return Weight(tuple(-(x // p) for x in c))


def gamma_w(w: WeylElement, p: int) -> GammaW:
    if w.length != 3:
        raise LengthError(f"γ_w table needs length 3, got {w.length}")
    g = GammaW(w, p, gamma_for(w, p))
    assert all(0 <= x < p for x in g.restricted_weight), g
    return g


# -- the case table ------------------------------------------------------------
# Words and values use 1-based labels in the user's numbering; n is the rank.

# (case, family, prime test, word, value, parameter range)
# value maps label -> coefficient of ω_label
_EXCEPTIONS = []


def _exc(case, fam, ptest, word, value, param=None):
    _EXCEPTIONS.append((case, fam, ptest, word, value, param))


def P3(p):
    return p == 3


def P5(p):
    return p == 5


def GE5(p):
    return p >= 5


def GE7(p):
    return p >= 7


def P35(p):
    return p in (3, 5)


# (I) w = s_i s_j s_i
_exc("I", "B", P3, lambda n: (n - 2, n - 1, n - 2), lambda n: {n - 2: 1, n - 1: 1, n: -1})
_exc("I", "B", GE5, lambda n: (n - 1, n, n - 1), lambda n: {n - 1: 1})
_exc("I", "B", P3, lambda n: (n - 1, n, n - 1), lambda n: {n - 1: 1, n - 2: -1})
_exc("I", "B", GE5, lambda n: (n, n - 1, n), lambda n: {n: 1})
_exc("I", "B", P3, lambda n: (n, n - 1, n), lambda n: {n: 2})
_exc("I", "C", GE5, lambda n: (n - 1, n, n - 1), lambda n: {n - 1: 1})
_exc("I", "C", P3, lambda n: (n - 1, n, n - 1), lambda n: {n - 1: 2, n - 2: -1})
_exc("I", "C", GE5, lambda n: (n, n - 1, n), lambda n: {n: 1})
_exc("I", "C", P3, lambda n: (n, n - 1, n), lambda n: {n: 1, n - 2: -1})
_exc("I", "F", P3, lambda n: (1, 2, 1), lambda n: {1: 1, 2: 1, 3: -1})
_exc("I", "F", GE5, lambda n: (2, 3, 2), lambda n: {2: 1})
_exc("I", "F", P3, lambda n: (2, 3, 2), lambda n: {2: 1, 1: -1, 4: -1})
_exc("I", "F", P3, lambda n: (3, 2, 3), lambda n: {3: 1, 2: 1, 4: -1})
_exc("I", "G", GE7, lambda n: (1, 2, 1), lambda n: {1: 1})
_exc("I", "G", P35, lambda n: (1, 2, 1), lambda n: {1: 2})
_exc("I", "G", GE5, lambda n: (2, 1, 2), lambda n: {2: 1})
_exc("I", "G", P3, lambda n: (2, 1, 2), lambda n: {2: 2, 1: -1})
# (II) no two letters adjacent
_exc("II", "C", P3, lambda n, k: (n, n - 2, k), lambda n, k: {n: 1, n - 2: 1, k: 1, n - 1: 1},
     lambda n: range(1, n - 3))
_exc("II", "D", P3, lambda n: (n, n - 1, n - 3), lambda n: {n: 1, n - 1: 1, n - 3: 1, n - 2: -1})
_exc("II", "E", P3, lambda n: (2, 3, 5), lambda n: {2: 1, 3: 1, 5: 1, 4: -1})
# (III) exactly one adjacent pair
_exc("III", "B", P3, lambda n, k: (n, n - 1, k), lambda n, k: {n: 2, k: 1}, lambda n: range(1, n - 2))
_exc("III", "C", P3, lambda n, k: (n - 1, n, k), lambda n, k: {n - 1: 2, k: 1, n - 2: -1},
     lambda n: range(1, n - 2))
_exc("III", "F", P3, lambda n: (1, 2, 4), lambda n: {1: 1, 4: 1, 3: -1})
_exc("III", "F", P5, lambda n: (2, 1, 4), lambda n: {2: 1, 4: 1, 3: -1})
# (IV) path i - j - k
_exc("IV", "B", GE5, lambda n: (n - 1, n - 2, n - 3), lambda n: {n - 1: 1, n: -1})
_exc("IV", "B", P3, lambda n: (n - 1, n - 2, n - 3), lambda n: {n - 1: 2, n: -2})
_exc("IV", "B", GE5, lambda n: (n, n - 1, n - 2), lambda n: {n: 2})
_exc("IV", "C", P3, lambda n: (n, n - 1, n - 2), lambda n: {n: 2, n - 1: -1})
_exc("IV", "F", P3, lambda n: (2, 3, 4), lambda n: {2: 2, 1: -1, 3: -1})
# (V) path j - i - k
_exc("V", "B", P5, lambda n: (n - 1, n - 2, n), lambda n: {n - 1: 1, n: -1})
_exc("V", "B", P3, lambda n: (n - 1, n - 2, n), lambda n: {n - 1: 2, n: -2})
_exc("V", "C", P5, lambda n: (n - 1, n - 2, n), lambda n: {n - 1: 2})
_exc("V", "C", P3, lambda n: (n - 1, n - 2, n), lambda n: {n - 1: 2, n: -1})
_exc("V", "F", P5, lambda n: (2, 1, 3), lambda n: {2: 1, 3: -1})
_exc("V", "F", P3, lambda n: (2, 1, 3), lambda n: {2: 2, 3: -2})
_exc("V", "F", P5, lambda n: (3, 4, 2), lambda n: {3: 2})
_exc("V", "F", P3, lambda n: (3, 4, 2), lambda n: {3: 2, 2: -1})
# (VI) path i - k - j
_exc("VI", "B", P3, lambda n: (n - 1, n - 3, n - 2), lambda n: {n - 1: 1, n - 3: 1, n: -1})
_exc("VI", "B", P3, lambda n: (n, n - 2, n - 1), lambda n: {n: 2, n - 2: 1, n - 1: -1})
_exc("VI", "C", P3, lambda n: (n, n - 2, n - 1), lambda n: {n: 1, n - 2: 1, n - 1: -1})
_exc("VI", "F", P3, lambda n: (1, 3, 2), lambda n: {1: 1, 3: 1, 2: -1, 4: -1})
_exc("VI", "F", P3, lambda n: (2, 4, 3), lambda n: {2: 1, 4: 1, 3: -1})


class _UserView:
    """The root system seen through the caller's labels (1-based)."""

    def __init__(self, R: RootSystem):
        self.R = R
        self.n = R.rank
        self.family = R.label[0]

    def internal(self, i: int) -> int:
        return self.R.user_index(i - 1)

    def adjacent(self, i: int, j: int) -> bool:
        return self.R.adjacent(self.internal(i), self.internal(j))

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(1, self.n + 1) if self.adjacent(i, j)]

    def element(self, word) -> WeylElement | None:
        if any(not 1 <= i <= self.n for i in word):
            return None
        w = self.R.element(tuple(self.internal(i) for i in word))
        return w if w.length == len(word) else None

    def weight(self, coeffs: dict[int, int]) -> Weight:
        c = [0] * self.n
        for i, v in coeffs.items():
            if 1 <= i <= self.n:  # ω_0 and ω_{n+1} read as zero
                c[i - 1] += v
        return self.R.from_user(Weight(tuple(c)))


def _reduced_words(U: _UserView, w: WeylElement) -> list[tuple[int, int, int]]:
    R = U.R
    out = []
    for word in product(range(1, U.n + 1), repeat=3):
        internal = tuple(U.internal(i) for i in word)
        if R.act(internal, R.rho) == w.rho_image:
            out.append(word)
    return out


def classify_word(U: _UserView, w: WeylElement) -> tuple[str, tuple[int, int, int]]:
    """Adjacency case of a length-3 element and a word in the normal form of that case."""
    words = _reduced_words(U, w)
    for i, j, k in words:
        if i == k:
            return "I", (i, j, k)
    i, j, k = words[0]
    edges = [(a, b) for a, b in ((i, j), (j, k), (i, k)) if U.adjacent(a, b)]
    if not edges:
        return "II", (i, j, k)
    if len(edges) == 1:
        for a, b, c in words:
            if U.adjacent(a, b):
                return "III", (a, b, c)
        raise AssertionError("no word with the adjacent pair in front")
    middle = next(x for x in (i, j, k) if all(U.adjacent(x, y) for y in (i, j, k) if y != x))
    pos = (i, j, k).index(middle)
    return ("V", "IV", "VI")[pos], (i, j, k)


def _generic(U: _UserView, case: str, word, p: int) -> dict[int, int]:
    i, j, k = word
    if case == "I":
        return {i: 1, j: 1}
    if case == "II":
        return {i: 1, j: 1, k: 1}
    if case == "III":
        out = {i: 1, k: 1}
        if p == 3:
            mids = [m for m in U.neighbors(i) if U.adjacent(m, k)]
            if mids:
                out[mids[0]] = out.get(mids[0], 0) - 1
        return out
    if case in ("IV", "V"):
        if p >= 5:
            return {i: 1}
        skip = {j} if case == "IV" else {j, k}
        out = {i: 2}
        for m in U.neighbors(i):
            if m not in skip:
                out[m] = out.get(m, 0) - 1
        return out
    return {i: 1, j: 1}  # VI


def table_gamma_w(R: RootSystem, w: WeylElement, p: int) -> tuple[str, Weight, bool]:
    """(case, tabulated γ_w, whether a type-specific exception applied)."""
    U = _UserView(R)
    case, word = classify_word(U, w)
    for c, fam, ptest, wfun, vfun, param in _EXCEPTIONS:
        if c != case or fam != U.family or not ptest(p):
            continue
        for args in ((U.n,),) if param is None else (((U.n, k) for k in param(U.n))):
            try:
                ew = wfun(*args)
            except (IndexError, ValueError):
                continue
            e = U.element(ew)
            if e is not None and e == w:
                return case, U.weight(vfun(*args)), True
    return case, U.weight(_generic(U, case, word, p)), False


@dataclass(frozen=True)
class GammaRow:
    w: WeylElement
    case: str
    exception: bool
    computed: Weight
    tabulated: Weight

    @property
    def match(self) -> bool:
        return self.computed == self.tabulated


def gamma_w_table_check(R: RootSystem, p: int) -> list[GammaRow]:
    """Compare γ_w with the case table for every length-3 element."""
    rows = []
    for w in elements_of_length(R, 3):
        case, tab, exc = table_gamma_w(R, w, p)
        rows.append(GammaRow(w, case, exc, gamma_w(w, p).gamma, tab))
    return rows
