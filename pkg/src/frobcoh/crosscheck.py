"""Compare the closed-form classifiers with the minimal-resolution oracle."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .chevalley import structure_constants
from .classify import CohClass, classify_H3_Br, h0_Br, h1_Br, low_degree_B1
from .cohomology import USTAR, TChar, ce_cohomology
from .oracle import br_cohomology_oracle, h1_U1_ustar
from .rootsys import RootSystem, Weight


@dataclass(frozen=True)
class CrossRow:
    lam: Weight
    degree: int
    oracle: TChar
    closed: TChar | None  # None: no closed form in this degree

    @property
    def status(self) -> str:
        if self.closed is None:
            return "skipped"
        return "match" if self.closed == self.oracle else "mismatch"


def closed_form(R: RootSystem, lam: Weight, p: int, r: int, n: int) -> CohClass | None:
    """Closed-form H^n(B_r, λ) for n ≤ 3, or None where none is available."""
    if r == 1:
        return low_degree_B1(R, lam, n, p)
    if n == 0:
        return h0_Br(R, lam, p, r)
    if n == 1:
        return h1_Br(R, lam, p, r)
    if n == 3:
        return classify_H3_Br(R, lam, p, r)
    return None


def oracle_crosscheck(R: RootSystem, p: int, r: int, degrees=range(4)) -> list[CrossRow]:
    """Every λ ∈ X_r(T) and every degree: oracle weights vs classifier weights (untwisted)."""
    rows = []
    for n in degrees:
        for lam in (Weight(c) for c in product(range(p ** r), repeat=R.rank)):
            got = br_cohomology_oracle(R, p, r, n, lam).nu
            cls = closed_form(R, lam, p, r, n)
            rows.append(CrossRow(lam, n, got, None if cls is None else cls.weights(R)))
    return rows


def ustar_h1_check(R: RootSystem, p: int) -> tuple[TChar, TChar]:
    """(H^1(U_1, u*) from the oracle, H^1(u, u*) from the cochain complex)."""
    return h1_U1_ustar(R, p), ce_cohomology(structure_constants(R), p, 1, USTAR)
