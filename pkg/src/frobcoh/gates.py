"""Prime admissibility rules used to guard the closed-form results."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import PrimeGateError, PrimeGateWarning
from .rootsys import RootSystem


@dataclass(frozen=True)
class PrimeGate:
    system: RootSystem
    p: int
    admissible: bool
    rule: str

    @property
    def verdict(self) -> str:
        return "admissible" if self.admissible else "excluded"

    def enforce(self, force: bool = False) -> None:
        if self.admissible:
            return
        msg = f"p={self.p} excluded for {self.system.label}: {self.rule}"
        if not force:
            raise PrimeGateError(msg)
        warnings.warn(msg, PrimeGateWarning, stacklevel=3)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _floor(R: RootSystem) -> tuple[int, str]:
    f, n = R.family, R.rank
    if f == "B" and n >= 3:
        return 7, "p >= 7 for B_n (n >= 3)"
    if f in "FG":
        return 7, f"p >= 7 for {R.internal_label}"
    return 5, "p >= 5 for types A, C, D, E (B2 = C2)"


def admissible_gate(R: RootSystem, p: int) -> PrimeGate:
    """The standing prime condition for the B1/Br/B classifications."""
    if not _is_prime(p):
        return PrimeGate(R, p, False, "p must be prime")
    floor, rule = _floor(R)
    if p < floor:
        return PrimeGate(R, p, False, rule)
    if R.label == "A4" and p == 5:
        return PrimeGate(R, p, False, "p != 5 for A4")
    if R.label == "A6" and p == 7:
        return PrimeGate(R, p, False, "p != 7 for A6")
    return PrimeGate(R, p, True, rule)


def u1_gate(R: RootSystem, p: int) -> PrimeGate:
    """Range where H^3(U1, k) = H^3(u, k) + (u*)^(1) ⊗ H^1(u, k)."""
    if not _is_prime(p):
        return PrimeGate(R, p, False, "p must be prime")
    floor, rule = _floor(R)
    return PrimeGate(R, p, p >= floor, rule)


def kostant_gate(R: RootSystem, p: int) -> PrimeGate:
    """Range where H^3(u, k) is given by the length-3 dot orbit of 0."""
    f, n = R.family, R.rank
    if not _is_prime(p) or p == 2:
        return PrimeGate(R, p, False, "p odd prime")
    if (f == "B" and n >= 4) or f == "F":
        return PrimeGate(R, p, p >= 7, "p >= 7 for B_n (n >= 4), F4")
    if (f == "A" and n >= 4) or R.label == "B3" or (f == "C" and n >= 3) or f in "DEG":
        return PrimeGate(R, p, p >= 5, "p >= 5 for A_n (n >= 4), B3, C_n (n >= 3), D, E, G2")
    return PrimeGate(R, p, True, "p odd")


def good_prime_gate(R: RootSystem, p: int) -> PrimeGate:
    """p is good: it divides no coefficient of the highest root."""
    bad = {c for c in R.highest_root if c > 1 and c % p == 0}
    return PrimeGate(R, p, _is_prime(p) and not bad, "p good for the root system")
