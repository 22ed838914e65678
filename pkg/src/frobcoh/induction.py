"""Good-filtration factors of H^3(G_r, H^0(λ))^(-r) obtained by inducing the B_r answer."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .classify import LINE, USTAR, CohClass, classify_H3_Br
from .errors import FiltrationViolation, NotDominant
from .gates import admissible_gate, good_prime_gate
from .rootsys import RootSystem, Weight


@lru_cache(maxsize=None)
def _coroot_data(R: RootSystem) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Positive coroots as linear forms on ω-coordinates, and ∏⟨ρ, β^∨⟩."""
    forms = []
    for c in R.positive_roots:
        forms.append(tuple(R.coroot_pairing(R.fundamental(i), c) for i in range(R.rank)))
    den = 1
    for f in forms:
        den *= sum(f)
    return tuple(forms), den


def weyl_dim(R: RootSystem, nu: Weight) -> int:
    """Weyl's dimension formula for a dominant weight."""
    if not nu.is_dominant():
        raise NotDominant(f"{nu} is not dominant")
    forms, den = _coroot_data(R)
    x = [c + 1 for c in nu]
    num = 1
    for f in forms:
        num *= sum(a * b for a, b in zip(f, x))
    q, rem = divmod(num, den)
    assert rem == 0
    return q


def dot_dominant(R: RootSystem, mu: Weight) -> tuple[int, Weight | None]:
    """(sign, w·μ dominant) with sign (−1)^ℓ(w); (0, None) when μ+ρ is singular."""
    x = [c + 1 for c in mu]
    A = R.cartan
    sign = 1
    while True:
        i = -1
        for j, c in enumerate(x):
            if c == 0:
                return 0, None
            if c < 0 and i < 0:
                i = j
        if i < 0:
            return sign, Weight(tuple(c - 1 for c in x))
        a, row = x[i], A[i]
        x = [xj - a * rj for xj, rj in zip(x, row)]
        sign = -sign


@dataclass(frozen=True)
class Step:
    """How one B-weight entered the induced character."""

    source: Weight
    sign: int
    target: Weight | None


@dataclass(frozen=True)
class GoodFiltration:
    factors: tuple[tuple[Weight, int], ...]  # dominant μ with multiplicity of H^0(μ)
    dim: int
    cls: CohClass
    trace: tuple[Step, ...]

    @property
    def dropped(self) -> tuple[Weight, ...]:
        return tuple(s.source for s in self.trace if s.target is None)


def _check_factor_weight(R: RootSystem, nu: Weight) -> None:
    # higher induction vanishes for these factors only when every simple pairing is ≥ −1
    if any(c < -1 for c in nu):
        raise FiltrationViolation(f"factor weight {nu} pairs below -1 with a simple coroot")


def induce(R: RootSystem, cls: CohClass) -> GoodFiltration:
    """ind_B^G of the untwisted B_r answer, as a multiset of H^0 factors."""
    counts: Counter[Weight] = Counter()
    trace = []
    if cls.tag == LINE:
        _check_factor_weight(R, cls.nu)
        if cls.nu.is_dominant():
            counts[cls.nu] += cls.mult
            trace.append(Step(cls.nu, 1, cls.nu))
        else:
            trace.append(Step(cls.nu, 0, None))
    elif cls.tag == USTAR:
        _check_factor_weight(R, cls.nu)
        # u* ⊗ ν is filtered by height; its induced character is the Euler characteristic
        order = sorted(range(R.num_positive), key=lambda k: (sum(R.positive_roots[k]), R.positive_roots[k]))
        for k in order:
            mu = R.positive_root_weights[k] + cls.nu
            sign, dom = dot_dominant(R, mu)
            if sign:
                counts[dom] += sign
            trace.append(Step(mu, sign, dom))
        negative = {w: m for w, m in counts.items() if m < 0}
        if negative:
            raise FiltrationViolation(f"negative net multiplicity {negative} inducing u* ⊗ {cls.nu}")
    factors = tuple(sorted((w, m) for w, m in counts.items() if m))
    dim = sum(m * weyl_dim(R, w) for w, m in factors)
    return GoodFiltration(factors, dim, cls, tuple(trace))


def good_filtration_factors(R: RootSystem, lam: Weight, p: int, r: int, force: bool = False) -> GoodFiltration:
    """Factors H^0(μ) of H^3(G_r, H^0(λ))^(-r) for dominant λ."""
    if not lam.is_dominant():
        raise NotDominant(f"{lam} is not dominant")
    good_prime_gate(R, p).enforce(force)
    admissible_gate(R, p).enforce(force)
    return induce(R, classify_H3_Br(R, lam, p, r, force))
