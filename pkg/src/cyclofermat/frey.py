"""Frey parameters, curve invariants, reduction types and the level.

For indices j != k the three quantities beta_j, beta_k and a0^2 satisfy

    (t_k - 2) beta_j - (t_j - 2) beta_k + 4 (t_j - t_k) a0^2 = 0,

and the Frey curve is Y^2 = X (X - A)(X + B) with A = alpha beta_j,
B = beta beta_k, C = gamma a0^2 and A + B + C = 0. Then
c4 = 16 (A^2 - B C), Delta = 16 (A B C)^2 and j = c4^3 / Delta.

In the r-does-not-divide-a case the multiplier beta must be -(t_j-2)/(t_k-2)
for A + B + C to vanish; the value with the opposite sign is kept as
``beta_as_printed`` for reference. Both give the same Delta.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from sympy import factorint, isprime, pollard_pm1, pollard_rho

from .descent import DescentWitness, make_witness
from .prime_ideals import IdealHNF, PrimeIdealFactor, split_prime, valuation
from .real_cyclotomic import FieldElement, RealCyclotomicField

__all__ = [
    "R_NDIV_A",
    "R_DIV_A",
    "FreyParameters",
    "FreyCurve",
    "Reduction",
    "LevelEntry",
    "LevelData",
    "frey_parameters",
    "frey_curve",
    "classify_reduction",
    "conductor_and_level",
    "synthetic_witness",
    "j_valuation_check",
]

R_NDIV_A = "r_ndiv_a"
R_DIV_A = "r_div_a"
CASES = (R_NDIV_A, R_DIV_A)


@dataclass(frozen=True)
class FreyParameters:
    case: str
    j: int
    k: int
    alpha: FieldElement
    beta: FieldElement
    gamma: FieldElement
    A: FieldElement
    B: FieldElement
    C: FieldElement
    beta_as_printed: FieldElement
    witness: DescentWitness = field(repr=False)
    p: Optional[int] = None
    n: Optional[int] = None
    k_r: Optional[int] = None

    @property
    def field(self) -> RealCyclotomicField:
        return self.A.field

    @property
    def delta(self) -> Optional[int]:
        """(k_r p - 1)(r - 1) - 1, the r-adic exponent of gamma a0^2 (case r | a)."""
        if self.case != R_DIV_A or self.p is None or self.k_r is None:
            return None
        return (self.k_r * self.p - 1) * (self.field.r - 1) - 1

    def to_dict(self) -> dict:
        out = {
            "case": self.case,
            "j": self.j,
            "k": self.k,
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "beta_as_printed": str(self.beta_as_printed),
            "gamma": str(self.gamma),
            "A": str(self.A),
            "B": str(self.B),
            "C": str(self.C),
        }
        for name in ("p", "n", "k_r", "delta"):
            val = getattr(self, name)
            if val is not None:
                out[name] = val
        return out


def frey_parameters(
    fld: RealCyclotomicField,
    witness: DescentWitness,
    j: int,
    k: int,
    case: Optional[str] = None,
    *,
    p: Optional[int] = None,
    n: Optional[int] = None,
    k_r: Optional[int] = None,
) -> FreyParameters:
    if j == k:
        raise ValueError("Frey indices must be distinct")
    fld._check_index(j)
    fld._check_index(k)
    natural = R_DIV_A if witness.r_divides_a else R_NDIV_A
    if case is None:
        case = natural
    if case not in CASES:
        raise ValueError(f"unknown case {case!r}; expected one of {CASES}")
    if case != natural:
        raise ValueError(f"case {case} does not match the witness (r-adic pattern says {natural})")

    tj, tk = fld.theta_j(j), fld.theta_j(k)
    bj, bk = witness.beta(j), witness.beta(k)
    a0sq = witness.a0 * witness.a0
    relation = (tk - 2) * bj - (tj - 2) * bk + (tj - tk) * (4 * a0sq)
    if not relation.is_zero():
        raise ArithmeticError("linear relation between beta_j, beta_k, a0^2 failed")

    if case == R_NDIV_A:
        alpha = fld.one
        beta = -(tj - 2) / (tk - 2)
        printed = (tj - 2) / (tk - 2)
        gamma = 4 * (tj - tk) / (tk - 2)
    else:
        alpha = (tj - 2).inverse()
        beta = -(tk - 2).inverse()
        printed = beta
        gamma = 4 * (tj - tk) / ((tj - 2) * (tk - 2))
    A, B, C = alpha * bj, beta * bk, gamma * a0sq
    if not (A + B + C).is_zero():
        raise ArithmeticError("A + B + C != 0")
    return FreyParameters(case, j, k, alpha, beta, gamma, A, B, C, printed, witness, p, n, k_r)


@dataclass(frozen=True)
class FreyCurve:
    """Y^2 = X (X - A)(X + B) with exact c4, discriminant and j-invariant."""

    params: FreyParameters
    c4: FieldElement
    disc: FieldElement
    j_inv: FieldElement

    @property
    def field(self) -> RealCyclotomicField:
        return self.params.field

    def a_invariants(self) -> tuple:
        A, B = self.params.A, self.params.B
        zero = self.field.zero
        return (zero, B - A, zero, -(A * B), zero)

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "a_invariants": [str(a) for a in self.a_invariants()],
            "c4": str(self.c4),
            "disc": str(self.disc),
            "j": str(self.j_inv),
        }


def frey_curve(params: FreyParameters) -> FreyCurve:
    A, B, C = params.A, params.B, params.C
    c4 = 16 * (A * A - B * C)
    abc = A * B * C
    disc = 16 * (abc * abc)
    if disc.is_zero():
        raise ValueError("degenerate witness: discriminant vanishes")
    j_inv = c4 * c4 * c4 / disc
    return FreyCurve(params, c4, disc, j_inv)


class Reduction(str, enum.Enum):
    GOOD = "good"
    MULTIPLICATIVE = "multiplicative"
    POTENTIALLY_MULTIPLICATIVE = "potentially_multiplicative"
    UNKNOWN = "unknown"


def classify_reduction(curve: FreyCurve, q: PrimeIdealFactor) -> Reduction:
    """Reduction type at q read off from v(Delta), v(c4) (odd q) or v(j) (q | 2).

    No minimal model is computed above 2, so only v(j) < 0 is certified there.
    """
    if q.p == 2:
        if valuation(curve.j_inv, q) < 0:
            return Reduction.POTENTIALLY_MULTIPLICATIVE
        return Reduction.UNKNOWN
    vd = valuation(curve.disc, q)
    if vd == 0:
        return Reduction.GOOD
    if valuation(curve.c4, q) == 0:
        return Reduction.MULTIPLICATIVE
    return Reduction.UNKNOWN


@dataclass(frozen=True)
class LevelEntry:
    prime: PrimeIdealFactor
    reduction: Reduction
    v_disc_min: Optional[int]
    in_m_p: bool
    source: str

    def to_dict(self) -> dict:
        return {
            "prime": self.prime.to_dict(),
            "reduction": self.reduction.value,
            "v_disc_min": self.v_disc_min,
            "in_m_p": self.in_m_p,
            "source": self.source,
        }


@dataclass
class LevelData:
    """Conductor n (squarefree), m_p and the level n_p = n / m_p."""

    field: RealCyclotomicField
    p: int
    entries: list[LevelEntry]
    unfactored: list[UnfactoredBlock] = field(default_factory=list)

    @property
    def conductor(self) -> list[PrimeIdealFactor]:
        return [e.prime for e in self.entries]

    @property
    def m_p(self) -> list[PrimeIdealFactor]:
        return [e.prime for e in self.entries if e.in_m_p]

    @property
    def level(self) -> list[PrimeIdealFactor]:
        return [e.prime for e in self.entries if not e.in_m_p]

    @staticmethod
    def _product(fld, primes) -> IdealHNF:
        out = IdealHNF.unit_ideal(fld)
        for q in primes:
            out = out * q.ideal
        return out

    def conductor_ideal(self) -> IdealHNF:
        return self._product(self.field, self.conductor)

    def level_ideal(self) -> IdealHNF:
        if not self.complete:
            raise ArithmeticError("level contains an unfactored block")
        return self._product(self.field, self.level)

    @property
    def complete(self) -> bool:
        return all(b.in_m_p for b in self.unfactored)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "conductor": [q.to_dict() for q in self.conductor],
            "m_p": [q.to_dict() for q in self.m_p],
            "level": [q.to_dict() for q in self.level],
            "entries": [e.to_dict() for e in self.entries],
            "unfactored_residue": [b.to_dict() for b in self.unfactored],
        }


def _split(n: int, steps: int) -> Optional[int]:
    for seed in (1, 2, 3):
        d = pollard_rho(n, seed=seed, max_steps=steps, retries=1)
        if d and 1 < d < n:
            return d
    d = pollard_pm1(n, B=steps)
    if d and 1 < d < n:
        return d
    return None


def _odd_prime_support(n: int, trial_limit: int, steps: int = 20000) -> tuple[list[int], list[int]]:
    """Odd primes of n found by trial division and bounded rho / p-1; unsplit cofactors."""
    n = abs(n)
    while n % 2 == 0 and n:
        n //= 2
    primes, residue = set(), []
    d = 3
    while n > 1 and d <= trial_limit and d * d <= n:
        if n % d == 0:
            primes.add(d)
            while n % d == 0:
                n //= d
        d += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if isprime(m):
            primes.add(m)
            continue
        f = _split(m, steps)
        if f is None:
            residue.append(m)
        else:
            stack.extend((f, m // f))
    return sorted(primes), sorted(set(residue))


@dataclass(frozen=True)
class UnfactoredBlock:
    """Composite cofactor that could not be split; handled as a single block of primes."""

    residue: int
    semistable: bool
    in_m_p: bool

    def to_dict(self) -> dict:
        return {"residue": self.residue, "semistable": self.semistable, "in_m_p": self.in_m_p}


def conductor_and_level(
    fld: RealCyclotomicField,
    curve: FreyCurve,
    p: int,
    *,
    pth_power_content: bool = False,
    trial_limit: int = 2 * 10**5,
) -> LevelData:
    """Conductor n and level n_p, with m_p = prod of q || n such that p | v_q(Delta_q).

    The conductor is 2 O_K times every odd prime dividing a0 beta_j beta_k,
    and r's prime in the r | a case. The minimal discriminant exponent at an
    odd q is v_q(Delta) when v_q(c4) = 0; above 2 it is -v_q(j), which is the
    value for multiplicative reduction. Anything undecidable stays in the level.

    With ``pth_power_content`` the odd content away from r is scaled by p,
    i.e. treated as the p-th power of the witness ideals that a genuine
    solution would produce. Primes above 2 and r are always taken from the
    witness itself.

    A cofactor that bounded factoring cannot split is kept as one block. It is
    semistable when (c4) + (R) = (1); under p-th power content it then lies in
    m_p, otherwise the level is marked incomplete.
    """
    params = curve.params
    w = params.witness
    if not isprime(p):
        raise ValueError(f"p = {p} is not prime")
    if w.a0 == 0:
        raise ValueError("a0 = 0 gives a degenerate curve")

    primes, residue = [], []
    for n in (w.a0, w.A // w.a0):
        ps, res = _odd_prime_support(n, trial_limit)
        primes.extend(ps)
        residue.extend(res)
    primes = sorted(set(primes))

    bad_element = w.a0 * w.beta(params.j) * w.beta(params.k)
    (rprime,) = split_prime(fld, fld.r)
    entries: list[LevelEntry] = []

    for q in split_prime(fld, 2):
        red = classify_reduction(curve, q)
        vj = valuation(curve.j_inv, q)
        if vj < 0:
            vmin, src = -vj, "-v(j)"
        else:
            vmin, src = None, "undetermined"
        entries.append(LevelEntry(q, red, vmin, vmin is not None and vmin % p == 0, src))

    for ell in primes:
        for q in split_prime(fld, ell):
            is_r = q == rprime
            if is_r:
                if params.case != R_DIV_A:
                    continue
            elif valuation(bad_element, q) == 0:
                continue
            red = classify_reduction(curve, q)
            vmin, src = None, "undetermined"
            if red is Reduction.MULTIPLICATIVE:
                vmin, src = valuation(curve.disc, q), "v(disc), c4 unit"
                if pth_power_content and not is_r:
                    vmin, src = p * vmin, "p * v(disc), p-th power content"
            entries.append(LevelEntry(q, red, vmin, vmin is not None and vmin % p == 0, src))

    if params.case == R_DIV_A and all(e.prime != rprime for e in entries):
        red = classify_reduction(curve, rprime)
        vmin = valuation(curve.disc, rprime) if red is Reduction.MULTIPLICATIVE else None
        entries.append(
            LevelEntry(rprime, red, vmin, vmin is not None and vmin % p == 0, "v(disc), c4 unit")
        )
    blocks = []
    c4_num = curve.c4 * curve.c4.den
    for R in residue:
        semistable = IdealHNF.from_generators(fld, [c4_num, fld.element([R])], R).is_unit_ideal()
        blocks.append(UnfactoredBlock(R, semistable, semistable and pth_power_content))
    return LevelData(fld, p, entries, blocks)


def synthetic_witness(
    fld: RealCyclotomicField,
    p: int,
    n: int,
    *,
    k_r: int = 0,
    t: int = 1,
    b0: Optional[int] = None,
) -> DescentWitness:
    """Witness with a0 = 2^(p n) * r^(k_r p - 1) * t^p (the r-factor only if k_r >= 1).

    This is the shape the descent forces on a0; b0 defaults to the smallest
    admissible partner (1 when a0 is even, 2 otherwise).
    """
    if n < 0 or k_r < 0:
        raise ValueError("n and k_r must be non-negative")
    a0 = 2 ** (p * n) * t**p
    if k_r >= 1:
        a0 *= fld.r ** (k_r * p - 1)
    if b0 is None:
        b0 = 1 if a0 % 2 == 0 else 2
        if a0 % 2 == 1:
            while (b0 % fld.r == 0) or any(a0 % f == 0 for f in factorint(b0)):
                b0 += 2
    return make_witness(fld, a0, b0)


def j_valuation_check(
    fld: RealCyclotomicField,
    P: PrimeIdealFactor,
    p: int,
    n: int,
    *,
    case: str = R_NDIV_A,
    k_r: int = 1,
    j: int = 1,
    k: int = 2,
    t: int = 1,
) -> dict:
    """Compare v_P(j_E) with 4(1 - p n) v_P(2) on a synthetic witness."""
    if P.p != 2:
        raise ValueError("P must lie above 2")
    w = synthetic_witness(fld, p, n, k_r=k_r if case == R_DIV_A else 0, t=t)
    params = frey_parameters(fld, w, j, k, case, p=p, n=n, k_r=k_r if case == R_DIV_A else None)
    curve = frey_curve(params)
    v2 = valuation(2, P)
    vj = valuation(curve.j_inv, P)
    expected = 4 * (1 - p * n) * v2
    return {
        "r": fld.r,
        "P": P.label(),
        "case": case,
        "p": p,
        "n": n,
        "a0": w.a0,
        "b0": w.b0,
        "v_P(2)": v2,
        "v_P(j)": vj,
        "expected": expected,
        "matches": vj == expected,
        "p_divides_v_P(j)": vj % p == 0,
        "hypothesis_holds": n >= 1 and p > max(2, v2),
        "potentially_multiplicative": vj < 0,
    }
