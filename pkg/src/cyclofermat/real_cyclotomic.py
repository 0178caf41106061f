"""The maximal real subfield K = Q(zeta_r + zeta_r^-1) for a prime r >= 5.

Elements live in the power basis 1, t, ..., t^(d-1) of t = zeta_r + zeta_r^-1,
with d = (r-1)/2, stored as an integer coordinate vector over a positive common
denominator. Z[t] is the full ring of integers for prime r, so "denominator 1"
is the same as "integral".

The minimal polynomial comes from the Chebyshev-style recurrence
V_0 = 2, V_1 = x, V_{k+1} = x V_k - V_{k-1} (so V_k(t) = zeta^k + zeta^-k),
and P_r = 1 + V_1 + ... + V_d.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Sequence

from .numeric_core import IntPoly, bareiss_det, require_prime, resultant, solve_rational

__all__ = [
    "RealCyclotomicField",
    "FieldElement",
    "build_field",
    "chebyshev_polys",
    "LemmaReport",
    "verify_lemma_cycl",
]


def chebyshev_polys(d: int) -> list[IntPoly]:
    """V_0, ..., V_d with V_k(z + 1/z) = z^k + z^-k."""
    x = IntPoly.x()
    v = [IntPoly((2,)), x]
    while len(v) <= d:
        v.append(x * v[-1] - v[-2])
    return v[: d + 1]


class RealCyclotomicField:
    """K = Q(t), t = zeta_r + zeta_r^-1. Build through :func:`build_field`."""

    def __init__(self, r: int):
        r = require_prime(r, "r")
        if r < 5:
            raise ValueError(f"r must be a prime >= 5, got {r}")
        self.r = r
        self.degree = (r - 1) // 2
        d = self.degree
        v = chebyshev_polys(d)
        self.min_poly = IntPoly((1,)) + sum(v[1:], IntPoly())
        if self.min_poly.degree != d or not self.min_poly.is_monic():
            raise ArithmeticError("minimal polynomial has wrong shape")
        # no rational root: a monic integer root would divide P(0) = +-1
        if self.min_poly(1) == 0 or self.min_poly(-1) == 0:
            raise ArithmeticError("minimal polynomial has a rational root")
        self._chebyshev = v

    @property
    def d(self) -> int:
        return self.degree

    def __repr__(self) -> str:
        return f"RealCyclotomicField(r={self.r})"

    def __reduce__(self):
        return (build_field, (self.r,))

    @cached_property
    def conjugation_polys(self) -> list[IntPoly]:
        """V_1 .. V_d reduced mod P_r, so V_k(t) = t_k."""
        return [vk % self.min_poly for vk in self._chebyshev[1:]]

    @cached_property
    def _reduction_table(self) -> list[tuple[int, ...]]:
        # coordinates of t^k for k = d .. 2d-2
        d = self.degree
        x = IntPoly.x()
        table = []
        cur = IntPoly((0,) * d + (1,)) % self.min_poly
        for _ in range(d, 2 * d - 1):
            table.append(tuple(cur[i] for i in range(d)))
            cur = (cur * x) % self.min_poly
        return table

    def _reduce(self, coeffs: Sequence[int]) -> list[int]:
        d = self.degree
        out = list(coeffs[:d]) + [0] * max(0, d - len(coeffs))
        table = self._reduction_table
        for k in range(d, len(coeffs)):
            c = coeffs[k]
            if c:
                row = table[k - d]
                for i in range(d):
                    out[i] += c * row[i]
        return out

    # -- element constructors -------------------------------------------------

    def element(self, coords: Iterable, denom: int = 1) -> FieldElement:
        """Element from power-basis coordinates (ints or Fractions).

        Vectors longer than d are read as polynomials in t and reduced.
        """
        coords = list(coords)
        den = 1
        for c in coords:
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) if isinstance(c, Fraction) else int(c) for c in coords]
        if len(ints) > self.degree:
            ints = self._reduce(ints)
        ints += [0] * (self.degree - len(ints))
        return FieldElement._make(self, ints, den * denom)

    def from_poly(self, poly: IntPoly) -> FieldElement:
        return self.element(poly.coeffs)

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, IntPoly):
            return self.from_poly(value)
        if isinstance(value, (int, Fraction)):
            return self.element([value])
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    @cached_property
    def zero(self) -> FieldElement:
        return self.element([0])

    @cached_property
    def one(self) -> FieldElement:
        return self.element([1])

    @cached_property
    def theta(self) -> FieldElement:
        return self.element([0, 1])

    def theta_j(self, j: int) -> FieldElement:
        """t_j = zeta^j + zeta^-j, for 1 <= j <= d."""
        self._check_index(j)
        return self._theta_conjugates[j - 1]

    @cached_property
    def _theta_conjugates(self) -> list[FieldElement]:
        return [self.from_poly(v) for v in self.conjugation_polys]

    def _check_index(self, j: int) -> None:
        if not 1 <= j <= self.degree:
            raise ValueError(f"conjugate index j = {j} outside 1..{self.degree}")

    @lru_cache(maxsize=None)
    def _conj_powers(self, j: int) -> tuple[FieldElement, ...]:
        tj = self.theta_j(j)
        powers = [self.one]
        for _ in range(1, self.degree):
            powers.append(powers[-1] * tj)
        return tuple(powers)

    # -- global invariants ----------------------------------------------------

    def discriminant(self) -> int:
        """disc(P_r) = (-1)^(d(d-1)/2) Res(P, P')."""
        d = self.degree
        res = resultant(self.min_poly, self.min_poly.derivative())
        return (-1) ** (d * (d - 1) // 2) * res

    def check_discriminant(self) -> bool:
        """disc(P_r) must be +- a power of r: only r ramifies, index is 1."""
        disc = abs(self.discriminant())
        while disc % self.r == 0:
            disc //= self.r
        return disc == 1


@lru_cache(maxsize=None)
def build_field(r: int) -> RealCyclotomicField:
    """Cached constructor; one field object per prime r."""
    return RealCyclotomicField(r)


@dataclass(frozen=True, eq=False)
class FieldElement:
    """numerator / denominator with numerator in the power basis of K."""

    field: RealCyclotomicField
    num: tuple[int, ...]
    den: int = 1

    @classmethod
    def _make(cls, fld: RealCyclotomicField, num: list[int], den: int) -> FieldElement:
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = [-c for c in num]
            den = -den
        g = den
        for c in num:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            num = [c // g for c in num]
            den //= g
        return cls(fld, tuple(num), den)

    # -- basic protocol -------------------------------------------------------

    def coords(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.num]

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_integral(self) -> bool:
        return self.den == 1

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational() == other
        return (
            isinstance(other, FieldElement)
            and other.field is self.field
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.field.r, self.num, self.den))

    def __repr__(self) -> str:
        return f"FieldElement(r={self.field.r}, {self})"

    def __str__(self) -> str:
        from .numeric_core import _fmt

        body = _fmt(self.num, "t")
        if self.den == 1:
            return body
        if self.is_rational() and self.num[0] > 0:
            return f"{body}/{self.den}"
        return f"({body})/{self.den}"

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element([other])
        return NotImplemented

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return FieldElement._make(
                self.field, [a + b for a, b in zip(self.num, other.num)], self.den
            )
        den = self.den * other.den
        return FieldElement._make(
            self.field,
            [a * other.den + b * self.den for a, b in zip(self.num, other.num)],
            den,
        )

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElement._make(self.field, [c * other for c in self.num], self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.num, other.num
        d = len(a)
        conv = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        return FieldElement._make(self.field, self.field._reduce(conv), self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- field-theoretic maps -------------------------------------------------

    def multiplication_matrix(self) -> list[list[int]]:
        """Integer matrix of y -> num * y; column i is num * t^i."""
        d = self.field.degree
        cols = []
        cur = FieldElement(self.field, self.num, 1)
        t = self.field.theta
        for i in range(d):
            cols.append(cur.num)
            if i + 1 < d:
                cur = cur * t
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def norm(self) -> Fraction:
        """N_{K/Q}; signed, equal to det(multiplication) / den^d."""
        d = self.field.degree
        return Fraction(bareiss_det(self.multiplication_matrix()), self.den**d)

    def trace(self) -> Fraction:
        total = sum(self.conjugate(j) for j in range(1, self.field.degree + 1))
        return total.rational() if isinstance(total, FieldElement) else Fraction(total)

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return self.field.element([Fraction(self.den, self.num[0])])
        d = self.field.degree
        sol = solve_rational(self.multiplication_matrix(), [1] + [0] * (d - 1))
        return self.field.element([c * self.den for c in sol])

    def is_unit(self) -> bool:
        return self.den == 1 and not self.is_zero() and abs(self.norm()) == 1

    def conjugate(self, j: int) -> FieldElement:
        """Image under the automorphism t -> t_j."""
        self.field._check_index(j)
        if j == 1:
            return self
        powers = self.field._conj_powers(j)
        acc = [0] * self.field.degree
        for c, pw in zip(self.num, powers):
            if c:
                for i, v in enumerate(pw.num):
                    acc[i] += c * v
        return FieldElement._make(self.field, acc, self.den)

    def conjugates(self) -> list[FieldElement]:
        return [self.conjugate(j) for j in range(1, self.field.degree + 1)]


def conjugate(x: FieldElement, j: int) -> FieldElement:
    return x.conjugate(j)


def norm(x: FieldElement) -> Fraction:
    return x.norm()


def trace(x: FieldElement) -> Fraction:
    return x.trace()


def invert(x: FieldElement) -> FieldElement:
    return x.inverse()


def is_unit(x: FieldElement) -> bool:
    return x.is_unit()


@dataclass
class LemmaReport:
    """Outcome of the unit/ideal checks on t_j, t_j + 2, t_j - 2, t_j - t_k."""

    r: int
    checks: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.checks)

    def failures(self) -> list[dict]:
        return [c for c in self.checks if not c["ok"]]

    def to_dict(self) -> dict:
        return {"r": self.r, "ok": self.ok, "checks": self.checks}


def verify_lemma_cycl(fld: RealCyclotomicField, ideals: bool = False) -> LemmaReport:
    """Norm checks for t_j, t_j+2 (units) and t_j-2, t_j-t_k (norm +-r).

    With ``ideals=True`` the principal ideals (t_j - 2) and (t_j - t_k) are
    also compared against the unique prime above r.
    """
    r, d = fld.r, fld.degree
    report = LemmaReport(r)
    thetas = [fld.theta_j(j) for j in range(1, d + 1)]
    rprime = None
    if ideals:
        from .prime_ideals import IdealHNF, split_prime

        (rprime,) = split_prime(fld, r)

    def add(kind, label, elem, want):
        n = elem.norm()
        entry = {"kind": kind, "element": label, "norm": str(n), "ok": abs(n) == want and elem.is_integral()}
        if rprime is not None and want == r:
            same = IdealHNF.principal(elem) == rprime.ideal
            entry["ideal_is_prime_above_r"] = same
            entry["ok"] = entry["ok"] and same
        report.checks.append(entry)

    for j, tj in enumerate(thetas, start=1):
        add("unit", f"t_{j}", tj, 1)
        add("unit", f"t_{j}+2", tj + 2, 1)
        add("norm_r", f"t_{j}-2", tj - 2, r)
    for j in range(1, d + 1):
        for k in range(j + 1, d + 1):
            add("norm_r", f"t_{j}-t_{k}", thetas[j - 1] - thetas[k - 1], r)
    return report
