"""Exact polynomial kernel: dense polynomials over Z and over F_p.

Coefficient lists are stored lowest degree first. Both polynomial types are
immutable and hashable, so they can be shared freely and used as dict keys.

Factorization over F_p is the classic three-stage pipeline (square-free,
distinct-degree, equal-degree). The equal-degree split is Cantor-Zassenhaus
driven by a fixed-seed RNG, and the output is sorted, so results are
reproducible run to run. Over F_2 the same pipeline runs on bit-packed
integers, which keeps the degree ~250 inertness scans fast.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence

from sympy import isprime

__all__ = [
    "IntPoly",
    "ModPoly",
    "factor_mod_p",
    "is_irreducible_mod_p",
    "require_prime",
]

_EDF_SEED = 0x5EED


def require_prime(p: int, what: str = "p") -> int:
    p = int(p)
    if p < 2 or not isprime(p):
        raise ValueError(f"{what} = {p} is not prime")
    return p


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _fmt(coeffs: Sequence[int], var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


class IntPoly:
    """Polynomial with integer coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _strip(int(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly((other,))
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("IntPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return _fmt(self.coeffs)

    @staticmethod
    def _coerce(other) -> IntPoly:
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return IntPoly(_poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> IntPoly:
        if e < 0:
            raise ValueError("negative exponent")
        result, base = IntPoly((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other) -> tuple[IntPoly, IntPoly]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if other.lead != 1:
            raise ValueError("integer polynomial division requires monic divisor")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return IntPoly(), IntPoly(rem)
        quot = [0] * (len(rem) - db)
        b = other.coeffs
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c:
                quot[i - db] = c
                for k in range(db + 1):
                    rem[i - db + k] -= c * b[k]
        return IntPoly(quot), IntPoly(rem[:db])

    def __floordiv__(self, other) -> IntPoly:
        return divmod(self, other)[0]

    def __mod__(self, other) -> IntPoly:
        return divmod(self, other)[1]

    def __call__(self, x):
        """Horner evaluation; exact for int, Fraction, or any ring element."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def content(self) -> int:
        from math import gcd

        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def derivative(self) -> IntPoly:
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def mod_p(self, p: int) -> ModPoly:
        return ModPoly(p, self.coeffs)


class ModPoly:
    """Polynomial over the prime field F_p, coefficients in [0, p)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[int] = ()):
        p = int(p)
        if p < 2:
            raise ValueError(f"modulus must be >= 2, got {p}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", _strip(int(c) % p for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("ModPoly is immutable")

    @classmethod
    def x(cls, p: int) -> ModPoly:
        return cls(p, (0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModPoly)
            and self.p == other.p
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash(("ModPoly", self.p, self.coeffs))

    def __repr__(self) -> str:
        return f"ModPoly({self.p}, {list(self.coeffs)})"

    def __str__(self) -> str:
        return f"{_fmt(self.coeffs)} (mod {self.p})"

    def sort_key(self) -> tuple:
        return (self.degree, self.coeffs[::-1])

    def _check(self, other) -> ModPoly:
        if isinstance(other, int):
            return ModPoly(self.p, (other,))
        if not isinstance(other, ModPoly):
            return NotImplemented
        if other.p != self.p:
            raise ValueError(f"mixed moduli {self.p} and {other.p}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return ModPoly(self.p, (self[i] + other[i] for i in range(n)))

    __radd__ = __add__

    def __neg__(self) -> ModPoly:
        return ModPoly(self.p, (-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return ModPoly(self.p, (c * other for c in self.coeffs))
        other = self._check(other)
        if other is NotImplemented:
            return other
        return ModPoly(self.p, _poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def scale(self, c: int) -> ModPoly:
        return ModPoly(self.p, (c * a for a in self.coeffs))

    def monic(self) -> ModPoly:
        if self.is_zero():
            return self
        return self.scale(pow(self.lead, -1, self.p))

    def __divmod__(self, other) -> tuple[ModPoly, ModPoly]:
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.p
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return ModPoly(p), self
        inv = pow(other.lead, -1, p)
        b = other.coeffs
        quot = [0] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i] % p
            if c:
                c = c * inv % p
                quot[i - db] = c
                for k in range(db + 1):
                    rem[i - db + k] -= c * b[k]
        return ModPoly(p, quot), ModPoly(p, rem[:db])

    def __floordiv__(self, other) -> ModPoly:
        return divmod(self, other)[0]

    def __mod__(self, other) -> ModPoly:
        return divmod(self, other)[1]

    def gcd(self, other: ModPoly) -> ModPoly:
        a, b = self, self._check(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def pow_mod(self, e: int, modulus: ModPoly) -> ModPoly:
        result = ModPoly(self.p, (1,)) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def derivative(self) -> ModPoly:
        return ModPoly(self.p, (i * c for i, c in enumerate(self.coeffs) if i))

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def lift(self) -> IntPoly:
        """Integer polynomial with the same coefficients in [0, p)."""
        return IntPoly(self.coeffs)


# -- F_p factorization (generic list representation) -------------------------


def _pth_root(f: ModPoly) -> ModPoly:
    # f' == 0 means f(x) = g(x^p); over F_p the p-th root is coefficient-wise.
    p = f.p
    return ModPoly(p, f.coeffs[::p])


def _squarefree_decomposition(f: ModPoly) -> list[tuple[ModPoly, int]]:
    """Yun-style decomposition of a monic f into (square-free, multiplicity)."""
    p = f.p
    out: list[tuple[ModPoly, int]] = []
    if f.degree < 1:
        return out
    fp = f.derivative()
    if fp.is_zero():
        return [(g, m * p) for g, m in _squarefree_decomposition(_pth_root(f))]
    c = f.gcd(fp)
    w = f // c
    i = 1
    while not w.is_one():
        y = w.gcd(c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w, c = y, c // y
    if c.degree > 0:
        for g, m in _squarefree_decomposition(_pth_root(c)):
            out.append((g, m * p))
    return out


def _distinct_degree(f: ModPoly) -> list[tuple[ModPoly, int]]:
    p = f.p
    out = []
    x = ModPoly.x(p)
    h = x % f
    i = 0
    while f.degree >= 2 * (i + 1):
        i += 1
        h = h.pow_mod(p, f)
        g = f.gcd(h - x)
        if g.degree > 0:
            out.append((g, i))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f.monic(), f.degree))
    return out


def _equal_degree(f: ModPoly, k: int, rng: random.Random) -> list[ModPoly]:
    if f.degree == k:
        return [f.monic()]
    p = f.p
    n = f.degree
    while True:
        a = ModPoly(p, (rng.randrange(p) for _ in range(n)))
        if a.degree < 1:
            continue
        if p == 2:
            t, s = a % f, a % f
            for _ in range(k - 1):
                s = (s * s) % f
                t = t + s
            g = f.gcd(t)
        else:
            g = f.gcd(a.pow_mod((p**k - 1) // 2, f) - 1)
        if 0 < g.degree < n:
            return _equal_degree(g, k, rng) + _equal_degree(f // g, k, rng)


# -- F_2 fast path on bit-packed ints ----------------------------------------


def _b_deg(a: int) -> int:
    return a.bit_length() - 1


def _b_mod(a: int, m: int) -> int:
    dm = _b_deg(m)
    da = _b_deg(a)
    while da >= dm:
        a ^= m << (da - dm)
        da = _b_deg(a)
    return a


def _b_divmod(a: int, m: int) -> tuple[int, int]:
    dm = _b_deg(m)
    q = 0
    da = _b_deg(a)
    while da >= dm:
        q |= 1 << (da - dm)
        a ^= m << (da - dm)
        da = _b_deg(a)
    return q, a


def _b_mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _b_square(a: int) -> int:
    # Frobenius over F_2 spreads bits: (sum a_i x^i)^2 = sum a_i x^(2i).
    out = 0
    i = 0
    while a:
        if a & 1:
            out |= 1 << (2 * i)
        a >>= 1
        i += 1
    return out


def _b_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _b_mod(a, b)
    return a


def _b_derivative(a: int) -> int:
    # d/dx x^i = i x^(i-1); only odd i survive mod 2.
    return (a >> 1) & int("01" * ((a.bit_length() + 1) // 2 + 1), 2)


def _b_sqrt(a: int) -> int:
    out = 0
    i = 0
    while a:
        if a & 1:
            out |= 1 << i
        a >>= 2
        i += 1
    return out


def _b_squarefree(f: int) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    if _b_deg(f) < 1:
        return out
    fp = _b_derivative(f)
    if fp == 0:
        return [(g, 2 * m) for g, m in _b_squarefree(_b_sqrt(f))]
    c = _b_gcd(f, fp)
    w = _b_divmod(f, c)[0]
    i = 1
    while w != 1:
        y = _b_gcd(w, c)
        z = _b_divmod(w, y)[0]
        if _b_deg(z) > 0:
            out.append((z, i))
        i += 1
        w, c = y, _b_divmod(c, y)[0]
    if _b_deg(c) > 0:
        for g, m in _b_squarefree(_b_sqrt(c)):
            out.append((g, 2 * m))
    return out


def _b_distinct_degree(f: int) -> list[tuple[int, int]]:
    out = []
    h = 2  # x
    i = 0
    while _b_deg(f) >= 2 * (i + 1):
        i += 1
        h = _b_mod(_b_square(h), f)
        g = _b_gcd(f, h ^ 2)
        if _b_deg(g) > 0:
            out.append((g, i))
            f = _b_divmod(f, g)[0]
            h = _b_mod(h, f)
    if _b_deg(f) > 0:
        out.append((f, _b_deg(f)))
    return out


def _b_equal_degree(f: int, k: int, rng: random.Random) -> list[int]:
    n = _b_deg(f)
    if n == k:
        return [f]
    while True:
        a = rng.getrandbits(n)
        if _b_deg(a) < 1:
            continue
        t = s = _b_mod(a, f)
        for _ in range(k - 1):
            s = _b_mod(_b_square(s), f)
            t ^= s
        g = _b_gcd(f, t)
        if 0 < _b_deg(g) < n:
            return _b_equal_degree(g, k, rng) + _b_equal_degree(
                _b_divmod(f, g)[0], k, rng
            )


def _bits_to_modpoly(a: int) -> ModPoly:
    return ModPoly(2, (int(b) for b in reversed(bin(a)[2:])))


def _modpoly_to_bits(f: ModPoly) -> int:
    out = 0
    for i, c in enumerate(f.coeffs):
        if c:
            out |= 1 << i
    return out


def factor_mod_p(f: ModPoly) -> list[tuple[ModPoly, int]]:
    """Factor ``f`` over F_p into monic irreducibles with multiplicities.

    The product of ``g**m`` over the result equals ``f`` up to the leading
    coefficient. Output is sorted by degree, then lexicographically on the
    coefficients from the top down.
    """
    require_prime(f.p)
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    f = f.monic()
    factors: dict[ModPoly, int] = {}
    if f.p == 2:
        rng = random.Random(_EDF_SEED)
        for sqf, mult in _b_squarefree(_modpoly_to_bits(f)):
            for block, k in _b_distinct_degree(sqf):
                for g in _b_equal_degree(block, k, rng):
                    gp = _bits_to_modpoly(g)
                    factors[gp] = factors.get(gp, 0) + mult
    else:
        rng = random.Random(_EDF_SEED)
        for sqf, mult in _squarefree_decomposition(f):
            for block, k in _distinct_degree(sqf):
                for g in _equal_degree(block, k, rng):
                    factors[g] = factors.get(g, 0) + mult
    return sorted(factors.items(), key=lambda gm: gm[0].sort_key())


def is_irreducible_mod_p(f: ModPoly) -> bool:
    """Rabin-style certificate: no factor of degree <= deg/2 (distinct-degree)."""
    require_prime(f.p)
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    f = f.monic()
    x = ModPoly.x(f.p)
    h = x % f
    for _ in range(f.degree // 2):
        h = h.pow_mod(f.p, f)
        if f.gcd(h - x).degree > 0:
            return False
    return True


def resultant(a: IntPoly, b: IntPoly) -> int:
    """Exact resultant via the Sylvester determinant."""
    m, n = a.degree, b.degree
    if m < 0 or n < 0:
        return 0
    size = m + n
    if size == 0:
        return 1
    rows = []
    for i in range(n):
        row = [0] * size
        for k, c in enumerate(reversed(a.coeffs)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for k, c in enumerate(reversed(b.coeffs)):
            row[i + k] = c
        rows.append(row)
    return bareiss_det(rows)


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def solve_rational(matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[Fraction]:
    """Solve a nonsingular square system exactly over Q."""
    n = len(matrix)
    a = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        row_c = a[col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col] / pv
                row_r = a[r]
                for c in range(col, n + 1):
                    row_r[c] -= factor * row_c[c]
    return [a[i][n] / a[i][i] for i in range(n)]
