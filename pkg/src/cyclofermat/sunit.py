"""S-unit equation tools: generators, bounded enumeration, valuation bound,
parity descent and Legendre j-invariants.

Here S is always the full set of primes above a set T of rational primes
(T = {2} or {2, r}), so x is an S-unit iff its denominator and the norm of
its numerator are T-supported. Every decision is exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence, Union

from .prime_ideals import PrimeIdealFactor, split_prime, valuation
from .real_cyclotomic import FieldElement, RealCyclotomicField

__all__ = [
    "DISCLAIMER",
    "Completeness",
    "SUnitGenerator",
    "SUnitGeneratorSet",
    "SUnitSolution",
    "BoundCheck",
    "ParityStep",
    "CertificationReport",
    "S_SPECS",
    "rational_support",
    "is_s_unit",
    "default_generators",
    "load_generator_file",
    "enumerate_solutions",
    "check_valuation_bound",
    "parity_descent_step",
    "legendre_j",
    "legendre_j_sym",
    "lambda_orbit",
    "certify_field",
]

DISCLAIMER = "bounded-search evidence, NOT a proof"
S_SPECS = ("S2", "S2r")

Scalar = Union[FieldElement, Fraction, int]


class Completeness(str, enum.Enum):
    BEST_EFFORT = "best_effort"
    USER_CERTIFIED = "user_certified"


def _normalize_spec(spec: str) -> str:
    s = str(spec).strip()
    aliases = {"2": "S2", "s2": "S2", "S2": "S2", "2r": "S2r", "s2r": "S2r", "S2r": "S2r"}
    if s not in aliases:
        raise ValueError(f"unknown S specification {spec!r}; expected S2 or S2r")
    return aliases[s]


def rational_support(fld: RealCyclotomicField, spec: str) -> tuple[int, ...]:
    return (2,) if _normalize_spec(spec) == "S2" else (2, fld.r)


def _strip(n: int, primes: Sequence[int]) -> int:
    n = abs(n)
    for p in primes:
        while n % p == 0:
            n //= p
    return n


def is_s_unit(x: FieldElement, support: Sequence[int]) -> bool:
    if x.is_zero():
        return False
    if _strip(x.den, support) != 1:
        return False
    numerator = FieldElement(x.field, x.num, 1)
    n = numerator.norm()
    return _strip(n.numerator, support) == 1


@dataclass(frozen=True)
class SUnitGenerator:
    value: FieldElement
    valuations: tuple[int, ...]
    label: str = ""


@dataclass(frozen=True)
class SUnitGeneratorSet:
    field: RealCyclotomicField
    spec: str
    S: tuple[PrimeIdealFactor, ...]
    generators: tuple[SUnitGenerator, ...]
    completeness: Completeness = Completeness.BEST_EFFORT

    @property
    def support(self) -> tuple[int, ...]:
        return rational_support(self.field, self.spec)

    @property
    def S2(self) -> tuple[PrimeIdealFactor, ...]:
        return tuple(q for q in self.S if q.p == 2)

    def __len__(self) -> int:
        return len(self.generators)

    def values(self) -> list[FieldElement]:
        return [g.value for g in self.generators]

    def to_dict(self) -> dict:
        return {
            "r": self.field.r,
            "S": self.spec,
            "primes": [q.label() for q in self.S],
            "completeness": self.completeness.value,
            "generators": [
                {"label": g.label, "value": str(g.value), "valuations": list(g.valuations)}
                for g in self.generators
            ],
        }


def _build_set(fld, spec, labelled, completeness) -> SUnitGeneratorSet:
    spec = _normalize_spec(spec)
    S = tuple(q for p in rational_support(fld, spec) for q in split_prime(fld, p))
    support = rational_support(fld, spec)
    minus_one = -fld.one
    if not any(v == minus_one for _, v in labelled):
        labelled = [("-1", minus_one)] + list(labelled)
    gens = []
    for label, v in labelled:
        if not is_s_unit(v, support):
            raise ValueError(f"generator {label} = {v} is not an {spec}-unit")
        gens.append(SUnitGenerator(v, tuple(valuation(v, q) for q in S), label))
    return SUnitGeneratorSet(fld, spec, S, tuple(gens), completeness)


def default_generators(fld: RealCyclotomicField, spec: str = "S2") -> SUnitGeneratorSet:
    """-1, t_j (j >= 2), t_j + 2 (all j), 2, and t - 2 when r is in S."""
    spec = _normalize_spec(spec)
    d = fld.degree
    labelled = [("-1", -fld.one)]
    labelled += [(f"t{j}", fld.theta_j(j)) for j in range(2, d + 1)]
    labelled += [(f"t{j}+2", fld.theta_j(j) + 2) for j in range(1, d + 1)]
    labelled.append(("2", fld.element([2])))
    if spec == "S2r":
        labelled.append(("t1-2", fld.theta - 2))
    return _build_set(fld, spec, labelled, Completeness.BEST_EFFORT)


def _parse_generator_line(fld: RealCyclotomicField, line: str, lineno: int) -> FieldElement:
    body, _, den_txt = line.partition("/")
    try:
        coords = [int(c) for c in body.split(",")]
        den = int(den_txt) if den_txt.strip() else 1
    except ValueError as exc:
        raise ValueError(f"line {lineno}: cannot parse {line!r}") from exc
    if not coords or len(coords) > fld.degree:
        raise ValueError(f"line {lineno}: expected 1..{fld.degree} coordinates")
    if den == 0:
        raise ValueError(f"line {lineno}: zero denominator")
    x = fld.element(coords, den)
    if x.is_zero():
        raise ValueError(f"line {lineno}: zero is not an S-unit")
    return x


def load_generator_file(
    fld: RealCyclotomicField, path: Union[str, Path], spec: str = "S2"
) -> SUnitGeneratorSet:
    """One generator per line: comma-separated power-basis coordinates, optional /den.

    Text after '#' is ignored. -1 is added when absent.
    """
    path = Path(path)
    labelled = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        labelled.append((f"g{len(labelled) + 1}", _parse_generator_line(fld, line, lineno)))
    if not labelled:
        raise ValueError(f"{path}: no generators")
    return _build_set(fld, spec, labelled, Completeness.USER_CERTIFIED)


def lambda_orbit(lam: Scalar) -> list:
    """{l, 1/l, 1-l, 1/(1-l), l/(l-1), (l-1)/l}."""
    lam = _exact(lam)
    one_minus = 1 - lam
    return [lam, 1 / lam, one_minus, 1 / one_minus, lam / (lam - 1), (lam - 1) / lam]


def _sort_key(x: FieldElement) -> tuple:
    return (x.den, tuple(abs(c) for c in x.num), x.num)


@dataclass(frozen=True)
class SUnitSolution:
    lam: FieldElement
    mu: FieldElement
    lam_exponents: Optional[tuple[int, ...]]
    mu_exponents: Optional[tuple[int, ...]]
    valuations: tuple[tuple[int, int], ...]
    orbit_tag: str
    in_box: bool

    def __post_init__(self):
        if self.lam + self.mu != self.lam.field.one:
            raise ArithmeticError("lambda + mu != 1")

    def to_dict(self) -> dict:
        return {
            "lambda": str(self.lam),
            "mu": str(self.mu),
            "lambda_exponents": None if self.lam_exponents is None else list(self.lam_exponents),
            "mu_exponents": None if self.mu_exponents is None else list(self.mu_exponents),
            "valuations_S2": [list(v) for v in self.valuations],
            "orbit": self.orbit_tag,
            "in_box": self.in_box,
        }


def _exponent_range(bound: int, is_sign: bool) -> list[int]:
    if is_sign:
        return [0, 1]
    out = [0]
    for e in range(1, bound + 1):
        out += [e, -e]
    return out


def _box_products(genset: SUnitGeneratorSet, bound: int) -> dict:
    """Distinct products over the exponent box, each with its first exponent vector.

    Products are deduplicated after every generator, which keeps the work
    proportional to the number of distinct values rather than the box size.
    """
    fld = genset.field
    minus_one = -fld.one
    current = {fld.one: ()}
    for g in genset.generators:
        exps = _exponent_range(bound, g.value == minus_one)
        powers = [(e, g.value**e) for e in exps]
        nxt: dict = {}
        for val, vec in current.items():
            for e, pw in powers:
                prod = val * pw if e else val
                if prod not in nxt:
                    nxt[prod] = vec + (e,)
        current = nxt
    return current


def enumerate_solutions(genset: SUnitGeneratorSet, bound: int) -> list[SUnitSolution]:
    """Solutions of l + m = 1 with l in the exponent box, closed under the orbit.

    Every l from the box with 1 - l an S-unit is kept, then each solution's
    six-element orbit is added. Output is ordered by orbit, then by value.
    """
    if bound < 1:
        raise ValueError("exponent bound must be >= 1")
    fld = genset.field
    support = genset.support
    box = _box_products(genset, bound)
    one = fld.one

    found = set()
    for lam in box:
        if lam == one:
            continue
        if is_s_unit(one - lam, support):
            found.add(lam)

    orbits: dict = {}
    for lam in found:
        orbit = frozenset(lambda_orbit(lam))
        orbits.setdefault(orbit, None)
    ordered = sorted(orbits, key=lambda o: _sort_key(min(o, key=_sort_key)))

    def exps(x):
        if x in box:
            return box[x]
        return None

    S2 = genset.S2
    out = []
    for idx, orbit in enumerate(ordered, start=1):
        tag = f"O{idx}"
        for lam in sorted(orbit, key=_sort_key):
            mu = one - lam
            vals = tuple((valuation(lam, P), valuation(mu, P)) for P in S2)
            out.append(SUnitSolution(lam, mu, exps(lam), exps(mu), vals, tag, lam in box))
    return out


class BoundCheck(tuple):
    """(holds, v_P(lambda), v_P(mu), 4 v_P(2)); truthy iff the bound holds."""

    def __new__(cls, holds, v_lam, v_mu, bound):
        return super().__new__(cls, (holds, v_lam, v_mu, bound))

    holds = property(lambda self: self[0])
    v_lambda = property(lambda self: self[1])
    v_mu = property(lambda self: self[2])
    bound = property(lambda self: self[3])

    def __bool__(self) -> bool:
        return bool(self[0])

    def triple(self) -> tuple[int, int, int]:
        return (self[1], self[2], self[3])


def _exact(x: Scalar) -> Scalar:
    if isinstance(x, FieldElement):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"expected an exact scalar, got {type(x).__name__}")


def _val(x: Scalar, P: Union[PrimeIdealFactor, int]) -> int:
    if isinstance(P, PrimeIdealFactor):
        return valuation(x, P)
    if isinstance(x, FieldElement):
        x = x.rational()
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero undefined")
    n, d = x.numerator, x.denominator
    v = 0
    while n % P == 0:
        n //= P
        v += 1
    while d % P == 0:
        d //= P
        v -= 1
    return v


def check_valuation_bound(lam: Scalar, mu: Scalar, P: Union[PrimeIdealFactor, int]) -> BoundCheck:
    """max(|v_P(l)|, |v_P(m)|) <= 4 v_P(2)."""
    lam, mu = _exact(lam), _exact(mu)
    if lam + mu != 1:
        raise ValueError("precondition violated: lambda + mu != 1")
    if lam == 0 or mu == 0:
        raise ValueError("precondition violated: lambda * mu == 0")
    vl, vm = _val(lam, P), _val(mu, P)
    bound = 4 * _val(2, P)
    return BoundCheck(max(abs(vl), abs(vm)) <= bound, vl, vm, bound)


@dataclass(frozen=True)
class ParityStep:
    lam: Scalar
    mu: Scalar
    s0: int
    s1: int
    s2: int
    branch: str
    v_lam: int
    forced: bool

    def to_dict(self) -> dict:
        return {
            "lambda": str(self.lam),
            "mu": str(self.mu),
            "s0": self.s0,
            "v(1+nu)": self.s1,
            "v(1-nu)": self.s2,
            "branch": self.branch,
            "v(lambda)": self.v_lam,
            "forced": self.forced,
        }


def parity_descent_step(
    nu: Scalar, P: Union[PrimeIdealFactor, int], *, force: bool = False
) -> ParityStep:
    """From (1 - nu^2, nu^2) build the pair with l'' = -(1-nu)^2/(4 nu), m'' = (1+nu)^2/(4 nu).

    The roles of 1 + nu and 1 - nu are swapped when v_P(1 - nu) = 1.
    s0 = v_P(1 - nu^2) must be at least 5 unless ``force`` is set.
    """
    nu = _exact(nu)
    if nu == 0 or nu == 1 or nu == -1:
        raise ValueError("nu must be nonzero with nu^2 != 1")
    s0 = _val(1 - nu * nu, P)
    if s0 < 5 and not force:
        raise ValueError(f"descent hypothesis requires s0 >= 5 (got s0 = {s0})")
    s1, s2 = _val(1 + nu, P), _val(1 - nu, P)
    a = -((1 - nu) * (1 - nu)) / (4 * nu)
    b = ((1 + nu) * (1 + nu)) / (4 * nu)
    if s1 == 1:
        lam, mu, branch = a, b, "v(1+nu)=1"
    elif s2 == 1:
        lam, mu, branch = b, a, "v(1-nu)=1"
    else:
        raise ValueError("neither 1 + nu nor 1 - nu has valuation 1")
    if lam + mu != 1:
        raise ArithmeticError("lambda'' + mu'' != 1")
    return ParityStep(lam, mu, s0, s1, s2, branch, _val(lam, P), s0 < 5)


def legendre_j(lam: Scalar) -> Scalar:
    """2^8 (l^2 - l + 1)^3 / (l^2 (1 - l)^2)."""
    lam = _exact(lam)
    if lam == 0 or lam == 1:
        raise ValueError("lambda must avoid 0 and 1")
    num = lam * lam - lam + 1
    return 256 * num * num * num / (lam * lam * (1 - lam) * (1 - lam))


def legendre_j_sym(lam: Scalar, mu: Scalar) -> Scalar:
    """2^8 (1 - l m)^3 / (l m)^2."""
    lam, mu = _exact(lam), _exact(mu)
    if lam == 0 or mu == 0:
        raise ValueError("lambda and mu must be nonzero")
    lm = lam * mu
    u = 1 - lm
    return 256 * u * u * u / (lm * lm)


@dataclass
class CertificationReport:
    r: int
    spec: str
    bound: int
    completeness: Completeness
    solutions: list[SUnitSolution]
    checks: list[dict] = field(default_factory=list)

    @property
    def disclaimer(self) -> Optional[str]:
        return DISCLAIMER if self.completeness is Completeness.BEST_EFFORT else None

    @property
    def all_hold(self) -> bool:
        return all(c["bound_holds"] and c["case_split_ok"] and c["j_ok"] for c in self.checks)

    @property
    def n_orbits(self) -> int:
        return len({s.orbit_tag for s in self.solutions})

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "S": self.spec,
            "bound": self.bound,
            "completeness": self.completeness.value,
            "disclaimer": self.disclaimer,
            "note": "finiteness-based maximality arguments are not reproducible by bounded search",
            "n_solutions": len(self.solutions),
            "n_orbits": self.n_orbits,
            "all_hold": self.all_hold,
            "solutions": [s.to_dict() for s in self.solutions],
            "checks": self.checks,
        }


def certify_field(
    fld: RealCyclotomicField,
    spec: str = "S2",
    bound: int = 3,
    genset: Optional[SUnitGeneratorSet] = None,
) -> CertificationReport:
    """Enumerate, then test the valuation bound and v_P(j) >= 8 v_P(2) - 2t at each P | 2.

    Also asserts v_P(l m) in {t, -2t} with t = max(|v_P(l)|, |v_P(m)|).
    """
    if genset is None:
        genset = default_generators(fld, spec)
    sols = enumerate_solutions(genset, bound)
    checks = []
    for s in sols:
        lm = s.lam * s.mu
        jv = legendre_j_sym(s.lam, s.mu)
        for P in genset.S2:
            bc = check_valuation_bound(s.lam, s.mu, P)
            t = max(abs(bc.v_lambda), abs(bc.v_mu))
            v_lm = valuation(lm, P)
            v2 = valuation(2, P)
            vj = None if jv == 0 else valuation(jv, P)
            j_ok = vj is None or vj >= 8 * v2 - 2 * t
            if bc.holds:
                j_ok = j_ok and (vj is None or vj >= 0)
            checks.append(
                {
                    "lambda": str(s.lam),
                    "P": P.label(),
                    "v_lambda": bc.v_lambda,
                    "v_mu": bc.v_mu,
                    "bound": bc.bound,
                    "bound_holds": bc.holds,
                    "v_lambda_mu": v_lm,
                    "case_split_ok": v_lm in (t, -2 * t),
                    "v_j": vj,
                    "j_ok": j_ok,
                }
            )
    return CertificationReport(fld.r, genset.spec, bound, genset.completeness, sols, checks)
