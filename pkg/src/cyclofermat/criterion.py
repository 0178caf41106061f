"""Eligibility of r: 2 inert in K, odd narrow class number, r mod 8.

Narrow class numbers are read from a CSV snapshot ``r,h_plus,source``; the
h_plus column holds a positive integer or one of the parity tokens ``odd`` /
``even`` when only the parity is known. Missing entries yield unknown
verdicts, never defaults.

``cyclotomic_signature_rank`` gives an independent audit: if the signs of
the cyclotomic units under the real embeddings do not span F_2^d, the narrow
class number is even whatever the class number is.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from sympy import isprime, primerange

from .numeric_core import require_prime
from .prime_ideals import is_two_inert
from .real_cyclotomic import build_field

__all__ = [
    "ENV_TABLE",
    "NarrowClassTable",
    "TableEntry",
    "EligibilityRecord",
    "load_narrow_class_table",
    "default_table_path",
    "load_default_table",
    "eligibility",
    "scan",
    "cyclotomic_signature_rank",
    "audit_table",
]

ENV_TABLE = "CYCLOFERMAT_HPLUS_TABLE"
PARITY_TOKENS = ("odd", "even")


@dataclass(frozen=True)
class TableEntry:
    r: int
    h_plus: Optional[int]
    parity: str
    source: str

    @property
    def odd(self) -> bool:
        return self.parity == "odd"


@dataclass(frozen=True)
class NarrowClassTable:
    entries: dict = field(default_factory=dict)
    path: Optional[str] = None

    def __contains__(self, r: int) -> bool:
        return r in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def primes(self) -> list[int]:
        return sorted(self.entries)

    def entry(self, r: int) -> TableEntry:
        if r not in self.entries:
            raise KeyError(f"r = {r} is not in the narrow class number table")
        return self.entries[r]

    def h_plus_odd(self, r: int) -> bool:
        return self.entry(r).odd


def load_narrow_class_table(path: Union[str, Path]) -> NarrowClassTable:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"narrow class number table not found: {path}")
    entries: dict = {}
    with path.open(newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
                continue
            cells = [c.strip() for c in row]
            if lineno == 1 and cells[0].lower() == "r":
                continue
            if len(cells) not in (2, 3):
                raise ValueError(f"{path}:{lineno}: expected r,h_plus,source")
            try:
                r = int(cells[0])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: r = {cells[0]!r} is not an integer") from None
            if r < 5 or not isprime(r):
                raise ValueError(f"{path}:{lineno}: r = {r} is not a prime >= 5")
            token = cells[1].lower()
            if token in PARITY_TOKENS:
                h, parity = None, token
            else:
                try:
                    h = int(token)
                except ValueError:
                    raise ValueError(
                        f"{path}:{lineno}: h_plus = {cells[1]!r} is neither an integer nor odd/even"
                    ) from None
                if h <= 0:
                    raise ValueError(f"{path}:{lineno}: h_plus = {h} must be positive")
                parity = "odd" if h % 2 else "even"
            if r in entries:
                raise ValueError(f"{path}:{lineno}: duplicate entry for r = {r}")
            source = cells[2] if len(cells) == 3 else ""
            entries[r] = TableEntry(r, h, parity, source)
    return NarrowClassTable(entries, str(path))


def default_table_path() -> Path:
    override = os.environ.get(ENV_TABLE)
    if override:
        return Path(override)
    return Path(str(resources.files("cyclofermat").joinpath("data").joinpath("hplus_snapshot.csv")))


def load_default_table() -> NarrowClassTable:
    return load_narrow_class_table(default_table_path())


def _and3(*vals: Optional[bool]) -> Optional[bool]:
    if any(v is False for v in vals):
        return False
    if any(v is None for v in vals):
        return None
    return True


@dataclass(frozen=True)
class EligibilityRecord:
    r: int
    two_inert: bool
    h_plus_odd: Optional[bool]
    r_mod_8: int
    verdict_case_r_ndiv_a: Optional[bool]
    verdict_case_r_div_a: Optional[bool]
    overall: Optional[bool]
    reasons: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "two_inert": self.two_inert,
            "h_plus_odd": self.h_plus_odd,
            "r_mod_8": self.r_mod_8,
            "verdict_case_r_ndiv_a": self.verdict_case_r_ndiv_a,
            "verdict_case_r_div_a": self.verdict_case_r_div_a,
            "overall": self.overall,
            "reasons": list(self.reasons),
        }


def eligibility(r: int, table: NarrowClassTable) -> EligibilityRecord:
    r = require_prime(r, "r")
    if r < 5:
        raise ValueError(f"r = {r} must be at least 5")
    inert = is_two_inert(build_field(r))
    odd = table.h_plus_odd(r) if r in table else None
    mod8 = r % 8
    ndiv = _and3(inert, odd)
    div = _and3(ndiv, mod8 != 1)
    reasons = []
    if not inert:
        reasons.append("2 is not inert")
    if odd is None:
        reasons.append("narrow class number missing from table")
    elif not odd:
        reasons.append("narrow class number is even")
    if mod8 == 1:
        reasons.append("r = 1 mod 8")
    return EligibilityRecord(r, inert, odd, mod8, ndiv, div, _and3(ndiv, div), tuple(reasons))


def scan(r_max: int, table: NarrowClassTable) -> list[int]:
    primes = list(primerange(5, r_max + 1))
    missing = [r for r in primes if r not in table]
    if missing:
        raise ValueError(f"table does not cover r = {', '.join(map(str, missing))}")
    return [r for r in primes if eligibility(r, table).overall]


def _neg_sin(k: int, r: int) -> int:
    """1 if sin(pi k / r) < 0, else 0 (k not divisible by r)."""
    return 1 if k % (2 * r) > r else 0


def cyclotomic_signature_rank(r: int) -> int:
    """F_2-rank of the sign vectors of -1 and the cyclotomic units xi_a, 2 <= a <= d.

    xi_a = sin(pi a b / r) / sin(pi b / r) under the embedding indexed by b,
    with a replaced by r - a when even so that the half-angle lift is exact.
    """
    r = require_prime(r, "r")
    d = (r - 1) // 2
    rows = [(1 << d) - 1]
    for a in range(2, d + 1):
        a_odd = a if a % 2 else r - a
        v = 0
        for b in range(1, d + 1):
            if _neg_sin(a_odd * b, r) ^ _neg_sin(b, r):
                v |= 1 << (b - 1)
        rows.append(v)
    basis: list[int] = []
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def audit_table(table: NarrowClassTable) -> list[dict]:
    """Entries claiming odd parity although the unit signature rank forces even."""
    bad = []
    for r in table.primes():
        d = (r - 1) // 2
        defect = d - cyclotomic_signature_rank(r)
        if defect and table.entry(r).odd:
            bad.append({"r": r, "signature_defect": defect, "table_parity": "odd"})
    return bad
