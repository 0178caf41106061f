"""Regenerate src/cyclofermat/data/hplus_snapshot.csv.

The class number h of Q(zeta_r)^+ is 1 for r <= 151 (unconditional) and,
assuming GRH, 1 for 151 < r < 200 except h(163) = 4 and h(191) = 11. When h
is odd the narrow class number is h * 2^defect, where defect = d minus the
signature rank of the cyclotomic units; when h is even only the parity
(even) is recorded.
"""

import sys
from pathlib import Path

from sympy import primerange

from cyclofermat.criterion import cyclotomic_signature_rank

CLASS_NUMBERS = {163: 4, 191: 11}
UNCONDITIONAL_LIMIT = 151


def rows(r_max: int = 200):
    for r in primerange(5, r_max + 1):
        h = CLASS_NUMBERS.get(r, 1)
        defect = (r - 1) // 2 - cyclotomic_signature_rank(r)
        basis = "h-unconditional" if r <= UNCONDITIONAL_LIMIT else "h-grh"
        source = f"{basis};signature-defect={defect}"
        if h % 2 == 0:
            yield r, "even", source
        else:
            yield r, h * 2**defect, source


def main(out: str) -> None:
    lines = ["r,h_plus,source"] + [f"{r},{h},{src}" for r, h, src in rows()]
    Path(out).write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/cyclofermat/data/hplus_snapshot.csv")
