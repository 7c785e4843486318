"""Closed-form and enumerative counts of non-isomorphic labelings.

The closed forms cover the families with transparent symmetry: paths (reversal
pairs plus palindromes), complete graphs (multisets), subdivided stars
(branches of equal length are interchangeable), stars and bistars.  The
enumerative counter is the independent oracle: it walks all k^n labelings and
counts orbits under the carrier's automorphism group.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .catalog import FamilySpec
from .errors import BudgetExceeded, InvalidSpec, UnsupportedFamily
from .graphs import Graph, automorphism_group
from .kernels import orbit_min_codes

ENUM_ORDER_CAP = 8
ENUM_SYMBOL_CAP = 3


@dataclass(frozen=True)
class CountResult:
    spec: str
    k: int
    count: int
    method: str  # "closed-form" | "enumeration"


def _chi_path(n: int, k: int) -> int:
    # reversal identifies labelings in pairs except the k^ceil(n/2) palindromes
    return (k ** n + k ** ((n + 1) // 2)) // 2


def _chi_complete(n: int, k: int) -> int:
    return comb(n + k - 1, n)


def _chi_substar(branches: tuple[int, ...], k: int) -> int:
    # branches of equal length are interchangeable: each length class behaves
    # like labeling a complete graph over an alphabet of k^length symbols
    if len(branches) < 3:
        raise UnsupportedFamily("subdivided-star count needs >= 3 branches (else path/star)")
    out = k
    for length, count in sorted(Counter(branches).items()):
        out *= comb(k ** length + count - 1, count)
    return out


def _chi_star(leaves: int, k: int) -> int:
    if leaves <= 1:
        return _chi_path(leaves + 1, k)  # K_1 or P_2: no distinguished center
    return k * comb(leaves + k - 1, leaves)


def _chi_bistar(m: int, n: int, k: int) -> int:
    if m == 0 or n == 0:
        return _chi_star(m + n + 1, k)  # an empty side degenerates to a star
    half_m = comb(m + k - 1, m)
    half_n = comb(n + k - 1, n)
    if m != n:
        return k * k * half_m * half_n
    # symmetric halves: labeling a 2-path over an alphabet of k*half_m symbols
    return (k * k * half_m * half_m + k * half_m) // 2


def chi_closed(spec: FamilySpec, k: int) -> CountResult:
    if k < 1:
        raise InvalidSpec("alphabet size must be >= 1")
    kind, p = spec.kind, spec.params
    if kind == "path":
        value = _chi_path(p[0], k)
    elif kind == "complete":
        value = _chi_complete(p[0], k)
    elif kind == "star":
        value = _chi_star(p[0], k)
    elif kind == "substar":
        value = _chi_substar(p, k)
    elif kind == "bistar":
        value = _chi_bistar(p[0], p[1], k)
    else:
        raise UnsupportedFamily(f"no closed form for family {spec.kind!r}")
    return CountResult(str(spec), k, value, "closed-form")


def chi_enumerate(g: Graph, k: int, *, max_order: int = ENUM_ORDER_CAP,
                  max_symbols: int = ENUM_SYMBOL_CAP) -> CountResult:
    """Count labeling orbits by explicit automorphism action over all k^n."""
    if g.n > max_order or k > max_symbols:
        raise BudgetExceeded(
            f"enumeration guard: order {g.n} <= {max_order} and k {k} <= {max_symbols}"
        )
    if k < 1:
        raise InvalidSpec("alphabet size must be >= 1")
    perms = np.array(automorphism_group(g), dtype=np.int64)
    total = k ** g.n
    labs = np.empty((total, g.n), dtype=np.int64)
    idx = np.arange(total)
    for v in range(g.n - 1, -1, -1):
        labs[:, v] = idx % k
        idx //= k
    codes = orbit_min_codes(labs, perms, k)
    value = int(np.unique(codes).size)
    return CountResult(f"graph:{g.n}", k, value, "enumeration")


def chi_closed_for_s11m(m: int, k: int) -> int:
    """Count for the twin-leaf subdivided star on m+3 vertices."""
    if m == 0:
        return _chi_path(3, k)
    if m == 1:
        return _chi_star(3, k)  # three interchangeable branches of length 1
    return _chi_substar((1, 1, m), k)


def density_ratio(n: int, k: int) -> Fraction:
    """Exact ratio of labeling counts: twin-leaf star on n vertices vs path."""
    if n < 4:
        raise InvalidSpec("ratio defined for n >= 4")
    return Fraction(chi_closed_for_s11m(n - 3, k), _chi_path(n, k))
