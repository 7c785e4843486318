from fractions import Fraction

import pytest

from compograph import catalog
from compograph.counting import (
    chi_closed,
    chi_closed_for_s11m,
    chi_enumerate,
    density_ratio,
)
from compograph.errors import BudgetExceeded, UnsupportedFamily


@pytest.mark.parametrize("spec,k,expected", [
    (catalog.path(4), 2, 10),
    (catalog.path(1), 3, 3),
    (catalog.complete(3), 2, 4),
    (catalog.substar(1, 1, 3), 2, 48),
    (catalog.star(5), 2, 12),
    (catalog.bistar(2, 3), 2, 48),
    (catalog.bistar(2, 2), 2, 21),
])
def test_known_closed_values(spec, k, expected):
    assert chi_closed(spec, k).count == expected


def test_s11m_corollary_matches_general_form():
    for m in range(2, 9):
        for k in (2, 3, 4):
            assert chi_closed_for_s11m(m, k) == (k ** (m + 3) + k ** (m + 2)) // 2


def test_enumerate_small():
    p2 = catalog.generate(catalog.path(2))
    assert chi_enumerate(p2, 2).count == 3
    assert chi_enumerate(p2, 1).count == 1
    b22 = catalog.generate(catalog.bistar(2, 2))
    assert chi_enumerate(b22, 2).count == chi_closed(catalog.bistar(2, 2), 2).count


def test_enumerate_budget_guard():
    g = catalog.generate(catalog.path(9))
    with pytest.raises(BudgetExceeded):
        chi_enumerate(g, 2)
    with pytest.raises(BudgetExceeded):
        chi_enumerate(catalog.generate(catalog.path(4)), 4)
    assert chi_enumerate(g, 2, max_order=9).count == (2 ** 9 + 2 ** 5) // 2


def test_unsupported_family():
    with pytest.raises(UnsupportedFamily):
        chi_closed(catalog.triangle_tail(3), 2)
    with pytest.raises(UnsupportedFamily):
        chi_closed(catalog.substar(2, 3), 2)


def test_chi_monotone_in_k():
    for spec in (catalog.path(6), catalog.star(4), catalog.bistar(2, 2),
                 catalog.substar(1, 2, 2)):
        values = [chi_closed(spec, k).count for k in range(1, 6)]
        assert values == sorted(values)
        assert values[0] == 1


def test_palindrome_count_by_enumeration():
    # the path closed form rests on k^ceil(n/2) palindromes
    import itertools

    for n in range(1, 8):
        for k in (2, 3):
            pal = sum(
                1
                for s in itertools.product(range(k), repeat=n)
                if s == tuple(reversed(s))
            )
            assert pal == k ** ((n + 1) // 2)


def test_density_ratio_values():
    assert density_ratio(4, 2) == Fraction(8, 10)
    assert abs(float(density_ratio(20, 2)) - 1.5) < 0.01
    ratios = [density_ratio(n, 2) for n in range(4, 64)]
    assert all(a <= b for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] < Fraction(3, 2)


def test_big_integer_counts():
    # far beyond 64-bit territory
    value = chi_closed(catalog.path(64), 2).count
    assert value == (2 ** 64 + 2 ** 32) // 2
    assert chi_closed(catalog.substar(1, 1, 62), 3).count > 10 ** 28
