from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

import pytest
from hypothesis import given
from hypothesis import strategies as st

from _strategies import dimvecs
from higgsdt.errors import DimVectorParseError, ZeroRank
from higgsdt.quiver import (
    DimVector,
    QuiverConfig,
    arrows,
    enumerate_dimvecs,
    euler_form,
    shift,
    slope,
)

ells = st.integers(0, 4)


def D(**kw):
    return DimVector({int(k[1:]): n for k, n in kw.items()})


def test_arrow_counts():
    assert arrows(QuiverConfig(1), 0, 0) == 2
    assert arrows(1, 1, 3) == 0
    assert arrows(3, 5, 7) == 2
    assert QuiverConfig(3).arrows(7, 5) == 2


def test_config_rejects_negative_ell():
    with pytest.raises(ValueError):
        QuiverConfig(-1)


class TestEulerForm:
    def test_single_vertex(self):
        d1 = DimVector({1: 1})
        assert euler_form(1, d1, d1) == -1

    def test_two_adjacent_vertices(self):
        m = DimVector({1: 1, 2: 1})
        assert euler_form(1, m, m) == -4

    @pytest.mark.parametrize("ell", range(6))
    def test_delta_is_minus_ell(self, ell):
        d = DimVector({7: 1})
        assert euler_form(QuiverConfig(ell), d, d) == -ell

    def test_far_apart(self):
        assert euler_form(1, DimVector({1: 1}), DimVector({3: 1})) == 0

    def test_brute_force(self):
        # expand over all vertex pairs of a window
        m, m2 = DimVector({-1: 2, 1: 1, 2: 3}), DimVector({0: 1, 2: 2, 5: 1})
        ell = 2
        expected = sum(m[i] * m2[i] for i in range(-5, 10))
        expected -= sum(arrows(ell, i, j) * m[i] * m2[j] for i in range(-5, 10) for j in range(-5, 10))
        assert euler_form(ell, m, m2) == expected

    @given(ells, dimvecs, dimvecs)
    def test_symmetric(self, ell, a, b):
        assert euler_form(ell, a, b) == euler_form(ell, b, a)

    @given(ells, dimvecs, dimvecs, st.integers(-5, 5))
    def test_translation_invariant(self, ell, a, b, k):
        assert euler_form(ell, shift(a, k), shift(b, k)) == euler_form(ell, a, b)

    @given(ells, dimvecs, dimvecs, dimvecs)
    def test_bilinear(self, ell, a, a2, b):
        assert euler_form(ell, a + a2, b) == euler_form(ell, a, b) + euler_form(ell, a2, b)


class TestEnumerate:
    def test_examples(self):
        assert enumerate_dimvecs(2, 3, (1, 3)) == [D(v1=1, v2=1)]
        assert enumerate_dimvecs(2, 4, (1, 4)) == [D(v1=1, v3=1), D(v2=2)]
        assert enumerate_dimvecs(2, 1, (1, 10)) == []
        assert enumerate_dimvecs(3, 3, (1, 3)) == [D(v1=3)]

    def test_negative_window(self):
        got = enumerate_dimvecs(2, 1, (-1, 2))
        assert got == [DimVector({-1: 1, 2: 1}), DimVector({0: 1, 1: 1})]

    @given(st.integers(0, 4), st.integers(-4, 8), st.integers(-3, 2), st.integers(0, 5))
    def test_brute_force(self, r, d, lo, width):
        hi = lo + width
        brute = sorted(
            {DimVector.from_parts(c) for c in combinations_with_replacement(range(lo, hi + 1), r)
             if sum(c) == d},
            key=lambda m: sorted(i for i, k in m.items() for _ in range(k)),
        )
        assert enumerate_dimvecs(r, d, (lo, hi)) == brute

    @pytest.mark.parametrize("r", range(1, 7))
    def test_partition_recurrence(self, r):
        @lru_cache(maxsize=None)
        def p(n, k):
            if n == 0 and k == 0:
                return 1
            if n <= 0 or k <= 0:
                return 0
            return p(n - 1, k - 1) + p(n - k, k)

        for d in range(0, 25):
            assert len(enumerate_dimvecs(r, d, (1, max(d, 1)))) == p(d, r)

    def test_all_results_have_requested_type(self):
        for m in enumerate_dimvecs(4, 6, (-2, 5)):
            assert (m.rank, m.degree) == (4, 6)
            assert min(m.support()) >= -2 and max(m.support()) <= 5


class TestDimVector:
    def test_rank_degree(self):
        m = DimVector({-2: 1, 3: 2})
        assert (m.rank, m.degree) == (3, 4)

    def test_zero_entries_dropped(self):
        assert DimVector({1: 0, 2: 1}) == DimVector({2: 1})
        assert len(DimVector({1: 0})) == 0

    def test_parse_and_format(self):
        m = DimVector.parse("2:1, -1:3")
        assert m == DimVector({-1: 3, 2: 1})
        assert str(m) == "-1:3,2:1"
        assert DimVector.parse(str(m)) == m
        assert DimVector.parse("") == DimVector()

    @pytest.mark.parametrize("bad", ["1:x", "1", "1:1,1:2", "a:1", "1:-1"])
    def test_parse_errors(self, bad):
        with pytest.raises(DimVectorParseError):
            DimVector.parse(bad)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            DimVector({1: -1})

    def test_slope(self):
        assert slope(DimVector({1: 1, 2: 1})) == Fraction(3, 2)
        assert slope(DimVector({5: 2})) == 5
        assert slope(DimVector({-1: 1, 1: 1})) == 0
        with pytest.raises(ZeroRank):
            slope(DimVector())

    def test_shift(self):
        assert shift(DimVector({1: 1, 2: 1}), 1) == DimVector({2: 1, 3: 1})

    @given(dimvecs, st.integers(-6, 6))
    def test_shift_laws(self, m, k):
        assert shift(m, 0) == m
        assert shift(shift(m, k), -k) == m
        assert shift(m, k).rank == m.rank
        assert shift(m, k).degree == m.degree + k * m.rank

    def test_hashable(self):
        assert len({DimVector({1: 1}), DimVector({1: 1}), DimVector({2: 1})}) == 2
