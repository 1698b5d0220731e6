"""Rank-threshold complexes, their nerve cross-check, and ray filtrations."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcsense import (
    DataMatrix,
    Filtration,
    GradeVector,
    SimplicialComplex,
    dowker_at,
    dowker_at_nerve,
    hat_R_n,
    order_table,
    ray_filtration,
)
from qcsense.dowker import MAX_ROWS, subset_tables


@pytest.fixture
def T(example_matrix):
    return order_table(example_matrix)


small_matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(2, 6).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(0, 10_000), min_size=n, max_size=n, unique=True),
            min_size=m,
            max_size=m,
        )
    )
)


class TestGradeVector:
    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            GradeVector((0.5, 1.5))
        with pytest.raises(ValueError):
            GradeVector((-0.1,))

    def test_accepts_endpoints(self):
        GradeVector((0.0, 1.0))


class TestDowkerAt:
    def test_half_half(self, T):
        K = dowker_at(T, (0.5, 0.5))
        assert sorted(K.faces_as_tuples()) == [(1,), (2,)]

    def test_full_grade(self, T):
        K = dowker_at(T, (1.0, 1.0))
        assert sorted(K.faces_as_tuples()) == [(1,), (1, 2), (2,)]

    def test_quarter(self, T):
        K = dowker_at(T, (0.25, 0.25))
        assert sorted(K.faces_as_tuples()) == [(1,), (2,)]

    def test_zero_grade_empty(self, T):
        K = dowker_at(T, (0.0, 0.0))
        assert K.faces == frozenset()

    def test_asymmetric_grades(self, T):
        # row 1 sees nothing, row 2 sees {2}: only vertex 2 appears
        K = dowker_at(T, (0.0, 0.25))
        assert sorted(K.faces_as_tuples()) == [(2,)]

    def test_monotone_in_grade(self, T):
        K1 = dowker_at(T, (0.25, 0.5))
        K2 = dowker_at(T, (0.75, 1.0))
        assert K1.is_subcomplex_of(K2)

    def test_skeleton_cap(self, T):
        K = dowker_at(T, (1.0, 1.0), skeleton=0)
        assert sorted(K.faces_as_tuples()) == [(1,), (2,)]

    def test_row_cap(self):
        vals = np.arange(2 * (MAX_ROWS + 1), dtype=float).reshape(MAX_ROWS + 1, 2)
        T = order_table(DataMatrix(vals))
        with pytest.raises(ValueError):
            dowker_at(T, (0.5,) * (MAX_ROWS + 1))

    @given(small_matrices, st.data())
    @settings(max_examples=60, deadline=None)
    def test_matches_nerve_construction(self, rows, data):
        M = DataMatrix(np.array(rows, dtype=float))
        T = order_table(M)
        t = tuple(
            data.draw(st.integers(0, T.n)) / T.n for _ in range(T.m)
        )
        assert dowker_at(T, t).faces == dowker_at_nerve(T, t).faces


class TestHatRn:
    def test_example_value(self, T):
        assert hat_R_n(T, (1.0, 0.25)) == 0.25

    def test_extremes(self, T):
        assert hat_R_n(T, (1.0, 1.0)) == 1.0
        assert hat_R_n(T, (0.0, 0.0)) == 0.0

    @given(small_matrices, st.data())
    @settings(max_examples=60, deadline=None)
    def test_membership_identity(self, rows, data):
        # a simplex is present exactly when the relaxed grade (its rows
        # kept, every other row slackened to 1) captures some column
        M = DataMatrix(np.array(rows, dtype=float))
        T = order_table(M)
        t = tuple(data.draw(st.integers(0, T.n)) / T.n for _ in range(T.m))
        K = dowker_at(T, t)
        sigma = tuple(
            sorted(
                data.draw(
                    st.sets(st.integers(1, T.m), min_size=1, max_size=T.m)
                )
            )
        )
        relaxed = tuple(t[i - 1] if i in sigma else 1.0 for i in range(1, T.m + 1))
        assert (sigma in K) == (hat_R_n(T, relaxed) > 0)


class TestRayFiltration:
    def test_column1_ladder(self, T):
        F = ray_filtration(T, 1)
        assert F.denominator == 4
        assert F.t_end_numer == 4
        assert F.entries == ((1, 0b01), (3, 0b10), (3, 0b11))
        assert sorted(F.complex_at(0.0).faces_as_tuples()) == []
        assert sorted(F.complex_at(0.25).faces_as_tuples()) == [(1,)]
        assert sorted(F.complex_at(0.5).faces_as_tuples()) == [(1,)]
        assert sorted(F.complex_at(0.75).faces_as_tuples()) == [(1,), (1, 2), (2,)]

    def test_column2_ladder(self, T):
        F = ray_filtration(T, 2)
        assert F.t_end_numer == 3
        assert F.entries == ((1, 0b01), (3, 0b10), (3, 0b11))

    def test_columns_3_and_4(self, T):
        F3 = ray_filtration(T, 3)
        F4 = ray_filtration(T, 4)
        assert F3.t_end_numer == 3
        assert F4.t_end_numer == 4
        assert F3.entries[-1] == (3, 0b11)
        # column 3 beats column 4 in every row, so the full simplex on the
        # column-4 ray appears one grid step before t_end
        assert F4.entries[-1] == (3, 0b11)

    def test_export_text(self, T):
        F = ray_filtration(T, 1)
        assert F.export_text() == "denominator 4\n1 1\n3 2\n3 1 2\n"

    def test_validation_round_trip(self, T):
        F = ray_filtration(T, 1)
        # re-validating the same entries must succeed
        again = Filtration(F.m, F.denominator, F.entries, F.t_end_numer)
        assert again.entries == F.entries

    def test_rejects_coface_before_face(self):
        with pytest.raises(ValueError):
            Filtration(2, 4, ((1, 0b11), (2, 0b01), (2, 0b10)), 4)

    def test_rejects_unsorted_grades(self):
        with pytest.raises(ValueError):
            Filtration(2, 4, ((3, 0b01), (1, 0b10), (3, 0b11)), 4)

    def test_column_out_of_range(self, T):
        with pytest.raises(ValueError):
            ray_filtration(T, 0)
        with pytest.raises(ValueError):
            ray_filtration(T, 5)

    @given(small_matrices, st.data())
    @settings(max_examples=40, deadline=None)
    def test_matches_pointwise_dowker(self, rows, data):
        # the ray complex at grade g is the rank complex at column a's rank
        # vector slid down-diagonally by t_end - g
        M = DataMatrix(np.array(rows, dtype=float))
        T = order_table(M)
        a = data.draw(st.integers(1, T.n))
        F = ray_filtration(T, a)
        g_num = data.draw(st.integers(0, F.t_end_numer))
        shift = F.t_end_numer - g_num
        t = tuple(
            max(int(T.ord[i, a - 1]) - shift, 0) / T.n for i in range(T.m)
        )
        direct = dowker_at(T, t)
        assert F.complex_at(g_num / F.denominator).faces == direct.faces
        # by the terminal grade the ray complex holds the full simplex
        full = F.complex_at(F.t_end_numer / F.denominator)
        assert (1 << T.m) - 1 in full.faces

    def test_grades_live_on_grid(self, T):
        for a in range(1, 5):
            F = ray_filtration(T, a)
            for g, _ in F.entries:
                assert 0 <= g <= F.denominator


class TestSubsetTables:
    def test_three_rows(self):
        masks, verts, sizes, facets, tiebreak = subset_tables(3, 3)
        assert len(masks) == 7
        assert sorted(masks) == [1, 2, 3, 4, 5, 6, 7]
        by_mask = dict(zip(masks, verts))
        assert by_mask[0b111] == (0, 1, 2)
        # facets of a pair are its two singletons
        idx = masks.index(0b011)
        facet_masks = {masks[j] for j in facets[idx]}
        assert facet_masks == {0b001, 0b010}

    def test_size_cap(self):
        masks, _, sizes, _, _ = subset_tables(4, 2)
        assert max(sizes) == 2
        assert len(masks) == 4 + 6
