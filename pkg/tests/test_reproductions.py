"""Full-scale statistical reproductions, excluded from the default run.

Run with: pytest -m slow tests/test_reproductions.py
"""

from __future__ import annotations

import pytest

from qcsense import (
    RegularPairSpec,
    decide_dimension,
    sample_pair,
    subsample_functions,
)


@pytest.mark.slow
def test_function_subsampling_recovers_dimension_2():
    # Wide quadratic family on the unit disk: m=60 functions, n=150 points.
    # Row subsampling (m_s=10, 1000 replicates) must conclude dimension 2:
    # Q1(L_1) > 0 and Q1(L_k) = 0 for k >= 2.
    spec = RegularPairSpec.random_quadratic(d=2, m=60, seed=0)
    _, matrix = sample_pair(spec, 150)
    res = subsample_functions(matrix, 10, 1000, d_up=3, seed=0)
    bp = res.boxplots
    assert bp[1].q1 > 0
    assert bp[2].q1 == 0
    assert bp[3].q1 == 0
    assert int(decide_dimension(bp)) == 2
