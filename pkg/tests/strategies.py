"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from icosashimura.mpoly import MPoly

small_ints = st.integers(min_value=-20, max_value=20)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=12))


def mpolys(vars=("x", "y", "z"), max_exp=3, max_terms=5, weights=None):
    n = len(vars)
    exps = st.tuples(*[st.integers(min_value=0, max_value=max_exp)] * n)
    return st.dictionaries(exps, rationals, max_size=max_terms).map(
        lambda d: MPoly(vars, d, weights))
