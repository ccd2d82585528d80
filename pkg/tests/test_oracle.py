import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import golden
from cyclic_pda import Pda, StructuralError, construct, validate, validate_oracle
from helpers import grid, mutate, valid_triples


@pytest.mark.parametrize("name", ["EXPANDED_12", "FULL_12", "A_12", "P1_12", "A_36", "P1_36", "EXPANDED_36"])
def test_agrees_on_listed_arrays(name):
    p = grid(getattr(golden, name))
    assert validate_oracle(p) == validate(p)


def test_hand_examples():
    ok = validate_oracle(Pda.from_rows([[0, "*"], ["*", 0]]))
    assert ok.is_pda and ok.regular_g == 2 and ok.cyclic_t == 1
    bad = validate_oracle(Pda.from_rows([[0, 0], ["*", "*"]]))
    assert [v.condition for v in bad.violations] == ["C3a"]
    assert validate_oracle(Pda.all_stars(3, 2)).violations[0].condition == "C2"


def test_rejects_non_pda_objects():
    with pytest.raises(StructuralError):
        validate_oracle([[0]])


def test_agrees_on_constructed_arrays():
    for K, k, L in valid_triples(30):
        p = construct(K, k, L)
        assert validate_oracle(p) == validate(p), (K, k, L)


def test_mutations_of_full_12():
    rng = np.random.default_rng(7)
    base = grid(golden.FULL_12)
    broken = 0
    for _ in range(100):
        p = mutate(base, rng)
        a, b = validate(p), validate_oracle(p)
        assert a == b
        broken += not a.is_pda
    assert broken > 50


@st.composite
def small_grids(draw):
    F = draw(st.integers(1, 5))
    K = draw(st.integers(1, 5))
    cells = draw(st.lists(st.integers(-1, 4), min_size=F * K, max_size=F * K))
    return Pda(np.array(cells).reshape(F, K))


@settings(max_examples=500, deadline=None)
@given(small_grids())
def test_agrees_on_random_small_grids(p):
    assert validate_oracle(p) == validate(p)
