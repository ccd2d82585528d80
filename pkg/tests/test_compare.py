from fractions import Fraction
from functools import lru_cache
from math import comb

import pytest

from cyclic_pda import (
    Scheme,
    compare,
    construct,
    gain_lemma_predicates,
    rate_lb,
    rate_new,
    rate_nk,
    rate_nt,
    rate_rk,
    simulate,
    spe_row,
    sweep,
    validate,
    weak_compositions,
)
from cyclic_pda.compare import (
    CSV_HEADER,
    NotApplicableError,
    SchemeRow,
    gain_nk,
    gain_nt,
    gain_rk,
    rate_nk_numerator,
    subpacketization_nk,
    subpacketization_nt,
    subpacketization_rk,
)
from helpers import valid_triples


def test_rate_new_examples():
    assert rate_new(12, 2, 4) == 1
    assert rate_new(12, 2, 6) == 0
    assert rate_new(36, 3, 9) == Fraction(3, 2)


@pytest.mark.parametrize("point", valid_triples(36))
def test_rate_new_matches_construction(point):
    rep = validate(construct(*point))
    assert rate_new(*point) == Fraction(rep.S, rep.F)


def test_rk():
    assert rate_rk(12, 2, 4) == Fraction(4, 3)
    assert gain_rk(12, 2, 4) == 3
    assert rate_rk(12, 2, 6) == 0
    assert rate_rk(12, 3, 5) == 0  # k = ceil(K/L)
    with pytest.raises(NotApplicableError):
        rate_rk(12, 4, 5)
    assert subpacketization_rk(12, 2, 4) == 30
    assert subpacketization_rk(36, 3, 9) == 660


def test_nt():
    assert (rate_nt(12, 2, 4), gain_nt(12, 2, 4), subpacketization_nt(12, 2, 4)) == (Fraction(4, 3), 3, 180)
    assert gain_nt(36, 3, 9) == 4 and subpacketization_nt(36, 3, 9) == 7920
    assert rate_nt(12, 2, 6) == 0


def test_nk_anchor():
    assert rate_nk(12, 2, 4) == Fraction(68, 90)
    assert abs(float(rate_nk(12, 2, 4)) - 0.755) < 0.001
    assert subpacketization_nk(12, 2, 4) == 30
    assert gain_nk(12, 2, 4) == 4 / Fraction(68, 90)


def test_nk_single_composition():
    # K - kL - 1 = 0
    K, k, L = 12, 1, 11
    assert list(weak_compositions(0, k + 1)) == [(0, 0)]
    assert rate_nk_numerator(K, k, L) == min(2 * (K - k * L) + k - 1, K)


def test_weak_compositions_examples():
    assert len(list(weak_compositions(3, 3))) == 10
    assert list(weak_compositions(0, 4)) == [(0, 0, 0, 0)]
    assert sorted(weak_compositions(1, 2)) == [(0, 1), (1, 0)]
    with pytest.raises(ValueError):
        list(weak_compositions(-1, 2))


def _compositions_rec(n, parts):
    if parts == 1:
        return [(n,)]
    return [(h,) + rest for h in range(n + 1) for rest in _compositions_rec(n - h, parts - 1)]


@pytest.mark.parametrize("n, parts", [(n, p) for n in range(7) for p in range(1, 5)])
def test_weak_compositions_against_recursion(n, parts):
    got = list(weak_compositions(n, parts))
    assert len(got) == len(set(got)) == comb(n + parts - 1, parts - 1)
    assert set(got) == set(_compositions_rec(n, parts))


def _nk_numerator_oracle(K, k, L):
    cap = 2 * (K - k * L) + k - 1

    # recursive sum over the parts, tracking the running maximum
    @lru_cache(maxsize=None)
    def go(remaining, parts, biggest):
        if parts == 0:
            return min(cap - biggest, K) if remaining == 0 else 0
        return sum(go(remaining - x, parts - 1, max(biggest, x)) for x in range(remaining + 1))

    return go(K - k * L - 1, k + 1, 0)


@pytest.mark.parametrize("point", [t for t in valid_triples(48) if t[1] <= 8])
def test_nk_numerator_against_oracle(point):
    assert rate_nk_numerator(*point) == _nk_numerator_oracle(*point)


def test_spe():
    assert spe_row(12, 4).subpacketization == 18
    assert spe_row(24, 4).subpacketization == 108
    assert spe_row(12, 4).rate is None
    assert not spe_row(12, 7).applicable
    assert not spe_row(12, 4, k=3).applicable


def test_lower_bound():
    K, L = 12, 8
    assert rate_lb(K, L, 0) == K
    assert rate_lb(K, L, Fraction(2, K)) == 0
    assert rate_lb(K, L, Fraction(1, 2)) == 0
    c = Fraction((K - L) * (K - L + 1), 2 * K)
    # both branches meet at 1/K
    assert K - (K - c) * K * Fraction(1, K) == c * (2 - K * Fraction(1, K)) == rate_lb(K, L, Fraction(1, K))
    with pytest.raises(NotApplicableError):
        rate_lb(12, 5, Fraction(1, 12))
    with pytest.raises(ValueError):
        rate_lb(12, 6, Fraction(-1, 12))


def test_row_without_values_when_not_applicable():
    with pytest.raises(ValueError):
        SchemeRow(Scheme.NT, rate=Fraction(1), applicable=False)


def test_compare_12():
    rows = {r.scheme: r for r in compare(12, 2, 4)}
    assert (rows[Scheme.NEW].rate, rows[Scheme.NEW].gain, rows[Scheme.NEW].subpacketization) == (1, 4, 12)
    assert rows[Scheme.NT].subpacketization == 180
    assert rows[Scheme.RK].subpacketization == 30
    assert rows[Scheme.SPE].subpacketization == 18
    assert rows[Scheme.NK].rate == Fraction(68, 90)
    assert not rows[Scheme.LOWER_BOUND].applicable


def test_compare_trivial():
    rows = {r.scheme: r for r in compare(12, 2, 6)}
    assert rows[Scheme.NEW].rate == 0 and "trivial" in rows[Scheme.NEW].reason
    assert rows[Scheme.LOWER_BOUND].rate == 0


# --- lemmas ------------------------------------------------------------------------


def test_lemma_examples():
    c = gain_lemma_predicates(12, 2, 4)
    assert c.beats_nt and c.nt_threshold == 3 and c.gain_new == 4 and c.gain_nt == 3
    c = gain_lemma_predicates(24, 6, 3)
    assert not c.beats_nt and c.nt_threshold == Fraction(24 * 5, 42) + 1


@pytest.mark.parametrize("point", valid_triples(96))
def test_lemmas(point):
    K, k, L = point
    c = gain_lemma_predicates(K, k, L)
    assert c.geq_rk and Fraction(2 * K, K - k * L + k) >= Fraction(K, K - k * L)
    assert c.beats_nt == (c.gain_new > k + 1)


def test_gain_matches_simulation():
    for K, k, L in [(12, 2, 4), (24, 4, 5), (36, 3, 9)]:
        r = simulate(K, k, L, K, subfile_size=4)
        g = gain_lemma_predicates(K, k, L).gain_new
        assert r.gain_histogram == {int(g): r.S}


# --- sweep -----------------------------------------------------------------------------


@pytest.fixture(scope="module")
def table24():
    return sweep(24)


def test_sweep_points_match_rules(table24):
    want = {(k, L) for K, k, L in valid_triples(24) if K == 24}
    assert {(p.k, p.L) for p in table24.valid_points()} == want
    trivial = {(p.k, p.L) for p in table24.points if p.trivial}
    assert trivial == {(k, 24 // k) for k in range(1, 25) if 24 % k == 0}


def test_sweep_2_has_nothing_to_construct():
    t = sweep(2)
    assert t.valid_points() == []
    assert all(p.trivial for p in t.points)


def test_sweep_where_new_does_not_beat_nt(table24):
    # The listed exceptions are (6,3) and (4,4); (3,5) also ties, at 9/4.
    worse = {(p.k, p.L) for p in table24.valid_points() if p.row("New").rate >= p.row("NT").rate}
    assert worse == {(6, 3), (4, 4), (3, 5)}
    p = next(p for p in table24.valid_points() if (p.k, p.L) == (3, 5))
    assert p.row("New").rate == p.row("NT").rate == Fraction(9, 4)


def test_sweep_rk_and_F(table24):
    for p in table24.valid_points():
        rk = p.row("RK")
        if rk.applicable:
            assert p.row("New").rate <= rk.rate
        others = [r.subpacketization for r in p.rows if r.subpacketization is not None and r.scheme is not Scheme.NEW]
        assert p.row("New").subpacketization == 24 <= min(others)
        if p.k > 1:
            assert 24 < p.row("RK").subpacketization <= p.row("NT").subpacketization


def test_csv(table24):
    lines = table24.to_csv().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 1 + 6 * len(table24.points)
    assert "24,2,10,0.0833333,New,0.5,8,24,true,\n" in table24.to_csv()
