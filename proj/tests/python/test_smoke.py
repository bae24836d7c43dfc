import math

import pytest

import beatty_circle as bc


def test_exponential_sum_small_cases():
    s0 = bc.S_point(0.0, 10)
    assert s0.real == pytest.approx(math.log(210), abs=1e-13)
    half = bc.S_point(0.5, 10)
    assert half.real == pytest.approx(math.log(2) - math.log(105), abs=1e-13)
    grid = bc.S_grid(10, 16)
    for t, value in enumerate(grid):
        assert abs(value - bc.S_point(t / 16, 10)) < 1e-12


def test_beatty_membership():
    seq = bc.BeattySequence("sqrt(2)")
    direct = {math.floor(math.sqrt(2) * m) for m in range(1, 200)}
    members = seq.enumerate(200)
    assert members == sorted(x for x in direct if x <= 200)
    assert 2 in seq and 3 not in seq


def test_counts_agree():
    alphas, betas = ["sqrt(2)", "sqrt(3)"], ["0", "0"]
    table = bc.count_all_upto(400, alphas, betas)
    for n in range(4, 401):
        assert table[n] == bc.count_exact(n, alphas, betas)
    assert bc.count_exact(12, alphas, betas) == 1


def test_singular_series_and_main_term():
    twin = bc.singular_series(4, 2, 1e-6)
    assert twin.value == pytest.approx(1.3203236, abs=1e-5)
    assert bc.singular_series(7, 2, 1e-6).value == 0.0
    assert bc.main_term(101, ["sqrt(2)", "sqrt(3)", "sqrt(5)"]) > 0


def test_diophantine():
    a, q, bound = bc.lemma3_approx("sqrt(2)", 100)
    assert (a, q) == (99, 70)
    assert bound <= 1 / 100
    big = 10**30
    a, q, _ = bc.lemma3_approx("sqrt(2)", big)
    assert q <= big and math.gcd(a, q) == 1
    cf = bc.continued_fraction("phi", 100)
    assert all(x == 1 for x in cf.partial_quotients)
    with pytest.raises(ValueError):
        bc.lemma3_approx("rational:3/2", 100)


def test_farey_and_parseval():
    arcs = bc.farey_arcs(3)
    assert [(a, q) for a, q, _, _ in arcs] == [(1, 3), (1, 2), (2, 3), (1, 1)]
    assert arcs[1][2] == (2, 5) and arcs[1][3] == (3, 5)
    report = bc.parseval_check(5, 8)
    assert report["exact"] == pytest.approx(sum(math.log(p) ** 2 for p in (2, 3, 5)), rel=1e-14)


def test_errors_are_python_exceptions():
    with pytest.raises(ValueError):
        bc.parse_real_expr("sqrt(")
    with pytest.raises(ValueError):
        bc.BeattySequence("rational:3/2")
    with pytest.raises(ValueError):
        bc.SmoothedIndicator(0.5, 0.3)
