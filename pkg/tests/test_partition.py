"""Level partitions of [0,1], gap-length law, rescaled building blocks, and
the exact collapse of blocks under powers of the transfer operator."""

from fractions import Fraction

import pytest

from betaop import (BetaParams, PartitionPoint, apply_transfer,
                    bernoulli_piecewise, building_block, collapse_check,
                    first_layer_point, intermediate_check, lemmacrux_check,
                    refine_to_level)

GOLDEN = BetaParams(1, 1)


def test_first_layer_points():
    p = BetaParams(2, 1)
    binv = p.beta().inverse()
    assert first_layer_point(p, 1, 0).is_zero()
    assert first_layer_point(p, 1, 1) == binv
    assert first_layer_point(p, 2, 0) == binv * 2
    with pytest.raises(ValueError):
        first_layer_point(p, 3, 0)


def test_golden_level2_points():
    part = refine_to_level(GOLDEN, 2)
    binv = GOLDEN.beta().inverse()
    pts = part.points
    assert len(pts) == 4
    assert pts[0].is_zero()
    assert pts[1] == binv ** 2
    assert pts[2] == binv
    assert pts[3] == 1
    assert [g.depth for g in part.gaps] == [2, 3, 2]


def test_gap_law_and_total_length():
    for a0 in range(1, 4):
        for a1 in range(1, a0 + 1):
            params = BetaParams(a0, a1)
            binv = params.beta().inverse()
            for M in range(1, 9):
                part = refine_to_level(params, M)
                lengths = {M: binv ** M, M + 1: binv ** (M + 1)}
                prev = params.zero()
                for gap in part.gaps:
                    assert gap.depth in (M, M + 1)
                    # gaps tile [0,1] in order, so lengths sum to one
                    assert (gap.value - prev).is_zero()
                    prev = gap.value + lengths[gap.depth]
                assert (prev - 1).is_zero()


def test_point_recursion_from_words():
    params = BetaParams(3, 2)
    binv = params.beta().inverse()
    part = refine_to_level(params, 4)
    for gap in part.gaps[::7]:
        acc = params.zero()
        depth = 0
        for k, j in zip(gap.k_word, gap.j_word):
            acc = acc + binv ** depth * first_layer_point(params, k, j)
            depth += k
        assert (acc - gap.value).is_zero()
        assert depth == gap.depth


def test_locate():
    part = refine_to_level(GOLDEN, 3)
    for i, gap in enumerate(part.gaps):
        assert part.locate(gap.value) == i
        mid = gap.value + gap.gap_length() * Fraction(1, 2)
        assert part.locate(mid) == i


def test_building_block_golden_s1():
    binv = GOLDEN.beta().inverse()
    gap = PartitionPoint((1, 1), (0, 0), GOLDEN.zero())
    blk = building_block(gap, 1)
    # beta^2 * B1(beta^2 x) on [0, beta^-2]
    b2 = GOLDEN.beta() ** 2
    x = binv ** 2 * Fraction(1, 4)
    assert blk.eval(x) == b2 * (b2 * x - Fraction(1, 2))
    assert blk.eval(binv).is_zero()


def test_building_block_integrals():
    params = BetaParams(2, 2)
    part = refine_to_level(params, 3)
    for gap in part.gaps[::5]:
        assert (building_block(gap, 0).integrate() - 1).is_zero()
        for s in (1, 2, 3):
            assert building_block(gap, s).integrate().is_zero()


def test_collapse_on_single_gaps():
    part = refine_to_level(BetaParams(2, 1), 3)
    for gap in (part.gaps[0], part.gaps[-1]):
        for s in (0, 1, 2):
            assert collapse_check(gap, s)


def test_intermediate_identity():
    for params in (GOLDEN, BetaParams(2, 2), BetaParams(3, 1)):
        for s in (0, 1, 2, 3):
            assert intermediate_check(params, s)


def test_lemmacrux_small():
    rep = lemmacrux_check(GOLDEN, 3, 2)
    assert rep.passed
    assert rep.checked == len(refine_to_level(GOLDEN, 3).gaps) * 3
    rep2 = lemmacrux_check(BetaParams(2, 2), 2, 1)
    assert rep2.passed and not rep2.failures


def test_budget_guards():
    with pytest.raises(ValueError):
        refine_to_level(GOLDEN, 0)
    with pytest.raises(ValueError):
        lemmacrux_check(GOLDEN, 7, 1)
    with pytest.raises(ValueError):
        lemmacrux_check(GOLDEN, 2, 5)
    gap = PartitionPoint((1,), (0,), GOLDEN.zero())
    with pytest.raises(ValueError):
        building_block(gap, 9)
