"""Demo: the beta-adic partition and the collapse of building blocks.

Refining [0,1] by the inverse branches of the greedy beta-map yields, at
level M, a partition whose gaps all have exact length beta^-M or
beta^-(M+1). On each gap one places a rescaled Bernoulli polynomial
("building block"); applying the transfer operator depth-many times maps
the block exactly onto the global Bernoulli polynomial B_s on [0,1].
"""

from collections import Counter

from betaop import (BetaParams, building_block, collapse_check,
                    lemmacrux_check, refine_to_level)


def main() -> None:
    params = BetaParams(2, 1)
    print("beta^2 = 2 beta + 1, beta = %s ~ %s\n" % (
        params.beta().to_string(), params.beta().to_decimal(10)))

    for M in (1, 2, 3):
        part = refine_to_level(params, M)
        hist = Counter(g.depth for g in part.gaps)
        print("level M=%d: %d gaps, depth histogram %s" % (
            M, len(part.gaps), dict(sorted(hist.items()))))
    print()

    part = refine_to_level(params, 2)
    print("level-2 partition points (exact / decimal):")
    for p in part.points:
        print("   %-16s %s" % (p.to_string(), p.to_decimal(10)))

    gap = part.gaps[0]
    print("\nfirst gap: word k=%s j=%s, depth %d" % (
        gap.k_word, gap.j_word, gap.depth))
    for s in range(4):
        blk = building_block(gap, s)
        ok = collapse_check(gap, s)
        print("   s=%d: block has %d pieces; P^%d block == B_%d exactly: %s"
              % (s, len(blk.pieces), gap.depth, s, ok))

    rep = lemmacrux_check(params, 4, 3)
    print("\nexhaustive check at M=4, s<=3: %d identities, failures: %d"
          % (rep.checked, len(rep.failures)))


if __name__ == "__main__":
    main()
