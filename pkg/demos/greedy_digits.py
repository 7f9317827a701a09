"""Demo: exact greedy beta-expansions.

The greedy digits of x in base beta come from iterating T(x) = beta*x - d,
d = floor(beta*x). With x in Q(beta) the whole orbit stays in Q(beta), so
digits, orbit points, and the partial-sum error are all exact.
"""

from fractions import Fraction

from betaop import BetaParams, QuadNum, greedy_expand


def main() -> None:
    params = BetaParams(1, 1)
    print("golden ratio base, x = 1/2:")
    g = greedy_expand(params.rational(Fraction(1, 2)), 12)
    print("   digits:", g.digits)
    err = params.rational(Fraction(1, 2)) - g.partial_sum()
    print("   partial-sum error: %s ~ %s" % (err.to_string(), err.to_decimal(12)))

    p21 = BetaParams(2, 1)
    x = p21.beta().inverse()
    print("\na0=2, a1=1, x = 1/beta (expansion terminates):")
    g = greedy_expand(x, 6)
    print("   digits:", g.digits)
    print("   orbit: ", [o.to_string() for o in g.orbit[:3]], "...")

    print("\nrandom-looking point in Q(beta), a0=3, a1=2:")
    p32 = BetaParams(3, 2)
    x = QuadNum(Fraction(-7, 5), Fraction(4, 5), p32)
    x = x - x.floor()
    g = greedy_expand(x, 20)
    print("   x      =", x.to_string(), "~", x.to_decimal(12))
    print("   digits =", g.digits)
    err = x - g.partial_sum()
    bound = p32.beta().inverse() ** 20
    print("   0 <= error < beta^-20:", err.sign() >= 0
          and (err - bound).sign() < 0)


if __name__ == "__main__":
    main()
