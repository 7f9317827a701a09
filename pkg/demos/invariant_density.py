"""Demo: the Parry invariant density and its companion eigenfunctions.

For beta with beta^2 = a0*beta + a1 the transfer operator of the greedy
beta-map has three distinguished eigenfunctions inside a 4-dimensional
invariant subspace of piecewise polynomials:

    P u1 = u1            (invariant density, integral 1)
    P u2 = (-a1/beta^2) u2
    P u3 = (1/beta) u3

All identities below are verified in exact arithmetic over Q(beta).
"""

from fractions import Fraction

from betaop import BetaParams, apply_transfer, make_u_tilde


def main() -> None:
    for a0, a1 in ((1, 1), (2, 1), (3, 2)):
        params = BetaParams(a0, a1)
        beta = params.beta()
        print("=== a0=%d a1=%d  (beta = %s ~ %s)" % (
            a0, a1, beta.to_string(), beta.to_decimal(10)))
        u1, u2, u3 = make_u_tilde(params)
        binv = beta.inverse()
        lam2 = -(binv ** 2) * a1
        checks = [
            ("P u1 = u1", apply_transfer(u1).equal_ae(u1)),
            ("P u2 = (-a1/beta^2) u2",
             apply_transfer(u2).equal_ae(u2.scaled(lam2))),
            ("P u3 = (1/beta) u3",
             apply_transfer(u3).equal_ae(u3.scaled(binv))),
            ("integral u1 = 1", (u1.integrate() - 1).is_zero()),
            ("integral u2 = 0", u2.integrate().is_zero()),
            ("integral u3 = 0", u3.integrate().is_zero()),
        ]
        for label, ok in checks:
            print("  %-26s %s" % (label, "exact" if ok else "FAILED"))
        # the density is piecewise constant with a single jump at a1/beta
        cut = binv * a1
        lo = u1.eval(cut * Fraction(1, 2))
        hi = u1.eval((cut + 1) * Fraction(1, 2))
        print("  u1 on [0, a1/beta)  = %s ~ %s" % (lo.to_string(), lo.to_decimal(10)))
        print("  u1 on (a1/beta, 1]  = %s ~ %s" % (hi.to_string(), hi.to_decimal(10)))
        print()


if __name__ == "__main__":
    main()
