"""The psi-basis of invariant subspaces, restriction matrices of the transfer
operator on span{psi_1,...,psi_2nu}, their block eigenvalues, Riesz
projections (nu=2), and the three distinguished eigenfunctions u1, u2, u3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bernoulli import bernoulli_polynomial
from .field import BetaParams, QuadNum
from .piecewise import PiecewisePoly, Polynomial, combine
from .transfer import apply_transfer

Matrix = list[list[QuadNum]]


# -- small exact matrix helpers ------------------------------------------------

def mat_zero(params: BetaParams, n: int) -> Matrix:
    z = params.zero()
    return [[z for _ in range(n)] for _ in range(n)]


def mat_eye(params: BetaParams, n: int) -> Matrix:
    m = mat_zero(params, n)
    one = params.one()
    for i in range(n):
        m[i][i] = one
    return m


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c: QuadNum) -> Matrix:
    return [[x * c for x in row] for row in a]


def mat_equal(a: Matrix, b: Matrix) -> bool:
    return all((x - y).is_zero() for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_inv2(a: Matrix) -> Matrix:
    det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    d = det.inverse()
    return [[a[1][1] * d, -a[0][1] * d], [-a[1][0] * d, a[0][0] * d]]


# -- psi basis ---------------------------------------------------------------

@dataclass
class PsiBasis:
    params: BetaParams
    nu: int
    normalized: bool
    functions: list[PiecewisePoly]


def make_psi_basis(params: BetaParams, nu: int, normalized: bool = True) -> PsiBasis:
    """The 2*nu basis functions: psi_{2s+1} = c_s B_s on [0,1] and
    psi_{2s+2} = c_s (beta/a1) B_s(beta x / a1) on [0, a1/beta], s < nu.

    normalized=True divides by the L1 norm of B_s, which is rational only
    for s <= 1 (norms 1 and 1/4); hence it requires nu <= 2."""
    if nu < 1:
        raise ValueError("nu must be >= 1")
    if normalized and nu > 2:
        raise ValueError("normalized basis requires nu <= 2 "
                         "(L1 norms of higher Bernoulli polynomials are irrational)")
    beta = params.beta()
    a1 = params.a1
    cut = beta.inverse() * a1  # a1/beta
    funcs = []
    for s in range(nu):
        bs = bernoulli_polynomial(params, s)
        factor = params.one()
        if normalized:
            factor = QuadNum(Fraction(4) if s == 1 else Fraction(1), 0, params)
        odd = PiecewisePoly.from_polynomial(bs.scaled(factor))
        ratio = beta / a1
        even_poly = bs.compose_affine(ratio, params.zero()).scaled(factor * ratio)
        even = PiecewisePoly.on_interval(even_poly, params.zero(), cut)
        funcs.extend([odd, even])
    return PsiBasis(params=params, nu=nu, normalized=normalized, functions=funcs)


def expand_in_basis(g: PiecewisePoly, basis: PsiBasis) -> list[QuadNum]:
    """Exact coordinates of g in span{psi_1,...,psi_2nu}.

    Exploits the triangular structure: on (a1/beta, 1) only the odd basis
    functions are supported and they are graded by degree; the even part is
    then graded by degree on (0, a1/beta). Raises if g is not in the span."""
    params = basis.params
    nu = basis.nu
    cut = params.beta().inverse() * params.a1
    zero = params.zero()

    def poly_coeff(poly: Polynomial, deg: int) -> QuadNum:
        return poly.coeffs[deg] if deg < len(poly.coeffs) else zero

    # odd coordinates from the rightmost region
    right_piece = g._piece_on(cut, params.one())
    odd = [zero] * nu
    residual = right_piece
    for s in range(nu - 1, -1, -1):
        lead = poly_coeff(residual, s)
        basis_poly = basis.functions[2 * s].pieces[-1]
        coeff = lead / poly_coeff(basis_poly, s)
        odd[s] = coeff
        residual = residual - basis_poly.scaled(coeff)
    h = g
    for s in range(nu):
        if not odd[s].is_zero():
            h = h - basis.functions[2 * s].scaled(odd[s])
    # even coordinates from the region just right of 0
    left_piece = h._piece_on(zero, cut)
    even = [zero] * nu
    residual = left_piece
    for s in range(nu - 1, -1, -1):
        lead = poly_coeff(residual, s)
        basis_poly = basis.functions[2 * s + 1]._piece_on(zero, cut)
        coeff = lead / poly_coeff(basis_poly, s)
        even[s] = coeff
        residual = residual - basis_poly.scaled(coeff)
    for s in range(nu):
        if not even[s].is_zero():
            h = h - basis.functions[2 * s + 1].scaled(even[s])
    if not h.is_zero():
        raise ValueError("function is not in the span of the psi basis")
    coords = []
    for s in range(nu):
        coords.extend([odd[s], even[s]])
    return coords


@dataclass
class RestrictionMatrix:
    nu: int
    entries: Matrix  # column j holds the psi-expansion of P(psi_j)


def restriction_matrix(basis: PsiBasis) -> RestrictionMatrix:
    """Matrix of the transfer operator on the psi span (columns exact)."""
    n = 2 * basis.nu
    cols = [expand_in_basis(apply_transfer(f), basis) for f in basis.functions]
    entries = [[cols[j][i] for j in range(n)] for i in range(n)]
    return RestrictionMatrix(nu=basis.nu, entries=entries)


def block_matrix(params: BetaParams, k: int) -> Matrix:
    """The k-th 2x2 diagonal block of the restriction matrix."""
    beta = params.beta()
    binv = beta.inverse()
    return [
        [binv ** k * params.a0, params.rational(Fraction(1, params.a1 ** (k - 1)))],
        [binv ** (2 * k) * params.a1 ** k, params.zero()],
    ]


def block_eigenvalues(params: BetaParams, nu: int) -> list[QuadNum]:
    """Closed-form eigenvalues beta^{1-k}, -a1*beta^{-k-1} for k = 1..nu,
    each verified exactly against the characteristic polynomial of its block."""
    if nu < 1:
        raise ValueError("nu must be >= 1")
    beta = params.beta()
    binv = beta.inverse()
    out = []
    for k in range(1, nu + 1):
        lam_odd = binv ** (k - 1)
        lam_even = -(binv ** (k + 1)) * params.a1
        blk = block_matrix(params, k)
        tr = blk[0][0] + blk[1][1]
        det = blk[0][0] * blk[1][1] - blk[0][1] * blk[1][0]
        for lam in (lam_odd, lam_even):
            if not (lam * lam - tr * lam + det).is_zero():
                raise AssertionError("eigenvalue fails characteristic identity at k=%d" % k)
        out.extend([lam_odd, lam_even])
    return out


# -- eigenfunctions and Riesz projections (nu = 2) -----------------------------

def make_u_tilde(params: BetaParams) -> tuple[PiecewisePoly, PiecewisePoly, PiecewisePoly]:
    """The eigenfunctions u1 (invariant density), u2, u3 as combinations of
    psi_1..psi_4."""
    basis = make_psi_basis(params, 2, normalized=True)
    psi1, psi2, psi3, psi4 = basis.functions
    beta = params.beta()
    a0, a1 = params.a0, params.a1
    b2 = beta * beta
    den = (b2 + a1).inverse()
    u1 = combine([(b2 * den, psi1), (den * a1, psi2)])
    u2 = combine([(den * a1, psi1), (-(den * a1), psi2)])
    c = (beta * (2 * a0 * a1)) / ((beta + a1) * (b2 + a1))
    u3 = combine([
        (-c, psi1),
        (c, psi2),
        (b2 * den, psi3),
        (beta.inverse() * (a1 * a1) * den, psi4),
    ])
    return u1, u2, u3


def _pi1(params: BetaParams) -> Matrix:
    b2 = params.beta() ** 2
    den = (b2 + params.a1).inverse()
    a = b2 * den
    b = den * params.a1
    return [[a, a], [b, b]]


def _pi2(params: BetaParams) -> Matrix:
    b2 = params.beta() ** 2
    den = (b2 + params.a1).inverse()
    a = den * params.a1
    b = b2 * den
    return [[a, -b], [-a, b]]


def _block_b(params: BetaParams) -> Matrix:
    c = (params.beta().inverse() ** 3) * (2 * params.a0 * params.a1)
    z = params.zero()
    return [[-c, z], [c, z]]


def _embed4(params: BetaParams, top_left: Matrix | None, top_right: Matrix | None,
            bottom_right: Matrix | None) -> Matrix:
    m = mat_zero(params, 4)
    if top_left is not None:
        for i in range(2):
            for j in range(2):
                m[i][j] = top_left[i][j]
    if top_right is not None:
        for i in range(2):
            for j in range(2):
                m[i][j + 2] = top_right[i][j]
    if bottom_right is not None:
        for i in range(2):
            for j in range(2):
                m[i + 2][j + 2] = bottom_right[i][j]
    return m


@dataclass
class SpectralData:
    """nu=2 spectral payload: eigenvalues, Riesz projections and the
    eigenfunctions they encode."""

    params: BetaParams
    eigenvalues: list[QuadNum]
    pi1: Matrix
    pi2: Matrix
    pi3: Matrix
    u_tilde: tuple[PiecewisePoly, PiecewisePoly, PiecewisePoly]

    @property
    def projections(self) -> list[Matrix]:
        return [self.pi1, self.pi2, self.pi3]


def riesz_projections(params: BetaParams) -> SpectralData:
    """Projections onto the eigenvalues 1, -a1/beta^2, 1/beta of the 4x4
    restriction matrix; the starred block of the second projection is
    computed explicitly so projection algebra can be verified exactly."""
    beta = params.beta()
    a1 = params.a1
    eigs = block_eigenvalues(params, 2)
    lam2 = eigs[1]
    blk_c = block_matrix(params, 2)
    pi1 = _embed4(params, _pi1(params), None, None)
    # starred block of Pi2: pi2 * B * (lam2*I - C)^{-1}
    lam2_minus_c = mat_sub(mat_scale(mat_eye(params, 2), lam2), blk_c)
    star = mat_mul(mat_mul(_pi2(params), _block_b(params)), mat_inv2(lam2_minus_c))
    pi2 = _embed4(params, _pi2(params), star, None)
    # Pi3 from the explicit display
    b2 = beta * beta
    den = (b2 + a1).inverse()
    dd = ((beta + a1) * (b2 + a1)).inverse()
    c01 = beta * (2 * params.a0 * a1) * dd
    c02 = b2 * (2 * params.a0) * dd
    pi3_tr = [[-c01, -c02], [c01, c02]]
    pi3_br = [[b2 * den, beta * b2 * den / a1],
              [beta.inverse() * (a1 * a1) * den, den * a1]]
    pi3 = _embed4(params, None, pi3_tr, pi3_br)
    return SpectralData(params=params, eigenvalues=eigs, pi1=pi1, pi2=pi2, pi3=pi3,
                        u_tilde=make_u_tilde(params))


@dataclass
class DecayReport:
    """Residual history of P^r psi_m against its leading-term prediction."""

    m: int
    r: int
    iterate: PiecewisePoly
    residual: PiecewisePoly
    sup_brackets: list[tuple[float, float]]  # residual bracket after each step
    per_step_ratios: list[float]


def psi_iterate_decay(params: BetaParams, m: int, r: int,
                      samples_per_piece: int = 32) -> DecayReport:
    """Exact P^r psi_m and certified residual brackets against the predicted
    leading behavior: u1 for m=1, beta^{-r} u3 for m=3, zero for m=4."""
    if m not in (1, 3, 4):
        raise ValueError("m must be one of 1, 3, 4")
    if r < 1:
        raise ValueError("r must be >= 1")
    basis = make_psi_basis(params, 2, normalized=True)
    u1, u2, u3 = make_u_tilde(params)
    binv = params.beta().inverse()
    f = basis.functions[m - 1]
    brackets = []
    cur = f
    for step in range(1, r + 1):
        cur = apply_transfer(cur)
        if m == 1:
            resid = cur - u1
        elif m == 3:
            resid = cur - u3.scaled(binv ** step)
        else:
            resid = cur
        brackets.append(resid.sup_norm_bracket(samples_per_piece))
    ratios = [b[1] / a[1] if a[1] > 0 else float("nan")
              for a, b in zip(brackets, brackets[1:])]
    return DecayReport(m=m, r=r, iterate=cur, residual=resid,
                       sup_brackets=brackets, per_step_ratios=ratios)
