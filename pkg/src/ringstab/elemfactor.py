"""Generalized elementary factors of a SISO plant and comaximality witnesses.

For a plant p with canonical representation n/d the two factor sets are

    L1 = {lam in A : lam * d/n in A},     L2 = {lam in A : lam * n/d in A}.

Both are ideals of A.  A WitnessPair certifies L1 + L2 = A by exhibiting
lam1 in L1, lam2 in L2 and u, v in A with u*lam1 + v*lam2 = 1; every pair is
re-verified on construction.  Construction strategies:

* quadratic fast path: write p = (a + b*w)/den with norm N = a^2 + m*b^2;
  the integers N/gcd(N, den) and den always satisfy the memberships, and when
  they are coprime over Z an integer Bezout pair finishes the job.  They need
  not be coprime (e.g. (7+sqrt(5)i)/6 gives the pair (9, 6)), in which case
  the spiral box search below takes over.
* quadratic box search: enumerate lam over an origin-centered box and take
  the first lam with lam in L1 and 1 - lam in L2.
* delay construction: divide out the gcd of the in-ring representation
  (normalized to constant term 1; the canonical representation keeps its
  degree at most 1), re-inflate the reduced denominator by a multiplier
  1 + s*x + c*s^2*x^2 (s the gcd slope, c from a fixed constant sequence)
  until it is coprime to the numerator, take the minimal-degree Bezout
  cofactors, and repair their degree-1 coefficients with a degree-1 shift
  along the Bezout identity.
* delay linear-system search: solve the membership conditions for
  lam1, lam2 = 1 - lam1 directly as one exact linear system of bounded degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Optional, Union

from .exact import Poly, RatMatrix, ext_gcd_int, ext_gcd_poly, poly_divmod, poly_gcd, solve_linear
from .rings import RingElement, TransferFunction, causal_representation, contains

DEFAULT_SEARCH_BOX = 128
DEFAULT_SEARCH_DEGREE = 8


def _multiplier_constants():
    # 2/k^2 for k = 3, 4, 5, ...; only finitely many constants collide with a
    # root of the numerator, so the scan terminates.
    k = 3
    while True:
        yield Fraction(2, k * k)
        k += 1


class Which(Enum):
    I1 = "I1"
    I2 = "I2"


@dataclass(frozen=True)
class LambdaSet:
    """Membership predicate for one generalized factor ideal of a plant."""

    plant: TransferFunction
    which: Which


def lambda_member(lam: RingElement, lset: LambdaSet) -> bool:
    """Exact membership test; delegates to ring membership of lam*d/n or lam*n/d."""
    p = lset.plant
    if lset.which == Which.I1:
        if p.is_zero():
            raise ValueError("plant numerator is zero; the first factor set is degenerate")
        ratio = lam.to_tf() / p
    else:
        ratio = lam.to_tf() * p
    return contains(ratio) is not None


@dataclass(frozen=True)
class QuadraticTrace:
    """Data of the quadratic fast path."""

    num_re: int
    num_im: int
    den: int
    num_norm: int           # num_re^2 + m*num_im^2
    norm_den_gcd: int       # gcd(num_norm, den)
    norm_cofactor: int      # num_norm // norm_den_gcd; the first witness

    def __post_init__(self):
        if self.norm_den_gcd * self.norm_cofactor != self.num_norm:
            raise ValueError("trace inconsistency: cofactor * gcd != norm")
        if gcd(self.num_norm, self.den) != self.norm_den_gcd:
            raise ValueError("trace inconsistency: recorded gcd is wrong")


@dataclass(frozen=True)
class DelayTrace:
    """Data of the delay-ring construction."""

    gcd: Poly                     # gcd(n, d) over Q[x], constant term 1
    gcd_slope: Fraction           # its x^1 coefficient
    multiplier_constant: Fraction
    multiplier: Poly              # 1 + slope*x + constant*slope^2*x^2
    num_reduced: Poly             # n / gcd
    den_reduced: Poly             # d / gcd
    num_inflated: Poly            # num_reduced * multiplier
    den_inflated: Poly            # den_reduced * multiplier; the second witness
    cof_num: Poly                 # cof_num*n + cof_den*den_inflated = 1
    cof_den: Poly
    shift: Poly                   # degree-1 shift repairing the cofactors
    cof_num0: Fraction
    cof_num1: Fraction
    cof_den0: Fraction
    cof_den1: Fraction


@dataclass(frozen=True)
class SearchTrace:
    """Provenance of a witness found by search rather than construction."""

    method: str
    bound: int


@dataclass(frozen=True)
class WitnessPair:
    """lam1 in L1, lam2 in L2 with u*lam1 + v*lam2 = 1, all re-verified."""

    plant: TransferFunction
    lam1: RingElement
    lam2: RingElement
    u: RingElement
    v: RingElement
    trace: Union[QuadraticTrace, DelayTrace, SearchTrace]

    def __post_init__(self):
        desc = self.plant.descriptor
        if not lambda_member(self.lam1, LambdaSet(self.plant, Which.I1)):
            raise ValueError("lam1 fails first factor membership")
        if not lambda_member(self.lam2, LambdaSet(self.plant, Which.I2)):
            raise ValueError("lam2 fails second factor membership")
        if self.u * self.lam1 + self.v * self.lam2 != RingElement.one(desc):
            raise ValueError("Bezout identity u*lam1 + v*lam2 = 1 fails")


def construct_witnesses_quadratic(p: TransferFunction) -> Optional[WitnessPair]:
    """Fast-path witnesses for a quadratic-ring plant outside A.

    Returns None when the integer pair (N/g, beta) is not coprime; the caller
    falls back to the box search.
    """
    desc = p.descriptor
    if not desc.is_quadratic:
        raise ValueError("quadratic construction on a non-quadratic plant")
    if contains(p) is not None:
        raise ValueError("plant lies in A; synthesis uses the trivial controller instead")
    num_re, num_im = int(p.num.re), int(p.num.im)
    den = int(p.den.re)
    num_norm = num_re * num_re + desc.m * num_im * num_im
    shared = gcd(num_norm, den)
    cofactor = num_norm // shared
    if gcd(cofactor, den) != 1:
        return None
    _, u, v = ext_gcd_int(cofactor, den)
    trace = QuadraticTrace(
        num_re=num_re, num_im=num_im, den=den,
        num_norm=num_norm, norm_den_gcd=shared, norm_cofactor=cofactor,
    )
    return WitnessPair(
        plant=p,
        lam1=RingElement.quad(desc, cofactor),
        lam2=RingElement.quad(desc, den),
        u=RingElement.quad(desc, u),
        v=RingElement.quad(desc, v),
        trace=trace,
    )


def _box_spiral(box: int):
    """(u, v) ordered by Chebyshev shell, lexicographically inside each shell."""
    for shell in range(box + 1):
        if shell == 0:
            yield (0, 0)
            continue
        for u in range(-shell, shell + 1):
            if abs(u) == shell:
                for v in range(-shell, shell + 1):
                    yield (u, v)
            else:
                yield (u, -shell)
                yield (u, shell)


def search_witnesses_quadratic(p: TransferFunction, box: int = DEFAULT_SEARCH_BOX) -> Optional[WitnessPair]:
    """First lam = u + v*w in the spiral with lam in L1 and 1 - lam in L2.

    The scan runs on integer congruences (divisibility of the components of
    lam*conj(num)*beta by N and of (1-lam)*num by beta); the returned pair is
    re-verified through the exact membership predicate on construction.
    """
    desc = p.descriptor
    m = desc.m
    a1, a2 = int(p.num.re), int(p.num.im)
    beta = int(p.den.re)
    n_norm = a1 * a1 + m * a2 * a2
    one = RingElement.one(desc)
    for u, v in _box_spiral(box):
        c1 = beta * (u * a1 + m * v * a2)
        c2 = beta * (v * a1 - u * a2)
        if c1 % n_norm or c2 % n_norm:
            continue
        t1 = (1 - u) * a1 + m * v * a2
        t2 = (1 - u) * a2 - v * a1
        if t1 % beta or t2 % beta:
            continue
        lam = RingElement.quad(desc, u, v)
        return WitnessPair(
            plant=p, lam1=lam, lam2=one - lam, u=one, v=one, trace=SearchTrace("box_spiral", box)
        )
    return None


def construct_witnesses_delay(
    p: TransferFunction,
    representation: Optional[tuple[RingElement, RingElement]] = None,
) -> Optional[WitnessPair]:
    """Delay-ring witnesses via the gcd/multiplier/Bezout-shift construction.

    ``representation`` may supply an explicit pair (n, d) with p = n/d, both
    in A and d outside Z; by default the canonical inflated representation is
    used (its gcd always has degree <= 1).  Returns None when deg gcd(n, d)
    exceeds 1, which only happens for explicitly supplied representations;
    the linear-system search is the fallback.
    """
    desc = p.descriptor
    if not desc.is_delay:
        raise ValueError("delay construction on a non-delay plant")
    if contains(p) is not None:
        raise ValueError("plant lies in A; synthesis uses the trivial controller instead")
    if representation is None:
        representation = causal_representation(p)
        if representation is None:
            raise ValueError("plant is not causal")
    n_el, d_el = representation
    n, d = n_el.value, d_el.value
    if TransferFunction.make(desc, n, d) != p:
        raise ValueError("representation does not equal the plant")

    common = poly_gcd(n, d)
    if common(0) == 0:
        raise ValueError("gcd has zero constant term; denominator is not outside Z")
    common = common.scale(1 / common(0))
    if common.degree > 1:
        return None
    slope = common.coeff(1)
    num_red, rem = poly_divmod(n, common)
    assert rem.is_zero()
    den_red, rem = poly_divmod(d, common)
    assert rem.is_zero()

    if slope == 0:
        constant = Fraction(0)
        mult = Poly.one()
        den_infl = d
        num_infl = n
    else:
        for constant in _multiplier_constants():
            mult = Poly.from_list([Fraction(1), slope, constant * slope * slope])
            den_infl = den_red * mult
            if poly_gcd(n, den_infl).degree == 0:
                break
        num_infl = num_red * mult
    assert den_infl.coeff(1) == 0 and num_infl.coeff(1) == 0

    one, cof_num, cof_den = ext_gcd_poly(n, den_infl)
    assert one == Poly.one(), "witnesses must be coprime after the multiplier scan"
    shift_slope = cof_num.coeff(0) * cof_den.coeff(1) - cof_num.coeff(1) * cof_den.coeff(0)
    shift = Poly.from_list([Fraction(0), shift_slope])
    u = cof_num + shift * den_infl
    v = cof_den - shift * n
    assert u.coeff(1) == 0 and v.coeff(1) == 0, "degree-1 coefficients must cancel"

    trace = DelayTrace(
        gcd=common,
        gcd_slope=slope,
        multiplier_constant=constant,
        multiplier=mult,
        num_reduced=num_red,
        den_reduced=den_red,
        num_inflated=num_infl,
        den_inflated=den_infl,
        cof_num=cof_num,
        cof_den=cof_den,
        shift=shift,
        cof_num0=cof_num.coeff(0),
        cof_num1=cof_num.coeff(1),
        cof_den0=cof_den.coeff(0),
        cof_den1=cof_den.coeff(1),
    )
    return WitnessPair(
        plant=p,
        lam1=RingElement(desc, n),
        lam2=RingElement(desc, den_infl),
        u=RingElement(desc, u),
        v=RingElement(desc, v),
        trace=trace,
    )


def search_witnesses_delay(p: TransferFunction, deg_bound: int = DEFAULT_SEARCH_DEGREE) -> Optional[WitnessPair]:
    """Linear-system fallback: lam in L1 with 1 - lam in L2, degree <= bound.

    Memberships are linear: lam*d = mu*n and (1-lam)*n = nu*d with mu, nu in
    A.  One exact solve over all coefficients (x^1 coefficients pinned to 0)
    either produces a pair or proves none exists within the bound.
    """
    desc = p.descriptor
    if not desc.is_delay:
        raise ValueError("delay search on a non-delay plant")
    rep = causal_representation(p)
    if rep is None:
        raise ValueError("plant is not causal")
    n, d = rep[0].value, rep[1].value

    deg_mu = deg_bound + d.degree - n.degree
    deg_nu = deg_bound + n.degree - d.degree
    blocks = [("lam", deg_bound)]
    if deg_mu >= 0:
        blocks.append(("mu", deg_mu))
    if deg_nu >= 0:
        blocks.append(("nu", deg_nu))
    positions = [
        (name, j) for name, deg in blocks for j in range(deg + 1) if j != 1
    ]

    def col(name: str, j: int, k: int, eq: str) -> Fraction:
        # coefficient of unknown (name, j) in equation row (eq, k)
        if eq == "first":  # lam*d - mu*n = 0
            if name == "lam":
                return d.coeff(k - j)
            if name == "mu":
                return -n.coeff(k - j)
            return Fraction(0)
        # eq == "second": lam*n + nu*d = n
        if name == "lam":
            return n.coeff(k - j)
        if name == "nu":
            return d.coeff(k - j)
        return Fraction(0)

    rows = []
    rhs = []
    deg_first = deg_bound + d.degree
    deg_second = max(deg_bound + n.degree, n.degree)
    for k in range(deg_first + 1):
        rows.append([col(name, j, k, "first") if k >= j else Fraction(0) for name, j in positions])
        rhs.append(Fraction(0))
    for k in range(deg_second + 1):
        rows.append([col(name, j, k, "second") if k >= j else Fraction(0) for name, j in positions])
        rhs.append(n.coeff(k))
    sol = solve_linear(RatMatrix.from_rows(rows), rhs)
    if sol is None:
        return None
    lam_coeffs = [Fraction(0)] * (deg_bound + 1)
    for (name, j), value in zip(positions, sol):
        if name == "lam":
            lam_coeffs[j] = value
    lam = RingElement(desc, Poly.from_list(lam_coeffs))
    one = RingElement.one(desc)
    return WitnessPair(
        plant=p,
        lam1=lam,
        lam2=one - lam,
        u=one,
        v=one,
        trace=SearchTrace("linear_system", deg_bound),
    )
