"""Closed-loop matrix, stability predicate, and the Z[sqrt(5)i] parameterization.

The feedback interconnection of plant p and controller c is summarized by

    H(p, c) = [[ (1+pc)^-1,      -p*(1+pc)^-1 ],
               [ c*(1+pc)^-1,     (1+pc)^-1   ]]

(well-posed when 1 + p*c != 0); the loop is stable exactly when all four
entries lie in A.  This sign convention is pinned by the classical worked
example: p = (1+sqrt(5)i)/2 with c = (-1+sqrt(5)i)/2 gives

    H0 = [[-2, 1+sqrt(5)i], [1-sqrt(5)i, -2]].

For that plant the full set of achievable stable H's is an affine family in
four ring parameters q11, q12, q21, q22; the family is reproduced here and
each member H with nonzero diagonal yields its controller back as h21/h11.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import RingElement, TransferFunction, contains, quadratic


@dataclass(frozen=True)
class FeedbackMatrix:
    """2x2 closed-loop matrix with cached well-posedness and stability flags."""

    h11: TransferFunction
    h12: TransferFunction
    h21: TransferFunction
    h22: TransferFunction
    well_posed: bool
    stable: bool

    def entries(self) -> list[TransferFunction]:
        return [self.h11, self.h12, self.h21, self.h22]


def feedback_matrix(p: TransferFunction, c: TransferFunction) -> FeedbackMatrix:
    """H(p, c) by exact field arithmetic; raises if the loop is ill-posed."""
    one = TransferFunction.one(p.descriptor)
    ret = one + p * c
    if ret.is_zero():
        raise ZeroDivisionError("ill-posed loop: 1 + p*c = 0")
    h = ret.inverse()
    h11 = h
    h12 = -(p * h)
    h21 = c * h
    h22 = h
    stable = all(contains(e) is not None for e in (h11, h12, h21, h22))
    return FeedbackMatrix(h11, h12, h21, h22, well_posed=True, stable=stable)


def is_stable(p: TransferFunction, c: TransferFunction) -> bool:
    """True iff the loop is well-posed and every entry of H(p, c) lies in A."""
    one = TransferFunction.one(p.descriptor)
    if (one + p * c).is_zero():
        return False
    return feedback_matrix(p, c).stable


@dataclass(frozen=True)
class ParamMatrixQ:
    """Free 2x2 parameter over Z[sqrt(5)i] for the worked-example family."""

    q11: RingElement
    q12: RingElement
    q21: RingElement
    q22: RingElement

    @staticmethod
    def zero() -> "ParamMatrixQ":
        desc = quadratic(5)
        z = RingElement.zero(desc)
        return ParamMatrixQ(z, z, z, z)


def classical_loop_family(q: ParamMatrixQ) -> FeedbackMatrix:
    """The affine family of stable closed loops for p = (1+sqrt(5)i)/2.

    h11 = h22 = 3w*q12 - 2w*q21 + 6*q11 - 3*q12 - 2*q21 + 6*q22 - 2
    h12 = -3w*q11 + 2w*q21 - 3w*q22 + w - 3*q11 + 9*q12 - 4*q21 - 3*q22 + 1
    h21 = 2w*q11 - 2w*q12 + 2w*q22 - w - 2*q11 - 4*q12 + 4*q21 - 2*q22 + 1

    with w = sqrt(5)i.  Entries lie in A by construction, so the matrix is
    always stable; the well-posed flag records h11 != 0 and h22 != 0.
    """
    desc = quadratic(5)
    w = RingElement.quad(desc, 0, 1)

    def lin(cw11, cw12, cw21, cw22, c11, c12, c21, c22, const_re, const_im):
        acc = RingElement.quad(desc, const_re, const_im)
        for coeff, qq in ((cw11, q.q11), (cw12, q.q12), (cw21, q.q21), (cw22, q.q22)):
            if coeff:
                acc = acc + w * qq * RingElement.quad(desc, coeff)
        for coeff, qq in ((c11, q.q11), (c12, q.q12), (c21, q.q21), (c22, q.q22)):
            if coeff:
                acc = acc + qq * RingElement.quad(desc, coeff)
        return acc

    h11 = lin(0, 3, -2, 0, 6, -3, -2, 6, -2, 0)
    h12 = lin(-3, 0, 2, -3, -3, 9, -4, -3, 1, 1)
    h21 = lin(2, -2, 0, 2, -2, -4, 4, -2, 1, -1)
    h22 = h11
    nonzero_diag = not h11.is_zero()
    return FeedbackMatrix(
        h11.to_tf(), h12.to_tf(), h21.to_tf(), h22.to_tf(),
        well_posed=nonzero_diag,
        stable=True,
    )


def extract_controller(h: FeedbackMatrix) -> TransferFunction:
    """h21/h11 (equal to h21/h22); requires nonzero diagonal entries."""
    if h.h11.is_zero() or h.h22.is_zero():
        raise ZeroDivisionError("controller extraction requires h11 and h22 nonzero")
    c1 = h.h21 / h.h11
    c2 = h.h21 / h.h22
    assert c1 == c2, "h21/h11 and h21/h22 must agree"
    return c1
