"""Classical instances used across the test-suite and documentation.

Everything here is exact data transcribed from the literature: the dihedral
Robinson variant, the symmetric quartic with its published rational
certificate, the Choi-Lam biquadratic decomposition, and the Sottile quartic.
"""

from __future__ import annotations

from fractions import Fraction

from .certificates import CertBlock, Certificate
from .equivariants import PiMatrix
from .invariants import InvariantPoly, symmetric_presentation
from .poly import Polynomial, parse_polynomial


ROBINSON_D4_TEXT = "x^6+y^6-x^4*y^2-x^2*y^4-x^4-y^4-x^2-y^2+3*x^2*y^2+1"
S3_QUARTIC_TEXT = "x^4+y^4+z^4-4*x*y*z+x+y+z"


def robinson_dihedral() -> Polynomial:
    """Dehomogenized Robinson form, invariant under the planar dihedral group."""
    return parse_polynomial(ROBINSON_D4_TEXT, ["x", "y"])


def symmetric_quartic() -> Polynomial:
    """The S3-invariant quartic whose SOS bound equals its global minimum."""
    return parse_polynomial(S3_QUARTIC_TEXT, ["x", "y", "z"])


def s3_published_certificate() -> Certificate:
    """The published rational certificate f + 2113/1000 = S1 + <S3, Pi3>.

    Grams are transcribed literally; the trivial block runs over the
    weighted-degree-2 monomials (1, e1, e2, e1^2) and the standard block over
    ((1, e1), (1)).
    """
    pres = symmetric_presentation(3)
    enames = ["e1", "e2", "e3"]

    def ip(text: str) -> InvariantPoly:
        return InvariantPoly(3, {0: parse_polynomial(text, enames)})

    g1 = [
        [Fraction(2113, 1000), Fraction(1, 2), Fraction(79, 94), Fraction(-233, 496)],
        [Fraction(1, 2), Fraction(13261, 34968), Fraction(-560, 11511), Fraction(-74, 1279)],
        [Fraction(79, 94), Fraction(-560, 11511), Fraction(1439, 2454), Fraction(-85469, 377916)],
        [Fraction(-233, 496), Fraction(-74, 1279), Fraction(-85469, 377916), Fraction(85, 693)],
    ]
    rows1 = [[(0, 0, 0), (1, 0, 0), (0, 1, 0), (2, 0, 0)]]
    pi1 = PiMatrix("theta1", [[ip("1")]])
    g3 = [
        [Fraction(79, 282), Fraction(37, 1279), Fraction(-2, 9)],
        [Fraction(37, 1279), Fraction(304, 693), Fraction(749, 1636)],
        [Fraction(-2, 9), Fraction(749, 1636), Fraction(3469, 4908)],
    ]
    rows3 = [[(0, 0, 0), (1, 0, 0)], [(0, 0, 0)]]
    pi3 = PiMatrix("theta3", [
        [ip("2*e1^2 - 6*e2"), ip("-1*e1*e2 + 9*e3")],
        [ip("-1*e1*e2 + 9*e3"), ip("2*e2^2 - 6*e1*e3")],
    ])
    return Certificate("invariant", "symmetric:3", ["x", "y", "z"],
                       Fraction(-2113, 1000), exact=True, pres=pres,
                       blocks=[CertBlock("theta1", rows1, g1, pi1),
                               CertBlock("theta3", rows3, g3, pi3)])


# -- Choi-Lam biquadratic fixture -----------------------------------------------------


CHOI_VARS = ["x1", "x2", "x3", "y1", "y2", "y3"]


def choi_biquadratic() -> Polynomial:
    """B(x; y): nonnegative, invariant under a 96-element group, not SOS."""
    return parse_polynomial(
        "x1^2*y1^2 + x2^2*y2^2 + x3^2*y3^2"
        " - 2*x1*x2*y1*y2 - 2*x2*x3*y2*y3 - 2*x3*x1*y3*y1"
        " + x1^2*y2^2 + x2^2*y3^2 + x3^2*y1^2", CHOI_VARS)


def choi_multiplier() -> Polynomial:
    return parse_polynomial("x1^2+x2^2+x3^2+y1^2+y2^2+y3^2", CHOI_VARS)


def choi_group_generators():
    """The six published generators of the 96-element symmetry group."""
    from fractions import Fraction as F

    def perm_sign(images):
        # images: list of (index, sign) per coordinate: e_i -> sign * e_index
        m = [[F(0)] * 6 for _ in range(6)]
        for i, (j, s) in enumerate(images):
            m[j][i] = F(s)
        return m

    return [
        perm_sign([(0, -1), (1, 1), (2, 1), (3, -1), (4, 1), (5, 1)]),
        perm_sign([(0, 1), (1, -1), (2, 1), (3, 1), (4, -1), (5, 1)]),
        perm_sign([(0, 1), (1, 1), (2, -1), (3, 1), (4, 1), (5, -1)]),
        perm_sign([(0, 1), (1, 1), (2, 1), (3, -1), (4, -1), (5, -1)]),
        # (x1,x2,x3,y1,y2,y3) -> (x3,x1,x2,y3,y1,y2): e_{x1} -> e_{x2} etc.
        perm_sign([(1, 1), (2, 1), (0, 1), (4, 1), (5, 1), (3, 1)]),
        # -> (y3,y2,y1,x3,x2,x1)
        perm_sign([(5, 1), (4, 1), (3, 1), (2, 1), (1, 1), (0, 1)]),
    ]


def choi_decomposition():
    """Published vectors and Gram blocks with sum_j v_1j^T Q1 v_1j + ... = mB."""
    h = Fraction(1, 2)
    q1 = [[1, -h, -h], [-h, 1, -h], [-h, -h, 1]]
    q2 = [[1, -1, h, -h], [-1, 1, -h, h], [h, -h, 1, -1], [-h, h, -1, 1]]

    def pv(*texts):
        return [parse_polynomial(t, CHOI_VARS) for t in texts]

    v1 = [
        pv("x3*y1*y2", "x2*y1*y3", "x1*y2*y3"),
        pv("x2*x3*y1", "x1*x3*y2", "x1*x2*y3"),
    ]
    v2 = [
        pv("x2*y2*y3", "x3*y1^2", "x1*y1*y3", "x3*y3^2"),
        pv("x1*y1*y2", "x2*y3^2", "x3*y2*y3", "x2*y2^2"),
        pv("x1*x2*y2", "x3^2*y1", "x1*x3*y3", "x1^2*y1"),
        pv("x1*x3*y1", "x2^2*y3", "x2*x3*y2", "x3^2*y3"),
        pv("x2*x3*y3", "x1^2*y2", "x1*x2*y1", "x2^2*y2"),
        pv("x3*y1*y3", "x1*y2^2", "x2*y1*y2", "x1*y1^2"),
    ]
    return q1, v1, q2, v2


# -- Sottile quartic ------------------------------------------------------------------


SOTTILE_VARS = ["s", "t", "u", "v"]


def sottile_quartic() -> Polynomial:
    """The S4-invariant quartic 16 e2^2 - 48 e1 e3 + 192 e4, expanded."""
    from .invariants import expand_invariants
    pres = symmetric_presentation(4)
    ft = InvariantPoly(4, {0: parse_polynomial("16*e2^2 - 48*e1*e3 + 192*e4",
                                               ["e1", "e2", "e3", "e4"])})
    return expand_invariants(ft, pres)


def sottile_two_squares() -> Polynomial:
    """12(uv+st-sv-tu)^2 + 12(1/sqrt(3) (uv+st+sv+tu-2vt-2us))^2, exactly."""
    a = parse_polynomial("u*v + s*t - s*v - t*u", SOTTILE_VARS)
    b = parse_polynomial("u*v + s*t + s*v + t*u - 2*v*t - 2*u*s", SOTTILE_VARS)
    return (a * a).scale(12) + (b * b).scale(Fraction(12, 3))
