"""Oriented circles as exact reduced triples and their Moebius geometry.

A Bianchi circle of the field with discriminant D is stored as the triple
(curv_red, cocurv_red, zeta): curvature and co-curvature are the integer
multiples of sqrt(-D) they always are, and the curvature-centre is i*zeta
with zeta in the ring.  The defining relation is

    norm(zeta) = 1 - D * curv_red * cocurv_red,

the exact form of the classical curvature/co-curvature/centre identity
b*b' = a*conj(a) - 1.  All products, intersection verdicts and tangency
points below are computed without floating point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import (
    InvalidCircleError,
    MixedDiscriminantError,
    NonUnitDeterminantError,
    NotAUnitError,
    NotCoprimeError,
    NotReducedError,
    NotTangentError,
    SearchExhaustedError,
)
from .intlin import lagrange_reduce, reduce_mod_kernel, solve_integer_system
from .moebius import Matrix2, ProjPoint
from .quadint import Discriminant, QuadInt, is_coprime


class OrientedCircle:
    """Reduced triple (curv_red, cocurv_red, zeta) of an oriented circle."""

    __slots__ = ("curv_red", "cocurv_red", "zeta")

    def __init__(self, curv_red: int, cocurv_red: int, zeta: QuadInt):
        if zeta.norm() != 1 - zeta.disc * curv_red * cocurv_red:
            raise InvalidCircleError(
                f"norm(zeta)={zeta.norm()} != 1 - {zeta.disc}*{curv_red}*{cocurv_red}"
            )
        self.curv_red = curv_red
        self.cocurv_red = cocurv_red
        self.zeta = zeta

    # -- basic structure --------------------------------------------------

    @property
    def disc(self) -> int:
        return self.zeta.disc

    def is_line(self) -> bool:
        return self.curv_red == 0

    def key(self) -> tuple[int, int, int, int, int]:
        return (self.disc, self.curv_red, self.cocurv_red, self.zeta.a, self.zeta.b)

    def unoriented_key(self) -> tuple[int, int, int, int, int]:
        k = self.key()
        n = (k[0], -k[1], -k[2], -k[3], -k[4])
        return k if k >= n else n

    def reversed(self) -> OrientedCircle:
        return OrientedCircle(-self.curv_red, -self.cocurv_red, -self.zeta)

    def same_unoriented(self, other: OrientedCircle) -> bool:
        return self.unoriented_key() == other.unoriented_key()

    def __eq__(self, other):
        return isinstance(other, OrientedCircle) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"OrientedCircle({self.curv_red}, {self.cocurv_red}, {self.zeta!r})"

    # -- exact geometry ---------------------------------------------------

    def center_coords(self) -> tuple[Fraction, Fraction]:
        """Centre as exact coordinates (s, t) over the basis (1, t).

        Only for proper circles; the centre is -zeta*sqrt(D)/(curv*D).
        """
        if self.curv_red == 0:
            raise ValueError("a line has no centre")
        num = -self.zeta * Discriminant(self.disc).sqrt_delta()
        den = self.curv_red * self.disc
        return Fraction(num.a, den), Fraction(num.b, den)

    def center_xy(self) -> tuple[Fraction, Fraction]:
        """Centre as (x, y) with y measured in units of Im(t) = sqrt(-D)/2."""
        s, t = self.center_coords()
        if self.disc % 4 == 1:
            return s + t / 2, t
        return s, t

    def radius_sq(self) -> Fraction:
        if self.curv_red == 0:
            raise ValueError("a line has no radius")
        return Fraction(1, self.curv_red * self.curv_red * (-self.disc))

    def translated(self, omega: QuadInt) -> OrientedCircle:
        """Image under z -> z + omega; same curvature, shifted centre."""
        if omega.disc != self.disc:
            raise MixedDiscriminantError(f"{omega.disc} vs {self.disc}")
        sd = Discriminant(self.disc).sqrt_delta()
        zeta = self.zeta - (omega * self.curv_red) * sd
        cocurv = self.cocurv_red + omega.norm() * self.curv_red + (omega * self.zeta.conj()).b
        return OrientedCircle(self.curv_red, cocurv, zeta)

    def times_unit(self, u: QuadInt) -> OrientedCircle:
        """Image under z -> u*z for a unit u (a rotation about 0)."""
        if not u.is_unit():
            raise NotAUnitError(str(u))
        return OrientedCircle(self.curv_red, self.cocurv_red, u * self.zeta)

    def gram(self) -> Matrix2:
        """The ring-valued Gram matrix [[b*sqrt(D), zeta], [-conj(zeta), b'*sqrt(D)]]."""
        ctx = Discriminant(self.disc)
        sd = ctx.sqrt_delta()
        return Matrix2(self.curv_red * sd, self.zeta, -self.zeta.conj(), self.cocurv_red * sd)

    def to_record(self) -> dict:
        return {
            "delta": self.disc,
            "curv": self.curv_red,
            "cocurv": self.cocurv_red,
            "zeta": [self.zeta.a, self.zeta.b],
        }

    @classmethod
    def from_record(cls, rec: dict) -> OrientedCircle:
        return cls(rec["curv"], rec["cocurv"], QuadInt(rec["zeta"][0], rec["zeta"][1], rec["delta"]))


def real_line(ctx: Discriminant) -> OrientedCircle:
    """The extended real line, positively oriented (zeta = 1)."""
    return OrientedCircle(0, 0, ctx.one())


def _reduced_curv(x: QuadInt) -> int:
    # i*(x - conj(x)) = i*x.b*sqrt(D) = -x.b*sqrt(-D), so the reduced value is -x.b
    return -x.b


def circle_from_matrix(m: Matrix2) -> OrientedCircle:
    """Oriented circle M(real line) via the exact curvature formulas.

    curvature  = i*(beta*conj(delta) - conj(beta)*delta)
    co-curv    = i*(alpha*conj(gamma) - conj(alpha)*gamma)
    centre     = i*(alpha*conj(delta) - gamma*conj(beta))
    """
    if not m.det().is_unit():
        raise NonUnitDeterminantError(f"det = {m.det()}")
    curv = _reduced_curv(m.beta * m.delta.conj())
    cocurv = _reduced_curv(m.alpha * m.gamma.conj())
    zeta = m.alpha * m.delta.conj() - m.gamma * m.beta.conj()
    return OrientedCircle(curv, cocurv, zeta)


def _from_gram(g: Matrix2) -> OrientedCircle:
    d = g.disc
    if d % 4 == 0:
        if g.alpha.a or g.delta.a or g.alpha.b % 2 or g.delta.b % 2:
            raise InvalidCircleError("Gram diagonal not in sqrt(D)Z")
        curv, cocurv = g.alpha.b // 2, g.delta.b // 2
    else:
        if g.alpha.b != -2 * g.alpha.a or g.delta.b != -2 * g.delta.a:
            raise InvalidCircleError("Gram diagonal not in sqrt(D)Z")
        curv, cocurv = -g.alpha.a, -g.delta.a
    return OrientedCircle(curv, cocurv, g.gamma)


def transform(m: Matrix2, c: OrientedCircle) -> OrientedCircle:
    """Image of the circle under the matrix, by Gram congruence.

    G -> adj(M)* G adj(M); independent of the unit determinant, so it
    agrees with congruence by the true inverse for any unit-det matrix.
    """
    if m.disc != c.disc:
        raise MixedDiscriminantError(f"{m.disc} vs {c.disc}")
    if not m.det().is_unit():
        raise NonUnitDeterminantError(f"det = {m.det()}")
    a = m.adjugate()
    g2 = a.conj_transpose() * c.gram() * a
    return _from_gram(g2)


def pedoe_product(c1: OrientedCircle, c2: OrientedCircle) -> Fraction:
    """Minkowski product of the circle vectors; cos of the meeting angle.

    In reduced coordinates: D*(b1*b2' + b1'*b2)/2 + Re(zeta1*conj(zeta2)),
    always a half-integer for Bianchi circles.  Self-product is 1.
    """
    if c1.disc != c2.disc:
        raise MixedDiscriminantError(f"{c1.disc} vs {c2.disc}")
    d = c1.disc
    cross = c1.curv_red * c2.cocurv_red + c1.cocurv_red * c2.curv_red
    w = c1.zeta * c2.zeta.conj()
    # Re(w) = w.a + w.b*Re(t) with Re(t) = trace(t)/2
    return Fraction(d * cross + 2 * w.a + (d % 4) * w.b, 2)


class IntersectionKind(enum.Enum):
    DISJOINT_NESTED = "disjoint-nested"
    DISJOINT_OUTSIDE = "disjoint-outside"
    EXTERNALLY_TANGENT = "externally-tangent"
    INTERNALLY_TANGENT = "internally-tangent"
    ORTHOGONAL = "orthogonal"
    UNIT_ANGLE = "unit-angle"
    CROSSING = "crossing"


@dataclass(frozen=True)
class Intersection:
    kind: IntersectionKind
    cosine: Fraction


def _nested_geometrically(c1: OrientedCircle, c2: OrientedCircle) -> bool:
    """Exact test: one closed disk strictly inside the other.

    Radii are rational multiples of each other, so d < |r1 - r2| needs no
    radicals: compare d^2 with r1^2 - 2*r1*r2 + r2^2 in the rationals.
    """
    if c1.is_line() or c2.is_line():
        return False
    x1, y1 = c1.center_xy()
    x2, y2 = c2.center_xy()
    dsq = (x1 - x2) ** 2 + (y1 - y2) ** 2 * Fraction(-c1.disc, 4)
    r1sq = c1.radius_sq()
    r2sq = c2.radius_sq()
    r1r2 = Fraction(1, abs(c1.curv_red * c2.curv_red) * (-c1.disc))
    return dsq < r1sq + r2sq - 2 * r1r2


def classify_intersection(c1: OrientedCircle, c2: OrientedCircle) -> Intersection:
    """Exact intersection type from the Pedoe product (plus centre data)."""
    p = pedoe_product(c1, c2)
    if p == -1:
        return Intersection(IntersectionKind.EXTERNALLY_TANGENT, p)
    if p == 1:
        return Intersection(IntersectionKind.INTERNALLY_TANGENT, p)
    if p == 0:
        return Intersection(IntersectionKind.ORTHOGONAL, p)
    if abs(p) == Fraction(1, 2):
        return Intersection(IntersectionKind.UNIT_ANGLE, p)
    if abs(p) < 1:
        return Intersection(IntersectionKind.CROSSING, p)
    if _nested_geometrically(c1, c2):
        return Intersection(IntersectionKind.DISJOINT_NESTED, p)
    return Intersection(IntersectionKind.DISJOINT_OUTSIDE, p)


def point_on_circle(c: OrientedCircle, p: ProjPoint) -> bool:
    """Exact incidence test b*N(X) + b'*N(Y) + m = 0.

    m is the integer with zeta*Y*conj(X) - conj(...) = m*sqrt(D).
    """
    if c.disc != p.disc:
        raise MixedDiscriminantError(f"{c.disc} vs {p.disc}")
    w = c.zeta * p.den * p.num.conj()
    return c.curv_red * p.num.norm() + c.cocurv_red * p.den.norm() + w.b == 0


def _bezout_system(alpha: QuadInt, beta: QuadInt):
    d = alpha.disc
    tr = d % 4
    t_const = d // 4 if tr == 0 else (d - 1) // 4
    a1, a2 = alpha.a, alpha.b
    b1, b2 = beta.a, beta.b
    # unknowns (c1, c2, d1, d2) for gamma = c1+c2*t, delta = d1+d2*t
    rows = [
        [-b1, -t_const * b2, a1, t_const * a2],
        [-b2, -(b1 + tr * b2), a2, a1 + tr * a2],
    ]
    return rows


def solve_bezout(alpha: QuadInt, beta: QuadInt) -> tuple[QuadInt, QuadInt]:
    """Deterministic minimal (gamma, delta) with alpha*delta - beta*gamma = 1."""
    alpha._check(beta)
    sol = solve_integer_system(_bezout_system(alpha, beta), [1, 0])
    if sol is None:
        raise NotCoprimeError(f"({alpha}, {beta}) not coprime")
    particular, kernel = sol
    v = reduce_mod_kernel(particular, kernel)
    gamma = QuadInt(v[0], v[1], alpha.disc)
    delta = QuadInt(v[2], v[3], alpha.disc)
    assert alpha * delta - beta * gamma == Discriminant(alpha.disc).one()
    return gamma, delta


def reduce_point(p: ProjPoint) -> ProjPoint:
    """Coprime representative of a projective point.

    The pairs (x, y) with x*den = y*num form a rank-2 Z-lattice whose
    shortest vectors are exactly the unit multiples of the reduced pair,
    so a tiny search over a Lagrange-reduced basis finds one.
    """
    d = p.disc
    if p.num.is_zero():
        return ProjPoint(QuadInt(0, 0, d), QuadInt(1, 0, d))
    if p.den.is_zero():
        return ProjPoint(QuadInt(1, 0, d), QuadInt(0, 0, d))
    tr = d % 4
    t_const = d // 4 if tr == 0 else (d - 1) // 4
    n1, n2 = p.num.a, p.num.b
    e1, e2 = p.den.a, p.den.b
    rows = [
        [e1, t_const * e2, -n1, -t_const * n2],
        [e2, e1 + tr * e2, -n2, -(n1 + tr * n2)],
    ]
    sol = solve_integer_system(rows, [0, 0])
    _, kernel = sol
    assert len(kernel) == 2
    k1, k2 = lagrange_reduce(kernel[0], kernel[1])
    for radius in range(1, 9):
        cands = []
        for m1 in range(-radius, radius + 1):
            for m2 in range(-radius, radius + 1):
                if max(abs(m1), abs(m2)) == radius or radius == 1:
                    cands.append((m1, m2))
        for m1, m2 in sorted(cands):
            v = [m1 * x + m2 * y for x, y in zip(k1, k2)]
            x = QuadInt(v[0], v[1], d)
            y = QuadInt(v[2], v[3], d)
            if x.is_zero() and y.is_zero():
                continue
            if (x.is_zero() and y.is_unit()) or (y.is_zero() and x.is_unit()):
                return ProjPoint(x, y)
            if not x.is_zero() and not y.is_zero() and is_coprime(x, y):
                return ProjPoint(x, y)
    raise SearchExhaustedError(f"no reduced representative found for {p}")


def tangency_point(c1: OrientedCircle, c2: OrientedCircle) -> ProjPoint:
    """The exact point where two tangent circles touch, in reduced form.

    For externally tangent circles it is (a1+a2)/(b1+b2); an internally
    tangent pair is externally tangent after reversing one orientation.
    Parallel lines touch at infinity.
    """
    p = pedoe_product(c1, c2)
    if c1.same_unoriented(c2):
        raise NotTangentError("coincident circles have no single tangency point")
    if p == 1:
        c2 = c2.reversed()
    elif p != -1:
        raise NotTangentError(f"pedoe product {p} is not +-1")
    ctx = Discriminant(c1.disc)
    bsum = c1.curv_red + c2.curv_red
    if bsum == 0:
        return ProjPoint.infinity(ctx)
    num = -(c1.zeta + c2.zeta) * ctx.sqrt_delta()
    den = QuadInt(bsum * c1.disc, 0, c1.disc)
    pt = reduce_point(ProjPoint(num, den))
    assert point_on_circle(c1, pt) and point_on_circle(c2, pt)
    return pt


def tangent_family(x: ProjPoint, u: QuadInt, k: int) -> OrientedCircle:
    """k-th circle of the u-family through a reduced point x.

    Matrix [[alpha, u*gamma + k*t*alpha], [beta, u*delta + k*t*beta]] where
    (gamma, delta) is the deterministic Bezout solution.  Within a family,
    consecutive reduced curvatures differ by N(beta); the family of -u is
    the same set of circles with orientations reversed.
    """
    if not x.is_reduced():
        raise NotReducedError(str(x))
    if not u.is_unit():
        raise NotAUnitError(str(u))
    ctx = Discriminant(x.disc)
    alpha, beta = x.num, x.den
    gamma, delta = solve_bezout(alpha, beta)
    tau = ctx.tau()
    m = Matrix2(alpha, u * gamma + k * (tau * alpha), beta, u * delta + k * (tau * beta))
    return circle_from_matrix(m)


def immediate_tangent_at(m_c: Matrix2) -> Matrix2:
    """Matrix of the unique circle immediately tangent at alpha/beta.

    M' = M * [[1, t], [0, -1]]; the tangency point keeps the marked column
    and the two reduced curvatures add up to N(beta).
    """
    if not m_c.det().is_unit():
        raise NonUnitDeterminantError(f"det = {m_c.det()}")
    ctx = Discriminant(m_c.disc)
    flip = Matrix2(ctx.one(), ctx.tau(), ctx.zero(), -ctx.one())
    return m_c * flip


def tangent_curvatures(m_c: Matrix2, bound: int) -> dict[int, int]:
    """Multiset {curvature: multiplicity} of immediate tangents up to bound.

    The values are N(m*beta + n*delta) - b over primitive columns (m, n)
    (each column marks one K-point of the circle, which carries exactly one
    immediately tangent circle).  For a line (b = 0 and rank-1 denominator
    lattice) every value has infinite multiplicity; the achievable set
    {q^2 <= bound} is returned with multiplicity 1 per value.
    """
    if not m_c.det().is_unit():
        raise NonUnitDeterminantError(f"det = {m_c.det()}")
    base = circle_from_matrix(m_c)
    b = base.curv_red
    beta, delta = m_c.beta, m_c.delta
    if b == 0:
        return {q * q: 1 for q in range(1, isqrt(max(bound, 0)) + 1)}
    # positive definite form Q(m, n) = N(m*beta + n*delta) on the lattice
    nb = beta.norm()
    nd = delta.norm()
    cross = (beta * delta.conj()).trace()
    limit = bound + b
    if limit < 0:
        return {}
    # m^2 * (4*nb*nd - cross^2) <= 4*nd*limit, and the discriminant term
    # 4*nb*nd - cross^2 equals b^2 * (-D) > 0
    disc_term = 4 * nb * nd - cross * cross
    out: dict[int, int] = {}
    m_max = isqrt(4 * nd * limit // disc_term) + 1
    for mm, nn in _candidate_pairs(m_max, nb, nd, cross, limit):
        if gcd(mm, nn) != 1:
            continue
        val = nb * mm * mm + cross * mm * nn + nd * nn * nn - b
        if val <= bound:
            out[val] = out.get(val, 0) + 1
    return out


def _candidate_pairs(m_max, nb, nd, cross, limit):
    for mm in range(0, m_max + 1):
        # solve nd*n^2 + cross*m*n + nb*m^2 <= limit for n
        a, b_, c = nd, cross * mm, nb * mm * mm - limit
        disc = b_ * b_ - 4 * a * c
        if disc < 0:
            continue
        root = isqrt(disc)
        lo = -(b_ + root) // (2 * a) - 1
        hi = (-b_ + root) // (2 * a) + 1
        for nn in range(lo, hi + 1):
            if mm == 0 and nn <= 0:
                continue
            if mm == 0 and nn != 1:
                continue
            if a * nn * nn + b_ * nn + nb * mm * mm - limit <= 0:
                if (mm, nn) != (0, 0):
                    yield mm, nn
