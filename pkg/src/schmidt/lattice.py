"""Rank-2 sublattices of the ring, primevality, and class-number counts.

A lattice is canonicalized by the Hermite normal form of its coordinate
rows over the basis (1, t), so equality and hashing are exact.  Primeval
lattices (conductor equal to covolume, equivalently admitting a coprime
basis) classify Bianchi circles up to translation and unit scaling; per
conductor f they are enumerated by residues in (O/f)*/(Z/f)*.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .circle import OrientedCircle, circle_from_matrix, solve_bezout
from .errors import (
    MixedDiscriminantError,
    NonIntegerResultError,
    NonUnitDeterminantError,
    NotInvertibleResidueError,
    NotPrimevalError,
    RankDeficientError,
    SearchExhaustedError,
)
from .intlin import hnf_two_columns, xgcd
from .moebius import Matrix2
from .quadint import Discriminant, QuadInt, is_coprime, is_prime


@dataclass(frozen=True)
class Lattice2:
    """Rank-2 Z-sublattice in Hermite normal form ((p, q), (0, r))."""

    delta: int
    row1: tuple[int, int]
    row2: tuple[int, int]

    @property
    def covolume(self) -> int:
        return self.row1[0] * self.row2[1]

    def basis(self) -> tuple[QuadInt, QuadInt]:
        return (
            QuadInt(self.row1[0], self.row1[1], self.delta),
            QuadInt(self.row2[0], self.row2[1], self.delta),
        )

    def contains(self, x: QuadInt) -> bool:
        if x.disc != self.delta:
            raise MixedDiscriminantError(f"{x.disc} vs {self.delta}")
        p, q = self.row1
        r = self.row2[1]
        if x.a % p:
            return False
        k = x.a // p
        return (x.b - k * q) % r == 0

    def scaled(self, u: QuadInt) -> Lattice2:
        v1, v2 = self.basis()
        return hnf([u * v1, u * v2])

    def __str__(self):
        return f"L[{self.row1}, {self.row2}] (D={self.delta})"


def hnf(gens: list[QuadInt]) -> Lattice2:
    """Canonical lattice from any generating set of ring elements."""
    if not gens:
        raise RankDeficientError("no generators")
    d = gens[0].disc
    for g in gens:
        if g.disc != d:
            raise MixedDiscriminantError("generators from different fields")
    row1, row2 = hnf_two_columns([g.key() for g in gens])
    if row1[0] == 0 or row2[1] == 0:
        raise RankDeficientError(f"rank < 2 lattice from {[str(g) for g in gens]}")
    return Lattice2(d, row1, row2)


def order_conductor(lat: Lattice2) -> int:
    """Conductor f of Ord(L): the smallest f >= 1 with f*t*L inside L."""
    ctx = Discriminant(lat.delta)
    tau = ctx.tau()
    p, q = lat.row1
    r = lat.row2[1]
    f = 1
    for v in lat.basis():
        w = tau * v
        # coordinates of w in the triangular basis; denominators give f
        ca = Fraction(w.a, p)
        cb = (Fraction(w.b) - ca * q) / r
        f = lcm(f, ca.denominator, cb.denominator)
    return f


def is_primeval(lat: Lattice2) -> bool:
    """Conductor equals covolume; equivalently a coprime basis exists."""
    return order_conductor(lat) == lat.covolume


@dataclass(frozen=True)
class PrimevalLattice:
    lattice: Lattice2
    conductor: int

    @classmethod
    def of(cls, lat: Lattice2) -> PrimevalLattice:
        f = order_conductor(lat)
        if f != lat.covolume:
            raise NotPrimevalError(f"conductor {f} != covolume {lat.covolume}")
        return cls(lat, f)


_COPRIME_SEARCH_BOX = 24


def coprime_basis(prim: PrimevalLattice) -> tuple[QuadInt, QuadInt]:
    """Deterministic coprime Z-basis (beta, delta) of a primeval lattice.

    Scans unimodular images of the HNF basis by increasing coefficient
    box, preferring nonnegative small combinations; existence is
    guaranteed, so exhaustion signals a bug.
    """
    v1, v2 = prim.lattice.basis()
    for radius in range(1, _COPRIME_SEARCH_BOX + 1):
        shell = [
            (m, n)
            for m in range(-radius, radius + 1)
            for n in range(-radius, radius + 1)
            if gcd(m, n) == 1 and (max(abs(m), abs(n)) == radius or radius == 1)
        ]
        shell.sort(key=lambda mn: (max(abs(mn[0]), abs(mn[1])), mn[0] <= 0, mn[1] < 0, -mn[0], abs(mn[1]), mn[1]))
        shifts = sorted(range(-radius, radius + 1), key=lambda s: (abs(s), s < 0))
        for m, n in shell:
            _, x, y = xgcd(m, n)
            # complete (m, n) to det 1: m*q - n*p = 1
            p0, q0 = -y, x
            w1 = m * v1 + n * v2
            for shift in shifts:
                w2 = (p0 + shift * m) * v1 + (q0 + shift * n) * v2
                if w1.is_zero() or w2.is_zero():
                    continue
                if is_coprime(w1, w2):
                    return w1, w2
    raise SearchExhaustedError(f"no coprime basis found for {prim.lattice}")


def residue_lattice(ctx: Discriminant, f: int, beta: QuadInt) -> Lattice2:
    """The primeval lattice f*O + beta*Z."""
    return hnf([ctx(f), f * ctx.tau(), beta])


def enumerate_residues(ctx: Discriminant, f: int) -> list[QuadInt]:
    """Representatives of (O/f)*/(Z/f)*, each tagging one primeval lattice.

    beta = s + t*tau with 0 <= s, t < f is invertible mod f exactly when
    gcd(N(beta), f) = 1; representatives are deduplicated under rational
    unit multiplication and canonicalized to the lexicographically least
    orbit member.  The count is f * prod_{p | f} (1 - (D/p)/p).
    """
    if f == 1:
        return [ctx.one()]
    rational_units = [c for c in range(1, f) if gcd(c, f) == 1]
    seen = set()
    out = []
    for s in range(f):
        for t in range(f):
            beta = ctx(s, t)
            if gcd(beta.norm(), f) != 1:
                continue
            orbit = min(((c * s) % f, (c * t) % f) for c in rational_units)
            if orbit in seen:
                continue
            seen.add(orbit)
            out.append(ctx(orbit[0], orbit[1]))
    out.sort(key=lambda b: b.key())
    expected = f
    for p in _prime_factors(f):
        expected = expected // p * (p - ctx.kronecker(p))
    assert len(out) == expected, f"residue count {len(out)} != {expected}"
    return out


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def matrix_for_residue(ctx: Discriminant, f: int, beta: QuadInt) -> Matrix2:
    """Unimodular matrix whose bottom row spans f*O + beta*Z."""
    if gcd(beta.norm(), f) != 1:
        raise NotInvertibleResidueError(f"{beta} not invertible mod {f}")
    lat = residue_lattice(ctx, f, beta)
    prim = PrimevalLattice.of(lat)
    b, d = coprime_basis(prim)
    gamma, alpha_ = solve_bezout(d, b)  # d*delta' - b*gamma' = 1
    return Matrix2(alpha_, gamma, b, d)


def circle_from_residue(ctx: Discriminant, f: int, beta: QuadInt) -> OrientedCircle:
    """The Bianchi circle attached to a residue class mod f.

    Builds the primeval lattice f*O + beta*Z, takes a coprime basis for
    the bottom row of a unimodular matrix, and reads the circle off it;
    its reduced curvature has absolute value f.
    """
    circle = circle_from_matrix(matrix_for_residue(ctx, f, beta))
    assert abs(circle.curv_red) == f
    return circle


def lattice_of_matrix(m: Matrix2) -> PrimevalLattice:
    """Primeval lattice spanned by the bottom row of a unimodular matrix.

    Its conductor equals the absolute reduced curvature of the circle.
    """
    if not m.det().is_unit():
        raise NonUnitDeterminantError(f"det = {m.det()}")
    lat = hnf([m.beta, m.delta])
    prim = PrimevalLattice.of(lat)
    assert prim.conductor == abs(circle_from_matrix(m).curv_red)
    return prim


def unit_homothetic(l1: Lattice2, l2: Lattice2) -> bool:
    """Whether l2 = u*l1 for some unit u."""
    if l1.delta != l2.delta:
        raise MixedDiscriminantError(f"{l1.delta} vs {l2.delta}")
    ctx = Discriminant(l1.delta)
    return any(l1.scaled(u) == l2 for u in ctx.units())


def class_number(ctx: Discriminant) -> int:
    """h_K by counting reduced primitive forms (a, b, c) of discriminant D."""
    d = ctx.delta
    h = 0
    b = d % 2
    while 3 * b * b <= -d:
        m = (b * b - d) // 4
        a = max(b, 1)
        while a * a <= m:
            if m % a == 0:
                c = m // a
                if gcd(gcd(a, b), c) == 1:
                    h += 1 if (b == 0 or a == b or a == c) else 2
            a += 1
        b += 2
    return h


def order_class_number(ctx: Discriminant, f: int) -> int:
    """h_f = (h_K/u) * f * prod_{p|f} (1 - (D/p)/p), exactly."""
    if f < 1:
        raise ValueError("conductor must be positive")
    hk = class_number(ctx)
    if f == 1:
        return hk
    u = {-4: 2, -3: 3}.get(ctx.delta, 1)
    value = Fraction(hk, u) * f
    for p in _prime_factors(f):
        value *= 1 - Fraction(ctx.kronecker(p), p)
    if value.denominator != 1:
        raise NonIntegerResultError(f"h_f evaluated to {value}")
    return int(value)


def kernel_size(ctx: Discriminant, f: int) -> int:
    """|ker theta_f| by brute force: primeval lattices mod unit homothety."""
    lattices = [residue_lattice(ctx, f, b) for b in enumerate_residues(ctx, f)]
    units = ctx.units()
    seen = set()
    count = 0
    for lat in lattices:
        if (lat.row1, lat.row2) in seen:
            continue
        count += 1
        for u in units:
            s = lat.scaled(u)
            seen.add((s.row1, s.row2))
    return count
