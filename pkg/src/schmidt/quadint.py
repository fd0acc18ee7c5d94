"""Exact arithmetic in the ring of integers of an imaginary quadratic field.

The field of discriminant D < 0 (always fundamental here) has ring of
integers Z[t] where t = sqrt(D)/2 for D = 0 mod 4 and t = (1+sqrt(D))/2
for D = 1 mod 4.  Elements are stored as integer pairs (a, b) meaning
a + b*t, and every value carries its discriminant so that values from
different fields cannot be mixed silently.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd, isqrt

from .errors import (
    BothZeroError,
    MixedDiscriminantError,
    NonFundamentalError,
    NotAUnitError,
    NotEuclideanFieldError,
    NotPrimeError,
)

EUCLIDEAN_DELTAS = frozenset({-3, -4, -7, -8, -11})


def _squarefree(n: int) -> bool:
    n = abs(n)
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        if n % d == 0:
            n //= d
        d += 1
    return True


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Discriminant:
    """A negative fundamental discriminant, the context of a field."""

    delta: int

    def __post_init__(self):
        d = self.delta
        if d >= 0:
            raise NonFundamentalError(f"{d} is not negative")
        if d % 4 == 1:
            if not _squarefree(d):
                raise NonFundamentalError(f"{d} = 1 mod 4 but not squarefree")
        elif d % 4 == 0:
            m = d // 4
            if m % 4 not in (2, 3) or not _squarefree(m):
                raise NonFundamentalError(f"{d} = 4m with m = {m} not squarefree and 2,3 mod 4")
        else:
            raise NonFundamentalError(f"{d} is not 0 or 1 mod 4")

    @property
    def tau_trace(self) -> int:
        """Trace of t: 0 when D = 0 mod 4, else 1."""
        return self.delta % 4

    @property
    def tau_norm(self) -> int:
        d = self.delta
        return -(d // 4) if d % 4 == 0 else (1 - d) // 4

    @property
    def is_euclidean(self) -> bool:
        return self.delta in EUCLIDEAN_DELTAS

    def __call__(self, a: int, b: int = 0) -> QuadInt:
        return QuadInt(a, b, self.delta)

    def zero(self) -> QuadInt:
        return QuadInt(0, 0, self.delta)

    def one(self) -> QuadInt:
        return QuadInt(1, 0, self.delta)

    def tau(self) -> QuadInt:
        return QuadInt(0, 1, self.delta)

    def sqrt_delta(self) -> QuadInt:
        """The element sqrt(D): 2t for D = 0 mod 4, 2t - 1 otherwise."""
        if self.delta % 4 == 0:
            return QuadInt(0, 2, self.delta)
        return QuadInt(-1, 2, self.delta)

    def units(self) -> list[QuadInt]:
        d = self.delta
        out = [QuadInt(1, 0, d), QuadInt(-1, 0, d)]
        if d == -4:
            out += [QuadInt(0, 1, d), QuadInt(0, -1, d)]
        elif d == -3:
            out += [QuadInt(0, 1, d), QuadInt(0, -1, d), QuadInt(-1, 1, d), QuadInt(1, -1, d)]
        return out

    def kronecker(self, p: int) -> int:
        """Kronecker symbol (D/p) for a prime p."""
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        d = self.delta
        if p == 2:
            if d % 2 == 0:
                return 0
            return 1 if d % 8 == 1 else -1
        r = pow(d % p, (p - 1) // 2, p)
        if r == 0:
            return 0
        return 1 if r == 1 else -1

    def parse(self, text: str) -> QuadInt:
        return parse_quadint(text, self)

    def __str__(self):
        return f"Q(sqrt({self.delta}))" if self.delta % 4 == 1 else f"Q(sqrt({self.delta // 4}))"


def validate_discriminant(d: int) -> Discriminant:
    """Return the Discriminant context, rejecting non-fundamental d."""
    return Discriminant(d)


class QuadInt:
    """Element a + b*t of the ring of integers, with exact coordinates."""

    __slots__ = ("a", "b", "disc")

    def __init__(self, a: int, b: int, disc: int):
        self.a = a
        self.b = b
        self.disc = disc

    # -- ring structure -------------------------------------------------

    def _check(self, other: QuadInt):
        if self.disc != other.disc:
            raise MixedDiscriminantError(f"{self.disc} vs {other.disc}")

    def __add__(self, other: QuadInt) -> QuadInt:
        self._check(other)
        return QuadInt(self.a + other.a, self.b + other.b, self.disc)

    def __sub__(self, other: QuadInt) -> QuadInt:
        self._check(other)
        return QuadInt(self.a - other.a, self.b - other.b, self.disc)

    def __neg__(self) -> QuadInt:
        return QuadInt(-self.a, -self.b, self.disc)

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadInt(self.a * other, self.b * other, self.disc)
        self._check(other)
        d = self.disc
        bb = self.b * other.b
        cross = self.a * other.b + self.b * other.a
        if d % 4 == 0:
            return QuadInt(self.a * other.a + (d >> 2) * bb, cross, d)
        return QuadInt(self.a * other.a + ((d - 1) >> 2) * bb, cross + bb, d)

    __rmul__ = __mul__

    def conj(self) -> QuadInt:
        """Galois conjugate; fixes 1, sends t to trace(t) - t."""
        if self.disc % 4 == 0:
            return QuadInt(self.a, -self.b, self.disc)
        return QuadInt(self.a + self.b, -self.b, self.disc)

    def norm(self) -> int:
        a, b, d = self.a, self.b, self.disc
        if d % 4 == 0:
            return a * a - (d >> 2) * b * b
        return a * a + a * b + ((1 - d) >> 2) * b * b

    def trace(self) -> int:
        return 2 * self.a + self.b * (self.disc % 4)

    def imag_coeff(self) -> int:
        """The integer m with x - conj(x) = m * sqrt(D)."""
        return self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def unit_inverse(self) -> QuadInt:
        if not self.is_unit():
            raise NotAUnitError(str(self))
        return self.conj()

    # -- plumbing --------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, QuadInt)
            and self.a == other.a
            and self.b == other.b
            and self.disc == other.disc
        )

    def __hash__(self):
        return hash((self.a, self.b, self.disc))

    def __repr__(self):
        return f"QuadInt({self.a}, {self.b}, {self.disc})"

    def __str__(self):
        return f"{self.a}{self.b:+d}*t"

    def key(self) -> tuple[int, int]:
        return (self.a, self.b)


_QUADINT_RE = re.compile(r"^([+-]?\d+)(?:([+-]\d+)\*t)?$")
_BARE_T_RE = re.compile(r"^([+-]?)(?:(\d+)\*)?t$")


def parse_quadint(text: str, ctx: Discriminant) -> QuadInt:
    """Parse 'a+b*t' (also bare 'a', 't', '-t', 'b*t') into an element."""
    s = text.replace(" ", "")
    m = _QUADINT_RE.match(s)
    if m:
        a = int(m.group(1))
        b = int(m.group(2)) if m.group(2) else 0
        return QuadInt(a, b, ctx.delta)
    m = _BARE_T_RE.match(s)
    if m:
        b = int(m.group(2) or 1)
        if m.group(1) == "-":
            b = -b
        return QuadInt(0, b, ctx.delta)
    # mixed form like '1-t' / '2+3t'
    m = re.match(r"^([+-]?\d+)([+-])(\d*)\*?t$", s)
    if m:
        a = int(m.group(1))
        b = int(m.group(3) or 1)
        if m.group(2) == "-":
            b = -b
        return QuadInt(a, b, ctx.delta)
    raise ValueError(f"cannot parse quadratic integer from {text!r}")


def is_coprime(x: QuadInt, y: QuadInt) -> bool:
    """Whether the ideals (x) and (y) are coprime: (x) + (y) = (1).

    Decided through the Z-lattice spanned by x, t*x, y, t*y: it equals the
    whole ring iff the gcd of the 4x2 coordinate matrix entries and the gcd
    of its 2x2 minors are both 1.  Valid in non-Euclidean fields too.
    """
    x._check(y)
    if x.is_zero() and y.is_zero():
        raise BothZeroError("coprimality of (0, 0) is undefined")
    tau = Discriminant(x.disc).tau()
    rows = [v.key() for v in (x, tau * x, y, tau * y)]
    g1 = 0
    for a, b in rows:
        g1 = gcd(g1, gcd(a, b))
    if g1 != 1:
        return False
    g2 = 0
    for i in range(4):
        for j in range(i + 1, 4):
            g2 = gcd(g2, rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0])
    return g2 == 1


def euclidean_div(x: QuadInt, y: QuadInt) -> tuple[QuadInt, QuadInt]:
    """Division with remainder, norm(r) < norm(y); Euclidean fields only.

    The quotient is the candidate around the exact value x/y minimizing the
    remainder norm (plain coordinate rounding can land outside the unit
    norm ball, e.g. at half-half corners for D = -11), ties broken by
    lexicographically smallest quotient coordinates.
    """
    x._check(y)
    if y.is_zero():
        raise ZeroDivisionError("division by zero")
    if x.disc not in EUCLIDEAN_DELTAS:
        raise NotEuclideanFieldError(f"discriminant {x.disc} is not norm-Euclidean")
    n = y.norm()
    w = x * y.conj()  # exact x/y is (w.a/n, w.b/n)
    qa0 = w.a // n
    qb0 = w.b // n
    best = None
    for qa in (qa0, qa0 + 1):
        for qb in (qb0, qb0 + 1):
            q = QuadInt(qa, qb, x.disc)
            r = x - q * y
            key = (r.norm(), abs(qa) + abs(qb), qa, qb)
            if best is None or key < best[0]:
                best = (key, q, r)
    _, q, r = best
    assert r.norm() < n, "norm descent failed"
    return q, r
