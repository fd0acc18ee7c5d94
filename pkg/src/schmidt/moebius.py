"""Exact 2x2 matrices over the ring, projective points, elementary words.

A matrix [[alpha, gamma], [beta, delta]] acts on the sphere as
z -> (alpha*z + gamma) / (beta*z + delta); projective points are stored
as coprime-or-not pairs num/den with infinity = (1 : 0).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    MixedDiscriminantError,
    NonUnitDeterminantError,
    NotEuclideanFieldError,
)
from .quadint import Discriminant, QuadInt, euclidean_div, is_coprime, parse_quadint


class ProjPoint:
    """Point num/den of the projective line over the field."""

    __slots__ = ("num", "den")

    def __init__(self, num: QuadInt, den: QuadInt):
        if num.disc != den.disc:
            raise MixedDiscriminantError(f"{num.disc} vs {den.disc}")
        if num.is_zero() and den.is_zero():
            raise ValueError("(0 : 0) is not a projective point")
        self.num = num
        self.den = den

    @classmethod
    def infinity(cls, ctx: Discriminant) -> ProjPoint:
        return cls(ctx.one(), ctx.zero())

    @property
    def disc(self) -> int:
        return self.num.disc

    def is_infinity(self) -> bool:
        return self.den.is_zero()

    def is_reduced(self) -> bool:
        if self.num.is_zero() or self.den.is_zero():
            return (self.num.is_unit() or self.num.is_zero()) and (
                self.den.is_unit() or self.den.is_zero()
            )
        return is_coprime(self.num, self.den)

    def same_point(self, other: ProjPoint) -> bool:
        """Projective equality by cross-multiplication up to a unit.

        Avoids gcd reduction, which is only cheap in Euclidean fields.
        """
        c1 = self.num * other.den
        c2 = other.num * self.den
        if c1.is_zero() or c2.is_zero():
            return c1.is_zero() and c2.is_zero()
        return any(c1 == u * c2 for u in Discriminant(self.disc).units())

    def __repr__(self):
        return f"ProjPoint({self.num!r}, {self.den!r})"

    def __str__(self):
        return f"({self.num})/({self.den})"


class Matrix2:
    """2x2 matrix [[alpha, gamma], [beta, delta]] over the ring."""

    __slots__ = ("alpha", "gamma", "beta", "delta")

    def __init__(self, alpha: QuadInt, gamma: QuadInt, beta: QuadInt, delta: QuadInt):
        if not (alpha.disc == gamma.disc == beta.disc == delta.disc):
            raise MixedDiscriminantError("matrix entries from different fields")
        self.alpha = alpha
        self.gamma = gamma
        self.beta = beta
        self.delta = delta

    # -- constructors ----------------------------------------------------

    @classmethod
    def identity(cls, ctx: Discriminant) -> Matrix2:
        return cls(ctx.one(), ctx.zero(), ctx.zero(), ctx.one())

    @classmethod
    def translation(cls, a: QuadInt) -> Matrix2:
        """E(a) = [[1, a], [0, 1]], the shear z -> z + a."""
        ctx = Discriminant(a.disc)
        return cls(ctx.one(), a, ctx.zero(), ctx.one())

    @classmethod
    def inversion(cls, ctx: Discriminant) -> Matrix2:
        """S = [[0, -1], [1, 0]], the map z -> -1/z, det 1."""
        return cls(ctx.zero(), -ctx.one(), ctx.one(), ctx.zero())

    # -- algebra ----------------------------------------------------------

    @property
    def disc(self) -> int:
        return self.alpha.disc

    def det(self) -> QuadInt:
        return self.alpha * self.delta - self.gamma * self.beta

    def __mul__(self, other: Matrix2) -> Matrix2:
        return Matrix2(
            self.alpha * other.alpha + self.gamma * other.beta,
            self.alpha * other.gamma + self.gamma * other.delta,
            self.beta * other.alpha + self.delta * other.beta,
            self.beta * other.gamma + self.delta * other.delta,
        )

    def __neg__(self) -> Matrix2:
        return Matrix2(-self.alpha, -self.gamma, -self.beta, -self.delta)

    def adjugate(self) -> Matrix2:
        return Matrix2(self.delta, -self.gamma, -self.beta, self.alpha)

    def inverse(self) -> Matrix2:
        """Inverse via adjugate; the determinant must be a unit."""
        d = self.det()
        if not d.is_unit():
            raise NonUnitDeterminantError(f"det = {d}")
        w = d.conj()  # inverse of a unit is its conjugate
        adj = self.adjugate()
        return Matrix2(w * adj.alpha, w * adj.gamma, w * adj.beta, w * adj.delta)

    def conj_transpose(self) -> Matrix2:
        return Matrix2(self.alpha.conj(), self.beta.conj(), self.gamma.conj(), self.delta.conj())

    def apply_point(self, p: ProjPoint) -> ProjPoint:
        if p.disc != self.disc:
            raise MixedDiscriminantError(f"{p.disc} vs {self.disc}")
        return ProjPoint(
            self.alpha * p.num + self.gamma * p.den,
            self.beta * p.num + self.delta * p.den,
        )

    def entries(self) -> tuple[QuadInt, QuadInt, QuadInt, QuadInt]:
        return (self.alpha, self.gamma, self.beta, self.delta)

    def __eq__(self, other):
        return isinstance(other, Matrix2) and self.entries() == other.entries()

    def __hash__(self):
        return hash(tuple(e.key() for e in self.entries()) + (self.disc,))

    def __repr__(self):
        return f"Matrix2[[{self.alpha}, {self.gamma}], [{self.beta}, {self.delta}]]"

    def __str__(self):
        return f"[[{self.alpha},{self.gamma}],[{self.beta},{self.delta}]]"

    def proj_equal(self, other: Matrix2) -> bool:
        """Equality in the projective group: M = u*N for a unit u."""
        if self.disc != other.disc:
            return False
        for u in Discriminant(self.disc).units():
            if all(a == u * b for a, b in zip(self.entries(), other.entries())):
                return True
        return False


def apply_point(m: Matrix2, p: ProjPoint) -> ProjPoint:
    return m.apply_point(p)


def psl2_canonical(m: Matrix2) -> Matrix2:
    """Canonical representative of {M, -M}.

    Picks the sign making the first nonzero entry in reading order have
    lexicographically positive coordinates; idempotent.
    """
    for e in m.entries():
        if not e.is_zero():
            return m if (e.a, e.b) > (0, 0) else -m
    return m


_MATRIX_RE = re.compile(r"^\[\[(.*?),(.*?)\],\[(.*?),(.*?)\]\]$")


def parse_matrix(text: str, ctx: Discriminant) -> Matrix2:
    """Parse '[[a, g], [b, d]]' with entries in 'a+b*t' form."""
    s = text.replace(" ", "")
    m = _MATRIX_RE.match(s)
    if not m:
        raise ValueError(f"cannot parse matrix from {text!r}")
    a, g, b, d = (parse_quadint(part, ctx) for part in m.groups())
    return Matrix2(a, g, b, d)


@dataclass(frozen=True)
class ElementaryWord:
    """Word in the generators E(a) = [[1, a], [0, 1]] and S = [[0, -1], [1, 0]].

    Steps are ('E', element) or ('S', None); evaluating the word multiplies
    the generators left to right and reproduces the source matrix up to
    projective sign.
    """

    delta: int
    steps: tuple[tuple[str, QuadInt | None], ...]

    def __len__(self):
        return len(self.steps)

    def eval(self) -> Matrix2:
        ctx = Discriminant(self.delta)
        out = Matrix2.identity(ctx)
        for kind, arg in self.steps:
            out = out * (Matrix2.translation(arg) if kind == "E" else Matrix2.inversion(ctx))
        return out

    def __str__(self):
        return ".".join(f"E({a})" if k == "E" else "S" for k, a in self.steps) or "1"


def _unit_diag_word(u: QuadInt) -> list[tuple[str, QuadInt | None]]:
    # diag(u, 1/u) = -E(u) S E(1/u) S E(u) S, absorbed projectively
    w = u.unit_inverse()
    return [("E", u), ("S", None), ("E", w), ("S", None), ("E", u), ("S", None)]


def elementary_decomposition(m: Matrix2) -> ElementaryWord:
    """Express a det-1 matrix as a word in E(a) and S, up to sign.

    Continued-fraction reduction on the bottom row: while beta is nonzero,
    divide delta by beta and fold the quotient into an E step followed by
    an S swap; the remainder norm strictly decreases, so this terminates.
    Only defined over the five norm-Euclidean fields.
    """
    ctx = Discriminant(m.disc)
    if not ctx.is_euclidean:
        raise NotEuclideanFieldError(f"discriminant {m.disc}")
    if m.det() != ctx.one():
        raise NonUnitDeterminantError(f"det = {m.det()}, need 1")
    tail: list[tuple[str, QuadInt | None]] = []
    cur = m
    last_norm = None
    while not cur.beta.is_zero():
        n = cur.beta.norm()
        assert last_norm is None or n < last_norm, "norm descent violated"
        last_norm = n
        q, _ = euclidean_div(cur.delta, cur.beta)
        # cur = next * S^-1 * E(q) and S^-1 = -S projectively
        cur = cur * Matrix2.translation(-q) * Matrix2.inversion(ctx)
        tail = [("S", None), ("E", q)] + tail
    # cur = [[u, g], [0, u^-1]] = diag(u, u^-1) * E(g/u)
    steps: list[tuple[str, QuadInt | None]] = []
    u = cur.alpha
    if u != ctx.one() and u != -ctx.one():
        steps += _unit_diag_word(u)
    x = u.unit_inverse() * cur.gamma
    if not x.is_zero():
        steps.append(("E", x))
    steps += tail
    steps = [(k, a) for k, a in steps if not (k == "E" and a.is_zero())]
    word = ElementaryWord(m.disc, tuple(steps))
    got = word.eval()
    assert got == m or got == -m, "decomposition does not reproduce the matrix"
    return word
