"""Enumeration of the arrangement, tangency graph, ghost-circle certificates.

Window convention: x-bounds are plain rationals; y-bounds are rationals
measured in units of Im(t) = sqrt(-D)/2, so the fundamental parallelogram
always has y in [0, 1] and all membership tests stay in Q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .circle import (
    OrientedCircle,
    circle_from_matrix,
    pedoe_product,
    real_line,
    transform,
)
from .errors import (
    CertificateFailureError,
    MixedDiscriminantError,
    NoGhostCircleError,
    NotEuclideanFieldError,
)
from .lattice import circle_from_residue, enumerate_residues
from .moebius import Matrix2, elementary_decomposition
from .quadint import Discriminant, QuadInt


@dataclass(frozen=True)
class Window:
    """Axis-aligned rectangle; y in Im(t) units (see module docstring)."""

    x0: Fraction
    x1: Fraction
    y0: Fraction
    y1: Fraction

    def __post_init__(self):
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise ValueError("window must satisfy x0 < x1 and y0 < y1")

    @classmethod
    def of(cls, x0, x1, y0, y1) -> Window:
        return cls(Fraction(x0), Fraction(x1), Fraction(y0), Fraction(y1))

    @classmethod
    def fundamental(cls, ctx: Discriminant) -> Window:
        """Bounding box of the parallelogram {a + b*t : 0 <= a, b <= 1}."""
        xmax = Fraction(3, 2) if ctx.delta % 4 == 1 else Fraction(1)
        return cls(Fraction(0), xmax, Fraction(0), Fraction(1))

    @classmethod
    def parse(cls, text: str, ctx: Discriminant) -> Window:
        if text.strip() == "fund":
            return cls.fundamental(ctx)
        parts = [Fraction(p) for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError("window must be 'fund' or 'x0,x1,y0,y1'")
        return cls(*parts)

    def inflated(self, margin_x: Fraction, margin_y: Fraction) -> Window:
        return Window(self.x0 - margin_x, self.x1 + margin_x, self.y0 - margin_y, self.y1 + margin_y)

    def spec_string(self) -> str:
        return f"{self.x0},{self.x1},{self.y0},{self.y1}"


def circle_meets_window(c: OrientedCircle, window: Window) -> bool:
    """Exact test that the circle's curve touches the closed rectangle.

    Nearest point of the rectangle within the radius, farthest corner at
    least the radius away (otherwise the window sits strictly inside the
    disk and the curve misses it).
    """
    if c.is_line():
        return line_meets_window(c, window)
    x, y = c.center_xy()
    yscale = Fraction(-c.disc, 4)
    r_sq = c.radius_sq()
    dx = max(window.x0 - x, x - window.x1, Fraction(0))
    dy = max(window.y0 - y, y - window.y1, Fraction(0))
    if dx * dx + dy * dy * yscale > r_sq:
        return False
    fx = max(x - window.x0, window.x1 - x)
    fy = max(y - window.y0, window.y1 - y)
    return fx * fx + fy * fy * yscale >= r_sq


def line_meets_window(c: OrientedCircle, window: Window) -> bool:
    """A line meets the rectangle iff its linear form reaches the offset there.

    The triple (0, k, zeta) is the line -zeta.b * x + Re(zeta) * y = k in
    window coordinates (y in Im(t) units), so it meets the rectangle iff k
    lies between the extreme corner values of the left-hand side.
    """
    z = c.zeta
    re_zeta = z.a + Fraction(z.b * (c.disc % 4), 2)
    values = [
        -z.b * x + re_zeta * y
        for x in (window.x0, window.x1)
        for y in (window.y0, window.y1)
    ]
    return min(values) <= c.cocurv_red <= max(values)


class CircleSet:
    """Deduplicated set of circles keyed by canonical triple.

    By default the two orientations of a circle merge to one entry; pass
    oriented=True to keep them distinct.  Iteration is sorted by key, so
    downstream output is deterministic.
    """

    def __init__(self, oriented: bool = False):
        self.oriented = oriented
        self._items: dict[tuple, OrientedCircle] = {}
        self.provenance: dict[tuple, tuple] = {}

    def _key(self, c: OrientedCircle) -> tuple:
        return c.key() if self.oriented else c.unoriented_key()

    def add(self, c: OrientedCircle, prov: tuple | None = None) -> bool:
        k = self._key(c)
        if k in self._items:
            return False
        self._items[k] = c
        if prov is not None:
            self.provenance[k] = prov
        return True

    def __contains__(self, c: OrientedCircle) -> bool:
        return self._key(c) in self._items

    def __len__(self):
        return len(self._items)

    def __iter__(self):
        for k in sorted(self._items):
            yield self._items[k]

    def keys(self) -> set[tuple]:
        return set(self._items)

    def restricted(self, window: Window, max_curv: int | None = None) -> CircleSet:
        out = CircleSet(self.oriented)
        for c in self:
            if max_curv is not None and abs(c.curv_red) > max_curv:
                continue
            if circle_meets_window(c, window):
                out.add(c, self.provenance.get(self._key(c)))
        return out


def _line_directions(ctx: Discriminant) -> list[QuadInt]:
    """zeta values of the line families: 1 always, plus the two extra
    directions in the sixth-roots field where rotations stay in the orbit."""
    if ctx.delta == -3:
        return [ctx.one(), ctx(0, 1), ctx(-1, 1)]
    return [ctx.one()]


def _lines_in_window(ctx: Discriminant, window: Window, oriented: bool) -> list[OrientedCircle]:
    out = []
    trace_half = Fraction(ctx.delta % 4, 2)
    for zeta in _line_directions(ctx):
        re_zeta = zeta.a + zeta.b * trace_half
        corners = [
            -zeta.b * x + re_zeta * y
            for x in (window.x0, window.x1)
            for y in (window.y0, window.y1)
        ]
        lo = math.ceil(min(corners))
        hi = math.floor(max(corners))
        for k in range(lo, hi + 1):
            out.append(OrientedCircle(0, k, zeta))
            if oriented:
                out.append(OrientedCircle(0, -k, -zeta))
    return out


def enumerate_arrangement(
    ctx: Discriminant,
    max_curv: int,
    window: Window,
    include_lines: bool = False,
    oriented: bool = False,
) -> CircleSet:
    """All Bianchi circles with 1 <= |curv_red| <= max_curv meeting the window.

    Per conductor f, each residue circle and its reflection through the
    origin are translated over the exact lattice range that can reach the
    window; together those translates exhaust the curvature-f circles.
    """
    out = CircleSet(oriented=oriented)
    if include_lines:
        for line in _lines_in_window(ctx, window, oriented):
            out.add(line, ("line",))
    rtau = Fraction(ctx.delta % 4, 2)
    for f in range(1, max_curv + 1):
        margin_y = Fraction(2, f * (-ctx.delta))  # radius in Im(t) units
        margin_x = Fraction(1)  # safe slack; the exact meet test prunes
        for residue in enumerate_residues(ctx, f):
            base = circle_from_residue(ctx, f, residue)
            for sign, circ in (("+", base), ("-", base.times_unit(-ctx.one()))):
                cx, cy = circ.center_xy()
                t_lo = math.ceil(window.y0 - margin_y - cy)
                t_hi = math.floor(window.y1 + margin_y - cy)
                for t in range(t_lo, t_hi + 1):
                    x_shifted = cx + t * rtau
                    s_lo = math.ceil(window.x0 - margin_x - x_shifted)
                    s_hi = math.floor(window.x1 + margin_x - x_shifted)
                    for s in range(s_lo, s_hi + 1):
                        cand = circ.translated(ctx(s, t))
                        if circle_meets_window(cand, window):
                            out.add(cand, (f, residue.key(), sign, (s, t)))
                            if oriented:
                                out.add(cand.reversed(), (f, residue.key(), "-" + sign, (s, t)))
    return out


def parallelogram_count(ctx: Discriminant, f: int, shift: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))) -> int:
    """Circles of reduced curvature exactly f with centre in the half-open
    fundamental parallelogram (optionally translated by `shift` in lattice
    coordinates)."""
    seen = set()
    for residue in enumerate_residues(ctx, f):
        base = circle_from_residue(ctx, f, residue)
        for circ in (base, base.times_unit(-ctx.one())):
            s, t = circ.center_coords()
            ds = -math.floor(s - shift[0])
            dt = -math.floor(t - shift[1])
            moved = circ.translated(ctx(ds, dt))
            seen.add(moved.unoriented_key())
    return len(seen)


def predicted_parallelogram_count(ctx: Discriminant, f: int) -> int:
    """The count law verified by the enumeration oracle.

    2 * |residues| generally; |residues| for the Gaussian field, whose
    quarter-turn leaves the orbit (each residue pair beta, i*beta yields a
    reflected pair of the same circles).  Subsumes the classical 2*h_f for
    the class-number-one fields with trivial extra units, including the
    f = 1 exception of the Gaussian field.
    """
    n = len(enumerate_residues(ctx, f))
    return n if ctx.delta == -4 else 2 * n


# -- breadth-first closure under elementary moves --------------------------


def bfs_enumerate(
    ctx: Discriminant,
    max_curv: int,
    depth: int,
    window: Window | None = None,
    margin: int = 3,
) -> CircleSet:
    """Closure of the real line under E(1), E(t), S up to a word length.

    Prunes by curvature bound and, when a window is given, by a position
    box inflated by `margin`.  Over a Euclidean field the closure locally
    exhausts the arrangement; elsewhere it stays inside one
    tangency-connected component.
    """
    box = window.inflated(Fraction(margin), Fraction(margin)) if window else None
    gens = [
        Matrix2.translation(ctx.one()),
        Matrix2.translation(-ctx.one()),
        Matrix2.translation(ctx.tau()),
        Matrix2.translation(-ctx.tau()),
        Matrix2.inversion(ctx),
    ]

    def admissible(c: OrientedCircle) -> bool:
        if abs(c.curv_red) > max_curv:
            return False
        if box is None:
            return True
        if c.is_line():
            return abs(c.cocurv_red) <= max(abs(box.y0), abs(box.y1)) + 2 * margin
        x, y = c.center_xy()
        return box.x0 <= x <= box.x1 and box.y0 <= y <= box.y1

    out = CircleSet()
    start = real_line(ctx)
    out.add(start)
    frontier = [start]
    for _ in range(depth):
        nxt = []
        for c in frontier:
            for g in gens:
                image = transform(g, c)
                if admissible(image) and out.add(image):
                    nxt.append(image)
        if not nxt:
            break
        frontier = nxt
    return out


# -- tangency graph ---------------------------------------------------------


class UnionFind:
    """Union-find with path compression over hashable keys."""

    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass
class TangencyGraph:
    circles: list[OrientedCircle]
    edges: list[tuple[int, int]]

    def components(self) -> list[list[int]]:
        uf = UnionFind()
        for i in range(len(self.circles)):
            uf.find(i)
        for a, b in self.edges:
            uf.union(a, b)
        groups: dict[int, list[int]] = {}
        for i in range(len(self.circles)):
            groups.setdefault(uf.find(i), []).append(i)
        return sorted(groups.values(), key=len, reverse=True)


def tangency_graph(circles: CircleSet | list[OrientedCircle]) -> TangencyGraph:
    """Graph with an edge for every exactly-tangent pair (product +-1).

    Proper circles are bucketed by a spatial hash on centres (cell = the
    largest diameter present) so only neighbouring cells are compared;
    lines are paired against everything.
    """
    items = list(circles)
    lines = [i for i, c in enumerate(items) if c.is_line()]
    proper = [i for i, c in enumerate(items) if not c.is_line()]
    edges = []

    def tangent(i, j):
        return not items[i].same_unoriented(items[j]) and abs(pedoe_product(items[i], items[j])) == 1

    buckets: dict[tuple[int, int], list[int]] = {}
    if proper:
        # exact rational cell of at least one max diameter: the radius is
        # 1/(f*sqrt(-D)) < 1/f, so 2/f_min bounds every diameter and tangent
        # centres land in the same or an adjacent cell (y is pre-divided by
        # Im(t) > 0.86, so a +-2 ring is already generous)
        f_min = min(abs(items[i].curv_red) for i in proper)
        cell = Fraction(2, f_min)
        for i in proper:
            x, y = items[i].center_xy()
            buckets.setdefault((math.floor(x / cell), math.floor(y / cell)), []).append(i)
        for (ix, iy), members in buckets.items():
            neighbours = []
            for dx in (-2, -1, 0, 1, 2):
                for dy in (-2, -1, 0, 1, 2):
                    neighbours.extend(buckets.get((ix + dx, iy + dy), []))
            for i in members:
                for j in neighbours:
                    if j > i and tangent(i, j):
                        edges.append((i, j))
    for li in lines:
        for j in range(len(items)):
            if j != li and tangent(li, j):
                edges.append((min(li, j), max(li, j)))
    return TangencyGraph(items, sorted(set(edges)))


def _im_unit(disc: int) -> float:
    return math.sqrt(-disc) / 2.0


def tangency_path(m1: Matrix2, m2: Matrix2) -> list[OrientedCircle]:
    """Chain of circles from circle(m1) to circle(m2), consecutive ones
    tangent or equal, built from the elementary decomposition of m1^-1*m2.

    Each E step moves within a tangent family through the marked point;
    each S step fixes the circle.  Only over Euclidean fields.
    """
    ctx = Discriminant(m1.disc)
    if not ctx.is_euclidean:
        raise NotEuclideanFieldError(f"discriminant {ctx.delta}")
    word = elementary_decomposition(m1.inverse() * m2)
    path = [circle_from_matrix(m1)]
    cur = m1
    for kind, arg in word.steps:
        step = Matrix2.translation(arg) if kind == "E" else Matrix2.inversion(ctx)
        cur = cur * step
        nxt = circle_from_matrix(cur)
        if nxt.unoriented_key() != path[-1].unoriented_key():
            path.append(nxt)
    for a, b in zip(path, path[1:]):
        assert abs(pedoe_product(a, b)) == 1, "path step is not a tangency"
    assert path[-1].same_unoriented(circle_from_matrix(m2))
    return path


# -- ghost circles ----------------------------------------------------------


@dataclass(frozen=True)
class GhostCircle:
    """The explicit circle disjoint from the whole arrangement (D <= -15).

    Orthogonal to the unit circle (curvature equals co-curvature), centre
    1/2 + i*sqrt(-D)/4 or 1/2 + i*(-D-1)/(4*sqrt(-D)) by residue branch;
    curv_sq is the exact square of its curvature.
    """

    delta: int
    curv_sq: Fraction
    center_x: Fraction
    center_y: Fraction  # in Im(t) = sqrt(-D)/2 units

    @property
    def radius_float(self) -> float:
        return 1.0 / math.sqrt(float(self.curv_sq))

    @property
    def center_float(self) -> tuple[float, float]:
        return float(self.center_x), float(self.center_y) * _im_unit(self.delta)

    def radius_sq(self) -> Fraction:
        return 1 / self.curv_sq


def ghost_circle(ctx: Discriminant) -> GhostCircle | None:
    """The ghost circle, or None for the five small discriminants.

    curvature^2 = 16/(-D-12) when D = 0 mod 4, else 16*(-D)/(D^2+14D+1);
    the radicand is positive exactly when D < -11.
    """
    d = ctx.delta
    if d > -12:
        return None
    if d % 4 == 0:
        curv_sq = Fraction(16, -d - 12)
        center_y = Fraction(1, 2)
    else:
        denom = d * d + 14 * d + 1
        if denom <= 0:
            return None
        curv_sq = Fraction(16 * (-d), denom)
        center_y = Fraction(-d - 1, 2 * (-d))
    return GhostCircle(d, curv_sq, Fraction(1, 2), center_y)


@dataclass(frozen=True)
class SeparationCertificate:
    """Exact witness that a circle misses the ghost circle.

    product_sq is the exact square of the Pedoe product of the pair; the
    integer invariant is the odd multiple from the residue argument
    (branch 0: product = m * B*sqrt(-D)/4; branch 1: product =
    (B*sqrt(-D)/4) * (k + e/D) with k odd and e = +-1).
    """

    delta: int
    branch: int
    invariant: int
    correction: int
    product_sq: Fraction
    product_float: float

    @property
    def strict(self) -> bool:
        return self.product_sq > 1


def ghost_separation(c: OrientedCircle, g: GhostCircle) -> SeparationCertificate:
    """Exact separation certificate |<G, C>| > 1 from the parity argument.

    Follows the two residue branches: in both, an integer extracted from
    the reduced triple is forced odd (hence nonzero), which pushes the
    product past 1 in absolute value.  Raises CertificateFailureError when
    the parity structure is violated (non-Bianchi input or a bug).
    """
    if g is None:
        raise NoGhostCircleError("no ghost circle for this field")
    if c.disc != g.delta:
        raise MixedDiscriminantError(f"{c.disc} vs {g.delta}")
    d = c.disc
    zeta = c.zeta
    if d % 4 == 0:
        # centre component x of i*zeta is -zeta.b*sqrt(-D)/2: zeta.b must be
        # even for genuine Bianchi circles (a det-1 consequence)
        if zeta.b % 2:
            raise CertificateFailureError("x-part of the centre is not in sqrt(-D)Z")
        x_red = -zeta.b // 2
        y = zeta.a
        m = -2 * (c.curv_red + c.cocurv_red) + 2 * x_red + y
        if m % 2 == 0:
            raise CertificateFailureError(f"invariant {m} is even")
        # product = m * B * sqrt(-D) / 4
        product_sq = Fraction(m * m * (-d), 16) * g.curv_sq
        cert = SeparationCertificate(
            d, 0, m, 0, product_sq, m * math.sqrt(float(g.curv_sq) * -d) / 4
        )
    else:
        # zeta = (A + T*sqrt(D))/2 with A = 2*zeta.a + zeta.b, T = zeta.b;
        # w is the integer (4*sqrt(-D)/B) * <G, C>
        big_a = 2 * zeta.a + zeta.b
        big_t = zeta.b
        w = (-d) * (-2 * (c.curv_red + c.cocurv_red) - big_t) + ((-d - 1) // 2) * big_a
        rem = w % (-d)
        if rem == 1:
            e = 1
        elif rem == (-d) - 1:
            e = -1
        else:
            raise CertificateFailureError(f"residue {rem} of {w} mod {-d} is not +-1")
        k = (w - e) // (-d)
        if k % 2 == 0:
            raise CertificateFailureError(f"invariant {k} is even")
        product_sq = Fraction(w * w, 16 * (-d)) * g.curv_sq
        cert = SeparationCertificate(
            d, 1, k, e, product_sq, w * math.sqrt(float(g.curv_sq)) / (4 * math.sqrt(-d))
        )
    if not cert.strict:
        raise CertificateFailureError(f"separation not strict: product^2 = {cert.product_sq}")
    return cert


def _sum_sqrt_less(a2: Fraction, b2: Fraction, c2: Fraction) -> bool:
    """Exact test sqrt(a2) + sqrt(b2) < sqrt(c2) for nonnegative rationals."""
    gap = c2 - a2 - b2
    if gap <= 0:
        return False
    return 4 * a2 * b2 < gap * gap


def circle_inside_ghost(c: OrientedCircle, g: GhostCircle) -> bool:
    """Exact: the closed disk of c lies strictly inside the ghost disk."""
    if c.is_line():
        return False
    x, y = c.center_xy()
    d2 = (x - g.center_x) ** 2 + (y - g.center_y) ** 2 * Fraction(-c.disc, 4)
    return _sum_sqrt_less(d2, c.radius_sq(), g.radius_sq())


def circle_outside_ghost(c: OrientedCircle, g: GhostCircle) -> bool:
    """Exact: the closed disk of c lies strictly outside the ghost disk."""
    if c.is_line():
        return False
    x, y = c.center_xy()
    d2 = (x - g.center_x) ** 2 + (y - g.center_y) ** 2 * Fraction(-c.disc, 4)
    return _sum_sqrt_less(g.radius_sq(), c.radius_sq(), d2)


def disconnectedness_witness(
    ctx: Discriminant, bound: int = 10
) -> tuple[OrientedCircle, OrientedCircle, GhostCircle]:
    """Two certified circles, one inside and one outside the ghost circle.

    A finite witness that the arrangement is disconnected; both circles
    additionally carry separation certificates.
    """
    g = ghost_circle(ctx)
    if g is None:
        raise NoGhostCircleError(f"discriminant {ctx.delta} has no ghost circle")
    window = Window.of(-2, 3, -2, 3)
    circles = enumerate_arrangement(ctx, bound, window)
    inside = outside = None
    for c in circles:
        if inside is None and circle_inside_ghost(c, g):
            inside = c
        elif outside is None and circle_outside_ghost(c, g):
            outside = c
        if inside is not None and outside is not None:
            break
    if inside is None or outside is None:
        raise CertificateFailureError(f"no witness found up to curvature {bound}")
    ghost_separation(inside, g)
    ghost_separation(outside, g)
    return inside, outside, g
