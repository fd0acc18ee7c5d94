import random
from fractions import Fraction

import pytest

import schmidt as sk
from schmidt.arrangement import circle_inside_ghost, circle_outside_ghost, line_meets_window
from schmidt.errors import CertificateFailureError, NoGhostCircleError, NotEuclideanFieldError

from helpers import ALL_FIELDS, EUCLIDEAN_FIELDS, random_matrix


def test_window_parse():
    ctx = sk.validate_discriminant(-7)
    w = sk.Window.parse("fund", ctx)
    assert (w.x0, w.x1, w.y0, w.y1) == (0, Fraction(3, 2), 0, 1)
    w2 = sk.Window.parse("-2,3,-1/2,3", ctx)
    assert w2.y0 == Fraction(-1, 2)
    with pytest.raises(ValueError):
        sk.Window.parse("1,2,3", ctx)
    with pytest.raises(ValueError):
        sk.Window.of(1, 0, 0, 1)


def test_window_membership():
    ctx = sk.validate_discriminant(-4)
    win = sk.Window.of(0, 1, 0, 1)
    inside = sk.circle_from_residue(ctx, 1, ctx.one())  # centre i/2, radius 1/2
    assert sk.circle_meets_window(inside, win)
    assert sk.circle_meets_window(inside.translated(ctx(1)), win)  # touches the edge
    assert not sk.circle_meets_window(inside.translated(ctx(2)), win)
    rhat = sk.real_line(ctx)
    assert line_meets_window(rhat, win)
    assert not line_meets_window(rhat.translated(ctx(0, 2)), win)


def test_enumeration_members_are_valid_and_in_window():
    for d in (-8, -15):
        ctx = sk.validate_discriminant(d)
        win = sk.Window.fundamental(ctx)
        found = sk.enumerate_arrangement(ctx, 6, win, include_lines=True)
        assert len(found) > 0
        for c in found:
            assert c.zeta.norm() == 1 - d * c.curv_red * c.cocurv_red
            assert abs(c.curv_red) <= 6
            assert sk.circle_meets_window(c, win)


def test_enumeration_counts_match_bfs():
    # completeness oracle over Euclidean fields: the elementary-orbit
    # closure reproduces the residue enumeration inside the window,
    # including the three line directions of the sixth-roots field
    for d in EUCLIDEAN_FIELDS:
        ctx = sk.validate_discriminant(d)
        win = sk.Window.fundamental(ctx)
        full = sk.enumerate_arrangement(ctx, 4, win, include_lines=True)
        bfs = sk.bfs_enumerate(ctx, 4, 14, win)
        stabilized = sk.bfs_enumerate(ctx, 4, 17, win)
        assert bfs.restricted(win, 4).keys() == full.keys(), d
        assert stabilized.restricted(win, 4).keys() == full.keys(), d


def test_bfs_depth_zero():
    ctx = sk.validate_discriminant(-7)
    out = sk.bfs_enumerate(ctx, 5, 0)
    assert len(out) == 1
    assert sk.real_line(ctx) in out


def test_bfs_stays_outside_ghost_interior():
    ctx = sk.validate_discriminant(-19)
    g = sk.ghost_circle(ctx)
    inside, _, _ = sk.disconnectedness_witness(ctx)
    win = sk.Window.of(-2, 3, -2, 3)
    orbit = sk.bfs_enumerate(ctx, abs(inside.curv_red), 12, win)
    assert inside not in orbit
    for c in orbit:
        assert not circle_inside_ghost(c, g)


def test_oriented_mode_keeps_orientations():
    ctx = sk.validate_discriminant(-7)
    win = sk.Window.fundamental(ctx)
    plain = sk.enumerate_arrangement(ctx, 2, win)
    oriented = sk.enumerate_arrangement(ctx, 2, win, oriented=True)
    assert len(oriented) == 2 * len(plain)


def test_parallelogram_counts():
    ctx = sk.validate_discriminant(-4)
    assert sk.parallelogram_count(ctx, 1) == 1  # the one exceptional case
    ctx7 = sk.validate_discriminant(-7)
    assert sk.parallelogram_count(ctx7, 1) == 2
    # translation invariance of the half-open census
    assert sk.parallelogram_count(ctx7, 4, (Fraction(2, 5), Fraction(1, 3))) == sk.parallelogram_count(ctx7, 4)


def test_tangency_graph_small():
    ctx = sk.validate_discriminant(-7)
    below = sk.circle_from_matrix(sk.Matrix2(ctx(0), ctx(1), ctx(1), ctx.tau()))
    far = below.translated(ctx(5))
    g = sk.tangency_graph([below, far])
    assert g.edges == []
    assert len(g.components()) == 2
    g2 = sk.tangency_graph([sk.real_line(ctx), below])
    assert g2.edges == [(0, 1)]
    assert len(g2.components()) == 1


def test_tangency_graph_euclidean_window_connected():
    ctx = sk.validate_discriminant(-4)
    win = sk.Window.fundamental(ctx)
    circles = sk.enumerate_arrangement(ctx, 10, win, include_lines=True)
    graph = sk.tangency_graph(circles)
    comps = graph.components()
    # everything the window sees hangs together through the real-line translates
    assert len(comps) == 1
    assert any(c.is_line() for c in graph.circles)


def test_tangency_path_examples():
    ctx = sk.validate_discriminant(-4)
    ident = sk.Matrix2.identity(ctx)
    assert len(sk.tangency_path(ident, ident)) == 1
    target = sk.Matrix2.translation(ctx.tau()) * sk.Matrix2.inversion(ctx)
    path = sk.tangency_path(ident, target)
    assert len(path) <= 3
    rng = random.Random(10)
    for d in EUCLIDEAN_FIELDS:
        c = sk.validate_discriminant(d)
        for _ in range(20):
            m1 = random_matrix(c, rng)
            m2 = random_matrix(c, rng)
            path = sk.tangency_path(m1, m2)
            assert path[0].same_unoriented(sk.circle_from_matrix(m1))
            assert path[-1].same_unoriented(sk.circle_from_matrix(m2))
    with pytest.raises(NotEuclideanFieldError):
        c19 = sk.validate_discriminant(-19)
        sk.tangency_path(sk.Matrix2.identity(c19), sk.Matrix2.identity(c19))


def test_ghost_circle_values():
    assert sk.ghost_circle(sk.validate_discriminant(-8)) is None
    assert sk.ghost_circle(sk.validate_discriminant(-11)) is None
    g15 = sk.ghost_circle(sk.validate_discriminant(-15))
    assert g15.curv_sq == 15
    g20 = sk.ghost_circle(sk.validate_discriminant(-20))
    assert g20.curv_sq == 2
    g19 = sk.ghost_circle(sk.validate_discriminant(-19))
    assert g19.curv_sq == Fraction(19, 6)
    # orthogonal to the unit circle: centre distance^2 = r^2 + 1
    for g in (g15, g20, g19):
        d2 = g.center_x**2 + g.center_y**2 * Fraction(-g.delta, 4)
        assert d2 == g.radius_sq() + 1


def test_ghost_separation_certificates():
    ctx = sk.validate_discriminant(-20)
    g = sk.ghost_circle(ctx)
    c = sk.circle_from_residue(ctx, 1, ctx.one())
    cert = sk.ghost_separation(c, g)
    assert cert.invariant % 2 == 1
    assert cert.product_sq >= Fraction(40, 16)  # |<G,C>| >= B*sqrt(-D)/4 = sqrt(40)/4
    # line case stays strict
    ctx15 = sk.validate_discriminant(-15)
    cert_line = sk.ghost_separation(sk.real_line(ctx15), sk.ghost_circle(ctx15))
    assert cert_line.invariant % 2 == 1
    assert cert_line.product_sq == Fraction(49, 4)
    with pytest.raises(NoGhostCircleError):
        sk.ghost_separation(sk.real_line(ctx15), None)


def test_ghost_separation_sweep():
    for d in (-15, -20):
        ctx = sk.validate_discriminant(d)
        g = sk.ghost_circle(ctx)
        win = sk.Window.of(-1, 2, -1, 2)
        for c in sk.enumerate_arrangement(ctx, 12, win, include_lines=True):
            cert = sk.ghost_separation(c, g)
            assert cert.product_sq > 1
            assert cert.invariant % 2 == 1


def test_ghost_separation_rejects_fake_triples():
    # a triple satisfying the Gram identity that no unimodular matrix
    # produces; the certificate notices the parity violation
    ctx = sk.validate_discriminant(-20)
    fake = sk.OrientedCircle(1, 1, ctx(4, 1))  # norm 21 = 1 + 20, but zeta.b odd
    with pytest.raises(CertificateFailureError):
        sk.ghost_separation(fake, sk.ghost_circle(ctx))


def test_disconnectedness_witness():
    for d in (-15, -19):
        ctx = sk.validate_discriminant(d)
        inside, outside, g = sk.disconnectedness_witness(ctx)
        assert circle_inside_ghost(inside, g)
        assert circle_outside_ghost(outside, g)
        assert abs(inside.curv_red) <= 10 and abs(outside.curv_red) <= 10
    with pytest.raises(NoGhostCircleError):
        sk.disconnectedness_witness(sk.validate_discriminant(-11))


def test_angle_census():
    for d, allowed in ((-7, {1}), (-11, {1}), (-3, {Fraction(1), Fraction(1, 2)})):
        ctx = sk.validate_discriminant(d)
        win = sk.Window.fundamental(ctx)
        circles = list(sk.enumerate_arrangement(ctx, 5, win, include_lines=True))
        seen = set()
        for i in range(len(circles)):
            for j in range(i + 1, len(circles)):
                p = abs(sk.pedoe_product(circles[i], circles[j]))
                if p <= 1:
                    seen.add(p)
        assert seen == allowed, (d, seen)
