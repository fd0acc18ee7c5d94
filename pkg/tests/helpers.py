"""Shared generators for the test suite."""

import random

import schmidt as sk

ALL_FIELDS = (-3, -4, -7, -8, -11, -15, -19, -20, -23)
EUCLIDEAN_FIELDS = (-3, -4, -7, -8, -11)


def generators(ctx):
    return [
        sk.Matrix2.translation(ctx.one()),
        sk.Matrix2.translation(-ctx.one()),
        sk.Matrix2.translation(ctx.tau()),
        sk.Matrix2.translation(-ctx.tau()),
        sk.Matrix2.inversion(ctx),
    ]


def random_matrix(ctx, rng: random.Random, length: int = 8) -> sk.Matrix2:
    """Random det-1 matrix as a short product of elementary generators."""
    gens = generators(ctx)
    m = sk.Matrix2.identity(ctx)
    for _ in range(length):
        m = m * gens[rng.randrange(len(gens))]
    return m


def random_matrix_pool(ctx, rng: random.Random, size: int, length: int = 8):
    return [random_matrix(ctx, rng, length) for _ in range(size)]


def random_circle(ctx, rng: random.Random, steps: int = 8) -> sk.OrientedCircle:
    """Random Bianchi circle by walking the real line with generators."""
    gens = generators(ctx)
    c = sk.real_line(ctx)
    for _ in range(steps):
        c = sk.transform(gens[rng.randrange(len(gens))], c)
    return c


def random_proper_matrix(ctx, rng: random.Random, length: int = 8) -> sk.Matrix2:
    """Random matrix whose circle is proper (nonzero curvature)."""
    while True:
        m = random_matrix(ctx, rng, length)
        if sk.circle_from_matrix(m).curv_red != 0:
            return m
