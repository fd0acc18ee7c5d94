"""Small exact integer linear algebra: HNF for two columns, SNF solves.

Everything here works on plain Python ints (arbitrary precision) and is
sized for the tiny systems this package needs (at most 4x4).
"""

from math import gcd


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def hnf_two_columns(rows: list[tuple[int, int]]) -> tuple[tuple[int, int], tuple[int, int]]:
    """Hermite normal form [[p, q], [0, r]] of the row span of `rows`.

    p, r > 0 and 0 <= q < r; unique, so equal lattices get equal forms.
    Returns ((p, q), (0, r)); p or r is 0 when the span has lower rank.
    """
    work = [list(r) for r in rows if r != (0, 0) and r != [0, 0]]
    # clear the first column down to a single pivot row
    pivot = None
    for row in work:
        if row[0]:
            if pivot is None:
                pivot = row
                continue
            # euclid on the leading entries, combining whole rows
            while row[0]:
                if abs(row[0]) < abs(pivot[0]):
                    pivot[0], row[0] = row[0], pivot[0]
                    pivot[1], row[1] = row[1], pivot[1]
                q = row[0] // pivot[0]
                row[0] -= q * pivot[0]
                row[1] -= q * pivot[1]
    p, q0 = (pivot[0], pivot[1]) if pivot is not None else (0, 0)
    if p < 0:
        p, q0 = -p, -q0
    r = 0
    for row in work:
        if row is not pivot and row[1]:
            r = gcd(r, row[1])
    if r:
        q0 %= r
    return (p, q0), (0, r)


def smith_normal_form(matrix: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (D, U, V) with U*A*V = D diagonal, U and V unimodular."""
    a = [row[:] for row in matrix]
    m = len(a)
    n = len(a[0])
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            # find the smallest nonzero entry of the trailing block
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        clean = False
            if clean:
                break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return a, u, v


def solve_integer_system(matrix: list[list[int]], rhs: list[int]):
    """Solve A*x = rhs over the integers.

    Returns (particular, kernel_basis) or None when no integer solution
    exists.  kernel_basis spans all integer solutions of A*x = 0.
    """
    d, u, v = smith_normal_form(matrix)
    m = len(matrix)
    n = len(matrix[0])
    ub = [sum(u[i][k] * rhs[k] for k in range(m)) for i in range(m)]
    y = [0] * n
    for i in range(m):
        di = d[i][i] if i < n else 0
        if di == 0:
            if ub[i]:
                return None
        else:
            if ub[i] % di:
                return None
            y[i] = ub[i] // di
    particular = [sum(v[i][j] * y[j] for j in range(n)) for i in range(n)]
    kernel = []
    for j in range(n):
        if j >= m or d[j][j] == 0:
            kernel.append([v[i][j] for i in range(n)])
    return particular, kernel


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def lagrange_reduce(v1: list[int], v2: list[int]) -> tuple[list[int], list[int]]:
    """Gauss-Lagrange reduction of a rank-2 lattice basis under l2 norm."""
    v1, v2 = v1[:], v2[:]
    if _dot(v1, v1) > _dot(v2, v2):
        v1, v2 = v2, v1
    while True:
        n1 = _dot(v1, v1)
        if n1 == 0:
            return v1, v2
        mu = round(_dot(v1, v2) / n1)
        v2 = [x - mu * y for x, y in zip(v2, v1)]
        if _dot(v2, v2) >= n1:
            return v1, v2
        v1, v2 = v2, v1


def reduce_mod_kernel(particular: list[int], kernel: list[list[int]]) -> list[int]:
    """Shrink a particular solution by kernel vectors (deterministic)."""
    if not kernel:
        return particular
    basis = kernel
    if len(basis) == 2:
        basis = list(lagrange_reduce(basis[0], basis[1]))
    # size-reduce first so the small combo sweep below is enough
    for _ in range(2):
        for vec in basis:
            n = _dot(vec, vec)
            if n:
                mu = round(_dot(particular, vec) / n)
                if mu:
                    particular = [p - mu * v for p, v in zip(particular, vec)]

    def key(vec):
        return (max(abs(x) for x in vec), sum(abs(x) for x in vec), tuple(vec))

    best = particular
    best_key = key(particular)
    span = range(-3, 4)
    combos = [(i,) for i in span] if len(basis) == 1 else [(i, j) for i in span for j in span]
    for coeffs in combos:
        cand = particular[:]
        for c, vec in zip(coeffs, basis):
            if c:
                cand = [x + c * y for x, y in zip(cand, vec)]
        k = key(cand)
        if k < best_key:
            best, best_key = cand, k
    return best
