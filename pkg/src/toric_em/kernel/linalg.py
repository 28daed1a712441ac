"""Exact linear algebra over Q and Z on small dense matrices (lists of rows)."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd


def to_fraction_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def transpose(rows):
    return [list(col) for col in zip(*rows)] if rows else []


def matmul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u, v):
    return sum(Fraction(a) * b for a, b in zip(u, v))


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def det(rows) -> Fraction:
    m = to_fraction_matrix(rows)
    n = len(m)
    if n == 0:
        return Fraction(1)
    sign = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    out = Fraction(sign)
    for i in range(n):
        out *= m[i][i]
    return out


def rref(rows):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = to_fraction_matrix(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def inverse(rows):
    n = len(rows)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def solve(rows, rhs):
    """Unique solution of a square nonsingular system."""
    inv = inverse(rows)
    return matvec(inv, [Fraction(x) for x in rhs])


def solve_in_span(columns, target):
    """Coefficients ``a`` with ``sum a_i columns[i] == target`` (columns independent)."""
    k = len(columns)
    n = len(target)
    aug = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    red, piv = rref(aug)
    if k in piv:
        raise ValueError("target not in span")
    out = [Fraction(0)] * k
    for r, c in enumerate(piv):
        out[c] = red[r][k]
    return out


def nullspace(rows, ncols=None):
    """Basis of the rational right kernel."""
    if not rows:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    red, piv = rref(rows)
    ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(piv):
            v[c] = -red[r][f]
        basis.append(v)
    return basis


def primitive(vec):
    """Smallest positive multiple of a rational vector that is a primitive integer vector."""
    fr = [Fraction(x) for x in vec]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        raise ValueError("zero vector has no primitive multiple")
    return tuple(x // g for x in ints)


def hyperplane_normal(diffs, n):
    """Integer normal to the span of ``n-1`` vectors in Z^n (generalized cross product)."""
    out = []
    for j in range(n):
        minor = [[row[c] for c in range(n) if c != j] for row in diffs]
        out.append(((-1) ** j) * det(minor))
    return [int(x) for x in out]


def smith_normal_form(a):
    """Integer Smith normal form with transforms.

    Returns ``(d, p, q)`` with ``p * a * q == d`` where ``p, q`` are unimodular
    and ``d`` is diagonal with ``d[i][i] | d[i+1][i+1]``.
    """
    m = [list(map(int, row)) for row in a]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    p = identity(nr)
    q = identity(nc)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        p[i], p[j] = p[j], p[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in q:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row_dst += f * row_src
        m[dst] = [x + f * y for x, y in zip(m[dst], m[src])]
        p[dst] = [x + f * y for x, y in zip(p[dst], p[src])]

    def add_col(src, dst, f):
        for row in m:
            row[dst] += f * row[src]
        for row in q:
            row[dst] += f * row[src]

    t = 0
    while t < min(nr, nc):
        entries = [(abs(m[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if m[i][j] != 0]
        if not entries:
            break
        _, i0, j0 = min(entries)
        swap_rows(t, i0)
        swap_cols(t, j0)
        done = False
        while not done:
            done = True
            for i in range(t + 1, nr):
                if m[i][t]:
                    f = m[i][t] // m[t][t]
                    add_row(t, i, -f)
                    if m[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, nc):
                if m[t][j]:
                    f = m[t][j] // m[t][t]
                    add_col(t, j, -f)
                    if m[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                # divisibility condition on the remaining block
                bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                            if m[i][j] % m[t][t]), None)
                if bad is not None:
                    add_row(bad[0], t, 1)
                    done = False
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            p[t] = [-x for x in p[t]]
        t += 1
    return m, p, q


def integer_inverse(u):
    inv = inverse(u)
    out = [[int(x) for x in row] for row in inv]
    if any(Fraction(x) != y for r1, r2 in zip(out, inv) for x, y in zip(r1, r2)):
        raise ValueError("matrix is not unimodular")
    return out


def saturation_basis(vectors, n):
    """Basis (list of integer vectors) of ``span(vectors) ∩ Z^n``."""
    if not vectors:
        return []
    cols = transpose([list(v) for v in vectors])  # n x k
    d, p, _ = smith_normal_form(cols)
    r = sum(1 for i in range(min(len(d), len(d[0]))) if d[i][i] != 0)
    pinv = integer_inverse(p)
    return [tuple(pinv[i][j] for i in range(n)) for j in range(r)]


def quotient_map(vectors, n):
    """Integer matrix (rows) of a surjection ``Z^n -> Z^{n-k}`` killing ``span(vectors) ∩ Z^n``."""
    if not vectors:
        return identity(n)
    cols = transpose([list(v) for v in vectors])
    d, p, _ = smith_normal_form(cols)
    r = sum(1 for i in range(min(len(d), len(d[0]))) if d[i][i] != 0)
    return [list(row) for row in p[r:]]


def index_of_sublattice(vectors, n) -> int:
    """Index of the lattice generated by ``vectors`` inside its saturation."""
    if not vectors:
        return 1
    cols = transpose([list(v) for v in vectors])
    d, _, _ = smith_normal_form(cols)
    out = 1
    for i in range(min(len(d), len(d[0]))):
        if d[i][i]:
            out *= d[i][i]
    return abs(out)
