"""Exact linear algebra over the rationals.

Vectors are tuples of ``int`` or :class:`fractions.Fraction`; matrices are
sequences of row vectors.  Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple
Matrix = Sequence[Sequence]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Iterable) -> tuple[int, ...]:
    """Scale a rational vector by a positive factor to a coprime integer vector.

    The zero vector is returned unchanged (as integers).
    """
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def as_integral(v: Iterable) -> tuple[int, ...]:
    """Convert an integral rational vector to a tuple of ``int``; raise otherwise."""
    out = []
    for x in v:
        x = Fraction(x)
        if x.denominator != 1:
            raise ValueError(f"non-integral entry {x}")
        out.append(int(x))
    return tuple(out)


def rref(rows: Matrix, ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form.  Returns the nonzero rows and the pivot columns."""
    m = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Matrix, ncols: int | None = None) -> int:
    if not rows:
        return 0
    return len(rref(rows, ncols)[1])


def nullspace(rows: Matrix, ncols: int) -> list[tuple[int, ...]]:
    """Basis of the rational kernel ``{x : rows @ x = 0}`` as primitive integer vectors."""
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(primitive(x))
    return basis


def canonical_basis(vectors: Matrix, ncols: int) -> tuple[tuple[int, ...], ...]:
    """A canonical spanning set for ``span(vectors)``: RREF rows made primitive."""
    if not vectors:
        return ()
    red, _ = rref(vectors, ncols)
    return tuple(primitive(r) for r in red)


def solve(rows: Matrix, rhs: Sequence, ncols: int) -> list[Fraction] | None:
    """One exact solution of ``rows @ x = rhs`` (free variables zero), or ``None``."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def determinant(rows: Matrix) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def project_out(v: Sequence, basis: Matrix) -> list[Fraction]:
    """Orthogonal projection of ``v`` onto the complement of ``span(basis)``."""
    v = [Fraction(x) for x in v]
    if not basis:
        return v
    # Gram-Schmidt without normalisation keeps everything rational
    ortho: list[list[Fraction]] = []
    for b in basis:
        w = [Fraction(x) for x in b]
        for o in ortho:
            c = dot(w, o) / dot(o, o)
            w = [a - c * b2 for a, b2 in zip(w, o)]
        if any(w):
            ortho.append(w)
    for o in ortho:
        c = dot(v, o) / dot(o, o)
        v = [a - c * b for a, b in zip(v, o)]
    return v


def kernel_lattice_basis(matrix: Matrix) -> list[tuple[int, ...]]:
    """Lattice basis of ``ker(M) ∩ Z^n`` for a rational matrix ``M``.

    Column-style Hermite reduction: unimodular column operations bring ``M``
    to ``[H | 0]``; the columns of the accumulated transform that sit under
    the zero block generate the integer kernel.
    """
    rows = [primitive(r) if any(r) else tuple(0 for _ in r) for r in matrix]
    if not rows:
        return []
    n = len(rows[0])
    a = [list(r) for r in rows]
    u = [[int(i == j) for j in range(n)] for i in range(n)]  # columns of u track transforms

    def colop(i: int, j: int, p: int, q: int, r: int, s: int) -> None:
        # (col_i, col_j) <- (p col_i + q col_j, r col_i + s col_j), det = ±1
        for mat in (a, u):
            for row in mat:
                x, y = row[i], row[j]
                row[i], row[j] = p * x + q * y, r * x + s * y

    piv = 0
    for r in range(len(a)):
        if piv == n:
            break
        for j in range(piv + 1, n):
            x, y = a[r][piv], a[r][j]
            if y == 0:
                continue
            g, s, t = _ext_gcd(x, y)
            # [x y] [[s, -y/g], [t, x/g]] = [g, 0]
            colop(piv, j, s, t, -y // g, x // g)
        if a[r][piv] != 0:
            piv += 1
    return [tuple(u[i][c] for i in range(n)) for c in range(piv, n)]


def _ext_gcd(x: int, y: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*x + t*y == g == gcd(x, y) >= 0``."""
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t
