"""Dense exact linear algebra over the rationals.

Matrices are tuples of row tuples of :class:`fractions.Fraction`, vectors are
tuples of Fractions.  Everything here is deliberately small and naive: the
algebras this package handles have dimension well below 50.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import MalformedInputError, MalformedRationalError

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:/(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``-?digits(/digits)?`` into a Fraction (lowest terms)."""
    if not isinstance(text, str):
        raise MalformedRationalError(f"expected a rational string, got {text!r}")
    m = _RATIONAL_RE.match(text.replace("−", "-"))
    if m is None:
        raise MalformedRationalError(f"malformed rational {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise MalformedRationalError(f"malformed rational {text!r}: zero denominator")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def Q(x) -> Fraction:
    """Coerce ints, Fractions and rational strings to Fraction.

    Floats are refused: silently importing binary rounding error into an
    exact computation is never what the caller wants.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} {x!r} as an exact rational")


def vec(xs) -> tuple:
    return tuple(Q(x) for x in xs)


def mat(rows) -> tuple:
    rows = tuple(tuple(Q(x) for x in r) for r in rows)
    if rows and len({len(r) for r in rows}) != 1:
        raise MalformedInputError("ragged matrix")
    return rows


def zeros(r: int, c: int | None = None) -> tuple:
    c = r if c is None else c
    return tuple((ZERO,) * c for _ in range(r))


def identity(n: int) -> tuple:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def diag(entries) -> tuple:
    entries = vec(entries)
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else ZERO for j in range(n)) for i in range(n))


def unit(n: int, i: int) -> tuple:
    return tuple(ONE if k == i else ZERO for k in range(n))


def shape(A) -> tuple[int, int]:
    return (len(A), len(A[0]) if A else 0)


def transpose(A) -> tuple:
    if not A:
        return ()
    return tuple(zip(*A))


def matmul(A, B) -> tuple:
    Bt = transpose(B)
    return tuple(tuple(sum((a * b for a, b in zip(row, col) if a and b), ZERO) for col in Bt) for row in A)


def matvec(A, v) -> tuple:
    return tuple(sum((a * x for a, x in zip(row, v) if a and x), ZERO) for row in A)


def vecmat(v, A) -> tuple:
    """Row vector times matrix."""
    return matvec(transpose(A), v) if A else ()


def add(A, B) -> tuple:
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def sub(A, B) -> tuple:
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def scale(c, A) -> tuple:
    c = Q(c)
    return tuple(tuple(c * a for a in row) for row in A)


def commutator(A, B) -> tuple:
    return sub(matmul(A, B), matmul(B, A))


def trace(A) -> Fraction:
    return sum((A[i][i] for i in range(len(A))), ZERO)


def is_zero_matrix(A) -> bool:
    return all(x == 0 for row in A for x in row)


def vadd(u, v) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v) -> tuple:
    c = Q(c)
    return tuple(c * a for a in v)


def dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def bilinear(G, u, v) -> Fraction:
    return dot(u, matvec(G, v))


def lincomb(coeffs, vectors, n: int) -> tuple:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, x in enumerate(v):
                if x:
                    out[k] += c * x
    return tuple(out)


def columns(A) -> tuple:
    return transpose(A)


def from_columns(cols, n: int | None = None) -> tuple:
    cols = tuple(cols)
    if not cols:
        return tuple(() for _ in range(n or 0))
    return transpose(cols)


def block_diag(*blocks) -> tuple:
    n = sum(len(b) for b in blocks)
    out = [[ZERO] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = Q(x)
        off += len(b)
    return tuple(tuple(r) for r in out)


def kron(A, B) -> tuple:
    ra, ca = shape(A)
    rb, cb = shape(B)
    return tuple(
        tuple(A[i // rb][j // cb] * B[i % rb][j % cb] for j in range(ca * cb))
        for i in range(ra * rb)
    )


def rref(A):
    """Reduced row echelon form.  Returns ``(R, pivots)`` with zero rows dropped."""
    M = [list(r) for r in A]
    rows, cols = shape(A)
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pv = M[r][c]
        if pv != 1:
            M[r] = [x / pv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                Mr = M[r]
                M[i] = [a - f * b for a, b in zip(M[i], Mr)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return tuple(tuple(row) for row in M[:r]), tuple(pivots)


def rank(A) -> int:
    if not A or not A[0]:
        return 0
    return len(rref(A)[1])


def nullspace(A, ncols: int | None = None) -> list:
    """Basis of ``{x : A x = 0}``, one vector per free column (free entry 1)."""
    cols = shape(A)[1] if A else (ncols or 0)
    if not A:
        return [unit(cols, i) for i in range(cols)]
    R, pivots = rref(A)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * cols
        x[f] = ONE
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(A, b):
    """One solution of ``A x = b`` (free variables set to 0), or None."""
    rows, cols = shape(A)
    aug = tuple(tuple(row) + (Q(bi),) for row, bi in zip(A, b))
    R, pivots = rref(aug)
    if pivots and pivots[-1] == cols:
        return None
    x = [ZERO] * cols
    for row, p in zip(R, pivots):
        x[p] = row[cols]
    return tuple(x)


def inverse(A) -> tuple:
    n = len(A)
    aug = tuple(tuple(row) + unit(n, i) for i, row in enumerate(A))
    R, pivots = rref(aug)
    if pivots != tuple(range(n)):
        raise MalformedInputError("matrix is singular")
    return tuple(tuple(row[n:]) for row in R)


def det(A) -> Fraction:
    M = [list(r) for r in A]
    n = len(M)
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        pv = M[c][c]
        d *= pv
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] / pv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def is_symmetric(A) -> bool:
    return all(A[i][j] == A[j][i] for i in range(len(A)) for j in range(i))


def is_positive_definite(A) -> bool:
    """Exact test: every leading principal minor is positive.

    Gaussian elimination without pivoting computes the ratios of consecutive
    leading minors as the pivots, so it suffices that each pivot is > 0.
    """
    if not is_symmetric(A):
        return False
    M = [list(r) for r in A]
    n = len(M)
    for c in range(n):
        pv = M[c][c]
        if pv <= 0:
            return False
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] / pv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return True


def is_positive_semidefinite(A) -> bool:
    """Exact LDL^T with symmetric diagonal pivoting.

    At each step a strictly positive diagonal entry is eliminated.  If none
    remains, the trailing block is PSD exactly when it is zero: a negative
    diagonal is a direct witness, and a zero diagonal with a nonzero entry in
    its row gives a 2x2 principal minor that is negative.
    """
    if not is_symmetric(A):
        return False
    M = [list(r) for r in A]
    active = list(range(len(M)))
    while active:
        p = next((i for i in active if M[i][i] > 0), None)
        if p is None:
            return all(M[i][j] == 0 for i in active for j in active)
        active.remove(p)
        pv = M[p][p]
        for i in active:
            if M[i][p] != 0:
                f = M[i][p] / pv
                for j in active:
                    M[i][j] -= f * M[p][j]
    return True
