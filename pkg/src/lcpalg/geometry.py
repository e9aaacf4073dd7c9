"""Left-invariant metrics, Levi-Civita and Weyl connections, curvature.

A connection is stored as the list of matrices ``nabla_{e_i}``; curvature
follows ``R_{x,y} = [nabla_x, nabla_y] - nabla_{[x,y]}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import linalg as la
from .algebra import LieAlgebra, OneForm, ad_basis, is_closed, trace_form
from .errors import ClosednessError, MalformedInputError, MetricError, UsageError
from .linalg import ZERO, Q


class Metric:
    """Exact symmetric positive definite Gram matrix on the fixed basis."""

    __slots__ = ("gram", "inverse")

    def __init__(self, gram):
        gram = la.mat(gram)
        n = len(gram)
        if any(len(r) != n for r in gram):
            raise MalformedInputError("Gram matrix must be square")
        if not la.is_symmetric(gram):
            raise MetricError("Gram matrix is not symmetric")
        if not la.is_positive_definite(gram):
            raise MetricError("Gram matrix is not positive definite")
        self.gram = gram
        self.inverse = la.inverse(gram) if n else ()

    @classmethod
    def identity(cls, n: int) -> "Metric":
        return cls(la.identity(n))

    @classmethod
    def diagonal(cls, entries) -> "Metric":
        return cls(la.diag(entries))

    @property
    def dim(self) -> int:
        return len(self.gram)

    def inner(self, x, y) -> Fraction:
        return la.bilinear(self.gram, x, y)

    def norm2(self, x) -> Fraction:
        return self.inner(x, x)

    def sharp(self, theta) -> tuple:
        coeffs = theta.coeffs if isinstance(theta, OneForm) else la.vec(theta)
        return la.matvec(self.inverse, coeffs)

    def flat(self, x) -> OneForm:
        return OneForm(la.matvec(self.gram, x))

    def form_norm2(self, theta) -> Fraction:
        coeffs = theta.coeffs if isinstance(theta, OneForm) else la.vec(theta)
        return la.bilinear(self.inverse, coeffs, coeffs)

    def scaled(self, c) -> "Metric":
        return Metric(la.scale(c, self.gram))

    def is_skew(self, A) -> bool:
        """True when ``g(Ax, y) = -g(x, Ay)`` for all x, y."""
        GA = la.matmul(self.gram, A)
        return la.is_zero_matrix(la.add(GA, la.transpose(GA)))

    def __eq__(self, other):
        return isinstance(other, Metric) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        return f"Metric(dim={self.dim})"


def musical(M: Metric, theta) -> tuple:
    """``theta^sharp``: the vector with ``g(theta^sharp, .) = theta``."""
    return M.sharp(theta)


def musical_inv(M: Metric, x) -> OneForm:
    """``x^flat = g(x, .)``."""
    return M.flat(x)


def wedge_endo(M: Metric, u, w) -> tuple:
    """``(u ∧ w)(x) = g(u, x) w - g(w, x) u`` as a matrix."""
    gu = la.matvec(M.gram, u)
    gw = la.matvec(M.gram, w)
    n = M.dim
    return tuple(tuple(gu[j] * w[i] - gw[j] * u[i] for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class Connection:
    maps: tuple  # maps[i] is the matrix of nabla_{e_i}

    @property
    def dim(self) -> int:
        return len(self.maps)

    def at(self, x) -> tuple:
        n = self.dim
        out = la.zeros(n)
        for xi, A in zip(x, self.maps):
            if xi:
                out = la.add(out, la.scale(xi, A))
        return out

    def apply(self, x, y) -> tuple:
        return la.matvec(self.at(x), y)


@dataclass(frozen=True)
class CurvatureTensor:
    R: tuple  # R[i][j] is the matrix of R_{e_i, e_j}

    @property
    def dim(self) -> int:
        return len(self.R)

    def at(self, x, y) -> tuple:
        n = self.dim
        out = [[ZERO] * n for _ in range(n)]
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                f = xi * yj
                for a, row in enumerate(self.R[i][j]):
                    for b, v in enumerate(row):
                        if v:
                            out[a][b] += f * v
        return tuple(tuple(r) for r in out)

    def is_zero(self) -> bool:
        return all(la.is_zero_matrix(A) for row in self.R for A in row)


def _check_shapes(L: LieAlgebra, M: Metric):
    if M.dim != L.dim:
        raise MalformedInputError(f"metric of size {M.dim} on a {L.dim}-dimensional algebra")


def levi_civita(L: LieAlgebra, M: Metric) -> Connection:
    _check_shapes(L, M)
    n = L.dim
    G = M.gram
    # Gc[i][j][l] = g([e_i, e_j], e_l)
    Gc = [[la.matvec(G, L.c[i][j]) for j in range(n)] for i in range(n)]
    half = Fraction(1, 2)
    maps = []
    for i in range(n):
        cols = []
        for j in range(n):
            gamma = tuple(half * (Gc[i][j][l] - Gc[i][l][j] - Gc[j][l][i]) for l in range(n))
            cols.append(la.matvec(M.inverse, gamma))
        maps.append(la.from_columns(cols, n))
    return Connection(tuple(maps))


def _weyl_from_lc(M: Metric, lc: Connection, theta: OneForm) -> Connection:
    n = M.dim
    ts = M.sharp(theta)
    I = la.identity(n)
    maps = []
    for i in range(n):
        A = la.add(lc.maps[i], wedge_endo(M, ts, la.unit(n, i)))
        if theta[i]:
            A = la.add(A, la.scale(theta[i], I))
        maps.append(A)
    return Connection(tuple(maps))


def weyl_connection_unchecked(L: LieAlgebra, M: Metric, theta) -> Connection:
    """The Weyl connection formula without the closedness precondition."""
    theta = theta if isinstance(theta, OneForm) else OneForm(theta)
    _check_shapes(L, M)
    if theta.dim != L.dim:
        raise MalformedInputError("1-form length differs from algebra dimension")
    return _weyl_from_lc(M, levi_civita(L, M), theta)


def weyl_connection(L: LieAlgebra, M: Metric, theta) -> Connection:
    theta = theta if isinstance(theta, OneForm) else OneForm(theta)
    bad = is_closed(L, theta)
    if bad is not None:
        i, j = bad
        raise ClosednessError(f"theta([e{i + 1}, e{j + 1}]) != 0: the form is not closed", pair=bad)
    W = weyl_connection_unchecked(L, M, theta)
    I = la.identity(L.dim)
    for i, A in enumerate(W.maps):
        if not M.is_skew(la.sub(A, la.scale(theta[i], I))):
            raise AssertionError(f"nabla^theta_e{i + 1} - theta(e{i + 1}) Id is not skew")
    return W


def curvature(L: LieAlgebra, C: Connection) -> CurvatureTensor:
    n = L.dim
    R = []
    for i in range(n):
        row = []
        for j in range(n):
            if j < i:
                row.append(la.scale(-1, R[j][i]))
                continue
            A = la.commutator(C.maps[i], C.maps[j])
            for k, x in enumerate(L.c[i][j]):
                if x:
                    A = la.sub(A, la.scale(x, C.maps[k]))
            row.append(A)
        R.append(row)
    return CurvatureTensor(tuple(tuple(r) for r in R))


def ricci_from_curvature(R: CurvatureTensor) -> tuple:
    """``Ric(e_a, e_b) = tr(z -> R_{z, e_a} e_b)``."""
    n = R.dim
    return tuple(
        tuple(sum((R.R[i][a][i][b] for i in range(n)), ZERO) for b in range(n)) for a in range(n)
    )


def ricci(L: LieAlgebra, M: Metric) -> tuple:
    return ricci_from_curvature(curvature(L, levi_civita(L, M)))


@dataclass(frozen=True)
class CflatIdentityReport:
    curvature_identity: bool
    norm_identity: bool  # |nabla theta|^2 == |theta|^2 g(H, theta)
    ricci_identity: bool
    nabla_theta_zero: bool
    nabla_theta_norm2: Fraction
    trace_pairing: Fraction
    unscaled_norm_identity: bool  # |nabla theta|^2 == g(H, theta); needs |theta| = 1 or H(theta^sharp) = 0
    witnesses: tuple  # ((i, j), residual matrix) for the curvature identity

    @property
    def ok(self) -> bool:
        return self.curvature_identity and self.norm_identity and self.ricci_identity


def check_cflat_identities(L: LieAlgebra, M: Metric, theta) -> CflatIdentityReport:
    """Curvature, Ricci and ``|nabla theta|^2`` identities of a conformally
    flat LCP structure, evaluated exactly on all basis pairs.

    The norm identity is checked in the form ``|nabla theta|^2 = |theta|^2
    g(H, theta)`` that the Bochner argument produces; the version without
    the ``|theta|^2`` factor is reported separately."""
    from .algebra import Subspace
    from .verify import LcpCandidate, verify

    theta = theta if isinstance(theta, OneForm) else OneForm(theta)
    rep = verify(LcpCandidate(L, M, theta, Subspace.whole(L.dim)))
    if not rep.is_conformally_flat:
        raise UsageError("(L, M, theta) is not a conformally flat LCP structure")
    n = L.dim
    lc = levi_civita(L, M)
    R = curvature(L, lc)
    ts = M.sharp(theta)
    t2 = M.form_norm2(theta)
    basis = L.basis()
    dth = [la.matvec(A, ts) for A in lc.maps]  # (nabla_{e_i} theta)^sharp

    def th_wedge(x):
        return wedge_endo(M, ts, x)

    witnesses = []
    for i in range(n):
        for j in range(i + 1, n):
            x, y = basis[i], basis[j]
            rhs = la.scale(-t2, wedge_endo(M, x, y))
            rhs = la.add(rhs, la.scale(theta[i], th_wedge(y)))
            rhs = la.sub(rhs, la.scale(theta[j], th_wedge(x)))
            rhs = la.sub(rhs, wedge_endo(M, dth[i], y))
            rhs = la.add(rhs, wedge_endo(M, dth[j], x))
            diff = la.sub(R.R[i][j], rhs)
            if not la.is_zero_matrix(diff):
                witnesses.append(((i, j), diff))
    Ginv = M.inverse
    nn = sum(
        (Ginv[i][j] * M.inner(dth[i], dth[j]) for i in range(n) for j in range(n) if Ginv[i][j]),
        ZERO,
    )
    hp = trace_form(L)(ts)
    # Ric x = (n-2)(|theta|^2 x - theta(x) theta^sharp + nabla_x theta^sharp) - (delta theta) x,
    # with delta theta = -tr(x -> nabla_x theta^sharp) for a left-invariant form
    delta = -sum((dth[i][i] for i in range(n)), ZERO)
    ric = la.matmul(M.inverse, ricci_from_curvature(R))  # endomorphism, column i = Ric e_i
    ric_ok = True
    for i in range(n):
        x = basis[i]
        v = la.vadd(la.vsub(la.vscale(t2, x), la.vscale(theta[i], ts)), dth[i])
        v = la.vsub(la.vscale(n - 2, v), la.vscale(delta, x))
        if tuple(ric[a][i] for a in range(n)) != v:
            ric_ok = False
            break
    return CflatIdentityReport(
        curvature_identity=not witnesses,
        norm_identity=nn == t2 * hp,
        ricci_identity=ric_ok,
        nabla_theta_zero=all(not any(v) for v in dth),
        nabla_theta_norm2=nn,
        trace_pairing=hp,
        unscaled_norm_identity=nn == hp,
        witnesses=tuple(witnesses),
    )


@dataclass(frozen=True)
class MetricFlags:
    biinvariant: bool
    constant_curvature: Optional[Fraction]


def constant_curvature(L: LieAlgebra, M: Metric, R: Optional[CurvatureTensor] = None) -> Optional[Fraction]:
    """``k`` when ``R_{x,y} z = k (g(y,z) x - g(x,z) y)`` identically, else None.

    The constant is read off the first non-degenerate basis pair and then
    the full tensor is compared, which is equivalent to all sectional
    curvatures being equal.
    """
    n = L.dim
    if n < 2:
        return Fraction(0)
    if R is None:
        R = curvature(L, levi_civita(L, M))
    G = M.gram
    k0 = None
    for i in range(n):
        for j in range(i + 1, n):
            den = G[i][i] * G[j][j] - G[i][j] ** 2
            # g(R_{ei,ej} ej, ei)
            num = la.dot(la.matvec(G, la.unit(n, i)), [R.R[i][j][a][j] for a in range(n)])
            k0 = num / den
            break
        if k0 is not None:
            break
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                col = tuple(R.R[i][j][a][k] for a in range(n))
                expect = tuple(
                    k0 * (G[j][k] * (1 if a == i else 0) - G[i][k] * (1 if a == j else 0))
                    for a in range(n)
                )
                if col != expect:
                    return None
    return k0


def metric_flags(L: LieAlgebra, M: Metric) -> MetricFlags:
    _check_shapes(L, M)
    bi = all(M.is_skew(A) for A in ad_basis(L))
    return MetricFlags(biinvariant=bi, constant_curvature=constant_curvature(L, M))
