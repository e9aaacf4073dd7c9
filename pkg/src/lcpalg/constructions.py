"""Factories for LCP candidates.

Every factory verifies its output before returning it and raises
:class:`ConstructionError` if verification fails, so a returned candidate
is always a certified LCP structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .algebra import (
    LieAlgebra,
    OneForm,
    Subspace,
    check_representation,
    direct_sum,
    is_closed,
    semidirect_product,
    structural_flags,
    trace_form,
)
from .errors import (
    ClosednessError,
    ConstructionError,
    DegenerateXiError,
    DomainError,
    MalformedInputError,
    MetricError,
    RepresentationError,
    UsageError,
)
from .geometry import Metric
from .linalg import ONE, ZERO, Q
from .verify import LcpCandidate, verify

__all__ = [
    "OrthogonalRep",
    "su2",
    "su2_plus_r",
    "sol3",
    "lcp_semidirect",
    "lcp_extension",
    "cflat_extension",
    "example_rp",
    "example_su2r",
    "example_sol3",
    "so3_base",
    "example_so3",
    "sld_base",
    "example_sld",
    "change_basis",
]


@dataclass(frozen=True)
class OrthogonalRep:
    """Skew-symmetric matrices ``beta(e_i)`` on ``R^q`` with its standard
    inner product."""

    mats: tuple

    def __post_init__(self):
        mats = tuple(la.mat(m) for m in self.mats)
        object.__setattr__(self, "mats", mats)
        for i, m in enumerate(mats):
            r, c = la.shape(m)
            if r != c:
                raise MalformedInputError(f"beta(e{i + 1}) is not square")
            if not la.is_zero_matrix(la.add(m, la.transpose(m))):
                raise RepresentationError(f"beta(e{i + 1}) is not skew-symmetric")
        if len({la.shape(m) for m in mats}) > 1:
            raise MalformedInputError("beta matrices have different sizes")

    @classmethod
    def zero(cls, m: int, q: int) -> "OrthogonalRep":
        return cls(tuple(la.zeros(q) for _ in range(m)))

    @classmethod
    def rotation(cls, phi, q: int, plane=(0, 1)) -> "OrthogonalRep":
        """``beta(e_i) = phi_i J`` with J the rotation generator of ``plane``.

        This is a representation exactly when ``phi`` is a closed 1-form.
        """
        a, b = plane
        mats = []
        for p in phi:
            M = [[ZERO] * q for _ in range(q)]
            M[a][b] = -Q(p)
            M[b][a] = Q(p)
            mats.append(M)
        return cls(tuple(mats))

    def check(self, H: LieAlgebra, q: int):
        if len(self.mats) != H.dim:
            raise MalformedInputError(f"beta needs {H.dim} matrices, got {len(self.mats)}")
        if any(la.shape(m) != (q, q) for m in self.mats):
            raise MalformedInputError(f"beta matrices must be {q}x{q}")
        bad = check_representation(H, self.mats)
        if bad is not None:
            raise RepresentationError("beta is not a representation", pair=bad)


def su2() -> LieAlgebra:
    return LieAlgebra.from_brackets(
        3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}}, ("e1", "e2", "e3")
    )


def su2_plus_r() -> LieAlgebra:
    return direct_sum(su2(), LieAlgebra.abelian(1), ("e1", "e2", "e3", "z"))


def sol3() -> LieAlgebra:
    return LieAlgebra.from_brackets(3, {(0, 1): {1: 1}, (0, 2): {2: -1}}, ("b", "p", "u"))


def _fail_closed(cand: LcpCandidate, what: str, **flags) -> LcpCandidate:
    rep = verify(cand)
    for name, want in flags.items():
        if getattr(rep, name) != want:
            w = rep.first_witness()
            raise ConstructionError(f"{what}: {name} is {getattr(rep, name)}, first witness {w}")
    return cand


def _semidirect_candidate(H, h, xi, beta, q, names=None):
    alpha = [la.add(la.scale(xi[i], la.identity(q)), beta.mats[i]) for i in range(H.dim)]
    G = semidirect_product(H, q, alpha, names)
    metric = Metric(la.block_diag(h.gram, la.identity(q)))
    theta = xi.extend_by_zero(q)
    U = Subspace.coordinate(H.dim + q, range(H.dim, H.dim + q))
    return LcpCandidate(G, metric, theta, U)


def lcp_semidirect(H: LieAlgebra, h: Metric, xi, beta: OrthogonalRep, q: int) -> LcpCandidate:
    """``H ⋉_alpha R^q`` with ``alpha = xi Id + beta``, metric ``h ⊕ <,>``,
    Lee form ``xi`` extended by zero and flat space ``R^q``."""
    xi = xi if isinstance(xi, OneForm) else OneForm(xi)
    if q < 1:
        raise DomainError("q must be at least 1")
    if h.dim != H.dim or xi.dim != H.dim:
        raise MalformedInputError("metric / xi do not match the base algebra")
    if xi.is_zero():
        raise ClosednessError("xi must be nonzero")
    bad = is_closed(H, xi)
    if bad is not None:
        raise ClosednessError("xi is not closed on H", pair=bad)
    beta.check(H, q)
    cand = _semidirect_candidate(H, h, xi, beta, q)
    return _fail_closed(cand, "lcp_semidirect", is_lcp=True, is_adapted=True)


def lcp_extension(H: LieAlgebra, h: Metric, beta: OrthogonalRep, q: int) -> LcpCandidate:
    """The unimodular LCP extension: ``lcp_semidirect`` with ``xi = -H^h / q``."""
    if q < 1:
        raise DomainError("q must be at least 1")
    tf = trace_form(H)
    if tf.is_zero():
        raise DegenerateXiError("base algebra is unimodular, so xi = -(1/q) H would vanish")
    xi = tf * Fraction(-1, q)
    cand = lcp_semidirect(H, h, xi, beta, q)
    return _fail_closed(cand, "lcp_extension", unimodular=True, is_adapted=True)


def cflat_extension(K: LieAlgebra, gK: Metric, thetaK, beta: OrthogonalRep, n: int) -> LcpCandidate:
    """``K ⋉_rho R^n`` with ``rho = theta_K Id + beta``: conformally flat."""
    thetaK = thetaK if isinstance(thetaK, OneForm) else OneForm(thetaK)
    if n < 0:
        raise DomainError("n must be non-negative")
    base = LcpCandidate(K, gK, thetaK, Subspace.whole(K.dim))
    if not verify(base).is_conformally_flat:
        raise UsageError("(K, g_K, theta_K) is not a conformally flat LCP structure")
    beta.check(K, n)
    cand = _semidirect_candidate(K, gK, thetaK, beta, n)
    cand = LcpCandidate(cand.algebra, cand.metric, cand.theta, Subspace.whole(K.dim + n))
    return _fail_closed(cand, "cflat_extension", is_conformally_flat=True)


def example_rp(p: int, M: Metric, theta) -> LcpCandidate:
    """Abelian ``R^p`` (p = 1, 2) with any metric and nonzero 1-form."""
    if p not in (1, 2):
        raise DomainError("only R^1 and R^2 carry conformally flat LCP structures this way")
    theta = theta if isinstance(theta, OneForm) else OneForm(theta)
    if theta.is_zero():
        raise DomainError("theta must be nonzero")
    cand = LcpCandidate(LieAlgebra.abelian(p), M, theta, Subspace.whole(p))
    return _fail_closed(cand, "example_rp", is_conformally_flat=True)


def example_su2r(mu, lam, x0=(0, 0, 0)) -> LcpCandidate:
    """su(2) ⊕ Rz with ``g|su(2) = -mu kappa = 2 mu Id``,
    ``g(z, x) = -(1/lam) g(x0, x)``, ``|z|^2 = (1/8mu + |x0|^2)/lam^2``
    and Lee form ``g(lam z + x0, .)``."""
    mu, lam = Q(mu), Q(lam)
    x0 = la.vec(x0)
    if len(x0) != 3:
        raise MalformedInputError("x0 must be a vector in su(2)")
    if mu <= 0:
        raise MetricError("mu must be positive for the metric to be positive definite")
    if lam == 0:
        raise DomainError("lambda must be nonzero")
    g = 2 * mu
    x0n = g * la.dot(x0, x0)
    gz = [-(g * x) / lam for x in x0]
    zz = (Fraction(1) / (8 * mu) + x0n) / (lam * lam)
    gram = [
        [g, 0, 0, gz[0]],
        [0, g, 0, gz[1]],
        [0, 0, g, gz[2]],
        [gz[0], gz[1], gz[2], zz],
    ]
    M = Metric(gram)
    theta = M.flat(x0 + (lam,))
    if theta[3] != 1 / (8 * mu * lam) or M.form_norm2(theta) != 1 / (8 * mu):
        raise ConstructionError("Lee form normalisation failed")
    cand = LcpCandidate(su2_plus_r(), M, theta, Subspace.whole(4))
    return _fail_closed(cand, "example_su2r", is_conformally_flat=True)


def example_sol3() -> LcpCandidate:
    """sol3 as the LCP extension of ``span{b, p}``, ``[b, p] = p``, with q = 1."""
    H = LieAlgebra.from_brackets(2, {(0, 1): {1: 1}}, ("b", "p"))
    cand = lcp_extension(H, Metric.identity(2), OrthogonalRep.zero(2, 1), 1)
    L = cand.algebra
    return LcpCandidate(
        LieAlgebra(L.dim, L.c, ("b", "p", "u")), cand.metric, cand.theta, cand.u
    )


def so3_base():
    """``h = so(3) ⋉ (Rb ⋉ R^3)`` with b acting by -Id and so(3) by rotations,
    and the identity metric.  Basis (L1, L2, L3, b, f1, f2, f3)."""
    br = {}
    eps = {(0, 1): 2, (1, 2): 0, (2, 0): 1}
    for (i, j), k in eps.items():
        a, b = min(i, j), max(i, j)
        br.setdefault((a, b), {})[k] = 1 if i < j else -1
    # [L_i, f_j] = sum_k eps_ijk f_k
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            k = 3 - i - j
            sign = 1 if (i, j) in eps else -1
            br.setdefault((i, 4 + j), {})[4 + k] = sign
    for j in range(3):
        br[(3, 4 + j)] = {4 + j: -1}
    H = LieAlgebra.from_brackets(7, br, ("L1", "L2", "L3", "b", "f1", "f2", "f3"))
    return H, Metric.identity(7)


def example_so3() -> LcpCandidate:
    H, h = so3_base()
    cand = lcp_extension(H, h, OrthogonalRep.zero(7, 3), 3)
    L = cand.algebra
    names = H.basis_names + ("u1", "u2", "u3")
    return LcpCandidate(LieAlgebra(L.dim, L.c, names), cand.metric, cand.theta, cand.u)


def _sl_basis(d: int):
    """``E_ij - delta_ij E_dd`` for (i, j) != (d, d), row-major."""
    out = []
    for i in range(d):
        for j in range(d):
            if (i, j) == (d - 1, d - 1):
                continue
            m = [[ZERO] * d for _ in range(d)]
            m[i][j] = ONE
            if i == j:
                m[d - 1][d - 1] = -ONE
            out.append(tuple(tuple(r) for r in m))
    return out


def _sl_coords(N, d):
    return tuple(N[i][j] for i in range(d) for j in range(d) if (i, j) != (d - 1, d - 1))


def _right_action(N, d):
    """Matrix of ``X -> -X N`` on d x d matrices flattened row-major.

    ``X -> X N`` reverses brackets; the sign makes it a representation
    (the differential of ``X -> X M^{-1}``).
    """
    n = d * d
    A = [[ZERO] * n for _ in range(n)]
    for r in range(d):
        for c in range(d):
            col = r * d + c  # input basis matrix E_rc
            # E_rc N has row r equal to row c of N
            for k in range(d):
                if N[c][k]:
                    A[r * d + k][col] -= N[c][k]
    return tuple(tuple(row) for row in A)


def sld_base(d: int):
    """``sl(d, R) ⊕ Rb`` and the action ``dtau`` on ``R^{d^2+1} ⊗ R^2``."""
    if not isinstance(d, int) or d < 2:
        raise DomainError("d must be an integer >= 2")
    basis = _sl_basis(d)
    m = len(basis)
    br = {}
    for a in range(m):
        for b in range(a + 1, m):
            co = _sl_coords(la.commutator(basis[a], basis[b]), d)
            if any(co):
                br[(a, b)] = co + (ZERO,)
    names = tuple(
        f"E{i + 1}{j + 1}" for i in range(d) for j in range(d) if (i, j) != (d - 1, d - 1)
    ) + ("b",)
    K = LieAlgebra.from_brackets(m + 1, br, names)
    n = d * d
    A2 = la.diag([1, -1])
    I2 = la.identity(2)
    action = []
    for N in basis:
        rho = la.block_diag(_right_action(N, d), la.zeros(1))
        action.append(la.kron(rho, I2))
    action.append(la.kron(la.identity(n + 1), A2))
    return K, action


def example_sld(d: int) -> LcpCandidate:
    """``(sl(d) ⊕ Rb) ⋉ (R^{d^2+1} ⊗ R^2)`` with ``u = R e_{d^2+1} ⊗ v_1``
    and Lee form ``b^flat``; identity metric on the basis
    (sl basis, b, e_i ⊗ v_j in lexicographic order)."""
    K, action = sld_base(d)
    n = d * d
    dimV = 2 * (n + 1)
    vnames = tuple(f"e{i + 1}v{j + 1}" for i in range(n + 1) for j in range(2))
    G = semidirect_product(K, dimV, action, K.basis_names + vnames)
    N = G.dim
    b = K.dim - 1
    u_index = K.dim + 2 * n  # e_{n+1} ⊗ v_1
    cand = LcpCandidate(G, Metric.identity(N), OneForm.dual(N, b), Subspace.coordinate(N, [u_index]))
    return _fail_closed(cand, "example_sld", is_adapted=True, unimodular=True)


def change_basis(c: LcpCandidate, P) -> LcpCandidate:
    """Re-express a candidate in the basis ``f_a = sum_i P[i][a] e_i``."""
    P = la.mat(P)
    n = c.dim
    Pinv = la.inverse(P)
    cols = la.columns(P)
    L = c.algebra
    new_c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            v = la.matvec(Pinv, L.bracket(cols[a], cols[b]))
            new_c[a][b] = list(v)
            new_c[b][a] = [-x for x in v]
    G = la.matmul(la.transpose(P), la.matmul(c.metric.gram, P))
    theta = la.vecmat(c.theta.coeffs, P)
    U = Subspace([la.matvec(Pinv, u) for u in c.u.vectors], n)
    return LcpCandidate(LieAlgebra(n, new_c), Metric(G), OneForm(theta), U)
