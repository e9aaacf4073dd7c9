"""Deciding whether ``(g, theta, u)`` is an LCP structure, and what follows.

``verify`` evaluates the three algebraic conditions (orthogonal pair of
subalgebras, the polarized ``g([u,x],x) = theta(u)|x|^2`` identities, and the
representation property of ``x -> nabla^theta_x|_u``) in exact arithmetic and
records a witness for every failure.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import linalg as la
from .algebra import (
    LieAlgebra,
    OneForm,
    Subspace,
    ad_basis,
    ad_matrix,
    center,
    closed_one_form_basis,
    derived_algebra,
    is_closed,
    is_compact_type,
    killing_form,
    restrict_algebra,
    restriction_matrix,
    structural_flags,
    subspace_relations,
    trace_form,
    validate_algebra,
)
from .errors import ClosednessError, ConstructionError, IdealError, MalformedInputError, UsageError
from .geometry import Metric, weyl_connection_unchecked
from .linalg import ZERO, Q

__all__ = [
    "LcpCandidate",
    "Witness",
    "VerificationReport",
    "verify",
    "recover_theta",
    "KernelReport",
    "weyl_kernel",
    "Fingerprint",
    "cflat_fingerprint",
    "LeeCandidate",
    "LeeEnumeration",
    "enumerate_lee_candidates",
    "cflat_lee_realize",
]


@dataclass(frozen=True)
class LcpCandidate:
    algebra: LieAlgebra
    metric: Metric
    theta: OneForm
    u: Subspace

    def __post_init__(self):
        if not isinstance(self.theta, OneForm):
            object.__setattr__(self, "theta", OneForm(self.theta))

    @property
    def dim(self) -> int:
        return self.algebra.dim


@dataclass(frozen=True)
class Witness:
    condition: str
    pair: tuple
    residual: tuple


@dataclass(frozen=True)
class VerificationReport:
    n: int
    q: int
    algebra_valid: bool
    theta_closed: bool
    theta_nonzero: bool
    u_nonzero: bool
    cond1_subalgebras: bool
    cond2_xu: bool
    u_parallel: bool
    cond3_representation: bool
    is_lcp: bool
    is_proper: bool
    is_adapted: bool
    is_conformally_flat: bool
    unimodular: bool
    dim_bound_ok: Optional[bool] = None
    trace_relations_ok: Optional[bool] = None
    witnesses: tuple = field(default=())

    FLAG_ORDER = (
        "algebra_valid",
        "theta_closed",
        "theta_nonzero",
        "u_nonzero",
        "cond1_subalgebras",
        "cond2_xu",
        "u_parallel",
        "cond3_representation",
        "is_lcp",
        "is_proper",
        "is_adapted",
        "is_conformally_flat",
        "unimodular",
        "dim_bound_ok",
        "trace_relations_ok",
    )

    def flags(self) -> dict:
        return {k: getattr(self, k) for k in self.FLAG_ORDER}

    def first_witness(self) -> Optional[Witness]:
        return self.witnesses[0] if self.witnesses else None


def _cond2_witnesses(L, M, theta, U: Subspace, P: Subspace):
    out = []
    two = Fraction(2)
    G = M.gram
    ub, pb = U.vectors, P.vectors
    br_up = [[L.bracket(u, x) for x in pb] for u in ub]
    # g([u,x],y) + g([u,y],x) = 2 theta(u) g(x,y)
    for a, u in enumerate(ub):
        tu = theta(u)
        for b in range(len(pb)):
            gb = la.matvec(G, pb[b])
            for c in range(b, len(pb)):
                lhs = la.dot(br_up[a][b], la.matvec(G, pb[c])) + la.dot(br_up[a][c], gb)
                r = lhs - two * tu * M.inner(pb[b], pb[c])
                if r:
                    out.append(Witness("cond2_u", (a, b, c), (r,)))
    # g([x,u],v) + g([x,v],u) = 2 theta(x) g(u,v)
    for b, x in enumerate(pb):
        tx = theta(x)
        for a in range(len(ub)):
            for c in range(a, len(ub)):
                lhs = -la.dot(br_up[a][b], la.matvec(G, ub[c])) - la.dot(br_up[c][b], la.matvec(G, ub[a]))
                r = lhs - two * tx * M.inner(ub[a], ub[c])
                if r:
                    out.append(Witness("cond2_x", (b, a, c), (r,)))
    return out


def _restricted_rep(L, W, U: Subspace):
    """``(parallel_witnesses, rho)`` where rho[i] is ``nabla_{e_i}|_U`` in
    the basis of U (None unless U is invariant)."""
    par = []
    for i, A in enumerate(W.maps):
        for a, u in enumerate(U.vectors):
            v = la.matvec(A, u)
            if not U.contains(v):
                par.append(Witness("u_parallel", (i, a), U.residual(v)))
    if par:
        return par, None
    return [], [restriction_matrix(U, A) for A in W.maps]


def _rep_witnesses(L, rho):
    out = []
    n = L.dim
    for i in range(n):
        for j in range(i + 1, n):
            lhs = la.commutator(rho[i], rho[j])
            for k, x in enumerate(L.c[i][j]):
                if x:
                    lhs = la.sub(lhs, la.scale(x, rho[k]))
            if not la.is_zero_matrix(lhs):
                out.append(Witness("cond3", (i, j), tuple(v for row in lhs for v in row)))
    return out


def verify(c: LcpCandidate) -> VerificationReport:
    L, M, theta, U = c.algebra, c.metric, c.theta, c.u
    n = L.dim
    if M.dim != n or theta.dim != n or U.ambient != n:
        raise MalformedInputError(
            f"inconsistent shapes: algebra {n}, metric {M.dim}, theta {theta.dim}, u ambient {U.ambient}"
        )
    q = U.dim
    witnesses = []

    sr = validate_algebra(L)
    for (i, j, k), v in sr.antisymmetry_violations:
        witnesses.append(Witness("antisymmetry", (i, j, k), (v,)))
    for trip, v in sr.jacobi_violations:
        witnesses.append(Witness("jacobi", trip, v))

    bad = is_closed(L, theta)
    if bad is not None:
        witnesses.append(Witness("theta_closed", bad, (theta(L.c[bad[0]][bad[1]]),)))
    theta_nonzero = not theta.is_zero()
    if not theta_nonzero:
        witnesses.append(Witness("theta_nonzero", (), ()))
    if q == 0:
        witnesses.append(Witness("u_nonzero", (), ()))

    P = U.orthogonal_complement(M.gram)
    rel = subspace_relations(L, M, U)
    cond1 = rel.is_subalgebra and bool(rel.perp_is_subalgebra)
    for label, pair, v in rel.witnesses:
        if label in ("subalgebra", "perp_subalgebra"):
            witnesses.append(Witness("cond1_" + label, pair, v))

    c2 = _cond2_witnesses(L, M, theta, U, P)
    witnesses.extend(c2)

    W = weyl_connection_unchecked(L, M, theta)
    par, rho = _restricted_rep(L, W, U)
    witnesses.extend(par)
    c3 = _rep_witnesses(L, rho) if rho is not None else []
    witnesses.extend(c3)
    cond3 = rho is not None and not c3

    is_lcp = (
        sr.valid and bad is None and theta_nonzero and q > 0 and cond1 and not c2 and cond3
    )
    is_proper = is_lcp and q < n
    is_adapted = is_proper and all(theta(u) == 0 for u in U.vectors)
    is_cflat = is_lcp and q == n
    unimodular = trace_form(L).is_zero()

    dim_ok = trace_ok = None
    if unimodular and is_proper:
        dim_ok = q <= n - 2
        H_u = trace_form(restrict_algebra(L, U))
        H_p = trace_form(restrict_algebra(L, P))
        ok_u = all(H_u[a] == -(n - q) * theta(u) for a, u in enumerate(U.vectors))
        ok_p = all(H_p[b] == -q * theta(x) for b, x in enumerate(P.vectors))
        trace_ok = ok_u and ok_p
        if not trace_ok:
            witnesses.append(Witness("trace_relations", (), tuple(H_u.coeffs) + tuple(H_p.coeffs)))

    return VerificationReport(
        n=n,
        q=q,
        algebra_valid=sr.valid,
        theta_closed=bad is None,
        theta_nonzero=theta_nonzero,
        u_nonzero=q > 0,
        cond1_subalgebras=cond1,
        cond2_xu=not c2,
        u_parallel=not par,
        cond3_representation=cond3,
        is_lcp=is_lcp,
        is_proper=is_proper,
        is_adapted=is_adapted,
        is_conformally_flat=is_cflat,
        unimodular=unimodular,
        dim_bound_ok=dim_ok,
        trace_relations_ok=trace_ok,
        witnesses=tuple(witnesses),
    )


def recover_theta(L: LieAlgebra, U: Subspace) -> OneForm:
    """``theta(x) = tr(ad_x|_U) / dim U`` for a nonzero ideal U."""
    if U.dim == 0:
        raise MalformedInputError("the subspace must be nonzero")
    rel = subspace_relations(L, None, U)
    if not rel.is_ideal:
        _, pair, v = next(w for w in rel.witnesses if w[0] == "ideal")
        raise IdealError(f"subspace is not an ideal: bracket of u{pair[0] + 1} with e{pair[1] + 1} leaves it")
    q = Fraction(U.dim)
    return OneForm(tuple(la.trace(restriction_matrix(U, A)) / q for A in ad_basis(L)))


@dataclass(frozen=True)
class KernelReport:
    kernel_dim: int
    abelian_ideal: bool
    perp_subalgebra: bool
    perp_compact_type: bool
    bracket_identity: bool
    unimodular: bool
    compact_type: bool
    equivalence: bool

    @property
    def ok(self) -> bool:
        return (
            self.abelian_ideal
            and self.perp_subalgebra
            and self.perp_compact_type
            and self.bracket_identity
            and self.equivalence
        )


def weyl_kernel(L: LieAlgebra, M: Metric, theta) -> tuple:
    """Kernel of ``x -> nabla^theta_x`` for a conformally flat structure,
    with the structural facts it is known to satisfy checked exactly."""
    theta = theta if isinstance(theta, OneForm) else OneForm(theta)
    n = L.dim
    if not verify(LcpCandidate(L, M, theta, Subspace.whole(n))).is_conformally_flat:
        raise UsageError("(L, M, theta) is not a conformally flat LCP structure")
    W = weyl_connection_unchecked(L, M, theta)
    rows = [tuple(W.maps[i][a][b] for i in range(n)) for a in range(n) for b in range(n)]
    rows = [r for r in rows if any(r)]
    K = Subspace(la.nullspace(rows, n), n)
    rel = subspace_relations(L, M, K)
    P = K.orthogonal_complement(M.gram)
    perp_sub = bool(rel.perp_is_subalgebra)
    perp_ct = perp_sub and is_compact_type(restrict_algebra(L, P))
    bracket_ok = all(
        L.bracket(x, y) == la.matvec(W.maps[i], y) for i, x in enumerate(L.basis()) for y in K.vectors
    )
    unimod = trace_form(L).is_zero()
    ct = is_compact_type(L)
    kz = K.dim == 0
    rep = KernelReport(
        kernel_dim=K.dim,
        abelian_ideal=rel.is_ideal and rel.is_abelian,
        perp_subalgebra=perp_sub,
        perp_compact_type=perp_ct,
        bracket_identity=bracket_ok,
        unimodular=unimod,
        compact_type=ct,
        equivalence=kz == unimod == ct,
    )
    return K, rep


class Fingerprint(enum.Enum):
    R1 = "R1"
    R2 = "R2"
    SU2_R = "SU2_R"
    OTHER = "OTHER"


def cflat_fingerprint(L: LieAlgebra) -> Fingerprint:
    """Which unimodular conformally flat model ``L`` could be isomorphic to."""
    if not trace_form(L).is_zero():
        raise UsageError("fingerprinting is defined for unimodular algebras only")
    flags = structural_flags(L)
    if L.dim == 1:
        return Fingerprint.R1
    if L.dim == 2 and flags.abelian:
        return Fingerprint.R2
    if L.dim == 4 and flags.derived_dim == 3:
        D = derived_algebra(L)
        kd = killing_form(restrict_algebra(L, D))
        Z = center(L)
        if (
            la.is_positive_definite(la.scale(-1, kd))
            and Z.dim == 1
            and not D.contains(Z.vectors[0])
        ):
            return Fingerprint.SU2_R
    return Fingerprint.OTHER


@dataclass(frozen=True)
class LeeCandidate:
    coeffs: tuple  # floats, in the dual basis
    qs: tuple  # every 1 <= q <= n-2 producing this form
    sums: tuple  # r_i, one per closed basis form, for the smallest q

    @property
    def q(self) -> int:
        return self.qs[0]

    def distance(self, theta) -> float:
        t = np.array([float(x) for x in theta], dtype=float)
        return float(np.max(np.abs(np.asarray(self.coeffs) - t))) if len(t) else 0.0


@dataclass(frozen=True)
class LeeEnumeration:
    candidates: tuple
    eigen_sums: tuple
    forms: tuple  # the closed basis forms gamma_i used
    note: str = ""

    def __len__(self):
        return len(self.candidates)

    def __iter__(self):
        return iter(self.candidates)

    def __getitem__(self, i):
        return self.candidates[i]

    def matches(self, theta, tol: float = 1e-9) -> list:
        return [c for c in self.candidates if c.distance(theta) <= tol]


def _dedupe_scalars(values, tol):
    out = []
    for v in sorted(values):
        if not out or v - out[-1] > tol:
            out.append(v)
    return out


def enumerate_lee_candidates(L: LieAlgebra, tol: float = 1e-9) -> LeeEnumeration:
    """Finite superset of the Lee forms of proper LCP structures on ``L``.

    Each closed form is ``(1/q) sum_i r_i gamma_i`` with ``1 <= q <= n-2`` and
    every ``r_i`` a sum of at most ``n`` eigenvalues (repetition allowed) of
    the operators ``ad_{b_i}``.  Eigenvalues are computed in double
    precision; complex ones contribute their real parts.  The size of the
    output grows like ``|sums|^s`` with ``s`` the number of closed forms.
    """
    if not trace_form(L).is_zero():
        raise UsageError("Lee form enumeration is defined for unimodular algebras only")
    n = L.dim
    cf = closed_one_form_basis(L)
    if len(cf) == 0:
        return LeeEnumeration((), (), (), note="derived algebra is the whole algebra: no closed 1-forms")
    if n < 3:
        return LeeEnumeration((), (), cf.forms, note="dimension below 3: no proper LCP structure has 1 <= q <= n-2")

    eig = []
    for b in cf.dual_vectors:
        A = np.array([[float(x) for x in row] for row in ad_matrix(L, b)], dtype=float)
        eig.extend(np.linalg.eigvals(A).real.tolist())
    eig = _dedupe_scalars(eig, tol)
    sums = [0.0]
    for _ in range(n):
        nxt = _dedupe_scalars(sums + [s + e for s in sums for e in eig], tol)
        if len(nxt) == len(sums):
            break
        sums = nxt

    gammas = np.array([[float(x) for x in g.coeffs] for g in cf.forms], dtype=float)
    kept = []  # [coeffs, qs, sums]
    kept_arr = np.empty((0, n))
    for q in range(1, n - 1):
        for r in itertools.product(sums, repeat=len(cf)):
            v = np.asarray(r) @ gammas / q
            if np.max(np.abs(v)) <= tol:
                continue
            if len(kept):
                d = np.max(np.abs(kept_arr - v), axis=1)
                k = int(np.argmin(d))
                if d[k] <= tol:
                    if kept[k][1][-1] != q:
                        kept[k][1].append(q)
                    continue
            kept.append([tuple(float(x) for x in v), [q], tuple(float(x) for x in r)])
            kept_arr = np.vstack([kept_arr, v])
    kept = [LeeCandidate(v, tuple(qs), r) for v, qs, r in kept]
    kept.sort(key=lambda c: c.coeffs)
    return LeeEnumeration(tuple(kept), tuple(sums), cf.forms)


def cflat_lee_realize(L: LieAlgebra, theta) -> LcpCandidate:
    """Conformally flat structure on su(2) ⊕ R with prescribed Lee form."""
    from .constructions import example_su2r, su2_plus_r

    theta = theta if isinstance(theta, OneForm) else OneForm(theta)
    if L != su2_plus_r():
        raise UsageError("expected su(2) ⊕ R in the standard basis (e1, e2, e3, z)")
    if theta.dim != 4:
        raise MalformedInputError("theta must have 4 coefficients")
    bad = is_closed(L, theta)
    if bad is not None:
        raise ClosednessError("theta does not vanish on su(2)", pair=bad)
    tz = theta[3]
    if tz == 0:
        raise ClosednessError("theta(z) must be nonzero")
    cand = example_su2r(1, 1 / (8 * tz), (0, 0, 0))
    if cand.theta != theta:
        raise ConstructionError("realized Lee form differs from the requested one")
    return cand
