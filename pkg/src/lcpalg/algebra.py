"""Finite-dimensional real Lie algebras given by exact structure constants.

Conventions: ``c[i][j][k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``;
endomorphisms are matrices acting on column vectors, so column ``j`` of
``ad_matrix(L, x)`` is ``[x, e_j]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg as la
from .errors import MalformedInputError, RepresentationError
from .linalg import ONE, ZERO, Q

__all__ = [
    "LieAlgebra",
    "OneForm",
    "Subspace",
    "StructureReport",
    "StructuralFlags",
    "SubspaceRelations",
    "ClosedForms",
    "validate_algebra",
    "ad_matrix",
    "trace_form",
    "killing_form",
    "structural_flags",
    "subspace_relations",
    "semidirect_product",
    "closed_one_form_basis",
    "center",
    "derived_algebra",
    "restrict_algebra",
    "restriction_matrix",
    "bracket_subspaces",
    "direct_sum",
]


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    dim: int
    c: tuple
    basis_names: Optional[tuple] = None
    _entries: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.dim
        if not isinstance(n, int) or n < 0:
            raise MalformedInputError(f"dimension must be a non-negative integer, got {n!r}")
        c = self.c
        if len(c) != n or any(len(ci) != n for ci in c) or any(len(cij) != n for ci in c for cij in ci):
            raise MalformedInputError(f"structure constants must have shape {n}x{n}x{n}")
        c = tuple(tuple(tuple(Q(x) for x in cij) for cij in ci) for ci in c)
        object.__setattr__(self, "c", c)
        if self.basis_names is not None:
            names = tuple(str(s) for s in self.basis_names)
            if len(names) != n:
                raise MalformedInputError("basis_names length differs from dim")
            object.__setattr__(self, "basis_names", names)
        entries = tuple(
            (i, j, k, c[i][j][k])
            for i in range(n)
            for j in range(n)
            for k in range(n)
            if c[i][j][k] != 0
        )
        object.__setattr__(self, "_entries", entries)

    @classmethod
    def from_brackets(cls, dim: int, brackets: dict, basis_names=None) -> "LieAlgebra":
        """Build from ``{(i, j): {k: coeff}}`` (or a length-``dim`` vector)
        with ``i < j``; the rest follows by antisymmetry."""
        c = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), val in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim) or i == j:
                raise MalformedInputError(f"bad bracket index pair {(i, j)}")
            items = val.items() if isinstance(val, dict) else enumerate(val)
            for k, x in items:
                x = Q(x)
                c[i][j][k] = x
                c[j][i][k] = -x
        return cls(dim, c, basis_names)

    @classmethod
    def abelian(cls, dim: int, basis_names=None) -> "LieAlgebra":
        return cls(dim, [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)], basis_names)

    def bracket(self, x, y) -> tuple:
        out = [ZERO] * self.dim
        for i, j, k, v in self._entries:
            a = x[i]
            if a:
                b = y[j]
                if b:
                    out[k] += a * b * v
        return tuple(out)

    def basis_bracket(self, i: int, j: int) -> tuple:
        return self.c[i][j]

    def basis(self) -> list:
        return [la.unit(self.dim, i) for i in range(self.dim)]

    def name(self, i: int) -> str:
        return self.basis_names[i] if self.basis_names else f"e{i + 1}"

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.c == other.c

    def __hash__(self):
        return hash((self.dim, self.c))


@dataclass(frozen=True)
class OneForm:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", la.vec(self.coeffs))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def __call__(self, x) -> Fraction:
        return la.dot(self.coeffs, x)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coeffs)

    def __neg__(self):
        return OneForm(tuple(-x for x in self.coeffs))

    def __add__(self, other):
        return OneForm(la.vadd(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return OneForm(la.vsub(self.coeffs, other.coeffs))

    def __mul__(self, c):
        return OneForm(la.vscale(c, self.coeffs))

    __rmul__ = __mul__

    @classmethod
    def zero(cls, n: int) -> "OneForm":
        return cls((ZERO,) * n)

    @classmethod
    def dual(cls, n: int, i: int, c=1) -> "OneForm":
        return cls(la.vscale(c, la.unit(n, i)))

    def extend_by_zero(self, extra: int) -> "OneForm":
        return OneForm(self.coeffs + (ZERO,) * extra)


class Subspace:
    """Subspace of ``R^n`` spanned by linearly independent rational vectors.

    ``vectors`` keeps the caller's basis (columns of the n x q basis matrix);
    a reduced echelon copy is kept for membership tests and coordinates.
    """

    __slots__ = ("ambient", "vectors", "_rows", "_pivots", "_to_basis")

    def __init__(self, vectors: Sequence, ambient: int):
        vectors = tuple(la.vec(v) for v in vectors)
        if any(len(v) != ambient for v in vectors):
            raise MalformedInputError(f"subspace vectors must have length {ambient}")
        q = len(vectors)
        aug = tuple(v + la.unit(q, a) for a, v in enumerate(vectors))
        R, pivots = la.rref(aug) if q else ((), ())
        if q and (len(pivots) < q or pivots[-1] >= ambient):
            raise MalformedInputError("subspace basis is rank deficient")
        self.ambient = ambient
        self.vectors = vectors
        self._rows = tuple(r[:ambient] for r in R)
        self._pivots = pivots
        # echelon row a = sum_b T[a][b] vectors[b]
        self._to_basis = tuple(r[ambient:] for r in R)

    @classmethod
    def span(cls, vectors, ambient: int) -> "Subspace":
        """Canonical (reduced echelon) basis of the span of arbitrary vectors."""
        vectors = [la.vec(v) for v in vectors]
        if not vectors:
            return cls((), ambient)
        R, _ = la.rref(vectors)
        return cls(R, ambient)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls((), n)

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls([la.unit(n, i) for i in range(n)], n)

    @classmethod
    def coordinate(cls, n: int, indices) -> "Subspace":
        return cls([la.unit(n, i) for i in indices], n)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def basis_matrix(self) -> tuple:
        """n x q matrix with the basis vectors as columns."""
        return la.from_columns(self.vectors, self.ambient)

    def _echelon_coords(self, v):
        coords = tuple(v[p] for p in self._pivots)
        resid = list(v)
        for c, row in zip(coords, self._rows):
            if c:
                for k, x in enumerate(row):
                    if x:
                        resid[k] -= c * x
        return coords, resid

    def contains(self, v) -> bool:
        _, resid = self._echelon_coords(v)
        return all(x == 0 for x in resid)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def residual(self, v) -> tuple:
        """Component of ``v`` left after removing the echelon projection;
        zero exactly when ``v`` is in the subspace."""
        return tuple(self._echelon_coords(v)[1])

    def coords(self, v) -> tuple:
        """Coordinates of ``v`` in ``self.vectors``; raises if outside."""
        ec, resid = self._echelon_coords(v)
        if any(resid):
            raise MalformedInputError("vector is not in the subspace")
        q = self.dim
        return tuple(sum((ec[a] * self._to_basis[a][b] for a in range(q)), ZERO) for b in range(q))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.vectors)

    def equals(self, other: "Subspace") -> bool:
        return self.dim == other.dim and self.contains_subspace(other)

    def orthogonal_complement(self, gram) -> "Subspace":
        n = self.ambient
        if not self.vectors:
            return Subspace.whole(n)
        rows = [la.matvec(gram, v) for v in self.vectors]
        return Subspace(la.nullspace(rows, n), n)

    def annihilator(self) -> list:
        """Echelon basis of the 1-forms vanishing on the subspace."""
        n = self.ambient
        if not self.vectors:
            return [la.unit(n, i) for i in range(n)]
        ns = la.nullspace(self.vectors, n)
        if not ns:
            return []
        R, _ = la.rref(ns)
        return list(R)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.vectors == other.vectors

    def __hash__(self):
        return hash((self.ambient, self.vectors))


# ---------------------------------------------------------------------------
# structural checks


@dataclass(frozen=True)
class StructureReport:
    antisymmetry_violations: tuple  # ((i, j, k), c_ijk + c_jik)
    jacobi_violations: tuple  # ((i, j, k), jacobiator vector)

    @property
    def valid(self) -> bool:
        return not self.antisymmetry_violations and not self.jacobi_violations


def validate_algebra(L: LieAlgebra) -> StructureReport:
    n = L.dim
    c = L.c
    anti = tuple(
        ((i, j, k), c[i][j][k] + c[j][i][k])
        for i in range(n)
        for j in range(i, n)
        for k in range(n)
        if c[i][j][k] + c[j][i][k] != 0
    )
    if anti:
        triples = [(i, j, k) for i in range(n) for j in range(n) for k in range(n)]
    else:
        triples = [(i, j, k) for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n)]
    basis = L.basis()
    jac = []
    for i, j, k in triples:
        ei, ej, ek = basis[i], basis[j], basis[k]
        v = la.vadd(
            la.vadd(L.bracket(c[i][j], ek), L.bracket(c[j][k], ei)),
            L.bracket(c[k][i], ej),
        )
        if any(v):
            jac.append(((i, j, k), v))
    return StructureReport(anti, tuple(jac))


def ad_matrix(L: LieAlgebra, x) -> tuple:
    n = L.dim
    if len(x) != n:
        raise MalformedInputError(f"vector of length {len(x)} in a {n}-dimensional algebra")
    M = [[ZERO] * n for _ in range(n)]
    for i, j, k, v in L._entries:
        a = x[i]
        if a:
            M[k][j] += a * v
    return tuple(tuple(r) for r in M)


def ad_basis(L: LieAlgebra) -> list:
    return [ad_matrix(L, e) for e in L.basis()]


def trace_form(L: LieAlgebra) -> OneForm:
    n = L.dim
    return OneForm(tuple(sum((L.c[i][j][j] for j in range(n)), ZERO) for i in range(n)))


def killing_form(L: LieAlgebra) -> tuple:
    ads = ad_basis(L)
    n = L.dim
    K = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            K[i][j] = K[j][i] = la.trace(la.matmul(ads[i], ads[j]))
    return tuple(tuple(r) for r in K)


def bracket_subspaces(L: LieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    return Subspace.span([L.bracket(a, b) for a in A.vectors for b in B.vectors], L.dim)


def derived_algebra(L: LieAlgebra) -> Subspace:
    n = L.dim
    return Subspace.span([L.c[i][j] for i in range(n) for j in range(i + 1, n)], n)


def center(L: LieAlgebra) -> Subspace:
    n = L.dim
    # x is central iff sum_i x_i c[i][j][k] = 0 for all j, k
    rows = [tuple(L.c[i][j][k] for i in range(n)) for j in range(n) for k in range(n)]
    rows = [r for r in rows if any(r)]
    return Subspace(la.nullspace(rows, n), n)


@dataclass(frozen=True)
class StructuralFlags:
    abelian: bool
    solvable: bool
    nilpotent: bool
    unimodular: bool
    compact_type: bool
    derived_dim: int
    derived_series: tuple
    lower_central_series: tuple


def _series(L: LieAlgebra, lower: bool) -> tuple:
    whole = Subspace.whole(L.dim)
    cur = whole
    dims = [cur.dim]
    while True:
        nxt = bracket_subspaces(L, whole if lower else cur, cur)
        if nxt.dim == cur.dim:
            break
        cur = nxt
        dims.append(cur.dim)
    return tuple(dims)


def is_compact_type(L: LieAlgebra) -> bool:
    K = killing_form(L)
    if not la.is_positive_semidefinite(la.scale(-1, K)):
        return False
    ker = Subspace(la.nullspace(K, L.dim), L.dim) if L.dim else Subspace.zero(0)
    return ker.equals(center(L))


def structural_flags(L: LieAlgebra) -> StructuralFlags:
    ds = _series(L, lower=False)
    lcs = _series(L, lower=True)
    return StructuralFlags(
        abelian=not L._entries,
        solvable=ds[-1] == 0,
        nilpotent=lcs[-1] == 0,
        unimodular=trace_form(L).is_zero(),
        compact_type=is_compact_type(L),
        derived_dim=ds[1] if len(ds) > 1 else ds[0],
        derived_series=ds,
        lower_central_series=lcs,
    )


def restriction_matrix(U: Subspace, A) -> tuple:
    """q x q matrix of the endomorphism ``A`` restricted to the invariant
    subspace ``U``, in the basis ``U.vectors``."""
    cols = [U.coords(la.matvec(A, u)) for u in U.vectors]
    return la.from_columns(cols, U.dim)


def restrict_algebra(L: LieAlgebra, U: Subspace, names=None) -> LieAlgebra:
    """The subalgebra ``U`` as a Lie algebra in the basis ``U.vectors``."""
    q = U.dim
    c = [[[ZERO] * q for _ in range(q)] for _ in range(q)]
    for a in range(q):
        for b in range(a + 1, q):
            co = U.coords(L.bracket(U.vectors[a], U.vectors[b]))
            c[a][b] = list(co)
            c[b][a] = [-x for x in co]
    return LieAlgebra(q, c, names)


@dataclass(frozen=True)
class SubspaceRelations:
    is_subalgebra: bool
    is_ideal: bool
    is_abelian: bool
    perp_is_subalgebra: Optional[bool]
    is_nilpotent_ideal: bool
    witnesses: tuple  # (relation, (a, b), offending vector)


def _closure_witnesses(L, A: Subspace, B: Subspace, target: Subspace, label):
    out = []
    for a, x in enumerate(A.vectors):
        for b, y in enumerate(B.vectors):
            if A is B and b <= a:
                continue
            v = L.bracket(x, y)
            if not target.contains(v):
                out.append((label, (a, b), v))
    return out


def subspace_relations(L: LieAlgebra, M, U: Subspace) -> SubspaceRelations:
    """Closure properties of ``U`` (and of its ``M``-orthogonal complement).

    ``M`` may be None, in which case ``perp_is_subalgebra`` is None.
    Witness pairs index ``U.vectors`` (and the ambient basis for ideals).
    """
    if U.ambient != L.dim:
        raise MalformedInputError("subspace lives in a different ambient dimension")
    whole = Subspace.whole(L.dim)
    zero = Subspace.zero(L.dim)
    sub_w = _closure_witnesses(L, U, U, U, "subalgebra")
    ideal_w = _closure_witnesses(L, U, whole, U, "ideal")
    ab_w = _closure_witnesses(L, U, U, zero, "abelian")
    perp_ok = None
    perp_w = []
    if M is not None:
        gram = getattr(M, "gram", M)
        P = U.orthogonal_complement(gram)
        perp_w = _closure_witnesses(L, P, P, P, "perp_subalgebra")
        perp_ok = not perp_w
    nil = False
    if not ideal_w:
        cur = U
        while cur.dim:
            nxt = bracket_subspaces(L, U, cur)
            if nxt.dim == cur.dim:
                break
            cur = nxt
        nil = cur.dim == 0
    return SubspaceRelations(
        is_subalgebra=not sub_w,
        is_ideal=not ideal_w,
        is_abelian=not ab_w,
        perp_is_subalgebra=perp_ok,
        is_nilpotent_ideal=nil,
        witnesses=tuple(sub_w + ideal_w + ab_w + perp_w),
    )


def check_representation(H: LieAlgebra, mats) -> Optional[tuple]:
    """First basis pair ``(i, j)`` with ``rho([e_i,e_j]) != [rho(e_i), rho(e_j)]``,
    or None if ``mats`` is a representation of ``H``."""
    m = H.dim
    if len(mats) != m:
        raise MalformedInputError(f"need one matrix per basis vector ({m}), got {len(mats)}")
    for i in range(m):
        for j in range(i + 1, m):
            lhs = la.zeros(len(mats[0])) if mats else ()
            for k, x in enumerate(H.c[i][j]):
                if x:
                    lhs = la.add(lhs, la.scale(x, mats[k]))
            if lhs != la.commutator(mats[i], mats[j]):
                return (i, j)
    return None


def semidirect_product(H: LieAlgebra, q: int, alpha, names=None) -> LieAlgebra:
    """``H ⋉_alpha R^q`` with basis (basis of H, then e_1..e_q of R^q)."""
    alpha = [la.mat(a) for a in alpha]
    if any(la.shape(a) != (q, q) for a in alpha):
        raise MalformedInputError(f"every alpha matrix must be {q}x{q}")
    bad = check_representation(H, alpha)
    if bad is not None:
        i, j = bad
        raise RepresentationError(
            f"alpha([e{i + 1},e{j + 1}]) != [alpha(e{i + 1}), alpha(e{j + 1})]", pair=bad
        )
    m = H.dim
    n = m + q
    c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(m):
        for j in range(m):
            for k in range(m):
                c[i][j][k] = H.c[i][j][k]
        for a in range(q):
            for b in range(q):
                v = alpha[i][b][a]
                if v:
                    c[i][m + a][m + b] = v
                    c[m + a][i][m + b] = -v
    if names is None and H.basis_names is not None:
        names = tuple(H.basis_names) + tuple(f"u{a + 1}" for a in range(q))
    return LieAlgebra(n, c, names)


def direct_sum(A: LieAlgebra, B: LieAlgebra, names=None) -> LieAlgebra:
    n = A.dim + B.dim
    c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i, j, k, v in A._entries:
        c[i][j][k] = v
    o = A.dim
    for i, j, k, v in B._entries:
        c[o + i][o + j][o + k] = v
    return LieAlgebra(n, c, names)


@dataclass(frozen=True)
class ClosedForms:
    forms: tuple  # OneForms gamma_1..gamma_s (reduced echelon rows)
    dual_vectors: tuple  # b_1..b_s with gamma_i(b_j) = delta_ij

    def __len__(self):
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def __getitem__(self, i):
        return self.forms[i]


def closed_one_form_basis(L: LieAlgebra) -> ClosedForms:
    n = L.dim
    ann = derived_algebra(L).annihilator()
    forms = tuple(OneForm(g) for g in ann)
    # echelon rows: gamma_i is 1 at its pivot and 0 at the other pivots
    pivots = [next(k for k, x in enumerate(g) if x != 0) for g in ann]
    duals = tuple(la.unit(n, p) for p in pivots)
    return ClosedForms(forms, duals)


def is_closed(L: LieAlgebra, theta) -> Optional[tuple]:
    """First pair ``(i, j)`` with ``theta([e_i, e_j]) != 0``; None if closed."""
    coeffs = theta.coeffs if isinstance(theta, OneForm) else la.vec(theta)
    n = L.dim
    for i in range(n):
        for j in range(i + 1, n):
            if la.dot(coeffs, L.c[i][j]) != 0:
                return (i, j)
    return None
