"""Exact toolkit for locally conformally product structures on metric Lie algebras."""

from .algebra import (
    LieAlgebra,
    OneForm,
    Subspace,
    StructureReport,
    StructuralFlags,
    SubspaceRelations,
    ad_matrix,
    center,
    check_representation,
    closed_one_form_basis,
    derived_algebra,
    direct_sum,
    is_closed,
    killing_form,
    semidirect_product,
    structural_flags,
    subspace_relations,
    trace_form,
    validate_algebra,
)
from .constructions import (
    OrthogonalRep,
    cflat_extension,
    change_basis,
    example_rp,
    example_sld,
    example_so3,
    example_sol3,
    example_su2r,
    lcp_extension,
    lcp_semidirect,
    sol3,
    su2,
    su2_plus_r,
)
from .errors import *  # noqa: F401,F403
from .geometry import (
    Metric,
    check_cflat_identities,
    curvature,
    levi_civita,
    metric_flags,
    musical,
    musical_inv,
    ricci,
    weyl_connection,
)
from .io import parse_candidate, serialize_candidate
from .lattice import LatticeCertificate, bock_parameter, companion_conjugacy
from .verify import (
    Fingerprint,
    LcpCandidate,
    VerificationReport,
    cflat_fingerprint,
    cflat_lee_realize,
    enumerate_lee_candidates,
    recover_theta,
    verify,
    weyl_kernel,
)

__version__ = "0.1.0"
