"""Coherence-based sparsity uncertainty bounds over paired vector/functional systems."""

__version__ = "0.1.0"

from .admissible import (
    AdmissibleSpace,
    admissible_space,
    fixed_subspace,
    generate,
    sample_admissible,
)
from .bounds import (
    BoundCertificate,
    clamp_plus,
    ds_bound,
    ds_product,
    eb_bound,
    fkdb_rhs,
    fskpb_rhs,
    per_index_slack,
    verify_fkdb,
    verify_fskpb,
)
from .coherence import (
    CoherenceProfile,
    coherence_profile,
    cross_coherence,
    gram,
    sub_coherence,
)
from .dft import DftPlan, dft_matrix, forward, inverse, transform
from .oracle import TightnessReport, exhaustive_verify, min_sparsity_product
from .sparsity import (
    ConcentrationWitness,
    SparsityProfile,
    best_set,
    concentration_epsilon,
    l0,
    l1,
    profile,
    support,
)
from .systems import (
    BiSystem,
    PairedSystem,
    ValidationReport,
    analysis,
    from_hilbert_vectors,
    identity_system,
    synthesis,
    validate_pairing,
)
