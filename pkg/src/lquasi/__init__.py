"""Finite left quasigroups: structure, congruences, Mal'cev classification and model search."""

__version__ = "0.1.0"

from .algebra import (
    FiniteLeftQuasigroup,
    PropertyFlags,
    all_subalgebras,
    direct_product,
    find_isomorphism,
    from_table,
    properties,
    quotient,
    subalgebra,
)
from .action import (
    cayley_kernel,
    cn_relation,
    dis,
    dis_ker,
    dis_rel,
    galois_check,
    is_admissible,
    lmlt,
    lmlt_ker,
    orbit_partition,
    squaring_twist,
)
from .classify import (
    classification_report,
    free_algebra_on_two,
    is_connected,
    is_superconnected,
    malcev_decision_general,
    malcev_decision_idempotent,
    p2_in_HS,
)
from .congruence import (
    commutator_semimedial,
    congruence_lattice,
    distributivity_obstructions,
    is_abelian_algebra,
    is_abelian_congruence,
    is_coherent,
    is_congruence,
    is_regular,
    is_uniform,
)
from .errors import HypothesisNotMet, InputError, LQError, ResourceCapError, VerificationFailed
from .io import format_lqt, parse_lqt, read_lqt
from .partition import Partition
from .permgroup import Permutation, PermutationGroup
from .search import SearchSpec, count, exists, search
from .terms import canonical_form, eval_term, parse_identity, parse_term, satisfies_identity
from ._accel import backend
