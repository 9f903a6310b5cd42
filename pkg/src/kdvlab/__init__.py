"""kdvlab: complex solitary waves and cnoidal waves of KdV/mKdV.

A numerical laboratory around the complex traveling-wave families of the
KdV and mKdV equations: closed-form evaluation, an independent residual
oracle, Miura/Galilean/PT transformations, pseudospectral time evolution,
and bound-state spectra of the associated complex Schrodinger potentials.
"""

from .catalog import (
    COMPLEX_FAMILIES,
    KDV_FAMILIES,
    MKDV_FAMILIES,
    SINGULAR_FAMILIES,
    EquationKind,
    Family,
    ResolvedParams,
    SolutionSpec,
    conjugate_spec,
    default_profile,
    eval_field,
    eval_profile,
    intensity,
    periodic_profile,
    profile_zeta_period,
    resolve,
    singular_profile,
    superpose,
    truncated_profile,
)
from .elliptic import EllipticTriple, complete_K, jacobi, period
from .evolve import EvolutionConfig, EvolutionResult, evolve, invariants
from .lax import (
    EigenReport,
    SchrodingerProblem,
    bound_states,
    complex_scarf,
    isospectral_check,
    scarf_superpotential,
    sech2_well,
    shooting_energy,
    susy_pair,
)
from .profiles import SampledProfile
from .residual import ResidualReport, differentiate, traveling_residual, velocity_scan
from .transforms import (
    PT_EVEN,
    PT_NONE,
    PT_ODD,
    SymmetryClass,
    classify,
    cole_hopf,
    galilean_shift,
    miura,
    pt_transform,
)

__version__ = "0.1.0"
