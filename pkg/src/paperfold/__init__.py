"""Two-dimensional paperfolding: substitutions, pattern census, recursions and crease geometry."""

from .census import (
    Census,
    CensusResult,
    PatternSet,
    A_bruteforce,
    P_ij,
    Q_ij,
    abc_bruteforce,
    enumerate_subpatterns,
    pattern_set_S,
    pattern_set_T,
)
from .creases import (
    CreaseField,
    FoldType,
    decorate,
    fold_structure,
    quadrant_equivalence,
    reflect_x,
    reflect_y,
)
from .errors import (
    AlphabetMismatch,
    BudgetExceeded,
    DepthCapExceeded,
    PaperfoldError,
    PlateauNotFound,
)
from .recursion import (
    A_closed,
    A_recursive,
    CensusTable,
    abc_recursive,
    alpha,
    derived_identities,
)
from .render import render
from .substitution import A16, B4, MU, PHI, BlockSubstitution, Grid, S, T, cell_at, mu_apply, phi_apply, supertile
from .verify import Budget, CheckReport, verify_all

__version__ = "0.1.0"
