"""Ext groups between polynomial functors on free groups, computed exactly."""

from .algebra import (
    FgAbGroup,
    GradedAbGroup,
    IntegerMatrix,
    concentrated,
    direct_sum,
    invariant_factors,
    shift,
    smith_normal_form,
    subquotient_group,
)
from .api import (
    AB,
    ExtResult,
    FunctorDescriptor,
    Kind,
    Method,
    Gamma,
    Lambda,
    Pa,
    S,
    T,
    cross_check,
    ext,
    parse_functor,
    stable_cohomology,
)
from .complexes import (
    COHOMOLOGICAL,
    HOMOLOGICAL,
    BoundedComplex,
    ChainMap,
    Orientation,
    cone,
    dualize,
    fiber,
    homology,
    reindex,
    tensor,
    truncate,
)
from .errors import *  # noqa: F401,F403
from .groupcoh import (
    FiniteGroup,
    GModule,
    bar_cochain_complex,
    bsigma3_mod_bsigma2,
    group_cohomology,
    homotopy_fixed_points,
    rp_infinity_reduced_cohomology,
    symmetric_group,
)
from .models import (
    ChainLevelModel,
    lambda2_pullback_complex,
    rbar_complex,
    surjection_complex,
    symmetric_power_complex,
    tensor_symmetric_complex,
)

__version__ = "0.1.0"
