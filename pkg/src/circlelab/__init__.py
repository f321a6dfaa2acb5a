"""circlelab: seminorms, tent systems, and change of variable on the circle."""

from .core import (
    TWO_PI,
    CircleInterval,
    GridFunction,
    PiecewiseLinearFunction,
    eval_pl,
    pl_sum,
    reduce_angle,
    sample,
    simplify,
    total_variation,
    triangle,
)
from .fourier import (
    SpectrumCoeffs,
    dft_coeffs,
    fejer_sum,
    harmonic,
    pl_coeffs_closed_form,
    pl_mean,
    pl_spectrum,
    synthesize,
)
from .seminorm import (
    EquivalenceEstimate,
    LipReport,
    ModulusSpec,
    default_delta_grid,
    equivalence_scan,
    harmonic_shift_weight,
    lip_check,
    modulus_of_continuity,
    sobolev_integral,
    sobolev_spectral,
)
from .construction import (
    ConstructionError,
    DeltaSequence,
    TriangleSystem,
    build_delta_sequence,
    build_f,
    build_u,
    build_v,
    place_intervals,
    truncate_un,
)
from .stieltjes import (
    DualityReport,
    StieltjesReport,
    duality_check,
    fourier_pairing,
    pairing_report,
    rs_integral,
)
from .homeo import (
    PLHomeomorphism,
    compose_homeo,
    from_increments,
    random_homeomorphism,
    superpose,
)

__version__ = "0.1.0"
