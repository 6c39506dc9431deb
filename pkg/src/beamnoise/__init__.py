"""Quantum noise in the width of paraxial optical beams."""

from .detection import (
    Decomposition,
    angular_detection_mode,
    decompose_on_basis,
    hg_basis,
    lg_basis,
    residual_mode,
    width_detection_mode,
)
from .modes import (
    FlattenedGaussian,
    HermiteGauss,
    HermiteGauss1D,
    LaguerreGauss,
    SampledMode,
    evaluate_mode,
    gradient,
    laplacian,
    mode_norm,
    parse_mode,
)
from .moments import (
    MomentMatrices,
    angular_moment,
    build_matrices,
    fourth_angular_moment,
    mode_moments,
    spatial_moment,
)
from .noise import (
    CoherentProduct,
    MeanField,
    MomentProvider,
    SingleModeEmbedding,
    closed_form_relative_noise,
    general_width_variance,
    linearized_multimode_variance,
    mean_width,
    optimal_squeezing,
    relative_noise_by_mean,
    relative_width_noise,
    single_mode_width_variance,
)
from .quadrature import Quadrature, gauss_hermite, gauss_laguerre_polar, tensor_grid
from .states import (
    Coherent,
    DisplacedSqueezed,
    DisplacedThermal,
    Fock,
    SqueezedVacuum,
    Thermal,
    mandel_q,
    mean_photon,
    parse_state,
    photon_number_variance,
)

__version__ = "0.1.0"
