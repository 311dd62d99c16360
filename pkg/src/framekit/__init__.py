"""framekit: finite frame analysis.

Analysis/synthesis operators, Gram matrices, frame bounds from spectra,
canonical Parseval frames, Kolmogorov factorization of PSD kernels, symmetry
detection, truncated Shannon sampling frames and two-band subband refinement.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BadParameter,
    DepthExceeded,
    DimensionMismatch,
    DuplicateLabel,
    EmptyMatrix,
    FramekitError,
    InvalidWitness,
    LabelMismatch,
    NotHermitian,
    NotPSD,
    NotTight,
    ParseError,
    ShapeMismatch,
    TooLarge,
)
from .numerics import (  # noqa: E402
    HermitianSpectrum,
    ToleranceProfile,
    hermitian_eigendecomposition,
    psd_inverse_sqrt,
    pseudo_sqrt,
)
from .frames import (  # noqa: E402
    Classification,
    CoefficientSequence,
    FrameBounds,
    FrameReport,
    FrameSystem,
    analysis,
    canonical_parseval,
    classify,
    coefficient_excess,
    frame_bounds,
    frame_operator,
    gram,
    gram_matrix,
    reconstruct,
    synthesis,
    tensor,
)
from .kernels import (  # noqa: E402
    KernelMatrix,
    is_positive_semidefinite,
    kolmogorov_factorize,
    pointwise_bound_check,
    verify_gram_projection,
)
from .symmetry import (  # noqa: E402
    EquivalenceWitness,
    permutation_symmetries,
    phase_equivalence,
    rotation_equivalence_demo,
)
from .generators import SincFrameSpec, haar_tower, harmonic_frame, random_bessel, sinc_frame  # noqa: E402
from .subband import (  # noqa: E402
    OperatorTower,
    SubdividedFrame,
    equivalence_transport_check,
    nested_projections,
    subdivide,
    verify_quadrature,
)
