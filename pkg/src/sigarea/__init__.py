"""Pairwise lag/lead discovery in multivariate time series.

The pipeline scores every channel pair by how persistently its windowed
signed areas (depth-2 path-signature terms) escape a confidence band built
from time-index-shuffled surrogates, then assigns a direction with a
time-shift variance-ratio test.  Reference implementations of a lagged
regression F-test and convergent cross mapping, benchmark system
generators, and CSV/JSON reporting round out the package.
"""

from .baselines import (
    CcmResult,
    GrangerResult,
    ccm,
    default_library_sizes,
    f_upper_tail,
    granger,
    regularized_incomplete_beta,
)
from .direction import DirectionVerdict, ShiftProfile, shift_profile, ts_savr
from .errors import (
    ConstantSeries,
    DegenerateEmbedding,
    DegeneratePath,
    Divergence,
    EmptyRange,
    InsufficientData,
    IoError,
    LengthMismatch,
    NonMonotonicTime,
    NonNumericCell,
    ParseError,
    RaggedRows,
    ShiftTooLarge,
    SigAreaError,
    SingularDesign,
    TooShort,
    WindowTooLong,
    ZeroVariance,
)
from .io import read_csv, write_csv, write_report
from .nulltest import (
    NullBand,
    SsadResult,
    confidence_band,
    multiplier,
    null_ensemble,
    ssad,
    ssad_pair,
    ssad_pair_detail,
)
from .pipeline import (
    CausalGraph,
    DiscoveryResult,
    GraphEdge,
    PairReport,
    PairTrace,
    RunConfig,
    discover,
    rank_pairs,
)
from .series import (
    Panel,
    Series,
    difference,
    interpolate_uniform,
    scale_unit_range,
    shuffle,
    time_shift_pair,
)
from .signature import (
    AreaSequence,
    Sig2,
    chen_concat,
    pair_area,
    pair_path,
    signature_depth2,
    signed_area,
    signed_area_sequence,
    window_count,
)
from .synth import (
    SystemSpec,
    gen_four_species,
    gen_two_species_bidir,
    gen_two_species_sync,
    gen_white_noise,
    generate,
)

__version__ = "0.1.0"

__all__ = [
    "AreaSequence",
    "CausalGraph",
    "CcmResult",
    "ConstantSeries",
    "DegenerateEmbedding",
    "DegeneratePath",
    "DirectionVerdict",
    "DiscoveryResult",
    "Divergence",
    "EmptyRange",
    "GrangerResult",
    "GraphEdge",
    "InsufficientData",
    "IoError",
    "LengthMismatch",
    "NonMonotonicTime",
    "NonNumericCell",
    "NullBand",
    "Panel",
    "PairReport",
    "PairTrace",
    "ParseError",
    "RaggedRows",
    "RunConfig",
    "Series",
    "ShiftProfile",
    "ShiftTooLarge",
    "Sig2",
    "SigAreaError",
    "SingularDesign",
    "SsadResult",
    "SystemSpec",
    "TooShort",
    "WindowTooLong",
    "ZeroVariance",
    "ccm",
    "chen_concat",
    "confidence_band",
    "default_library_sizes",
    "difference",
    "discover",
    "f_upper_tail",
    "gen_four_species",
    "gen_two_species_bidir",
    "gen_two_species_sync",
    "gen_white_noise",
    "generate",
    "granger",
    "interpolate_uniform",
    "multiplier",
    "null_ensemble",
    "pair_area",
    "pair_path",
    "rank_pairs",
    "read_csv",
    "regularized_incomplete_beta",
    "scale_unit_range",
    "shift_profile",
    "shuffle",
    "signature_depth2",
    "signed_area",
    "signed_area_sequence",
    "ssad",
    "ssad_pair",
    "ssad_pair_detail",
    "time_shift_pair",
    "ts_savr",
    "window_count",
    "write_csv",
    "write_report",
]
