"""Construction, verification and exhaustive search of t-Latin trades."""

from .core import (Block, FoundationMismatchError, FrequencyVector, ParameterError,
                   Params, StructuralError, SubBlockKey, Trade, TradeError,
                   VerifyResult, empty_trade, foundation, from_frequency,
                   load_trade, save_trade, to_frequency, verify, volume)
from .construct import (ConstructionError, NonexistenceError, SignedProductSpec,
                        compose, critical_trade, cyclic_one_trade, double,
                        expand_polynomial, pad_to_k, relabel)
from .inclusion import CapacityError, InclusionMatrix, build_inclusion_matrix, null_check
from .levels import LevelDecomposition, level_decomposition, level_trade
from .search import (Budget, ClosureSet, SearchVerdict, SpectrumReport, VerdictKind,
                     critical_points, exhaustive_exists, feasible_closure,
                     spectrum_certificates, spectrum_report)

__version__ = "0.1.0"
