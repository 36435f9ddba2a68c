"""Noise factors of cascade networks.

Friis and corrected stage-wise noise factors, signal/noise propagation, and
a Monte Carlo oracle for checking them.
"""

from .chain import (
    CascadeChain,
    ChainValidationError,
    RawStageSpec,
    SourceSpec,
    StageSpec,
    Violation,
    added_noise_from_corrected_factor,
    added_noise_from_friis_factor,
    resolve_chain,
    validate_chain,
)
from .document import ChainParseError, chain_to_document, parse_chain_document
from .factors import (
    NoiseFactorReport,
    StageFactorRow,
    compare_factors,
    corrected_stage_factor,
    corrected_stage_factor_closed_form,
    corrected_stage_factor_recursive,
    friis_stage_factor,
    sweep,
    total_corrected_product,
    total_friis,
)
from .montecarlo import SimulationConfig, SimulationResult, StreamPolicy, empirical_stage_factors, simulate_chain
from .propagation import (
    PropagationLedger,
    StageLedgerEntry,
    closed_form_output_noise,
    propagate,
    stage_factor_from_snr,
    total_noise_factor_direct,
)
from .report import ReportFormat, emit_report
from .units import (
    DomainError,
    db_to_linear,
    factor_to_figure_db,
    figure_db_to_factor,
    linear_to_db,
)

__version__ = "0.1.0"
