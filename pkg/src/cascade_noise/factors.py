"""Stage-wise and total noise factors: the Friis family and the corrected family.

Friis stage factor:      F_x = 1 + N_a(x) / (N_i * M_x)
Friis total:             F_T = F_1 + sum_{x>=2} (F_x - 1) / (M_1 ... M_{x-1})
Corrected stage factor:  F_x = N_o(x) / (N_i(x) * M_x) = 1 + N_a(x) / (N_i(x) * M_x)
Corrected total:         F_T = prod_x F_x

N_i(x) is the total noise at the input of stage x, i.e. the output noise of
stage x - 1. Both totals equal the directly defined SNR_i / SNR_o; only
the stage-wise factors differ.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from . import units
from .chain import CascadeChain, ChainValidationError, check_stage_index, ensure_valid
from .propagation import PropagationLedger, propagate, total_noise_factor_direct


def relative_difference(a: float, b: float) -> float:
    """``|a - b| / max(|a|, |b|, 1)``, the tolerance metric used for factors."""
    return abs(a - b) / max(abs(a), abs(b), 1.0)


def _friis_excess(chain: CascadeChain, x: int) -> float:
    stage = chain.stages[x - 1]
    return stage.added_noise / (chain.source.noise_power * stage.gain)


def _corrected_excess(ledger: PropagationLedger, x: int) -> float:
    entry = ledger.entries[x - 1]
    return entry.added_noise / (entry.input_noise * entry.gain)


def friis_stage_factor(chain: CascadeChain, x: int) -> float:
    """Friis stage factor ``1 + N_a(x) / (N_i * M_x)``.

    The denominator uses the source noise and the stage's own gain only,
    regardless of what precedes the stage.
    """
    ensure_valid(chain)
    check_stage_index(chain, x)
    return 1.0 + _friis_excess(chain, x)


def corrected_stage_factor(chain: CascadeChain, x: int) -> float:
    """Corrected stage factor, measured against the actual noise at the stage input."""
    check_stage_index(chain, x)
    return 1.0 + _corrected_excess(propagate(chain), x)


def corrected_stage_factor_closed_form(chain: CascadeChain, x: int) -> float:
    """Corrected stage factor with the input noise expanded into gains and added noises.

    ``1 + N_a(x) / (N_i * prod_{j<=x} M_j + sum_{k<x} N_a(k) * prod_{k<l<=x} M_l)``
    """
    ensure_valid(chain)
    check_stage_index(chain, x)
    gains = [s.gain for s in chain.stages[:x]]
    denom = chain.source.noise_power
    for m in gains:
        denom *= m
    for k in range(x - 1):
        term = chain.stages[k].added_noise
        for m in gains[k + 1:]:
            term *= m
        denom += term
    return 1.0 + chain.stages[x - 1].added_noise / denom


def corrected_stage_factor_recursive(chain: CascadeChain, x: int) -> float:
    """Corrected stage factor written in terms of the preceding corrected factors.

    ``1 + N_a(x) / (N_i * prod_{j<=x} M_j * prod_{k<x} F_k)`` with the
    prefix factors computed by the same recursion.
    """
    ensure_valid(chain)
    check_stage_index(chain, x)
    referred = chain.source.noise_power
    prefix_product = 1.0
    factor = 1.0
    for stage in chain.stages[:x]:
        prefix_product *= factor
        referred *= stage.gain
        factor = 1.0 + stage.added_noise / (referred * prefix_product)
    return factor


def total_friis(chain: CascadeChain) -> float:
    """Friis composition of the Friis stage factors; 1.0 for an empty chain."""
    ensure_valid(chain)
    if chain.n == 0:
        return 1.0
    total = 1.0 + _friis_excess(chain, 1)
    preceding_gain = chain.stages[0].gain
    for x in range(2, chain.n + 1):
        total += ((1.0 + _friis_excess(chain, x)) - 1.0) / preceding_gain
        preceding_gain *= chain.stages[x - 1].gain
    return total


def total_corrected_product(chain: CascadeChain) -> float:
    """Product of the corrected stage factors; 1.0 for an empty chain."""
    ledger = propagate(chain)
    total = 1.0
    for x in range(1, chain.n + 1):
        total *= 1.0 + _corrected_excess(ledger, x)
    return total


@dataclass(frozen=True)
class StageFactorRow:
    index: int
    gain: float
    added_noise: float
    friis_factor: float
    corrected_factor: float
    friis_figure_db: float
    corrected_figure_db: float
    delta: float  # friis_factor - corrected_factor


@dataclass(frozen=True)
class NoiseFactorReport:
    rows: tuple[StageFactorRow, ...]
    total_direct: float
    total_friis: float
    total_corrected_product: float

    @property
    def max_total_discrepancy(self) -> float:
        a, b, c = self.total_direct, self.total_friis, self.total_corrected_product
        return max(relative_difference(a, b), relative_difference(a, c), relative_difference(b, c))


def compare_factors(chain: CascadeChain) -> NoiseFactorReport:
    """Side-by-side Friis and corrected stage factors plus the three totals."""
    ledger = propagate(chain)
    rows = []
    for x in range(1, chain.n + 1):
        stage = chain.stages[x - 1]
        friis_excess = _friis_excess(chain, x)
        cor_excess = _corrected_excess(ledger, x)
        rows.append(
            StageFactorRow(
                index=x,
                gain=stage.gain,
                added_noise=stage.added_noise,
                friis_factor=1.0 + friis_excess,
                corrected_factor=1.0 + cor_excess,
                # figures from the excess keep precision for nearly noiseless stages
                friis_figure_db=units.excess_to_figure_db(friis_excess),
                corrected_figure_db=units.excess_to_figure_db(cor_excess),
                delta=friis_excess - cor_excess,
            )
        )
    return NoiseFactorReport(
        rows=tuple(rows),
        total_direct=total_noise_factor_direct(ledger),
        total_friis=total_friis(chain),
        total_corrected_product=total_corrected_product(chain),
    )


SOURCE_FIELDS = {"signal": "signal_power", "signal_power": "signal_power",
                 "noise": "noise_power", "noise_power": "noise_power"}
STAGE_FIELDS = {"gain": "gain", "added_noise": "added_noise"}


def parse_target(chain: CascadeChain, target: str) -> tuple[Optional[int], str]:
    """Parse a sweep target such as ``source.noise`` or ``stages.2.added_noise``.

    Returns ``(stage_index_or_None, attribute_name)``.
    """
    parts = target.split(".")
    if len(parts) == 2 and parts[0] == "source" and parts[1] in SOURCE_FIELDS:
        return None, SOURCE_FIELDS[parts[1]]
    if len(parts) == 3 and parts[0] in ("stage", "stages") and parts[2] in STAGE_FIELDS:
        try:
            x = int(parts[1])
        except ValueError:
            raise ValueError(f"invalid stage index in sweep target {target!r}") from None
        if not 1 <= x <= chain.n:
            raise ValueError(f"sweep target {target!r} addresses stage {x}, chain has {chain.n} stages")
        return x, STAGE_FIELDS[parts[2]]
    raise ValueError(
        f"invalid sweep target {target!r}; expected source.signal, source.noise, "
        "stages.<x>.gain or stages.<x>.added_noise"
    )


def substitute(chain: CascadeChain, target: str, value: float) -> CascadeChain:
    """Copy of ``chain`` with the field addressed by ``target`` set to ``value``."""
    x, name = parse_target(chain, target)
    if x is None:
        return replace(chain, source=replace(chain.source, **{name: float(value)}))
    stages = list(chain.stages)
    stages[x - 1] = replace(stages[x - 1], **{name: float(value)})
    return replace(chain, stages=tuple(stages))


def sweep(chain: CascadeChain, target: str, values: Sequence[float],
          workers: int = 1) -> list[tuple[float, NoiseFactorReport]]:
    """Evaluate :func:`compare_factors` once per value of the swept field.

    Results come back in input order whatever ``workers`` is.
    """
    ensure_valid(chain)
    chains = []
    for value in values:
        if not math.isfinite(value):
            raise ValueError(f"sweep value {value!r} is not finite")
        candidate = substitute(chain, target, value)
        try:
            ensure_valid(candidate)
        except ChainValidationError as exc:
            raise ValueError(f"sweep value {value!r} for {target} makes the chain invalid: {exc}") from exc
        chains.append(candidate)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(compare_factors, chains))
    else:
        reports = [compare_factors(c) for c in chains]
    return [(float(v), r) for v, r in zip(values, reports)]
