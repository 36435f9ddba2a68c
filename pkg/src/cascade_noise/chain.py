"""Cascade network data model: a noisy source followed by n gain stages.

Every stage has a linear power gain ``M_x`` and an added noise power
``N_a(x)`` referred to the stage *output*. All powers share one relative,
dimensionless linear unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import units


@dataclass(frozen=True)
class SourceSpec:
    signal_power: float
    noise_power: float


@dataclass(frozen=True)
class StageSpec:
    gain: float
    added_noise: float


@dataclass(frozen=True)
class CascadeChain:
    """Source plus ordered stages. ``stages[0]`` is stage x = 1; an empty chain is a wire."""

    source: SourceSpec
    stages: tuple[StageSpec, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))

    @property
    def n(self) -> int:
        return len(self.stages)

    def prefix(self, length: int) -> "CascadeChain":
        """Chain made of the source and the first ``length`` stages."""
        return CascadeChain(self.source, self.stages[:length])

    def stage(self, x: int) -> StageSpec:
        """Stage ``x`` using 1-based indexing."""
        check_stage_index(self, x)
        return self.stages[x - 1]


@dataclass(frozen=True)
class Violation:
    """One broken invariant. ``stage`` is None for source-level problems."""

    stage: Optional[int]
    field: str
    message: str

    def __str__(self) -> str:
        where = "source" if self.stage is None else f"stage {self.stage}"
        return f"{where} {self.field}: {self.message}"


class ChainValidationError(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


def check_stage_index(chain: CascadeChain, x: int) -> None:
    if not isinstance(x, int) or isinstance(x, bool) or not 1 <= x <= chain.n:
        raise IndexError(f"stage index must be in 1..{chain.n}, got {x!r}")


def _positive(value, stage, name, out):
    if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
        out.append(Violation(stage, name, f"must be a finite number, got {value!r}"))
    elif value <= 0:
        out.append(Violation(stage, name, f"must be > 0, got {value!r}"))


def validate_chain(chain: CascadeChain) -> list[Violation]:
    """Return every invariant violation in ``chain``; an empty list means valid."""
    found: list[Violation] = []
    _positive(chain.source.signal_power, None, "signal_power", found)
    _positive(chain.source.noise_power, None, "noise_power", found)
    for x, stage in enumerate(chain.stages, start=1):
        _positive(stage.gain, x, "gain", found)
        na = stage.added_noise
        if not isinstance(na, (int, float)) or isinstance(na, bool) or not math.isfinite(na):
            found.append(Violation(x, "added_noise", f"must be a finite number, got {na!r}"))
        elif na < 0:
            found.append(Violation(x, "added_noise", f"must be >= 0, got {na!r}"))
    return found


def ensure_valid(chain: CascadeChain) -> CascadeChain:
    violations = validate_chain(chain)
    if violations:
        raise ChainValidationError(violations)
    return chain


def _output_noise(chain: CascadeChain) -> float:
    # Same left-to-right recursion as propagation.propagate.
    noise = chain.source.noise_power
    for stage in chain.stages:
        noise = noise * stage.gain + stage.added_noise
    return noise


def _check_factor(factor: float) -> float:
    factor = float(factor)
    if not math.isfinite(factor) or factor < 1.0:
        raise units.DomainError(f"noise factor must be finite and >= 1, got {factor!r}")
    return factor


def added_noise_from_friis_factor(factor: float, source_noise: float, gain: float) -> float:
    """Output-referred added noise giving a stage the Friis factor ``factor``.

    Inverts ``F = 1 + N_a / (N_i * M)``.
    """
    factor = _check_factor(factor)
    if not source_noise > 0 or not gain > 0:
        raise ValueError("source_noise and gain must be > 0")
    return (factor - 1.0) * source_noise * gain


def added_noise_from_corrected_factor(factor: float, chain_prefix: CascadeChain, gain: float) -> float:
    """Added noise giving the next stage (gain ``gain``) the corrected factor ``factor``.

    ``chain_prefix`` holds the stages before it; the stage's input noise is
    the prefix output noise, so the result is ``(F - 1) * N_o(x-1) * M_x``.
    """
    factor = _check_factor(factor)
    ensure_valid(chain_prefix)
    if not gain > 0:
        raise ValueError("gain must be > 0")
    return (factor - 1.0) * _output_noise(chain_prefix) * gain


_GAIN_FIELDS = ("gain_linear", "gain_db")
_NOISE_FIELDS = ("added_noise", "friis_figure_db", "corrected_figure_db")


@dataclass(frozen=True)
class RawStageSpec:
    """Stage as written by a user: one gain field and one noise field must be set."""

    gain_linear: Optional[float] = None
    gain_db: Optional[float] = None
    added_noise: Optional[float] = None
    friis_figure_db: Optional[float] = None
    corrected_figure_db: Optional[float] = None

    def problems(self, index: int) -> list[Violation]:
        out = []
        for group, label in ((_GAIN_FIELDS, "gain"), (_NOISE_FIELDS, "noise")):
            given = [name for name in group if getattr(self, name) is not None]
            if len(given) != 1:
                names = "/".join(group)
                detail = f"got {', '.join(given)}" if given else "got none"
                out.append(Violation(index, label, f"exactly one of {names} is required ({detail})"))
        return out


def resolve_chain(source: SourceSpec, raw: Iterable[RawStageSpec]) -> CascadeChain:
    """Build a linear-valued chain from raw stage specs, left to right.

    Corrected figures depend on the already resolved prefix, Friis figures
    only on the source noise and the stage's own gain.
    """
    raw = list(raw)
    problems = [p for x, spec in enumerate(raw, start=1) for p in spec.problems(x)]
    if problems:
        raise ChainValidationError(problems)
    source_violations = validate_chain(CascadeChain(source))
    if source_violations:
        raise ChainValidationError(source_violations)

    stages: list[StageSpec] = []
    noise = source.noise_power
    for x, spec in enumerate(raw, start=1):
        try:
            gain = spec.gain_linear if spec.gain_linear is not None else units.db_to_linear(spec.gain_db)
            if not gain > 0:
                raise ValueError(f"must be > 0, got {gain!r}")
            if spec.added_noise is not None:
                added = spec.added_noise
            elif spec.friis_figure_db is not None:
                added = units.figure_db_to_excess(spec.friis_figure_db) * source.noise_power * gain
            else:
                added = units.figure_db_to_excess(spec.corrected_figure_db) * noise * gain
        except ValueError as exc:
            raise ChainValidationError([Violation(x, "value", str(exc))]) from exc
        stage = StageSpec(float(gain), float(added))
        stage_violations = validate_chain(CascadeChain(source, (stage,)))
        if stage_violations:
            raise ChainValidationError([Violation(x, v.field, v.message) for v in stage_violations])
        stages.append(stage)
        noise = noise * stage.gain + stage.added_noise
    return CascadeChain(source, tuple(stages))
