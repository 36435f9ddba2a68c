"""Signal and noise power bookkeeping through a cascade.

The left-to-right recursion ``N_o(x) = N_o(x-1) * M_x + N_a(x)`` is the
source of truth; :func:`closed_form_output_noise` is kept as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chain import CascadeChain, ensure_valid


@dataclass(frozen=True)
class StageLedgerEntry:
    index: int
    gain: float
    added_noise: float
    input_signal: float
    input_noise: float
    output_signal: float
    output_noise: float

    @property
    def input_snr(self) -> float:
        return self.input_signal / self.input_noise

    @property
    def output_snr(self) -> float:
        return self.output_signal / self.output_noise


@dataclass(frozen=True)
class PropagationLedger:
    source_signal: float
    source_noise: float
    entries: tuple[StageLedgerEntry, ...]

    @property
    def source_snr(self) -> float:
        return self.source_signal / self.source_noise

    @property
    def output_signal(self) -> float:
        return self.entries[-1].output_signal if self.entries else self.source_signal

    @property
    def output_noise(self) -> float:
        return self.entries[-1].output_noise if self.entries else self.source_noise

    @property
    def output_snr(self) -> float:
        return self.output_signal / self.output_noise

    def noiseless_output_noise(self) -> float:
        """Output noise the chain would have with every N_a set to zero (N_i * prod M)."""
        noise = self.source_noise
        for entry in self.entries:
            noise = noise * entry.gain
        return noise


def propagate(chain: CascadeChain) -> PropagationLedger:
    """Per-interface signal, noise and SNR for a valid chain."""
    ensure_valid(chain)
    signal = chain.source.signal_power
    noise = chain.source.noise_power
    entries = []
    for x, stage in enumerate(chain.stages, start=1):
        out_signal = signal * stage.gain
        out_noise = noise * stage.gain + stage.added_noise
        entries.append(StageLedgerEntry(x, stage.gain, stage.added_noise, signal, noise, out_signal, out_noise))
        signal, noise = out_signal, out_noise
    return PropagationLedger(chain.source.signal_power, chain.source.noise_power, tuple(entries))


def closed_form_output_noise(chain: CascadeChain) -> float:
    """``N_i * prod(M) + sum_x N_a(x) * prod_{y>x} M_y``, summed left to right."""
    ensure_valid(chain)
    gains = [s.gain for s in chain.stages]
    total = chain.source.noise_power
    for m in gains:
        total *= m
    for x, stage in enumerate(chain.stages):
        term = stage.added_noise
        for m in gains[x + 1:]:
            term *= m
        total += term
    return total


def total_noise_factor_direct(ledger: PropagationLedger) -> float:
    """Total noise factor ``SNR_i / SNR_o`` of the whole chain.

    The signal powers cancel, so this is evaluated as
    ``N_o / (N_i * prod M)``, which is exactly 1.0 for a noiseless chain and
    independent of the source signal power.
    """
    return ledger.output_noise / ledger.noiseless_output_noise()


def total_noise_factor_expanded(chain: CascadeChain) -> float:
    """``1 + sum_x N_a(x) / (N_i * M_1 * ... * M_x)``."""
    ensure_valid(chain)
    total = 1.0
    referred = chain.source.noise_power
    for stage in chain.stages:
        referred *= stage.gain
        total += stage.added_noise / referred
    return total


def stage_factor_from_snr(ledger: PropagationLedger, x: int) -> float:
    """Stage factor as the literal ratio of stage input SNR to stage output SNR."""
    if not isinstance(x, int) or isinstance(x, bool) or not 1 <= x <= len(ledger.entries):
        raise IndexError(f"stage index must be in 1..{len(ledger.entries)}, got {x!r}")
    entry = ledger.entries[x - 1]
    return entry.input_snr / entry.output_snr
