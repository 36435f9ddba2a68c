"""Sample-level simulation of a cascade, used as an independent check of the analytic ledger.

Noise powers are variances of zero-mean Gaussian amplitudes. Every
realization draws a source amplitude ~ Normal(0, N_i); stage x scales the
amplitude by sqrt(M_x) and adds an independent Normal(0, N_a(x)) draw. The
signal is propagated deterministically, since the network is linear.

Random numbers come from counter-based Philox streams keyed by
``(seed, interface, block)``, so the result does not depend on how many
workers process the blocks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .chain import CascadeChain, ensure_valid
from .factors import compare_factors
from .propagation import propagate

MIN_SAMPLES = 1000


@dataclass(frozen=True)
class StreamPolicy:
    """Maps (interface, block) to an independent Philox substream.

    Interface 0 is the source; interface x >= 1 is the added noise of stage x.
    """

    block_size: int = 1 << 16

    def generator(self, seed: int, interface: int, block: int) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=seed, spawn_key=(interface, block))
        return np.random.Generator(np.random.Philox(ss))

    def blocks(self, sample_count: int) -> list[tuple[int, int]]:
        """``(start, size)`` of each block covering ``sample_count`` samples."""
        return [(start, min(self.block_size, sample_count - start))
                for start in range(0, sample_count, self.block_size)]


@dataclass(frozen=True)
class SimulationConfig:
    sample_count: int
    seed: int
    stream_policy: StreamPolicy = StreamPolicy()

    def __post_init__(self):
        if not isinstance(self.sample_count, (int, np.integer)) or self.sample_count < MIN_SAMPLES:
            raise ValueError(f"sample_count must be an integer >= {MIN_SAMPLES}, got {self.sample_count!r}")
        if not isinstance(self.seed, (int, np.integer)) or not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if self.stream_policy.block_size < 1:
            raise ValueError("block_size must be >= 1")


@dataclass(frozen=True)
class SimulationResult:
    """Estimated powers and factors next to their analytic values.

    Arrays indexed by interface have length n + 1 (index 0 is the source);
    per-stage arrays have length n.
    """

    chain: CascadeChain
    sample_count: int
    seed: int
    signal_power: np.ndarray
    noise_power: np.ndarray
    noise_power_se: np.ndarray
    analytic_noise_power: np.ndarray
    total_factor: float
    total_factor_se: float
    analytic_total_factor: float
    stage_factors: np.ndarray
    stage_factor_se: np.ndarray
    analytic_stage_factors: np.ndarray


def _block_power_sums(chain: CascadeChain, config: SimulationConfig, block: int, size: int) -> np.ndarray:
    policy = config.stream_policy
    sums = np.empty(chain.n + 1)
    amp = policy.generator(config.seed, 0, block).standard_normal(size)
    amp *= math.sqrt(chain.source.noise_power)
    sums[0] = np.dot(amp, amp)
    for x, stage in enumerate(chain.stages, start=1):
        amp *= math.sqrt(stage.gain)
        if stage.added_noise > 0:
            draw = policy.generator(config.seed, x, block).standard_normal(size)
            amp += math.sqrt(stage.added_noise) * draw
        sums[x] = np.dot(amp, amp)
    return sums


def simulate_chain(chain: CascadeChain, config: SimulationConfig, workers: int = 1) -> SimulationResult:
    """Estimate the noise power at every interface from ``config.sample_count`` realizations."""
    ensure_valid(chain)
    if not isinstance(config, SimulationConfig):
        raise TypeError("config must be a SimulationConfig")
    k = int(config.sample_count)
    blocks = config.stream_policy.blocks(k)

    def run(item):
        index, (_, size) = item
        return _block_power_sums(chain, config, index, size)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            block_sums = list(pool.map(run, enumerate(blocks)))
    else:
        block_sums = [run(item) for item in enumerate(blocks)]
    per_block = np.array(block_sums).reshape(len(blocks), chain.n + 1)
    # fixed-order exact summation: result independent of block scheduling
    noise = np.array([math.fsum(per_block[:, i]) for i in range(chain.n + 1)]) / k
    rel_se = math.sqrt(2.0 / k)
    noise_se = noise * rel_se

    ledger = propagate(chain)
    report = compare_factors(chain)
    signal = np.array([ledger.source_signal] + [e.output_signal for e in ledger.entries])
    analytic_noise = np.array([ledger.source_noise] + [e.output_noise for e in ledger.entries])

    source_snr = chain.source.signal_power / chain.source.noise_power
    total = source_snr / (signal[-1] / noise[-1])
    gains = np.array([s.gain for s in chain.stages])
    stage_factors = noise[1:] / (noise[:-1] * gains)
    # output and input estimates treated as independent: conservative for their positive correlation
    stage_se = stage_factors * math.sqrt(2.0) * rel_se

    return SimulationResult(
        chain=chain,
        sample_count=k,
        seed=int(config.seed),
        signal_power=signal,
        noise_power=noise,
        noise_power_se=noise_se,
        analytic_noise_power=analytic_noise,
        total_factor=float(total),
        total_factor_se=float(total * rel_se),
        analytic_total_factor=report.total_direct,
        stage_factors=stage_factors,
        stage_factor_se=stage_se,
        analytic_stage_factors=np.array([r.corrected_factor for r in report.rows]),
    )


def empirical_stage_factors(result: SimulationResult, chain: CascadeChain) -> list[float]:
    """``N_o(x) / (N_i(x) * M_x)`` evaluated on the estimated powers of ``result``."""
    if result.chain != chain:
        raise ValueError("simulation result was produced from a different chain")
    return [float(f) for f in result.stage_factors]
