import random
from dataclasses import replace

import pytest

from cascade_noise import (
    ChainValidationError,
    closed_form_output_noise,
    propagate,
    stage_factor_from_snr,
    total_noise_factor_direct,
)
from cascade_noise.propagation import total_noise_factor_expanded

from conftest import ExactCascade, make_chain, rel


def test_e1_ledger(e1):
    ledger = propagate(e1)
    assert ledger.output_signal == 10000.0
    assert ledger.output_noise == 155.0
    assert ledger.output_snr == pytest.approx(10000 / 155, rel=1e-15)
    assert [e.output_noise for e in ledger.entries] == [15.0, 155.0]


def test_wire_ledger():
    ledger = propagate(make_chain(3.0, 2.0, []))
    assert (ledger.output_signal, ledger.output_noise, ledger.output_snr) == (3.0, 2.0, 1.5)
    assert ledger.output_snr == ledger.source_snr
    assert total_noise_factor_direct(ledger) == 1.0


def test_unity_stage():
    ledger = propagate(make_chain(1.0, 1.0, [(1.0, 0.0)]))
    assert (ledger.output_signal, ledger.output_noise) == (1.0, 1.0)
    assert stage_factor_from_snr(ledger, 1) == 1.0


def test_invalid_chain_raises():
    with pytest.raises(ChainValidationError):
        propagate(make_chain(1.0, 0.0, []))


def test_e1_totals_and_stage_factors(e1):
    ledger = propagate(e1)
    assert total_noise_factor_direct(ledger) == pytest.approx(1.55, rel=1e-15)
    assert stage_factor_from_snr(ledger, 1) == pytest.approx(1.5, rel=1e-15)
    assert stage_factor_from_snr(ledger, 2) == pytest.approx(31 / 30, rel=1e-15)


def test_stage_factor_index_checked(e1):
    ledger = propagate(e1)
    for bad in (0, 3, -1):
        with pytest.raises(IndexError):
            stage_factor_from_snr(ledger, bad)


def test_noiseless_total_is_exactly_one():
    rng = random.Random(3)
    for _ in range(200):
        stages = [(10 ** rng.uniform(-1, 2), 0.0) for _ in range(rng.randint(0, 10))]
        chain = make_chain(10 ** rng.uniform(-2, 2), 10 ** rng.uniform(-2, 2), stages)
        assert total_noise_factor_direct(propagate(chain)) == 1.0


def test_ledger_invariants_against_exact(corpus):
    for chain in corpus[:300]:
        ledger = propagate(chain)
        exact = ExactCascade(chain)
        prev_signal, prev_noise = chain.source.signal_power, chain.source.noise_power
        for e, stage in zip(ledger.entries, chain.stages):
            assert e.input_signal == prev_signal and e.input_noise == prev_noise
            assert e.output_signal == e.input_signal * stage.gain
            assert e.output_noise == e.input_noise * stage.gain + stage.added_noise
            prev_signal, prev_noise = e.output_signal, e.output_noise
        assert rel(ledger.output_noise, float(exact.noise[-1])) <= 1e-12
        assert rel(total_noise_factor_direct(ledger), float(exact.total())) <= 1e-12


def test_closed_form_agrees_with_recursion(corpus):
    for chain in corpus:
        n_rec = propagate(chain).output_noise
        n_closed = closed_form_output_noise(chain)
        assert abs(n_rec - n_closed) <= 1e-12 * max(abs(n_rec), abs(n_closed))


def test_direct_total_matches_expanded_form(corpus):
    for chain in corpus:
        assert rel(total_noise_factor_direct(propagate(chain)), total_noise_factor_expanded(chain)) <= 1e-12


def test_signal_rescaling(corpus):
    for chain in corpus[:300]:
        base = propagate(chain)
        scaled = propagate(replace(chain, source=replace(chain.source, signal_power=chain.source.signal_power * 7.3)))
        for a, b in zip(base.entries, scaled.entries):
            assert a.input_noise == b.input_noise and a.output_noise == b.output_noise
            assert b.output_snr == pytest.approx(7.3 * a.output_snr, rel=1e-12)
        assert rel(total_noise_factor_direct(base), total_noise_factor_direct(scaled)) <= 1e-12
