# %% [markdown]
# # Building a chain from datasheet-style numbers
#
# Stages can be described by gain in dB and a noise figure in dB instead of
# an added noise power. A Friis figure is referred to the source noise only;
# a corrected figure is referred to the noise actually arriving at the stage,
# so it depends on everything in front of it.

# %%
from cascade_noise import RawStageSpec, SourceSpec, compare_factors, emit_report, propagate, resolve_chain
from cascade_noise.units import factor_to_figure_db

source = SourceSpec(signal_power=1.0, noise_power=1.0)
raw = [
    RawStageSpec(gain_db=20.0, friis_figure_db=1.0),      # LNA
    RawStageSpec(gain_db=-3.0, friis_figure_db=3.0),      # lossy filter
    RawStageSpec(gain_db=30.0, corrected_figure_db=0.5),  # IF amplifier
]
chain = resolve_chain(source, raw)
for x, stage in enumerate(chain.stages, start=1):
    print(f"stage {x}: gain {stage.gain:g}, added noise {stage.added_noise:.6g}")

# %%
report = compare_factors(chain)
print(emit_report(report))
print("total noise figure", factor_to_figure_db(report.total_direct), "dB")

# %% The ledger behind the numbers
ledger = propagate(chain)
for e in ledger.entries:
    print(e.index, e.input_noise, e.output_noise, e.output_snr)
