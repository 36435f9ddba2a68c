# %% [markdown]
# # Checking the formulas with simulated noise
#
# One million Gaussian realizations pushed through a three-stage chain. The
# estimated noise power at every interface, the total factor and the
# corrected stage factors land within four standard errors of the analytic
# values.

# %%
from cascade_noise import CascadeChain, SimulationConfig, SourceSpec, StageSpec, simulate_chain
from cascade_noise.report import emit_simulation

chain = CascadeChain(SourceSpec(100.0, 1.0), tuple(StageSpec(10.0, 5.0) for _ in range(3)))
result = simulate_chain(chain, SimulationConfig(sample_count=1_000_000, seed=42), workers=4)
print(emit_simulation(result))

# %% [markdown]
# The Friis stage factors (1.5 for every stage here) are not what a
# measurement of input SNR over output SNR at stage 2 or 3 would return.

# %%
from cascade_noise import friis_stage_factor

for x in (1, 2, 3):
    print(x, "friis", friis_stage_factor(chain, x), "measured", round(result.stage_factors[x - 1], 4))
