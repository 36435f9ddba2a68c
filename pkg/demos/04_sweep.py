# %% [markdown]
# # Sweeping one parameter
#
# How the second-stage factors react to that stage's added noise, with the
# first stage held fixed.

# %%
import numpy as np

from cascade_noise import CascadeChain, SourceSpec, StageSpec, sweep
from cascade_noise.report import emit_sweep

chain = CascadeChain(SourceSpec(100.0, 1.0), (StageSpec(10.0, 5.0), StageSpec(10.0, 5.0)))
results = sweep(chain, "stages.2.added_noise", np.linspace(0.0, 20.0, 5).tolist())
for value, report in results:
    row = report.rows[1]
    print(f"N_a(2)={value:5.1f}  Friis {row.friis_factor:.6f}  corrected {row.corrected_factor:.6f}"
          f"  total {report.total_direct:.6f}")

# %% Same data as CSV
print(emit_sweep("stages.2.added_noise", results))
