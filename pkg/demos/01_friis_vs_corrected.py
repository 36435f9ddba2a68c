# %% [markdown]
# # Friis versus corrected stage-wise noise factors
#
# Six identical stages, each with gain 10 and added noise 5 (output referred),
# fed by a source with noise power 1. The Friis stage factors are all equal,
# the corrected ones shrink stage after stage because each stage sees the
# noise accumulated in front of it.

# %%
from cascade_noise import CascadeChain, SourceSpec, StageSpec, compare_factors, emit_report

chain = CascadeChain(SourceSpec(signal_power=100.0, noise_power=1.0),
                     tuple(StageSpec(gain=10.0, added_noise=5.0) for _ in range(6)))
report = compare_factors(chain)
print(emit_report(report))

# %% [markdown]
# Both totals agree with SNR_in / SNR_out. Only the per-stage split differs.

# %%
print("direct", report.total_direct)
print("Friis ", report.total_friis)
print("product", report.total_corrected_product)

# %% Bar chart of both columns (needs matplotlib)
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    import numpy as np

    x = np.arange(1, chain.n + 1)
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.bar(x - 0.2, [r.friis_factor for r in report.rows], width=0.4, label="Friis")
    ax.bar(x + 0.2, [r.corrected_factor for r in report.rows], width=0.4, label="corrected")
    ax.set(xlabel="stage", ylabel="noise factor", ylim=(0.95, 1.55))
    ax.legend()
    fig.tight_layout()
    fig.savefig("stage_factors.png", dpi=150)
    print("saved stage_factors.png")
