# %% [markdown]
# # The three experiments: fixed 3, fixed 5, adaptive from 5
#
# Desk scale: 20000 cells, stride 20, one million reads. Pass a read count
# on the command line to change it (65000000 for the full-length runs).

# %%
import sys

from scrambler import EXPERIMENT_SCRIPT, ExperimentConfig, cost, format_summary, run_experiment
from scrambler.harness import trace_text

reads = int(sys.argv[1]) if len(sys.argv) > 1 else 1_000_000
reports = {}
for name, level, adaptive in [("fixed 3", 3, False), ("fixed 5", 5, False), ("adaptive", 5, True)]:
    cfg = ExperimentConfig(script=EXPERIMENT_SCRIPT, initial_redundancy=level,
                           adaptive=adaptive, total_reads=reads)
    reports[name] = run_experiment(cfg)
    print(f"== {name}")
    print(format_summary(reports[name]))

# %% Access cost relative to fixed redundancy 5
base = cost(reports["fixed 5"])
for name, rep in reports.items():
    print(f"{name:9s} cost {cost(rep):>12d}  ratio {cost(rep) / base:.3f}")

# %% Redundancy trace of the adaptive run (cycle,redundancy)
print(trace_text(reports["adaptive"]))
