# %% [markdown]
# # Fault scripts and the deterministic injector

# %%
from scrambler import GAUSSIAN_SCRIPT, EXPERIMENT_SCRIPT, InjectionEngine, PhysicalMemory, Prng
from scrambler import format_script, parse_script

cmds = parse_script(GAUSSIAN_SCRIPT)
for c in cmds:
    print(c)
print(format_script(cmds))

# %% The same seed always corrupts the same words
def inject(seed):
    eng = InjectionEngine(PhysicalMemory(20000 * 11), Prng(seed))
    for c in parse_script(EXPERIMENT_SCRIPT):
        eng.execute(c)
    return eng

a, b, c = inject(1), inject(1), inject(2)
print("seed 1:", a.scrambled_count, "seed 1 again:", b.scrambled_count, "seed 2:", c.scrambled_count)
print("identical memory for equal seeds:", (a.memory.snapshot() == b.memory.snapshot()).all())
