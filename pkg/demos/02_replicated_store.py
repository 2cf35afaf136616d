# %% [markdown]
# # Replicated memory with stride layout and scrubbing

# %%
from scrambler import RedundantStore, make_layout

layout = make_layout(n_cells=40, stride=20)
print("addr(0,0..4):", [layout.addr(0, j) for j in range(5)])
print("addr(25,2):", layout.addr(25, 2))

store = RedundantStore(layout, redundancy=5, scrub=True)
store.write(7, 0xDEADBEEF)

# %% Corrupt two of five replicas; the vote still recovers and scrubbing repairs
for j in (1, 3):
    store.memory.xor(layout.addr(7, j), 0x00FF00FF)
print("before:", [hex(v) for v in store.replicas(7)])
out = store.read(7)
print("read ->", hex(out.value), "m =", out.m)
print("after: ", [hex(v) for v in store.replicas(7)])

# %% Raising redundancy fills the new replicas on the next scrubbed read
store.set_redundancy(7)
print("voters before fill:", store.read(7).k, " after:", store.read(7).k)
print(store.counters)
