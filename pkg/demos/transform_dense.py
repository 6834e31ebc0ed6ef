"""Walk between two Hamiltonian cycles of a dense random graph by bounded switches."""
from hamswitch.families import planted_cycle, random_dense_graph, random_ham_cycle
from hamswitch.reconfigure import transform_ham

g = random_dense_graph(32, 23, seed=2)
h0 = planted_cycle(g, 2)
h1, h2 = random_ham_cycle(g, h0, 10, 300), random_ham_cycle(g, h0, 11, 300)
tr = transform_ham(h1, h2, g)
print(f"difference {len(h1 ^ h2)} edges, {len(tr)} steps")
for i, s in enumerate(tr.steps):
    print(f"step {i}: {s.annotation}, {len(s.switch)} edges switched, {len(s.state ^ h2)} left")
assert tr.replay() == h2
