"""Run the lazy 2-switch chain on K5 and compare its empirical law to uniform."""
from collections import Counter

from hamswitch.analysis import build_state_graph, mixing_exact
from hamswitch.graph import Graph
from hamswitch.switch import ChainConfig, SwitchChain

g = Graph.complete(5)
sg = build_state_graph(g, "ham", 2)
rep = mixing_exact(sg, [0.25])
print(f"{len(sg)} Hamiltonian cycles, theta={rep.theta}, tau(1/4)={rep.tau[0.25]}")

chain = SwitchChain(g, ChainConfig(2, "ham", lazy=True, seed=1))
state, counts, accepted = sg.states[0], Counter(), 0
for i in range(200_000):
    state, prop = chain.step(state, i)
    counts[state] += 1
    accepted += prop.accepted
print("visits per state:", sorted(counts.values()))
print(f"acceptance rate {accepted / 200_000:.3f}")
