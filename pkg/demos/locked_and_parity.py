"""Graphs where small switches cannot connect all Hamiltonian cycles."""
from hamswitch.analysis import build_state_graph, check_irreducible
from hamswitch.families import blue_parity, build_locked_example, build_parity_example

cg, h1, h2 = build_parity_example(3)
sg = build_state_graph(cg.graph, "ham", 2)
ir = check_irreducible(sg)
print(f"parity graph: {len(sg)} cycles in {ir.n_components} components under 2-switches")
print("blue parity of the two marked cycles:", blue_parity(cg, h1), blue_parity(cg, h2))

g = build_locked_example(4)
for k in (4, 5):
    print(f"locked graph n={g.n}, k={k}: connected={check_irreducible(build_state_graph(g, 'ham', k)).connected}")
