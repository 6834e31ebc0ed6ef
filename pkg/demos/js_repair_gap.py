"""Stability of the almost-2-factor chain, and a graph where short repair is impossible."""
from hamswitch.enumerate import two_factors
from hamswitch.graph import Graph
from hamswitch.js import k_js, p_stability_ratio

for g in (Graph.complete(5), Graph.complete(6)):
    kj = k_js(g)
    print(f"K{g.n}: k_JS={kj.value}, states={kj.n_states}, ratio={p_stability_ratio(g)}")

# min degree exactly n/2: this almost 2-factor is 5 edges from every 2-factor
g = Graph(6, frozenset([(0, 1), (0, 2), (0, 5), (1, 2), (1, 3), (1, 4), (2, 5), (3, 4), (3, 5), (4, 5)]))
x = frozenset([(0, 1), (0, 5), (1, 2), (2, 5), (3, 4)])
print("nearest 2-factor distance:", min(len(x ^ f) for f in two_factors(g)))
