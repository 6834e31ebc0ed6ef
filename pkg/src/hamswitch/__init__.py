"""Switch Markov chains on Hamiltonian cycles and 2-factors of dense graphs."""

__version__ = "0.1.0"
