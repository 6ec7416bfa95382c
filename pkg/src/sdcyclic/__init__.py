"""Self-dual cyclic codes of length 2^s n over GF(2^m) + u GF(2^m), u^2 = 0."""

__version__ = "0.1.0"
