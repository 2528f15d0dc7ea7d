"""Free lattice terms, word problem and symmetric constructions."""
