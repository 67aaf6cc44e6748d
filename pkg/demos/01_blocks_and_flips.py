"""Elementary pieces, their matrices, and flips acting as mutations."""

from mutorb.core_matrix import format_rows, mutate_matrix
from mutorb.fixtures import HALF, TWO, elementary, ptolemy_monogon
from mutorb.orbifold import flip, flip_graph, signed_adjacency

# a monogon holding two pending arcs, one to each kind of orbifold point
T = ptolemy_monogon(HALF, TWO)
B = signed_adjacency(T)
print("arcs:", T.interior_arcs)
print("B(T):", format_rows(B.b))
print("symmetrizer:", B.d)

# flipping eta is the same as mutating at its row
k = T.interior_arcs.index("eta")
T2 = flip(T, "eta")
print("after flip of eta:", format_rows(signed_adjacency(T2).b))
print("mutation agrees:", signed_adjacency(T2) == mutate_matrix(B, k))

# the weight of the orbifold point changes the matrix but not the flip graph
for w in (TWO, HALF):
    piece = elementary("IV~", [w])
    print(f"IV~ weight {w}:", format_rows(signed_adjacency(piece).b), "triangulations:", len(flip_graph(piece)))
