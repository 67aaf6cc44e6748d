"""Unfolding skew-symmetrizable matrices into skew-symmetric ones."""

from mutorb.core_matrix import format_rows
from mutorb.fixtures import V12_TILDE_TWO, multi_point_orbifold
from mutorb.unfolding import local_unfolding, prime_unfolding, verify_unfolding

# weight 2 points unfold locally: each heavy row is split in two
cand = local_unfolding(V12_TILDE_TWO)
print("B:", format_rows(cand.B.b))
print("C:", format_rows(cand.C.b))
print("partition:", cand.partition)
print(verify_unfolding(cand, depth=6))

# weight 1/2 points need a branched double cover
sig, B = multi_point_orbifold("closed sphere, four weight 1/2 points")
print("orbifold:", sig.to_json())
cand = prime_unfolding(B)
print("cover has", cand.C.n, "rows for", B.n, "rows of B")
print(verify_unfolding(cand, depth=4, samples=50))
