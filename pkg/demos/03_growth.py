"""Growth of exchange graphs, read off the orbifold and seen in ball sizes."""

from mutorb.fixtures import A3_PATH, AFFINE_A, GAMMA_1_1, TORUS_ONE_HOLE
from mutorb.growth import ball_sizes, classify_growth, enumerate_mutation_class, surface_of

for name, D in [("A3", A3_PATH), ("affine", AFFINE_A), ("Gamma(1,1)", GAMMA_1_1), ("torus", TORUS_ONE_HOLE)]:
    print(name)
    print("  surface:", surface_of(D))
    print("  class size:", enumerate_mutation_class(D).size)
    print("  growth:", classify_growth(D))
    print("  balls:", ball_sizes(D, 9, unlabeled=True))
