"""Walk through the enveloping-algebra window of k[x]/(x^2).

Run:  python3 demos/envelope_window.py
"""

from dgpoisson.fixtures import truncated_poly
from dgpoisson.theorems import compare_with_oracle
from dgpoisson.ue import canonical_triple, induced_map, ue_truncated, verify_window
from dgpoisson.ue.words import H, M, word_str

A = truncated_poly(2)
print("algebra: k[x]/(x^2), zero bracket")

for L in range(1, 6):
    U = ue_truncated(A, L)
    print(f"  L={L}: dim = {U.dim}, filtration {U.filtration_dims()}")

U = ue_truncated(A, 3)
print("\nbasis of the L=3 window (canonical words):")
for lab in U.labels:
    words = ", ".join(word_str(w) for w in U.preimages[lab])
    print(f"  {lab:>12}  level {U.levels[lab]}  <- {words}")

one = A.field.one
print("\nM_x H_x reduces to", U.coords({((M, "x"), (H, "x")): one}))
print("H_x H_x reduces to", U.coords({((H, "x"), (H, "x")): one}))

print("\nwindow self-check:", verify_window(U).summary().splitlines()[0])
phi = induced_map(A, canonical_triple(U), U)
print("canonical triple induces the identity:",
      all(phi.images[n] == U.space.basis(n) for n in U.labels))

cmp_ = compare_with_oracle(A, 3)
print(f"brute-force oracle (slack {cmp_.slack}, stable {cmp_.stable}) agrees: {cmp_.agree}")
