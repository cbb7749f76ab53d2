"""Build new DG Poisson algebras and certify the enveloping-algebra identities.

Run:  python3 demos/constructions.py
"""

from dgpoisson.construct import deformation_bracket, exterior_gerstenhaber, symmetric_dgp, tensor
from dgpoisson.fixtures import lie2, moyal_truncated, odd_line
from dgpoisson.structures import cohomology, verify_dg_poisson
from dgpoisson.theorems import check_op_ue_iso, check_sym_lie_ue, check_tensor_ue_iso

A = odd_line()
T = tensor(A, A)
print("odd line ⊗ odd line:", T.space.dim, "dims;", verify_dg_poisson(T).summary().splitlines()[0])
print(check_tensor_ue_iso(A, A, 2).summary())
print(check_op_ue_iso(A, 2).summary())

S = symmetric_dgp(lie2(), 2)
print("\nS(lie2) truncated at length 2:", list(S.space))
print(check_sym_lie_ue(lie2(), 2, 2).summary())

G = exterior_gerstenhaber(lie2())
print("\nexterior algebra of lie2 with its Schouten-type bracket, p =", G.p)
print("  cohomology basis:", list(cohomology(G).space))

res = deformation_bracket(moyal_truncated(3))
print("\ntruncated Moyal product over GF(3): first non-symmetric order m =", res.order)
print("  ", res.report.summary().splitlines()[0])
