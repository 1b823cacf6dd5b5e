"""Translated indicators that defeat boundedness, and embeddings between spaces.

Run: python demos/06_witness_and_embedding.py
"""

from morrey_orlicz.orlicz import Power
from morrey_orlicz.verify.experiments import embedding_check, nontriviality_check

res = nontriviality_check(Power(2.0), 0.5, 1, [2, 4, 8, 16, 32], alpha=0.5, psi=Power(2.0))
for R, w, q in zip(res["R"], res["witness_norms"], res["ratio_sequence"]):
    print(f"R = {R:3d}: ||f_R|| = {w:.6f}, lower bound for the operator ratio {q:.6f}")
print("lambda = -0.5 nontrivial:", nontriviality_check(Power(2.0), -0.5, 1, [2])["nontrivial"])

e = embedding_check(Power(2.0), Power(4.0), 0.5, 0.0)
print(f"u^2, lambda=1/2 into u^4, mu=0: A1={e['A1']:.6f}, A2={e['A2']:.6f}, "
      f"measured {e['measured_constant']:.4f} <= {e['embedding_constant']:.1f}")
e = embedding_check(Power(4.0), Power(2.0), 0.5, 0.0)
print("reverse direction holds:", e["holds"])
