"""Resolve the cusp y^2 = x^3 and read off psi, the Milnor number and the Behrend value."""
from psikit.curveres import milnor_oracle, psi_at, resolve_local, to_ncmodel
from psikit.ncmodel import behrend_mu, dumps_model, unit_reconstruction

res = resolve_local("y^2-x^3")
print("blow-ups:", res.blowup_count, " branches:", res.branch_count)
for node in res.nodes:
    print(f"  {node.id}: multiplicity {node.mult}, discrepancy {node.discrepancy}, contacts {node.contacts}")

value = psi_at(res)
print("psi(p) = sum m(2 - r) =", value)
print("1 - psi(p) =", 1 - value, " local algebra dimension =", milnor_oracle("y^2-x^3"))

model = to_ncmodel(res)
print("Behrend-type formula:", behrend_mu(model)["p"], " unit reconstruction:", unit_reconstruction(model)["p"])
print()
print(dumps_model(model))
