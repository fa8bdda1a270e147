"""The cone over a smooth plane curve: psi sees only an integer, the motivic class sees the genus."""
from psikit.corpus import load_fixture
from psikit.ncmodel import motivic_psi, psi

for m in (2, 3, 4):
    model = load_fixture(f"cone_{m}")
    total = motivic_psi(model)
    print(f"degree {m}: psi(vertex) = {psi(model)['p']:>2}, Psi mod T = {total}, constant: {total.is_constant()}")
