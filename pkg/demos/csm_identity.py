"""CSM class of psi on the resolved plane versus the Gysin restriction of the complement class."""
from psikit.chowsurf import csm_identity_check, wma_standin
from psikit.corpus import GLOBAL_CORPUS

for name, F in GLOBAL_CORPUS.items():
    rep = csm_identity_check(F)
    wma = wma_standin(F)
    print(f"{name:24s} lhs {rep.lhs.format(top_label='[P2]'):12s} rhs {rep.rhs.format(top_label='[P2]'):12s}"
          f" equal {rep.equal}  chi(X) {rep.chi_X:>2}  sum mu {wma.cls.pts}")
