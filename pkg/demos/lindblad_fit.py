"""
Looking for a Lindblad form
===========================

Fit constant Kossakowski coefficients to the projected generator of the
spin-1/2 system, then check how much of the generator stays unexplained.
Flows of the projected dynamics do not compose, which the divisibility
defect makes visible.
"""

import numpy as np

from qqdyn import SpinHalfParams, divisibility_report, lindblad_fit, sh_state, sh_system

p = SpinHalfParams()
hq, eta = sh_system(p)

for pairing in ("printed", "standard"):
    fit = lindblad_fit(hq, seed=0, pairing=pairing)
    print(f"{pairing:>8s} index order: relative residual {fit.residual:.3f}")
    print(np.round(fit.c, 4))

# A large residual says no constant coefficients reproduce the generator.
for t in (0.5, 1.0, np.pi):
    rep = divisibility_report(hq, sh_state(p, 0.0), t, t)
    print(f"defect(t={t:.3f}, s={t:.3f}) = {rep.defect:.6f}")
