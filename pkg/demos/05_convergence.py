# # Observed order of accuracy
#
# Halve dx and quarter dt so alpha stays fixed.  With no drift the scheme is
# second order in dx; with the forward advection difference the first-order
# drift term takes over once the diffusion error is small enough.

# %%
from advdiff import worked_example
from advdiff.analysis import convergence_study
from advdiff.fdm import Stencil

for u, stencil in [(0.0, Stencil.FORWARD), (3.6e-4, Stencil.FORWARD), (3.6e-4, Stencil.CENTRAL)]:
    study = convergence_study(worked_example(u=u), levels=(10, 20, 40, 80), stencil=stencil)
    print(f"u={u:g} {stencil.value:>8}: errors {[f'{e:.2e}' for e in study.errors]} "
          f"orders {[round(float(o), 3) for o in study.orders]}")
