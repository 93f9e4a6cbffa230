# # Inverse polynomials by interpolation
#
# Any function on a finite field is a polynomial.  Interpolating the inverted
# table gives the inverse as explicit coefficients, an independent route to
# the same function as the closed forms.

# %%
import tempfile
from pathlib import Path

import numpy as np

from pptrace import field_tower as ft
from pptrace import oracle
from pptrace.families import FamilyId, PermSpec, build_inverse, eval_inverse, permuting_gammas

p = ft.make_params(2)
spec = PermSpec(p, FamilyId.F1, ft.one(p))
coeffs = oracle.lagrange_interpolate(oracle.invert_table(oracle.tabulate(spec)))
print("nonzero coefficients:", coeffs.nonzero())

# %% [markdown]
# Here q = 4, so Tr(x) = x + x^4 and the closed inverse x + Tr(x)^3 expands to
# x + x^3 + x^6 + x^9 + x^12, matching the listing above.

# %%
xs = ft.all_elements(p)
form = build_inverse(spec)
print("pointwise equal:", bool(np.all(ft.equal(oracle.poly_eval(coeffs, xs), eval_inverse(form, xs)))))

# %% [markdown]
# Subfield gammas keep the inverse sparse.  The trace-one branch raises
# Tr(x) to the power t = 1/3 mod (q - 1), and terms and degree both grow.

# %%
for m in (3, 5):
    pm = ft.make_params(m)
    for g in (ft.Element(1, 0), ft.Element(0, 1)):
        s = PermSpec(pm, FamilyId.F3, g)
        assert g in permuting_gammas(pm, FamilyId.F3)
        c = oracle.lagrange_interpolate(oracle.invert_table(oracle.tabulate(s)))
        nzc = c.nonzero()
        print(f"m={m} f3 gamma={ft.to_hex(pm, g)} {build_inverse(s).branch.value:<8}: "
              f"{len(nzc):4d} terms, degree {nzc[-1][0]}")

# %% [markdown]
# Tables can be exported for other tools: one header line, then packed
# little-endian entries.

# %%
with tempfile.TemporaryDirectory() as tmp:
    path = oracle.write_table(Path(tmp) / "f1.bin", spec)
    print(path.read_bytes().split(b"\n")[0].decode())
    spec2, table = oracle.read_table(path)
    print("read back:", spec2 == spec, table.values[:8])
