# # Trace-linear bijections
#
# T(x) = Tr(beta x) + alpha Tr(delta x) is additive over GF(2) and, when beta
# and delta are not GF(q)-multiples of each other and alpha has trace 1, it is
# a bijection with a closed-form inverse.

# %%
import numpy as np

from pptrace import field_tower as ft
from pptrace import linearized as lz
from pptrace.errors import DegeneratePair

p = ft.make_params(3)
beta, delta, alpha = ft.decode(p, 0x2B), ft.one(p), ft.decode(p, 0x08)
t = lz.make_map(p, beta, delta, alpha)
print("denominator:", ft.to_hex(p, t.denom))

# %%
xs = ft.all_elements(p)
tx = lz.t_apply(t, xs)
print("distinct images:", len(np.unique(ft.encode(p, tx))), "of", p.q2)
print("T^-1(T(x)) == x:", bool(np.all(ft.equal(lz.t_inverse_apply(t, tx), xs))))

# %% [markdown]
# A degenerate pair is rejected up front.

# %%
try:
    lz.make_map(p, ft.scale(p, delta, 5), delta, alpha)
except DegeneratePair as exc:
    print("rejected:", exc)

# %% [markdown]
# How many pairs are admissible?  Exactly those outside the q - 1 subfield
# multiples of each delta.

# %%
nz = ft.decode(p, np.arange(1, p.q2))
ok = lz.pair_is_admissible(p, ft.Element(nz.a[:, None], nz.b[:, None]), ft.Element(nz.a, nz.b))
n = p.q2 - 1
print(int(ok.sum()), "admissible pairs;", n * n - n * (p.q - 1), "expected")
