# # Arithmetic in the quadratic tower
#
# GF(2^2m) is stored as pairs (a, b) meaning a + b*y, with a and b in GF(2^m)
# and y^2 = y + c.  Everything below works on scalars and on numpy arrays alike.

# %%
import numpy as np

from pptrace import field_tower as ft

p = ft.make_params(3)
print(p)
print("q =", p.q, " q^2 =", p.q2, " c =", hex(p.c))

# %% [markdown]
# Elements are packed as ``a | b << m``.  At m = 3, ``0x08`` is y itself.

# %%
y = ft.decode(p, 0x08)
print(y, ft.to_hex(p, y))
print("y^2     =", ft.to_hex(p, ft.square(p, y)))
print("y^q     =", ft.to_hex(p, ft.frobenius(p, y)), "(= y + 1)")
print("Tr(y)   =", ft.to_hex(p, ft.trace(p, y)))
print("N(y)    =", hex(ft.norm(p, y)), "(in GF(q))")
print("1/y * y =", ft.to_hex(p, ft.mul(p, ft.inv(p, y), y)))

# %% [markdown]
# The subfield GF(q) is exactly the set with b == 0, and the trace lands there.

# %%
xs = ft.all_elements(p)
tr = ft.trace(p, xs)
print("traces in subfield:", bool(np.all(ft.is_in_subfield(p, tr))))
print("each subfield value hit", np.bincount(ft.encode(p, tr)).max(), "times")

# %% [markdown]
# Batched arithmetic: the multiplicative group has order q^2 - 1, so every
# nonzero element satisfies x^(q^2-1) = 1.

# %%
nz = ft.decode(p, np.arange(1, p.q2))
print("all x^(q^2-1) == 1:", bool(np.all(ft.equal(ft.power(p, nz, p.q2 - 1), ft.one(p)))))

# %% [markdown]
# The same code runs unchanged at m = 16, where the field has 2^32 elements.

# %%
big = ft.make_params(16)
rng = np.random.default_rng(0)
x = ft.decode(big, rng.integers(1, big.q2, size=5, dtype=np.int64))
print([ft.to_hex(big, ft.Element(a, b)) for a, b in zip(*ft.mul(big, x, ft.inv(big, x)))])
