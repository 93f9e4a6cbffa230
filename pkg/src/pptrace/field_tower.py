"""Arithmetic in GF(2^m) and in the quadratic tower GF(2^2m) = GF(2^m)[y]/(y^2 + y + c).

Base-field elements are bit-encoded polynomials over GF(2), reduced modulo
``FieldParams.base_modulus``.  Tower elements are :class:`Element` pairs
``(a, b)`` standing for ``a + b*y``.

Every operation is written with bitwise operators only, so the coordinates of
an :class:`Element` may be plain Python ints or equal-shape ``numpy.int64``
arrays; the array form evaluates a whole batch of field elements at once and
is what the exhaustive sweeps use.

Because ``c`` has absolute trace 1, ``y^2 + y + c`` is irreducible over
GF(2^m) and its two roots are ``y`` and ``y + 1``.  Hence ``y^q = y + 1``, which
makes the relative Frobenius, the relative trace and subfield membership pure
coordinate operations:

    (a + b*y)^q       = (a + b) + b*y
    Tr(a + b*y)       = b
    a + b*y in GF(q) <=> b == 0
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Union

import numpy as np

from .errors import DivisionByZero, ModulusError, NotApplicable, RangeError

Coord = Union[int, np.ndarray]

MAX_M = 16

# Lexicographically smallest irreducible polynomial of each degree over GF(2).
DEFAULT_MODULI = {
    1: 0x2,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
    9: 0x203,
    10: 0x409,
    11: 0x805,
    12: 0x1009,
    13: 0x201B,
    14: 0x4021,
    15: 0x8003,
    16: 0x1002B,
}


class Element(NamedTuple):
    """``a + b*y`` with ``a, b`` in GF(2^m)."""

    a: Coord
    b: Coord


# -- GF(2)[x] helpers ---------------------------------------------------------


def _poly_degree(f: int) -> int:
    return f.bit_length() - 1


def _poly_mod(f: int, g: int) -> int:
    dg = _poly_degree(g)
    while f and _poly_degree(f) >= dg:
        f ^= g << (_poly_degree(f) - dg)
    return f


def is_irreducible(f: int) -> bool:
    """Trial division by every polynomial of degree at most ``deg(f) // 2``."""
    d = _poly_degree(f)
    if d < 1:
        return False
    for g in range(2, 1 << (d // 2 + 1)):
        if _poly_mod(f, g) == 0:
            return False
    return True


def _clmul_mod(u: Coord, v: Coord, m: int, modulus: int) -> Coord:
    # shift-and-add; branch-free so that it also runs on int64 arrays
    r = u & 0
    for i in range(m):
        r = r ^ (u & -((v >> i) & 1))
        u = u << 1
        u = u ^ (modulus & -((u >> m) & 1))
    return r


def _abs_trace(u: int, m: int, modulus: int) -> int:
    acc, s = 0, u
    for _ in range(m):
        acc ^= s
        s = _clmul_mod(s, s, m, modulus)
    return acc


# -- parameters ---------------------------------------------------------------


@dataclass(frozen=True)
class FieldParams:
    """Immutable description of the tower GF(2^m)[y]/(y^2 + y + c)."""

    m: int
    base_modulus: int
    c: int
    q: int = field(init=False, repr=False)
    q2: int = field(init=False, repr=False)
    mask: int = field(init=False, repr=False)

    def __post_init__(self):
        if not 1 <= self.m <= MAX_M:
            raise RangeError(f"m must lie in 1..{MAX_M}, got {self.m}")
        if _poly_degree(self.base_modulus) != self.m:
            raise ModulusError(
                f"modulus {self.base_modulus:#x} does not have degree {self.m}"
            )
        if not 0 <= self.c < (1 << self.m):
            raise RangeError(f"c={self.c:#x} is not an {self.m}-bit element")
        if _abs_trace(self.c, self.m, self.base_modulus) != 1:
            raise ModulusError(f"c={self.c:#x} has absolute trace 0")
        object.__setattr__(self, "q", 1 << self.m)
        object.__setattr__(self, "q2", 1 << (2 * self.m))
        object.__setattr__(self, "mask", (1 << self.m) - 1)

    # base field GF(2^m)

    def base_mul(self, u: Coord, v: Coord) -> Coord:
        return _clmul_mod(u, v, self.m, self.base_modulus)

    def base_square(self, u: Coord) -> Coord:
        return _clmul_mod(u, u, self.m, self.base_modulus)

    def base_pow(self, u: Coord, e: int) -> Coord:
        if e < 0:
            raise ValueError("negative exponent")
        r = (u & 0) | 1
        while e:
            if e & 1:
                r = self.base_mul(r, u)
            e >>= 1
            if e:
                u = self.base_square(u)
        return r

    def base_inv(self, u: Coord) -> Coord:
        if np.any(u == 0):
            raise DivisionByZero("inverse of zero in the base field")
        return self.base_pow(u, self.q - 2)

    def abs_trace(self, u: int) -> int:
        """Absolute trace ``u + u^2 + ... + u^(2^(m-1))`` of a base element."""
        return _abs_trace(u, self.m, self.base_modulus)


def _default_c(m: int, modulus: int) -> int:
    if m % 2 == 1:
        return 1
    return next(c for c in range(1, 1 << m) if _abs_trace(c, m, modulus) == 1)


def make_params(m: int, base_modulus: int | None = None) -> FieldParams:
    """Build the tower for GF(2^2m).

    Without *base_modulus* the built-in smallest irreducible of degree *m* is
    used.  ``c`` is 1 for odd *m*, otherwise the smallest element of absolute
    trace 1.
    """
    if not isinstance(m, int) or not 1 <= m <= MAX_M:
        raise RangeError(f"m must lie in 1..{MAX_M}, got {m!r}")
    if base_modulus is None:
        base_modulus = DEFAULT_MODULI[m]
    elif _poly_degree(base_modulus) != m:
        raise ModulusError(f"modulus {base_modulus:#x} does not have degree {m}")
    elif not is_irreducible(base_modulus):
        raise ModulusError(f"modulus {base_modulus:#x} is reducible")
    return FieldParams(m, base_modulus, _default_c(m, base_modulus))


# -- encoding -----------------------------------------------------------------


def encode(p: FieldParams, x: Element) -> Coord:
    """Pack ``a + b*y`` as ``a | b << m``."""
    return x.a | (x.b << p.m)


def decode(p: FieldParams, v: Coord) -> Element:
    if isinstance(v, np.ndarray):
        v = v.astype(np.int64, copy=False)
    elif not 0 <= v < p.q2:
        raise RangeError(f"{v:#x} is not a {2 * p.m}-bit element")
    return Element(v & p.mask, v >> p.m)


def all_elements(p: FieldParams) -> Element:
    """Every element of GF(2^2m) as one batch, in encoding order."""
    return decode(p, np.arange(p.q2, dtype=np.int64))


def to_hex(p: FieldParams, x: Element) -> str:
    """Zero-padded to the full 2m-bit width, e.g. ``0x08`` at m=3."""
    return f"0x{int(encode(p, x)):0{(2 * p.m + 3) // 4}x}"


def zero(p: FieldParams, like: Coord = 0) -> Element:
    z = like & 0
    return Element(z, z)


def one(p: FieldParams, like: Coord = 0) -> Element:
    z = like & 0
    return Element(z | 1, z)


def embed_base(p: FieldParams, a: Coord) -> Element:
    return Element(a, a & 0)


def is_in_subfield(p: FieldParams, x: Element):
    return x.b == 0


def is_zero(x: Element):
    return (x.a | x.b) == 0


def equal(x: Element, y: Element):
    return ((x.a ^ y.a) | (x.b ^ y.b)) == 0


# -- tower arithmetic ---------------------------------------------------------


def add(p: FieldParams, x: Element, y: Element) -> Element:
    return Element(x.a ^ y.a, x.b ^ y.b)


def scale(p: FieldParams, x: Element, s: Coord) -> Element:
    """Multiply *x* by the subfield element with base coordinate *s*."""
    return Element(p.base_mul(x.a, s), p.base_mul(x.b, s))


def mul(p: FieldParams, x: Element, y: Element) -> Element:
    aa = p.base_mul(x.a, y.a)
    bb = p.base_mul(x.b, y.b)
    mid = p.base_mul(x.a ^ x.b, y.a ^ y.b)
    # y^2 = y + c
    cbb = bb if p.c == 1 else p.base_mul(bb, p.c)
    return Element(aa ^ cbb, mid ^ aa)


def square(p: FieldParams, x: Element) -> Element:
    # Frobenius over GF(2) is additive: (a + b y)^2 = a^2 + b^2 (y + c)
    a2 = p.base_square(x.a)
    b2 = p.base_square(x.b)
    cb2 = b2 if p.c == 1 else p.base_mul(b2, p.c)
    return Element(a2 ^ cb2, b2)


def power(p: FieldParams, x: Element, e: int) -> Element:
    """Square-and-multiply; ``x**0`` is 1 for every *x*, including 0."""
    if e < 0:
        raise ValueError("negative exponent")
    r = one(p, x.a)
    while e:
        if e & 1:
            r = mul(p, r, x)
        e >>= 1
        if e:
            x = square(p, x)
    return r


def frobenius(p: FieldParams, x: Element) -> Element:
    """``x -> x^q``."""
    return Element(x.a ^ x.b, x.b)


def trace(p: FieldParams, x: Element) -> Element:
    """Relative trace ``x + x^q``, an element of the subfield."""
    return Element(x.b, x.b & 0)


def norm(p: FieldParams, x: Element) -> Coord:
    """Relative norm ``x * x^q`` as a base coordinate."""
    # a(a+b) + b^2 c; the y-coordinate cancels
    ab = p.base_mul(x.a, x.a ^ x.b)
    b2 = p.base_square(x.b)
    return ab ^ (b2 if p.c == 1 else p.base_mul(b2, p.c))


def inv(p: FieldParams, x: Element) -> Element:
    """Inverse via the norm: ``1/x = x^q / N(x)`` with ``N(x)`` in GF(q)."""
    if np.any(is_zero(x)):
        raise DivisionByZero("inverse of zero")
    return scale(p, frobenius(p, x), p.base_inv(norm(p, x)))


def f4_nontrivial_elements(p: FieldParams) -> tuple[Element, Element]:
    """The two roots ``w, w + 1`` of ``z^2 + z + 1`` in GF(2^2m), for odd m."""
    if p.m % 2 == 0:
        raise NotApplicable("GF(4) lies inside GF(2^m) for even m")
    # w = y + e where e^2 + e = c + 1; e = 0 when c = 1
    target = p.c ^ 1
    cand = np.arange(p.q, dtype=np.int64)
    hits = np.flatnonzero((p.base_square(cand) ^ cand) == target)
    e = int(hits[0])
    return Element(e, 1), Element(e ^ 1, 1)
