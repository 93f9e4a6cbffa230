"""The six permutation families ``f(x) = x + gamma Tr(h(x))`` and their inverses.

=========  ==========================
family     h(x)
=========  ==========================
``F1``     x^3 + x^(q+2)
``F2``     x + x^2 + x^3 + x^(q+2)
``F3``     x + x^3 + x^(q+2)
``F4``     x^2 + x^3 + x^(q+2)
``F5``     x^2 + x^(q+2)
``F6``     x + x^(q+2)
=========  ==========================

Relative traces always land in GF(q), so every polynomial in a trace value
(``Tr(x)^3``, ``(Tr(x) + 1)^t`` and so on) is evaluated on the base
coordinate only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import field_tower as ft
from .errors import NoInverse, NotApplicable, NotAPermutation, RangeError
from .field_tower import Element, FieldParams
from .linearized import TraceLinearMap


class FamilyId(enum.Enum):
    F1 = "f1"
    F2 = "f2"
    F3 = "f3"
    F4 = "f4"
    F5 = "f5"
    F6 = "f6"

    @property
    def monomials(self) -> tuple[str, ...]:
        return _MONOMIALS[self]

    @classmethod
    def parse(cls, name: str) -> "FamilyId":
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown family {name!r}; expected f1..f6") from None


# "xq2" is x^(q+2)
_MONOMIALS = {
    FamilyId.F1: ("x3", "xq2"),
    FamilyId.F2: ("x", "x2", "x3", "xq2"),
    FamilyId.F3: ("x", "x3", "xq2"),
    FamilyId.F4: ("x2", "x3", "xq2"),
    FamilyId.F5: ("x2", "xq2"),
    FamilyId.F6: ("x", "xq2"),
}


class GammaTag(enum.Enum):
    IN_SUBFIELD = "InSubfield"
    TRACE_ONE = "TraceOne"
    F4_NONBINARY = "F4NonBinary"
    OTHER = "Other"


@dataclass(frozen=True)
class GammaClass:
    """Trace class of gamma plus the flag ``gamma^2 + gamma + 1 == 0``."""

    tag: GammaTag
    f4_nonbinary: bool

    @property
    def tags(self) -> frozenset[GammaTag]:
        if self.f4_nonbinary:
            return frozenset({self.tag, GammaTag.F4_NONBINARY})
        return frozenset({self.tag})


class Branch(enum.Enum):
    SUBFIELD = "Subfield"
    TRACE_ONE = "TraceOne"
    F4 = "F4"


@dataclass(frozen=True)
class PermSpec:
    params: FieldParams
    family: FamilyId
    gamma: Element

    def __post_init__(self):
        q = self.params.q
        if not (0 <= self.gamma.a < q and 0 <= self.gamma.b < q):
            raise RangeError(f"gamma {self.gamma} is not an element of GF(q^2)")


@dataclass(frozen=True)
class InverseForm:
    spec: PermSpec
    branch: Branch
    t: int | None = None


def inverse_of_3_mod(m: int) -> int:
    """Least positive ``t`` with ``3 t = 1 (mod 2^m - 1)``; exists iff m is odd."""
    n = (1 << m) - 1
    if m % 2 == 0:
        raise NoInverse(f"3 divides 2^{m} - 1 = {n}")
    # extended Euclid on (3, n)
    r0, r1, s0, s1 = n, 3, 0, 1
    while r1:
        k = r0 // r1
        r0, r1 = r1, r0 - k * r1
        s0, s1 = s1, s0 - k * s1
    t = s0 % n
    return t if t > 0 else n


def gamma_class(spec: PermSpec) -> GammaClass:
    p, g = spec.params, spec.gamma
    tr = ft.trace(p, g).a
    if tr == 0:
        tag = GammaTag.IN_SUBFIELD
    elif tr == 1:
        tag = GammaTag.TRACE_ONE
    else:
        tag = GammaTag.OTHER
    return GammaClass(tag, _is_f4_nonbinary(p, g))


def _is_f4_nonbinary(p: FieldParams, g: Element) -> bool:
    w = ft.add(p, ft.add(p, ft.square(p, g), g), ft.one(p))
    return bool(ft.is_zero(w))


def is_permutation_condition(spec: PermSpec) -> bool:
    """The exact if-and-only-if condition for ``spec.family`` to permute GF(q^2)."""
    p, g, fam = spec.params, spec.gamma, spec.family
    if fam in (FamilyId.F1, FamilyId.F2):
        return bool(ft.is_in_subfield(p, g))
    if fam in (FamilyId.F3, FamilyId.F4):
        if p.m % 2 == 0:
            return bool(ft.is_in_subfield(p, g))
        return ft.trace(p, ft.add(p, g, ft.square(p, g))).a == 0
    if p.m % 2 == 0:
        raise NotApplicable(f"{fam.value} requires odd m, got m={p.m}")
    return bool(ft.is_zero(g)) or _is_f4_nonbinary(p, g)


def _powers(p: FieldParams, x: Element) -> dict[str, Element]:
    x2 = ft.square(p, x)
    return {
        "x": x,
        "x2": x2,
        "x3": ft.mul(p, x2, x),
        "xq2": ft.mul(p, ft.frobenius(p, x), x2),
    }


def eval_h(spec: PermSpec, x: Element) -> Element:
    p = spec.params
    pw = _powers(p, x)
    h = ft.zero(p, x.a)
    for name in spec.family.monomials:
        h = ft.add(p, h, pw[name])
    return h


def eval_forward(spec: PermSpec, x: Element) -> Element:
    """``x + gamma Tr(h(x))``."""
    p = spec.params
    s = ft.trace(p, eval_h(spec, x)).a
    return ft.add(p, x, ft.scale(p, spec.gamma, s))


def build_inverse(spec: PermSpec) -> InverseForm:
    """Pick the closed-form inverse matching the class of gamma."""
    if not is_permutation_condition(spec):
        raise NotAPermutation(
            f"{spec.family.value} with gamma={ft.to_hex(spec.params, spec.gamma)} "
            "does not permute GF(q^2)"
        )
    p, g, fam = spec.params, spec.gamma, spec.family
    if fam in (FamilyId.F1, FamilyId.F2):
        return InverseForm(spec, Branch.SUBFIELD)
    if fam in (FamilyId.F3, FamilyId.F4):
        tr = ft.trace(p, g).a
        if tr == 0:
            return InverseForm(spec, Branch.SUBFIELD)
        if tr == 1 and p.m % 2 == 1:
            return InverseForm(spec, Branch.TRACE_ONE, inverse_of_3_mod(p.m))
        raise NotAPermutation(f"trace(gamma) = {tr:#x} is neither 0 nor 1")
    # f5 / f6: gamma = 0 is the identity map
    if ft.is_zero(g):
        return InverseForm(spec, Branch.SUBFIELD)
    return InverseForm(spec, Branch.F4, inverse_of_3_mod(p.m))


def _poly_in_trace(p: FieldParams, fam: FamilyId, r):
    """The subfield-branch correction polynomial in ``r = Tr(x)``."""
    r2 = p.base_square(r)
    r3 = p.base_mul(r2, r)
    if fam is FamilyId.F1:
        return r3
    if fam is FamilyId.F2:
        return r ^ r2 ^ r3
    if fam is FamilyId.F3:
        return r ^ r3
    if fam is FamilyId.F4:
        return r2 ^ r3
    # f5 / f6 only reach the subfield branch with gamma = 0
    return r & 0


def eval_inverse(form: InverseForm, x: Element) -> Element:
    spec = form.spec
    p, g, fam, t = spec.params, spec.gamma, spec.family, form.t
    r = ft.trace(p, x).a
    if form.branch is Branch.SUBFIELD:
        return ft.add(p, x, ft.scale(p, g, _poly_in_trace(p, fam, r)))

    s = ft.trace(p, ft.mul(p, ft.add(p, ft.one(p), g), x)).a
    if form.branch is Branch.TRACE_ONE:
        if fam is FamilyId.F3:
            v = p.base_pow(r, t)
        else:
            v = p.base_pow(r ^ 1, t) ^ 1
    elif fam is FamilyId.F5:
        s2 = p.base_square(s)
        s3 = p.base_mul(s2, s)
        v = p.base_pow(r ^ s3 ^ s2 ^ s ^ 1, t) ^ s ^ 1
    else:
        s3 = p.base_mul(p.base_square(s), s)
        v = s ^ p.base_pow(r ^ s3, t)
    return ft.add(p, ft.embed_base(p, s), ft.scale(p, g, v))


def compose_with_T_identity(spec: PermSpec, tmap: TraceLinearMap, x: Element) -> Element:
    """Reduced right-hand side of ``f(T(x))`` written in ``u = Tr(beta x)``, ``v = Tr(delta x)``.

    For the trace-one and GF(4) branches the map must be the ``U`` map whose
    ``alpha`` is gamma.
    """
    form = build_inverse(spec)
    p, g, fam = spec.params, spec.gamma, spec.family
    u = ft.trace(p, ft.mul(p, tmap.beta, x)).a
    v = ft.trace(p, ft.mul(p, tmap.delta, x)).a
    base = ft.embed_base(p, u)

    if form.branch is Branch.SUBFIELD:
        head = ft.add(p, base, ft.scale(p, tmap.alpha, v))
        return ft.add(p, head, ft.scale(p, g, _poly_in_trace(p, fam, v)))

    if tmap.alpha != g:
        raise ValueError("this branch is stated for the map U with alpha = gamma")
    v2 = p.base_square(v)
    v3 = p.base_mul(v2, v)
    if fam is FamilyId.F3:
        w = v3
    elif fam is FamilyId.F4:
        w = v ^ v2 ^ v3
    elif fam is FamilyId.F5:
        u2 = p.base_square(u)
        w = v ^ p.base_mul(v, u2) ^ v2 ^ p.base_mul(v2, u) ^ v3
    else:
        u2 = p.base_square(u)
        w = p.base_mul(u2, v) ^ p.base_mul(u, v2) ^ v3
    return ft.add(p, base, ft.scale(p, g, w))


def permuting_gammas(p: FieldParams, family: FamilyId) -> list[Element]:
    """Every gamma for which *family* permutes GF(q^2) at this field size."""
    out = []
    if family in (FamilyId.F5, FamilyId.F6):
        if p.m % 2 == 0:
            return out
        w0, w1 = ft.f4_nontrivial_elements(p)
        return [ft.zero(p), w0, w1]
    for b in range(p.q):
        for a in range(p.q):
            spec = PermSpec(p, family, Element(a, b))
            if is_permutation_condition(spec):
                out.append(spec.gamma)
    return out
