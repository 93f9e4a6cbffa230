"""Trace-built linearized bijections of GF(q^2).

For ``beta, delta`` that are not GF(q)-multiples of each other and ``alpha``
of relative trace 1,

    T(x) = Tr(beta x) + alpha Tr(delta x)

is an additive bijection with inverse

    T^-1(x) = (beta delta^q + delta beta^q)^-1 (delta^q Tr((1+alpha) x) + beta^q Tr(x)).

The same type covers the map ``U`` whose ``alpha`` is the permutation
parameter ``gamma`` itself.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import field_tower as ft
from .errors import BadAlpha, DegeneratePair, ZeroArgument
from .field_tower import Element, FieldParams


def cross_term(p: FieldParams, beta: Element, delta: Element) -> Element:
    """``beta delta^q + delta beta^q``; always lies in the subfield."""
    return ft.add(
        p,
        ft.mul(p, beta, ft.frobenius(p, delta)),
        ft.mul(p, delta, ft.frobenius(p, beta)),
    )


def pair_is_admissible(p: FieldParams, beta: Element, delta: Element):
    """True iff ``beta / delta`` is not in GF(q)*, i.e. the cross term is nonzero."""
    if np.any(ft.is_zero(beta)) or np.any(ft.is_zero(delta)):
        raise ZeroArgument("beta and delta must be nonzero")
    degenerate = ft.is_zero(cross_term(p, beta, delta))
    return ~degenerate if isinstance(degenerate, np.ndarray) else not degenerate


@dataclass(frozen=True)
class TraceLinearMap:
    params: FieldParams
    beta: Element
    delta: Element
    alpha: Element
    denom_inv: Element

    @property
    def denom(self) -> Element:
        return cross_term(self.params, self.beta, self.delta)


def make_map(
    p: FieldParams, beta: Element, delta: Element, alpha: Element
) -> TraceLinearMap:
    """Validate ``(beta, delta, alpha)`` and cache the inverse of the cross term.

    Batched coordinates are accepted, in which case every lane must be valid;
    this lets a sweep over many maps run as one array computation.
    """
    tr = ft.trace(p, alpha)
    if np.any(tr.a != 1):
        raise BadAlpha("trace(alpha) must equal 1")
    if np.any(ft.is_zero(beta)) or np.any(ft.is_zero(delta)):
        raise DegeneratePair("beta and delta must be nonzero")
    denom = cross_term(p, beta, delta)
    if np.any(ft.is_zero(denom)):
        raise DegeneratePair("beta is a subfield multiple of delta")
    return TraceLinearMap(p, beta, delta, alpha, ft.inv(p, denom))


def t_apply(t: TraceLinearMap, x: Element) -> Element:
    p = t.params
    u = ft.trace(p, ft.mul(p, t.beta, x)).a
    v = ft.trace(p, ft.mul(p, t.delta, x)).a
    return ft.add(p, ft.embed_base(p, u), ft.scale(p, t.alpha, v))


def t_inverse_apply(t: TraceLinearMap, x: Element) -> Element:
    p = t.params
    one_plus_alpha = ft.add(p, ft.one(p), t.alpha)
    s = ft.trace(p, ft.mul(p, one_plus_alpha, x)).a
    r = ft.trace(p, x).a
    num = ft.add(
        p,
        ft.scale(p, ft.frobenius(p, t.delta), s),
        ft.scale(p, ft.frobenius(p, t.beta), r),
    )
    return ft.mul(p, t.denom_inv, num)


def decomposition_identity(p: FieldParams, alpha: Element, x: Element) -> Element:
    """``Tr((1+alpha) x) + alpha Tr(x)``, which equals ``x`` when Tr(alpha) = 1."""
    s = ft.trace(p, ft.mul(p, ft.add(p, ft.one(p), alpha), x)).a
    return ft.add(p, ft.embed_base(p, s), ft.scale(p, alpha, ft.trace(p, x).a))
