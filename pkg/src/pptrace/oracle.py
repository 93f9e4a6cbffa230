"""Brute-force ground truth over the whole field.

Tables hold packed element encodings (``a | b << m``) in an int64 array
indexed by the packed encoding of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, NamedTuple

import numpy as np

from . import field_tower as ft
from .errors import NotABijection, RangeError, TooLarge
from .families import FamilyId, PermSpec, eval_forward
from .field_tower import Element, FieldParams

MAX_TABULATE_BITS = 20
MAX_INTERPOLATE_BITS = 12


@dataclass(frozen=True)
class PermTable:
    params: FieldParams
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.params.q2,):
            raise ValueError(f"table must have {self.params.q2} entries")

    def __len__(self):
        return len(self.values)

    def element(self, i: int) -> Element:
        return ft.decode(self.params, int(self.values[i]))

    def as_elements(self) -> Element:
        return ft.decode(self.params, self.values)


@dataclass(frozen=True)
class CoeffVector:
    """``coeffs[i]`` is the packed coefficient of ``x^i``."""

    params: FieldParams
    coeffs: np.ndarray

    def nonzero(self) -> list[tuple[int, int]]:
        idx = np.flatnonzero(self.coeffs)
        return [(int(i), int(self.coeffs[i])) for i in idx]


class BijectionCheck(NamedTuple):
    ok: bool
    witness: tuple[int, int] | None = None

    def __bool__(self):
        return self.ok


def _guard(p: FieldParams, bits: int, what: str):
    if 2 * p.m > bits:
        raise TooLarge(f"{what} limited to q^2 <= 2^{bits}, got 2^{2 * p.m}")


def tabulate_map(p: FieldParams, fn: Callable[[Element], Element]) -> PermTable:
    """Evaluate *fn* once on the batch of all field elements."""
    _guard(p, MAX_TABULATE_BITS, "tabulation")
    out = fn(ft.all_elements(p))
    values = np.broadcast_to(ft.encode(p, out), (p.q2,)).astype(np.int64)
    return PermTable(p, values)


def tabulate(spec: PermSpec) -> PermTable:
    return tabulate_map(spec.params, lambda x: eval_forward(spec, x))


def identity_table(p: FieldParams) -> PermTable:
    return PermTable(p, np.arange(p.q2, dtype=np.int64))


def is_bijection(table: PermTable) -> BijectionCheck:
    """Return ``(True, None)`` or ``(False, (x1, x2))`` with ``f(x1) == f(x2)``."""
    order = np.argsort(table.values, kind="stable")
    srt = table.values[order]
    dup = np.flatnonzero(srt[1:] == srt[:-1])
    if dup.size == 0:
        return BijectionCheck(True)
    k = int(dup[0])
    return BijectionCheck(False, (int(order[k]), int(order[k + 1])))


def invert_table(table: PermTable) -> PermTable:
    check = is_bijection(table)
    if not check.ok:
        x1, x2 = check.witness
        raise NotABijection(f"f({x1:#x}) == f({x2:#x})")
    inv = np.empty_like(table.values)
    inv[table.values] = np.arange(len(table.values), dtype=np.int64)
    return PermTable(table.params, inv)


def compose_tables(outer: PermTable, inner: PermTable) -> PermTable:
    return PermTable(outer.params, outer.values[inner.values])


def lagrange_interpolate(table: PermTable) -> CoeffVector:
    """Coefficients of the unique polynomial of degree < q^2 matching *table*.

    With ``Q = q^2`` the Lagrange basis polynomial at ``a`` over the full
    field is ``1 - (x - a)^(Q-1)``, and in characteristic 2 every binomial
    coefficient of ``(x + a)^(Q-1)`` is 1.  Summing gives

        c_0 = f(0),    c_i = sum_a f(a) a^(Q-1-i)   (1 <= i <= Q-1),

    evaluated here one exponent at a time over the batch of all ``a``.
    """
    p = table.params
    _guard(p, MAX_INTERPOLATE_BITS, "interpolation")
    Q = p.q2
    pts = ft.all_elements(p)
    vals = table.as_elements()
    coeffs = np.zeros(Q, dtype=np.int64)
    coeffs[0] = table.values[0]
    # acc = f(a) a^k, starting from k = 0 with 0^0 = 1
    acc = vals
    for k in range(Q - 1):
        i = Q - 1 - k
        coeffs[i] = np.bitwise_xor.reduce(ft.encode(p, acc))
        acc = ft.mul(p, acc, pts)
    return CoeffVector(p, coeffs)


def poly_eval(v: CoeffVector, x: Element) -> Element:
    """Horner evaluation of ``sum coeffs[i] x^i``."""
    p = v.params
    acc = ft.zero(p, x.a)
    for c in v.coeffs[::-1]:
        acc = ft.add(p, ft.mul(p, acc, x), ft.decode(p, int(c)))
    return acc


# -- table file format --------------------------------------------------------


def entry_width(p: FieldParams) -> int:
    return (2 * p.m + 7) // 8


def table_header(spec: PermSpec) -> str:
    p = spec.params
    return (
        f"m={p.m} modulus={p.base_modulus:#x} c={p.c:#x} "
        f"family={spec.family.value} gamma={ft.to_hex(p, spec.gamma)}"
    )


def write_table(path: str | Path, spec: PermSpec, table: PermTable | None = None) -> Path:
    """Header line, newline, then ``q^2`` little-endian entries of ``ceil(2m/8)`` bytes."""
    if table is None:
        table = tabulate(spec)
    p = spec.params
    w = entry_width(p)
    raw = table.values.astype("<u8").view(np.uint8).reshape(-1, 8)[:, :w]
    path = Path(path)
    with path.open("wb") as fh:
        fh.write(table_header(spec).encode("ascii") + b"\n")
        fh.write(raw.tobytes())
    return path


def read_table(path: str | Path) -> tuple[PermSpec, PermTable]:
    data = Path(path).read_bytes()
    nl = data.index(b"\n")
    fields = dict(kv.split("=", 1) for kv in data[:nl].decode("ascii").split())
    m = int(fields["m"])
    p = ft.make_params(m, int(fields["modulus"], 0))
    if p.c != int(fields["c"], 0):
        raise ValueError(f"header c={fields['c']} does not match derived c={p.c:#x}")
    spec = PermSpec(p, FamilyId.parse(fields["family"]), ft.decode(p, int(fields["gamma"], 0)))
    w = entry_width(p)
    body = np.frombuffer(data[nl + 1 :], dtype=np.uint8)
    if body.size != w * p.q2:
        raise RangeError(f"expected {w * p.q2} payload bytes, found {body.size}")
    padded = np.zeros((p.q2, 8), dtype=np.uint8)
    padded[:, :w] = body.reshape(p.q2, w)
    values = padded.view("<u8").reshape(-1).astype(np.int64)
    return spec, PermTable(p, values)
