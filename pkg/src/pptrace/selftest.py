"""Exhaustive verification suite behind ``pptrace selftest``.

Each ``criterion_*`` function runs one check end to end and returns a
:class:`CriterionResult`; nothing here raises on a failed check.  A result
fails on any mismatch, and also when it overruns its time limit, if it has one.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import field_tower as ft
from . import linearized as lz
from . import oracle
from .families import (
    Branch,
    FamilyId,
    PermSpec,
    build_inverse,
    compose_with_T_identity,
    eval_forward,
    eval_inverse,
    inverse_of_3_mod,
    permuting_gammas,
)
from .field_tower import Element, FieldParams

SEED = 20240607


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    checked: int
    elapsed: float
    limit: float | None = None
    witness: str | None = None
    notes: list[str] = field(default_factory=list)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        limit = f" (limit {self.limit:g}s)" if self.limit else ""
        s = f"[{verdict}] {self.number}. {self.title}: {self.checked} checks in {self.elapsed:.2f}s{limit}"
        if self.witness:
            s += f"; witness: {self.witness}"
        return s


def _ms(lo: int, hi: int, pool) -> list[int]:
    return [m for m in pool if lo <= m <= hi]


def roundtrip_witness(spec: PermSpec) -> str | None:
    """Exhaustively check ``f^-1 o f = f o f^-1 = id``; describe the first failure."""
    p = spec.params
    form = build_inverse(spec)
    xs = ft.all_elements(p)
    left = eval_inverse(form, eval_forward(spec, xs))
    right = eval_forward(spec, eval_inverse(form, xs))
    bad = np.flatnonzero(~(ft.equal(left, xs) & ft.equal(right, xs)))
    if bad.size:
        return _describe(spec, f"round trip fails at x={int(bad[0]):#x}")
    return None


def _describe(spec: PermSpec, msg: str) -> str:
    p = spec.params
    return f"m={p.m} {spec.family.value} gamma={ft.to_hex(p, spec.gamma)}: {msg}"


def _sub_gammas(p: FieldParams) -> list[Element]:
    return [Element(a, 0) for a in range(p.q)]


class _Tally:
    def __init__(self):
        self.checked = 0
        self.witness: str | None = None

    def record(self, witness: str | None):
        self.checked += 1
        if witness and self.witness is None:
            self.witness = witness


def _result(number, title, tally, start, limit=None, notes=None) -> CriterionResult:
    elapsed = time.perf_counter() - start
    ok = tally.witness is None and (limit is None or elapsed < limit)
    witness = tally.witness
    if tally.witness is None and not ok:
        witness = f"runtime {elapsed:.2f}s exceeds {limit}s"
    return CriterionResult(number, title, ok, tally.checked, elapsed, limit, witness, notes or [])


def criterion_1(max_m: int = 5) -> CriterionResult:
    start, tally = time.perf_counter(), _Tally()
    for m in _ms(2, max_m, (2, 3, 4, 5)):
        p = ft.make_params(m)
        for fam in (FamilyId.F1, FamilyId.F2):
            for g in _sub_gammas(p):
                tally.record(roundtrip_witness(PermSpec(p, fam, g)))
    return _result(1, "f1/f2 round trip for every gamma in GF(q)", tally, start, 10.0)


def criterion_2(max_m: int = 5) -> CriterionResult:
    start, tally = time.perf_counter(), _Tally()
    for m in _ms(2, max_m, (2, 3, 4, 5)):
        p = ft.make_params(m)
        for fam in (FamilyId.F1, FamilyId.F2):
            for b in range(1, p.q):
                for a in range(p.q):
                    spec = PermSpec(p, fam, Element(a, b))
                    check = oracle.is_bijection(oracle.tabulate(spec))
                    tally.record(None if not check.ok else _describe(spec, "no collision found"))
    return _result(2, "f1/f2 collide for every gamma outside GF(q)", tally, start, 60.0)


def criterion_3(max_m: int = 5) -> CriterionResult:
    start, tally = time.perf_counter(), _Tally()
    expected_t = {3: 5, 5: 21}
    notes = []
    for m in _ms(2, max_m, (2, 3, 4, 5)):
        p = ft.make_params(m)
        for fam in (FamilyId.F3, FamilyId.F4):
            if m % 2 == 0:
                gammas = _sub_gammas(p)
            else:
                gammas = [
                    Element(a, b)
                    for b in range(p.q)
                    for a in range(p.q)
                    if ft.trace(p, ft.add(p, Element(a, b), ft.square(p, Element(a, b)))).a == 0
                ]
            branches = set()
            for g in gammas:
                spec = PermSpec(p, fam, g)
                form = build_inverse(spec)
                branches.add(form.branch)
                w = roundtrip_witness(spec)
                if w is None and form.branch is Branch.TRACE_ONE and form.t != expected_t[m]:
                    w = _describe(spec, f"t={form.t}, expected {expected_t[m]}")
                tally.record(w)
            want = {Branch.SUBFIELD} if m % 2 == 0 else {Branch.SUBFIELD, Branch.TRACE_ONE}
            if branches != want:
                tally.record(f"m={m} {fam.value}: branches {sorted(b.value for b in branches)}")
            notes.append(f"m={m} {fam.value}: {len(gammas)} gammas")
    return _result(3, "f3/f4 both branches round trip", tally, start, notes=notes)


def criterion_4(max_m: int = 5) -> CriterionResult:
    start, tally = time.perf_counter(), _Tally()
    for m in _ms(3, max_m, (3, 5)):
        p = ft.make_params(m)
        for fam in (FamilyId.F5, FamilyId.F6):
            for g in ft.f4_nontrivial_elements(p):
                tally.record(roundtrip_witness(PermSpec(p, fam, g)))
            spec = PermSpec(p, fam, ft.one(p))
            check = oracle.is_bijection(oracle.tabulate(spec))
            tally.record(None if not check.ok else _describe(spec, "gamma=1 gave no collision"))
    return _result(4, "f5/f6 round trip for gamma in GF(4)\\GF(2), collision at gamma=1", tally, start)


def map_suite(p: FieldParams, alpha: Element) -> tuple[int, str | None]:
    """All admissible (beta, delta) at once: bijectivity, inverse, trace identities.

    Returns the number of maps checked and a failure description or None.
    """
    nz = np.arange(1, p.q2, dtype=np.int64)
    bi, di = np.meshgrid(nz, nz, indexing="ij")
    beta, delta = ft.decode(p, bi.ravel()), ft.decode(p, di.ravel())
    ok = lz.pair_is_admissible(p, beta, delta)
    # degenerate pairs are exactly the GF(q)* multiples
    ratio = ft.mul(p, beta, ft.inv(p, delta))
    if np.any(ok == ft.is_in_subfield(p, ratio)):
        return 0, "admissibility disagrees with beta/delta in GF(q)*"
    expected = (p.q2 - 1) ** 2 - (p.q2 - 1) * (p.q - 1)
    if int(ok.sum()) != expected:
        return int(ok.sum()), f"{int(ok.sum())} admissible pairs, expected {expected}"

    col = lambda e: Element(e.a[ok][:, None], e.b[ok][:, None])  # noqa: E731
    tmap = lz.make_map(p, col(beta), col(delta), alpha)
    xs = ft.all_elements(p)
    x = Element(xs.a[None, :], xs.b[None, :])

    tx = lz.t_apply(tmap, x)
    enc = np.sort(ft.encode(p, tx), axis=1)
    if np.any(enc[:, 1:] == enc[:, :-1]):
        return tx.a.shape[0], "T is not injective for some (beta, delta)"
    checks = {
        "T^-1(T(x)) != x": ft.equal(lz.t_inverse_apply(tmap, tx), x),
        "T(T^-1(x)) != x": ft.equal(lz.t_apply(tmap, lz.t_inverse_apply(tmap, x)), x),
    }
    ti = lz.t_inverse_apply(tmap, x)
    one_plus_alpha = ft.add(p, ft.one(p), alpha)
    checks["Tr(beta T^-1(x)) != Tr((1+alpha)x)"] = ft.equal(
        ft.trace(p, ft.mul(p, tmap.beta, ti)), ft.trace(p, ft.mul(p, one_plus_alpha, x))
    )
    checks["Tr(delta T^-1(x)) != Tr(x)"] = ft.equal(
        ft.trace(p, ft.mul(p, tmap.delta, ti)), ft.trace(p, x)
    )
    for msg, good in checks.items():
        bad = np.argwhere(~np.broadcast_to(good, tx.a.shape))
        if bad.size:
            r, c = bad[0]
            b = ft.Element(int(tmap.beta.a[r, 0]), int(tmap.beta.b[r, 0]))
            d = ft.Element(int(tmap.delta.a[r, 0]), int(tmap.delta.b[r, 0]))
            return tx.a.shape[0], (
                f"{msg} at beta={ft.to_hex(p, b)} delta={ft.to_hex(p, d)} x={int(c):#x}"
            )
    return tx.a.shape[0], None


def criterion_5(max_m: int = 5) -> CriterionResult:
    start, tally = time.perf_counter(), _Tally()
    p = ft.make_params(3)
    n, w = map_suite(p, Element(0, 1))
    tally.checked, tally.witness = n, w
    return _result(5, "T bijective, T^-1 o T = id, trace identities (m=3, all pairs)", tally, start, 20.0)


def criterion_6(max_m: int = 5) -> CriterionResult:
    start, tally = time.perf_counter(), _Tally()
    for m in (3, 5, 7):
        p = ft.make_params(m)
        t = inverse_of_3_mod(m)
        a = np.arange(p.q, dtype=np.int64)
        back = ft.power(p, ft.power(p, ft.embed_base(p, a), 3), t)
        bad = np.flatnonzero(~ft.equal(back, ft.embed_base(p, a)))
        tally.record(f"m={m}: (a^3)^{t} != a at a={int(bad[0]):#x}" if bad.size else None)
    return _result(6, "(a^3)^t = a on GF(2^m), m in {3,5,7}", tally, start)


def _oracle_specs(max_m: int):
    for m in _ms(2, min(3, max_m), (2, 3)):
        p = ft.make_params(m)
        for fam in FamilyId:
            if fam in (FamilyId.F5, FamilyId.F6) and m % 2 == 0:
                continue
            gammas = permuting_gammas(p, fam)
            if fam in (FamilyId.F5, FamilyId.F6):
                gammas = list(ft.f4_nontrivial_elements(p))
            for g in gammas:
                yield PermSpec(p, fam, g)


def criterion_7(max_m: int = 5) -> CriterionResult:
    start, tally = time.perf_counter(), _Tally()
    for spec in _oracle_specs(max_m):
        p = spec.params
        form = build_inverse(spec)
        closed = oracle.tabulate_map(p, lambda x: eval_inverse(form, x))
        table_inv = oracle.invert_table(oracle.tabulate(spec))
        bad = np.flatnonzero(table_inv.values != closed.values)
        w = _describe(spec, f"table inverse differs at {int(bad[0]):#x}") if bad.size else None
        if w is None:
            coeffs = oracle.lagrange_interpolate(table_inv)
            via_poly = ft.encode(p, oracle.poly_eval(coeffs, ft.all_elements(p)))
            bad = np.flatnonzero(via_poly != closed.values)
            if bad.size:
                w = _describe(spec, f"interpolated inverse differs at {int(bad[0]):#x}")
        tally.record(w)
    return _result(7, "table inverse and Lagrange inverse equal the closed form (m<=3)", tally, start)


def sample_maps(p: FieldParams, alpha: Element, count: int | None, rng) -> lz.TraceLinearMap:
    """Batch of admissible maps; all of them when *count* is None."""
    nz = np.arange(1, p.q2, dtype=np.int64)
    if count is None:
        bi, di = (g.ravel() for g in np.meshgrid(nz, nz, indexing="ij"))
    else:
        bi, di = rng.choice(nz, 4 * count), rng.choice(nz, 4 * count)
    beta, delta = ft.decode(p, bi), ft.decode(p, di)
    ok = lz.pair_is_admissible(p, beta, delta)
    keep = np.flatnonzero(ok)[: count if count else None]
    col = lambda e: Element(e.a[keep][:, None], e.b[keep][:, None])  # noqa: E731
    return lz.make_map(p, col(beta), col(delta), alpha)


def composition_witness(spec: PermSpec, tmap: lz.TraceLinearMap) -> str | None:
    p = spec.params
    xs = ft.all_elements(p)
    x = Element(xs.a[None, :], xs.b[None, :])
    lhs = eval_forward(spec, lz.t_apply(tmap, x))
    rhs = compose_with_T_identity(spec, tmap, x)
    bad = np.argwhere(~ft.equal(lhs, rhs))
    if bad.size:
        return _describe(spec, f"f(T(x)) differs from reduced form at x={int(bad[0][1]):#x}")
    return None


def criterion_8(max_m: int = 5) -> CriterionResult:
    start, tally = time.perf_counter(), _Tally()
    rng = np.random.default_rng(SEED)
    for m in _ms(2, min(3, max_m), (2, 3)):
        p = ft.make_params(m)
        count = None if m == 2 else 256
        tmaps = {}
        for fam in FamilyId:
            if fam in (FamilyId.F5, FamilyId.F6) and m % 2 == 0:
                continue
            for g in permuting_gammas(p, fam):
                spec = PermSpec(p, fam, g)
                alpha = Element(0, 1) if build_inverse(spec).branch is Branch.SUBFIELD else g
                if alpha not in tmaps:
                    tmaps[alpha] = sample_maps(p, alpha, count, rng)
                tally.record(composition_witness(spec, tmaps[alpha]))
    return _result(8, "f(T(x)) equals the reduced composition forms (m<=3)", tally, start)


def criterion_9(max_m: int = 5) -> CriterionResult:
    start, tally = time.perf_counter(), _Tally()
    rng = np.random.default_rng(SEED)
    p = ft.make_params(15)
    g = Element(int(rng.integers(p.q)), 1)
    spec = PermSpec(p, FamilyId.F3, g)
    form = build_inverse(spec)
    x = ft.decode(p, rng.integers(0, p.q2, size=10_000, dtype=np.int64))
    back = eval_inverse(form, eval_forward(spec, x))
    bad = np.flatnonzero(~ft.equal(back, x))
    tally.checked = 10_000
    if form.branch is not Branch.TRACE_ONE:
        tally.witness = f"branch {form.branch.value}, expected TraceOne"
    elif bad.size:
        tally.witness = _describe(spec, f"round trip fails at x={int(ft.encode(p, x)[bad[0]]):#x}")
    return _result(9, "m=15 f3 trace-one gamma, 10^4 random points", tally, start, 1.0)


CRITERIA: list[Callable[[int], CriterionResult]] = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
]


def run_all(max_m: int = 5, stop_on_failure: bool = False) -> list[CriterionResult]:
    results = []
    for crit in CRITERIA:
        res = crit(max_m)
        results.append(res)
        if stop_on_failure and not res.passed:
            break
    return results
