"""Command-line front end.

Elements are written as hex integers of 2m bits: the low m bits are the
coordinate ``a`` and the high m bits the coordinate ``b`` of ``a + b*y``,
where ``y^2 = y + c`` over GF(2^m).  At m = 3, for instance, ``0x08`` is ``y``.

Exit status: 0 for a clean verdict, 1 for a domain error (not a
permutation, hypothesis not applicable, field too large), 2 for a usage
error, and 3 when two independent verification routes disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import field_tower as ft
from . import oracle, selftest
from .errors import ModulusError, NotApplicable, NotAPermutation, RangeError, TooLarge
from .families import (
    FamilyId,
    PermSpec,
    build_inverse,
    eval_forward,
    eval_inverse,
    is_permutation_condition,
)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

SAMPLE_COLLISION_POINTS = 1 << 20


class Report(dict):
    """Ordered ``key=value`` report; ``--json`` prints it as one object."""

    def emit(self, as_json: bool, out=None):
        out = out or sys.stdout
        if as_json:
            print(json.dumps(self), file=out)
            return
        for k, v in self.items():
            if isinstance(v, bool):
                v = "true" if v else "false"
            elif v is None:
                v = "none"
            print(f"{k}={v}", file=out)


def _hex_int(text: str) -> int:
    text = text.strip().lower()
    try:
        return int(text, 0) if text[:2] in ("0x", "0b", "0o") else int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex or binary literal: {text!r}") from None


def _m_value(text: str) -> int:
    m = int(text)
    if not 1 <= m <= ft.MAX_M:
        raise argparse.ArgumentTypeError(f"m must lie in 1..{ft.MAX_M}")
    return m


def _max_m(text: str) -> int:
    m = int(text)
    if not 2 <= m <= 5:
        raise argparse.ArgumentTypeError("--max-m must lie in 2..5")
    return m


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pptrace",
        description="Permutations x + gamma*Tr(h(x)) of GF(2^2m) and their inverses.",
        epilog=__doc__.split("\n\n", 1)[1],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def field_args(sp, with_x=False):
        sp.add_argument("--m", type=_m_value, required=True, help="base field GF(2^m)")
        sp.add_argument("--modulus", type=_hex_int, help="irreducible base modulus (hex or 0b...)")
        sp.add_argument("--family", type=FamilyId.parse, required=True, help="f1..f6")
        sp.add_argument("--gamma", type=_hex_int, required=True, help="packed 2m-bit hex")
        if with_x:
            sp.add_argument("--x", type=_hex_int, required=True, help="packed 2m-bit hex")
        sp.add_argument("--json", action="store_true", help="print one JSON object")

    field_args(sub.add_parser("verify", help="predicate vs. exhaustive bijectivity and round trip"))
    field_args(sub.add_parser("invert", help="evaluate f and its closed-form inverse at x"), True)
    field_args(sub.add_parser("interpolate", help="coefficients of the inverse polynomial"))
    tab = sub.add_parser("tabulate", help="export the value table of f")
    field_args(tab)
    tab.add_argument("--out", required=True, help="output file")
    st = sub.add_parser("selftest", help="run the full verification suite")
    st.add_argument("--max-m", type=_max_m, default=5)
    st.add_argument("--json", action="store_true")
    return parser


def _spec(args, parser) -> PermSpec:
    try:
        p = ft.make_params(args.m, args.modulus)
    except (ModulusError, RangeError) as exc:
        parser.error(str(exc))
    if not 0 <= args.gamma < p.q2:
        parser.error(f"--gamma {args.gamma:#x} exceeds {2 * args.m} bits")
    if getattr(args, "x", None) is not None and not 0 <= args.x < p.q2:
        parser.error(f"--x {args.x:#x} exceeds {2 * args.m} bits")
    return PermSpec(p, args.family, ft.decode(p, args.gamma))


def _header(command: str, spec: PermSpec) -> Report:
    p = spec.params
    return Report(
        command=command,
        m=p.m,
        modulus=hex(p.base_modulus),
        c=hex(p.c),
        family=spec.family.value,
        gamma=ft.to_hex(p, spec.gamma),
    )


def sampled_collision(spec: PermSpec, n: int = SAMPLE_COLLISION_POINTS, seed: int = 0):
    """Look for ``f(x1) == f(x2)`` among *n* random points; None if none turn up."""
    p = spec.params
    rng = np.random.default_rng(seed)
    xs = np.unique(rng.integers(0, p.q2, size=n, dtype=np.int64))
    fx = ft.encode(p, eval_forward(spec, ft.decode(p, xs)))
    order = np.argsort(fx, kind="stable")
    dup = np.flatnonzero(fx[order][1:] == fx[order][:-1])
    if dup.size == 0:
        return None
    k = dup[0]
    return int(xs[order[k]]), int(xs[order[k + 1]])


def _roundtrip_mismatch(spec: PermSpec, form) -> int | None:
    p = spec.params
    xs = ft.all_elements(p)
    good = ft.equal(eval_inverse(form, eval_forward(spec, xs)), xs) & ft.equal(
        eval_forward(spec, eval_inverse(form, xs)), xs
    )
    bad = np.flatnonzero(~good)
    return int(bad[0]) if bad.size else None


def cmd_verify(args, parser) -> tuple[Report, int]:
    t0 = time.perf_counter()
    spec = _spec(args, parser)
    p = spec.params
    r = _header("verify", spec)
    try:
        predicate = is_permutation_condition(spec)
    except NotApplicable as exc:
        r.update(permutation="not-applicable", reason=str(exc))
        return r, EXIT_DOMAIN
    r["predicate"] = predicate
    code = EXIT_OK

    if 2 * p.m <= oracle.MAX_TABULATE_BITS:
        check = oracle.is_bijection(oracle.tabulate(spec))
        r["bijective"] = check.ok
        if check.witness:
            x1, x2 = check.witness
            e1, e2 = ft.decode(p, x1), ft.decode(p, x2)
            fx = ft.to_hex(p, eval_forward(spec, e1))
            r["collision"] = f"{ft.to_hex(p, e1)},{ft.to_hex(p, e2)}->{fx}"
        if check.ok != predicate:
            r["error"] = "predicate and exhaustive bijectivity disagree"
            code = EXIT_INTERNAL
        elif predicate:
            form = build_inverse(spec)
            r["branch"], r["t"] = form.branch.value, form.t
            bad = _roundtrip_mismatch(spec, form)
            r["roundtrip"] = "ok" if bad is None else f"mismatch@{bad:#x}"
            if bad is not None:
                code = EXIT_INTERNAL
    else:
        r["exhaustive"] = "skipped"
        if predicate:
            form = build_inverse(spec)
            r["branch"], r["t"] = form.branch.value, form.t
        else:
            hit = sampled_collision(spec)
            r["collision"] = (
                ",".join(ft.to_hex(p, ft.decode(p, v)) for v in hit) if hit else None
            )
    r["permutation"] = predicate if code == EXIT_OK else "unknown"
    r["elapsed_s"] = round(time.perf_counter() - t0, 4)
    return r, code


def cmd_invert(args, parser) -> tuple[Report, int]:
    t0 = time.perf_counter()
    spec = _spec(args, parser)
    p = spec.params
    r = _header("invert", spec)
    try:
        form = build_inverse(spec)
    except (NotAPermutation, NotApplicable) as exc:
        r["error"] = str(exc)
        return r, EXIT_DOMAIN
    x = ft.decode(p, args.x)
    fx = eval_forward(spec, x)
    back = eval_inverse(form, fx)
    r.update(
        branch=form.branch.value,
        t=form.t,
        x=ft.to_hex(p, x),
        f_x=ft.to_hex(p, fx),
        finv_x=ft.to_hex(p, eval_inverse(form, x)),
        finv_f_x=ft.to_hex(p, back),
    )
    code = EXIT_OK
    if back != x:
        r["error"] = "f^-1(f(x)) != x"
        code = EXIT_INTERNAL
    r["elapsed_s"] = round(time.perf_counter() - t0, 4)
    return r, code


def cmd_interpolate(args, parser) -> tuple[Report, int]:
    spec = _spec(args, parser)
    p = spec.params
    r = _header("interpolate", spec)
    try:
        if 2 * p.m > oracle.MAX_INTERPOLATE_BITS:
            raise TooLarge(f"interpolation limited to m <= {oracle.MAX_INTERPOLATE_BITS // 2}")
        build_inverse(spec)
        inv = oracle.invert_table(oracle.tabulate(spec))
    except (TooLarge, NotAPermutation, NotApplicable) as exc:
        r["error"] = str(exc)
        return r, EXIT_DOMAIN
    r["coefficients"] = [(i, hex(c)) for i, c in oracle.lagrange_interpolate(inv).nonzero()]
    return r, EXIT_OK


def cmd_tabulate(args, parser) -> tuple[Report, int]:
    spec = _spec(args, parser)
    r = _header("tabulate", spec)
    try:
        path = oracle.write_table(args.out, spec)
    except TooLarge as exc:
        r["error"] = str(exc)
        return r, EXIT_DOMAIN
    r["out"] = str(path)
    return r, EXIT_OK


def cmd_selftest(args, parser) -> tuple[Report, int]:
    t0 = time.perf_counter()
    results = selftest.run_all(args.max_m, stop_on_failure=True)
    r = Report(command="selftest", max_m=args.max_m)
    for res in results:
        r[f"criterion_{res.number}"] = "pass" if res.passed else "fail"
    failed = [res for res in results if not res.passed]
    if failed:
        r["witness"] = failed[0].witness
    r["elapsed_s"] = round(time.perf_counter() - t0, 3)
    return r, EXIT_INTERNAL if failed else EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "invert": cmd_invert,
    "interpolate": cmd_interpolate,
    "tabulate": cmd_tabulate,
    "selftest": cmd_selftest,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    report, code = COMMANDS[args.command](args, parser)
    if args.command == "interpolate" and not args.json and "coefficients" in report:
        for i, c in report["coefficients"]:
            print(f"{i} {c}")
    else:
        report.emit(args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
