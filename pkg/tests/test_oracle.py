import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pptrace import field_tower as ft
from pptrace import oracle
from pptrace.errors import NotABijection, RangeError, TooLarge
from pptrace.families import FamilyId, PermSpec, build_inverse, eval_inverse, permuting_gammas
from pptrace.field_tower import Element

P2, P3 = ft.make_params(2), ft.make_params(3)


def const_table(p, v):
    return oracle.PermTable(p, np.full(p.q2, v, dtype=np.int64))


def closed_inverse_table(spec):
    form = build_inverse(spec)
    return oracle.tabulate_map(spec.params, lambda x: eval_inverse(form, x))


# -- tables ---------------------------------------------------------------------


def test_zero_gamma_tabulates_identity():
    spec = PermSpec(P3, FamilyId.F2, ft.zero(P3))
    assert np.array_equal(oracle.tabulate(spec).values, oracle.identity_table(P3).values)


def test_f1_m2_table_is_bijective():
    table = oracle.tabulate(PermSpec(P2, FamilyId.F1, ft.one(P2)))
    assert len(table) == 16
    assert oracle.is_bijection(table)
    assert table.element(0) == ft.zero(P2)
    assert np.all(ft.equal(table.as_elements(), ft.decode(P2, table.values)))


def test_table_length_checked():
    with pytest.raises(ValueError):
        oracle.PermTable(P2, np.arange(15, dtype=np.int64))


def test_tabulate_guard():
    p = ft.make_params(11)
    with pytest.raises(TooLarge):
        oracle.tabulate(PermSpec(p, FamilyId.F1, ft.one(p)))
    assert len(oracle.tabulate(PermSpec(ft.make_params(10), FamilyId.F1, ft.zero(ft.make_params(10))))) == 2**20


def test_is_bijection_examples():
    assert oracle.is_bijection(oracle.identity_table(P3)) == (True, None)
    assert oracle.is_bijection(const_table(P3, 0)) == (False, (0, 1))
    check = oracle.is_bijection(oracle.tabulate(PermSpec(P3, FamilyId.F1, Element(0, 1))))
    assert not check
    x1, x2 = check.witness
    assert x1 != x2


@given(st.permutations(range(16)), st.integers(0, 15), st.integers(0, 15))
def test_is_bijection_matches_set_semantics(perm, i, j):
    vals = np.array(perm, dtype=np.int64)
    vals[i] = vals[j]
    check = oracle.is_bijection(oracle.PermTable(P2, vals))
    assert check.ok == (len(set(vals.tolist())) == 16)
    if not check.ok:
        a, b = check.witness
        assert a != b and vals[a] == vals[b]


def test_invert_table_examples():
    ident = oracle.identity_table(P3)
    assert np.array_equal(oracle.invert_table(ident).values, ident.values)
    with pytest.raises(NotABijection):
        oracle.invert_table(const_table(P3, 5))
    spec = PermSpec(P3, FamilyId.F1, Element(1, 0))
    tab = oracle.tabulate(spec)
    inv = oracle.invert_table(tab)
    assert np.array_equal(oracle.invert_table(inv).values, tab.values)
    assert np.array_equal(oracle.compose_tables(tab, inv).values, ident.values)
    assert np.array_equal(oracle.compose_tables(inv, tab).values, ident.values)
    assert np.array_equal(inv.values, closed_inverse_table(spec).values)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_table_inverse_equals_closed_form_every_valid_spec(m):
    p = ft.make_params(m)
    for fam in FamilyId:
        if m % 2 == 0 and fam in (FamilyId.F5, FamilyId.F6):
            continue
        for g in permuting_gammas(p, fam):
            spec = PermSpec(p, fam, g)
            inv = oracle.invert_table(oracle.tabulate(spec))
            assert np.array_equal(inv.values, closed_inverse_table(spec).values), (fam, g)


# -- interpolation ----------------------------------------------------------------


def naive_lagrange(table):
    """Expand sum_a f(a) (1 - (x - a)^(Q-1)) by explicit polynomial products."""
    p = table.params
    Q = p.q2
    coeffs = [0] * Q
    for a in range(Q):
        fa = int(table.values[a])
        if not fa:
            continue
        # basis_a(x) = prod_{b != a} (x - b) / (a - b)
        poly = [1]
        denom = ft.one(p)
        ea = ft.decode(p, a)
        for b in range(Q):
            if b == a:
                continue
            eb = ft.decode(p, b)
            nxt = [0] * (len(poly) + 1)
            for i, c in enumerate(poly):
                nxt[i + 1] ^= c
                nxt[i] ^= ft.encode(p, ft.mul(p, ft.decode(p, c), eb))
            poly = nxt
            denom = ft.mul(p, denom, ft.add(p, ea, eb))
        scale = ft.mul(p, ft.decode(p, fa), ft.inv(p, denom))
        for i, c in enumerate(poly):
            coeffs[i] ^= ft.encode(p, ft.mul(p, ft.decode(p, c), scale))
    return coeffs


def test_lagrange_identity_and_constant():
    c = oracle.lagrange_interpolate(oracle.identity_table(P3)).coeffs
    assert c[1] == 1 and np.count_nonzero(c) == 1
    c = oracle.lagrange_interpolate(const_table(P3, 0x2B)).coeffs
    assert c[0] == 0x2B and np.count_nonzero(c) == 1


def test_lagrange_guard():
    p = ft.make_params(7)
    with pytest.raises(TooLarge):
        oracle.lagrange_interpolate(oracle.identity_table(p))


def test_lagrange_matches_naive_expansion_m2():
    rng = np.random.default_rng(3)
    for vals in (rng.permutation(16), rng.integers(0, 16, size=16)):
        table = oracle.PermTable(P2, vals.astype(np.int64))
        assert oracle.lagrange_interpolate(table).coeffs.tolist() == naive_lagrange(table)


def test_interpolated_f1_inverse_m2_matches_closed_form():
    spec = PermSpec(P2, FamilyId.F1, ft.one(P2))
    v = oracle.lagrange_interpolate(oracle.invert_table(oracle.tabulate(spec)))
    xs = ft.all_elements(P2)
    assert np.array_equal(ft.encode(P2, oracle.poly_eval(v, xs)), closed_inverse_table(spec).values)
    # x + Tr(x)^3 with Tr(x) = x + x^4: frozen sparse form
    assert v.nonzero() == [(1, 1), (3, 1), (6, 1), (9, 1), (12, 1)]


def test_poly_eval_examples():
    x = ft.all_elements(P3)
    lin = oracle.CoeffVector(P3, np.array([0, 1], dtype=np.int64))
    assert np.all(ft.equal(oracle.poly_eval(lin, x), x))
    const = oracle.CoeffVector(P3, np.array([0x15], dtype=np.int64))
    assert np.all(ft.encode(P3, oracle.poly_eval(const, x)) == 0x15)
    assert oracle.poly_eval(const, Element(3, 3)) == ft.decode(P3, 0x15)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 63), min_size=64, max_size=64))
def test_interpolation_exact_m3(vals):
    table = oracle.PermTable(P3, np.array(vals, dtype=np.int64))
    v = oracle.lagrange_interpolate(table)
    assert np.array_equal(ft.encode(P3, oracle.poly_eval(v, ft.all_elements(P3))), table.values)


@given(st.lists(st.integers(0, 15), min_size=16, max_size=16))
def test_interpolation_exact_m2(vals):
    table = oracle.PermTable(P2, np.array(vals, dtype=np.int64))
    v = oracle.lagrange_interpolate(table)
    assert np.array_equal(ft.encode(P2, oracle.poly_eval(v, ft.all_elements(P2))), table.values)


# -- table files ------------------------------------------------------------------


def test_header_format():
    p = ft.make_params(3)
    spec = PermSpec(p, FamilyId.F3, Element(0, 1))
    assert oracle.table_header(spec) == "m=3 modulus=0xb c=0x1 family=f3 gamma=0x08"


@pytest.mark.parametrize("m, width", [(2, 1), (4, 1), (5, 2), (8, 2), (9, 3)])
def test_entry_width(m, width):
    assert oracle.entry_width(ft.make_params(m)) == width


@pytest.mark.parametrize("m", [2, 3, 5])
def test_write_read_roundtrip(tmp_path, m):
    p = ft.make_params(m)
    spec = PermSpec(p, FamilyId.F1, ft.one(p))
    path = oracle.write_table(tmp_path / "t.bin", spec)
    data = path.read_bytes()
    head, body = data.split(b"\n", 1)
    assert head.decode() == oracle.table_header(spec)
    assert len(body) == p.q2 * oracle.entry_width(p)
    spec2, table = oracle.read_table(path)
    assert spec2 == spec
    assert np.array_equal(table.values, oracle.tabulate(spec).values)


def test_write_layout_little_endian(tmp_path):
    p = ft.make_params(5)
    table = oracle.PermTable(p, np.arange(p.q2, dtype=np.int64)[::-1].copy())
    spec = PermSpec(p, FamilyId.F1, ft.zero(p))
    body = oracle.write_table(tmp_path / "t.bin", spec, table).read_bytes().split(b"\n", 1)[1]
    assert body[:4] == bytes([0xFF, 0x03, 0xFE, 0x03])


def test_read_rejects_truncated(tmp_path):
    p = ft.make_params(2)
    path = oracle.write_table(tmp_path / "t.bin", PermSpec(p, FamilyId.F1, ft.one(p)))
    path.write_bytes(path.read_bytes()[:-1])
    with pytest.raises(RangeError):
        oracle.read_table(path)
