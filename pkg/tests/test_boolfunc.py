from collections import Counter
from math import gcd

import numpy as np
import pytest

from puncodes import boolfunc as bf
from puncodes.boolfunc import FunctionError, FunctionSpec, ResourceGuard
from puncodes.codegen import Cyclotomic, build_position_set
from puncodes.gf2m import field_new, v2


def spec_funcs(m):
    """A spread of functions over GF(2^m), quadratic and not."""
    out = [FunctionSpec.make("gold", m, h=1), FunctionSpec.make("monomial", m, d=7),
           FunctionSpec.make("gold", m, h=1, c=3)]
    if m >= 3:
        out.append(FunctionSpec.make("kasami", m, h=2))
    if m % 2:
        out.append(FunctionSpec.make("welch", m))
    for k in range(1, m):
        if m % k == 0 and 2 * k != m:
            out.append(FunctionSpec.make("reltrace", m, k=k))
            break
    return out


# ---------------------------------------------------------------------------
# FunctionSpec


def test_parse_roundtrip_and_canonical_text():
    for text in ("gold(h=1)", "kasami(h=2)", "monomial(d=5)", "welch", "gold(h=1,c=5)"):
        f = bf.parse_function(text, 7)
        assert str(f) == text
        assert bf.parse_function(str(f), 7) == f
    assert bf.parse_function("PairSum(t2=72, t1=9)", 9) == FunctionSpec.make("pairsum", 9, t1=9, t2=72)


@pytest.mark.parametrize("text,m", [
    ("gold(h=0)", 5), ("gold(h=5)", 5), ("kasami(h=1)", 5), ("welch", 6), ("niho1", 7), ("niho2", 5),
    ("pairsum(t1=9,t2=9)", 9), ("pairsum(t1=9,t2=65)", 6), ("reltrace(k=3)", 6), ("reltrace(k=4)", 6),
    ("monomial(d=0)", 5), ("nosuch(d=1)", 5), ("gold(d=1)", 5), ("gold(h=x)", 5), ("gold(h)", 5),
    ("gold(h=1,c=32)", 5), ("(", 5),
])
def test_invalid_functions_are_rejected(text, m):
    with pytest.raises(FunctionError):
        bf.parse_function(text, m)


def test_exponents_of_named_families():
    assert FunctionSpec.make("gold", 7, h=2).exponent == 5
    assert FunctionSpec.make("kasami", 7, h=2).exponent == 13
    assert FunctionSpec.make("welch", 7).exponent == 11
    assert FunctionSpec.make("niho1", 5).exponent == 5
    assert FunctionSpec.make("niho2", 7).exponent == 2 ** 3 + 2 ** 5 - 1
    assert FunctionSpec.make("pairsum", 9, t1=9, t2=65).exponent is None
    assert FunctionSpec.make("gold", 7, h=3).is_quadratic
    assert FunctionSpec.make("reltrace", 6, k=1).is_quadratic
    assert not FunctionSpec.make("kasami", 7, h=2).is_quadratic


@pytest.mark.parametrize("m", [4, 5, 6, 9])
def test_vector_evaluation_matches_scalar(m):
    ctx = field_new(m)
    funcs = spec_funcs(m) + ([FunctionSpec.make("pairsum", 9, t1=9, t2=72)] if m == 9 else [])
    for f in funcs:
        ys = bf.eval_all(ctx, f)
        assert ys[0] == 0
        assert all(int(ys[x]) == bf.eval(ctx, f, x) for x in range(ctx.size))


def test_function_field_mismatch():
    with pytest.raises(FunctionError):
        bf.eval_all(field_new(6), FunctionSpec.make("gold", 5, h=1))


# ---------------------------------------------------------------------------
# Walsh transform


def test_fwht_small_vector():
    assert bf.fwht(np.array([1, 1, 1, -1])).tolist() == [2, 2, 2, -2]
    twice = bf.fwht(bf.fwht(np.arange(8) - 3))
    assert twice.tolist() == [8 * (v - 3) for v in range(8)]


@pytest.mark.parametrize("m", [3, 5, 6])
def test_fast_rows_match_definition(m):
    ctx = field_new(m)
    for f in spec_funcs(m):
        rows = bf.walsh_rows(ctx, f, np.arange(ctx.size))
        for a in range(ctx.size):
            for b in range(0, ctx.size, 3):
                assert rows[a, b] == bf.walsh(ctx, f, a, b)


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7, 8, 9, 10])
def test_parseval_every_a(m):
    ctx = field_new(m)
    for f in spec_funcs(m):
        for _, rows in bf.iter_walsh_blocks(ctx, f, np.arange(ctx.size)):
            assert np.all((rows.astype(object) ** 2).sum(axis=1) == 1 << 2 * m)


@pytest.mark.parametrize("m", [4, 7])
def test_trivial_walsh_values(m):
    ctx = field_new(m)
    f = FunctionSpec.make("gold", m, h=1)
    assert bf.walsh(ctx, f, 0, 0) == ctx.size
    assert all(bf.walsh(ctx, f, 0, b) == 0 for b in range(1, ctx.size))


def test_gold_spectra():
    assert set(bf.walsh_spectrum(field_new(5), FunctionSpec.make("gold", 5, h=1))) == {-8, 0, 8}
    assert set(bf.walsh_spectrum(field_new(6), FunctionSpec.make("gold", 6, h=2))) <= {-16, 0, 16}


@pytest.mark.parametrize("m", range(3, 11))
def test_gold_value_set_when_v2_m_at_most_v2_k(m):
    ctx = field_new(m)
    for k in range(1, m):
        if v2(m) > v2(k):
            continue
        peak = 1 << (m + gcd(m, k)) // 2
        spec = bf.walsh_spectrum(ctx, FunctionSpec.make("gold", m, h=k))
        assert set(spec) <= {0, peak, -peak}, (m, k)


def _radical(ctx, q):
    """V = {y : Q(x+y) + Q(x) + Q(y) = 0 for all x}, with Q given as a bit vector."""
    ys = ctx.elements
    ok = np.ones(ctx.size, dtype=bool)
    for i in range(ctx.m):
        e = 1 << i
        ok &= (q[ys ^ e] ^ q[e] ^ q[ys]) == 0
    return ys[ok]


def _quadratic_funcs(m):
    out = [FunctionSpec.make("gold", m, h=h) for h in sorted({1, 2, m // 2}) if 1 <= h < m]
    out += [FunctionSpec.make("reltrace", m, k=k) for k in range(1, m) if m % k == 0 and 2 * k != m]
    if m == 9:
        out += [FunctionSpec.make("pairsum", 9, t1=9, t2=65), FunctionSpec.make("pairsum", 9, t1=65, t2=72)]
    return out


@pytest.mark.parametrize("m", range(3, 11))
def test_quadratic_square_law(m):
    """W_f(a,b)^2 is 2^(m + dim V_a) exactly when Tr(a f(y) + b y) vanishes on V_a, else 0."""
    ctx = field_new(m)
    for f in _quadratic_funcs(m):
        fx = bf.eval_all(ctx, f)
        for a_block, rows in bf.iter_walsh_blocks(ctx, f):
            for a, row in zip(a_block, rows):
                q = ctx.trace_vec(ctx.mul_vec(fx, int(a)))
                V = _radical(ctx, q)
                dim = len(V).bit_length() - 1
                assert len(V) == 1 << dim
                lin = ctx.trace_vec(ctx.mul_vec(ctx.elements[:, None], V[None, :]))
                vanish = np.all(lin == q[V][None, :], axis=1)
                expect = np.where(vanish, 1 << (m + dim), 0)
                assert np.array_equal(row.astype(np.int64) ** 2, expect), (str(f), int(a))


def test_square_law_printed_rank_exponent_disagrees():
    """With r = m - dim V the exponent m + r overshoots; m + dim V is what holds."""
    ctx = field_new(5)
    f = FunctionSpec.make("gold", 5, h=1)
    q = ctx.trace_vec(bf.eval_all(ctx, f))
    dim = len(_radical(ctx, q)).bit_length() - 1
    peak_sq = max(bf.walsh_rows(ctx, f, [1])[0].astype(np.int64) ** 2)
    assert peak_sq == 1 << (5 + dim)
    assert peak_sq != 1 << (5 + (5 - dim))


def _gold_sum_cases():
    for m in (4, 6, 8):
        for k in range(1, m):
            if v2(m) > v2(k):
                yield m, k


@pytest.mark.parametrize("m,k", list(_gold_sum_cases()))
def test_gold_sums_solvability_oracle(m, k):
    """S(a,b) = 0 unless a^(2^k) x^(2^2k) + a x + b^(2^k) = 0 is solvable; otherwise the value
    is fixed by one solution x_b and whether a is a (2^l + 1)-th power."""
    ctx = field_new(m)
    f = FunctionSpec.make("gold", m, h=k)
    ell = gcd(m, k)
    xs = ctx.elements
    x_sq = ctx.pow_vec(xs, 1 << 2 * k)
    x_g = ctx.pow_vec(xs, (1 << k) + 1)
    rows = bf.walsh_rows(ctx, f, np.arange(1, ctx.size))
    half = m // 2
    for a in range(1, ctx.size):
        lhs = ctx.mul_vec(x_sq, ctx.pow(a, 1 << k)) ^ ctx.mul_vec(xs, a)
        preimage = {}
        for x, v in zip(xs.tolist(), lhs.tolist()):
            preimage.setdefault(v, []).append(x)
        special = ctx.log(a) % ((1 << ell) + 1) == 0
        for b in range(ctx.size):
            s = int(rows[a - 1, b])
            sols = preimage.get(ctx.pow(b, 1 << k), [])
            if not sols:
                assert s == 0
                continue
            xb = sols[0]
            sign = (-1) ** ((m // (2 * ell) - ctx.trace(ctx.mul(a, int(x_g[xb])))) % 2)
            if special:
                assert s == -sign * (1 << half + ell)
            else:
                assert len(sols) == 1
                assert s == sign * (1 << half)


def _power_sum_cases(m):
    for s in range(1, m + 1):
        if m % (2 * s):
            continue
        h = m // (2 * s)
        for ell in range(2, (1 << h) + 2):
            if ((1 << h) + 1) % ell == 0:
                yield s, h, ell


@pytest.mark.parametrize("m", [4, 6, 8, 10])
def test_power_character_sums(m):
    ctx = field_new(m)
    cases = list(_power_sum_cases(m))
    assert cases
    for s, h, ell in cases:
        xl = ctx.pow_vec(ctx.elements, ell)
        for i in range(ctx.order):
            total = ctx.size - 2 * int(ctx.trace_vec(ctx.mul_vec(xl, ctx.gamma_pow(i))).sum())
            if i % ell:
                assert total == (-1) ** s * (1 << m // 2)
            else:
                assert total == (-1) ** (s - 1) * (ell - 1) * (1 << m // 2)


def _subfield_trace(ctx, vals, h):
    """Tr from GF(2^h) down to GF(2) for values already in the subfield."""
    acc, y = vals.copy(), vals.copy()
    for _ in range(h - 1):
        y = ctx.mul_vec(y, y)
        acc ^= y
    return acc


def _joint_sum_distribution(m, k):
    ctx = field_new(m)
    h = m // 2
    xs = ctx.elements
    fa, fb = ctx.pow_vec(xs, (1 << k) + 1), ctx.pow_vec(xs, (1 << h) + 1)
    sub = [b for b in range(ctx.size) if ctx.in_subfield(h, b)]
    out = Counter()
    for a in range(ctx.size):
        ta = ctx.trace_vec(ctx.mul_vec(fa, a))
        for b in sub:
            e = ta ^ _subfield_trace(ctx, ctx.mul_vec(fb, b), h)
            out[ctx.size - 2 * int(e.sum())] += 1
    return dict(out)


def _joint_sum_table(m, k, middle):
    h = m // 2
    ell = gcd(h, k)
    p = 2 ** k
    return {
        2 ** m: 1,
        -(2 ** h): p ** 3 * (2 ** h - 1) * (2 ** m - 2 ** (m - 2 * k) - 2 ** (m - 3 * k) + 2 ** h - 2 ** (h - k) + 1)
        // ((p + 1) * (p * p - 1)),
        2 ** (h + k): middle,
        -(2 ** (h + 2 * k)): (2 ** (h - ell) - 1) * (2 ** m - 1) // ((p + 1) * (p * p - 1)),
    }


def test_joint_quadratic_sum_distribution():
    m, k = 6, 1
    h = m // 2
    assert gcd(h + k, 2 * k) == 2 * gcd(h, k)
    middle = 2 ** k * (2 ** m - 1) * (2 ** h + 2 ** (h - k) + 2 ** (h - 2 * k) + 1) // (2 ** k + 1) ** 2
    expect = _joint_sum_table(m, k, middle)
    assert sum(expect.values()) == 2 ** (3 * m // 2)
    assert _joint_sum_distribution(m, k) == expect


def test_joint_quadratic_sum_printed_middle_row_does_not_sum():
    m, k = 6, 1
    ell = gcd(m // 2, k)
    printed = 2 ** k * (2 ** m - 1) * (2 ** m - 2 ** (m - ell) + 2 ** (m - 2 * ell) + 1) // (2 ** k + 1) ** 2
    table = _joint_sum_table(m, k, printed)
    assert printed == 686
    assert sum(table.values()) != 2 ** (3 * m // 2)
    assert _joint_sum_distribution(m, k)[2 ** (m // 2 + k)] == 210


# ---------------------------------------------------------------------------
# AB / APN


@pytest.mark.parametrize("m", [5, 7, 9, 11])
def test_listed_ab_exponents_are_ab(m):
    ctx = field_new(m)
    ds = bf.ab_monomial_exponents(m)
    assert 3 in ds and (1 << (m - 1) // 2) + 3 in ds
    for d in ds:
        assert gcd(d, ctx.order) == 1
        f = FunctionSpec.make("monomial", m, d=d)
        if m == 11:
            # a power permutation has W_f(a,b) = W_f(1, b a^(-1/d)); the a = 1 row decides
            peak = 1 << (m + 1) // 2
            assert set(bf.walsh_rows(ctx, f, [1])[0].tolist()) <= {0, peak, -peak}
        else:
            assert bf.is_ab(ctx, f)


def test_ab_exponent_lists_small():
    assert {3, 5, 7} <= set(bf.ab_monomial_exponents(5))
    assert {3, 11} <= set(bf.ab_monomial_exponents(7))
    with pytest.raises(FunctionError):
        bf.ab_monomial_exponents(6)


def test_ab_verdicts_by_scan():
    ctx5 = field_new(5)
    assert bf.is_ab(ctx5, FunctionSpec.make("monomial", 5, d=5))
    # x^7 is the Welch exponent for m = 5, so the scan says AB
    assert bf.is_ab(ctx5, FunctionSpec.make("monomial", 5, d=7))
    assert not bf.is_ab(ctx5, FunctionSpec.make("monomial", 5, d=1))
    assert not bf.is_ab(field_new(7), FunctionSpec.make("monomial", 7, d=7))
    with pytest.raises(FunctionError):
        bf.is_ab(field_new(6), FunctionSpec.make("gold", 6, h=1))
    with pytest.raises(ResourceGuard):
        bf.is_ab(field_new(15), FunctionSpec.make("gold", 15, h=1))
    with pytest.raises(ResourceGuard):
        bf.walsh_spectrum(field_new(17), FunctionSpec.make("gold", 17, h=1))


def test_apn_verdicts():
    assert bf.is_apn(field_new(4), FunctionSpec.make("gold", 4, h=1))
    assert bf.is_apn(field_new(6), FunctionSpec.make("gold", 6, h=1))
    assert bf.differential_uniformity(field_new(5), FunctionSpec.make("monomial", 5, d=1)) == 32
    assert not bf.is_apn(field_new(6), FunctionSpec.make("gold", 6, h=2))


@pytest.mark.parametrize("m", [5, 7, 9])
def test_ab_implies_apn(m):
    ctx = field_new(m)
    candidates = [FunctionSpec.make("monomial", m, d=d) for d in bf.ab_monomial_exponents(m)]
    if m <= 7:
        candidates += [FunctionSpec.make("monomial", m, d=d) for d in range(1, ctx.order)]
    candidates += [FunctionSpec.make("gold", m, h=1, c=c) for c in (1, 2, 3)]
    if m == 9:
        candidates += [FunctionSpec.make("pairsum", 9, t1=9, t2=65)]
    seen_ab = 0
    for f in candidates:
        if bf.is_ab(ctx, f):
            seen_ab += 1
            assert bf.is_apn(ctx, f), str(f)
    assert seen_ab >= len(bf.ab_monomial_exponents(m))


# ---------------------------------------------------------------------------
# sums over subsets


def test_t_sum_definitional_values():
    ctx = field_new(6)
    D = build_position_set(ctx, Cyclotomic(3))
    assert bf.t_sum(ctx, D, 21, 0, 0) == len(D) == 21
    for a in range(1, ctx.size):
        assert bf.t_sum(ctx, D, 21, a, 0) == (-1) ** ctx.trace(a) * 21


@pytest.mark.parametrize("t,d", [(3, 21), (1, 21), (9, 21), (7, 5)])
def test_t_sum_table_matches_definition(t, d):
    ctx = field_new(6)
    D = build_position_set(ctx, Cyclotomic(t))
    table = bf.t_sum_table(ctx, D, d)
    for a in range(0, ctx.size, 5):
        for b in range(0, ctx.size, 3):
            assert table[a, b] == bf.t_sum(ctx, D, d, a, b)


@pytest.mark.parametrize("m,t", [(6, 3), (6, 9), (10, 3), (10, 33)])
def test_cyclotomic_sum_distribution_three_divides_t(m, t):
    ctx = field_new(m)
    D = build_position_set(ctx, Cyclotomic(t))
    table = bf.t_sum_table(ctx, D, ctx.order // 3)
    got = Counter(table.ravel().tolist())
    q, r, half = 2 ** m - 1, 2 ** (m // 2), 2 ** (m - 1)
    expect = Counter()
    for val, cnt in [((1 - 2 ** m) // t, half), (q // t, half),
                     ((r + 1) // t, half * (t - 1) * q // t), (-(r + 1) // t, half * (t - 1) * q // t),
                     ((1 - (t - 1) * r) // t, half * q // t), ((-1 + (t - 1) * r) // t, half * q // t)]:
        expect[val] += cnt
    assert +got == +expect


def _zero_counts(m, t):
    ctx = field_new(m)
    g1 = ctx.gamma_pow(t * ctx.order // 3)
    g2 = ctx.gamma_pow(2 * t * ctx.order // 3)
    a = ctx.elements
    zeros = 3 - (ctx.trace_vec(a) + ctx.trace_vec(ctx.mul_vec(a, g1)) + ctx.trace_vec(ctx.mul_vec(a, g2)))
    return Counter(zeros.tolist())


@pytest.mark.parametrize("m,t", [(6, 1), (10, 1), (10, 11)])
def test_zero_count_distribution(m, t):
    half = m // 2
    assert ((1 << half) + 1) % (3 * t // gcd(3, t)) == 0 and v2(m) == 1 and t % 3
    assert _zero_counts(m, t) == {3: 2 ** (m - 2), 1: 3 * 2 ** (m - 2)}


def test_zero_count_distribution_needs_t_prime_to_three():
    # with 3 | t all three entries coincide, so N is 0 or 3 half the time each
    assert _zero_counts(6, 3) == {3: 32, 0: 32}
