"""Closed-form predictions of length, dimension, weight table and dual parameters.

Every multiplicity is evaluated with :class:`fractions.Fraction` and only then
checked for integrality, so a formula that fails to produce an integer shows up
as a recorded defect instead of being silently truncated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from puncodes.gf2m import v2

# Canonical case identifiers.  The Greek spelling is accepted on input.
THEOREM_IDS = (
    "T3.3nu0", "T3.3nu1", "C3.6nu0", "C3.6nu1",
    "T4.2c1", "T4.2c2", "T4.2c3", "T4.4", "T4.6",
    "T5.2div3", "T5.2ndiv3", "T5.3", "R5-RM",
)

DESCRIPTIONS = {
    "T3.3nu0": "AB function f, D = {Tr(lambda f(x)) = 0}; length from the sign of W_f(lambda,0)",
    "T3.3nu1": "AB function f, D = {Tr(lambda f(x)) = 1}; length from the sign of W_f(lambda,0)",
    "C3.6nu0": "AB power map x^d (a permutation), D = {Tr(lambda x^d) = 0}",
    "C3.6nu1": "AB power map x^d (a permutation), D = {Tr(lambda x^d) = 1}",
    "T4.2c1": "x^(2^k+1) on {Tr(x) = 1}, v2(m) <= v2(k)",
    "T4.2c2": "x^(2^k+1) on {Tr(x) = 1}, v2(m) > v2(k), gcd(m,k) = 1",
    "T4.2c3": "x^(2^(m/2)+1) on {Tr(x) = 1}",
    "T4.4": "x^t1 + x^t2 on {Tr(x) = 1}, 3 | m, m >= 9",
    "T4.6": "Tr_k^m(x^(2^k+1)) on {Tr(x) = 1}",
    "T5.2div3": "x^((2^m-1)/3) on <gamma^t>, 3 | t",
    "T5.2ndiv3": "x^((2^m-1)/3) on <gamma^t>, 3 does not divide t",
    "T5.3": "x^d on <gamma^(2^k+1)> with d(2^k+1) = 2^(m/2)+1 mod 2^m-1",
    "R5-RM": "x^((2^m-1)/3) on <gamma^(2^(m/2)+1)>",
}

SPHERE = "sphere-packing-distance-optimal"
GRIESMER = "griesmer-optimal"


class HypothesisError(ValueError):
    """Parameters outside the hypotheses of the requested case."""


def normalize_id(theorem_id: str) -> str:
    tid = theorem_id.replace("ν", "nu").strip()
    for known in THEOREM_IDS:
        if tid.lower() == known.lower():
            return known
    raise HypothesisError(f"unknown case id {theorem_id!r}; known: {', '.join(THEOREM_IDS)}")


def p2(e) -> Fraction:
    """2**e for an integer (possibly negative) exponent given as int or Fraction."""
    e = Fraction(e)
    if e.denominator != 1:
        raise HypothesisError(f"half-integral power of two 2^({e}) in a closed form")
    return Fraction(2) ** int(e)


@dataclass
class Row:
    label: str
    weight: Fraction
    count: Fraction


@dataclass
class Prediction:
    theorem_id: str
    params: dict
    n: int
    k: int
    rows: list[Row]
    dual_k_stated: int
    dual_d: int | None
    header_d: int | None = None
    claims: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    defects: list[str] = field(default_factory=list)

    @property
    def integral(self) -> bool:
        return not self.defects

    @property
    def table(self) -> dict[int, int]:
        """weight -> multiplicity, rows with equal weights merged, zero rows dropped.

        Only meaningful when :attr:`integral`; otherwise non-integral rows are skipped.
        """
        out: dict[int, int] = {}
        for r in self.rows:
            if r.weight.denominator != 1 or r.count.denominator != 1:
                continue
            if r.count:
                w = int(r.weight)
                out[w] = out.get(w, 0) + int(r.count)
        return dict(sorted(out.items()))

    @property
    def d(self) -> int | None:
        ws = [w for w in self.table if w > 0]
        return min(ws) if ws else None

    @property
    def dual_k(self) -> int:
        return self.n - self.k

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "header_d": self.header_d,
            "table": {str(w): c for w, c in self.table.items()},
            "dual": {"n": self.n, "k": self.dual_k, "k_stated": self.dual_k_stated, "d": self.dual_d},
            "claims": self.claims,
        }


def _finish(pred: Prediction) -> Prediction:
    total = Fraction(0)
    for r in pred.rows:
        if r.weight.denominator != 1 or r.weight < 0 or r.weight > pred.n:
            pred.defects.append(f"row {r.label}: weight {r.weight} is not an integer in [0, n]")
        if r.count.denominator != 1 or r.count < 0:
            pred.defects.append(f"row {r.label}: multiplicity {r.count} is not a nonnegative integer")
        total += r.count
    if total != 2 ** pred.k:
        pred.defects.append(f"multiplicities sum to {total}, not 2^{pred.k}")
    d = pred.d
    if pred.header_d is not None and d is not None and pred.header_d != d:
        pred.notes.append(
            f"stated minimum distance {pred.header_d} differs from the least weight {d} "
            "of the weight table; the table (and enumeration) is used")
    if pred.dual_k_stated != pred.dual_k:
        pred.notes.append(
            f"stated dual dimension {pred.dual_k_stated} differs from n - k = {pred.dual_k}; "
            "n - k is used")
    return pred


def _rows(pairs) -> list[Row]:
    return [Row(label, Fraction(w), Fraction(c)) for label, w, c in pairs]


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise HypothesisError(msg)


def _get(params: dict, key: str) -> int:
    if key not in params:
        raise HypothesisError(f"missing parameter {key!r}")
    return int(params[key])


# ---------------------------------------------------------------------------
# AB functions with D = {Tr(lambda f(x)) = nu}


def ab_length(m: int, nu: int, w_lambda0: int) -> int:
    """|D| for an AB function, selected by the value W_f(lambda, 0)."""
    half = 1 << (m - 1) // 2
    peak = 1 << (m + 1) // 2
    sign = -1 if nu else 1
    if w_lambda0 == -peak:
        return (1 << m - 1) - sign * half - 1 + nu
    if w_lambda0 == peak:
        return (1 << m - 1) + sign * half - 1 + nu
    if w_lambda0 == 0:
        return (1 << m - 1) - 1 + nu
    raise HypothesisError(f"W_f(lambda,0) = {w_lambda0} is not an AB value for m = {m}")


def _table_ab_nu0(m: int, n: int) -> list[Row]:
    N = Fraction(n)
    n1 = N + 1
    w1 = n1 / 2
    a = p2(Fraction(m - 1, 2))
    b = p2(Fraction(m - 3, 2))
    c1 = (p2(2 * m - 1) - n1 ** 4 * p2(-2 * m) + 5 * n1 ** 2 * p2(-m - 1)
          - 5 * n1 * p2(m - 2) + Fraction(3, 2) * N ** 2 + 2 * N - Fraction(1, 2))
    s2 = Fraction(1, 6) * (n1 ** 3 * p2(Fraction(1 - 3 * m, 2)) - (3 * N + 1) * p2(Fraction(m - 1, 2))
                           - n1 * p2(Fraction(-(m + 1), 2)) + p2(Fraction(3 * m - 3, 2)))
    r2 = (-Fraction(1, 6) * n1 ** 4 * p2(-2 * m) + Fraction(1, 6) * n1 ** 2 * p2(-m - 1)
          - Fraction(1, 6) * n1 * p2(m - 2) + Fraction(1, 4) * N ** 2 + Fraction(1, 3) * N + Fraction(1, 12))
    s3 = Fraction(1, 6) * (-n1 ** 3 * p2(Fraction(3 - 3 * m, 2)) + n1 * p2(Fraction(5 - m, 2))
                           + p2(Fraction(m + 1, 2)) - p2(Fraction(3 + 3 * m, 2)) + 6 * N * p2(Fraction(m - 1, 2)))
    r3 = (p2(2 - 2 * m) * N ** 2 + Fraction(1, 3) * (N ** 4 + 4 * N ** 3 + 4 * N + 1) * p2(1 - 2 * m)
          - Fraction(1, 3) * n1 ** 2 * p2(2 - m) + Fraction(1, 3) * n1 * p2(1 + m)
          - N ** 2 - Fraction(4, 3) * N - Fraction(1, 3))
    return _rows([
        ("0", 0, 1),
        ("(n+1)/2", w1, c1),
        ("(n+1)/2+2^((m-1)/2)", w1 + a, s2 + r2),
        ("(n+1)/2-2^((m-1)/2)", w1 - a, -s2 + r2),
        ("(n+1)/2+2^((m-3)/2)", w1 + b, s3 + r3),
        ("(n+1)/2-2^((m-3)/2)", w1 - b, -s3 + r3),
    ])


def _table_ab_nu1(m: int, n: int) -> list[Row]:
    N = Fraction(n)
    w1 = N / 2
    a = p2(Fraction(m - 1, 2))
    b = p2(Fraction(m - 3, 2))
    c1 = p2(2 * m) - 5 * N * p2(m - 1) + 5 * N ** 2 * p2(-m) - p2(1 - 2 * m) * N ** 4 + 3 * N ** 2 - 2 * N - 2
    c2 = -Fraction(1, 3) * N ** 4 * p2(-2 * m) + Fraction(1, 6) * (
        p2(-m) * N ** 2 + 3 * N ** 2 - p2(m - 1) * N - 2 * N)
    c3 = Fraction(4, 3) * N * (p2(-2 * m) * N ** 3 - p2(1 - m) * N - Fraction(3, 2) * N + p2(m) + 1)
    return _rows([
        ("0", 0, 1),
        ("n/2", w1, c1),
        ("n/2+2^((m-1)/2)", w1 + a, c2),
        ("n/2-2^((m-1)/2)", w1 - a, c2),
        ("n/2+2^((m-3)/2)", w1 + b, c3),
        ("n/2-2^((m-3)/2)", w1 - b, c3),
        ("n", N, 1),
    ])


def _predict_ab(tid: str, params: dict, w_lambda0: int | None) -> Prediction:
    m = _get(params, "m")
    nu = 0 if tid.endswith("nu0") else 1
    _need(m % 2 == 1 and m >= 5, "AB cases need odd m >= 5")
    if tid.startswith("C3.6"):
        # power maps from the AB list are permutations, so W_f(lambda, 0) = 0
        if w_lambda0 not in (None, 0):
            raise HypothesisError("the permutation branch needs W_f(lambda,0) = 0")
        n = (1 << m - 1) - 1 + nu
        k = 2 * m - 1 + nu
        a, b = 1 << (m - 1) // 2, 1 << (m - 3) // 2
        q = 1 << m - 2
        if nu == 0:
            rows = _rows([
                ("0", 0, 1),
                ("2^(m-2)", q, p2(2 * m - 4) * 3 + p2(m - 3) - 1),
                ("2^(m-2)+2^((m-1)/2)", q + a, p2(2 * m - 5) - p2(Fraction(3 * m - 7, 2)) + p2(Fraction(m - 5, 2)) - p2(m - 4)),
                ("2^(m-2)-2^((m-1)/2)", q - a, p2(2 * m - 5) + p2(Fraction(3 * m - 7, 2)) - p2(Fraction(m - 5, 2)) - p2(m - 4)),
                ("2^(m-2)+2^((m-3)/2)", q + b, p2(2 * m - 3) - p2(Fraction(3 * m - 5, 2))),
                ("2^(m-2)-2^((m-3)/2)", q - b, p2(2 * m - 3) + p2(Fraction(3 * m - 5, 2))),
            ])
        else:
            rows = _rows([
                ("0", 0, 1),
                ("2^(m-2)", q, 3 * p2(2 * m - 3) + p2(m - 2) - 2),
                ("2^(m-2)+2^((m-1)/2)", q + a, p2(2 * m - 4) - p2(m - 3)),
                ("2^(m-2)-2^((m-1)/2)", q - a, p2(2 * m - 4) - p2(m - 3)),
                ("2^(m-2)+2^((m-3)/2)", q + b, p2(2 * m - 2)),
                ("2^(m-2)-2^((m-3)/2)", q - b, p2(2 * m - 2)),
                ("2^(m-1)", 1 << m - 1, 1),
            ])
        header_d = q - b
        w_used = 0
    else:
        if w_lambda0 is None:
            raise HypothesisError("this case needs the computed value W_f(lambda, 0)")
        n = ab_length(m, nu, w_lambda0)
        k = 2 * m - 1 + nu
        rows = _table_ab_nu0(m, n) if nu == 0 else _table_ab_nu1(m, n)
        header_d = Fraction(n + 1, 2) - (1 << (m - 3) // 2) if nu == 0 else Fraction(n, 2) - (1 << (m - 3) // 2)
        header_d = int(header_d) if header_d.denominator == 1 else None
        w_used = w_lambda0
    claims = [{"kind": SPHERE, "code": "dual"}] if nu == 1 else []
    pred = Prediction(tid, dict(params, w_lambda0=w_used), n, k, rows,
                      dual_k_stated=n - k, dual_d=5 if nu == 0 else 6,
                      header_d=header_d, claims=claims)
    if tid.startswith("T3.3"):
        pred.notes.append("weight-table polynomials in n are intricate closed forms; "
                          "rows are compared individually")
    return _finish(pred)


# ---------------------------------------------------------------------------
# quadratic functions with D = {Tr(x) = 1}


def _predict_gold(tid: str, params: dict) -> Prediction:
    m, k = _get(params, "m"), _get(params, "k")
    _need(m >= 4 and 1 <= k < m, "needs m >= 4 and 1 <= k < m")
    n = 1 << m - 1
    q = 1 << m - 2
    top = ("2^(m-1)", n, 1)
    if tid == "T4.2c1":
        _need(v2(m) <= v2(k), "needs v2(m) <= v2(k)")
        ell = math.gcd(m, k)
        big = p2(Fraction(m + ell - 2, 2))
        small = p2(Fraction(m + ell - 4, 2))
        rows = _rows([
            ("0", 0, 1),
            ("2^(m-2)", q, p2(2 * m) - p2(2 * m - ell + 1) + 3 * p2(2 * m - 2 * ell - 1) + p2(m - ell - 1) - 2),
            ("2^(m-2)+2^((m+l-2)/2)", q + big, p2(2 * m - 2 * ell - 2) - p2(m - ell - 2)),
            ("2^(m-2)-2^((m+l-2)/2)", q - big, p2(2 * m - 2 * ell - 2) - p2(m - ell - 2)),
            ("2^(m-2)+2^((m+l-4)/2)", q + small, p2(2 * m - ell) - p2(2 * m - 2 * ell)),
            ("2^(m-2)-2^((m+l-4)/2)", q - small, p2(2 * m - ell) - p2(2 * m - 2 * ell)),
            top,
        ])
        dim = 2 * m
        dual_d = 4 if ell >= 2 else 6
        claims = [{"kind": SPHERE, "code": "dual"}] if ell == 1 else []
        header_d = int(q - small)
    elif tid == "T4.2c2":
        _need(v2(m) > v2(k) and math.gcd(m, k) == 1, "needs v2(m) > v2(k) and gcd(m, k) = 1")
        big = p2(Fraction(m, 2))
        small = p2(Fraction(m - 2, 2))
        rows = _rows([
            ("0", 0, 1),
            ("2^(m-2)", q, 17 * p2(2 * m - 5) + 3 * p2(m - 3) - 2),
            ("2^(m-2)+2^(m/2)", q + big, (p2(2 * m - 6) - p2(m - 4)) / 3),
            ("2^(m-2)-2^(m/2)", q - big, (p2(2 * m - 6) - p2(m - 4)) / 3),
            ("2^(m-2)+2^((m-2)/2)", q + small, (11 * p2(2 * m - 3) - p2(m)) / 6),
            ("2^(m-2)-2^((m-2)/2)", q - small, (11 * p2(2 * m - 3) - p2(m)) / 6),
            top,
        ])
        dim, dual_d = 2 * m, 6
        claims = [{"kind": SPHERE, "code": "dual"}]
        header_d = int(q - big)
    else:  # T4.2c3
        _need(m % 2 == 0 and 2 * k == m, "needs m even and k = m/2")
        small = p2(Fraction(m - 2, 2))
        rows = _rows([
            ("0", 0, 1),
            ("2^(m-2)", q, p2(Fraction(3 * m, 2) - 1) + p2(m - 1) - 2),
            ("2^(m-2)+2^((m-2)/2)", q + small, p2(Fraction(3 * m, 2) - 2) - p2(m - 2)),
            ("2^(m-2)-2^((m-2)/2)", q - small, p2(Fraction(3 * m, 2) - 2) - p2(m - 2)),
            top,
        ])
        dim, dual_d = 3 * m // 2, 4
        claims = [{"kind": SPHERE, "code": "dual"}]
        header_d = int(q - small)
    pred = Prediction(tid, dict(params), n, dim, rows, dual_k_stated=n - dim, dual_d=dual_d,
                      header_d=header_d, claims=claims)
    return _finish(pred)


def _predict_pairsum(params: dict) -> Prediction:
    m = _get(params, "m")
    _need(m % 3 == 0 and m >= 9, "needs 3 | m and m >= 9")
    s = m // 3
    allowed = {(1 << s) + 1, (1 << 2 * s) + 1, (1 << 2 * s) + (1 << s)}
    t1, t2 = _get(params, "t1"), _get(params, "t2")
    _need(t1 != t2 and {t1, t2} <= allowed, f"t1, t2 must be distinct members of {sorted(allowed)}")
    n, q = 1 << m - 1, 1 << m - 2
    dim = 5 * s
    off = 1 << 2 * s - 1
    rows = _rows([
        ("0", 0, 1),
        ("2^(m-2)", q, p2(5 * s) - p2(4 * s - 1) + p2(2 * s - 1) - 2),
        ("2^(m-2)+2^(2m/3-1)", q + off, p2(4 * s - 2) - p2(2 * s - 2)),
        ("2^(m-2)-2^(2m/3-1)", q - off, p2(4 * s - 2) - p2(2 * s - 2)),
        ("2^(m-1)", n, 1),
    ])
    pred = Prediction("T4.4", dict(params), n, dim, rows, dual_k_stated=n - dim, dual_d=4,
                      header_d=q - off, claims=[{"kind": SPHERE, "code": "dual"}])
    return _finish(pred)


def reltrace_t(m: int, k: int) -> int:
    """The weight offset t of the relative-trace family, by the 2-adic case split."""
    if v2(m) > v2(k) + 1:
        e = Fraction(m + 2 * k - 2, 2)
    elif v2(m) == v2(k) + 1:
        e = Fraction(m + 2 * k - 4, 2)
    else:
        e = Fraction(m + k - 4, 2)
    return int(p2(e))


def _predict_reltrace(params: dict) -> Prediction:
    m, k = _get(params, "m"), _get(params, "k")
    _need(k >= 1 and m % k == 0 and k != m and 2 * k != m, "needs k | m, k not in {m, m/2}")
    t = reltrace_t(m, k)
    n, q = 1 << m - 1, 1 << m - 2
    dim = m + k
    T = Fraction(t)
    rows = _rows([
        ("0", 0, 1),
        ("2^(m-2)", q, p2(m + k) - 2 + p2(2 * m - 3) * (1 - p2(k)) / T ** 2),
        ("2^(m-2)+t", q + t, p2(2 * m - 4) * (p2(k) - 1) / T ** 2),
        ("2^(m-2)-t", q - t, p2(2 * m - 4) * (p2(k) - 1) / T ** 2),
        ("2^(m-1)", n, 1),
    ])
    pred = Prediction("T4.6", dict(params, t=t), n, dim, rows, dual_k_stated=n - dim, dual_d=4,
                      header_d=q - t, claims=[{"kind": SPHERE, "code": "dual"}])
    return _finish(pred)


# ---------------------------------------------------------------------------
# cyclotomic position sets


def cyclo_d(m: int) -> int:
    return ((1 << m) - 1) // 3


def _predict_cubic_cyclo(tid: str, params: dict) -> Prediction:
    m = _get(params, "m")
    _need(v2(m) == 1, "needs v2(m) = 1")
    h = 1 << m // 2
    if tid == "R5-RM":
        t = h + 1
    else:
        t = _get(params, "t")
    lcm = 3 * t // math.gcd(3, t)
    _need(t >= 1 and (h + 1) % lcm == 0, "needs lcm(3, t) | 2^(m/2)+1")
    q = (1 << m) - 1
    n = q // t
    T = Fraction(t)
    full = Fraction(1 << m)
    if tid == "R5-RM":
        dim = m // 2 + 1
        w = h // 2
        rows = _rows([("0", 0, 1), ("2^(m/2-1)-1", w - 1, h - 1), ("2^(m/2-1)", w, h - 1),
                      ("2^(m/2)-1", h - 1, 1)])
        pred = Prediction(tid, dict(params, t=t, d=cyclo_d(m)), n, dim, rows,
                          dual_k_stated=m // 2 + 1, dual_d=4, header_d=w - 1,
                          claims=[{"kind": GRIESMER, "code": "primal"}, {"kind": SPHERE, "code": "dual"}])
        return _finish(pred)
    _need(t != h + 1, "t = 2^(m/2)+1 is the separate one-parameter case")
    H = Fraction(h)
    if tid == "T5.2div3":
        _need(t % 3 == 0, "needs 3 | t")
        dim = m + 1
        rows = _rows([
            ("0", 0, 1),
            ("(2^m-2-2^(m/2))/2t", (full - 2 - H) / (2 * T), (T - 1) * q / T),
            ("(2^m+2^(m/2))/2t", (full + H) / (2 * T), (T - 1) * q / T),
            ("(2^m-2+(t-1)2^(m/2))/2t", (full - 2 + (T - 1) * H) / (2 * T), q / T),
            ("(2^m-(t-1)2^(m/2))/2t", (full - (T - 1) * H) / (2 * T), q / T),
            ("(2^m-1)/t", n, 1),
        ])
        pred = Prediction(tid, dict(params, d=cyclo_d(m)), n, dim, rows, dual_k_stated=n - dim,
                          dual_d=4, claims=[{"kind": SPHERE, "code": "dual"}])
    else:
        _need(t % 3 != 0, "needs 3 not dividing t")
        dim = m + 2
        Q = Fraction(q)
        rows = _rows([
            ("0", 0, 1),
            ("(2^m-1)/2t-((t-1)2^(m/2)-1)/2t", Q / (2 * T) - ((T - 1) * H - 1) / (2 * T), Q / T),
            ("(2^m-1)/2t+((3t-1)2^(m/2)-1)/6t", Q / (2 * T) + ((3 * T - 1) * H - 1) / (6 * T), 2 * Q / T),
            ("(2^m+2^(m/2))/2t", (full + H) / (2 * T), (T - 1) * Q / T),
            ("(2^m-1)/2t-(2^(m/2)+1)/6t", Q / (2 * T) - (H + 1) / (6 * T), 3 * (T - 1) * Q / T),
            ("(2^m-1)/2t-((3t+1)2^(m/2)+1)/6t", Q / (2 * T) - ((3 * T + 1) * H + 1) / (6 * T), Q / T),
            ("2(2^m-1)/3t", 2 * Q / (3 * T), 3),
        ])
        pred = Prediction(tid, dict(params, d=cyclo_d(m)), n, dim, rows, dual_k_stated=n - dim,
                          dual_d=3)
    return _finish(pred)


def t53_exponent(m: int, k: int) -> int:
    """Least d > 0 with d(2^k+1) = 2^(m/2)+1 mod 2^m-1; every solution agrees on the coset."""
    q = (1 << m) - 1
    t = (1 << k) + 1
    target = (1 << m // 2) + 1
    g = math.gcd(t, q)
    if target % g:
        raise HypothesisError(f"no d with d(2^{k}+1) = 2^{m // 2}+1 mod 2^{m}-1")
    qq = q // g
    d = (target // g) * pow(t // g, -1, qq) % qq
    return d or qq


def _predict_t53(params: dict) -> Prediction:
    m, k = _get(params, "m"), _get(params, "k")
    _need(m % 2 == 0 and m >= 4 and 1 <= k and 2 * k != m, "needs m even and k != m/2")
    q = (1 << m) - 1
    t = (1 << k) + 1
    _need(q % t == 0, "needs 2^k+1 | 2^m-1")
    d = t53_exponent(m, k)
    n = q // t
    dim = 3 * m // 2
    T = Fraction(t)
    h = m // 2
    rows = _rows([
        ("0", 0, 1),
        ("(2^(m-1)+2^(m/2-1))/t", (p2(m - 1) + p2(h - 1)) / T,
         p2(3 * k) * (p2(h) - 1) * (p2(m) - p2(m - 2 * k) - p2(m - 3 * k) + p2(h) - p2(h - k) + 1)
         / (T ** 2 * (p2(k) - 1))),
        ("(2^(m-1)-2^(m/2+k-1))/t", (p2(m - 1) - p2(h + k - 1)) / T,
         p2(k) * (p2(m) - 1) * (p2(h) + p2(h - k) + p2(h - 2 * k) + 1) / T ** 2),
        ("(2^(m-1)+2^(m/2+2k-1))/t", (p2(m - 1) + p2(h + 2 * k - 1)) / T,
         (p2(h - k) - 1) * (p2(m) - 1) / (T ** 2 * (p2(k) - 1))),
    ])
    if k > 1:
        dual_d, claims = 3, []
    elif m == 6:
        dual_d, claims = 5, []
    else:
        dual_d, claims = 4, [{"kind": SPHERE, "code": "dual"}]
    header = (p2(m - 1) - p2(h + k - 1)) / T
    pred = Prediction("T5.3", dict(params, t=t, d=d), n, dim, rows, dual_k_stated=n - dim,
                      dual_d=dual_d, header_d=int(header) if header.denominator == 1 else None,
                      claims=claims)
    return _finish(pred)


# ---------------------------------------------------------------------------


def predict(theorem_id: str, params: dict, w_lambda0: int | None = None) -> Prediction:
    """Evaluate the closed forms of one case.

    ``w_lambda0`` is the computed Walsh value W_f(lambda, 0); it selects the
    length for the general AB cases and must be supplied there.
    """
    tid = normalize_id(theorem_id)
    if tid.startswith(("T3.3", "C3.6")):
        pred = _predict_ab(tid, params, w_lambda0)
    elif tid.startswith("T4.2"):
        pred = _predict_gold(tid, params)
    elif tid == "T4.4":
        pred = _predict_pairsum(params)
    elif tid == "T4.6":
        pred = _predict_reltrace(params)
    elif tid in ("T5.2div3", "T5.2ndiv3", "R5-RM"):
        pred = _predict_cubic_cyclo(tid, params)
    else:
        pred = _predict_t53(params)
    # More than one zero-weight word means the stated dimension exceeds the
    # rank of the generator: the closed forms do not describe a code there.
    _need(pred.table.get(0) == 1, f"closed forms degenerate at {params} "
          f"(the zero weight occurs {pred.table.get(0)} times)")
    return pred
