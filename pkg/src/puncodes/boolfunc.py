"""Catalog of functions on GF(2^m), Walsh spectra, AB/APN tests and exponential sums."""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from puncodes.gf2m import FieldCtx

FAMILIES = {
    # name: (required parameter names, short description)
    "monomial": (("d",), "x^d"),
    "gold": (("h",), "x^(2^h+1)"),
    "kasami": (("h",), "x^(2^(2h)-2^h+1)"),
    "welch": ((), "x^(2^((m-1)/2)+3), m odd"),
    "niho1": ((), "x^(2^((m-1)/2)+2^((m-1)/4)-1), m = 1 mod 4"),
    "niho2": ((), "x^(2^((m-1)/2)+2^((3m-1)/4)-1), m = 3 mod 4"),
    "pairsum": (("t1", "t2"), "x^t1 + x^t2, 3 | m, m >= 9"),
    "reltrace": (("k",), "Tr_k^m(x^(2^k+1)), k | m, k not in {m, m/2}"),
    "cyclopower": (("d",), "x^d evaluated on a cyclotomic class"),
}

SPECTRUM_M_MAX = 16
AB_M_MAX = 13


class FunctionError(ValueError):
    """A function description that does not make sense for the given m."""


class ResourceGuard(RuntimeError):
    """A request exceeding the configured computation limits."""


@dataclass(frozen=True)
class FunctionSpec:
    """A function f on GF(2^m) with f(0) = 0.

    ``c`` adds the linear term ``c*x``.  That keeps every Walsh value (it only
    shifts b) while moving the position sets built from Tr(lambda*f(x)).
    """

    family: str
    m: int
    params: tuple[tuple[str, int], ...] = ()
    c: int = 0
    _p: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(sorted(dict(self.params).items())))
        object.__setattr__(self, "_p", dict(self.params))
        self._validate()

    @classmethod
    def make(cls, family: str, m: int, c: int = 0, **params: int) -> "FunctionSpec":
        return cls(family, m, tuple(params.items()), c)

    def __getitem__(self, key: str) -> int:
        return self._p[key]

    def _validate(self) -> None:
        m, fam, p = self.m, self.family, self._p
        if fam not in FAMILIES:
            raise FunctionError(f"unknown family {fam!r}; known: {', '.join(FAMILIES)}")
        need = FAMILIES[fam][0]
        if set(p) != set(need):
            raise FunctionError(f"{fam} takes parameters {need}, got {tuple(p)}")
        if not 0 <= self.c < (1 << m):
            raise FunctionError(f"c={self.c} is not an element of GF(2^{m})")
        if fam in ("monomial", "cyclopower"):
            if p["d"] < 1:
                raise FunctionError("exponent d must be positive")
        elif fam in ("gold", "kasami"):
            lo = 1 if fam == "gold" else 2
            if not lo <= p["h"] < m:
                raise FunctionError(f"{fam} needs {lo} <= h < m")
        elif fam == "welch":
            if m % 2 == 0:
                raise FunctionError("welch needs m odd")
        elif fam == "niho1":
            if m % 4 != 1:
                raise FunctionError("niho1 needs m = 1 mod 4")
        elif fam == "niho2":
            if m % 4 != 3:
                raise FunctionError("niho2 needs m = 3 mod 4")
        elif fam == "pairsum":
            if m % 3 or m < 9:
                raise FunctionError("pairsum needs 3 | m and m >= 9")
            allowed = pairsum_exponents(m)
            if p["t1"] == p["t2"] or p["t1"] not in allowed or p["t2"] not in allowed:
                raise FunctionError(f"pairsum needs distinct t1, t2 from {allowed}")
        elif fam == "reltrace":
            k = p["k"]
            if k <= 0 or m % k or k == m or 2 * k == m:
                raise FunctionError("reltrace needs k | m with k not in {m, m/2}")

    @property
    def exponent(self) -> int | None:
        """The exponent d when f is a monomial x^d (ignoring ``c``), else None."""
        m, fam, p = self.m, self.family, self._p
        if fam in ("monomial", "cyclopower"):
            return p["d"]
        if fam == "gold":
            return (1 << p["h"]) + 1
        if fam == "kasami":
            h = p["h"]
            return (1 << 2 * h) - (1 << h) + 1
        if fam == "welch":
            return (1 << (m - 1) // 2) + 3
        if fam == "niho1":
            return (1 << (m - 1) // 2) + (1 << (m - 1) // 4) - 1
        if fam == "niho2":
            return (1 << (m - 1) // 2) + (1 << (3 * m - 1) // 4) - 1
        return None

    @property
    def is_quadratic(self) -> bool:
        """True for the Dembowski-Ostrom families (algebraic degree 2)."""
        d = self.exponent
        if d is not None:
            return d.bit_count() == 2 or (d % ((1 << self.m) - 1)).bit_count() == 2
        return self.family in ("pairsum", "reltrace")

    def __str__(self) -> str:
        args = [f"{k}={v}" for k, v in self.params]
        if self.c:
            args.append(f"c={self.c}")
        return f"{self.family}({','.join(args)})" if args else self.family


_SPEC_RE = re.compile(r"^\s*([a-z0-9]+)\s*(?:\((.*)\))?\s*$")


def parse_function(text: str, m: int) -> FunctionSpec:
    """Parse the canonical text form, e.g. ``gold(h=1)`` or ``pairsum(t1=9,t2=65)``."""
    mo = _SPEC_RE.match(text.lower())
    if not mo:
        raise FunctionError(f"cannot parse function {text!r}")
    params = {}
    if mo.group(2):
        for item in mo.group(2).split(","):
            if not item.strip():
                continue
            key, sep, value = item.partition("=")
            if not sep:
                raise FunctionError(f"parameter {item!r} is not key=value")
            try:
                params[key.strip()] = int(value.strip(), 0)
            except ValueError as exc:
                raise FunctionError(f"parameter {item!r} is not an integer") from exc
    c = params.pop("c", 0)
    return FunctionSpec(mo.group(1), m, tuple(params.items()), c)


def pairsum_exponents(m: int) -> tuple[int, int, int]:
    s = m // 3
    return ((1 << s) + 1, (1 << 2 * s) + 1, (1 << 2 * s) + (1 << s))


# ---------------------------------------------------------------------------
# evaluation


def eval_all(ctx: FieldCtx, f: FunctionSpec) -> np.ndarray:
    """Values f(x) for every x in the field, indexed by the encoding of x."""
    _check_degree(ctx, f)
    x = ctx.elements
    d = f.exponent
    if d is not None:
        y = ctx.pow_vec(x, d)
    elif f.family == "pairsum":
        y = ctx.pow_vec(x, f["t1"]) ^ ctx.pow_vec(x, f["t2"])
    elif f.family == "reltrace":
        k = f["k"]
        y = ctx.rel_trace_vec(k, ctx.pow_vec(x, (1 << k) + 1))
    else:  # pragma: no cover
        raise FunctionError(f.family)
    if f.c:
        y = y ^ ctx.mul_vec(x, f.c)
    y[0] = 0
    return y


def eval(ctx: FieldCtx, f: FunctionSpec, x: int) -> int:
    _check_degree(ctx, f)
    ctx.check(x)
    if x == 0:
        return 0
    d = f.exponent
    if d is not None:
        y = ctx.pow(x, d)
    elif f.family == "pairsum":
        y = ctx.pow(x, f["t1"]) ^ ctx.pow(x, f["t2"])
    else:
        k = f["k"]
        y = ctx.rel_trace(k, ctx.pow(x, (1 << k) + 1))
    return y ^ ctx.mul(f.c, x)


def _check_degree(ctx: FieldCtx, f: FunctionSpec) -> None:
    if f.m != ctx.m:
        raise FunctionError(f"{f} is defined over GF(2^{f.m}), not GF(2^{ctx.m})")


# ---------------------------------------------------------------------------
# Walsh transform


def walsh(ctx: FieldCtx, f: FunctionSpec, a: int, b: int) -> int:
    """Sum over x of (-1)^Tr(a f(x) + b x), straight from the definition."""
    fx = eval_all(ctx, f)
    e = ctx.trace_vec(ctx.mul_vec(fx, a) ^ ctx.mul_vec(ctx.elements, b))
    return int(ctx.size - 2 * int(e.sum()))


def fwht(signs: np.ndarray) -> np.ndarray:
    """In-place-free fast Walsh-Hadamard transform along the last axis."""
    a = np.array(signs, dtype=np.int64)
    lead = a.shape[:-1]
    size = a.shape[-1]
    h = 1
    while h < size:
        a = a.reshape(*lead, size // (2 * h), 2, h)
        lo, hi = a[..., 0, :], a[..., 1, :]
        a = np.stack((lo + hi, lo - hi), axis=-2)
        h *= 2
    return a.reshape(*lead, size)


def walsh_rows(ctx: FieldCtx, f: FunctionSpec, a_values) -> np.ndarray:
    """Matrix W[i, b] = W_f(a_values[i], b) for every b, one transform per row."""
    fx = eval_all(ctx, f)
    a_values = np.atleast_1d(np.asarray(a_values, dtype=np.int64))
    g = ctx.trace_vec(ctx.mul_vec(a_values[:, None], fx[None, :]))
    spec = fwht(1 - 2 * g.astype(np.int64))
    return spec[:, ctx.walsh_index]


def iter_walsh_blocks(ctx: FieldCtx, f: FunctionSpec, a_values=None, block: int | None = None):
    """Yield (a_block, W_block) pairs covering ``a_values`` (default: all a != 0)."""
    if a_values is None:
        a_values = np.arange(1, ctx.size, dtype=np.int64)
    block = block or max(1, (1 << 22) // ctx.size)
    for start in range(0, len(a_values), block):
        chunk = a_values[start:start + block]
        yield chunk, walsh_rows(ctx, f, chunk)


def walsh_spectrum(ctx: FieldCtx, f: FunctionSpec) -> dict[int, int]:
    """Value distribution of W_f(a, b) over a != 0 and all b."""
    if ctx.m > SPECTRUM_M_MAX:
        raise ResourceGuard(f"full Walsh spectrum limited to m <= {SPECTRUM_M_MAX}")
    counts: Counter = Counter()
    for _, rows in iter_walsh_blocks(ctx, f):
        vals, cnt = np.unique(rows, return_counts=True)
        counts.update(dict(zip(vals.tolist(), cnt.tolist())))
    return dict(sorted(counts.items()))


def is_ab(ctx: FieldCtx, f: FunctionSpec, spectrum: dict[int, int] | None = None) -> bool:
    """Exhaustive almost-bent test; only meaningful (and allowed) for odd m."""
    if ctx.m % 2 == 0:
        raise FunctionError("almost bent functions exist only for odd m")
    if ctx.m > AB_M_MAX:
        raise ResourceGuard(f"is_ab limited to m <= {AB_M_MAX}")
    if spectrum is None:
        spectrum = walsh_spectrum(ctx, f)
    peak = 1 << (ctx.m + 1) // 2
    return set(spectrum) <= {0, peak, -peak}


def differential_uniformity(ctx: FieldCtx, f: FunctionSpec) -> int:
    """max over a != 0, b of #{x : f(x+a) + f(x) = b}."""
    if ctx.m > AB_M_MAX:
        raise ResourceGuard(f"differential tables limited to m <= {AB_M_MAX}")
    fx = eval_all(ctx, f)
    x = ctx.elements
    best = 0
    block = max(1, (1 << 20) // ctx.size)
    for start in range(1, ctx.size, block):
        a = np.arange(start, min(start + block, ctx.size), dtype=np.int64)
        deriv = fx[x[None, :] ^ a[:, None]] ^ fx[None, :]
        # bincount per row via offsets
        offs = (np.arange(len(a), dtype=np.int64) * ctx.size)[:, None]
        tally = np.bincount((deriv + offs).ravel(), minlength=len(a) * ctx.size)
        best = max(best, int(tally.max()))
    return best


def is_apn(ctx: FieldCtx, f: FunctionSpec) -> bool:
    return differential_uniformity(ctx, f) == 2


def ab_monomial_exponents(m: int) -> list[int]:
    """Exponents d (reduced mod 2^m - 1) of the known almost bent power maps.

    Gold 2^h+1 and Kasami 2^(2h)-2^h+1 run over 1 <= h < m (h >= 2 for Kasami)
    with gcd(m, h) = 1; Welch and the Niho exponent matching m mod 4 are added.
    """
    if m % 2 == 0:
        raise FunctionError("almost bent monomials need odd m")
    q = (1 << m) - 1
    out = set()
    for h in range(1, m):
        if math.gcd(m, h) != 1:
            continue
        out.add(((1 << h) + 1) % q)
        if h >= 2:
            out.add(((1 << 2 * h) - (1 << h) + 1) % q)
    out.add(((1 << (m - 1) // 2) + 3) % q)
    if m % 4 == 1:
        out.add(((1 << (m - 1) // 2) + (1 << (m - 1) // 4) - 1) % q)
    else:
        out.add(((1 << (m - 1) // 2) + (1 << (3 * m - 1) // 4) - 1) % q)
    out.discard(0)
    return sorted(out)


# ---------------------------------------------------------------------------
# exponential sums over subsets


def _positions(D) -> np.ndarray:
    """Accept a PositionSet or any sequence of field elements."""
    return np.asarray(getattr(D, "elements", D), dtype=np.int64)


def t_sum(ctx: FieldCtx, D, d: int, a: int, b: int) -> int:
    """Sum over x in D of (-1)^Tr(a x^d + b x)."""
    xs = _positions(D)
    e = ctx.trace_vec(ctx.mul_vec(ctx.pow_vec(xs, d), a) ^ ctx.mul_vec(xs, b))
    return int(len(xs) - 2 * int(e.sum()))


def t_sum_table(ctx: FieldCtx, D, d: int) -> np.ndarray:
    """All T(a, b) at once as a 2^m x 2^m array (rows a, columns b).

    Row a is the Hadamard transform of the vector that holds
    (-1)^Tr(a x^d) at each x in D and 0 elsewhere.
    """
    xs = _positions(D)
    xd = ctx.pow_vec(xs, d)
    signs = 1 - 2 * ctx.trace_vec(ctx.mul_vec(ctx.elements[:, None], xd[None, :])).astype(np.int64)
    vec = np.zeros((ctx.size, ctx.size), dtype=np.int64)
    vec[:, xs] = signs
    return fwht(vec)[:, ctx.walsh_index]
