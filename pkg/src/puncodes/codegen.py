"""Position sets, the punctured codes C(f)^D, and exact weight enumeration.

Codewords are bit vectors over the ordered position set D; bit j of a Python
int (or of a packed ``uint64`` array) is the coordinate at D[j].  The codes
here never exceed dimension 2m, so every codeword is reached by walking the
message space in Gray order with one XOR per step.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb

import numpy as np

from puncodes import boolfunc
from puncodes.boolfunc import FunctionSpec, ResourceGuard
from puncodes.gf2m import FieldCtx

GUARD_K = 26
GUARD_N = 4096
# generators handled by the precomputed table in enumerate_weights
TABLE_BITS = 14


class CodeError(ValueError):
    """Invalid position-set recipe or code request."""


# ---------------------------------------------------------------------------
# position sets


@dataclass(frozen=True)
class TraceOfF:
    """D = {x != 0 : Tr(lam * f(x)) = nu}."""

    lam: int
    nu: int

    def __str__(self) -> str:
        return f"trace-of-f(lambda={self.lam},nu={self.nu})"


@dataclass(frozen=True)
class TraceSupport:
    """D = {x != 0 : Tr(x) = 1}."""

    def __str__(self) -> str:
        return "trace-support"


@dataclass(frozen=True)
class Cyclotomic:
    """D = <gamma^t>, the subgroup of index t in the multiplicative group."""

    t: int

    def __str__(self) -> str:
        return f"cyclotomic(t={self.t})"


Recipe = TraceOfF | TraceSupport | Cyclotomic


class PositionSet:
    """Ascending, duplicate-free nonzero field elements plus the recipe that made them."""

    def __init__(self, elements, recipe: Recipe):
        arr = np.unique(np.asarray(elements, dtype=np.int64))
        if len(arr) != len(elements):
            raise CodeError("position set has duplicates")
        if len(arr) == 0:
            raise CodeError(f"position set {recipe} is empty")
        if arr[0] == 0:
            raise CodeError("position sets exclude 0")
        arr.flags.writeable = False
        self.elements = arr
        self.recipe = recipe

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements.tolist())

    def __repr__(self) -> str:
        return f"PositionSet({self.recipe}, size={len(self)})"


def build_position_set(ctx: FieldCtx, recipe: Recipe, f: FunctionSpec | None = None) -> PositionSet:
    nz = ctx.elements[1:]
    if isinstance(recipe, TraceOfF):
        if f is None:
            raise CodeError("trace-of-f position sets need a function")
        if recipe.lam == 0 or not 0 < recipe.lam < ctx.size:
            raise CodeError("lambda must be a nonzero field element")
        if recipe.nu not in (0, 1):
            raise CodeError("nu must be 0 or 1")
        fx = boolfunc.eval_all(ctx, f)[1:]
        keep = ctx.trace_vec(ctx.mul_vec(fx, recipe.lam)) == recipe.nu
        return PositionSet(nz[keep], recipe)
    if isinstance(recipe, TraceSupport):
        return PositionSet(nz[ctx.trace_vec(nz) == 1], recipe)
    if isinstance(recipe, Cyclotomic):
        t = recipe.t
        if t < 1 or ctx.order % t:
            raise CodeError(f"t={t} does not divide 2^{ctx.m}-1")
        idx = np.arange(0, ctx.order, t, dtype=np.int64)
        return PositionSet(np.sort(ctx.exp_table[idx]), recipe)
    raise CodeError(f"unknown recipe {recipe!r}")


# ---------------------------------------------------------------------------
# GF(2) linear algebra on int bitsets


def bits_to_int(bits: np.ndarray) -> int:
    packed = np.packbits(np.asarray(bits, dtype=np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def int_to_bits(v: int, n: int) -> np.ndarray:
    raw = np.frombuffer(v.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n]


def echelon(rows) -> list[int]:
    """Reduced basis of the span of ``rows``, each with a distinct leading bit."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            # keep the basis fully reduced w.r.t. the new leading bit
            top = 1 << (r.bit_length() - 1)
            basis = [b ^ r if b & top else b for b in basis]
            basis.append(r)
    basis.sort(reverse=True)
    return basis


def in_span(basis: list[int], v: int) -> bool:
    for b in basis:
        v = min(v, v ^ b)
    return v == 0


class BinaryLinearCode:
    """A binary [n, k] code given by independent generator rows (int bitsets)."""

    def __init__(self, n: int, spanning_rows, meta: dict | None = None):
        self.n = n
        self.spanning_rows = [int(r) for r in spanning_rows]
        if any(r >> n for r in self.spanning_rows):
            raise CodeError("row longer than the code length")
        self.rows = echelon(self.spanning_rows)
        self.k = len(self.rows)
        self.meta = dict(meta or {})

    @property
    def all_one(self) -> bool:
        return in_span(self.rows, (1 << self.n) - 1)

    def contains(self, v: int) -> bool:
        return in_span(self.rows, v)

    def packed_rows(self) -> np.ndarray:
        """Generators as a (k, words) uint64 array."""
        words = max(1, (self.n + 63) // 64)
        out = np.zeros((self.k, words), dtype=np.uint64)
        mask = (1 << 64) - 1
        for i, r in enumerate(self.rows):
            for w in range(words):
                out[i, w] = (r >> (64 * w)) & mask
        return out

    def __repr__(self) -> str:
        return f"BinaryLinearCode(n={self.n}, k={self.k})"


def is_self_complementary(code: BinaryLinearCode) -> bool:
    return code.all_one


def _spanning_rows(ctx: FieldCtx, fx: np.ndarray, xs: np.ndarray) -> list[int]:
    rows = []
    for vals in (fx, xs):
        for i in range(ctx.m):
            rows.append(bits_to_int(ctx.trace_vec(ctx.mul_vec(vals, 1 << i))))
    return rows


def build_code(ctx: FieldCtx, f: FunctionSpec, D: PositionSet) -> BinaryLinearCode:
    """C(f)^D: the vectors (Tr(a f(x) + b x))_{x in D} over all a, b."""
    xs = D.elements
    fx = boolfunc.eval_all(ctx, f)[xs]
    return BinaryLinearCode(len(xs), _spanning_rows(ctx, fx, xs),
                            meta={"function": str(f), "recipe": str(D.recipe)})


def codeword(ctx: FieldCtx, f: FunctionSpec, D: PositionSet, a: int, b: int) -> int:
    """c(a, b) evaluated directly, as an int bitset over D."""
    xs = D.elements
    fx = boolfunc.eval_all(ctx, f)[xs]
    return bits_to_int(ctx.trace_vec(ctx.mul_vec(fx, a) ^ ctx.mul_vec(xs, b)))


def message_codeword(ctx: FieldCtx, f: FunctionSpec, D: PositionSet, a: int, b: int) -> int:
    """c(a, b) as the combination of spanning rows selected by the bits of a and b."""
    xs = D.elements
    rows = _spanning_rows(ctx, boolfunc.eval_all(ctx, f)[xs], xs)
    acc = 0
    for i in range(ctx.m):
        if (a >> i) & 1:
            acc ^= rows[i]
        if (b >> i) & 1:
            acc ^= rows[ctx.m + i]
    return acc


def puncture_full_code(ctx: FieldCtx, f: FunctionSpec, keep: PositionSet) -> BinaryLinearCode:
    """Build C(f) on every nonzero element, then delete the coordinates outside ``keep``."""
    full_x = ctx.elements[1:]
    fx = boolfunc.eval_all(ctx, f)[1:]
    cols = keep.elements - 1  # coordinate of x is x - 1
    rows = []
    for vals in (fx, full_x):
        for i in range(ctx.m):
            full = ctx.trace_vec(ctx.mul_vec(vals, 1 << i))
            rows.append(bits_to_int(full[cols]))
    return BinaryLinearCode(len(cols), rows, meta={"function": str(f), "recipe": str(keep.recipe)})


def dual_code(code: BinaryLinearCode) -> BinaryLinearCode:
    """The dual code, from a parity-check basis of the reduced generator matrix."""
    n = code.n
    pivots = [r.bit_length() - 1 for r in code.rows]
    pivot_set = set(pivots)
    checks = []
    for c in range(n):
        if c in pivot_set:
            continue
        v = 1 << c
        for r, p in zip(code.rows, pivots):
            if (r >> c) & 1:
                v |= 1 << p
        checks.append(v)
    return BinaryLinearCode(n, checks)


# ---------------------------------------------------------------------------
# weight distributions


class WeightDistribution:
    """Exact counts A_0..A_n of a code's codewords by Hamming weight."""

    def __init__(self, counts, n: int | None = None):
        if isinstance(counts, dict):
            if n is None:
                n = max(counts) if counts else 0
            arr = [0] * (n + 1)
            for w, c in counts.items():
                if c:
                    arr[int(w)] = int(c)
            counts = arr
        self.counts = tuple(int(c) for c in counts)
        self.n = len(self.counts) - 1
        if any(c < 0 for c in self.counts):
            raise CodeError("negative weight count")

    def __getitem__(self, w: int) -> int:
        return self.counts[w] if 0 <= w <= self.n else 0

    def __eq__(self, other) -> bool:
        return isinstance(other, WeightDistribution) and self.as_dict() == other.as_dict()

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.as_dict().items())))

    def __repr__(self) -> str:
        return f"WeightDistribution({self.as_dict()})"

    def as_dict(self) -> dict[int, int]:
        return {w: c for w, c in enumerate(self.counts) if c}

    def total(self) -> int:
        return sum(self.counts)

    def nonzero_weights(self) -> list[int]:
        return [w for w, c in enumerate(self.counts) if c and w]

    def min_distance(self) -> int:
        ws = self.nonzero_weights()
        if not ws:
            raise CodeError("the zero code has no minimum distance")
        return ws[0]

    def to_csv(self) -> str:
        lines = ["weight,count"] + [f"{w},{c}" for w, c in self.as_dict().items()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict[str, int]:
        # JSON object keys are strings; counts stay exact ints
        return {str(w): c for w, c in self.as_dict().items()}


def min_distance(wd: WeightDistribution) -> int:
    return wd.min_distance()


def _gray_walk(table: np.ndarray, high: np.ndarray, start: int, stop: int, n: int) -> np.ndarray:
    """Histogram of weights of table ^ acc for Gray indices in [start, stop)."""
    counts = np.zeros(n + 1, dtype=np.int64)
    g = start ^ (start >> 1)
    acc = np.zeros(table.shape[1], dtype=np.uint64)
    for i in range(len(high)):
        if (g >> i) & 1:
            acc ^= high[i]
    for step in range(start, stop):
        if step != start:
            acc ^= high[(step & -step).bit_length() - 1]
        w = np.bitwise_count(table ^ acc).sum(axis=1, dtype=np.int64)
        counts += np.bincount(w, minlength=n + 1)
    return counts


def enumerate_weights(code: BinaryLinearCode, guard_k: int = GUARD_K, guard_n: int = GUARD_N,
                      jobs: int = 1) -> WeightDistribution:
    """Exact weight distribution by visiting all 2^k codewords.

    The low generators (up to ``TABLE_BITS`` of them) are expanded once into a
    table of all their combinations; the remaining high generators are walked
    in Gray order, XOR-ing one row into the accumulator per step, and every
    step weighs ``table ^ acc`` in one vectorized popcount.  With ``jobs > 1``
    the Gray walk is split into contiguous ranges, each seeded with its first
    codeword; the per-range histograms are summed.
    """
    if code.k > guard_k:
        raise ResourceGuard(f"dimension {code.k} exceeds the enumeration guard k <= {guard_k}")
    if code.n > guard_n:
        raise ResourceGuard(f"length {code.n} exceeds the enumeration guard n <= {guard_n}")
    gens = code.packed_rows()
    lo = min(code.k, TABLE_BITS)
    table = np.zeros((1 << lo, gens.shape[1]), dtype=np.uint64)
    for i in range(lo):
        table[1 << i: 2 << i] = table[: 1 << i] ^ gens[i]
    high = gens[lo:]
    steps = 1 << len(high)
    jobs = max(1, min(jobs, steps))
    if jobs == 1:
        counts = _gray_walk(table, high, 0, steps, code.n)
    else:
        bounds = [steps * j // jobs for j in range(jobs + 1)]
        with ThreadPoolExecutor(jobs) as pool:
            parts = pool.map(lambda j: _gray_walk(table, high, bounds[j], bounds[j + 1], code.n),
                             range(jobs))
            counts = sum(parts)
    return WeightDistribution([int(c) for c in counts])


def enumerate_weights_direct(ctx: FieldCtx, f: FunctionSpec, D: PositionSet) -> WeightDistribution:
    """Weight distribution over all (a, b) with multiplicity, divided by the kernel size.

    Counts positions with Tr(a f(x) + b x) = 1 for every pair (a, b) directly,
    without generators or Gray codes; each codeword appears 2^(2m-k) times.
    """
    xs = D.elements
    fx = boolfunc.eval_all(ctx, f)[xs]
    n = len(xs)
    counts = np.zeros(n + 1, dtype=np.int64)
    b_part = ctx.trace_vec(ctx.mul_vec(ctx.elements[:, None], xs[None, :]))  # rows b
    for a in range(ctx.size):
        af = ctx.trace_vec(ctx.mul_vec(fx, a))
        w = (b_part ^ af[None, :]).sum(axis=1, dtype=np.int64)
        counts += np.bincount(w, minlength=n + 1)
    zero = int(counts[0])
    if ctx.size * ctx.size % zero:
        raise CodeError("kernel size does not divide the message count")  # pragma: no cover
    return WeightDistribution([int(c) // zero for c in counts])


# ---------------------------------------------------------------------------
# MacWilliams transform


def krawtchouk(n: int, j: int, i: int) -> int:
    """K_j(i) = sum_s (-1)^s C(i, s) C(n - i, j - s), straight from the definition."""
    return sum((-1) ** s * comb(i, s) * comb(n - i, j - s) for s in range(0, min(i, j) + 1))


def _krawtchouk_rows(n: int, weights):
    """Yield (j, [K_j(i) for i in weights]) for j = 0..n via the three-term recurrence."""
    prev = [0] * len(weights)
    cur = [1] * len(weights)
    yield 0, cur
    for j in range(n):
        nxt = []
        for idx, i in enumerate(weights):
            num = (n - 2 * i) * cur[idx] - (n - j + 1) * prev[idx]
            q, r = divmod(num, j + 1)
            if r:
                raise ArithmeticError("Krawtchouk recurrence left the integers")  # pragma: no cover
            nxt.append(q)
        prev, cur = cur, nxt
        yield j + 1, cur


def _dual_counts(wd: WeightDistribution, n: int, k: int):
    if wd.n > n:
        raise CodeError("weight distribution longer than the code")
    if wd.total() != 1 << k:
        raise CodeError(f"distribution sums to {wd.total()}, not 2^{k}")
    support = [(w, c) for w, c in wd.as_dict().items()]
    weights = [w for w, _ in support]
    mult = [c for _, c in support]
    for j, kr in _krawtchouk_rows(n, weights):
        total = sum(c * v for c, v in zip(mult, kr))
        q, r = divmod(total, 1 << k)
        if r or q < 0:
            raise ArithmeticError(f"MacWilliams produced A_{j} = {total}/2^{k}; inconsistent input")
        yield j, q


def macwilliams_dual(wd: WeightDistribution, n: int, k: int) -> WeightDistribution:
    """Exact dual distribution A'_j = 2^-k sum_i A_i K_j(i)."""
    return WeightDistribution([q for _, q in _dual_counts(wd, n, k)])


def dual_min_distance(wd: WeightDistribution, n: int, k: int) -> int | None:
    """Least j > 0 with A'_j > 0, stopping at the first hit; None for the zero dual."""
    for j, q in _dual_counts(wd, n, k):
        if j and q:
            return j
    return None


# ---------------------------------------------------------------------------
# serialization


def code_summary(code: BinaryLinearCode, wd: WeightDistribution) -> dict:
    dd = dual_min_distance(wd, code.n, code.k)
    return {
        "n": code.n,
        "k": code.k,
        "d": wd.min_distance() if wd.nonzero_weights() else None,
        "distribution": wd.to_json(),
        "dual": {"n": code.n, "k": code.n - code.k, "d": dd},
        "flags": {"self_complementary": code.all_one},
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
