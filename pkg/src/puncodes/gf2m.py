"""Arithmetic in GF(2^m) for 2 <= m <= 20.

Elements are plain Python ints whose bits are coordinates in the polynomial
basis of the modulus.  A :class:`FieldCtx` carries the modulus, a primitive
element and discrete-log tables; it is immutable once built and can be shared
freely.  Scalar operations take and return ints; the ``*_vec`` variants work on
numpy integer arrays and are what the enumeration code leans on.
"""

from __future__ import annotations

import configparser
import math
from functools import cached_property, lru_cache
from pathlib import Path

import numpy as np

M_MIN = 2
M_MAX = 20

# v2(0); compares greater than every finite valuation.
INF = math.inf


class FieldError(ValueError):
    """Invalid field parameters (degree out of range, reducible modulus, ...)."""


def v2(n: int) -> int | float:
    """2-adic valuation of ``n``; ``v2(0)`` is :data:`INF`."""
    if n < 0:
        raise ValueError("v2 is defined for n >= 0")
    if n == 0:
        return INF
    return (n & -n).bit_length() - 1


# ---------------------------------------------------------------------------
# polynomials over GF(2), encoded as ints


def _deg(p: int) -> int:
    return p.bit_length() - 1


def poly_mod(a: int, p: int) -> int:
    dp = _deg(p)
    while a and _deg(a) >= dp:
        a ^= p << (_deg(a) - dp)
    return a


def clmul(a: int, b: int) -> int:
    """Carry-less product of two polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def is_irreducible(p: int) -> bool:
    """Trial division by every polynomial of degree 1..deg(p)//2."""
    d = _deg(p)
    if d < 1:
        return False
    if d == 1:
        return True
    if not p & 1:
        return False
    for q in range(2, 1 << (d // 2 + 1)):
        if poly_mod(p, q) == 0:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(m: int) -> int:
    for p in range((1 << m) | 1, 1 << (m + 1), 2):
        if is_irreducible(p):
            return p
    raise FieldError(f"no irreducible polynomial of degree {m}")  # pragma: no cover


def _prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def _mulmod_vec(x: np.ndarray, c: int, modulus: int, m: int) -> np.ndarray:
    """Multiply every element of ``x`` by the constant ``c`` without tables."""
    prod = np.zeros_like(x)
    for i in range(m):
        if (c >> i) & 1:
            prod ^= x << i
    for deg in range(2 * m - 2, m - 1, -1):
        hi = (prod >> deg) & 1
        prod ^= hi * (modulus << (deg - m))
    return prod


# ---------------------------------------------------------------------------


class FieldCtx:
    """A concrete realization of GF(2^m).

    Build instances with :func:`field_new`.
    """

    def __init__(self, m: int, modulus: int, gamma: int):
        self.m = m
        self.modulus = modulus
        self.gamma = gamma
        self.size = 1 << m
        # multiplicative group order
        self.order = self.size - 1
        exp = np.ones(self.order, dtype=np.int64)
        filled, g_pow = 1, gamma
        while filled < self.order:
            step = min(filled, self.order - filled)
            exp[filled:filled + step] = _mulmod_vec(exp[:step], g_pow, modulus, m)
            filled += step
            g_pow = self._clmul_mod(g_pow, g_pow)
        log = np.full(self.size, -1, dtype=np.int64)
        log[exp] = np.arange(self.order, dtype=np.int64)
        self.exp_table = exp
        self.log_table = log
        exp.flags.writeable = False
        log.flags.writeable = False
        self._exp = exp.tolist()
        self._log = log.tolist()
        # Tr is linear, so Tr(x) = parity(x & trace_mask).
        mask = 0
        for i in range(m):
            y, s = 1 << i, 0
            for _ in range(m):
                s ^= y
                y = self._clmul_mod(y, y)
            if s not in (0, 1):
                raise FieldError("trace of a basis element left GF(2)")  # pragma: no cover
            mask |= s << i
        self.trace_mask = mask

    def __repr__(self) -> str:
        return f"FieldCtx(m={self.m}, modulus={self.modulus:#x}, gamma={self.gamma:#x})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and (self.m, self.modulus, self.gamma) == (
            other.m, other.modulus, other.gamma)

    def __hash__(self) -> int:
        return hash((self.m, self.modulus, self.gamma))

    def __reduce__(self):
        return (field_new, (self.m, self.modulus))

    # -- scalar arithmetic -------------------------------------------------

    def _clmul_mod(self, a: int, b: int) -> int:
        return poly_mod(clmul(a, b), self.modulus)

    def check(self, x: int) -> int:
        if not 0 <= x < self.size:
            raise FieldError(f"{x} is not an element of GF(2^{self.m})")
        return x

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp[(self._log[x] + self._log[y]) % self.order]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[(-self._log[x]) % self.order]

    def pow(self, x: int, e: int) -> int:
        """``x**e`` with the convention ``0**0 == 1``."""
        if e < 0:
            raise ValueError("negative exponent")
        if x == 0:
            return 1 if e == 0 else 0
        return self._exp[(self._log[x] * e) % self.order]

    def gamma_pow(self, i: int) -> int:
        return self._exp[i % self.order]

    def log(self, x: int) -> int:
        if x == 0:
            raise ValueError("log of 0")
        return self._log[x]

    def trace(self, x: int) -> int:
        return (x & self.trace_mask).bit_count() & 1

    def rel_trace(self, k: int, x: int) -> int:
        """Trace from GF(2^m) down to the subfield GF(2^k)."""
        if k <= 0 or self.m % k:
            raise FieldError(f"k={k} does not divide m={self.m}")
        s, y = 0, x
        for _ in range(self.m // k):
            s ^= y
            y = self.pow(y, 1 << k)
        return s

    def in_subfield(self, k: int, x: int) -> bool:
        return self.pow(x, 1 << k) == x

    # -- vectorized --------------------------------------------------------

    @cached_property
    def elements(self) -> np.ndarray:
        a = np.arange(self.size, dtype=np.int64)
        a.flags.writeable = False
        return a

    def mul_vec(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        lx, ly = self.log_table[x], self.log_table[y]
        out = self.exp_table[(lx + ly) % self.order]
        return np.where((x == 0) | (y == 0), 0, out)

    def pow_vec(self, x, e: int) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if e == 0:
            return np.ones_like(x)
        out = self.exp_table[(self.log_table[x] * (e % self.order)) % self.order]
        return np.where(x == 0, 0, out)

    def trace_vec(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        return (np.bitwise_count(x & self.trace_mask) & 1).astype(np.int8)

    def rel_trace_vec(self, k: int, x) -> np.ndarray:
        if k <= 0 or self.m % k:
            raise FieldError(f"k={k} does not divide m={self.m}")
        x = np.asarray(x, dtype=np.int64)
        s = np.zeros_like(x)
        for i in range(self.m // k):
            s ^= self.pow_vec(x, 1 << (k * i)) if i else x
        return s

    @cached_property
    def walsh_index(self) -> np.ndarray:
        """Map ``b -> u`` with ``Tr(b*x) == parity(u & x)`` for all ``x``.

        Lets a Hadamard transform indexed by bit vectors be read off at
        field elements.
        """
        b = self.elements
        u = np.zeros(self.size, dtype=np.int64)
        for i in range(self.m):
            u |= self.trace_vec(self.mul_vec(b, 1 << i)).astype(np.int64) << i
        u.flags.writeable = False
        return u


def _find_primitive(m: int, modulus: int) -> int:
    order = (1 << m) - 1
    factors = _prime_factors(order)

    def powmod(x: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = poly_mod(clmul(r, x), modulus)
            x = poly_mod(clmul(x, x), modulus)
            e >>= 1
        return r

    for g in range(2, 1 << m):
        if order == 1 or all(powmod(g, order // q) != 1 for q in factors):
            return g
    if m == 1:  # pragma: no cover
        return 1
    raise FieldError("no primitive element found")  # pragma: no cover


@lru_cache(maxsize=64)
def _build(m: int, modulus: int) -> FieldCtx:
    return FieldCtx(m, modulus, _find_primitive(m, modulus))


def field_new(m: int, modulus: int | None = None) -> FieldCtx:
    """Return GF(2^m) realized modulo ``modulus``.

    The default modulus is the smallest irreducible polynomial of degree ``m``
    (by integer encoding); gamma is the smallest element of full order.
    Contexts are cached, so repeated calls are cheap.
    """
    if not isinstance(m, int) or not M_MIN <= m <= M_MAX:
        raise FieldError(f"m must be an integer in [{M_MIN}, {M_MAX}], got {m!r}")
    if modulus is None:
        modulus = smallest_irreducible(m)
    if _deg(modulus) != m:
        raise FieldError(f"modulus {modulus:#b} does not have degree {m}")
    if not is_irreducible(modulus):
        raise FieldError(f"modulus {modulus:#b} is reducible")
    return _build(m, modulus)


# ---------------------------------------------------------------------------
# field configuration files
#
#   [moduli]
#   7 = 0b10000011
#   8 = 0x11d
#
# Keys are degrees, values any Python integer literal.  Degrees not listed
# fall back to the default modulus.


def load_field_config(path: str | Path) -> dict[int, int]:
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise FieldError(f"cannot read field config {path}: {exc}") from exc
    if not parser.has_section("moduli"):
        raise FieldError(f"field config {path} has no [moduli] section")
    moduli = {}
    for key, value in parser.items("moduli"):
        try:
            m, p = int(key), int(value, 0)
        except ValueError as exc:
            raise FieldError(f"bad entry {key} = {value} in {path}") from exc
        field_new(m, p)  # validates
        moduli[m] = p
    return moduli


class FieldFactory:
    """Hands out field contexts, honouring per-degree modulus overrides."""

    def __init__(self, moduli: dict[int, int] | None = None):
        self.moduli = dict(moduli or {})

    @classmethod
    def from_config(cls, path: str | Path | None) -> "FieldFactory":
        return cls(load_field_config(path) if path else None)

    def __call__(self, m: int) -> FieldCtx:
        return field_new(m, self.moduli.get(m))
