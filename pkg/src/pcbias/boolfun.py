"""Truth-table Boolean functions and their spectral analysis.

Bit convention used everywhere in this package: input variable x1 is the
least-significant bit of a truth-table index, so f(x1, ..., xn) is stored at
index sum(x_j * 2**(j-1)).  Linear masks follow the same convention, mask bit
j-1 selects variable x_j.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import total_ordering

import numpy as np

MAX_VARS = 24

__all__ = [
    "MAX_VARS",
    "FunctionFormatError",
    "DyadicRational",
    "BooleanFunction",
    "WalshSpectrum",
    "RestrictionTable",
    "bias",
    "walsh_transform",
    "linear_bias",
    "restriction_table",
    "resiliency_order",
    "correlation_immunity_order",
    "plateaued_amplitude",
]


class FunctionFormatError(ValueError):
    """Malformed truth-table hex or ANF text."""


def _log2_int(x: int) -> float:
    """log2 of a positive int of any size (53-bit mantissa accuracy)."""
    bl = x.bit_length()
    if bl <= 53:
        return math.log2(x)
    shift = bl - 53
    return math.log2(x >> shift) + shift


@total_ordering
@dataclass(frozen=True)
class DyadicRational:
    """Exact value numerator / 2**log2_denominator.

    The canonical form keeps the numerator odd (or zero with denominator
    2**0), so equal values always compare equal field-wise.  Arithmetic is
    exact at any size; floats are derived output only.
    """

    numerator: int
    log2_denominator: int = 0

    def __post_init__(self):
        num = int(self.numerator)
        exp = int(self.log2_denominator)
        if exp < 0:
            raise ValueError("log2_denominator must be >= 0")
        if num == 0:
            exp = 0
        else:
            strip = min(exp, (num & -num).bit_length() - 1)
            num >>= strip
            exp -= strip
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "log2_denominator", exp)

    @staticmethod
    def _coerce(value):
        if isinstance(value, DyadicRational):
            return value
        if isinstance(value, int):
            return DyadicRational(value)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        exp = max(self.log2_denominator, other.log2_denominator)
        num = (self.numerator << (exp - self.log2_denominator)) + (
            other.numerator << (exp - other.log2_denominator)
        )
        return DyadicRational(num, exp)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return DyadicRational(
            self.numerator * other.numerator,
            self.log2_denominator + other.log2_denominator,
        )

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        return DyadicRational(
            self.numerator**exponent, self.log2_denominator * exponent
        )

    def __neg__(self):
        return DyadicRational(-self.numerator, self.log2_denominator)

    def __abs__(self):
        return DyadicRational(abs(self.numerator), self.log2_denominator)

    def __lt__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).numerator < 0

    def __bool__(self):
        return self.numerator != 0

    def __float__(self):
        num, exp = self.numerator, self.log2_denominator
        bl = abs(num).bit_length()
        if bl > 970:
            drop = bl - 60
            num >>= drop
            exp -= drop
        return math.ldexp(num, -exp)

    def __str__(self):
        if self.log2_denominator == 0:
            return str(self.numerator)
        if self.log2_denominator <= 16:
            return f"{self.numerator}/{1 << self.log2_denominator}"
        return f"{self.numerator}/2^{self.log2_denominator}"

    @property
    def is_zero(self) -> bool:
        return self.numerator == 0

    def log2(self) -> float:
        """log2 of the value; -inf for zero, error for negative values."""
        if self.numerator < 0:
            raise ValueError("log2 of a negative value")
        if self.numerator == 0:
            return float("-inf")
        return _log2_int(self.numerator) - self.log2_denominator

    def as_fraction(self):
        from fractions import Fraction

        return Fraction(self.numerator, 1 << self.log2_denominator)

    def to_json_dict(self) -> dict:
        return {
            "numerator": str(self.numerator),
            "log2_denominator": self.log2_denominator,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "DyadicRational":
        return cls(int(d["numerator"]), int(d["log2_denominator"]))


def _fwht_inplace(a: np.ndarray) -> np.ndarray:
    """In-place Walsh-Hadamard butterfly over a length 2**n integer array."""
    size = a.shape[0]
    h = 1
    while h < size:
        m = a.reshape(-1, h * 2)
        x = m[:, :h].copy()
        y = m[:, h:]
        m[:, :h] = x + y
        m[:, h:] = x - y
        h *= 2
    return a


def _mobius_inplace(a: np.ndarray) -> np.ndarray:
    """In-place binary Mobius transform (truth table <-> ANF coefficients)."""
    size = a.shape[0]
    h = 1
    while h < size:
        m = a.reshape(-1, h * 2)
        m[:, h:] ^= m[:, :h]
        h *= 2
    return a


_POP16 = None


def _popcounts(masks: np.ndarray) -> np.ndarray:
    """Hamming weight of every entry of an integer array (< 2**32)."""
    global _POP16
    if _POP16 is None:
        t = np.arange(1 << 16, dtype=np.uint32)
        counts = np.zeros(1 << 16, dtype=np.uint8)
        while t.any():
            counts += (t & 1).astype(np.uint8)
            t >>= 1
        _POP16 = counts
    m = masks.astype(np.uint32)
    return _POP16[m & 0xFFFF] + _POP16[m >> 16]


_ANF_FACTOR = re.compile(r"^(?:1|x([1-9][0-9]*))$")


class BooleanFunction:
    """A Boolean function of n variables given by its full truth table."""

    __slots__ = ("n", "_table", "_spectrum")

    def __init__(self, n: int, table):
        if not 1 <= n <= MAX_VARS:
            raise ValueError(f"n must be in 1..{MAX_VARS}, got {n}")
        arr = np.asarray(table, dtype=np.uint8)
        if arr.ndim != 1 or arr.shape[0] != 1 << n:
            raise ValueError(f"table must have exactly 2^{n} entries")
        if arr.max(initial=0) > 1:
            raise ValueError("table entries must be 0 or 1")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_table", arr)
        object.__setattr__(self, "_spectrum", None)

    def __setattr__(self, name, value):
        raise AttributeError("BooleanFunction is immutable")

    @property
    def table(self) -> np.ndarray:
        return self._table

    def __call__(self, x: int) -> int:
        return int(self._table[x])

    def __eq__(self, other):
        return (
            isinstance(other, BooleanFunction)
            and self.n == other.n
            and bool(np.array_equal(self._table, other._table))
        )

    def __hash__(self):
        return hash((self.n, self._table.tobytes()))

    def __xor__(self, other: "BooleanFunction") -> "BooleanFunction":
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("cannot xor functions of different arity")
        return BooleanFunction(self.n, self._table ^ other._table)

    def __repr__(self):
        if self.n <= 6:
            return f"BooleanFunction(n={self.n}, tt={self.to_hex()!r})"
        return f"BooleanFunction(n={self.n})"

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, n: int, value: int) -> "BooleanFunction":
        return cls(n, np.full(1 << n, 1 if value else 0, dtype=np.uint8))

    @classmethod
    def random(cls, n: int, seed=None) -> "BooleanFunction":
        rng = np.random.default_rng(seed)
        return cls(n, rng.integers(0, 2, size=1 << n, dtype=np.uint8))

    @classmethod
    def from_hex(cls, text: str, n: int) -> "BooleanFunction":
        """Parse the packed hex format (see to_hex for the exact layout)."""
        if not 1 <= n <= MAX_VARS:
            raise FunctionFormatError(f"n must be in 1..{MAX_VARS}, got {n}")
        text = text.strip().lower()
        digits = max(1, (1 << n) // 4)
        if len(text) != digits or not re.fullmatch(r"[0-9a-f]+", text):
            raise FunctionFormatError(
                f"truth table for n={n} needs exactly {digits} hex digits"
            )
        value = int(text, 16)
        if value >> (1 << n):
            raise FunctionFormatError("hex value exceeds the table size")
        bits = [(value >> x) & 1 for x in range(1 << n)]
        return cls(n, bits)

    def to_hex(self) -> str:
        """Pack the table into lowercase hex.

        The table is read as the integer V = sum(table[x] * 2**x) and written
        big-endian, most significant hex digit first.  Equivalently, bit
        (x mod 4) of the hex digit at offset (2**n - 1 - x) // 4 from the left
        is f at index x.
        """
        value = 0
        for x in np.flatnonzero(self._table):
            value |= 1 << int(x)
        digits = max(1, (1 << self.n) // 4)
        return format(value, f"0{digits}x")

    @classmethod
    def from_anf(cls, text: str, n: int | None = None) -> "BooleanFunction":
        """Parse ANF text such as "x1*x2 + x3 + 1", where + is xor."""
        terms = []
        max_var = 0
        cleaned = text.strip()
        if cleaned in ("0", ""):
            term_list = []
        else:
            term_list = cleaned.split("+")
        for raw_term in term_list:
            factors = [p.strip() for p in raw_term.strip().split("*")]
            if any(not p for p in factors):
                raise FunctionFormatError(f"empty factor in term {raw_term!r}")
            mask = 0
            for factor in factors:
                m = _ANF_FACTOR.match(factor)
                if m is None:
                    raise FunctionFormatError(f"unknown factor {factor!r}")
                if m.group(1) is not None:
                    var = int(m.group(1))
                    if var > MAX_VARS:
                        raise FunctionFormatError(f"variable x{var} out of range")
                    mask |= 1 << (var - 1)
                    max_var = max(max_var, var)
            terms.append(mask)
        if n is None:
            n = max(max_var, 1)
        if not 1 <= n <= MAX_VARS:
            raise FunctionFormatError(f"n must be in 1..{MAX_VARS}, got {n}")
        if max_var > n:
            raise FunctionFormatError(f"variable x{max_var} exceeds n={n}")
        coeffs = np.zeros(1 << n, dtype=np.uint8)
        for mask in terms:
            coeffs[mask] ^= 1
        return cls(n, _mobius_inplace(coeffs))

    def to_anf(self) -> str:
        """Serialize to ANF text; terms by descending degree, then mask order."""
        coeffs = _mobius_inplace(self._table.copy())
        masks = np.flatnonzero(coeffs)
        if len(masks) == 0:
            return "0"
        weights = _popcounts(masks)
        order = sorted(range(len(masks)), key=lambda i: (-int(weights[i]), int(masks[i])))
        parts = []
        for i in order:
            mask = int(masks[i])
            if mask == 0:
                parts.append("1")
            else:
                parts.append(
                    "*".join(f"x{j + 1}" for j in range(self.n) if (mask >> j) & 1)
                )
        return " + ".join(parts)

    # -- analysis ----------------------------------------------------------

    def signs(self) -> np.ndarray:
        """(-1)**f as an int8 array."""
        return (1 - 2 * self._table.astype(np.int8)).astype(np.int8)

    def spectrum(self) -> "WalshSpectrum":
        """Walsh spectrum, computed once and cached."""
        if self._spectrum is None:
            object.__setattr__(self, "_spectrum", walsh_transform(self))
        return self._spectrum

    @property
    def has_cached_spectrum(self) -> bool:
        return self._spectrum is not None

    def extend_to(self, n: int) -> "BooleanFunction":
        """View this k-variable function as an n-variable one (new variables inert)."""
        if n < self.n:
            raise ValueError("cannot extend to fewer variables")
        if n == self.n:
            return self
        return BooleanFunction(n, np.tile(self._table, 1 << (n - self.n)))


class WalshSpectrum:
    """All 2**n signed correlations of f with the linear functions."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: np.ndarray):
        coeffs = np.asarray(coeffs)
        if coeffs.shape != (1 << n,):
            raise ValueError("coefficient count must be 2^n")
        coeffs = coeffs.copy()
        coeffs.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("WalshSpectrum is immutable")

    def __getitem__(self, mask: int) -> int:
        if not 0 <= mask < (1 << self.n):
            raise ValueError(f"mask {mask} out of range for n={self.n}")
        return int(self.coeffs[mask])

    def support(self) -> np.ndarray:
        """Masks with a nonzero coefficient."""
        return np.flatnonzero(self.coeffs)

    def max_abs(self) -> int:
        return int(np.abs(self.coeffs).max())


class RestrictionTable:
    """Exact biases of f with its low fixed_count variables pinned.

    Entry a holds the bias of the (n-k)-variable function obtained by fixing
    x1..xk to the bits of a; sums[a] is the corresponding +/-1 count, so the
    bias is sums[a] / 2**free_count.
    """

    __slots__ = ("fixed_count", "free_count", "sums")

    def __init__(self, fixed_count: int, free_count: int, sums: np.ndarray):
        sums = np.asarray(sums, dtype=np.int64)
        if sums.shape != (1 << fixed_count,):
            raise ValueError("sums length must be 2^fixed_count")
        sums = sums.copy()
        sums.setflags(write=False)
        object.__setattr__(self, "fixed_count", fixed_count)
        object.__setattr__(self, "free_count", free_count)
        object.__setattr__(self, "sums", sums)

    def __setattr__(self, name, value):
        raise AttributeError("RestrictionTable is immutable")

    def bias(self, a: int) -> DyadicRational:
        if not 0 <= a < (1 << self.fixed_count):
            raise ValueError(f"index {a} out of range")
        return DyadicRational(int(self.sums[a]), self.free_count)

    @property
    def biases(self) -> tuple[DyadicRational, ...]:
        return tuple(
            DyadicRational(int(s), self.free_count) for s in self.sums
        )


def bias(f: BooleanFunction) -> DyadicRational:
    """Imbalance of f: 2**-n * sum over x of (-1)**f(x)."""
    total = (1 << f.n) - 2 * int(np.count_nonzero(f.table))
    return DyadicRational(total, f.n)


def walsh_transform(f: BooleanFunction) -> WalshSpectrum:
    """Full spectrum via the butterfly recursion, O(n * 2**n) integer ops."""
    dtype = np.int64 if f.n <= 20 else np.int32
    work = f.signs().astype(dtype)
    return WalshSpectrum(f.n, _fwht_inplace(work))


def linear_bias(spectrum: WalshSpectrum, a: int) -> DyadicRational:
    """Bias of f xor the linear function selected by mask a."""
    return DyadicRational(spectrum[a], spectrum.n)


def restriction_table(f: BooleanFunction, k: int) -> RestrictionTable:
    """Biases of all 2**k restrictions fixing the low k variables."""
    if not 0 < k <= f.n:
        raise ValueError(f"k must be in 1..{f.n}, got {k}")
    signs = f.signs().astype(np.int64)
    sums = signs.reshape(1 << (f.n - k), 1 << k).sum(axis=0)
    return RestrictionTable(k, f.n - k, sums)


def _min_support_weight(f: BooleanFunction, exclude_zero: bool) -> int | None:
    coeffs = f.spectrum().coeffs
    masks = np.flatnonzero(coeffs)
    if exclude_zero:
        masks = masks[masks != 0]
    if len(masks) == 0:
        return None
    return int(_popcounts(masks).min())


def resiliency_order(f: BooleanFunction) -> int:
    """Largest t with zero spectrum at all masks of weight <= t; -1 if unbalanced."""
    w = _min_support_weight(f, exclude_zero=False)
    return (w if w is not None else f.n + 1) - 1


def correlation_immunity_order(f: BooleanFunction) -> int:
    """Like resiliency but without requiring balancedness."""
    w = _min_support_weight(f, exclude_zero=True)
    if w is None:
        return f.n
    return w - 1


def plateaued_amplitude(f: BooleanFunction) -> DyadicRational | None:
    """Common amplitude W / 2**n when the spectrum is valued in {0, +W, -W}."""
    magnitudes = np.unique(np.abs(f.spectrum().coeffs.astype(np.int64)))
    nonzero = magnitudes[magnitudes != 0]
    if len(nonzero) != 1:
        return None
    return DyadicRational(int(nonzero[0]), f.n)
