"""Boolean functions, exact transforms and spectral classification.

Bit order is fixed everywhere: the truth table entry at index ``i`` is
f(x1, ..., xn) with ``i = sum(x_j * 2**(n - j))``, so x1 is the most
significant bit.  Points of F2^n are plain Python ints in the same order,
and ``u . x`` is ``popcount(u & x) mod 2``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, NotAFunctionSpectrum, NotBooleanSpectrum

MAX_N = int(os.environ.get("BOOLSPECTRA_MAX_N", "24"))


def _check_n(n: int) -> None:
    if not 0 <= n <= MAX_N:
        raise ValueError(f"n={n} outside supported range 0..{MAX_N}")


def var_mask(n: int, j: int) -> int:
    """Point/monomial mask of variable x_j (1-based) in F2^n."""
    if not 1 <= j <= n:
        raise ValueError(f"variable x{j} does not exist for n={n}")
    return 1 << (n - j)


def bits_to_int(bits: Sequence[int]) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | (int(b) & 1)
    return out


def int_to_bits(x: int, n: int) -> tuple[int, ...]:
    return tuple((x >> (n - 1 - j)) & 1 for j in range(n))


def dot(u: int, x: int) -> int:
    return (u & x).bit_count() & 1


def weights(n: int) -> np.ndarray:
    """Hamming weight of every point of F2^n, in index order."""
    return np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.int64)


class BooleanFunction:
    """Immutable truth table over F2^n."""

    __slots__ = ("n", "table")

    def __init__(self, n: int, table: Iterable[int] | np.ndarray):
        _check_n(n)
        arr = np.array(table, dtype=np.uint8).reshape(-1)
        if arr.size != 1 << n:
            raise DimensionMismatch(f"table length {arr.size} != 2^{n}")
        if arr.size and arr.max() > 1:
            raise ValueError("truth table entries must be 0 or 1")
        arr.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "table", arr)

    def __setattr__(self, name, value):
        raise AttributeError("BooleanFunction is immutable")

    @classmethod
    def zero(cls, n: int) -> BooleanFunction:
        return cls(n, np.zeros(1 << n, dtype=np.uint8))

    @classmethod
    def one(cls, n: int) -> BooleanFunction:
        return cls(n, np.ones(1 << n, dtype=np.uint8))

    @classmethod
    def linear(cls, n: int, a: int) -> BooleanFunction:
        """The linear function x -> a . x."""
        pts = np.arange(1 << n, dtype=np.uint32)
        return cls(n, np.bitwise_count(pts & np.uint32(a)) & 1)

    @classmethod
    def from_callable(cls, n: int, fn) -> BooleanFunction:
        """Evaluate ``fn`` on bit tuples (x1, ..., xn)."""
        return cls(n, [fn(int_to_bits(i, n)) & 1 for i in range(1 << n)])

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def chi(self) -> np.ndarray:
        """The (+-1)-sequence (-1)^f(x) as int64."""
        return 1 - 2 * self.table.astype(np.int64)

    @property
    def weight(self) -> int:
        return int(self.table.sum(dtype=np.int64))

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __len__(self) -> int:
        return self.size

    def _coerce(self, other) -> np.ndarray:
        if isinstance(other, BooleanFunction):
            if other.n != self.n:
                raise DimensionMismatch(f"n={self.n} vs n={other.n}")
            return other.table
        if other in (0, 1):
            return np.full(self.size, other, dtype=np.uint8)
        return NotImplemented

    def __xor__(self, other):
        t = self._coerce(other)
        if t is NotImplemented:
            return t
        return BooleanFunction(self.n, self.table ^ t)

    __rxor__ = __xor__
    __add__ = __xor__
    __radd__ = __xor__

    def __and__(self, other):
        t = self._coerce(other)
        if t is NotImplemented:
            return t
        return BooleanFunction(self.n, self.table & t)

    __rand__ = __and__
    __mul__ = __and__
    __rmul__ = __and__

    def __invert__(self) -> BooleanFunction:
        return BooleanFunction(self.n, self.table ^ 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.n, self.table.tobytes()))

    def __repr__(self) -> str:
        if self.n <= 6:
            body = "".join(str(int(b)) for b in self.table)
        else:
            body = f"weight={self.weight}"
        return f"BooleanFunction(n={self.n}, {body})"


def variables(n: int) -> list[BooleanFunction]:
    """Coordinate functions x1, ..., xn."""
    return [BooleanFunction.linear(n, var_mask(n, j)) for j in range(1, n + 1)]


@dataclass(frozen=True)
class AnfPolynomial:
    """Set of monomial masks u whose ANF coefficient is 1."""

    n: int
    monomials: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "monomials", frozenset(int(u) for u in self.monomials))
        limit = 1 << self.n
        for u in self.monomials:
            if not 0 <= u < limit:
                raise ValueError(f"monomial mask {u} does not fit in {self.n} bits")

    @property
    def degree(self) -> int:
        return max((u.bit_count() for u in self.monomials), default=0)

    def monomial_str(self, u: int) -> str:
        if u == 0:
            return "1"
        return "".join(f"x{j}" for j in range(1, self.n + 1) if u & var_mask(self.n, j))

    def _sort_key(self, u: int):
        return (u.bit_count(), [j for j in range(1, self.n + 1) if u & var_mask(self.n, j)])

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        return " + ".join(self.monomial_str(u) for u in sorted(self.monomials, key=self._sort_key))


# -- transforms ---------------------------------------------------------------


def _butterfly(a: np.ndarray) -> np.ndarray:
    """Unnormalised Sylvester-Hadamard transform along the last axis.

    Ping-pongs between ``a`` and one scratch buffer; the result may live in
    either, so callers use the return value.
    """
    rows, size = a.reshape(-1, a.shape[-1]).shape
    src = a.reshape(rows, size)
    dst = np.empty_like(src)
    h = 1
    while h < size:
        x = src.reshape(rows, -1, 2, h)
        y = dst.reshape(rows, -1, 2, h)
        np.add(x[:, :, 0, :], x[:, :, 1, :], out=y[:, :, 0, :])
        np.subtract(x[:, :, 0, :], x[:, :, 1, :], out=y[:, :, 1, :])
        src, dst = dst, src
        h <<= 1
    return src.reshape(a.shape)


def _xor_butterfly(a: np.ndarray) -> np.ndarray:
    size = a.size
    h = 1
    while h < size:
        v = a.reshape(-1, 2, h)
        v[:, 1, :] ^= v[:, 0, :]
        h <<= 1
    return a


def hadamard_transform(values: np.ndarray) -> np.ndarray:
    """Exact integer transform a -> (sum_x a[x] (-1)^(u.x))_u of any int vector."""
    a = np.array(values, dtype=np.int64).reshape(-1)
    if a.size & (a.size - 1):
        raise DimensionMismatch(f"length {a.size} is not a power of two")
    return _butterfly(a)


def _signs(t: np.ndarray) -> np.ndarray:
    # |W| <= 2^n < 2^31, so int32 is exact and halves memory traffic
    return (1 - 2 * t.astype(np.int32))


def wht_many(tables: np.ndarray, chunk: int = 1 << 22) -> np.ndarray:
    """Walsh spectra of a batch of truth tables, one per row."""
    t = np.asarray(tables)
    t = t.reshape(t.shape[0], -1)
    out = np.empty(t.shape, dtype=np.int64)
    step = max(1, chunk // max(1, t.shape[1]))
    for i in range(0, t.shape[0], step):
        out[i : i + step] = _butterfly(_signs(t[i : i + step]))
    return out


class WalshSpectrum:
    """Signed integer Walsh values indexed by omega in the global bit order."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values: Iterable[int] | np.ndarray):
        _check_n(n)
        arr = np.array(values, dtype=np.int64).reshape(-1)
        if arr.size != 1 << n:
            raise DimensionMismatch(f"spectrum length {arr.size} != 2^{n}")
        arr.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "values", arr)

    def __setattr__(self, name, value):
        raise AttributeError("WalshSpectrum is immutable")

    def __getitem__(self, omega):
        return self.values[omega]

    def __len__(self) -> int:
        return self.values.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, WalshSpectrum):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash((self.n, self.values.tobytes()))

    def __neg__(self) -> WalshSpectrum:
        return WalshSpectrum(self.n, -self.values)

    def __repr__(self) -> str:
        return f"WalshSpectrum(n={self.n}, {self.values.tolist() if self.n <= 6 else '...'})"

    def parseval_ok(self) -> bool:
        return int(np.dot(self.values, self.values)) == 1 << (2 * self.n)

    def support(self, amplitude: int | None = None) -> list[int]:
        """Points with nonzero value, or with ``|W| == amplitude`` when given."""
        a = np.abs(self.values)
        mask = a != 0 if amplitude is None else a == amplitude
        return np.flatnonzero(mask).tolist()

    def histogram(self) -> dict[int, int]:
        vals, counts = np.unique(self.values, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}


def wht(f: BooleanFunction) -> WalshSpectrum:
    return WalshSpectrum(f.n, _butterfly(_signs(f.table)))


def inverse_wht(W: WalshSpectrum) -> BooleanFunction:
    """Recover f from its spectrum, or raise NotBooleanSpectrum at the first bad x."""
    sums = _butterfly(W.values.copy())
    full = 1 << W.n
    bad = np.flatnonzero(np.abs(sums) != full)
    if bad.size:
        x = int(bad[0])
        raise NotBooleanSpectrum(x, int(sums[x]), W.n)
    return BooleanFunction(W.n, (sums < 0).astype(np.uint8))


def anf_to_truth_table(p: AnfPolynomial) -> BooleanFunction:
    coeffs = np.zeros(1 << p.n, dtype=np.uint8)
    if p.monomials:
        coeffs[list(p.monomials)] = 1
    return BooleanFunction(p.n, _xor_butterfly(coeffs))


def truth_table_to_anf(f: BooleanFunction) -> AnfPolynomial:
    coeffs = _xor_butterfly(f.table.copy())
    return AnfPolynomial(f.n, frozenset(np.flatnonzero(coeffs).tolist()))


def algebraic_degree(f: BooleanFunction) -> int:
    return truth_table_to_anf(f).degree


# -- classification -----------------------------------------------------------


def _log2_exact(a: int) -> int | None:
    if a <= 0 or a & (a - 1):
        return None
    return a.bit_length() - 1


@dataclass(frozen=True)
class SpectralClass:
    """Classification of a spectrum by its set of absolute values.

    ``amplitudes`` lists the distinct nonzero |W| in increasing order.  For
    five-valued spectra ``exponents`` holds log2 of the two amplitudes, i.e.
    |W| in {0, 2^e1, 2^e2}; it is not the support-size exponent.
    """

    kind: str
    n: int
    amplitudes: tuple[int, ...]
    histogram: dict[int, int] = field(compare=False, hash=False)
    s: int | None = None
    exponents: tuple[int, ...] = ()
    has_zero: bool = False

    @property
    def is_bent(self) -> bool:
        return self.kind == "bent"

    @property
    def is_plateaued(self) -> bool:
        return self.kind == "plateaued"

    @property
    def is_five_valued(self) -> bool:
        return self.kind == "five_valued"

    @property
    def semi_bent(self) -> bool:
        return self.kind == "plateaued" and self.s == (1 if self.n % 2 else 2)

    def support_sizes(self) -> dict[int, int]:
        """Number of omega with |W(omega)| == a, per amplitude a."""
        sizes: dict[int, int] = {}
        for v, c in self.histogram.items():
            if v:
                sizes[abs(v)] = sizes.get(abs(v), 0) + c
        return sizes

    def __str__(self) -> str:
        if self.kind == "bent":
            return "Bent"
        if self.kind == "plateaued":
            tag = ", semi-bent" if self.semi_bent else ""
            return f"Plateaued(s={self.s}{tag})"
        vals = ",".join(str(a) for a in ((0,) if self.has_zero else ()) + self.amplitudes)
        if self.kind == "five_valued":
            return f"FiveValued |W| in {{{vals}}}"
        return f"Other |W| in {{{vals}}}"


def classify(W: WalshSpectrum) -> SpectralClass:
    if not W.parseval_ok():
        raise NotAFunctionSpectrum(
            f"sum of squares {int(np.dot(W.values, W.values))} != 2^{2 * W.n}"
        )
    n = W.n
    absvals = np.abs(W.values)
    has_zero = bool((absvals == 0).any())
    amps = tuple(int(a) for a in np.unique(absvals) if a)
    hist = W.histogram()
    base = dict(n=n, amplitudes=amps, histogram=hist, has_zero=has_zero)

    if len(amps) == 1:
        e = _log2_exact(amps[0])
        if not has_zero and n % 2 == 0 and e == n // 2:
            return SpectralClass("bent", s=0, exponents=(e,), **base)
        if has_zero and e is not None:
            s = 2 * e - n
            if s >= (1 if n % 2 else 2):
                return SpectralClass("plateaued", s=s, exponents=(e,), **base)
    elif len(amps) == 2 and has_zero:
        exps = tuple(_log2_exact(a) for a in amps)
        if None not in exps:
            return SpectralClass("five_valued", exponents=exps, **base)
    return SpectralClass("other", **base)


def classify_function(f: BooleanFunction) -> SpectralClass:
    return classify(wht(f))


def is_bent(f: BooleanFunction) -> bool:
    return classify_function(f).is_bent


def is_semi_bent(f: BooleanFunction) -> bool:
    return classify_function(f).semi_bent


def is_plateaued(f: BooleanFunction, s: int | None = None) -> bool:
    c = classify_function(f)
    return c.is_plateaued and (s is None or c.s == s)


# -- distances ----------------------------------------------------------------


def _same_n(f: BooleanFunction, g: BooleanFunction) -> None:
    if f.n != g.n:
        raise DimensionMismatch(f"n={f.n} vs n={g.n}")


def hamming_distance(f: BooleanFunction, g: BooleanFunction) -> int:
    _same_n(f, g)
    return int(np.count_nonzero(f.table != g.table))


def correlation(f: BooleanFunction, g: BooleanFunction) -> int:
    """chi_f . chi_g = 2^n - 2 d_H(f, g)."""
    return f.size - 2 * hamming_distance(f, g)


def bent_distance_check(f: BooleanFunction, g: BooleanFunction) -> bool:
    """True iff d_H(f, g) = 2^(n-1) +- 2^(n/2 - 1); never true for odd n."""
    _same_n(f, g)
    if f.n % 2 or f.n == 0:
        return False
    return abs(correlation(f, g)) == 1 << (f.n // 2)


def resiliency_order(f: BooleanFunction | WalshSpectrum) -> int:
    """Largest m with W_f(w) = 0 for all wt(w) <= m; -1 when unbalanced."""
    W = f if isinstance(f, WalshSpectrum) else wht(f)
    vals = W.values
    if vals[0] != 0:
        return -1
    w = weights(W.n)
    return int(w[vals != 0].min()) - 1
