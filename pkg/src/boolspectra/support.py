"""Ordered Walsh supports, duals of plateaued and five-valued spectra, and
sequence profiles.

A support S is stored as ``v ^ E`` with ``E[0] == 0``; position ``j`` of the
support is ``omega_j = v ^ E[j]`` and is identified with the point of
F2^r whose integer value is ``j``.  Supports read off a spectrum use the
lexicographic rule (``v`` = smallest element, ``E`` sorted); explicit
orderings are accepted through :meth:`OrderedSupport.from_sequence` for
recipes that prescribe their own row order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from .core import (
    BooleanFunction,
    DimensionMismatch,
    WalshSpectrum,
    classify,
    hadamard_transform,
)
from .errors import (
    EmptySupport,
    NotFiveValued,
    NotPlateaued,
    OddM,
    SupportNotPowerOfTwo,
)


def gf2_rank(vectors: Iterable[int]) -> int:
    basis: list[int] = []
    for x in vectors:
        for b in basis:
            x = min(x, x ^ b)
        if x:
            basis.append(x)
    return len(basis)


def gf2_basis(vectors: Iterable[int]) -> list[int]:
    """Echelon basis (distinct leading bits) of the span of ``vectors``."""
    basis: list[int] = []
    for x in vectors:
        for b in basis:
            x = min(x, x ^ b)
        if x:
            basis.append(x)
            basis.sort(reverse=True)
    return basis


def _log2_size(k: int) -> int | None:
    if k <= 0 or k & (k - 1):
        return None
    return k.bit_length() - 1


@dataclass(frozen=True)
class OrderedSupport:
    n: int
    v: int
    E: tuple[int, ...]

    def __post_init__(self):
        E = tuple(int(e) for e in self.E)
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "v", int(self.v))
        if not E:
            raise EmptySupport("support has no points")
        if E[0] != 0:
            raise ValueError("E must start with the zero vector")
        if len(set(E)) != len(E):
            raise ValueError("support points are not distinct")
        limit = 1 << self.n
        if not 0 <= self.v < limit or any(not 0 <= e < limit for e in E):
            raise ValueError(f"support point outside F2^{self.n}")

    @classmethod
    def from_points(cls, n: int, points: Iterable[int], base: int | None = None) -> OrderedSupport:
        """Lexicographic rendering ``base ^ sorted(E)``; ``base`` defaults to min(points)."""
        pts = sorted(set(int(p) for p in points))
        if not pts:
            raise EmptySupport("support has no points")
        v = pts[0] if base is None else int(base)
        if v not in pts:
            raise ValueError(f"base point {v} is not in the support")
        return cls(n, v, tuple(sorted(v ^ p for p in pts)))

    @classmethod
    def from_offsets(cls, n: int, v: int, E: Iterable[int]) -> OrderedSupport:
        """``v ^ E`` with the offsets sorted increasingly."""
        return cls(n, v, tuple(sorted(set(int(e) for e in E))))

    @classmethod
    def from_sequence(cls, n: int, omegas: Iterable[int]) -> OrderedSupport:
        """Keep the caller's order: ``omega_j`` is the j-th given point."""
        om = [int(w) for w in omegas]
        if not om:
            raise EmptySupport("support has no points")
        return cls(n, om[0], tuple(om[0] ^ w for w in om))

    @property
    def size(self) -> int:
        return len(self.E)

    @property
    def omegas(self) -> tuple[int, ...]:
        return tuple(self.v ^ e for e in self.E)

    @property
    def dim(self) -> int | None:
        """log2 of the size, or None when the size is not a power of two."""
        return _log2_size(len(self.E))

    @property
    def is_lexicographic(self) -> bool:
        return all(a < b for a, b in zip(self.E, self.E[1:]))

    @cached_property
    def is_affine(self) -> bool:
        """E is a linear subspace, i.e. the support is an affine flat."""
        d = self.dim
        return d is not None and gf2_rank(self.E) == d

    @cached_property
    def point_set(self) -> frozenset[int]:
        return frozenset(self.omegas)

    def omega_array(self) -> np.ndarray:
        return np.array(self.omegas, dtype=np.int64)

    def disjoint(self, other: OrderedSupport) -> bool:
        return not (self.point_set & other.point_set)

    def to_json(self) -> dict:
        return {"n": self.n, "v": self.v, "E": list(self.E)}

    @classmethod
    def from_json(cls, obj: dict) -> OrderedSupport:
        return cls(int(obj["n"]), int(obj["v"]), tuple(obj["E"]))


def ordered_support(W: WalshSpectrum, amplitude: int) -> OrderedSupport:
    if amplitude <= 0:
        raise ValueError("amplitude must be positive")
    pts = W.support(amplitude)
    if not pts:
        raise EmptySupport(f"no omega with |W| = {amplitude}")
    return OrderedSupport.from_points(W.n, pts)


@dataclass(frozen=True)
class DualFunction:
    """Sign pattern over an ordered support, as a function on F2^r."""

    support: OrderedSupport
    g: BooleanFunction

    def __post_init__(self):
        if self.support.size != self.g.size:
            raise DimensionMismatch(
                f"support of size {self.support.size} vs dual on {self.g.n} variables"
            )

    @property
    def r(self) -> int:
        return self.g.n

    def spectrum(self, amplitude: int) -> WalshSpectrum:
        """amplitude * (-1)^g(x_j) at omega_j, zero elsewhere."""
        vals = np.zeros(1 << self.support.n, dtype=np.int64)
        vals[self.support.omega_array()] = amplitude * self.g.chi
        return WalshSpectrum(self.support.n, vals)

    def signed_indicator(self) -> np.ndarray:
        """(-1)^g at the support points of F2^n, zero elsewhere."""
        vals = np.zeros(1 << self.support.n, dtype=np.int64)
        vals[self.support.omega_array()] = self.g.chi
        return vals

    def value_map(self) -> dict[int, int]:
        """omega -> dual bit, independent of the chosen ordering."""
        return dict(zip(self.support.omegas, self.g.table.tolist()))

    def to_json(self) -> dict:
        from .io import function_to_json

        return {"support": self.support.to_json(), "dual": function_to_json(self.g)}

    @classmethod
    def from_json(cls, obj: dict) -> DualFunction:
        from .io import function_from_json

        return cls(OrderedSupport.from_json(obj["support"]), function_from_json(obj["dual"]))


def dual_on(W: WalshSpectrum, support: OrderedSupport) -> DualFunction:
    """Read the sign of W along ``support`` (in its order) as a dual function."""
    r = support.dim
    if r is None:
        raise SupportNotPowerOfTwo(f"support size {support.size} is not a power of two")
    vals = W.values[support.omega_array()]
    if (vals == 0).any():
        raise ValueError("spectrum vanishes on a support point")
    return DualFunction(support, BooleanFunction(r, (vals < 0).astype(np.uint8)))


def dual(W: WalshSpectrum) -> DualFunction:
    c = classify(W)
    if not (c.is_bent or c.is_plateaued):
        raise NotPlateaued(f"spectrum is {c}, not bent or plateaued")
    return dual_on(W, ordered_support(W, c.amplitudes[0]))


@dataclass(frozen=True)
class FiveValuedProfile:
    """``s1``/``d1`` carry the larger amplitude ``c1``; ``s2``/``d2`` the smaller ``c2``."""

    d1: DualFunction
    c1: int
    d2: DualFunction
    c2: int

    @property
    def s1(self) -> OrderedSupport:
        return self.d1.support

    @property
    def s2(self) -> OrderedSupport:
        return self.d2.support

    @property
    def lambdas(self) -> tuple[int, int]:
        """Support-size exponents (lambda_1, lambda_2)."""
        return self.d1.r, self.d2.r

    def spectrum(self) -> WalshSpectrum:
        n = self.s1.n
        vals = self.d1.spectrum(self.c1).values + self.d2.spectrum(self.c2).values
        return WalshSpectrum(n, vals)


def five_valued_profile(W: WalshSpectrum) -> FiveValuedProfile:
    c = classify(W)
    if not c.is_five_valued:
        raise NotFiveValued(f"spectrum is {c}")
    c2, c1 = c.amplitudes
    s1 = ordered_support(W, c1)
    s2 = ordered_support(W, c2)
    for s, amp in ((s1, c1), (s2, c2)):
        if s.dim is None:
            raise SupportNotPowerOfTwo(f"support of amplitude {amp} has size {s.size}")
    return FiveValuedProfile(dual_on(W, s1), c1, dual_on(W, s2), c2)


# -- sequence profiles --------------------------------------------------------


def sylvester_row_of(seq: np.ndarray) -> tuple[int, int] | None:
    """Return (r, eps) with seq == (-1)^eps * row r of H_{2^m}, else None."""
    s = np.asarray(seq, dtype=np.int64)
    size = s.size
    if size == 0 or size & (size - 1):
        return None
    eps = int(s[0] < 0)
    t = s * s[0]
    r = 0
    k = 1
    bit = 0
    while k < size:
        if t[k] < 0:
            r |= 1 << bit
        k <<= 1
        bit += 1
    idx = np.arange(size, dtype=np.uint32)
    row = 1 - 2 * (np.bitwise_count(idx & np.uint32(r)).astype(np.int64) & 1)
    return (r, eps) if np.array_equal(t, row) else None


@dataclass(frozen=True)
class SequenceProfile:
    """Generators phi_{b_1}, ..., phi_{b_n}; phi_u is the XOR of those with u_i = 1."""

    support: OrderedSupport
    generators: tuple[BooleanFunction, ...]

    @property
    def m(self) -> int:
        return self.generators[0].n

    def phi(self, u: int) -> BooleanFunction:
        n = self.support.n
        out = BooleanFunction.zero(self.m)
        for i, gen in enumerate(self.generators, start=1):
            if (u >> (n - i)) & 1:
                out = out ^ gen
        return out

    def all_sequences(self) -> Iterator[tuple[int, BooleanFunction]]:
        """The full multiset (u, phi_u) over u in F2^n."""
        om = self.support.omega_array()
        for u in range(1 << self.support.n):
            bits = np.bitwise_count(om & u) & 1
            yield u, BooleanFunction(self.m, bits.astype(np.uint8))

    def basis(self) -> list[BooleanFunction]:
        """A basis of the span of the generators (the distinct phi_u)."""
        size = 1 << self.m
        ints = [
            int.from_bytes(np.packbits(g.table, bitorder="little").tobytes(), "little")
            for g in self.generators
        ]
        out = []
        for b in gf2_basis(ints):
            raw = np.frombuffer(b.to_bytes((size + 7) // 8, "little"), dtype=np.uint8)
            out.append(BooleanFunction(self.m, np.unpackbits(raw, bitorder="little")[:size]))
        return out

    @property
    def rank(self) -> int:
        return len(self.basis())

    def distinct(self) -> Iterator[BooleanFunction]:
        basis = self.basis()
        for c in range(1 << len(basis)):
            out = BooleanFunction.zero(self.m)
            for k, b in enumerate(basis):
                if (c >> k) & 1:
                    out = out ^ b
            yield out

    def correlations(self, g: BooleanFunction) -> np.ndarray:
        """chi_g . chi_phi for every phi in the span, via one transform of size 2^rank."""
        if g.n != self.m:
            raise DimensionMismatch(f"g on {g.n} variables, profile on {self.m}")
        basis = self.basis()
        r = len(basis)
        key = np.zeros(g.size, dtype=np.int64)
        for k, b in enumerate(basis):
            key |= b.table.astype(np.int64) << k
        hist = np.bincount(key, weights=g.chi, minlength=1 << r).astype(np.int64)
        return hadamard_transform(hist)


def sequence_profile(s: OrderedSupport) -> SequenceProfile:
    m = s.dim
    if m is None:
        raise SupportNotPowerOfTwo(f"support size {s.size} is not a power of two")
    om = s.omega_array()
    gens = tuple(
        BooleanFunction(m, ((om >> (s.n - i)) & 1).astype(np.uint8)) for i in range(1, s.n + 1)
    )
    return SequenceProfile(s, gens)


def bent_distance_to_profile(g: BooleanFunction, p: SequenceProfile) -> bool:
    if g.n != p.m:
        raise DimensionMismatch(f"g on {g.n} variables, profile on {p.m}")
    if p.m % 2:
        raise OddM(f"m={p.m} is odd; bent distance needs even m")
    return bool((np.abs(p.correlations(g)) == 1 << (p.m // 2)).all())
