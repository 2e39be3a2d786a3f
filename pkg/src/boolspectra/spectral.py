"""Spectral-domain constructions.

Functions here prescribe a spectrum (supports, amplitudes, sign patterns)
and invert it.  Failure of the inverse transform to land in {+1, -1} is
the signal that a prescription is not realisable; it surfaces as
:class:`NotBooleanSpectrum` carrying the first offending point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    BooleanFunction,
    WalshSpectrum,
    classify_function,
    hadamard_transform,
    inverse_wht,
    var_mask,
)
from .errors import ConditionViolated, NotBent, SupportsOverlap, WeightPrecondition
from .support import DualFunction, OrderedSupport


def bent_weights(k: int) -> tuple[int, ...]:
    """Weights 2^(k-1) +- 2^(k/2-1) allowed for the dual in a plateaued recipe."""
    if k % 2 or k == 0:
        return ()
    half = 1 << (k - 1)
    off = 1 << (k // 2 - 1)
    return (half - off, half + off)


def construct_plateaued(
    s: OrderedSupport, g: BooleanFunction, *, check_weight: bool = True
) -> BooleanFunction:
    """Invert the spectrum 2^((n+s)/2) (-1)^g(x_j) on omega_j, 0 off the support.

    Succeeds exactly when g is at bent distance to the sequence profile of
    ``s`` (for an affine ``s``: exactly when g is bent).
    """
    if s.size != g.size:
        raise ConditionViolated("support size mismatch", f"|S|={s.size}, dual on {g.n} vars")
    n, k = s.n, g.n
    if check_weight and g.weight not in bent_weights(k):
        raise WeightPrecondition(
            "dual weight is not 2^(k-1) +- 2^(k/2-1)", f"k={k}, wt(g)={g.weight}"
        )
    if (2 * n - k) % 2:
        raise ConditionViolated("amplitude is not an integer power of two", f"n={n}, k={k}")
    amp = 1 << ((2 * n - k) // 2)
    return inverse_wht(DualFunction(s, g).spectrum(amp))


@dataclass(frozen=True)
class DisjointPair:
    """Two sign patterns on disjoint supports of the same F2^n."""

    d1: DualFunction
    d2: DualFunction

    def __post_init__(self):
        if self.d1.support.n != self.d2.support.n:
            raise ConditionViolated("supports live in different spaces")
        if not self.s1.disjoint(self.s2):
            raise SupportsOverlap("supports intersect")
        if self.s1.size + self.s2.size >= 1 << self.n:
            raise ConditionViolated("supports cover F2^n", "need |S1| + |S2| < 2^n")

    @property
    def n(self) -> int:
        return self.d1.support.n

    @property
    def s1(self) -> OrderedSupport:
        return self.d1.support

    @property
    def s2(self) -> OrderedSupport:
        return self.d2.support

    def partial_sums(self) -> tuple[np.ndarray, np.ndarray]:
        """X_i(u) = sum over S_i of (-1)^(d_i(omega) + u.omega), for every u."""
        return (
            hadamard_transform(self.d1.signed_indicator()),
            hadamard_transform(self.d2.signed_indicator()),
        )

    def to_json(self) -> dict:
        return {"n": self.n, "first": self.d1.to_json(), "second": self.d2.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> DisjointPair:
        return cls(DualFunction.from_json(obj["first"]), DualFunction.from_json(obj["second"]))


@dataclass(frozen=True)
class DisjointnessCertificate:
    ok: bool
    X1: np.ndarray
    X2: np.ndarray
    violation: str | None = None  # "overlap" or "double_zero"
    u: int | None = None

    def __bool__(self) -> bool:
        return self.ok

    def value_pairs(self) -> set[tuple[int, int]]:
        return set(zip(self.X1.tolist(), self.X2.tolist()))

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violation": self.violation,
            "u": self.u,
            "value_pairs": sorted(self.value_pairs()),
        }


def certify_totally_disjoint(p: DisjointPair) -> DisjointnessCertificate:
    X1, X2 = p.partial_sums()
    overlap = (X1 * X2) != 0
    double_zero = (X1 == 0) & (X2 == 0)
    bad = np.flatnonzero(overlap | double_zero)
    if not bad.size:
        return DisjointnessCertificate(True, X1, X2)
    u = int(bad[0])
    kind = "overlap" if overlap[u] else "double_zero"
    return DisjointnessCertificate(False, X1, X2, kind, u)


def check_amplitude_law(lambda1: int, s1: int, lambda2: int, s2: int, n: int) -> bool:
    return lambda1 + s1 + 2 == n and lambda2 + s2 == n


def five_valued_spectrum(p: DisjointPair, c1: int, c2: int) -> WalshSpectrum:
    vals = p.d1.spectrum(c1).values + p.d2.spectrum(c2).values
    return WalshSpectrum(p.n, vals)


def assemble_five_valued(
    p: DisjointPair, c1: int | None = None, c2: int | None = None
) -> BooleanFunction:
    """Invert c1 (-1)^d1 on S1 plus c2 (-1)^d2 on S2.

    Defaults are the amplitudes 2^((n+2)/2) and 2^(n/2) for even n; success
    is equivalent to 2 X1(u) + X2(u) = +-2^(n/2) at every u.
    """
    n = p.n
    if n % 2:
        raise ConditionViolated("n must be even", f"n={n}")
    c1 = 1 << ((n + 2) // 2) if c1 is None else c1
    c2 = 1 << (n // 2) if c2 is None else c2
    if (c1, c2) != (1 << ((n + 2) // 2), 1 << (n // 2)):
        raise ConditionViolated("amplitudes must be 2^((n+2)/2) and 2^(n/2)", f"got {c1}, {c2}")
    return inverse_wht(five_valued_spectrum(p, c1, c2))


def hyperplane(m: int, a: int) -> list[int]:
    """H = {beta in F2^m : a . beta = 0}, increasing."""
    if not 0 < a < 1 << m:
        raise ValueError("hyperplane mask must be a nonzero point of F2^m")
    pts = np.arange(1 << m, dtype=np.uint32)
    return np.flatnonzero((np.bitwise_count(pts & np.uint32(a)) & 1) == 0).tolist()


@dataclass(frozen=True)
class ConstructionOneResult:
    f: BooleanFunction
    pair: DisjointPair
    spectrum: WalshSpectrum


def construction_one(g: BooleanFunction, h: BooleanFunction, a: int) -> ConstructionOneResult:
    """Five/three-valued f on F2^(k+m) from bent g on F2^k, bent h on F2^m and H = ker(a).

    W(alpha, beta) = 2^(n/2) (-1)^(g(alpha)+h(beta)) on F2^k x H,
    2^(m/2+k) (-1)^h(beta) on {0} x (F2^m minus H), 0 elsewhere.
    """
    for name, fn in (("g", g), ("h", h)):
        if not classify_function(fn).is_bent:
            raise NotBent(f"{name} not bent")
    k, m = g.n, h.n
    n = k + m
    H = hyperplane(m, a)
    Hbar = sorted(set(range(1 << m)) - set(H))

    pts1 = [(alpha << m) | beta for alpha in range(1 << k) for beta in H]
    s1 = OrderedSupport.from_points(n, pts1)
    d1_tab = [g(w >> m) ^ h(w & ((1 << m) - 1)) for w in s1.omegas]
    s2 = OrderedSupport.from_points(n, Hbar)
    d2_tab = [h(w) for w in s2.omegas]
    pair = DisjointPair(
        DualFunction(s1, BooleanFunction(s1.dim, d1_tab)),
        DualFunction(s2, BooleanFunction(s2.dim, d2_tab)),
    )
    W = five_valued_spectrum(pair, 1 << (n // 2), 1 << (m // 2 + k))
    return ConstructionOneResult(inverse_wht(W), pair, W)


def hyperplane_split_sums(h: BooleanFunction, a: int) -> tuple[np.ndarray, np.ndarray]:
    """Per y: the correlation sums of h over H = ker(a) and over its complement."""
    m = h.n
    inH = np.zeros(1 << m, dtype=bool)
    inH[hyperplane(m, a)] = True
    chi = h.chi
    return hadamard_transform(np.where(inH, chi, 0)), hadamard_transform(np.where(inH, 0, chi))


def affine_support(n: int, v: int, basis: list[int]) -> OrderedSupport:
    """Lexicographically ordered flat v ^ span(basis) with base point v."""
    E = {0}
    for b in basis:
        E |= {e ^ b for e in E}
    if len(E) != 1 << len(basis):
        raise ValueError("basis vectors are linearly dependent")
    return OrderedSupport.from_offsets(n, v, E)


def coordinate_subspace(n: int, free: list[int]) -> list[int]:
    """Basis of the subspace where only the listed variables (1-based) vary."""
    return [var_mask(n, j) for j in free]
