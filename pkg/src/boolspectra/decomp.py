"""4-bent decomposition: restrictions of f to the cosets of <alpha, beta>^perp.

Cosets are taken in the order (0, a, b, a^b) + V.  When alpha, beta and
alpha^beta all lie outside V the representatives are alpha and beta
themselves; otherwise <alpha, beta> is not a complement of V and the
representatives fall back to the smallest points with
(x.alpha, x.beta) = (1, 0) and (0, 1).  V is enumerated increasingly and
its i-th element is identified with the point i of F2^(n-2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from .core import (
    BooleanFunction,
    DimensionMismatch,
    SpectralClass,
    WalshSpectrum,
    classify,
    dot,
    wht,
)
from .errors import NotBent, TrichotomyViolated, WrongSpectralShape
from .support import gf2_basis, gf2_rank


@dataclass(frozen=True)
class Subspace:
    n: int
    elements: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.elements).bit_length() - 1

    @property
    def basis(self) -> list[int]:
        return gf2_basis(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def array(self) -> np.ndarray:
        return np.array(self.elements, dtype=np.int64)


def span(vectors, n: int) -> Subspace:
    E = {0}
    for b in gf2_basis(vectors):
        E |= {e ^ b for e in E}
    return Subspace(n, tuple(sorted(E)))


def orthogonal_complement(vectors, n: int) -> Subspace:
    """{x : x . y = 0 for every y}, increasing."""
    pts = np.arange(1 << n, dtype=np.uint32)
    keep = np.ones(1 << n, dtype=bool)
    for y in vectors:
        keep &= (np.bitwise_count(pts & np.uint32(y)) & 1) == 0
    return Subspace(n, tuple(np.flatnonzero(keep).tolist()))


def restrict(f: BooleanFunction, V: Subspace, a: int) -> BooleanFunction:
    """g(x_i) = f(a ^ v_i) on F2^dim(V)."""
    if V.n != f.n:
        raise DimensionMismatch(f"subspace of F2^{V.n} vs f on {f.n} variables")
    return BooleanFunction(V.dim, f.table[a ^ V.array()])


def coset_representatives(alpha: int, beta: int, n: int) -> tuple[int, int, int, int]:
    if not (alpha and beta) or alpha == beta:
        raise ValueError("alpha and beta must be distinct and nonzero")
    V = orthogonal_complement([alpha, beta], n)
    if all(q not in V for q in (alpha, beta, alpha ^ beta)):
        a, b = alpha, beta
    else:
        a = min(x for x in range(1 << n) if dot(x, alpha) and not dot(x, beta))
        b = min(x for x in range(1 << n) if not dot(x, alpha) and dot(x, beta))
    return (0, a, b, a ^ b)


KINDS = ("Bent4", "SemiBent4", "FiveValued4")


@dataclass(frozen=True)
class QuadrupleReport:
    """Checks of the five-valued decomposition criterion."""

    disjoint_large_supports: bool
    equal_small_supports: bool
    dual_sum_one: bool

    @property
    def ok(self) -> bool:
        return self.disjoint_large_supports and self.equal_small_supports and self.dual_sum_one

    def to_json(self) -> dict:
        return {
            "disjoint_large_supports": self.disjoint_large_supports,
            "equal_small_supports": self.equal_small_supports,
            "dual_sum_one": self.dual_sum_one,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class Decomposition:
    n: int
    alpha: int
    beta: int
    V: Subspace
    Q: tuple[int, int, int, int]
    restrictions: tuple[BooleanFunction, ...]
    classes: tuple[SpectralClass, ...]
    kind: str
    criteria: dict = field(compare=False)

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "Q": list(self.Q),
            "kind": self.kind,
            "restrictions": [str(c) for c in self.classes],
            "criteria": self.criteria,
        }


def _spectra(fs) -> list[WalshSpectrum]:
    return [wht(f) for f in fs]


def bent_dual_sum_is_one(spectra: list[WalshSpectrum]) -> bool:
    """For four bent spectra: f1* ^ f2* ^ f3* ^ f4* == 1 everywhere."""
    signs = np.prod([np.sign(W.values) for W in spectra], axis=0)
    return bool((signs == -1).all())


def pairwise_disjoint_supports(spectra: list[WalshSpectrum]) -> bool:
    masks = [W.values != 0 for W in spectra]
    return all(not (x & y).any() for x, y in combinations(masks, 2))


def _five_valued_kind(c: SpectralClass, k: int) -> bool:
    return (
        c.is_five_valued
        and k % 2 == 0
        and c.amplitudes == (1 << (k // 2), 1 << (k // 2 + 1))
    )


def verify_5valued_quadruple(*fs: BooleanFunction) -> QuadrupleReport:
    """Check the two clauses on four five-valued functions on F2^(n-2).

    The smaller-amplitude duals are compared as sign products over the
    common support, which does not depend on any base-point convention.
    """
    if len(fs) != 4:
        raise ValueError("need exactly four functions")
    k = fs[0].n
    if any(f.n != k for f in fs):
        raise DimensionMismatch("functions differ in number of variables")
    spectra = _spectra(fs)
    for i, W in enumerate(spectra, start=1):
        c = classify(W)
        if not _five_valued_kind(c, k):
            raise WrongSpectralShape(
                f"f{i} is {c}, expected |W| in {{0, {1 << (k // 2)}, {1 << (k // 2 + 1)}}}"
            )
    big, small = 1 << (k // 2 + 1), 1 << (k // 2)
    large = [np.abs(W.values) == big for W in spectra]
    low = [np.abs(W.values) == small for W in spectra]
    disjoint = all(not (x & y).any() for x, y in combinations(large, 2))
    equal = all(np.array_equal(low[0], m) for m in low[1:])
    dual_one = False
    if equal:
        idx = np.flatnonzero(low[0])
        signs = np.prod([np.sign(W.values[idx]) for W in spectra], axis=0)
        dual_one = bool((signs == -1).all())
    return QuadrupleReport(disjoint, equal, dual_one)


def four_decompose(f: BooleanFunction, alpha: int, beta: int) -> Decomposition:
    n = f.n
    if not classify(wht(f)).is_bent:
        raise NotBent("input not bent")
    V = orthogonal_complement([alpha, beta], n)
    Q = coset_representatives(alpha, beta, n)
    parts = tuple(restrict(f, V, q) for q in Q)
    spectra = _spectra(parts)
    classes = tuple(classify(W) for W in spectra)
    k = n - 2
    criteria: dict = {}
    if all(c.is_bent for c in classes):
        kind = "Bent4"
        criteria["dual_sum_one"] = bent_dual_sum_is_one(spectra)
    elif all(c.semi_bent for c in classes):
        kind = "SemiBent4"
        criteria["pairwise_disjoint"] = pairwise_disjoint_supports(spectra)
    elif all(_five_valued_kind(c, k) for c in classes):
        kind = "FiveValued4"
        criteria.update(verify_5valued_quadruple(*parts).to_json())
    else:
        raise TrichotomyViolated(
            f"mixed restriction classes {[str(c) for c in classes]} for alpha={alpha}, beta={beta}"
        )
    return Decomposition(n, alpha, beta, V, Q, parts, classes, kind, criteria)


def concatenate_4(fs, alpha: int, beta: int) -> BooleanFunction:
    """Place f1..f4 on the cosets (0, a, b, a^b) + V; inverse of the restrictions."""
    fs = list(fs)
    if len(fs) != 4:
        raise ValueError("need exactly four functions")
    k = fs[0].n
    if any(f.n != k for f in fs):
        raise DimensionMismatch("functions differ in number of variables")
    n = k + 2
    if gf2_rank([alpha, beta]) != 2:
        raise ValueError("alpha and beta must be linearly independent")
    V = orthogonal_complement([alpha, beta], n)
    Q = coset_representatives(alpha, beta, n)
    table = np.zeros(1 << n, dtype=np.uint8)
    varr = V.array()
    for q, g in zip(Q, fs):
        table[q ^ varr] = g.table
    return BooleanFunction(n, table)
