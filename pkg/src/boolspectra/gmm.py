"""Five-valued functions from concatenated linear functions of two widths.

On prefixes x_(1..s) in E0 the function is phi0(prefix) . x_(s+1..n); on the
remaining (s+t)-prefixes it is phi1(prefix) . x_(s+t+1..n).  Vectors are
ints in the global MSB-first order, so x_(1..s) is ``X >> (n - s)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import BooleanFunction, WalshSpectrum, resiliency_order, wht
from .errors import CaseConditionViolated, Infeasible, NotInjective


def _wt(x: int) -> int:
    return x.bit_count()


@dataclass(frozen=True)
class GmmSpec:
    n: int
    s: int
    t: int
    E0: tuple[int, ...]
    phi0: dict[int, int] = field(hash=False)
    phi1: dict[int, int] = field(hash=False)

    def __post_init__(self):
        n, s, t = self.n, self.s, self.t
        object.__setattr__(self, "E0", tuple(sorted(set(self.E0))))
        if not 1 <= s <= n // 2:
            raise ValueError(f"s must lie in [1, {n // 2}]")
        if not 0 <= t <= n // 2 or s + t > n:
            raise ValueError(f"t must lie in [0, {n // 2}] with s + t <= n")
        if any(not 0 <= e < 1 << s for e in self.E0):
            raise ValueError("E0 must be a subset of F2^s")
        if set(self.phi0) != set(self.E0):
            raise CaseConditionViolated("phi0 domain is not E0")
        if set(self.phi1) != set(self.E1):
            raise CaseConditionViolated("phi1 domain is not E1 = (F2^s minus E0) x F2^t")
        for name, phi, width in (("phi0", self.phi0, n - s), ("phi1", self.phi1, n - s - t)):
            if any(not 0 <= y < 1 << width for y in phi.values()):
                raise CaseConditionViolated(f"{name} leaves F2^{width}")
            if len(set(phi.values())) != len(phi):
                raise NotInjective(f"{name} not injective")

    @property
    def E1(self) -> list[int]:
        e0 = set(self.E0)
        return [(e << self.t) | z for e in range(1 << self.s) if e not in e0 for z in range(1 << self.t)]

    @property
    def T0(self) -> set[int]:
        return set(self.phi0.values())

    @property
    def T1(self) -> set[int]:
        return set(self.phi1.values())

    @property
    def case(self) -> str:
        return "a" if self.t else "b"

    @property
    def m0(self) -> int:
        return min((_wt(y) for y in self.T0), default=self.n)

    @property
    def m1(self) -> int:
        return min((_wt(y) for y in self.T1), default=self.n)

    def check_case(self) -> None:
        """Raise CaseConditionViolated naming the failing clause."""
        if self.t:
            low = (1 << (self.n - self.s - self.t)) - 1
            bad = sorted(y for y in self.T0 if (y & low) in self.T1)
            if bad:
                raise CaseConditionViolated(
                    "T0 not contained in F2^t x complement(T1)", f"phi0 image {bad[0]}"
                )
        else:
            if not self.T0 & self.T1:
                raise CaseConditionViolated("T0 and T1 disjoint", "case b needs an overlap")
            if self.T0 == self.T1:
                raise CaseConditionViolated("T0 equals T1", "case b needs T0 != T1")

    def value_set(self) -> set[int]:
        """The guaranteed superset of Walsh values."""
        a = 1 << (self.n - self.s)
        b = a >> self.t if self.t else a << 1
        return {0, a, -a, b, -b}

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "s": self.s,
            "t": self.t,
            "E0": list(self.E0),
            "phi0": {str(k): v for k, v in sorted(self.phi0.items())},
            "phi1": {str(k): v for k, v in sorted(self.phi1.items())},
        }

    @classmethod
    def from_json(cls, obj: dict) -> GmmSpec:
        return cls(
            int(obj["n"]),
            int(obj["s"]),
            int(obj["t"]),
            tuple(int(e) for e in obj["E0"]),
            {int(k): int(v) for k, v in obj["phi0"].items()},
            {int(k): int(v) for k, v in obj["phi1"].items()},
        )


def build_gmm(spec: GmmSpec, *, check: bool = True) -> BooleanFunction:
    if check:
        spec.check_case()
    n, s, t = spec.n, spec.s, spec.t
    X = np.arange(1 << n, dtype=np.int64)
    pre_s = X >> (n - s)
    pre_st = X >> (n - s - t)
    suf0 = X & ((1 << (n - s)) - 1)
    suf1 = X & ((1 << (n - s - t)) - 1)
    a0 = np.zeros(1 << s, dtype=np.int64)
    in0 = np.zeros(1 << s, dtype=bool)
    for e, y in spec.phi0.items():
        a0[e], in0[e] = y, True
    a1 = np.zeros(1 << (s + t), dtype=np.int64)
    for e, y in spec.phi1.items():
        a1[e] = y
    lin0 = np.bitwise_count(a0[pre_s] & suf0) & 1
    lin1 = np.bitwise_count(a1[pre_st] & suf1) & 1
    return BooleanFunction(n, np.where(in0[pre_s], lin0, lin1).astype(np.uint8))


def gmm_partial_sums(spec: GmmSpec) -> tuple[np.ndarray, np.ndarray]:
    """S1 and S2 at every omega, evaluated term by term (no transform of f).

    S1(omega) = 2^(n-s) (-1)^(omega_pre . eta) when phi0(eta) = omega_(s+1..n),
    and S2 likewise over E1 with width n-s-t.
    """
    n, s, t = spec.n, spec.s, spec.t
    S1 = np.zeros(1 << n, dtype=np.int64)
    S2 = np.zeros(1 << n, dtype=np.int64)
    for eta, y in spec.phi0.items():
        for p in range(1 << s):
            S1[(p << (n - s)) | y] += (-1) ** _wt(p & eta) << (n - s)
    w = n - s - t
    for theta, y in spec.phi1.items():
        for p in range(1 << (s + t)):
            S2[(p << w) | y] += (-1) ** _wt(p & theta) << w
    return S1, S2


def gmm_resiliency_bound(spec: GmmSpec) -> int:
    """min(m0, m1): smallest Hamming weight over the images of phi0 and phi1."""
    return min(spec.m0, spec.m1)


@dataclass(frozen=True)
class GmmReport:
    f: BooleanFunction
    spectrum: WalshSpectrum
    guaranteed: set[int]
    realized: set[int]
    resiliency: int
    bound: int

    @property
    def inside(self) -> bool:
        return self.realized <= self.guaranteed

    def to_json(self) -> dict:
        return {
            "guaranteed": sorted(self.guaranteed),
            "realized": sorted(self.realized),
            "inside": self.inside,
            "resiliency": self.resiliency,
            "weight_bound": self.bound,
        }


def gmm_report(spec: GmmSpec) -> GmmReport:
    f = build_gmm(spec)
    W = wht(f)
    return GmmReport(
        f,
        W,
        spec.value_set(),
        set(np.unique(W.values).tolist()),
        resiliency_order(W),
        gmm_resiliency_bound(spec),
    )


# -- instance factories -------------------------------------------------------


def _points(width: int, min_weight: int) -> list[int]:
    return [y for y in range(1 << width) if _wt(y) >= min_weight]


def gmm_default_maps(n: int, s: int, t: int, e0_size: int, min_weight: int = 0) -> GmmSpec:
    """Deterministic spec: E0 = the first ``e0_size`` prefixes, images taken in increasing order."""
    if not 1 <= e0_size <= 1 << s:
        raise Infeasible(f"|E0| must lie in [1, {1 << s}]")
    E0 = list(range(e0_size))
    E1 = [(e << t) | z for e in range(e0_size, 1 << s) for z in range(1 << t)]
    if t:
        w = n - s - t
        c1 = _points(w, min_weight)
        if len(c1) < len(E1):
            raise Infeasible(f"{len(E1)} images needed in F2^{w}, {len(c1)} of weight >= {min_weight}")
        T1 = c1[: len(E1)]
        t1 = set(T1)
        c0 = [y for y in _points(n - s, min_weight) if (y & ((1 << w) - 1)) not in t1]
        if len(c0) < e0_size:
            raise Infeasible(f"{e0_size} images needed outside F2^t x T1, {len(c0)} available")
        T0 = c0[:e0_size]
    else:
        c = _points(n - s, min_weight)
        if len(c) < e0_size or len(E1) < 1:
            raise Infeasible("not enough image points")
        T0 = c[:e0_size]
        rest = [y for y in c if y not in set(T0)]
        T1 = [T0[0]] + rest[: len(E1) - 1]
        if len(T1) < len(E1):
            raise Infeasible("not enough image points for phi1")
        if set(T1) == set(T0):
            raise Infeasible("case b needs T0 != T1, impossible with |E0| = |E1| = 1")
    spec = GmmSpec(n, s, t, tuple(E0), dict(zip(E0, T0)), dict(zip(E1, T1)))
    spec.check_case()
    return spec


def random_gmm_spec(
    rng: np.random.Generator, n: int, s: int, t: int, min_weight: int = 0, e0_size: int | None = None
) -> GmmSpec:
    """A random valid spec for case a (t > 0) or case b (t = 0)."""
    if e0_size is None:
        e0_size = int(rng.integers(1, 1 << s))
    E0 = sorted(rng.choice(1 << s, size=e0_size, replace=False).tolist())
    e0 = set(E0)
    E1 = [(e << t) | z for e in range(1 << s) if e not in e0 for z in range(1 << t)]
    if t:
        w = n - s - t
        c1 = _points(w, min_weight)
        if len(c1) < len(E1):
            raise Infeasible("codomain of phi1 too small")
        T1 = rng.permutation(c1)[: len(E1)].tolist()
        t1 = set(T1)
        c0 = [y for y in _points(n - s, min_weight) if (y & ((1 << w) - 1)) not in t1]
        if len(c0) < len(E0):
            raise Infeasible("codomain of phi0 too small")
        T0 = rng.permutation(c0)[: len(E0)].tolist()
    else:
        c = _points(n - s, min_weight)
        if len(c) < max(len(E0), len(E1)) or len(E0) + len(E1) < 3:
            raise Infeasible("case b needs |E0| + |E1| >= 3 and room for both images")
        for _ in range(100):
            T0 = rng.permutation(c)[: len(E0)].tolist()
            T1 = rng.permutation(c)[: len(E1)].tolist()
            if set(T0) & set(T1) and set(T0) != set(T1):
                break
        else:
            raise Infeasible("no overlapping, distinct image pair found")
    spec = GmmSpec(n, s, t, tuple(E0), dict(zip(E0, T0)), dict(zip(E1, T1)))
    spec.check_case()
    return spec
