"""Composite-form (ANF-domain) constructions of five-valued functions.

A composite form is f(H(x)) = f(h_1(x), ..., h_k(x)) with a small "form"
f on F2^k.  Its spectrum follows from the form's spectrum and the spectra of
the component combinations w . H, which is what :func:`cf_wht` and
:func:`split_wht` evaluate.  The construct_* functions check the named
clauses of each recipe and raise :class:`ConditionViolated` naming the first
one that fails.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    BooleanFunction,
    SpectralClass,
    WalshSpectrum,
    algebraic_degree,
    classify,
    wht,
)
from .errors import (
    ConditionViolated,
    DimensionMismatch,
    DualSumNotOne,
    NotBent,
    ShapeMismatch,
    SupportsOverlap,
)
from .expr import parse_expression
from .io import parse_truth_table_hex
from .spectral import construct_plateaued
from .support import OrderedSupport, dual

# The 2-plateaued form on F2^6 with support I_4 x F2^2 and the 3-plateaued
# form on F2^5, as hex truth tables; both are regenerated from their
# (support, dual) recipes in the test-suite.
PLATEAUED_FORM_6_HEX = "0123456789abcdef"
PLATEAUED_FORM_5_HEX = "535caca3"
C1_FORM_HEX = "1248edb7"

PLATEAUED_FORM_6_ANF = "(x2 + x2x5 + x4x5)x6 + x3x5(1 + x6) + x1(1 + x5)(1 + x6)"
PLATEAUED_FORM_5_ANF = "x1 + x5 + x3(x2 + x4 + x5)"
C1_FORM_ANF = "x1 + (x2 + x4)(x3 + x5)"


def plateaued_form_6_recipe() -> tuple[OrderedSupport, BooleanFunction]:
    """Support rows (I_4 x {00}), ..., (I_4 x {11}) and dual (x1,x2).(x3,x4)."""
    rows = [((8 >> i) << 2) | v for v in range(4) for i in range(4)]
    return OrderedSupport.from_sequence(6, rows), parse_expression("x1x3 + x2x4", 4)


def plateaued_form_5_recipe() -> tuple[OrderedSupport, BooleanFunction]:
    rows = [0b10001, 0b10101, 0b11010, 0b11110]
    return OrderedSupport.from_sequence(5, rows), parse_expression("x1x2", 2)


def plateaued_form_6() -> BooleanFunction:
    return parse_truth_table_hex(PLATEAUED_FORM_6_HEX)


def plateaued_form_5() -> BooleanFunction:
    return parse_truth_table_hex(PLATEAUED_FORM_5_HEX)


def c1_form() -> BooleanFunction:
    return parse_truth_table_hex(C1_FORM_HEX)


# -- embedding helpers --------------------------------------------------------


def lift_x(h: BooleanFunction, m: int) -> BooleanFunction:
    """h(x) viewed on F2^r x F2^m (independent of the trailing m variables)."""
    return BooleanFunction(h.n + m, np.repeat(h.table, 1 << m))


def lift_y(g: BooleanFunction, r: int) -> BooleanFunction:
    """g(y) viewed on F2^r x F2^m (independent of the leading r variables)."""
    return BooleanFunction(r + g.n, np.tile(g.table, 1 << r))


def combine(coords: list[BooleanFunction], w: int) -> BooleanFunction:
    """w . (h_1, ..., h_k) with w_1 the most significant bit."""
    k = len(coords)
    out = np.zeros(coords[0].size, dtype=np.uint8)
    for i, h in enumerate(coords, start=1):
        if (w >> (k - i)) & 1:
            out ^= h.table
    return BooleanFunction(coords[0].n, out)


def is_affine(f: BooleanFunction) -> bool:
    return algebraic_degree(f) <= 1


# -- composite forms ----------------------------------------------------------


@dataclass(frozen=True)
class CompositeForm:
    form: BooleanFunction
    coords: tuple[BooleanFunction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if len(self.coords) != self.form.n:
            raise DimensionMismatch(f"form has {self.form.n} variables, got {len(self.coords)} coordinates")
        if len({h.n for h in self.coords}) != 1:
            raise DimensionMismatch("coordinate functions differ in n")

    @property
    def k(self) -> int:
        return self.form.n

    @property
    def n(self) -> int:
        return self.coords[0].n

    def evaluate(self) -> BooleanFunction:
        idx = np.zeros(1 << self.n, dtype=np.int64)
        for h in self.coords:
            idx = (idx << 1) | h.table
        return BooleanFunction(self.n, self.form.table[idx])


def cf_spectrum(cf: CompositeForm, *, use_support: bool = False) -> WalshSpectrum:
    """W(u) = 2^-k sum_w W_form(w) W_{w.H}(u) for every u.

    With ``use_support`` the form must be plateaued and only its Walsh
    support contributes, as 2^((s-k)/2) sum_{w in S} (-1)^{f*(w)} W_{w.H}(u).
    """
    Wf = wht(cf.form)
    coords = list(cf.coords)
    acc = np.zeros(1 << cf.n, dtype=np.int64)
    if use_support:
        c = classify(Wf)
        if not (c.is_plateaued or c.is_bent):
            raise ConditionViolated("form not plateaued", str(c))
        s = c.s
        for w in Wf.support():
            sign = 1 if Wf[w] > 0 else -1
            acc += sign * wht(combine(coords, w)).values
        # 2^((s-k)/2) with s - k possibly odd is never needed: s = 2e - k.
        shift = (cf.k - s) // 2
        num, den = acc, 1 << shift
    else:
        for w in np.flatnonzero(Wf.values):
            acc += int(Wf[w]) * wht(combine(coords, int(w))).values
        num, den = acc, 1 << cf.k
    if (num % den).any():
        raise AssertionError("composite transform is not integral")
    return WalshSpectrum(cf.n, num // den)


def cf_wht(cf: CompositeForm, u: int, *, use_support: bool = False) -> int:
    return int(cf_spectrum(cf, use_support=use_support)[u])


@dataclass(frozen=True)
class SplitSupport:
    """A form's Walsh support split into t-bit prefixes delta and m-bit suffixes theta."""

    support: OrderedSupport
    t: int

    @property
    def m(self) -> int:
        return self.support.n - self.t

    def pairs(self) -> list[tuple[int, int]]:
        m = self.m
        return [(w >> m, w & ((1 << m) - 1)) for w in self.support.omegas]

    @property
    def Delta(self) -> set[int]:
        return {d for d, _ in self.pairs()}

    @property
    def Theta(self) -> set[int]:
        return {th for _, th in self.pairs()}

    @property
    def theta_is_multiset(self) -> bool:
        ths = [th for _, th in self.pairs()]
        return len(ths) != len(set(ths))

    def delta_of_theta(self) -> dict[int, int]:
        """theta -> delta, defined for the suffixes that occur exactly once."""
        seen: dict[int, list[int]] = {}
        for d, th in self.pairs():
            seen.setdefault(th, []).append(d)
        return {th: ds[0] for th, ds in seen.items() if len(ds) == 1}


def split_support(form: BooleanFunction, t: int) -> SplitSupport:
    W = wht(form)
    return SplitSupport(OrderedSupport.from_points(form.n, W.support()), t)


def _check_split_shape(cf: CompositeForm, t: int) -> tuple[int, int]:
    k, n = cf.k, cf.n
    m = k - t
    r = n - m
    if not 1 <= t <= k or r < 0:
        raise ShapeMismatch(f"t={t} incompatible with k={k}, n={n}")
    ys = [BooleanFunction.linear(n, 1 << (m - 1 - i)) for i in range(m)]
    for i, y in enumerate(ys):
        if cf.coords[t + i] != y:
            raise ShapeMismatch(f"coordinate {t + i + 1} is not y{i + 1}")
    for i in range(t):
        tab = cf.coords[i].table.reshape(1 << r, 1 << m)
        if not (tab == tab[:, :1]).all():
            raise ShapeMismatch(f"coordinate {i + 1} depends on y")
    return r, m


def split_wht(
    cf: CompositeForm, ss: SplitSupport, shift: BooleanFunction | None = None
) -> WalshSpectrum:
    """Spectrum of shift(x) + f(h_1(x), ..., h_t(x), y) from the split support.

    W(u, v) = 2^-t sum_{(delta, v) in S} W_form(delta, v) W_{shift + delta.(h_1..h_t)}(u)
    when v is a suffix of S, and 0 otherwise.
    """
    t = ss.t
    r, m = _check_split_shape(cf, t)
    Wf = wht(cf.form)
    xcoords = [
        BooleanFunction(r, h.table.reshape(1 << r, 1 << m)[:, 0]) for h in cf.coords[:t]
    ]
    if shift is not None and shift.n != r:
        raise ShapeMismatch(f"shift must live on F2^{r}")
    cache: dict[int, np.ndarray] = {}
    out = np.zeros((1 << r, 1 << m), dtype=np.int64)
    for delta, v in ss.pairs():
        if delta not in cache:
            g = combine(xcoords, delta)
            if shift is not None:
                g = g ^ shift
            cache[delta] = wht(g).values
        out[:, v] += int(Wf[(delta << m) | v]) * cache[delta]
    if (out % (1 << t)).any():
        raise AssertionError("split transform is not integral")
    return WalshSpectrum(r + m, (out >> t).reshape(-1))


# -- C1: a(x) + (h1(x) + y1)(h2(x) + y2) ---------------------------------------

C1_ROWS = {
    1: "a bent, h1 = h2 = g, a+g semi-bent",
    2: "a bent, h1 affine, a+h2 semi-bent",
    3: "a five-valued, h1 and h2 affine",
    4: "a five-valued, h1 affine, a+h2 bent or semi-bent",
}


def _cls(f: BooleanFunction) -> SpectralClass:
    return classify(wht(f))


def c1_coords(a, h1, h2) -> list[BooleanFunction]:
    r = a.n
    return [lift_x(a, 2), lift_x(h1, 2), lift_x(h2, 2),
            BooleanFunction.linear(r + 2, 2), BooleanFunction.linear(r + 2, 1)]


def construct_c1(a: BooleanFunction, h1: BooleanFunction, h2: BooleanFunction, row: int) -> BooleanFunction:
    """a(x) + (h1(x) + y1)(h2(x) + y2) on F2^(r+2), guarded by one condition row."""
    if row not in C1_ROWS:
        raise ValueError(f"row must be one of {sorted(C1_ROWS)}")
    r = a.n
    if h1.n != r or h2.n != r:
        raise DimensionMismatch("a, h1, h2 must share n")
    if r % 2:
        raise ConditionViolated(f"row {row}: r must be even", f"r={r}")
    ca = _cls(a)
    if row in (1, 2) and not ca.is_bent:
        raise ConditionViolated(f"row {row}: a not bent", str(ca))
    if row in (3, 4) and not ca.is_five_valued:
        raise ConditionViolated(f"row {row}: a not five-valued", str(ca))
    if row == 1:
        if h1 != h2:
            raise ConditionViolated("row 1: h1 != h2")
        if not _cls(a ^ h1).semi_bent:
            raise ConditionViolated("row 1: a+g not semi-bent", str(_cls(a ^ h1)))
    elif row == 2:
        if not is_affine(h1):
            raise ConditionViolated("row 2: h1 not affine")
        if not _cls(a ^ h2).semi_bent:
            raise ConditionViolated("row 2: a+h2 not semi-bent", str(_cls(a ^ h2)))
    elif row == 3:
        if not is_affine(h1):
            raise ConditionViolated("row 3: h1 not affine")
        if not is_affine(h2):
            raise ConditionViolated("row 3: h2 not affine")
    else:
        if not is_affine(h1):
            raise ConditionViolated("row 4: h1 not affine")
        c = _cls(a ^ h2)
        if not (c.is_bent or c.semi_bent):
            raise ConditionViolated("row 4: a+h2 not bent or semi-bent", str(c))

    f = CompositeForm(c1_form(), c1_coords(a, h1, h2)).evaluate()
    cf = _cls(f)
    if not cf.is_five_valued:
        if row in (1, 2):
            raise AssertionError(f"row {row} produced {cf}")
        raise ConditionViolated(f"row {row}: result not five-valued", str(cf))
    return f


def _bent_duals_xor(fs: list[BooleanFunction]) -> np.ndarray:
    """Pointwise XOR of the duals of bent functions on a common F2^r."""
    acc = np.zeros(fs[0].size, dtype=np.uint8)
    for f in fs:
        acc ^= (wht(f).values < 0).astype(np.uint8)
    return acc


def _pairwise_disjoint(fs: list[BooleanFunction]) -> bool:
    masks = [wht(f).values != 0 for f in fs]
    return all(not (masks[i] & masks[j]).any() for i in range(len(fs)) for j in range(i + 1, len(fs)))


def construct_c2_quadruple(a: list[BooleanFunction], d: list[BooleanFunction]) -> tuple[BooleanFunction, ...]:
    """Four C1 (row 1) functions with g_i = a_i + d_i for a 5-valued 4-decomposition.

    Needs bent a_i whose duals XOR to 1 and pairwise disjoint-spectra
    semi-bent d_i.
    """
    if len(a) != 4 or len(d) != 4:
        raise ValueError("need four a_i and four d_i")
    r = a[0].n
    if any(f.n != r for f in list(a) + list(d)):
        raise DimensionMismatch("all inputs must share n")
    if r < 4 or r % 2:
        raise ConditionViolated("r must be even and at least 4", f"r={r}")
    for i, ai in enumerate(a, start=1):
        if not _cls(ai).is_bent:
            raise NotBent(f"a{i} not bent")
    for i, di in enumerate(d, start=1):
        if not _cls(di).semi_bent:
            raise ConditionViolated(f"d{i} not semi-bent", str(_cls(di)))
    if not (_bent_duals_xor(list(a)) == 1).all():
        raise DualSumNotOne("a1* + a2* + a3* + a4* != 1")
    if not _pairwise_disjoint(list(d)):
        raise SupportsOverlap("d_i Walsh supports overlap")
    out = []
    for ai, di in zip(a, d):
        g = ai ^ di
        out.append(construct_c1(ai, g, g, row=1))
    return tuple(out)


# -- C3: the 2-plateaued form on F2^6 with four x-coordinates --------------------


def _c3_clauses(h: list[BooleanFunction], label: str = "") -> None:
    r = h[0].n
    for p in range(3):
        c = _cls(h[p])
        if not (c.is_plateaued and c.s == 2):
            raise ConditionViolated(f"{label}h{p + 1} not 2-plateaued", str(c))
    c = _cls(h[3])
    if not (c.is_plateaued and c.s == 4):
        raise ConditionViolated(f"{label}h4 not 4-plateaued", str(c))
    if not _pairwise_disjoint(list(h)):
        raise ConditionViolated(f"{label}h1..h4 not pairwise disjoint spectra")
    if r < 6 or r % 2:
        raise ConditionViolated("r must be even and at least 6", f"r={r}")


def construct_c3(h: list[BooleanFunction]) -> BooleanFunction:
    """f(h1(x), h2(x), h3(x), h4(x), y1, y2) with f the 2-plateaued form on F2^6."""
    if len(h) != 4:
        raise ValueError("need four coordinate functions")
    r = h[0].n
    if any(x.n != r for x in h):
        raise DimensionMismatch("h_i must share n")
    _c3_clauses(list(h))
    coords = [lift_x(x, 2) for x in h] + [
        BooleanFunction.linear(r + 2, 2),
        BooleanFunction.linear(r + 2, 1),
    ]
    return CompositeForm(plateaued_form_6(), coords).evaluate()


def construct_c3_quadruple(grid: list[list[BooleanFunction]]) -> tuple[BooleanFunction, ...]:
    """grid[p][i] is h_{p+1,i+1}: coordinate p of function i."""
    if len(grid) != 4 or any(len(row) != 4 for row in grid):
        raise ValueError("grid must be 4 x 4")
    for i in range(4):
        _c3_clauses([grid[p][i] for p in range(4)], label=f"column {i + 1}: ")
    if not _pairwise_disjoint(list(grid[3])):
        raise SupportsOverlap("h_{4,i} not pairwise disjoint spectra")
    for p in range(3):
        spectra = [wht(grid[p][i]) for i in range(4)]
        masks = [W.values != 0 for W in spectra]
        if not all(np.array_equal(masks[0], mk) for mk in masks[1:]):
            raise ConditionViolated(f"row p={p + 1}: supports of h_{{{p + 1},i}} differ")
        idx = np.flatnonzero(masks[0])
        signs = np.prod([np.sign(W.values[idx]) for W in spectra], axis=0)
        if not (signs == -1).all():
            raise DualSumNotOne(f"row p={p + 1}: dual sum != 1")
    return tuple(construct_c3([grid[p][i] for p in range(4)]) for i in range(4))


# -- C4: the 3-plateaued form on F2^5 with disjoint variable blocks ---------------


def c4_zeta(a: BooleanFunction, h1: BooleanFunction, h2: BooleanFunction) -> BooleanFunction:
    """a* + (a+h1)* + (a+h2)* + (a+h1+h2)* for an affine space of bent functions."""
    fs = [a, a ^ h1, a ^ h2, a ^ h1 ^ h2]
    for f in fs:
        if not _cls(f).is_bent:
            raise NotBent("a + <h1, h2> is not an affine space of bent functions")
    return BooleanFunction(a.n, _bent_duals_xor(fs))


def c4_composite(a, h1, h2, g1, g2) -> CompositeForm:
    r, m = a.n, g1.n
    coords = [lift_x(a, m), lift_x(h1, m), lift_x(h2, m), lift_y(g1, r), lift_y(g2, r)]
    return CompositeForm(plateaued_form_5(), coords)


def construct_c4(
    a: BooleanFunction,
    h1: BooleanFunction,
    h2: BooleanFunction,
    g1: BooleanFunction,
    g2: BooleanFunction,
    case: str,
) -> BooleanFunction:
    """f(a(x), h1(x), h2(x), g1(y), g2(y)) with the 3-plateaued form on F2^5.

    Case "i": a + <h1, h2> bent and g1, g2 bent.  The dual-sum function
    zeta is not required to be constant; the result is accepted only if it
    classifies five-valued.  Case "ii": a 4-plateaued, the other three
    members of a + <h1, h2> 2-plateaued, all four with pairwise disjoint
    supports, g1 and g2 bent.
    """
    r, m = a.n, g1.n
    if h1.n != r or h2.n != r or g2.n != m:
        raise DimensionMismatch("a, h1, h2 share n; g1, g2 share m")
    if r % 2 or m % 2:
        raise ConditionViolated("r and m must be even", f"r={r}, m={m}")
    for name, g in (("g1", g1), ("g2", g2)):
        if not _cls(g).is_bent:
            raise ConditionViolated(f"{name} not bent", str(_cls(g)))
    members = {"a": a, "a+h1": a ^ h1, "a+h2": a ^ h2, "a+h1+h2": a ^ h1 ^ h2}
    if case == "i":
        for name, f in members.items():
            if not _cls(f).is_bent:
                raise ConditionViolated(f"{name} not bent", str(_cls(f)))
    elif case == "ii":
        if r < 6:
            raise ConditionViolated("case ii needs r >= 6", f"r={r}")
        for name, f in members.items():
            want = 4 if name == "a" else 2
            c = _cls(f)
            if not (c.is_plateaued and c.s == want):
                raise ConditionViolated(f"{name} not {want}-plateaued", str(c))
        if not _pairwise_disjoint(list(members.values())):
            raise ConditionViolated("a + <h1, h2> not pairwise disjoint spectra")
    else:
        raise ValueError("case must be 'i' or 'ii'")
    f = c4_composite(a, h1, h2, g1, g2).evaluate()
    c = _cls(f)
    n = r + m
    if not (c.is_five_valued and c.amplitudes == (1 << (n // 2), 1 << (n // 2 + 1))):
        raise ConditionViolated(f"case {case}: result not five-valued", str(c))
    return f


# -- disjoint-spectra input factories -----------------------------------------


def prefix_support(n: int, prefix: int, width: int) -> OrderedSupport:
    """All points of F2^n whose leading ``width`` bits equal ``prefix``."""
    tail = n - width
    return OrderedSupport.from_offsets(n, prefix << tail, range(1 << tail))


def plateaued_on_prefix(n: int, prefix: int, width: int, dual_fn: BooleanFunction) -> BooleanFunction:
    """width-plateaued function on F2^n whose support is a prefix coset."""
    return construct_plateaued(prefix_support(n, prefix, width), dual_fn)


def disjoint_semi_bent_family(r: int, duals: list[BooleanFunction]) -> list[BooleanFunction]:
    """Four 2-plateaued functions on F2^r supported on the cosets {p} x F2^(r-2)."""
    return [plateaued_on_prefix(r, p, 2, g) for p, g in enumerate(duals)]


def dual_of(f: BooleanFunction) -> BooleanFunction:
    return dual(wht(f)).g
