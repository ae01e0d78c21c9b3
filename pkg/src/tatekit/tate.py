"""Tate cohomology over a tower window.

``H^n(A, M)`` is the stable Hom space from ``T_n = Omega^n k`` to ``M``.  A
class is a homomorphism ``T_n -> M`` read modulo maps factoring through a
projective; products compose with shifted representatives:

    alpha . beta = alpha o Omega^a(beta)        (alpha in degree a)

For a module ``M`` the action of ``alpha`` in degree ``a`` on ``mu`` in degree
``b`` is ``(-1)^(ab) mu o Omega^b(alpha)``, which agrees with the cup product
when ``M = k``.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass, field

import numpy as np

from .algebra import Report
from .modlinalg import Solver, kernel_basis, mm, rank, tdot
from .stmod import ExtensionSeq, Mod, ModMap, StableHom
from .structure import Tower, WindowError, blocks, summand_generator


class DegenerateDuality(Exception):
    """``H^{-1}(A, k)`` is not one-dimensional."""


@dataclass(eq=False)
class TateClass:
    degree: int
    rep: ModMap
    space: StableHom

    @property
    def target(self) -> Mod:
        return self.rep.tgt

    @property
    def coords(self) -> np.ndarray:
        return self.space.coords(self.rep)

    def is_zero(self) -> bool:
        return self.space.is_zero(self.rep)

    def __add__(self, other: "TateClass") -> "TateClass":
        if other.degree != self.degree:
            raise ValueError("adding classes of degrees %d and %d" % (self.degree, other.degree))
        return TateClass(self.degree, self.rep + other.rep, self.space)

    def scale(self, c) -> "TateClass":
        return TateClass(self.degree, self.rep.scale(c), self.space)

    def __eq__(self, other):
        if not isinstance(other, TateClass):
            return NotImplemented
        return self.degree == other.degree and self.space.is_zero(self.rep - other.rep)

    def __repr__(self):
        return "TateClass(deg=%d, coords=%s)" % (self.degree, self.coords.tolist())


@dataclass
class GradedDims:
    lo: int
    hi: int
    dims: list

    def __post_init__(self):
        if self.lo > self.hi or len(self.dims) != self.hi - self.lo + 1:
            raise ValueError("bad graded window [%d, %d] for %d entries" % (self.lo, self.hi, len(self.dims)))

    def __getitem__(self, n: int) -> int:
        if not self.lo <= n <= self.hi:
            raise WindowError("degree %d outside [%d, %d]" % (n, self.lo, self.hi))
        return self.dims[n - self.lo]

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def as_dict(self) -> dict:
        return {n: self[n] for n in self.degrees()}

    def support(self) -> list:
        return [n for n in self.degrees() if self[n]]


def _window(t: Tower, window):
    lo, hi = (-t.D, t.D) if window is None else window
    t.check_window(lo, hi)
    return lo, hi


def cohomology(t: Tower, m: Mod, n: int) -> StableHom:
    return t.stable(n, m)


def tate_dims(t: Tower, m: Mod | None = None, window=None) -> GradedDims:
    m = t.k if m is None else m
    lo, hi = _window(t, window)
    return GradedDims(lo, hi, [t.stable(n, m).dim for n in range(lo, hi + 1)])


def tate_basis(t: Tower, m: Mod | None, n: int) -> list[TateClass]:
    sh = t.stable(n, t.k if m is None else m)
    return [TateClass(n, f, sh) for f in sh.coset_reps]


def make_class(t: Tower, n: int, coords, m: Mod | None = None) -> TateClass:
    sh = t.stable(n, t.k if m is None else m)
    return TateClass(n, sh.rep(coords), sh)


def unit_class(t: Tower) -> TateClass:
    sh = t.stable(0)
    return TateClass(0, ModMap.identity(t.k), sh)


def _compose(t: Tower, outer: TateClass, inner: TateClass, sign=1) -> TateClass:
    """``outer o Omega^{deg outer}(inner)`` as a class of degree ``a + b``."""
    a, b = outer.degree, inner.degree
    t.check_window(a + b)
    shifted = t.shift(inner.rep, a)
    rep = outer.rep @ shifted
    return TateClass(a + b, rep.scale(sign) if sign != 1 else rep, t.stable(a + b, outer.target))


def cup(t: Tower, alpha: TateClass, beta: TateClass, route: str = "direct") -> TateClass:
    """Cup product of classes in ``H^*(A, k)``.

    ``route="direct"`` always computes ``alpha o Omega^a(beta)``.  With
    ``route="auto"`` graded commutativity is used to avoid downward shifts
    when one factor has non-negative degree; when both degrees are negative
    the less negative factor is the one that gets shifted.
    """
    a, b = alpha.degree, beta.degree
    if route == "direct":
        return _compose(t, alpha, beta)
    if route != "auto":
        raise ValueError("unknown route %r" % route)
    sign = -1 if (a * b) % 2 else 1
    if a >= 0:
        return _compose(t, alpha, beta)
    if b >= 0:
        return _compose(t, beta, alpha, sign)
    # both negative: shift the factor of larger degree by the other's degree
    if b >= a:
        return _compose(t, alpha, beta)
    return _compose(t, beta, alpha, sign)


def act(t: Tower, alpha: TateClass, mu: TateClass) -> TateClass:
    """Action of ``alpha`` in ``H^*(A, k)`` on ``mu`` in ``H^*(A, M)``."""
    a, b = alpha.degree, mu.degree
    sign = -1 if (a * b) % 2 else 1
    return _compose(t, mu, alpha, sign)


def cup_matrix(t: Tower, xi: TateClass, n: int, m: Mod | None = None) -> np.ndarray:
    """Matrix of ``x -> xi . x`` from ``H^n(A, M)`` to ``H^{n+d}(A, M)`` (columns = images)."""
    m = t.k if m is None else m
    src = tate_basis(t, m, n)
    tgt = t.stable(n + xi.degree, m)
    mat = np.zeros((tgt.dim, len(src)), dtype=np.int64)
    for j, c in enumerate(src):
        prod = cup(t, xi, c) if m is t.k else act(t, xi, c)
        mat[:, j] = tgt.coords(prod.rep)
    return mat


# --------------------------------------------------------------------------
# duality
# --------------------------------------------------------------------------

def pairing_base(t: Tower) -> StableHom:
    sh = t.stable(-1)
    if sh.dim != 1:
        raise DegenerateDuality("H^-1(A,k) has dimension %d" % sh.dim)
    return sh


def duality_pairing(t: Tower, alpha: TateClass, beta: TateClass, route: str = "direct") -> int:
    """``<alpha, beta>`` for degrees ``n - 1`` and ``-n``."""
    if alpha.degree + beta.degree != -1:
        raise ValueError("pairing needs degrees summing to -1, got %d and %d" % (alpha.degree, beta.degree))
    base = pairing_base(t)
    prod = cup(t, alpha, beta, route)
    return int(base.coords(prod.rep)[0])


def pairing_matrix(t: Tower, n: int, route: str = "direct") -> np.ndarray:
    """Gram matrix of the pairing between ``H^{n-1}`` and ``H^{-n}``."""
    left = tate_basis(t, None, n - 1)
    right = tate_basis(t, None, -n)
    base = pairing_base(t)
    out = np.zeros((len(left), len(right)), dtype=np.int64)
    for i, x in enumerate(left):
        for j, y in enumerate(right):
            out[i, j] = base.coords(cup(t, x, y, route).rep)[0]
    return out


# --------------------------------------------------------------------------
# long exact sequences
# --------------------------------------------------------------------------

def _lift_through(t: Tower, n: int, seq: ExtensionSeq, target: np.ndarray) -> np.ndarray:
    """A-map ``P_n -> mid`` whose composite with ``surj`` is ``target`` (matrix ``N x P_n``)."""
    p = t.alg.p
    P = t.P[n]
    b = blocks(t.alg)
    mid = seq.mid
    out = np.zeros((mid.dim, P.dim), dtype=np.int64)
    if not P.summands:
        return out
    gens = np.array([summand_generator(P, j) for j in range(len(P.summands))], dtype=np.int64).T
    want = mm(target, gens, p)
    sol = Solver(seq.surj.mat, p).solve_exact(want)
    for j, lam in enumerate(P.summands):
        y = mid.apply(b.reps[lam], sol[:, j])
        B = P.pieces[lam][0]
        out[:, P.block(j)] = tdot(B, mid.orbit(y), (0, 0), p).T
    return out


def connecting_map(t: Tower, seq: ExtensionSeq, n: int) -> np.ndarray:
    """Matrix of ``delta: H^n(A, N) -> H^{n+1}(A, L)`` in coset coordinates."""
    p = t.alg.p
    t.check_window(n, n + 1)
    src = tate_basis(t, seq.right, n)
    tgt = t.stable(n + 1, seq.left)
    out = np.zeros((tgt.dim, len(src)), dtype=np.int64)
    if not src:
        return out
    inj = Solver(seq.inj.mat, p)
    for j, mu in enumerate(src):
        psi = _lift_through(t, n, seq, mm(mu.rep.mat, t.pi[n].mat, p))
        restricted = mm(psi, t.iota[n + 1].mat, p)
        delta = inj.solve_exact(restricted)
        out[:, j] = tgt.coords(delta)
    return out


def connecting(t: Tower, seq: ExtensionSeq, window=None) -> dict:
    lo, hi = _window(t, window)
    return {n: connecting_map(t, seq, n) for n in range(lo, hi)}


def induced_map(t: Tower, f: ModMap, n: int) -> np.ndarray:
    """``f_*: H^n(A, src) -> H^n(A, tgt)``."""
    src = tate_basis(t, f.src, n)
    tgt = t.stable(n, f.tgt)
    out = np.zeros((tgt.dim, len(src)), dtype=np.int64)
    for j, c in enumerate(src):
        out[:, j] = tgt.coords(f @ c.rep)
    return out


LES = namedtuple("LES", "report dims maps")


def long_exact_sequence(t: Tower, seq: ExtensionSeq, window=None) -> LES:
    """Check exactness of ``H^n(L) -> H^n(M) -> H^n(N) -> H^{n+1}(L)`` over a window."""
    p = t.alg.p
    lo, hi = _window(t, window)
    rep = Report("long exact sequence")
    maps = {}
    dims = {}
    for n in range(lo, hi + 1):
        dims[n] = (t.stable(n, seq.left).dim, t.stable(n, seq.mid).dim, t.stable(n, seq.right).dim)
        maps[("inj", n)] = induced_map(t, seq.inj, n)
        maps[("surj", n)] = induced_map(t, seq.surj, n)
        if n < hi:
            maps[("delta", n)] = connecting_map(t, seq, n)
    chain = []
    for n in range(lo, hi + 1):
        chain.append((("inj", n), dims[n][0]))
        chain.append((("surj", n), dims[n][1]))
        if n < hi:
            chain.append((("delta", n), dims[n][2]))
    for (k_in, _), (k_out, d_mid) in zip(chain, chain[1:]):
        a, b = maps[k_in], maps[k_out]
        if b.size and a.size and np.any(mm(b, a, p)):
            rep.fail("composite nonzero", k_in, k_out)
        if rank(a, p) + rank(b, p) != d_mid:
            rep.fail("not exact", k_in, k_out)
        rep.checked += 1
    return LES(rep, dims, maps)


# --------------------------------------------------------------------------
# multiplication by a class
# --------------------------------------------------------------------------

KernelCokernel = namedtuple("KernelCokernel", "kernel cokernel kernel_bases matrices")


def mxi_kernel_cokernel(t: Tower, xi: TateClass, window=None) -> KernelCokernel:
    """Kernel ``K^s`` (source degree ``s``) and cokernel ``I^s`` (target degree ``s``) of ``xi .``."""
    p = t.alg.p
    lo, hi = _window(t, window)
    d = xi.degree
    kdims, idims, kb, mats = {}, {}, {}, {}
    for s in range(lo, hi + 1):
        if not lo <= s + d <= hi:
            continue
        mat = cup_matrix(t, xi, s)
        mats[s] = mat
        k = kernel_basis(mat, p) if mat.shape[1] else None
        kdims[s] = k.dim if k is not None else 0
        kb[s] = k.basis if k is not None else np.zeros((0, 0), dtype=np.int64)
        idims[s + d] = mat.shape[0] - rank(mat, p)
    return KernelCokernel(kdims, idims, kb, mats)


# --------------------------------------------------------------------------
# module structure
# --------------------------------------------------------------------------

@dataclass
class GradedAction:
    module: Mod
    dims: GradedDims
    bound: int
    tables: dict = field(default_factory=dict)    # (a, b) -> (dim H^a(k), dim H^b(M), dim H^{a+b}(M))

    def image_span(self, a: int, b: int, classes: np.ndarray) -> np.ndarray:
        """Images of coordinate vectors ``classes`` (columns) under all of H^a(k)."""
        tab = self.tables[(a, b)]
        return tdot(tab, classes, (1, 0), self.module.p)


def module_structure(t: Tower, m: Mod, window=None, action_bound: int = 6) -> GradedAction:
    lo, hi = _window(t, window)
    dims = tate_dims(t, m, (lo, hi))
    g = GradedAction(m, dims, action_bound)
    ring = {a: tate_basis(t, None, a) for a in range(max(lo, -action_bound), min(hi, action_bound) + 1)}
    for b in range(lo, hi + 1):
        if not dims[b]:
            continue
        mods = tate_basis(t, m, b)
        for a, alphas in ring.items():
            if not lo <= a + b <= hi or not alphas:
                continue
            tgt = t.stable(a + b, m)
            tab = np.zeros((len(alphas), len(mods), tgt.dim), dtype=np.int64)
            if tgt.dim:
                for i, al in enumerate(alphas):
                    for j, mu in enumerate(mods):
                        prod = cup(t, al, mu) if m is t.k else act(t, al, mu)
                        tab[i, j] = tgt.coords(prod.rep)
            g.tables[(a, b)] = tab
    return g
