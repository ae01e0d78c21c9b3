"""Radical, idempotents, projective covers and the syzygy tower of k.

The Jacobson radical comes from the p-power trace refinement on the regular
representation and is certified afterwards (ideal, nilpotent, semisimple
quotient).  Primitive idempotents are found by splitting corner algebras
``eAe`` with random elements and lifting with ``e <- 3e^2 - 2e^3``.

The tower holds, for every ``n`` in ``(-D, D + 1]``, the short exact sequence

    0 -> T_n --iota_n--> P_{n-1} --pi_{n-1}--> T_{n-1} -> 0

with ``T_0 = k``.  Above zero ``pi`` is a minimal projective cover; below zero
``iota`` is a minimal injective hull, which for a symmetric algebra is again a
projective module.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import sympy

from .algebra import Alg, Report
from .modlinalg import (LinAlgError, Solver, Subspace, image_basis, inverse, kernel_basis, mat_pow, mm,
                        row_basis, solve, tdot)
from .stmod import Mod, ModMap, ProjMod, QuoMod, SubMod

log = logging.getLogger(__name__)


class UnsupportedField(Exception):
    """The semisimple quotient does not split over F_p."""


class NotCertifiedSymmetric(Exception):
    pass


class WindowError(IndexError):
    pass


# --------------------------------------------------------------------------
# radical
# --------------------------------------------------------------------------

def _left_reg(x, table, p):
    return tdot(x, table, (0, 0), p).T


def _trace_refinement(table: np.ndarray, p: int) -> Subspace:
    """Radical of the algebra with structure constants ``table`` (no unit needed)."""
    n = table.shape[0]
    if n == 0:
        return Subspace.zero(0, p)
    depth = 0
    while p ** (depth + 1) <= n:
        depth += 1
    ideal = Subspace.full(n, p)
    for i in range(depth + 1):
        if ideal.dim == 0:
            break
        pi_, q = p ** i, p ** (i + 1)
        vals = np.zeros(ideal.dim, dtype=np.int64)
        for j, b in enumerate(ideal.basis):
            tr = int(np.trace(mat_pow(_left_reg(b, table, p), pi_, q))) % q
            if tr % pi_:
                raise LinAlgError("trace of p-power not divisible at level %d" % i)
            vals[j] = (tr // pi_) % p
        prods = tdot(ideal.basis, table, (1, 0), p)              # (k, y, w) = b_k * e_y
        coords = prods[:, :, list(ideal.pivots)]                  # coordinates in the ideal basis
        cmat = tdot(coords, vals, (2, 0), p)                      # (k, y)
        ker = kernel_basis(cmat.T, p)
        ideal = Subspace.span(mm(ker.basis, ideal.basis, p), p, n) if ker.dim else Subspace.zero(n, p)
    return ideal


def radical(a: Alg) -> Subspace:
    """Jacobson radical as a subspace of A (cached on the algebra)."""
    return a.cache("radical", lambda: _trace_refinement(a.table, a.p))


def _products(x: np.ndarray, y: np.ndarray, a: Alg) -> np.ndarray:
    # all products x_i * y_j as rows
    t = tdot(x, a.table, (1, 0), a.p)              # (i, v, w)
    return tdot(t, y, (1, 1), a.p).transpose(0, 2, 1).reshape(-1, a.dim)


def quotient_table(a: Alg, space: Subspace) -> np.ndarray:
    """Structure constants of ``A / space`` on the complement basis."""
    idx = space.complement_indices()
    q = space.quotient_projection()                 # (k, d)
    sub = a.table[np.ix_(idx, idx)]                 # (k, k, d)
    return tdot(sub, q, (2, 1), a.p)


def radical_certificate(a: Alg) -> Report:
    """Ideal property, nilpotency and semisimplicity of the quotient."""
    p, d = a.p, a.dim
    rad = radical(a)
    rep = Report("radical")
    if rad.dim:
        for g in a.gens:
            if not rad.contains_space(Subspace.span(mm(rad.basis, a.table[:, g, :], p), p, d)):
                rep.fail("not a right ideal", g)
            if not rad.contains_space(Subspace.span(tdot(rad.basis, a.table[g], (1, 0), p), p, d)):
                rep.fail("not a left ideal", g)
        power = rad
        steps = 0
        while power.dim and steps <= d:
            power = Subspace.span(_products(power.basis, rad.basis, a), p, d)
            steps += 1
        if power.dim:
            rep.fail("radical is not nilpotent")
        rep.checked += steps
    q = _trace_refinement(quotient_table(a, rad), p)
    if q.dim:
        rep.fail("quotient has nonzero radical", q.dim)
    rep.checked += 1
    return rep


def ideal_generators(a: Alg) -> np.ndarray:
    """Few elements generating the radical as a two-sided ideal."""
    def build():
        p, d = a.p, a.dim
        rad = radical(a)
        gens = []
        cur = Subspace.zero(d, p)
        for r in rad.basis:
            if cur.contains(r):
                continue
            gens.append(r)
            cur = two_sided_closure(a, np.vstack([cur.basis, r[None]]))
            if cur.dim == rad.dim:
                break
        return np.array(gens, dtype=np.int64).reshape(-1, d)
    return a.cache("rad_gens", build)


def two_sided_closure(a: Alg, vectors) -> Subspace:
    p, d = a.p, a.dim
    s = Subspace.span(vectors, p, d)
    lefts = [a.left_mult_basis(g) for g in a.gens]
    rights = [a.right_matrix(a.basis_vec(g)) for g in a.gens]
    while s.dim:
        new = [mm(m, s.basis.T, p).T for m in lefts + rights]
        t = Subspace.span(np.vstack([s.basis] + new), p, d)
        if t.dim == s.dim:
            break
        s = t
    return s


# --------------------------------------------------------------------------
# idempotents
# --------------------------------------------------------------------------

def _min_poly(mat: np.ndarray, p: int) -> list[int]:
    """Minimal polynomial coefficients (low to high, monic)."""
    n = mat.shape[0]
    powers = [np.eye(n, dtype=np.int64).reshape(-1)]
    cur = np.eye(n, dtype=np.int64)
    for k in range(1, n + 1):
        cur = mm(cur, mat, p)
        stack = np.array(powers, dtype=np.int64)
        c = solve(stack.T, cur.reshape(-1), p)
        if c is not None:
            return [int(-x) % p for x in c] + [1]
        powers.append(cur.reshape(-1))
    raise LinAlgError("no minimal polynomial found")  # Cayley-Hamilton makes this unreachable


def _poly_at(a: Alg, coeffs_high, x, unit):
    acc = np.zeros(a.dim, dtype=np.int64)
    for c in coeffs_high:
        acc = (a.mul(acc, x) + int(c) * unit) % a.p
    return acc


def _refine(a: Alg, f, limit=64):
    p = a.p
    for _ in range(limit):
        f2 = a.mul(f, f)
        if np.array_equal(f2, f):
            return f
        f3 = a.mul(f2, f)
        f = (3 * f2 - 2 * f3) % p
    raise LinAlgError("idempotent lifting did not converge")


def _corner(a: Alg, e):
    """(basis of eAe, basis of e rad e) as subspaces."""
    p = a.p
    m = mm(a.left_matrix(e), a.right_matrix(e), p)
    full = image_basis(m, p)
    rad = radical(a)
    inner = Subspace.span(mm(m, rad.basis.T, p).T, p, a.dim) if rad.dim else Subspace.zero(a.dim, p)
    return m, full, inner


def _split(a: Alg, e, rng, tries=48):
    p = a.p
    m, full, inner = _corner(a, e)
    top = full.dim - inner.dim
    if top == 1:
        return [e]
    reps = Subspace.span(inner.reduce(full.basis), p, a.dim)
    piv = list(reps.pivots)
    t = sympy.Symbol("t")
    for _ in range(tries):
        x = mm(m, rng.integers(0, p, size=a.dim), p)
        lx = a.left_matrix(x)
        imgs = inner.reduce(mm(lx, reps.basis.T, p).T)
        mat = imgs[:, piv].T % p                      # action on eAe / e rad e
        coeffs = _min_poly(mat, p)
        poly = sympy.Poly(list(reversed(coeffs)), t, modulus=p)
        _, factors = poly.factor_list()
        if len(factors) < 2:
            continue
        f1 = factors[0][0] ** factors[0][1]
        rest = sympy.Poly(1, t, modulus=p)
        for fac, k in factors[1:]:
            rest = rest * fac ** k
        q = (rest * rest.invert(f1)).rem(poly)
        coeffs_q = [int(c) % p for c in q.all_coeffs()]
        f = _refine(a, _poly_at(a, coeffs_q, x, e))
        if not np.any(f) or np.array_equal(f, e):
            continue
        g = (e - f) % p
        return _split(a, f, rng, tries) + _split(a, g, rng, tries)
    raise UnsupportedField("%s: could not split a corner of dimension %d (semisimple part %d) over F_%d"
                           % (a.name, full.dim, top, p))


def primitive_idempotents(a: Alg, seed: int = 0) -> list[np.ndarray]:
    """Orthogonal primitive idempotents summing to 1 (cached per seed)."""
    def build():
        if a.p in (2, 3):
            raise UnsupportedField("idempotent lifting needs p > 3")
        rng = np.random.default_rng(seed)
        return _split(a, a.unit, rng)
    return a.cache(("idempotents", seed), build)


@dataclass(eq=False)
class Blocks:
    """Projective indecomposables, one representative idempotent per class."""

    alg: Alg
    idempotents: list
    classes: list            # lists of idempotent positions
    reps: list               # representative idempotent per class
    simple_dims: list
    trivial: int | None
    pieces: dict             # lam -> (B, pivots), B: d x n_lam basis of A e_lam
    left_pieces: dict        # lam -> X: n_lam x d basis rows of e_lam A
    gram_inv: dict           # lam -> inverse of t(X_i B_k)
    rad_coords: dict         # lam -> Subspace of A e_lam coordinates: rad * e_lam

    @property
    def count(self) -> int:
        return len(self.reps)

    def proj_dim(self, lam) -> int:
        return self.pieces[lam][0].shape[1]


def _classes(a: Alg, idem):
    p = a.p
    rad = radical(a)
    n = len(idem)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if find(i) == find(j):
                continue
            m = mm(a.left_matrix(idem[i]), a.right_matrix(idem[j]), p)
            if not rad.contains_space(image_basis(m, p)):
                parent[find(j)] = find(i)
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def blocks(a: Alg, seed: int = 0) -> Blocks:
    def build():
        p, d = a.p, a.dim
        idem = primitive_idempotents(a, seed)
        groups = _classes(a, idem)
        rad = radical(a)
        info = []
        for grp in groups:
            e = idem[grp[0]]
            right = Subspace.span(a.right_matrix(e).T, p, d)     # rows span A e
            info.append((grp, e, right))
        triv = [i for i, (grp, e, _) in enumerate(info) if int(a.epsilon @ e) % p == 1]

        def key(i):
            grp, e, right = info[i]
            return (0 if i in triv else 1, right.dim, len(grp), right.pivots)
        order = sorted(range(len(info)), key=key)
        info = [info[i] for i in order]
        pieces, left_pieces, ginv, radc = {}, {}, {}, {}
        t = a.symform
        for lam, (grp, e, right) in enumerate(info):
            B = right.basis.T.copy()
            piv = list(right.pivots)
            pieces[lam] = (B, piv)
            X = Subspace.span(a.left_matrix(e).T, p, d).basis
            left_pieces[lam] = X
            if t is not None:
                G = np.zeros((X.shape[0], B.shape[1]), dtype=np.int64)
                prods = tdot(tdot(X, a.table, (1, 0), p), B, (1, 0), p)   # (i, w, k)
                G = tdot(prods, t, (1, 0), p)
                ginv[lam] = inverse(G, p)
            re = mm(a.right_matrix(e), rad.basis.T, p) if rad.dim else np.zeros((d, 0), dtype=np.int64)
            radc[lam] = Subspace.span(re.T[:, piv] if re.size else np.zeros((0, len(piv))), p, len(piv))
        b = Blocks(alg=a, idempotents=idem, classes=[g for g, _, _ in info], reps=[e for _, e, _ in info],
                   simple_dims=[len(g) for g, _, _ in info], trivial=0 if triv else None,
                   pieces=pieces, left_pieces=left_pieces, gram_inv=ginv, rad_coords=radc)
        total = sum(b.simple_dims[lam] * b.proj_dim(lam) for lam in range(b.count))
        if total != d:
            raise LinAlgError("idempotent bookkeeping: %d != dim A = %d" % (total, d))
        return b
    return a.cache(("blocks", seed), build)


def proj_module(a: Alg, summands, name=None) -> ProjMod:
    return ProjMod(a, summands, blocks(a).pieces, name)


def simple_module(a: Alg, lam: int) -> Mod:
    b = blocks(a)
    P = proj_module(a, [lam])
    return QuoMod(P, b.rad_coords[lam], name="S%d" % lam)


def simples(a: Alg) -> list[Mod]:
    return a.cache("simples", lambda: [simple_module(a, lam) for lam in range(blocks(a).count)])


def corner_basis(m: Mod, lam: int) -> np.ndarray:
    """Columns spanning ``e_lam M``."""
    key = ("corner", lam)
    if key not in m.cache:
        e = blocks(m.alg).reps[lam]
        img = image_basis(m.element_matrix(e), m.p)
        m.cache[key] = img.basis.T.copy()
    return m.cache[key]


# --------------------------------------------------------------------------
# radicals of modules, covers
# --------------------------------------------------------------------------

def proj_radical(P: ProjMod) -> Subspace:
    b = blocks(P.alg)
    rows = []
    for j, lam in enumerate(P.summands):
        r = b.rad_coords[lam]
        if r.dim:
            blk = np.zeros((r.dim, P.dim), dtype=np.int64)
            blk[:, P.block(j)] = r.basis
            rows.append(blk)
    if not rows:
        return Subspace.zero(P.dim, P.p)
    return Subspace.span(np.vstack(rows), P.p, P.dim)


def rad_space(m: Mod) -> Subspace:
    """``rad(A) * M`` as a subspace of M."""
    if "rad" in m.cache:
        return m.cache["rad"]
    if isinstance(m, ProjMod):
        s = proj_radical(m)
    elif m.dim == 0:
        s = Subspace.zero(0, m.p)
    else:
        eye = np.eye(m.dim, dtype=np.int64)
        vecs = [m.apply(r, eye).T for r in ideal_generators(m.alg)]
        s = m.closure(np.vstack(vecs)) if vecs else Subspace.zero(m.dim, m.p)
    m.cache["rad"] = s
    return s


def top_generators(m: Mod) -> list[tuple[int, np.ndarray]]:
    """Vectors mapping to a basis of the top, each in some ``e_lam M``."""
    b = blocks(m.alg)
    rad = rad_space(m)
    out = []
    for lam in range(b.count):
        Z = corner_basis(m, lam).T                    # rows span e_lam M
        if Z.shape[0] == 0:
            continue
        red = rad.reduce(Z)
        _, piv = row_basis(red.T, m.p) if np.any(red) else (None, [])
        for i in piv:
            out.append((lam, Z[i].copy()))
    top = sum(b.simple_dims[lam] for lam, _ in out)
    if top != m.dim - rad.dim:
        raise LinAlgError("top bookkeeping for %s: %d != %d" % (m.name, top, m.dim - rad.dim))
    return out


@dataclass(eq=False)
class CoverData:
    """Surjection ``map: cover -> module`` from a projective, kernel inside the radical."""

    module: Mod
    cover: ProjMod
    map: ModMap
    _kernel: Subspace | None = None
    _section: np.ndarray | None = None
    _kgens: np.ndarray | None = None
    _solver: Solver | None = None
    extra: dict = field(default_factory=dict)

    @property
    def decomposition(self) -> dict:
        out: dict = {}
        for lam in self.cover.summands:
            out[lam] = out.get(lam, 0) + 1
        return out

    @property
    def kernel(self) -> Subspace:
        if self._kernel is None:
            self._kernel = self.map.kernel()
        return self._kernel

    @property
    def solver(self) -> Solver:
        if self._solver is None:
            self._solver = Solver(self.map.mat, self.map.p)
        return self._solver

    @property
    def section(self) -> np.ndarray:
        """A linear (not A-linear) right inverse of the map."""
        if self._section is None:
            self._section = self.solver.solve_exact(np.eye(self.module.dim, dtype=np.int64))
        return self._section

    def kernel_module(self, name=None) -> SubMod:
        return SubMod(self.cover, self.kernel, name or "ker")

    def kernel_gens(self) -> np.ndarray:
        """Module generators of the kernel, as columns in cover coordinates."""
        if self._kgens is None:
            k = self.kernel
            if k.dim == 0:
                self._kgens = np.zeros((self.cover.dim, 0), dtype=np.int64)
            else:
                km = SubMod(self.cover, k)
                g = [v for _, v in top_generators(km)]
                self._kgens = km.embed(np.array(g, dtype=np.int64).T)
        return self._kgens

    def is_minimal(self) -> bool:
        return proj_radical(self.cover).contains_space(self.kernel)

    def generator(self, j) -> np.ndarray:
        """Image of the idempotent generator of summand ``j``."""
        return mm(self.map.mat, summand_generator(self.cover, j), self.map.p)


def summand_generator(P: ProjMod, j) -> np.ndarray:
    b = blocks(P.alg)
    lam = P.summands[j]
    v = np.zeros(P.dim, dtype=np.int64)
    v[P.block(j)] = b.reps[lam][b.pieces[lam][1]]
    return v


def cover_from_generators(m: Mod, gens) -> CoverData:
    """``P -> m`` sending the generator of summand j to ``gens[j] = (lam, v)``."""
    a, p = m.alg, m.p
    P = proj_module(a, [lam for lam, _ in gens], name="P(%s)" % m.name)
    if not gens:
        return CoverData(m, P, ModMap(P, m, np.zeros((m.dim, 0), dtype=np.int64)))
    G = np.array([v for _, v in gens], dtype=np.int64).T
    O = m.orbit(G)                                            # (d, m, r)
    mat = np.zeros((m.dim, P.dim), dtype=np.int64)
    for j, (lam, _) in enumerate(gens):
        B = P.pieces[lam][0]
        mat[:, P.block(j)] = tdot(B, O[:, :, j], (0, 0), p).T
    return CoverData(m, P, ModMap(P, m, mat))


def projective_cover(m: Mod) -> CoverData:
    if m._cover is None:
        cov = cover_from_generators(m, top_generators(m))
        if not cov.map.is_surjective():
            raise LinAlgError("cover map of %s is not surjective" % m.name)
        m._cover = cov
    return m._cover


def syzygy(m: Mod, n: int = 1) -> Mod:
    if n < 0:
        raise ValueError("use cosyzygy for negative shifts")
    for i in range(n):
        cov = projective_cover(m)
        m = cov.kernel_module(name="Omega^%d(%s)" % (i + 1, m.name))
    return m


def _right_top(m: Mod) -> list[tuple[int, np.ndarray]]:
    """Row functionals generating the top of the right module D(M), by class."""
    p = m.p
    b = blocks(m.alg)
    eye = np.eye(m.dim, dtype=np.int64)
    seed = [m.apply(r, eye) for r in ideal_generators(m.alg)]
    if seed:
        s = Subspace.span(np.vstack(seed), p, m.dim)
        while s.dim:
            t = Subspace.span(np.vstack([s.basis] + [mm(s.basis, g, p) for g in m.gens]), p, m.dim)
            if t.dim == s.dim:
                break
            s = t
    else:
        s = Subspace.zero(m.dim, p)
    out = []
    for lam in range(b.count):
        rows = Subspace.span(m.element_matrix(b.reps[lam]), p, m.dim).basis
        if rows.shape[0] == 0:
            continue
        red = s.reduce(rows)
        if not np.any(red):
            continue
        _, piv = row_basis(red.T, p)
        for i in piv:
            out.append((lam, rows[i].copy()))
    return out


def injective_hull(m: Mod) -> tuple[ProjMod, ModMap]:
    """Minimal embedding of ``m`` into a projective (= injective) module."""
    a, p = m.alg, m.p
    if a.symform is None:
        raise NotCertifiedSymmetric("%s has no symmetrizing form" % a.name)
    b = blocks(a)
    funcs = _right_top(m)
    P = proj_module(a, [lam for lam, _ in funcs], name="I(%s)" % m.name)
    mat = np.zeros((P.dim, m.dim), dtype=np.int64)
    eye = np.eye(m.dim, dtype=np.int64)
    by_class: dict = {}
    for j, (lam, f) in enumerate(funcs):
        by_class.setdefault(lam, []).append((j, f))
    for lam, items in by_class.items():
        X = b.left_pieces[lam]
        F = np.array([f for _, f in items], dtype=np.int64)       # r x m
        phi = np.stack([mm(F, m.apply(x, eye), p) for x in X])    # (n_lam, r, m)
        for k, (j, _) in enumerate(items):
            mat[P.block(j)] = mm(b.gram_inv[lam], phi[:, k, :], p)
    iota = ModMap(m, P, mat)
    if not iota.is_injective():
        raise LinAlgError("hull map of %s is not injective" % m.name)
    return P, iota


def cosyzygy(m: Mod, n: int = 1) -> Mod:
    for i in range(n):
        P, iota = injective_hull(m)
        m = QuoMod(P, iota.image(), name="Omega^-%d(%s)" % (i + 1, m.name))
    return m


# --------------------------------------------------------------------------
# the tower
# --------------------------------------------------------------------------

class Tower:
    """Window ``T_n = Omega^n k`` for ``-D <= n <= D`` with all connecting data."""

    def __init__(self, alg: Alg, D: int, progress=None):
        if alg.symform is None:
            raise NotCertifiedSymmetric("%s has no symmetrizing form" % alg.name)
        self.alg = alg
        self.D = D
        self.T: dict = {0: Mod.trivial(alg)}
        self.P: dict = {}
        self.pi: dict = {}
        self.iota: dict = {}
        self.covers: dict = {}
        self._solvers: dict = {}
        self._sections: dict = {}
        self._chains: dict = {}
        self._stable: dict = {}
        say = progress or (lambda msg: log.info(msg))
        for n in range(1, D + 2):
            cov = projective_cover(self.T[n - 1])
            self.covers[n - 1] = cov
            self.P[n - 1] = cov.cover
            self.pi[n - 1] = cov.map
            t = cov.kernel_module(name="T%d" % n)
            self.T[n] = t
            self.iota[n] = t.inclusion()
            say("tower %s: T_%d dim %d" % (alg.name, n, t.dim))
        for n in range(0, -D, -1):
            P, iota = injective_hull(self.T[n])
            q = QuoMod(P, iota.image(), name="T%d" % (n - 1))
            self.T[n - 1] = q
            self.P[n - 1] = P
            self.pi[n - 1] = q.projection()
            self.iota[n] = iota
            cov = CoverData(q, P, self.pi[n - 1], _kernel=iota.image(), _section=q.lift.copy())
            q._cover = cov
            self.covers[n - 1] = cov
            say("tower %s: T_%d dim %d" % (alg.name, n - 1, q.dim))
        self._degree = {id(m): n for n, m in self.T.items()}

    # -- bookkeeping ---------------------------------------------------
    @property
    def k(self) -> Mod:
        return self.T[0]

    def dims(self) -> dict:
        return {n: self.T[n].dim for n in sorted(self.T) if n <= self.D}

    def degree(self, m: Mod) -> int:
        try:
            return self._degree[id(m)]
        except KeyError:
            raise ValueError("module %s is not part of the tower" % m.name)

    def check_window(self, *degrees):
        for n in degrees:
            if not -self.D <= n <= self.D:
                raise WindowError("degree %d outside window [-%d, %d]" % (n, self.D, self.D))

    def pi_solver(self, n) -> Solver:
        if ("pi", n) not in self._solvers:
            self._solvers[("pi", n)] = self.covers[n].solver
        return self._solvers[("pi", n)]

    def iota_solver(self, n) -> Solver:
        if ("iota", n) not in self._solvers:
            self._solvers[("iota", n)] = Solver(self.iota[n].mat, self.alg.p)
        return self._solvers[("iota", n)]

    def section(self, n) -> np.ndarray:
        return self.covers[n].section

    def stable(self, n: int, m: Mod | None = None):
        """Stable Hom(T_n, m), cached per module."""
        from .stmod import stable_hom
        m = self.k if m is None else m
        self.check_window(n)
        key = (n, id(m))
        if key not in self._stable:
            self._stable[key] = (stable_hom(self.T[n], m), m)
        return self._stable[key][0]

    def top_gens(self, n) -> np.ndarray:
        """Columns generating T_n as a module (images of cover generators)."""
        cov = self.covers[n]
        if not cov.cover.summands:
            return np.zeros((self.T[n].dim, 0), dtype=np.int64)
        return np.array([cov.generator(j) for j in range(len(cov.cover.summands))], dtype=np.int64).T

    # -- shifting maps -------------------------------------------------
    def up(self, f: ModMap) -> ModMap:
        """Omega f: T_{b+1} -> T_{c+1} for f: T_b -> T_c."""
        b, c = self.degree(f.src), self.degree(f.tgt)
        if b + 1 > self.D + 1 or c + 1 > self.D + 1:
            raise WindowError("cannot shift %d -> %d upward inside window %d" % (b, c, self.D))
        p = self.alg.p
        Pb, Pc = self.P[b], self.P[c]
        bl = blocks(self.alg)
        nsum = len(Pb.summands)
        g = np.zeros((Pc.dim, Pb.dim), dtype=np.int64)
        if nsum:
            gens = np.array([summand_generator(Pb, j) for j in range(nsum)], dtype=np.int64).T
            rhs = mm(f.mat, mm(self.pi[b].mat, gens, p), p)
            Q = self.pi_solver(c).solve_exact(rhs)
            for j, lam in enumerate(Pb.summands):
                q = Pc.apply(bl.reps[lam], Q[:, j])
                g[:, Pb.block(j)] = Pc.hom_from(lam, q)
        h = mm(g, self.iota[b + 1].mat, p)
        out = self.iota_solver(c + 1).solve_exact(h)
        return ModMap(self.T[b + 1], self.T[c + 1], out)

    def down(self, f: ModMap) -> ModMap:
        """Omega^{-1} f: T_{b-1} -> T_{c-1} for f: T_b -> T_c."""
        b, c = self.degree(f.src), self.degree(f.tgt)
        if b - 1 < -self.D or c - 1 < -self.D:
            raise WindowError("cannot shift %d -> %d downward inside window %d" % (b, c, self.D))
        p = self.alg.p
        Ps, Pt = self.P[b - 1], self.P[c - 1]
        tg = self.top_gens(b)                                  # dim T_b x r
        x = mm(self.iota[b].mat, tg, p)                        # dim Ps x r
        want = mm(self.iota[c].mat, mm(f.mat, tg, p), p)       # dim Pt x r
        cols, blocks_w = [], []
        for j, lam in enumerate(Ps.summands):
            Y = corner_basis(Pt, lam)
            Wt = np.stack([Pt.hom_from(lam, Y[:, i]) for i in range(Y.shape[1])]) if Y.shape[1] else \
                np.zeros((0, Pt.dim, Ps.pieces[lam][0].shape[1]), dtype=np.int64)
            blocks_w.append(Wt)
            if Wt.shape[0]:
                cols.append(tdot(Wt, x[Ps.block(j)], (2, 0), p).reshape(Wt.shape[0], -1))
        if cols:
            system = np.vstack(cols).T
            y = solve(system, want.reshape(-1), p)
        else:
            y = np.zeros(0, dtype=np.int64) if not np.any(want) else None
        if y is None:
            raise LinAlgError("no extension of the map to the hulls (%d -> %d)" % (b, c))
        g = np.zeros((Pt.dim, Ps.dim), dtype=np.int64)
        o = 0
        for j, Wt in enumerate(blocks_w):
            k = Wt.shape[0]
            if k:
                g[:, Ps.block(j)] = tdot(y[o:o + k], Wt, (0, 0), p)
            o += k
        out = mm(self.pi[c - 1].mat, mm(g, self.section(b - 1), p), p)
        return ModMap(self.T[b - 1], self.T[c - 1], out)

    def shift(self, f: ModMap, a: int) -> ModMap:
        """Omega^a f, cached along the chain of successive shifts."""
        if a == 0:
            return f
        key = (id(f.src), id(f.tgt), f.mat.tobytes())
        chain = self._chains.setdefault(key, {0: f})
        step = 1 if a > 0 else -1
        cur = 0
        for cur in range(a, 0, -step):
            if cur in chain:
                break
        else:
            cur = 0
        g = chain[cur]
        while cur != a:
            g = self.up(g) if step > 0 else self.down(g)
            cur += step
            chain[cur] = g
        return g


def tower(a: Alg, D: int, progress=None) -> Tower:
    """Syzygy tower of k over the window ``[-D, D]`` (cached per algebra and D)."""
    key = ("tower", D)
    return a.cache(key, lambda: Tower(a, D, progress))


def shift_class(t: Tower, f: ModMap, a: int) -> ModMap:
    return t.shift(f, a)


def socle_pieces(a: Alg) -> dict:
    """Per class, rows spanning ``soc(A e_lam) = {x in A e_lam : rad x = 0}``."""
    def build():
        p, d = a.p, a.dim
        b = blocks(a)
        rad = radical(a).basis
        out = {}
        for lam in range(b.count):
            B, _ = b.pieces[lam]
            if rad.shape[0] == 0:
                out[lam] = B.T.copy()
                continue
            sys = np.vstack([mm(a.left_matrix(r), B, p) for r in rad])
            k = kernel_basis(sys, p)
            out[lam] = mm(k.basis, B.T, p) if k.dim else np.zeros((0, d), dtype=np.int64)
        return out
    return a.cache("socle", build)


def projective_summands(m: Mod) -> list[int]:
    """Classes ``lam`` such that ``A e_lam`` is a direct summand of ``m``.

    Over a symmetric algebra projectives are injective, so ``A e_lam`` splits
    off exactly when some map ``A e_lam -> m`` is injective, i.e. when its
    simple socle acts nontrivially on ``m``.
    """
    out = []
    eye = np.eye(m.dim, dtype=np.int64)
    for lam, rows in socle_pieces(m.alg).items():
        if any(np.any(m.apply(s, eye)) for s in rows):
            out.append(lam)
    return out


def projective_free(m: Mod) -> bool:
    return m.dim == 0 or not projective_summands(m)
