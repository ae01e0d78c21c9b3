"""Modules, module maps, Hom spaces and stable Hom spaces.

A :class:`Mod` stores the action of the algebra generators only.  The action
of an arbitrary element is rebuilt from the factorizations recorded on the
algebra.  Modules that live inside (or are quotients of) a projective module
delegate element actions to the projective, where they are plain algebra
multiplications; this keeps syzygy computations cheap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Alg, HopfError, Report
from .modlinalg import (LinAlgError, Subspace, image_basis, kernel_basis, mm, rank, row_basis,
                        tdot)


class Mod:
    """Finite-dimensional left module given by generator matrices."""

    def __init__(self, alg: Alg, gens, name: str = "M"):
        self.alg = alg
        self.p = alg.p
        self.gens = [np.asarray(g, dtype=np.int64) % alg.p for g in gens]
        if len(self.gens) != len(alg.gens):
            raise ValueError("need one action matrix per algebra generator")
        self.name = name
        self._basis_act: dict = {}
        self._action = None
        self._cover = None
        self.cache: dict = {}

    # -- construction -------------------------------------------------
    @classmethod
    def from_action(cls, alg: Alg, action, name="M") -> "Mod":
        action = np.asarray(action, dtype=np.int64)
        return cls(alg, [action[g] for g in alg.gens], name)

    @classmethod
    def trivial(cls, alg: Alg) -> "Mod":
        return cls(alg, [np.array([[alg.epsilon[g]]]) for g in alg.gens], "k")

    @classmethod
    def regular(cls, alg: Alg) -> "Mod":
        return cls(alg, alg.gens_matrices_left(), "A")

    @classmethod
    def zero(cls, alg: Alg) -> "Mod":
        return cls(alg, [np.zeros((0, 0), dtype=np.int64) for _ in alg.gens], "0")

    # -- action ---------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.gens[0].shape[0] if self.gens else self._dim_fallback()

    def _dim_fallback(self):
        return getattr(self, "_dim", 0)

    def gen_action(self, g: int) -> np.ndarray:
        """Action of the generator with basis index ``g``."""
        return self.gens[self.alg.gen_position(g)]

    def act_basis(self, u: int) -> np.ndarray:
        if self._action is not None:
            return self._action[u]
        if u in self._basis_act:
            return self._basis_act[u]
        f = self.alg.lfac[u]
        if f is None:
            m = np.eye(self.dim, dtype=np.int64)
        else:
            m = mm(self.gen_action(f[0]), self.act_basis(f[1]), self.p)
        self._basis_act[u] = m
        return m

    @property
    def action(self) -> np.ndarray:
        """Full ``(dim A, dim M, dim M)`` action array (computed on demand)."""
        if self._action is None:
            self._action = self.orbit(np.eye(self.dim, dtype=np.int64))
        return self._action

    def orbit(self, V) -> np.ndarray:
        """``out[u] = rho(u) @ V`` for every basis element ``u``."""
        V = np.asarray(V, dtype=np.int64)
        a = self.alg
        out = np.zeros((a.dim,) + V.shape, dtype=np.int64)
        for u in _order(a):
            f = a.lfac[u]
            out[u] = V % self.p if f is None else mm(self.gen_action(f[0]), out[f[1]], self.p)
        return out

    def apply(self, x, V) -> np.ndarray:
        """``rho(x) @ V`` for an algebra element ``x`` in basis coordinates."""
        x = np.asarray(x, dtype=np.int64) % self.p
        V = np.asarray(V, dtype=np.int64)
        sup = np.flatnonzero(x)
        if self._action is None and len(sup) > 12:
            return tdot(x, self.orbit(V), (0, 0), self.p)
        out = np.zeros((self.dim,) + V.shape[1:], dtype=np.int64)
        for u in sup:
            out = (out + x[u] * mm(self.act_basis(int(u)), V, self.p)) % self.p
        return out

    def element_matrix(self, x) -> np.ndarray:
        return self.apply(x, np.eye(self.dim, dtype=np.int64))

    def check(self, exhaustive: bool = True) -> Report:
        """Verify that the generator matrices define a module."""
        a, p = self.alg, self.p
        rep = Report("module %s" % self.name)
        act = self.orbit(np.eye(self.dim, dtype=np.int64))
        us = range(a.dim) if exhaustive else sorted(set(a.gens) | {0})
        for g in a.gens:
            rg = self.gen_action(g)
            for u in us:
                lhs = mm(rg, act[u], p)
                rhs = tdot(a.table[g, u], act, (0, 0), p)
                if not np.array_equal(lhs, rhs):
                    rep.fail("rho(g)rho(u) != rho(gu)", g, u)
                rep.checked += 1
        return rep

    # -- derived modules ------------------------------------------------
    def sub(self, space: Subspace, name=None) -> "SubMod":
        return SubMod(self, space, name or "sub(%s)" % self.name)

    def quo(self, space: Subspace, name=None) -> "QuoMod":
        return QuoMod(self, space, name or "%s/sub" % self.name)

    def closure(self, vectors) -> Subspace:
        """Submodule generated by row vectors."""
        p = self.p
        s = Subspace.span(np.asarray(vectors, dtype=np.int64).reshape(-1, self.dim), p, self.dim)
        while True:
            if s.dim == 0:
                return s
            new = [mm(g, s.basis.T, p).T for g in self.gens]
            t = Subspace.span(np.vstack([s.basis] + new), p, self.dim)
            if t.dim == s.dim:
                return s
            s = t

    def __repr__(self):
        return "%s(%s, dim=%d)" % (type(self).__name__, self.name, self.dim)


def _order(a: Alg):
    return a.cache("lfac_order", lambda: a.order_by(a.lfac))


class SubMod(Mod):
    """Submodule spanned by the rows of an echelon basis of ``parent``."""

    def __init__(self, parent: Mod, space: Subspace, name="sub"):
        self.parent = parent
        self.space = space
        E = space.basis.T
        piv = list(space.pivots)
        gens = [mm(g, E, parent.p)[piv] for g in parent.gens]
        self._dim = space.dim
        super().__init__(parent.alg, gens, name)

    @property
    def dim(self) -> int:
        return self._dim

    def embed(self, V) -> np.ndarray:
        return mm(self.space.basis.T, V, self.p)

    def coords(self, Y) -> np.ndarray:
        return np.asarray(Y)[list(self.space.pivots)] % self.p

    def orbit(self, V):
        o = self.parent.orbit(self.embed(V))
        return o[:, list(self.space.pivots)]

    def apply(self, x, V):
        return self.coords(self.parent.apply(x, self.embed(V)))

    def inclusion(self) -> "ModMap":
        return ModMap(self, self.parent, self.space.basis.T.copy())


class QuoMod(Mod):
    """``parent / space`` with basis the non-pivot standard vectors."""

    def __init__(self, parent: Mod, space: Subspace, name="quo"):
        self.parent = parent
        self.space = space
        self.idx = space.complement_indices()
        n = parent.dim
        self.lift = np.zeros((n, len(self.idx)), dtype=np.int64)
        self.lift[self.idx, np.arange(len(self.idx))] = 1
        self.proj = space.quotient_projection()
        gens = [mm(self.proj, mm(g, self.lift, parent.p), parent.p) for g in parent.gens]
        self._dim = len(self.idx)
        super().__init__(parent.alg, gens, name)

    @property
    def dim(self) -> int:
        return self._dim

    def orbit(self, V):
        o = self.parent.orbit(mm(self.lift, V, self.p))
        return np.stack([mm(self.proj, o[u], self.p) for u in range(o.shape[0])])

    def apply(self, x, V):
        return mm(self.proj, self.parent.apply(x, mm(self.lift, V, self.p)), self.p)

    def projection(self) -> "ModMap":
        return ModMap(self.parent, self, self.proj.copy())


class SumMod(Mod):
    """Direct sum; coordinates are concatenated in order."""

    def __init__(self, parts, name=None):
        parts = list(parts)
        if not parts:
            raise ValueError("empty direct sum")
        self.parts = parts
        self.offsets = np.cumsum([0] + [q.dim for q in parts])
        a = parts[0].alg
        gens = []
        for i in range(len(a.gens)):
            gens.append(_block_diag([q.gens[i] for q in parts]))
        self._dim = int(self.offsets[-1])
        super().__init__(a, gens, name or "+".join(q.name for q in parts))

    @property
    def dim(self) -> int:
        return self._dim

    def _split(self, V):
        return [V[self.offsets[i]:self.offsets[i + 1]] for i in range(len(self.parts))]

    def orbit(self, V):
        V = np.asarray(V, dtype=np.int64)
        return np.concatenate([q.orbit(v) for q, v in zip(self.parts, self._split(V))], axis=1)

    def apply(self, x, V):
        V = np.asarray(V, dtype=np.int64)
        return np.concatenate([q.apply(x, v) for q, v in zip(self.parts, self._split(V))], axis=0)

    def injection(self, i) -> "ModMap":
        m = np.zeros((self.dim, self.parts[i].dim), dtype=np.int64)
        m[self.offsets[i]:self.offsets[i + 1]] = np.eye(self.parts[i].dim, dtype=np.int64)
        return ModMap(self.parts[i], self, m)

    def projection(self, i) -> "ModMap":
        return ModMap(self, self.parts[i], self.injection(i).mat.T.copy())


def _block_diag(mats):
    n = sum(m.shape[0] for m in mats)
    out = np.zeros((n, n), dtype=np.int64)
    o = 0
    for m in mats:
        k = m.shape[0]
        out[o:o + k, o:o + k] = m
        o += k
    return out


def direct_sum(*mods) -> Mod:
    mods = [m for m in mods if m.dim > 0] or [mods[0]]
    return mods[0] if len(mods) == 1 else SumMod(mods)


class ProjMod(Mod):
    """Direct sum of indecomposable projectives ``A e_lam``.

    ``summands`` lists class labels; the basis of each summand is the fixed
    echelon basis of ``A e_lam`` recorded by the structure module, so the
    coordinates of ``b in A e_lam`` are ``b[pivots]``.
    """

    def __init__(self, alg: Alg, summands, pieces, name=None):
        # pieces[lam] = (B: d x n_lam basis columns, pivots)
        self.summands = list(summands)
        self.pieces = pieces
        sizes = [pieces[lam][0].shape[1] for lam in self.summands]
        self.offsets = np.cumsum([0] + sizes)
        self._dim = int(self.offsets[-1])
        gens = []
        for g in alg.gens:
            blocks = []
            for lam in self.summands:
                B, piv = pieces[lam]
                blocks.append(mm(alg.left_mult_basis(g), B, alg.p)[piv])
            gens.append(_block_diag(blocks) if blocks else np.zeros((0, 0), dtype=np.int64))
        super().__init__(alg, gens, name or "P[%s]" % ",".join(map(str, self.summands)))

    @property
    def dim(self) -> int:
        return self._dim

    def block(self, j) -> slice:
        return slice(int(self.offsets[j]), int(self.offsets[j + 1]))

    def to_alg(self, j, V) -> np.ndarray:
        """Summand-``j`` coordinates to algebra elements (columns)."""
        return mm(self.pieces[self.summands[j]][0], V, self.p)

    def from_alg(self, j, Y) -> np.ndarray:
        return np.asarray(Y)[self.pieces[self.summands[j]][1]] % self.p

    def orbit(self, V):
        V = np.asarray(V, dtype=np.int64)
        a = self.alg
        out = np.zeros((a.dim, self.dim) + V.shape[1:], dtype=np.int64)
        for j in range(len(self.summands)):
            z = self.to_alg(j, V[self.block(j)])
            prod = tdot(a.table, z, (1, 0), self.p)       # [u, w, ...] = (u * z)_w
            out[:, self.block(j)] = prod[:, self.pieces[self.summands[j]][1]]
        return out

    def apply(self, x, V):
        V = np.asarray(V, dtype=np.int64)
        L = self.alg.left_matrix(x)
        out = np.zeros_like(V)
        for j in range(len(self.summands)):
            out[self.block(j)] = self.from_alg(j, mm(L, self.to_alg(j, V[self.block(j)]), self.p))
        return out % self.p

    def hom_from(self, lam, q) -> np.ndarray:
        """Matrix of the A-map ``A e_lam -> self`` sending ``e_lam`` to ``q``.

        ``q`` must lie in ``e_lam * self``; column ``i`` is ``B_i * q``.
        """
        a = self.alg
        B, _ = self.pieces[lam]
        q = np.asarray(q, dtype=np.int64)
        out = np.zeros((self.dim, B.shape[1]), dtype=np.int64)
        for j in range(len(self.summands)):
            z = self.to_alg(j, q[self.block(j)])
            if not np.any(z):
                continue
            out[self.block(j)] = self.from_alg(j, mm(a.right_matrix(z), B, self.p))
        return out


@dataclass(eq=False)
class ModMap:
    src: Mod
    tgt: Mod
    mat: np.ndarray

    def __post_init__(self):
        self.mat = np.asarray(self.mat, dtype=np.int64) % self.src.p
        if self.mat.shape != (self.tgt.dim, self.src.dim):
            raise LinAlgError("map matrix shape %s does not match %d -> %d"
                              % (self.mat.shape, self.src.dim, self.tgt.dim))

    @property
    def p(self):
        return self.src.p

    def __matmul__(self, other: "ModMap") -> "ModMap":
        if other.tgt.dim != self.src.dim:
            raise LinAlgError("cannot compose maps with incompatible modules")
        return ModMap(other.src, self.tgt, mm(self.mat, other.mat, self.p))

    def __add__(self, other):
        return ModMap(self.src, self.tgt, self.mat + other.mat)

    def __sub__(self, other):
        return ModMap(self.src, self.tgt, self.mat - other.mat)

    def scale(self, c) -> "ModMap":
        return ModMap(self.src, self.tgt, int(c) * self.mat)

    def is_linear(self) -> bool:
        p = self.p
        return all(np.array_equal(mm(self.mat, gs, p), mm(gt, self.mat, p))
                   for gs, gt in zip(self.src.gens, self.tgt.gens))

    def rank(self) -> int:
        return rank(self.mat, self.p)

    def is_injective(self) -> bool:
        return self.rank() == self.src.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.tgt.dim

    def is_zero(self) -> bool:
        return not np.any(self.mat)

    def kernel(self) -> Subspace:
        return kernel_basis(self.mat, self.p)

    def image(self) -> Subspace:
        return image_basis(self.mat, self.p)

    @staticmethod
    def identity(m: Mod) -> "ModMap":
        return ModMap(m, m, np.eye(m.dim, dtype=np.int64))

    @staticmethod
    def zero(src: Mod, tgt: Mod) -> "ModMap":
        return ModMap(src, tgt, np.zeros((tgt.dim, src.dim), dtype=np.int64))


@dataclass(eq=False)
class ExtensionSeq:
    """Short exact sequence ``0 -> left -> mid -> right -> 0``."""

    left: Mod
    mid: Mod
    right: Mod
    inj: ModMap
    surj: ModMap

    def check(self) -> Report:
        rep = Report("extension")
        p = self.inj.p
        if self.mid.dim != self.left.dim + self.right.dim:
            rep.fail("dimension")
        if not self.inj.is_injective():
            rep.fail("inj not injective")
        if not self.surj.is_surjective():
            rep.fail("surj not surjective")
        if np.any(mm(self.surj.mat, self.inj.mat, p)):
            rep.fail("surj o inj != 0")
        if not (self.inj.is_linear() and self.surj.is_linear()):
            rep.fail("maps not A-linear")
        rep.checked = 5
        return rep


# --------------------------------------------------------------------------
# Hom spaces
# --------------------------------------------------------------------------

_DIRECT_LIMIT = 600


def _hom_direct(m: Mod, n: Mod) -> np.ndarray:
    # X rho_m(g) = rho_n(g) X, unknown X flattened row-major (n x m)
    p = m.p
    a, b = m.dim, n.dim
    rows = []
    eye_a = np.eye(a, dtype=np.int64)
    eye_b = np.eye(b, dtype=np.int64)
    for gm, gn in zip(m.gens, n.gens):
        rows.append(np.kron(eye_b, gm.T) - np.kron(gn, eye_a))
    sys = np.vstack(rows) % p
    k = kernel_basis(sys, p)
    return k.basis.reshape(-1, b, a)


def _hom_presented(m: Mod, n: Mod) -> np.ndarray:
    from .structure import corner_basis, projective_cover

    p = m.p
    cov = projective_cover(m)
    P = cov.cover
    kg = cov.kernel_gens()                        # dimP x r
    classes = sorted(set(P.summands))
    W = {}
    for lam in classes:
        Z = corner_basis(n, lam)      # n x c, basis of e_lam N
        B, _ = P.pieces[lam]
        if Z.shape[1] == 0:
            W[lam] = np.zeros((B.shape[1], n.dim, 0), dtype=np.int64)
            continue
        E = n.orbit(Z)                                # (d, n, c)
        W[lam] = tdot(B, E, (0, 0), p)                # (n_lam, n, c)
    cols = [W[lam].shape[2] for lam in P.summands]
    offs = np.cumsum([0] + cols)
    total = int(offs[-1])
    r = kg.shape[1]
    if total == 0:
        return np.zeros((0, n.dim, m.dim), dtype=np.int64)
    if r:
        C = np.zeros((r * n.dim, total), dtype=np.int64)
        for j, lam in enumerate(P.summands):
            if cols[j] == 0:
                continue
            X = kg[P.block(j)]                        # n_lam x r
            blk = tdot(X, W[lam], (0, 0), p)          # (r, n, c)
            C[:, offs[j]:offs[j + 1]] = blk.reshape(r * n.dim, cols[j])
        sol = kernel_basis(C, p).basis
    else:
        sol = np.eye(total, dtype=np.int64)
    h = sol.shape[0]
    if h == 0:
        return np.zeros((0, n.dim, m.dim), dtype=np.int64)
    fp = np.zeros((h, n.dim, P.dim), dtype=np.int64)
    for j, lam in enumerate(P.summands):
        if cols[j] == 0:
            continue
        c = sol[:, offs[j]:offs[j + 1]]               # h x c
        imgs = tdot(c, W[lam], (1, 2), p)              # (h, n_lam, n)
        fp[:, :, P.block(j)] = imgs.transpose(0, 2, 1)
    maps = tdot(fp, cov.section, (2, 0), p)            # (h, n, m)
    flat = row_basis(maps.reshape(h, -1), p)[0]
    return flat.reshape(-1, n.dim, m.dim)


def hom_matrices(m: Mod, n: Mod) -> np.ndarray:
    """Basis of Hom_A(m, n) as an array ``(h, dim n, dim m)`` (echelon when flattened)."""
    if m.alg is not n.alg:
        raise ValueError("modules over different algebras")
    if m.dim == 0 or n.dim == 0:
        return np.zeros((0, n.dim, m.dim), dtype=np.int64)
    if m.dim * n.dim <= _DIRECT_LIMIT:
        mats = _hom_direct(m, n)
        if mats.shape[0] == 0:
            return mats
        return row_basis(mats.reshape(mats.shape[0], -1), m.p)[0].reshape(-1, n.dim, m.dim)
    return _hom_presented(m, n)


def hom_space(m: Mod, n: Mod) -> list[ModMap]:
    return [ModMap(m, n, h) for h in hom_matrices(m, n)]


@dataclass(eq=False)
class StableHom:
    """Hom_A(src, tgt) modulo maps factoring through a projective."""

    src: Mod
    tgt: Mod
    hom: Subspace          # flattened (tgt x src) matrices
    factoring: Subspace
    reps: Subspace         # echelon coset representatives, reduced modulo factoring

    @property
    def dim(self) -> int:
        return self.reps.dim

    @property
    def hom_basis(self) -> list[ModMap]:
        return [ModMap(self.src, self.tgt, r.reshape(self.tgt.dim, self.src.dim)) for r in self.hom.basis]

    @property
    def coset_reps(self) -> list[ModMap]:
        return [ModMap(self.src, self.tgt, r.reshape(self.tgt.dim, self.src.dim)) for r in self.reps.basis]

    def rep(self, coords) -> ModMap:
        c = np.asarray(coords, dtype=np.int64)
        flat = mm(c, self.reps.basis, self.src.p) if self.dim else np.zeros(self.hom.ambient_dim, dtype=np.int64)
        return ModMap(self.src, self.tgt, flat.reshape(self.tgt.dim, self.src.dim))

    def coords(self, f) -> np.ndarray:
        """Coordinates of the stable class of a homomorphism ``f``."""
        mat = f.mat if isinstance(f, ModMap) else np.asarray(f)
        v = self.factoring.reduce(mat.reshape(-1))
        c = self.reps.coords(v)
        if np.any(self.reps.reduce(v)):
            raise LinAlgError("map is not a homomorphism %s -> %s" % (self.src.name, self.tgt.name))
        return c

    def is_zero(self, f) -> bool:
        mat = f.mat if isinstance(f, ModMap) else np.asarray(f)
        return self.factoring.contains(mat.reshape(-1))


def _stable_from(m: Mod, n: Mod, hom: np.ndarray, cover) -> StableHom:
    p = m.p
    amb = m.dim * n.dim
    H = Subspace.span(hom.reshape(hom.shape[0], amb), p, amb)
    if cover is None:
        from .structure import projective_cover
        cover = projective_cover(n)
    P, pi = cover.cover, cover.map
    hp = hom_matrices(m, P)
    if hp.shape[0]:
        f = np.einsum("ij,hjk->hik", pi.mat.astype(np.float64), hp.astype(np.float64))
        f = np.mod(f, p).astype(np.int64).reshape(hp.shape[0], amb)
        F = Subspace.span(f, p, amb)
    else:
        F = Subspace.zero(amb, p)
    reps = Subspace.span(F.reduce(H.basis), p, amb) if H.dim else Subspace.zero(amb, p)
    return StableHom(m, n, H, F, reps)


def stable_hom(m: Mod, n: Mod, cover=None) -> StableHom:
    """Stable Hom, factoring computed through a covering surjection of ``n``.

    A map factors through some projective iff it factors through any fixed
    surjection from a projective onto ``n``: lift the projective's map along
    the surjection.  ``cover`` defaults to the minimal projective cover.
    """
    return _stable_from(m, n, hom_matrices(m, n), cover)


# --------------------------------------------------------------------------
# Hopf constructions
# --------------------------------------------------------------------------

def _need_hopf(a: Alg):
    if not a.is_hopf:
        raise HopfError("%s has no Hopf structure" % a.name)


def tensor_mod(m: Mod, n: Mod) -> Mod:
    """``m (x) n`` with action through the coproduct; basis ``i * dim n + j``."""
    a = m.alg
    _need_hopf(a)
    p = a.p
    gens = []
    for g in a.gens:
        acc = np.zeros((m.dim * n.dim,) * 2, dtype=np.int64)
        for i, j in np.argwhere(a.delta[g]):
            c = int(a.delta[g][i, j])
            acc = (acc + c * np.kron(m.act_basis(int(i)), n.act_basis(int(j)))) % p
        gens.append(acc)
    return Mod(a, gens, "%s(x)%s" % (m.name, n.name))


def dual_mod(m: Mod) -> Mod:
    """Linear dual with ``(a f)(v) = f(S(a) v)``."""
    a = m.alg
    _need_hopf(a)
    gens = [m.element_matrix(a.antipode[:, g]).T for g in a.gens]
    return Mod(a, gens, "%s*" % m.name)


def adjoint_module(a: Alg) -> Mod:
    """A with ``x . b = sum x_1 b S(x_2)``."""
    _need_hopf(a)
    p = a.p
    gens = []
    for g in a.gens:
        acc = np.zeros((a.dim, a.dim), dtype=np.int64)
        for i, j in np.argwhere(a.delta[g]):
            c = int(a.delta[g][i, j])
            acc = (acc + c * mm(a.left_mult_basis(int(i)), a.right_matrix(a.antipode[:, j]), p)) % p
        gens.append(acc)
    return Mod(a, gens, "A_ad")


# --------------------------------------------------------------------------
# tests on modules and sequences
# --------------------------------------------------------------------------

def is_projective(m: Mod) -> bool:
    """True iff the minimal cover is an isomorphism.

    The minimal cover of ``m`` splits exactly when its kernel vanishes:
    a split kernel would be a direct summand of the cover sitting inside
    its radical, hence zero.
    """
    from .structure import projective_cover
    if m.dim == 0:
        return True
    return projective_cover(m).kernel.dim == 0


def sequence_splits(s: ExtensionSeq) -> bool:
    """Decide whether ``s`` splits by solving for a section of ``surj``."""
    p = s.mid.p
    if s.right.dim == 0 or s.left.dim == 0:
        return True
    H = hom_matrices(s.right, s.mid)                   # sections live here
    if H.shape[0] == 0:
        return False
    comp = np.einsum("ij,hjk->hik", s.surj.mat.astype(np.float64), H.astype(np.float64))
    comp = np.mod(comp, p).astype(np.int64).reshape(H.shape[0], -1)
    want = np.eye(s.right.dim, dtype=np.int64).reshape(-1)
    from .modlinalg import solve
    return solve(comp.T, want, p) is not None


@dataclass
class IsoVerdict:
    iso: bool
    reason: str
    witness: ModMap | None = None
    exact: bool = True

    def __bool__(self):
        return self.iso


def iso_test(m: Mod, n: Mod, trials: int = 200, seed: int = 0) -> IsoVerdict:
    """Isomorphism test: dimensions, Hom-dimension panel, randomized search.

    A YES verdict always comes with an invertible intertwiner.
    """
    p = m.p
    if m.dim != n.dim:
        return IsoVerdict(False, "dimensions %d != %d" % (m.dim, n.dim))
    if m.dim == 0:
        return IsoVerdict(True, "both zero", ModMap(m, n, np.zeros((0, 0), dtype=np.int64)))
    H = hom_matrices(m, n)
    if H.shape[0] == 0:
        return IsoVerdict(False, "Hom(m, n) = 0")
    dm = hom_matrices(m, m).shape[0]
    dn = hom_matrices(n, n).shape[0]
    if dm != dn or H.shape[0] != dm:
        return IsoVerdict(False, "Hom dimension panel %d/%d/%d" % (dm, dn, H.shape[0]))
    rng = np.random.default_rng(seed)
    for i in range(trials):
        c = rng.integers(0, p, size=H.shape[0]) if i else np.ones(H.shape[0], dtype=np.int64)
        f = tdot(c, H, (0, 0), p)
        if rank(f, p) == m.dim:
            return IsoVerdict(True, "invertible intertwiner", ModMap(m, n, f))
    return IsoVerdict(False, "no invertible map in %d random trials" % trials, exact=False)


def panel(m: Mod, tower=None, degrees=range(-2, 3)) -> tuple:
    """Stable Hom dimensions against simples and against tower modules.

    Projective summands are invisible to every entry, so equal panels are
    the test used for isomorphism up to projective summands.
    """
    from .structure import simples
    row = [stable_hom(m, s).dim for s in simples(m.alg)]
    if tower is not None:
        row += [stable_hom(tower.T[n], m).dim for n in degrees]
    return tuple(row)
