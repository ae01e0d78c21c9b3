"""Finite-dimensional algebras given by structure constants.

An :class:`Alg` stores the full multiplication table ``table[u, v, w]``
(coefficient of basis element ``w`` in ``u * v``), the augmentation, and
optionally Hopf data and a symmetrizing form.  Basis element 0 is the unit.

Besides the table, every algebra records a generating set and, for each
basis element, an exact factorization ``u = g * rest`` (and ``u = rest * g``)
with ``g`` a generator and ``rest`` a basis element of smaller length.
Modules only store the action of generators; these factorizations let them
reconstruct the action of every basis element.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .modlinalg import Subspace, kernel_basis, mm, rank, tdot


class NotSymmetric(Exception):
    """No nondegenerate symmetric trace form was found."""


class HopfError(Exception):
    pass


@dataclass
class Report:
    """Outcome of a verification pass; ``violations`` holds witnesses."""

    name: str
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, *witness):
        if len(self.violations) < 20:
            self.violations.append(witness)

    def __bool__(self):
        return self.ok


@dataclass(eq=False)
class Alg:
    p: int
    table: np.ndarray
    epsilon: np.ndarray
    gens: list
    lfac: list
    rfac: list
    labels: list
    delta: np.ndarray | None = None
    antipode: np.ndarray | None = None
    symform: np.ndarray | None = None
    name: str = "A"

    def __post_init__(self):
        d = self.table.shape[0]
        if self.table.shape != (d, d, d):
            raise ValueError("multiplication table must be dim x dim x dim")
        self._gpos = {g: i for i, g in enumerate(self.gens)}
        length = [0] * d
        for u in self.order_by(self.lfac):
            if self.lfac[u] is not None:
                length[u] = length[self.lfac[u][1]] + 1
        self.length = length
        self._cache = {}

    @staticmethod
    def order_by(fac):
        # topological order: every "rest" comes before the element it builds
        d = len(fac)
        done = [False] * d
        out = []
        for u in range(d):
            stack = [u]
            while stack:
                v = stack[-1]
                if done[v]:
                    stack.pop()
                    continue
                f = fac[v]
                if f is None or done[f[1]]:
                    done[v] = True
                    out.append(v)
                    stack.pop()
                else:
                    stack.append(f[1])
        return out

    @property
    def dim(self) -> int:
        return self.table.shape[0]

    @property
    def unit(self) -> np.ndarray:
        return self.basis_vec(0)

    @property
    def is_hopf(self) -> bool:
        return self.delta is not None and self.antipode is not None

    def gen_position(self, g: int) -> int:
        return self._gpos[g]

    def basis_vec(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def mul(self, a, b) -> np.ndarray:
        """Product of two elements given in basis coordinates."""
        a = np.asarray(a)
        b = np.asarray(b)
        return tdot(tdot(a, self.table, (0, 0), self.p), b, (0, 0), self.p)

    def mul_rows(self, a: np.ndarray, b) -> np.ndarray:
        """Products ``a[i] * b`` for a stack of elements ``a``."""
        return mm(a, self.right_matrix(b).T, self.p)

    def left_matrix(self, a) -> np.ndarray:
        """Matrix of ``x -> a*x``."""
        return tdot(a, self.table, (0, 0), self.p).T.copy()

    def right_matrix(self, b) -> np.ndarray:
        """Matrix of ``x -> x*b``."""
        return tdot(b, self.table, (0, 1), self.p).T.copy()

    def left_mult_basis(self, u: int) -> np.ndarray:
        return self.table[u].T % self.p

    def gram(self, t) -> np.ndarray:
        """``G[u, v] = t(u * v)``."""
        return tdot(self.table, t, (2, 0), self.p)

    def gens_matrices_left(self) -> list[np.ndarray]:
        return [self.left_mult_basis(g) for g in self.gens]

    def delta_of(self, a) -> np.ndarray:
        """Coproduct of an element as a dim x dim coefficient matrix."""
        return tdot(a, self.delta, (0, 0), self.p)

    def antipode_of(self, a) -> np.ndarray:
        return mm(self.antipode, np.asarray(a), self.p)

    def cache(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def product_is_assoc(self, u: int, v: int, w: int) -> bool:
        t = self.table
        lhs = tdot(t[u, v], t[:, w, :], (0, 0), self.p)
        rhs = tdot(t[v, w], t[u, :, :], (0, 0), self.p)
        return np.array_equal(lhs, rhs)

    def __repr__(self):
        return "Alg(%s, dim=%d, p=%d)" % (self.name, self.dim, self.p)


def from_table(p: int, table, epsilon, name: str = "A", labels=None) -> Alg:
    """Wrap a bare multiplication table; every basis element is a generator."""
    table = np.asarray(table, dtype=np.int64) % p
    d = table.shape[0]
    fac = [None] + [(u, 0) for u in range(1, d)]
    return Alg(p=p, table=table, epsilon=np.asarray(epsilon, dtype=np.int64) % p,
               gens=list(range(1, d)), lfac=fac, rfac=[None] + [(0, u) for u in range(1, d)],
               labels=labels or ["b%d" % i for i in range(d)], name=name)


def opposite(a: Alg) -> Alg:
    """Opposite algebra: ``u *op v = v * u``.  Hopf data is dropped."""
    rfac = [None if f is None else (f[1], f[0]) for f in a.lfac]
    lfac = [None if f is None else (f[1], f[0]) for f in a.rfac]
    return Alg(p=a.p, table=np.ascontiguousarray(a.table.transpose(1, 0, 2)), epsilon=a.epsilon.copy(),
               gens=list(a.gens), lfac=lfac, rfac=rfac, labels=list(a.labels),
               symform=None if a.symform is None else a.symform.copy(), name=a.name + "^op")


def tensor(a: Alg, b: Alg) -> Alg:
    """Tensor product algebra; basis ``(i, j) -> i * dim(b) + j``."""
    if a.p != b.p:
        raise ValueError("tensor of algebras over different fields")
    p = a.p
    da, db = a.dim, b.dim
    t = np.einsum("ikm,jln->ijklmn", a.table, b.table).reshape(da * db, da * db, da * db) % p
    idx = lambda i, j: i * db + j  # noqa: E731
    gens = [idx(g, 0) for g in a.gens] + [idx(0, h) for h in b.gens]
    lfac, rfac = [], []
    for i in range(da):
        for j in range(db):
            if i == 0 and j == 0:
                lfac.append(None)
                rfac.append(None)
                continue
            if i:
                g, r = a.lfac[i]
                lfac.append((idx(g, 0), idx(r, j)))
            else:
                g, r = b.lfac[j]
                lfac.append((idx(0, g), idx(0, r)))
            if j:
                r, g = b.rfac[j]
                rfac.append((idx(i, r), idx(0, g)))
            else:
                r, g = a.rfac[i]
                rfac.append((idx(r, 0), idx(g, 0)))
    labels = ["%s(x)%s" % (x, y) for x in a.labels for y in b.labels]
    eps = np.kron(a.epsilon, b.epsilon) % p
    return Alg(p=p, table=t, epsilon=eps, gens=gens, lfac=lfac, rfac=rfac,
               labels=labels, name="%s(x)%s" % (a.name, b.name))


def trace_forms(a: Alg) -> Subspace:
    """All functionals ``t`` with ``t(uv) = t(vu)``.

    Testing ``t(g x) = t(x g)`` for generators ``g`` is enough: the
    condition then propagates to products of generators.
    """
    rows = [a.table[g] - a.table[:, g, :] for g in a.gens]
    m = np.vstack(rows) % a.p if rows else np.zeros((0, a.dim), dtype=np.int64)
    return kernel_basis(m, a.p)


def symmetrizing_form(a: Alg, seed: int = 0) -> np.ndarray:
    """Find a nondegenerate trace form and store it on ``a``.

    Tries the basis of the trace-form space first, then two-element
    combinations over all scalars, then seeded random combinations.
    """
    p, d = a.p, a.dim
    space = trace_forms(a)
    if space.dim == 0:
        raise NotSymmetric("%s: no nonzero trace form" % a.name)
    best = 0
    candidates = list(space.basis)
    for t in candidates:
        r = rank(a.gram(t), p)
        best = max(best, r)
        if r == d:
            a.symform = t.copy()
            return a.symform
    k = space.dim
    for i in range(k):
        for j in range(i + 1, k):
            for c in range(1, p):
                t = (space.basis[i] + c * space.basis[j]) % p
                r = rank(a.gram(t), p)
                best = max(best, r)
                if r == d:
                    a.symform = t
                    return t
    rng = np.random.default_rng(seed)
    for _ in range(64):
        t = mm(rng.integers(0, p, size=k), space.basis, p)
        r = rank(a.gram(t), p)
        best = max(best, r)
        if r == d:
            a.symform = t
            return t
    raise NotSymmetric("%s: best Gram rank %d < dim %d over a %d-dim trace-form space"
                       % (a.name, best, d, k))


def check_symform(a: Alg, t=None) -> Report:
    t = a.symform if t is None else t
    rep = Report("symform")
    g = a.gram(t)
    rep.checked = a.dim * a.dim
    bad = np.argwhere(g != g.T)
    for u, v in bad[:5]:
        rep.fail("t(uv) != t(vu)", int(u), int(v))
    if rank(g, a.p) != a.dim:
        rep.fail("degenerate Gram matrix")
    return rep


def _coassoc_ok(a: Alg, u: int) -> bool:
    p, d = a.p, a.dim
    x = a.delta[u]
    flat = a.delta.reshape(d, d * d)
    left = mm(x.T, flat, p).reshape(d, d, d)          # [j, a, b] = sum_i x[i,j] delta[i][a,b]
    left = left.transpose(1, 2, 0)                    # (Delta (x) id): [a, b, j]
    right = mm(x, flat, p).reshape(d, d, d)           # (id (x) Delta): [i, a, b]
    return np.array_equal(left, right)


def check_hopf(a: Alg, full_coassoc_limit: int = 64) -> Report:
    """Coassociativity, counit, antipode and multiplicativity of the coproduct.

    Counit, antipode and multiplicativity are checked on every basis
    element.  Coassociativity is checked on every basis element up to
    ``full_coassoc_limit``; above that on the generators (both sides are
    algebra maps once multiplicativity holds) and every basis element of
    length <= 2.
    """
    if not a.is_hopf:
        raise HopfError("%s carries no Hopf data" % a.name)
    p, d = a.p, a.dim
    rep = Report("hopf")
    eps = a.epsilon
    eye = np.eye(d, dtype=np.int64)
    for u in range(d):
        x = a.delta[u]
        if not np.array_equal(mm(eps, x, p), eye[u]) or not np.array_equal(mm(x, eps, p), eye[u]):
            rep.fail("counit", u)
        rep.checked += 1
    # m (S (x) id) Delta = eps 1 = m (id (x) S) Delta
    st = a.antipode  # column i = S(e_i)
    sx = np.einsum("uij,ki->ukj", a.delta, st) % p   # coefficient of S(e_i) (x) e_j spread over k
    lhs = tdot(sx, a.table, ((1, 2), (0, 1)), p)
    xs = np.einsum("uij,kj->uik", a.delta, st) % p
    rhs = tdot(xs, a.table, ((1, 2), (0, 1)), p)
    want = np.outer(eps, eye[0]) % p
    for u in np.flatnonzero(np.any(lhs != want, axis=1)):
        rep.fail("antipode left", int(u))
    for u in np.flatnonzero(np.any(rhs != want, axis=1)):
        rep.fail("antipode right", int(u))
    # Delta(g u) = Delta(g) Delta(u) for generators g
    for g in a.gens:
        dg = a.delta[g]
        terms = np.argwhere(dg)
        for u in range(d):
            prod = np.zeros((d, d), dtype=np.int64)
            for i, j in terms:
                li = a.left_mult_basis(int(i))
                lj = a.left_mult_basis(int(j))
                prod = (prod + dg[i, j] * mm(mm(li, a.delta[u], p), lj.T, p)) % p
            want = a.delta_of(a.table[g, u])
            if not np.array_equal(prod, want):
                rep.fail("multiplicativity", g, u)
            rep.checked += 1
    targets = range(d) if d <= full_coassoc_limit else sorted(
        set(a.gens) | {u for u in range(d) if a.length[u] <= 2})
    for u in targets:
        if not _coassoc_ok(a, u):
            rep.fail("coassociativity", u)
        rep.checked += 1
    return rep


def with_symform(a: Alg, t) -> Alg:
    return replace(a, symform=np.asarray(t, dtype=np.int64) % a.p)
