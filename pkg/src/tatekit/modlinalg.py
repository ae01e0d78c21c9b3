"""Dense linear algebra over a prime field F_p.

Matrices are numpy ``int64`` arrays with entries reduced to ``[0, p)``.
Every function takes the modulus explicitly; nothing here keeps state.
Products go through float64 BLAS whenever the accumulated sums are
guaranteed to stay below 2**53, which is the case for every desk-scale
computation in this package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_EXACT = float(2**53)


class LinAlgError(ValueError):
    pass


class NoRootError(LinAlgError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def inv(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod %d" % p)
    return pow(a, p - 2, p)


def asmat(m, p: int) -> np.ndarray:
    return np.asarray(m, dtype=np.int64) % p


def mm(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Matrix product mod p."""
    a = np.asarray(a)
    b = np.asarray(b)
    inner = a.shape[-1] if a.ndim else 1
    if inner * float(p - 1) ** 2 < _EXACT:
        r = np.matmul(a.astype(np.float64), b.astype(np.float64))
        return np.mod(r, p).astype(np.int64)
    # exact fallback for huge moduli
    r = np.matmul(a.astype(object), b.astype(object))
    return (r % p).astype(np.int64)


def tdot(a: np.ndarray, b: np.ndarray, axes, p: int) -> np.ndarray:
    """``np.tensordot`` mod p (float64 route, exact at desk scale)."""
    r = np.tensordot(np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64), axes=axes)
    return np.mod(r, p).astype(np.int64)


def _rref_inplace(a: np.ndarray, p: int, ncols: int | None = None) -> list[int]:
    rows, cols = a.shape
    if ncols is None:
        ncols = cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = (a[r] * inv(piv, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return pivots


def _rref_tall(a: np.ndarray, p: int, chunk: int) -> tuple[np.ndarray, list[int]]:
    # Incremental row reduction for matrices with many more rows than columns:
    # rank never exceeds the column count, so the running basis stays small.
    cols = a.shape[1]
    basis = np.zeros((0, cols), dtype=np.int64)
    pivots: list[int] = []
    for start in range(0, a.shape[0], chunk):
        block = a[start:start + chunk]
        if basis.shape[0]:
            block = (block - mm(block[:, pivots], basis, p)) % p
        block = block[np.any(block != 0, axis=1)]
        if block.shape[0] == 0:
            continue
        stacked = np.vstack([basis, block])
        piv = _rref_inplace(stacked, p)
        basis = stacked[:len(piv)].copy()
        pivots = piv
        if len(pivots) == cols:
            break
    return basis, pivots


def rref(m, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and strictly increasing pivot columns.

    Pivoting takes the first nonzero entry, so output is reproducible.
    The returned matrix has the same shape as the input; rows past the
    rank are zero.
    """
    a = np.array(m, dtype=np.int64, copy=True) % p
    if a.ndim != 2:
        raise LinAlgError("rref needs a 2-d matrix")
    rows, cols = a.shape
    if rows > 4 * max(cols, 1) and rows > 256:
        basis, pivots = _rref_tall(a, p, chunk=max(2 * cols, 64))
        out = np.zeros_like(a)
        out[:basis.shape[0]] = basis
        return out, pivots
    pivots = _rref_inplace(a, p)
    return a, pivots


def rank(m, p: int) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    if m.shape[0] > m.shape[1]:
        m = m.T
    return len(rref(m, p)[1])


def row_basis(m, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced echelon basis (rank x cols) of the row space."""
    m = np.asarray(m, dtype=np.int64)
    if m.ndim == 1:
        m = m.reshape(1, -1)
    if m.shape[0] == 0:
        return np.zeros((0, m.shape[1]), dtype=np.int64), []
    r, piv = rref(m, p)
    return r[:len(piv)].copy(), piv


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F_p^n stored as a reduced echelon basis (rows)."""

    p: int
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple

    @classmethod
    def span(cls, vectors, p: int, ambient_dim: int | None = None) -> "Subspace":
        v = np.asarray(vectors, dtype=np.int64)
        if v.ndim == 1:
            v = v.reshape(1, -1) if v.size else np.zeros((0, ambient_dim or 0), dtype=np.int64)
        n = v.shape[1] if ambient_dim is None else ambient_dim
        if v.shape[0] == 0:
            return cls(p, n, np.zeros((0, n), dtype=np.int64), ())
        b, piv = row_basis(v, p)
        return cls(p, n, b, tuple(piv))

    @classmethod
    def zero(cls, n: int, p: int) -> "Subspace":
        return cls(p, n, np.zeros((0, n), dtype=np.int64), ())

    @classmethod
    def full(cls, n: int, p: int) -> "Subspace":
        return cls(p, n, np.eye(n, dtype=np.int64), tuple(range(n)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def _check(self, other: "Subspace"):
        if other.ambient_dim != self.ambient_dim:
            raise LinAlgError("ambient dimension mismatch: %d vs %d"
                              % (self.ambient_dim, other.ambient_dim))

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Canonical representative of ``v`` (rows allowed) modulo the subspace."""
        v = np.asarray(v, dtype=np.int64) % self.p
        if self.dim == 0:
            return v
        piv = list(self.pivots)
        if v.ndim == 1:
            return (v - mm(v[piv], self.basis, self.p)) % self.p
        return (v - mm(v[:, piv], self.basis, self.p)) % self.p

    def coords(self, v: np.ndarray) -> np.ndarray:
        """Coordinates of members ``v`` against the echelon basis."""
        v = np.asarray(v, dtype=np.int64)
        return v[..., list(self.pivots)] % self.p

    def contains(self, v: np.ndarray) -> bool:
        return not np.any(self.reduce(v))

    def contains_space(self, other: "Subspace") -> bool:
        self._check(other)
        return other.dim == 0 or not np.any(self.reduce(other.basis))

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(np.vstack([self.basis, other.basis]), self.p, self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim, self.p)
        stacked = np.vstack([self.basis, (-other.basis) % self.p]).T
        k = kernel_basis(stacked, self.p)
        if k.dim == 0:
            return Subspace.zero(self.ambient_dim, self.p)
        u = k.basis[:, :self.dim]
        return Subspace.span(mm(u, self.basis, self.p), self.p, self.ambient_dim)

    def complement_indices(self) -> list[int]:
        piv = set(self.pivots)
        return [i for i in range(self.ambient_dim) if i not in piv]

    def complement(self) -> "Subspace":
        """Span of the standard vectors at non-pivot positions."""
        idx = self.complement_indices()
        b = np.zeros((len(idx), self.ambient_dim), dtype=np.int64)
        b[np.arange(len(idx)), idx] = 1
        return Subspace(self.p, self.ambient_dim, b, tuple(idx))

    def quotient_projection(self) -> np.ndarray:
        """Matrix of F_p^n -> F_p^n / self in complement coordinates."""
        idx = self.complement_indices()
        eye = np.eye(self.ambient_dim, dtype=np.int64)
        red = self.reduce(eye)  # rows: reduced standard vectors
        return red[:, idx].T.copy()

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.pivots == other.pivots
                and np.array_equal(self.basis, other.basis))

    def __repr__(self):
        return "Subspace(dim=%d, ambient=%d, p=%d)" % (self.dim, self.ambient_dim, self.p)


def kernel_basis(m, p: int) -> Subspace:
    """Null space of ``m`` acting on column vectors."""
    m = np.asarray(m, dtype=np.int64) % p
    rows, cols = m.shape
    if rows == 0:
        return Subspace.full(cols, p)
    r, piv = rref(m, p)
    free = [c for c in range(cols) if c not in set(piv)]
    if not free:
        return Subspace.zero(cols, p)
    k = np.zeros((len(free), cols), dtype=np.int64)
    k[np.arange(len(free)), free] = 1
    if piv:
        k[:, piv] = (-r[:len(piv)][:, free].T) % p
    return Subspace.span(k, p, cols)


def image_basis(m, p: int) -> Subspace:
    """Column space of ``m``."""
    m = np.asarray(m, dtype=np.int64)
    return Subspace.span(m.T, p, m.shape[0])


def solve(m, b, p: int):
    """Some ``x`` with ``m @ x == b`` (mod p), or ``None`` if inconsistent.

    ``b`` may be a vector or a matrix of right-hand sides; for a matrix
    the result is ``None`` unless every column is consistent.
    """
    m = np.asarray(m, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    vec = b.ndim == 1
    if vec:
        b = b.reshape(-1, 1)
    rows, cols = m.shape
    if b.shape[0] != rows:
        raise LinAlgError("right-hand side has %d rows, matrix has %d" % (b.shape[0], rows))
    aug = np.hstack([m, b])
    if rows > 4 * (cols + b.shape[1]) and rows > 256:
        red, allpiv = rref(aug, p)
        if any(c >= cols for c in allpiv):
            return None
        piv = allpiv
    else:
        piv = _rref_inplace(aug, p, ncols=cols)
        if np.any(aug[len(piv):, cols:]):
            return None
        red = aug
    x = np.zeros((cols, b.shape[1]), dtype=np.int64)
    if piv:
        x[piv] = red[:len(piv), cols:]
    return x[:, 0] if vec else x


class Solver:
    """Reusable solver for ``m @ x = b`` with a fixed matrix ``m``."""

    def __init__(self, m, p: int):
        m = np.asarray(m, dtype=np.int64) % p
        self.p = p
        self.shape = m.shape
        rows, cols = m.shape
        aug = np.hstack([m, np.eye(rows, dtype=np.int64)])
        piv = _rref_inplace(aug, p, ncols=cols)
        self.pivots = piv
        self.rank = len(piv)
        self._t = aug[:, cols:].copy()

    def solve(self, b):
        b = np.asarray(b, dtype=np.int64) % self.p
        c = mm(self._t, b, self.p)
        if np.any(c[self.rank:]):
            return None
        x = np.zeros((self.shape[1],) + b.shape[1:], dtype=np.int64)
        x[self.pivots] = c[:self.rank]
        return x

    def solve_exact(self, b):
        x = self.solve(b)
        if x is None:
            raise LinAlgError("inconsistent linear system")
        return x


def inverse(m, p: int) -> np.ndarray:
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[0]
    if m.shape != (n, n):
        raise LinAlgError("inverse of a non-square matrix")
    s = Solver(m, p)
    if s.rank != n:
        raise LinAlgError("singular matrix")
    return s.solve_exact(np.eye(n, dtype=np.int64))


def mat_pow(m: np.ndarray, e: int, modulus: int) -> np.ndarray:
    """``m**e`` with entries mod an arbitrary (not necessarily prime) modulus."""
    n = m.shape[0]
    result = np.eye(n, dtype=np.int64)
    base = np.asarray(m, dtype=np.int64) % modulus
    while e:
        if e & 1:
            result = mm(result, base, modulus)
        e >>= 1
        if e:
            base = mm(base, base, modulus)
    return result


def primitive_root_of_unity(p: int, n: int) -> int:
    """Smallest element of F_p of multiplicative order exactly ``n``."""
    if not is_prime(p):
        raise LinAlgError("%d is not prime" % p)
    if n < 1 or (p - 1) % n:
        raise NoRootError("F_%d has no primitive %d-th root of unity (%d does not divide %d)"
                          % (p, n, n, p - 1))
    for w in range(1, p):
        if pow(w, n, p) != 1:
            continue
        if all(pow(w, k, p) != 1 for k in range(1, n)):
            return w
    raise NoRootError("no root found")  # unreachable for prime p
