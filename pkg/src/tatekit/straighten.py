"""Compile straightening presentations into multiplication tables.

A presentation lists ordered generators ``g_1 < ... < g_r`` with

* a power rule ``g_i^{n_i} -> rhs`` for each generator, and
* a swap rule ``g_j g_i -> rhs`` for each pair ``j > i``,

where every right-hand side is a combination of ordered monomials
``g_1^{a_1} ... g_r^{a_r}`` with ``a_i < n_i``.  Normal forms are computed by
rewriting; the resulting basis is the set of ordered bounded monomials.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .algebra import Alg, HopfError, Report
from .modlinalg import is_prime, mm

STEP_BUDGET = 10**6


class RewriteError(RuntimeError):
    """Rewriting exceeded its step budget."""


class PresentationError(ValueError):
    def __init__(self, msg, line=None):
        super().__init__(msg if line is None else "line %d: %s" % (line, msg))
        self.line = line


Rhs = tuple  # tuple of (coeff, exps)


@dataclass(frozen=True)
class Presentation:
    char_p: int
    generators: tuple
    bounds: tuple
    powers: dict          # gen index -> Rhs for g^bound
    swaps: dict           # (hi, lo) -> Rhs for g_hi g_lo
    epsilon: tuple
    delta: dict | None = None      # gen -> tuple of (coeff, left exps, right exps)
    antipode: dict | None = None   # gen -> Rhs
    name: str = "A"
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        p, r = self.char_p, len(self.generators)
        if not is_prime(p):
            raise PresentationError("char_p=%d is not prime" % p)
        if len(self.bounds) != r or len(self.epsilon) != r:
            raise PresentationError("bounds/epsilon must list every generator")
        for i in range(r):
            if i not in self.powers:
                raise PresentationError("missing power rule for %s" % self.generators[i])
            for j in range(i + 1, r):
                if (j, i) not in self.swaps:
                    raise PresentationError("missing swap rule %s*%s" % (self.generators[j], self.generators[i]))
        for rhs in itertools.chain(self.powers.values(), self.swaps.values(),
                                   (self.antipode or {}).values()):
            for _, e in rhs:
                self._check_normal(e)
        for terms in (self.delta or {}).values():
            for _, le, re in terms:
                self._check_normal(le)
                self._check_normal(re)

    def _check_normal(self, exps):
        if len(exps) != len(self.generators) or any(not 0 <= a < n for a, n in zip(exps, self.bounds)):
            raise PresentationError("right-hand side monomial %r is not in normal form" % (exps,))

    @property
    def has_hopf(self) -> bool:
        return self.delta is not None

    def word(self, exps) -> tuple:
        return tuple(i for i, a in enumerate(exps) for _ in range(a))

    def to_dict(self) -> dict:
        g = self.generators

        def rhs(r):
            return [{"coeff": int(c), "monomial": list(e)} for c, e in r]

        out = {
            "name": self.name,
            "char_p": self.char_p,
            "generators": list(g),
            "powers": [{"gen": g[i], "bound": self.bounds[i], "rhs": rhs(self.powers[i])}
                       for i in range(len(g))],
            "swaps": [{"hi": g[j], "lo": g[i], "rhs": rhs(self.swaps[(j, i)])}
                      for (j, i) in sorted(self.swaps)],
            "epsilon": [int(x) for x in self.epsilon],
        }
        if self.delta is not None:
            out["hopf"] = {
                "delta": [{"gen": g[i], "terms": [{"coeff": int(c), "left": list(le), "right": list(re)}
                                                  for c, le, re in self.delta[i]]}
                          for i in sorted(self.delta)],
                "antipode": [{"gen": g[i], "rhs": rhs(self.antipode[i])} for i in sorted(self.antipode)],
            }
        return out


def _parse_rhs(items, p, ngen, where):
    out = []
    for t in items:
        try:
            c, e = int(t["coeff"]), tuple(int(x) for x in t["monomial"])
        except (KeyError, TypeError, ValueError) as exc:
            raise PresentationError("%s: bad rhs term %r (%s)" % (where, t, exc))
        if len(e) != ngen:
            raise PresentationError("%s: monomial %r has wrong length" % (where, e))
        if c % p:
            out.append((c % p, e))
    return tuple(out)


def from_dict(d: dict) -> Presentation:
    try:
        p = int(d["char_p"])
        gens = tuple(d["generators"])
        pos = {g: i for i, g in enumerate(gens)}
        r = len(gens)
        bounds = [None] * r
        powers = {}
        for rule in d["powers"]:
            i = pos[rule["gen"]]
            bounds[i] = int(rule["bound"])
            powers[i] = rule["rhs"]
        if any(b is None or b < 1 for b in bounds):
            raise PresentationError("every generator needs a bound >= 1")
        swaps = {}
        for rule in d["swaps"]:
            swaps[(pos[rule["hi"]], pos[rule["lo"]])] = rule["rhs"]
        eps = tuple(int(x) % p for x in d["epsilon"])
        hopf = d.get("hopf")
    except KeyError as exc:
        raise PresentationError("missing or unknown field %s" % exc)
    pres_kw = {}
    # bounds are needed before rhs validation, so parse in two steps
    powers = {i: _parse_rhs(v, p, r, "power %s" % gens[i]) for i, v in powers.items()}
    swaps = {k: _parse_rhs(v, p, r, "swap %s*%s" % (gens[k[0]], gens[k[1]])) for k, v in swaps.items()}
    if hopf is not None:
        delta = {}
        for ent in hopf["delta"]:
            terms = []
            for t in ent["terms"]:
                c = int(t["coeff"]) % p
                if c:
                    terms.append((c, tuple(t["left"]), tuple(t["right"])))
            delta[pos[ent["gen"]]] = tuple(terms)
        anti = {pos[ent["gen"]]: _parse_rhs(ent["rhs"], p, r, "antipode") for ent in hopf["antipode"]}
        pres_kw = {"delta": delta, "antipode": anti}
    return Presentation(char_p=p, generators=gens, bounds=tuple(bounds), powers=powers, swaps=swaps,
                        epsilon=eps, name=d.get("name", "A"), **pres_kw)


def load(path) -> Presentation:
    """Read a presentation file (JSON with the fixed field names)."""
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationError(exc.msg, line=exc.lineno)
    return from_dict(data)


def dump(pres: Presentation, path):
    with open(path, "w") as fh:
        json.dump(pres.to_dict(), fh, indent=1, sort_keys=True)
        fh.write("\n")


class Rewriter:
    """Normal forms in a straightening presentation.

    Multiplication by one generator on the right is memoized; a word is
    normalized by folding its letters in from the left.  Out-of-order pairs
    and saturated powers at the end of a monomial are rewritten first, so
    every call only recurses on strictly shorter prefixes.
    """

    def __init__(self, pres: Presentation, budget: int = STEP_BUDGET):
        self.pres = pres
        self.p = pres.char_p
        self.r = len(pres.generators)
        self.budget = budget
        self._steps = 0
        self.mul_gen = lru_cache(maxsize=None)(self._mul_gen)

    def _tick(self):
        self._steps += 1
        if self._steps > self.budget:
            raise RewriteError("rewrite step budget %d exceeded" % self.budget)

    def _mul_gen(self, exps: tuple, g: int) -> tuple:
        self._tick()
        last = max((i for i, a in enumerate(exps) if a), default=-1)
        if g >= last:
            e = list(exps)
            e[g] += 1
            if e[g] < self.pres.bounds[g]:
                return ((tuple(e), 1),)
            e[g] = 0
            return self._mul_rhs(tuple(e), self.pres.powers[g])
        e = list(exps)
        e[last] -= 1
        return self._mul_rhs(tuple(e), self.pres.swaps[(last, g)])

    def _mul_rhs(self, prefix, rhs) -> tuple:
        acc: dict = {}
        for c, mono in rhs:
            for m, k in self.mul_mono(prefix, mono):
                acc[m] = (acc.get(m, 0) + c * k) % self.p
        return tuple((m, k) for m, k in sorted(acc.items()) if k)

    def mul_mono(self, exps, mono) -> tuple:
        cur = {tuple(exps): 1}
        for g in self.pres.word(mono):
            nxt: dict = {}
            for m, c in cur.items():
                for m2, k in self.mul_gen(m, g):
                    nxt[m2] = (nxt.get(m2, 0) + c * k) % self.p
            cur = {m: c for m, c in nxt.items() if c}
        return tuple(sorted(cur.items()))

    def normal_form(self, word) -> dict:
        self._steps = 0
        cur = {(0,) * self.r: 1}
        for g in word:
            if not 0 <= g < self.r:
                raise PresentationError("unknown generator index %r" % g)
            nxt: dict = {}
            for m, c in cur.items():
                for m2, k in self.mul_gen(m, g):
                    nxt[m2] = (nxt.get(m2, 0) + c * k) % self.p
            cur = {m: c for m, c in nxt.items() if c}
        return cur


def normal_form(pres: Presentation, word) -> dict:
    """Normal form of a word (generator names or indices) as ``{exps: coeff}``."""
    pos = {name: i for i, name in enumerate(pres.generators)}
    w = [pos[x] if isinstance(x, str) else int(x) for x in word]
    return Rewriter(pres).normal_form(w)


def basis(pres: Presentation) -> list:
    """Ordered bounded monomials in lexicographic order."""
    return list(itertools.product(*[range(n) for n in pres.bounds]))


def _label(pres, exps):
    parts = []
    for name, a in zip(pres.generators, exps):
        if a == 1:
            parts.append(name)
        elif a > 1:
            parts.append("%s^%d" % (name, a))
    return "*".join(parts) or "1"


def _vec(index, terms, d, p):
    v = np.zeros(d, dtype=np.int64)
    for c, e in terms:
        v[index[e]] = (v[index[e]] + c) % p
    return v


def build_algebra(pres: Presentation, budget: int = STEP_BUDGET) -> Alg:
    """Tabulate the presented algebra, extending Hopf data multiplicatively."""
    p = pres.char_p
    mons = basis(pres)
    d = len(mons)
    index = {m: i for i, m in enumerate(mons)}
    rw = Rewriter(pres, budget)
    r = len(pres.generators)
    unit_e = tuple([0] * r)
    gen_basis = []
    for i in range(r):
        e = [0] * r
        if pres.bounds[i] > 1:
            e[i] = 1
            gen_basis.append(index[tuple(e)])
        else:
            gen_basis.append(None)
    # right multiplication by each generator
    rmat = []
    for g in range(r):
        m = np.zeros((d, d), dtype=np.int64)
        for u, mon in enumerate(mons):
            rw._steps = 0
            for m2, c in rw.mul_gen(mon, g):
                m[index[m2], u] = c
        rmat.append(m)
    lfac: list = [None] * d
    rfac: list = [None] * d
    for u, mon in enumerate(mons):
        if mon == unit_e:
            continue
        w = pres.word(mon)
        first, last = w[0], w[-1]
        e = list(mon); e[first] -= 1
        lfac[u] = (gen_basis[first], index[tuple(e)])
        e = list(mon); e[last] -= 1
        rfac[u] = (index[tuple(e)], gen_basis[last])
    if index[unit_e] != 0:
        raise PresentationError("unit must be the first basis monomial")
    # column u of mats[v] is u * v
    mats = [None] * d
    mats[0] = np.eye(d, dtype=np.int64)
    for v in Alg.order_by([None if f is None else (f[1], f[0]) for f in rfac]):
        if rfac[v] is None:
            continue
        rest, g = rfac[v]
        gi = gen_basis.index(g)
        mats[v] = mm(rmat[gi], mats[rest], p)
    table = np.empty((d, d, d), dtype=np.int64)
    for v in range(d):
        table[:, v, :] = mats[v].T
    eps = np.zeros(d, dtype=np.int64)
    for u, mon in enumerate(mons):
        val = 1
        for i, a in enumerate(mon):
            val = val * pow(int(pres.epsilon[i]), a, p) % p
        eps[u] = val
    gens = [g for g in gen_basis if g is not None]
    alg = Alg(p=p, table=table, epsilon=eps, gens=gens, lfac=lfac, rfac=rfac,
              labels=[_label(pres, m) for m in mons], name=pres.name)
    for u in range(d):
        for g in gens:
            if eps[g] * eps[u] % p != (eps @ alg.table[g, u]) % p:
                raise PresentationError("augmentation is not multiplicative on %s*%s"
                                        % (alg.labels[g], alg.labels[u]))
    if pres.has_hopf:
        _attach_hopf(pres, alg, index, gen_basis)
    return alg


def _attach_hopf(pres, alg, index, gen_basis):
    p, d = alg.p, alg.dim
    r = len(pres.generators)

    def simple(le, re):
        m = np.zeros((d, d), dtype=np.int64)
        m[index[le], index[re]] = 1
        return m

    dgen = {}
    for i in range(r):
        m = np.zeros((d, d), dtype=np.int64)
        for c, le, re in pres.delta.get(i, ()):
            m = (m + c * simple(tuple(le), tuple(re))) % p
        dgen[i] = m

    rmult = [alg.right_matrix(alg.basis_vec(u)) for u in range(d)]

    def times(x, y):
        # x * y in A (x) A where y is a coefficient matrix with few entries
        out = np.zeros((d, d), dtype=np.int64)
        for a, b in np.argwhere(y):
            out = (out + y[a, b] * mm(mm(rmult[a], x, p), rmult[b].T, p)) % p
        return out

    delta = np.zeros((d, d, d), dtype=np.int64)
    delta[0, 0, 0] = 1
    for v in Alg.order_by([None if f is None else (f[1], f[0]) for f in alg.rfac]):
        if alg.rfac[v] is None:
            continue
        rest, g = alg.rfac[v]
        delta[v] = times(delta[rest], dgen[gen_basis.index(g)])

    def delta_word(word):
        x = np.zeros((d, d), dtype=np.int64)
        x[0, 0] = 1
        for g in word:
            x = times(x, dgen[g])
        return x

    def delta_rhs(rhs):
        x = np.zeros((d, d), dtype=np.int64)
        for c, e in rhs:
            x = (x + c * delta[index[e]]) % p
        return x

    for i in range(r):
        if not np.array_equal(delta_word([i] * pres.bounds[i]), delta_rhs(pres.powers[i])):
            raise HopfError("coproduct does not respect the power rule of %s" % pres.generators[i])
    for (j, i), rhs in pres.swaps.items():
        if not np.array_equal(delta_word([j, i]), delta_rhs(rhs)):
            raise HopfError("coproduct does not respect the swap rule %s*%s"
                            % (pres.generators[j], pres.generators[i]))
    # antipode: anti-multiplicative extension S(rest * g) = S(g) S(rest)
    sgen = {i: _vec(index, pres.antipode[i], d, p) for i in range(r)}
    anti = np.zeros((d, d), dtype=np.int64)
    anti[0, 0] = 1
    for v in Alg.order_by([None if f is None else (f[1], f[0]) for f in alg.rfac]):
        if alg.rfac[v] is None:
            continue
        rest, g = alg.rfac[v]
        anti[:, v] = alg.mul(sgen[gen_basis.index(g)], anti[:, rest])
    alg.delta = delta
    alg.antipode = anti


def verify_presentation(a: Alg, exhaustive: bool | None = None, samples: int = 10**5,
                        seed: int = 0) -> Report:
    """Associativity and unit laws of a tabulated algebra.

    Exhaustive over all basis triples up to dimension 64 (or when forced);
    otherwise ``samples`` random triples from a fixed seed.
    """
    p, d = a.p, a.dim
    rep = Report("presentation")
    t = a.table
    eye = np.eye(d, dtype=np.int64)
    if not (np.array_equal(t[0] % p, eye) and np.array_equal(t[:, 0, :] % p, eye)):
        rep.fail("unit law")
    if exhaustive is None:
        exhaustive = d <= 64
    flat = t.reshape(d, d * d)
    if exhaustive:
        flat2 = t.reshape(d * d, d)
        for u in range(d):
            # (u v) w  and  u (v w)  for all v, w
            lhs = mm(t[u], flat, p).reshape(d, d, d)
            rhs = mm(flat2, t[u], p).reshape(d, d, d)
            bad = np.argwhere(np.any(lhs != rhs, axis=2))
            for v, w in bad[:3]:
                rep.fail("associativity", u, int(v), int(w))
            rep.checked += d * d
        return rep
    rng = np.random.default_rng(seed)
    u, v, w = (rng.integers(0, d, size=samples) for _ in range(3))
    tf = t.astype(np.float64)
    lhs = np.zeros((samples, d))
    rhs = np.zeros((samples, d))
    # group the samples by their outer factor so each group is one matmul
    for k in range(d):
        sel = np.flatnonzero(w == k)
        if sel.size:
            lhs[sel] = tf[u[sel], v[sel]] @ tf[:, k, :]
        sel = np.flatnonzero(u == k)
        if sel.size:
            rhs[sel] = tf[v[sel], w[sel]] @ tf[k]
    bad = np.flatnonzero(np.any(np.mod(lhs, p) != np.mod(rhs, p), axis=1))
    for i in bad[:3]:
        rep.fail("associativity", int(u[i]), int(v[i]), int(w[i]))
    rep.checked = samples
    return rep
