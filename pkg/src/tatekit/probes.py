"""Window-scale evidence about finite generation of Tate cohomology modules.

No finite window certifies an asymptotic statement, so verdicts use a fixed
vocabulary: ``verified-in-window`` for exact statements about the window,
``evidence-for`` / ``evidence-against`` for trends, and ``inconclusive``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .modlinalg import Solver, Subspace, mm, rank, tdot
from .stmod import ExtensionSeq, Mod
from .structure import Tower
from .tate import (GradedAction, TateClass, _lift_through, cup, cup_matrix, module_structure, mxi_kernel_cokernel,
                   tate_basis)
from . import gadgets

VERIFIED = "verified-in-window"
FOR = "evidence-for"
AGAINST = "evidence-against"
INCONCLUSIVE = "inconclusive"


@dataclass
class ProbeReport:
    kind: str
    window: tuple
    verdict: str
    witnesses: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def __post_init__(self):
        if self.verdict not in (VERIFIED, FOR, AGAINST, INCONCLUSIVE):
            raise ValueError("unknown verdict %r" % self.verdict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["window"] = list(self.window)
        return d


def _provenance(t: Tower, **extra) -> dict:
    out = {"algebra": t.alg.name, "D": t.D}
    out.update(extra)
    return out


# --------------------------------------------------------------------------

def bfg_probe(g: GradedAction, margin: int = 2) -> ProbeReport:
    """``N(m)``: lowest degree reached by the submodule generated in degrees ``> m``.

    Rows start at ``m = lo + margin - 1`` so that every tail is generated at
    least ``margin`` above the bottom ``lo`` of the window; the table is
    BFG-consistent when every ``N(m)`` stays there too, i.e. the action never
    pushes a tail down to the bottom.
    """
    lo, hi = g.dims.lo, g.dims.hi
    p = g.module.p
    rows = []
    low_hits = []
    for m in range(lo + margin - 1, hi):
        span = {n: (np.eye(g.dims[n], dtype=np.int64) if n > m else np.zeros((g.dims[n], 0), dtype=np.int64))
                for n in g.dims.degrees()}
        changed = True
        while changed:
            changed = False
            for (a, b), tab in g.tables.items():
                if span[b].shape[1] == 0 or tab.shape[2] == 0:
                    continue
                img = tdot(tab, span[b], (1, 0), p)            # (i, target, cols)
                img = img.transpose(1, 0, 2).reshape(tab.shape[2], -1)
                if not np.any(img):
                    continue
                cur = span[a + b]
                both = np.hstack([cur, img])
                r = rank(both, p)
                if r > cur.shape[1]:
                    span[a + b] = Subspace.span(both.T, p, tab.shape[2]).basis.T.copy()
                    changed = True
        support = [n for n in g.dims.degrees() if span[n].shape[1]]
        N = min(support) if support else None
        rows.append({"m": m, "N": N})
        if N is not None and N < lo + margin:
            low_hits.append(m)
    if not any(r["N"] is not None for r in rows):
        verdict = VERIFIED
    else:
        verdict = FOR if not low_hits else AGAINST
    rep = ProbeReport("bfg", (lo, hi), verdict, rows,
                      {"module": g.module.name, "action_bound": g.bound, "margin": margin})
    if low_hits:
        rep.notes.append("tail spans reach the bottom of the window for m in %s" % low_hits)
    return rep


def regular_on_positive(t: Tower, xi: TateClass, window=None) -> ProbeReport:
    lo, hi = (0, t.D) if window is None else window
    d = xi.degree
    if d <= 0:
        raise ValueError("regularity is tested for d > 0")
    rows, ok = [], True
    for s in range(max(lo, 0), hi - d + 1):
        mat = cup_matrix(t, xi, s)
        inj = rank(mat, t.alg.p) == mat.shape[1]
        rows.append({"degree": s, "source_dim": mat.shape[1], "rank": rank(mat, t.alg.p), "injective": inj})
        ok &= inj
    if not rows:
        return ProbeReport("regularity", (lo, hi), INCONCLUSIVE, [{"reason": "window too small"}],
                           _provenance(t, xi=xi.coords.tolist(), degree=d))
    return ProbeReport("regularity", (lo, hi), VERIFIED if ok else AGAINST, rows,
                       _provenance(t, xi=xi.coords.tolist(), degree=d))


def find_regular(t: Tower, degree: int = 2, window=None) -> TateClass:
    """First basis class of the given degree that is regular in the window."""
    for c in tate_basis(t, None, degree):
        if regular_on_positive(t, c, window).verdict == VERIFIED:
            return c
    raise ValueError("no regular basis class in degree %d" % degree)


def negative_products_zero(t: Tower, window=None) -> ProbeReport:
    lo, hi = (-t.D, -1) if window is None else window
    rows, checked = [], 0
    bases = {n: tate_basis(t, None, n) for n in range(lo, min(hi, -1) + 1)}
    for a in bases:
        for b in bases:
            if a + b < lo or b < a:
                continue
            for i, x in enumerate(bases[a]):
                for j, y in enumerate(bases[b]):
                    checked += 1
                    prod = cup(t, x, y)
                    if not prod.is_zero():
                        rows.append({"degrees": [a, b], "classes": [i, j], "product": prod.coords.tolist()})
    verdict = VERIFIED if not rows else AGAINST
    wit = rows if rows else [{"checked": checked, "violations": 0}]
    rep = ProbeReport("negprod", (lo, hi), verdict, wit, _provenance(t, checked=checked))
    rep.notes.append("consequence checked in window; the depth hypothesis is not decided")
    return rep


def _k_trend(kc, need: int) -> tuple[bool, list]:
    """K^s vanishes for s >= 0 and is nonzero in at least ``need`` negative degrees."""
    rows = [{"degree": s, "dim": kc.kernel[s]} for s in sorted(kc.kernel)]
    nonneg_zero = all(r["dim"] == 0 for r in rows if r["degree"] >= 0)
    neg = [r["degree"] for r in rows if r["degree"] < 0 and r["dim"]]
    return nonneg_zero and len(neg) >= need, rows


def nonfg_report(t: Tower, m: Mod, xi: TateClass, powers=(1, 2, 3), window=None, action_bound: int = 6,
                 check_annihilation: bool = True) -> ProbeReport:
    """Evidence that ``H^*(A, m)`` is not finitely generated over ``H^*(A, k)``.

    The annihilation hypothesis is tried for ``xi^s`` with ``s`` in
    ``powers`` (those that fit in the window), stopping at the first power
    that annihilates both ``Ext(m, m)`` and ``Ext(L, L)``.
    """
    lo, hi = (-t.D, t.D) if window is None else window
    prov = _provenance(t, module=m.name, xi=xi.coords.tolist(), degree=xi.degree, powers=list(powers),
                       action_bound=action_bound)
    wit = []
    reg = regular_on_positive(t, xi, (0, hi))
    wit.append({"step": "regularity", "verdict": reg.verdict})
    neg = negative_products_zero(t, (lo, -1))
    wit.append({"step": "negative products", "verdict": neg.verdict})
    need = max(3, math.ceil((t.D - 2) / 2))
    kc = mxi_kernel_cokernel(t, xi, (lo, hi))
    k_ok, krows = _k_trend(kc, need)
    wit.append({"step": "kernel of xi", "ok": k_ok, "dims": krows})
    ann_ok = True
    if check_annihilation:
        ann_ok = False
        for s in powers:
            if xi.degree * s > t.D:
                wit.append({"step": "annihilation", "power": s, "status": "outside window"})
                continue
            xt = gadgets.power(t, xi, s)
            lt = gadgets.build_L(t, xt).module
            a1 = gadgets.annihilates(t, xt, m)
            a2 = gadgets.annihilates(t, xt, lt)
            wit.append({"step": "annihilation", "power": s, "module": a1.annihilates, "L": a2.annihilates})
            if a1.annihilates and a2.annihilates:
                ann_ok = True
                break
    g = module_structure(t, m, (lo, hi), action_bound)
    bfg = bfg_probe(g)
    wit.append({"step": "bfg", "verdict": bfg.verdict, "table": bfg.witnesses})
    dims = g.dims
    negdeg = [n for n in dims.degrees() if n < 0 and dims[n]]
    wit.append({"step": "support", "negative_degrees": negdeg, "dims": dims.as_dict()})
    # window growth: the lowest nonzero degree follows the bottom of both
    # the full window and the window shrunk by two
    growth = [bool([n for n in negdeg if n >= b]) and min(n for n in negdeg if n >= b) <= b + 1
              for b in (lo, lo + 2)]
    wit.append({"step": "window growth", "bottoms": [lo, lo + 2], "tracks": growth})
    passed = (reg.verdict == VERIFIED and neg.verdict == VERIFIED and k_ok and ann_ok and bfg.verdict == FOR
              and len(negdeg) >= need and all(growth))
    if reg.verdict != VERIFIED or not ann_ok:
        verdict = INCONCLUSIVE
    else:
        verdict = FOR if passed else INCONCLUSIVE
    rep = ProbeReport("nonfg", (lo, hi), verdict, wit, prov)
    if verdict != FOR:
        rep.notes.append("hypotheses of the non-finite-generation pipeline not met in window")
    return rep


def _extension_class(t: Tower, seq: ExtensionSeq) -> TateClass:
    p = t.alg.p
    i, j = t.degree(seq.right), t.degree(seq.left)
    psi = _lift_through(t, i, seq, t.pi[i].mat)
    delta = Solver(seq.inj.mat, p).solve_exact(mm(psi, t.iota[i + 1].mat, p))
    from .stmod import ModMap
    f = ModMap(t.T[i + 1], t.T[j], delta)
    g = t.shift(f, -j)
    sh = t.stable(i + 1 - j)
    return TateClass(i + 1 - j, g, sh)


def fg_report_extension(t: Tower, seq: ExtensionSeq, window=None) -> ProbeReport:
    """Evidence that ``H^*(A, M)`` is finitely generated for ``0 -> T_j -> M -> T_i -> 0``.

    The class of the sequence lives in degree ``i - j + 1``; when multiplication
    by it has image in finitely many degrees the cohomology of ``M`` is
    finitely generated.
    """
    lo, hi = (-t.D, t.D) if window is None else window
    try:
        t.degree(seq.left), t.degree(seq.right)
    except ValueError:
        raise ValueError("sequence must have tower modules at both ends")
    xi = _extension_class(t, seq)
    d = xi.degree
    rows, support, total = [], [], 0
    for s in range(lo, hi + 1):
        if not lo <= s + d <= hi:
            continue
        mat = cup_matrix(t, xi, s)
        r = rank(mat, t.alg.p) if mat.size else 0
        rows.append({"source": s, "target": s + d, "rank": r})
        total += r
        if r:
            support.append(s + d)
    edge = [n for n in support if n <= lo + 1 or n >= hi - 1]
    if not support:
        verdict = FOR
    elif not edge and len(support) <= 2:
        verdict = FOR
    else:
        verdict = INCONCLUSIVE
    wit = [{"class_degree": d, "class": xi.coords.tolist(), "image_degrees": support,
            "image_total_dim": total}] + rows
    rep = ProbeReport("fg-extension", (lo, hi), verdict, wit, _provenance(t, seq=seq.mid.name))
    if verdict == INCONCLUSIVE:
        rep.notes.append("image of the class is spread across the window")
    return rep


def standard_suite(t: Tower, xi: TateClass | None = None, action_bound: int = 6) -> list[ProbeReport]:
    """Regularity, negative products, non-fg for ``L_xi`` and fg for the AR sequence."""
    xi = xi if xi is not None else find_regular(t)
    L = gadgets.build_L(t, xi).module
    return [
        regular_on_positive(t, xi),
        negative_products_zero(t),
        nonfg_report(t, L, xi, action_bound=action_bound),
        fg_report_extension(t, gadgets.ar_sequence_k(t)),
    ]
