"""Modules and sequences built from cohomology classes.

* ``build_L``: the kernel ``L_xi`` of a representative ``T_d -> k``, or
  ``T_d + T_1`` for the zero class;
* ``extension_from_class``: pushout of ``Omega N -> P(N)`` along a map
  ``Omega N -> L``, giving an extension of ``N`` by ``L``;
* ``ar_sequence_k``: the almost split sequence ending at k, from the
  nonzero class in degree -1;
* ``xi_on_module`` / ``annihilates``: the sequence representing
  ``xi . Id_M`` and the two tests of whether ``xi`` kills ``Ext(M, M)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .modlinalg import Subspace, mm
from .stmod import (ExtensionSeq, Mod, ModMap, QuoMod, SubMod, SumMod, direct_sum, panel, sequence_splits,
                    tensor_mod)
from .structure import Tower, cosyzygy, projective_free, syzygy
from .tate import TateClass, cup, pairing_base, tate_basis


class AnnihilationMismatch(RuntimeError):
    """The splitting test and the panel test disagree."""


def cocycle_rep(xi: TateClass) -> ModMap:
    """Homomorphism ``T_d -> k`` representing ``xi`` (the stored coset representative)."""
    if xi.degree <= 0:
        raise ValueError("cocycle representatives are used for degrees d > 0, got %d" % xi.degree)
    return xi.rep


@dataclass(eq=False)
class LXiData:
    xi: TateClass
    degree: int
    rep_map: ModMap
    module: Mod
    seq: ExtensionSeq | None = None
    provenance: dict = field(default_factory=dict)

    @property
    def is_zero_class(self) -> bool:
        return self.seq is None


def build_L(t: Tower, xi: TateClass, allow_nonpositive: bool = False) -> LXiData:
    """``L_xi`` with the sequence ``0 -> L_xi -> T_d -> k -> 0`` when ``xi != 0``."""
    d = xi.degree
    if d <= 0 and not allow_nonpositive:
        raise ValueError("L_xi needs d > 0, got %d" % d)
    f = xi.rep
    prov = {"degree": d, "coords": [int(c) for c in xi.coords]}
    if xi.is_zero():
        mod = direct_sum(t.T[d], t.T[1])
        return LXiData(xi, d, ModMap.zero(t.T[d], t.k), mod, None, prov)
    if not f.is_surjective():
        raise ValueError("representative is nonzero in stable Hom but not surjective onto k")
    L = SubMod(t.T[d], f.kernel(), name="L[%d]" % d)
    seq = ExtensionSeq(L, t.T[d], t.k, L.inclusion(), f)
    prov["projective_free"] = projective_free(L)
    return LXiData(xi, d, f, L, seq, prov)


def power(t: Tower, xi: TateClass, k: int) -> TateClass:
    if k < 1:
        raise ValueError("power needs k >= 1")
    t.check_window(xi.degree * k)
    out = xi
    for _ in range(k - 1):
        out = cup(t, xi, out)
    return out


def extension_from_class(eta: ModMap, inc: ModMap, proj: ModMap, name="E") -> ExtensionSeq:
    """Extension ``0 -> L -> E -> N -> 0`` classified by ``eta: Omega N -> L``.

    ``inc: Omega N -> P`` and ``proj: P -> N`` form the presenting sequence;
    ``E`` is the pushout ``(P + L) / {(inc x, -eta x)}``.
    """
    L, P, N = eta.tgt, inc.tgt, proj.tgt
    p = L.p
    S = SumMod([P, L], name="%s+%s" % (P.name, L.name))
    rel = np.vstack([inc.mat, (-eta.mat) % p])                 # (dim P + dim L) x dim Omega N
    E = QuoMod(S, Subspace.span(rel.T, p, S.dim), name=name)
    inj = ModMap(L, E, mm(E.proj, S.injection(1).mat, p))
    surj = ModMap(E, N, mm(mm(proj.mat, S.projection(0).mat, p), E.lift, p))
    return ExtensionSeq(L, E, N, inj, surj)


def class_extension(t: Tower, xi: TateClass, name="E") -> ExtensionSeq:
    """``0 -> k -> E -> T_{d-1} -> 0`` for ``xi`` in degree ``d`` (so ``xi: Omega T_{d-1} -> k``)."""
    d = xi.degree
    t.check_window(d, d - 1)
    return extension_from_class(xi.rep, t.iota[d], t.pi[d - 1], name=name)


def ar_sequence_k(t: Tower) -> ExtensionSeq:
    """Almost split sequence ``0 -> T_2 -> M -> k -> 0``.

    Its class in ``Ext^1(k, T_2) = stable Hom(T_1, T_2)`` is the double
    shift of the basis class of ``H^{-1}(A, k)``.
    """
    base = pairing_base(t)
    xi = base.coset_reps[0]
    eta = t.shift(xi, 2)                       # T_1 -> T_2
    return extension_from_class(eta, t.iota[1], t.pi[0], name="AR(k)")


def _tensor_map(f: ModMap, m: Mod, src: Mod, tgt: Mod) -> ModMap:
    eye = np.eye(m.dim, dtype=np.int64)
    return ModMap(src, tgt, np.kron(f.mat, eye))


def xi_on_module(t: Tower, xi: TateClass, m: Mod):
    """``0 -> M -> E (x) M -> T_{d-1} (x) M -> 0`` representing ``xi . Id_M``.

    Here ``E`` is the middle term of ``class_extension`` (stably
    ``Omega^{-1} L_xi``).  Returns ``(sequence, splits)``.
    """
    base = class_extension(t, xi)
    mid = tensor_mod(base.mid, m)
    right = tensor_mod(base.right, m)
    # k (x) M has the same action matrices as M
    inj = _tensor_map(base.inj, m, m, mid)
    surj = _tensor_map(base.surj, m, mid, right)
    seq = ExtensionSeq(m, mid, right, inj, surj)
    return seq, sequence_splits(seq)


def _shift_module(m: Mod, n: int) -> Mod:
    return syzygy(m, n) if n >= 0 else cosyzygy(m, -n)


@dataclass
class AnnihilationVerdict:
    annihilates: bool
    splits: bool
    panels_agree: bool
    panel_left: tuple
    panel_right: tuple

    def __bool__(self):
        return self.annihilates


def annihilates(t: Tower, xi: TateClass, m: Mod, degrees=range(-2, 3)) -> AnnihilationVerdict:
    """Does ``xi`` annihilate ``Ext^*(M, M)``?  Two independent routes must agree."""
    _, splits = xi_on_module(t, xi, m)
    data = build_L(t, xi, allow_nonpositive=True)
    left = panel(tensor_mod(data.module, m), t, degrees)
    right = panel(direct_sum(_shift_module(m, 1), _shift_module(m, xi.degree)), t, degrees)
    agree = left == right
    if agree != splits:
        raise AnnihilationMismatch("degree %d class on %s: sequence %s, panels %s vs %s"
                                   % (xi.degree, m.name, "splits" if splits else "does not split", left, right))
    return AnnihilationVerdict(splits, splits, agree, left, right)


def negative_class(t: Tower, degree: int = -1) -> TateClass:
    basis = tate_basis(t, None, degree)
    if not basis:
        raise ValueError("H^%d(A, k) is zero" % degree)
    return basis[0]
