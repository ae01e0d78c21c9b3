import dataclasses

import numpy as np
import pytest

from tatekit.algebra import from_table
from tatekit.modlinalg import rank
from tatekit.stmod import Mod, ModMap, direct_sum, iso_test, stable_hom
from tatekit.structure import (NotCertifiedSymmetric, Tower, UnsupportedField, WindowError, blocks, cosyzygy,
                               primitive_idempotents, proj_module, proj_radical, projective_cover,
                               projective_free, projective_summands, radical, radical_certificate, shift_class,
                               simples, syzygy, tower)


def test_radical_dims(cyclic5, radford25, truncated25):
    assert radical(cyclic5).dim == 4
    assert radical(radford25).dim == 6
    assert radical(truncated25).dim == 3
    for a in (cyclic5, radford25, truncated25):
        assert radical_certificate(a).ok


def test_radical_vsl2(vsl2_5):
    assert radical(vsl2_5).dim == 70
    assert radical_certificate(vsl2_5).ok


def _check_idempotents(a):
    idem = primitive_idempotents(a)
    p = a.p
    tot = np.zeros(a.dim, dtype=np.int64)
    for i, e in enumerate(idem):
        assert np.array_equal(a.mul(e, e), e)
        for j, f in enumerate(idem):
            if i != j:
                assert not a.mul(e, f).any()
        tot = (tot + e) % p
    assert np.array_equal(tot, a.unit)
    return idem


def test_idempotents(radford25, cyclic5):
    idem = _check_idempotents(radford25)
    assert len(idem) == 2
    assert [rank(radford25.right_matrix(e), 5) for e in idem] == [4, 4]
    assert [e.tolist() for e in _check_idempotents(cyclic5)] == [cyclic5.unit.tolist()]


def test_idempotents_vsl2(vsl2_5):
    idem = _check_idempotents(vsl2_5)
    assert sum(rank(vsl2_5.right_matrix(e), 5) for e in idem) == 125
    b = blocks(vsl2_5)
    assert sorted(b.simple_dims) == [1, 2, 3, 4, 5]
    # multiplicity of P_lam in A is dim S_lam
    assert sum(b.proj_dim(l) * b.simple_dims[l] for l in range(b.count)) == 125


def test_unsupported_field():
    t = np.zeros((2, 2, 2), dtype=np.int64)
    t[0, 0, 0] = t[0, 1, 1] = t[1, 0, 1] = 1
    with pytest.raises(UnsupportedField):
        primitive_idempotents(from_table(3, t, [1, 0]))


def test_covers(cyclic5, radford25):
    reg = Mod.regular(radford25)
    cov = projective_cover(reg)
    assert cov.kernel.dim == 0
    cov = projective_cover(Mod.trivial(cyclic5))
    assert cov.cover.dim == 5 and cov.kernel.dim == 4 and cov.is_minimal()
    cov = projective_cover(Mod.trivial(radford25))
    assert cov.cover.dim == 4 and cov.kernel.dim == 3 and cov.is_minimal()
    assert cov.decomposition == {blocks(radford25).trivial: 1}


def test_syzygies(cyclic5, radford25):
    k = Mod.trivial(cyclic5)
    assert syzygy(k, 1).dim == 4 and syzygy(k, 2).dim == 1 and syzygy(k, 0) is k
    assert syzygy(Mod.trivial(radford25)).dim == 3
    assert syzygy(proj_module(radford25, [0, 1])).dim == 0


def test_cosyzygies(cyclic5, radford25):
    assert cosyzygy(Mod.trivial(cyclic5)).dim == 4
    k = Mod.trivial(radford25)
    back = cosyzygy(syzygy(k))
    assert iso_test(back, k).iso
    assert cosyzygy(proj_module(radford25, [1])).dim == 0
    bare = dataclasses.replace(radford25, symform=None)
    with pytest.raises(NotCertifiedSymmetric):
        cosyzygy(Mod.trivial(bare))
    with pytest.raises(NotCertifiedSymmetric):
        Tower(bare, 1)


def test_tower_dims(cyclic5, radford25):
    t = Tower(cyclic5, 4)
    assert [t.T[n].dim for n in range(-4, 5)] == [1, 4, 1, 4, 1, 4, 1, 4, 1]
    assert [m.dim for m in Tower(radford25, 0).T.values()] == [1, 3]   # T_0 and the T_1 kernel
    t = tower(radford25, 4)
    assert [t.T[n].dim for n in range(-4, 5)] == [2 * abs(n) + 1 for n in range(-4, 5)]


def test_tower_bookkeeping_and_minimality(rt):
    for n in range(-rt.D, rt.D + 1):
        # 0 -> T_n -> P_{n-1} -> T_{n-1} -> 0
        if n - 1 >= -rt.D:
            assert rt.P[n - 1].dim == rt.T[n].dim + rt.T[n - 1].dim
        assert projective_free(rt.T[n])
    for n in range(0, rt.D):
        assert rt.covers[n].is_minimal()
        assert proj_radical(rt.P[n]).contains_space(rt.iota[n + 1].image())


def test_tower_duality(rt):
    for n in range(1, rt.D + 1):
        assert rt.stable(n - 1).dim == rt.stable(-n).dim


def test_window_errors(rt):
    with pytest.raises(WindowError):
        rt.check_window(rt.D + 1)
    with pytest.raises(WindowError):
        rt.stable(-rt.D - 1)


def test_shift_identity_and_zero(rt):
    k = rt.k
    idk = ModMap.identity(k)
    up = shift_class(rt, idk, 1)
    assert up.src is rt.T[1] and up.tgt is rt.T[1]
    sh = stable_hom(rt.T[1], rt.T[1])
    assert sh.coords(up).tolist() == sh.coords(ModMap.identity(rt.T[1])).tolist()
    z = ModMap.zero(rt.T[2], k)
    assert rt.shift(z, 2).is_zero()
    assert rt.shift(z, -2).is_zero()


def test_shift_periodic_cyclic(ct):
    f = ct.stable(2).coset_reps[0]               # T_2 -> T_0 = k, T_2 = k here
    assert rank(f.mat, 5) == 1 and ct.T[2].dim == 1
    g = ct.shift(f, 2)
    assert g.src is ct.T[4] and g.tgt is ct.T[2] and rank(g.mat, 5) == 1
    h = ct.shift(f, -3)
    assert h.src is ct.T[-1] and h.tgt is ct.T[-3] and rank(h.mat, 5) == ct.T[-1].dim


def test_shift_up_down_inverse(rt):
    for n in (1, 2, 3, -2):
        sh = rt.stable(n)
        for f in sh.coset_reps:
            g = rt.down(rt.up(f))
            assert sh.coords(g).tolist() == sh.coords(f).tolist()


def test_shift_independent_of_representative(rt):
    # adding a map that factors through a projective does not change the shifted class
    sh = rt.stable(2)
    f = sh.coset_reps[0]
    for fac in sh.factoring.basis:
        h = ModMap(f.src, f.tgt, (f.mat + fac.reshape(f.mat.shape)) % 5)
        for a in (1, 2, -1):
            s2 = rt.stable(2 + a, rt.T[a])
            assert s2.coords(rt.shift(h, a)).tolist() == s2.coords(rt.shift(f, a)).tolist()


def test_projective_summands(radford25):
    reg = Mod.regular(radford25)
    assert projective_summands(reg) == [0, 1]
    m = direct_sum(Mod.trivial(radford25), proj_module(radford25, [1]))
    assert projective_summands(m) == [1]
    assert projective_free(Mod.trivial(radford25))


def test_simples(radford25):
    s = simples(radford25)
    assert [m.dim for m in s] == [1, 1]
    for m in s:
        assert m.check().ok
