import pytest

from tatekit import atlas
from tatekit.algebra import check_hopf
from tatekit.straighten import basis, verify_presentation


def test_radford_entries(radford25):
    e = atlas.radford(2, 5)
    assert radford25.dim == 8 and e.presentation.meta["omega"] == 4
    assert e.expected_dims(0, 4) == [1, 0, 2, 0, 3]
    assert e.expected_dims(-4, -1) == [0, 2, 0, 1]
    e3 = atlas.radford(3, 7)
    w = e3.presentation.meta["omega"]
    assert len(basis(e3.presentation)) == 27 and pow(w, 3, 7) == 1 and w != 1
    with pytest.raises(atlas.PreconditionError):
        atlas.radford(3, 5)
    with pytest.raises(atlas.PreconditionError):
        atlas.radford(2, 9)


def test_vsl2_entries(vsl2_5):
    e = atlas.vsl2(5)
    assert vsl2_5.dim == 125 and e.expected_dims(0, 6) == [1, 0, 3, 0, 5, 0, 7]
    with pytest.raises(atlas.PreconditionError):
        atlas.vsl2(3)
    assert len(basis(atlas.vsl2(7).presentation)) == 343


def test_truncated_entries(truncated25):
    e = atlas.truncated(2, 5)
    assert truncated25.dim == 4 and e.expected_dims(0, 4) == [1, 2, 3, 4, 5]
    assert e.expected_dims(-4, -1) == [4, 3, 2, 1]
    assert atlas.truncated(3, 7).build().dim == 9
    assert not truncated25.is_hopf


def test_cyclic_entries(cyclic5):
    e = atlas.cyclic(5)
    assert cyclic5.dim == 5 and e.expected_dims(-10, 10) == [1] * 21
    assert e.expected_verdicts["negprod"] == "evidence-against"
    with pytest.raises(atlas.PreconditionError):
        atlas.cyclic(2)


def test_entries_verified(radford25, cyclic5, truncated25):
    for a in (radford25, cyclic5, truncated25):
        assert verify_presentation(a).ok
        assert a.symform is not None
        if a.is_hopf:
            assert check_hopf(a).ok


def test_by_key():
    assert atlas.by_key("radford-2-5").key == "radford-2-5"
    assert atlas.by_key("vsl2-5").key == "vsl2-5"
    assert atlas.by_key("cyclic-5").name == "cyclic"
    with pytest.raises(KeyError):
        atlas.by_key("heisenberg-3")
    with pytest.raises(KeyError):
        atlas.by_key("radford-two-5")


def test_entry_build_is_cached():
    e = atlas.cyclic(7)
    assert e.build() is e.build()
