import dataclasses
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tatekit import atlas
from tatekit.algebra import HopfError
from tatekit.straighten import (PresentationError, RewriteError, Rewriter, basis, build_algebra, dump, from_dict,
                                load, normal_form, verify_presentation)

RAD = atlas.radford(2, 5).presentation
VSL = atlas.vsl2(5).presentation


def test_normal_form_examples():
    assert normal_form(RAD, "yx") == {(1, 1, 0): 4}
    assert normal_form(RAD, "gg") == {(0, 0, 0): 1}
    assert normal_form(VSL, "fe") == {(1, 1, 0): 1, (0, 0, 1): 4}
    assert normal_form(RAD, "xx") == {}


def test_basis_sizes():
    assert len(basis(RAD)) == 8
    assert len(basis(VSL)) == 125
    assert len(basis(atlas.truncated(2, 5).presentation)) == 4
    b = basis(RAD)
    assert b == sorted(b) and len(set(b)) == len(b)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from("xyg"), max_size=8))
def test_normal_form_idempotent(word):
    nf = normal_form(RAD, word)
    for exps, c in nf.items():
        assert all(a < n for a, n in zip(exps, RAD.bounds))
        w = [i for i, a in enumerate(exps) for _ in range(a)]
        assert normal_form(RAD, w) == {exps: 1}


def test_build_radford(radford25):
    a = radford25
    assert a.dim == 8
    assert a.epsilon[a.gens[0]] == 0 and a.epsilon[a.gens[2]] == 1
    assert a.is_hopf


def test_build_cyclic(cyclic5):
    a = cyclic5
    s = a.basis_vec(a.gens[0])
    assert a.dim == 5
    assert np.array_equal(a.delta_of(s), np.outer(s, s))


def test_build_vsl2_delta(vsl2_5):
    a = vsl2_5
    e = a.basis_vec(a.gens[0])
    one = a.unit
    assert a.dim == 125
    assert np.array_equal(a.delta_of(e), (np.outer(e, one) + np.outer(one, e)) % 5)


def test_verify_reports(radford25, vsl2_5):
    rep = verify_presentation(radford25)
    assert rep.ok and rep.checked == 8 ** 3
    rep = verify_presentation(vsl2_5)
    assert rep.ok and rep.checked == 10 ** 5


def test_wrong_swap_coefficient_fails():
    swaps = dict(RAD.swaps)
    swaps[(2, 0)] = ((2, (1, 0, 1)),)       # g x = 2 x g clashes with g^2 = 1
    bad = dataclasses.replace(RAD, swaps=swaps, delta=None, antipode=None)
    rep = verify_presentation(build_algebra(bad))
    assert not rep.ok
    assert rep.violations and rep.violations[0][0] == "associativity"


def test_bad_hopf_data():
    delta = dict(RAD.delta)
    delta[2] = ((1, (0, 0, 1), (0, 0, 0)),)   # g -> g (x) 1 breaks g x = w^-1 x g
    with pytest.raises(HopfError):
        build_algebra(dataclasses.replace(RAD, delta=delta))


def test_rewrite_budget():
    rw = Rewriter(VSL, budget=3)
    with pytest.raises(RewriteError):
        rw.normal_form([2, 1, 0, 2, 1, 0])


def test_round_trip_and_errors(tmp_path):
    path = tmp_path / "rad.json"
    dump(RAD, path)
    assert load(path) == dataclasses.replace(RAD, name=RAD.name)
    bad = tmp_path / "bad.json"
    bad.write_text('{\n "char_p": 5,\n "generators": [\n')
    with pytest.raises(PresentationError) as exc:
        load(bad)
    assert exc.value.line is not None
    d = RAD.to_dict()
    d["char_p"] = 6
    with pytest.raises(PresentationError):
        from_dict(d)
    d = RAD.to_dict()
    del d["powers"]
    with pytest.raises(PresentationError):
        from_dict(d)
    d = RAD.to_dict()
    d["swaps"][0]["rhs"] = [{"coeff": 1, "monomial": [0, 3, 0]}]
    with pytest.raises(PresentationError):
        from_dict(d)
    json.dumps(RAD.to_dict())
