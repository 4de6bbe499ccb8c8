from collections import Counter
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from gsp4cert import linalg
from gsp4cert.exactnum import ZERO
from gsp4cert.forms import named_forms
from gsp4cert.gsp4 import STD, Weight, bracket
from gsp4cert.ktypes import (STATED_WEDGE2_HIGHEST, Character, InvalidHighestWeight, KModule, NotAModuleError,
                             b0_module, decompose_character, eta_lowering_chain, highest_weight_vectors,
                             irr_character, is_valid_highest_weight, multiplicity, recompose, spin_module,
                             vector_to_multivector, wedge_module)

W = Weight.of


@pytest.fixture(scope="module")
def wedge2():
    return wedge_module(2)


def test_highest_weight_predicate():
    assert is_valid_highest_weight(W(Fraction(1, 2), Fraction(-3, 2)))
    assert not is_valid_highest_weight(W(-1, 0))
    assert is_valid_highest_weight(W(2, 0))


def test_irr_characters():
    assert irr_character(W(2, 0)).as_dict() == {W(j, 0): 1 for j in range(-2, 3)}
    assert irr_character(W(0, 0)).as_dict() == {W(0, 0): 1}
    assert irr_character(W(1, -2)).as_dict() == {W(-1, -2): 1, W(0, -2): 1, W(1, -2): 1}


def test_irr_character_from_constructed_module():
    assert spin_module(W(1, -2)).character() == irr_character(W(1, -2))


def test_irr_character_invalid():
    with pytest.raises(InvalidHighestWeight):
        irr_character(W(-1, 0))


hws = st.builds(Weight, st.integers(0, 6), st.integers(-6, 6))


@given(st.lists(hws, max_size=6))
def test_decompose_inverts_recompose(ws):
    ch = recompose(ws)
    assert sorted(decompose_character(ch)) == sorted(ws)
    assert recompose(decompose_character(ch)) == ch


def test_not_a_module():
    with pytest.raises(NotAModuleError):
        decompose_character(Character.of({W(1, 0): 1}))


def test_wedge_decompositions(wedge2):
    assert decompose_character(wedge2.character()) == sorted(STATED_WEDGE2_HIGHEST)
    assert decompose_character(wedge_module(4).character()) == sorted(STATED_WEDGE2_HIGHEST)


def test_b0_decomposition_against_brute_force_peeling():
    weights = [W(s * a, s * b) for a, b in ((1, 1), (1, -1), (0, 1)) for s in (1, -1)]
    # brute force: peel any weight whose full string is present, largest p first
    rest = Counter(weights)
    found = []
    while rest:
        top = max(w for w in rest if rest[w] > 0)
        found.append(top)
        for m2 in range(-top.p2, top.p2 + 1, 2):
            rest[Weight(m2, top.q2)] -= 1
        rest = +rest
    assert decompose_character(b0_module().character()) == sorted(found) == [W(1, -1), W(1, 1)]


def test_multiplicities(wedge2):
    ch = wedge2.character()
    assert multiplicity(ch, W(2, 0)) == 1
    assert multiplicity(ch, W(3, 0)) == 0
    assert multiplicity(irr_character(W(2, 0)), W(2, 0)) == 1


def test_highest_weight_vectors(wedge2):
    top = highest_weight_vectors(wedge2, W(2, 0))
    assert len(top) == 1
    assert vector_to_multivector(wedge2, top[0]).proportional_to(named_forms()["eta_2"]) is not None
    assert len(highest_weight_vectors(wedge2, W(0, 0))) == multiplicity(wedge2.character(), W(0, 0)) == 1
    spin = spin_module(W(2, 0))
    (v,) = highest_weight_vectors(spin, W(2, 0))
    assert v[0] and not any(v[1:])


def test_highest_weight_vector_count_matches_multiplicity(wedge2):
    ch = wedge2.character()
    for hw in set(decompose_character(ch)) | {W(0, 1), W(1, 1)}:
        assert len(highest_weight_vectors(wedge2, hw)) == multiplicity(ch, hw)


def test_module_bracket_relations_exhaustive(wedge2):
    for mod in (wedge2, b0_module(), spin_module(W(2, 0)), spin_module(W(Fraction(3, 2), 1))):
        mod.verify()


def test_bad_action_rejected():
    mod = spin_module(W(1, 0))
    bad = dict(mod.action)
    bad["E_a"] = [[x * 2 for x in r] for r in bad["E_a"]]
    bad["E_-a"] = [[x * 2 for x in r] for r in bad["E_-a"]]
    with pytest.raises(ValueError):
        KModule(mod.dim, mod.labels, bad, mod.basis)


def test_spin2_lowering_reaches_all_weights():
    mod = spin_module(W(2, 0))
    v = (1, 0, 0, 0, 0)
    for k in range(1, 5):
        v = mod.act("E_-a", v)
        assert [bool(x) for x in v] == [i == k for i in range(5)]
    assert not any(mod.act("E_-a", v))


def test_eta_lowering_chain_weights_and_top():
    ch = eta_lowering_chain()
    assert all(ch.weights[j] == W(j, 0) for j in range(-2, 3))
    assert ch.eta2_highest
    # the E_{-α} string from η_2 has length five and then stops
    from gsp4cert.forms import k_action
    assert all(ch.chain[j] for j in range(-2, 3))
    assert not k_action(STD.root(-1, 0), ch.chain[-2])
    assert ch.ratios[-2]


def test_eta_lowering_chain_misses_printed_middle_terms():
    # the k-span of η_2 does not contain the displayed η_1, η_0, η_-1
    ch = eta_lowering_chain()
    assert [j for j in (1, 0, -1) if ch.ratios[j] is None] == [1, 0, -1]
