from itertools import product

import pytest
from hypothesis import given, strategies as st

from gsp4cert import linalg
from gsp4cert.exactnum import I, ONE, Scalar
from gsp4cert.gsp4 import (STD, LieElt, Mat, MembershipError, Subspace, Weight, bracket, cartan_theta,
                           eigenvalue_of_weight, h_subalgebra, root_decompose, structure_constants,
                           structure_dump, subalgebra_closed, verify_frame_change, weight_from_eigenvalues,
                           weight_of)

BASIS = STD.distinguished_basis()
G0 = STD.k.basis + STD.p.basis


def test_distinguished_basis_spans_gsp4():
    assert len(BASIS) == 11
    assert linalg.rank([X.vector() for _, X in BASIS]) == 11


def test_membership_rejected():
    with pytest.raises(MembershipError):
        LieElt(Mat.unit(1, 1))  # E11 alone is not in gsp4


def test_bracket_H_J_is_zero():
    assert not bracket(STD.H, STD.J)


@pytest.mark.parametrize("name,X", BASIS)
def test_bracket_alternating(name, X):
    assert not bracket(X, X)


def test_bracket_H_on_alpha_plus_beta_root_vector():
    E = STD.root(1, 1)
    assert bracket(STD.H, E) == E * Scalar(0, -2)
    assert bracket(STD.J, E) == E * Scalar(0, -2)


def test_jacobi_exhaustive():
    for (_, X), (_, Y), (_, Z) in product(BASIS, repeat=3):
        s = bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X)) + bracket(Z, bracket(X, Y))
        assert not s


def test_brackets_stay_in_gsp4():
    for (_, X), (_, Y) in product(BASIS, repeat=2):
        LieElt(bracket(X, Y).mat)  # membership check on construction


def test_cartan_theta():
    assert cartan_theta(STD.H) == STD.H
    assert cartan_theta(STD.a) == -STD.a
    assert cartan_theta(cartan_theta(STD.n3)) == STD.n3
    for X in STD.k.basis:
        assert cartan_theta(X) == X
    for X in STD.p.basis:
        assert cartan_theta(X) == -X


def test_cartan_decomposition_and_parity():
    assert linalg.rank([X.vector() for X in G0]) == 10
    vk, vp = STD.k.vectors(), STD.p.vectors()
    for X, Y in product(STD.k.basis, STD.k.basis):
        assert linalg.coordinates(vk, bracket(X, Y).vector()) is not None
    for X, Y in product(STD.k.basis, STD.p.basis):
        assert linalg.coordinates(vp, bracket(X, Y).vector()) is not None
    for X, Y in product(STD.p.basis, STD.p.basis):
        assert linalg.coordinates(vk, bracket(X, Y).vector()) is not None


def test_weight_examples():
    assert weight_of(STD.e["b"], STD.t, modulo=STD.k_tilde) == Weight.of(0, 1)
    assert weight_of(STD.e["-a-b"], STD.t, modulo=STD.k_tilde) == Weight.of(-1, -1)
    assert weight_of(STD.H, STD.t) == Weight.of(0, 0)


def test_weight_of_zero_raises():
    with pytest.raises(ValueError):
        weight_of(STD.H * 0)


def test_weight_of_non_eigenvector_is_none():
    assert weight_of(STD.root(1, 1) + STD.root(0, 1)) is None


@given(st.integers(-6, 6), st.integers(-6, 6))
def test_weight_eigenvalue_round_trip(p2, q2):
    w = Weight(p2, q2)
    assert weight_from_eigenvalues(*eigenvalue_of_weight(w)) == w


def test_weight_additive_under_bracket():
    roots = [w for w in STD.roots]
    for u, v in product(roots, roots):
        Z = bracket(STD.roots[u], STD.roots[v])
        if Z:
            wz = weight_of(Z)
            if wz is not None:
                assert wz == Weight(u.p2 + v.p2, u.q2 + v.q2)


def test_root_decompose_p():
    d = root_decompose(STD.p, STD.t)
    assert {w: s.dim for w, s in d.items()} == {Weight.of(a * s, b * s): 1 for a, b in ((1, 1), (1, -1), (0, 1)) for s in (1, -1)}


def test_root_decompose_k():
    d = root_decompose(STD.k, STD.t)
    assert {w: s.dim for w, s in d.items()} == {Weight.of(0, 0): 2, Weight.of(1, 0): 1, Weight.of(-1, 0): 1}


def test_root_decompose_t():
    d = root_decompose(STD.t, STD.t)
    assert list(d) == [Weight.of(0, 0)] and d[Weight.of(0, 0)].dim == 2


def test_root_decompose_eigen_equations():
    for w, sp in root_decompose(STD.p, STD.t).items():
        lh, lj = eigenvalue_of_weight(w)
        for X in sp.basis:
            assert bracket(STD.H, X) == X * lh and bracket(STD.J, X) == X * lj


def test_root_decompose_unstable_space_raises():
    with pytest.raises(ValueError):
        root_decompose(Subspace([STD.a], "a"), STD.t)


def test_frame_change_examples():
    rep = verify_frame_change(printed=True)
    assert rep.weights["b"] == Weight.of(0, 1)
    assert rep.weights["a-b"] == Weight.of(1, -1)
    assert rep.rank == 6


def test_frame_change_printed_minus_alpha_plus_beta_is_not_a_weight_vector():
    rep = verify_frame_change(printed=True)
    assert rep.weights["-a+b"] is None
    assert [n for n in STD.root_frame_names if rep.weights[n] != rep.expected[n]] == ["-a+b"]


def test_frame_change_corrected():
    assert verify_frame_change(printed=False).ok


def test_corrected_vector_is_conjugate_of_alpha_minus_beta():
    a_b = STD.frame_change["a-b"]
    assert STD.frame_change["-a+b"] == tuple(c.conj() for c in a_b)


def test_subalgebras():
    assert subalgebra_closed(h_subalgebra())
    assert subalgebra_closed(STD.b0)
    assert not subalgebra_closed(Subspace([STD.root(0, 1), STD.root(0, -1)], "E_±b"))


def test_subalgebra_closed_matches_brute_force():
    sp = Subspace([STD.root(0, 1), STD.root(1, 1), STD.H], "E_b,E_a+b,H")
    vecs = sp.vectors()
    brute = all(linalg.rank(vecs + [bracket(X, Y).vector()]) == 3 for X, Y in product(sp.basis, repeat=2))
    assert subalgebra_closed(sp) == brute


def test_structure_dump_round_trip():
    dump = structure_dump()
    names = [b["name"] for b in dump["basis"]]
    table = structure_constants(BASIS)
    for entry in dump["brackets"]:
        coeffs = tuple(Scalar.from_json(c) for c in entry["coefficients"])
        assert coeffs == table[(entry["left"], entry["right"])]
    assert len(dump["brackets"]) == len(names) ** 2


def test_pinned_root_vectors():
    for X in STD.roots.values():
        first = next(x for x in X.vector() if x)
        assert first == ONE
