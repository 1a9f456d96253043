"""Presentations: validators, derived Frobenius data, builders, duality."""

from fractions import Fraction

import pytest

import oracles
from cooperad_lab.exactlinalg import FieldSpec
from cooperad_lab.instances import (BUILTINS, PresentationError, builtin,
                                    build_cooperad, validate_bialgebra,
                                    validate_frobenius, verify_hat_duality,
                                    word_index, word_space)
from conftest import ALL_NAMES, FROBENIUS_NAMES


@pytest.mark.parametrize("name", ALL_NAMES)
def test_builtin_presentations_validate(name):
    P = builtin(name)
    if P.kind == "bialgebra":
        rep = validate_bialgebra(P)
    else:
        rep = validate_frobenius(P)
    assert rep.ok and rep.n_fail == 0, name


def test_builtin_catalog():
    assert len(BUILTINS) == 7
    with pytest.raises(PresentationError):
        builtin("nosuch")


def test_builtin_over_another_field():
    P = builtin("Q_Z2", FieldSpec.prime_field(3))
    assert P.field.characteristic == 3
    assert validate_bialgebra(P).ok


def test_word_space_and_index():
    sp = word_space(("1", "x"), 2)
    assert sp.labels == ("1⊗1", "1⊗x", "x⊗1", "x⊗x")
    assert word_space(("1", "x"), 0).labels == ("1_k",)
    for word in ((0, 1, 1), (1, 0, 1)):
        assert word_index(word, 2) == oracles.word_index(word, 2)


def test_dual_numbers_derived_data():
    P = builtin("dual_numbers")
    assert validate_frobenius(P).ok
    # pairing matrix [[0,1],[1,0]]: the class of 1 pairs with x
    assert P.dual_basis == [{1: Fraction(1)}, {0: Fraction(1)}]
    assert P.nakayama == [{0: Fraction(1)}, {1: Fraction(1)}]
    assert P.dual_basis == oracles.frobenius_dual_basis(P)


@pytest.mark.parametrize("name", FROBENIUS_NAMES)
def test_twist_matches_oracle_and_pairing_identity(name):
    P = builtin(name)
    P.ensure_derived()
    assert P.nakayama == oracles.frobenius_twist(P)
    one = P.field.one
    for i in range(P.dim):
        for j in range(P.dim):
            lhs = P.eps(P.mult_letters((i, j)))
            rhs = P.eps(P.mult_elem(P.sigma({j: one}), {i: one}))
            assert lhs == rhs, (name, i, j)


def test_degenerate_functional_is_rejected():
    from cooperad_lab.instances import FrobeniusPresentation
    mult = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {}}
    # reading off the 1-part pairs x with nothing: singular Gram matrix
    P = FrobeniusPresentation("bad", FieldSpec.rationals(), ("1", "x"),
                              mult, {0: 1}, {0: 1})
    with pytest.raises(PresentationError):
        validate_frobenius(P)


def test_presentation_input_validation():
    from cooperad_lab.instances import BialgebraPresentation
    field = FieldSpec.rationals()
    with pytest.raises(PresentationError):
        BialgebraPresentation("dup", field, ("a", "a"), {}, {0: 1}, {}, {})
    with pytest.raises(PresentationError):
        BialgebraPresentation("range", field, ("a",), {(0, 3): {0: 1}},
                              {0: 1}, {}, {})
    with pytest.raises(PresentationError):
        BialgebraPresentation("nounit", field, ("a",), {}, {0: 0}, {}, {})


def test_built_tables_use_word_spaces(built):
    C, T = built("Q_Z2", 3)
    assert C.space(2).labels == ("1⊗1", "1⊗g", "g⊗1",
                                 "g⊗g")
    assert C.space(0).labels == ("1_k",)
    Cf, _ = built("dual_numbers", 2)
    # Frobenius chains carry one more tensor factor than the degree
    assert Cf.space(1).dim == 4
    assert Cf.space(2).dim == 8


def test_counit_matches_presentation(built):
    P = builtin("sweedler4")
    C, _ = built("sweedler4", 2)
    for i, label in enumerate(C.space(1).labels):
        got = C.counit.entry(0, i)
        assert got == P.counit.get(i, P.field.zero)


def test_hat_duality_small():
    rep = verify_hat_duality(builtin("dual_numbers"), 2)
    assert rep.ok and rep.n_pass > 0


def test_build_cooperad_rejects_bad_kind():
    class Fake(object):
        kind = "nope"

    with pytest.raises(PresentationError):
        build_cooperad(Fake(), 2)
