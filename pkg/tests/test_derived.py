"""Derived operators: faces, differential, cup, cobrace, homotopies.

Expected matrices come from the independent oracle module, which
recomputes everything from raw structure constants with its own word
indexing and arithmetic."""

from fractions import Fraction

import pytest

import forms
import oracles
from cooperad_lab.cooperad import TruncationError
from cooperad_lab.derived import (_clh_rejected_sign, cobrace, cobracket,
                                  coleibniz_homotopy, compare_summed,
                                  cup_coproduct, degeneracy, differential,
                                  face, sm_post_flip, sm_sub,
                                  verify_chain_identities)
from cooperad_lab.instances import builtin
from conftest import ALL_NAMES, BIALGEBRA_NAMES


def _as_dict(m):
    return {(r, c): v for r, c, v in m.entries()}


@pytest.mark.parametrize("name", ALL_NAMES)
def test_differential_matches_independent_formula(name, built):
    P = builtin(name)
    C, T = built(name, 3)
    for n in range(1, 4):
        d = differential(C, T, n)
        if P.kind == "bialgebra":
            cols = oracles.hopf_differential_columns(P, n)
        else:
            cols = oracles.hochschild_differential_columns(P, n)
        want = {(r, c): v for c, col in enumerate(cols)
                for r, v in col.items()}
        assert _as_dict(d) == want, (name, n)


@pytest.mark.parametrize("name", ALL_NAMES)
def test_cup_matches_independent_formula(name, built):
    P = builtin(name)
    C, T = built(name, 3)
    for n in range(0, 3):
        cup = cup_coproduct(C, T, n)
        if P.kind == "bialgebra":
            want = oracles.deconcatenation_cup_entries(P, n)
        else:
            want = oracles.frobenius_cup_entries(P, n)
        got = {key: _as_dict(m) for key, m in cup.components.items()
               if not m.is_zero()}
        want = {key: entries for key, entries in want.items() if entries}
        assert got == want, (name, n)


def test_dual_numbers_root_split_expands_the_dual_basis(built):
    C, _ = built("dual_numbers", 2)
    m = C.decompose(1, 1, 1)
    dom = C.space(1)
    cod = C.pair_space(1, 1)
    col = m.column(dom.labels.index("1⊗1"))
    # (1,1) splits as (1,1)(x)(x,1) + (1,x)(x)(1,1)
    want = {
        cod.labels.index("1⊗1⊗x⊗1"): Fraction(1),
        cod.labels.index("1⊗x⊗1⊗1"): Fraction(1),
    }
    assert col == want


def test_cobrace_component_signs(built):
    C, _ = built("Q_Z2", 3)
    cb = cobrace(C, 2)
    assert set(cb.components) == {(1, 2), (2, 1), (3, 0)}
    assert cb.components[(1, 2)] == C.decompose(1, 2, 1)
    assert cb.components[(2, 1)] == \
        C.decompose(2, 1, 1) + C.decompose(2, 1, 2)
    want = C.decompose(3, 0, 1) - C.decompose(3, 0, 2) + C.decompose(3, 0, 3)
    assert cb.components[(3, 0)] == want


def test_cobracket_is_cobrace_minus_flip(built):
    C, _ = built("Q_Z2", 3)
    cbk = cobracket(C, 1)
    want = sm_sub(cobrace(C, 1), sm_post_flip("rho", cobrace(C, 1)))
    check = compare_summed("cobracket definition", (1,), cbk, want)
    assert check.status == "pass"


def test_face_degeneracy_shapes(built):
    C, T = built("Q_Z2", 3)
    for n in range(1, 4):
        for i in range(0, n + 1):
            f = face(C, T, n, i)
            assert f.domain == C.space(n)
            assert f.codomain == C.space(n - 1)
    s = degeneracy(C, T, 1, 0)
    assert s.domain == C.space(1) and s.codomain == C.space(2)
    with pytest.raises(ValueError):
        face(C, T, 2, 3)
    with pytest.raises(TruncationError):
        face(C, T, 4, 0)


def test_chain_suites_pass_and_respect_selector(built):
    C, T = built("Q_Z2", 3)
    rep = verify_chain_identities(C, T, suite_selector=["cup"])
    assert rep.ok
    names = {c.identity for c in rep.checks}
    assert "cup coassociativity" in names
    assert "homotopy cocommutativity" not in names
    with pytest.raises(ValueError):
        verify_chain_identities(C, T, suite_selector=["nope"])


def test_chain_suite_passes_on_frobenius_instance(built):
    C, T = built("group_frobenius_Z2", 3)
    rep = verify_chain_identities(C, T)
    assert rep.ok and rep.n_fail == 0


def test_coleibniz_homotopy_formable_range(built):
    C, _ = built("Q_Z2", 4)
    coleibniz_homotopy(C, 2)
    with pytest.raises(TruncationError):
        coleibniz_homotopy(C, 3)


def test_rejected_homotopy_sign_breaks_the_five_term_identity(built):
    C, T = built("Q_Z2", 4)
    lhs, rhs = forms.five_term_sides(C, T, 1, _clh_rejected_sign)
    check = compare_summed("five-term with rejected sign", (1,), lhs, rhs)
    assert check.status == "fail"
    assert check.witnesses


def test_adopted_homotopy_sign_closes_the_five_term_identity(built):
    C, T = built("Q_Z2", 4)
    for n in (0, 1, 2):
        lhs, rhs = forms.five_term_sides(C, T, n, coleibniz_homotopy)
        check = compare_summed("five-term", (n,), lhs, rhs)
        assert check.status == "pass", n


def test_conjugated_cocommutation_candidate_is_refuted(built):
    C, T = built("Q_Z2", 4)
    lhs, rhs = forms.conjugated_cocommutativity_sides(C, T, 2)
    check = compare_summed("conjugated candidate", (2,), lhs, rhs)
    assert check.status == "fail"
    # the defect concentrates in the (2, 0) component on the (g, g) column
    diff = sm_sub(rhs, lhs).components[(2, 0)]
    dom = C.space(2)
    cod = C.pair_space(2, 0)
    col = diff.column(dom.labels.index("g⊗g"))
    assert col == {
        cod.labels.index("g⊗1⊗1_k"): Fraction(4),
        cod.labels.index("1⊗g⊗1_k"): Fraction(-4),
    }


@pytest.mark.parametrize("name", BIALGEBRA_NAMES)
def test_cocommutation_homotopy_passes_everywhere(name, built):
    C, T = built(name, 3)
    rep = verify_chain_identities(C, T, suite_selector=["cocommutativity"])
    assert rep.ok and rep.n_pass > 0
