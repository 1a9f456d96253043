"""Acceptance gate: one test per criterion, every comparison exact.

Each test line below is the pass/fail verdict for one criterion.  All
checks run at zero tolerance; expected matrices and dimensions come from
the independent oracle module or are frozen literals cross-checked
against it."""

import random
import time

import pytest

import faults
import forms
import oracles
from conftest import ALL_NAMES, EXPECTED_DIMS
from cooperad_lab.cooperad import (verify_comultiplication,
                                   verify_cooperad_axioms)
from cooperad_lab.derived import (_clh_direct, _clh_reindexed,
                                  compare_summed, cup_coproduct,
                                  differential, verify_chain_identities)
from cooperad_lab.homology import verify_gerstenhaber
from cooperad_lab.instances import builtin, verify_hat_duality

TIME_BUDGET = 300.0  # seconds per axiom run
DEEP_NAMES = ("Q_Z2", "F2_Z2", "dual_numbers")
AXIOM_RUNS = tuple((name, 3) for name in ALL_NAMES) + \
    tuple((name, 4) for name in DEEP_NAMES)


def _entry_dict(m):
    return {(r, c): v for r, c, v in m.entries()}


def _suite_clean(report, *names):
    """Zero failures, at least one pass, and every named identity ran."""
    counts = report.identity_counts()
    assert report.n_fail == 0, report.failures()
    assert report.n_pass > 0
    for name in names:
        assert counts[name][0] > 0, (name, counts)


def test_criterion_01_cooperad_axioms_and_comultiplication(built):
    for name, N in AXIOM_RUNS:
        C, T = built(name, N)
        start = time.monotonic()
        axioms = verify_cooperad_axioms(C)
        functionals = verify_comultiplication(C, T)
        elapsed = time.monotonic() - start
        assert axioms.ok, (name, N, axioms.failures())
        assert functionals.ok, (name, N, functionals.failures())
        assert axioms.n_pass > 0 and functionals.n_pass > 0
        assert elapsed < TIME_BUDGET, (name, N, elapsed)


def test_criterion_02_cosimplicial_identities_and_d_squared(built):
    for name in ALL_NAMES:
        C, T = built(name, 4)
        report = verify_chain_identities(C, T, ("cosimplicial",
                                                "differential"))
        _suite_clean(report, "cosimplicial (face-face)",
                     "cosimplicial (degeneracy-degeneracy)",
                     "cosimplicial (mixed)",
                     "differential squares to zero")


def test_criterion_03_differential_matches_oracles(built):
    for name in ALL_NAMES:
        P = builtin(name)
        C, T = built(name, 4)
        for n in range(1, 5):
            if P.kind == "bialgebra":
                cols = oracles.hopf_differential_columns(P, n)
            else:
                cols = oracles.hochschild_differential_columns(P, n)
            want = {(r, c): v for c, col in enumerate(cols)
                    for r, v in col.items()}
            assert _entry_dict(differential(C, T, n)) == want, (name, n)


def test_criterion_04_dg_coalgebra(built):
    for name in ALL_NAMES:
        C, T = built(name, 3)
        report = verify_chain_identities(C, T, ("cup",))
        _suite_clean(report, "cup coassociativity",
                     "cup counitality (left)", "cup counitality (right)",
                     "cup coderivation")


def test_criterion_05_homotopy_cocommutativity(built):
    for name, N in AXIOM_RUNS:
        C, T = built(name, N)
        report = verify_chain_identities(C, T, ("cocommutativity",))
        _suite_clean(report, "homotopy cocommutativity")


@pytest.mark.xfail(
    strict=True,
    reason="candidate homotopy with the flip-conjugated differential and "
           "the unscaled cobrace: on the order-2 group bialgebra over Q "
           "it leaves a defect at degree 2, component (2, 0), column "
           "g⊗g, equal to 4·(g⊗1⊗1_k) − 4·(1⊗g⊗1_k); the identity that "
           "does hold exactly is the one checked above, with the "
           "cobrace rescaled by (−1)^p and the Koszul-extended "
           "differential")
def test_criterion_05_flip_conjugated_candidate_is_refuted(built):
    C, T = built("Q_Z2", 4)
    for n in range(0, 4):
        lhs, rhs = forms.conjugated_cocommutativity_sides(C, T, n)
        check = compare_summed("flip-conjugated candidate", (n,), lhs, rhs)
        assert check.status == "pass", n


def test_criterion_06_cobracket_suite(built):
    for name in ALL_NAMES:
        C, T = built(name, 3)
        report = verify_chain_identities(
            C, T, ("pre-coJacobi", "cobracket", "coJacobi"))
        _suite_clean(report, "pre-coJacobi", "cobracket antisymmetry",
                     "cobracket coderivation", "coJacobi (left-factored)")


def test_criterion_07_coleibniz_and_closed_form_agreement(built):
    for name in ALL_NAMES:
        C, T = built(name, 3)
        report = verify_chain_identities(C, T, ("coLeibniz",))
        _suite_clean(report, "coLeibniz (coopposite, exact)",
                     "coLeibniz (five-term homotopy)")
        for n in range(0, C.truncation - 1):
            check = compare_summed("closed forms", (n,), _clh_direct(C, n),
                                   _clh_reindexed(C, n))
            assert check.status == "pass", (name, n)


GERSTENHABER_RUNS = (("Q_Z2", 4), ("F2_Z2", 4), ("sweedler4", 3),
                     ("dual_numbers", 3), ("mat2", 3))


def test_criterion_08_gerstenhaber_coalgebra_on_homology(homology):
    for name, cap in GERSTENHABER_RUNS:
        report = verify_gerstenhaber(homology(name, cap))
        assert report.n_fail == 0, (name, cap, report.failures())
        assert report.n_pass > 0
        assert report.meta["degree_cap"] == cap


def test_criterion_09_homology_dimensions_match_oracle(homology):
    for name, want in EXPECTED_DIMS.items():
        cap = len(want) - 1
        HS = homology(name, cap)
        got = tuple(HS.retraction.dims()[:cap + 1])
        assert got == want, (name, got)
        assert got == oracles.homology_dims(builtin(name), cap), name


def test_criterion_10_cup_equals_split_sum_formulas(built):
    for name in ALL_NAMES:
        P = builtin(name)
        C, T = built(name, 4)
        for n in range(0, 4):
            if P.kind == "bialgebra":
                want = oracles.deconcatenation_cup_entries(P, n)
            else:
                want = oracles.frobenius_cup_entries(P, n)
            got = {key: _entry_dict(m)
                   for key, m in cup_coproduct(C, T, n).components.items()
                   if not m.is_zero()}
            want = {key: entries for key, entries in want.items()
                    if entries}
            assert got == want, (name, n)


# Characteristic-0 instances only: negating an entry over F2 is the
# identity, so a sign flip there is not an observable fault.
CHAR0_NAMES = ("Q_Z2", "Q_Z3", "sweedler4", "dual_numbers", "mat2",
               "group_frobenius_Z2")


def test_criterion_11_single_sign_faults_are_caught_and_named(built):
    rng = random.Random(20260814)
    for trial in range(20):
        name = rng.choice(CHAR0_NAMES)
        C, T = built(name, 3)
        entries = faults.stored_entries(C)
        key, row, col = entries[rng.randrange(len(entries))]
        named = faults.keys_named_after_tamper(C, T, key, row, col)
        assert key in named, (trial, name, key, row, col, sorted(named))


def test_criterion_12_hat_duality():
    for name in ("dual_numbers", "mat2"):
        report = verify_hat_duality(builtin(name), n_small=2)
        assert report.ok, (name, report.failures())
        assert report.n_pass > 0
