"""Identity sides assembled by hand from the public combinators.

These rebuild whole identities term by term, independently of the suite
runners, so tests can compare conventions: the five-term coLeibniz
identity with a pluggable homotopy operator, and the flip-conjugated
variant of the cocommutation homotopy that an exact counterexample
refutes."""

from cooperad_lab.derived import (cobrace, cup_coproduct, differential,
                                  sm_add, sm_expand_first,
                                  sm_expand_second, sm_flip12, sm_post_d,
                                  sm_post_flip, sm_precompose, sm_sub)


def five_term_sides(C, T, n, homotopy):
    """Both sides of the coLeibniz homotopy identity at source degree n.

    lhs expands the second cobrace leg by the cup; rhs carries the two
    exact coLeibniz terms plus homotopy(C, n-1).d and the three-leg
    tensor differential (second pair one degree down) after homotopy(C, n).
    """
    cup = lambda m: cup_coproduct(C, T, m)
    cb = lambda m: cobrace(C, m)
    lhs = sm_expand_second(cobrace(C, n), cup)
    cupn = cup_coproduct(C, T, n)
    rhs = sm_add(sm_expand_first(cupn, cb),
                 sm_flip12("varrho", sm_expand_second(cupn, cb)))
    fn = homotopy(C, n)
    if n >= 1:
        rhs = sm_add(rhs, sm_precompose(homotopy(C, n - 1),
                                        differential(C, T, n), n))
    rhs = sm_add(rhs, sm_post_d(fn, T, 0))
    rhs = sm_add(rhs, sm_post_d(fn, T, 1,
                                sign_exponent=lambda k: k[0] + 1))
    rhs = sm_add(rhs, sm_post_d(fn, T, 2,
                                sign_exponent=lambda k: k[0] + k[1] + 1))
    return lhs, rhs


def conjugated_cocommutativity_sides(C, T, n):
    """The flip-conjugated candidate for the cocommutation homotopy.

    lhs is the flipped cup minus the cup; rhs is the plain cobrace
    precomposed with d plus tau . (d(x)id + (-1)^n id(x)d) . tau after
    the cobrace.  An exact counterexample refutes this convention; the
    identity that holds rescales the cobrace legs by (-1)^p instead
    (the "homotopy cocommutativity" check of the chain suite).
    """
    cupn = cup_coproduct(C, T, n)
    lhs = sm_sub(sm_post_flip("tau", cupn), cupn)
    inner = sm_post_flip("tau", cobrace(C, n))
    dd = sm_add(sm_post_d(inner, T, 0),
                sm_post_d(inner, T, 1, sign_exponent=n))
    rhs = sm_post_flip("tau", dd)
    if n >= 1:
        rhs = sm_add(rhs, sm_precompose(cobrace(C, n - 1),
                                        differential(C, T, n), n))
    return lhs, rhs
