"""Truncated planar counital cooperads with comultiplication, and the
verifiers for their defining identities.

A cooperad is stored as its table of partial decompositions
Delta[p,q,i]: C(p+q-1) -> C(p)(x)C(q); the p=0 maps are identically zero
by convention and never stored.  Verifiers sweep every admissible index
tuple inside the truncation and compare composites as exact matrices;
anything referencing an arity beyond the truncation is reported as
skipped, never silently dropped.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

from .exactlinalg import (LinearMap, contract_functional, flip,
                          format_vector, scalar_space, tensor_map,
                          tensor_space)

MAX_WITNESSES = 5


class TruncationError(Exception):
    """An arity beyond the truncation was referenced."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


@dataclass
class Witness:
    identity: str
    indices: tuple
    basis_label: str
    left: str
    right: str
    keys: tuple = ()

    def as_dict(self):
        return {
            "identity": self.identity,
            "indices": list(self.indices),
            "basis": self.basis_label,
            "left": self.left,
            "right": self.right,
            "keys": [list(k) for k in self.keys],
        }


@dataclass
class Check:
    identity: str
    indices: tuple
    status: str  # "pass" | "fail" | "skip"
    witnesses: list = dc_field(default_factory=list)
    reason: str = ""


@dataclass
class Report:
    suite: str
    checks: list = dc_field(default_factory=list)
    meta: dict = dc_field(default_factory=dict)

    @property
    def n_pass(self):
        return sum(1 for c in self.checks if c.status == "pass")

    @property
    def n_fail(self):
        return sum(1 for c in self.checks if c.status == "fail")

    @property
    def n_skip(self):
        return sum(1 for c in self.checks if c.status == "skip")

    @property
    def ok(self):
        return self.n_fail == 0

    def add(self, check):
        self.checks.append(check)

    def extend(self, checks):
        self.checks.extend(checks)

    def failures(self):
        return [c for c in self.checks if c.status == "fail"]

    def identity_counts(self):
        """identity name -> (pass, fail, skip), insertion-ordered."""
        out = {}
        for c in self.checks:
            p, f, s = out.get(c.identity, (0, 0, 0))
            if c.status == "pass":
                p += 1
            elif c.status == "fail":
                f += 1
            else:
                s += 1
            out[c.identity] = (p, f, s)
        return out

    def all_witnesses(self):
        out = []
        for c in self.checks:
            out.extend(c.witnesses)
        return out


def default_threads():
    raw = os.environ.get("COOPERAD_LAB_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def parallel_map(fn, items, threads=None):
    """Order-preserving map; thread pool when threads > 1."""
    if threads is None:
        threads = default_threads()
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def compare_maps(identity, indices, lhs, rhs, keys=(),
                 max_witnesses=MAX_WITNESSES):
    """Exact columnwise comparison; witnesses carry both sides."""
    if lhs.domain.dim != rhs.domain.dim or lhs.codomain.dim != rhs.codomain.dim:
        raise ValueError("comparing maps of different shape: %r vs %r"
                         % (lhs, rhs))
    bad = sorted(c for c in set(lhs.cols) | set(rhs.cols)
                 if lhs.cols.get(c, {}) != rhs.cols.get(c, {}))
    if not bad:
        return Check(identity, indices, "pass")
    witnesses = []
    field = lhs.field
    for c in bad[:max_witnesses]:
        witnesses.append(Witness(
            identity=identity,
            indices=indices,
            basis_label=lhs.domain.labels[c],
            left=format_vector(lhs.codomain, lhs.cols.get(c, {}), field),
            right=format_vector(rhs.codomain, rhs.cols.get(c, {}), field),
            keys=tuple(keys),
        ))
    check = Check(identity, indices, "fail", witnesses)
    check.reason = "%d mismatched columns" % len(bad)
    return check


class ComultiplicationTriple(object):
    """The three functionals making the dual an operad with multiplication:
    binary on C(2), unit on C(1), nullary on C(0)."""

    __slots__ = ("binary", "unit", "nullary")

    def __init__(self, binary, unit, nullary):
        if binary.codomain.dim != 1 or unit.codomain.dim != 1 \
                or nullary.codomain.dim != 1:
            raise ValueError("triple entries must be functionals")
        self.binary = binary
        self.unit = unit
        self.nullary = nullary


class TruncatedCooperad(object):
    """Spaces C(0..N), the decomposition table, and the counit on C(1).

    Immutable after construction; construction validates the key set and
    every stored shape eagerly.  Tensor product spaces are interned per
    instance so repeated composites share objects.
    """

    def __init__(self, field, truncation, spaces, decomp, counit, name=""):
        if truncation < 1:
            raise ValueError("truncation must be >= 1")
        if len(spaces) != truncation + 1:
            raise ValueError("expected %d spaces, got %d"
                             % (truncation + 1, len(spaces)))
        self.field = field
        self.truncation = truncation
        self.spaces = list(spaces)
        self.decomp = dict(decomp)
        self.counit = counit
        self.name = name
        self._pairs = {}
        self._triples = {}
        self._identities = {}
        self._validate()

    @staticmethod
    def required_keys(truncation):
        keys = set()
        for p in range(1, truncation + 1):
            for q in range(0, truncation + 1):
                if p + q - 1 > truncation:
                    continue
                for i in range(1, p + 1):
                    keys.add((p, q, i))
        return keys

    def _validate(self):
        need = self.required_keys(self.truncation)
        have = set(self.decomp)
        if have != need:
            missing = sorted(need - have)
            extra = sorted(have - need)
            raise ValueError("decomposition table key set wrong; missing=%s "
                             "extra=%s" % (missing[:5], extra[:5]))
        for (p, q, i), m in self.decomp.items():
            dom = self.space(p + q - 1)
            cod = self.pair_space(p, q)
            if m.domain != dom or m.codomain != cod:
                raise ValueError("decomposition (%d,%d,%d) has wrong shape"
                                 % (p, q, i))
        if self.counit.domain != self.space(1) \
                or self.counit.codomain.dim != 1:
            raise ValueError("counit must be a functional on C(1)")

    # -- spaces --------------------------------------------------------

    def space(self, n):
        if not 0 <= n <= self.truncation:
            raise TruncationError("arity %d outside truncation %d"
                                  % (n, self.truncation))
        return self.spaces[n]

    def identity_map(self, n):
        m = self._identities.get(n)
        if m is None:
            m = LinearMap.identity(self.space(n), self.field)
            self._identities[n] = m
        return m

    def pair_space(self, p, q):
        key = (p, q)
        s = self._pairs.get(key)
        if s is None:
            s = tensor_space(self.space(p), self.space(q),
                             name="C(%d)%sC(%d)" % (p, "x", q))
            self._pairs[key] = s
        return s

    def triple_space(self, p, q, r):
        key = (p, q, r)
        s = self._triples.get(key)
        if s is None:
            s = tensor_space(self.pair_space(p, q), self.space(r),
                             name="C(%d)xC(%d)xC(%d)" % (p, q, r))
            self._triples[key] = s
        return s

    # -- decomposition lookup -------------------------------------------

    def decompose(self, p, q, i):
        """The partial decomposition as a map; zero map when p = 0."""
        if p < 0 or q < 0:
            raise ValueError("arities must be non-negative: (%d,%d)" % (p, q))
        if p == 0:
            if q - 1 < 0:
                raise ValueError("p=0 needs q >= 1")
            return LinearMap.zero(self.space(q - 1), self.pair_space(0, q),
                                  self.field)
        if not 1 <= i <= p:
            raise ValueError("slot i=%d violates 1 <= i <= p=%d" % (i, p))
        key = (p, q, i)
        m = self.decomp.get(key)
        if m is None:
            raise TruncationError("decomposition %r outside truncation %d"
                                  % (key, self.truncation), key=key)
        return m

    def has_key(self, p, q, i):
        return p == 0 or (p, q, i) in self.decomp

    def with_tampered_entry(self, key, row, col):
        """Copy of this cooperad with one stored coefficient negated.

        Used by fault-injection tests; everything else is shared.
        """
        m = self.decomp[key]
        v = m.cols.get(col, {}).get(row)
        if not v:
            raise ValueError("no entry at (%d,%d) of %r" % (row, col, key))
        cols = {c: dict(colv) for c, colv in m.cols.items()}
        cols[col][row] = self.field.neg(v)
        bad = LinearMap(m.domain, m.codomain, self.field, cols, _checked=True)
        table = dict(self.decomp)
        table[key] = bad
        return TruncatedCooperad(self.field, self.truncation, self.spaces,
                                 table, self.counit,
                                 name=self.name + "#tampered")


def decompose(C, p, q, i, x):
    """Apply the (p,q,i) partial decomposition to a sparse vector."""
    return C.decompose(p, q, i).apply(x)


# ----------------------------------------------------------------------
# Axiom sweeps.

def _coassoc_generic(C, p, q, r, i, j):
    """Both sides of the generic coassociativity relation at (p,q,r,i,j).

    Returns (lhs, rhs, keys).  Raises TruncationError when an arity is
    missing from the table.
    """
    f = C.field
    keys = [(p + q - 1, r, j), (p, q, i)]
    inner = C.decompose(p + q - 1, r, j)
    outer = tensor_map(C.decompose(p, q, i), C.identity_map(r),
                       domain=C.pair_space(p + q - 1, r),
                       codomain=C.triple_space(p, q, r))
    lhs = outer @ inner
    if i <= j - q:
        keys += [(p + r - 1, q, i), (p, r, j - q + 1)]
        inner2 = C.decompose(p + r - 1, q, i)
        mid = tensor_map(C.decompose(p, r, j - q + 1), C.identity_map(q),
                         domain=C.pair_space(p + r - 1, q),
                         codomain=C.triple_space(p, r, q))
        swap = tensor_map(
            C.identity_map(p),
            flip("sigma", r, q, C.space(r), C.space(q), f,
                 domain=C.pair_space(r, q), codomain=C.pair_space(q, r)),
            domain=C.triple_space(p, r, q), codomain=C.triple_space(p, q, r))
        rhs = swap @ (mid @ inner2)
    elif i <= j:
        keys += [(p, q + r - 1, i), (q, r, j - i + 1)]
        inner2 = C.decompose(p, q + r - 1, i)
        rhs = tensor_map(C.identity_map(p), C.decompose(q, r, j - i + 1),
                         domain=C.pair_space(p, q + r - 1),
                         codomain=C.triple_space(p, q, r)) @ inner2
    else:
        keys += [(p + r - 1, q, i + r - 1), (p, r, j)]
        inner2 = C.decompose(p + r - 1, q, i + r - 1)
        mid = tensor_map(C.decompose(p, r, j), C.identity_map(q),
                         domain=C.pair_space(p + r - 1, q),
                         codomain=C.triple_space(p, r, q))
        swap = tensor_map(
            C.identity_map(p),
            flip("sigma", r, q, C.space(r), C.space(q), f,
                 domain=C.pair_space(r, q), codomain=C.pair_space(q, r)),
            domain=C.triple_space(p, r, q), codomain=C.triple_space(p, q, r))
        rhs = swap @ (mid @ inner2)
    return lhs, rhs, keys


def _coassoc_r0(C, p, q, i, j):
    """r = 0 family: inner decomposition grafts at a leaf, q >= 1."""
    f = C.field
    keys = [(p + q - 1, 0, j), (p, q, i)]
    inner = C.decompose(p + q - 1, 0, j)
    outer = tensor_map(C.decompose(p, q, i), C.identity_map(0),
                       domain=C.pair_space(p + q - 1, 0),
                       codomain=C.triple_space(p, q, 0))
    lhs = outer @ inner
    if i <= j - q:
        keys.append((p, 0, j - q + 1))
        if p - 1 >= 1:
            keys.append((p - 1, q, i))
        inner2 = C.decompose(p - 1, q, i)
        mid = tensor_map(C.decompose(p, 0, j - q + 1), C.identity_map(q),
                         domain=C.pair_space(p - 1, q),
                         codomain=C.triple_space(p, 0, q))
        swap = tensor_map(
            C.identity_map(p),
            flip("sigma", 0, q, C.space(0), C.space(q), f,
                 domain=C.pair_space(0, q), codomain=C.pair_space(q, 0)),
            domain=C.triple_space(p, 0, q), codomain=C.triple_space(p, q, 0))
        rhs = swap @ (mid @ inner2)
    elif i <= j:
        keys += [(p, q - 1, i), (q, 0, j - i + 1)]
        inner2 = C.decompose(p, q - 1, i)
        rhs = tensor_map(C.identity_map(p), C.decompose(q, 0, j - i + 1),
                         domain=C.pair_space(p, q - 1),
                         codomain=C.triple_space(p, q, 0)) @ inner2
    else:
        keys.append((p, 0, j))
        if p - 1 >= 1:
            keys.append((p - 1, q, i - 1))
        inner2 = C.decompose(p - 1, q, i - 1)
        mid = tensor_map(C.decompose(p, 0, j), C.identity_map(q),
                         domain=C.pair_space(p - 1, q),
                         codomain=C.triple_space(p, 0, q))
        swap = tensor_map(
            C.identity_map(p),
            flip("sigma", 0, q, C.space(0), C.space(q), f,
                 domain=C.pair_space(0, q), codomain=C.pair_space(q, 0)),
            domain=C.triple_space(p, 0, q), codomain=C.triple_space(p, q, 0))
        rhs = swap @ (mid @ inner2)
    return lhs, rhs, keys


def _coassoc_q0_first(C, p, r, i, j):
    """q = 0 family, first displayed equation (1 <= j < p, outer (p,0,i))."""
    f = C.field
    keys = [(p - 1, r, j), (p, 0, i)]
    inner = C.decompose(p - 1, r, j)
    outer = tensor_map(C.decompose(p, 0, i), C.identity_map(r),
                       domain=C.pair_space(p - 1, r),
                       codomain=C.triple_space(p, 0, r))
    lhs = outer @ inner
    if i <= j:
        keys += [(p + r - 1, 0, i), (p, r, j + 1)]
        inner2 = C.decompose(p + r - 1, 0, i)
        mid = tensor_map(C.decompose(p, r, j + 1), C.identity_map(0),
                         domain=C.pair_space(p + r - 1, 0),
                         codomain=C.triple_space(p, r, 0))
    else:
        keys += [(p + r - 1, 0, i + r - 1), (p, r, j)]
        inner2 = C.decompose(p + r - 1, 0, i + r - 1)
        mid = tensor_map(C.decompose(p, r, j), C.identity_map(0),
                         domain=C.pair_space(p + r - 1, 0),
                         codomain=C.triple_space(p, r, 0))
    swap = tensor_map(
        C.identity_map(p),
        flip("sigma", r, 0, C.space(r), C.space(0), f,
             domain=C.pair_space(r, 0), codomain=C.pair_space(0, r)),
        domain=C.triple_space(p, r, 0), codomain=C.triple_space(p, 0, r))
    rhs = swap @ (mid @ inner2)
    return lhs, rhs, keys


def _coassoc_q0_second(C, p, r, i, j):
    """q = 0 family, second displayed equation (1 <= j <= p, 1 <= i <= r)."""
    keys = [(p, r - 1, j), (r, 0, i), (p + r - 1, 0, i + j - 1), (p, r, j)]
    inner = C.decompose(p, r - 1, j)
    lhs = tensor_map(C.identity_map(p), C.decompose(r, 0, i),
                     domain=C.pair_space(p, r - 1),
                     codomain=C.triple_space(p, r, 0)) @ inner
    inner2 = C.decompose(p + r - 1, 0, i + j - 1)
    rhs = tensor_map(C.decompose(p, r, j), C.identity_map(0),
                     domain=C.pair_space(p + r - 1, 0),
                     codomain=C.triple_space(p, r, 0)) @ inner2
    return lhs, rhs, keys


def _coassoc_qr0(C, p, i, j):
    """q = r = 0 family (1 <= j < p)."""
    f = C.field
    keys = [(p - 1, 0, j), (p, 0, i)]
    inner = C.decompose(p - 1, 0, j)
    outer = tensor_map(C.decompose(p, 0, i), C.identity_map(0),
                       domain=C.pair_space(p - 1, 0),
                       codomain=C.triple_space(p, 0, 0))
    lhs = outer @ inner
    if i <= j:
        keys += [(p - 1, 0, i), (p, 0, j + 1)]
        inner2 = C.decompose(p - 1, 0, i)
        mid = tensor_map(C.decompose(p, 0, j + 1), C.identity_map(0),
                         domain=C.pair_space(p - 1, 0),
                         codomain=C.triple_space(p, 0, 0))
    else:
        keys += [(p - 1, 0, i - 1), (p, 0, j)]
        inner2 = C.decompose(p - 1, 0, i - 1)
        mid = tensor_map(C.decompose(p, 0, j), C.identity_map(0),
                         domain=C.pair_space(p - 1, 0),
                         codomain=C.triple_space(p, 0, 0))
    swap = tensor_map(
        C.identity_map(p),
        flip("sigma", 0, 0, C.space(0), C.space(0), f,
             domain=C.pair_space(0, 0), codomain=C.pair_space(0, 0)),
        domain=C.triple_space(p, 0, 0), codomain=C.triple_space(p, 0, 0))
    rhs = swap @ (mid @ inner2)
    return lhs, rhs, keys


def coassociativity_tuples(N):
    """All admissible index tuples per family, in deterministic order.

    Yields (family_name, tuple); the input arity p+q+r-2 stays <= N.
    Formability inside the truncation is decided at evaluation time.
    """
    out = []
    for m in range(0, N + 1):
        s = m + 2
        for p in range(1, s - 1):
            for q in range(1, s - p):
                r = s - p - q
                if r < 1:
                    continue
                for i in range(1, p + 1):
                    for j in range(1, p + q):
                        out.append(("coassociativity (generic)",
                                    (p, q, r, i, j)))
    for m in range(0, N + 1):
        s = m + 2
        for p in range(1, s):
            q = s - p
            if q < 1:
                continue
            for i in range(1, p + 1):
                for j in range(1, p + q):
                    out.append(("coassociativity (r=0)", (p, q, 0, i, j)))
    for m in range(0, N + 1):
        s = m + 2
        for p in range(2, s):
            r = s - p
            if r < 1:
                continue
            for i in range(1, p + 1):
                for j in range(1, p):
                    out.append(("coassociativity (q=0, graft left)",
                                (p, 0, r, i, j)))
    for m in range(0, N + 1):
        s = m + 2
        for p in range(1, s):
            r = s - p
            if r < 1:
                continue
            for j in range(1, p + 1):
                for i in range(1, r + 1):
                    out.append(("coassociativity (q=0, graft right)",
                                (p, 0, r, i, j)))
    for p in range(2, N + 3):
        if p - 2 > N:
            continue
        for i in range(1, p + 1):
            for j in range(1, p):
                out.append(("coassociativity (q=r=0)", (p, 0, 0, i, j)))
    return out


def _coassoc_sides(C, family, tup):
    if family == "coassociativity (generic)":
        p, q, r, i, j = tup
        return _coassoc_generic(C, p, q, r, i, j)
    if family == "coassociativity (r=0)":
        p, q, _, i, j = tup
        return _coassoc_r0(C, p, q, i, j)
    if family == "coassociativity (q=0, graft left)":
        p, _, r, i, j = tup
        return _coassoc_q0_first(C, p, r, i, j)
    if family == "coassociativity (q=0, graft right)":
        p, _, r, i, j = tup
        return _coassoc_q0_second(C, p, r, i, j)
    if family == "coassociativity (q=r=0)":
        p, _, _, i, j = tup
        return _coassoc_qr0(C, p, i, j)
    raise ValueError(family)


def verify_cooperad_axioms(C, max_witnesses=MAX_WITNESSES, threads=None):
    """Counitality and all four coassociativity families, exhaustively."""
    report = Report(suite="cooperad")
    N = C.truncation

    for n in range(1, N + 1):
        ident = C.identity_map(n)
        lhs = contract_functional(C.decompose(1, n, 1), C.counit, "left",
                                  C.space(n))
        report.add(compare_maps("counitality (left)", (n,), lhs, ident,
                                keys=[(1, n, 1)],
                                max_witnesses=max_witnesses))
        for i in range(1, n + 1):
            lhs = contract_functional(C.decompose(n, 1, i), C.counit,
                                      "right", C.space(n))
            report.add(compare_maps("counitality (right)", (n, i), lhs,
                                    ident, keys=[(n, 1, i)],
                                    max_witnesses=max_witnesses))

    tuples = coassociativity_tuples(N)

    def run(item):
        family, tup = item
        try:
            lhs, rhs, keys = _coassoc_sides(C, family, tup)
        except TruncationError:
            return Check(family, tup, "skip", reason="truncation")
        return compare_maps(family, tup, lhs, rhs, keys=keys,
                            max_witnesses=max_witnesses)

    report.extend(parallel_map(run, tuples, threads))
    counts = {}
    for family, _ in tuples:
        counts[family] = counts.get(family, 0) + 1
    report.meta["enumerated"] = counts
    return report


def verify_comultiplication(C, T, max_witnesses=MAX_WITNESSES):
    """The two displayed identities for the triple, plus unit = counit."""
    report = Report(suite="comultiplication")
    N = C.truncation

    if N >= 3:
        sides = []
        for i in (1, 2):
            half = contract_functional(C.decompose(2, 2, i), T.binary,
                                       "left", C.space(2))
            sides.append(T.binary @ half)
        report.add(compare_maps("comultiplication associativity", (3,),
                                sides[0], sides[1],
                                keys=[(2, 2, 1), (2, 2, 2)],
                                max_witnesses=max_witnesses))
    else:
        report.add(Check("comultiplication associativity", (3,), "skip",
                         reason="truncation"))

    if N >= 2:
        for i in (1, 2):
            half = contract_functional(C.decompose(2, 0, i), T.binary,
                                       "left", C.space(0))
            lhs = T.nullary @ half
            report.add(compare_maps(
                "comultiplication counitality (i=%d)" % i, (1, i), lhs,
                T.unit, keys=[(2, 0, i)], max_witnesses=max_witnesses))
    else:
        for i in (1, 2):
            report.add(Check("comultiplication counitality (i=%d)" % i,
                             (1, i), "skip", reason="truncation"))

    report.add(compare_maps("unit functional matches counit", (1,),
                            T.unit, C.counit,
                            max_witnesses=max_witnesses))
    return report
