"""Algebra presentations and the cooperads they generate.

Two families are supported: chain cooperads of a bialgebra, with C(p) the
p-th tensor power of the algebra and C(0) the coefficient line, and
Hochschild cooperads of a Frobenius algebra, with C(n) the (n+1)-st tensor
power.  Validators check every axiom on structure constants exactly;
builders materialize the full decomposition table by Sweedler expansion of
the structure constants.
"""

from __future__ import annotations

from itertools import product

from .cooperad import (Check, ComultiplicationTriple, Report,
                       TruncatedCooperad, Witness, compare_maps)
from .exactlinalg import (TENSOR, BasedSpace, FieldSpec, LinearMap,
                          rank_decomposition, tensor_map, tensor_space)


class PresentationError(Exception):
    """Malformed or inconsistent presentation input."""


def word_index(word, dim):
    idx = 0
    for t in word:
        idx = idx * dim + t
    return idx


def word_space(labels, length, empty_label="1_k", name=""):
    """Tensor-power basis in row-major order; length 0 is the line."""
    if length == 0:
        return BasedSpace((empty_label,), name=name)
    words = (TENSOR.join(labels[t] for t in w)
             for w in product(range(len(labels)), repeat=length))
    return BasedSpace(tuple(words), name=name)


def _fmt_elem(labels, vec, field):
    if not vec:
        return "0"
    parts = []
    for r in sorted(vec):
        v = vec[r]
        if v == field.one:
            parts.append(labels[r])
        else:
            parts.append("(%s)%s" % (field.to_str(v), labels[r]))
    return " + ".join(parts)


def _fmt_pairs(labels, vec, field):
    if not vec:
        return "0"
    parts = []
    for key in sorted(vec):
        v = vec[key]
        lab = TENSOR.join(labels[t] for t in key)
        if v == field.one:
            parts.append(lab)
        else:
            parts.append("(%s)%s" % (field.to_str(v), lab))
    return " + ".join(parts)


class _PresentationBase(object):
    """Shared multiplication plumbing over structure constants."""

    def __init__(self, name, field, labels, mult, unit):
        self.name = name
        self.field = field
        self.labels = tuple(labels)
        if len(set(self.labels)) != len(self.labels):
            raise PresentationError("duplicate basis labels")
        self.dim = len(self.labels)
        self.mult = {}
        for (i, j), terms in mult.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise PresentationError("mult index out of range: %r"
                                        % ((i, j),))
            row = {}
            for k, c in terms.items():
                if not 0 <= k < self.dim:
                    raise PresentationError("mult target out of range: %r"
                                            % (k,))
                c = field.coerce(c)
                if c:
                    row[k] = c
            if row:
                self.mult[(i, j)] = row
        self.unit = {}
        for k, c in unit.items():
            if not 0 <= k < self.dim:
                raise PresentationError("unit index out of range: %r" % (k,))
            c = field.coerce(c)
            if c:
                self.unit[k] = c
        if not self.unit:
            raise PresentationError("unit vector is zero")

    # -- element arithmetic -------------------------------------------

    def mult_elem(self, u, v):
        field = self.field
        acc = {}
        for i, ci in u.items():
            for j, cj in v.items():
                terms = self.mult.get((i, j))
                if not terms:
                    continue
                c = field.mul(ci, cj)
                for k, ck in terms.items():
                    w = field.add(acc.get(k, field.zero), field.mul(c, ck))
                    if w:
                        acc[k] = w
                    else:
                        acc.pop(k, None)
        return acc

    def mult_letters(self, letters):
        """Product of basis letters, left to right; empty product = unit."""
        if not letters:
            return dict(self.unit)
        acc = {letters[0]: self.field.one}
        for t in letters[1:]:
            acc = self.mult_elem(acc, {t: self.field.one})
        return acc

    def pair_functional(self, eps, u):
        field = self.field
        out = field.zero
        for k, c in u.items():
            e = eps.get(k)
            if e:
                out = field.add(out, field.mul(c, e))
        return out


class BialgebraPresentation(_PresentationBase):
    """Structure constants of a bialgebra (B, mult, unit, comult, counit)."""

    kind = "bialgebra"

    def __init__(self, name, field, labels, mult, unit, comult, counit):
        super().__init__(name, field, labels, mult, unit)
        self.comult = {}
        for i, terms in comult.items():
            if not 0 <= i < self.dim:
                raise PresentationError("comult index out of range: %r"
                                        % (i,))
            row = {}
            for (j, k), c in terms.items():
                if not (0 <= j < self.dim and 0 <= k < self.dim):
                    raise PresentationError("comult target out of range: %r"
                                            % ((j, k),))
                c = field.coerce(c)
                if c:
                    row[(j, k)] = c
            self.comult[i] = row
        self.counit = {}
        for k, c in counit.items():
            if not 0 <= k < self.dim:
                raise PresentationError("counit index out of range: %r"
                                        % (k,))
            c = field.coerce(c)
            if c:
                self.counit[k] = c

    def comult_elem(self, u):
        field = self.field
        acc = {}
        for i, ci in u.items():
            for jk, c in self.comult.get(i, {}).items():
                w = field.add(acc.get(jk, field.zero), field.mul(ci, c))
                if w:
                    acc[jk] = w
                else:
                    acc.pop(jk, None)
        return acc

    def counit_elem(self, u):
        return self.pair_functional(self.counit, u)


class FrobeniusPresentation(_PresentationBase):
    """Algebra plus Frobenius functional; dual basis, the coproduct of the
    unit, and the Nakayama twist are derived by validate_frobenius."""

    kind = "frobenius"

    def __init__(self, name, field, labels, mult, unit, functional):
        super().__init__(name, field, labels, mult, unit)
        self.functional = {}
        for k, c in functional.items():
            if not 0 <= k < self.dim:
                raise PresentationError("functional index out of range: %r"
                                        % (k,))
            c = field.coerce(c)
            if c:
                self.functional[k] = c
        self.dual_basis = None   # list of sparse vectors e^t
        self.nakayama = None     # list of sparse vectors sigma(e_j)
        self._derived = False

    def eps(self, u):
        return self.pair_functional(self.functional, u)

    def gram(self):
        """G[i][j] = eps(e_i e_j)."""
        g = []
        for i in range(self.dim):
            row = []
            for j in range(self.dim):
                row.append(self.eps(self.mult_letters((i, j))))
            g.append(row)
        return g

    def ensure_derived(self):
        """Solve for the dual basis and the Nakayama twist; exact."""
        if self._derived:
            return
        field = self.field
        g = self.gram()
        # dual basis: e^j = sum_m c^j_m e_m with sum_m c^j_m G[m][i] = delta_ji,
        # i.e. columns of the inverse transpose Gram matrix.
        space = BasedSpace(self.labels, name="A")
        gt = LinearMap.from_entries(
            space, space, field,
            ((i, m, g[m][i]) for i in range(self.dim)
             for m in range(self.dim)))
        data = rank_decomposition(gt)
        if data.rank != self.dim:
            raise PresentationError(
                "not Frobenius for this functional: Gram matrix is singular")
        # full-rank reduced image basis is the standard basis, so the
        # recorded preimages are the inverse's columns
        inv_cols = {}
        for vec, pre in zip(data.image_basis, data.image_preimages):
            (r, c), = vec.items()
            if c != field.one:
                raise AssertionError("image basis not reduced")
            inv_cols[r] = pre
        self.dual_basis = [dict(inv_cols[j]) for j in range(self.dim)]
        for j in range(self.dim):
            for i in range(self.dim):
                lhs = self.eps(self.mult_elem(self.dual_basis[j],
                                              {i: field.one}))
                want = field.one if i == j else field.zero
                if lhs != want:
                    raise AssertionError("dual basis equations violated")
        # sigma(e_j) = sum_i eps(e_i e_j) * e^i
        nakayama = []
        for j in range(self.dim):
            acc = {}
            for i in range(self.dim):
                c = g[i][j]
                if not c:
                    continue
                for m, cm in self.dual_basis[i].items():
                    w = field.add(acc.get(m, field.zero), field.mul(c, cm))
                    if w:
                        acc[m] = w
                    else:
                        acc.pop(m, None)
            nakayama.append(acc)
        self.nakayama = nakayama
        self._derived = True

    def sigma(self, u):
        self.ensure_derived()
        field = self.field
        acc = {}
        for j, cj in u.items():
            for m, cm in self.nakayama[j].items():
                w = field.add(acc.get(m, field.zero), field.mul(cj, cm))
                if w:
                    acc[m] = w
                else:
                    acc.pop(m, None)
        return acc


# ----------------------------------------------------------------------
# Validators.

def validate_bialgebra(P):
    field = P.field
    report = Report(suite="bialgebra presentation")
    labels = P.labels

    def basis(i):
        return {i: field.one}

    for i in range(P.dim):
        for j in range(P.dim):
            for k in range(P.dim):
                lhs = P.mult_elem(P.mult_elem(basis(i), basis(j)), basis(k))
                rhs = P.mult_elem(basis(i), P.mult_elem(basis(j), basis(k)))
                if lhs == rhs:
                    report.add(Check("associativity", (i, j, k), "pass"))
                else:
                    report.add(Check("associativity", (i, j, k), "fail", [
                        Witness("associativity", (i, j, k),
                                TENSOR.join((labels[i], labels[j], labels[k])),
                                _fmt_elem(labels, lhs, field),
                                _fmt_elem(labels, rhs, field))]))
    for i in range(P.dim):
        lhs = P.mult_elem(P.unit, basis(i))
        rhs = P.mult_elem(basis(i), P.unit)
        ok = lhs == basis(i) and rhs == basis(i)
        if ok:
            report.add(Check("unitality", (i,), "pass"))
        else:
            report.add(Check("unitality", (i,), "fail", [
                Witness("unitality", (i,), labels[i],
                        _fmt_elem(labels, lhs, field),
                        _fmt_elem(labels, rhs, field))]))

    def comult_left(u):
        # (comult (x) id) of a two-leg tensor
        acc = {}
        for (a, b), c in u.items():
            for (x, y), cx in P.comult.get(a, {}).items():
                key = (x, y, b)
                w = field.add(acc.get(key, field.zero), field.mul(c, cx))
                if w:
                    acc[key] = w
                else:
                    acc.pop(key, None)
        return acc

    def comult_right(u):
        acc = {}
        for (a, b), c in u.items():
            for (x, y), cx in P.comult.get(b, {}).items():
                key = (a, x, y)
                w = field.add(acc.get(key, field.zero), field.mul(c, cx))
                if w:
                    acc[key] = w
                else:
                    acc.pop(key, None)
        return acc

    for i in range(P.dim):
        d = P.comult_elem(basis(i))
        lhs = comult_left(d)
        rhs = comult_right(d)
        if lhs == rhs:
            report.add(Check("coassociativity", (i,), "pass"))
        else:
            report.add(Check("coassociativity", (i,), "fail", [
                Witness("coassociativity", (i,), labels[i],
                        _fmt_pairs(labels, lhs, field),
                        _fmt_pairs(labels, rhs, field))]))
        left = {}
        right = {}
        for (a, b), c in d.items():
            e = P.counit.get(a)
            if e:
                w = field.add(left.get(b, field.zero), field.mul(c, e))
                if w:
                    left[b] = w
                else:
                    left.pop(b, None)
            e = P.counit.get(b)
            if e:
                w = field.add(right.get(a, field.zero), field.mul(c, e))
                if w:
                    right[a] = w
                else:
                    right.pop(a, None)
        if left == basis(i) and right == basis(i):
            report.add(Check("counitality", (i,), "pass"))
        else:
            report.add(Check("counitality", (i,), "fail", [
                Witness("counitality", (i,), labels[i],
                        _fmt_elem(labels, left, field),
                        _fmt_elem(labels, right, field))]))

    def pair_mult(u, v):
        acc = {}
        for (a, b), c in u.items():
            for (x, y), cx in v.items():
                cc = field.mul(c, cx)
                for m, cm in P.mult_elem(basis(a), basis(x)).items():
                    for n, cn in P.mult_elem(basis(b), basis(y)).items():
                        key = (m, n)
                        w = field.add(acc.get(key, field.zero),
                                      field.mul(cc, field.mul(cm, cn)))
                        if w:
                            acc[key] = w
                        else:
                            acc.pop(key, None)
        return acc

    for i in range(P.dim):
        for j in range(P.dim):
            lhs = P.comult_elem(P.mult_elem(basis(i), basis(j)))
            rhs = pair_mult(P.comult_elem(basis(i)), P.comult_elem(basis(j)))
            if lhs == rhs:
                report.add(Check("comultiplication morphism", (i, j), "pass"))
            else:
                report.add(Check("comultiplication morphism", (i, j), "fail",
                                 [Witness("comultiplication morphism",
                                          (i, j),
                                          TENSOR.join((labels[i], labels[j])),
                                          _fmt_pairs(labels, lhs, field),
                                          _fmt_pairs(labels, rhs, field))]))
            lv = P.counit_elem(P.mult_elem(basis(i), basis(j)))
            rv = field.mul(P.counit_elem(basis(i)), P.counit_elem(basis(j)))
            if lv == rv:
                report.add(Check("counit morphism", (i, j), "pass"))
            else:
                report.add(Check("counit morphism", (i, j), "fail", [
                    Witness("counit morphism", (i, j),
                            TENSOR.join((labels[i], labels[j])),
                            field.to_str(lv), field.to_str(rv))]))
    unit_pair = {}
    for a, ca in P.unit.items():
        for b, cb in P.unit.items():
            unit_pair[(a, b)] = field.mul(ca, cb)
    d1 = P.comult_elem(P.unit)
    if d1 == unit_pair:
        report.add(Check("comultiplication preserves unit", (), "pass"))
    else:
        report.add(Check("comultiplication preserves unit", (), "fail", [
            Witness("comultiplication preserves unit", (), "1",
                    _fmt_pairs(labels, d1, field),
                    _fmt_pairs(labels, unit_pair, field))]))
    if P.counit_elem(P.unit) == field.one:
        report.add(Check("counit preserves unit", (), "pass"))
    else:
        report.add(Check("counit preserves unit", (), "fail", [
            Witness("counit preserves unit", (), "1",
                    field.to_str(P.counit_elem(P.unit)),
                    field.to_str(field.one))]))
    return report


def validate_frobenius(P):
    """Checks the algebra axioms, solves for derived data, and verifies the
    pairing identities; raises PresentationError on a singular Gram matrix.
    """
    field = P.field
    labels = P.labels
    report = Report(suite="frobenius presentation")

    def basis(i):
        return {i: field.one}

    for i in range(P.dim):
        for j in range(P.dim):
            for k in range(P.dim):
                lhs = P.mult_elem(P.mult_elem(basis(i), basis(j)), basis(k))
                rhs = P.mult_elem(basis(i), P.mult_elem(basis(j), basis(k)))
                if lhs == rhs:
                    report.add(Check("associativity", (i, j, k), "pass"))
                else:
                    report.add(Check("associativity", (i, j, k), "fail", [
                        Witness("associativity", (i, j, k),
                                TENSOR.join((labels[i], labels[j], labels[k])),
                                _fmt_elem(labels, lhs, field),
                                _fmt_elem(labels, rhs, field))]))
    for i in range(P.dim):
        lhs = P.mult_elem(P.unit, basis(i))
        rhs = P.mult_elem(basis(i), P.unit)
        if lhs == basis(i) and rhs == basis(i):
            report.add(Check("unitality", (i,), "pass"))
        else:
            report.add(Check("unitality", (i,), "fail", [
                Witness("unitality", (i,), labels[i],
                        _fmt_elem(labels, lhs, field),
                        _fmt_elem(labels, rhs, field))]))

    P.ensure_derived()

    for a in range(P.dim):
        # a = sum_i eps(a e_i) e^i = sum_i eps(e^i a) e_i
        acc1 = {}
        acc2 = {}
        for i in range(P.dim):
            c1 = P.eps(P.mult_letters((a, i)))
            if c1:
                for m, cm in P.dual_basis[i].items():
                    w = field.add(acc1.get(m, field.zero),
                                  field.mul(c1, cm))
                    if w:
                        acc1[m] = w
                    else:
                        acc1.pop(m, None)
            c2 = P.eps(P.mult_elem(P.dual_basis[i], basis(a)))
            if c2:
                w = field.add(acc2.get(i, field.zero), c2)
                if w:
                    acc2[i] = w
                else:
                    acc2.pop(i, None)
        if acc1 == basis(a) and acc2 == basis(a):
            report.add(Check("dual basis expansion", (a,), "pass"))
        else:
            report.add(Check("dual basis expansion", (a,), "fail", [
                Witness("dual basis expansion", (a,), labels[a],
                        _fmt_elem(labels, acc1, field),
                        _fmt_elem(labels, acc2, field))]))

    def delta_of(u):
        # Delta(u) = sum_t u e_t (x) e^t as a two-leg tensor
        acc = {}
        for t in range(P.dim):
            left = P.mult_elem(u, basis(t))
            for m, cm in left.items():
                for s, cs in P.dual_basis[t].items():
                    key = (m, s)
                    w = field.add(acc.get(key, field.zero),
                                  field.mul(cm, cs))
                    if w:
                        acc[key] = w
                    else:
                        acc.pop(key, None)
        return acc

    def delta_of_right(u):
        # sum_t e_t (x) e^t u
        acc = {}
        for t in range(P.dim):
            right = P.mult_elem(P.dual_basis[t], u)
            for s, cs in right.items():
                key = (t, s)
                w = field.add(acc.get(key, field.zero), cs)
                if w:
                    acc[key] = w
                else:
                    acc.pop(key, None)
        return acc

    for a in range(P.dim):
        lhs = delta_of(basis(a))
        rhs = delta_of_right(basis(a))
        if lhs == rhs:
            report.add(Check("bilinearity of the unit coproduct", (a,),
                             "pass"))
        else:
            report.add(Check("bilinearity of the unit coproduct", (a,),
                             "fail", [
                Witness("bilinearity of the unit coproduct", (a,),
                        labels[a],
                        _fmt_pairs(labels, lhs, field),
                        _fmt_pairs(labels, rhs, field))]))

    for a in range(P.dim):
        for b in range(P.dim):
            lv = P.eps(P.mult_letters((a, b)))
            rv = P.eps(P.mult_elem(P.sigma(basis(b)), basis(a)))
            if lv == rv:
                report.add(Check("Nakayama relation", (a, b), "pass"))
            else:
                report.add(Check("Nakayama relation", (a, b), "fail", [
                    Witness("Nakayama relation", (a, b),
                            TENSOR.join((labels[a], labels[b])),
                            field.to_str(lv), field.to_str(rv))]))
    if P.sigma(P.unit) == P.unit:
        report.add(Check("Nakayama preserves unit", (), "pass"))
    else:
        report.add(Check("Nakayama preserves unit", (), "fail", [
            Witness("Nakayama preserves unit", (), "1",
                    _fmt_elem(labels, P.sigma(P.unit), field),
                    _fmt_elem(labels, P.unit, field))]))
    for a in range(P.dim):
        for b in range(P.dim):
            lhs = P.sigma(P.mult_letters((a, b)))
            rhs = P.mult_elem(P.sigma(basis(a)), P.sigma(basis(b)))
            if lhs == rhs:
                report.add(Check("Nakayama is multiplicative", (a, b),
                                 "pass"))
            else:
                report.add(Check("Nakayama is multiplicative", (a, b),
                                 "fail", [
                    Witness("Nakayama is multiplicative", (a, b),
                            TENSOR.join((labels[a], labels[b])),
                            _fmt_elem(labels, lhs, field),
                            _fmt_elem(labels, rhs, field))]))
    return report


# ----------------------------------------------------------------------
# Cooperad builders.

def build_bialgebra_cooperad(P, N):
    """C(p) = B^{(x)p} with C(0) = k; decompositions comultiply a window of
    q letters, multiply the first legs into the slot, and emit the second
    legs as the right factor; q = 0 inserts the unit."""
    field = P.field
    dim = P.dim
    spaces = [word_space(P.labels, p, name="C(%d)" % p)
              for p in range(N + 1)]
    right_dims = [spaces[q].dim for q in range(N + 1)]

    def build_delta(p, q, i):
        dom = spaces[p + q - 1]
        cod_right = right_dims[q]
        entries = []
        if q == 0:
            for col, w in enumerate(product(range(dim), repeat=p - 1)):
                for u, cu in P.unit.items():
                    left = w[:i - 1] + (u,) + w[i - 1:]
                    entries.append((word_index(left, dim), col, cu))
        else:
            for col, w in enumerate(product(range(dim), repeat=p + q - 1)):
                window = w[i - 1:i - 1 + q]
                expansions = [list(P.comult.get(x, {}).items())
                              for x in window]
                for combo in product(*expansions):
                    coeff = field.one
                    for (_, c) in combo:
                        coeff = field.mul(coeff, c)
                    firsts = [jk[0] for jk, _ in combo]
                    seconds = tuple(jk[1] for jk, _ in combo)
                    prodvec = P.mult_letters(tuple(firsts))
                    ridx = word_index(seconds, dim)
                    for m, cm in prodvec.items():
                        left = w[:i - 1] + (m,) + w[i - 1 + q:]
                        row = word_index(left, dim) * cod_right + ridx
                        entries.append((row, col, field.mul(coeff, cm)))
        pair = tensor_space(spaces[p], spaces[q])
        return LinearMap.from_entries(dom, pair, field, entries)

    decomp = {}
    for key in TruncatedCooperad.required_keys(N):
        decomp[key] = build_delta(*key)

    counit = LinearMap.functional(
        spaces[1], field,
        [P.counit.get(t, field.zero) for t in range(dim)])

    C = TruncatedCooperad(field, N, spaces, decomp, counit,
                          name=P.name)

    binary_vals = []
    for (x, y) in product(range(dim), repeat=2):
        binary_vals.append(P.counit_elem(P.mult_letters((x, y))))
    binary = LinearMap.functional(C.space(2), field, binary_vals)
    unit_f = LinearMap.functional(
        C.space(1), field,
        [P.counit.get(t, field.zero) for t in range(dim)])
    nullary = LinearMap.functional(C.space(0), field, [field.one])
    T = ComultiplicationTriple(binary, unit_f, nullary)
    return C, T


def build_frobenius_cooperad(P, N):
    """C(n) = A^{(x)(n+1)}; decompositions insert the expansion of the unit
    coproduct: left word takes the first leg in the slot, right word leads
    with the second leg."""
    P.ensure_derived()
    field = P.field
    dim = P.dim
    spaces = [word_space(P.labels, n + 1, name="C(%d)" % n)
              for n in range(N + 1)]

    def build_delta(p, q, i):
        dom = spaces[p + q - 1]
        cod_right = spaces[q].dim
        entries = []
        for col, w in enumerate(product(range(dim), repeat=p + q)):
            tail = w[i:i + q]
            ridx_base = word_index(tail, dim)
            stride = dim ** q
            for t in range(dim):
                left = w[:i] + (t,) + w[i + q:]
                lidx = word_index(left, dim)
                for s, cs in P.dual_basis[t].items():
                    row = lidx * cod_right + (s * stride + ridx_base)
                    entries.append((row, col, cs))
        pair = tensor_space(spaces[p], spaces[q])
        return LinearMap.from_entries(dom, pair, field, entries)

    decomp = {}
    for key in TruncatedCooperad.required_keys(N):
        decomp[key] = build_delta(*key)

    def contraction_functional(n):
        # word (a_0,...,a_n) -> eps(a_0 a_1 ... a_n)
        vals = []
        for w in product(range(dim), repeat=n + 1):
            vals.append(P.eps(P.mult_letters(w)))
        return LinearMap.functional(spaces[n], field, vals)

    counit = contraction_functional(1)
    C = TruncatedCooperad(field, N, spaces, decomp, counit, name=P.name)
    T = ComultiplicationTriple(contraction_functional(2),
                               contraction_functional(1),
                               contraction_functional(0))
    return C, T


def build_cooperad(P, N):
    if P.kind == "bialgebra":
        return build_bialgebra_cooperad(P, N)
    if P.kind == "frobenius":
        return build_frobenius_cooperad(P, N)
    raise PresentationError("unknown presentation kind %r" % (P.kind,))


# ----------------------------------------------------------------------
# Hat duality: linear duals of the decompositions against the operadic
# partial compositions of multilinear cochains.

def _cochain_space(P, arity):
    """Multilinear maps A^{(x)arity} -> A spanned by [word -> basis]."""
    dim = P.dim
    if arity == 0:
        words = [()]
    else:
        words = list(product(range(dim), repeat=arity))
    labels = []
    for w in words:
        wl = TENSOR.join(P.labels[t] for t in w) if w else "1"
        for m in range(dim):
            labels.append("[%s->%s]" % (wl, P.labels[m]))
    return BasedSpace(tuple(labels), name="O(%d)" % arity)


def _cochain_index(P, w, m):
    return word_index(w, P.dim) * P.dim + m


def _hat_matrix(P, arity, cochain_space, chain_space):
    """Row (w,m), column (a_0,)+w, value eps(e_{a_0} e_m)."""
    dim = P.dim
    field = P.field
    g = P.gram()
    entries = []
    words = [()] if arity == 0 else list(product(range(dim), repeat=arity))
    for w in words:
        base = word_index(w, dim)
        for m in range(dim):
            row = base * dim + m
            for a0 in range(dim):
                c = g[a0][m]
                if c:
                    col = a0 * (dim ** arity) + base
                    entries.append((row, col, c))
    return LinearMap.from_entries(chain_space, cochain_space, field, entries)


def verify_hat_duality(P, n_small=2):
    """Duality of decompositions with cochain partial composition.

    For all p,q <= n_small (q = 0 included) and slots i, the functional
    pairing of a decomposition agrees with composing hatted cochains.
    """
    if P.kind != "frobenius":
        raise PresentationError("hat duality applies to Frobenius instances")
    P.ensure_derived()
    field = P.field
    dim = P.dim
    N = max(2 * n_small - 1, 2)
    C, _ = build_frobenius_cooperad(P, N)
    report = Report(suite="hat duality")

    max_arity = 2 * n_small - 1
    ospaces = {a: _cochain_space(P, a) for a in range(0, max_arity + 1)}
    hats = {a: _hat_matrix(P, a, ospaces[a], C.space(a))
            for a in range(0, max_arity + 1)}

    def words(arity):
        return [()] if arity == 0 else list(product(range(dim),
                                                    repeat=arity))

    for p in range(1, n_small + 1):
        for q in range(0, n_small + 1):
            n = p + q - 1
            for i in range(1, p + 1):
                # T[(f,g) row, h col] = coefficient of h in f o_i g
                t_entries = []
                s_entries = []
                oq_dim = ospaces[q].dim
                for w in words(p):
                    for m in range(dim):
                        fidx = _cochain_index(P, w, m)
                        for v in words(q):
                            for l in range(dim):
                                gidx = _cochain_index(P, v, l)
                                if w[i - 1] != l:
                                    continue
                                u = w[:i - 1] + v + w[i:]
                                hidx = _cochain_index(P, u, m)
                                pair = fidx * oq_dim + gidx
                                t_entries.append((pair, hidx, field.one))
                                s_entries.append((hidx, pair, field.one))
                pair_space = tensor_space(ospaces[p], ospaces[q])
                tmap = LinearMap.from_entries(ospaces[n], pair_space, field,
                                              t_entries)
                lhs = tmap @ hats[n]
                rhs = tensor_map(hats[p], hats[q],
                                 codomain=pair_space) @ C.decompose(p, q, i)
                report.add(compare_maps("hat duality", (p, q, i), lhs, rhs,
                                        keys=[(p, q, i)]))
                if (p == 1 and i == 1) or q == 1:
                    smap = LinearMap.from_entries(pair_space, ospaces[n],
                                                  field, s_entries)
                    ident = {_cochain_index(P, (m,), m): field.one
                             for m in range(dim)}
                if p == 1 and i == 1:
                    bad = None
                    for v in words(q):
                        for l in range(dim):
                            gvec = {_cochain_index(P, v, l): field.one}
                            pairvec = {fi * oq_dim + gi: field.mul(cf, cg)
                                       for fi, cf in ident.items()
                                       for gi, cg in gvec.items()}
                            out = smap.apply(pairvec)
                            if out != gvec:
                                bad = (_cochain_index(P, v, l), out, gvec)
                                break
                        if bad:
                            break
                    if bad is None:
                        report.add(Check("operadic unit (left)", (q,),
                                         "pass"))
                    else:
                        gi, out, gvec = bad
                        report.add(Check("operadic unit (left)", (q,),
                                         "fail", [
                            Witness("operadic unit (left)", (q,),
                                    ospaces[q].labels[gi],
                                    str(sorted(out.items())),
                                    str(sorted(gvec.items())))]))
                if q == 1:
                    bad = None
                    for w in words(p):
                        for m in range(dim):
                            fvec = {_cochain_index(P, w, m): field.one}
                            pairvec = {fi * oq_dim + gi: field.mul(cf, cg)
                                       for fi, cf in fvec.items()
                                       for gi, cg in ident.items()}
                            out = smap.apply(pairvec)
                            if out != fvec:
                                bad = (_cochain_index(P, w, m), out, fvec)
                                break
                        if bad:
                            break
                    if bad is None:
                        report.add(Check("operadic unit (right)", (p, i),
                                         "pass"))
                    else:
                        fi, out, fvec = bad
                        report.add(Check("operadic unit (right)", (p, i),
                                         "fail", [
                            Witness("operadic unit (right)", (p, i),
                                    ospaces[p].labels[fi],
                                    str(sorted(out.items())),
                                    str(sorted(fvec.items())))]))
    return report


# ----------------------------------------------------------------------
# Built-in presentations.

def _group_mult(table):
    return {(i, j): {table[i][j]: 1}
            for i in range(len(table)) for j in range(len(table))}


def _group_bialgebra(name, field, labels, table):
    return BialgebraPresentation(
        name, field, labels,
        mult=_group_mult(table),
        unit={0: 1},
        comult={i: {(i, i): 1} for i in range(len(labels))},
        counit={i: 1 for i in range(len(labels))})


def _make_q_z2(field):
    return _group_bialgebra("Q_Z2", field, ("1", "g"), [[0, 1], [1, 0]])


def _make_f2_z2(field):
    return _group_bialgebra("F2_Z2", field, ("1", "g"), [[0, 1], [1, 0]])


def _make_q_z3(field):
    return _group_bialgebra("Q_Z3", field, ("1", "g", "g2"),
                            [[0, 1, 2], [1, 2, 0], [2, 0, 1]])


def _make_sweedler4(field):
    # basis 1, g, x, gx with g^2 = 1, x^2 = 0, xg = -gx
    one, g, x, gx = 0, 1, 2, 3
    mult = {
        (one, one): {one: 1}, (one, g): {g: 1}, (one, x): {x: 1},
        (one, gx): {gx: 1},
        (g, one): {g: 1}, (g, g): {one: 1}, (g, x): {gx: 1},
        (g, gx): {x: 1},
        (x, one): {x: 1}, (x, g): {gx: -1}, (x, x): {},
        (x, gx): {},
        (gx, one): {gx: 1}, (gx, g): {x: -1}, (gx, x): {},
        (gx, gx): {},
    }
    comult = {
        one: {(one, one): 1},
        g: {(g, g): 1},
        x: {(x, one): 1, (g, x): 1},
        gx: {(gx, g): 1, (one, gx): 1},
    }
    counit = {one: 1, g: 1}
    return BialgebraPresentation("sweedler4", field, ("1", "g", "x", "gx"),
                                 mult, {one: 1}, comult, counit)


def _make_dual_numbers(field):
    mult = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {}}
    return FrobeniusPresentation("dual_numbers", field, ("1", "x"),
                                 mult, {0: 1}, {1: 1})


def _make_mat2(field):
    # basis e11, e12, e21, e22; e_ab e_cd = [b=c] e_ad; functional = trace
    idx = {(1, 1): 0, (1, 2): 1, (2, 1): 2, (2, 2): 3}
    mult = {}
    for (a, b), i in idx.items():
        for (c, d), j in idx.items():
            mult[(i, j)] = ({idx[(a, d)]: 1} if b == c else {})
    return FrobeniusPresentation("mat2", field, ("e11", "e12", "e21", "e22"),
                                 mult, {0: 1, 3: 1}, {0: 1, 3: 1})


def _make_group_frobenius_z2(field):
    mult = _group_mult([[0, 1], [1, 0]])
    return FrobeniusPresentation("group_frobenius_Z2", field, ("1", "g"),
                                 mult, {0: 1}, {0: 1})


BUILTINS = {
    "Q_Z2": (_make_q_z2, FieldSpec.rationals,
             "group bialgebra of Z/2 over the rationals"),
    "F2_Z2": (_make_f2_z2, lambda: FieldSpec.prime_field(2),
              "group bialgebra of Z/2 over F_2"),
    "Q_Z3": (_make_q_z3, FieldSpec.rationals,
             "group bialgebra of Z/3 over the rationals"),
    "sweedler4": (_make_sweedler4, FieldSpec.rationals,
                  "4-dim Hopf algebra with group-like g and skew-primitive x"),
    "dual_numbers": (_make_dual_numbers, FieldSpec.rationals,
                     "Frobenius k[x]/(x^2), functional reads the x part"),
    "mat2": (_make_mat2, FieldSpec.rationals,
             "Frobenius 2x2 matrices with the trace functional"),
    "group_frobenius_Z2": (_make_group_frobenius_z2, FieldSpec.rationals,
                           "group algebra of Z/2 with coefficient-of-1 "
                           "functional"),
}


def builtin(name, field=None):
    """A named built-in presentation, optionally over another field."""
    entry = BUILTINS.get(name)
    if entry is None:
        raise PresentationError("unknown builtin %r; known: %s"
                                % (name, ", ".join(sorted(BUILTINS))))
    factory, default_field, _ = entry
    return factory(field if field is not None else default_field())
