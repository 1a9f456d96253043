"""Homology of the decomposition-induced complex and transferred structure.

Over a field the chain-level cup coproduct and cobracket descend to
homology.  This module computes an explicit deformation retract
(inclusion, projection, homotopy) with exact arithmetic, pushes binary
co-operations through it, and verifies the coalgebra axioms on the
result: coassociativity, counitality, cocommutativity, coantisymmetry,
coJacobi, and coLeibniz.
"""

from .cooperad import (Check, MAX_WITNESSES, Report, TruncationError,
                       compare_maps)
from .derived import (SummedMap, cobracket, compare_summed, cup_coproduct,
                      differential, sm_add, sm_expand_first,
                      sm_expand_second, sm_flip12, sm_flip23, sm_post_flip,
                      sm_precompose, sm_scale)
from .exactlinalg import (BasedSpace, Echelon, LinearMap,
                          contract_functional, format_vector,
                          rank_decomposition, tensor_map, tensor_space)

__all__ = [
    "ChainComplex",
    "GradedSpaces",
    "HomologyError",
    "HomologyStructure",
    "Retraction",
    "build_homology_structure",
    "compute_homology",
    "transfer_binary",
    "verify_gerstenhaber",
]


class HomologyError(Exception):
    """A complex or transfer precondition failed at a specific degree."""

    def __init__(self, message, degree=None, witness=None):
        super(HomologyError, self).__init__(message)
        self.degree = degree
        self.witness = witness


class ChainComplex(object):
    """Nonnegatively graded spaces with a degree -1 differential.

    diffs[n] is d_n: spaces[n] -> spaces[n-1] for n >= 1 (index 0 holds
    None).  The relation d_n . d_{n+1} = 0 is checked on construction.
    """

    __slots__ = ("field", "spaces", "diffs", "top")

    def __init__(self, field, spaces, diffs):
        spaces = list(spaces)
        diffs = list(diffs)
        if len(diffs) != len(spaces):
            raise ValueError("need diffs[n] for degrees 1..top and a None "
                             "placeholder at index 0")
        self.field = field
        self.spaces = spaces
        self.diffs = diffs
        self.top = len(spaces) - 1
        for n in range(1, self.top + 1):
            d = diffs[n]
            if d.domain != spaces[n] or d.codomain != spaces[n - 1]:
                raise ValueError("differential at degree %d maps %r -> %r"
                                 % (n, d.domain, d.codomain))
        for n in range(2, self.top + 1):
            square = diffs[n - 1] @ diffs[n]
            if not square.is_zero():
                c = min(square.cols)
                raise HomologyError(
                    "d.d is nonzero at degree %d" % n, degree=n,
                    witness="%s -> %s" % (
                        spaces[n].labels[c],
                        format_vector(spaces[n - 2], square.column(c),
                                      field)))

    @classmethod
    def from_cooperad(cls, C, T, top=None):
        """The complex carried by a decomposition table and its
        comultiplication functionals."""
        top = C.truncation if top is None else min(top, C.truncation)
        spaces = [C.space(n) for n in range(top + 1)]
        diffs = [None] + [differential(C, T, n) for n in range(1, top + 1)]
        return cls(C.field, spaces, diffs)

    def d(self, n):
        return self.diffs[n]


class GradedSpaces(object):
    """Graded basis data with the access surface of a decomposition table,
    so the summed-map combinators run unchanged over homology."""

    __slots__ = ("field", "name", "truncation", "_spaces", "_identities",
                 "_pairs", "_triples")

    def __init__(self, field, spaces, name=""):
        self.field = field
        self.name = name
        self.truncation = len(spaces) - 1
        self._spaces = list(spaces)
        self._identities = {}
        self._pairs = {}
        self._triples = {}

    def space(self, n):
        if not 0 <= n <= self.truncation:
            raise TruncationError("degree %d outside graded range %d"
                                  % (n, self.truncation))
        return self._spaces[n]

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
                             name="H(%d)xH(%d)" % (p, q))
            self._pairs[key] = s
        return s

    def triple_space(self, p, q, r):
        key = (p, q, r)
        s = self._triples.get(key)
        if s is None:
            s = tensor_space(self.pair_space(p, q), self.space(r),
                             name="H(%d)xH(%d)xH(%d)" % (p, q, r))
            self._triples[key] = s
        return s


class Retraction(object):
    """Deformation retract of a chain complex onto its homology.

    homology[n] is the degree-n homology space in a canonical echelon
    basis; inclusion[n]: H(n) -> C(n) embeds chosen cycle representatives;
    projection[n]: C(n) -> H(n); homotopy[n]: C(n) -> C(n+1) (None at the
    top degree).  The identities

        projection . inclusion = id
        d . inclusion = 0
        projection . d = 0
        inclusion . projection = id - d.homotopy - homotopy.d

    hold exactly and are checked on construction.  The top degree is
    provisional: no differential enters it from above, so its classes are
    cycles modulo nothing and can shrink under a longer complex.
    """

    __slots__ = ("complex", "homology", "inclusion", "projection",
                 "homotopy", "_spaces")

    def __init__(self, cx, homology, inclusion, projection, homotopy):
        self.complex = cx
        self.homology = homology
        self.inclusion = inclusion
        self.projection = projection
        self.homotopy = homotopy
        self._spaces = None

    @property
    def field(self):
        return self.complex.field

    @property
    def top(self):
        return self.complex.top

    def dims(self):
        return tuple(h.dim for h in self.homology)

    def homology_spaces(self):
        """Interned graded-space view of the homology, reused by every
        transfer so tables stay comparable."""
        if self._spaces is None:
            self._spaces = GradedSpaces(self.field, self.homology, name="H")
        return self._spaces


def _homology_labels(n, count):
    if count == 1:
        return ("z%d" % n,)
    return tuple("z%d_%d" % (n, k) for k in range(count))


def _sub_into(acc, vec, field):
    for r, c in vec.items():
        w = field.sub(acc.get(r, field.zero), c)
        if w:
            acc[r] = w
        else:
            acc.pop(r, None)


def compute_homology(cx):
    """Exact deformation retract of cx onto its homology.

    Per degree the space splits three ways: boundaries (echelon image of
    the incoming differential), homology representatives (kernel echelon
    reduced against the boundaries), and a complement of the cycles
    spanned by the pivot columns of the outgoing differential.  The
    homotopy lifts boundaries through that complement; lifting through
    the pivot complement rather than an arbitrary preimage is what makes
    inclusion . projection = id - d.h - h.d exact.
    """
    field = cx.field
    top = cx.top
    rks = [None] * (top + 1)
    for n in range(1, top + 1):
        rks[n] = rank_decomposition(cx.diffs[n])

    # sections[n] echelonizes the pivot columns of d_n with standard-basis
    # payloads; reducing a boundary through it yields the unique preimage
    # inside the chosen complement of the cycles at degree n
    sections = [None] * (top + 1)
    for n in range(1, top + 1):
        ech = Echelon(field)
        for j in rks[n].pivot_columns:
            if ech.insert(cx.diffs[n].column(j), {j: field.one}) is None:
                raise HomologyError("dependent pivot columns at degree %d"
                                    % n, degree=n)
        sections[n] = ech

    homology = []
    inclusion = []
    projection = []
    homotopy = []
    for n in range(top + 1):
        space = cx.spaces[n]
        bvecs = rks[n + 1].image_basis if n < top else []
        if n >= 1:
            zvecs = rks[n].kernel_basis
            avecs = rks[n].pivot_columns
        else:
            zvecs = [{j: field.one} for j in range(space.dim)]
            avecs = []

        # one echelon over the whole degree; payload positions remember
        # which family each inserted vector came from, so reducing any
        # vector recovers its unique expansion in the original family
        ech = Echelon(field)
        kinds = []
        reps = []
        lifts = []
        for k, b in enumerate(bvecs):
            if ech.insert(dict(b), {len(kinds): field.one}) is None:
                raise HomologyError("dependent boundary basis at degree %d"
                                    % n, degree=n)
            kinds.append(("bnd", k))
            _, rem, pay = sections[n + 1].reduce(dict(b), {})
            if rem:
                raise HomologyError("boundary without preimage at degree %d"
                                    % n, degree=n)
            lifts.append({r: field.neg(c) for r, c in pay.items() if c})
        for z in zvecs:
            pos = len(kinds)
            if ech.insert(dict(z), {pos: field.one}) is not None:
                kinds.append(("rep", len(reps)))
                reps.append(dict(z))
        for j in avecs:
            pos = len(kinds)
            if ech.insert({j: field.one}, {pos: field.one}) is None:
                raise HomologyError("cycle complement meets the cycles at "
                                    "degree %d" % n, degree=n)
            kinds.append(("cpl", j))
        if len(kinds) != space.dim:
            raise HomologyError("split families do not span degree %d" % n,
                                degree=n)

        hspace = BasedSpace(_homology_labels(n, len(reps)),
                            name="H(%d)" % n)
        pcols = {}
        hcols = {}
        for j in range(space.dim):
            _, rem, pay = ech.reduce({j: field.one}, {})
            if rem:
                raise HomologyError("split families do not span degree %d"
                                    % n, degree=n)
            pcol = {}
            hcol = {}
            for pos, c in pay.items():
                if not c:
                    continue
                v = field.neg(c)
                kind, data = kinds[pos]
                if kind == "rep":
                    pcol[data] = v
                elif kind == "bnd":
                    for r, w in lifts[data].items():
                        acc = field.add(hcol.get(r, field.zero),
                                        field.mul(v, w))
                        if acc:
                            hcol[r] = acc
                        else:
                            hcol.pop(r, None)
            if pcol:
                pcols[j] = pcol
            if hcol:
                hcols[j] = hcol

        homology.append(hspace)
        inclusion.append(LinearMap(hspace, space, field,
                                   {l: dict(v) for l, v in enumerate(reps)
                                    if v},
                                   _checked=True))
        projection.append(LinearMap(space, hspace, field, pcols,
                                    _checked=True))
        homotopy.append(LinearMap(space, cx.spaces[n + 1], field, hcols,
                                  _checked=True) if n < top else None)

    ret = Retraction(cx, homology, inclusion, projection, homotopy)
    _verify_retraction(ret)
    return ret


def _verify_retraction(ret):
    """Columnwise exact check of all four retract identities."""
    cx = ret.complex
    field = cx.field
    for n in range(cx.top + 1):
        incl = ret.inclusion[n]
        proj = ret.projection[n]
        h = ret.homotopy[n]
        d = cx.diffs[n] if n >= 1 else None
        d_up = cx.diffs[n + 1] if n < cx.top else None
        h_prev = ret.homotopy[n - 1] if n >= 1 else None
        p_prev = ret.projection[n - 1] if n >= 1 else None
        for l in range(ret.homology[n].dim):
            col = incl.column(l)
            if d is not None and d.apply(col):
                raise HomologyError(
                    "representative %s at degree %d is not a cycle"
                    % (ret.homology[n].labels[l], n), degree=n)
            if proj.apply(col) != {l: field.one}:
                raise HomologyError(
                    "projection does not retract the inclusion at degree %d"
                    % n, degree=n)
        for j in range(cx.spaces[n].dim):
            if d is not None and p_prev.apply(d.column(j)):
                raise HomologyError(
                    "projection does not kill boundaries at degree %d - 1"
                    % n, degree=n - 1)
            rhs = {j: field.one}
            if h is not None and d_up is not None:
                _sub_into(rhs, d_up.apply(h.column(j)), field)
            if d is not None and h_prev is not None:
                _sub_into(rhs, h_prev.apply(d.column(j)), field)
            if incl.apply(proj.column(j)) != rhs:
                raise HomologyError(
                    "homotopy identity fails at degree %d" % n, degree=n)


def _chain_map_square(table, prev, cx, mode, n):
    """Both routes around the chain-map square at source degree n.

    Returns (m.d, tensor-d . m) as summed maps out of C(n); mode "koszul"
    gives the second leg the sign (-1)^p, mode "suspension" the sign
    -(-1)^p taken by degree +1 co-operations."""
    C = table.cooperad
    field = C.field
    out = {}
    for (p, q), mm in table.components.items():
        if p >= 1:
            big = tensor_map(cx.diffs[p], C.identity_map(q),
                             domain=C.pair_space(p, q),
                             codomain=C.pair_space(p - 1, q))
            t = big @ mm
            key = (p - 1, q)
            cur = out.get(key)
            out[key] = t if cur is None else cur + t
        if q >= 1:
            big = tensor_map(C.identity_map(p), cx.diffs[q],
                             domain=C.pair_space(p, q),
                             codomain=C.pair_space(p, q - 1))
            t = big @ mm
            s = field.sign(p if mode == "koszul" else p + 1)
            if s != field.one:
                t = t.scale(s)
            key = (p, q - 1)
            cur = out.get(key)
            out[key] = t if cur is None else cur + t
    rhs = SummedMap(C, n, out)
    if prev is None:
        lhs = SummedMap(C, n, {})
    else:
        lhs = sm_precompose(prev, cx.diffs[n], n)
    return lhs, rhs


def transfer_binary(chain_tables, ret, mode="koszul",
                    max_witnesses=MAX_WITNESSES):
    """Push a graded family of binary co-operations onto homology.

    chain_tables maps each source degree n (contiguous from 0) to its
    SummedMap.  Preconditions checked per degree, with witnesses on
    failure: the family is a chain map for the tensor differential in the
    given sign mode ("koszul": m.d = (d(x)id + (-1)^p id(x)d).m;
    "suspension": m.d = (d(x)id - (-1)^p id(x)d).m), and the transfer is
    representative-independent ((proj(x)proj).m.d = 0).  Returns a dict
    of source degree -> SummedMap over ret.homology_spaces(), built
    componentwise as (proj(x)proj).m.inclusion.
    """
    if mode not in ("koszul", "suspension"):
        raise ValueError("mode must be 'koszul' or 'suspension', got %r"
                         % (mode,))
    degrees = sorted(chain_tables)
    if degrees != list(range(len(degrees))):
        raise ValueError("chain_tables must cover contiguous degrees "
                         "starting at 0")
    cx = ret.complex
    field = cx.field
    H = ret.homology_spaces()
    out = {}
    for n in degrees:
        table = chain_tables[n]
        lhs, rhs = _chain_map_square(table, chain_tables.get(n - 1), cx,
                                     mode, n)
        check = compare_summed("transfer chain-map precondition", (n,),
                               lhs, rhs, max_witnesses=max_witnesses)
        if check.status == "fail":
            w = check.witnesses[0]
            raise HomologyError(
                "not a chain map (mode %s) at source degree %d on basis "
                "%s: m.d = %s, tensor-d.m = %s"
                % (mode, n, w.basis_label, w.left, w.right),
                degree=n, witness=w)
        comps = {}
        for (p, q), mm in sorted(table.components.items()):
            big = tensor_map(ret.projection[p], ret.projection[q],
                             domain=mm.codomain,
                             codomain=H.pair_space(p, q))
            projected = big @ mm
            if n + 1 <= cx.top:
                defect = projected @ cx.diffs[n + 1]
                if not defect.is_zero():
                    c = min(defect.cols)
                    raise HomologyError(
                        "transfer depends on the representative at source "
                        "degree %d, component (%d, %d): boundary of %s "
                        "maps to %s"
                        % (n, p, q, cx.spaces[n + 1].labels[c],
                           format_vector(H.pair_space(p, q),
                                         defect.column(c), field)),
                        degree=n)
            t = projected @ ret.inclusion[n]
            if not t.is_zero():
                comps[(p, q)] = t
        out[n] = SummedMap(H, n, comps)
    return out


class HomologyStructure(object):
    """Transferred coalgebra data on the homology of one instance.

    cup[n] and cobracket[n] are summed maps over the homology spaces;
    counit is the transferred functional on H(0).  Axioms are asserted
    for source degrees up to degree_cap; expansions that would touch the
    provisional top degree of the retraction are skipped.
    """

    __slots__ = ("retraction", "spaces", "cup", "cobracket", "counit",
                 "degree_cap")

    def __init__(self, retraction, spaces, cup, cobracket, counit,
                 degree_cap):
        self.retraction = retraction
        self.spaces = spaces
        self.cup = cup
        self.cobracket = cobracket
        self.counit = counit
        self.degree_cap = degree_cap


def build_homology_structure(C, T, degree_cap=None):
    """Homology retract plus transferred cup, cobracket, and counit.

    Give the decomposition table two degrees of headroom above the
    largest degree whose axioms you assert: the top degree of the
    truncated complex is provisional, and the coLeibniz expansions reach
    one degree past the cap.  With truncation M the cap defaults to M-2.
    """
    M = C.truncation
    if degree_cap is None:
        degree_cap = M - 2
    if degree_cap < 0:
        raise ValueError("truncation %d leaves no degree with headroom" % M)
    if degree_cap + 2 > M:
        raise ValueError("degree cap %d needs truncation >= %d, got %d"
                         % (degree_cap, degree_cap + 2, M))
    cx = ChainComplex.from_cooperad(C, T)
    ret = compute_homology(cx)
    if M >= 1 and not (T.nullary @ cx.diffs[1]).is_zero():
        raise HomologyError("the nullary functional is not a chain "
                            "functional", degree=1)
    cup_tables = {n: cup_coproduct(C, T, n) for n in range(degree_cap + 2)}
    cbk_tables = {n: cobracket(C, n) for n in range(degree_cap + 1)}
    cup_h = transfer_binary(cup_tables, ret, mode="koszul")
    cbk_h = transfer_binary(cbk_tables, ret, mode="suspension")
    counit_h = T.nullary @ ret.inclusion[0]
    return HomologyStructure(ret, ret.homology_spaces(), cup_h, cbk_h,
                             counit_h, degree_cap)


def verify_gerstenhaber(HS, max_witnesses=MAX_WITNESSES):
    """Coalgebra axioms on homology, all exact (no homotopy corrections):
    (a) cup coassociativity, (b) counitality, (c) cocommutativity,
    (d) cobracket antisymmetry, (e) coJacobi, (f) coLeibniz.

    coJacobi at source degree n expands into degree n+2; degrees at or
    above the provisional top are reported as skips, not failures."""
    H = HS.spaces
    field = H.field
    cup = HS.cup
    cbk = HS.cobracket
    cap = HS.degree_cap
    cupf = lambda m: cup[m]
    cbkf = lambda m: cbk[m]
    report = Report(suite="homology coalgebra",
                    meta={"degree_cap": cap,
                          "dims": list(HS.retraction.dims()),
                          "provisional_degree": HS.retraction.top})
    for n in range(cap + 1):
        report.add(compare_summed("homology cup coassociativity", (n,),
                                  sm_expand_first(cup[n], cupf),
                                  sm_expand_second(cup[n], cupf),
                                  max_witnesses=max_witnesses))
    for n in range(cap + 1):
        ident = H.identity_map(n)
        for side in ("left", "right"):
            total = None
            for (p, q), m in cup[n].components.items():
                if side == "left" and p == 0:
                    t = contract_functional(m, HS.counit, "left", H.space(q))
                elif side == "right" and q == 0:
                    t = contract_functional(m, HS.counit, "right",
                                            H.space(p))
                else:
                    continue
                total = t if total is None else total + t
            if total is None:
                total = LinearMap.zero(H.space(n), H.space(n), field)
            report.add(compare_maps("homology cup counitality (%s)" % side,
                                    (n,), total, ident,
                                    max_witnesses=max_witnesses))
    for n in range(cap + 1):
        report.add(compare_summed("homology cup cocommutativity", (n,),
                                  sm_post_flip("tau", cup[n]), cup[n],
                                  max_witnesses=max_witnesses))
    for n in range(cap + 1):
        report.add(compare_summed("homology cobracket antisymmetry", (n,),
                                  sm_post_flip("rho", cbk[n]),
                                  sm_scale(cbk[n], field.coerce(-1)),
                                  max_witnesses=max_witnesses))
    both = field.characteristic == 2
    for n in range(cap + 1):
        names = ["homology coJacobi (left-factored)"]
        if both:
            names.append("homology coJacobi (right-factored)")
        if n + 2 >= HS.retraction.top:
            for name in names:
                report.add(Check(name, (n,), "skip",
                                 reason="expansion touches the provisional "
                                        "top degree"))
            continue
        for name in names:
            expand = (sm_expand_first if "left" in name
                      else sm_expand_second)
            base = expand(cbk[n], cbkf)
            x1 = sm_flip23("rho", sm_flip12("rho", base))
            x2 = sm_flip23("rho", sm_flip12("rho", x1))
            total = sm_add(sm_add(base, x1), x2)
            report.add(compare_summed(name, (n,), total,
                                      SummedMap(H, n, {}),
                                      max_witnesses=max_witnesses))
    for n in range(cap + 1):
        lhs = sm_expand_second(cbk[n], cupf)
        rhs = sm_add(sm_expand_first(cup[n], cbkf),
                     sm_flip12("varrho", sm_expand_second(cup[n], cbkf)))
        report.add(compare_summed("homology coLeibniz", (n,), lhs, rhs,
                                  max_witnesses=max_witnesses))
    return report
