"""Exact scalars, based spaces, sparse linear maps, signed flips.

Everything downstream computes in this substrate.  Arithmetic is exact:
Fraction over the rationals, least non-negative residues over F_p.  Map
equality is literal equality of canonical sparse forms; tolerance is zero
everywhere.

Conventions, fixed once:
  - basis of A(x)B is row-major: index(a,b) = a*dim(B) + b, labels joined
    with the tensor glyph;
  - matrices act on column vectors, (f @ g) applies g first;
  - flip signs use the degrees attached by the caller (the arity of the
    tensor legs), never anything cached.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

TENSOR = "⊗"  # the glyph joining basis labels of tensor factors


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: rationals or a prime field F_p.

    Scalars are plain Fraction (kind "rationals") or int in range(p)
    (kind "prime_field"); coerce() produces the canonical form.
    """

    kind: str
    characteristic: int

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise ValueError("rationals have characteristic 0")
        elif self.kind == "prime_field":
            if not _is_prime(self.characteristic):
                raise ValueError(
                    "prime_field characteristic must be prime, got %r"
                    % (self.characteristic,))
        else:
            raise ValueError("unknown field kind %r" % (self.kind,))

    @classmethod
    def rationals(cls):
        return cls("rationals", 0)

    @classmethod
    def prime_field(cls, p):
        return cls("prime_field", p)

    @property
    def zero(self):
        return 0 if self.characteristic else Fraction(0)

    @property
    def one(self):
        return 1 if self.characteristic else Fraction(1)

    def coerce(self, x):
        """Canonical scalar from int, Fraction, or a string like "-3/7"."""
        p = self.characteristic
        if isinstance(x, str):
            x = Fraction(x)
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise ValueError("%s has no image in F_%d" % (x, p))
            return x.numerator * pow(den, -1, p) % p
        return int(x) % p

    def add(self, a, b):
        p = self.characteristic
        return (a + b) % p if p else a + b

    def sub(self, a, b):
        p = self.characteristic
        return (a - b) % p if p else a - b

    def mul(self, a, b):
        p = self.characteristic
        return (a * b) % p if p else a * b

    def neg(self, a):
        p = self.characteristic
        return (-a) % p if p else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverting zero")
        p = self.characteristic
        return pow(a, -1, p) if p else 1 / a

    def sign(self, exponent):
        """(-1)**exponent as a canonical scalar."""
        if exponent % 2 == 0:
            return self.one
        return self.neg(self.one)

    def to_str(self, a):
        return str(a)


# A FieldElement is a Fraction (rationals) or an int in range(p); both are
# canonical-by-construction once they passed through FieldSpec.coerce.
FieldElement = Fraction | int


class BasedSpace(object):
    """Finite-dimensional space with an ordered, unique basis of labels."""

    __slots__ = ("labels", "dim", "name", "_hash")

    def __init__(self, labels, name=""):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be unique")
        self.labels = labels
        self.dim = len(labels)
        self.name = name
        self._hash = hash(labels)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, BasedSpace):
            return NotImplemented
        return self._hash == other._hash and self.labels == other.labels

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "<space %s dim=%d>" % (self.name or "?", self.dim)


_SCALAR_SPACE = BasedSpace(("1",), name="k")


def scalar_space():
    """The 1-dimensional coefficient line; codomain of functionals."""
    return _SCALAR_SPACE


def tensor_space(a, b, name=""):
    """A(x)B with row-major basis order (A major)."""
    labels = tuple("%s%s%s" % (la, TENSOR, lb) for la in a.labels
                   for lb in b.labels)
    return BasedSpace(labels, name=name or ("%s%s%s" % (a.name, TENSOR, b.name)
                                            if a.name and b.name else ""))


@dataclass(frozen=True)
class GradedTensorFactor:
    """A tensor leg together with the degree its flip signs use.

    The degree is the arity n of the C(n) the leg lives in; it is the only
    grading entering sign computations.
    """

    degree: int
    space: BasedSpace


class LinearMap(object):
    """Sparse matrix between based spaces.

    Storage is column-major: cols[c][r] = coefficient, zeros never stored.
    Canonical form is unique per map, so == is exact equality of maps.
    """

    __slots__ = ("domain", "codomain", "field", "cols")

    def __init__(self, domain, codomain, field, cols=None, _checked=False):
        self.domain = domain
        self.codomain = codomain
        self.field = field
        self.cols = {} if cols is None else cols
        if not _checked:
            for c, col in self.cols.items():
                if not 0 <= c < domain.dim:
                    raise ValueError("column %r out of range" % (c,))
                for r in col:
                    if not 0 <= r < codomain.dim:
                        raise ValueError("row %r out of range" % (r,))

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, domain, codomain, field):
        return cls(domain, codomain, field, {}, _checked=True)

    @classmethod
    def identity(cls, space, field):
        one = field.one
        cols = {i: {i: one} for i in range(space.dim)}
        return cls(space, space, field, cols, _checked=True)

    @classmethod
    def from_entries(cls, domain, codomain, field, entries):
        """entries: iterable of (row, col, value); values get coerced."""
        cols = {}
        for r, c, v in entries:
            v = field.coerce(v)
            if not v:
                continue
            col = cols.setdefault(c, {})
            w = field.add(col.get(r, field.zero), v)
            if w:
                col[r] = w
            else:
                col.pop(r, None)
        cols = {c: col for c, col in cols.items() if col}
        return cls(domain, codomain, field, cols)

    @classmethod
    def functional(cls, space, field, values):
        """Row functional space -> k; values indexed by basis position."""
        entries = ((0, c, v) for c, v in enumerate(values))
        return cls.from_entries(space, scalar_space(), field, entries)

    # -- basic queries -----------------------------------------------

    def entry(self, r, c):
        return self.cols.get(c, {}).get(r, self.field.zero)

    def column(self, c):
        return dict(self.cols.get(c, {}))

    def is_zero(self):
        return not self.cols

    @property
    def nnz(self):
        return sum(len(col) for col in self.cols.values())

    def entries(self):
        """Sorted coordinate list (row, col, value); the canonical order."""
        out = []
        for c in sorted(self.cols):
            col = self.cols[c]
            for r in sorted(col):
                out.append((r, c, col[r]))
        return out

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.domain == other.domain
                and self.codomain == other.codomain
                and self.cols == other.cols)

    def __repr__(self):
        return "<map %d x %d, nnz=%d>" % (self.codomain.dim, self.domain.dim,
                                          self.nnz)

    # -- arithmetic --------------------------------------------------

    def _shape_check(self, other):
        if self.domain != other.domain or self.codomain != other.codomain:
            raise ValueError("shape mismatch: %r vs %r" % (self, other))

    def __add__(self, other):
        self._shape_check(other)
        p = self.field.characteristic
        cols = {c: dict(col) for c, col in self.cols.items()}
        for c, col in other.cols.items():
            acc = cols.setdefault(c, {})
            for r, v in col.items():
                w = acc.get(r)
                w = v if w is None else ((w + v) % p if p else w + v)
                if w:
                    acc[r] = w
                else:
                    del acc[r]
            if not acc:
                del cols[c]
        return LinearMap(self.domain, self.codomain, self.field, cols,
                         _checked=True)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(self.field.sign(1))

    def scale(self, scalar):
        if not scalar:
            return LinearMap.zero(self.domain, self.codomain, self.field)
        p = self.field.characteristic
        if p:
            cols = {c: {r: (v * scalar) % p for r, v in col.items()}
                    for c, col in self.cols.items()}
        else:
            cols = {c: {r: v * scalar for r, v in col.items()}
                    for c, col in self.cols.items()}
        return LinearMap(self.domain, self.codomain, self.field, cols,
                         _checked=True)

    def __matmul__(self, other):
        """self after other: (self @ other)(x) = self(other(x))."""
        if not isinstance(other, LinearMap):
            return NotImplemented
        if self.domain != other.codomain:
            raise ValueError("composition shape mismatch: domain %r vs "
                             "codomain %r" % (self.domain, other.codomain))
        p = self.field.characteristic
        scols = self.cols
        out = {}
        for c, mid in other.cols.items():
            acc = {}
            for m, v in mid.items():
                col = scols.get(m)
                if not col:
                    continue
                if p:
                    for r, w in col.items():
                        acc[r] = (acc.get(r, 0) + w * v) % p
                else:
                    for r, w in col.items():
                        x = acc.get(r)
                        acc[r] = w * v if x is None else x + w * v
            acc = {r: v for r, v in acc.items() if v}
            if acc:
                out[c] = acc
        return LinearMap(other.domain, self.codomain, self.field, out,
                         _checked=True)

    def apply(self, vec):
        """Apply to a sparse column vector {index: scalar}."""
        p = self.field.characteristic
        acc = {}
        for c, v in vec.items():
            col = self.cols.get(c)
            if not col:
                continue
            if p:
                for r, w in col.items():
                    acc[r] = (acc.get(r, 0) + w * v) % p
            else:
                for r, w in col.items():
                    x = acc.get(r)
                    acc[r] = w * v if x is None else x + w * v
        return {r: v for r, v in acc.items() if v}


def tensor_map(f, g, domain=None, codomain=None):
    """Kronecker product f(x)g, (domain of f) major, (domain of g) minor.

    Pass domain/codomain to reuse interned tensor spaces; they must match
    the row-major convention.
    """
    if f.field != g.field:
        raise ValueError("mixed fields in tensor_map")
    field = f.field
    p = field.characteristic
    if domain is None:
        domain = tensor_space(f.domain, g.domain)
    if codomain is None:
        codomain = tensor_space(f.codomain, g.codomain)
    gdd = g.domain.dim
    gcd = g.codomain.dim
    out = {}
    for cf, colf in f.cols.items():
        base_c = cf * gdd
        for cg, colg in g.cols.items():
            col = {}
            for rf, vf in colf.items():
                base_r = rf * gcd
                if p:
                    for rg, vg in colg.items():
                        col[base_r + rg] = (vf * vg) % p
                else:
                    for rg, vg in colg.items():
                        col[base_r + rg] = vf * vg
            out[base_c + cg] = col
    return LinearMap(domain, codomain, field, out, _checked=True)


FLIP_KINDS = ("sigma", "tau", "rho", "varrho")


def flip_exponent(kind, deg_a, deg_b):
    if kind == "sigma":
        return 0
    if kind == "tau":
        return deg_a * deg_b
    if kind == "rho":
        return (deg_a - 1) * (deg_b - 1)
    if kind == "varrho":
        return deg_a * (deg_b - 1)
    raise ValueError("unknown flip kind %r" % (kind,))


def flip(kind, deg_a, deg_b, a_space, b_space, field,
         domain=None, codomain=None):
    """Signed swap A(x)B -> B(x)A; sign from the degrees, not the spaces."""
    s = field.sign(flip_exponent(kind, deg_a, deg_b))
    if domain is None:
        domain = tensor_space(a_space, b_space)
    if codomain is None:
        codomain = tensor_space(b_space, a_space)
    an, bn = a_space.dim, b_space.dim
    cols = {}
    for a in range(an):
        base = a * bn
        for b in range(bn):
            cols[base + b] = {b * an + a: s}
    return LinearMap(domain, codomain, field, cols, _checked=True)


def koszul_extend(d, side, partner_degree, partner_space, degree=None):
    """Tensor-extend a degree -1 family d.

    side="left" gives d(x)id; side="right" gives (-1)**partner_degree
    (id(x)d), so summing both sides yields the tensor-complex differential.
    d may be a single LinearMap or a mapping degree -> LinearMap (then
    `degree` selects the piece).
    """
    dmap = d[degree] if isinstance(d, dict) else d
    ident = LinearMap.identity(partner_space, dmap.field)
    if side == "left":
        return tensor_map(dmap, ident)
    if side == "right":
        m = tensor_map(ident, dmap)
        if partner_degree % 2:
            m = -m
        return m
    raise ValueError("side must be 'left' or 'right', got %r" % (side,))


def contract_functional(m, phi, side, out_space):
    """(phi(x)id) o m  (side="left")  or  (id(x)phi) o m  (side="right").

    m maps X -> A(x)B; phi is a functional on the contracted factor; the
    1-dim coefficient line is dropped, giving X -> out_space.
    """
    field = m.field
    p = field.characteristic
    phi_vals = {}
    for c, col in phi.cols.items():
        v = col.get(0)
        if v:
            phi_vals[c] = v
    pdim = phi.domain.dim
    if m.codomain.dim % pdim != 0:
        raise ValueError("functional domain does not divide codomain")
    other = m.codomain.dim // pdim
    if out_space.dim != other:
        raise ValueError("out_space dimension mismatch")
    out = {}
    for c, col in m.cols.items():
        acc = {}
        for r, v in col.items():
            if side == "left":
                a, b = divmod(r, other)
            else:
                b, a = divmod(r, pdim)
            w = phi_vals.get(a)
            if not w:
                continue
            if p:
                acc[b] = (acc.get(b, 0) + w * v) % p
            else:
                x = acc.get(b)
                acc[b] = w * v if x is None else x + w * v
        acc = {r: v for r, v in acc.items() if v}
        if acc:
            out[c] = acc
    return LinearMap(m.domain, out_space, field, out, _checked=True)


# ----------------------------------------------------------------------
# Exact Gaussian elimination.
#
# Column reduction with a recorded transformation: columns are scanned in
# increasing index; a reduced nonzero column becomes a pivot at its lowest
# nonzero row.  Pivot columns are kept mutually reduced (each is zero at
# every other pivot row), so reductions against them extract coefficients
# in a single leading-driven pass.

def _axpy(y, x, a, p):
    """y += a*x on sparse dicts, dropping zeros."""
    if p:
        for r, v in x.items():
            w = (y.get(r, 0) + a * v) % p
            if w:
                y[r] = w
            else:
                y.pop(r, None)
    else:
        for r, v in x.items():
            w = y.get(r)
            w = a * v if w is None else w + a * v
            if w:
                y[r] = w
            else:
                y.pop(r, None)


def _scale_vec(v, a, p):
    if p:
        return {r: (w * a) % p for r, w in v.items()}
    return {r: w * a for r, w in v.items()}


@dataclass
class RankData:
    """Result of rank_decomposition.

    image_basis[k] is an echelon basis vector of the column space with
    image_preimages[k] a vector mapping onto it; kernel_basis spans ker f.
    All bases are echelonized with deterministic pivots.
    """

    rank: int
    pivot_columns: list
    image_basis: list
    image_preimages: list
    kernel_basis: list


class Echelon(object):
    """Mutually reduced echelon family keyed by leading index.

    Vectors have leading coefficient 1 and are zero at every other
    member's leading index.  Payloads receive the same linear combinations
    (used to carry preimages alongside image vectors).
    """

    def __init__(self, field):
        self.field = field
        self.vectors = {}
        self.payloads = {}

    def __len__(self):
        return len(self.vectors)

    def leads(self):
        return sorted(self.vectors)

    def reduce(self, v, payload=None):
        """Return (coeffs, remainder[, payload_remainder]).

        coeffs maps leading index -> coefficient such that
        v = sum coeffs[r] * vector[r] + remainder and the remainder is zero
        at every stored leading index.
        """
        p = self.field.characteristic
        v = dict(v)
        pay = dict(payload) if payload is not None else None
        coeffs = {}
        while v:
            r = min(v)
            b = self.vectors.get(r)
            if b is None:
                break
            c = v[r]
            coeffs[r] = self.field.add(coeffs.get(r, self.field.zero), c)
            _axpy(v, b, self.field.neg(c), p)
            if pay is not None:
                _axpy(pay, self.payloads[r], self.field.neg(c), p)
        if v:
            # leading entry is not a stored lead; clear any later leads
            for r in self.leads():
                c = v.get(r)
                if c:
                    coeffs[r] = self.field.add(coeffs.get(r, self.field.zero),
                                               c)
                    _axpy(v, self.vectors[r], self.field.neg(c), p)
                    if pay is not None:
                        _axpy(pay, self.payloads[r], self.field.neg(c), p)
        if payload is None:
            return coeffs, v
        return coeffs, v, pay

    def insert(self, v, payload=None):
        """Reduce v and adopt the remainder if independent.

        Returns the new leading index, or None when v was in the span.
        """
        p = self.field.characteristic
        if payload is None:
            _, rem = self.reduce(v)
            payrem = {}
        else:
            _, rem, payrem = self.reduce(v, payload)
        if not rem:
            return None
        r0 = min(rem)
        inv = self.field.inv(rem[r0])
        if inv != self.field.one:
            rem = _scale_vec(rem, inv, p)
            payrem = _scale_vec(payrem, inv, p)
        # back-clean the new leading index from existing members
        for r, b in self.vectors.items():
            c = b.get(r0)
            if c:
                _axpy(b, rem, self.field.neg(c), p)
                _axpy(self.payloads[r], payrem, self.field.neg(c), p)
        self.vectors[r0] = rem
        self.payloads[r0] = payrem
        return r0


def _rank_sparse(f):
    field = f.field
    p = field.characteristic
    one = field.one
    ncols = f.domain.dim
    cols = {c: dict(col) for c, col in f.cols.items()}
    tcols = {c: {c: one} for c in range(ncols)}
    pivots = {}          # pivot row -> column index
    pivot_order = []     # column indices in scan order
    kernel_cols = []
    for c in range(ncols):
        col = cols.get(c, {})
        tcol = tcols[c]
        while col:
            r = min(col)
            pc = pivots.get(r)
            if pc is None:
                break
            coef = col[r]
            _axpy(col, cols[pc], field.neg(coef), p)
            _axpy(tcol, tcols[pc], field.neg(coef), p)
        if col:
            r = min(col)
            inv = field.inv(col[r])
            if inv != one:
                cols[c] = col = _scale_vec(col, inv, p)
                tcols[c] = tcol = _scale_vec(tcol, inv, p)
            for pc in pivot_order:
                v = cols[pc].get(r)
                if v:
                    _axpy(cols[pc], col, field.neg(v), p)
                    _axpy(tcols[pc], tcol, field.neg(v), p)
            pivots[r] = c
            pivot_order.append(c)
        else:
            kernel_cols.append(c)
    by_row = sorted(pivots.items())
    image_basis = [dict(cols[c]) for _, c in by_row]
    image_preimages = [dict(tcols[c]) for _, c in by_row]
    kernel = Echelon(field)
    for c in kernel_cols:
        kernel.insert(tcols[c])
    kernel_basis = [kernel.vectors[r] for r in kernel.leads()]
    return RankData(rank=len(pivot_order),
                    pivot_columns=pivot_order,
                    image_basis=image_basis,
                    image_preimages=image_preimages,
                    kernel_basis=kernel_basis)


def _rank_dense(f):
    """Same reduction on dense columns; used below the 64x64 cutoff."""
    field = f.field
    p = field.characteristic
    zero, one = field.zero, field.one
    nrows = f.codomain.dim
    ncols = f.domain.dim
    cols = []
    tcols = []
    for c in range(ncols):
        col = [zero] * nrows
        for r, v in f.cols.get(c, {}).items():
            col[r] = v
        t = [zero] * ncols
        t[c] = one
        cols.append(col)
        tcols.append(t)

    def axpy_dense(y, x, a):
        if p:
            for i, xv in enumerate(x):
                if xv:
                    y[i] = (y[i] + a * xv) % p
        else:
            for i, xv in enumerate(x):
                if xv:
                    y[i] = y[i] + a * xv

    def leading(col):
        for i, v in enumerate(col):
            if v:
                return i
        return None

    pivots = {}
    pivot_order = []
    kernel_cols = []
    for c in range(ncols):
        col, tcol = cols[c], tcols[c]
        while True:
            r = leading(col)
            if r is None or r not in pivots:
                break
            coef = col[r]
            pc = pivots[r]
            axpy_dense(col, cols[pc], field.neg(coef))
            axpy_dense(tcol, tcols[pc], field.neg(coef))
        r = leading(col)
        if r is not None:
            inv = field.inv(col[r])
            if inv != one:
                if p:
                    cols[c] = col = [(v * inv) % p for v in col]
                    tcols[c] = tcol = [(v * inv) % p for v in tcol]
                else:
                    cols[c] = col = [v * inv for v in col]
                    tcols[c] = tcol = [v * inv for v in tcol]
            for pc in pivot_order:
                v = cols[pc][r]
                if v:
                    axpy_dense(cols[pc], col, field.neg(v))
                    axpy_dense(tcols[pc], tcol, field.neg(v))
            pivots[r] = c
            pivot_order.append(c)
        else:
            kernel_cols.append(c)

    def sparsify(col):
        return {i: v for i, v in enumerate(col) if v}

    by_row = sorted(pivots.items())
    image_basis = [sparsify(cols[c]) for _, c in by_row]
    image_preimages = [sparsify(tcols[c]) for _, c in by_row]
    kernel = Echelon(field)
    for c in kernel_cols:
        kernel.insert(sparsify(tcols[c]))
    kernel_basis = [kernel.vectors[r] for r in kernel.leads()]
    return RankData(rank=len(pivot_order),
                    pivot_columns=pivot_order,
                    image_basis=image_basis,
                    image_preimages=image_preimages,
                    kernel_basis=kernel_basis)


def rank_decomposition(f):
    """Exact rank/kernel/image data with deterministic pivoting.

    Columns are scanned in increasing index; each pivot sits at the lowest
    nonzero row of its reduced column.  Dense elimination below the 64x64
    cutoff, sparse above; both produce identical output.
    """
    if f.domain.dim < 64 and f.codomain.dim < 64:
        return _rank_dense(f)
    return _rank_sparse(f)


def format_scalar(field, v):
    return field.to_str(v)


def format_vector(space, vec, field, max_terms=6):
    """Human-readable linear combination for witnesses."""
    if not vec:
        return "0"
    items = sorted(vec.items())
    shown = items[:max_terms]
    parts = []
    for r, v in shown:
        label = space.labels[r] if r < space.dim else "?%d" % r
        if v == field.one:
            parts.append(label)
        else:
            parts.append("(%s)%s" % (format_scalar(field, v), label))
    txt = " + ".join(parts)
    if len(items) > max_terms:
        txt += " + [%d more]" % (len(items) - max_terms)
    return txt
