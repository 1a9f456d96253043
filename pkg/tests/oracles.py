"""Independent oracles for the test suite.

Everything here recomputes expected values straight from raw structure
constants with its own arithmetic, word indexing, and elimination (plain
dicts, Fractions, ints mod p), so agreement with the package is a real
cross-check rather than the same code run twice.
"""

from fractions import Fraction
from itertools import product


def norm(x, p):
    return x % p if p else Fraction(x)


def invert(x, p):
    if p:
        return pow(x, p - 2, p)
    return Fraction(1) / Fraction(x)


def words(dim, length):
    return list(product(range(dim), repeat=length))


def word_index(word, dim):
    idx = 0
    for t in word:
        idx = idx * dim + t
    return idx


def vec_add(acc, key, c, p):
    w = norm(acc.get(key, 0) + c, p)
    if w:
        acc[key] = w
    else:
        acc.pop(key, None)


def sparse_rank(cols, p):
    """Rank of a matrix given as an iterable of {row: coeff} columns."""
    ech = {}
    rank = 0
    for col in cols:
        v = {}
        for r, c in col.items():
            c = norm(c, p)
            if c:
                v[r] = c
        while v:
            r = min(v)
            b = ech.get(r)
            if b is None:
                inv = invert(v[r], p)
                ech[r] = {k: norm(val * inv, p) for k, val in v.items()}
                rank += 1
                break
            coef = v.pop(r)
            for k, w in b.items():
                if k == r:
                    continue
                val = norm(v.get(k, 0) - coef * w, p)
                if val:
                    v[k] = val
                else:
                    v.pop(k, None)
    return rank


def solve(mat, rhs, p):
    """x with mat . x = rhs, for an exact square system (lists of lists)."""
    n = len(mat)
    a = [[norm(mat[i][j], p) for j in range(n)] + [norm(rhs[i], p)]
         for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col])
        a[col], a[piv] = a[piv], a[col]
        inv = invert(a[col][col], p)
        a[col] = [norm(x * inv, p) for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                c = a[i][col]
                a[i] = [norm(x - c * y, p) for x, y in zip(a[i], a[col])]
    return [a[i][n] for i in range(n)]


# ----------------------------------------------------------------------
# Bialgebra chain complex: the standard differential and the
# split-everywhere coproduct on words.

def hopf_differential_columns(P, n):
    """Columns of d: B^(x)n -> B^(x)(n-1): counit eats the first letter,
    adjacent letters multiply with alternating signs, the signed counit
    eats the last letter."""
    p = P.field.characteristic
    dim = P.dim
    cols = []
    for w in words(dim, n):
        col = {}
        c0 = P.counit.get(w[0], 0)
        if c0:
            vec_add(col, word_index(w[1:], dim), c0, p)
        for i in range(1, n):
            sign = -1 if i % 2 else 1
            for k, ck in P.mult.get((w[i - 1], w[i]), {}).items():
                nw = w[:i - 1] + (k,) + w[i + 1:]
                vec_add(col, word_index(nw, dim), sign * ck, p)
        cn = P.counit.get(w[-1], 0)
        if cn:
            sign = -1 if n % 2 else 1
            vec_add(col, word_index(w[:-1], dim), sign * cn, p)
        cols.append(col)
    return cols


def deconcatenation_cup_entries(P, n):
    """(p, q) -> {(row, col): coeff} on B^(x)n: every split position of
    every word, letters passing through unchanged; the empty side is the
    one-dimensional degree-0 space."""
    dim = P.dim
    comps = {}
    for col, w in enumerate(words(dim, n)):
        for j in range(n + 1):
            rdim = dim ** (n - j)
            row = word_index(w[:j], dim) * rdim + word_index(w[j:], dim)
            comps.setdefault((j, n - j), {})[(row, col)] = 1
    return comps


# ----------------------------------------------------------------------
# Frobenius Hochschild complex: dual basis and twist from the Gram matrix
# alone, the twisted differential, and the dual-basis coproduct.

def frobenius_gram(P):
    """G[i][j] = functional(e_i e_j)."""
    p = P.field.characteristic
    g = [[0] * P.dim for _ in range(P.dim)]
    for i in range(P.dim):
        for j in range(P.dim):
            val = 0
            for k, ck in P.mult.get((i, j), {}).items():
                f = P.functional.get(k, 0)
                if f:
                    val = norm(val + ck * f, p)
            g[i][j] = val
    return g


def frobenius_dual_basis(P):
    """e^j with functional(e^j e_i) = delta_ji."""
    p = P.field.characteristic
    g = frobenius_gram(P)
    dim = P.dim
    mat = [[g[m][i] for m in range(dim)] for i in range(dim)]
    dual = []
    for j in range(dim):
        rhs = [1 if i == j else 0 for i in range(dim)]
        dual.append({m: c for m, c in enumerate(solve(mat, rhs, p)) if c})
    return dual


def frobenius_twist(P):
    """sigma(e_t) with functional(a b) = functional(sigma(b) a)."""
    p = P.field.characteristic
    g = frobenius_gram(P)
    dim = P.dim
    mat = [[g[j][i] for j in range(dim)] for i in range(dim)]
    out = []
    for t in range(dim):
        rhs = [g[i][t] for i in range(dim)]
        out.append({m: c for m, c in enumerate(solve(mat, rhs, p)) if c})
    return out


def hochschild_differential_columns(P, n):
    """Columns of the twisted differential A^(x)(n+1) -> A^(x)n: adjacent
    products with alternating signs; the last face twists the last letter
    and multiplies it onto the front."""
    p = P.field.characteristic
    dim = P.dim
    twist = frobenius_twist(P)
    cols = []
    for w in words(dim, n + 1):
        col = {}
        for i in range(n):
            sign = -1 if i % 2 else 1
            for k, ck in P.mult.get((w[i], w[i + 1]), {}).items():
                nw = w[:i] + (k,) + w[i + 2:]
                vec_add(col, word_index(nw, dim), sign * ck, p)
        sign = -1 if n % 2 else 1
        for s, cs in twist[w[-1]].items():
            for k, ck in P.mult.get((s, w[0]), {}).items():
                vec_add(col, word_index((k,) + w[1:-1], dim),
                        sign * cs * ck, p)
        cols.append(col)
    return cols


def frobenius_cup_entries(P, n):
    """(p, q) -> {(row, col): coeff} on A^(x)(n+1): over every split
    position the first letter expands through the dual basis, the left
    word led by the dual leg and the right word by the product leg."""
    p = P.field.characteristic
    dim = P.dim
    dual = frobenius_dual_basis(P)
    comps = {}
    for col, w in enumerate(words(dim, n + 1)):
        a0, rest = w[0], w[1:]
        for j in range(1, n + 2):
            store = comps.setdefault((j - 1, n + 1 - j), {})
            rdim = dim ** (n + 2 - j)
            for k in range(dim):
                prod = P.mult.get((a0, k), {})
                if not prod:
                    continue
                for s, cs in dual[k].items():
                    lidx = word_index((s,) + rest[:j - 1], dim)
                    for m, cm in prod.items():
                        row = lidx * rdim + word_index((m,) + rest[j - 1:],
                                                       dim)
                        vec_add(store, (row, col), cs * cm, p)
    return comps


# ----------------------------------------------------------------------
# Homology dimensions from the oracle differentials and the oracle rank.

def homology_dims(P, top):
    """dim H_n for 0 <= n <= top, as dim C(n) - rank d_n - rank d_(n+1)."""
    p = P.field.characteristic
    if P.kind == "bialgebra":
        dim_at = lambda n: P.dim ** n
        d_cols = hopf_differential_columns
    else:
        dim_at = lambda n: P.dim ** (n + 1)
        d_cols = hochschild_differential_columns
    ranks = [0] + [sparse_rank(d_cols(P, n), p) for n in range(1, top + 2)]
    return tuple(dim_at(n) - ranks[n] - ranks[n + 1] for n in range(top + 1))
