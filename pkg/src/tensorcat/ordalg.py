"""Finite-dimensional associative algebras over exact fields.

Structure constants are stored sparsely.  The radical is computed from
trace data of a faithful representation: in characteristic zero the
kernel of the trace form (Dickson), in characteristic p the
Cohen-Ivanyos-Wales chain of characteristic-polynomial-coefficient
conditions, linearized through the inverse Frobenius (all supported
characteristic-p fields are finite, hence perfect).

Algebras built from morphism spaces carry their natural block
representation, which keeps characteristic polynomials small; abstract
algebras fall back to the left regular representation.
"""

from fractions import Fraction

from .fields import Field, Scalar, is_prime
from .linalg import Matrix
from .poly import Poly, factor, gcd


class OrdAlgebraError(Exception):
    pass


class UnsupportedField(OrdAlgebraError):
    pass


class NotSemisimple(OrdAlgebraError):
    pass


class SeparatingElementNotFound(OrdAlgebraError):
    """The bounded deterministic search failed; reported, never guessed."""


UNDETERMINED = "undetermined"


class OrdAlgebra:
    """Associative unital algebra by sparse structure constants.

    sc_pairs[i][j] is the list of (l, coeff) with b_i b_j = sum coeff*b_l.
    `rep` is an optional faithful block representation: a list, per basis
    element, of lists of square matrices (one per block).
    """

    def __init__(self, field: Field, dim: int, sc_pairs, unit, rep=None,
                 validate: bool = True):
        self.field = field
        self.dim = dim
        self.sc = sc_pairs
        self.unit = list(unit)
        self.rep = rep
        if validate:
            self._validate()

    @staticmethod
    def from_dense(field: Field, table, unit, rep=None, validate=True):
        """table[i][j] = dense coefficient list of b_i b_j."""
        dim = len(table)
        sc = [[[(l, c) for l, c in enumerate(row) if not c.is_zero()]
               for row in table_i] for table_i in table]
        return OrdAlgebra(field, dim, sc, unit, rep=rep, validate=validate)

    def mult_vec(self, x, y):
        """Product of two coordinate vectors."""
        z = self.field.zero()
        out = [z] * self.dim
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            for j, yj in enumerate(y):
                if yj.is_zero():
                    continue
                f = xi * yj
                for l, c in self.sc[i][j]:
                    out[l] = out[l] + f * c
        return out

    def left_mult_matrix(self, x) -> Matrix:
        """L_x with columns L_x(b_j) = x * b_j."""
        z = self.field.zero()
        cols = []
        for j in range(self.dim):
            col = [z] * self.dim
            for i, xi in enumerate(x):
                if xi.is_zero():
                    continue
                for l, c in self.sc[i][j]:
                    col[l] = col[l] + xi * c
            cols.append(col)
        return Matrix.from_cols(self.field, cols)

    def right_action_matrix(self, x) -> Matrix:
        """R_x in row-vector convention: (v x)_l = sum_j v_j (R_x)[j][l]."""
        z = self.field.zero()
        rows = []
        for j in range(self.dim):
            row = [z] * self.dim
            for i, xi in enumerate(x):
                if xi.is_zero():
                    continue
                for l, c in self.sc[j][i]:
                    row[l] = row[l] + xi * c
            rows.append(row)
        return Matrix(self.field, rows)

    def basis_vec(self, i):
        v = [self.field.zero()] * self.dim
        v[i] = self.field.one()
        return v

    def is_commutative(self) -> bool:
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if sorted(self.sc[i][j]) != sorted(self.sc[j][i]):
                    bi, bj = self.basis_vec(i), self.basis_vec(j)
                    if self.mult_vec(bi, bj) != self.mult_vec(bj, bi):
                        return False
        return True

    def _validate(self):
        for i in range(self.dim):
            bi = self.basis_vec(i)
            if self.mult_vec(self.unit, bi) != bi or \
                    self.mult_vec(bi, self.unit) != bi:
                raise OrdAlgebraError(f"unit law fails at basis element {i}")
        # associativity on the sparse structure constants
        for i in range(self.dim):
            sci = self.sc[i]
            for j in range(self.dim):
                ij = sci[j]
                for l in range(self.dim):
                    left = {}
                    for m, c in ij:
                        for t, d in self.sc[m][l]:
                            v = left.get(t)
                            left[t] = c * d if v is None else v + c * d
                    right = {}
                    for m, c in self.sc[j][l]:
                        for t, d in sci[m]:
                            v = right.get(t)
                            right[t] = c * d if v is None else v + c * d
                    for t in set(left) | set(right):
                        lv = left.get(t)
                        rv = right.get(t)
                        if lv is None:
                            if not rv.is_zero():
                                raise OrdAlgebraError(
                                    f"associativity fails at ({i},{j},{l})")
                        elif rv is None:
                            if not lv.is_zero():
                                raise OrdAlgebraError(
                                    f"associativity fails at ({i},{j},{l})")
                        elif lv != rv:
                            raise OrdAlgebraError(
                                f"associativity fails at ({i},{j},{l})")
        if self.rep is not None and len(self.rep) != self.dim:
            raise OrdAlgebraError("representation has wrong length")

    # -- representation helpers ------------------------------------------------
    def _rep_blocks_of_vec(self, x):
        """Blocks of the faithful representation evaluated at x."""
        if self.rep is None:
            return [self.left_mult_matrix(x)]
        blocks = None
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            contrib = [m.scale(xi) for m in self.rep[i]]
            if blocks is None:
                blocks = contrib
            else:
                blocks = [b + c for b, c in zip(blocks, contrib)]
        if blocks is None:
            shapes = [m.rows for m in self.rep[0]]
            blocks = [Matrix.zeros(self.field, r, r) for r in shapes]
        return blocks

    def _rep_dim(self):
        if self.rep is None:
            return self.dim
        return sum(m.rows for m in self.rep[0])

    def _nat_traces(self):
        out = []
        for i in range(self.dim):
            blocks = self._rep_blocks_of_vec(self.basis_vec(i))
            t = self.field.zero()
            for m in blocks:
                for r in range(m.rows):
                    t = t + m.a[r][r]
            out.append(t)
        return out

    def serialize(self) -> dict:
        sc = []
        for i in range(self.dim):
            for j in range(self.dim):
                for l, c in self.sc[i][j]:
                    sc.append([i, j, l, c.serialize()])
        return {"dim": self.dim,
                "sc": sc,
                "unit": [c.serialize() for c in self.unit]}

    def __repr__(self):
        return f"OrdAlgebra(dim={self.dim} over {self.field!r})"


def algebra_from_triples(field: Field, dim: int, triples, unit,
                         validate=True) -> OrdAlgebra:
    """Construct from sparse [i, j, l, scalar] entries."""
    sc = [[[] for _ in range(dim)] for _ in range(dim)]
    for i, j, l, c in triples:
        sc[i][j].append((l, field.scalar(c)))
    return OrdAlgebra(field, dim, sc, [field.scalar(c) for c in unit],
                      validate=validate)


# ---------------------------------------------------------------------------
# characteristic polynomial (Hessenberg reduction, then recurrence)

def charpoly(m: Matrix) -> list:
    """Coefficients (low to high) of det(lambda*I - m)."""
    n = m.rows
    field = m.field
    if n == 0:
        return [field.one()]
    h = [list(r) for r in m.a]
    for c in range(n - 2):
        piv = None
        for i in range(c + 1, n):
            if not h[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        if piv != c + 1:
            h[c + 1], h[piv] = h[piv], h[c + 1]
            for r in range(n):
                h[r][c + 1], h[r][piv] = h[r][piv], h[r][c + 1]
        inv = h[c + 1][c].inv()
        for i in range(c + 2, n):
            f = h[i][c]
            if f.is_zero():
                continue
            f = f * inv
            for j in range(c, n):
                if not h[c + 1][j].is_zero():
                    h[i][j] = h[i][j] - f * h[c + 1][j]
            for r in range(n):
                if not h[r][i].is_zero():
                    h[r][c + 1] = h[r][c + 1] + f * h[r][i]
    # p_m = (x - h[m-1][m-1]) p_{m-1} - sum_k h[k-1][m-1] (prod subdiag) p_{k-1}
    z, one = field.zero(), field.one()
    ps = [[one]]
    for mi in range(1, n + 1):
        d = h[mi - 1][mi - 1]
        prev = ps[mi - 1]
        cur = [z] * (len(prev) + 1)
        for k, c in enumerate(prev):
            cur[k + 1] = cur[k + 1] + c
            cur[k] = cur[k] - d * c
        run = one
        for k in range(mi - 1, 0, -1):
            run = run * h[k][k - 1]
            coeff = h[k - 1][mi - 1] * run
            if coeff.is_zero():
                continue
            for t, c in enumerate(ps[k - 1]):
                cur[t] = cur[t] - coeff * c
        ps.append(cur)
    return ps[n]


def _charpoly_of_blocks(blocks) -> list:
    field = blocks[0].field
    total = [field.one()]
    for b in blocks:
        p = charpoly(b)
        out = [field.zero()] * (len(total) + len(p) - 1)
        for i, x in enumerate(total):
            if x.is_zero():
                continue
            for j, y in enumerate(p):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        total = out
    return total


# ---------------------------------------------------------------------------
# radical

def radical(E: OrdAlgebra) -> list:
    """Basis of the Jacobson radical, as coordinate vectors."""
    if E.field.char == 0:
        return _radical_char0(E)
    return _radical_charp(E)


def _radical_char0(E: OrdAlgebra) -> list:
    tr = E._nat_traces()
    z = E.field.zero()
    gram = []
    for i in range(E.dim):
        row = [z] * E.dim
        for j in range(E.dim):
            acc = z
            for l, c in E.sc[i][j]:
                if not tr[l].is_zero():
                    acc = acc + c * tr[l]
            row[j] = acc
        gram.append(row)
    return Matrix(E.field, gram).kernel_basis()


def _frob_inverse(x: Scalar, i: int) -> Scalar:
    """p^i-th root in a finite field."""
    f = x.field
    d = f.deg
    k = (-i) % d
    return x ** (f.char ** k)


def _radical_charp(E: OrdAlgebra) -> list:
    p = E.field.char
    n_rep = E._rep_dim()
    tr = E._nat_traces()
    z = E.field.zero()
    # level 0: trace form via structure constants
    current = [E.basis_vec(i) for i in range(E.dim)]
    rows = []
    for i in range(E.dim):
        row = [z] * E.dim
        for j in range(E.dim):
            acc = z
            for l, c in E.sc[i][j]:
                acc = acc + c * tr[l]
            row[j] = acc
        rows.append(row)
    ker = Matrix(E.field, rows).kernel_basis()
    current = ker
    level = 1
    while current and p ** level <= n_rep:
        target = p ** level
        rows = []
        for y in current:
            row = []
            for x in current:
                prod = E.mult_vec(x, y)
                blocks = E._rep_blocks_of_vec(prod)
                cp = _charpoly_of_blocks(blocks)
                # coefficient of lambda^(n_rep - target)
                coeff = cp[n_rep - target]
                row.append(_frob_inverse(coeff, level))
            rows.append(row)
        ker_coords = Matrix(E.field, rows).kernel_basis()
        current = [_lin_comb(E.field, current, coords) for coords in ker_coords]
        level += 1
    return current


def _lin_comb(field, vectors, coords):
    z = field.zero()
    out = [z] * len(vectors[0])
    for v, c in zip(vectors, coords):
        if c.is_zero():
            continue
        for k, x in enumerate(v):
            if not x.is_zero():
                out[k] = out[k] + c * x
    return out


def is_semisimple(E: OrdAlgebra) -> bool:
    return not radical(E)


def nilpotency_index(E: OrdAlgebra, vectors) -> int:
    """Smallest m with (ideal spanned by vectors)^m = 0; raises if not nil."""
    span = _Rowspace(E.field, len(vectors[0]) if vectors else E.dim)
    for v in vectors:
        span.add(v)
    m = 1
    cur = [list(v) for v in vectors]
    while cur:
        nxt_span = _Rowspace(E.field, E.dim)
        for v in cur:
            for w in vectors:
                nxt_span.add(E.mult_vec(v, w))
        cur = nxt_span.basis()
        m += 1
        if m > E.dim + 1:
            raise OrdAlgebraError("ideal is not nilpotent")
    return m


class _Rowspace:
    """Incremental row space in reduced echelon form."""

    def __init__(self, field, width):
        self.field = field
        self.width = width
        self.rows = []          # (pivot, vector) sorted by pivot
        self.pivots = {}

    def reduce(self, v):
        v = list(v)
        for piv, row in self.rows:
            c = v[piv]
            if not c.is_zero():
                for k in range(piv, self.width):
                    if not row[k].is_zero():
                        v[k] = v[k] - c * row[k]
        return v

    def add(self, v) -> bool:
        """Reduce and insert; True if the space grew."""
        v = self.reduce(v)
        piv = None
        for k in range(self.width):
            if not v[k].is_zero():
                piv = k
                break
        if piv is None:
            return False
        inv = v[piv].inv()
        v = [x * inv for x in v]
        for _, row in self.rows:
            c = row[piv]
            if not c.is_zero():
                for k in range(self.width):
                    if not v[k].is_zero():
                        row[k] = row[k] - c * v[k]
        self.rows.append((piv, v))
        self.rows.sort(key=lambda pr: pr[0])
        self.pivots[piv] = True
        return True

    def contains(self, v) -> bool:
        return all(x.is_zero() for x in self.reduce(v))

    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> list:
        return [list(row) for _, row in self.rows]


# ---------------------------------------------------------------------------
# center, minimal polynomials, idempotents

def center(E: OrdAlgebra) -> list:
    """Basis of the center."""
    z = E.field.zero()
    rows = []
    for i in range(E.dim):
        # commutator with b_i, coordinate l: sum_j x_j (c_{ji}^l - c_{ij}^l)
        for l in range(E.dim):
            row = [z] * E.dim
            touched = False
            for j in range(E.dim):
                acc = z
                for ll, c in E.sc[j][i]:
                    if ll == l:
                        acc = acc + c
                for ll, c in E.sc[i][j]:
                    if ll == l:
                        acc = acc - c
                if not acc.is_zero():
                    touched = True
                row[j] = acc
            if touched:
                rows.append(row)
    if not rows:
        return [E.basis_vec(i) for i in range(E.dim)]
    return Matrix(E.field, rows).kernel_basis()


def min_poly_of_element(E: OrdAlgebra, x) -> Poly:
    """Minimal polynomial of x in the algebra."""
    field = E.field
    space = _Rowspace(field, E.dim)
    powers = [list(E.unit)]
    space.add(E.unit)
    cur = list(E.unit)
    while True:
        cur = E.mult_vec(cur, x)
        red = space.reduce(cur)
        if all(c.is_zero() for c in red):
            # cur = combination of stored powers; solve for coefficients
            mat = Matrix.from_cols(field, powers)
            sol = mat.solve(cur)
            coeffs = [-c for c in sol] + [field.one()]
            return Poly(field, coeffs)
        space.add(cur)
        powers.append(list(cur))


def _eval_poly_in_algebra(E: OrdAlgebra, pol: Poly, x):
    acc = [E.field.zero()] * E.dim
    for c in reversed(pol.coeffs):
        acc = E.mult_vec(acc, x)
        acc[0:E.dim] = [a + c * u for a, u in zip(acc, E.unit)]
    return acc


def _candidate_elements(E: OrdAlgebra, basis_vectors):
    """Deterministic ladder: basis elements, then small combinations."""
    for v in basis_vectors:
        yield v
    small = [1, -1, 2, -2, 3, -3]
    n = len(basis_vectors)
    for i in range(n):
        for j in range(i + 1, n):
            for c in small:
                cs = E.field.scalar(c)
                yield [a + cs * b for a, b in
                       zip(basis_vectors[i], basis_vectors[j])]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for c1 in small[:4]:
                    for c2 in small[:4]:
                        s1, s2 = E.field.scalar(c1), E.field.scalar(c2)
                        yield [a + s1 * b + s2 * d for a, b, d in
                               zip(basis_vectors[i], basis_vectors[j],
                                   basis_vectors[k])]


def central_idempotents(E: OrdAlgebra) -> list:
    """Central primitive idempotents of a semisimple algebra."""
    if radical(E):
        raise NotSemisimple("central idempotents require a semisimple algebra")
    zc = center(E)
    target = len(zc)
    for cand in _candidate_elements(E, zc):
        mu = min_poly_of_element(E, cand)
        if mu.degree == target:
            fac = factor(mu)
            if any(m > 1 for _, m in fac):
                raise OrdAlgebraError(
                    "separating element has non-squarefree minimal polynomial")
            return _crt_idempotents(E, cand, mu, [g for g, _ in fac])
    raise SeparatingElementNotFound(
        f"no separating central element among the bounded search "
        f"(center dimension {target})")


def _crt_idempotents(E, x, mu, factors) -> list:
    out = []
    for p in factors:
        rest = mu // p
        # invert rest mod p
        from .poly import _poly_bezout
        s, _t = _poly_bezout(rest, p)
        idem_poly = (rest * s) % mu
        e = _eval_poly_in_algebra(E, idem_poly, x)
        out.append(e)
    return out


def lift_idempotent(E: OrdAlgebra, x) -> list:
    """Newton iteration e <- 3e^2 - 2e^3 converging to an idempotent
    congruent to x modulo the nilpotent ideal where x^2 - x lives."""
    e = list(x)
    three = E.field.scalar(3)
    two = E.field.scalar(2)
    for _ in range(E.dim.bit_length() + 2):
        sq = E.mult_vec(e, e)
        if sq == e:
            return e
        cube = E.mult_vec(sq, e)
        e = [three * a - two * b for a, b in zip(sq, cube)]
    sq = E.mult_vec(e, e)
    if sq != e:
        raise OrdAlgebraError("idempotent lifting did not converge")
    return e


def subalgebra_on(E: OrdAlgebra, vectors, unit_vec, validate=False):
    """Algebra structure on a multiplicatively closed subspace.

    Returns (OrdAlgebra, embed) with embed mapping new coordinates to
    E-coordinates.
    """
    field = E.field
    mat = Matrix.from_cols(field, vectors)
    dim = len(vectors)
    sc = [[None] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            prod = E.mult_vec(vectors[i], vectors[j])
            coords = mat.solve(prod)
            if coords is None:
                raise OrdAlgebraError("subspace is not closed under product")
            sc[i][j] = [(l, c) for l, c in enumerate(coords) if not c.is_zero()]
    ucoords = mat.solve(unit_vec)
    if ucoords is None:
        raise OrdAlgebraError("unit does not lie in the subspace")
    B = OrdAlgebra(field, dim, sc, ucoords, validate=validate)

    def embed(coords):
        return _lin_comb(field, vectors, coords)

    return B, embed


def quotient_algebra(E: OrdAlgebra, ideal_vectors):
    """(E/I, project, lift) for a two-sided ideal I given by a basis."""
    field = E.field
    space = _Rowspace(field, E.dim)
    for v in ideal_vectors:
        space.add(v)
    pivots = sorted(space.pivots)
    free = [k for k in range(E.dim) if k not in space.pivots]
    if not free:
        raise OrdAlgebraError("ideal is the whole algebra")

    def project(v):
        red = space.reduce(v)
        return [red[k] for k in free]

    def lift(coords):
        z = field.zero()
        out = [z] * E.dim
        for k, c in zip(free, coords):
            out[k] = c
        return out

    dim = len(free)
    sc = [[None] * dim for _ in range(dim)]
    for i in range(dim):
        bi = lift([field.one() if t == i else field.zero() for t in range(dim)])
        for j in range(dim):
            bj = lift([field.one() if t == j else field.zero()
                       for t in range(dim)])
            coords = project(E.mult_vec(bi, bj))
            sc[i][j] = [(l, c) for l, c in enumerate(coords)
                        if not c.is_zero()]
    Ebar = OrdAlgebra(field, dim, sc, project(E.unit), validate=False)
    return Ebar, project, lift


# ---------------------------------------------------------------------------
# division test

def is_division(E: OrdAlgebra):
    """True / False / "undetermined"."""
    if E.dim == 0:
        return False
    if radical(E):
        return False
    if E.is_commutative():
        return _is_field_commutative(E)
    if E.field.char != 0:
        # Wedderburn's little theorem: finite division rings are fields
        return False
    return _is_division_char0_noncomm(E)


def _is_field_commutative(E: OrdAlgebra):
    """Field test for a commutative semisimple algebra."""
    best = 0
    for cand in _candidate_elements(E, [E.basis_vec(i) for i in range(E.dim)]):
        mu = min_poly_of_element(E, cand)
        fac = factor(mu)
        distinct = len(fac)
        if distinct > 1 or any(m > 1 for _, m in fac):
            return False          # zero divisors
        if mu.degree == E.dim:
            return True           # primitive element with irreducible minpoly
        best = max(best, mu.degree)
    return UNDETERMINED


def _min_poly_over_center(E, zc_vectors, x):
    """alpha, beta in the center with x^2 = alpha + beta*x, or None."""
    field = E.field
    x2 = E.mult_vec(x, x)
    cols = list(zc_vectors)
    cols += [E.mult_vec(z, x) for z in zc_vectors]
    mat = Matrix.from_cols(field, cols)
    sol = mat.solve(x2)
    if sol is None:
        return None
    k = len(zc_vectors)
    alpha = _lin_comb(field, zc_vectors, sol[:k])
    beta = _lin_comb(field, zc_vectors, sol[k:])
    return alpha, beta


def _is_division_char0_noncomm(E: OrdAlgebra):
    zc = center(E)
    if len(zc) != 1:
        # center must be a field; > 1 could still be a division algebra over
        # a bigger center, which the norm-form route does not cover
        return UNDETERMINED
    if E.dim != 4:
        return UNDETERMINED
    # central simple of degree 2 over Q: quaternion norm-form test
    field = E.field
    half = field.scalar(Fraction(1, 2))
    for cand in _candidate_elements(E, [E.basis_vec(i) for i in range(E.dim)]):
        mp = _min_poly_over_center(E, [E.unit], cand)
        if mp is None:
            continue
        _alpha, beta = mp
        i_el = [c - half * bv for c, bv in zip(cand, beta)]
        sq = E.mult_vec(i_el, i_el)
        coords = Matrix.from_cols(field, [E.unit]).solve(sq)
        if coords is None:
            continue
        a = coords[0]
        if a.is_zero():
            return False          # nilpotent element
        if _is_central(E, i_el):
            continue
        # anticommutant of i
        j_el = _anticommutant_element(E, i_el)
        if j_el is None:
            continue
        sqj = E.mult_vec(j_el, j_el)
        coords = Matrix.from_cols(field, [E.unit]).solve(sqj)
        if coords is None:
            continue
        b = coords[0]
        if b.is_zero():
            return False
        return not _quaternion_splits(a.c[0], b.c[0])
    return UNDETERMINED


def _is_central(E, x):
    for i in range(E.dim):
        bi = E.basis_vec(i)
        if E.mult_vec(x, bi) != E.mult_vec(bi, x):
            return False
    return True


def _anticommutant_element(E, i_el):
    """Nonzero j with i j = -j i, by linear solve."""
    field = E.field
    rows = []
    for l in range(E.dim):
        row = []
        for jx in range(E.dim):
            bi = E.basis_vec(jx)
            v = E.mult_vec(i_el, bi)
            w = E.mult_vec(bi, i_el)
            row.append(v[l] + w[l])
        rows.append(row)
    ker = Matrix(field, rows).kernel_basis()
    for v in ker:
        if any(not c.is_zero() for c in v):
            return v
    return None


def _quaternion_splits(a: Fraction, b: Fraction) -> bool:
    """Whether the rational quaternion algebra (a, b) is split, via Hilbert
    symbols at all places."""
    if a == 0 or b == 0:
        raise OrdAlgebraError("degenerate quaternion parameters")
    if _hilbert_infinity(a, b) == -1:
        return False
    primes = set(_prime_divisors(a)) | set(_prime_divisors(b)) | {2}
    for p in primes:
        if _hilbert_p(a, b, p) == -1:
            return False
    return True


def _prime_divisors(q: Fraction):
    out = set()
    for n in (abs(q.numerator), q.denominator):
        d = 2
        while d * d <= n:
            if n % d == 0:
                out.add(d)
                while n % d == 0:
                    n //= d
            d += 1
        if n > 1:
            out.add(n)
    return out


def _hilbert_infinity(a, b):
    return -1 if (a < 0 and b < 0) else 1


def _val_unit(q: Fraction, p: int):
    """(v, u) with q = p^v * u, u a p-unit (as a Fraction)."""
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, Fraction(num, den)


def _legendre_unit(u: Fraction, p: int) -> int:
    n = (u.numerator * pow(u.denominator, -1, p)) % p
    s = pow(n, (p - 1) // 2, p)
    return -1 if s == p - 1 else 1


def _hilbert_p(a: Fraction, b: Fraction, p: int) -> int:
    al, u = _val_unit(a, p)
    be, w = _val_unit(b, p)
    if p != 2:
        eps = (p - 1) // 2
        sign = (-1) ** (al * be * eps)
        res = sign * (_legendre_unit(u, p) ** be) * (_legendre_unit(w, p) ** al)
        return 1 if res == 1 else -1
    # p = 2
    def eps2(x: Fraction) -> int:
        n = (x.numerator * pow(x.denominator, -1, 8)) % 8
        return ((n - 1) // 2) % 2

    def omega2(x: Fraction) -> int:
        n = (x.numerator * pow(x.denominator, -1, 16)) % 16
        return ((n * n - 1) // 8) % 2

    expo = eps2(u) * eps2(w) + al * omega2(w) + be * omega2(u)
    return -1 if expo % 2 == 1 else 1


# ---------------------------------------------------------------------------
# modules

class OrdModule:
    """Right module over an OrdAlgebra: one action matrix per basis element,
    in row-vector convention (v . b_i = v @ action[i])."""

    def __init__(self, algebra: OrdAlgebra, dim: int, action, validate=True):
        self.algebra = algebra
        self.field = algebra.field
        self.dim = dim
        self.action = action
        if validate:
            self._validate()

    def _validate(self):
        E = self.algebra
        idm = Matrix.identity(self.field, self.dim)
        unit_m = self.act_matrix(E.unit)
        if unit_m != idm:
            raise OrdAlgebraError("module unit law fails")
        for i in range(E.dim):
            for j in range(E.dim):
                lhs = self.action[i] @ self.action[j]
                rhs = self.act_matrix(E.mult_vec(E.basis_vec(i),
                                                 E.basis_vec(j)))
                if lhs != rhs:
                    raise OrdAlgebraError(
                        f"module action is not multiplicative at ({i},{j})")

    def act_matrix(self, x) -> Matrix:
        out = Matrix.zeros(self.field, self.dim, self.dim)
        for i, c in enumerate(x):
            if c.is_zero():
                continue
            out = out + self.action[i].scale(c)
        return out

    def act_vec(self, v, x) -> list:
        m = self.act_matrix(x)
        z = self.field.zero()
        out = [z] * self.dim
        for j, vj in enumerate(v):
            if vj.is_zero():
                continue
            for k in range(self.dim):
                if not m.a[j][k].is_zero():
                    out[k] = out[k] + vj * m.a[j][k]
        return out

    def spin(self, v) -> list:
        """Basis of the submodule generated by v."""
        E = self.algebra
        space = _Rowspace(self.field, self.dim)
        space.add(v)
        frontier = [list(v)]
        while frontier:
            nxt = []
            for w in frontier:
                for i in range(E.dim):
                    u = self.act_vec(w, E.basis_vec(i))
                    if space.add(u):
                        nxt.append(u)
            frontier = nxt
        return space.basis()

    def restrict(self, sub_basis) -> "OrdModule":
        field = self.field
        mat = Matrix.from_cols(field, sub_basis).transpose()
        # rows of mat are the basis vectors
        action = []
        solver = Matrix.from_cols(field, sub_basis)
        for i in range(self.algebra.dim):
            rows = []
            for v in sub_basis:
                img = self.act_vec(v, self.algebra.basis_vec(i))
                coords = solver.solve(img)
                if coords is None:
                    raise OrdAlgebraError("subspace is not a submodule")
                rows.append(coords)
            action.append(Matrix(field, rows))
        return OrdModule(self.algebra, len(sub_basis), action, validate=False)

    def serialize(self) -> dict:
        return {"dim": self.dim,
                "action": [[[c.serialize() for c in row] for row in m.a]
                           for m in self.action]}


def module_hom_space(M: OrdModule, N: OrdModule) -> list:
    """Basis of intertwiners M -> N (as dim_M x dim_N matrices, row conv.)."""
    field = M.field
    E = M.algebra
    z = field.zero()
    nunk = M.dim * N.dim
    rows = []
    for i in range(E.dim):
        am, an = M.action[i], N.action[i]
        # constraint: am @ Phi - Phi @ an = 0
        for r in range(M.dim):
            for c in range(N.dim):
                row = [z] * nunk
                for k in range(M.dim):
                    if not am.a[r][k].is_zero():
                        row[k * N.dim + c] = row[k * N.dim + c] + am.a[r][k]
                for k in range(N.dim):
                    if not an.a[k][c].is_zero():
                        row[r * N.dim + k] = row[r * N.dim + k] - an.a[k][c]
                rows.append(row)
    if not rows:
        rows = [[z] * nunk]
    ker = Matrix(field, rows).kernel_basis()
    out = []
    for v in ker:
        out.append(Matrix(field, [[v[r * N.dim + c] for c in range(N.dim)]
                                  for r in range(M.dim)]))
    return out


def module_is_simple(E: OrdAlgebra, M: OrdModule):
    """True/False/"undetermined"; exact, no probabilistic shortcuts."""
    if M.dim == 0:
        return False
    rad = radical(E)
    for r in rad:
        if not M.act_matrix(r).is_zero():
            return False
    # cheap witness pass: spin kernel vectors of singular basis actions
    for i in range(E.dim):
        mu = _matrix_min_poly(M.action[i])
        for g, _m in factor(mu):
            if g.degree == 0:
                continue
            km = _eval_poly_at_matrix(g, M.action[i])
            for v in _left_kernel(km):
                sub = M.spin(v)
                if 0 < len(sub) < M.dim:
                    return False
    # certificate: the endomorphism algebra must be division
    end_basis = module_hom_space(M, M)
    B = _endo_algebra(M, end_basis)
    return is_division(B)


def _endo_algebra(M: OrdModule, end_basis) -> OrdAlgebra:
    field = M.field
    dimE = len(end_basis)
    flat = [ [m.a[r][c] for r in range(M.dim) for c in range(M.dim)]
             for m in end_basis]
    solver = Matrix.from_cols(field, flat)
    sc = [[None] * dimE for _ in range(dimE)]
    for i in range(dimE):
        for j in range(dimE):
            prod = end_basis[i] @ end_basis[j]
            coords = solver.solve([prod.a[r][c] for r in range(M.dim)
                                   for c in range(M.dim)])
            sc[i][j] = [(l, c) for l, c in enumerate(coords)
                        if not c.is_zero()]
    unit = solver.solve([Matrix.identity(field, M.dim).a[r][c]
                         for r in range(M.dim) for c in range(M.dim)])
    return OrdAlgebra(field, dimE, sc, unit, validate=False)


def _matrix_min_poly(m: Matrix) -> Poly:
    field = m.field
    n = m.rows
    space = _Rowspace(field, n * n)
    idm = Matrix.identity(field, n)
    powers = [idm]
    space.add([idm.a[r][c] for r in range(n) for c in range(n)])
    cur = idm
    while True:
        cur = cur @ m
        flat = [cur.a[r][c] for r in range(n) for c in range(n)]
        if space.contains(flat):
            solver = Matrix.from_cols(
                field, [[pm.a[r][c] for r in range(n) for c in range(n)]
                        for pm in powers])
            sol = solver.solve(flat)
            return Poly(field, [-c for c in sol] + [field.one()])
        space.add(flat)
        powers.append(cur)


def _eval_poly_at_matrix(pol: Poly, m: Matrix) -> Matrix:
    field = m.field
    acc = Matrix.zeros(field, m.rows, m.cols)
    for c in reversed(pol.coeffs):
        acc = acc @ m
        acc = acc + Matrix.identity(field, m.rows).scale(c)
    return acc


def _left_kernel(m: Matrix) -> list:
    """Vectors v (rows) with v @ m = 0."""
    return m.transpose().kernel_basis()


def decompose_module(E: OrdAlgebra, M: OrdModule) -> list:
    """[(simple OrdModule, multiplicity)] for a module killed by the radical."""
    if M.dim == 0:
        return []
    rad = radical(E)
    for r in rad:
        if not M.act_matrix(r).is_zero():
            raise OrdAlgebraError("module is not annihilated by the radical")
    if rad:
        Ebar, project, lift = quotient_algebra(E, rad)
        action = [M.act_matrix(lift(Ebar.basis_vec(i))) for i in
                  range(Ebar.dim)]
        Mbar = OrdModule(Ebar, M.dim, action, validate=False)
        return decompose_module(Ebar, Mbar)
    out = []
    for z in central_idempotents(E):
        pz = M.act_matrix(z)
        block_rows = _Rowspace(E.field, M.dim)
        for r in pz.a:
            block_rows.add(r)
        if block_rows.dim() == 0:
            continue
        # the block algebra and a primitive idempotent inside it
        zideal = _Rowspace(E.field, E.dim)
        for i in range(E.dim):
            zideal.add(E.mult_vec(z, E.basis_vec(i)))
        B, embed = subalgebra_on(E, zideal.basis(), z)
        e_B = primitive_idempotent(B)
        e = embed(e_B)
        pe = M.act_matrix(e)
        me_rows = _Rowspace(E.field, M.dim)
        for v in block_rows.basis():
            w = [sum_entry for sum_entry in _apply_row(v, pe)]
            me_rows.add(w)
        covered = _Rowspace(E.field, M.dim)
        count = 0
        simple = None
        for v in me_rows.basis():
            if covered.contains(v):
                continue
            sub = M.spin(v)
            if simple is None:
                simple = M.restrict(sub)
            else:
                if len(sub) * (count + 1) > block_rows.dim():
                    raise OrdAlgebraError("inconsistent isotypic split")
            for w in sub:
                covered.add(w)
            count += 1
        # exhaust: remaining vectors of the block must be covered
        if covered.dim() != block_rows.dim():
            for v in block_rows.basis():
                if covered.contains(v):
                    continue
                w = _apply_row(v, pe)
                if all(c.is_zero() for c in w):
                    continue
                if covered.contains(w):
                    continue
                sub = M.spin(w)
                for u in sub:
                    covered.add(u)
                count += 1
            if covered.dim() != block_rows.dim():
                raise OrdAlgebraError("isotypic component not exhausted")
        out.append((simple, count))
    return out


def _apply_row(v, m: Matrix):
    z = m.field.zero()
    out = [z] * m.cols
    for j, vj in enumerate(v):
        if vj.is_zero():
            continue
        for k in range(m.cols):
            if not m.a[j][k].is_zero():
                out[k] = out[k] + vj * m.a[j][k]
    return out


def primitive_idempotent(B: OrdAlgebra) -> list:
    """A primitive idempotent of a semisimple simple block."""
    if B.dim == 1:
        return list(B.unit)
    if B.is_commutative():
        verdict = _is_field_commutative(B)
        if verdict is True:
            return list(B.unit)
        if verdict is False:
            raise OrdAlgebraError("block is not simple (commutative splits)")
        raise SeparatingElementNotFound("commutative block resisted analysis")
    for cand in _candidate_elements(B, [B.basis_vec(i) for i in range(B.dim)]):
        mu = min_poly_of_element(B, cand)
        fac = factor(mu)
        if len(fac) >= 2:
            g, e1 = fac[0]
            gpart = g
            for _ in range(e1 - 1):
                gpart = gpart * g
            rest = mu // gpart
            from .poly import _poly_bezout
            s, _t = _poly_bezout(rest, gpart)
            idem_poly = (rest * s) % mu
            e = _eval_poly_in_algebra(B, idem_poly, cand)
            if e == list(B.unit) or all(c.is_zero() for c in e):
                continue
            return _primitive_in_corner(B, e)
        if len(fac) == 1 and fac[0][1] > 1:
            nil = _eval_poly_in_algebra(B, fac[0][0], cand)
            if any(not c.is_zero() for c in nil):
                e = _idempotent_from_nilpotent(B, nil)
                if e is not None:
                    return _primitive_in_corner(B, e)
    verdict = is_division(B)
    if verdict is True:
        return list(B.unit)
    raise SeparatingElementNotFound(
        "bounded search found no splitting of the block")


def _primitive_in_corner(B: OrdAlgebra, e) -> list:
    corner = _Rowspace(B.field, B.dim)
    for i in range(B.dim):
        corner.add(B.mult_vec(e, B.mult_vec(B.basis_vec(i), e)))
    Bc, embed = subalgebra_on(B, corner.basis(), e)
    inner = primitive_idempotent(Bc)
    return embed(inner)


def _idempotent_from_nilpotent(B: OrdAlgebra, z):
    """Right identity of the proper left ideal B z, if it exists."""
    field = B.field
    ideal = _Rowspace(field, B.dim)
    for i in range(B.dim):
        ideal.add(B.mult_vec(B.basis_vec(i), z))
    basis = ideal.basis()
    if not basis or ideal.dim() == B.dim:
        return None
    # e = sum c_v v in the ideal with x e = x for every basis x
    rows_mat = []
    rhs = []
    for x in basis:
        prods = [B.mult_vec(x, v) for v in basis]
        for l in range(B.dim):
            rows_mat.append([prods[k][l] for k in range(len(basis))])
            rhs.append(x[l])
    sol = Matrix(field, rows_mat).solve(rhs)
    if sol is None:
        return None
    return _lin_comb(field, basis, sol)


# ---------------------------------------------------------------------------
# separability of ordinary algebras

def is_separable_over_k(E: OrdAlgebra) -> bool:
    """Linear feasibility of a bimodule section of the multiplication."""
    field = E.field
    n = E.dim
    z = field.zero()
    nunk = n * n * n            # phi(b_l) = sum phi[l][i][j] b_i (x) b_j
    def unk(l, i, j):
        return (l * n + i) * n + j
    rows, rhs = [], []
    # m(phi(b_l)) = b_l
    for l in range(n):
        for t in range(n):
            row = [z] * nunk
            for i in range(n):
                for j in range(n):
                    for tt, c in E.sc[i][j]:
                        if tt == t:
                            row[unk(l, i, j)] = row[unk(l, i, j)] + c
            rows.append(row)
            rhs.append(field.one() if t == l else z)
    # left linearity: phi(b_a b_l) = b_a phi(b_l)
    for a in range(n):
        for l in range(n):
            for i2 in range(n):
                for j in range(n):
                    row = [z] * nunk
                    for m, c in E.sc[a][l]:
                        row[unk(m, i2, j)] = row[unk(m, i2, j)] + c
                    for i in range(n):
                        for tt, c in E.sc[a][i]:
                            if tt == i2:
                                row[unk(l, i, j)] = row[unk(l, i, j)] - c
                    rows.append(row)
                    rhs.append(z)
    # right linearity: phi(b_l b_a) = phi(b_l) b_a
    for a in range(n):
        for l in range(n):
            for i in range(n):
                for j2 in range(n):
                    row = [z] * nunk
                    for m, c in E.sc[l][a]:
                        row[unk(m, i, j2)] = row[unk(m, i, j2)] + c
                    for j in range(n):
                        for tt, c in E.sc[j][a]:
                            if tt == j2:
                                row[unk(l, i, j)] = row[unk(l, i, j)] - c
                    rows.append(row)
                    rhs.append(z)
    return Matrix(field, rows).solve(rhs) is not None


def is_separable_field_ext(f: Poly) -> bool:
    from .poly import is_separable_irreducible
    return is_separable_irreducible(f)
