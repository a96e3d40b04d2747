"""Dense exact linear algebra: fraction-full Gaussian elimination.

Pivots are chosen as the first nonzero entry in each column; no floating
point is used anywhere.  Row updates skip zero multipliers and zero
entries of the pivot row, so sparse systems eliminate quickly without a
separate sparse representation.
"""

from .fields import Field, FieldMismatch, Scalar


class LinAlgError(Exception):
    pass


class SingularMatrix(LinAlgError):
    pass


class Matrix:
    """Row-major matrix of Scalars over a fixed field."""

    __slots__ = ("field", "rows", "cols", "a")

    def __init__(self, field: Field, rows_data):
        self.field = field
        self.a = [list(r) for r in rows_data]
        self.rows = len(self.a)
        self.cols = len(self.a[0]) if self.a else 0
        for r in self.a:
            if len(r) != self.cols:
                raise LinAlgError("ragged rows")

    @staticmethod
    def _raw(field: Field, rows: int, cols: int, data: list) -> "Matrix":
        m = Matrix.__new__(Matrix)
        m.field = field
        m.rows = rows
        m.cols = cols
        m.a = data
        return m

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero()
        return Matrix._raw(field, rows, cols,
                           [[z] * cols for _ in range(rows)])

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        z, o = field.zero(), field.one()
        return Matrix._raw(field, n, n,
                           [[o if i == j else z for j in range(n)]
                            for i in range(n)])

    @staticmethod
    def from_cols(field: Field, cols_data) -> "Matrix":
        if not cols_data:
            return Matrix.zeros(field, 0, 0)
        n = len(cols_data[0])
        return Matrix(field, [[col[i] for col in cols_data] for i in range(n)])

    def copy(self) -> "Matrix":
        return Matrix(self.field, [list(r) for r in self.a])

    def col(self, j: int) -> list:
        return [self.a[i][j] for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [[self.a[i][j] for i in range(self.rows)]
                                   for j in range(self.cols)])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise FieldMismatch("matrices over different fields")
        if self.cols != other.rows:
            raise LinAlgError(f"shape mismatch {self.rows}x{self.cols} @ "
                              f"{other.rows}x{other.cols}")
        z = self.field.zero()
        zc = self.field._zero_c
        # sparse row supports of the right factor, computed once
        rows_nz = [[(j, y) for j, y in enumerate(row) if y.c != zc]
                   for row in other.a]
        out = [[z] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            arow = self.a[i]
            orow = out[i]
            for k in range(self.cols):
                x = arow[k]
                if x.c == zc:
                    continue
                for j, y in rows_nz[k]:
                    orow[j] = orow[j] + x * y
        return Matrix._raw(self.field, self.rows, other.cols, out)

    def mul_vec(self, v: list) -> list:
        if len(v) != self.cols:
            raise LinAlgError("vector length mismatch")
        z = self.field.zero()
        out = []
        for i in range(self.rows):
            acc = z
            row = self.a[i]
            for j, x in enumerate(v):
                if not x.is_zero() and not row[j].is_zero():
                    acc = acc + row[j] * x
            out.append(acc)
        return out

    def __add__(self, other):
        self._same_shape(other)
        return Matrix(self.field, [[x + y for x, y in zip(r1, r2)]
                                   for r1, r2 in zip(self.a, other.a)])

    def __sub__(self, other):
        self._same_shape(other)
        return Matrix(self.field, [[x - y for x, y in zip(r1, r2)]
                                   for r1, r2 in zip(self.a, other.a)])

    def __neg__(self):
        return Matrix(self.field, [[-x for x in r] for r in self.a])

    def scale(self, c: Scalar) -> "Matrix":
        return Matrix(self.field, [[x * c for x in r] for r in self.a])

    def _same_shape(self, other):
        if self.field != other.field:
            raise FieldMismatch("matrices over different fields")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise LinAlgError("shape mismatch")

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.a for x in r)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and other.field == self.field
                and other.rows == self.rows and other.cols == self.cols
                and all(x == y for r1, r2 in zip(self.a, other.a)
                        for x, y in zip(r1, r2)))

    def __hash__(self):
        return hash((self.rows, self.cols,
                     tuple(tuple(x.c for x in r) for r in self.a)))

    def __repr__(self):
        if self.rows == 0 or self.cols == 0:
            return f"Matrix({self.rows}x{self.cols})"
        body = "; ".join(" ".join(repr(x) for x in r) for r in self.a)
        return f"[{body}]"

    # -- elimination ---------------------------------------------------------
    def rref(self):
        """Reduced row echelon form; returns (matrix, pivot column list)."""
        m = [list(r) for r in self.a]
        pivots = []
        r = 0
        for c in range(self.cols):
            pr = None
            for i in range(r, self.rows):
                if not m[i][c].is_zero():
                    pr = i
                    break
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = m[r][c].inv()
            row = m[r]
            nz = []
            for j in range(c, self.cols):
                if not row[j].is_zero():
                    row[j] = row[j] * inv
                    nz.append(j)
            for i in range(self.rows):
                if i == r:
                    continue
                f = m[i][c]
                if f.is_zero():
                    continue
                ri = m[i]
                for j in nz:
                    ri[j] = ri[j] - f * row[j]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return Matrix(self.field, m), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> list:
        """Basis of {v : A v = 0}, each vector a list of Scalars."""
        R, pivots = self.rref()
        z, o = self.field.zero(), self.field.one()
        free = [j for j in range(self.cols) if j not in pivots]
        basis = []
        for fc in free:
            v = [z] * self.cols
            v[fc] = o
            for r, pc in enumerate(pivots):
                v[pc] = -R.a[r][fc]
            basis.append(v)
        return basis

    def solve(self, b: list):
        """One solution of A x = b, or None when the system is infeasible."""
        if len(b) != self.rows:
            raise LinAlgError("rhs length mismatch")
        aug = Matrix(self.field, [row + [b[i]] for i, row in enumerate(self.a)])
        R, pivots = aug.rref()
        if self.cols in pivots:
            return None
        z = self.field.zero()
        x = [z] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = R.a[r][self.cols]
        return x

    def inv(self) -> "Matrix":
        if self.rows != self.cols:
            raise SingularMatrix("only square matrices can be inverted")
        n = self.rows
        aug = Matrix(self.field, [self.a[i] + Matrix.identity(self.field, n).a[i]
                                  for i in range(n)])
        R, pivots = aug.rref()
        if pivots != list(range(n)):
            raise SingularMatrix("matrix is singular")
        return Matrix(self.field, [R.a[i][n:] for i in range(n)])

    def det(self) -> Scalar:
        if self.rows != self.cols:
            raise LinAlgError("determinant of a non-square matrix")
        n = self.rows
        m = [list(r) for r in self.a]
        det = self.field.one()
        for c in range(n):
            pr = None
            for i in range(c, n):
                if not m[i][c].is_zero():
                    pr = i
                    break
            if pr is None:
                return self.field.zero()
            if pr != c:
                m[c], m[pr] = m[pr], m[c]
                det = -det
            piv = m[c][c]
            det = det * piv
            inv = piv.inv()
            for i in range(c + 1, n):
                f = m[i][c]
                if f.is_zero():
                    continue
                f = f * inv
                for j in range(c, n):
                    if not m[c][j].is_zero():
                        m[i][j] = m[i][j] - f * m[c][j]
        return det

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def column_space_basis(self) -> list:
        """Pivot columns of the matrix (a basis of the column space)."""
        _, pivots = self.rref()
        return [self.col(j) for j in pivots]
