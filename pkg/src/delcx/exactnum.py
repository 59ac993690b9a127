"""Exact scalars and linear algebra over QQ and the Gaussian rationals QQ(i).

Everything here is exact: scalars are GMP rationals (gmpy2.mpq) or pairs of
them (Gaussian rationals), and all eliminations use exact pivoting on the
first nonzero entry in column order, so every basis is deterministic and
reproducible.  Subspace bases are kept in reduced row echelon form, which
makes membership tests and coordinate extraction linear-time instead of a
fresh elimination.
"""

from gmpy2 import mpq

QZERO = mpq(0)
QONE = mpq(1)


class NotASubspace(Exception):
    pass


class Scalar:
    """A Gaussian rational re + im*i with exact mpq components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = mpq(re)
        self.im = mpq(im)

    def conj(self):
        return Scalar(self.re, -self.im)

    def is_rational(self):
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        return self.re == other and self.im == 0

    def __hash__(self):
        return hash((self.re, self.im))

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __add__(self, other):
        other = as_scalar(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_scalar(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __mul__(self, other):
        other = as_scalar(other)
        return Scalar(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_scalar(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar((self.re * other.re + self.im * other.im) / n,
                      (self.im * other.re - self.re * other.im) / n)

    def __rtruediv__(self, other):
        return as_scalar(other) / self

    def __repr__(self):
        return "Scalar(%r)" % (str(self),)

    def __str__(self):
        return format_scalar(self)


def as_scalar(x):
    if isinstance(x, Scalar):
        return x
    return Scalar(x)


SI = Scalar(0, 1)
SONE = Scalar(1)
SZERO = Scalar(0)


def i_power(k):
    """i**k as a Scalar, any integer k."""
    k %= 4
    return (SONE, SI, Scalar(-1), Scalar(0, -1))[k]


def format_scalar(s):
    """Exact literal form: a/b, c/d*i, a/b+c/d*i, a/b-c/d*i, 0."""
    if not s:
        return "0"
    parts = []
    if s.re:
        parts.append(str(s.re))
    if s.im:
        if s.im == 1:
            imtxt = "i"
        elif s.im == -1:
            imtxt = "-i"
        else:
            imtxt = "%s*i" % (s.im,)
        if parts and not imtxt.startswith("-"):
            parts.append("+" + imtxt)
        else:
            parts.append(imtxt)
    return "".join(parts)


def parse_scalar(text):
    """Parse an exact Gaussian-rational literal (no floats accepted)."""
    t = text.strip().replace(" ", "")
    if not t:
        raise ValueError("empty scalar literal")
    # split into the real and imaginary summands at a top-level +/-
    terms = []
    start = 0
    for k in range(1, len(t)):
        if t[k] in "+-" and t[k - 1] not in "+-/*":
            terms.append(t[start:k])
            start = k
    terms.append(t[start:])
    re = QZERO
    im = QZERO
    for term in terms:
        if not term or term in "+-":
            raise ValueError("bad scalar literal %r" % (text,))
        if term.startswith("+"):
            term = term[1:]
        if term.endswith("i"):
            body = term[:-1]
            if body.endswith("*"):
                body = body[:-1]
            if body in ("", "+"):
                coef = QONE
            elif body == "-":
                coef = -QONE
            else:
                coef = mpq(body)
            im += coef
        else:
            re += mpq(term)
    return Scalar(re, im)


class Field:
    """Ground-field descriptor: exact rationals or Gaussian rationals."""

    __slots__ = ("name", "zero", "one")

    def __init__(self, name, zero, one):
        self.name = name
        self.zero = zero
        self.one = one

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


QQ = Field("QQ", QZERO, QONE)
QI = Field("QI", SZERO, SONE)


class Matrix:
    """Dense exact matrix over QQ or QI; rows * cols entries, row-major.

    Operations never mutate their operands.  rref() pivots on the first
    nonzero entry in column order, so echelon forms, kernels and image
    bases are deterministic functions of the input.
    """

    __slots__ = ("rows", "cols", "data", "field")

    def __init__(self, rows, cols, data, field=QQ):
        assert len(data) == rows and all(len(r) == cols for r in data)
        self.rows = rows
        self.cols = cols
        self.data = data
        self.field = field

    @classmethod
    def zeros(cls, rows, cols, field=QQ):
        z = field.zero
        return cls(rows, cols, [[z] * cols for _ in range(rows)], field)

    @classmethod
    def identity(cls, n, field=QQ):
        m = cls.zeros(n, n, field)
        for k in range(n):
            m.data[k][k] = field.one
        return m

    @classmethod
    def from_rows(cls, rows, cols=None, field=QQ):
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols required for empty matrix")
            cols = len(rows[0])
        return cls(len(rows), cols, rows, field)

    def copy(self):
        return Matrix(self.rows, self.cols, [r[:] for r in self.data], self.field)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __repr__(self):
        return "Matrix(%d x %d over %s)" % (self.rows, self.cols, self.field)

    def is_zero(self):
        return all(not x for row in self.data for x in row)

    def __add__(self, other):
        assert self.rows == other.rows and self.cols == other.cols
        return Matrix(self.rows, self.cols,
                      [[a + b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.data, other.data)], self.field)

    def __sub__(self, other):
        assert self.rows == other.rows and self.cols == other.cols
        return Matrix(self.rows, self.cols,
                      [[a - b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.data, other.data)], self.field)

    def __neg__(self):
        return Matrix(self.rows, self.cols,
                      [[-a for a in row] for row in self.data], self.field)

    def scale(self, c):
        return Matrix(self.rows, self.cols,
                      [[c * a for a in row] for row in self.data], self.field)

    def __mul__(self, other):
        assert self.cols == other.rows, "shape mismatch %d vs %d" % (self.cols, other.rows)
        z = self.field.zero
        out = []
        bdata = other.data
        for arow in self.data:
            nz = [(j, a) for j, a in enumerate(arow) if a]
            row = [z] * other.cols
            for j, a in nz:
                brow = bdata[j]
                row = [acc + a * b if b else acc for acc, b in zip(row, brow)]
            out.append(row)
        return Matrix(self.rows, other.cols, out, self.field)

    def matvec(self, vec):
        assert len(vec) == self.cols
        z = self.field.zero
        out = []
        for row in self.data:
            acc = z
            for a, v in zip(row, vec):
                if a and v:
                    acc = acc + a * v
            out.append(acc)
        return out

    def transpose(self):
        return Matrix(self.cols, self.rows,
                      [list(col) for col in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)],
                      self.field)

    def conj(self):
        if self.field is QQ:
            return self.copy()
        return Matrix(self.rows, self.cols,
                      [[a.conj() for a in row] for row in self.data], self.field)

    def stack_v(self, other):
        assert self.cols == other.cols and self.field == other.field
        return Matrix(self.rows + other.rows, self.cols,
                      [r[:] for r in self.data] + [r[:] for r in other.data], self.field)

    def stack_h(self, other):
        assert self.rows == other.rows and self.field == other.field
        return Matrix(self.rows, self.cols + other.cols,
                      [ra + rb for ra, rb in zip(self.data, other.data)], self.field)

    def column(self, j):
        return [row[j] for row in self.data]

    def rref(self):
        """Reduced row echelon form; returns (rref_matrix, pivot_columns)."""
        m = [row[:] for row in self.data]
        rows, cols = self.rows, self.cols
        one = self.field.one
        pivots = []
        piv = 0
        for j in range(cols):
            k = None
            for i in range(piv, rows):
                if m[i][j]:
                    k = i
                    break
            if k is None:
                continue
            if k != piv:
                m[piv], m[k] = m[k], m[piv]
            pv = m[piv][j]
            if pv != one:
                inv = one / pv
                m[piv] = [inv * x if x else x for x in m[piv]]
            mp = m[piv]
            for i in range(rows):
                if i != piv:
                    f = m[i][j]
                    if f:
                        mi = m[i]
                        m[i] = [a - f * b if b else a for a, b in zip(mi, mp)]
            pivots.append(j)
            piv += 1
            if piv == rows:
                break
        return Matrix(rows, cols, m, self.field), pivots

    def rank(self):
        return len(self.rref()[1])

    def kernel_basis(self):
        """Deterministic kernel basis from the canonical rref (one vector
        per free column, unit at the free column)."""
        r, pivots = self.rref()
        pivset = set(pivots)
        z = self.field.zero
        one = self.field.one
        basis = []
        for j in range(self.cols):
            if j in pivset:
                continue
            v = [z] * self.cols
            v[j] = one
            for i, pj in enumerate(pivots):
                v[pj] = -r.data[i][j]
            basis.append(v)
        return basis

    def image_pivot_columns(self):
        return self.rref()[1]

    def solve(self, vec):
        """One solution x of self*x = vec, or None when inconsistent."""
        aug = Matrix(self.rows, self.cols + 1,
                     [row + [b] for row, b in zip(self.data, vec)], self.field)
        r, pivots = aug.rref()
        if self.cols in pivots:
            return None
        z = self.field.zero
        x = [z] * self.cols
        for i, pj in enumerate(pivots):
            x[pj] = r.data[i][self.cols]
        return x


def kernel(m, field_tag=None):
    """Kernel of m as a Subspace over m's ground field.

    The optional tag ("QQ"/"QI") is validated against the matrix field.
    """
    if field_tag is not None and field_tag != m.field.name:
        raise ValueError("field tag %r does not match matrix over %s" % (field_tag, m.field))
    return Subspace.from_vectors(m.cols, m.kernel_basis(), m.field)


def image(m):
    """Column space of m as a Subspace (deterministic: pivot columns)."""
    cols = [m.column(j) for j in m.image_pivot_columns()]
    return Subspace.from_vectors(m.rows, cols, m.field)


class Subspace:
    """A subspace of field**ambient with a canonical (rref) basis."""

    __slots__ = ("ambient", "basis", "pivots", "field")

    def __init__(self, ambient, basis, pivots, field):
        self.ambient = ambient
        self.basis = basis        # list of ambient-length vectors, rref rows
        self.pivots = pivots      # pivot coordinate of each basis vector
        self.field = field

    @classmethod
    def from_vectors(cls, ambient, vectors, field=QQ):
        vectors = [list(v) for v in vectors]
        if not vectors:
            return cls(ambient, [], [], field)
        m = Matrix.from_rows(vectors, ambient, field)
        r, pivots = m.rref()
        basis = [r.data[i] for i in range(len(pivots))]
        return cls(ambient, basis, pivots, field)

    @classmethod
    def full(cls, ambient, field=QQ):
        eye = Matrix.identity(ambient, field)
        return cls(ambient, eye.data, list(range(ambient)), field)

    @classmethod
    def zero(cls, ambient, field=QQ):
        return cls(ambient, [], [], field)

    def dim(self):
        return len(self.basis)

    def basis_matrix(self):
        """Basis vectors as columns (ambient x dim)."""
        return Matrix.from_rows(self.basis, self.ambient, self.field).transpose()

    def coords(self, vec):
        """Coordinates of vec in the canonical basis, or None if outside.

        Linear time: read entries at pivot positions, then verify.
        """
        assert len(vec) == self.ambient
        cs = [vec[p] for p in self.pivots]
        z = self.field.zero
        residual = list(vec)
        for c, bv in zip(cs, self.basis):
            if c:
                residual = [a - c * b if b else a for a, b in zip(residual, bv)]
        if any(residual):
            return None
        return cs

    def contains(self, vec):
        return self.coords(vec) is not None

    def from_coords(self, cs):
        z = self.field.zero
        out = [z] * self.ambient
        for c, bv in zip(cs, self.basis):
            if c:
                out = [a + c * b if b else a for a, b in zip(out, bv)]
        return out

    def is_subspace_of(self, other):
        return all(other.contains(v) for v in self.basis)

    def intersection(self, other):
        """Intersection via kernel of the stacked coordinate parametrizations."""
        assert self.ambient == other.ambient and self.field == other.field
        if self.dim() == 0 or other.dim() == 0:
            return Subspace.zero(self.ambient, self.field)
        a = self.basis_matrix()
        b = other.basis_matrix()
        stacked = a.stack_h(b.scale(-self.field.one))
        vecs = []
        for k in stacked.kernel_basis():
            vecs.append(self.from_coords(k[:self.dim()]))
        return Subspace.from_vectors(self.ambient, vecs, self.field)

    def sum(self, other):
        assert self.ambient == other.ambient
        return Subspace.from_vectors(self.ambient, self.basis + other.basis, self.field)


def quotient(v, w):
    """Complement representatives of w inside v; dim v - dim w vectors.

    Raises NotASubspace unless w is contained in v (membership solved
    exactly).  The representatives extend w's basis to a basis of v,
    chosen deterministically in v's canonical basis order.
    """
    assert v.ambient == w.ambient and v.field == w.field
    if not w.is_subspace_of(v):
        raise NotASubspace("quotient: w is not a subspace of v")
    reps = []
    current = w
    for bv in v.basis:
        if not current.contains(bv):
            reps.append(bv)
            current = Subspace.from_vectors(v.ambient, current.basis + [bv], v.field)
    assert len(reps) == v.dim() - w.dim()
    return Subspace.from_vectors(v.ambient, reps, v.field)


def restrict_scalars(v):
    """QQ(i)-subspace -> QQ-subspace of doubled ambient (re-parts, im-parts).

    The basis {b_j} becomes {b_j, i*b_j}; dimension doubles exactly.
    """
    assert v.field == QI
    out = []
    for b in v.basis:
        re = [x.re for x in b]
        im = [x.im for x in b]
        out.append(re + im)                    # b
        out.append([-x for x in im] + re)      # i*b
    return Subspace.from_vectors(2 * v.ambient, out, QQ)


def complex_to_real_vector(vec):
    """QQ(i)**n -> QQ**(2n), coordinates (Re..., Im...)."""
    return [x.re for x in vec] + [x.im for x in vec]


def real_to_complex_vector(vec):
    n = len(vec) // 2
    assert len(vec) == 2 * n
    return [Scalar(a, b) for a, b in zip(vec[:n], vec[n:])]


def real_block_of_linear(m):
    """Real 2r x 2c block [[A,-B],[B,A]] of a QQ(i)-linear map A+iB."""
    assert m.field == QI
    r, c = m.rows, m.cols
    out = [[QZERO] * (2 * c) for _ in range(2 * r)]
    for i in range(r):
        for j in range(c):
            s = m.data[i][j]
            if s:
                out[i][j] = s.re
                out[i][j + c] = -s.im
                out[i + r][j] = s.im
                out[i + r][j + c] = s.re
    return Matrix(2 * r, 2 * c, out, QQ)


def real_block_of_antilinear(m):
    """Real block of the antilinear map x -> m * conj(x), m = A+iB over QQ(i):
    [[A, B], [B, -A]]."""
    assert m.field == QI
    r, c = m.rows, m.cols
    out = [[QZERO] * (2 * c) for _ in range(2 * r)]
    for i in range(r):
        for j in range(c):
            s = m.data[i][j]
            if s:
                out[i][j] = s.re
                out[i][j + c] = s.im
                out[i + r][j] = s.im
                out[i + r][j + c] = -s.re
    return Matrix(2 * r, 2 * c, out, QQ)


class SparseOp:
    """Row-sparse exact linear map for fast repeated matvec."""

    __slots__ = ("rows", "cols", "rownz")

    def __init__(self, matrix):
        self.rows = matrix.rows
        self.cols = matrix.cols
        self.rownz = [tuple((j, a) for j, a in enumerate(row) if a)
                      for row in matrix.data]

    def matvec(self, vec):
        out = []
        for row in self.rownz:
            acc = QZERO
            for j, a in row:
                v = vec[j]
                if v:
                    acc = acc + a * v
            out.append(acc)
        return out
