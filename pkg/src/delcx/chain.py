"""Plain chain complexes of rational vector spaces (homological grading).

A complex is a finite family of dimensions with differentials d_n mapping
degree n to degree n-1.  Used for Deligne complexes in their canonical
bases, cones of chain maps, twisted real complexes and the two-row point
complex; homology is exact rank arithmetic with deterministic bases.
"""

from .exactnum import QQ, Matrix, Subspace, quotient


class ChainComplex:
    """dims[n] and diff[n]: degree-n space and d_n : C_n -> C_{n-1}."""

    def __init__(self, dims, diff):
        self.dims = {n: d for n, d in dims.items() if d > 0}
        self.diff = {}
        for n, m in diff.items():
            if m is not None and m.rows * m.cols > 0:
                self.diff[n] = m

    def degrees(self):
        return sorted(self.dims)

    def dim(self, n):
        return self.dims.get(n, 0)

    def d(self, n):
        m = self.diff.get(n)
        if m is None:
            return Matrix.zeros(self.dim(n - 1), self.dim(n), QQ)
        return m

    def check_d_squared(self):
        for n in self.degrees():
            if self.dim(n) and self.dim(n - 2):
                if not (self.d(n - 1) * self.d(n)).is_zero():
                    return False
        return True

    def cycles(self, n):
        if self.dim(n) == 0:
            return Subspace.zero(0, QQ)
        if self.dim(n - 1) == 0:
            return Subspace.full(self.dim(n), QQ)
        return Subspace.from_vectors(self.dim(n), self.d(n).kernel_basis(), QQ)

    def boundaries(self, n):
        if self.dim(n) == 0:
            return Subspace.zero(0, QQ)
        if self.dim(n + 1) == 0:
            return Subspace.zero(self.dim(n), QQ)
        cols = [self.d(n + 1).column(j) for j in range(self.dim(n + 1))]
        return Subspace.from_vectors(self.dim(n), cols, QQ)

    def homology_dim(self, n):
        return self.cycles(n).dim() - self.boundaries(n).dim()

    def homology_basis(self, n):
        """Deterministic representatives of a basis of H_n."""
        z = self.cycles(n)
        b = self.boundaries(n)
        if z.dim() == 0:
            return []
        return quotient(z, b).basis

    def homology_table(self):
        out = {}
        degs = self.degrees()
        if not degs:
            return out
        for n in range(min(degs) - 1, max(degs) + 2):
            h = self.homology_dim(n) if self.dim(n) else 0
            if h:
                out[n] = h
        return out


def cone_of_chain_map(f_mats, src, dst):
    """Cone of a chain map f: src -> dst, with f_mats[n] : src_n -> dst_n.

    Degree-n piece is src_n (+) dst_{n+1}; d(b, a) = (db, f(b) - da).
    A pair (b, a) is a cycle iff db = 0 and f(b) = da.
    """
    dims = {}
    degs = set(src.dims) | {n - 1 for n in dst.dims}
    for n in degs:
        d = src.dim(n) + dst.dim(n + 1)
        if d:
            dims[n] = d
    diff = {}
    for n in dims:
        rows = dims.get(n - 1, 0)
        cols = dims[n]
        if rows == 0 or cols == 0:
            continue
        m = Matrix.zeros(rows, cols, QQ)
        bsrc = src.dim(n)
        bdst_shift = src.dim(n - 1)
        # db block
        dsrc = src.d(n)
        for i in range(dsrc.rows):
            for j in range(dsrc.cols):
                if dsrc.data[i][j]:
                    m.data[i][j] = dsrc.data[i][j]
        # f(b) block into A_n part
        f_n = f_mats.get(n)
        if f_n is not None and dst.dim(n):
            for i in range(f_n.rows):
                for j in range(f_n.cols):
                    if f_n.data[i][j]:
                        m.data[bdst_shift + i][j] = f_n.data[i][j]
        # -da block
        ddst = dst.d(n + 1)
        if dst.dim(n) and dst.dim(n + 1):
            for i in range(ddst.rows):
                for j in range(ddst.cols):
                    if ddst.data[i][j]:
                        m.data[bdst_shift + i][bsrc + j] = -ddst.data[i][j]
        diff[n] = m
    return ChainComplex(dims, diff)

