"""Finite bigraded Dolbeault complexes with conjugation and Hodge windows.

A complex stores a finite support (p,q) -> dim, the two differentials del
(type (-1,0)) and delbar (type (0,-1)) as exact Gaussian-rational matrices,
and the antilinear conjugation sigma as a matrix applied after coefficient
conjugation.  Storage is always in the homological convention; a
cohomological complex is the same data with user-facing degrees and
bidegrees negated (variance flag), so every Deligne-complex formula
downstream is implemented exactly once.

Degenerate supports (empty complex, single bidegree) are legal everywhere;
operations return zero-dimensional answers rather than fail.
"""

from gmpy2 import mpq

from .exactnum import (
    QI, QQ, Matrix, Scalar, SparseOp, Subspace,
    real_block_of_antilinear, real_block_of_linear,
)

HOMOLOGICAL = "homological"
COHOMOLOGICAL = "cohomological"


class InvalidComplex(Exception):
    pass


class Violation:
    """One failed structural identity, as data (not an exception)."""

    __slots__ = ("identity", "location", "detail")

    def __init__(self, identity, location, detail=""):
        self.identity = identity
        self.location = location
        self.detail = detail

    def __repr__(self):
        return "Violation(%s at %s%s)" % (
            self.identity, self.location, ": " + self.detail if self.detail else "")

    def __eq__(self, other):
        return (self.identity, self.location) == (other.identity, other.location)


class BigradedComplex:
    """Finite-support bigraded complex over QQ(i) with conjugation.

    del_maps[(p,q)]   : matrix A_{p,q} -> A_{p-1,q}
    delbar_maps[(p,q)]: matrix A_{p,q} -> A_{p,q-1}
    sigma_maps[(p,q)] : matrix A_{p,q} -> A_{q,p}; sigma(x) = S * conj(x)
    All keys use the internal homological bigrading.  Missing maps are zero.
    """

    def __init__(self, support, del_maps=None, delbar_maps=None, sigma_maps=None,
                 variance=HOMOLOGICAL, name="", wedge=None, geom_dim=None):
        self.support = {pq: d for pq, d in support.items() if d > 0}
        self.del_maps = dict(del_maps or {})
        self.delbar_maps = dict(delbar_maps or {})
        self.sigma_maps = dict(sigma_maps or {})
        self.variance = variance
        self.name = name
        self.wedge = wedge              # optional WedgeTable (see duality)
        self.geom_dim = geom_dim        # declared dimension d, if any
        self._cache = {}

    # -- user <-> internal coordinates ------------------------------------

    def to_internal_bidegree(self, p, q):
        return (-p, -q) if self.variance == COHOMOLOGICAL else (p, q)

    def to_user_bidegree(self, p, q):
        return (-p, -q) if self.variance == COHOMOLOGICAL else (p, q)

    def to_internal_degree(self, n):
        return -n if self.variance == COHOMOLOGICAL else n

    def to_user_degree(self, n):
        return -n if self.variance == COHOMOLOGICAL else n

    def user_support(self):
        return {self.to_user_bidegree(*pq): d for pq, d in self.support.items()}

    # -- degree bookkeeping (internal degrees throughout) ------------------

    def degrees(self):
        return sorted({p + q for p, q in self.support})

    def weight_range(self):
        """(min, max) first bidegree index over the support, user convention."""
        if not self.support:
            return (0, 0)
        firsts = [self.to_user_bidegree(p, q)[0] for p, q in self.support]
        seconds = [self.to_user_bidegree(p, q)[1] for p, q in self.support]
        return (min(firsts + seconds), max(firsts + seconds))

    def blocks(self, n):
        return sorted((pq for pq in self.support if pq[0] + pq[1] == n))

    def block_dim(self, pq):
        return self.support.get(pq, 0)

    def dim_n(self, n):
        return sum(self.support[pq] for pq in self.blocks(n))

    def offsets(self, n):
        key = ("off", n)
        if key not in self._cache:
            off = {}
            pos = 0
            for pq in self.blocks(n):
                off[pq] = pos
                pos += self.support[pq]
            self._cache[key] = off
        return self._cache[key]

    def _assemble(self, n, maps, shift):
        """Degree-n matrix A_n -> A_{n-1} from per-block maps of bidegree shift."""
        src_off = self.offsets(n)
        dst_off = self.offsets(n - 1)
        dn, dm = self.dim_n(n), self.dim_n(n - 1)
        out = Matrix.zeros(dm, dn, QI)
        for pq in self.blocks(n):
            tgt = (pq[0] + shift[0], pq[1] + shift[1])
            if tgt not in self.support:
                continue
            m = maps.get(pq)
            if m is None:
                continue
            r0, c0 = dst_off[tgt], src_off[pq]
            for i in range(m.rows):
                row = m.data[i]
                orow = out.data[r0 + i]
                for j in range(m.cols):
                    if row[j]:
                        orow[c0 + j] = row[j]
        return out

    def del_matrix(self, n):
        key = ("del", n)
        if key not in self._cache:
            self._cache[key] = self._assemble(n, self.del_maps, (-1, 0))
        return self._cache[key]

    def delbar_matrix(self, n):
        key = ("delbar", n)
        if key not in self._cache:
            self._cache[key] = self._assemble(n, self.delbar_maps, (0, -1))
        return self._cache[key]

    def d_matrix(self, n):
        key = ("d", n)
        if key not in self._cache:
            self._cache[key] = self.del_matrix(n) + self.delbar_matrix(n)
        return self._cache[key]

    def sigma_matrix(self, n):
        """Linear part of sigma on A_n (block (p,q) -> (q,p))."""
        key = ("sigma", n)
        if key not in self._cache:
            off = self.offsets(n)
            dn = self.dim_n(n)
            out = Matrix.zeros(dn, dn, QI)
            for pq in self.blocks(n):
                tgt = (pq[1], pq[0])
                m = self.sigma_maps.get(pq)
                if m is None or tgt not in self.support:
                    continue
                r0, c0 = off[tgt], off[pq]
                for i in range(m.rows):
                    for j in range(m.cols):
                        if m.data[i][j]:
                            out.data[r0 + i][c0 + j] = m.data[i][j]
            self._cache[key] = out
        return self._cache[key]

    # -- real (restricted-scalar) operators --------------------------------

    def real_dim_n(self, n):
        return 2 * self.dim_n(n)

    def real_op(self, kind, n):
        """SparseOp on restricted coordinates; kind in d/del/delbar/sigma."""
        key = ("rop", kind, n)
        if key not in self._cache:
            if kind == "sigma":
                m = real_block_of_antilinear(self.sigma_matrix(n))
            else:
                m = real_block_of_linear(
                    {"d": self.d_matrix, "del": self.del_matrix,
                     "delbar": self.delbar_matrix}[kind](n))
            self._cache[key] = SparseOp(m)
        return self._cache[key]

    def window_real_indices(self, n, k, k2):
        """Restricted coordinate indices of the blocks with p <= k, q <= k2
        (internal bigrading) inside degree n."""
        off = self.offsets(n)
        dn = self.dim_n(n)
        idx = []
        for pq in self.blocks(n):
            if pq[0] <= k and pq[1] <= k2:
                o, d = off[pq], self.support[pq]
                idx.extend(range(o, o + d))
        return idx + [i + dn for i in idx]

    def block_real_indices(self, n, pq):
        off = self.offsets(n)
        dn = self.dim_n(n)
        if pq not in self.support or pq[0] + pq[1] != n:
            return []
        o, d = off[pq], self.support[pq]
        idx = list(range(o, o + d))
        return idx + [i + dn for i in idx]


class TwistedVector:
    """Degree-n element of A^C given by components per bidegree.

    Coordinates are complex (QQ(i)) in the complex's internal block order;
    the degree is user-facing.
    """

    __slots__ = ("complex", "degree", "coords")

    def __init__(self, cx, degree, coords):
        n = cx.to_internal_degree(degree)
        assert len(coords) == cx.dim_n(n), "components outside declared support"
        self.complex = cx
        self.degree = degree
        self.coords = [x if isinstance(x, Scalar) else Scalar(x) for x in coords]

    def internal_degree(self):
        return self.complex.to_internal_degree(self.degree)

    def __eq__(self, other):
        return (self.complex is other.complex and self.degree == other.degree
                and self.coords == other.coords)

    def is_zero(self):
        return all(not x for x in self.coords)


# -- validation -------------------------------------------------------------


def validate_dolbeault(a):
    """Return the list of violated structural identities (empty iff valid).

    Checked, per the four invariants: del/delbar square to zero and
    anticommute; the support and sigma satisfy the conjugation symmetry
    (dim A_{p,q} = dim A_{q,p}, sigma an antilinear involution); sigma
    exchanges del and delbar.
    """
    out = []
    sup = a.support
    for pq, d in sorted(sup.items()):
        p, q = pq
        if sup.get((q, p), 0) != d:
            out.append(Violation("conjugation symmetry", pq,
                                 "dim %d vs %d" % (d, sup.get((q, p), 0))))

    def get(maps, pq, shift):
        tgt = (pq[0] + shift[0], pq[1] + shift[1])
        rows = sup.get(tgt, 0)
        cols = sup.get(pq, 0)
        m = maps.get(pq)
        if m is None:
            return Matrix.zeros(rows, cols, QI)
        if m.rows != rows or m.cols != cols:
            return None
        return m

    for pq in sorted(sup):
        dl = get(a.del_maps, pq, (-1, 0))
        db = get(a.delbar_maps, pq, (0, -1))
        if dl is None or db is None:
            out.append(Violation("matrix shape", pq))
            continue
        p, q = pq
        dl2 = get(a.del_maps, (p - 1, q), (-1, 0))
        if dl2 is not None and not (dl2 * dl).is_zero():
            out.append(Violation("del-squared", pq))
        db2 = get(a.delbar_maps, (p, q - 1), (0, -1))
        if db2 is not None and not (db2 * db).is_zero():
            out.append(Violation("delbar-squared", pq))
        dbl = get(a.delbar_maps, (p - 1, q), (0, -1))
        dlb = get(a.del_maps, (p, q - 1), (-1, 0))
        if dbl is not None and dlb is not None:
            if not (dbl * dl + dlb * db).is_zero():
                out.append(Violation("anticommute", pq))

    for pq in sorted(sup):
        p, q = pq
        s = a.sigma_maps.get(pq)
        if s is None or s.rows != sup.get((q, p), 0) or s.cols != sup[pq]:
            out.append(Violation("sigma shape", pq))
            continue
        s2 = a.sigma_maps.get((q, p))
        if s2 is not None and s2.rows == sup[pq]:
            if s2 * s.conj() != Matrix.identity(sup[pq], QI):
                out.append(Violation("sigma-involution", pq))
        # sigma . del = delbar . sigma on A_{p,q}
        dl = get(a.del_maps, pq, (-1, 0))
        if dl is None:
            continue
        s_tgt = a.sigma_maps.get((p - 1, q))
        db_conj = get(a.delbar_maps, (q, p), (0, -1))
        if (p - 1, q) in sup and s_tgt is not None and db_conj is not None:
            lhs = s_tgt * dl.conj()
            rhs = db_conj * s
            if lhs != rhs:
                out.append(Violation("sigma-exchanges-differentials", pq))
        elif (p - 1, q) in sup and (q, p - 1) not in sup:
            if not dl.is_zero():
                out.append(Violation("sigma-exchanges-differentials", pq))
    return out


def require_valid(a):
    report = validate_dolbeault(a)
    if report:
        raise InvalidComplex("; ".join(repr(v) for v in report))


# -- filtrations, projectors, real subspaces ---------------------------------


def hodge_filtration(a, p, n):
    """Coordinate subspace F_p A_n (user conventions on both arguments).

    Homological variance keeps bidegrees with first index <= p; for
    cohomological variance the negated storage turns this into >= p.
    """
    n_int = a.to_internal_degree(n)
    k = -p if a.variance == COHOMOLOGICAL else p
    dn = a.dim_n(n_int)
    off = a.offsets(n_int)
    vecs = []
    for pq in a.blocks(n_int):
        if pq[0] <= k:
            o, d = off[pq], a.support[pq]
            for j in range(o, o + d):
                v = [QI.zero] * dn
                v[j] = QI.one
                vecs.append(v)
    return Subspace.from_vectors(dn, vecs, QI)


def _window_bounds(a, k, k2):
    if a.variance == COHOMOLOGICAL:
        return -k, -k2
    return k, k2


def project_Fkk(x, k, k2):
    """F_{k,k'} component sum of a TwistedVector (user indices); idempotent."""
    a = x.complex
    n_int = x.internal_degree()
    ki, k2i = _window_bounds(a, k, k2)
    off = a.offsets(n_int)
    out = [QI.zero] * len(x.coords)
    for pq in a.blocks(n_int):
        if pq[0] <= ki and pq[1] <= k2i:
            o, d = off[pq], a.support[pq]
            out[o:o + d] = x.coords[o:o + d]
    return TwistedVector(a, x.degree, out)


def sigma_apply(x):
    """Conjugation of a TwistedVector: sigma(x) = S * conj(coords)."""
    a = x.complex
    n_int = x.internal_degree()
    s = a.sigma_matrix(n_int)
    return TwistedVector(a, x.degree, s.matvec([c.conj() for c in x.coords]))


def project_pi(x, p):
    """pi_p(x) = (x + (-1)^p sigma(x)) / 2; lands in the (-1)^p eigenspace."""
    sx = sigma_apply(x)
    sign = 1 if p % 2 == 0 else -1
    half = Scalar(mpq(1, 2))
    return TwistedVector(x.complex, x.degree,
                         [half * (c + sign * s) for c, s in zip(x.coords, sx.coords)])


def real_subspace(a, n, p):
    """Rational basis of the twisted real subspace of A_n.

    These are the x with sigma(x) = (-1)^p x, i.e. the (2 pi i)^{-p}-twist of
    the real points; returned over QQ in restricted coordinates (Re..., Im...).
    """
    n_int = a.to_internal_degree(n)
    dn = a.dim_n(n_int)
    if dn == 0:
        return Subspace.zero(0, QQ)
    sig = real_block_of_antilinear(a.sigma_matrix(n_int))
    sign = QQ.one if p % 2 == 0 else -QQ.one
    m = sig - Matrix.identity(2 * dn, QQ).scale(sign)
    return Subspace.from_vectors(2 * dn, m.kernel_basis(), QQ)


# -- chain maps of Dolbeault complexes ---------------------------------------


class WedgeTable:
    """Bilinear multiplicative structure on a bigraded complex.

    table[(pq1, pq2)][i] is the matrix whose column j gives the coordinates
    of e_i wedge f_j in the target block (pq1 + pq2 componentwise, internal
    bigrading).  unit names the basis element acting as 1.
    """

    def __init__(self, cx, table, unit_block=(0, 0), unit_index=0):
        self.complex = cx
        self.table = dict(table)
        self.unit_block = unit_block
        self.unit_index = unit_index

    def block_product(self, pq1, i, pq2):
        """Matrix of (e_i wedge .) : A_{pq2} -> A_{pq1+pq2}, or None if zero."""
        mats = self.table.get((pq1, pq2))
        if mats is None:
            return None
        return mats[i]

    def wedge_vec(self, x, y):
        """Wedge of two TwistedVectors; degrees add (user and internal)."""
        a = self.complex
        n1, n2 = x.internal_degree(), y.internal_degree()
        n = n1 + n2
        out = [QI.zero] * a.dim_n(n)
        off1, off2, offo = a.offsets(n1), a.offsets(n2), a.offsets(n)
        for pq1 in a.blocks(n1):
            o1, d1 = off1[pq1], a.support[pq1]
            for pq2 in a.blocks(n2):
                tgt = (pq1[0] + pq2[0], pq1[1] + pq2[1])
                if tgt not in a.support:
                    continue
                mats = self.table.get((pq1, pq2))
                if mats is None:
                    continue
                o2, d2 = off2[pq2], a.support[pq2]
                oo = offo[tgt]
                for i in range(d1):
                    ci = x.coords[o1 + i]
                    if not ci:
                        continue
                    m = mats[i]
                    for j in range(d2):
                        cj = y.coords[o2 + j]
                        if not cj:
                            continue
                        col = m.column(j)
                        for kk, ck in enumerate(col):
                            if ck:
                                out[oo + kk] = out[oo + kk] + ci * cj * ck
        return TwistedVector(a, a.to_user_degree(n), out)

    def unit_vector(self, scale=None):
        a = self.complex
        n = sum(self.unit_block)
        coords = [QI.zero] * a.dim_n(n)
        coords[a.offsets(n)[self.unit_block] + self.unit_index] = scale or QI.one
        return TwistedVector(a, a.to_user_degree(n), coords)


class DolbeaultMap:
    """A bidegree-preserving chain map commuting with del, delbar and sigma.

    blocks[(p,q)] is the matrix A_{p,q} -> B_{p,q} (internal bigrading);
    missing blocks are zero.
    """

    def __init__(self, src, dst, blocks):
        self.src = src
        self.dst = dst
        self.blocks = dict(blocks)
        self._real = {}

    def degree_matrix(self, n):
        src_off = self.src.offsets(n)
        dst_off = self.dst.offsets(n)
        out = Matrix.zeros(self.dst.dim_n(n), self.src.dim_n(n), QI)
        for pq in self.src.blocks(n):
            m = self.blocks.get(pq)
            if m is None or pq not in self.dst.support:
                continue
            r0, c0 = dst_off[pq], src_off[pq]
            for i in range(m.rows):
                for j in range(m.cols):
                    if m.data[i][j]:
                        out.data[r0 + i][c0 + j] = m.data[i][j]
        return out

    def real_op(self, n):
        if n not in self._real:
            self._real[n] = SparseOp(real_block_of_linear(self.degree_matrix(n)))
        return self._real[n]

    def check_chain_map(self):
        """Exact commutation with del, delbar and sigma on every degree."""
        degs = sorted(set(self.src.degrees()) | set(self.dst.degrees()))
        for n in degs:
            f_n = self.degree_matrix(n)
            f_prev = self.degree_matrix(n - 1)
            for pick in ("del_matrix", "delbar_matrix"):
                if getattr(self.dst, pick)(n) * f_n != f_prev * getattr(self.src, pick)(n):
                    return False
            # as antilinear maps sigma_dst . f = f . sigma_src, so the linear
            # parts satisfy S_dst * conj(F) = F * S_src
            if self.dst.sigma_matrix(n) * f_n.conj() != f_n * self.src.sigma_matrix(n):
                return False
        return True

    @classmethod
    def identity(cls, a):
        return cls(a, a, {pq: Matrix.identity(d, QI) for pq, d in a.support.items()})
