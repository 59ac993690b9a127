"""The Deligne complex of a Dolbeault complex, its mapping cone, and the
explicit homotopy equivalence between them.

All construction is internal-homological; a cohomological complex is
handled through its negated storage, so the case split

    D_n(A,p) = real(p) cap F_{p,p} A_n             for n <= 2p
    D_n(A,p) = real(p+1) cap F_{n-p,n-p} A_{n+1}   for n >= 2p+1

and the three-case differential are implemented once.  In the top case the
differential projects to the target window F_{n-p-1,n-p-1}: that index is
forced by well-definedness (the image must land in D_{n-1}) and matches
the cohomological convention under degree negation.

The cone sign convention d(a,f,w) = (da, df, u(a,f) - dw) with
u(a,f) = -a+f is fixed by certifying the homotopy identities
psi.phi = Id and phi.psi - Id = dh + hd; if certification ever failed the
single alternative sign would be tried, and whichever convention certifies
is frozen into the build.
"""

from gmpy2 import mpq

from .exactnum import QQ, Matrix, QZERO, SparseOp, Subspace
from .dolbeault import COHOMOLOGICAL, require_valid
from .chain import ChainComplex

HALF = mpq(1, 2)


class HomotopyIdentityFailure(Exception):
    pass


class DegreeMismatch(Exception):
    pass


class UnsupportedRegime(Exception):
    pass


# -- ambient real-coordinate operators ---------------------------------------


def op_apply(a, kind, n, vec):
    """Apply d/del/delbar/sigma at internal degree n on restricted coords."""
    return a.real_op(kind, n).matvec(vec)


def window_project(a, n, k, k2, vec):
    keep = a.window_real_indices(n, k, k2)
    out = [QZERO] * len(vec)
    for i in keep:
        out[i] = vec[i]
    return out


def block_project(a, n, pq, vec):
    keep = a.block_real_indices(n, pq)
    out = [QZERO] * len(vec)
    for i in keep:
        out[i] = vec[i]
    return out


def pi_project(a, n, p, vec):
    """pi_p = (1 + (-1)^p sigma)/2 on restricted coordinates of A_n."""
    sig = op_apply(a, "sigma", n, vec)
    if p % 2:
        return [HALF * (x - s) for x, s in zip(vec, sig)]
    return [HALF * (x + s) for x, s in zip(vec, sig)]


def twist_eigen_subspace(a, n, p):
    """Basis of {x in A_n : sigma x = (-1)^p x} over QQ (restricted coords)."""
    dn = a.real_dim_n(n)
    if dn == 0:
        return Subspace.zero(0, QQ)
    sig = a.real_op("sigma", n)
    sign = QQ.one if p % 2 == 0 else -QQ.one
    eye = Matrix.identity(dn, QQ)
    cols = [sig.matvec(eye.data[j]) for j in range(dn)]
    m = Matrix(dn, dn, [[cols[j][i] for j in range(dn)] for i in range(dn)], QQ)
    m = m - eye.scale(sign)
    return Subspace.from_vectors(dn, m.kernel_basis(), QQ)


def twisted_window_subspace(a, n, p, k, k2):
    """{x in F_{k,k2} A_n : sigma x = (-1)^p x}, a QQ-subspace of the
    restricted coordinates (the window is sigma-stable when k = k2)."""
    dn = a.real_dim_n(n)
    if dn == 0:
        return Subspace.zero(0, QQ)
    idx = a.window_real_indices(n, k, k2)
    if not idx:
        return Subspace.zero(dn, QQ)
    if len(idx) == dn:
        return twist_eigen_subspace(a, n, p)
    keep = set(idx)
    vecs = []
    # sigma-stable coordinate window: restrict sigma to it and solve there
    sig = a.real_op("sigma", n)
    sub = sorted(keep)
    m = Matrix.zeros(len(sub), len(sub), QQ)
    basis_vec = [QZERO] * dn
    for t, i in enumerate(sub):
        basis_vec[i] = QQ.one
        img = sig.matvec(basis_vec)
        basis_vec[i] = QZERO
        for r, ir in enumerate(sub):
            m.data[r][t] = img[ir]
        # components outside the window must vanish for stability
        for j, x in enumerate(img):
            if x and j not in keep:
                raise AssertionError("window not sigma-stable")
    sign = QQ.one if p % 2 == 0 else -QQ.one
    m = m - Matrix.identity(len(sub), QQ).scale(sign)
    for kvec in m.kernel_basis():
        v = [QZERO] * dn
        for t, i in enumerate(sub):
            v[i] = kvec[t]
        vecs.append(v)
    return Subspace.from_vectors(dn, vecs, QQ)


# -- the Deligne complex ------------------------------------------------------


class DeligneComplex:
    """D_*(A,p) in deterministic rational bases.

    spaces[n]   : Subspace of the restricted coordinates of the ambient
                  degree (n for n <= 2p, n+1 above).
    diff[n]     : matrix D_n -> D_{n-1} in those bases.
    Degrees are internal; to_user_degree translates for display.
    """

    def __init__(self, source, p_user):
        self.source = source
        self.p_user = p_user
        self.p = -p_user if source.variance == COHOMOLOGICAL else p_user
        self.spaces = {}
        self.diff = {}
        self._build()

    def ambient_degree(self, n):
        return n if n <= 2 * self.p else n + 1

    def candidate_degrees(self):
        degs = self.source.degrees()
        if not degs:
            return []
        out = set()
        for m in degs:
            out.add(m)          # lower-case candidates: n = m <= 2p
            out.add(m - 1)      # upper-case candidates: n + 1 = m
        return sorted(out)

    def _build(self):
        a, p = self.source, self.p
        for n in self.candidate_degrees():
            if n <= 2 * p:
                sp = twisted_window_subspace(a, n, p, p, p)
            else:
                sp = twisted_window_subspace(a, n + 1, p + 1, n - p, n - p)
            if sp.dim():
                self.spaces[n] = sp
        for n in sorted(self.spaces):
            tgt = self.spaces.get(n - 1)
            if tgt is None or tgt.dim() == 0:
                continue
            cols = []
            for bv in self.spaces[n].basis:
                img = self._apply_differential(n, bv)
                cs = tgt.coords(img)
                assert cs is not None, "Deligne differential left its target"
                cols.append(cs)
            self.diff[n] = Matrix(tgt.dim(), len(cols),
                                  [[c[i] for c in cols] for i in range(tgt.dim())], QQ)

    def _apply_differential(self, n, vec):
        """Ambient-coordinate image of d_D on a degree-n vector."""
        a, p = self.source, self.p
        if n <= 2 * p:
            return op_apply(a, "d", n, vec)
        if n == 2 * p + 1:
            w = op_apply(a, "delbar", n + 1, vec)
            w = op_apply(a, "del", n, w)
            return [-2 * x for x in w]
        w = op_apply(a, "d", n + 1, vec)
        w = window_project(a, n, n - p - 1, n - p - 1, w)
        return [-x for x in w]

    def dim(self, n):
        sp = self.spaces.get(n)
        return sp.dim() if sp else 0

    def chain_complex(self):
        dims = {n: sp.dim() for n, sp in self.spaces.items()}
        return ChainComplex(dims, dict(self.diff))

    def to_user_degree(self, n):
        return self.source.to_user_degree(n)

    def homology(self):
        """User-degree table n -> (dimension, basis in D_n coordinates)."""
        cc = self.chain_complex()
        out = {}
        for n in self.spaces:
            h = cc.homology_dim(n)
            if h:
                out[self.to_user_degree(n)] = (h, cc.homology_basis(n))
        return out

    def homology_dims(self):
        return {n: h for n, (h, _) in self.homology().items()}

    def check_d_squared(self):
        return self.chain_complex().check_d_squared()

    def element_ambient(self, n, coords):
        """Ambient restricted-coordinate vector of an element given in the
        canonical D_n basis."""
        return self.spaces[n].from_coords(coords)


def build_deligne(a, p_user, validate=True):
    if validate:
        require_valid(a)
    return DeligneComplex(a, p_user)


def real_twisted_complex(a, p_user):
    """(A^R(p), d) as a plain rational chain complex in internal degrees.

    For p above the support window D(A,p) agrees with this complex; below,
    with its (p+1)-twist shifted by one.
    """
    p = -p_user if a.variance == COHOMOLOGICAL else p_user
    spaces = {}
    for n in a.degrees():
        sp = twist_eigen_subspace(a, n, p)
        if sp.dim():
            spaces[n] = sp
    diff = {}
    for n, sp in spaces.items():
        tgt = spaces.get(n - 1)
        if tgt is None:
            continue
        cols = []
        for bv in sp.basis:
            cs = tgt.coords(op_apply(a, "d", n, bv))
            assert cs is not None
            cols.append(cs)
        diff[n] = Matrix(tgt.dim(), len(cols),
                         [[c[i] for c in cols] for i in range(tgt.dim())], QQ)
    return ChainComplex({n: sp.dim() for n, sp in spaces.items()}, diff)


def deligne_map(f, p_user):
    """Degreewise matrices D(src,p) -> D(dst,p) induced by a Dolbeault map.

    Bidegree-preserving chain maps commuting with sigma respect the Hodge
    windows and the twisted real subspaces, so the functor applies
    degreewise; the exactness of D(.,p) on short exact sequences is what
    the models module checks on jet sequences.
    """
    dsrc = DeligneComplex(f.src, p_user)
    ddst = DeligneComplex(f.dst, p_user)
    mats = {}
    for n, sp in dsrc.spaces.items():
        m_amb = dsrc.ambient_degree(n)
        op = f.real_op(m_amb)
        tgt = ddst.spaces.get(n)
        cols = []
        for bv in sp.basis:
            img = op.matvec(bv)
            if tgt is None or tgt.dim() == 0:
                assert not any(img), "induced Deligne map missed a zero target"
                continue
            cs = tgt.coords(img)
            assert cs is not None, "induced map left the Deligne subspace"
            cols.append(cs)
        if tgt is not None and tgt.dim():
            mats[n] = Matrix(tgt.dim(), len(cols),
                             [[c[i] for c in cols] for i in range(tgt.dim())], QQ)
        else:
            mats[n] = Matrix.zeros(0, sp.dim(), QQ)
    return dsrc, ddst, mats


class DeligneElement:
    """An element of D_n(A,p) in the canonical basis of its complex."""

    __slots__ = ("complex", "degree", "coords")

    def __init__(self, dcx, degree_user, coords):
        n = -degree_user if dcx.source.variance == COHOMOLOGICAL else degree_user
        sp = dcx.spaces.get(n)
        dim = sp.dim() if sp else 0
        assert len(coords) == dim, "coordinate length %d vs dim %d" % (len(coords), dim)
        self.complex = dcx
        self.degree = degree_user
        self.coords = list(coords)

    def internal_degree(self):
        return -self.degree if self.complex.source.variance == COHOMOLOGICAL else self.degree

    def ambient(self):
        n = self.internal_degree()
        if not self.coords:
            m = self.complex.ambient_degree(n)
            return [QZERO] * self.complex.source.real_dim_n(m)
        return self.complex.spaces[n].from_coords(self.coords)

    def is_zero(self):
        return not any(self.coords)

    def d(self):
        n = self.internal_degree()
        dcx = self.complex
        mat = dcx.diff.get(n)
        tgt_dim = dcx.dim(n - 1)
        if mat is None or not self.coords:
            out = [QZERO] * tgt_dim
        else:
            out = mat.matvec(self.coords)
        return DeligneElement(dcx, dcx.to_user_degree(n - 1), out)


# -- the mapping cone ---------------------------------------------------------

CONE_MINUS_DOMEGA = "d(a,f,w) = (da, df, u(a,f) - dw)"
CONE_PLUS_DOMEGA = "d(a,f,w) = (da, df, -u(a,f) + dw)"


class ConeComplex:
    """s(A^R(p) (+) F_p A -> A^C) in rational coordinates.

    Degree-n piece: R_n (+) Fwin_n (+) A_{n+1}, where R_n is the twisted
    real subspace, Fwin_n the F_p coordinate window (restricted), and the
    last slot the full restricted ambient space one degree up.
    """

    def __init__(self, source, p_user, convention=CONE_MINUS_DOMEGA):
        self.source = source
        self.p_user = p_user
        self.p = -p_user if source.variance == COHOMOLOGICAL else p_user
        self.convention = convention
        self.rspace = {}       # n -> Subspace (twisted real, ambient n)
        self.fidx = {}         # n -> window coordinate indices (ambient n)
        self.dims = {}
        self._diff = {}
        self._build()

    def slot_dims(self, n):
        a = self.source
        ra = self.rspace[n].dim() if n in self.rspace else 0
        rf = len(self.fidx.get(n, ()))
        rc = a.real_dim_n(n + 1)
        return ra, rf, rc

    def degrees(self):
        return sorted(self.dims)

    def dim(self, n):
        return self.dims.get(n, 0)

    def _build(self):
        a, p = self.source, self.p
        degs = a.degrees()
        if not degs:
            return
        for n in range(min(degs) - 1, max(degs) + 1):
            r = twist_eigen_subspace(a, n, p)
            if r.dim():
                self.rspace[n] = r
            fi = a.window_real_indices(n, p, 10 ** 9)
            if fi:
                self.fidx[n] = fi
            total = (r.dim() if r.dim() else 0) + len(fi) + a.real_dim_n(n + 1)
            if total:
                self.dims[n] = total
        for n in self.degrees():
            if self.dim(n - 1):
                self._diff[n] = self._build_diff(n)

    def to_ambient(self, n, coords):
        """(a, f, w) ambient vectors of a cone element in slot coordinates."""
        a = self.source
        ra, rf, rc = self.slot_dims(n)
        acoords, fcoords, wcoords = coords[:ra], coords[ra:ra + rf], coords[ra + rf:]
        avec = self.rspace[n].from_coords(acoords) if ra else [QZERO] * a.real_dim_n(n)
        fvec = [QZERO] * a.real_dim_n(n)
        for t, i in enumerate(self.fidx.get(n, ())):
            fvec[i] = fcoords[t]
        return avec, fvec, list(wcoords)

    def from_ambient(self, n, avec, fvec, wvec):
        a = self.source
        ra, rf, rc = self.slot_dims(n)
        out = []
        if ra:
            cs = self.rspace[n].coords(avec)
            assert cs is not None, "a-slot left the twisted real subspace"
            out.extend(cs)
        else:
            assert not any(avec), "a-slot hit a zero space"
        fidx = self.fidx.get(n, ())
        keep = set(fidx)
        for j, x in enumerate(fvec):
            assert x == 0 or j in keep, "f-slot left the Hodge window"
        out.extend(fvec[i] for i in fidx)
        out.extend(wvec)
        return out

    def _build_diff(self, n):
        a, p = self.source, self.p
        ra, rf, rc = self.slot_dims(n)
        tgt_dim = self.dim(n - 1)
        cols = []
        eye = Matrix.identity(self.dim(n), QQ)
        sign = -1 if self.convention == CONE_MINUS_DOMEGA else 1
        for j in range(self.dim(n)):
            avec, fvec, wvec = self.to_ambient(n, eye.data[j])
            da = op_apply(a, "d", n, avec)
            df = op_apply(a, "d", n, fvec)
            u = [f - x for x, f in zip(avec, fvec)]          # u(a,f) = -a+f
            dw = op_apply(a, "d", n + 1, wvec)
            if sign < 0:
                wpart = [x - y for x, y in zip(u, dw)]
            else:
                wpart = [y - x for x, y in zip(u, dw)]
            cols.append(self.from_ambient(n - 1, da, df, wpart))
        return Matrix(tgt_dim, len(cols),
                      [[c[i] for c in cols] for i in range(tgt_dim)], QQ)

    def chain_complex(self):
        return ChainComplex(dict(self.dims), dict(self._diff))

    def homology(self):
        cc = self.chain_complex()
        out = {}
        for n in self.degrees():
            h = cc.homology_dim(n)
            if h:
                out[self.source.to_user_degree(n)] = (h, cc.homology_basis(n))
        return out

    def homology_dims(self):
        return {n: h for n, (h, _) in self.homology().items()}


def build_cone(a, p_user, validate=True, convention=CONE_MINUS_DOMEGA):
    if validate:
        require_valid(a)
    cone = ConeComplex(a, p_user, convention)
    assert cone.chain_complex().check_d_squared(), "cone differential does not square to zero"
    return cone


# -- the explicit homotopy equivalence -----------------------------------------


class HomotopyEquivalence:
    """The certified maps psi, phi, h between cone and Deligne complex.

    psi[n]: cone_n -> D_n, phi[n]: D_n -> cone_n, h[n]: cone_n -> cone_{n+1},
    all in the canonical bases; convention records the frozen cone sign.
    """

    def __init__(self, cone, deligne, psi, phi, h, convention):
        self.cone = cone
        self.deligne = deligne
        self.psi = psi
        self.phi = phi
        self.h = h
        self.convention = convention


def _psi_vec(cone, n, coords):
    a, p = cone.source, cone.p
    avec, fvec, wvec = cone.to_ambient(n, coords)
    if n >= 2 * p + 1:
        w = window_project(a, n + 1, n - p, n - p, wvec)
        return pi_project(a, n + 1, p + 1, w)
    out = window_project(a, n, p, p, avec)
    comp = block_project(a, n + 1, (p + 1, n - p), wvec)
    comp = op_apply(a, "del", n + 1, comp)
    comp = pi_project(a, n, p, comp)
    return [x + 2 * y for x, y in zip(out, comp)]


def _phi_vec(cone, n, ambient_vec):
    a, p = cone.source, cone.p
    if n >= 2 * p + 1:
        c1 = block_project(a, n + 1, (p + 1, n - p), ambient_vec)
        c1 = op_apply(a, "del", n + 1, c1)
        c2 = block_project(a, n + 1, (n - p, p + 1), ambient_vec)
        c2 = op_apply(a, "delbar", n + 1, c2)
        aslot = [x - y for x, y in zip(c1, c2)]
        fslot = [2 * x for x in c1]
        return aslot, fslot, list(ambient_vec)
    zero_w = [QZERO] * a.real_dim_n(n + 1)
    return list(ambient_vec), list(ambient_vec), zero_w


def _h_vec(cone, n, coords):
    a, p = cone.source, cone.p
    avec, fvec, wvec = cone.to_ambient(n, coords)
    big = 10 ** 9
    if n >= 2 * p + 1:
        t1 = window_project(a, n + 1, big, p, wvec)
        t2 = window_project(a, n + 1, big, n - p, wvec)
        aslot = pi_project(a, n + 1, p, [x + y for x, y in zip(t1, t2)])
        fslot = window_project(a, n + 1, p, big, pi_project(a, n + 1, p + 1, wvec))
        fslot = [-2 * x for x in fslot]
    else:
        t1 = window_project(a, n + 1, big, n - p, wvec)
        aslot = pi_project(a, n + 1, p, t1)
        aslot = [2 * x for x in aslot]
        f1 = window_project(a, n + 1, p, p, wvec)
        f2 = window_project(a, n + 1, n - p, big, pi_project(a, n + 1, p + 1, wvec))
        fslot = [-x - 2 * y for x, y in zip(f1, f2)]
    zero_w = [QZERO] * a.real_dim_n(n + 2)
    return aslot, fslot, zero_w


def _matrix_from_columns(cols, rows):
    return Matrix(rows, len(cols),
                  [[c[i] for c in cols] for i in range(rows)], QQ)


def homotopy_maps(a, p_user, validate=True):
    """Construct and certify psi, phi, h for the frozen cone convention.

    Raises HomotopyIdentityFailure when neither cone sign convention
    satisfies both homotopy identities exactly.
    """
    if validate:
        require_valid(a)
    deligne = DeligneComplex(a, p_user)
    last_error = None
    for convention in (CONE_MINUS_DOMEGA, CONE_PLUS_DOMEGA):
        cone = ConeComplex(a, p_user, convention)
        try:
            eq = _build_and_check(cone, deligne, convention)
            return eq
        except AssertionError as exc:
            last_error = exc
    raise HomotopyIdentityFailure(str(last_error))


def _build_and_check(cone, deligne, convention):
    psi, phi, h = {}, {}, {}
    degs = sorted(set(cone.degrees()) | set(deligne.spaces))
    for n in degs:
        cd = cone.dim(n)
        dd = deligne.dim(n)
        if cd:
            cols = []
            eye = Matrix.identity(cd, QQ)
            tgt = deligne.spaces.get(n)
            for j in range(cd):
                img = _psi_vec(cone, n, eye.data[j])
                if tgt is None:
                    assert not any(img), "psi image missed a zero target"
                    continue
                cs = tgt.coords(img)
                assert cs is not None, "psi image left D_n"
                cols.append(cs)
            psi[n] = _matrix_from_columns(cols, dd) if dd else Matrix.zeros(0, cd, QQ)
        if dd:
            cols = []
            for bv in deligne.spaces[n].basis:
                aslot, fslot, wslot = _phi_vec(cone, n, bv)
                cols.append(cone.from_ambient(n, aslot, fslot, wslot))
            phi[n] = _matrix_from_columns(cols, cone.dim(n))
        if cd and cone.dim(n + 1):
            cols = []
            eye = Matrix.identity(cd, QQ)
            for j in range(cd):
                aslot, fslot, wslot = _h_vec(cone, n, eye.data[j])
                cols.append(cone.from_ambient(n + 1, aslot, fslot, wslot))
            h[n] = _matrix_from_columns(cols, cone.dim(n + 1))

    cc = cone.chain_complex()
    assert cc.check_d_squared(), "cone differential does not square to zero"
    for n in degs:
        dd = deligne.dim(n)
        cd = cone.dim(n)
        # psi . phi = Id on D_n
        if dd:
            prod = psi[n] * phi[n]
            assert prod == Matrix.identity(dd, QQ), "psi.phi != Id at degree %d" % n
        # phi.psi - Id = d h + h d on the cone, checked vectorwise
        if not cd:
            continue
        psi_op = SparseOp(psi[n]) if dd else None
        phi_op = SparseOp(phi[n]) if dd else None
        h_op = SparseOp(h[n]) if n in h else None
        hprev_op = SparseOp(h[n - 1]) if (n - 1) in h else None
        d_n = SparseOp(cc.d(n)) if cone.dim(n - 1) else None
        d_next = SparseOp(cc.d(n + 1)) if cone.dim(n + 1) else None
        eye = Matrix.identity(cd, QQ)
        for j in range(cd):
            v = eye.data[j]
            lhs = [QZERO] * cd
            if dd:
                lhs = phi_op.matvec(psi_op.matvec(v))
            lhs = [x - y for x, y in zip(lhs, v)]
            rhs = [QZERO] * cd
            if h_op is not None and d_next is not None:
                rhs = d_next.matvec(h_op.matvec(v))
            if d_n is not None and hprev_op is not None:
                hd = hprev_op.matvec(d_n.matvec(v))
                rhs = [x + y for x, y in zip(rhs, hd)]
            assert lhs == rhs, "phi.psi - Id != dh + hd at degree %d, column %d" % (n, j)
    return HomotopyEquivalence(cone, deligne, psi, phi, h, convention)
