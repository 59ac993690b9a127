"""Current duals of form complexes, the chain-level pairing between their
Deligne complexes, the wedge action, Poincare regrade, the sign tables of
the duality pairing, and the exceptional duality Gram matrices.

The "topological dual" of a finite model is its plain linear dual: all
spaces here are finite dimensional, where the two notions coincide, and
reports record "separated quotient = full quotient".  Twist normalizations
of integration currents keep the positive real (2 pi)-power as an integer
label on the current while the i-power is folded into the stored
Gaussian-rational coordinates, so reality and twist checks are literal on
stored vectors and the label never becomes a numeric value.
"""

from .exactnum import (
    QI, QQ, Matrix, QZERO, Scalar, Subspace, complex_to_real_vector, i_power,
    real_to_complex_vector,
)
from .dolbeault import (
    BigradedComplex, COHOMOLOGICAL, HOMOLOGICAL, TwistedVector, require_valid,
)
from .deligne import (
    DegreeMismatch, DeligneElement, UnsupportedRegime, build_deligne,
    op_apply, pi_project, window_project,
)

BIG = 10 ** 9


class NoWedgeDefined(Exception):
    pass


class NoFundamentalCurrent(Exception):
    pass


class CurrentElement:
    """Element of the current complex at a stored (homological) degree.

    Coordinates are complex, in the dual bases; twist_power records the
    dropped positive real factor (2 pi)^{-twist_power} of integration
    currents (the i-power is already inside the coordinates).
    """

    __slots__ = ("complex", "degree", "coords", "twist_power")

    def __init__(self, cx, degree, coords, twist_power=0):
        assert len(coords) == cx.dim_n(degree)
        self.complex = cx
        self.degree = degree
        self.coords = [c if isinstance(c, Scalar) else Scalar(c) for c in coords]
        self.twist_power = twist_power

    def real_coords(self):
        return complex_to_real_vector(self.coords)

    def is_zero(self):
        return all(not c for c in self.coords)


def dual_complex(a, validate=True):
    """The current complex of a, with its evaluation PairingData.

    Block (p,q) dualizes to stored block (-p,-q) with the dual basis; the
    differentials are the signed transposes (d T)(phi) = (-1)^deg T(d phi),
    and conjugation is conj . T . sigma (conjugate-transpose blocks).
    """
    if validate:
        require_valid(a)
    support = {(-p, -q): d for (p, q), d in a.support.items()}
    del_maps = {}
    delbar_maps = {}
    sigma_maps = {}
    for (p, q), d in a.support.items():
        m = -(p + q)  # stored degree of currents dual to A_{p,q}
        sign = Scalar(1) if m % 2 == 0 else Scalar(-1)
        src = a.del_maps.get((p + 1, q))
        if src is not None and (p + 1, q) in a.support:
            del_maps[(-p, -q)] = src.transpose().scale(sign)
        src = a.delbar_maps.get((p, q + 1))
        if src is not None and (p, q + 1) in a.support:
            delbar_maps[(-p, -q)] = src.transpose().scale(sign)
        s = a.sigma_maps.get((q, p))
        if s is not None:
            sigma_maps[(-p, -q)] = s.conj().transpose()
    variance = HOMOLOGICAL if a.variance == COHOMOLOGICAL else COHOMOLOGICAL
    b = BigradedComplex(support, del_maps, delbar_maps, sigma_maps,
                        variance=variance, name="dual(%s)" % a.name,
                        geom_dim=a.geom_dim)
    return b, PairingData(a, b)


class PairingData:
    """Evaluation pairing between a form complex and its current dual.

    In the dual bases the per-degree evaluation matrix is the identity up
    to block bookkeeping, hence square and invertible (perfect); the
    adjointness sign <dT, phi> = (-1)^deg <T, d phi> holds by construction
    and is re-checked by check_adjointness.
    """

    def __init__(self, forms, currents):
        self.forms = forms
        self.currents = currents
        self.delta_X = None
        self.deltas = {}
        self._install_distinguished()

    def _install_distinguished(self):
        a, b = self.forms, self.currents
        d = a.geom_dim
        if d is not None:
            top = a.to_internal_bidegree(d, d)
            dual_top = (-top[0], -top[1])
            if a.support.get(top) == 1 and dual_top in b.support:
                deg = dual_top[0] + dual_top[1]
                coords = [QI.zero] * b.dim_n(deg)
                coords[b.offsets(deg)[dual_top]] = i_power(-d)
                self.delta_X = CurrentElement(b, deg, coords, twist_power=d)
        # the point-evaluation current: dual of the unit function
        zero = a.to_internal_bidegree(0, 0)
        if zero in a.support:
            idx = a.wedge.unit_index if a.wedge is not None else 0
            coords = [QI.zero] * b.dim_n(0)
            coords[b.offsets(0)[(0, 0)] + idx] = QI.one
            self.deltas["point"] = CurrentElement(b, 0, coords, twist_power=0)

    def eval_complex(self, t_deg, t_coords, w_coords):
        """<T, w> for T at stored current degree t_deg and w at the dual
        stored form degree -t_deg."""
        a, b = self.forms, self.currents
        m = t_deg
        off_b = b.offsets(m)
        off_a = a.offsets(-m)
        total = Scalar(0)
        for pq in a.blocks(-m):
            dpq = (-pq[0], -pq[1])
            if dpq not in b.support:
                continue
            ob, oa, dim = off_b[dpq], off_a[pq], a.support[pq]
            for k in range(dim):
                t = t_coords[ob + k]
                w = w_coords[oa + k]
                if t and w:
                    total = total + t * w
        return total

    def eval_real(self, t_deg, t_real, w_real):
        return self.eval_complex(t_deg, real_to_complex_vector(t_real),
                                 real_to_complex_vector(w_real))

    def check_perfect(self):
        """Evaluation matrices square and invertible per degree."""
        a, b = self.forms, self.currents
        for m in b.degrees():
            da, db = a.dim_n(-m), b.dim_n(m)
            if da != db:
                return False
            gram = Matrix.zeros(db, da, QI)
            eye_b = Matrix.identity(db, QI)
            eye_a = Matrix.identity(da, QI)
            for i in range(db):
                for j in range(da):
                    gram.data[i][j] = self.eval_complex(m, eye_b.data[i], eye_a.data[j])
            if gram.rank() != da:
                return False
        return True

    def check_adjointness(self):
        """<dT, phi> = (-1)^deg(T) <T, d phi> on every basis pair."""
        a, b = self.forms, self.currents
        for m in b.degrees():
            phi_deg = -(m - 1)          # dT pairs with forms of this degree
            if a.dim_n(phi_deg) == 0 or b.dim_n(m) == 0:
                continue
            sign = Scalar(1) if m % 2 == 0 else Scalar(-1)
            d_b = b.d_matrix(m)
            d_a = a.d_matrix(phi_deg)   # A_{-m+1} -> A_{-m}
            eye_t = Matrix.identity(b.dim_n(m), QI)
            eye_p = Matrix.identity(a.dim_n(phi_deg), QI)
            for i in range(b.dim_n(m)):
                dt = d_b.matvec(eye_t.data[i])
                for j in range(a.dim_n(phi_deg)):
                    lhs = self.eval_complex(m - 1, dt, eye_p.data[j])
                    dphi = d_a.matvec(eye_p.data[j])
                    rhs = sign * self.eval_complex(m, eye_t.data[i], dphi)
                    if lhs != rhs:
                        return False
        return True

    def double_dual_is_identity(self):
        """Dualizing twice composes evaluation matrices to the identity."""
        bb, inner = dual_complex(self.currents, validate=False)
        a = self.forms
        for pq, d in a.support.items():
            if bb.support.get(pq) != d:
                return False
        return True


def wedge_action(omega, t):
    """(omega ^ T)(eta) = T(eta ^ omega); bidegrees subtract, the twist
    label is carried through unchanged."""
    a = omega.complex
    b = t.complex
    if a.wedge is None:
        raise NoWedgeDefined("model %r has no multiplicative structure" % (a.name,))
    w = a.wedge
    u = omega.internal_degree()
    m = t.degree
    out_deg = m + u
    out = [Scalar(0)] * b.dim_n(out_deg)
    off_out = b.offsets(out_deg)
    off_o = a.offsets(u)
    off_t = b.offsets(m)
    for RS in b.blocks(out_deg):
        eb = (-RS[0], -RS[1])           # test-form block
        if eb not in a.support:
            continue
        dk = a.support[eb]
        for ablk in a.blocks(u):
            tgt_e = (eb[0] + ablk[0], eb[1] + ablk[1])
            dual_blk = (-tgt_e[0], -tgt_e[1])
            if tgt_e not in a.support or dual_blk not in b.support:
                continue
            mats = w.table.get((eb, ablk))
            if mats is None:
                continue
            do, dt_ = a.support[ablk], a.support[tgt_e]
            for k in range(dk):
                mk = mats[k]
                acc = Scalar(0)
                for i in range(do):
                    ci = omega.coords[off_o[ablk] + i]
                    if not ci:
                        continue
                    col = mk.column(i)
                    for l in range(dt_):
                        if col[l]:
                            tv = t.coords[off_t[dual_blk] + l]
                            if tv:
                                acc = acc + ci * col[l] * tv
                if acc:
                    out[off_out[RS] + k] = out[off_out[RS] + k] + acc
    return CurrentElement(b, out_deg, out, twist_power=t.twist_power)


def current_of_form(omega, pairing):
    """[omega] = omega ^ delta_X; a chain map (d[omega] = [d omega] on the
    nose with these conventions) respecting the twist bookkeeping."""
    if pairing.delta_X is None:
        raise NoFundamentalCurrent("model %r has no fundamental current"
                                   % (pairing.forms.name,))
    return wedge_action(omega, pairing.delta_X)


def regrade_table(current_deligne_tables, d):
    """Relabel (n, p) homological entries as (2d-n, d-p) cohomological ones.

    Pure bookkeeping: dims are carried over unchanged.
    """
    out = {}
    for (n, p), dims in current_deligne_tables.items():
        out[(2 * d - n, d - p)] = dims
    return out


def regrade(pairing, d, p_window):
    """Cohomological relabels of the tempered Deligne homology tables.

    For an equidimensional model of declared dimension d, the current
    complex is regraded by (n, p) -> (2d-n, d-p); homology dimensions are
    preserved on the nose because nothing but labels changes.
    """
    table = {}
    for p in p_window:
        dcur = build_deligne(pairing.currents, p, validate=False)
        cc = dcur.chain_complex()
        for n in dcur.spaces:
            h = cc.homology_dim(n)
            if h:
                table[(n, p)] = h
    return {"homological": table, "cohomological": regrade_table(table, d)}


# -- Deligne-level pairing ----------------------------------------------------


def deligne_pairing(x, t, pairing):
    """T(omega) for omega in D^n(E,p) and T in D_{n-1}(D,p-1); exact and
    rational (asserts that no imaginary part survives)."""
    dx, dt = x.complex, t.complex
    n, p = x.degree, dx.p_user
    if t.degree != n - 1 or dt.p_user != p - 1:
        raise DegreeMismatch("pairing needs (n,p) against (n-1,p-1); got "
                             "(%s,%s) vs (%s,%s)" % (n, p, t.degree, dt.p_user))
    m_f = dx.ambient_degree(x.internal_degree())
    m_c = dt.ambient_degree(t.internal_degree())
    assert m_c == -m_f, "ambient degrees not dual (regimes out of step)"
    w = real_to_complex_vector(x.ambient())
    tv = real_to_complex_vector(t.ambient())
    val = pairing.eval_complex(m_c, tv, w)
    assert val.is_rational(), "twisted pairing produced an imaginary part"
    return val.re


def deligne_pairing_gram(dform, n, dcur, pairing):
    """Chain-level Gram matrix of D^n(E,p) x D_{n-1}(D,p-1)."""
    nf = -n if dform.source.variance == COHOMOLOGICAL else n
    nc = n - 1 if dcur.source.variance == HOMOLOGICAL else -(n - 1)
    rows = dform.dim(nf)
    cols = dcur.dim(nc)
    gram = Matrix.zeros(rows, cols, QQ)
    for i in range(rows):
        xi = DeligneElement(dform, n, [QQ.one if k == i else QQ.zero for k in range(rows)])
        for j in range(cols):
            tj = DeligneElement(dcur, n - 1, [QQ.one if k == j else QQ.zero for k in range(cols)])
            gram.data[i][j] = deligne_pairing(xi, tj, pairing)
    return gram


def pairing_is_perfect(dform, n, dcur, pairing):
    g = deligne_pairing_gram(dform, n, dcur, pairing)
    return g.rows == g.cols and (g.rows == 0 or g.rank() == g.rows)


# -- the regime-table product -------------------------------------------------


class BilinearStructure:
    """A bilinear multiplication on stored complexes with additive stored
    bidegrees: the wedge of forms, or the action of forms on currents."""

    def __init__(self, src1, src2, dst, mul_real, symmetric=False):
        self.src1 = src1
        self.src2 = src2
        self.dst = dst
        self.mul_real = mul_real        # (deg1, vec1, deg2, vec2) -> vec
        self.symmetric = symmetric


def form_form_bilinear(a):
    if a.wedge is None:
        raise NoWedgeDefined(a.name)

    def mul(d1, v1, d2, v2):
        x = TwistedVector(a, a.to_user_degree(d1), real_to_complex_vector(v1))
        y = TwistedVector(a, a.to_user_degree(d2), real_to_complex_vector(v2))
        return complex_to_real_vector(a.wedge.wedge_vec(x, y).coords)

    return BilinearStructure(a, a, a, mul, symmetric=True)


def form_current_bilinear(a, b):
    if a.wedge is None:
        raise NoWedgeDefined(a.name)

    def mul(d1, v1, d2, v2):
        x = TwistedVector(a, a.to_user_degree(d1), real_to_complex_vector(v1))
        t = CurrentElement(b, d2, real_to_complex_vector(v2))
        return complex_to_real_vector(wedge_action(x, t).coords)

    return BilinearStructure(a, b, b, mul, symmetric=False)


def _r_vec(cx, n, s, ambient_vec):
    """r_s of an upper-regime element (ambient degree n+1): 2 pi_s(F_s d x)."""
    w = op_apply(cx, "d", n + 1, ambient_vec)
    w = window_project(cx, n, s, BIG, w)
    w = pi_project(cx, n, s, w)
    return [2 * v for v in w]


def _block_component(cx, n, pq, vec):
    keep = set(cx.block_real_indices(n, pq))
    return [v if i in keep else QZERO for i, v in enumerate(vec)]


def _lul_sign(a, b):
    """Sign of the symmetrized del-correction in the (L,U,L) product case;
    (-1)^{ab} is what the certification grid pins once the wedge order
    (upper factor first) is commuted to ours (lower factor first)."""
    return 1 if (a * b) % 2 == 0 else -1


def _ull_swap_sign(a, b):
    """Graded-commutativity sign used to transport (U,L,L) products through
    the (L,U,L) case; degrees are the Deligne-complex ones."""
    return 1 if (a * b) % 2 == 0 else -1


def deligne_product(x, y, bil, target):
    """Chain-level product/action per the certified regime table.

    x in D_a(M,s), y in D_b(M',t) (internal homological degrees/weights)
    multiply into D_{a+b}(M'',s+t).  Cases, by (regime of x, regime of y,
    regime of the target), L meaning n <= 2p:

      (L,L,L)  x ^ y
      (U,U,U)  (-1)^a r_s(x) ^ y + x ^ r_t(y)
      (L,U,L)  x ^ r_t(y) + (-1)^a 2 del[(x ^ y)_{(s+t+1, a+b-s-t)}]
      (L,U,U) and (U,L,U)  F-projected wedge F_{K,K}(x ^ y), K = a+b-s-t
      (U,L,L)  commutativity transport (symmetric structures only)

    Combinations outside the table raise UnsupportedRegime.
    """
    dx, dy = x.complex, y.complex
    a = x.internal_degree()
    b = y.internal_degree()
    s, t = dx.p, dy.p
    rx = "L" if a <= 2 * s else "U"
    ry = "L" if b <= 2 * t else "U"
    rt = "L" if a + b <= 2 * (s + t) else "U"
    key = (rx, ry, rt)
    cx1, cx2, cxo = bil.src1, bil.src2, bil.dst
    xa, ya = x.ambient(), y.ambient()
    amb_x = a if rx == "L" else a + 1
    amb_y = b if ry == "L" else b + 1

    if key == ("L", "L", "L"):
        out = bil.mul_real(amb_x, xa, amb_y, ya)
    elif key == ("U", "U", "U"):
        r1 = _r_vec(cx1, a, s, xa)
        t1 = bil.mul_real(a, r1, amb_y, ya)
        r2 = _r_vec(cx2, b, t, ya)
        t2 = bil.mul_real(amb_x, xa, b, r2)
        sign = 1 if a % 2 == 0 else -1
        out = [sign * u + v for u, v in zip(t1, t2)]
    elif key == ("L", "U", "L"):
        r2 = _r_vec(cx2, b, t, ya)
        t1 = bil.mul_real(amb_x, xa, b, r2)
        w = bil.mul_real(amb_x, xa, amb_y, ya)      # ambient a+b+1
        k = a + b - s - t
        c1 = _block_component(cxo, a + b + 1, (s + t + 1, k), w)
        c1 = op_apply(cxo, "del", a + b + 1, c1)
        c2 = _block_component(cxo, a + b + 1, (k, s + t + 1), w)
        c2 = op_apply(cxo, "delbar", a + b + 1, c2)
        # conjugation-symmetrized correction: evaluation against windowed
        # currents sees only the del half of it
        sign = _lul_sign(a, b)
        out = [u + sign * (v1 - v2) for u, v1, v2 in zip(t1, c1, c2)]
    elif key in (("L", "U", "U"), ("U", "L", "U")):
        w = bil.mul_real(amb_x, xa, amb_y, ya)
        k = a + b - s - t
        out = window_project(cxo, a + b + 1, k, k, w)
        if key[0] == "L" and a % 2:
            # the cone-level product puts the lower factor against the
            # shifted slot with a degree sign
            out = [-v for v in out]
    elif key == ("U", "L", "L") and bil.symmetric:
        swapped = deligne_product(y, x, bil, target)
        sign = _ull_swap_sign(a, b)
        return DeligneElement(target, swapped.degree,
                              [sign * c for c in swapped.coords])
    else:
        raise UnsupportedRegime("product regime %s is not in the table" % (key,))

    n_t = a + b
    sp = target.spaces.get(n_t)
    if sp is None or sp.dim() == 0:
        assert not any(out), "product missed a zero target space"
        return DeligneElement(target, target.to_user_degree(n_t), [])
    cs = sp.coords(out)
    assert cs is not None, "product left the Deligne subspace (regime %s)" % (key,)
    return DeligneElement(target, target.to_user_degree(n_t), cs)


# -- sign tables of the duality pairing -----------------------------------------


class SignReport:
    """Outcome of a sign-table scan: per-regime hit counts and violations."""

    def __init__(self, name):
        self.name = name
        self.hits = {}
        self.nonzero = {}
        self.violations = []

    def record(self, regime, ok, value_nonzero):
        self.hits[regime] = self.hits.get(regime, 0) + 1
        if value_nonzero:
            self.nonzero[regime] = self.nonzero.get(regime, 0) + 1
        if not ok:
            self.violations.append(regime)

    def passed(self, required_regimes):
        return (not self.violations
                and all(self.hits.get(r, 0) > 0 for r in required_regimes)
                and all(self.nonzero.get(r, 0) > 0 for r in required_regimes))


def check_pairing_differential_signs(forms, currents, pairing, p_range, n_range):
    """T(d omega) = (-1)^{n+1} (dT)(omega) for n <= 2p-1, (-1)^n above.

    omega runs over bases of D^n(E,p), T over D_n(D,p-1); both regimes must
    be exercised with a nonzero pairing value somewhere in the window.
    """
    report = SignReport("differential-signs")
    dcache = {}

    def dcx(cx, p):
        key = (id(cx), p)
        if key not in dcache:
            dcache[key] = build_deligne(cx, p, validate=False)
        return dcache[key]

    for p in p_range:
        dform = dcx(forms, p)
        dcur = dcx(currents, p - 1)
        for n in n_range:
            nf = -n
            nc = n
            if dform.dim(nf) == 0 or dcur.dim(nc) == 0:
                continue
            regime = "n<=2p-1" if n <= 2 * p - 1 else "n>=2p"
            if n <= 2 * p - 1:
                sign = 1 if (n + 1) % 2 == 0 else -1
            else:
                sign = 1 if n % 2 == 0 else -1
            for i in range(dform.dim(nf)):
                om = DeligneElement(dform, n,
                                    [QQ.one if k == i else QQ.zero
                                     for k in range(dform.dim(nf))])
                dom = om.d()        # D^{n+1}(E,p)
                for j in range(dcur.dim(nc)):
                    tt = DeligneElement(dcur, n,
                                        [QQ.one if k == j else QQ.zero
                                         for k in range(dcur.dim(nc))])
                    dtt = tt.d()    # D_{n-1}(D,p-1)
                    lhs = deligne_pairing(dom, tt, pairing)
                    rhs = deligne_pairing(om, dtt, pairing)
                    ok = lhs == sign * rhs
                    report.record(regime, ok, bool(lhs) or bool(rhs))
    return report


def check_pairing_action_signs(forms, currents, pairing, p_range, q_range, n_range, m_range):
    """(omega . T)(eta) = +/- T(eta . omega) in the four sign regimes.

    Constraints n - m + l = 1 and p - q + r = 1 are enforced; the sign is
      (-1)^n   for m > 2q, l >= 2r      +1        for m <= 2q, l < 2r
      (-1)^{m-1} for m > 2q, l < 2r     (-1)^l    for m <= 2q, l >= 2r.
    Regime combinations outside the product table are skipped
    (UnsupportedRegime), never guessed.
    """
    report = SignReport("action-signs")
    ff = form_form_bilinear(forms)
    fc = form_current_bilinear(forms, currents)
    dcache = {}

    def dcx(cx, p):
        key = (id(cx), p)
        if key not in dcache:
            dcache[key] = build_deligne(cx, p, validate=False)
        return dcache[key]

    for p in p_range:
        for q in q_range:
            r = 1 + q - p
            for n in n_range:
                for m in m_range:
                    l = 1 + m - n
                    dform_n = dcx(forms, p)
                    dcur_m = dcx(currents, q)
                    dform_l = dcx(forms, r)
                    if (dform_n.dim(-n) == 0 or dcur_m.dim(m) == 0
                            or dform_l.dim(-l) == 0):
                        continue
                    dact = dcx(currents, q - p)
                    dprod = dcx(forms, r + p)
                    regime = ("m>2q" if m > 2 * q else "m<=2q",
                              "l>=2r" if l >= 2 * r else "l<2r")
                    if regime == ("m>2q", "l>=2r"):
                        sign = 1 if n % 2 == 0 else -1
                    elif regime == ("m<=2q", "l<2r"):
                        sign = 1
                    elif regime == ("m>2q", "l<2r"):
                        sign = 1 if (m - 1) % 2 == 0 else -1
                    else:
                        sign = 1 if l % 2 == 0 else -1
                    for i in range(dform_n.dim(-n)):
                        om = DeligneElement(dform_n, n,
                                            [QQ.one if kk == i else QQ.zero
                                             for kk in range(dform_n.dim(-n))])
                        for j in range(dcur_m.dim(m)):
                            tt = DeligneElement(dcur_m, m,
                                                [QQ.one if kk == j else QQ.zero
                                                 for kk in range(dcur_m.dim(m))])
                            try:
                                omt = deligne_product(om, tt, fc, dact)
                            except UnsupportedRegime:
                                continue
                            for k in range(dform_l.dim(-l)):
                                eta = DeligneElement(dform_l, l,
                                                     [QQ.one if kk == k else QQ.zero
                                                      for kk in range(dform_l.dim(-l))])
                                try:
                                    etaom = deligne_product(eta, om, ff, dprod)
                                except UnsupportedRegime:
                                    continue
                                lhs = deligne_pairing(eta, omt, pairing)
                                rhs = deligne_pairing(etaom, tt, pairing)
                                ok = lhs == sign * rhs
                                report.record(regime, ok, bool(lhs) or bool(rhs))
    return report


# -- Poincare isomorphism and exceptional duality ------------------------------


def poincare_iso_check(forms, currents, pairing, p_range):
    """For each (n,p) in the window: [.], pushed through the Deligne
    functor, must induce an isomorphism H^n_D(X,R(p)) -> H_{2d-n}(X,R(d-p)).

    Returns {(n,p): (dim_form_H, dim_cur_H, induced_rank, ok)}.
    """
    d = forms.geom_dim
    if pairing.delta_X is None:
        raise NoFundamentalCurrent(forms.name)
    out = {}
    for p in p_range:
        dform = build_deligne(forms, p, validate=False)
        dcur = build_deligne(currents, d - p, validate=False)
        ccf = dform.chain_complex()
        ccc = dcur.chain_complex()
        degs = sorted({-nf for nf in dform.spaces} | {2 * d - nc for nc in dcur.spaces})
        for n in degs:
            nf, nc = -n, 2 * d - n
            hf = ccf.homology_dim(nf) if dform.dim(nf) else 0
            hc = ccc.homology_dim(nc) if dcur.dim(nc) else 0
            if hf == 0 and hc == 0:
                out[(n, p)] = (0, 0, 0, True)
                continue
            reps = ccf.homology_basis(nf) if dform.dim(nf) else []
            imgs = []
            m_f = dform.ambient_degree(nf)
            for rep in reps:
                amb = dform.spaces[nf].from_coords(rep)
                tw = TwistedVector(forms, forms.to_user_degree(m_f),
                                   real_to_complex_vector(amb))
                cur = wedge_action(tw, pairing.delta_X)
                rc = complex_to_real_vector(cur.coords)
                sp = dcur.spaces.get(nc)
                assert sp is not None and sp.coords(rc) is not None, \
                    "current of a Deligne form left the dual Deligne space"
                imgs.append(sp.coords(rc))
            bnd = ccc.boundaries(nc)
            span = Subspace.from_vectors(dcur.dim(nc), imgs + bnd.basis, QQ)
            rank = span.dim() - bnd.dim()
            out[(n, p)] = (hf, hc, rank, hf == hc and rank == hf)
    return out


class GramReport:
    """Gram matrix of an induced homology pairing with its verdict."""

    def __init__(self, n, p, matrix, left_dim, right_dim):
        self.n = n
        self.p = p
        self.matrix = matrix
        self.left_dim = left_dim
        self.right_dim = right_dim

    def perfect(self):
        if self.left_dim != self.right_dim:
            return False
        if self.left_dim == 0:
            return True          # vacuously perfect
        return self.matrix.rank() == self.left_dim

    def __repr__(self):
        return "GramReport(n=%d, p=%d, %dx%d, %s)" % (
            self.n, self.p, self.left_dim, self.right_dim,
            "perfect" if self.perfect() else "degenerate")


def exceptional_duality(forms, currents, pairing, n, p):
    """Gram matrix of H^n_D(X,R(p)) x H^{2d-n+1}_D(X,R(d-p+1)) -> R.

    The second factor is realized through Poincare duality as the tempered
    Deligne homology H_{n-1}(X,R(p-1)) and paired at chain level on
    homology representatives.
    """
    dform = build_deligne(forms, p, validate=False)
    dcur = build_deligne(currents, p - 1, validate=False)
    ccf, ccc = dform.chain_complex(), dcur.chain_complex()
    nf, nc = -n, n - 1
    hf = ccf.homology_dim(nf) if dform.dim(nf) else 0
    hc = ccc.homology_dim(nc) if dcur.dim(nc) else 0
    reps_f = ccf.homology_basis(nf) if hf else []
    reps_c = ccc.homology_basis(nc) if hc else []
    gram = Matrix.zeros(hf, hc, QQ)
    for i, rf in enumerate(reps_f):
        x = DeligneElement(dform, n, rf)
        for j, rc in enumerate(reps_c):
            t = DeligneElement(dcur, n - 1, rc)
            gram.data[i][j] = deligne_pairing(x, t, pairing)
    return GramReport(n, p, gram, hf, hc)
