"""Green objects over Deligne-complex diagrams: truncated classes, the
cycle-class map on the cone of restriction, the Green criterion solved as
an affine linear system, the a/omega/h maps, and the star product.

A diagram context holds an ambient Deligne complex, a single complement
complex with a restriction chain map (a colimit over all supports adds
nothing testable at finite scale, so one caller-chosen complement stands
in for it), and the class degree 2p.  A
truncated class is a pair (omega, g~) with omega closed of class degree
and g~ a representative one degree up on the complement satisfying
d g~ = omega restricted; quotients by im d are taken where classes are
compared, never eagerly.
"""

from .exactnum import (
    QQ, Matrix, Scalar, Subspace, complex_to_real_vector, real_to_complex_vector,
)
from .dolbeault import TwistedVector
from .deligne import DegreeMismatch, DeligneElement, deligne_map
from .duality import CurrentElement, NoWedgeDefined, wedge_action
from .chain import cone_of_chain_map


class DiagramContext:
    """Ambient Deligne complex, complement, restriction; class degree 2p.

    The ambient and complement are Dolbeault complexes; restriction is a
    DolbeaultMap between them (a zero complement is legal).  For jet
    contexts whose complement currents are duals of an included ideal of
    forms, complement_inclusion carries that inclusion so ambient forms
    can act on complement currents.
    """

    def __init__(self, ambient_cx, complement_cx, restriction, p, labels="",
                 complement_inclusion=None):
        self.p = p
        self.labels = labels
        self.ambient_cx = ambient_cx
        self.complement_cx = complement_cx
        self.restriction = restriction
        self.complement_inclusion = complement_inclusion
        self.dambient, self.dcomp, self.rho = deligne_map(restriction, p)
        self.m0 = self.dambient.source.to_internal_degree(2 * p)
        self._cone = None
        self._chains = None

    def class_degree(self):
        return 2 * self.p

    def chains(self):
        if self._chains is None:
            self._chains = (self.dambient.chain_complex(),
                            self.dcomp.chain_complex())
        return self._chains

    def cone(self):
        """Cone of the restriction: the diagram's support homology."""
        if self._cone is None:
            ca, cu = self.chains()
            self._cone = cone_of_chain_map(self.rho, ca, cu)
        return self._cone

    def rho_mat(self, n):
        m = self.rho.get(n)
        if m is None:
            return Matrix.zeros(self.dcomp.dim(n), self.dambient.dim(n), QQ)
        return m

    def delta_from_current(self, cur):
        """Coordinates of a closed ambient current in D_{2p}(ambient).

        Raises DegreeMismatch when the degree or the twist window does not
        match the class degree.
        """
        m_amb = self.dambient.ambient_degree(self.m0)
        if cur.degree != m_amb:
            raise DegreeMismatch("current lives at degree %d, class ambient is %d"
                                 % (cur.degree, m_amb))
        sp = self.dambient.spaces.get(self.m0)
        rc = cur.real_coords()
        cs = sp.coords(rc) if sp and sp.dim() else None
        if cs is None:
            raise DegreeMismatch("current is not in the (degree, weight) window")
        ca = self.chains()[0]
        if ca.dim(self.m0 - 1):
            assert not any(ca.d(self.m0).matvec(cs)), "delta current is not closed"
        return cs


def class_coordinates(cc, n, cycle):
    """Homology-class coordinates of a cycle in the deterministic basis."""
    if cc.dim(n) == 0:
        return []
    assert not any(cc.d(n).matvec(cycle)), "class of a non-cycle requested"
    reps = cc.homology_basis(n)
    if not reps:
        return []
    bnd = cc.boundaries(n)
    cols = [list(r) for r in reps] + [list(b) for b in bnd.basis]
    m = Matrix(cc.dim(n), len(cols),
               [[c[i] for c in cols] for i in range(cc.dim(n))], QQ)
    x = m.solve(cycle)
    assert x is not None, "cycle outside cycles+boundaries span"
    return x[:len(reps)]


class TruncatedClass:
    """(omega, g~) with omega closed of class degree and d g~ = omega|."""

    def __init__(self, context, omega_coords, g_coords, check=True):
        self.context = context
        m0 = context.m0
        self.omega = list(omega_coords)
        self.g = list(g_coords)
        assert len(self.omega) == context.dambient.dim(m0)
        assert len(self.g) == context.dcomp.dim(m0 + 1)
        if check:
            ca, cu = context.chains()
            if ca.dim(m0 - 1):
                assert not any(ca.d(m0).matvec(self.omega)), "omega not closed"
            if context.dcomp.dim(m0):
                lhs = cu.d(m0 + 1).matvec(self.g)
                rhs = context.rho_mat(m0).matvec(self.omega)
                assert lhs == rhs, "d g~ != omega restricted to the complement"

    def is_zero(self):
        return not any(self.omega) and not any(self.g)

    def add(self, other):
        assert self.context is other.context
        return TruncatedClass(self.context,
                              [a + b for a, b in zip(self.omega, other.omega)],
                              [a + b for a, b in zip(self.g, other.g)],
                              check=False)


class GreenObject:
    """A truncated class together with its target cycle current."""

    def __init__(self, tc, delta_coords):
        self.tc = tc
        self.delta = list(delta_coords)
        assert len(self.delta) == tc.context.dambient.dim(tc.context.m0)


class GreenVerdict:
    __slots__ = ("green", "witness", "obstruction")

    def __init__(self, green, witness=None, obstruction=None):
        self.green = green
        self.witness = witness
        self.obstruction = obstruction

    def __repr__(self):
        if self.green:
            return "GREEN"
        return "NOT-GREEN(obstruction=%s)" % (self.obstruction,)


def class_map(tc):
    """Class of (omega, g~) in H_{2p} of the cone of restriction."""
    ctx = tc.context
    cc = ctx.cone()
    m0 = ctx.m0
    if cc.dim(m0) == 0:
        return []
    vec = list(tc.omega) + list(tc.g)
    return class_coordinates(cc, m0, vec)


def is_green_for(tc, delta_coords):
    """The Green criterion: find gamma~ with d gamma~ + delta_y = omega and
    gamma~ restricted = g~ modulo im d; certificate either way.

    GREEN returns the witness gamma~ (coordinates in D_{2p+1}(ambient));
    NOT-GREEN returns the homology class of (omega - delta_y, g~) on the
    cone, the obstruction to cl(g) = cl(y).
    """
    ctx = tc.context
    m0 = ctx.m0
    da, dcp = ctx.dambient, ctx.dcomp
    if len(delta_coords) != da.dim(m0):
        raise DegreeMismatch("delta_y must live in degree %d, weight %d"
                             % (ctx.class_degree(), ctx.p))
    ca, cu = ctx.chains()
    if ca.dim(m0 - 1):
        assert not any(ca.d(m0).matvec(list(delta_coords))), "delta_y not closed"
    n_gamma = da.dim(m0 + 1)
    n_mu = dcp.dim(m0 + 2)
    rows_a = da.dim(m0)
    rows_b = dcp.dim(m0 + 1)
    m = Matrix.zeros(rows_a + rows_b, n_gamma + n_mu, QQ)
    d_amb = ca.d(m0 + 1)
    for i in range(rows_a):
        row = m.data[i]
        for j in range(n_gamma):
            row[j] = d_amb.data[i][j]
    rho_up = ctx.rho_mat(m0 + 1)
    d_comp = cu.d(m0 + 2)
    for i in range(rows_b):
        row = m.data[rows_a + i]
        for j in range(n_gamma):
            row[j] = rho_up.data[i][j]
        for j in range(n_mu):
            row[n_gamma + j] = -d_comp.data[i][j]
    target = [o - d for o, d in zip(tc.omega, delta_coords)] + list(tc.g)
    sol = m.solve(target)
    if sol is not None:
        return GreenVerdict(True, witness=sol[:n_gamma])
    shifted = TruncatedClass(ctx, [o - d for o, d in zip(tc.omega, delta_coords)],
                             tc.g, check=False)
    return GreenVerdict(False, obstruction=class_map(shifted))


def a_map(ctx, eta_coords):
    """a(eta~) = (d eta, eta~ restricted), a truncated class on zero cycle."""
    m0 = ctx.m0
    if len(eta_coords) != ctx.dambient.dim(m0 + 1):
        raise DegreeMismatch("a_map input must live one degree above the class degree")
    ca, _ = ctx.chains()
    omega = ca.d(m0 + 1).matvec(list(eta_coords)) if ctx.dambient.dim(m0) else []
    g = ctx.rho_mat(m0 + 1).matvec(list(eta_coords)) if ctx.dcomp.dim(m0 + 1) else []
    return TruncatedClass(ctx, omega, g)


def omega_map(tc):
    return list(tc.omega)


def h_map(ctx, alpha_coords):
    """h(alpha) = [alpha] in H_{2p} of the ambient Deligne complex."""
    return class_coordinates(ctx.chains()[0], ctx.m0, list(alpha_coords))


# -- star product ---------------------------------------------------------------


class StarResult:
    """Truncated class on the union-complement diagram, slots per the
    assembled expansion: g~ = ((A, B), C) with the tilde on the last slot."""

    def __init__(self, omega, a_slot, b_slot, c_slot, context):
        self.omega = omega
        self.a_slot = a_slot
        self.b_slot = b_slot
        self.c_slot = c_slot
        self.context = context

    def validity(self):
        """Cycle conditions of (omega, ((A,B),C)) on the combined diagram:
        omega closed, dA = omega| = dB, and A - B - dC exact on the
        complement (the in-homology statement of d g~ = omega)."""
        ctx = self.context
        m0 = ctx.m0
        ca, cu = ctx.chains()
        omega_closed = not ca.dim(m0 - 1) or not any(ca.d(m0).matvec(self.omega))
        if cu.dim(m0):
            rho_om = ctx.rho_mat(m0).matvec(self.omega)
            ok_a = cu.d(m0 + 1).matvec(self.a_slot) == rho_om
            ok_b = cu.d(m0 + 1).matvec(self.b_slot) == rho_om
        else:
            ok_a = ok_b = True
        if cu.dim(m0 + 1):
            dc = cu.d(m0 + 2).matvec(self.c_slot) if cu.dim(m0 + 2) else \
                [QQ.zero] * cu.dim(m0 + 1)
            resid = [a - b - c for a, b, c in zip(self.a_slot, self.b_slot, dc)]
            if any(resid):
                bnd = cu.boundaries(m0 + 1)
                ok_c = Subspace.from_vectors(
                    cu.dim(m0 + 1), bnd.basis + [resid], QQ).dim() == bnd.dim()
            else:
                ok_c = True
        else:
            ok_c = True
        return {"omega_closed": omega_closed, "dA": ok_a, "dB": ok_b,
                "A-B-dC exact": ok_c,
                "valid": omega_closed and ok_a and ok_b and ok_c}


def _deligne_ambient_form(dcx, degree_user, coords):
    """TwistedVector of a form-side Deligne element's ambient vector."""
    el = DeligneElement(dcx, degree_user, coords)
    forms = dcx.source
    m = dcx.ambient_degree(el.internal_degree())
    return TwistedVector(forms, forms.to_user_degree(m),
                         real_to_complex_vector(el.ambient()))


def _deligne_ambient_current(dcx, n_int, coords):
    sp = dcx.spaces.get(n_int)
    cx = dcx.source
    m = dcx.ambient_degree(n_int)
    if sp is None or sp.dim() == 0:
        amb = [QQ.zero] * cx.real_dim_n(m)
    else:
        amb = sp.from_coords(coords)
    return CurrentElement(cx, m, real_to_complex_vector(amb))


def _into_deligne(dcx, n_int, cur):
    """Coordinates of an ambient current in a Deligne space (must belong)."""
    sp = dcx.spaces.get(n_int)
    rc = complex_to_real_vector(cur.coords)
    if sp is None or sp.dim() == 0:
        assert not any(rc), "star slot missed a zero Deligne space"
        return []
    cs = sp.coords(rc)
    assert cs is not None, "star slot left its Deligne space"
    return cs


def module_action(forms, incl, omega_tv, t):
    """Ambient forms acting on currents dual to an included ideal of forms:
    (omega ^ T)(eta) = T(iota(eta) ^ omega), the product re-expressed in
    the ideal's basis."""
    if forms.wedge is None:
        raise NoWedgeDefined(forms.name)
    sub = incl.src
    dualM = t.complex
    u = omega_tv.internal_degree()
    m = t.degree
    out_deg = m + u
    test_deg = -out_deg
    out = [Scalar(0)] * dualM.dim_n(out_deg)
    off_out = dualM.offsets(out_deg)
    for RS in dualM.blocks(out_deg):
        eb = (-RS[0], -RS[1])
        if eb not in sub.support:
            continue
        incb = incl.blocks[eb]
        off_eb = forms.offsets(test_deg)[eb]
        for k in range(sub.support[eb]):
            eta_coords = [Scalar(0)] * forms.dim_n(test_deg)
            col = incb.column(k)
            for i, c in enumerate(col):
                if c:
                    eta_coords[off_eb + i] = c
            eta = TwistedVector(forms, forms.to_user_degree(test_deg), eta_coords)
            prod = forms.wedge.wedge_vec(eta, omega_tv)     # degree -m
            acc = Scalar(0)
            for mblk in sub.blocks(-m):
                dual_blk = (-mblk[0], -mblk[1])
                if dual_blk not in dualM.support:
                    continue
                incp = incl.blocks[mblk]
                off_e = forms.offsets(-m)[mblk]
                seg = prod.coords[off_e:off_e + forms.support[mblk]]
                coords_m = incp.solve(seg)
                assert coords_m is not None, "ideal product left the subcomplex"
                off_t = dualM.offsets(m)[dual_blk]
                for l, cm in enumerate(coords_m):
                    if cm:
                        tv = t.coords[off_t + l]
                        if tv:
                            acc = acc + cm * tv
            if acc:
                out[off_out[RS] + k] = acc
    return CurrentElement(dualM, out_deg, out, twist_power=t.twist_power)


def star_product(gw, gv, pullback=None):
    """g_W *_f g_V = f* g_W * g_V, assembled slotwise.

    gw lives over a form-side context, gv over a current-side context on
    the same underlying space; pullback (identity when None) is a chain
    algebra map of the form complex.  Slots, all ambient wedge actions:

      omega = f*(omega_W) ^ omega_V
      A = (f*(gamma_W) ^ omega_V)|        B = f*(omega_W) ^ g_V
      C = del f*(gamma_W)^g_V - delbar f*(gamma_W)^g_V
          - f*(gamma_W)^del g_V + f*(gamma_W)^delbar g_V

    where gamma_W is the certified global Green-criterion witness of gw.  The
    omega slot is by construction the wedge of the omega slots.
    """
    fctx, vctx = gw.tc.context, gv.tc.context
    forms = fctx.dambient.source
    if forms.wedge is None:
        raise NoWedgeDefined(forms.name)
    verdict = is_green_for(gw.tc, gw.delta)
    assert verdict.green, "star product needs a Green first factor"

    def pull(tv):
        if pullback is None:
            return tv
        n = tv.internal_degree()
        return TwistedVector(forms, tv.degree,
                             pullback.degree_matrix(n).matvec(tv.coords))

    om_w = pull(_deligne_ambient_form(fctx.dambient, 2 * fctx.p, gw.tc.omega))
    gamma = pull(_deligne_ambient_form(fctx.dambient, 2 * fctx.p - 1,
                                       verdict.witness))
    om_v = _deligne_ambient_current(vctx.dambient, vctx.m0, gv.tc.omega)
    gv_comp = _deligne_ambient_current(vctx.dcomp, vctx.m0 + 1, gv.tc.g)

    e = vctx.p - fctx.p
    target = DiagramContext(vctx.ambient_cx, vctx.complement_cx, vctx.restriction,
                            e, labels="union-complement(%s,%s)" % (fctx.labels, vctx.labels),
                            complement_inclusion=vctx.complement_inclusion)
    m0 = target.m0

    omega = _into_deligne(target.dambient, m0, wedge_action(om_w, om_v))

    a_glob = _into_deligne(target.dambient, m0 + 1, wedge_action(gamma, om_v))
    a_slot = target.rho_mat(m0 + 1).matvec(a_glob) \
        if target.dcomp.dim(m0 + 1) else []

    incl = vctx.complement_inclusion

    def act(tv, cur):
        if incl is None:
            return wedge_action(tv, cur)
        return module_action(forms, incl, tv, cur)

    b_slot = _into_deligne(target.dcomp, m0 + 1, act(om_w, gv_comp)) \
        if target.dcomp.dim(m0 + 1) else []

    if target.dcomp.dim(m0 + 2):
        def dform(kind, tv):
            n = tv.internal_degree()
            mat = {"del": forms.del_matrix, "delbar": forms.delbar_matrix}[kind](n)
            return TwistedVector(forms, forms.to_user_degree(n - 1),
                                 mat.matvec(tv.coords))

        def dcur(kind, cur):
            cx = cur.complex
            mat = {"del": cx.del_matrix, "delbar": cx.delbar_matrix}[kind](cur.degree)
            return CurrentElement(cx, cur.degree - 1, mat.matvec(cur.coords),
                                  cur.twist_power)

        terms = [act(dform("del", gamma), gv_comp),
                 act(dform("delbar", gamma), gv_comp),
                 act(gamma, dcur("del", gv_comp)),
                 act(gamma, dcur("delbar", gv_comp))]
        csum = [t1 - t2 - t3 + t4 for t1, t2, t3, t4 in
                zip(*(t.coords for t in terms))]
        c_slot = _into_deligne(target.dcomp, m0 + 2,
                               CurrentElement(gv_comp.complex,
                                              gv_comp.degree + gamma.internal_degree() - 1,
                                              csum))
    else:
        c_slot = []
    return StarResult(omega, a_slot, b_slot, c_slot, target)
