"""Finite Dolbeault models: Kahler minimal models, jet truncations, short
exact sequences of jets, their duals, long-exact-sequence checks, the
two-row point complex, and the semipurity scanner.

Kahler models carry zero differentials (harmonic representatives) with the
Hodge-diamond dimensions of the named space; reports downstream label these
as minimal-model results.  Jet models are polynomial truncations of forms
in t, tbar at a point, with per-form-degree bounds (N, N-1, N-2) so the two
differentials are well defined and the formal Poincare lemma holds exactly
at finite order.
"""

from gmpy2 import mpq

from .exactnum import QI, Matrix, Scalar, Subspace
from .dolbeault import BigradedComplex, COHOMOLOGICAL, DolbeaultMap, WedgeTable


class UnknownModel(Exception):
    pass


class BadOrder(Exception):
    pass


class ModelDescriptor:
    """Name + parameters + geometric annotation for a built model."""

    __slots__ = ("name", "kind", "params", "role")

    def __init__(self, name, kind, params=None, role=""):
        if kind == "jet":
            n = (params or {}).get("N", 0)
            k = (params or {}).get("k")
            if n < 1 or (k is not None and not 0 <= k <= n):
                raise BadOrder("jet parameters out of range: %r" % (params,))
        self.name = name
        self.kind = kind
        self.params = dict(params or {})
        self.role = role

    def __repr__(self):
        ps = ",".join("%s=%s" % kv for kv in sorted(self.params.items()))
        return "%s[%s]" % (self.name, ps) if ps else self.name


def _one(x=1):
    return Matrix.from_rows([[Scalar(x)]], field=QI)


def _diag_lines_model(lines, name, geom_dim):
    """Zero-differential model with one line at each listed (k,k), all
    generators fixed by conjugation."""
    support = {(-k, -k): 1 for k in lines}
    sigma = {pq: _one() for pq in support}
    cx = BigradedComplex(support, {}, {}, sigma, variance=COHOMOLOGICAL,
                         name=name, geom_dim=geom_dim)
    table = {}
    for j in lines:
        for k in lines:
            if j + k in lines:
                table[((-j, -j), (-k, -k))] = [_one()]
    cx.wedge = WedgeTable(cx, table, unit_block=(0, 0), unit_index=0)
    return cx


def kahler_model(name):
    """Named compact Kahler minimal model (cohomological variance).

    point: one line at (0,0).  P1: lines at (0,0), (1,1).  Pn: lines at
    (k,k) for k <= n.  elliptic: lines at (0,0), (1,0), (0,1), (1,1) with
    conjugation swapping dz and dzbar; the (1,1) generator is i dz^dzbar,
    which is fixed by conjugation.
    """
    if name == "point":
        return _diag_lines_model([0], "point", 0)
    if name == "P1":
        return _diag_lines_model([0, 1], "P1", 1)
    if name.startswith("P") and name[1:].isdigit():
        n = int(name[1:])
        if n < 1:
            raise UnknownModel(name)
        return _diag_lines_model(list(range(n + 1)), name, n)
    if name == "elliptic":
        support = {(0, 0): 1, (-1, 0): 1, (0, -1): 1, (-1, -1): 1}
        sigma = {
            (0, 0): _one(),
            (-1, 0): _one(),     # sigma(dz) = dzbar
            (0, -1): _one(),     # sigma(dzbar) = dz
            (-1, -1): _one(),    # sigma(i dz^dzbar) = i dz^dzbar
        }
        cx = BigradedComplex(support, {}, {}, sigma, variance=COHOMOLOGICAL,
                             name="elliptic", geom_dim=1)
        # basis: 1; a = dz; b = dzbar; v = i a^b.  a^b = -i v, b^a = i v.
        unit = (0, 0)
        a_blk, b_blk, v_blk = (-1, 0), (0, -1), (-1, -1)
        mi = Matrix.from_rows([[Scalar(0, -1)]], field=QI)   # -i
        pi_ = Matrix.from_rows([[Scalar(0, 1)]], field=QI)   # +i
        table = {
            (unit, unit): [_one()],
            (unit, a_blk): [_one()], (a_blk, unit): [_one()],
            (unit, b_blk): [_one()], (b_blk, unit): [_one()],
            (unit, v_blk): [_one()], (v_blk, unit): [_one()],
            (a_blk, b_blk): [mi],
            (b_blk, a_blk): [pi_],
        }
        cx.wedge = WedgeTable(cx, table, unit_block=unit, unit_index=0)
        return cx
    raise UnknownModel(name)


# -- jet truncations ----------------------------------------------------------


def jet_monomials(bound):
    """Monomials t^a tbar^b with a+b <= bound, ordered by (total, a)."""
    if bound < 0:
        return []
    return [(a, d - a) for d in range(bound + 1) for a in range(d + 1)]


def _t_derivative(src_monos, dst_monos, which):
    """Matrix of d/dt (which=0) or d/dtbar (which=1) between monomial lists."""
    index = {m: i for i, m in enumerate(dst_monos)}
    out = Matrix.zeros(len(dst_monos), len(src_monos), QI)
    for j, (a, b) in enumerate(src_monos):
        if which == 0 and a > 0:
            out.data[index[(a - 1, b)]][j] = Scalar(a)
        if which == 1 and b > 0:
            out.data[index[(a, b - 1)]][j] = Scalar(b)
    return out


def _swap_conj(monos, sign=1):
    """Matrix of f -> fbar on coefficients: permutation (a,b) -> (b,a)."""
    index = {m: i for i, m in enumerate(monos)}
    out = Matrix.zeros(len(monos), len(monos), QI)
    for j, (a, b) in enumerate(monos):
        out.data[index[(b, a)]][j] = Scalar(sign)
    return out


def _poly_mult_table(monos1, monos2, monos_out):
    """Wedge-table entries for truncated polynomial multiplication."""
    index = {m: i for i, m in enumerate(monos_out)}
    mats = []
    for (a1, b1) in monos1:
        m = Matrix.zeros(len(monos_out), len(monos2), QI)
        for j, (a2, b2) in enumerate(monos2):
            tgt = (a1 + a2, b1 + b2)
            if tgt in index:
                m.data[index[tgt]][j] = Scalar(1)
        mats.append(m)
    return mats


def jet_model(N):
    """Order-N Whitney-form model at a point of a curve.

    Functions are polynomials in t, tbar of total degree <= N; dt- and
    dtbar-coefficients are bounded by N-1 and the dt^dtbar coefficient by
    N-2; del and delbar are the formal t- and tbar-derivatives.
    """
    if N < 1:
        raise BadOrder("jet order must be >= 1, got %r" % (N,))
    f_m = jet_monomials(N)
    o_m = jet_monomials(N - 1)
    v_m = jet_monomials(N - 2)
    # internal (homological) bidegrees: (0,0), (-1,0), (0,-1), (-1,-1)
    support = {(0, 0): len(f_m)}
    if o_m:
        support[(-1, 0)] = len(o_m)
        support[(0, -1)] = len(o_m)
    if v_m:
        support[(-1, -1)] = len(v_m)
    del_maps = {}
    delbar_maps = {}
    if o_m:
        del_maps[(0, 0)] = _t_derivative(f_m, o_m, 0)       # f -> f_t dt
        delbar_maps[(0, 0)] = _t_derivative(f_m, o_m, 1)    # f -> f_tbar dtbar
    if v_m:
        del_maps[(0, -1)] = _t_derivative(o_m, v_m, 0)      # g dtbar -> g_t dt^dtbar
        db = _t_derivative(o_m, v_m, 1)
        delbar_maps[(-1, 0)] = db.scale(Scalar(-1))         # g dt -> -g_tbar dt^dtbar
    sigma = {(0, 0): _swap_conj(f_m)}
    if o_m:
        sigma[(-1, 0)] = _swap_conj(o_m)
        sigma[(0, -1)] = _swap_conj(o_m)
    if v_m:
        sigma[(-1, -1)] = _swap_conj(v_m, sign=-1)          # conj(dt^dtbar) = -dt^dtbar
    cx = BigradedComplex(support, del_maps, delbar_maps, sigma,
                         variance=COHOMOLOGICAL, name="jet(%d)" % N, geom_dim=None)

    blocks = {"f": (0, 0), "dt": (-1, 0), "dtb": (0, -1), "v": (-1, -1)}
    monos = {"f": f_m, "dt": o_m, "dtb": o_m, "v": v_m}
    table = {}

    def add(b1, b2, out, sign):
        if monos[b1] and monos[b2] and monos[out]:
            mats = _poly_mult_table(monos[b1], monos[b2], monos[out])
            if sign < 0:
                mats = [m.scale(Scalar(-1)) for m in mats]
            table[(blocks[b1], blocks[b2])] = mats

    add("f", "f", "f", 1)
    add("f", "dt", "dt", 1)
    add("dt", "f", "dt", 1)
    add("f", "dtb", "dtb", 1)
    add("dtb", "f", "dtb", 1)
    add("f", "v", "v", 1)
    add("v", "f", "v", 1)
    add("dt", "dtb", "v", 1)     # (f dt)^(g dtbar) = fg dt^dtbar
    add("dtb", "dt", "v", -1)    # (f dtbar)^(g dt) = -fg dt^dtbar
    cx.wedge = WedgeTable(cx, table, unit_block=(0, 0), unit_index=0)
    return cx


class SESTriple:
    """Short exact sequence of Dolbeault complexes with its two chain maps."""

    def __init__(self, sub, mid, quot, incl, surj):
        self.sub = sub
        self.mid = mid
        self.quot = quot
        self.incl = incl
        self.surj = surj

    def check_exact(self):
        """Injectivity, surjectivity, zero composite and dimension count,
        per bidegree.  Returns a list of failures (empty iff exact)."""
        bad = []
        bidegs = set(self.sub.support) | set(self.mid.support) | set(self.quot.support)
        for pq in sorted(bidegs):
            ds = self.sub.support.get(pq, 0)
            dm = self.mid.support.get(pq, 0)
            dq = self.quot.support.get(pq, 0)
            inc = self.incl.blocks.get(pq)
            sur = self.surj.blocks.get(pq)
            rank_inc = inc.rank() if inc is not None else 0
            rank_sur = sur.rank() if sur is not None else 0
            if rank_inc != ds:
                bad.append(("injective", pq))
            if rank_sur != dq:
                bad.append(("surjective", pq))
            if ds + dq != dm:
                bad.append(("dimension", pq))
            if inc is not None and sur is not None and not (sur * inc).is_zero():
                bad.append(("composite", pq))
        return bad


def _submono_inclusion(sub_m, big_m):
    index = {m: i for i, m in enumerate(big_m)}
    out = Matrix.zeros(len(big_m), len(sub_m), QI)
    for j, m in enumerate(sub_m):
        out.data[index[m]][j] = Scalar(1)
    return out


def _truncation(big_m, small_m):
    index = {m: i for i, m in enumerate(small_m)}
    out = Matrix.zeros(len(small_m), len(big_m), QI)
    for j, m in enumerate(big_m):
        if m in index:
            out.data[index[m]][j] = Scalar(1)
    return out


def ses_jet(N, k):
    """0 -> (jets vanishing to order >= k) -> jet(N) -> jet-shape(k-1) -> 0.

    The quotient map is truncation of jets; the sub keeps monomials of
    degree >= k (functions), >= k-1 (one-forms), >= k-2 (top forms).
    """
    if not 1 <= k <= N:
        raise BadOrder("need 1 <= k <= N, got k=%r N=%r" % (k, N))
    mid = jet_model(N)

    def band(bound, lo):
        return [m for m in jet_monomials(bound) if m[0] + m[1] >= lo]

    sub_f = band(N, k)
    sub_o = band(N - 1, k - 1)
    sub_v = band(N - 2, k - 2)
    support = {}
    if sub_f:
        support[(0, 0)] = len(sub_f)
    if sub_o:
        support[(-1, 0)] = len(sub_o)
        support[(0, -1)] = len(sub_o)
    if sub_v:
        support[(-1, -1)] = len(sub_v)
    del_maps = {}
    delbar_maps = {}
    if sub_f and sub_o:
        del_maps[(0, 0)] = _t_derivative(sub_f, sub_o, 0)
        delbar_maps[(0, 0)] = _t_derivative(sub_f, sub_o, 1)
    if sub_o and sub_v:
        del_maps[(0, -1)] = _t_derivative(sub_o, sub_v, 0)
        delbar_maps[(-1, 0)] = _t_derivative(sub_o, sub_v, 1).scale(Scalar(-1))
    sigma = {}
    if sub_f:
        sigma[(0, 0)] = _swap_conj(sub_f)
    if sub_o:
        sigma[(-1, 0)] = _swap_conj(sub_o)
        sigma[(0, -1)] = _swap_conj(sub_o)
    if sub_v:
        sigma[(-1, -1)] = _swap_conj(sub_v, sign=-1)
    sub = BigradedComplex(support, del_maps, delbar_maps, sigma,
                          variance=COHOMOLOGICAL,
                          name="jet(%d,flat>=%d)" % (N, k), geom_dim=None)

    quot = jet_model(k - 1) if k >= 2 else _point_jet_shape()
    f_m, o_m, v_m = jet_monomials(N), jet_monomials(N - 1), jet_monomials(N - 2)
    inc_blocks = {}
    if sub_f:
        inc_blocks[(0, 0)] = _submono_inclusion(sub_f, f_m)
    if sub_o:
        inc_blocks[(-1, 0)] = _submono_inclusion(sub_o, o_m)
        inc_blocks[(0, -1)] = _submono_inclusion(sub_o, o_m)
    if sub_v:
        inc_blocks[(-1, -1)] = _submono_inclusion(sub_v, v_m)
    sur_blocks = {(0, 0): _truncation(f_m, jet_monomials(k - 1))}
    if k >= 2:
        sur_blocks[(-1, 0)] = _truncation(o_m, jet_monomials(k - 2))
        sur_blocks[(0, -1)] = _truncation(o_m, jet_monomials(k - 2))
    if k >= 3:
        sur_blocks[(-1, -1)] = _truncation(v_m, jet_monomials(k - 3))
    incl = DolbeaultMap(sub, mid, inc_blocks)
    surj = DolbeaultMap(mid, quot, sur_blocks)
    return SESTriple(sub, mid, quot, incl, surj)


def _point_jet_shape():
    """Order-0 jets: just the constants (quotient shape for k = 1)."""
    support = {(0, 0): 1}
    return BigradedComplex(support, {}, {}, {(0, 0): _one()},
                           variance=COHOMOLOGICAL, name="jet(0)", geom_dim=None)


# -- duals, long exact sequences, the point complex, semipurity ----------------


def dualize_ses(s):
    """Arrows reversed through dual_complex: 0 -> quot* -> mid* -> sub* -> 0.

    The dual of the inclusion is the restriction of currents and the dual
    of the truncation is the inclusion of currents supported deeper.
    """
    from .duality import dual_complex
    dsub, _ = dual_complex(s.sub, validate=False)
    dmid, _ = dual_complex(s.mid, validate=False)
    dquot, _ = dual_complex(s.quot, validate=False)

    def dual_blocks(f, src_d, dst_d):
        out = {}
        for pq, m in f.blocks.items():
            dpq = (-pq[0], -pq[1])
            if dpq in src_d.support or dpq in dst_d.support:
                out[dpq] = m.transpose()
        return out

    incl = DolbeaultMap(dquot, dmid, dual_blocks(s.surj, dquot, dmid))
    surj = DolbeaultMap(dmid, dsub, dual_blocks(s.incl, dmid, dsub))
    return SESTriple(dquot, dmid, dsub, incl, surj)


def les_check(s, p):
    """Exactness of the long homology sequence of D(., p) applied to a SES.

    Builds the three Deligne complexes and the two induced chain maps,
    constructs the connecting map by the snake recipe (lift, differentiate,
    pull back), and verifies exactness at every node by rank conditions.
    Returns a report dict with the dimension table and the verdict.
    """
    from .deligne import deligne_map
    from .exactnum import QQ, Subspace
    dsub, dmid, minc = deligne_map(s.incl, p)
    dmid2, dquot, msur = deligne_map(s.surj, p)
    csub, cmid, cquot = dsub.chain_complex(), dmid.chain_complex(), dquot.chain_complex()
    degs = sorted(set(csub.dims) | set(cmid.dims) | set(cquot.dims))
    if not degs:
        return {"exact": True, "euler": 0, "nodes": [], "dims": {}}

    def hom(cc, n):
        return cc.homology_dim(n) if cc.dim(n) else 0

    def mat(mats, n, rows, cols):
        m = mats.get(n)
        if m is None:
            return Matrix.zeros(rows, cols, QQ)
        return m

    # induced maps on homology: images of homology bases modulo boundaries
    def induced_rank(cc_from, cc_to, mats, n):
        reps = cc_from.homology_basis(n) if cc_from.dim(n) else []
        if not reps:
            return 0
        f = mat(mats, n, cc_to.dim(n), cc_from.dim(n))
        imgs = [f.matvec(v) for v in reps]
        bnd = cc_to.boundaries(n)
        span = Subspace.from_vectors(cc_to.dim(n), imgs + bnd.basis, QQ)
        return span.dim() - bnd.dim()

    # connecting morphism rank: snake on representatives
    def connecting_rank(n):
        reps = cquot.homology_basis(n) if cquot.dim(n) else []
        if not reps:
            return 0
        sur = mat(msur, n, cquot.dim(n), cmid.dim(n))
        inc_prev = mat(minc, n - 1, cmid.dim(n - 1), csub.dim(n - 1))
        imgs = []
        for v in reps:
            lift = sur.solve(v)
            assert lift is not None, "surjection failed to lift a cycle"
            db = cmid.d(n).matvec(lift) if cmid.dim(n - 1) else []
            if csub.dim(n - 1) == 0:
                imgs.append(None)
                continue
            pre = inc_prev.solve(db)
            assert pre is not None, "snake image missed the subcomplex"
            imgs.append(pre)
        imgs = [v for v in imgs if v is not None]
        if not imgs:
            return 0
        bnd = csub.boundaries(n - 1)
        span = Subspace.from_vectors(csub.dim(n - 1), imgs + bnd.basis, QQ)
        return span.dim() - bnd.dim()

    nodes = []
    dims = {}
    exact = True
    lo, hi = min(degs) - 1, max(degs) + 1
    for n in range(hi, lo - 1, -1):
        ha, hb, hc = hom(csub, n), hom(cmid, n), hom(cquot, n)
        dims[n] = (ha, hb, hc)
        r_i = induced_rank(csub, cmid, minc, n)
        r_s = induced_rank(cmid, cquot, msur, n)
        r_d = connecting_rank(n)
        r_d_up = connecting_rank(n + 1)
        # exactness at H_n(sub): ker(i) = im(delta from n+1)
        ok_a = (ha - r_i) == r_d_up
        # at H_n(mid): ker(s) = im(i)
        ok_b = (hb - r_s) == r_i
        # at H_n(quot): ker(delta) = im(s)
        ok_c = (hc - r_d) == r_s
        nodes.append((n, ok_a, ok_b, ok_c))
        exact = exact and ok_a and ok_b and ok_c
    euler = sum((1 if n % 2 == 0 else -1) * (ha - hb + hc)
                for n, (ha, hb, hc) in dims.items())
    return {"exact": exact, "euler": euler, "nodes": nodes, "dims": dims}


def formal_deligne_point_complex(e, N):
    """The two-row point complex R(e) -> O^0 -> ... -> O^e at truncation N,
    compared against the jet-model Deligne cohomology at weight e+1.

    The holomorphic pieces at a point of a curve are O^0 (pure-t
    polynomials of degree <= N) and O^1 ((degree <= N-1) dt); O^q vanishes
    above the ambient dimension.  Cohomology is over QQ with complex lines
    restricted; degrees are cohomological (R(e) sits in degree 0, O^q in
    degree q+1).
    """
    if e < 0 or N < 1:
        raise BadOrder("need e >= 0 and N >= 1")
    from .exactnum import QQ
    from .chain import ChainComplex

    dim_o0 = N + 1                   # 1, t, ..., t^N
    dim_o1 = N if e >= 1 else 0      # dt, t dt, ..., t^{N-1} dt
    # real dimensions (restriction of scalars for the O^q lines)
    dims_coh = {0: 1, 1: 2 * dim_o0}
    if e >= 1 and dim_o1:
        dims_coh[2] = 2 * dim_o1
    # homological storage with negated degrees; d_n : C_n -> C_{n-1}
    # cohomological d: degree 0 -> 1 is the inclusion of R(e) = (2 pi i)^e R,
    # realized as the real line through i^e in the restricted coordinates.
    dims = {-n: d for n, d in dims_coh.items()}
    diff = {}
    incl = Matrix.zeros(2 * dim_o0, 1, QQ)
    # R(e+1) = i^{e+1} (2 pi)^{e+1} R inside the constants; only the parity
    # of the i-power is visible (and no dimension depends on it)
    if (e + 1) % 2 == 0:
        incl.data[0][0] = QQ.one            # real constants
    else:
        incl.data[dim_o0][0] = QQ.one       # i * real constants
    diff[0] = incl
    if 2 in dims_coh:
        dmat = Matrix.zeros(2 * dim_o1, 2 * dim_o0, QQ)
        for k in range(1, N + 1):
            dmat.data[k - 1][k] = mpq(k)
            dmat.data[dim_o1 + k - 1][dim_o0 + k] = mpq(k)
        diff[-1] = dmat
    cc = ChainComplex(dims, diff)
    table = {}
    lo = min(dims_coh)
    hi = max(dims_coh)
    for n in range(lo, hi + 2):
        table[n] = cc.homology_dim(-n) if cc.dim(-n) else 0

    from .deligne import build_deligne
    dj = build_deligne(jet_model(N), e + 1, validate=False)
    jt = {}
    cj = dj.chain_complex()
    for n_int in dj.spaces:
        jt[dj.to_user_degree(n_int)] = cj.homology_dim(n_int)
    degrees = sorted(set(table) | set(jt))
    comparison = {n: (table.get(n, 0), jt.get(n, 0)) for n in degrees}
    return {"point_complex": table, "jet_deligne": jt, "comparison": comparison,
            "agree": {n: a == b for n, (a, b) in comparison.items()}}


def semipurity_scan(p_dim, e_range, n_range, family=None):
    """Vanishing table of tempered Deligne homology above the semipurity
    bound max(e + p, 2p - 1).

    family maps a model index to a current complex; the default is the
    point family (duals of jet models), with the index being the jet order.
    Reports are evidence on finite jet shadows, not a proof about the
    infinite-order objects.  PASS iff every dimension strictly above the
    bound vanishes; dimensions AT the bound are reported as information.
    """
    from .deligne import build_deligne
    from .duality import dual_complex
    if family is None:
        family = {N: dual_complex(jet_model(N), validate=False)[0] for N in range(1, 6)}
    rows = []
    ok = True
    at_bound_nonzero = []
    for idx in sorted(family):
        cur = family[idx]
        for e in e_range:
            bound = max(e + p_dim, 2 * p_dim - 1)
            d = build_deligne(cur, e, validate=False)
            cc = d.chain_complex()
            dims = {}
            for n in n_range:
                h = cc.homology_dim(n) if d.dim(n) else 0
                dims[n] = h
                if h and n > bound:
                    ok = False
                if h and n == bound:
                    at_bound_nonzero.append((idx, e, n))
            rows.append({"model": idx, "e": e, "bound": bound, "dims": dims})
    return {"pass": ok, "rows": rows, "at_bound_nonzero": at_bound_nonzero,
            "label": "finite jet shadow (evidence, not proof)"}


def _empty_complex(variance):
    from .dolbeault import HOMOLOGICAL
    return BigradedComplex({}, {}, {}, {}, variance=variance)


def green_context(kind, p=0, p_form=1, N=3, k=2):
    """Matched current/form diagram contexts for the green layer.

    Kahler kinds use a zero complement (the minimal model's currents are
    all supported at the cycle at this resolution); jet contexts use the
    dual of the vanishing-order ideal as the complement of the deeper
    infinitesimal neighborhood, which has nonzero differentials.
    Returns {"current", "form", "pairing", "delta"}.
    """
    from .dolbeault import DolbeaultMap, HOMOLOGICAL, COHOMOLOGICAL
    from .duality import dual_complex
    from .green import DiagramContext
    if kind in ("point", "P1", "P2", "P3", "elliptic"):
        X = kahler_model(kind)
        D, pairing = dual_complex(X)
        empty_h = _empty_complex(HOMOLOGICAL)
        empty_c = _empty_complex(COHOMOLOGICAL)
        cur = DiagramContext(D, empty_h, DolbeaultMap(D, empty_h, {}), p,
                             labels="%s currents, Z = point" % kind)
        form = DiagramContext(X, empty_c, DolbeaultMap(X, empty_c, {}), p_form,
                              labels="%s forms, Z = point" % kind)
        return {"current": cur, "form": form, "pairing": pairing,
                "delta": pairing.deltas.get("point")}
    if kind == "jet":
        s = ses_jet(N, k)
        E = s.mid
        Dfull, pairing = dual_complex(E)
        Dsub, _ = dual_complex(s.sub, validate=False)
        restr_blocks = {(-pq[0], -pq[1]): m.transpose()
                        for pq, m in s.incl.blocks.items()}
        restr = DolbeaultMap(Dfull, Dsub, restr_blocks)
        cur = DiagramContext(Dfull, Dsub, restr, p,
                             labels="jet(%d) currents, Z = order-%d neighborhood" % (N, k),
                             complement_inclusion=s.incl)
        form = DiagramContext(E, s.quot, s.surj, p_form,
                              labels="jet(%d) forms, Z = order-%d neighborhood" % (N, k))
        return {"current": cur, "form": form, "pairing": pairing,
                "delta": pairing.deltas.get("point")}
    raise UnknownModel(kind)


SUITE_MODEL_NAMES = ("point", "P1", "P2", "P3", "elliptic",
                     "jet:1", "jet:2", "jet:3", "jet:4", "jet:5")


def suite_model(name):
    """Resolve a suite model name ('P1', 'jet:3', ...) to a complex."""
    if name.startswith("jet:"):
        return jet_model(int(name.split(":", 1)[1]))
    return kahler_model(name)


def descriptor(name):
    if name.startswith("jet:"):
        return ModelDescriptor(name, "jet", {"N": int(name.split(":", 1)[1])},
                               role="Y-infinity at a point of X")
    return ModelDescriptor(name, "kahler", {}, role="compact X")
