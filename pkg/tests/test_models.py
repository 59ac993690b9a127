import pytest

from delcx.dolbeault import validate_dolbeault
from delcx.exactnum import Scalar
from delcx.models import (
    BadOrder, ModelDescriptor, UnknownModel, dualize_ses, formal_deligne_point_complex,
    jet_model, kahler_model, les_check, semipurity_scan, ses_jet,
    suite_model, SUITE_MODEL_NAMES,
)


def total_betti(model):
    """Complex dimensions per user degree (zero differentials: homology)."""
    out = {}
    for pq, d in model.user_support().items():
        out[pq[0] + pq[1]] = out.get(pq[0] + pq[1], 0) + d
    return out


def test_point_model():
    m = kahler_model("point")
    assert m.user_support() == {(0, 0): 1}
    assert validate_dolbeault(m) == []


def test_p1_hodge_diamond():
    # oracle: b0 = b2 = 1, b1 = 0 against the model's total cohomology
    m = kahler_model("P1")
    assert total_betti(m) == {0: 1, 2: 1}
    assert m.user_support() == {(0, 0): 1, (1, 1): 1}


def test_pn_and_unknown():
    m = kahler_model("P3")
    assert total_betti(m) == {0: 1, 2: 1, 4: 1, 6: 1}
    with pytest.raises(UnknownModel):
        kahler_model("K3")


def test_elliptic_hodge_diamond():
    m = kahler_model("elliptic")
    assert m.user_support() == {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}
    assert total_betti(m) == {0: 1, 1: 2, 2: 1}
    assert validate_dolbeault(m) == []


def test_kahler_wedge_unital_commutative_associative():
    for name in ("P2", "elliptic"):
        m = kahler_model(name)
        w = m.wedge
        one = w.unit_vector()
        basis = []
        from delcx.dolbeault import TwistedVector
        for n in m.degrees():
            dn = m.dim_n(n)
            for j in range(dn):
                basis.append(TwistedVector(m, m.to_user_degree(n),
                                           [Scalar(1) if i == j else Scalar(0)
                                            for i in range(dn)]))
        for x in basis:
            assert w.wedge_vec(one, x).coords == x.coords
            assert w.wedge_vec(x, one).coords == x.coords
            for y in basis:
                xy = w.wedge_vec(x, y)
                yx = w.wedge_vec(y, x)
                sign = -1 if (x.degree * y.degree) % 2 else 1
                assert xy.coords == [sign * c for c in yx.coords]
                for z in basis:
                    lhs = w.wedge_vec(w.wedge_vec(x, y), z)
                    rhs = w.wedge_vec(x, w.wedge_vec(y, z))
                    assert lhs.coords == rhs.coords


def test_jet_monomial_count():
    for N in range(1, 6):
        j = jet_model(N)
        assert j.user_support()[(0, 0)] == (N + 1) * (N + 2) // 2


def test_jet_dbar_cohomology_is_pure_t_polynomials():
    # finite shadow of the formal-power-series example: dimension N+1,
    # strictly increasing; oracle is the kernel computation itself
    dims = []
    for N in range(1, 6):
        j = jet_model(N)
        delbar = j.delbar_matrix(0)
        from delcx.exactnum import kernel
        dims.append(kernel(delbar).dim())
    assert dims == [2, 3, 4, 5, 6]
    assert all(b > a for a, b in zip(dims, dims[1:]))


def test_jet_total_cohomology_poincare_lemma():
    from delcx.exactnum import kernel
    for N in range(2, 6):
        j = jet_model(N)
        # H^0 = constants
        d0 = j.d_matrix(0)
        assert kernel(d0).dim() == 1
        # H^1 = 0 and H^2 = 0 by rank bookkeeping
        d1 = j.d_matrix(-1)
        rank0 = d0.rank()
        assert kernel(d1).dim() == rank0
        d2rank = d1.rank()
        assert d2rank == j.dim_n(-2)


def test_jet_bad_order():
    with pytest.raises(BadOrder):
        jet_model(0)
    with pytest.raises(BadOrder):
        ses_jet(3, 4)
    with pytest.raises(BadOrder):
        ses_jet(3, 0)


def test_model_descriptor_ranges():
    with pytest.raises(BadOrder):
        ModelDescriptor("jet", "jet", {"N": 0})
    with pytest.raises(BadOrder):
        ModelDescriptor("jet", "jet", {"N": 2, "k": 3})
    d = ModelDescriptor("jet:2", "jet", {"N": 2, "k": 1})
    assert "N=2" in repr(d)


def test_ses_jet_exact_and_boundary():
    s = ses_jet(3, 2)
    assert s.check_exact() == []
    assert validate_dolbeault(s.sub) == []
    assert validate_dolbeault(s.quot) == []
    # k = N gives the smallest nonzero sub
    s_top = ses_jet(3, 3)
    assert s_top.check_exact() == []
    assert s_top.sub.support[(0, 0)] == 4    # the degree-3 monomials


def test_ses_jet_dimension_bookkeeping():
    s = ses_jet(3, 2)
    for pq in s.mid.support:
        assert (s.sub.support.get(pq, 0) + s.quot.support.get(pq, 0)
                == s.mid.support[pq])


def test_dualize_ses():
    s = ses_jet(3, 2)
    ds = dualize_ses(s)
    assert ds.check_exact() == []
    # dual of dual gives back the original dimensions
    dds = dualize_ses(ds)
    for pq, d in s.mid.support.items():
        assert dds.mid.support[pq] == d
    # middle term of the dual = dual of the middle term, dimensionwise
    for pq, d in s.mid.support.items():
        assert ds.mid.support[(-pq[0], -pq[1])] == d


def test_les_degenerate_zero_sub():
    # SES with zero subcomplex: the LES degenerates to isomorphisms
    from delcx.dolbeault import DolbeaultMap
    from delcx.models import SESTriple, _empty_complex
    j = jet_model(2)
    zero = _empty_complex("cohomological")
    ident = DolbeaultMap.identity(j)
    s = SESTriple(zero, j, j, DolbeaultMap(zero, j, {}), ident)
    rep = les_check(s, 1)
    assert rep["exact"] and rep["euler"] == 0


def test_les_check_grid():
    for (N, k) in ((3, 2), (4, 2)):
        s = ses_jet(N, k)
        for p in (0, 1, 2):
            rep = les_check(s, p)
            assert rep["exact"], (N, k, p)
            assert rep["euler"] == 0


def test_les_check_on_dualized_ses():
    # the tempered (current-side) long sequence is exact as well
    s = dualize_ses(ses_jet(3, 2))
    for p in (0, 1):
        rep = les_check(s, p)
        assert rep["exact"], p
        assert rep["euler"] == 0


def test_functor_exactness_on_dualized_ses():
    from delcx.deligne import deligne_map
    s = dualize_ses(ses_jet(3, 2))
    for p in (0, 1, 2):
        dsub, dmid, minc = deligne_map(s.incl, p)
        _, dquot, msur = deligne_map(s.surj, p)
        for n in set(dsub.spaces) | set(dmid.spaces) | set(dquot.spaces):
            a, b, c = dsub.dim(n), dmid.dim(n), dquot.dim(n)
            assert a + c == b, (p, n)
            rank_inc = minc[n].rank() if n in minc else 0
            rank_sur = msur[n].rank() if n in msur else 0
            assert rank_inc == a and rank_sur == c


def test_formal_point_complex_e0():
    # e = 0: complex R -> O^0; H^1 has rational dimension 2N+1, matching
    # the jet Deligne cohomology at weight 1 (two-term complex by hand)
    for N in (2, 3):
        rep = formal_deligne_point_complex(0, N)
        assert rep["point_complex"][1] == 2 * N + 1
        assert all(rep["agree"].values())


def test_formal_point_complex_vanishing_above_bound():
    # truncated analogue of the sheaf-level vanishing: degrees above the
    # weight window carry nothing
    rep = formal_deligne_point_complex(0, 3)
    assert all(h == 0 for n, h in rep["point_complex"].items() if n > 1)


def test_formal_point_complex_stability():
    # N and N+1 agree in saturated degrees
    for e in (0, 1, 2):
        a = formal_deligne_point_complex(e, 3)["point_complex"]
        b = formal_deligne_point_complex(e, 4)["point_complex"]
        if e >= 1:
            assert a == b
        else:
            assert set(a) == set(b)


def test_semipurity_point_family():
    scan = semipurity_scan(0, range(0, 5), range(-1, 6))
    assert scan["pass"]
    # frozen oracle values: H_0 of the weight-0 scan is 2N+1 (cone/LES
    # computation), not bounded in N -- the infinite-dimensionality shadow
    by_model = {(r["model"], r["e"]): r["dims"] for r in scan["rows"]}
    for N in range(1, 6):
        assert by_model[(N, 0)][0] == 2 * N + 1
        assert all(h == 0 for n, h in by_model[(N, 0)].items() if n > 0)
    assert scan["label"].startswith("finite jet shadow")


def test_semipurity_accepts_external_family():
    # the scan API takes externally supplied families: duals of a compact
    # model of dimension 1, scanned against the dimension-1 bound
    from delcx.duality import dual_complex
    fam = {0: dual_complex(kahler_model("P1"))[0]}
    scan = semipurity_scan(1, range(0, 3), range(-1, 5), family=fam)
    assert scan["pass"]


def test_formal_point_complex_h0_vanishes():
    # e = 0 two-term complex by hand: the twist line injects into the
    # constants, so H^0 = 0
    rep = formal_deligne_point_complex(0, 3)
    assert rep["point_complex"].get(0, 0) == 0


def test_semipurity_bound_tightness_probe():
    scan = semipurity_scan(0, range(0, 3), range(-1, 5))
    # informational: nonzero homology AT the bound occurs (e = 0, n = 0)
    assert any(n == 0 and e == 0 for (_, e, n) in scan["at_bound_nonzero"])


def test_suite_models_resolve_and_validate():
    for name in SUITE_MODEL_NAMES:
        m = suite_model(name)
        assert validate_dolbeault(m) == [], name
