import pytest

from srak import cherednik as CH
from srak import groups as G
from srak.coeffs import ParamPoly, R0, R1, parse_rational, rat
from srak.selftest import tampered_cherednik

from conftest import S3_SPEC, WEYL_SPEC


def test_build_rank_one(ch2):
    y, x = ch2.y(0), ch2.x(0)
    assert y * x - x * y == ch2.algebra.parse("t - 2*c1*s")
    ref = ch2.reflections[0]
    pair = sum((a * b for a, b in zip(ref.alpha, ref.alpha_vee)), R0)
    assert pair == rat(2)
    assert ref.eigenvalue == rat(-1)


def test_build_weyl():
    ch = CH.build_cherednik(WEYL_SPEC)
    assert ch.reflections == []
    com = ch.y(0) * ch.x(0) - ch.x(0) * ch.y(0)
    assert com == ch.algebra.param(0)


def test_build_s3_reflection_terms(ch3):
    # across the commutator table all three reflections contribute
    gids = set()
    for i in range(2):
        for j in range(2):
            com = ch3.y(i) * ch3.x(j) - ch3.x(j) * ch3.y(i)
            gids |= {g for (m, g) in com.terms if g != 0}
    assert gids == set(ch3.rdata.reflections)
    assert len(gids) == 3


def test_alpha_data_invariants(ch3):
    for ref in ch3.reflections:
        pair = sum((a * b for a, b in zip(ref.alpha, ref.alpha_vee)), R0)
        assert pair == rat(2)
        assert ref.eigenvalue == rat(-1)
        # alpha spans the moving line on h*: s.alpha = -alpha
        hs = ch3.group.hstar_block(ref.gid)
        img = tuple(sum((hs[i][j] * ref.alpha[j] for j in range(ch3.h_dim)), R0) for i in range(ch3.h_dim))
        assert img == tuple(-a for a in ref.alpha)


def test_convention_factor(ch2, ch3):
    assert CH.convention_solve(ch2) == rat(-2)
    assert CH.convention_solve(ch3) == rat(-2)


def test_convention_factor_inconsistent_error():
    bad, _ = tampered_cherednik(S3_SPEC)
    with pytest.raises(CH.CherednikError, match="consistent"):
        CH.convention_solve(bad)


def test_convention_factor_no_reflections():
    ch = CH.build_cherednik(WEYL_SPEC)
    with pytest.raises(CH.CherednikError):
        CH.convention_solve(ch)


def test_euler_element(ch2, ch3):
    h2 = CH.euler_element(ch2)
    assert h2 == ch2.algebra.parse("x*y + 1/2 - c1*s")
    for ch in (ch2, ch3):
        h = CH.euler_element(ch)
        for i in range(ch.h_dim):
            cx = h.commutator(ch.x(i)).specialize(t=R1)
            cy = h.commutator(ch.y(i)).specialize(t=R1)
            assert cx == ch.x(i).specialize(t=R1)
            assert cy == (-ch.y(i)).specialize(t=R1)
    # trivial группа: the Weyl grading element
    chw = CH.build_cherednik(WEYL_SPEC)
    hw = CH.euler_element(chw)
    assert hw == chw.algebra.parse("x*y + 1/2")


def test_dunkl_examples(ch2):
    mod = CH.StandardModule(ch2)
    lowest = mod.lowest()
    assert mod.lowering_basis(0, lowest) == {}
    dx = mod.lowering_basis(0, mod.monomial((1,)))
    assert dx == {((0,), 0): ch2.algebra.parse("t - 2*c1").terms[((), 0)]}
    dx2 = mod.lowering_basis(0, mod.monomial((2,)))
    assert dx2 == {((1,), 0): ParamPoly.var(ch2.nparams, 0, coeff=rat(2))}


def test_dunkl_degree_drop(ch3):
    mod = CH.StandardModule(ch3)
    for e in [(2, 1), (0, 3), (1, 1)]:
        v = mod.monomial(e)
        for i in range(2):
            out = mod.lowering_basis(i, v)
            if out:
                assert mod.degree(out) == sum(e) - 1


def test_module_relations_and_commutativity(ch2, ch3):
    for ch in (ch2, ch3):
        rels = CH.module_relation_report(ch, 4)
        assert all(rels.values()), rels


def test_module_sign_is_forced(ch2):
    assert CH.solve_module_sign(ch2) == CH.MODULE_LOWERING_SIGN == -1


def test_euler_grading_on_module(ch2, ch3):
    # the grading element acts on degree-d vectors by (d + const) at t=1,
    # with the constant independent of d
    for ch in (ch2, ch3):
        mod = CH.StandardModule(ch)
        h = CH.euler_element(ch)
        consts = set()
        for d, e in [(0, (0,) * ch.h_dim), (1, (1,) + (0,) * (ch.h_dim - 1)), (2, (2,) + (0,) * (ch.h_dim - 1))]:
            v = mod.monomial(e)
            out = mod.zero()
            for (mono, g), p in h.specialize(t=R1).terms.items():
                w = dict(v)
                # apply right-to-left: group, then y's, then x's
                w = mod.act(g, w)
                for vi in reversed(mono):
                    if vi >= ch.h_dim:
                        w = mod.lowering_basis(vi - ch.h_dim, w)
                    else:
                        w = mod.mul_x(vi, w)
                w = mod.scale(w, p.specialize({0: R1}))
                out = mod.add(out, w)
            # out = (d + const) v
            coeff = out.get((e, 0), ParamPoly.zero(ch.nparams)).specialize({0: R1})
            consts.add((coeff - ParamPoly.const(ch.nparams, rat(d))).to_str())
        assert len(consts) == 1


def test_gram_product_formula_rank_one(ch2):
    # independent oracle: B_d = prod_{k=1..d} (k - 2c [k odd])
    c = ParamPoly.var(2, 1)
    for d in range(9):
        expect = ParamPoly.one(2)
        for k in range(1, d + 1):
            term = ParamPoly.const(2, rat(k)) - (2 * c if k % 2 == 1 else ParamPoly.zero(2))
            expect = expect * term
        monos, rows = CH.contravariant_gram(ch2, d)
        assert len(rows) == 1
        assert rows[0][0] == expect


def test_gram_b0_and_singular_vector(ch2):
    _, rows = CH.contravariant_gram(ch2, 0)
    assert rows[0][0] == ParamPoly.one(2)
    _, rows1 = CH.contravariant_gram(ch2, 1, c_values=[rat(1, 2)])
    assert rows1[0][0] == ParamPoly.zero(2)


def test_gram_symmetry_s3(ch3):
    # the metric-dual convention is symmetric; the raw dual-basis pairing
    # is congruent to it (equal ranks and kernels)
    for d in range(4):
        _, srows = CH.symmetric_contravariant_gram(ch3, d)
        n = len(srows)
        for i in range(n):
            for j in range(n):
                assert srows[i][j] == srows[j][i]
    for c in [rat(1, 3), rat(2, 5)]:
        for d in range(4):
            _, braw = CH.contravariant_gram(ch3, d, c_values=[c])
            _, bsym = CH.symmetric_contravariant_gram(ch3, d, c_values=[c])
            assert CH.gram_rank(braw) == CH.gram_rank(bsym)


def test_gram_rank_one_conventions_agree(ch2):
    # the rank-one invariant metric is the identity, so both conventions
    # coincide there
    for d in range(5):
        _, braw = CH.contravariant_gram(ch2, d)
        _, bsym = CH.symmetric_contravariant_gram(ch2, d)
        assert braw == bsym


def test_gram_kernel_vectors_are_singular(ch2, ch3):
    # at the first degenerate degree the kernel really consists of
    # singular vectors: annihilated by every lowering operator
    for ch, c, first in [(ch2, rat(1, 2), 1), (ch2, rat(3, 2), 3), (ch3, rat(1, 3), 1)]:
        spec = {0: R1, 1: c}
        mod = CH.StandardModule(ch)
        kern = CH.gram_kernel_vectors(ch, first, [c])
        assert kern
        for vec in kern:
            w = {k: p.specialize(spec) for k, p in vec.items()}
            w = {k: p for k, p in w.items() if p}
            for i in range(ch.h_dim):
                out = mod.lowering_basis(i, w)
                out = {k: p.specialize(spec) for k, p in out.items()}
                assert not any(out.values())


def test_gram_kernel_is_lowering_stable(ch2, ch3):
    # in general the kernel is the degree slice of the radical submodule:
    # lowering maps ker(B_d) into ker(B_{d-1})
    from srak import linalg

    for ch, c in [(ch2, rat(1, 2)), (ch3, rat(1, 3))]:
        spec = {0: R1, 1: c}
        mod = CH.StandardModule(ch)
        for d in range(2, 5):
            kern_d = CH.gram_kernel_vectors(ch, d, [c])
            monos_prev, rows_prev = CH.contravariant_gram(ch, d - 1, c_values=[c])
            prev_kernel = CH.gram_kernel_vectors(ch, d - 1, [c])
            # coordinates of the previous kernel span
            idx = {m: k for k, m in enumerate(monos_prev)}
            span = linalg.RankTracker(len(monos_prev))
            for vec in prev_kernel:
                coords = [R0] * len(monos_prev)
                for (e, _), p in vec.items():
                    coords[idx[e]] = p.specialize(spec).const_value()
                span.add(coords)
            for vec in kern_d:
                w = {k: p.specialize(spec) for k, p in vec.items()}
                for i in range(ch.h_dim):
                    out = mod.lowering_basis(i, w)
                    coords = [R0] * len(monos_prev)
                    for (e, _), p in out.items():
                        val = p.specialize(spec).const_value()
                        if val:
                            coords[idx[e]] = val
                    if any(coords):
                        assert span.contains(coords)


def test_scan_n2_iff_half_integers(ch2):
    cs = ["1/2", "-1/2", "3/2", "-3/2", "5/2", "-5/2", "1/3", "-1/3", "1/4", "-1/4", "2/3", "-2/3"]
    scan = CH.finite_dim_scan(ch2, cs, 8)
    for res in scan:
        c = parse_rational(res["c"])
        half_integer = (2 * c) == int(2 * c) and c != int(c)
        if half_integer:
            assert res["verdict"] == "finite"
        else:
            assert res["verdict"] != "finite"
    dims = {res["c"]: res.get("dim") for res in scan}
    assert dims["1/2"] == 1 and dims["3/2"] == 3 and dims["5/2"] == 5


def test_scan_negative_half_integers_dims(ch2):
    scan = CH.finite_dim_scan(ch2, ["-1/2", "-3/2"], 8)
    assert all(r["verdict"] == "finite" for r in scan)


def test_scan_n3(ch3):
    scan = CH.finite_dim_scan(ch3, ["1/3", "1/2", "1/4"], 8)
    assert scan[0]["verdict"] == "finite" and scan[0]["dim"] == 1
    assert scan[1]["verdict"] != "finite"
    assert scan[2]["verdict"] != "finite"


def test_type_a_reports():
    r = CH.type_a_report(5, rat(1, 2))
    assert not r["simple"]
    assert r["ideal_count"] == 2
    assert [e["subgroup"] for e in r["ideal_chain"]] == ["S2", "S2 x S2"]
    assert r["slice_has_finite_dim_module"]
    r = CH.type_a_report(4, rat(1, 4))
    assert not r["simple"] and r["ideal_count"] == 1
    assert [e["subgroup"] for e in r["ideal_chain"]] == ["S4"]
    r = CH.type_a_report(3, rat(2, 7))
    assert r["simple"]
    r = CH.type_a_report(3, R0)
    assert r["simple"]


def test_leaf_support_labels():
    lab = CH.leaf_support_label(5, 2, 0)
    assert lab["dimension"] == 8
    lab = CH.leaf_support_label(5, 2, 2)
    assert lab["dimension"] == 4
    assert lab["subgroup"] == "S2 x S2"
    lab = CH.leaf_support_label(4, 4, 1)
    assert lab["dimension"] == 0
    with pytest.raises(CH.CherednikError):
        CH.leaf_support_label(5, 2, 3)
    with pytest.raises(CH.CherednikError):
        CH.leaf_support_label(5, 0, 1)


def test_tau_representation_validation(ch2):
    # sign representation of the rank-one group
    tau = {0: [[R1]], 1: [[rat(-1)]]}
    mod = CH.StandardModule(ch2, tau=tau)
    rels = CH.module_relation_report(ch2, 3, tau=tau)
    assert all(rels.values())
    bad = {0: [[R1]], 1: [[rat(2)]]}
    with pytest.raises(CH.CherednikError):
        CH.StandardModule(ch2, tau=bad)
