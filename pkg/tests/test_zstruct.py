import pytest

from podec.catalog import catalog, fixture
from podec.poset import Undefined, bits, build_from_covers, is_element, mask_of
from podec.zstruct import (HypothesisError, InternalSearchError, ZContext,
                           ZStructError, central_cover,
                           cover_meet_decomposition, crosscheck_bidirectional,
                           crosscheck_hull, crosscheck_meet_closure,
                           is_lower_complete_sublattice, is_p_modular,
                           is_s_central, is_z_complete, is_z_directed,
                           is_z_modular, lower_complete_exhaustive,
                           pseudocomplement_in_z, z_disjoint_witness)

from oracles import oracle_cover, oracle_z_complete, oracle_z_disjoint

B2 = fixture("B2")
MO2 = fixture("MO2")
C3 = fixture("C3")
N5 = fixture("N5")
PROD = fixture("B1xMO2")


def ctx_of(entry, set_name):
    return ZContext(entry.poset, entry.sets[set_name])


def validate_witness(P, z_mask, s_mask, witness):
    assert set(witness) == set(bits(s_mask))
    values = list(witness.values())
    for p, f in witness.items():
        assert z_mask >> f & 1
        assert P.leq(p, f)
    for i, a in enumerate(values):
        for b in values[i + 1:]:
            assert P.disjoint(a, b)


class TestDisjointWitness:
    def test_square_atoms(self):
        P = B2.poset
        ctx = ctx_of(B2, "Zfull")
        w = z_disjoint_witness(ctx, P.subset(["a", "b"]))
        validate_witness(P, ctx.z, P.subset(["a", "b"]), w)

    def test_atom_with_top_has_no_witness(self):
        P = B2.poset
        ctx = ctx_of(B2, "Zfull")
        assert z_disjoint_witness(ctx, P.subset(["a", "1"])) is None

    def test_empty_family(self):
        assert z_disjoint_witness(ctx_of(B2, "Zfull"), 0) == {}

    def test_agrees_with_oracle(self):
        for entry in (B2, C3, MO2, N5):
            P = entry.poset
            for z_mask in range(1 << P.n):
                ctx = ZContext(P, z_mask)
                for s_mask in range(1 << P.n):
                    got = z_disjoint_witness(ctx, s_mask, method="backtracking")
                    expected = oracle_z_disjoint(P, list(bits(z_mask)),
                                                 list(bits(s_mask)))
                    assert (got is not None) == expected, (entry.name, z_mask, s_mask)
                    if got is not None:
                        validate_witness(P, z_mask, s_mask, got)

    def test_cover_shortcut_matches_backtracking(self):
        # wherever the shortcut is licensed the verdicts must coincide
        for entry in (B2, C3, MO2, N5):
            P = entry.poset
            for z_mask in range(1 << P.n):
                ctx = ZContext(P, z_mask)
                if ctx.covers is None:
                    continue
                for s_mask in range(1 << P.n):
                    fast = z_disjoint_witness(ctx, s_mask, method="covers")
                    slow = z_disjoint_witness(ctx, s_mask, method="backtracking")
                    assert (fast is None) == (slow is None), (entry.name, z_mask, s_mask)


class TestZComplete:
    def test_down_set_of_atom(self):
        assert is_z_complete(ctx_of(B2, "Zfull"), B2.poset.subset(["0", "a"])).ok

    def test_two_atoms_fail_join_closure(self):
        cert = is_z_complete(ctx_of(B2, "Zfull"), B2.poset.subset(["0", "a", "b"]))
        assert cert.status == "fails"
        assert cert.counterexample["condition"] == 1
        assert cert.counterexample["join"] == "1"

    def test_splitting_condition_fails(self):
        cert = is_z_complete(ctx_of(B2, "Zfull"), B2.poset.subset(["0", "a", "1"]))
        assert cert.status == "fails"
        assert cert.counterexample["condition"] == 2
        assert cert.counterexample["missing"] == "b"

    def test_requires_bottom(self):
        cert = is_z_complete(ctx_of(B2, "Zfull"), B2.poset.subset(["a"]))
        assert cert.status == "fails"

    def test_agrees_with_oracle(self):
        for entry in (B2, C3, N5):
            P = entry.poset
            for z_mask in range(1 << P.n):
                ctx = ZContext(P, z_mask)
                for i_mask in range(1 << P.n):
                    expected = oracle_z_complete(P, list(bits(z_mask)),
                                                 list(bits(i_mask)))
                    assert is_z_complete(ctx, i_mask).ok == expected, \
                        (entry.name, z_mask, i_mask)


class TestSCentral:
    def test_bounds_always_central_for_everything(self):
        for entry in (B2, C3, MO2, N5, PROD):
            ctx = ctx_of(entry, "Z01")
            assert is_s_central(ctx, entry.poset.full_mask).ok

    def test_chain_middle_blocks_centrality(self):
        P = C3.poset
        cert = is_s_central(ZContext(P, P.full_mask), P.full_mask)
        assert cert.status == "fails"
        assert cert.counterexample == {"element": "1", "against": "m"}

    def test_boolean_square_self_central(self):
        ctx = ctx_of(B2, "Zfull")
        assert is_s_central(ctx, ctx.z).ok


class TestCentralCover:
    def test_atom_cover_in_mo2(self):
        ctx = ctx_of(MO2, "Z01")
        assert MO2.poset.label(central_cover(ctx, MO2.poset.index("a"))) == "1"

    def test_bottom_cover(self):
        for entry in (B2, MO2, PROD):
            ctx = ctx_of(entry, "Z01")
            assert central_cover(ctx, entry.poset.bottom) == entry.poset.bottom

    def test_error_when_not_lower_complete(self):
        P = B2.poset
        ctx = ZContext(P, P.subset(["0", "a"]))
        with pytest.raises(HypothesisError):
            central_cover(ctx, P.index("b"))

    def test_monotone_and_idempotent(self):
        for entry in (B2, C3, MO2, N5):
            P = entry.poset
            for z_mask in range(1 << P.n):
                ctx = ZContext(P, z_mask)
                if ctx.covers is None:
                    continue
                for p in range(P.n):
                    c = ctx.cover(p)
                    assert P.leq(p, c)
                    assert z_mask >> c & 1
                    assert oracle_cover(P, list(bits(z_mask)), p) == c
                    for q in range(P.n):
                        if P.leq(p, q):
                            assert P.leq(c, ctx.cover(q))
                for z in bits(z_mask):
                    assert ctx.cover(z) == z


class TestLowerCompleteSublattice:
    def test_bounds(self):
        assert is_lower_complete_sublattice(MO2.poset, MO2.sets["Z01"]).ok

    def test_full_boolean(self):
        assert is_lower_complete_sublattice(B2.poset, B2.poset.full_mask).ok

    def test_mo2_two_pairs(self):
        mask = MO2.poset.subset(["0", "a", "b", "1"])
        assert is_lower_complete_sublattice(MO2.poset, mask).ok

    def test_missing_top_fails(self):
        mask = B2.poset.subset(["0", "a"])
        cert = is_lower_complete_sublattice(B2.poset, mask)
        assert cert.status == "fails"

    def test_pairwise_rule_matches_exhaustive_definition(self):
        for entry in (B2, C3, MO2, N5):
            P = entry.poset
            for z_mask in range(1 << P.n):
                fast = is_lower_complete_sublattice(P, z_mask).ok
                assert fast == lower_complete_exhaustive(P, z_mask), \
                    (entry.name, z_mask)


class TestModularity:
    def test_distributive_lattice(self):
        assert is_p_modular(B2.poset, B2.poset.full_mask).ok

    def test_pentagon_counterexample(self):
        P = N5.poset
        cert = is_p_modular(P, P.subset(["0", "y", "z", "1"]))
        assert cert.status == "fails"
        cex = cert.counterexample
        assert {cex["y"], cex["z"]} == {"y", "z"}
        assert cex["meet"] != cex["q"]

    def test_bounds_always_modular(self):
        for entry in (B2, C3, MO2, N5, PROD):
            assert is_p_modular(entry.poset, entry.sets["Z01"]).ok

    def test_z_modular_on_catalog_bounds(self):
        for entry in (B2, C3, MO2, N5, PROD):
            assert is_z_modular(entry.poset, entry.sets["Z01"]).ok


class TestPseudocomplement:
    def test_boolean_square(self):
        ctx = ctx_of(B2, "Zfull")
        P = B2.poset
        assert pseudocomplement_in_z(ctx, P.index("a")) == P.index("b")

    def test_bottom_maps_to_top_of_z(self):
        for entry in (B2, MO2, PROD):
            ctx = ctx_of(entry, "Z01")
            P = entry.poset
            assert pseudocomplement_in_z(ctx, P.bottom) == P.top

    def test_top_maps_to_bottom(self):
        ctx = ctx_of(MO2, "Z01")
        P = MO2.poset
        assert pseudocomplement_in_z(ctx, P.top) == P.bottom

    def test_non_member_rejected(self):
        ctx = ctx_of(MO2, "Z01")
        with pytest.raises(ZStructError):
            pseudocomplement_in_z(ctx, MO2.poset.index("a"))


class TestZDirected:
    def test_mo2_bounds(self):
        assert is_z_directed(ctx_of(MO2, "Z01")).ok

    def test_full_boolean(self):
        assert is_z_directed(ctx_of(B2, "Zfull")).ok

    def test_two_minimal_upper_bounds(self):
        P = build_from_covers(
            ["0", "x", "y", "u", "v"], "0",
            [("0", "x"), ("0", "y"), ("x", "u"), ("x", "v"),
             ("y", "u"), ("y", "v")])
        ctx = ZContext(P, P.subset(["0", "x", "y"]))
        cert = is_z_directed(ctx)
        assert cert.status == "fails"
        assert sorted(cert.counterexample["pair"]) == ["x", "y"]


class TestCrosschecks:
    def test_meet_closure_agrees_true(self):
        cert = crosscheck_meet_closure(ctx_of(B2, "Zfull"), B2.poset.subset(["0", "a"]))
        assert cert.ok and cert.details["direct"] == "holds"

    def test_meet_closure_agrees_false(self):
        cert = crosscheck_meet_closure(ctx_of(B2, "Zfull"),
                                       B2.poset.subset(["0", "a", "b"]))
        assert cert.ok
        assert cert.details["direct"] == "fails"
        assert cert.details["alternative"] is False

    def test_meet_closure_skips_without_modularity(self):
        P = N5.poset
        ctx = ZContext(P, P.subset(["0", "y", "z", "1"]))
        cert = crosscheck_meet_closure(ctx, P.subset(["0", "y"]))
        assert cert.status == "hypothesis-not-satisfied"

    def test_bidirectional_agrees(self):
        ctx = ctx_of(B2, "Zfull")
        for labels in (["0", "a"], ["0", "a", "1"], ["0"]):
            cert = crosscheck_bidirectional(ctx, B2.poset.subset(labels))
            assert cert.ok, labels

    def test_bidirectional_full_sweep(self):
        for entry in (B2, C3, MO2):
            P = entry.poset
            for z_mask in range(1 << P.n):
                ctx = ZContext(P, z_mask)
                if not ctx.self_complete.ok or ctx.pseudocomplements is None:
                    continue
                for i_mask in range(1 << P.n):
                    assert crosscheck_bidirectional(ctx, i_mask).status != "fails"


class TestCoverMeet:
    def test_mo2_atom_against_top(self):
        ctx = ctx_of(MO2, "Z01")
        P = MO2.poset
        q = cover_meet_decomposition(ctx, P.index("a"), P.index("1"))
        assert P.label(q) == "a"

    def test_bottom_z(self):
        for entry in (B2, MO2, PROD):
            ctx = ctx_of(entry, "Z01")
            P = entry.poset
            for p in range(P.n):
                assert cover_meet_decomposition(ctx, p, P.bottom) == P.bottom

    def test_product_instance(self):
        ctx = ctx_of(PROD, "center")
        P = PROD.poset
        q = cover_meet_decomposition(ctx, P.index("1.a"), P.index("0.1"))
        assert P.label(q) == "0.a"

    def test_hypothesis_error_without_lower_completeness(self):
        P = B2.poset
        ctx = ZContext(P, P.subset(["0", "a"]))
        with pytest.raises(HypothesisError):
            cover_meet_decomposition(ctx, P.index("b"), P.index("a"))

    def test_hypothesis_error_without_z_modularity(self):
        # the whole pentagon as Z is a lower complete sublattice but the
        # modular law fails inside it
        P = N5.poset
        ctx = ZContext(P, P.full_mask)
        assert ctx.lower_complete.ok and not ctx.z_modular.ok
        with pytest.raises(HypothesisError):
            cover_meet_decomposition(ctx, P.index("x"), P.index("z"))

    def test_hull_identity_on_catalog(self):
        for entry in (B2, C3, MO2, PROD):
            for name in ("Z01", "center", "Zfull"):
                if name not in entry.sets:
                    continue
                ctx = ctx_of(entry, name)
                cert = crosscheck_hull(ctx)
                assert cert.status in ("holds", "hypothesis-not-satisfied")


class TestContextCaches:
    def test_flags_match_fresh_recomputation(self):
        for entry in (B2, MO2, N5):
            P = entry.poset
            for name, mask in entry.sets.items():
                warm = ZContext(P, mask)
                # touch everything so caches fill
                flags = (warm.lower_complete.ok, warm.p_modular.ok,
                         warm.z_modular.ok, warm.z_directed.ok,
                         warm.p_central.ok, warm.z_central.ok,
                         warm.self_complete.ok,
                         warm.pseudocomplements is not None)
                fresh = ZContext(P, mask)
                assert flags == (fresh.lower_complete.ok, fresh.p_modular.ok,
                                 fresh.z_modular.ok, fresh.z_directed.ok,
                                 fresh.p_central.ok, fresh.z_central.ok,
                                 fresh.self_complete.ok,
                                 fresh.pseudocomplements is not None)
