import pytest

from podec.catalog import fixture, gen_mo, gen_product
from podec.homog import (HomogeneityWitness, attain_cover_join,
                         check_uniqueness, homogeneity_relation,
                         homogeneous_decomposition, homogeneous_orders,
                         is_order_dense, merge_same_order)
from podec.poset import bits, is_element, mask_of
from podec.relations import finite_elements, rel_cover_leq
from podec.zstruct import ZContext, is_z_complete

B2 = fixture("B2")
MO2 = fixture("MO2")
PROD = fixture("B1xMO2")


def ctx_of(entry, name):
    return ZContext(entry.poset, entry.sets[name])


def prod_finite():
    P = PROD.poset
    ctx = ctx_of(PROD, "center")
    return ctx, finite_elements(P, rel_cover_leq(P, ctx.z)).finite


class TestHomogeneityRelation:
    def test_mo2_atoms(self):
        rel = homogeneity_relation(MO2.ortho, ctx_of(MO2, "Z01"), MO2.sets["I5"])
        assert sorted(rel.label_pairs()) == [
            ("0", "0"), ("a", "a'"), ("a'", "a"), ("b", "b'"), ("b'", "b")]

    def test_bottom_only(self):
        P = MO2.poset
        rel = homogeneity_relation(MO2.ortho, ctx_of(MO2, "Z01"), 1 << P.bottom)
        assert rel.label_pairs() == [("0", "0")]

    def test_boolean_square_collapses(self):
        P = B2.poset
        rel = homogeneity_relation(B2.ortho, ctx_of(B2, "Zfull"), P.full_mask)
        assert rel.label_pairs() == [("0", "0")]


class TestOrders:
    def test_top_of_mo2(self):
        P = MO2.poset
        orders = homogeneous_orders(MO2.ortho, ctx_of(MO2, "Z01"),
                                    MO2.sets["I5"], P.top)
        assert sorted(orders) == [2]
        members = sorted(P.label(m) for m in orders[2].members)
        assert members in (["a", "a'"], ["b", "b'"])

    def test_atom_is_order_one(self):
        P = MO2.poset
        orders = homogeneous_orders(MO2.ortho, ctx_of(MO2, "Z01"),
                                    MO2.sets["I5"], P.index("a"))
        assert sorted(orders) == [1]

    def test_product_top_has_no_order(self):
        ctx, finite = prod_finite()
        P = PROD.poset
        orders = homogeneous_orders(PROD.ortho, ctx, finite, P.top)
        assert orders == {}

    def test_witnesses_revalidate(self):
        ctx, finite = prod_finite()
        P = PROD.poset
        rel = homogeneity_relation(PROD.ortho, ctx, finite)
        for p in range(P.n):
            for order, witness in homogeneous_orders(
                    PROD.ortho, ctx, finite, p, rel).items():
                assert witness.order == order
                assert P.join(mask_of(witness.members)) == p
                for a in witness.members:
                    for b in witness.members:
                        if a != b:
                            assert rel.contains(a, b)


class TestOrderDense:
    def test_atoms_are_dense(self):
        assert is_order_dense(MO2.poset, MO2.sets["I5"]).ok

    def test_bottom_alone_is_not(self):
        cert = is_order_dense(MO2.poset, 1 << MO2.poset.bottom)
        assert cert.status == "fails"

    def test_missing_atom_witnessed(self):
        cert = is_order_dense(B2.poset, B2.poset.subset(["0", "a"]))
        assert cert.status == "fails"
        assert cert.counterexample["element"] == "b"


class TestDecomposition:
    def test_mo2_single_order_two_part(self):
        ctx = ctx_of(MO2, "Z01")
        decomposition, cert = homogeneous_decomposition(MO2.ortho, ctx,
                                                        MO2.sets["I5"])
        assert cert.ok
        P = MO2.poset
        assert {k: P.label(v) for k, v in decomposition.parts.items()} == {2: "1"}

    def test_product_splits_by_order(self):
        ctx, finite = prod_finite()
        P = PROD.poset
        decomposition, cert = homogeneous_decomposition(PROD.ortho, ctx, finite)
        assert cert.ok
        assert {k: P.label(v) for k, v in decomposition.parts.items()} == \
            {1: "1.0", 2: "0.1"}

    def test_boolean_square_is_order_one(self):
        ctx = ctx_of(B2, "Zfull")
        decomposition, cert = homogeneous_decomposition(B2.ortho, ctx,
                                                        B2.poset.full_mask)
        assert cert.ok
        assert {k: B2.poset.label(v) for k, v in decomposition.parts.items()} == \
            {1: "1"}

    def test_parts_orthogonal_and_join_to_top(self):
        ctx, finite = prod_finite()
        P = PROD.poset
        decomposition, cert = homogeneous_decomposition(PROD.ortho, ctx, finite)
        assert cert.ok
        parts = list(decomposition.parts.values())
        for i, a in enumerate(parts):
            for b in parts[i + 1:]:
                assert PROD.ortho.orthogonal(a, b)
                assert P.disjoint(a, b)
        assert P.join(mask_of(parts)) == P.top

    def test_hypothesis_gate(self):
        ctx = ctx_of(MO2, "Z01")
        _, cert = homogeneous_decomposition(MO2.ortho, ctx,
                                            1 << MO2.poset.bottom)
        assert cert.status == "hypothesis-not-satisfied"
        assert cert.details["failed_hypothesis"] == "i-order-dense"


class TestUniqueness:
    def test_mo2(self):
        ctx = ctx_of(MO2, "Z01")
        decomposition, cert = homogeneous_decomposition(MO2.ortho, ctx,
                                                        MO2.sets["I5"])
        assert cert.ok
        assert check_uniqueness(MO2.ortho, ctx, MO2.sets["I5"], decomposition).ok

    def test_product(self):
        ctx, finite = prod_finite()
        decomposition, cert = homogeneous_decomposition(PROD.ortho, ctx, finite)
        assert cert.ok
        assert check_uniqueness(PROD.ortho, ctx, finite, decomposition).ok

    def test_one_element_poset_vacuous(self):
        from podec.catalog import gen_chain
        point = gen_chain(0)
        ctx = ZContext(point.poset, point.poset.full_mask)
        decomposition, cert = homogeneous_decomposition(point.ortho, ctx,
                                                        point.poset.full_mask)
        assert cert.ok
        assert check_uniqueness(point.ortho, ctx, point.poset.full_mask,
                                decomposition).ok


class TestMergeMachinery:
    def test_blockwise_merge_keeps_pairwise_relation(self):
        # two Z-disjoint order-two elements in the square of MO2 merge into
        # an order-two witness for their join
        entry = gen_product(gen_mo(2), gen_mo(2), name="MO2xMO2")
        P = entry.poset
        centre = P.central_elements()
        ctx = ZContext(P, centre)
        i_mask = P.full_mask
        rel = homogeneity_relation(entry.ortho, ctx, i_mask)
        first = HomogeneityWitness(P.index("1.0"),
                                   (P.index("a.0"), P.index("a'.0")))
        second = HomogeneityWitness(P.index("0.1"),
                                    (P.index("0.b"), P.index("0.b'")))
        merged = merge_same_order(entry.ortho, ctx, first, second, rel)
        assert P.label(merged.element) == "1.1"
        assert {P.label(m) for m in merged.members} == {"a.b", "a'.b'"}

    def test_attain_cover_join_matches_target(self):
        for entry, set_name in ((MO2, "Z01"), (PROD, "center"), (B2, "Zfull")):
            P = entry.poset
            ctx = ctx_of(entry, set_name)
            for i_mask in (entry.sets.get("I5"), entry.sets["atoms0"],
                           P.full_mask):
                if i_mask is None or not is_z_complete(ctx, i_mask).ok:
                    continue
                target = P.join_within(
                    ctx.z, mask_of(ctx.cover(p) for p in bits(i_mask)))
                assert is_element(target)
                got = attain_cover_join(ctx, i_mask)
                assert i_mask >> got & 1
                assert ctx.cover(got) == target
