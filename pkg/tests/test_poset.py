import os

import pytest

from podec.catalog import catalog, fixture
from podec.poset import (NO_LEAST_UPPER_BOUND, NO_UPPER_BOUND, Poset,
                         PosetError, Undefined, bits, build_from_covers,
                         is_element, mask_of)

from oracles import oracle_join, oracle_meet

B2 = fixture("B2").poset
C3 = fixture("C3").poset
MO2 = fixture("MO2").poset


def two_coatom_poset():
    # two atoms below two incomparable co-atoms; no top
    return build_from_covers(
        ["0", "x", "y", "u", "v"], "0",
        [("0", "x"), ("0", "y"), ("x", "u"), ("x", "v"), ("y", "u"), ("y", "v")])


class TestConstruction:
    def test_boolean_square_from_covers(self):
        p = build_from_covers(["0", "a", "b", "1"], "0",
                              [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
        assert p == B2
        assert p.top == p.index("1")

    def test_chain_from_covers(self):
        p = build_from_covers(["0", "m", "1"], "0", [("0", "m"), ("m", "1")])
        assert p == C3

    def test_cycle_detected(self):
        with pytest.raises(PosetError, match="cycle"):
            build_from_covers(["0", "x", "y"], "0",
                              [("0", "x"), ("x", "y"), ("y", "x")])

    def test_duplicate_labels(self):
        with pytest.raises(PosetError, match="duplicate"):
            build_from_covers(["0", "x", "x"], "0", [])

    def test_bottom_not_global_minimum(self):
        with pytest.raises(PosetError, match="not below"):
            build_from_covers(["0", "x", "y"], "0", [("0", "x")])

    def test_guardrail(self):
        labels = [f"e{i}" for i in range(65)]
        covers = [("e0", l) for l in labels[1:]]
        with pytest.raises(PosetError, match="guardrail"):
            build_from_covers(labels, "e0", covers)
        build_from_covers(labels, "e0", covers, max_n=70)

    def test_guardrail_env_override(self):
        labels = [f"e{i}" for i in range(65)]
        covers = [("e0", l) for l in labels[1:]]
        os.environ["PODEC_MAX_N"] = "80"
        try:
            build_from_covers(labels, "e0", covers)
        finally:
            del os.environ["PODEC_MAX_N"]

    def test_cover_extraction_round_trip(self):
        for entry in catalog():
            P = entry.poset
            covers = [(P.label(p), P.label(q)) for p, q in P.cover_pairs]
            rebuilt = build_from_covers(P.labels, P.label(P.bottom), covers)
            assert rebuilt == P


class TestJoinMeet:
    def test_join_of_atoms_in_square(self):
        assert B2.join(B2.subset(["a", "b"])) == B2.index("1")

    def test_empty_join_is_bottom(self):
        for P in (B2, C3, MO2):
            assert P.join(0) == P.bottom

    def test_join_undefined_with_frontier(self):
        P = two_coatom_poset()
        j = P.join(P.subset(["x", "y"]))
        assert isinstance(j, Undefined)
        assert j.reason == NO_LEAST_UPPER_BOUND
        assert sorted(P.label(f) for f in j.frontier) == ["u", "v"]

    def test_meet_of_atoms_in_mo2(self):
        assert MO2.meet(MO2.subset(["a", "b"])) == MO2.bottom

    def test_empty_meet_is_top(self):
        assert B2.meet(0) == B2.index("1")

    def test_empty_meet_without_top(self):
        P = two_coatom_poset()
        m = P.meet(0)
        assert isinstance(m, Undefined)
        assert m.reason == NO_UPPER_BOUND
        assert sorted(P.label(f) for f in m.frontier) == ["u", "v"]

    def test_singleton_meet(self):
        assert MO2.meet(1 << MO2.index("1")) == MO2.index("1")

    def test_against_oracle_on_catalog(self):
        for entry in catalog():
            P = entry.poset
            if P.n > 8:
                continue
            for mask in range(1 << P.n):
                members = list(bits(mask))
                status, value = oracle_join(P, members)
                got = P.join(mask)
                if status == "ok":
                    assert got == value, (entry.name, members)
                else:
                    assert isinstance(got, Undefined)
                    if got.reason == NO_LEAST_UPPER_BOUND:
                        assert sorted(got.frontier) == value
                status, value = oracle_meet(P, members)
                got = P.meet(mask)
                if status == "ok":
                    assert got == value
                else:
                    assert isinstance(got, Undefined)

    def test_bound_properties(self):
        # joins dominate members and sit below every other upper bound
        for entry in catalog():
            P = entry.poset
            if P.n > 6:
                continue
            for mask in range(1 << P.n):
                j = P.join(mask)
                if not is_element(j):
                    continue
                assert all(P.leq(s, j) for s in bits(mask))
                for u in range(P.n):
                    if all(P.leq(s, u) for s in bits(mask)):
                        assert P.leq(j, u)


class TestInterval:
    def test_square(self):
        assert B2.labels_of(B2.interval(B2.index("0"), B2.index("a"))) == ["0", "a"]

    def test_atom_to_top_in_mo2(self):
        got = MO2.labels_of(MO2.interval(MO2.index("a"), MO2.index("1")))
        assert got == ["a", "1"]

    def test_empty_when_incomparable(self):
        assert C3.interval(C3.index("1"), C3.index("0")) == 0


class TestSubposet:
    def test_bounds_of_mo2(self):
        sub = MO2.subposet(MO2.subset(["0", "1"]))
        assert sub.labels == ("0", "1")
        assert sub.top is not None

    def test_full_subset_is_identity(self):
        assert B2.subposet(B2.full_mask) == B2

    def test_requires_bottom(self):
        with pytest.raises(PosetError, match="bottom"):
            MO2.subposet(MO2.subset(["a", "1"]))

    def test_relative_join_can_exceed_ambient_join(self):
        P = build_from_covers(
            ["0", "x", "y", "m", "w", "1"], "0",
            [("0", "x"), ("0", "y"), ("x", "m"), ("y", "m"), ("m", "w"), ("w", "1")])
        pair = P.subset(["x", "y"])
        assert P.join(pair) == P.index("m")
        region = P.subset(["0", "x", "y", "w", "1"])
        assert P.join_within(region, pair) == P.index("w")
        sub = P.subposet(region)
        assert sub.join(sub.subset(["x", "y"])) == sub.index("w")


class TestProduct:
    def test_square_of_two_chain(self):
        C2 = fixture("C3").poset.subposet(fixture("C3").poset.subset(["0", "1"]))
        prod = C2.product(C2)
        assert prod.n == 4
        # order-isomorphic to the Boolean square: same level sizes, top, bottom
        down_sizes = sorted(prod.down[p].bit_count() for p in range(4))
        assert down_sizes == sorted(B2.down[p].bit_count() for p in range(4))
        assert prod.top is not None

    def test_product_cardinality(self):
        assert fixture("B1xMO2").poset.n == 2 * 6

    def test_product_with_point_is_identity(self):
        point = build_from_covers(["0"], "0", [])
        prod = B2.product(point)
        assert prod.n == B2.n
        assert [row >> 0 for row in prod.up] == list(B2.up)

    def test_componentwise_order(self):
        left, right = C3, MO2
        prod = left.product(right)
        for i in range(left.n):
            for j in range(right.n):
                for k in range(left.n):
                    for l in range(right.n):
                        expected = left.leq(i, k) and right.leq(j, l)
                        assert prod.leq(i * right.n + j, k * right.n + l) == expected


class TestCentralElements:
    def test_boolean_square_everything_central(self):
        assert B2.labels_of(B2.central_elements()) == ["0", "a", "b", "1"]

    def test_mo2_trivial_centre(self):
        assert MO2.labels_of(MO2.central_elements()) == ["0", "1"]

    def test_chain_trivial_centre(self):
        assert C3.labels_of(C3.central_elements()) == ["0", "1"]

    def test_bounds_always_central_with_partner_symmetry(self):
        for entry in catalog():
            P = entry.poset
            centre = P.central_elements()
            assert centre >> P.bottom & 1
            assert centre >> P.top & 1
            for z in bits(centre):
                partner = P.central_partner(z)
                assert partner is not None
                assert centre >> partner & 1

    def test_needs_top(self):
        with pytest.raises(PosetError, match="top"):
            two_coatom_poset().central_elements()

    def test_product_centre_is_product_of_centres(self):
        prod = fixture("B1xMO2").poset
        got = set(prod.labels_of(prod.central_elements()))
        assert got == {"0.0", "0.1", "1.0", "1.1"}
