"""Homogeneous elements and the order-indexed decomposition of the top.

An element is homogeneous of order k for a relation R when it is the join of
k pairwise-R-related elements.  Over an orthocomplemented poset the canonical
relation pairs members of I that are orthogonal and share the same upper
Z-set; decomposing the top along it produces the pairwise-orthogonal central
family indexed by order.

Order-one convention: a singleton witness must lie inside I.  Unconstrained
singletons would make every element order-one homogeneous and void the
uniqueness precondition, while every witness the construction produces does
lie inside I.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .certificate import Certificate
from .ortho import Orthoposet, is_orthocomplete, is_perp_closed
from .poset import Poset, bits, is_element, mask_of
from .relations import Relation, rel_cover_eq
from .zstruct import (InternalSearchError, ZContext, central_split_witness,
                      is_z_complete)


@dataclass(frozen=True)
class HomogeneityWitness:
    """A join witness: pairwise-related members joining to the element."""

    element: int
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)


@dataclass
class HomogeneousDecomposition:
    """Order-indexed central elements, each carrying its witness."""

    parts: dict[int, int] = field(default_factory=dict)
    witnesses: dict[int, HomogeneityWitness] = field(default_factory=dict)
    steps: list[dict] = field(default_factory=list)
    merges: list[dict] = field(default_factory=list)


def homogeneity_relation(ortho: Orthoposet, ctx: ZContext, i_mask: int) -> Relation:
    """Pairs of I-members that are orthogonal with equal upper Z-sets."""
    if ctx.covers is None:
        raise InternalSearchError(
            "homogeneity relation needs Z to be a lower complete sublattice")
    P = ctx.poset
    same = rel_cover_eq(P, ctx.z)
    rows = []
    for p in range(P.n):
        if not i_mask >> p & 1:
            rows.append(0)
            continue
        row = 0
        for q in bits(i_mask):
            if ortho.orthogonal(p, q) and same.contains(p, q):
                row |= 1 << q
        rows.append(row)
    return Relation(P, tuple(rows))


def homogeneous_orders(ortho: Orthoposet, ctx: ZContext, i_mask: int, p: int,
                       relation: Relation | None = None) -> dict[int, HomogeneityWitness]:
    """Every order realised by p, each with one witness.

    Orders come from cliques of the homogeneity relation inside [0, p] whose
    join is p.  Order is not unique in general, hence the full set.
    """
    P = ctx.poset
    rel = relation if relation is not None else homogeneity_relation(ortho, ctx, i_mask)
    out: dict[int, HomogeneityWitness] = {}
    if p == P.bottom:
        out[0] = HomogeneityWitness(p, ())
    if i_mask >> p & 1:
        out[1] = HomogeneityWitness(p, (p,))
    candidates = [q for q in bits(P.down[p]) if rel.rows[q]]

    def grow(members, join_so_far, start):
        if len(members) >= 2:
            if join_so_far == p and len(members) not in out:
                out[len(members)] = HomogeneityWitness(p, tuple(members))
        for t in range(start, len(candidates)):
            x = candidates[t]
            if not all(rel.contains(m, x) for m in members):
                continue
            nj = P.join_pair(join_so_far, x) if members else x
            if not is_element(nj) or not P.leq(nj, p):
                continue
            grow(members + [x], nj, t + 1)

    grow([], P.bottom, 0)
    return out


def is_order_dense(P: Poset, i_mask: int) -> Certificate:
    """Every nonzero element dominates some nonzero member of I."""
    check = "order-dense"
    zero = 1 << P.bottom
    for p in range(P.n):
        if p == P.bottom:
            continue
        if P.down[p] & i_mask & ~zero == 0:
            return Certificate.fails(check, {"element": P.label(p)})
    return Certificate.holds(check)


def _is_upper_complete(P: Poset, z_mask: int) -> bool:
    """Every subset of Z has a join in P that lies in Z (incremental walk)."""
    elems = list(bits(z_mask))

    def walk(join_so_far, start):
        for t in range(start, len(elems)):
            j = P.join_pair(join_so_far, elems[t])
            if not is_element(j) or not z_mask >> j & 1:
                return False
            if not walk(j, t + 1):
                return False
        return True

    if not z_mask >> P.bottom & 1:
        return False
    return walk(P.bottom, 0)


def attain_cover_join(ctx: ZContext, j_mask: int) -> int:
    """A member of J whose cover equals the join (inside Z) of all J-covers.

    Constructive route following the completeness axioms: fold the members
    together, at each step splitting the newcomer across the accumulated
    cover with a centrality witness and joining the disjoint residue on.
    """
    P = ctx.poset
    elems = list(bits(j_mask))
    if not elems:
        raise InternalSearchError("cannot attain a cover over an empty set")
    acc = elems[0]
    for x in elems[1:]:
        acc_cover = ctx.cover(acc)
        if P.leq(ctx.cover(x), acc_cover):
            continue
        witness = central_split_witness(ctx, x, acc_cover)
        if witness is None:
            raise InternalSearchError("no centrality witness for the merge step")
        z, r, q1 = witness
        expected = P.join_within(ctx.z, (1 << acc_cover) | (1 << ctx.cover(x)))
        j = P.join_pair(acc, q1)
        if not is_element(j):
            raise InternalSearchError("merge join undefined")
        acc = j
        if ctx.cover(acc) != expected:
            raise InternalSearchError("merge step failed to extend the cover")
    return acc


def merge_same_order(ortho: Orthoposet, ctx: ZContext,
                     first: HomogeneityWitness, second: HomogeneityWitness,
                     relation: Relation) -> HomogeneityWitness:
    """Join two Z-disjoint homogeneous elements of equal order blockwise.

    Witness members are paired index by index; each blockwise join must again
    be pairwise related, which is asserted on every merge performed.
    """
    P = ctx.poset
    if first.order != second.order:
        raise InternalSearchError("blockwise merge needs equal orders")
    joined = P.join_pair(first.element, second.element)
    if not is_element(joined):
        raise InternalSearchError("merge target join undefined")
    members = []
    for a, b in zip(first.members, second.members):
        j = P.join_pair(a, b)
        if not is_element(j):
            raise InternalSearchError("blockwise member join undefined")
        members.append(j)
    witness = HomogeneityWitness(joined, tuple(members))
    problem = _witness_violation(P, relation, witness)
    if problem is not None:
        raise InternalSearchError(f"blockwise merge broke the witness: {problem}")
    return witness


def _witness_violation(P: Poset, relation: Relation, witness: HomogeneityWitness):
    if len(set(witness.members)) != len(witness.members):
        return "duplicate members"
    j = P.join(mask_of(witness.members))
    if j != witness.element:
        return "join mismatch"
    for a in witness.members:
        for b in witness.members:
            if a != b and not relation.contains(a, b):
                return f"members {P.label(a)}, {P.label(b)} unrelated"
    return None


def homogeneous_decomposition(ortho: Orthoposet, ctx: ZContext, i_mask: int
                              ) -> tuple[HomogeneousDecomposition, Certificate]:
    """Decompose the top into pairwise-orthogonal central parts by order.

    Runs the recursion: repeatedly pick a member of the residual part of I
    attaining the joined cover, shrink the residual under its complement, and
    read the parts off as alternating cover meets.  Every claimed property of
    the output is re-verified before the certificate says 'holds'.
    """
    check = "homogeneous-decomposition"
    P = ctx.poset
    decomposition = HomogeneousDecomposition()
    hyps = {}
    ortho_cert = is_orthocomplete(ortho)
    hyps["orthocomplete"] = ortho_cert.ok
    hyps["z-perp-closed"] = is_perp_closed(ortho, ctx.z)
    hyps["z-in-centre"] = (P.top is not None
                           and ctx.z & ~P.central_elements() == 0)
    hyps["z-lower-complete-sublattice"] = ctx.lower_complete.ok
    hyps["z-upper-complete-sublattice"] = _is_upper_complete(P, ctx.z)
    hyps["i-order-dense"] = is_order_dense(P, i_mask).ok
    hyps["i-z-complete"] = is_z_complete(ctx, i_mask).ok
    for name, ok in hyps.items():
        if not ok:
            return decomposition, Certificate.skipped(check, hyps, name)

    relation = homogeneity_relation(ortho, ctx, i_mask)
    zero = 1 << P.bottom
    chosen: list[int] = []
    joined = P.bottom
    residual = ortho.perp[P.bottom]
    for _ in range(P.n + 1):
        stage = i_mask & P.down[residual]
        if stage & ~zero == 0:
            break
        target = P.join_within(ctx.z, mask_of(ctx.cover(q) for q in bits(stage)))
        if not is_element(target):
            return decomposition, Certificate.fails(
                check, {"reason": "cover join undefined at a stage"}, hyps)
        pick = None
        for q in bits(stage):
            if ctx.cover(q) == target:
                pick = q
                break
        if pick is None:
            pick = attain_cover_join(ctx, stage)
            if ctx.cover(pick) != target:
                return decomposition, Certificate.fails(
                    check, {"reason": "no member attains the joined cover"}, hyps)
        chosen.append(pick)
        decomposition.steps.append({
            "picked": P.label(pick), "cover": P.label(target),
            "stage": P.labels_of(stage)})
        j = P.join_pair(joined, pick)
        if not is_element(j):
            return decomposition, Certificate.fails(
                check, {"reason": "join of picked members undefined"}, hyps)
        joined = j
        residual = ortho.perp[joined]
    else:
        return decomposition, Certificate.fails(
            check, {"reason": "recursion failed to terminate"}, hyps)

    if i_mask & P.down[residual] & ~zero:
        return decomposition, Certificate.fails(
            check, {"reason": "residual still meets I",
                    "residual": P.label(residual)}, hyps)
    if residual != P.bottom:
        # order density of I forces the leftover complement down to 0
        return decomposition, Certificate.fails(
            check, {"reason": "nonzero residual survived",
                    "residual": P.label(residual)}, hyps)

    raw: list[HomogeneityWitness] = []
    prefix = P.top
    for alpha, pick in enumerate(chosen):
        part = P.meet_pair(ortho.perp[ctx.cover(pick)], prefix)
        if not is_element(part):
            return decomposition, Certificate.fails(
                check, {"reason": "part meet undefined", "stage": alpha}, hyps)
        if part != P.bottom:
            raw.append(_stage_witness(P, ctx, part, chosen[:alpha]))
        nxt = P.meet_pair(prefix, ctx.cover(pick))
        if not is_element(nxt):
            return decomposition, Certificate.fails(
                check, {"reason": "cover meet undefined", "stage": alpha}, hyps)
        prefix = nxt
    if prefix != P.bottom:
        raw.append(_stage_witness(P, ctx, prefix, chosen))

    grouped: dict[int, HomogeneityWitness] = {}
    for witness in raw:
        order = witness.order
        if order in grouped:
            merged = merge_same_order(ortho, ctx, grouped[order], witness, relation)
            decomposition.merges.append({
                "order": order,
                "joined": P.label(merged.element)})
            grouped[order] = merged
        else:
            grouped[order] = witness
    for order, witness in sorted(grouped.items()):
        decomposition.parts[order] = witness.element
        decomposition.witnesses[order] = witness

    problem = _certify_decomposition(ortho, ctx, relation, decomposition)
    if problem is not None:
        return decomposition, Certificate.fails(check, problem, hyps)
    return decomposition, Certificate.holds(
        check, hyps,
        parts={order: P.label(el) for order, el in decomposition.parts.items()},
        merges=len(decomposition.merges))


def _stage_witness(P: Poset, ctx: ZContext, part: int,
                   earlier: list[int]) -> HomogeneityWitness:
    members = []
    for pick in earlier:
        m = P.meet_pair(part, pick)
        if not is_element(m):
            raise InternalSearchError("witness member meet undefined")
        members.append(m)
    return HomogeneityWitness(part, tuple(members))


def _certify_decomposition(ortho, ctx, relation, decomposition):
    P = ctx.poset
    parts = decomposition.parts
    for order, witness in decomposition.witnesses.items():
        if not ctx.z >> parts[order] & 1:
            return {"reason": "part escapes Z", "order": order}
        problem = _witness_violation(P, relation, witness)
        if problem is not None:
            return {"reason": f"witness invalid: {problem}", "order": order}
    orders = sorted(parts)
    for i, a in enumerate(orders):
        for b in orders[i + 1:]:
            if not ortho.orthogonal(parts[a], parts[b]):
                return {"reason": "parts not orthogonal",
                        "pair": [P.label(parts[a]), P.label(parts[b])]}
            if not P.disjoint(parts[a], parts[b]):
                return {"reason": "parts not disjoint",
                        "pair": [P.label(parts[a]), P.label(parts[b])]}
    total = P.join(mask_of(parts.values()))
    if total != P.top:
        return {"reason": "parts do not join to the top",
                "join": P.label(total) if is_element(total) else None}
    return None


def check_uniqueness(ortho: Orthoposet, ctx: ZContext, i_mask: int,
                     decomposition: HomogeneousDecomposition) -> Certificate:
    """Certify the decomposition is the only one once orders are unambiguous.

    Precondition: no nonzero member of Z realises two different orders.  Then
    each part must equal the join of the order's central members, and a scan
    over all orthogonal central families finds no distinct alternative.
    """
    check = "decomposition-uniqueness"
    P = ctx.poset
    relation = homogeneity_relation(ortho, ctx, i_mask)
    orders_of: dict[int, set[int]] = {}
    for z in ctx.zbits:
        orders_of[z] = set(homogeneous_orders(ortho, ctx, i_mask, z, relation))
    hyps = {}
    for z, orders in orders_of.items():
        if z != P.bottom and len(orders) > 1:
            hyps["orders-unique-on-Z"] = False
            return Certificate.skipped(
                check, hyps, "orders-unique-on-Z",
                {"z": P.label(z), "orders": sorted(orders)})
    hyps["orders-unique-on-Z"] = True

    for order, part in decomposition.parts.items():
        members = mask_of(z for z, orders in orders_of.items() if order in orders)
        j = P.join(members)
        if j != part:
            return Certificate.fails(check, {
                "reason": "part is not the join of its order's central members",
                "order": order, "part": P.label(part),
                "join": P.label(j) if is_element(j) else None}, hyps)

    candidates = [(z, next(iter(orders)))
                  for z, orders in orders_of.items()
                  if z != P.bottom and orders]
    families: list[dict[int, int]] = []

    def scan(index, family, used_orders):
        if index == len(candidates):
            if family and P.join(mask_of(z for z, _ in family)) == P.top:
                families.append({order: z for z, order in family})
            return
        scan(index + 1, family, used_orders)
        z, order = candidates[index]
        if order not in used_orders and all(
                ortho.orthogonal(z, w) and P.disjoint(z, w) for w, _ in family):
            scan(index + 1, family + [(z, order)], used_orders | {order})

    scan(0, [], set())
    if P.top == P.bottom:
        # one-element poset: uniqueness is vacuous
        return Certificate.holds(check, hyps, alternatives=0)
    expected = dict(decomposition.parts)
    if expected not in families:
        return Certificate.fails(check, {
            "reason": "computed decomposition not found by the family scan"}, hyps)
    distinct = [fam for fam in families if fam != expected]
    if distinct:
        sample = {order: P.label(z) for order, z in sorted(distinct[0].items())}
        return Certificate.fails(check, {
            "reason": "another orthogonal central family decomposes the top",
            "alternative": sample}, hyps)
    return Certificate.holds(check, hyps, alternatives=0)
