"""The two central type-decomposition results, as compute-and-certify operations.

Each operation checks its hypotheses first (and reports them in the
certificate rather than assuming them), computes the decomposition element
directly as a join, then certifies the characterising equivalence for every
member of Z and the uniqueness of the element by exhaustive scan.  On
hypothesis-passing inputs anything but 'holds' indicates a defect.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certificate import Certificate
from .poset import Poset, bits, is_element, mask_of
from .zstruct import (SUBSET_LIMIT, ZContext, ZStructError, is_z_complete,
                      iter_z_disjoint_subsets)


def _join_closure_failure(P: Poset, members_mask: int, inside_mask: int,
                          node_cap: int = 1 << 18):
    """First subset of ``members_mask`` whose join is missing or escapes
    ``inside_mask``; None when closed.  Joins are extended incrementally, so
    only defined prefixes are explored."""
    elems = list(bits(members_mask))
    visited = 0

    def walk(members, join_so_far, start):
        nonlocal visited
        for t in range(start, len(elems)):
            visited += 1
            if visited > node_cap:
                raise ZStructError("join closure enumeration exceeded node cap")
            x = elems[t]
            j = P.join_pair(join_so_far, x)
            cand = members + [x]
            if not is_element(j):
                return {"set": P.labels_of(mask_of(cand)), "join": None}
            if not inside_mask >> j & 1:
                return {"set": P.labels_of(mask_of(cand)), "join": P.label(j)}
            bad = walk(cand, j, t + 1)
            if bad is not None:
                return bad
        return None

    if not inside_mask >> P.bottom & 1:
        return {"set": [], "join": P.label(P.bottom)}
    return walk([], P.bottom, 0)


def _relative_join_closure_failure(P: Poset, region: int, members_mask: int,
                                   inside_mask: int):
    """Like `_join_closure_failure` but with joins taken inside ``region``."""
    elems = list(bits(members_mask))

    def walk(members, join_so_far, start):
        for t in range(start, len(elems)):
            x = elems[t]
            j = P.join_within(region, mask_of([join_so_far, x]) if members else 1 << x)
            cand = members + [x]
            if not is_element(j):
                return {"set": P.labels_of(mask_of(cand)), "join": None}
            if not inside_mask >> j & 1:
                return {"set": P.labels_of(mask_of(cand)), "join": P.label(j)}
            bad = walk(cand, j, t + 1)
            if bad is not None:
                return bad
        return None

    empty = P.join_within(region, 0)
    if not is_element(empty):
        return {"set": [], "join": None}
    if not inside_mask >> empty & 1:
        return {"set": [], "join": P.label(empty)}
    return walk([], empty, 0)


def _equivalence_fails(P: Poset, ctx: ZContext, z: int, trace_mask: int) -> int | None:
    """First y in Z violating: y n z = 0 iff [0,y] meets ``trace_mask`` only at 0."""
    zero = 1 << P.bottom
    for y in ctx.zbits:
        lhs = P.disjoint(y, z)
        rhs = P.down[y] & trace_mask == zero
        if lhs != rhs:
            return y
    return None


def decompose_join_central(ctx: ZContext, i_mask: int, *,
                           subset_limit: int = SUBSET_LIMIT) -> Certificate:
    """Split along z = join of the central members of I.

    Hypotheses: I and Z are Z-complete and Z is central for its own members.
    Certifies that the central members of I form a lower set of Z closed
    under all joins taken in the ambient poset, that z satisfies
    ``y n z = 0 iff [0,y] n I n Z = {0}`` for every y in Z, and that no other
    member of Z satisfies the same equivalence.
    """
    check = "decompose-join-central"
    P = ctx.poset
    hyps = {"i-z-complete": is_z_complete(ctx, i_mask, subset_limit=subset_limit).ok,
            "z-z-complete": is_z_complete(ctx, ctx.z, subset_limit=subset_limit).ok,
            "z-z-central": ctx.z_central.ok}
    for name, ok in hyps.items():
        if not ok:
            return Certificate.skipped(check, hyps, name)

    core = i_mask & ctx.z
    z = P.join(core)
    if not is_element(z):
        return Certificate.fails(check, {"reason": "join of I n Z undefined",
                                         "frontier": P.labels_of(mask_of(z.frontier))},
                                 hyps)
    # (a) lower set of Z, closed under ambient joins
    for w in bits(core):
        for y in bits(P.down[w] & ctx.z):
            if not core >> y & 1:
                return Certificate.fails(check, {
                    "reason": "I n Z is not a lower set of Z",
                    "member": P.label(w), "below": P.label(y)}, hyps)
    closure = _join_closure_failure(P, core, core)
    if closure is not None:
        return Certificate.fails(check, {"reason": "I n Z not join closed",
                                         **closure}, hyps)
    # (b) the characterising equivalence at z
    bad_y = _equivalence_fails(P, ctx, z, core)
    if bad_y is not None:
        return Certificate.fails(check, {"reason": "equivalence fails",
                                         "z": P.label(z), "y": P.label(bad_y)}, hyps)
    # (c) uniqueness by full scan of Z
    for other in ctx.zbits:
        if other == z:
            continue
        if _equivalence_fails(P, ctx, other, core) is None:
            return Certificate.fails(check, {"reason": "uniqueness fails",
                                             "z": P.label(z),
                                             "other": P.label(other)}, hyps)
    return Certificate.holds(check, hyps, z=P.label(z),
                             core=P.labels_of(core))


def decompose_join_covers(ctx: ZContext, i_mask: int, *,
                          subset_limit: int = SUBSET_LIMIT) -> Certificate:
    """Split along z = join (inside Z) of the covers of I.

    Hypotheses: Z is a lower complete sublattice, central for the whole
    poset, and I is Z-complete.  Certifies z is itself a cover of some member
    of I, the equivalence ``y n z = 0 iff [0,y] n I = {0}`` for every y in Z,
    uniqueness, and closure of the cover set under joins taken inside Z.
    """
    check = "decompose-join-covers"
    P = ctx.poset
    hyps = {"z-lower-complete-sublattice": ctx.lower_complete.ok,
            "z-p-central": ctx.p_central.ok,
            "i-z-complete": is_z_complete(ctx, i_mask, subset_limit=subset_limit).ok}
    for name, ok in hyps.items():
        if not ok:
            return Certificate.skipped(check, hyps, name)

    covers = mask_of(ctx.cover(p) for p in bits(i_mask))
    z = P.join_within(ctx.z, covers)
    if not is_element(z):
        return Certificate.fails(check, {"reason": "join of covers undefined in Z"},
                                 hyps)
    if not covers >> z & 1:
        return Certificate.fails(check, {"reason": "join is not itself a cover",
                                         "z": P.label(z)}, hyps)
    bad_y = _equivalence_fails(P, ctx, z, i_mask)
    if bad_y is not None:
        return Certificate.fails(check, {"reason": "equivalence fails",
                                         "z": P.label(z), "y": P.label(bad_y)}, hyps)
    for other in ctx.zbits:
        if other == z:
            continue
        if _equivalence_fails(P, ctx, other, i_mask) is None:
            return Certificate.fails(check, {"reason": "uniqueness fails",
                                             "z": P.label(z),
                                             "other": P.label(other)}, hyps)
    closure = _relative_join_closure_failure(P, ctx.z, covers, covers)
    if closure is not None:
        return Certificate.fails(check, {"reason": "cover set not join closed in Z",
                                         **closure}, hyps)
    return Certificate.holds(check, hyps, z=P.label(z),
                             covers=P.labels_of(covers))


def check_cover_ideal(ctx: ZContext, i_mask: int, *,
                      subset_limit: int = SUBSET_LIMIT) -> Certificate:
    """With Z additionally modular inside itself, the cover set of I is a
    complete ideal of Z: a lower set that is completely upwards directed."""
    check = "cover-ideal"
    P = ctx.poset
    hyps = {"z-lower-complete-sublattice": ctx.lower_complete.ok,
            "z-p-central": ctx.p_central.ok,
            "i-z-complete": is_z_complete(ctx, i_mask, subset_limit=subset_limit).ok,
            "z-z-modular": ctx.z_modular.ok}
    for name, ok in hyps.items():
        if not ok:
            return Certificate.skipped(check, hyps, name)

    covers = mask_of(ctx.cover(p) for p in bits(i_mask))
    for w in bits(covers):
        for y in bits(P.down[w] & ctx.z):
            if not covers >> y & 1:
                return Certificate.fails(check, {
                    "reason": "cover set is not a lower set of Z",
                    "member": P.label(w), "below": P.label(y)}, hyps)
    elems = list(bits(covers))
    for sub in range(1 << len(elems)):
        members = [elems[i] for i in range(len(elems)) if sub >> i & 1]
        bound = covers
        for m in members:
            bound &= P.up[m]
        if bound == 0:
            return Certificate.fails(check, {
                "reason": "cover set not upwards directed",
                "set": [P.label(m) for m in members]}, hyps)
    return Certificate.holds(check, hyps, covers=P.labels_of(covers))


@dataclass(frozen=True)
class SplitResult:
    """A complementary split of Z along z: the two lower cones inside Z."""

    element: int
    complement: int
    lower_z: int
    lower_complement: int
    central: bool
    central_partner: int | None


def complementary_split(ctx: ZContext, z: int) -> SplitResult | None:
    """Complement of z inside Z (meet 0, join the top inside Z), if any.

    Returns the pair of lower cones ([0,z] n Z, [0,y] n Z); when z is a
    central element of the whole poset the result also carries the product
    partner so callers can report the direct product decomposition.
    """
    P = ctx.poset
    if not ctx.z >> z & 1:
        raise ZStructError(f"{P.label(z)!r} is not a member of Z")
    top_of_z = None
    for g in ctx.zbits:
        if ctx.z & ~P.down[g] == 0:
            top_of_z = g
            break
    if top_of_z is None:
        return None
    for y in ctx.zbits:
        if not P.disjoint(y, z):
            continue
        if P.join_within(ctx.z, (1 << y) | (1 << z)) == top_of_z:
            central = P.top is not None and bool(P.central_elements() >> z & 1)
            partner = P.central_partner(z) if central else None
            return SplitResult(z, y, P.down[z] & ctx.z, P.down[y] & ctx.z,
                               central, partner)
    return None
