"""Everything relative to a distinguished subset Z of a poset.

Z plays the role classically taken by the centre: Z-disjoint families are
those dominated by pairwise-disjoint members of Z, Z-complete subsets are
closed under joins of such families and under splitting them, and the cover
of an element is the least member of Z above it.  A :class:`ZContext` bundles
one (poset, Z) pair together with memoised structural facts so sweeps over
many candidate subsets stay cheap.
"""

from __future__ import annotations

import random
from functools import cached_property

from .certificate import Certificate, FAILS, HOLDS, SAMPLED
from .poset import Poset, PosetError, Undefined, bits, is_element, mask_of

SUBSET_LIMIT = 16
ENUM_NODE_CAP = 1 << 18
SAMPLE_TRIALS = 512


class ZStructError(PosetError):
    pass


class HypothesisError(ZStructError):
    """An operation's stated hypothesis does not hold for these inputs."""

    def __init__(self, check: str, hypothesis: str, witness=None):
        super().__init__(f"{check}: hypothesis {hypothesis!r} not satisfied")
        self.check = check
        self.hypothesis = hypothesis
        self.witness = witness


class InternalSearchError(ZStructError):
    """A search the theory guarantees to succeed came up empty (a bug)."""


class ZContext:
    """One poset with one distinguished subset, plus caches.

    All cached flags are pure functions of (poset, z) and can be recomputed
    from scratch with identical results; construction itself stores nothing
    beyond the pair.
    """

    def __init__(self, poset: Poset, z: int):
        if z & ~poset.full_mask:
            raise ZStructError("Z references elements out of range")
        self.poset = poset
        self.z = z
        self._pair_memo: dict[tuple[int, int], bool] = {}
        self._complete_memo: dict[int, Certificate] = {}
        self._cond1_memo: dict[int, tuple] = {}

    @cached_property
    def zbits(self) -> tuple[int, ...]:
        return tuple(bits(self.z))

    # -- structural flags ----------------------------------------------------

    @cached_property
    def lower_complete(self) -> Certificate:
        return is_lower_complete_sublattice(self.poset, self.z)

    @cached_property
    def covers(self) -> tuple[int, ...] | None:
        """Per-element least Z-member above it, present iff Z is a lower
        complete sublattice (which makes every cover defined and a member)."""
        if not self.lower_complete.ok:
            return None
        P = self.poset
        out = []
        for p in range(P.n):
            above = P.up[p] & self.z
            least = None
            for c in bits(above):
                if above & ~P.up[c] == 0:
                    least = c
                    break
            if least is None:
                return None
            out.append(least)
        return tuple(out)

    def cover(self, p: int) -> int:
        """Least member of Z above p; requires the lower-complete flag."""
        covers = self.covers
        if covers is None:
            raise HypothesisError("central-cover", "Z-lower-complete-sublattice",
                                  self.lower_complete.counterexample)
        return covers[p]

    @cached_property
    def p_modular(self) -> Certificate:
        return is_p_modular(self.poset, self.z)

    @cached_property
    def z_modular(self) -> Certificate:
        return is_z_modular(self.poset, self.z)

    @cached_property
    def p_central(self) -> Certificate:
        return is_s_central(self, self.poset.full_mask)

    @cached_property
    def z_central(self) -> Certificate:
        return is_s_central(self, self.z)

    @cached_property
    def z_directed(self) -> Certificate:
        return is_z_directed(self)

    @cached_property
    def self_complete(self) -> Certificate:
        """Whether the whole poset is Z-complete."""
        return is_z_complete(self, self.poset.full_mask)

    @cached_property
    def pseudocomplements(self) -> dict[int, int] | None:
        """z -> largest member of Z disjoint from z, when every z has one."""
        table = {}
        for w in self.zbits:
            pc = pseudocomplement_in_z(self, w)
            if not is_element(pc):
                return None
            table[w] = pc
        return table

    # -- disjointness primitives ---------------------------------------------

    def pair_z_disjoint(self, p: int, q: int) -> bool:
        """{p, q} is dominated by a disjoint pair from Z."""
        key = (p, q) if p <= q else (q, p)
        hit = self._pair_memo.get(key)
        if hit is not None:
            return hit
        P = self.poset
        covers = self.covers
        if covers is not None:
            out = P.disjoint(covers[p], covers[q])
        else:
            out = False
            for y in bits(P.up[p] & self.z):
                for w in bits(P.up[q] & self.z):
                    if P.disjoint(y, w):
                        out = True
                        break
                if out:
                    break
        self._pair_memo[key] = out
        return out

    @cached_property
    def disjoint_pairs(self) -> tuple[tuple[int, int, int | None], ...]:
        """All Z-disjoint unordered pairs with their join (None if undefined)."""
        P = self.poset
        out = []
        for p in range(P.n):
            for q in range(p + 1, P.n):
                if self.pair_z_disjoint(p, q):
                    j = P.join_pair(p, q)
                    out.append((p, q, j if is_element(j) else None))
        return tuple(out)

    @cached_property
    def meet_images(self) -> tuple[int | None, ...]:
        """Per element, the mask of its meets with Z members; None when one
        of those meets is undefined."""
        P = self.poset
        out = []
        for p in range(P.n):
            acc = 0
            ok = True
            for z in self.zbits:
                m = P.meet_pair(p, z)
                if not is_element(m):
                    ok = False
                    break
                acc |= 1 << m
            out.append(acc if ok else None)
        return tuple(out)

    @cached_property
    def square(self) -> tuple["Poset", "ZContext"]:
        """The squared poset with the diagonal copy of Z, shared by all
        relation-level checks on this context."""
        P = self.poset
        PP = P.product(P, max_n=P.n * P.n)
        diag = mask_of(z * P.n + z for z in bits(self.z))
        return PP, ZContext(PP, diag)

    @cached_property
    def disjoint_families(self) -> tuple[tuple[int, int | None], ...] | None:
        """(mask, join) for every Z-disjoint subset of the whole poset.

        Computed once and scanned by the per-subset checks; None when the
        enumeration blows past the node cap, in which case callers fall back
        to direct per-subset enumeration or sampling.
        """
        try:
            return tuple((mask_of(members), join) for members, join
                         in iter_z_disjoint_subsets(self, self.poset.full_mask))
        except InternalSearchError:
            return None

    def __repr__(self):
        return f"ZContext({self.poset!r}, Z={self.poset.labels_of(self.z)})"


# -- disjoint witnesses -------------------------------------------------------

def z_disjoint_witness(ctx: ZContext, s_mask: int, method: str = "auto"):
    """A map f with p <= f(p) in Z and f-values pairwise disjoint, or None.

    ``method`` picks between the backtracking search over candidate
    dominators and the cover shortcut (pairwise-disjoint covers), which is
    valid exactly when Z is a lower complete sublattice.  Candidates are
    tried lowest first so small witnesses are found early; any witness is as
    good as any other.
    """
    P = ctx.poset
    elems = list(bits(s_mask))
    if not elems:
        return {}
    if method == "auto":
        method = "covers" if ctx.covers is not None else "backtracking"
    if method == "covers":
        covers = ctx.covers
        if covers is None:
            raise ZStructError("cover shortcut needs Z to be a lower complete sublattice")
        for a in range(len(elems)):
            for b in range(a + 1, len(elems)):
                if not P.disjoint(covers[elems[a]], covers[elems[b]]):
                    return None
        return {p: covers[p] for p in elems}
    candidates = []
    for p in elems:
        cs = sorted(bits(P.up[p] & ctx.z),
                    key=lambda c: (P.down[c].bit_count(), c))
        if not cs:
            return None
        candidates.append(cs)
    chosen: list[int] = []

    def place(i):
        if i == len(elems):
            return True
        for c in candidates[i]:
            if all(P.disjoint(c, prev) for prev in chosen):
                chosen.append(c)
                if place(i + 1):
                    return True
                chosen.pop()
        return False

    if place(0):
        return {p: chosen[i] for i, p in enumerate(elems)}
    return None


def is_z_disjoint(ctx: ZContext, s_mask: int, method: str = "auto") -> bool:
    return z_disjoint_witness(ctx, s_mask, method) is not None


def iter_z_disjoint_subsets(ctx: ZContext, universe_mask: int, node_cap: int = ENUM_NODE_CAP):
    """Yield (members, join) for every Z-disjoint subset of the universe.

    ``join`` is an element index or None when undefined.  Enumeration prunes
    on the fact that subsets of Z-disjoint sets are Z-disjoint; it raises
    InternalSearchError only if the node cap is hit, which callers translate
    into a 'sampled' verdict.
    """
    P = ctx.poset
    elems = list(bits(universe_mask))
    fast = ctx.covers is not None
    visited = 0

    def ok_extension(members, x):
        if not all(ctx.pair_z_disjoint(m, x) for m in members):
            return False
        if fast:
            return True
        return is_z_disjoint(ctx, mask_of(members + [x]), method="backtracking")

    def walk(members, join_so_far, start):
        nonlocal visited
        visited += 1
        if visited > node_cap:
            raise InternalSearchError("Z-disjoint subset enumeration exceeded node cap")
        yield list(members), join_so_far
        for t in range(start, len(elems)):
            x = elems[t]
            if join_so_far is None:
                j = P.join(mask_of(members + [x]))
            else:
                j = P.join_pair(join_so_far, x)
            if not ok_extension(members, x):
                continue
            nj = j if is_element(j) else None
            yield from walk(members + [x], nj, t + 1)

    if not fast:
        # singletons need some dominator at all
        elems = [p for p in elems if P.up[p] & ctx.z]
        yield [], P.bottom
        for i, x in enumerate(elems):
            yield from walk([x], x, i + 1)
    else:
        yield from walk([], P.bottom, 0)


# -- Z-completeness -----------------------------------------------------------

def _condition_one(ctx: ZContext, i_mask: int, subset_limit: int, rng_seed: int):
    """First closure condition: joins of Z-disjoint subsets of I stay in I.

    Returns (counterexample | None, exact flag).  The precomputed family
    table turns the check into one scan; subsets of I are exactly the
    families contained in I because Z-disjointness is hereditary.
    """
    P = ctx.poset
    default = subset_limit == SUBSET_LIMIT and rng_seed == 0
    if default and i_mask in ctx._cond1_memo:
        return ctx._cond1_memo[i_mask]
    families = ctx.disjoint_families
    if families is not None:
        out = (None, True)
        for family, join in families:
            if family & ~i_mask:
                continue
            if join is None:
                out = ({"condition": 1, "set": P.labels_of(family),
                        "join": None}, True)
                break
            if not i_mask >> join & 1:
                out = ({"condition": 1, "set": P.labels_of(family),
                        "join": P.label(join)}, True)
                break
        if default:
            ctx._cond1_memo[i_mask] = out
        return out
    size = (i_mask & P.full_mask).bit_count()
    if ctx.covers is None and size > subset_limit:
        return _condition_one_sampled(ctx, i_mask, rng_seed)
    try:
        for members, join in iter_z_disjoint_subsets(ctx, i_mask):
            if join is None:
                return {"condition": 1, "set": P.labels_of(mask_of(members)),
                        "join": None}, True
            if not i_mask >> join & 1:
                return {"condition": 1, "set": P.labels_of(mask_of(members)),
                        "join": P.label(join)}, True
    except InternalSearchError:
        return _condition_one_sampled(ctx, i_mask, rng_seed)
    return None, True


def _condition_one_sampled(ctx: ZContext, i_mask: int, rng_seed: int):
    P = ctx.poset
    elems = list(bits(i_mask))
    rng = random.Random(rng_seed ^ i_mask)
    if not i_mask >> P.bottom & 1:
        return {"condition": 1, "set": [], "join": P.label(P.bottom)}, False
    for _ in range(SAMPLE_TRIALS):
        k = rng.randint(1, min(6, len(elems)))
        members = sorted(rng.sample(elems, k))
        if not is_z_disjoint(ctx, mask_of(members)):
            continue
        j = P.join(mask_of(members))
        if not is_element(j):
            return {"condition": 1, "set": P.labels_of(mask_of(members)),
                    "join": None}, False
        if not i_mask >> j & 1:
            return {"condition": 1, "set": P.labels_of(mask_of(members)),
                    "join": P.label(j)}, False
    return None, False


def _condition_two(ctx: ZContext, i_mask: int):
    """Second condition: a Z-disjoint pair joining into I lies inside I."""
    P = ctx.poset
    for p, q, j in ctx.disjoint_pairs:
        if j is None or not i_mask >> j & 1:
            continue
        if not (i_mask >> p & 1 and i_mask >> q & 1):
            missing = p if not i_mask >> p & 1 else q
            return {"condition": 2, "pair": [P.label(p), P.label(q)],
                    "join": P.label(j), "missing": P.label(missing)}
    return None


def is_z_complete(ctx: ZContext, i_mask: int, *,
                  subset_limit: int = SUBSET_LIMIT, rng_seed: int = 0) -> Certificate:
    """Both closure conditions for I relative to Z.

    The empty family always counts, so the bottom must belong to I.  With Z a
    lower complete sublattice the subset sweep runs on cover cliques and is
    exact at any size; otherwise it enumerates directly up to
    ``subset_limit`` members and degrades to sampling beyond.
    """
    default = subset_limit == SUBSET_LIMIT and rng_seed == 0
    if default and i_mask in ctx._complete_memo:
        return ctx._complete_memo[i_mask]
    cex, exact = _condition_one(ctx, i_mask, subset_limit, rng_seed)
    if cex is None:
        cex = _condition_two(ctx, i_mask)
    if cex is not None:
        cert = Certificate.fails("z-complete", cex, exact=exact)
    elif exact:
        cert = Certificate.holds("z-complete", exact=True)
    else:
        cert = Certificate.sampled("z-complete", exact=False)
    if default:
        ctx._complete_memo[i_mask] = cert
    return cert


# -- centrality ---------------------------------------------------------------

def is_s_central(ctx: ZContext, s_mask: int) -> Certificate:
    """Every p in S splits across every y in Z against some disjoint z in Z.

    The split is p = q v r with q <= y, r <= z; the search tries the natural
    candidate (p n y, p n z) first and falls back to all pairs below p.
    """
    P = ctx.poset
    for p in bits(s_mask):
        for y in ctx.zbits:
            if not _central_split_exists(ctx, p, y):
                return Certificate.fails(
                    "s-central",
                    {"element": P.label(p), "against": P.label(y)})
    return Certificate.holds("s-central")


def _central_split_exists(ctx: ZContext, p: int, y: int) -> bool:
    P = ctx.poset
    for z in ctx.zbits:
        if not P.disjoint(y, z):
            continue
        q = P.meet_pair(p, y)
        r = P.meet_pair(p, z)
        if is_element(q) and is_element(r) and P.join_pair(q, r) == p:
            return True
        down_p = P.down[p]
        for q2 in bits(P.down[y] & down_p):
            for r2 in bits(P.down[z] & down_p):
                if P.join_pair(q2, r2) == p:
                    return True
    return False


def central_split_witness(ctx: ZContext, p: int, y: int):
    """The (z, q, r) witness behind `is_s_central`, or None."""
    P = ctx.poset
    for z in ctx.zbits:
        if not P.disjoint(y, z):
            continue
        q = P.meet_pair(p, y)
        r = P.meet_pair(p, z)
        if is_element(q) and is_element(r) and P.join_pair(q, r) == p:
            return z, q, r
        down_p = P.down[p]
        for q2 in bits(P.down[y] & down_p):
            for r2 in bits(P.down[z] & down_p):
                if P.join_pair(q2, r2) == p:
                    return z, q2, r2
    return None


# -- sublattice and modularity checks ------------------------------------------

def is_lower_complete_sublattice(P: Poset, z_mask: int) -> Certificate:
    """Every subset of Z has a meet in P that lies in Z.

    Finitely this reduces to: the top exists and belongs to Z (the empty
    meet), and all pairwise meets of members exist and are members.  The
    reduction is validated against the exhaustive definition in the tests.
    """
    check = "lower-complete-sublattice"
    if P.top is None or not z_mask >> P.top & 1:
        return Certificate.fails(check, {"subset": [], "meet": "top",
                                         "reason": "empty meet (the top) is not a member"})
    zs = list(bits(z_mask))
    for a in range(len(zs)):
        for b in range(a + 1, len(zs)):
            m = P.meet_pair(zs[a], zs[b])
            if not is_element(m) or not z_mask >> m & 1:
                return Certificate.fails(
                    check,
                    {"subset": [P.label(zs[a]), P.label(zs[b])],
                     "meet": P.label(m) if is_element(m) else None})
    return Certificate.holds(check)


def lower_complete_exhaustive(P: Poset, z_mask: int, limit: int = 20) -> bool:
    """Direct check over all subsets of Z; test oracle for the pairwise rule."""
    zs = list(bits(z_mask))
    if len(zs) > limit:
        raise ZStructError("exhaustive sublattice check too large")
    for sub in range(1 << len(zs)):
        members = mask_of(zs[i] for i in range(len(zs)) if sub >> i & 1)
        m = P.meet(members)
        if not is_element(m) or not z_mask >> m & 1:
            return False
    return True


def is_p_modular(P: Poset, z_mask: int) -> Certificate:
    """Disjoint pairs from Z are modular pairs for the ambient order:
    q = z n (p v q) whenever p <= y, q <= z, y n z = 0 and p v q exists."""
    check = "p-modular"
    zs = list(bits(z_mask))
    for y in zs:
        for z in zs:
            if not P.disjoint(y, z):
                continue
            for p in bits(P.down[y]):
                for q in bits(P.down[z]):
                    j = P.join_pair(p, q)
                    if not is_element(j):
                        continue
                    m = P.meet_pair(z, j)
                    if m != q:
                        return Certificate.fails(check, {
                            "y": P.label(y), "z": P.label(z),
                            "p": P.label(p), "q": P.label(q),
                            "join": P.label(j),
                            "meet": P.label(m) if is_element(m) else None})
    return Certificate.holds(check)


def is_z_modular(P: Poset, z_mask: int) -> Certificate:
    """The same modularity law run inside the induced subposet on Z.

    The subposet always includes the ambient bottom so disjointness keeps its
    meaning; for a lower complete sublattice the two readings agree.
    """
    region = z_mask | 1 << P.bottom
    sub = P.subposet(region)
    inner_z = sub.subset(P.labels_of(z_mask))
    cert = is_p_modular(sub, inner_z)
    cert.check = "z-modular"
    return cert


def is_z_directed(ctx: ZContext) -> Certificate:
    """Every Z-disjoint pair has a join."""
    P = ctx.poset
    for p, q, j in ctx.disjoint_pairs:
        if j is None:
            return Certificate.fails("z-directed",
                                     {"pair": [P.label(p), P.label(q)]})
    return Certificate.holds("z-directed")


# -- covers and pseudocomplements ----------------------------------------------

def central_cover(ctx: ZContext, p: int) -> int:
    """The least member of Z above p (requires Z lower complete)."""
    return ctx.cover(p)


def pseudocomplement_in_z(ctx: ZContext, z: int):
    """Largest member of Z disjoint from z, taken as a join inside Z.

    Undefined either when that join does not exist in Z or when it exists but
    fails to be disjoint from z itself.
    """
    P = ctx.poset
    if not ctx.z >> z & 1:
        raise ZStructError(f"{P.label(z)!r} is not a member of Z")
    disjoint = mask_of(y for y in ctx.zbits if P.disjoint(y, z))
    j = P.join_within(ctx.z, disjoint)
    if not is_element(j):
        return j
    if not P.disjoint(j, z):
        return Undefined("join-not-disjoint", (j,))
    return j


# -- characterisation cross-checks ----------------------------------------------

def crosscheck_meet_closure(ctx: ZContext, i_mask: int, *,
                            subset_limit: int = SUBSET_LIMIT) -> Certificate:
    """Compare Z-completeness with the meet-closure characterisation.

    The alternative conditions are the subset-join closure plus `p n z stays
    in I`.  With Z modular over the ambient poset the alternative implies
    Z-completeness; when Z is additionally central for the whole poset the
    directions become an equivalence.  Any disagreement inside the licensed
    direction is a library bug and is reported as a failure.
    """
    check = "meet-closure-crosscheck"
    P = ctx.poset
    hyps = {"z-p-modular": ctx.p_modular.ok}
    if not hyps["z-p-modular"]:
        return Certificate.skipped(check, hyps, "z-p-modular",
                                   ctx.p_modular.counterexample)
    both_ways = ctx.p_central.ok
    hyps["z-p-central"] = both_ways

    direct = is_z_complete(ctx, i_mask, subset_limit=subset_limit)
    cond1, exact = _condition_one(ctx, i_mask, subset_limit, 0)
    meet_cex = None
    images = ctx.meet_images
    for p in bits(i_mask):
        img = images[p]
        if img is not None and img & ~i_mask == 0:
            continue
        for z in ctx.zbits:
            m = P.meet_pair(p, z)
            if not is_element(m) or not i_mask >> m & 1:
                meet_cex = {"p": P.label(p), "z": P.label(z),
                            "meet": P.label(m) if is_element(m) else None}
                break
        break
    alternative = cond1 is None and meet_cex is None

    if alternative and not direct.ok:
        return Certificate.fails(check, {
            "direction": "alternative-implies-complete",
            "direct": direct.to_json()}, hyps)
    if both_ways and direct.ok and not alternative:
        return Certificate.fails(check, {
            "direction": "complete-implies-alternative",
            "condition1": cond1, "meet_closure": meet_cex}, hyps)
    status = SAMPLED if (direct.status == SAMPLED or not exact) else HOLDS
    return Certificate(check, status, hyps,
                       {"direct": direct.status, "alternative": alternative})


def crosscheck_bidirectional(ctx: ZContext, i_mask: int, *,
                             subset_limit: int = SUBSET_LIMIT) -> Certificate:
    """Compare Z-completeness with the symmetric characterisation.

    For a Z-complete ambient poset with pseudocomplemented Z, I is Z-complete
    exactly when membership of a Z-disjoint family and membership of its join
    always agree.  The verdicts of the two routes must coincide.
    """
    check = "bidirectional-crosscheck"
    hyps = {"poset-z-complete": ctx.self_complete.ok}
    if not hyps["poset-z-complete"]:
        return Certificate.skipped(check, hyps, "poset-z-complete",
                                   ctx.self_complete.counterexample)
    hyps["z-pseudocomplemented"] = ctx.pseudocomplements is not None
    if not hyps["z-pseudocomplemented"]:
        return Certificate.skipped(check, hyps, "z-pseudocomplemented")

    P = ctx.poset
    direct = is_z_complete(ctx, i_mask, subset_limit=subset_limit)
    families = ctx.disjoint_families
    if families is None:
        return Certificate.sampled(check, hyps, note="enumeration capped")
    characterisation = True
    witness = None
    for family, join in families:
        inside = family & ~i_mask == 0
        join_inside = join is not None and bool(i_mask >> join & 1)
        if inside != join_inside:
            characterisation = False
            witness = {"set": P.labels_of(family),
                       "join": P.label(join) if join is not None else None}
            break
    if direct.ok != characterisation:
        return Certificate.fails(check, {
            "direct": direct.status,
            "characterisation": characterisation,
            "witness": witness}, hyps)
    return Certificate(check, direct.status if direct.status == SAMPLED else HOLDS,
                       hyps, {"verdict": characterisation})


# -- cover-meet decomposition ----------------------------------------------------

def _require(ctx: ZContext, check: str, names: tuple[str, ...]):
    certs = {
        "z-lower-complete-sublattice": lambda: ctx.lower_complete,
        "z-z-modular": lambda: ctx.z_modular,
        "z-p-modular": lambda: ctx.p_modular,
        "z-p-central": lambda: ctx.p_central,
        "z-z-central": lambda: ctx.z_central,
        "z-directed": lambda: ctx.z_directed,
    }
    for name in names:
        cert = certs[name]()
        if not cert.ok:
            raise HypothesisError(check, name, cert.counterexample)


def cover_meet_decomposition(ctx: ZContext, p: int, z: int) -> int:
    """An element q below both p and z whose cover is cover(p) n z.

    Also asserts the hull identity cover(p n z) = cover(p) n z whenever the
    meet exists.  The hypotheses guarantee q exists, so an exhausted search
    is an internal error, not a certificate.
    """
    check = "cover-meet-decomposition"
    P = ctx.poset
    if not ctx.z >> z & 1:
        raise ZStructError(f"{P.label(z)!r} is not a member of Z")
    _require(ctx, check, ("z-lower-complete-sublattice", "z-z-modular", "z-p-central"))
    target = P.meet_pair(ctx.cover(p), z)
    if not is_element(target):
        raise InternalSearchError("cover(p) n z undefined despite lower completeness")
    found = None
    for q in bits(P.down[p] & P.down[z]):
        if ctx.cover(q) == target:
            found = q
            break
    if found is None:
        raise InternalSearchError(
            f"no q <= {P.label(p)}, {P.label(z)} attains the cover meet")
    m = P.meet_pair(p, z)
    if is_element(m) and ctx.cover(m) != target:
        raise InternalSearchError("hull identity cover(p n z) = cover(p) n z failed")
    return found


def crosscheck_hull(ctx: ZContext) -> Certificate:
    """Sweep the hull identity cover(p n z) = cover(p) n z over all defined meets."""
    check = "cover-meet-hull"
    hyps = {"z-lower-complete-sublattice": ctx.lower_complete.ok,
            "z-z-modular": ctx.z_modular.ok,
            "z-p-central": ctx.p_central.ok}
    for name, ok in hyps.items():
        if not ok:
            return Certificate.skipped(check, hyps, name)
    P = ctx.poset
    checked = 0
    for p in range(P.n):
        for z in ctx.zbits:
            m = P.meet_pair(p, z)
            if not is_element(m):
                continue
            checked += 1
            lhs = ctx.cover(m)
            rhs = P.meet_pair(ctx.cover(p), z)
            if lhs != rhs:
                return Certificate.fails(check, {
                    "p": P.label(p), "z": P.label(z),
                    "cover_of_meet": P.label(lhs),
                    "meet_of_cover": P.label(rhs) if is_element(rhs) else None}, hyps)
    return Certificate.holds(check, hyps, instances=checked)
