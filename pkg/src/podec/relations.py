"""Binary relations on a poset and the finiteness theory they induce.

A relation is Z-complete when, viewed as a subset of the square of the poset
(with componentwise order), it is complete relative to the diagonal copy of
Z.  That single reduction lets every subset-level check run verbatim on
relations.  The canonical relations compare upper Z-sets: ``p`` is below
``q`` when every member of Z above ``q`` is above ``p`` (equivalently, when
covers exist, cover(p) <= cover(q)).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .certificate import Certificate
from .ortho import Orthoposet, is_perp_closed
from .poset import Poset, PosetError, bits, is_element, mask_of
from .zstruct import (SUBSET_LIMIT, ZContext, crosscheck_meet_closure,
                      is_z_complete)


@dataclass(frozen=True)
class Relation:
    """Set of ordered pairs on one poset, one row bitmask per left element."""

    poset: Poset
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.poset.n:
            raise PosetError("relation rows do not match the poset")

    @classmethod
    def from_pairs(cls, poset: Poset, pairs: Iterable[tuple[int, int]]) -> "Relation":
        rows = [0] * poset.n
        for p, q in pairs:
            rows[p] |= 1 << q
        return cls(poset, tuple(rows))

    @classmethod
    def from_label_pairs(cls, poset: Poset, pairs) -> "Relation":
        return cls.from_pairs(poset, ((poset.index(a), poset.index(b))
                                      for a, b in pairs))

    def contains(self, p: int, q: int) -> bool:
        return bool(self.rows[p] >> q & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(p, q) for p in range(self.poset.n) for q in bits(self.rows[p])]

    def label_pairs(self) -> list[tuple[str, str]]:
        lbl = self.poset.label
        return [(lbl(p), lbl(q)) for p, q in self.pairs()]

    @property
    def pair_count(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def is_reflexive(self) -> bool:
        return all(row >> p & 1 for p, row in enumerate(self.rows))

    def to_square_mask(self) -> int:
        """The relation as a subset of the squared poset (index p*n + q)."""
        n = self.poset.n
        out = 0
        for p, row in enumerate(self.rows):
            out |= row << (p * n)
        return out

    @classmethod
    def from_square_mask(cls, poset: Poset, mask: int) -> "Relation":
        n = poset.n
        full = poset.full_mask
        return cls(poset, tuple((mask >> (p * n)) & full for p in range(n)))

    def __repr__(self):
        return f"Relation({self.pair_count} pairs on {self.poset!r})"


@dataclass(frozen=True)
class FinitenessReport:
    """Which elements are finite for a relation, with shrink witnesses.

    An element fails to be finite exactly when its recorded counterexample q
    satisfies p R q <= p with q != p.
    """

    poset: Poset
    finite: int
    counterexamples: dict[int, int]


def square_poset(P: Poset) -> Poset:
    """P x P with the componentwise order; pair (p, q) sits at p*n + q."""
    return P.product(P, max_n=P.n * P.n)


def diagonal_relation(P: Poset, z_mask: int) -> Relation:
    """{(z, z) : z in Z}."""
    return Relation.from_pairs(P, ((z, z) for z in bits(z_mask)))


def rel_leq(P: Poset) -> Relation:
    """The order itself as a relation."""
    return Relation(P, P.up)


def rel_cover_leq(P: Poset, z_mask: int, displayed_direction: bool = False) -> Relation:
    """Comparison of upper Z-sets: p below q when [q,1] n Z is inside [p,1] n Z.

    ``displayed_direction=True`` flips the containment; that variant makes
    every element comparable below the bottom and exists only for comparison
    experiments.
    """
    n = P.n
    zsets = [P.up[p] & z_mask for p in range(n)]
    rows = []
    for p in range(n):
        row = 0
        for q in range(n):
            small, large = (zsets[p], zsets[q]) if displayed_direction else (zsets[q], zsets[p])
            if small & ~large == 0:
                row |= 1 << q
        rows.append(row)
    return Relation(P, tuple(rows))


def rel_cover_eq(P: Poset, z_mask: int) -> Relation:
    """Equality of upper Z-sets; the symmetric part of `rel_cover_leq`."""
    leq = rel_cover_leq(P, z_mask)
    rows = tuple(row & mask_of(q for q in range(P.n) if leq.contains(q, p))
                 for p, row in enumerate(leq.rows))
    return Relation(P, rows)


def square_context(P: Poset, z_mask: int) -> tuple[Poset, ZContext]:
    """The squared poset together with the diagonal-Z context on it."""
    PP = square_poset(P)
    diag = mask_of(z * P.n + z for z in bits(z_mask))
    return PP, ZContext(PP, diag)


def _square_labels(P: Poset, PP: Poset, mask: int) -> list[list[str]]:
    n = P.n
    return [[P.label(i // n), P.label(i % n)] for i in bits(mask)]


def is_relation_z_complete(P: Poset, z_mask: int, rel: Relation, *,
                           subset_limit: int = SUBSET_LIMIT,
                           base_ctx: ZContext | None = None) -> Certificate:
    """Run the subset-level completeness check on the relation in the square."""
    if base_ctx is not None:
        PP, ctx = base_ctx.square
    else:
        PP, ctx = square_context(P, z_mask)
    cert = is_z_complete(ctx, rel.to_square_mask(), subset_limit=subset_limit)
    return Certificate("relation-z-complete", cert.status, dict(cert.hypotheses),
                       dict(cert.details), cert.counterexample)


def crosscheck_rel_meet_closure(P: Poset, z_mask: int, rel: Relation, *,
                                subset_limit: int = SUBSET_LIMIT) -> Certificate:
    """Componentwise characterisation of relation completeness, cross-checked.

    Runs the meet-closure comparison inside the square, where the diagonal
    copy of Z is modular exactly when Z is modular over the base poset.
    """
    PP, ctx = square_context(P, z_mask)
    cert = crosscheck_meet_closure(ctx, rel.to_square_mask(),
                                   subset_limit=subset_limit)
    cert.check = "relation-meet-closure-crosscheck"
    return cert


def finite_elements(P: Poset, rel: Relation) -> FinitenessReport:
    """Elements p with no strictly smaller q below p related as p R q."""
    finite = 0
    counterexamples: dict[int, int] = {}
    for p in range(P.n):
        shrink = rel.rows[p] & P.down[p] & ~(1 << p)
        if shrink:
            counterexamples[p] = next(bits(shrink))
        else:
            finite |= 1 << p
    return FinitenessReport(P, finite, counterexamples)


def check_finite_elements_complete(ortho: Orthoposet, ctx: ZContext,
                                   rel: Relation, *,
                                   subset_limit: int = SUBSET_LIMIT) -> Certificate:
    """For a reflexive Z-complete relation on a Z-complete poset with a
    perp-closed central Z, the finite elements form a Z-complete subset."""
    check = "finite-complete"
    P = ctx.poset
    hyps = {"poset-z-complete": ctx.self_complete.ok,
            "z-perp-closed": is_perp_closed(ortho, ctx.z),
            "z-in-centre": ctx.z & ~P.central_elements() == 0,
            "relation-reflexive": rel.is_reflexive()}
    for name, ok in hyps.items():
        if not ok:
            return Certificate.skipped(check, hyps, name)
    rel_cert = is_relation_z_complete(P, ctx.z, rel, subset_limit=subset_limit,
                                      base_ctx=ctx)
    hyps["relation-z-complete"] = rel_cert.ok
    if not rel_cert.ok:
        return Certificate.skipped(check, hyps, "relation-z-complete",
                                   rel_cert.counterexample)
    report = finite_elements(P, rel)
    conclusion = is_z_complete(ctx, report.finite, subset_limit=subset_limit)
    if conclusion.status == "fails":
        return Certificate.fails(check, conclusion.counterexample, hyps,
                                 finite=P.labels_of(report.finite))
    return Certificate(check, conclusion.status, hyps,
                       {"finite": P.labels_of(report.finite)})


def check_weakest(ctx: ZContext, rel: Relation, *,
                  subset_limit: int = SUBSET_LIMIT) -> Certificate:
    """Any Z-complete relation that relates nothing nonzero down to the
    bottom is contained in the upper-Z-set comparison relation."""
    check = "weakest-relation"
    P = ctx.poset
    zero_section = mask_of(p for p in range(P.n) if rel.contains(p, P.bottom))
    hyps = {"z-p-central": ctx.p_central.ok,
            "zero-section-trivial": zero_section == 1 << P.bottom}
    for name, ok in hyps.items():
        if not ok:
            return Certificate.skipped(check, hyps, name)
    rel_cert = is_relation_z_complete(P, ctx.z, rel, subset_limit=subset_limit,
                                      base_ctx=ctx)
    hyps["relation-z-complete"] = rel_cert.ok
    if not rel_cert.ok:
        return Certificate.skipped(check, hyps, "relation-z-complete",
                                   rel_cert.counterexample)
    bound = rel_cover_leq(P, ctx.z)
    for p in range(P.n):
        extra = rel.rows[p] & ~bound.rows[p]
        if extra:
            q = next(bits(extra))
            return Certificate.fails(check, {"pair": [P.label(p), P.label(q)]},
                                     hyps)
    status = rel_cert.status if rel_cert.status == "sampled" else "holds"
    return Certificate(check, status, hyps, {"pairs": rel.pair_count})


def finite_characterization(ctx: ZContext, p: int, *,
                            precomputed_rel: Relation | None = None) -> Certificate:
    """Finiteness of p is equivalent to [0,p] = {p n z : z in Z}; when finite,
    q -> cover(q) and z -> p n z are mutually inverse order isomorphisms
    between [0,p] and [0,cover(p)] n Z."""
    check = "finite-characterization"
    hyps = {"poset-z-directed": ctx.z_directed.ok,
            "z-p-central": ctx.p_central.ok,
            "z-p-modular": ctx.p_modular.ok,
            "z-z-modular": ctx.z_modular.ok,
            "z-lower-complete-sublattice": ctx.lower_complete.ok}
    for name, ok in hyps.items():
        if not ok:
            return Certificate.skipped(check, hyps, name)
    P = ctx.poset
    rel = precomputed_rel if precomputed_rel is not None else rel_cover_leq(P, ctx.z)
    finite = not (rel.rows[p] & P.down[p] & ~(1 << p))

    meets = 0
    for z in ctx.zbits:
        m = P.meet_pair(p, z)
        if is_element(m):
            meets |= 1 << m
    interval_is_meets = meets == P.down[p]
    if finite != interval_is_meets:
        return Certificate.fails(check, {
            "p": P.label(p), "finite": finite,
            "interval": P.labels_of(P.down[p]),
            "meets": P.labels_of(meets)}, hyps)
    if not finite:
        return Certificate.holds(check, hyps, p=P.label(p), finite=False)

    cover_p = ctx.cover(p)
    z_side = P.down[cover_p] & ctx.z
    for q in bits(P.down[p]):
        c = ctx.cover(q)
        if not z_side >> c & 1:
            return Certificate.fails(check, {"reason": "cover escapes the Z side",
                                             "q": P.label(q)}, hyps)
        back = P.meet_pair(p, c)
        if not is_element(back):
            return Certificate.fails(check, {"reason": "meet undefined in map check",
                                             "p": P.label(p), "z": P.label(c)}, hyps)
        if back != q:
            return Certificate.fails(check, {"reason": "maps not mutually inverse",
                                             "q": P.label(q), "via": P.label(back)},
                                     hyps)
    for z in bits(z_side):
        m = P.meet_pair(p, z)
        if not is_element(m):
            return Certificate.fails(check, {"reason": "meet undefined in map check",
                                             "p": P.label(p), "z": P.label(z)}, hyps)
        if ctx.cover(m) != z:
            return Certificate.fails(check, {"reason": "maps not mutually inverse",
                                             "z": P.label(z),
                                             "via": P.label(ctx.cover(m))}, hyps)
    for q1 in bits(P.down[p]):
        for q2 in bits(P.down[p]):
            if P.leq(q1, q2) != P.leq(ctx.cover(q1), ctx.cover(q2)):
                return Certificate.fails(check, {"reason": "order not preserved",
                                                 "pair": [P.label(q1), P.label(q2)]},
                                         hyps)
    return Certificate.holds(check, hyps, p=P.label(p), finite=True,
                             interval=P.labels_of(P.down[p]),
                             z_image=P.labels_of(z_side))
