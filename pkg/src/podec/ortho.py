"""Orthocomplemented posets: the involution, orthogonality, orthocompleteness.

No orthomodularity is assumed anywhere; the involution only has to be
antitone and satisfy the complement laws p n p' = 0 and p v p' = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .certificate import Certificate
from .poset import Poset, PosetError, bits, is_element, mask_of


class OrthoError(PosetError):
    """An orthocomplementation axiom failed; ``witness`` names the culprits."""

    def __init__(self, kind: str, witness, message: str):
        super().__init__(message)
        self.kind = kind
        self.witness = witness


@dataclass(frozen=True)
class Orthoposet:
    """A validated poset-with-involution pair."""

    poset: Poset
    perp: tuple[int, ...]

    def perp_mask(self, mask: int) -> int:
        return mask_of(self.perp[p] for p in bits(mask))

    def orthogonal(self, p: int, q: int) -> bool:
        return self.poset.leq(p, self.perp[q])


def validate_ortho(poset: Poset, perp) -> Orthoposet:
    """Check an orthocomplementation candidate exhaustively.

    ``perp`` is either a label-to-label mapping or an index sequence.  All
    three axiom families (involution, antitone, complement laws) are verified
    on every element; the first violation is raised with a witness.
    """
    n = poset.n
    if isinstance(perp, Mapping):
        table = [None] * n
        for a, b in perp.items():
            table[poset.index(a)] = poset.index(b)
        if any(v is None for v in table):
            missing = [poset.labels[i] for i, v in enumerate(table) if v is None]
            raise OrthoError("total", missing, f"perp not defined on {missing}")
        perp = table
    perp = tuple(perp)
    if len(perp) != n or sorted(perp) != list(range(n)):
        raise OrthoError("total", perp, "perp is not a permutation of the elements")
    lbl = poset.label
    for p in range(n):
        if perp[perp[p]] != p:
            raise OrthoError("involution", (lbl(p),),
                             f"perp(perp({lbl(p)})) = {lbl(perp[perp[p]])} != {lbl(p)}")
    for p in range(n):
        for q in bits(poset.up[p]):
            if not poset.leq(perp[q], perp[p]):
                raise OrthoError("antitone", (lbl(p), lbl(q)),
                                 f"{lbl(p)} <= {lbl(q)} but perp images are not reversed")
    if poset.top is None:
        raise OrthoError("complement", (), "complement laws need a top element")
    for p in range(n):
        m = poset.meet_pair(p, perp[p])
        if not is_element(m) or m != poset.bottom:
            raise OrthoError("complement", (lbl(p), lbl(perp[p])),
                             f"{lbl(p)} meet {lbl(perp[p])} is not 0")
        j = poset.join_pair(p, perp[p])
        if not is_element(j) or j != poset.top:
            raise OrthoError("complement", (lbl(p), lbl(perp[p])),
                             f"{lbl(p)} join {lbl(perp[p])} is not 1")
    return Orthoposet(poset, perp)


def orthogonal(ortho: Orthoposet, p: int, q: int) -> bool:
    """p is below the complement of q (a symmetric relation)."""
    return ortho.orthogonal(p, q)


def is_perp_closed(ortho: Orthoposet, z_mask: int) -> bool:
    """perp maps the subset onto itself."""
    return ortho.perp_mask(z_mask) == z_mask


def is_orthocomplete(ortho: Orthoposet, clique_cap: int = 24) -> Certificate:
    """Every pairwise-orthogonal subset has a join.

    Enumerates orthogonality-graph cliques over the nonzero elements (adding
    the bottom never changes a join).  Cliques larger than ``clique_cap`` are
    not extended and the verdict degrades to 'sampled'.
    """
    P = ortho.poset
    check = "orthocomplete"
    nonzero = [p for p in range(P.n) if p != P.bottom]
    capped = False

    def extend(members, join_so_far, candidates):
        nonlocal capped
        if len(members) >= clique_cap:
            capped = True
            return None
        for idx, x in enumerate(candidates):
            nj = P.join_pair(join_so_far, x)
            clique = members + [x]
            if not is_element(nj):
                return clique
            rest = [y for y in candidates[idx + 1:] if ortho.orthogonal(x, y)]
            bad = extend(clique, nj, rest)
            if bad is not None:
                return bad
        return None

    failing = extend([], P.bottom, nonzero)
    if failing is not None:
        witness = {"set": P.labels_of(mask_of(failing)),
                   "join": None}
        return Certificate.fails(check, witness)
    if capped:
        return Certificate.sampled(check, note=f"cliques truncated at size {clique_cap}")
    return Certificate.holds(check)
