"""Finite bounded posets stored as up-set bitmasks.

Every poset has a least element; a greatest element is optional.  The order is
kept as one integer per element (``up[p]`` is the bitmask of everything at or
above ``p``), so order queries, meets and joins reduce to integer AND/compare
operations.  Meets and joins are partial: a missing bound comes back as an
:class:`Undefined` value carrying the frontier that blocked it, never as an
exception.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

DEFAULT_MAX_N = 64

NO_UPPER_BOUND = "no-upper-bound"
NO_LEAST_UPPER_BOUND = "no-least-upper-bound"
NO_GREATEST_LOWER_BOUND = "no-greatest-lower-bound"


class PosetError(ValueError):
    """Construction or validation failure."""


def size_limit(override: int | None = None) -> int:
    """Element-count guardrail; the PODEC_MAX_N env var overrides the default."""
    if override is not None:
        return override
    return int(os.environ.get("PODEC_MAX_N", DEFAULT_MAX_N))


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out |= 1 << i
    return out


@dataclass(frozen=True)
class Undefined:
    """A meet or join that does not exist.

    ``frontier`` lists the minimal upper bounds (for joins) or maximal lower
    bounds (for meets) that were found, so callers can report exactly why the
    bound is missing.
    """

    reason: str
    frontier: tuple[int, ...] = ()


def is_element(value) -> bool:
    """True when a partial meet/join result is an actual element index."""
    return not isinstance(value, Undefined)


class Poset:
    """Immutable finite poset with a least element.

    ``labels`` name the elements; element identity in the API is the integer
    index into ``labels``.  ``up[p]`` is the full reachability row of ``p``
    (reflexive-transitive), validated at construction.
    """

    def __init__(self, labels: Sequence[str], up: Sequence[int], *, max_n: int | None = None):
        self.labels = tuple(labels)
        self.up = tuple(up)
        self.n = len(self.labels)
        self._validate(max_n)

    def _validate(self, max_n):
        n = self.n
        if n == 0:
            raise PosetError("a poset needs at least one element")
        limit = size_limit(max_n)
        if n > limit:
            raise PosetError(f"{n} elements exceeds the size guardrail {limit}")
        if len(self.up) != n:
            raise PosetError("labels and order rows disagree in length")
        if len(set(self.labels)) != n:
            raise PosetError("duplicate labels")
        full = (1 << n) - 1
        up = self.up
        for p in range(n):
            row = up[p]
            if row & ~full:
                raise PosetError("order row references elements out of range")
            if not row >> p & 1:
                raise PosetError(f"order not reflexive at {self.labels[p]!r}")
        for p in range(n):
            for q in bits(up[p]):
                if q != p and up[q] >> p & 1:
                    raise PosetError(
                        f"cycle detected: {self.labels[p]!r} and {self.labels[q]!r}"
                        " are mutually comparable")
                if up[q] & ~up[p]:
                    raise PosetError(
                        f"order not transitive at {self.labels[p]!r} <= {self.labels[q]!r}")
        self.bottom  # force; raises when there is no least element

    # -- basic structure ----------------------------------------------------

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def down(self) -> tuple[int, ...]:
        """down[q] = bitmask of everything at or below q."""
        rows = [0] * self.n
        for p in range(self.n):
            for q in bits(self.up[p]):
                rows[q] |= 1 << p
        return tuple(rows)

    @cached_property
    def bottom(self) -> int:
        for p in range(self.n):
            if self.up[p] == self.full_mask:
                return p
        raise PosetError("no least element")

    @cached_property
    def top(self) -> int | None:
        for p in range(self.n):
            if self.down[p] == self.full_mask:
                return p
        return None

    @cached_property
    def _index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise PosetError(f"unknown element {label!r}") from None

    def label(self, p: int) -> str:
        return self.labels[p]

    def labels_of(self, mask: int) -> list[str]:
        return [self.labels[p] for p in bits(mask)]

    def subset(self, labels: Iterable[str]) -> int:
        return mask_of(self.index(l) for l in labels)

    def leq(self, p: int, q: int) -> bool:
        return bool(self.up[p] >> q & 1)

    def disjoint(self, p: int, q: int) -> bool:
        """p and q meet at the bottom: their only common lower bound is 0."""
        return self.down[p] & self.down[q] == 1 << self.bottom

    @cached_property
    def cover_pairs(self) -> tuple[tuple[int, int], ...]:
        """Hasse diagram edges (p, q) with q covering p."""
        out = []
        for p in range(self.n):
            strict = self.up[p] & ~(1 << p)
            for q in bits(strict):
                between = strict & self.down[q] & ~(1 << q)
                if not between:
                    out.append((p, q))
        return tuple(out)

    @cached_property
    def atoms(self) -> int:
        """Elements covering the bottom, as a mask."""
        return mask_of(q for p, q in self.cover_pairs if p == self.bottom)

    # -- meets and joins ----------------------------------------------------

    def join(self, mask: int):
        """Least upper bound of the elements in ``mask``; the empty join is 0."""
        if mask == 0:
            return self.bottom
        ub = self.full_mask
        for s in bits(mask):
            ub &= self.up[s]
        if ub == 0:
            return Undefined(NO_UPPER_BOUND)
        for j in bits(ub):
            if self.up[j] == ub:
                return j
        frontier = tuple(u for u in bits(ub) if self.down[u] & ub == 1 << u)
        return Undefined(NO_LEAST_UPPER_BOUND, frontier)

    def meet(self, mask: int):
        """Greatest lower bound; the empty meet is the top when one exists."""
        if mask == 0 and self.top is None:
            frontier = tuple(u for u in range(self.n) if self.up[u] == 1 << u)
            return Undefined(NO_UPPER_BOUND, frontier)
        lb = self.full_mask
        for s in bits(mask):
            lb &= self.down[s]
        for g in bits(lb):
            if self.down[g] == lb:
                return g
        frontier = tuple(u for u in bits(lb) if self.up[u] & lb == 1 << u)
        return Undefined(NO_GREATEST_LOWER_BOUND, frontier)

    def join_pair(self, p: int, q: int):
        ub = self.up[p] & self.up[q]
        if ub == 0:
            return Undefined(NO_UPPER_BOUND)
        for j in bits(ub):
            if self.up[j] == ub:
                return j
        frontier = tuple(u for u in bits(ub) if self.down[u] & ub == 1 << u)
        return Undefined(NO_LEAST_UPPER_BOUND, frontier)

    def meet_pair(self, p: int, q: int):
        lb = self.down[p] & self.down[q]
        for g in bits(lb):
            if self.down[g] == lb:
                return g
        frontier = tuple(u for u in bits(lb) if self.up[u] & lb == 1 << u)
        return Undefined(NO_GREATEST_LOWER_BOUND, frontier)

    def join_within(self, region: int, mask: int):
        """Least upper bound taken inside ``region``; may exceed the global join."""
        ub = region
        for s in bits(mask):
            ub &= self.up[s]
        if ub == 0:
            return Undefined(NO_UPPER_BOUND)
        for j in bits(ub):
            if ub & ~self.up[j] == 0:
                return j
        frontier = tuple(u for u in bits(ub) if self.down[u] & ub == 1 << u)
        return Undefined(NO_LEAST_UPPER_BOUND, frontier)

    def meet_within(self, region: int, mask: int):
        lb = region
        for s in bits(mask):
            lb &= self.down[s]
        if lb == 0:
            return Undefined("no-lower-bound")
        for g in bits(lb):
            if lb & ~self.down[g] == 0:
                return g
        frontier = tuple(u for u in bits(lb) if self.up[u] & lb == 1 << u)
        return Undefined(NO_GREATEST_LOWER_BOUND, frontier)

    def interval(self, lo: int, hi: int) -> int:
        """{p : lo <= p <= hi} as a mask; empty when lo is not below hi."""
        return self.up[lo] & self.down[hi]

    # -- derived posets -----------------------------------------------------

    def subposet(self, mask: int) -> "Poset":
        """Induced subposet on ``mask``; labels are preserved.

        The bottom of the ambient poset must be a member so the result is
        again bounded below.  Joins and meets inside the result realise the
        relative bounds, which may differ from the ambient ones.
        """
        if not mask >> self.bottom & 1:
            raise PosetError("subposet needs the bottom element as a member")
        elements = list(bits(mask))
        position = {old: new for new, old in enumerate(elements)}
        rows = []
        for old in elements:
            row = 0
            for q in bits(self.up[old] & mask):
                row |= 1 << position[q]
            rows.append(row)
        return Poset([self.labels[old] for old in elements], rows)

    def product(self, other: "Poset", *, max_n: int | None = None) -> "Poset":
        """Componentwise-ordered product; element (i, j) sits at index i*other.n + j."""
        m = other.n
        labels = [f"{a}.{b}" for a in self.labels for b in other.labels]
        rows = []
        for i in range(self.n):
            for j in range(other.n):
                row = 0
                for k in bits(self.up[i]):
                    row |= other.up[j] << (k * m)
                rows.append(row)
        return Poset(labels, rows, max_n=max_n)

    # -- central elements ---------------------------------------------------

    def central_elements(self) -> int:
        """Elements z with a partner z' splitting the poset as [0,z] x [0,z'].

        The splitting maps are p -> (p n z, p n z') and (a, b) -> a v b; both
        must be total, mutually inverse and order-preserving in each direction.
        """
        if self.top is None:
            raise PosetError("central elements need a top")
        return self._centre[0]

    def central_partner(self, z: int) -> int | None:
        if self.top is None:
            raise PosetError("central elements need a top")
        return self._centre[1].get(z)

    @cached_property
    def _centre(self) -> tuple[int, dict[int, int]]:
        found = 0
        partner: dict[int, int] = {}
        for z in range(self.n):
            size_z = self.down[z].bit_count()
            for zp in range(self.n):
                if size_z * self.down[zp].bit_count() != self.n:
                    continue
                if self._central_pair_ok(z, zp):
                    found |= 1 << z
                    partner[z] = zp
                    break
        return found, partner

    def _central_pair_ok(self, z: int, zp: int) -> bool:
        psi = []
        for p in range(self.n):
            a = self.meet_pair(p, z)
            b = self.meet_pair(p, zp)
            if not is_element(a) or not is_element(b):
                return False
            if self.join_pair(a, b) != p:
                return False
            psi.append((a, b))
        for a in bits(self.down[z]):
            for b in bits(self.down[zp]):
                j = self.join_pair(a, b)
                if not is_element(j) or psi[j] != (a, b):
                    return False
        for p in range(self.n):
            ap, bp = psi[p]
            for q in range(self.n):
                aq, bq = psi[q]
                if self.leq(p, q) != (self.leq(ap, aq) and self.leq(bp, bq)):
                    return False
        return True

    # -- dunder -------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Poset)
                and self.labels == other.labels and self.up == other.up)

    def __hash__(self):
        return hash((self.labels, self.up))

    def __repr__(self):
        shown = ",".join(self.labels[:8]) + ("..." if self.n > 8 else "")
        return f"Poset({self.n}: {shown})"


def build_from_covers(labels: Sequence[str], bottom: str,
                      covers: Iterable[tuple[str, str]], *,
                      max_n: int | None = None) -> Poset:
    """Close a cover list into a poset.

    The declared bottom must end up below every element and the cover graph
    must be acyclic; both are checked after taking the reflexive-transitive
    closure.
    """
    labels = list(labels)
    if len(set(labels)) != len(labels):
        raise PosetError("duplicate labels")
    index = {label: i for i, label in enumerate(labels)}
    n = len(labels)
    rows = [1 << i for i in range(n)]
    for lo, hi in covers:
        if lo not in index or hi not in index:
            missing = lo if lo not in index else hi
            raise PosetError(f"unknown element {missing!r} in covers")
        rows[index[lo]] |= 1 << index[hi]
    for k in range(n):
        kb = 1 << k
        for i in range(n):
            if rows[i] & kb:
                rows[i] |= rows[k]
    for i in range(n):
        for j in bits(rows[i]):
            if j != i and rows[j] >> i & 1:
                raise PosetError(
                    f"cycle detected through {labels[i]!r} and {labels[j]!r}")
    if bottom not in index:
        raise PosetError(f"declared bottom {bottom!r} is not an element")
    b = index[bottom]
    if rows[b] != (1 << n) - 1:
        above = [labels[q] for q in bits(rows[b])]
        outside = [l for l in labels if l not in above]
        raise PosetError(f"bottom {bottom!r} is not below {outside}")
    return Poset(labels, rows, max_n=max_n)
