"""Poset generators and the named desk-scale catalog.

The catalog carries the standard extremes: Boolean algebras (everything is
central), the modular-but-not-distributive horizontal sums MO(k) (trivial
centre), chains, the pentagon (no modularity), and a product mixing them.
Every entry regenerates deterministically from its generator id.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass, field

from .ortho import Orthoposet, validate_ortho
from .poset import Poset, PosetError, bits, build_from_covers, mask_of
from .relations import Relation


@dataclass
class CatalogEntry:
    name: str
    generator: str
    poset: Poset
    perp: tuple[int, ...] | None = None
    sets: dict[str, int] = field(default_factory=dict)
    relations: dict[str, Relation] = field(default_factory=dict)
    expected: dict = field(default_factory=dict)

    @property
    def ortho(self) -> Orthoposet | None:
        if self.perp is None:
            return None
        return Orthoposet(self.poset, self.perp)

    def set_mask(self, name: str) -> int:
        """Resolve a named subset or a comma-separated label list."""
        if name in self.sets:
            return self.sets[name]
        labels = [part for part in name.split(",") if part]
        return self.poset.subset(labels)


def _standard_sets(poset: Poset) -> dict[str, int]:
    sets = {"Zfull": poset.full_mask}
    if poset.top is not None:
        sets["Z01"] = 1 << poset.bottom | 1 << poset.top
        sets["center"] = poset.central_elements()
    sets["atoms0"] = poset.atoms | 1 << poset.bottom
    return sets


def _entry(name, generator, poset, perp=None, expected=None) -> CatalogEntry:
    entry = CatalogEntry(name, generator, poset, perp,
                         _standard_sets(poset), {}, expected or {})
    if perp is not None:
        validate_ortho(poset, perp)
    return entry


def gen_boolean(k: int) -> CatalogEntry:
    """Powerset order on k atoms, with complementation."""
    if not 0 <= k <= 6:
        raise PosetError("boolean generator supports 0 <= k <= 6")
    atoms = string.ascii_lowercase[:k]
    subsets = sorted(range(1 << k), key=lambda s: (bin(s).count("1"), s))

    def name(s):
        if s == 0:
            return "0"
        if s == (1 << k) - 1 and k >= 1:
            return "1"
        return "".join(atoms[i] for i in range(k) if s >> i & 1)

    labels = [name(s) for s in subsets]
    position = {s: i for i, s in enumerate(subsets)}
    rows = []
    for s in subsets:
        row = 0
        for t in subsets:
            if s & ~t == 0:
                row |= 1 << position[t]
        rows.append(row)
    poset = Poset(labels, rows)
    perp = tuple(position[((1 << k) - 1) & ~s] for s in subsets)
    return _entry(f"B{k}", f"boolean({k})", poset, perp,
                  {"n": 1 << k, "center": list(labels)})


def gen_chain(k: int) -> CatalogEntry:
    """A chain with k+1 elements; complemented only when k <= 1."""
    if k < 0:
        raise PosetError("chain length must be nonnegative")
    if k == 0:
        labels = ["0"]
    elif k == 1:
        labels = ["0", "1"]
    elif k == 2:
        labels = ["0", "m", "1"]
    else:
        labels = ["0"] + [f"m{i}" for i in range(1, k)] + ["1"]
    covers = list(zip(labels, labels[1:]))
    poset = build_from_covers(labels, "0", covers)
    perp = tuple(range(k, -1, -1)) if k <= 1 else None
    expected = {"n": k + 1, "center": [labels[0], labels[-1]] if k >= 1 else ["0"]}
    return _entry(f"C{k + 1}", f"chain({k})", poset, perp, expected)


def gen_mo(k: int) -> CatalogEntry:
    """Bounds plus k complementary atom pairs (the horizontal sum MO(k))."""
    if not 0 <= k <= 26:
        raise PosetError("mo generator supports 0 <= k <= 26")
    pairs = [(string.ascii_lowercase[i], string.ascii_lowercase[i] + "'")
             for i in range(k)]
    middles = [x for pair in pairs for x in pair]
    labels = ["0"] + middles + ["1"]
    covers = [("0", x) for x in middles] + [(x, "1") for x in middles]
    if k == 0:
        covers = [("0", "1")]
    poset = build_from_covers(labels, "0", covers)
    n = len(labels)
    perp = [0] * n
    perp[0], perp[n - 1] = n - 1, 0
    for i in range(k):
        a, b = 1 + 2 * i, 2 + 2 * i
        perp[a], perp[b] = b, a
    return _entry(f"MO{k}", f"mo({k})", poset, tuple(perp),
                  {"n": n, "center": ["0", "1"]})


def gen_product(a: CatalogEntry, b: CatalogEntry, name: str | None = None) -> CatalogEntry:
    """Componentwise product; the involution composes when both factors carry one."""
    poset = a.poset.product(b.poset)
    perp = None
    if a.perp is not None and b.perp is not None:
        m = b.poset.n
        perp = tuple(a.perp[i] * m + b.perp[j]
                     for i in range(a.poset.n) for j in range(b.poset.n))
    label = name or f"{a.name}x{b.name}"
    return _entry(label, f"product({a.generator},{b.generator})", poset, perp,
                  {"n": poset.n})


def gen_random(n: int, edge_density: float, seed: int) -> CatalogEntry:
    """Transitive closure of a random middle DAG between forced bounds."""
    if n < 1:
        raise PosetError("random poset needs at least one element")
    if n == 1:
        poset = build_from_covers(["0"], "0", [])
        return _entry(f"random-n{n}-s{seed}", f"random({n},{edge_density},{seed})",
                      poset, (0,))
    rng = random.Random(seed)
    middles = [f"x{i}" for i in range(1, n - 1)]
    labels = ["0"] + middles + ["1"]
    covers = [("0", x) for x in middles] + [(x, "1") for x in middles]
    for i in range(len(middles)):
        for j in range(i + 1, len(middles)):
            if rng.random() < edge_density:
                covers.append((middles[i], middles[j]))
    if not middles:
        covers = [("0", "1")]
    poset = build_from_covers(labels, "0", covers)
    return _entry(f"random-n{n}-s{seed}", f"random({n},{edge_density},{seed})",
                  poset, None)


def _gen_n5() -> CatalogEntry:
    poset = build_from_covers(["0", "x", "y", "z", "1"], "0",
                              [("0", "x"), ("x", "z"), ("z", "1"),
                               ("0", "y"), ("y", "1")])
    return _entry("N5", "n5()", poset, None,
                  {"n": 5, "center": ["0", "1"]})


def fixture(name: str) -> CatalogEntry:
    """One of the named catalog posets, freshly generated."""
    builders = {
        "B2": lambda: gen_boolean(2),
        "C3": lambda: gen_chain(2),
        "MO2": lambda: gen_mo(2),
        "N5": _gen_n5,
        "B1xMO2": lambda: gen_product(gen_chain(1), gen_mo(2), name="B1xMO2"),
    }
    try:
        builder = builders[name]
    except KeyError:
        raise PosetError(f"unknown fixture {name!r}") from None
    entry = builder()
    entry.name = name
    if name == "MO2":
        entry.sets["I5"] = entry.poset.subset(["0", "a", "a'", "b", "b'"])
    if name == "B1xMO2":
        entry.expected["center_size"] = 4
    return entry


CATALOG_NAMES = ("B2", "C3", "MO2", "N5", "B1xMO2")


def catalog() -> list[CatalogEntry]:
    return [fixture(name) for name in CATALOG_NAMES]


def random_batch(count: int, max_n: int, seed: int) -> list[CatalogEntry]:
    """Deterministic batch of random posets with n <= max_n."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(1, max_n)
        density = rng.choice((0.15, 0.3, 0.5, 0.8))
        entry = gen_random(n, density, rng.randrange(1 << 30))
        entry.name = f"random-{i:03d}-" + entry.name
        out.append(entry)
    return out
