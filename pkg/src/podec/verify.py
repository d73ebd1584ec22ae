"""Catalog-wide verification driver.

For each entry the driver sweeps candidate (Z, I) pairs (exhaustively for
small posets, curated beyond), filters by each result's hypotheses, runs the
certifiers, and aggregates statuses.  Out-of-scope inputs surface as
'hypothesis-not-satisfied' counts, never failures; any 'fails' certificate on
a hypothesis-passing input means a defect and flips the exit code.
"""

from __future__ import annotations

import hashlib
import json
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .catalog import CatalogEntry, catalog as full_catalog, random_batch
from .certificate import FAILS, HOLDS, HYPOTHESIS_NOT_SATISFIED, SAMPLED
from .decompose import check_cover_ideal, decompose_join_central, decompose_join_covers
from .homog import check_uniqueness, homogeneous_decomposition, is_order_dense
from .ortho import is_perp_closed
from .poset import bits, mask_of
from .relations import (check_finite_elements_complete, check_weakest,
                        is_relation_z_complete, rel_cover_eq, rel_cover_leq,
                        rel_leq)
from .textfmt import serialize_entry
from .zstruct import ZContext, crosscheck_bidirectional, crosscheck_hull, \
    crosscheck_meet_closure, is_z_complete

REPORT_VERSION = "1"
EXHAUSTIVE_LIMIT = 8


@dataclass
class ReportDocument:
    version: str
    scope: str
    seed: int
    max_n: int
    entries: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    generated_at: str = ""

    @property
    def exit_code(self) -> int:
        return 1 if self.summary.get(FAILS, 0) else 0

    def to_json(self) -> str:
        payload = {
            "version": self.version,
            "scope": self.scope,
            "seed": self.seed,
            "max_n": self.max_n,
            "entries": self.entries,
            "summary": self.summary,
            "generated_at": self.generated_at,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _entry_seed(name: str, seed: int) -> int:
    return seed ^ zlib.crc32(name.encode())


def candidate_zs(entry: CatalogEntry, seed: int) -> list[int]:
    P = entry.poset
    if P.n <= EXHAUSTIVE_LIMIT:
        return list(range(1 << P.n))
    out = []
    for name in ("center", "Z01"):
        if name in entry.sets and entry.sets[name] not in out:
            out.append(entry.sets[name])
    if entry.perp is not None:
        import random
        rng = random.Random(_entry_seed(entry.name, seed))
        orbits = sorted({tuple(sorted((p, entry.perp[p]))) for p in range(P.n)})
        for _ in range(4):
            z = 0
            for orbit in orbits:
                if rng.random() < 0.4:
                    z |= mask_of(orbit)
            if z not in out:
                out.append(z)
    return out


def candidate_is(entry: CatalogEntry, ctx: ZContext, seed: int) -> list[int]:
    P = entry.poset
    if P.n <= EXHAUSTIVE_LIMIT:
        return list(range(1 << P.n))
    out = [P.down[p] for p in range(P.n)]
    out.append(entry.sets.get("atoms0", P.atoms | 1 << P.bottom))
    from .relations import finite_elements
    out.append(finite_elements(P, rel_cover_leq(P, ctx.z)).finite)
    seen, unique = set(), []
    for mask in out:
        if mask not in seen:
            seen.add(mask)
            unique.append(mask)
    return unique


def _record(results, entry_name, kind, cert, **extra):
    status = cert.status
    results["counts"][status] = results["counts"].get(status, 0) + 1
    key = f"{kind}:{status}"
    results["by_check"][key] = results["by_check"].get(key, 0) + 1
    if status in (FAILS,):
        results["failures"].append({"entry": entry_name, "check": kind,
                                    **extra, "certificate": cert.to_json()})
    elif status == SAMPLED:
        results["sampled"].append({"entry": entry_name, "check": kind, **extra})


def verify_entry(entry: CatalogEntry, seed: int = 0) -> dict:
    """Run every certifier over the entry's candidate (Z, I) grid."""
    P = entry.poset
    results = {"name": entry.name,
               "digest": hashlib.sha256(serialize_entry(entry).encode()).hexdigest(),
               "counts": {}, "by_check": {}, "failures": [], "sampled": []}

    _verify_expected(entry, results)
    for z in candidate_zs(entry, seed):
        ctx = ZContext(P, z)
        z_labels = P.labels_of(z)
        icapz_z_side = (is_z_complete(ctx, z).ok and ctx.z_central.ok)
        covers_z_side = ctx.lower_complete.ok and ctx.p_central.ok

        for i_mask in candidate_is(entry, ctx, seed):
            i_ok = is_z_complete(ctx, i_mask).ok
            if icapz_z_side and i_ok:
                cert = decompose_join_central(ctx, i_mask)
                _record(results, entry.name, "decompose-join-central", cert,
                        z=z_labels, i=P.labels_of(i_mask))
            if covers_z_side and i_ok:
                cert = decompose_join_covers(ctx, i_mask)
                _record(results, entry.name, "decompose-join-covers", cert,
                        z=z_labels, i=P.labels_of(i_mask))
                if ctx.z_modular.ok:
                    cert = check_cover_ideal(ctx, i_mask)
                    _record(results, entry.name, "cover-ideal", cert,
                            z=z_labels, i=P.labels_of(i_mask))
            if ctx.p_modular.ok:
                cert = crosscheck_meet_closure(ctx, i_mask)
                _record(results, entry.name, "meet-closure-crosscheck", cert,
                        z=z_labels, i=P.labels_of(i_mask))
            if ctx.self_complete.ok and ctx.pseudocomplements is not None:
                cert = crosscheck_bidirectional(ctx, i_mask)
                _record(results, entry.name, "bidirectional-crosscheck", cert,
                        z=z_labels, i=P.labels_of(i_mask))

        if ctx.lower_complete.ok and ctx.z_modular.ok and ctx.p_central.ok:
            _record(results, entry.name, "cover-meet-hull", crosscheck_hull(ctx),
                    z=z_labels)

        _verify_relations(entry, ctx, results, z_labels)
        if entry.ortho is not None:
            _verify_homog(entry, ctx, results, z_labels, seed)
    return results


def _verify_expected(entry, results):
    P = entry.poset
    mismatches = {}
    exp = entry.expected
    if "n" in exp and exp["n"] != P.n:
        mismatches["n"] = [exp["n"], P.n]
    if "center" in exp and P.top is not None:
        got = P.labels_of(P.central_elements())
        if sorted(exp["center"]) != sorted(got):
            mismatches["center"] = [exp["center"], got]
    if "center_size" in exp and P.top is not None:
        got = P.central_elements().bit_count()
        if exp["center_size"] != got:
            mismatches["center_size"] = [exp["center_size"], got]
    from .certificate import Certificate
    if mismatches:
        cert = Certificate.fails("expected-values", mismatches)
    else:
        cert = Certificate.holds("expected-values")
    _record(results, entry.name, "expected-values", cert)


def _named_relations(entry, ctx):
    P = entry.poset
    return {
        "leq": rel_leq(P),
        "cover_leq": rel_cover_leq(P, ctx.z),
        "cover_eq": rel_cover_eq(P, ctx.z),
    }


def _verify_relations(entry, ctx, results, z_labels):
    P = entry.poset
    rels = _named_relations(entry, ctx)

    # canonical comparison relation must itself be Z-complete under the
    # directedness/modularity hypotheses
    if (ctx.self_complete.ok and ctx.lower_complete.ok and ctx.z_modular.ok
            and _z_side_directed(ctx)):
        cert = is_relation_z_complete(P, ctx.z, rels["cover_leq"], base_ctx=ctx)
        _record(results, entry.name, "cover-leq-z-complete", cert, z=z_labels)

    if ctx.p_central.ok:
        for name, rel in rels.items():
            cert = check_weakest(ctx, rel)
            _record(results, entry.name, f"weakest-relation[{name}]", cert,
                    z=z_labels)

    if entry.ortho is not None and is_perp_closed(entry.ortho, ctx.z) \
            and ctx.self_complete.ok:
        for name, rel in rels.items():
            cert = check_finite_elements_complete(entry.ortho, ctx, rel)
            _record(results, entry.name, f"finite-complete[{name}]", cert,
                    z=z_labels)

    hyps_ok = (ctx.z_directed.ok and ctx.p_central.ok and ctx.p_modular.ok
               and ctx.z_modular.ok and ctx.lower_complete.ok)
    if hyps_ok:
        from .relations import finite_characterization
        precomputed = rels["cover_leq"]
        for p in range(P.n):
            cert = finite_characterization(ctx, p, precomputed_rel=precomputed)
            _record(results, entry.name, "finite-characterization", cert,
                    z=z_labels, p=P.label(p))


def _z_side_directed(ctx) -> bool:
    """The subset itself, viewed with joins inside Z, is Z-directed."""
    P = ctx.poset
    region = ctx.z | 1 << P.bottom
    sub = P.subposet(region)
    inner = sub.subset(P.labels_of(ctx.z))
    from .zstruct import is_z_directed
    return is_z_directed(ZContext(sub, inner)).ok


def _verify_homog(entry, ctx, results, z_labels, seed):
    P = entry.poset
    ortho = entry.ortho
    if not (is_perp_closed(ortho, ctx.z) and ctx.lower_complete.ok):
        return
    for i_mask in candidate_is(entry, ctx, seed):
        if not (is_order_dense(P, i_mask).ok and is_z_complete(ctx, i_mask).ok):
            continue
        decomposition, cert = homogeneous_decomposition(ortho, ctx, i_mask)
        _record(results, entry.name, "homogeneous-decomposition", cert,
                z=z_labels, i=P.labels_of(i_mask))
        if cert.ok:
            unique = check_uniqueness(ortho, ctx, i_mask, decomposition)
            _record(results, entry.name, "decomposition-uniqueness", unique,
                    z=z_labels, i=P.labels_of(i_mask))


def _verify_task(args):
    entry, seed = args
    return verify_entry(entry, seed)


def run_verification(scope: str = "catalog", entries=None, *, random_count: int = 0,
                     max_n: int = EXHAUSTIVE_LIMIT, seed: int = 0,
                     workers: int = 1) -> ReportDocument:
    """Drive the certifiers over a catalog, files, or random batch."""
    if entries is None:
        entries = []
        if scope == "catalog":
            entries = full_catalog()
    if random_count:
        entries = entries + random_batch(random_count, max_n, seed)
    report = ReportDocument(REPORT_VERSION, scope, seed, max_n)
    tasks = [(entry, seed) for entry in entries]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_verify_task, tasks))
    else:
        outcomes = [_verify_task(task) for task in tasks]
    totals: dict[str, int] = {}
    for outcome in outcomes:
        report.entries.append(outcome)
        for status, count in outcome["counts"].items():
            totals[status] = totals.get(status, 0) + count
    report.summary = {status: totals.get(status, 0)
                      for status in (HOLDS, FAILS, HYPOTHESIS_NOT_SATISFIED, SAMPLED)}
    report.generated_at = time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime())
    return report


def summary_lines(report: ReportDocument) -> list[str]:
    lines = [f"verification scope={report.scope} seed={report.seed} "
             f"max_n={report.max_n}"]
    for outcome in report.entries:
        counts = " ".join(f"{k}={v}" for k, v in sorted(outcome["counts"].items()))
        lines.append(f"  {outcome['name']}: {counts}")
        for failure in outcome["failures"]:
            lines.append(f"    FAIL {failure['check']}: {failure['certificate']}")
    lines.append("summary " + " ".join(f"{k}={v}" for k, v in report.summary.items()))
    return lines
