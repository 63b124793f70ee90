"""Manifest-driven verification runs.

A manifest is a JSON object::

    {
      "schema": "fpverify.manifest/1",
      "presentation": "gamma_bar.fp",
      "word_files": ["pi.words", "sigma.words"],
      "subgroups": {"Pi": "pi.words", "Sigma": "sigma.words"},
      "max_cosets": 50000,
      "checks": [
        {"id": "01-pi-index", "op": "index", "args": {"subgroup": "Pi"},
         "expected": 21, "claim": "[G:Pi] = 21"},
        ...
      ]
    }

Paths are relative to the manifest.  Word files share one name table and are
loaded in the listed order.  A check marked ``"extended": true`` is skipped
unless extended checks are requested.  See ``OPERATIONS`` for the available
operations and their arguments.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .cosets import CosetTable, EnumerationLimits, todd_coxeter
from .homology import (SubgroupPresentation, abelian_invariants, presentation_of_subgroup,
                       subgroup_presentation)
from .lowindex import (SearchBudgetExhausted, SubgroupSearchOptions, classes_containing,
                       low_index_subgroups, normal_subgroups_of_index)
from .perms import group_order
from .presentation import Presentation, WordTable, parse_presentation, read_word_file
from .quotients import (CayleyTable, fixed_cosets, identify, is_normal_in, normalizer_index,
                        quotient_on_fixed)
from .surface import (SurfaceInvariants, beauville_bound, canonical_degree_chain,
                      etale_cover_invariants)
from .words import Word

MANIFEST_SCHEMA = "fpverify.manifest/1"
REPORT_SCHEMA = "fpverify.report/1"


class ManifestError(ValueError):
    pass


@dataclass
class Check:
    id: str
    op: str
    args: dict = field(default_factory=dict)
    expected: Any = None
    claim: str = ""
    extended: bool = False


@dataclass
class Manifest:
    base_dir: Path
    presentation: str
    word_files: list[str]
    subgroups: dict[str, str]
    checks: list[Check]
    max_cosets: int = 1_000_000

    @classmethod
    def from_dict(cls, data: dict, base_dir: Path) -> Manifest:
        if data.get("schema") != MANIFEST_SCHEMA:
            raise ManifestError(f"expected schema {MANIFEST_SCHEMA!r}")
        try:
            checks = [Check(**c) for c in data.get("checks", [])]
        except TypeError as exc:
            raise ManifestError(f"bad check entry: {exc}") from None
        ids = [c.id for c in checks]
        if len(set(ids)) != len(ids):
            raise ManifestError("check ids are not unique")
        for c in checks:
            if c.op not in OPERATIONS:
                raise ManifestError(f"check {c.id}: unknown operation {c.op!r}")
        m = cls(base_dir, data["presentation"], list(data.get("word_files", [])),
                dict(data.get("subgroups", {})), checks, int(data.get("max_cosets", 1_000_000)))
        for name in [m.presentation, *m.word_files]:
            if not (base_dir / name).is_file():
                raise ManifestError(f"missing file {name}")
        for sub, fname in m.subgroups.items():
            if fname not in m.word_files:
                raise ManifestError(f"subgroup {sub}: {fname} is not a listed word file")
        return m

    @classmethod
    def load(cls, path: str | Path) -> Manifest:
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ManifestError(f"cannot read manifest {path}: {exc}") from None
        return cls.from_dict(data, path.parent)


def bundled_manifest_path() -> Path:
    return Path(str(resources.files("fpverify") / "data" / "fpp_cover.manifest.json"))


class Context:
    """Inputs and memoized intermediate results shared by all checks.

    Failures are memoized too, so a broken enumeration is attempted once.
    """

    def __init__(self, m: Manifest):
        self.manifest = m
        self.limits = EnumerationLimits(max_cosets=m.max_cosets)
        self._cache: dict[Any, Any] = {}
        self._locks: dict[Any, threading.RLock] = {}
        self._guard = threading.Lock()

    def _memo(self, key, fn: Callable[[], Any]):
        with self._guard:
            lock = self._locks.setdefault(key, threading.RLock())
        with lock:
            if key not in self._cache:
                try:
                    self._cache[key] = (True, fn())
                except Exception as exc:  # noqa: BLE001 - re-raised for every dependent check
                    self._cache[key] = (False, exc)
        ok, value = self._cache[key]
        if not ok:
            raise value
        return value

    def read(self, name: str) -> str:
        return (self.manifest.base_dir / name).read_text(encoding="utf-8")

    @property
    def presentation(self) -> Presentation:
        return self._memo("presentation", lambda: parse_presentation(self.read(self.manifest.presentation)))

    def _words(self) -> dict[str, list[Word]]:
        def load():
            table = WordTable(self.presentation)
            return {f: read_word_file(self.read(f), table) for f in self.manifest.word_files}
        return self._memo("words", load)

    def words(self, subgroup: str) -> list[Word]:
        if subgroup not in self.manifest.subgroups:
            raise ManifestError(f"unknown subgroup {subgroup!r}")
        return self._words()[self.manifest.subgroups[subgroup]]

    def table(self, subgroup: str) -> CosetTable:
        return self._memo(("table", subgroup),
                          lambda: todd_coxeter(self.presentation, self.words(subgroup), self.limits))

    def rs_presentation(self, subgroup: str) -> Presentation:
        """Unsimplified Reidemeister-Schreier presentation; enough for H1."""
        return self._memo(("rs", subgroup),
                          lambda: subgroup_presentation(self.presentation, self.table(subgroup)))

    def sub_presentation(self, subgroup: str) -> SubgroupPresentation:
        return self._memo(("subpres", subgroup),
                          lambda: presentation_of_subgroup(self.presentation, self.table(subgroup)))

    def relative_table(self, subgroup: str, via: str) -> CosetTable:
        def build():
            sp = self.sub_presentation(via)
            gens = [sp.rewrite(w) for w in self.words(subgroup)]
            return todd_coxeter(sp.presentation, gens, self.limits)
        return self._memo(("relative", subgroup, via), build)

    def quotient(self, subgroup: str) -> CayleyTable:
        return self._memo(("quotient", subgroup),
                          lambda: quotient_on_fixed(self.presentation, self.table(subgroup)))


# --- operations ------------------------------------------------------------
# Each returns (computed value, detail dict).  Values must be JSON-friendly.

def _op_index(ctx: Context, subgroup: str):
    return ctx.table(subgroup).index, {}


def _op_contains(ctx: Context, subgroup: str, within: str):
    t = ctx.table(within)
    missing = [i for i, w in enumerate(ctx.words(subgroup)) if not t.contains(w)]
    return not missing, {"missing": missing}


def _op_is_normal(ctx: Context, subgroup: str):
    return ctx.table(subgroup).is_normal(), {}


def _op_action_order(ctx: Context, subgroup: str):
    return group_order(ctx.table(subgroup).coset_action()), {}


def _op_identify_quotient(ctx: Context, subgroup: str):
    iso = identify(ctx.quotient(subgroup))
    return iso.name, iso.to_dict()


def _op_abelian_invariants(ctx: Context, subgroup: str | None = None):
    if subgroup is None:
        inv = abelian_invariants(ctx.presentation)
    else:
        inv = abelian_invariants(ctx.rs_presentation(subgroup))
    return inv.to_dict(), {"group": str(inv)}


def _op_staged_abelian_invariants(ctx: Context, subgroup: str, via: str):
    sp = ctx.sub_presentation(via)
    rel = ctx.relative_table(subgroup, via)
    staged = abelian_invariants(subgroup_presentation(sp.presentation, rel))
    direct = abelian_invariants(ctx.rs_presentation(subgroup))
    return staged.to_dict(), {"group": str(staged), "direct_route_agrees": staged == direct}


def _op_h1_statement(ctx: Context, subgroup: str, statements: dict[str, list[int]]):
    inv = abelian_invariants(ctx.rs_presentation(subgroup))
    matches = [name for name, torsion in statements.items()
               if inv.free_rank == 0 and list(inv.torsion) == sorted(torsion)]
    detail = {"computed": str(inv), "torsion_order": inv.torsion_order, "matches": matches}
    return (matches[0] if len(matches) == 1 else None), detail


def _op_relative_quotient(ctx: Context, subgroup: str, via: str):
    rel = ctx.relative_table(subgroup, via)
    value = {"index": rel.index, "normal": rel.is_normal()}
    detail = {}
    if value["normal"]:
        iso = identify(quotient_on_fixed(ctx.sub_presentation(via).presentation, rel))
        value["quotient"] = iso.name
        detail = iso.to_dict()
    return value, detail


def _op_fixed_cosets(ctx: Context, subgroup: str):
    fixed = fixed_cosets(ctx.table(subgroup))
    return len(fixed), {"cosets": fixed}


def _op_normalizer_index(ctx: Context, subgroup: str):
    return list(normalizer_index(ctx.table(subgroup))), {}


def _op_quotient_element_orders(ctx: Context, subgroup: str):
    iso = identify(ctx.quotient(subgroup))
    return {str(o): k for o, k in iso.fingerprint.element_orders}, {}


def _embedded_labels(ctx: Context, subgroup: str, via: str) -> list[int]:
    t = ctx.table(subgroup)
    outer = ctx.table(via)
    reps = t.representatives()
    return [k for k, f in enumerate(fixed_cosets(t)) if outer.contains(reps[f])]


def _op_embedded_subgroup(ctx: Context, subgroup: str, via: str):
    """Image of ``via``/``subgroup`` inside ``N(subgroup)/subgroup``."""
    c = ctx.quotient(subgroup)
    labels = _embedded_labels(ctx, subgroup, via)
    sub = CayleyTable(len(labels), tuple(
        tuple(labels.index(c.mul(a, b)) for b in labels) for a in labels))
    value = {
        "order": len(labels),
        "name": identify(sub).name,
        "normal": is_normal_in(c, labels),
        "equals_derived_subgroup": sorted(c.derived_subgroup()) == labels,
    }
    return value, {"labels": labels}


def _op_quotient_commutator(ctx: Context, subgroup: str):
    c = ctx.quotient(subgroup)
    derived = sorted(c.derived_subgroup())
    sub = CayleyTable(len(derived), tuple(
        tuple(derived.index(c.mul(a, b)) for b in derived) for a in derived))
    value = {"derived_subgroup": identify(sub).name, "abelianization_order": c.abelianization_order()}
    return value, {"derived_labels": derived}


def _op_low_index_normal(ctx: Context, group: str, index: int, contains: str,
                         node_budget: int | None = None):
    sp = ctx.sub_presentation(group)
    target = [sp.rewrite(w) for w in ctx.words(contains)]
    fast = normal_subgroups_of_index(sp.presentation, index, "abelian")
    slow = normal_subgroups_of_index(sp.presentation, index, "backtrack", node_budget)
    agree = [t.rows for t in fast] == [t.rows for t in slow]
    hits = classes_containing(sp.presentation, slow, target)
    value = {"methods_agree": agree, "contains_target": bool(hits)}
    return value, {"classes": len(slow), "containing": hits}


def _op_low_index_contains(ctx: Context, index: int, contains: str, node_budget: int | None = None):
    opts = SubgroupSearchOptions(index, exact_index=index, node_budget=node_budget)
    try:
        classes = low_index_subgroups(ctx.presentation, opts)
        complete = True
    except SearchBudgetExhausted as exc:
        classes, complete = exc.partial, False
    hits = classes_containing(ctx.presentation, classes, ctx.words(contains))
    return bool(hits) and complete, {"classes": len(classes), "containing": hits, "complete": complete}


def _surface(d: dict) -> SurfaceInvariants:
    return SurfaceInvariants(**d)


def _op_cover_invariants(ctx: Context, base: dict, degree: int, cover_q: int):
    return etale_cover_invariants(_surface(base), degree, cover_q).to_dict(), {}


def _op_beauville_bound(ctx: Context, pg: int):
    return _fraction(beauville_bound(pg)), {}


def _op_canonical_degree(ctx: Context, invariants: dict, image_degree: int):
    return _fraction(canonical_degree_chain(_surface(invariants), image_degree)), {}


def _fraction(x: Fraction):
    return x.numerator if x.denominator == 1 else str(x)


OPERATIONS: dict[str, Callable] = {
    "index": _op_index,
    "contains": _op_contains,
    "is_normal": _op_is_normal,
    "action_order": _op_action_order,
    "identify_quotient": _op_identify_quotient,
    "abelian_invariants": _op_abelian_invariants,
    "staged_abelian_invariants": _op_staged_abelian_invariants,
    "h1_statement": _op_h1_statement,
    "relative_quotient": _op_relative_quotient,
    "fixed_cosets": _op_fixed_cosets,
    "normalizer_index": _op_normalizer_index,
    "quotient_element_orders": _op_quotient_element_orders,
    "embedded_subgroup": _op_embedded_subgroup,
    "quotient_commutator": _op_quotient_commutator,
    "low_index_normal": _op_low_index_normal,
    "low_index_contains": _op_low_index_contains,
    "cover_invariants": _op_cover_invariants,
    "beauville_bound": _op_beauville_bound,
    "canonical_degree": _op_canonical_degree,
}


def _normalize(value):
    return json.loads(json.dumps(value))


def run_check(ctx: Context, check: Check) -> dict:
    start = time.perf_counter()
    entry = {"id": check.id, "op": check.op, "claim": check.claim,
             "expected": _normalize(check.expected)}
    try:
        computed, detail = OPERATIONS[check.op](ctx, **check.args)
        computed = _normalize(computed)
        entry.update(computed=computed, detail=_normalize(detail),
                     status="pass" if computed == entry["expected"] else "fail")
    except Exception as exc:  # noqa: BLE001 - any failure becomes a failed check
        entry.update(computed=None, detail={}, status="fail", message=f"{type(exc).__name__}: {exc}")
    entry["elapsed_s"] = round(time.perf_counter() - start, 6)
    return entry


def _digest(path: Path) -> str:
    try:
        return hashlib.sha256(path.read_bytes()).hexdigest()
    except OSError:
        return "missing"


THREADS_ENV = "FPVERIFY_THREADS"


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def run_manifest(m: Manifest, extended: bool = False, jobs: int | None = None,
                 progress: Callable[[dict], None] | None = None) -> dict:
    """Run every check and assemble the report.

    With ``jobs > 1`` checks run on a thread pool; shared intermediate results
    are built once under a per-key lock.  The report does not depend on
    ``jobs``.
    """
    ctx = Context(m)
    jobs = default_jobs() if jobs is None else max(1, jobs)

    def one(check: Check) -> dict:
        if check.extended and not extended:
            entry = {"id": check.id, "op": check.op, "claim": check.claim,
                     "expected": _normalize(check.expected), "computed": None, "detail": {},
                     "status": "skipped", "elapsed_s": 0.0}
        else:
            entry = run_check(ctx, check)
        if progress:
            progress(entry)
        return entry

    if jobs == 1:
        results = [one(c) for c in m.checks]
    else:
        with ThreadPoolExecutor(jobs) as pool:
            results = list(pool.map(one, m.checks))
    results.sort(key=lambda e: e["id"])
    ran = [e for e in results if e["status"] != "skipped"]
    files = [m.presentation, *m.word_files]
    return {
        "schema": REPORT_SCHEMA,
        "toolkit_version": __version__,
        "overall": "pass" if all(e["status"] == "pass" for e in ran) else "fail",
        "inputs": {name: _digest(m.base_dir / name) for name in files},
        "checks": results,
    }


def strip_timing(report: dict) -> dict:
    out = json.loads(json.dumps(report))
    for e in out["checks"]:
        e.pop("elapsed_s", None)
    return out


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
