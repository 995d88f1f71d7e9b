"""Verification campaigns, instance files and reports.

A campaign pulls instances from a source, runs the selected checks on each
one and collects the outcome in a report. Failures never stop a campaign;
they are listed in the summary and make ``BoundReport.passed`` false.

Source strings::

    enumerate:3-12                       every mop of order 3..12
    random:n=200,count=1000,seed=7       seeded uniform samples
    family:Gt=2-3,Ht=2-3,Bt=2,A15        named families
    file:corpus.jsonl                    one instance per line
"""

from __future__ import annotations

import json
import os
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .constructive import (
    ImpossibleInstance,
    find_partition_diagonal,
    isolate_theorem1,
    isolate_theorem2,
    theorem1_bound,
    theorem2_bound,
)
from .core import (
    Mop,
    contract_hamiltonian_edge,
    degree_two_vertices,
    diagonal_partition,
    validate,
)
from .gen import ENUMERATION_CAP, FamilySpec, build_family, enumerate_mops, random_mop
from .solvers import dominates, dominating_by_coloring, gamma_exact, iota_exact, is_isolating_set

CHECKS = ("lemmas", "theorem1", "theorem2", "known-bounds", "extremal-values")
SCHEMA = "mopiso.report/1"
RANDOM_EXACT_LIMIT = 20
TIMING_KEYS = ("timing_ms", "elapsed_ms")

# exact K_{1,2}-isolation number of the extremal families
EXTREMAL_IOTA1 = {"Gt": lambda t: t, "Ht": lambda t: t, "Bt": lambda t: 3 * t}


class InstanceFileError(ValueError):
    def __init__(self, path, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.line = line


# -- instance files -----------------------------------------------------------


def parse_instance(text: str) -> Mop:
    """Parse one JSONL line; raises ValueError naming the problem."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON ({exc.msg})") from None
    if not isinstance(obj, dict) or "n" not in obj or "diagonals" not in obj:
        raise ValueError('expected an object with "n" and "diagonals"')
    n, diags = obj["n"], obj["diagonals"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f'"n" must be an integer, got {n!r}')
    if not isinstance(diags, list) or not all(
        isinstance(d, list) and len(d) == 2 and all(isinstance(x, int) for x in d) for d in diags
    ):
        raise ValueError('"diagonals" must be a list of integer pairs')
    if len({tuple(sorted(d)) for d in diags}) != len(diags):
        raise ValueError("repeated diagonal")
    return Mop.from_pairs(n, diags)


def read_records(path) -> Iterator[tuple[int, Mop | None, str | None]]:
    """Yield ``(line, mop, error)`` for every non-blank line of a JSONL file."""
    with open(path, encoding="utf-8") as fh:
        for lineno, text in enumerate(fh, start=1):
            if not text.strip():
                continue
            try:
                yield lineno, parse_instance(text), None
            except ValueError as exc:
                yield lineno, None, str(exc)


def read_instances(path) -> Iterator[Mop]:
    """Stream the mops of a JSONL file, failing on the first bad line."""
    for lineno, m, error in read_records(path):
        if error is not None:
            raise InstanceFileError(path, lineno, error)
        yield m


def dump_instance(m: Mop) -> str:
    return json.dumps(m.to_json(), separators=(",", ":"))


def write_instances(path, mops: Iterable[Mop]) -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for m in mops:
            fh.write(dump_instance(m) + "\n")
            count += 1
    return count


def instance_seed(seed: int, index: int) -> int:
    """Seed of the ``index``-th instance of a random corpus."""
    return int(np.random.SeedSequence([seed, index]).generate_state(1, dtype=np.uint64)[0])


def random_corpus(n: int, count: int, seed: int) -> Iterator[Mop]:
    for i in range(count):
        yield random_mop(n, instance_seed(seed, i))


# -- sources ------------------------------------------------------------------


def _int_range(text: str) -> range:
    m = re.fullmatch(r"(\d+)(?:-(\d+))?", text.strip())
    if not m:
        raise ValueError(f"expected N or LO-HI, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if hi < lo:
        raise ValueError(f"empty range {text!r}")
    return range(lo, hi + 1)


@dataclass(frozen=True)
class Source:
    kind: str  # enumerate | random | family | file
    orders: tuple = ()
    count: int = 0
    seed: int = 0
    families: tuple = ()
    path: str = ""

    @classmethod
    def parse(cls, text: str) -> "Source":
        kind, sep, rest = text.partition(":")
        if not sep:
            return cls("file", path=text)
        if kind == "enumerate":
            orders = tuple(_int_range(rest))
            if orders[0] < 3 or orders[-1] > ENUMERATION_CAP:
                raise ValueError(f"enumeration supports orders 3..{ENUMERATION_CAP}")
            return cls("enumerate", orders=orders)
        if kind == "random":
            opts = dict(kv.split("=", 1) for kv in rest.split(",") if "=" in kv)
            unknown = set(opts) - {"n", "count", "seed"}
            if unknown or not {"n", "count"} <= set(opts):
                raise ValueError("random source needs n=..,count=.. and optionally seed=..")
            orders = tuple(_int_range(opts["n"]))
            if orders[0] < 3:
                raise ValueError("random orders must be >= 3")
            return cls("random", orders=orders, count=int(opts["count"]), seed=int(opts.get("seed", 0)))
        if kind == "family":
            specs = []
            for item in filter(None, (s.strip() for s in rest.split(","))):
                name, _, params = item.partition("=")
                if name == "A15":
                    specs.append(FamilySpec(name))
                    continue
                if not params:
                    raise ValueError(f"family {name} needs a parameter, e.g. {name}=2")
                specs.extend(FamilySpec(name, p) for p in _int_range(params))
            if not specs:
                raise ValueError("empty family list")
            return cls("family", families=tuple(specs))
        if kind == "file":
            return cls("file", path=rest)
        raise ValueError(f"unknown source kind {kind!r}")

    def to_json(self) -> dict:
        if self.kind == "enumerate":
            return {"kind": "enumerate", "orders": [self.orders[0], self.orders[-1]]}
        if self.kind == "random":
            return {"kind": "random", "orders": [self.orders[0], self.orders[-1]], "count": self.count, "seed": self.seed}
        if self.kind == "family":
            return {"kind": "family", "families": [[f.name, f.param] for f in self.families]}
        return {"kind": "file", "path": self.path}


@dataclass(frozen=True)
class CampaignConfig:
    source: Source
    checks: tuple = CHECKS
    exact: bool = False
    size_cap: int | None = None  # largest set size tried by exact solvers
    exact_limit: int | None = None  # largest order solved exactly; random default 20
    output: str | None = None
    workers: int = 1

    def __post_init__(self):
        bad = set(self.checks) - set(CHECKS)
        if bad:
            raise ValueError(f"unknown checks {sorted(bad)}; choose from {', '.join(CHECKS)}")
        object.__setattr__(self, "checks", tuple(c for c in CHECKS if c in self.checks))
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def exact_up_to(self) -> int | None:
        if not self.exact:
            return 0
        if self.exact_limit is not None:
            return self.exact_limit
        return RANDOM_EXACT_LIMIT if self.source.kind == "random" else None

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "checks": list(self.checks),
            "exact": self.exact,
            "size_cap": self.size_cap,
            "exact_limit": self.exact_up_to(),
        }


@dataclass(frozen=True)
class _Item:
    id: str
    mop: Mop | None
    family: dict | None = None
    error: str | None = None


def _items(src: Source) -> Iterator[_Item]:
    if src.kind == "enumerate":
        for n in src.orders:
            for i, m in enumerate(enumerate_mops(n)):
                yield _Item(f"enum-n{n}-{i}", m)
    elif src.kind == "random":
        for n in src.orders:
            for i, m in enumerate(random_corpus(n, src.count, src.seed)):
                yield _Item(f"random-n{n}-s{src.seed}-{i}", m)
    elif src.kind == "family":
        for spec in src.families:
            tag = spec.name if spec.name == "A15" else f"{spec.name}({spec.param})"
            yield _Item(tag, build_family(spec), {"family": spec.name, "param": spec.param})
    else:
        for lineno, m, error in read_records(src.path):
            yield _Item(f"line-{lineno}", m, None, error)


# -- per-instance checks ------------------------------------------------------


def _lemma_flags(m: Mop) -> dict:
    n = m.n
    flags = {}
    v2 = degree_two_vertices(m)
    if n >= 4:
        nbrs = m.neighbors
        flags["n2_independent"] = all(w not in v2 for v in v2 for w in nbrs[v])
        flags["n2_range"] = 2 <= len(v2) and 2 * len(v2) <= n
    edges = m.edges()
    ok = True
    for d in sorted(m.diagonals):
        part = diagonal_partition(m, d)
        lifted = []
        for sub, mp in ((part.g1, part.map1), (part.g2, part.map2)):
            if validate(sub) is not None:
                ok = False
            lifted.append({tuple(sorted((mp[a], mp[b]))) for a, b in sub.edges()})
        a, b = d
        if (
            part.g1.n + part.g2.n != n + 2
            or lifted[0] | lifted[1] != edges
            or lifted[0] & lifted[1] != {d}
            or part.ell != b - a
        ):
            ok = False
    flags["partition_identities"] = ok
    if n >= 4:
        ok = True
        for e in m.hamiltonian_edges():
            c, mp = contract_hamiltonian_edge(m, e)
            if c.n != n - 1 or validate(c) is not None or mp[e[0]] != mp[e[1]]:
                ok = False
        flags["contraction_valid"] = ok
    for lo, hi, least in ((4, 6, 8), (5, 8, 10)):
        if n >= least:
            try:
                c = find_partition_diagonal(m, lo, hi)
                flags[f"window_{lo}_{hi}"] = lo <= c.ell <= hi and c.d in m.diagonals
            except ImpossibleInstance:
                flags[f"window_{lo}_{hi}"] = False
    return flags


def _ratio(num, den):
    if num is None or not den:
        return None
    return round(num / den, 6)


def check_instance(item: _Item, checks: tuple, exact_up_to: int | None, size_cap: int | None) -> dict:
    rec = {
        "id": item.id,
        "family": item.family,
        "n": None,
        "n2": None,
        "iota1_exact": None,
        "iota0_exact": None,
        "gamma_exact": None,
        "theorem1_size": None,
        "theorem2_size": None,
        "coloring_size": None,
        "bounds": {},
        "flags": {},
        "error": item.error,
        "timing_ms": {},
    }
    if item.mop is None:
        rec["flags"]["instance_readable"] = False
        return rec
    m = item.mop
    n = m.n
    n2 = len(degree_two_vertices(m))
    rec["n"], rec["n2"] = n, n2
    flags, timing, bounds = rec["flags"], rec["timing_ms"], rec["bounds"]
    exact = exact_up_to is None or n <= exact_up_to

    def timed(key, fn, *args, **kw):
        t0 = time.perf_counter()
        out = fn(*args, **kw)
        timing[key] = round((time.perf_counter() - t0) * 1000, 3)
        return out

    iota1 = None
    needs_iota1 = (
        (exact and ({"theorem1", "theorem2"} & set(checks)) and n >= 5)
        or ("lemmas" in checks and 5 <= n <= 9)
        or ("extremal-values" in checks and item.family and item.family["family"] in EXTREMAL_IOTA1)
    )
    if needs_iota1:
        found = timed("iota1_exact", iota_exact, m, 1, size_cap)
        iota1 = None if found is None else len(found)
        rec["iota1_exact"] = iota1

    if n >= 5:
        bounds["n_over_5"] = theorem1_bound(n)
        bounds["theorem2"] = theorem2_bound(n, n2)
        bounds["theorem2_regime"] = "low" if 3 * n2 <= n else "high"
    bounds["n_over_3"] = n // 3
    if n >= 4:
        bounds["n_over_4"] = n // 4

    if "lemmas" in checks:
        flags.update(timed("lemmas", _lemma_flags, m))
        if 5 <= n <= 9:
            flags["small_iota1_is_1"] = iota1 == 1

    for name, fn, key, bound in (
        ("theorem1", isolate_theorem1, "theorem1_size", bounds.get("n_over_5")),
        ("theorem2", isolate_theorem2, "theorem2_size", bounds.get("theorem2")),
    ):
        if name not in checks or n < 5:
            continue
        try:
            S, trace = timed(name, fn, m)
        except (ImpossibleInstance, AssertionError, RuntimeError) as exc:
            flags[f"{name}_completed"] = False
            rec["error"] = f"{name}: {type(exc).__name__}: {exc}"
            continue
        rec[key] = len(S)
        flags[f"{name}_valid"] = is_isolating_set(m, S.members, 1)
        flags[f"{name}_within_bound"] = len(S) <= bound
        flags[f"{name}_trace_replays"] = trace.replay() == S.members
        if exact:
            flags[f"{name}_exact_within_bound"] = iota1 is not None and iota1 <= bound
            flags[f"{name}_not_below_exact"] = iota1 is not None and len(S) >= iota1

    if "known-bounds" in checks:
        dom = timed("coloring", dominating_by_coloring, m)
        rec["coloring_size"] = len(dom)
        flags["coloring_dominates"] = dominates(m, dom)
        flags["coloring_within_n_over_3"] = len(dom) <= n // 3
        if exact:
            g = timed("gamma_exact", gamma_exact, m, size_cap)
            rec["gamma_exact"] = None if g is None else len(g)
            flags["gamma_within_n_over_3"] = g is not None and len(g) <= n // 3
            if n >= 4:
                i0 = timed("iota0_exact", iota_exact, m, 0, size_cap)
                rec["iota0_exact"] = None if i0 is None else len(i0)
                flags["iota0_within_n_over_4"] = i0 is not None and len(i0) <= n // 4

    if "extremal-values" in checks and item.family:
        name, param = item.family["family"], item.family["param"]
        if name in EXTREMAL_IOTA1:
            flags["extremal_iota1"] = iota1 == EXTREMAL_IOTA1[name](param)
        elif name == "MaxDeg2":
            flags["n2_is_half"] = 2 * n2 == n
        elif name == "MinDeg2":
            flags["n2_is_two"] = n2 == 2
        elif name == "A15":
            flags["n2_is_five"] = n2 == 5

    rec["flags"] = dict(sorted(flags.items()))
    rec["timing_ms"] = dict(sorted(timing.items()))
    return rec


def _check_star(args):
    return check_instance(*args)


# -- reports ------------------------------------------------------------------


@dataclass
class BoundReport:
    config: dict
    instances: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.summary.get("failed_instances", 0) == 0

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "config": self.config, "instances": self.instances, "summary": self.summary}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def write(self, path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    def summary_lines(self) -> list:
        s = self.summary
        lines = [
            f"instances: {s['instances']}  failed: {s['failed_instances']}  "
            f"checks: {','.join(self.config['checks'])}"
        ]
        for key, val in s["worst_ratios"].items():
            if val is not None:
                lines.append(f"worst {key}: {val}")
        for flag, count in s["flag_failures"].items():
            lines.append(f"FAIL {flag}: {count}")
        for fail in s["failures"][:10]:
            lines.append(f"  {fail['id']}: {', '.join(fail['flags']) or fail['error']}")
        lines.append("PASS" if self.passed else "FAIL")
        return lines


def summarize(instances: list) -> dict:
    by_n: dict = {}
    flag_failures: dict = {}
    failures = []
    worst = {"theorem1": None, "theorem2": None, "iota1_over_n_over_5": None}
    for rec in instances:
        if rec["n"] is not None:
            by_n[str(rec["n"])] = by_n.get(str(rec["n"]), 0) + 1
        bad = sorted(k for k, v in rec["flags"].items() if not v)
        for k in bad:
            flag_failures[k] = flag_failures.get(k, 0) + 1
        if bad or rec["error"]:
            failures.append({"id": rec["id"], "flags": bad, "error": rec["error"]})
        b = rec["bounds"]
        for key, val in (
            ("theorem1", _ratio(rec["theorem1_size"], b.get("n_over_5"))),
            ("theorem2", _ratio(rec["theorem2_size"], b.get("theorem2"))),
            ("iota1_over_n_over_5", _ratio(rec["iota1_exact"], b.get("n_over_5"))),
        ):
            if val is not None and (worst[key] is None or val > worst[key]):
                worst[key] = val
    return {
        "instances": len(instances),
        "by_n": dict(sorted(by_n.items(), key=lambda kv: int(kv[0]))),
        "failed_instances": len(failures),
        "flag_failures": dict(sorted(flag_failures.items())),
        "failures": failures,
        "worst_ratios": worst,
    }


def verify_corpus(cfg: CampaignConfig) -> BoundReport:
    """Run the configured checks over every instance of the source."""
    t0 = time.perf_counter()
    limit = cfg.exact_up_to()
    jobs = ((item, cfg.checks, limit, cfg.size_cap) for item in _items(cfg.source))
    if cfg.workers == 1:
        instances = [_check_star(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            instances = list(pool.map(_check_star, jobs, chunksize=64))
    report = BoundReport(cfg.to_json(), instances, summarize(instances))
    report.summary["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    if cfg.output:
        report.write(cfg.output)
    return report


def default_workers() -> int:
    return max(1, os.cpu_count() or 1)


def strip_timing(obj):
    """Copy of a report with every timing field removed."""
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k not in TIMING_KEYS}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj
