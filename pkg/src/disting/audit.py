"""Corpus enumeration and the exhaustive inequality / construction audit.

Every theorem bound is re-evaluated from exact solves; the proof
constructions are replayed separately, so a failed construction refutes a
proof step, never the inequality itself.
"""
from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from . import __version__
from .automorphism import canonical_form
from .constructions import (
    ALL_RULES,
    RULE_SIGNATURE,
    ConstructionOutcome,
    apply_rule,
    base_graph_for,
)
from .errors import DistingError, Graph6Error
from .graphs import (
    FamilySpec,
    Graph,
    contract_edge,
    contract_vertex,
    is_connected,
    make_family,
    odot,
    parse_graph6,
    remove_edge,
    remove_vertex,
    to_graph6,
)
from .solver import (
    brute_force_value,
    distinguishing_index_or_none,
    distinguishing_number,
)

OPS = ("remove-vertex", "remove-edge", "odot", "contract-vertex", "contract-edge")

OP_FUNCS = {
    "remove-vertex": remove_vertex,
    "remove-edge": remove_edge,
    "odot": odot,
    "contract-vertex": contract_vertex,
    "contract-edge": contract_edge,
}

OP_SITE_KIND = {
    "remove-vertex": "vertex",
    "remove-edge": "edge",
    "odot": "vertex",
    "contract-vertex": "vertex",
    "contract-edge": "edge",
}

# inequality id -> (op, which value, check(before, after), tight(before, after))
INEQUALITIES = {
    "thm2.2i-lo": ("remove-vertex", "D", lambda b, a: b - 1 <= a, lambda b, a: b - 1 == a),
    "thm2.2i-hi": ("remove-vertex", "D", lambda b, a: a <= 2 * b, lambda b, a: a == 2 * b),
    "thm2.2ii-lo": ("remove-vertex", "Dp", lambda b, a: b - 1 <= a, lambda b, a: b - 1 == a),
    "thm2.2ii-hi": ("remove-vertex", "Dp", lambda b, a: a <= 2 * b, lambda b, a: a == 2 * b),
    "thm2.4": ("remove-edge", "D", lambda b, a: abs(a - b) <= 2, lambda b, a: abs(a - b) == 2),
    "thm2.5-lo": ("remove-edge", "Dp", lambda b, a: b - 1 <= a, lambda b, a: b - 1 == a),
    "thm2.5-hi": ("remove-edge", "Dp", lambda b, a: a <= b + 2, lambda b, a: a == b + 2),
    "thm3.1i": ("odot", "D", lambda b, a: b - 1 <= a, lambda b, a: b - 1 == a),
    "thm3.1ii": ("odot", "Dp", lambda b, a: b - 1 <= a, lambda b, a: b - 1 == a),
    "thm4.1i": ("contract-vertex", "D", lambda b, a: b - 1 <= a, lambda b, a: b - 1 == a),
    "thm4.1ii": ("contract-vertex", "Dp", lambda b, a: a <= b + 1, lambda b, a: a == b + 1),
    "thm4.4i-lo": ("contract-edge", "D", lambda b, a: b - 1 <= a, lambda b, a: b - 1 == a),
    "thm4.4i-hi": ("contract-edge", "D", lambda b, a: a <= 3 * b, lambda b, a: a == 3 * b),
    "thm4.4ii-lo": ("contract-edge", "Dp", lambda b, a: b - 1 <= a, lambda b, a: b - 1 == a),
    "thm4.4ii-hi": ("contract-edge", "Dp", lambda b, a: a <= 3 * b, lambda b, a: a == 3 * b),
}


def inequalities_for_op(op: str) -> list:
    return [iid for iid, meta in INEQUALITIES.items() if meta[0] == op]


@dataclass(frozen=True)
class BoundCheck:
    graph6: str
    op: str
    site: str
    D_before: int
    D_after: int
    Dp_before: Optional[int]
    Dp_after: Optional[int]
    verdicts: tuple  # ((inequality id, "pass"|"fail"|"undefined"), ...)
    tight: tuple     # inequality ids met with equality

    @property
    def delta_D(self) -> int:
        return self.D_after - self.D_before

    @property
    def delta_Dp(self) -> Optional[int]:
        if self.Dp_before is None or self.Dp_after is None:
            return None
        return self.Dp_after - self.Dp_before

    def to_record(self) -> dict:
        return {
            "type": "bound",
            "graph6": self.graph6,
            "op": self.op,
            "site": self.site,
            "D_before": self.D_before,
            "D_after": self.D_after,
            "Dp_before": self.Dp_before,
            "Dp_after": self.Dp_after,
            "delta_D": self.delta_D,
            "delta_Dp": self.delta_Dp,
            "verdicts": dict(self.verdicts),
            "tight": list(self.tight),
        }


def evaluate_verdicts(op, d_before, d_after, dp_before, dp_after):
    """Verdicts and tight set as a pure function of the four solved values."""
    verdicts = []
    tight = []
    for iid in inequalities_for_op(op):
        _, which, check, is_tight = INEQUALITIES[iid]
        b, a = (d_before, d_after) if which == "D" else (dp_before, dp_after)
        if b is None or a is None:
            verdicts.append((iid, "undefined"))
            continue
        verdicts.append((iid, "pass" if check(b, a) else "fail"))
        if is_tight(b, a):
            tight.append(iid)
    return tuple(verdicts), tuple(tight)


def site_str(op: str, site) -> str:
    if OP_SITE_KIND[op] == "vertex":
        return f"v={site}"
    return f"e={site[0]},{site[1]}"


def parse_site(text: str):
    """Parse "v=K" or "e=U,V" into ("vertex", k) or ("edge", (u, v))."""
    if text.startswith("v="):
        return "vertex", int(text[2:])
    if text.startswith("e="):
        u, v = text[2:].split(",")
        return "edge", (int(u), int(v))
    raise ValueError(f"site must look like 'v=K' or 'e=U,V', got {text!r}")


def _sites(g: Graph, op: str):
    if OP_SITE_KIND[op] == "vertex":
        return list(range(g.n))
    return list(g.edge_list)


@lru_cache(maxsize=50000)
def check_bounds(g: Graph) -> tuple:
    """One BoundCheck per (operation, site) pair over all of g's sites."""
    if not is_connected(g) or g.n < 3:
        raise ValueError("bound checks require a connected graph with n >= 3")
    g6 = to_graph6(g)
    d_before = distinguishing_number(g).value
    dp_res = distinguishing_index_or_none(g)
    dp_before = dp_res.value if dp_res else None
    records = []
    for op in OPS:
        fn = OP_FUNCS[op]
        for site in _sites(g, op):
            derived = fn(g, site)
            d_after = distinguishing_number(derived).value
            dpa = distinguishing_index_or_none(derived)
            dp_after = dpa.value if dpa else None
            verdicts, tight = evaluate_verdicts(op, d_before, d_after, dp_before, dp_after)
            records.append(
                BoundCheck(g6, op, site_str(op, site), d_before, d_after,
                           dp_before, dp_after, verdicts, tight)
            )
    return tuple(records)


# ---------------------------------------------------------------------------
# Corpus enumeration: one representative per isomorphism class of connected
# graphs, generated by extending smaller graphs and deduplicating by
# canonical form.
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def enumerate_connected(n: int) -> tuple:
    if not (1 <= n <= 9):
        raise ValueError("enumeration supports 1 <= n <= 9")
    if n == 1:
        return (Graph.from_edges(1, []),)
    seen = {}
    for g in enumerate_connected(n - 1):
        for mask in range(1, 1 << (n - 1)):
            extra = [(u, n - 1) for u in range(n - 1) if (mask >> u) & 1]
            h = Graph(n, g.edges | frozenset(extra))
            code = canonical_form(h).code
            if code not in seen:
                seen[code] = parse_graph6(code)
    return tuple(seen[c] for c in sorted(seen))


# ---------------------------------------------------------------------------
# Construction audit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstructionRecord:
    graph6: str
    rule: str
    site: str
    outcome: Optional[ConstructionOutcome]
    status: str  # "ok" | "failed" | "undefined-target" | "undefined-base" | "error"
    detail: Optional[str] = None

    def to_record(self) -> dict:
        rec = {
            "type": "construction",
            "graph6": self.graph6,
            "rule": self.rule,
            "site": self.site,
            "status": self.status,
            "detail": self.detail,
        }
        if self.outcome is not None:
            rec.update(
                labels_used=self.outcome.labels_used,
                claimed_bound=self.outcome.claimed_bound,
                verified=self.outcome.verified,
                finding=self.outcome.finding,
                certificate=(list(self.outcome.certificate.image)
                             if self.outcome.certificate else None),
                note=self.outcome.note,
            )
        return rec


def _base_labeling(rule: str, bg: Graph):
    """Solver-produced distinguishing base labeling, or None when undefined."""
    _, mode = RULE_SIGNATURE[rule]
    if mode == "vertex":
        return distinguishing_number(bg).witness
    res = distinguishing_index_or_none(bg)
    return res.witness_dict() if res else None


def construction_outcomes(g: Graph) -> tuple:
    """Apply every applicable rule at every site of g; record everything."""
    if not is_connected(g) or g.n < 3:
        raise ValueError("construction audit requires a connected graph with n >= 3")
    g6 = to_graph6(g)
    out = []
    for rule in ALL_RULES:
        site_kind, mode = RULE_SIGNATURE[rule]
        sites = list(range(g.n)) if site_kind == "vertex" else list(g.edge_list)
        for site in sites:
            s = f"v={site}" if site_kind == "vertex" else f"e={site[0]},{site[1]}"
            bg = base_graph_for(rule, g, site)
            base = _base_labeling(rule, bg)
            if base is None:
                out.append(ConstructionRecord(
                    g6, rule, s, None, "undefined-base",
                    "base graph has undefined D'; rule not applicable"))
                continue
            try:
                oc = apply_rule(rule, g, site, base)
            except DistingError as exc:
                out.append(ConstructionRecord(g6, rule, s, None, "error", str(exc)))
                continue
            if oc.verified is None:
                status = "undefined-target"
            elif oc.verified:
                status = "ok"
            else:
                status = "failed"
            out.append(ConstructionRecord(g6, rule, s, oc, status))
    return tuple(out)


def verify_constructions(g: Graph) -> list:
    """Only the records a reviewer needs to look at."""
    return [r for r in construction_outcomes(g) if r.status not in ("ok",)]


# ---------------------------------------------------------------------------
# Sharpness witnesses and family formula tables
# ---------------------------------------------------------------------------

def sharpness_search(inequality_id: str, n_max: int) -> list:
    if inequality_id not in INEQUALITIES:
        raise ValueError(f"unknown inequality id {inequality_id!r}")
    if n_max > 8:
        raise ValueError("sharpness search limited to n_max <= 8")
    witnesses = []
    for n in range(3, n_max + 1):
        for g in enumerate_connected(n):
            for rec in check_bounds(g):
                if inequality_id in rec.tight:
                    witnesses.append({
                        "graph6": rec.graph6,
                        "op": rec.op,
                        "site": rec.site,
                        "D_before": rec.D_before,
                        "D_after": rec.D_after,
                        "Dp_before": rec.Dp_before,
                        "Dp_after": rec.Dp_after,
                        "delta_D": rec.delta_D,
                        "delta_Dp": rec.delta_Dp,
                    })
    return witnesses


def friendship_formula(n: int) -> int:
    # integer floor((1 + sqrt(8n+1)) / 2) without float rounding concerns
    s = 8 * n + 1
    r = int(s ** 0.5)
    while r * r > s:
        r -= 1
    while (r + 1) * (r + 1) <= s:
        r += 1
    return (1 + r) // 2

FAMILY_FEASIBLE = {
    "friendship": 5,
    "spider": 6,
    "complete": 8,
    "star": 8,
    "path": 12,
    "cycle": 12,
    "apex-pair": 8,
}


def _predicted(kind: str, p: int):
    """(predicted D, predicted D') where the source text states a value."""
    if kind == "complete":
        return p, (2 if p > 3 else (3 if p == 3 else None))
    if kind == "star":
        return p, p
    if kind == "friendship":
        return friendship_formula(p), (3 if p == 3 else None)
    if kind == "apex-pair":
        return p - 2, p - 2
    if kind == "spider":
        return (3 if p == 5 else None), None
    return None, None


def family_audit(kind: str, params) -> list:
    rows = []
    for p in params:
        if p > FAMILY_FEASIBLE.get(kind, 8):
            raise ValueError(f"{kind} param {p} beyond solver feasibility")
        g = make_family(FamilySpec(kind, p))
        d = distinguishing_number(g).value
        dp_res = distinguishing_index_or_none(g)
        dp = dp_res.value if dp_res else None
        pred_d, pred_dp = _predicted(kind, p)
        row = {
            "type": "family",
            "kind": kind,
            "param": p,
            "n": g.n,
            "edges": len(g.edges),
            "D": d,
            "Dp": dp,
            "predicted_D": pred_d,
            "match_D": (d == pred_d) if pred_d is not None else None,
            "predicted_Dp": pred_dp,
            "match_Dp": (dp == pred_dp) if pred_dp is not None else None,
        }
        if kind == "spider":
            k = int(round((p - 1) ** 0.5))
            if k >= 2 and k * k + 1 == p:
                # every single-vertex deletion must change D
                row["deletion_changes_D"] = all(
                    distinguishing_number(remove_vertex(g, v)).value != d
                    for v in range(g.n)
                )
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# Full audit run and report emission
# ---------------------------------------------------------------------------

@dataclass
class AuditReport:
    corpus: str
    bound_checks: list = field(default_factory=list)
    construction_records: list = field(default_factory=list)
    family_rows: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def summary(self) -> dict:
        tally = {"pass": 0, "fail": 0, "undefined": 0}
        for rec in self.bound_checks:
            for _, verdict in rec.verdicts:
                tally[verdict] += 1
        c_status = {}
        for rec in self.construction_records:
            c_status[rec.status] = c_status.get(rec.status, 0) + 1
        return {
            "type": "summary",
            "corpus": self.corpus,
            "graphs": len({r.graph6 for r in self.bound_checks}),
            "bound_records": len(self.bound_checks),
            "verdict_counts": tally,
            "construction_records": len(self.construction_records),
            "construction_status": c_status,
            "notes": self.notes,
            "version": __version__,
            "wall_time": round(self.wall_time, 3),
        }

    @property
    def has_failures(self) -> bool:
        return any(
            verdict == "fail" for rec in self.bound_checks for _, verdict in rec.verdicts
        )

    def records(self) -> list:
        recs = [r.to_record() for r in self.bound_checks]
        recs += [r.to_record() for r in self.construction_records]
        recs += list(self.family_rows)
        recs.append(self.summary)
        return recs

    def to_jsonl(self) -> str:
        return "\n".join(json.dumps(r, sort_keys=True) for r in self.records()) + "\n"

    def to_csv(self) -> str:
        cols = ["graph6", "op", "site", "D_before", "D_after", "Dp_before",
                "Dp_after", "delta_D", "delta_Dp", "verdicts", "tight"]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=cols)
        writer.writeheader()
        for rec in self.bound_checks:
            row = rec.to_record()
            row["verdicts"] = ";".join(f"{k}={v}" for k, v in sorted(row["verdicts"].items()))
            row["tight"] = ";".join(row["tight"])
            writer.writerow({c: row[c] for c in cols})
        return buf.getvalue()


def _corpus_from_file(path: str):
    graphs, notes = [], []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                g = parse_graph6(line)
            except Graph6Error as exc:
                notes.append(f"line {lineno}: malformed graph6 record ({exc})")
                continue
            if g.n < 3 or not is_connected(g):
                notes.append(f"line {lineno}: skipped (need connected, n >= 3)")
                continue
            graphs.append(g)
    return graphs, notes


def _audit_one(args):
    g6, with_constructions = args
    g = parse_graph6(g6)
    bounds = check_bounds(g)
    cons = construction_outcomes(g) if with_constructions and g.n <= 6 else ()
    return bounds, cons


def run_audit(nmax: int | None = None, corpus_file: str | None = None,
              constructions: bool = False, jobs: int = 1) -> AuditReport:
    start = time.monotonic()
    notes = []
    if corpus_file is not None:
        graphs, notes = _corpus_from_file(corpus_file)
        corpus = f"file:{corpus_file}"
    else:
        if nmax is None:
            nmax = 6
        graphs = [g for n in range(3, nmax + 1) for g in enumerate_connected(n)]
        corpus = f"connected graphs with 3 <= n <= {nmax}"
    tasks = [(to_graph6(g), constructions) for g in graphs]
    if jobs > 1:
        import multiprocessing as mp

        with mp.Pool(jobs) as pool:
            results = pool.map(_audit_one, tasks)
    else:
        results = [_audit_one(t) for t in tasks]
    report = AuditReport(corpus=corpus, notes=notes)
    for bounds, cons in results:
        report.bound_checks.extend(bounds)
        report.construction_records.extend(cons)
    # deterministic record order regardless of worker scheduling
    report.bound_checks.sort(key=lambda r: (r.graph6, r.op, r.site))
    report.construction_records.sort(key=lambda r: (r.graph6, r.rule, r.site))
    report.wall_time = time.monotonic() - start
    return report
