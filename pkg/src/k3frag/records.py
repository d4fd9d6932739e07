"""Line-delimited record files for search results and checkpoints.

The first line is a versioned header; every further line is one JSON
object with a ``type`` field. Result files contain ``config`` records and
one ``summary``; checkpoint files add ``visited``, ``configuration`` and
``frontier`` records describing a resumable search.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, TextIO, Tuple

from .graphs import Multigraph

HEADER = "# k3frag-records 1"


class RecordError(ValueError):
    pass


def adjacency(g: Multigraph) -> List[List[int]]:
    """Edge list ``[u, v, multiplicity]`` with ``u < v``."""
    return [[u, v, m] for u, v, m in g.edges()]


def graph_of(n: int, edges: Iterable[Iterable[int]]) -> Multigraph:
    return Multigraph(n, [tuple(e) for e in edges])


def hconfig_record(h) -> dict:
    return {
        "type": "config",
        "degree": h.degree,
        "key": h.key,
        "vertices": h.graph.n,
        "adjacency": adjacency(h.graph),
        "census": list(h.census),
        "rank": h.rank,
        "aut": h.aut_order,
        "kernel": [list(v) for v in h.kernel],
        "witness_gram": [list(r) for r in h.witness_gram],
        "witness_h": list(h.witness_h),
        "configurations": len(h.configurations),
        "maximal": h.maximal,
        "complete": h.complete,
    }


def hconfig_from_record(rec: dict):
    from .search import HConfiguration

    g = graph_of(rec["vertices"], rec["adjacency"])
    h = HConfiguration(rec["degree"], g, rec["key"], tuple(rec["census"]), rec["rank"],
                       rec["aut"], tuple(tuple(r) for r in rec["witness_gram"]),
                       tuple(rec["witness_h"]), tuple(tuple(v) for v in rec["kernel"]))
    h.maximal = rec["maximal"]
    h.complete = rec["complete"]
    return h


def summary_record(res) -> dict:
    return {
        "type": "summary",
        "degree": res.degree,
        "hconfigs": len(res.hconfigs),
        "max": res.max_count,
        "configurations": len(res.configurations),
        "complete": res.complete,
        "nodes": res.nodes,
    }


def dump_line(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


def write_result(res, out: TextIO):
    """Deterministic export: records sorted by canonical key."""
    out.write(HEADER + "\n")
    for h in sorted(res.hconfigs, key=lambda h: h.key):
        out.write(dump_line(hconfig_record(h)) + "\n")
    out.write(dump_line(summary_record(res)) + "\n")


def read_records(lines: Iterable[str]) -> List[dict]:
    it = iter(lines)
    first = next(it, None)
    if first is None or first.strip() != HEADER:
        raise RecordError("missing or unsupported header")
    out = []
    for no, line in enumerate(it, 2):
        line = line.strip()
        if not line:
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as e:
            raise RecordError(f"line {no}: {e}") from None
        if "type" not in rec:
            raise RecordError(f"line {no}: record without type")
        out.append(rec)
    return out


# ---------------------------------------------------------------------------
# checkpoints


@dataclass
class Checkpoint:
    degree: int
    seed_index: int
    nodes: int
    visited: List[str]
    frontier: List[Multigraph]
    hconfigs: list
    configurations: Dict[str, Tuple[str, int]] = field(default_factory=dict)
    options: dict = field(default_factory=dict)


def save_checkpoint(path: str, cp: Checkpoint):
    tmp = path + ".tmp"
    with open(tmp, "w") as out:
        out.write(HEADER + "\n")
        out.write(dump_line({"type": "checkpoint", "degree": cp.degree, "seed_index": cp.seed_index,
                             "nodes": cp.nodes, "options": cp.options}) + "\n")
        for h in sorted(cp.hconfigs, key=lambda h: h.key):
            rec = hconfig_record(h)
            rec["configuration_keys"] = list(h.configurations)
            out.write(dump_line(rec) + "\n")
        for key in sorted(cp.configurations):
            hkey, size = cp.configurations[key]
            out.write(dump_line({"type": "configuration", "key": key, "hkey": hkey, "size": size}) + "\n")
        out.write(dump_line({"type": "visited", "keys": sorted(cp.visited)}) + "\n")
        for g in cp.frontier:
            out.write(dump_line({"type": "frontier", "vertices": g.n, "adjacency": adjacency(g)}) + "\n")
    os.replace(tmp, path)


def load_checkpoint(path: str) -> Checkpoint:
    with open(path) as f:
        recs = read_records(f)
    head = [r for r in recs if r["type"] == "checkpoint"]
    if len(head) != 1:
        raise RecordError("not a checkpoint file")
    head = head[0]
    hconfigs = []
    for r in recs:
        if r["type"] == "config":
            h = hconfig_from_record(r)
            h.configurations = list(r.get("configuration_keys", []))
            hconfigs.append(h)
    configs = {r["key"]: (r["hkey"], r["size"]) for r in recs if r["type"] == "configuration"}
    visited = [k for r in recs if r["type"] == "visited" for k in r["keys"]]
    frontier = [graph_of(r["vertices"], r["adjacency"]) for r in recs if r["type"] == "frontier"]
    return Checkpoint(head["degree"], head["seed_index"], head["nodes"], visited, frontier,
                      hconfigs, configs, head.get("options", {}))
