"""One-command machine checks for the family's headline claims.

Every check produces a claim record: a stable claim id, the instance
parameters, a status, a witness, and the wall time spent.  A record is only
"verified" when it carries a machine-checkable witness (a coloring, a flow,
a cut, a deletion set) or an exhaustion statement naming the size of the
space that was searched.  Claims that only witness a one-sided bound say so
in their id (suffix ``_upper``) and in their witness; the report never
conflates a bound with an exact value.

Checks are independent and can run concurrently (``jobs``); the report is
always assembled in the fixed claim order.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, NamedTuple

from . import kernels
from ._flat import flatten
from .coloring import (
    BlockChain,
    Coloring,
    enumerate_colorings,
    find_coloring,
    is_proper,
    kempe_switch,
    parity_check,
)
from .connectivity import (
    all_13_trees,
    classify_cut,
    cyclic_edge_connectivity_is,
    leaf_count_check,
    star_hypotheses_check,
)
from .constructions import (
    _STUB_NAMES,
    build_H_meta,
    build_J_meta,
    build_M,
    build_N,
    build_Z,
    j_surgery_roundtrip,
    petersen,
    star_membership,
    witness_coloring_Y,
    witness_flow_Y,
    y_meta,
)
from .flows import cut_sum_check, find_flow, is_flow, min_zeros_by_deletion, random_flow, zero_links
from .formats import assignment_to_json_obj
from .kernels import KernelTimeout
from .registry import load_registry
from .semigraph import SemiGraph, VertexId

Claim = dict[str, Any]

REPORT_SCHEMA = "1"

_PERMS = [dict(zip((1, 2, 3), p)) for p in itertools.permutations((1, 2, 3))]


class VerificationReport(NamedTuple):
    schema: str
    backend: str                      # which search kernel produced the run
    digests: dict[str, str]           # registry content hashes, for reproducibility
    claims: tuple[Claim, ...]

    @property
    def counts(self) -> dict[str, int]:
        out = {"verified": 0, "refuted": 0, "budget-exceeded": 0}
        for record in self.claims:
            out[record["status"]] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.counts["refuted"] == 0

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "schema": self.schema,
            "backend": self.backend,
            "registry": self.digests,
            "summary": self.counts,
            "claims": list(self.claims),
        }


# -- claim execution ----------------------------------------------------------


class _Task(NamedTuple):
    claim: str
    instance: dict[str, Any]
    fn: Callable[..., tuple[str, dict[str, Any]]]
    args: tuple


def _deadline(budget: float | None) -> float | None:
    return None if budget is None else time.monotonic() + budget


def _execute(task: _Task, deadline: float | None) -> Claim:
    start = time.perf_counter()
    if deadline is not None and time.monotonic() >= deadline:
        status, witness = "budget-exceeded", {
            "note": "budget exhausted before this check started"}
    else:
        try:
            status, witness = task.fn(*task.args, deadline)
        except KernelTimeout:
            status, witness = "budget-exceeded", {
                "note": "search hit the deadline before completing"}
    return {
        "claim": task.claim,
        "instance": task.instance,
        "status": status,
        "witness": witness,
        "seconds": round(time.perf_counter() - start, 3),
    }


def _run_tasks(tasks: list[_Task], budget: float | None = None,
               jobs: int = 1) -> list[Claim]:
    deadline = _deadline(budget)
    if jobs <= 1:
        return [_execute(task, deadline) for task in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_execute, task, deadline) for task in tasks]
        return [f.result() for f in futures]


def _report(claims: list[Claim]) -> VerificationReport:
    reg = load_registry()
    return VerificationReport(REPORT_SCHEMA, kernels.backend_name,
                              dict(sorted(reg.digests.items())), tuple(claims))


def _link_count(g: SemiGraph) -> int:
    return g.num_edges + g.num_semi_edges


def _coloring_exhaustion(g: SemiGraph) -> str:
    m = _link_count(g)
    return (f"complete backtracking over the 3^{m} assignments of "
            f"{m} links found no proper 3-edge-coloring")


def _repair_deletion(g: SemiGraph, coloring: Coloring, v: VertexId) -> int:
    """One link of a duplicated color pair at v; deleting it clears the clash."""
    for a, b in itertools.combinations(g.incident(v), 2):
        if coloring[a] == coloring[b]:
            return b
    raise ValueError(f"no duplicated color pair at vertex {v}")


# -- gadget claims ------------------------------------------------------------


def _gadget(name: str) -> SemiGraph:
    return {"M": build_M, "N": build_N, "Z": build_Z}[name]()


def _gadget_property(name: str):
    if name == "M":
        return (lambda c, L: c[L["e1"]] == c[L["e2"]] or c[L["e3"]] == c[L["e4"]],
                "c(e1) = c(e2) or c(e3) = c(e4)")
    if name == "N":
        return (lambda c, L: c[L["f1"]] != c[L["f2"]],
                "c(f1) != c(f2)")
    return (lambda c, L: (c[L["z1"]] == c[L["z2"]]
                          and {c[L["z3"]], c[L["z4"]], c[L["z5"]]} == {1, 2, 3}),
            "c(z1) = c(z2) and {c(z3), c(z4), c(z5)} = {a, b, c}")


def _check_gadget_colorable(name: str, deadline: float | None):
    g = _gadget(name)
    col = find_coloring(g, deadline=deadline)
    if col is None:
        return "refuted", {"statement": _coloring_exhaustion(g)}
    return "verified", {"resistance": 0,
                        "coloring": assignment_to_json_obj(col)}


def _check_gadget_property(name: str, deadline: float | None):
    g = _gadget(name)
    labels = {lab: g.link_by_label(lab).id for lab in g.labels.values()}
    prop, statement = _gadget_property(name)
    reps: list[Coloring] = []
    count = enumerate_colorings(g, reps.append, deadline=deadline)
    for rep in reps:
        for perm in _PERMS:
            col = {lid: perm[val] for lid, val in rep.items()}
            if not prop(col, labels):
                return "refuted", {"statement": f"violation of: {statement}",
                                   "counterexample": assignment_to_json_obj(col)}
    return "verified", {
        "statement": f"every proper 3-edge-coloring satisfies {statement}",
        "exhaustion": (f"all {count.raw} proper colorings checked "
                       f"({count.canonical} classes under color permutation, "
                       f"each expanded through all 6 permutations)"),
        "colorings_raw": count.raw,
        "colorings_canonical": count.canonical,
    }


def _gadget_tasks() -> list[_Task]:
    suffix = {"M": "conflict_pair", "N": "distinct_pair", "Z": "stub_pattern"}
    tasks = []
    for name in ("M", "N", "Z"):
        tasks.append(_Task(f"gadget_{name}.colorable", {"gadget": name},
                           _check_gadget_colorable, (name,)))
        tasks.append(_Task(f"gadget_{name}.{suffix[name]}", {"gadget": name},
                           _check_gadget_property, (name,)))
    return tasks


def verify_gadget_lemmas(budget: float | None = None) -> VerificationReport:
    """Exhaustive coloring facts for M, N, Z plus a coloring witness each."""
    return _report(_run_tasks(_gadget_tasks(), budget))


# -- Y family claims ----------------------------------------------------------


def _check_Y_structure(i: int, deadline: float | None):
    g = y_meta(i).graph
    stub_labels = sorted(g.label_of(lk.id) or "" for lk in g.links() if not lk.is_edge)
    want = sorted(f"{name}_{i}" for name in _STUB_NAMES)
    checks = {
        "order": g.num_vertices == 40 * i + 1,
        "semi_edges": g.num_semi_edges == 5,
        "cubic": g.is_cubic(),
        "connected": g.is_connected(),
        "simple": g.is_simple(),
        "stub_labels": stub_labels == want,
    }
    witness = {
        "order": g.num_vertices,
        "semi_edges": g.num_semi_edges,
        "stub_labels": stub_labels,
    }
    if all(checks.values()):
        return "verified", witness
    witness["failed"] = sorted(k for k, ok in checks.items() if not ok)
    return "refuted", witness


def _check_Y_uncolorable(i: int, deadline: float | None):
    g = y_meta(i).graph
    col = find_coloring(g, deadline=deadline)
    if col is not None:
        return "refuted", {"coloring": assignment_to_json_obj(col)}
    return "verified", {"exhaustion": _coloring_exhaustion(g)}


def _check_Y_resistance(i: int, deadline: float | None):
    g = y_meta(i).graph
    if find_coloring(g, deadline=deadline) is not None:
        return "refuted", {"statement": "already colorable with no deletion"}
    col, v = witness_coloring_Y(i)
    deleted = _repair_deletion(g, col, v)
    partial = dict(col)
    del partial[deleted]
    if not is_proper(g, partial, partial=True):
        return "refuted", {"statement": "stored one-conflict witness does not repair"}
    return "verified", {
        "value": 1,
        "lower_bound": {"exhaustion": _coloring_exhaustion(g)},
        "upper_bound": {"deleted": [deleted],
                        "coloring": assignment_to_json_obj(partial)},
    }


def _flow_upper_witness(g: SemiGraph, phi, expect_zeros: int):
    zeros = zero_links(phi)
    if not is_flow(g, phi) or len(zeros) != expect_zeros:
        return None
    return {"flow": assignment_to_json_obj(phi, kind="flow"), "zeros": zeros}


def _check_Y_flow_resistance(i: int, deadline: float | None):
    g = y_meta(i).graph
    below = find_flow(g, i - 1, deadline=deadline)
    if below is not None:
        return "refuted", {"flow": assignment_to_json_obj(below, kind="flow"),
                           "zeros": zero_links(below)}
    upper = _flow_upper_witness(g, witness_flow_Y(i), i)
    if upper is None:
        return "refuted", {"statement": "stored witness flow fails validation"}
    return "verified", {
        "value": i,
        "lower_bound": {"exhaustion": (f"complete search found no flow with at "
                                       f"most {i - 1} zeros")},
        "upper_bound": upper,
    }


def _check_Y_flow_upper(i: int, deadline: float | None):
    g = y_meta(i).graph
    upper = _flow_upper_witness(g, witness_flow_Y(i), i)
    if upper is None:
        return "refuted", {"statement": "stored witness flow fails validation"}
    if find_flow(g, 0, deadline=deadline) is not None:
        return "refuted", {"statement": "a zero-free flow exists"}
    return "verified", {
        "upper_bound": {"value": i, **upper},
        "lower_bound": {"value": 1,
                        "exhaustion": "complete search found no zero-free flow"},
        "note": ("upper bound witnessed only: the exact minimum is out of "
                 "exhaustive reach at this order"),
    }


def _y_tasks(i: int) -> list[_Task]:
    inst = {"i": i}
    tasks = [
        _Task("Y.structure", inst, _check_Y_structure, (i,)),
        _Task("Y.uncolorable", inst, _check_Y_uncolorable, (i,)),
        _Task("Y.resistance", inst, _check_Y_resistance, (i,)),
    ]
    if i <= 2:
        tasks.append(_Task("Y.flow_resistance", inst, _check_Y_flow_resistance, (i,)))
    else:
        tasks.append(_Task("Y.flow_resistance_upper", inst, _check_Y_flow_upper, (i,)))
    return tasks


def verify_Y(i: int, budget: float | None = None) -> VerificationReport:
    """Structure, uncolorability, resistance 1, and flow resistance of Y_i.

    Flow resistance is exact for i <= 2 (complete search below the value)
    and a witnessed upper bound for larger i.
    """
    return _report(_run_tasks(_y_tasks(i), budget))


# -- H family claims ----------------------------------------------------------


def _check_H_structure(n: int, deadline: float | None):
    g = build_H_meta(n).graph
    checks = {
        "order": g.num_vertices == 40 * n + 2,
        "graph": g.is_graph(),
        "cubic": g.is_cubic(),
        "simple": g.is_simple(),
        "connected": g.is_connected(),
    }
    witness = {"order": g.num_vertices, "girth": g.girth()}
    if all(checks.values()):
        return "verified", witness
    witness["failed"] = sorted(k for k, ok in checks.items() if not ok)
    return "refuted", witness


def _check_H_snark(n: int, deadline: float | None):
    g = build_H_meta(n).graph
    col = find_coloring(g, deadline=deadline)
    if col is not None:
        return "refuted", {"coloring": assignment_to_json_obj(col)}
    flat = flatten(g)
    connected, bridge_idx = kernels.bridges(flat.n, flat.eu, flat.ev)
    if not connected or bridge_idx:
        return "refuted", {"connected": connected,
                           "bridges": [flat.lids[e] for e in bridge_idx]}
    return "verified", {
        "exhaustion": _coloring_exhaustion(g),
        "bridges": 0,
        "note": "connected cubic and bridgeless, hence 2-connected",
    }


def _h_chain(hb) -> BlockChain:
    """Chain decomposition of H_n: the first gadget block, then each grown
    block, then the closing vertex.  Construction refuses the split if any
    link were to skip a block."""
    levels = hb.vertex_levels
    blocks = [frozenset(levels[0])]
    for i in range(1, len(levels)):
        blocks.append(frozenset(levels[i]) - levels[i - 1])
    blocks.append(frozenset((hb.x,)))
    return BlockChain(hb.graph, blocks)


def _check_H_resistance(n: int, deadline: float | None):
    hb = build_H_meta(n)
    g = hb.graph
    lids = [lk.id for lk in g.links()]
    if find_coloring(g, deadline=deadline) is not None:
        return "refuted", {"statement": "already colorable with no deletion"}
    if n <= 2:
        for lid in lids:
            col = find_coloring(g, removed=(lid,), deadline=deadline)
            if col is not None:
                return "refuted", {"deleted": [lid],
                                   "coloring": assignment_to_json_obj(col)}
        exhaustion = (
            f"uncolorable as built and after each of the {len(lids)} "
            f"single-link deletions ({len(lids) + 1} complete searches)")
    else:
        # single-deletion searches blow up on the longer chains, so the
        # sweep composes exhaustive per-block searches instead; verdicts
        # match the direct route link for link (pinned by tests on n <= 2)
        chain = _h_chain(hb)
        if chain.colorable(deadline=deadline):
            return "refuted", {"statement":
                               "block composition colors the intact graph"}
        for lid in lids:
            if chain.colorable((lid,), deadline=deadline):
                return "refuted", {
                    "deleted": [lid],
                    "statement": "block composition colors this deletion"}
        exhaustion = (
            f"uncolorable as built and after each of the {len(lids)} "
            f"single-link deletions, the sweep composed exactly from "
            f"exhaustive block searches along the {len(chain.blocks)}-block "
            f"chain over all 3^5 boundary color patterns")
    first = _repair_deletion(g, hb.coloring, hb.v)
    second = _repair_deletion(g, hb.coloring, hb.x)
    partial = dict(hb.coloring)
    del partial[first], partial[second]
    if not is_proper(g, partial, partial=True):
        return "refuted", {"statement": "stored two-conflict witness does not repair"}
    return "verified", {
        "value": 2,
        "lower_bound": {"exhaustion": exhaustion},
        "upper_bound": {"deleted": sorted((first, second)),
                        "coloring": assignment_to_json_obj(partial)},
    }


def _check_H_flow_resistance(n: int, deadline: float | None):
    hb = build_H_meta(n)
    g = hb.graph
    below = find_flow(g, n - 1, deadline=deadline)
    if below is not None:
        return "refuted", {"flow": assignment_to_json_obj(below, kind="flow"),
                           "zeros": zero_links(below)}
    upper = _flow_upper_witness(g, hb.flow, n)
    if upper is None:
        return "refuted", {"statement": "stored witness flow fails validation"}
    witness = {
        "value": n,
        "lower_bound": {"exhaustion": (f"complete search found no flow with at "
                                       f"most {n - 1} zeros")},
        "upper_bound": upper,
    }
    if n == 1:
        cross = min_zeros_by_deletion(g, kmax=1, deadline=deadline)
        if cross != 1:
            return "refuted", {"statement": "deletion-route minimum disagrees",
                               "deletion_route_value": cross}
        witness["cross_check"] = {"route": "deletion characterisation",
                                  "kmax": 1, "value": cross}
    return "verified", witness


def _check_H_flow_upper(n: int, deadline: float | None):
    hb = build_H_meta(n)
    g = hb.graph
    upper = _flow_upper_witness(g, hb.flow, n)
    if upper is None:
        return "refuted", {"statement": "stored witness flow fails validation"}
    if find_flow(g, 0, deadline=deadline) is not None:
        return "refuted", {"statement": "a zero-free flow exists"}
    return "verified", {
        "upper_bound": {"value": n, **upper},
        "lower_bound": {"value": 1,
                        "exhaustion": "complete search found no zero-free flow"},
        "note": ("exact value not computed: the search below the witnessed "
                 "bound is out of exhaustive reach at this order; the claimed "
                 "value rests on the recursive structure replayed by the "
                 "composition claims"),
    }


def _cut_candidate_count(g: SemiGraph, kmax: int) -> int:
    m = _link_count(g)
    return sum(math.comb(m, j) for j in range(1, kmax + 1))


def _check_H_cyclic(n: int, deadline: float | None):
    g = build_H_meta(n).graph
    rep = cyclic_edge_connectivity_is(g, 5, deadline=deadline)
    if not rep.satisfied:
        return "refuted", {"reason": rep.reason,
                           "cut": list(rep.cut) if rep.cut else None}
    return "verified", {
        "value": 5,
        "exhaustion": (f"all {_cut_candidate_count(g, 4)} edge subsets of size "
                       f"at most 4 classified: none is a cyclic cut"),
        "five_cut": {"cut": list(rep.cut),
                     "side_orders": sorted(len(s) for s in rep.sides)},
    }


def _check_H_cyclic_composed(n: int, deadline: float | None):
    prev = build_H_meta(n - 1)
    jb = build_J_meta()
    hb = build_H_meta(n)
    if not star_hypotheses_check(prev.graph, prev.x, prev.pi,
                                 jb.graph, jb.v2, jb.e2, deadline=deadline):
        return "refuted", {"statement": "composition hypotheses fail"}
    hint = hb.vertex_levels[n - 2]
    member, cut = star_membership(hb.graph, prev.graph, prev.x, prev.pi,
                                  jb.graph, jb.v2, jb.e2,
                                  split_hint=hint, deadline=deadline)
    if not member:
        return "refuted", {"statement": "instance is not a star product member"}
    cert = classify_cut(hb.graph, hint)
    return "verified", {
        "value": 5,
        "route": "composition",
        "hypotheses": {
            "factor_distances": [prev.graph.distance(prev.x, prev.pi, to_link=True),
                                 jb.graph.distance(jb.v2, jb.e2, to_link=True)],
            "factor_connectivity": ("both factors cyclically 5-edge-connected "
                                    "by complete enumeration"),
        },
        "membership_cut": list(cut),
        "five_cut": {"cut": list(cert.cut), "cyclic": cert.cyclic},
        "note": ("lower bound inherited from the composition rule: members "
                 "assembled from factors meeting the distance and connectivity "
                 "hypotheses have no cyclic cut below 5; the hypotheses are "
                 "machine-checked here, the rule itself is not re-proved"),
    }


def _h_tasks(n: int) -> list[_Task]:
    inst = {"n": n}
    tasks = [
        _Task("H.structure", inst, _check_H_structure, (n,)),
        _Task("H.snark", inst, _check_H_snark, (n,)),
        _Task("H.resistance", inst, _check_H_resistance, (n,)),
    ]
    if n <= 2:
        tasks.append(_Task("H.flow_resistance", inst, _check_H_flow_resistance, (n,)))
        tasks.append(_Task("H.cyclic_connectivity", inst, _check_H_cyclic, (n,)))
    else:
        tasks.append(_Task("H.flow_resistance_upper", inst, _check_H_flow_upper, (n,)))
        tasks.append(_Task("H.cyclic_connectivity_composed", inst,
                           _check_H_cyclic_composed, (n,)))
    return tasks


def verify_H(n: int, budget: float | None = None) -> VerificationReport:
    """Structure, snarkness, resistance 2, flow resistance, and cyclic
    5-edge-connectivity of H_n.

    All claims are exact for n <= 2.  For larger n the flow resistance is a
    witnessed upper bound and the connectivity claim runs through the
    composition route; both witnesses say so.
    """
    return _report(_run_tasks(_h_tasks(n), budget))


# -- composition claims -------------------------------------------------------


def _check_J_structure(deadline: float | None):
    jb = build_J_meta()
    g = jb.graph
    d = g.distance(jb.v2, jb.e2, to_link=True)
    checks = {
        "order": g.num_vertices == 42,
        "cubic": g.is_cubic(),
        "simple": g.is_simple(),
        "graph": g.is_graph(),
        "connected": g.is_connected(),
        "marked_distance": d == 2,
    }
    witness = {"order": g.num_vertices, "marked_distance": d}
    if all(checks.values()):
        return "verified", witness
    witness["failed"] = sorted(k for k, ok in checks.items() if not ok)
    return "refuted", witness


def _check_comp_roundtrip(deadline: float | None):
    jb = build_J_meta()
    if not j_surgery_roundtrip(jb):
        return "refuted", {"statement": "undoing the closing surgery does not "
                                        "reproduce the junction core"}
    return "verified", {
        "statement": ("splitting the marked edge and removing the marked "
                      "vertex reproduces the junction core, labels included"),
    }


def _check_comp_hypotheses(n: int, deadline: float | None):
    hb = build_H_meta(n)
    jb = build_J_meta()
    d1 = hb.graph.distance(hb.x, hb.pi, to_link=True)
    d2 = jb.graph.distance(jb.v2, jb.e2, to_link=True)
    ok = star_hypotheses_check(hb.graph, hb.x, hb.pi,
                               jb.graph, jb.v2, jb.e2, deadline=deadline)
    witness = {
        "distances": {"first_factor": d1, "second_factor": d2},
        "required": {"first_factor": ">= 3", "second_factor": ">= 2"},
        "connectivity": ("both factors cyclically 5-edge-connected by "
                         "complete enumeration of cuts of size at most 4"),
    }
    if not ok:
        witness.pop("connectivity")
        return "refuted", witness
    return "verified", witness


def _check_comp_membership(n: int, deadline: float | None):
    hb = build_H_meta(n)
    jb = build_J_meta()
    big = build_H_meta(n + 1)
    member, cut = star_membership(big.graph, hb.graph, hb.x, hb.pi,
                                  jb.graph, jb.v2, jb.e2,
                                  split_hint=big.vertex_levels[n - 1],
                                  deadline=deadline)
    if not member:
        return "refuted", {"statement": "no five-edge split matches the factors"}
    return "verified", {
        "cut": list(cut),
        "statement": ("split verified directly: five crossing edges, each side "
                      "isomorphic to its factor's marked-vertex, marked-edge "
                      "residue"),
    }


def _composition_tasks(n: int, include_j: bool) -> list[_Task]:
    inst = {"n": n}
    tasks = []
    if include_j:
        tasks.append(_Task("J.structure", {}, _check_J_structure, ()))
        tasks.append(_Task("composition.roundtrip", {}, _check_comp_roundtrip, ()))
    tasks.append(_Task("composition.hypotheses", inst, _check_comp_hypotheses, (n,)))
    tasks.append(_Task("composition.membership", inst, _check_comp_membership, (n,)))
    return tasks


def verify_composition(n: int, budget: float | None = None) -> VerificationReport:
    """H_{n+1} as a five-edge join of H_n and J, with the joining hypotheses."""
    return _report(_run_tasks(_composition_tasks(n, include_j=(n == 1)), budget))


# -- randomized property suites -------------------------------------------------


def _tick(step: int, deadline: float | None) -> None:
    if deadline is not None and step % 256 == 0 and time.monotonic() > deadline:
        raise KernelTimeout("property suite deadline exceeded")


def _gadget_coloring_pool() -> list[tuple[str, SemiGraph, list[Coloring]]]:
    pool = []
    for name in ("M", "N", "Z"):
        g = _gadget(name)
        reps: list[Coloring] = []
        enumerate_colorings(g, reps.append)
        pool.append((name, g, reps))
    return pool


def _random_coloring(rng: random.Random, pool) -> tuple[str, SemiGraph, Coloring]:
    name, g, reps = pool[rng.randrange(len(pool))]
    rep = reps[rng.randrange(len(reps))]
    perm = _PERMS[rng.randrange(len(_PERMS))]
    return name, g, {lid: perm[val] for lid, val in rep.items()}


def _random_subset(rng: random.Random, g: SemiGraph) -> list[VertexId]:
    return [v for v in sorted(g.vertices) if rng.random() < 0.5]


def _check_property_parity(trials: int, seed: int, deadline: float | None):
    rng = random.Random(seed)
    pool = _gadget_coloring_pool()
    for step in range(trials):
        _tick(step, deadline)
        name, g, col = _random_coloring(rng, pool)
        X = _random_subset(rng, g)
        if not parity_check(g, col, X):
            return "refuted", {"gadget": name, "X": X,
                               "coloring": assignment_to_json_obj(col)}
    return "verified", {
        "trials": trials, "seed": seed, "failures": 0,
        "statement": ("each color count on the boundary of a random vertex "
                      "set matches the boundary size mod 2, over random "
                      "proper gadget colorings"),
    }


def _check_property_cut_sum(trials: int, seed: int, deadline: float | None):
    rng = random.Random(seed)
    graphs = [("petersen", petersen()), ("M", build_M()), ("N", build_N()),
              ("Z", build_Z()), ("H_1", build_H_meta(1).graph)]
    for step in range(trials):
        _tick(step, deadline)
        name, g = graphs[rng.randrange(len(graphs))]
        phi = random_flow(g, rng)
        X = _random_subset(rng, g)
        if not cut_sum_check(g, phi, X):
            return "refuted", {"graph": name, "X": X,
                               "flow": assignment_to_json_obj(phi, kind="flow")}
    return "verified", {
        "trials": trials, "seed": seed, "failures": 0,
        "statement": ("the boundary of a random vertex set xors to zero "
                      "under a random flow"),
    }


def _check_property_kempe(trials: int, seed: int, deadline: float | None):
    rng = random.Random(seed)
    pool = _gadget_coloring_pool()
    for step in range(trials):
        _tick(step, deadline)
        name, g, col = _random_coloring(rng, pool)
        lids = sorted(col)
        start = lids[rng.randrange(len(lids))]
        have = col[start]
        other = rng.choice([c for c in (1, 2, 3) if c != have])
        pair = (have, other)
        switched = kempe_switch(g, col, start, pair)
        back = kempe_switch(g, switched, start, pair)
        if not is_proper(g, switched) or back != col:
            return "refuted", {"gadget": name, "start": start, "pair": list(pair),
                               "coloring": assignment_to_json_obj(col)}
    return "verified", {
        "trials": trials, "seed": seed, "failures": 0,
        "statement": ("switching a random two-color chain preserves properness "
                      "and switching it again restores the coloring"),
    }


def _check_property_leaf_count(max_order: int, deadline: float | None):
    trees = all_13_trees(max_order)
    for tree in trees:
        if not leaf_count_check(tree):
            return "refuted", {"order": tree.num_vertices,
                               "leaves": sum(1 for v in tree.vertices
                                             if tree.degree(v) == 1)}
    by_order = Counter(t.num_vertices for t in trees)
    return "verified", {
        "classes_by_order": {str(k): by_order[k] for k in sorted(by_order)},
        "exhaustion": (f"all {len(trees)} isomorphism classes of trees with "
                       f"degrees in {{1, 3}} and at most {max_order} vertices"),
        "statement": "every such tree has exactly |V|/2 + 1 leaves",
    }


def _property_tasks(seed: int) -> list[_Task]:
    return [
        _Task("property.parity", {"trials": 10_000, "seed": seed},
              _check_property_parity, (10_000, seed)),
        _Task("property.cut_sum", {"trials": 10_000, "seed": seed},
              _check_property_cut_sum, (10_000, seed)),
        _Task("property.kempe_involution", {"trials": 1_000, "seed": seed},
              _check_property_kempe, (1_000, seed)),
        _Task("property.leaf_count", {"max_order": 12},
              _check_property_leaf_count, (12,)),
    ]


def verify_properties(seed: int = 0, budget: float | None = None) -> VerificationReport:
    """Randomized identity suites (parity, cut sum, chain switching) plus the
    exhaustive leaf-count check on small {1, 3}-degree trees."""
    return _report(_run_tasks(_property_tasks(seed), budget))


# -- full run ------------------------------------------------------------------


def verify_all(max_n: int = 4, budget_seconds: float | None = 600.0,
               jobs: int = 1, seed: int = 0) -> VerificationReport:
    """Every claim for the gadgets, Y_1..Y_max_n, H_1..H_max_n, the
    composition chain, and the property suites, under one shared wall-clock
    budget."""
    tasks = _gadget_tasks()
    for i in range(1, max_n + 1):
        tasks.extend(_y_tasks(i))
    for n in range(1, max_n + 1):
        tasks.extend(_h_tasks(n))
    for n in range(1, max_n):
        tasks.extend(_composition_tasks(n, include_j=(n == 1)))
    tasks.extend(_property_tasks(seed))
    return _report(_run_tasks(tasks, budget_seconds, jobs))
