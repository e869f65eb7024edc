"""Run a dataset's ``expected`` block and collect a deterministic report."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator, Sequence

from . import combin
from .dataset import LatticeDataset
from .lattice import Coset, enumerate_cosets, pm_classes
from .product import (
    reflective_divisor,
    table1_check,
    weight_accounting,
    weight_from_constant,
)
from .reflect import (
    all_reflective_classes,
    apply_isometry,
    classify_reflective,
    induced_reflection,
)

SCHEMA = "1"


def jsonable(x: Any) -> Any:
    """Rationals become strings, cosets coordinate lists, tuples lists."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Coset):
        return [str(c) for c in x.coords]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


@dataclass
class Check:
    check_id: str
    status: str  # pass | fail | info
    expected: Any = None
    actual: Any = None
    detail: str = ""
    runtime: float = 0.0

    def as_dict(self, runtime: bool = True) -> dict:
        d = {
            "check_id": self.check_id,
            "status": self.status,
            "expected": jsonable(self.expected),
            "actual": jsonable(self.actual),
        }
        if self.detail:
            d["detail"] = self.detail
        if runtime:
            d["runtime"] = round(self.runtime, 4)
        return d


@dataclass
class Report:
    subject: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def as_dict(self, runtime: bool = True) -> dict:
        return {
            "schema": SCHEMA,
            "subject": self.subject,
            "status": "pass" if self.ok else "fail",
            "checks": [c.as_dict(runtime) for c in self.checks],
        }

    def to_json(self, runtime: bool = True) -> str:
        return json.dumps(self.as_dict(runtime), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            if c.status == "info":
                line = f"INFO  {c.check_id}: {_short(c.actual)}"
            else:
                line = f"{c.status.upper():4}  {c.check_id}: expected {_short(c.expected)}, got {_short(c.actual)}"
            if c.detail:
                line += f"  [{c.detail}]"
            lines.append(line)
        n_fail = len(self.failures)
        lines.append(f"{self.subject}: {'PASS' if self.ok else 'FAIL'} ({len(self.checks) - n_fail}/{len(self.checks)} ok)")
        return "\n".join(lines)


def _short(x: Any, limit: int = 80) -> str:
    s = json.dumps(jsonable(x))
    return s if len(s) <= limit else s[: limit - 3] + "..."


class _Recorder:
    def __init__(self, report: Report):
        self.report = report

    @contextmanager
    def timed(self) -> Iterator[dict]:
        box: dict = {}
        t0 = time.perf_counter()
        yield box
        box["runtime"] = time.perf_counter() - t0

    def eq(self, cid: str, expected, actual, detail: str = "", runtime: float = 0.0) -> bool:
        ok = expected == actual
        self.report.checks.append(Check(cid, "pass" if ok else "fail", expected, actual, detail, runtime))
        return ok

    def info(self, cid: str, actual, detail: str = "", runtime: float = 0.0) -> None:
        self.report.checks.append(Check(cid, "info", None, actual, detail, runtime))


# --- individual blocks -----------------------------------------------------


def _check_discriminant(ds: LatticeDataset, exp: dict, rec: _Recorder) -> None:
    g = ds.group
    if "invariant_factors" in exp:
        rec.eq("discriminant.invariant_factors", list(exp["invariant_factors"]), list(g.invariant_factors))
    if "order" in exp:
        rec.eq("discriminant.order", exp["order"], g.order)
    rec.eq("discriminant.order_equals_det", abs(ds.lattice.det), g.order)
    if "signature" in exp:
        rec.eq("lattice.signature", list(exp["signature"]), list(ds.lattice.signature))


def _check_candidates(ds: LatticeDataset, rec: _Recorder) -> None:
    for pc in ds.candidates:
        meta = ds.meta[pc.label]
        div = reflective_divisor(pc)
        if meta.divisor_d is not None:
            rec.eq(
                f"candidate.{pc.label}.divisor_d",
                sorted(meta.divisor_d),
                sorted(rc.d for rc in div.classes),
                "reflective classes of the divisor; cancelled: "
                + (", ".join(f"{v.text()}@{t}" for v, t, _ in div.cancelled) or "none"),
            )
        if pc.principal_part.constant is not None and pc.weight is not None:
            rec.eq(
                f"candidate.{pc.label}.weight_from_constant",
                pc.weight,
                weight_from_constant(pc.principal_part.constant),
            )


def _selected(ds: LatticeDataset, block: dict) -> list[Coset]:
    cos = enumerate_cosets(ds.group, block.get("order"), block.get("norm"))
    iso = block.get("invariant_under")
    if iso:
        p = ds.isometries[iso]
        cos = [u for u in cos if apply_isometry(p, u) == u]
    return cos


def _candidate_cosets(ds: LatticeDataset, labels: list[str], block: dict) -> set[Coset]:
    order = block.get("order")
    norm = Fraction(block["norm"]) if "norm" in block else None
    out = set()
    for lab in labels:
        for v in ds.candidate(lab).cosets:
            if (order is None or v.order == order) and (norm is None or v.norm == norm):
                out.add(v)
    return out


def _check_coset_counts(ds: LatticeDataset, block: dict, rec: _Recorder) -> None:
    cid = f"cosets.{block['id']}"
    with rec.timed() as tm:
        cos = _selected(ds, block)
        units = pm_classes(cos) if block.get("pm") else [(u,) for u in cos]
    what = "+-classes" if block.get("pm") else "cosets"
    listing = "; ".join("{" + ", ".join(u.text() for u in cls) + "}" for cls in units)
    expected = block["count"]
    detail = f"{len(units)} {what}"
    if len(units) != expected:
        detail += f"; all found: {listing}"
    rec.eq(cid + ".count", expected, len(units), detail, tm["runtime"])

    if "match_labels" in block:
        want = _candidate_cosets(ds, block["match_labels"], block)
        have = set(cos)
        surplus = sorted((u for u in have - want), key=lambda u: u.coords)
        missing = sorted((u for u in want - have), key=lambda u: u.coords)
        rec.eq(
            cid + ".match_candidates",
            {"surplus": [], "missing": []},
            {"surplus": surplus, "missing": missing},
            f"{len(want)} candidate cosets vs {len(have)} enumerated",
        )
    if "contains_labels" in block:
        want = _candidate_cosets(ds, block["contains_labels"], block)
        absent = sorted((u for u in want - set(cos)), key=lambda u: u.coords)
        rec.eq(cid + ".contains_candidates", {"absent": [], "found_any": True},
               {"absent": absent, "found_any": bool(want)}, f"{len(want)} candidate cosets")
    if "reflective_norm" in block:
        t = Fraction(block["reflective_norm"])
        flags = sorted({classify_reflective(u, t) is not None for u in cos})
        rec.eq(cid + ".reflective", [bool(block["reflective"])], flags, f"at exact norm {t}")
    if block.get("discriminant_kernel"):
        t = Fraction(block.get("reflective_norm", block["norm"]))
        trivial = sorted({induced_reflection(classify_reflective(u, t)).is_identity for u in cos})
        rec.eq(cid + ".acts_trivially_on_D", [True], trivial)
    if "swap_pairs" in block:
        sp = block["swap_pairs"]
        p = ds.isometries[sp["isometry"]]
        pairs, fixed, escaped = set(), 0, 0
        pool = set(cos)
        for u in cos:
            w = apply_isometry(p, u)
            if w == u:
                fixed += 1
            elif w not in pool:
                escaped += 1
            else:
                pairs.add(frozenset((u, w)))
        rec.eq(cid + ".swap_pairs", {"pairs": sp["count"], "fixed": 0, "escaped": 0},
               {"pairs": len(pairs), "fixed": fixed, "escaped": escaped})
        if "match_labels" in block:
            bad = []
            for lab in block["match_labels"]:
                cs = ds.candidate(lab).cosets
                if len(cs) != 2 or apply_isometry(p, cs[0]) != cs[1]:
                    bad.append(lab)
            rec.eq(cid + ".candidates_are_swap_pairs", [], bad)


def _check_isometry_images(ds: LatticeDataset, items: list, rec: _Recorder) -> None:
    for k, it in enumerate(items):
        p = ds.isometries[it["isometry"]]
        u = ds.group.coset([Fraction(x) for x in it["coset"]])
        img = ds.group.coset([Fraction(x) for x in it["image"]])
        rec.eq(f"isometry.{it['isometry']}[{k}]", img, apply_isometry(p, u), f"image of {u.text()}")


def reflection_permutations(ds: LatticeDataset) -> list[tuple[int, ...]]:
    return [induced_reflection(rc).table for rc in all_reflective_classes(ds.group)]


def _check_orbit_split(ds: LatticeDataset, block: dict, rec: _Recorder) -> None:
    with rec.timed() as tm:
        grp = combin.PermutationGroup(reflection_permutations(ds), ds.group.order)
        pts = [ds.group.index(u) for u in _selected(ds, block)]
        sel = set(pts)
        sizes = sorted(len(sel.intersection(o)) for o in grp.orbits(pts))
    rec.eq(f"orbits.{block['id']}", sorted(block["sizes"]), sizes,
           f"group generated by all {len(all_reflective_classes(ds.group))} reflective classes, order {grp.order}",
           tm["runtime"])


def _check_reflection_group(ds: LatticeDataset, block: dict, rec: _Recorder) -> None:
    with rec.timed() as tm:
        perms = []
        for lab in block["labels"]:
            for rc in reflective_divisor(ds.candidate(lab)).classes:
                perms.append(induced_reflection(rc).table)
        order = combin.PermutationGroup(perms, ds.group.order).order
    if block.get("order") is None:
        rec.info(f"reflection_group.{block['id']}.order", order, "no recorded value", tm["runtime"])
    else:
        rec.eq(f"reflection_group.{block['id']}.order", block["order"], order, "regression value", tm["runtime"])


def _check_weights(ds: LatticeDataset, block: dict, rec: _Recorder) -> None:
    weights = []
    for k, part in enumerate(block["parts"]):
        w = Fraction(part["weight"])
        if "from_tag" in part:
            tagged = ds.tagged(part["from_tag"])
            rec.eq(f"weights.{block['id']}.part{k}.count", part["count"], len(tagged), f"candidates tagged {part['from_tag']}")
            rec.eq(f"weights.{block['id']}.part{k}.weights", [w], sorted({c.weight for c in tagged}))
            weights.extend(c.weight for c in tagged)
        elif "from_constant" in part:
            pc = ds.candidate(part["from_constant"])
            got = weight_from_constant(pc.principal_part.constant)
            rec.eq(f"weights.{block['id']}.part{k}.from_constant", w, got, f"constant {pc.principal_part.constant}")
            weights.append(got)
        else:
            weights.extend([w] * part["count"])
    report = weight_accounting(weights, Fraction(block["total"]))
    rec.eq(f"weights.{block['id']}.total", report.expected, report.total)


def check_graph(ds: LatticeDataset, rec: _Recorder, jobs: int = 1) -> None:
    exp = ds.expected.get("graph")
    if not exp:
        return
    cands = ds.tagged(ds.graph_tag)
    with rec.timed() as tm:
        if exp.get("symmetric"):
            asym = combin.asymmetric_pairs(cands)
        g = combin.build_graph(cands, jobs=jobs)
    rec.info("graph.size", {"vertices": g.n, "edges": len(g.edges())}, "", tm["runtime"])
    if exp.get("symmetric"):
        rec.eq("graph.compatibility_symmetric", [], [(cands[i].label, cands[j].label) for i, j in asym])
    if "regular" in exp:
        rec.eq("graph.regular_degree", exp["regular"], g.regular_degree())
    with rec.timed() as tm:
        cl = combin.maximal_cliques(g)
    if "cliques" in exp:
        rec.eq("graph.clique_count", len(exp["cliques"]), len(cl), "", tm["runtime"])
        want = sorted(tuple(sorted(i - 1 for i in c)) for c in exp["cliques"])
        rec.eq("graph.cliques_match_list", {"surplus": [], "missing": []}, {
            "surplus": [[i + 1 for i in c] for c in sorted(set(cl) - set(want))],
            "missing": [[i + 1 for i in c] for c in sorted(set(want) - set(cl))],
        })
    if "clique_size" in exp:
        rec.eq("graph.clique_sizes", [exp["clique_size"]], sorted({len(c) for c in cl}))
    if "contains_clique" in exp:
        q = tuple(sorted(i - 1 for i in exp["contains_clique"]))
        rec.eq("graph.contains_clique", True, q in set(cl), str(exp["contains_clique"]))
    stats = combin.clique_stats(cl, g.n)
    if "per_vertex" in exp:
        rec.eq("graph.per_vertex_membership", {exp["per_vertex"]: g.n}, stats.vertex_histogram)
    if "pair_histogram" in exp:
        want = {int(k): v for k, v in exp["pair_histogram"].items()}
        rec.eq("graph.pair_histogram", want, stats.pair_histogram)
    classes = combin.exceptional_classes(stats, g.n)
    if "exceptional_classes" in exp:
        want = sorted(tuple(sorted(i - 1 for i in c)) for c in exp["exceptional_classes"])
        rec.eq("graph.exceptional_classes", [[i + 1 for i in c] for c in want], [[i + 1 for i in c] for c in classes])
    if "contraction_srg" in exp:
        q = combin.contract(g, classes)
        got = combin.srg_params(q)
        rec.eq("graph.contraction_srg", list(exp["contraction_srg"]), list(got) if got else None)
    if "srg" in exp:
        got = combin.srg_params(g)
        want = exp["srg"]
        rec.eq("graph.srg", list(want) if want else None, list(got) if got else None)
    if "automorphism_order" in exp:
        with rec.timed() as tm:
            res = combin.automorphism_group(g)
        rec.eq("graph.automorphism_order", exp["automorphism_order"], res.order,
               f"orbit lengths {list(res.orbit_lengths)}, {res.nodes} search nodes", tm["runtime"])


# --- drivers ----------------------------------------------------------------


SECTIONS = ("discriminant", "candidates", "cosets", "isometries", "orbits", "reflection_group", "weights", "graph")


def verify_dataset(ds: LatticeDataset, jobs: int = 1, sections: Sequence[str] = SECTIONS) -> Report:
    """Run the dataset's expected block; ``sections`` restricts which parts run."""
    unknown = set(sections) - set(SECTIONS)
    if unknown:
        raise ValueError(f"unknown sections {sorted(unknown)}")
    report = Report(ds.name)
    rec = _Recorder(report)
    exp = ds.expected
    rec.info("dataset", {"lattice": ds.lattice_name, "candidates": len(ds.candidates)}, "all candidates validated")
    if "discriminant" in sections and "discriminant" in exp:
        _check_discriminant(ds, exp["discriminant"], rec)
    if "candidates" in sections:
        _check_candidates(ds, rec)
    if "cosets" in sections:
        for block in exp.get("coset_counts", []):
            _check_coset_counts(ds, block, rec)
    if "isometries" in sections and "isometry_images" in exp:
        _check_isometry_images(ds, exp["isometry_images"], rec)
    if "orbits" in sections and "orbit_split" in exp:
        _check_orbit_split(ds, exp["orbit_split"], rec)
    if "reflection_group" in sections and "reflection_group" in exp:
        _check_reflection_group(ds, exp["reflection_group"], rec)
    if "weights" in sections:
        for block in exp.get("weights", []):
            _check_weights(ds, block, rec)
    if "graph" in sections:
        check_graph(ds, rec, jobs)
    return report


def starsets_report(ds: LatticeDataset, jobs: int = 1) -> Report:
    report = Report(f"{ds.name} (star sets)")
    check_graph(ds, _Recorder(report), jobs)
    return report


def table1_report(table) -> Report:
    report = Report("table1")
    rec = _Recorder(report)
    results = [table1_check(r) for r in table.rows]
    passing = sum(res.ok for res in results)
    if table.expected_rows is not None:
        rec.eq("table1.rows", table.expected_rows, len(table.rows), f"{passing}/{len(results)} rows pass")
    for r, res in zip(table.rows, results):
        rec.eq(f"table1.{r.group}.jacobian_weight", r.kJ, res.jacobian_weight)
        rec.eq(f"table1.{r.group}.decomposition_sum", 2 * r.kJ, res.decomposition_total)
        if len(set(r.generator_weights)) == 1:
            k = r.generator_weights[0]
            rec.eq(f"table1.{r.group}.uniform_weights", 2 * (r.n + (r.n + 1) * k), res.decomposition_total)
    return report
