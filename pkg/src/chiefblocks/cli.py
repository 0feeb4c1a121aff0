"""Batch analyzer: parse a group spec, run the analyses, emit text or DOT.

Spec files are JSON trees; see ``parse_spec``.  Reports are deterministic
key/value text with a schema version, suitable for diffing under version
control.  Exit codes: 0 success, 2 malformed input, 3 cap exceeded, 4
internal assertion failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import zlib
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import named as _named
from .blocks import (
    chief_blocks,
    lowermost_representative,
    minimal_cover,
    uppermost_representative,
)
from .errors import (
    ActionNotAutomorphism,
    ActionNotHomomorphism,
    BadAction,
    CapError,
    ChiefblocksError,
    InternalCheckError,
    InvalidPermutation,
    NotNormal,
    ParseError,
    SectionMissing,
    SpecError,
)
from .extensions import extension_poset_check
from .factors import association_graph, is_abelian_factor
from .group import (
    DEFAULT_ELEMENT_CAP,
    FiniteGroup,
    Subgroup,
    center,
    is_normal_in,
    is_perfect,
    subgroup_generated,
    verify_group_axioms,
)
from .lattice import DEFAULT_NODE_CAP, normal_subgroups
from .products import classify_factorization, diagonal_map
from .semisimple import component_report

SCHEMA_VERSION = 1
TOOL_VERSION = "chiefblocks 0.1.0"

_KINDS = ("perm", "direct", "semidirect", "quotient", "central_product",
          "named")


@dataclass(frozen=True)
class GroupSpec:
    """Validated tree-structured group description."""

    kind: str
    name: Optional[str] = None
    points: Optional[int] = None
    generators: Optional[tuple] = None
    left: Optional["GroupSpec"] = None
    right: Optional["GroupSpec"] = None
    identify: Optional[tuple] = None
    base: Optional["GroupSpec"] = None
    top: Optional["GroupSpec"] = None
    action: Optional[tuple] = None
    group: Optional["GroupSpec"] = None
    kernel: Optional[tuple] = None


def parse_spec(text: str) -> GroupSpec:
    """Parse JSON spec text into a validated GroupSpec tree."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", e.lineno, e.colno) from e
    return _validate_spec(raw, "spec")


def _freeze(x):
    if isinstance(x, list):
        return tuple(_freeze(v) for v in x)
    return x


def _validate_spec(raw, path: str) -> GroupSpec:
    if not isinstance(raw, dict):
        raise ParseError(f"{path}: expected an object")
    kind = raw.get("kind")
    if kind not in _KINDS:
        raise ParseError(f"{path}: kind must be one of {_KINDS}, got {kind!r}")
    keys = set(raw) - {"kind"}

    def need(*names):
        missing = [n for n in names if n not in raw]
        if missing:
            raise ParseError(f"{path}: missing fields {missing} for {kind}")
        extra = keys - set(names)
        if extra:
            raise ParseError(f"{path}: unexpected fields {sorted(extra)}")

    if kind == "named":
        need("name")
        if not isinstance(raw["name"], str):
            raise ParseError(f"{path}.name: expected a string")
        return GroupSpec(kind="named", name=raw["name"])
    if kind == "perm":
        need("points", "generators")
        if not isinstance(raw["points"], int) or raw["points"] < 1:
            raise ParseError(f"{path}.points: expected a positive integer")
        gens = raw["generators"]
        if not isinstance(gens, list):
            raise ParseError(f"{path}.generators: expected a list of cycle lists")
        return GroupSpec(kind="perm", points=raw["points"],
                         generators=_freeze(gens))
    if kind == "direct":
        need("left", "right")
        return GroupSpec(kind="direct",
                         left=_validate_spec(raw["left"], path + ".left"),
                         right=_validate_spec(raw["right"], path + ".right"))
    if kind == "central_product":
        need("left", "right", "identify")
        return GroupSpec(kind="central_product",
                         left=_validate_spec(raw["left"], path + ".left"),
                         right=_validate_spec(raw["right"], path + ".right"),
                         identify=_freeze(raw["identify"]))
    if kind == "semidirect":
        need("base", "top", "action")
        if not isinstance(raw["action"], list):
            raise BadAction(f"{path}.action: expected a list of tables")
        return GroupSpec(kind="semidirect",
                         base=_validate_spec(raw["base"], path + ".base"),
                         top=_validate_spec(raw["top"], path + ".top"),
                         action=_freeze(raw["action"]))
    need("group", "kernel")
    return GroupSpec(kind="quotient",
                     group=_validate_spec(raw["group"], path + ".group"),
                     kernel=_freeze(raw["kernel"]))


def render_spec(spec: GroupSpec) -> str:
    """Canonical JSON text; parse_spec(render_spec(s)) == s."""
    return json.dumps(_spec_dict(spec), sort_keys=True)


def _spec_dict(spec: GroupSpec) -> dict:
    out = {"kind": spec.kind}
    if spec.kind == "named":
        out["name"] = spec.name
    elif spec.kind == "perm":
        out["points"] = spec.points
        out["generators"] = _thaw(spec.generators)
    elif spec.kind == "direct":
        out["left"] = _spec_dict(spec.left)
        out["right"] = _spec_dict(spec.right)
    elif spec.kind == "central_product":
        out["left"] = _spec_dict(spec.left)
        out["right"] = _spec_dict(spec.right)
        out["identify"] = _thaw(spec.identify)
    elif spec.kind == "semidirect":
        out["base"] = _spec_dict(spec.base)
        out["top"] = _spec_dict(spec.top)
        out["action"] = _thaw(spec.action)
    else:
        out["group"] = _spec_dict(spec.group)
        out["kernel"] = _thaw(spec.kernel)
    return out


def _thaw(x):
    if isinstance(x, tuple):
        return [_thaw(v) for v in x]
    return x


def resolve_element(g: FiniteGroup, item, path: str = "element") -> int:
    """An element id (int) or a word in group generators (list of indices)."""
    if isinstance(item, int):
        if not 0 <= item < g.order:
            raise ParseError(f"{path}: element id {item} out of range")
        return item
    if isinstance(item, (list, tuple)):
        out = 0
        for i in item:
            if not isinstance(i, int) or not 0 <= i < len(g.generators):
                raise ParseError(
                    f"{path}: generator index {i!r} out of range")
            out = g.mul(out, g.generators[i])
        return out
    raise ParseError(f"{path}: expected an id or a generator-index word")


def resolve_subgroup(g: FiniteGroup, items, path: str = "subgroup") -> Subgroup:
    gens = [resolve_element(g, it, path) for it in items]
    return subgroup_generated(g, gens)


def build_group(spec: GroupSpec, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    """Materialize a GroupSpec."""
    from .group import direct_product, group_from_permutations, quotient, \
        semidirect_product
    from .perm import perm_from_cycles

    if spec.kind == "named":
        return _named.build_named(spec.name, cap)
    if spec.kind == "perm":
        try:
            perms = [perm_from_cycles(_thaw(cycles), spec.points)
                     for cycles in spec.generators]
            return group_from_permutations(perms, spec.points, cap)
        except InvalidPermutation as e:
            raise ParseError(f"generators: {e}") from e
    if spec.kind == "direct":
        return direct_product(build_group(spec.left, cap),
                              build_group(spec.right, cap), cap)
    if spec.kind == "central_product":
        left = build_group(spec.left, cap)
        right = build_group(spec.right, cap)
        pairs = []
        for pair in spec.identify:
            if not isinstance(pair, tuple) or len(pair) != 2:
                raise ParseError("identify: expected [left, right] pairs")
            pairs.append((resolve_element(left, _thaw(pair[0]), "identify"),
                          resolve_element(right, _thaw(pair[1]), "identify")))
        return _named.central_product(left, right, pairs, cap).group
    if spec.kind == "semidirect":
        base = build_group(spec.base, cap)
        top = build_group(spec.top, cap)
        tables = _extend_action_tables(base, top, spec.action)
        try:
            return semidirect_product(base, top, tables, cap)
        except (ActionNotAutomorphism, ActionNotHomomorphism) as e:
            raise BadAction(str(e)) from e
    grp = build_group(spec.group, cap)
    kernel = resolve_subgroup(grp, _thaw(spec.kernel), "kernel")
    try:
        q, _ = quotient(grp, kernel)
    except NotNormal as e:
        raise SpecError(f"kernel is not normal: {e}") from e
    return q


def _extend_action_tables(base: FiniteGroup, top: FiniteGroup,
                          gen_tables) -> list[list[int]]:
    """Extend per-generator automorphism tables to all of the top group."""
    gens = top.generators
    if len(gen_tables) != len(gens):
        raise BadAction(
            f"action needs {len(gens)} tables (one per top generator), "
            f"got {len(gen_tables)}")
    for t in gen_tables:
        if len(t) != base.order:
            raise BadAction("action table length differs from base order")
    tables: dict[int, list[int]] = {0: list(range(base.order))}
    frontier = [0]
    while frontier:
        nxt = []
        for h in frontier:
            th = tables[h]
            for gidx, gen in enumerate(gens):
                h2 = top.mul(h, gen)
                tg = gen_tables[gidx]
                t2 = [th[tg[x]] for x in range(base.order)]
                if h2 in tables:
                    if tables[h2] != t2:
                        raise BadAction(
                            "generator tables do not define a homomorphism")
                else:
                    tables[h2] = t2
                    nxt.append(h2)
        frontier = nxt
    return [tables[h] for h in top.elements()]


# ---------------------------------------------------------------------------
# analysis report
# ---------------------------------------------------------------------------

def _fingerprint(members) -> str:
    ids = ",".join(str(i) for i in sorted(members)).encode()
    return f"{zlib.crc32(ids):08x}"


@dataclass
class AnalysisReport:
    lines: list[str] = field(default_factory=list)
    graphs: dict = field(default_factory=dict)

    def render(self) -> str:
        return "\n".join(self.lines) + "\n"


@dataclass
class AnalyzeOptions:
    components: bool = False
    blocks: bool = True
    factorization_parts: Optional[list] = None
    extend_normal: Optional[list] = None
    element_cap: int = DEFAULT_ELEMENT_CAP
    node_cap: int = DEFAULT_NODE_CAP
    seed: int = 0


def analyze(spec: GroupSpec, options: Optional[AnalyzeOptions] = None
            ) -> AnalysisReport:
    """Run the full analysis pipeline and produce a deterministic report.

    The constructed group is checked against the group laws first; identity
    and inverses exhaustively, associativity exhaustively at small orders and
    on seeded random triples above that.
    """
    opts = options or AnalyzeOptions()
    g = build_group(spec, opts.element_cap)
    verify_group_axioms(g, random.Random(opts.seed))
    rep = AnalysisReport()
    out = rep.lines
    out.append(f"schema: {SCHEMA_VERSION}")
    out.append(f"tool: {TOOL_VERSION}")
    out.append("group:")
    out.append(f"  name: {g.name}")
    out.append(f"  order: {g.order}")
    out.append(f"  center_order: {center(g).order}")
    out.append(f"  abelian: {g.is_abelian}")
    out.append(f"  perfect: {is_perfect(g)}")
    out.append(f"  provenance: {g.provenance}")

    lat = normal_subgroups(g, opts.node_cap)
    out.append("normal_lattice:")
    out.append(f"  node_count: {len(lat)}")
    for i, node in enumerate(lat.nodes):
        out.append(f"  n{i}: order={node.order} fp={_fingerprint(node.members)}")
    edges = lat.covers()
    out.append(f"  hasse_edge_count: {len(edges)}")
    out.append("  hasse_edges: " + " ".join(f"n{i}<n{j}" for i, j in edges))
    rep.graphs["normal-lattice"] = {
        "nodes": [f"order={n.order}" for n in lat.nodes],
        "edges": edges,
    }

    verts, assoc_edges = association_graph(g, lat)
    out.append("chief_factors:")
    out.append(f"  count: {len(verts)}")
    labels = []
    for i, f in enumerate(verts):
        ab = is_abelian_factor(f)
        ki, li = lat.index_of(f.k), lat.index_of(f.l)
        labels.append(f"{f.k.order}/{f.l.order} (n{ki}/n{li})")
        out.append(f"  f{i}: K=n{ki} L=n{li} order={f.order} abelian={ab}")
    out.append("association_graph:")
    out.append(f"  vertex_count: {len(verts)}")
    out.append(f"  edge_count: {len(assoc_edges)}")
    out.append("  edges: " + " ".join(f"f{i}--f{j}" for i, j in assoc_edges))
    rep.graphs["association-graph"] = {"nodes": labels, "edges": assoc_edges}

    if opts.blocks:
        bp = chief_blocks(g, lat)
        out.append("blocks:")
        out.append(f"  count: {len(bp)}")
        for b in bp.blocks:
            cm = b.centralizer
            mc = minimal_cover(g, b, lat)
            upper = uppermost_representative(g, b, lat)
            lower = lowermost_representative(g, b, lat)
            out.append(f"  b{b.block_id}:")
            out.append(f"    centralizer: order={cm.order}"
                       f" fp={_fingerprint(cm.members)}")
            out.append(f"    representatives: {len(b.representatives)}")
            out.append("    minimally_covered: True")
            out.append(f"    minimal_cover: order={mc.order}"
                       f" fp={_fingerprint(mc.members)}")
            out.append(f"    uppermost: {upper.k.order}/{upper.l.order}")
            out.append(f"    lowermost: {lower.k.order}/{lower.l.order}")
        rels = set(bp.relation_pairs())
        out.append("  order_relations: "
                   + (" ".join(f"b{i}<b{j}" for i, j in sorted(rels))
                      or "none"))
        ids = [b.block_id for b in bp.blocks]
        hasse = sorted((i, j) for i, j in rels
                       if not any((i, k) in rels and (k, j) in rels
                                  for k in ids))
        rep.graphs["block-poset"] = {
            "nodes": [f"b{b.block_id} C-order={b.centralizer.order}"
                      for b in bp.blocks],
            "edges": hasse,
        }

    if opts.components:
        cr = component_report(g)
        out.append("components:")
        out.append(f"  count: {len(cr.components)}")
        for i, c in enumerate(cr.components):
            out.append(f"  m{i}: order={c.order} fp={_fingerprint(c.members)}"
                       f" normal={is_normal_in(c, g.whole())}")
        out.append(f"  layer_order: {cr.layer.order}")
        out.append(f"  semisimple_type: {cr.type}")

    if opts.factorization_parts is not None:
        parts = [resolve_subgroup(g, p, "factorization part")
                 for p in opts.factorization_parts]
        for p in parts:
            if not is_normal_in(p, g.whole()):
                raise SpecError("factorization parts must be normal")
            p.is_normal = True
        fact = classify_factorization(g, parts)
        out.append("factorization:")
        out.append("  part_orders: "
                   + " ".join(str(p.order) for p in parts))
        out.append(f"  kind: {fact.kind}")
        if fact.kind in ("generalized-central", "quasi-direct") \
                and len(parts) >= 2:
            diag = diagonal_map(g, parts, opts.element_cap)
            out.append(f"  diagonal_kernel_order: {diag.kernel.order}")
            out.append(f"  diagonal_injective: {diag.injective}")

    if opts.extend_normal is not None:
        h = resolve_subgroup(g, opts.extend_normal, "extend-normal")
        if not is_normal_in(h, g.whole()):
            raise SpecError("--extend-normal subgroup must be normal")
        h.is_normal = True
        check = extension_poset_check(g, h)
        st = check.structure
        out.append("extension:")
        out.append(f"  subgroup_order: {h.order}")
        out.append(f"  subgroup_blocks: {len(st.blocks_h)}")
        for a in st.blocks_h.blocks:
            ext = check.extensions[a.block_id]
            out.append(f"  h_block_{a.block_id}: extends_to=b{ext.block_id}")
        for i, (cls, kind) in enumerate(st.classes):
            ids = ",".join(str(x) for x in sorted(cls))
            out.append(f"  class_{i}: blocks=[{ids}] kind={kind}")
        out.append(f"  poset_isomorphism_verified: {check.verified}")

    return rep


def emit_dot(report: AnalysisReport, which: str) -> str:
    """Render one of the report's graphs as DOT text.

    The association graph is undirected; posets and lattices are emitted as
    directed Hasse diagrams.
    """
    if which not in report.graphs:
        raise SectionMissing(f"report has no section {which!r}")
    data = report.graphs[which]
    undirected = which == "association-graph"
    kind = "graph" if undirected else "digraph"
    arrow = "--" if undirected else "->"
    lines = [f'{kind} "{which}" {{']
    for i, label in enumerate(data["nodes"]):
        lines.append(f'  v{i} [label="{label}"];')
    for i, j in data["edges"]:
        lines.append(f"  v{i} {arrow} v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="chiefblocks",
        description="Finite-group chief factor and block analyzer")
    sub = p.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", help="analyze a group spec")
    a.add_argument("--spec", required=True, help="path to a JSON spec file")
    a.add_argument("--blocks", action="store_true",
                   help="include the chief block section (on by default)")
    a.add_argument("--components", action="store_true",
                   help="include components and semisimple verdicts")
    a.add_argument("--factorization",
                   help="JSON file with {'parts': [[gen words/ids], ...]}")
    a.add_argument("--extend-normal", metavar="SUBSPEC",
                   help="inline JSON generator list for a normal subgroup")
    a.add_argument("--dot", choices=("association-graph", "block-poset",
                                     "normal-lattice"),
                   help="emit a DOT graph instead of the text report")
    a.add_argument("-o", "--output", help="write output to a file")
    a.add_argument("--element-cap", type=int, default=DEFAULT_ELEMENT_CAP)
    a.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP)
    a.add_argument("--seed", type=int, default=0,
                   help="seed for sampled verifications")
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        with open(args.spec, encoding="utf-8") as fh:
            spec = parse_spec(fh.read())
        opts = AnalyzeOptions(
            components=args.components,
            blocks=True,
            element_cap=args.element_cap,
            node_cap=args.node_cap,
            seed=args.seed,
        )
        if args.factorization:
            with open(args.factorization, encoding="utf-8") as fh:
                try:
                    payload = json.load(fh)
                except json.JSONDecodeError as e:
                    raise ParseError(f"invalid factorization JSON: {e.msg}",
                                     e.lineno, e.colno) from e
            if not isinstance(payload, dict) or "parts" not in payload:
                raise ParseError("factorization file needs a 'parts' list")
            opts.factorization_parts = payload["parts"]
        if args.extend_normal:
            try:
                opts.extend_normal = json.loads(args.extend_normal)
            except json.JSONDecodeError as e:
                raise ParseError(f"invalid --extend-normal JSON: {e.msg}",
                                 e.lineno, e.colno) from e
        report = analyze(spec, opts)
        text = emit_dot(report, args.dot) if args.dot else report.render()
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    except SpecError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CapError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (InternalCheckError, AssertionError, ChiefblocksError) as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 4
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
