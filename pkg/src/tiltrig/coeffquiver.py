"""Coefficient quivers of modules: one node per adapted basis vector, one
edge per non-zero arrow matrix entry, plus DOT/ASCII rendering and the
graph-level pruning rule for stretched-subquotient candidates.
"""

from __future__ import annotations

import re
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import Mat, Subspace, solve
from .modules import Representation, radical_series


class CQNode:
    def __init__(self, node_id: int, label: str, layer: int, vector: Optional[list] = None):
        self.id = node_id
        self.label = label
        self.layer = layer
        self.vector = vector  # adapted basis vector (extraction is basis-dependent)

    def __repr__(self) -> str:
        return f"CQNode({self.id}: {self.label}@{self.layer})"


class CQEdge:
    def __init__(self, src: int, dst: int, style: str = "solid"):
        if style not in ("solid", "dotted"):
            raise ValueError(f"unknown edge style {style!r}")
        self.src = src
        self.dst = dst
        self.style = style

    def __repr__(self) -> str:
        return f"CQEdge({self.src} -> {self.dst}, {self.style})"


class CoefficientQuiver:
    def __init__(self, nodes: List[CQNode], edges: List[CQEdge], basis_note: str = ""):
        self.nodes = nodes
        self.edges = edges
        self.basis_note = basis_note

    def layer_profile(self) -> List[Dict[str, int]]:
        depth = max((n.layer for n in self.nodes), default=-1) + 1
        out: List[Dict[str, int]] = [{} for _ in range(depth)]
        for n in self.nodes:
            out[n.layer][n.label] = out[n.layer].get(n.label, 0) + 1
        return out

    def long_edges(self) -> List[CQEdge]:
        """Edges jumping two or more radical layers (stretched arrows)."""
        by_id = {n.id: n for n in self.nodes}
        return [e for e in self.edges if by_id[e.dst].layer - by_id[e.src].layer >= 2]


def extract(M: Representation) -> CoefficientQuiver:
    """Coefficient quiver w.r.t. a radical-adapted basis (bottom-up pivoting).

    The basis of each vertex space refines the radical flag, deepest layer
    first, so every edge points to a strictly deeper layer and the node
    multiset per layer equals the Loewy profile.
    """
    F = M.field
    chain = radical_series(M)
    basis_vectors: Dict[str, List[Tuple[list, int]]] = {v: [] for v in M.vertices}
    for v in M.vertices:
        current = Subspace(F, M.dims[v])
        picked: List[Tuple[list, int]] = []
        for depth in range(len(chain) - 2, -1, -1):
            target = chain[depth].spaces[v]
            for vec in current.complement_in(target):
                picked.append((vec, depth))
            current = target
        basis_vectors[v] = picked

    nodes: List[CQNode] = []
    index: Dict[Tuple[str, int], int] = {}
    for v in M.vertices:
        for k, (vec, depth) in enumerate(basis_vectors[v]):
            index[(v, k)] = len(nodes)
            nodes.append(CQNode(len(nodes), v, depth, vector=vec))

    edges: List[CQEdge] = []
    for a, (u, w) in M.algebra.quiver.arrows.items():
        if M.dims[u] == 0 or M.dims[w] == 0:
            continue
        B = Mat.from_cols(F, [vec for vec, _ in basis_vectors[w]])
        for j, (vec, _) in enumerate(basis_vectors[u]):
            img = M.mats[a].apply(vec)
            coords = solve(B, img)
            if coords is None:
                raise ValueError("adapted basis failed to span an arrow image")
            for i, c in enumerate(coords):
                if c != F.zero:
                    edges.append(CQEdge(index[(u, j)], index[(w, i)], "solid"))
    seen = set()
    unique_edges = []
    for e in edges:
        if (e.src, e.dst) not in seen:
            seen.add((e.src, e.dst))
            unique_edges.append(e)
    note = "radical-adapted basis, deepest layer first, pivot-greedy complements"
    return CoefficientQuiver(nodes, unique_edges, basis_note=note)


def render(cq: CoefficientQuiver, fmt: str = "dot", label_order: Optional[Sequence[str]] = None) -> str:
    if fmt == "dot":
        return render_dot(cq)
    if fmt == "ascii":
        return render_ascii(cq, label_order)
    raise ValueError(f"unknown render format {fmt!r}")


def render_dot(cq: CoefficientQuiver) -> str:
    lines = ["digraph coeffquiver {", "  rankdir=TB;", "  node [shape=plaintext];"]
    depth = max((n.layer for n in cq.nodes), default=-1) + 1
    for layer in range(depth):
        members = [n for n in cq.nodes if n.layer == layer]
        lines.append("  { rank = same;")
        for n in members:
            lines.append(f'    n{n.id} [label="{n.label}"];')
        lines.append("  }")
    for e in cq.edges:
        style = "solid" if e.style == "solid" else "dotted"
        lines.append(f"  n{e.src} -> n{e.dst} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_ascii(cq: CoefficientQuiver, label_order: Optional[Sequence[str]] = None) -> str:
    profile = cq.layer_profile()
    order = {l: i for i, l in enumerate(label_order)} if label_order else {}
    rows = []
    for layer in profile:
        labs = []
        for l, c in layer.items():
            labs.extend([l] * c)
        labs.sort(key=lambda l: (order.get(l, len(order)), l))
        rows.append(",".join(labs) if labs else "-")
    return " | ".join(rows)


_DOT_EDGE = re.compile(r"^\s*n\d+ -> n\d+ \[style=(solid|dotted)\];$")
_DOT_NODE = re.compile(r'^\s*n\d+ \[label=".*"\];$')


def dot_is_wellformed(text: str) -> bool:
    """Cheap syntactic check used by the tests: braces balance and every
    statement is a known form."""
    if not text.startswith("digraph"):
        return False
    depth = 0
    for raw in text.splitlines():
        line = raw.strip()
        depth += line.count("{") - line.count("}")
        if depth < 0:
            return False
        if "->" in line and not _DOT_EDGE.match(raw):
            return False
        if "[label=" in line and not _DOT_NODE.match(raw):
            return False
    return depth == 0


# -- graph-level pruning for stretched-subquotient candidates ---------------------------


class PruneVerdict:
    def __init__(self, head: CQNode, middle: CQNode, bottom: CQNode, verdict: str, escape: Optional[str]):
        self.head = head
        self.middle = middle
        self.bottom = bottom
        self.verdict = verdict  # "IMPOSSIBLE" | "POSSIBLE"
        self.escape = escape  # None | "duplicated-middle" | "second-head"

    def __repr__(self) -> str:
        return f"PruneVerdict({self.head.label}@{self.head.layer} -> {self.middle.label} -> {self.bottom.label}: {self.verdict})"


def lemma_prune(
    cq: CoefficientQuiver,
    lam: str,
    mu: str,
    ext_table: Dict[Tuple[str, str], bool],
    less,
) -> List[PruneVerdict]:
    """Repeated-factor pruning of candidate stretched configurations.

    For a copy of `lam` connecting down through a middle factor `lam'` (with
    lam' not below lam) to a copy of `mu` two layers down, the configuration
    cannot carry a stretched subquotient unless a second copy of the middle
    factor joins the same head and bottom, or a second copy of `lam`
    connects down to the middle factor.  Requires mu > lam and a recorded
    first-layer occurrence of L(mu) in the radical of P(lam).
    """
    if not less(lam, mu):
        raise ValueError("pruning applies only to mu strictly above lam")
    if not ext_table.get((lam, mu), False):
        raise ValueError(f"ext table does not place L({mu}) on the first radical layer of P({lam})")
    by_id = {n.id: n for n in cq.nodes}
    down: Dict[int, List[int]] = {}
    up: Dict[int, List[int]] = {}
    for e in cq.edges:
        down.setdefault(e.src, []).append(e.dst)
        up.setdefault(e.dst, []).append(e.src)
    verdicts: List[PruneVerdict] = []
    for head in cq.nodes:
        if head.label != lam:
            continue
        for mid_id in down.get(head.id, []):
            mid = by_id[mid_id]
            if mid.layer != head.layer + 1 or less(mid.label, lam):
                continue
            for bot_id in down.get(mid.id, []):
                bot = by_id[bot_id]
                if bot.label != mu or bot.layer != head.layer + 2:
                    continue
                escape = None
                for other_id in down.get(head.id, []):
                    other = by_id[other_id]
                    if (
                        other.id != mid.id
                        and other.label == mid.label
                        and bot.id in down.get(other.id, [])
                    ):
                        escape = "duplicated-middle"
                        break
                if escape is None:
                    for other_head_id in up.get(mid.id, []):
                        other_head = by_id[other_head_id]
                        if other_head.id != head.id and other_head.label == lam:
                            escape = "second-head"
                            break
                verdicts.append(
                    PruneVerdict(head, mid, bot, "POSSIBLE" if escape else "IMPOSSIBLE", escape)
                )
    return verdicts
