"""Cayley balls of a receiving group relative to eta images.

The ball of radius r is grown by breadth-first search from the identity;
a step left-multiplies by eta(gen)^sign, and each frontier element is
expanded in a fixed order (all generators with sign +1 in index order,
then all with sign -1).  Indices are therefore deterministic and tests
may rely on them.

Elements are deduplicated by canonical payload.  For the generic family
equality is the bounded tri-state test: an Unknown comparison raises
EqualityUnknown unless approx=True, which then keeps both copies and
marks the ball approximate (sizes become upper bounds).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EqualityUnknown
from .groups import GenericFamily, GroupElem, SGroup, inv, mul
from .words import TriState


@dataclass
class Ball:
    sg: SGroup
    radius: int
    elements: list  # GroupElem, index 0 = identity
    parent: list    # idx -> (parent idx, gen, sign); None at 0
    layer: list     # idx -> word-metric distance from identity
    edges: list     # (src idx, gen, sign, tgt idx), both signs
    approx: bool = False

    @property
    def size(self) -> int:
        return len(self.elements)

    def layer_sizes(self) -> list:
        out = [0] * (self.radius + 1)
        for d in self.layer:
            out[d] += 1
        return out

    def positive_edges(self) -> list:
        return [(s, g, t) for s, g, sign, t in self.edges if sign == 1]

    def index_of(self, g: GroupElem):
        """Index of g in the ball, or None (canonical families only)."""
        for i, e in enumerate(self.elements):
            if e.payload == g.payload:
                return i
        return None


def _steps(sg: SGroup):
    """(gen, sign, group element) in the fixed expansion order."""
    out = []
    for i, e in enumerate(sg.eta):
        out.append((i, 1, e))
    for i, e in enumerate(sg.eta):
        out.append((i, -1, inv(e)))
    return out


def build_ball(sg: SGroup, radius: int, approx: bool = False) -> Ball:
    fam = sg.family
    generic = isinstance(fam, GenericFamily)
    ident = sg.identity()
    elements = [ident]
    parent = [None]
    layer = [0]
    index = None if generic else {ident.payload: 0}
    is_approx = False

    def lookup(g: GroupElem):
        nonlocal is_approx
        if index is not None:
            return index.get(g.payload)
        for i, e in enumerate(elements):
            tri = fam.tri_equal(e.payload, g.payload)
            if tri is TriState.EQUAL:
                return i
            if tri is TriState.UNKNOWN:
                if not approx:
                    raise EqualityUnknown(
                        "ball element comparison undecided; pass approx=True "
                        "to keep both representatives"
                    )
                is_approx = True
        return None

    steps = _steps(sg)
    frontier = [0]
    for dist in range(1, radius + 1):
        new_frontier = []
        for u in frontier:
            gu = elements[u]
            for gen, sign, step_elem in steps:
                g = mul(step_elem, gu)
                if lookup(g) is None:
                    if index is not None:
                        index[g.payload] = len(elements)
                    elements.append(g)
                    parent.append((u, gen, sign))
                    layer.append(dist)
                    new_frontier.append(len(elements) - 1)
        frontier = new_frontier

    if index is None:
        index_fn = lookup
    else:
        index_fn = lambda g: index.get(g.payload)
    edges = []
    for u in range(len(elements)):
        gu = elements[u]
        for gen, sign, step_elem in steps:
            v = index_fn(mul(step_elem, gu))
            if v is not None:
                edges.append((u, gen, sign, v))
    return Ball(sg, radius, elements, parent, layer, edges, is_approx)


def geodesic_word(ball: Ball, idx: int) -> tuple:
    """A shortest signed word naming element idx (left-to-right product)."""
    chain = []
    while idx != 0:
        p, gen, sign = ball.parent[idx]
        chain.append((gen, sign))
        idx = p
    return tuple(chain)


def element_label(ball: Ball, idx: int) -> str:
    return ball.sg.presentation.gens.format_signed(geodesic_word(ball, idx))


def ball_json(ball: Ball) -> dict:
    return {
        "radius": ball.radius,
        "size": ball.size,
        "layers": ball.layer_sizes(),
        "edges": len(ball.edges),
        "positive_edges": len(ball.positive_edges()),
        "approx": ball.approx,
        "elements": [element_label(ball, i) for i in range(ball.size)],
    }


def export_dot(ball: Ball, highlight=None, values=None, restrict=None) -> str:
    """Graphviz source for the ball with signed generator edge labels.

    highlight: optional set of indices drawn filled (e.g. a core);
    values: optional dict idx -> value label appended to the node name;
    restrict: optional index set limiting to the induced subgraph.
    """
    highlight = set(highlight or ())
    keep = set(range(ball.size)) if restrict is None else set(restrict)
    names = ball.sg.presentation.gens.names
    lines = ["digraph ball {", "  rankdir=LR;", "  node [shape=circle];"]
    for i in range(ball.size):
        if i not in keep:
            continue
        label = element_label(ball, i)
        if values is not None and i in values:
            label += f"\\n= {values[i]}"
        style = ' style=filled fillcolor="lightgray"' if i in highlight else ""
        lines.append(f'  n{i} [label="{label}"{style}];')
    for src, gen, sign, tgt in ball.edges:
        if src in keep and tgt in keep:
            tag = names[gen] if sign == 1 else f"{names[gen]}^-1"
            lines.append(f'  n{src} -> n{tgt} [label="{tag}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
