"""Contention graph over candidate links.

Two links contend (carry an edge) when they share an endpoint — the
half-duplex rule — or when the stronger of their two cross-interference
powers, evaluated at full transmit power, reaches the interference threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

from .channel import GainPattern, cross_gain, pattern_for, received_power
from .model import ChannelParams, Link, Topology


@dataclass(frozen=True)
class ContentionGraph:
    vertices: tuple[Link, ...]
    edges: frozenset[frozenset[Link]]

    def neighbors(self, v: Link) -> list[Link]:
        out = []
        for e in self.edges:
            if v in e:
                (other,) = e - {v}
                out.append(other)
        return sorted(out)

    def degree(self, v: Link) -> int:
        return sum(1 for e in self.edges if v in e)

    def has_edge(self, a: Link, b: Link) -> bool:
        return frozenset((a, b)) in self.edges

    def adjacency(self) -> dict[Link, set[Link]]:
        adj: dict[Link, set[Link]] = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = sorted(e)
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def to_edge_list(self) -> str:
        """Plain-text adjacency dump for debugging."""
        lines = [f"vertices {len(self.vertices)} edges {len(self.edges)}"]
        for v in self.vertices:
            nbrs = " ".join(repr(n) for n in self.neighbors(v))
            lines.append(f"{v!r}: {nbrs}")
        return "\n".join(lines)


def edge_weight(
    a: Link,
    b: Link,
    params: ChannelParams,
    topo: Topology,
    pattern: GainPattern | None = None,
) -> float:
    """Worst-direction cross power between two links at P_max, in mW.

    Both links keep the beam alignment of their own endpoints; only the
    off-boresight leakage between them is measured.
    """
    pattern = pattern or pattern_for(params)
    gt_ab, gr_ab = cross_gain(a, b, pattern, topo)
    p_ab = received_power(a.tx, b.rx, gt_ab, gr_ab, params.p_max, params, topo)
    gt_ba, gr_ba = cross_gain(b, a, pattern, topo)
    p_ba = received_power(b.tx, a.rx, gt_ba, gr_ba, params.p_max, params, topo)
    return max(p_ab, p_ba)


def contends(
    a: Link,
    b: Link,
    params: ChannelParams,
    topo: Topology,
    pattern: GainPattern | None = None,
) -> bool:
    if a.adjacent(b):
        return True
    weight = edge_weight(a, b, params, topo, pattern)
    return weight / params.p_max >= params.sigma


def build_graph(
    candidates: set[Link] | frozenset[Link] | list[Link],
    params: ChannelParams,
    topo: Topology,
    complete: bool = False,
) -> ContentionGraph:
    """Contention graph over the candidates; `complete` forces every pair in
    contention (used to disable concurrency altogether)."""
    verts = sorted(set(candidates))
    if not verts:
        raise ValueError("no candidate links")
    pattern = pattern_for(params)
    edges: set[frozenset[Link]] = set()
    for i, a in enumerate(verts):
        for b in verts[i + 1 :]:
            if complete or contends(a, b, params, topo, pattern):
                edges.add(frozenset((a, b)))
    return ContentionGraph(vertices=tuple(verts), edges=frozenset(edges))
