"""Multi-hop relay path construction rooted at the BS.

Paths grow greedily: each step picks the globally closest (serving node,
unallocated user) pair among the current last nodes, starting a new path when
the serving node is the BS and extending an existing path otherwise.  A hop
cap keeps relay chains short; the BS never leaves the serving set, so it can
keep spawning new paths.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import BS, Link, NodeId, Topology


@dataclass(frozen=True)
class Path:
    """Ordered node sequence starting at the BS; consecutive pairs are links."""

    nodes: tuple[NodeId, ...]

    def __post_init__(self) -> None:
        if not self.nodes or self.nodes[0] != BS:
            raise ValueError("path must start at the BS")
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("path repeats a node")

    @property
    def hops(self) -> int:
        return len(self.nodes) - 1

    @property
    def last(self) -> NodeId:
        return self.nodes[-1]

    def links(self) -> list[Link]:
        return [Link(a, b) for a, b in zip(self.nodes, self.nodes[1:])]


@dataclass(frozen=True)
class PathSet:
    """Relay paths covering the whole group, each user on exactly one path."""

    paths: tuple[Path, ...]

    def all_links(self) -> list[Link]:
        return [link for path in self.paths for link in path.links()]

    def users(self) -> frozenset[NodeId]:
        return frozenset(n for path in self.paths for n in path.nodes[1:])

    def d2d_links(self) -> list[Link]:
        return [l for l in self.all_links() if not l.tx.is_bs]

    def validate(self, group: frozenset[NodeId], h_max: int) -> None:
        seen: set[NodeId] = set()
        for path in self.paths:
            if path.hops > h_max:
                raise ValueError(f"path {path.nodes} exceeds hop cap {h_max}")
            for node in path.nodes[1:]:
                if node in seen:
                    raise ValueError(f"{node} appears on more than one path")
                seen.add(node)
        if seen != set(group):
            raise ValueError("paths do not cover the group exactly")


def plan_paths(topo: Topology, group: frozenset[NodeId], h_max: int) -> PathSet:
    """Grow relay paths by nearest-neighbor extension under the hop cap.

    Distance ties break toward the lowest candidate UE, then the lowest
    serving node (BS before UEs), keeping the construction deterministic.
    """
    if h_max < 1:
        raise ValueError(f"h_max must be at least 1, got {h_max}")
    if not group:
        raise ValueError("group is empty")

    unallocated = sorted(group)
    paths: list[list[NodeId]] = []
    last_nodes: list[NodeId] = [BS]
    path_of_last: dict[NodeId, int] = {}

    while unallocated:
        # Rank every (serving node, candidate) pair afresh each round.
        best: tuple[float, NodeId, NodeId] | None = None
        for serving in last_nodes:
            for cand in unallocated:
                key = (topo.distance(serving, cand), cand, serving)
                if best is None or key < best:
                    best = key
        assert best is not None
        _, chosen, serving = best

        if serving == BS:
            paths.append([BS, chosen])
            path_idx = len(paths) - 1
        else:
            path_idx = path_of_last.pop(serving)
            paths[path_idx].append(chosen)
            last_nodes.remove(serving)

        unallocated.remove(chosen)
        if len(paths[path_idx]) - 1 < h_max:
            last_nodes.append(chosen)
            path_of_last[chosen] = path_idx
        last_nodes.sort()

    result = PathSet(paths=tuple(Path(nodes=tuple(p)) for p in paths))
    result.validate(group, h_max)
    return result
