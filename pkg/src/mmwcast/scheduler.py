"""Concurrent link scheduling: greedy independent sets over the per-round
contention graph of path-frontier links.

Each round takes the first unscheduled link of every path (so a relay only
transmits after it has received), builds the contention graph over that
frontier, and packs a maximal independent set into the next pairing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .contention import ContentionGraph, build_graph
from .model import ChannelParams, Link, Topology
from .pathplan import PathSet


@dataclass(frozen=True)
class Pairing:
    """One scheduling interval: a set of mutually non-contending links."""

    index: int  # 1-based
    links: frozenset[Link]

    def sorted_links(self) -> list[Link]:
        return sorted(self.links)


@dataclass(frozen=True)
class Schedule:
    pairings: tuple[Pairing, ...]

    def all_links(self) -> list[Link]:
        return [l for p in self.pairings for l in p.sorted_links()]

    def pairing_of(self, link: Link) -> Pairing:
        for p in self.pairings:
            if link in p.links:
                return p
        raise KeyError(f"{link} not scheduled")

    def to_text(self) -> str:
        lines = []
        for p in self.pairings:
            links = " ".join(repr(l) for l in p.sorted_links())
            lines.append(f"pairing {p.index}: {links}")
        return "\n".join(lines)


def greedy_mis(graph: ContentionGraph) -> set[Link]:
    """Maximal independent set via the minimum-degree greedy rule.

    Repeatedly picks a vertex of minimum degree in the remaining graph and
    removes it together with its neighbors.  Degree ties break toward the
    lowest (tx, rx) pair.
    """
    if not graph.vertices:
        raise ValueError("empty contention graph")
    adj = graph.adjacency()
    remaining = set(graph.vertices)
    chosen: set[Link] = set()
    while remaining:
        v = min(remaining, key=lambda u: (len(adj[u] & remaining), u))
        chosen.add(v)
        remaining -= adj[v] | {v}
    return chosen


def frontier(paths: PathSet, scheduled: set[Link]) -> list[Link]:
    """First unscheduled link of every path that still has one."""
    front = []
    for path in paths.paths:
        for link in path.links():
            if link not in scheduled:
                front.append(link)
                break
    return sorted(front)


def schedule_links(
    paths: PathSet,
    params: ChannelParams,
    topo: Topology,
    serial: bool = False,
) -> Schedule:
    """Pack path links into pairings, earliest path hops first.

    With `serial` the contention graph is forced complete, producing exactly
    one link per pairing (concurrency disabled).
    """
    scheduled: set[Link] = set()
    pairings: list[Pairing] = []
    total = len(paths.all_links())
    while len(scheduled) < total:
        front = frontier(paths, scheduled)
        graph = build_graph(front, params, topo, complete=serial)
        chosen = greedy_mis(graph)
        pairings.append(Pairing(index=len(pairings) + 1, links=frozenset(chosen)))
        scheduled |= chosen
    return Schedule(pairings=tuple(pairings))
