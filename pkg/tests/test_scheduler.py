import pytest

from mmwcast.contention import ContentionGraph, build_graph
from mmwcast.model import BS, ChannelParams, Link, build_topology, ue
from mmwcast.pathplan import plan_paths
from mmwcast.scheduler import frontier, greedy_mis, schedule_links


def _graph(n_vertices, edge_pairs):
    links = [Link(ue(2 * i), ue(2 * i + 1)) for i in range(n_vertices)]
    edges = frozenset(frozenset((links[a], links[b])) for a, b in edge_pairs)
    return links, ContentionGraph(vertices=tuple(links), edges=edges)


def test_mis_edgeless_takes_all():
    links, graph = _graph(5, [])
    assert greedy_mis(graph) == set(links)


def test_mis_triangle_takes_one():
    _, graph = _graph(3, [(0, 1), (1, 2), (0, 2)])
    assert len(greedy_mis(graph)) == 1


def test_mis_path_takes_endpoints():
    links, graph = _graph(3, [(0, 1), (1, 2)])
    assert greedy_mis(graph) == {links[0], links[2]}


def test_mis_empty_graph_rejected():
    with pytest.raises(ValueError):
        greedy_mis(ContentionGraph(vertices=(), edges=frozenset()))


def test_mis_result_is_maximal_and_independent():
    import numpy as np

    rng = np.random.default_rng(5)
    for _ in range(30):
        n = int(rng.integers(2, 12))
        pairs = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.4]
        links, graph = _graph(n, pairs)
        chosen = greedy_mis(graph)
        adj = graph.adjacency()
        for v in chosen:
            assert not (adj[v] & chosen), "chosen set has an internal edge"
        for v in set(links) - chosen:
            assert adj[v] & chosen, "result is not maximal"


def test_five_user_layout_pairings(five_user_topo, params):
    paths = plan_paths(five_user_topo, five_user_topo.group, h_max=6)
    schedule = schedule_links(paths, params, five_user_topo)
    got = [p.links for p in schedule.pairings]
    assert got == [
        frozenset({Link(BS, ue(0))}),
        frozenset({Link(BS, ue(1)), Link(ue(0), ue(3))}),
        frozenset({Link(BS, ue(2)), Link(ue(1), ue(4))}),
    ]


def test_single_multihop_path_serializes(params):
    topo = build_topology(20.0, 1, seed=2)
    # hand-build a 3-hop chain topology
    from mmwcast.model import Topology

    positions = {BS: (0.0, 0.0), ue(0): (5.0, 0.0), ue(1): (10.0, 0.0), ue(2): (15.0, 0.0)}
    topo = Topology(positions=positions, region_side=40.0, group=frozenset(ue(i) for i in range(3)), seed=0)
    paths = plan_paths(topo, topo.group, h_max=3)
    schedule = schedule_links(paths, params, topo)
    assert [sorted(p.links) for p in schedule.pairings] == [
        [Link(BS, ue(0))],
        [Link(ue(0), ue(1))],
        [Link(ue(1), ue(2))],
    ]


def test_one_hop_star_schedules_serially(params):
    topo = build_topology(20.0, 6, seed=9)
    paths = plan_paths(topo, topo.group, h_max=1)
    schedule = schedule_links(paths, params, topo)
    assert len(schedule.pairings) == 6
    assert all(len(p.links) == 1 for p in schedule.pairings)


def test_serial_flag_gives_singletons(params):
    topo = build_topology(20.0, 10, seed=4)
    paths = plan_paths(topo, topo.group, h_max=6)
    schedule = schedule_links(paths, params, topo, serial=True)
    assert all(len(p.links) == 1 for p in schedule.pairings)
    assert len(schedule.pairings) == len(paths.all_links())


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("region", [20.0, 120.0])
def test_schedule_invariants(seed, region, params):
    topo = build_topology(region, 10, seed=seed)
    paths = plan_paths(topo, topo.group, h_max=6)
    schedule = schedule_links(paths, params, topo)

    # coverage: scheduled links are exactly the path links
    assert sorted(schedule.all_links()) == sorted(paths.all_links())

    # precedence: replay the frontier loop; every pairing must be independent
    # in the contention graph of its own frontier
    scheduled = set()
    for pairing in schedule.pairings:
        front = frontier(paths, scheduled)
        assert pairing.links <= set(front), "pairing contains a non-frontier link"
        graph = build_graph(front, params, topo)
        links = sorted(pairing.links)
        for i, a in enumerate(links):
            for b in links[i + 1 :]:
                assert not graph.has_edge(a, b)
        scheduled |= pairing.links

    # relay precedence: a path's links appear in path order across pairings
    index_of = {}
    for pairing in schedule.pairings:
        for link in pairing.links:
            index_of[link] = pairing.index
    for path in paths.paths:
        links = path.links()
        for earlier, later in zip(links, links[1:]):
            assert index_of[earlier] < index_of[later]


def test_schedule_text_dump(five_user_topo, params):
    paths = plan_paths(five_user_topo, five_user_topo.group, h_max=6)
    schedule = schedule_links(paths, params, five_user_topo)
    text = schedule.to_text()
    assert text.splitlines()[0] == "pairing 1: BS->UE0"
