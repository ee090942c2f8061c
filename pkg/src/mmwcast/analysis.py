"""Analytical cross-checks and small-instance exact oracles.

These routines exist to ground the heuristics: per-user energy bounds, the
sign of the energy-vs-slots derivative, an exact maximum independent set, and
a tiny exhaustive scheduler that searches every path set, pairing structure,
and slot split on instances of up to four users.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass

from .baselines import serial_energy_continuous, serial_rate, serial_unicast
from .channel import pattern_for, received_power
from .contention import ContentionGraph
from .model import BS, ChannelParams, Link, MulticastDemand, NodeId, Topology
from .power import PoweredSchedule, pairing_interference, rate_at_pmax
from .scheduler import Pairing


@dataclass(frozen=True)
class UserBound:
    """Per-user energy comparison between the relay plan and the serial plan."""

    user: NodeId
    link: Link
    pairing_index: int
    pairing_size: int
    delta: int
    e_serial_mj: float        # continuous full-power serial energy
    e_actual_mj: float        # energy actually spent by the powered plan
    e_bound_mj: float         # interference-capped upper bound
    gamma: float              # bound prefactor (mJ per slot-exponential unit)
    interference_mw: float    # co-pairing interference at P_max
    cap_condition_holds: bool # every per-interferer term is under the cap
    i_tolerance_mw: float     # interference level below which relay beats serial
    linear_approx_mj: float   # low-SINR linearization of the actual energy
    clamped: bool


BOUND_CSV_COLUMNS = (
    "user",
    "tx",
    "pairing_index",
    "pairing_size",
    "delta",
    "e_serial_mj",
    "e_actual_mj",
    "e_bound_mj",
    "gamma",
    "interference_mw",
    "cap_condition_holds",
    "i_tolerance_mw",
    "linear_approx_mj",
    "clamped",
)


@dataclass(frozen=True)
class BoundReport:
    users: tuple[UserBound, ...]

    def clamped_users(self) -> list[UserBound]:
        return [u for u in self.users if u.clamped]

    def csv_rows(self) -> list[list[str]]:
        rows = [list(BOUND_CSV_COLUMNS)]
        for u in self.users:
            rows.append(
                [
                    repr(u.user),
                    repr(u.link.tx),
                    str(u.pairing_index),
                    str(u.pairing_size),
                    str(u.delta),
                    repr(u.e_serial_mj),
                    repr(u.e_actual_mj),
                    repr(u.e_bound_mj),
                    repr(u.gamma),
                    repr(u.interference_mw),
                    "true" if u.cap_condition_holds else "false",
                    repr(u.i_tolerance_mw),
                    repr(u.linear_approx_mj),
                    "true" if u.clamped else "false",
                ]
            )
        return rows


def _interference_cap(params: ChannelParams) -> float:
    """Per-interferer received-power cap implied by the contention threshold."""
    return params.sigma * params.p_max


def per_user_energies(
    powered: PoweredSchedule,
    demand: MulticastDemand,
    params: ChannelParams,
    topo: Topology,
) -> BoundReport:
    pattern = pattern_for(params)
    cap = _interference_cap(params)
    rows: list[UserBound] = []
    for pairing in powered.schedule.pairings:
        for link in pairing.sorted_links():
            lp = powered.links[link]
            delta = powered.slots[pairing.index]
            user = link.rx
            ch = received_power(link.tx, link.rx, pattern.g0_db, pattern.g0_db, 1.0, params, topo)
            i_u = pairing_interference(link, pairing, params, topo, pattern)
            n_peers = len(pairing.links) - 1

            # Does every single interferer stay under the threshold cap?
            holds = True
            for peer in sorted(pairing.links - {link}):
                term = pairing_interference(
                    link, Pairing(index=pairing.index, links=frozenset({link, peer})),
                    params, topo, pattern,
                )
                if term > cap:
                    holds = False
                    break

            x = lp.rate_required / (params.eta * params.bandwidth)
            growth = 2.0 ** x - 1.0
            gamma = (params.noise_power + n_peers * cap) / ch * params.slot
            e_actual = lp.power * delta * params.slot
            e_bound = growth * (params.noise_power + n_peers * cap) / ch * delta * params.slot
            e_serial = serial_energy_continuous(user, demand, params, topo)
            r_serial = serial_rate(user, params, topo)
            i_tol = (
                params.p_max * demand.bits * ch / (r_serial * growth * delta * params.slot)
                - params.noise_power
            )
            linear = (
                demand.bits
                * math.log(2.0)
                * (params.noise_power + i_u)
                / (params.eta * params.bandwidth * ch)
            )
            rows.append(
                UserBound(
                    user=user,
                    link=link,
                    pairing_index=pairing.index,
                    pairing_size=len(pairing.links),
                    delta=delta,
                    e_serial_mj=e_serial,
                    e_actual_mj=e_actual,
                    e_bound_mj=e_bound,
                    gamma=gamma,
                    interference_mw=i_u,
                    cap_condition_holds=holds,
                    i_tolerance_mw=i_tol,
                    linear_approx_mj=linear,
                    clamped=lp.clamped,
                )
            )
    rows.sort(key=lambda r: r.user)
    return BoundReport(users=tuple(rows))


def energy_curve(gamma: float, demand: MulticastDemand, params: ChannelParams, delta: float) -> float:
    """Bound-side energy as a continuous function of the slot count."""
    x = demand.bits / (delta * params.slot * params.eta * params.bandwidth)
    return gamma * (2.0 ** x - 1.0) * delta


def energy_derivative(
    gamma: float, demand: MulticastDemand, params: ChannelParams, delta: float
) -> float:
    x = demand.bits / (delta * params.slot * params.eta * params.bandwidth)
    return gamma * (2.0 ** x * (1.0 - math.log(2.0) * x) - 1.0)


def derivative_check(
    gamma: float,
    demand: MulticastDemand,
    params: ChannelParams,
    deltas: list[float],
    rel_tol: float = 1e-6,
) -> bool:
    """Analytic slope must match central differences and stay negative."""
    for delta in deltas:
        if delta <= 0:
            raise ValueError("slot counts must be positive")
        analytic = energy_derivative(gamma, demand, params, delta)
        h = delta * 1e-5
        numeric = (
            energy_curve(gamma, demand, params, delta + h)
            - energy_curve(gamma, demand, params, delta - h)
        ) / (2.0 * h)
        if analytic >= 0.0:
            return False
        if abs(analytic - numeric) > rel_tol * abs(numeric):
            return False
    return True


# ---------------------------------------------------------------------------
# Exact maximum independent set (branch and bound)
# ---------------------------------------------------------------------------

MAX_EXACT_VERTICES = 20


def exact_mis(graph: ContentionGraph) -> set[Link]:
    if len(graph.vertices) > MAX_EXACT_VERTICES:
        raise ValueError(f"exact search capped at {MAX_EXACT_VERTICES} vertices")
    adj = graph.adjacency()
    order = sorted(graph.vertices)

    best: set[Link] = set()

    def grow(remaining: list[Link], current: set[Link]) -> None:
        nonlocal best
        if len(current) + len(remaining) <= len(best):
            return
        if not remaining:
            if len(current) > len(best):
                best = set(current)
            return
        v = max(remaining, key=lambda u: (sum(1 for w in remaining if w in adj[u]), u))
        rest = [u for u in remaining if u != v]
        # include v
        grow([u for u in rest if u not in adj[v]], current | {v})
        # exclude v
        grow(rest, current)

    grow(order, set())
    return best


# ---------------------------------------------------------------------------
# Exhaustive scheduler for tiny instances
# ---------------------------------------------------------------------------

MAX_ORACLE_USERS = 4
MAX_ORACLE_HOPS = 2


@dataclass(frozen=True)
class OracleResult:
    energy_mj: float
    paths: tuple[tuple[NodeId, ...], ...]
    pairings: tuple[tuple[Link, ...], ...]
    slots: tuple[int, ...]


def _path_sets(users: list[NodeId], h_max: int) -> list[tuple[tuple[NodeId, ...], ...]]:
    """Every partition of the users into ordered relay chains of bounded length."""
    seen: set[frozenset[tuple[NodeId, ...]]] = set()
    out: list[tuple[tuple[NodeId, ...], ...]] = []
    n = len(users)
    for perm in itertools.permutations(users):
        for cuts in itertools.product([True, False], repeat=n - 1):
            chains: list[tuple[NodeId, ...]] = []
            chain = [perm[0]]
            for node, cut in zip(perm[1:], cuts):
                if cut:
                    chains.append(tuple(chain))
                    chain = [node]
                else:
                    chain.append(node)
            chains.append(tuple(chain))
            if any(len(c) > h_max for c in chains):
                continue
            key = frozenset(chains)
            if key in seen:
                continue
            seen.add(key)
            out.append(tuple(sorted(chains)))
    return out


def _block_partitions(links: list[Link]) -> list[list[list[Link]]]:
    """Unordered set partitions of the links (restricted-growth enumeration)."""
    if not links:
        return [[]]
    first, rest = links[0], links[1:]
    out: list[list[list[Link]]] = []
    for part in _block_partitions(rest):
        for i in range(len(part)):
            out.append(part[:i] + [[first] + part[i]] + part[i + 1 :])
        out.append([[first]] + part)
    return out


@dataclass(frozen=True)
class _BlockModel:
    """Per-pairing constants for fast energy evaluation at any slot count.

    Link power at delta >= need is (2^(a/delta) - 1) * b, with a the link's
    full-power exponent budget (rate_pmax * need / (eta W)) and b the
    noise-plus-interference over channel-gain prefactor.
    """

    links: tuple[Link, ...]
    need: int                 # max full-power slot need over members
    a: tuple[float, ...]
    b: tuple[float, ...]

    def energy(self, delta: int, slot: float) -> float:
        total = 0.0
        for a, b in zip(self.a, self.b):
            total += (2.0 ** (a / delta) - 1.0) * b
        return total * delta * slot


def _block_model(
    block: tuple[Link, ...],
    demand: MulticastDemand,
    params: ChannelParams,
    topo: Topology,
) -> _BlockModel:
    pairing = Pairing(index=1, links=frozenset(block))
    pattern = pattern_for(params)
    a_vals, b_vals, needs = [], [], []
    for link in block:
        r_pmax = rate_at_pmax(link, pairing, params, topo, pattern)
        need = math.ceil(demand.bits / (r_pmax * params.slot))
        interference = pairing_interference(link, pairing, params, topo, pattern)
        channel_gain = received_power(
            link.tx, link.rx, pattern.g0_db, pattern.g0_db, 1.0, params, topo
        )
        a_vals.append(r_pmax * need / (params.eta * params.bandwidth))
        b_vals.append((params.noise_power + interference) / channel_gain)
        needs.append(need)
    return _BlockModel(links=block, need=max(needs), a=tuple(a_vals), b=tuple(b_vals))


def _precedence_dag_acyclic(
    blocks: list[tuple[Link, ...]], predecessor: dict[Link, Link]
) -> list[int] | None:
    """Topological order of block indices respecting link precedence, or None."""
    block_of: dict[Link, int] = {}
    for i, block in enumerate(blocks):
        for link in block:
            block_of[link] = i
    succs: dict[int, set[int]] = {i: set() for i in range(len(blocks))}
    indeg = {i: 0 for i in range(len(blocks))}
    for link, pred in predecessor.items():
        a, b = block_of[pred], block_of[link]
        if a == b:
            return None
        if b not in succs[a]:
            succs[a].add(b)
            indeg[b] += 1
    order: list[int] = []
    ready = sorted(i for i in indeg if indeg[i] == 0)
    while ready:
        i = ready.pop(0)
        order.append(i)
        for j in sorted(succs[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
        ready.sort()
    return order if len(order) == len(blocks) else None


def exhaustive_schedule(
    topo: Topology,
    group: frozenset[NodeId],
    demand: MulticastDemand,
    params: ChannelParams,
    h_max: int = MAX_ORACLE_HOPS,
) -> OracleResult:
    """Minimum-energy feasible schedule by full enumeration.

    Searches every path set and every adjacency- and order-respecting pairing
    structure; for each, the integral slot split is optimized exactly (every
    pairing's energy is convex and decreasing in its slot count, so greedy
    marginal allocation of the leftover budget attains the optimum).  Pairing
    order does not change the energy, so structures only need an acyclic
    precedence relation between pairings.
    """
    users = sorted(group)
    if len(users) > MAX_ORACLE_USERS:
        raise ValueError(f"oracle capped at {MAX_ORACLE_USERS} users")
    if h_max > MAX_ORACLE_HOPS:
        raise ValueError(f"oracle hop cap is {MAX_ORACLE_HOPS}")
    _, t_serial = serial_unicast(topo, group, demand, params)

    best: tuple[float, tuple, tuple, tuple] | None = None

    for chains in _path_sets(users, h_max):
        paths = [(BS,) + chain for chain in chains]
        links = [Link(a, b) for p in paths for a, b in zip(p, p[1:])]
        predecessor = {
            Link(p[i], p[i + 1]): Link(p[i - 1], p[i])
            for p in paths
            for i in range(1, len(p) - 1)
        }
        for partition in _block_partitions(sorted(links)):
            blocks = sorted(tuple(sorted(b)) for b in partition)
            if any(
                a.adjacent(b)
                for blk in blocks
                for a, b in itertools.combinations(blk, 2)
            ):
                continue
            topo_order = _precedence_dag_acyclic(blocks, predecessor)
            if topo_order is None:
                continue
            result = _best_split(blocks, t_serial, demand, params, topo)
            if result is None:
                continue
            energy, slots = result
            ordered = tuple(blocks[i] for i in topo_order)
            ordered_slots = tuple(slots[i] for i in topo_order)
            key = (energy, tuple(sorted(chains)), ordered, ordered_slots)
            if best is None or key < best:
                best = key

    if best is None:
        raise ValueError("no feasible schedule found")
    energy, chains, ordered, slots = best
    paths = tuple((BS,) + chain for chain in chains)
    return OracleResult(energy_mj=energy, paths=paths, pairings=ordered, slots=slots)


def _best_split(
    blocks: list[tuple[Link, ...]],
    t_serial: int,
    demand: MulticastDemand,
    params: ChannelParams,
    topo: Topology,
) -> tuple[float, tuple[int, ...]] | None:
    """Optimal integral slot split over the blocks, or None when the budget
    cannot even cover the full-power needs."""
    models = [_block_model(b, demand, params, topo) for b in blocks]
    if sum(m.need for m in models) > t_serial:
        return None

    slots = [m.need for m in models]
    energies = [m.energy(slots[i], params.slot) for i, m in enumerate(models)]
    heap: list[tuple[float, int]] = []
    for i, m in enumerate(models):
        gain = energies[i] - m.energy(slots[i] + 1, params.slot)
        heapq.heappush(heap, (-gain, i))
    for _ in range(t_serial - sum(slots)):
        _, i = heapq.heappop(heap)
        slots[i] += 1
        energies[i] = models[i].energy(slots[i], params.slot)
        gain = energies[i] - models[i].energy(slots[i] + 1, params.slot)
        heapq.heappush(heap, (-gain, i))
    return sum(energies), tuple(slots)
