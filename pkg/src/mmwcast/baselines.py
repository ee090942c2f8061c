"""Comparison schemes: serial unicast at full power, and relay paths without
concurrency.

The serial unicast scheme (the FDMAC reduction for adjacent BS links) fixes
the slot budget T_s that every other scheme must respect.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import link_rate, pattern_for
from .model import BS, ChannelParams, Link, MulticastDemand, NodeId, Topology
from .pathplan import PathSet, plan_paths
from .power import PoweredSchedule, power_control
from .scheduler import schedule_links


@dataclass(frozen=True)
class SerialPlan:
    """One link per pairing, in order; fixed transmit power per link."""

    order: tuple[Link, ...]
    slots: dict[Link, int]
    power: dict[Link, float]

    def link_energy(self, link: Link, params: ChannelParams) -> float:
        return self.power[link] * self.slots[link] * params.slot

    def total_slots(self) -> int:
        return sum(self.slots.values())

    def to_text(self, params: ChannelParams) -> str:
        lines = [f"t_serial {self.total_slots()}"]
        for k, link in enumerate(self.order, start=1):
            dbm = 10.0 * math.log10(self.power[link])
            lines.append(
                f"pairing {k} slots {self.slots[link]}\n  {link!r} power {dbm:.3f} dBm"
            )
        return "\n".join(lines)


def serial_rate(user: NodeId, params: ChannelParams, topo: Topology) -> float:
    """Interference-free BS->user rate at P_max."""
    return link_rate(Link(BS, user), 0.0, params.p_max, params, topo, pattern_for(params))


def serial_unicast(
    topo: Topology,
    group: frozenset[NodeId],
    demand: MulticastDemand,
    params: ChannelParams,
) -> tuple[SerialPlan, int]:
    """Full-power one-user-at-a-time plan; returns the plan and its slot total T_s."""
    if not group:
        raise ValueError("group is empty")
    order: list[Link] = []
    slots: dict[Link, int] = {}
    power: dict[Link, float] = {}
    for user in sorted(group):
        link = Link(BS, user)
        rate = serial_rate(user, params, topo)
        order.append(link)
        slots[link] = math.ceil(demand.bits / (rate * params.slot))
        power[link] = params.p_max
    plan = SerialPlan(order=tuple(order), slots=slots, power=power)
    return plan, plan.total_slots()


def serial_energy_continuous(
    user: NodeId, demand: MulticastDemand, params: ChannelParams, topo: Topology
) -> float:
    """Unquantized serial energy P_max * D / R for one user, in mJ."""
    return params.p_max * demand.bits / serial_rate(user, params, topo)


def d2d_serial(
    topo: Topology,
    group: frozenset[NodeId],
    demand: MulticastDemand,
    params: ChannelParams,
    h_max: int,
) -> tuple[PoweredSchedule, PathSet]:
    """Relay paths as in the concurrent scheme, but one link per pairing.

    Runs the identical scheduling and power-control code with the contention
    graph forced complete, so the concurrent scheme degenerates to exactly
    this plan whenever its own graph is complete.
    """
    paths = plan_paths(topo, group, h_max)
    schedule = schedule_links(paths, params, topo, serial=True)
    _, t_serial = serial_unicast(topo, group, demand, params)
    powered = power_control(schedule, demand, params, topo, t_serial)
    return powered, paths
