"""Slot allocation and per-link transmit power control.

The serial slot budget T_s is split across pairings proportionally to each
pairing's full-power slot requirement; every link then transmits its whole
pairing at the lowest power that still completes its (slot-quantized)
workload, assuming concurrent links stay at full power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import GainPattern, interference_power, link_rate, pattern_for, received_power
from .model import ChannelParams, Link, MulticastDemand, Topology
from .scheduler import Pairing, Schedule


class InfeasibleScheduleError(ValueError):
    """Raised when the slot budget cannot cover the schedule at all."""


@dataclass(frozen=True)
class LinkPower:
    """Power-control outcome for one link."""

    link: Link
    pairing_index: int
    slots_needed: int       # T_u at full power within its pairing
    rate_pmax: float        # bit/s at P_max with co-pairing interference
    rate_required: float    # bit/s the assigned slots must sustain
    power: float            # mW
    clamped: bool
    shortfall_bits: float


@dataclass(frozen=True)
class PoweredSchedule:
    schedule: Schedule
    slots: dict[int, int]          # pairing index -> slot count
    t_serial: int
    links: dict[Link, LinkPower]
    rebalanced: bool               # a zero allocation was promoted to 1

    def total_slots(self) -> int:
        return sum(self.slots.values())

    def link_energy(self, link: Link, params: ChannelParams) -> float:
        """Energy of one link in mJ (mW * s)."""
        lp = self.links[link]
        return lp.power * self.slots[lp.pairing_index] * params.slot

    def total_shortfall(self) -> float:
        return sum(lp.shortfall_bits for lp in self.links.values())

    def to_text(self, params: ChannelParams) -> str:
        lines = [f"t_serial {self.t_serial}"]
        for pairing in self.schedule.pairings:
            lines.append(f"pairing {pairing.index} slots {self.slots[pairing.index]}")
            for link in pairing.sorted_links():
                lp = self.links[link]
                dbm = 10.0 * math.log10(lp.power) if lp.power > 0 else float("-inf")
                lines.append(
                    f"  {link!r} power {dbm:.3f} dBm rate_req {lp.rate_required:.6e}"
                    + (" CLAMPED" if lp.clamped else "")
                )
        return "\n".join(lines)


def pairing_interference(
    link: Link,
    pairing: Pairing,
    params: ChannelParams,
    topo: Topology,
    pattern: GainPattern | None = None,
) -> float:
    """Interference at the link's receiver with every co-pairing peer at P_max."""
    peers = pairing.links - {link}
    powers = {p: params.p_max for p in peers}
    return interference_power(link, peers, powers, params, topo, pattern)


def rate_at_pmax(
    link: Link,
    pairing: Pairing,
    params: ChannelParams,
    topo: Topology,
    pattern: GainPattern | None = None,
) -> float:
    if link not in pairing.links:
        raise ValueError(f"{link} is not in pairing {pairing.index}")
    interference = pairing_interference(link, pairing, params, topo, pattern)
    return link_rate(link, interference, params.p_max, params, topo, pattern)


def slots_needed(
    link: Link,
    pairing: Pairing,
    demand: MulticastDemand,
    params: ChannelParams,
    topo: Topology,
    pattern: GainPattern | None = None,
) -> int:
    rate = rate_at_pmax(link, pairing, params, topo, pattern)
    if rate <= 0.0:
        raise InfeasibleScheduleError(f"{link} has zero rate even at P_max")
    return math.ceil(demand.bits / (rate * params.slot))


def allocate_slots(requirements: dict[int, int], t_serial: int) -> tuple[dict[int, int], bool]:
    """Split t_serial slots across pairings proportionally to their needs.

    Pairings before the last take the floor of their proportional share; the
    last absorbs the remainder.  Zero allocations are promoted to 1, paid for
    by the largest allocation; the returned flag records that this happened.
    """
    if not requirements:
        raise ValueError("no pairings to allocate")
    indices = sorted(requirements)
    k_count = len(indices)
    if any(requirements[k] <= 0 for k in indices):
        raise ValueError("pairing requirements must be positive")
    if t_serial < k_count:
        raise InfeasibleScheduleError(
            f"slot budget {t_serial} cannot cover {k_count} pairings"
        )
    total_req = sum(requirements.values())
    slots: dict[int, int] = {}
    for k in indices[:-1]:
        # integer arithmetic keeps the floor exact for integral shares
        slots[k] = requirements[k] * t_serial // total_req
    slots[indices[-1]] = t_serial - sum(slots.values())

    rebalanced = False
    while any(v < 1 for v in slots.values()):
        rebalanced = True
        short = next(k for k in indices if slots[k] < 1)
        donor = max(indices, key=lambda k: (slots[k], -k))
        if slots[donor] <= 1:
            raise InfeasibleScheduleError("cannot give every pairing a slot")
        slots[donor] -= 1
        slots[short] += 1
    return slots, rebalanced


def link_power(
    link: Link,
    pairing: Pairing,
    delta_k: int,
    demand: MulticastDemand,
    params: ChannelParams,
    topo: Topology,
    pattern: GainPattern | None = None,
) -> LinkPower:
    """Lowest power that completes the link's workload in delta_k slots.

    The workload is the demand rounded up to the link's full-power slot grid
    (slots_needed * rate_at_pmax * slot), so a link granted exactly its needed
    slots transmits at exactly P_max and extra slots lower the power.  If the
    allocation falls short the power clamps at P_max and the unserved bits are
    reported.
    """
    if delta_k < 1:
        raise ValueError(f"delta_k must be at least 1, got {delta_k}")
    pattern = pattern or pattern_for(params)
    r_pmax = rate_at_pmax(link, pairing, params, topo, pattern)
    if r_pmax <= 0.0:
        raise InfeasibleScheduleError(f"{link} has zero rate even at P_max")
    t_need = math.ceil(demand.bits / (r_pmax * params.slot))

    interference = pairing_interference(link, pairing, params, topo, pattern)
    channel_gain = received_power(
        link.tx, link.rx, pattern.g0_db, pattern.g0_db, 1.0, params, topo
    )

    if delta_k >= t_need:
        rate_required = r_pmax * (t_need / delta_k)
        snr_required = 2.0 ** (rate_required / (params.eta * params.bandwidth)) - 1.0
        power = snr_required * (params.noise_power + interference) / channel_gain
        power = min(power, params.p_max)  # guard float overshoot at delta == t_need
        return LinkPower(link, pairing.index, t_need, r_pmax, rate_required, power, False, 0.0)

    # Not enough slots even at full power: clamp and report the residue.
    rate_required = r_pmax * (t_need / delta_k)
    shortfall = max(0.0, demand.bits - r_pmax * delta_k * params.slot)
    return LinkPower(
        link, pairing.index, t_need, r_pmax, rate_required, params.p_max, True, shortfall
    )


def power_control(
    schedule: Schedule,
    demand: MulticastDemand,
    params: ChannelParams,
    topo: Topology,
    t_serial: int,
) -> PoweredSchedule:
    """Full pass: per-pairing slot needs, proportional allocation, link powers."""
    pattern = pattern_for(params)
    requirements: dict[int, int] = {}
    for pairing in schedule.pairings:
        requirements[pairing.index] = max(
            slots_needed(link, pairing, demand, params, topo, pattern)
            for link in pairing.sorted_links()
        )

    slots, rebalanced = allocate_slots(requirements, t_serial)

    links: dict[Link, LinkPower] = {}
    for pairing in schedule.pairings:
        for link in pairing.sorted_links():
            links[link] = link_power(
                link, pairing, slots[pairing.index], demand, params, topo, pattern
            )
    return PoweredSchedule(
        schedule=schedule,
        slots=slots,
        t_serial=t_serial,
        links=links,
        rebalanced=rebalanced,
    )
