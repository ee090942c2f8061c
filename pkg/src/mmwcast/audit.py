"""Feasibility validators applied to every emitted plan.

Checks, by name:
  once_per_user  every group member is served exactly once
  half_duplex    no pairing contains two links sharing a node
  demand_met     achieved rate x allocated slots covers the payload
                 (clamped links are exempt here; their unserved bits are
                 surfaced as shortfall, never silently dropped)
  relay_order    a relay transmits only after the pairing that serves it
  power_cap      every transmit power is positive and at most P_max
  slot_budget    total slots do not exceed the serial budget T_s
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .baselines import SerialPlan
from .channel import interference_power, link_rate
from .model import ChannelParams, Link, MulticastDemand, NodeId, Topology
from .pathplan import PathSet
from .power import PoweredSchedule

CHECK_NAMES = (
    "once_per_user",
    "half_duplex",
    "demand_met",
    "relay_order",
    "power_cap",
    "slot_budget",
)

_REL_TOL = 1e-9


@dataclass
class AuditResult:
    checks: dict[str, bool]
    detail: list[str] = field(default_factory=list)
    shortfall_bits: float = 0.0

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def fail(self, check: str, message: str) -> None:
        self.checks[check] = False
        self.detail.append(f"{check}: {message}")


def _fresh() -> AuditResult:
    return AuditResult(checks={name: True for name in CHECK_NAMES})


def achieved_rate(
    link: Link, powered: PoweredSchedule, params: ChannelParams, topo: Topology
) -> float:
    """Rate the link actually sustains given every peer's assigned power."""
    pairing = powered.schedule.pairing_of(link)
    peers = pairing.links - {link}
    powers = {p: powered.links[p].power for p in peers}
    interference = interference_power(link, peers, powers, params, topo)
    return link_rate(link, interference, powered.links[link].power, params, topo)


def audit_powered(
    powered: PoweredSchedule,
    paths: PathSet,
    group: frozenset[NodeId],
    demand: MulticastDemand,
    params: ChannelParams,
    topo: Topology,
) -> AuditResult:
    result = _fresh()

    served: dict[NodeId, int] = {}
    for pairing in powered.schedule.pairings:
        for link in pairing.sorted_links():
            served[link.rx] = served.get(link.rx, 0) + 1
    for user in sorted(group):
        if served.get(user, 0) != 1:
            result.fail("once_per_user", f"{user} served {served.get(user, 0)} times")
    for extra in sorted(set(served) - set(group)):
        result.fail("once_per_user", f"{extra} served but not in group")

    for pairing in powered.schedule.pairings:
        links = pairing.sorted_links()
        for i, a in enumerate(links):
            for b in links[i + 1 :]:
                if a.adjacent(b):
                    result.fail("half_duplex", f"pairing {pairing.index}: {a} and {b}")

    pairing_of_rx = {l.rx: powered.links[l].pairing_index for l in powered.links}
    for path in paths.paths:
        for link in path.links():
            if link.tx.is_bs:
                continue
            before = pairing_of_rx.get(link.tx)
            after = pairing_of_rx.get(link.rx)
            if before is None or after is None or before >= after:
                result.fail("relay_order", f"{link.tx} must be served before {link.rx}")

    for link, lp in sorted(powered.links.items()):
        delta = powered.slots[lp.pairing_index]
        if lp.clamped:
            result.shortfall_bits += lp.shortfall_bits
            result.detail.append(
                f"demand_met: {link!r} clamped at P_max, {lp.shortfall_bits:.3e} bits short"
            )
            continue
        rate = achieved_rate(link, powered, params, topo)
        if rate * delta * params.slot < demand.bits * (1.0 - _REL_TOL):
            result.fail(
                "demand_met",
                f"{link!r} delivers {rate * delta * params.slot:.3e} of {demand.bits:.3e} bits",
            )

    for link, lp in sorted(powered.links.items()):
        if not 0.0 < lp.power <= params.p_max * (1.0 + _REL_TOL):
            result.fail("power_cap", f"{link!r} power {lp.power} mW outside (0, P_max]")

    if powered.total_slots() > powered.t_serial:
        result.fail(
            "slot_budget",
            f"{powered.total_slots()} slots exceed budget {powered.t_serial}",
        )
    return result


def audit_serial(
    plan: SerialPlan,
    group: frozenset[NodeId],
    demand: MulticastDemand,
    params: ChannelParams,
    topo: Topology,
    t_serial: int,
) -> AuditResult:
    """Validators for the one-link-per-pairing full-power plan."""
    result = _fresh()

    served: dict[NodeId, int] = {}
    for link in plan.order:
        served[link.rx] = served.get(link.rx, 0) + 1
    for user in sorted(group):
        if served.get(user, 0) != 1:
            result.fail("once_per_user", f"{user} served {served.get(user, 0)} times")

    # One link per pairing: half-duplex and relay order hold structurally for
    # BS-rooted serial orders; still verify transmitters are the BS.
    for link in plan.order:
        if not link.tx.is_bs:
            result.fail("relay_order", f"serial plan has relay transmitter {link.tx}")

    for link in plan.order:
        rate = link_rate(link, 0.0, plan.power[link], params, topo)
        if rate * plan.slots[link] * params.slot < demand.bits * (1.0 - _REL_TOL):
            result.fail("demand_met", f"{link!r} under-delivers")
        if not 0.0 < plan.power[link] <= params.p_max * (1.0 + _REL_TOL):
            result.fail("power_cap", f"{link!r} power outside (0, P_max]")

    if plan.total_slots() > t_serial:
        result.fail("slot_budget", f"{plan.total_slots()} slots exceed {t_serial}")
    return result
