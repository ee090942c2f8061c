"""Domain types shared by every stage of the simulator.

Unit conventions (enforced throughout the package): powers in mW, rates in
bit/s, distances in meters, times in seconds.  Decibel values appear only at
I/O boundaries (reports, serialized schedules).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

SPEED_OF_LIGHT = 3.0e8  # m/s

# UEs drawn closer than this to the BS are re-sampled (avoids zero-length links)
MIN_BS_SEPARATION = 1e-6


@dataclass(frozen=True, order=True)
class NodeId:
    """A node in the small cell: the base station or one user (UE)."""

    kind: int  # 0 = BS, 1 = UE; BS sorts before every UE
    index: int

    @property
    def is_bs(self) -> bool:
        return self.kind == 0

    def __repr__(self) -> str:
        return "BS" if self.is_bs else f"UE{self.index}"


BS = NodeId(0, 0)


def ue(index: int) -> NodeId:
    return NodeId(1, index)


@dataclass(frozen=True, order=True)
class Link:
    """Directional link from tx to rx; rx is always a group UE."""

    tx: NodeId
    rx: NodeId

    def __post_init__(self) -> None:
        if self.tx == self.rx:
            raise ValueError(f"link endpoints must differ, got {self.tx}->{self.rx}")
        if self.rx.is_bs:
            raise ValueError("link receiver must be a UE")

    def adjacent(self, other: "Link") -> bool:
        """Half-duplex adjacency: the two links share at least one endpoint."""
        return bool({self.tx, self.rx} & {other.tx, other.rx})

    def __repr__(self) -> str:
        return f"{self.tx!r}->{self.rx!r}"


@dataclass(frozen=True)
class Topology:
    """BS + UE positions in a square region, with the seed that produced them."""

    positions: dict[NodeId, tuple[float, float]]
    region_side: float
    group: frozenset[NodeId]
    seed: int

    def __post_init__(self) -> None:
        if not self.group:
            raise ValueError("multicast group is empty")
        if BS not in self.positions:
            raise ValueError("topology has no BS")
        ues = sorted(n.index for n in self.positions if not n.is_bs)
        if ues != list(range(len(ues))):
            raise ValueError("UE indices must be dense from 0")
        for node in self.group:
            if node.is_bs or node not in self.positions:
                raise ValueError(f"group member {node} has no position or is the BS")

    def position(self, node: NodeId) -> tuple[float, float]:
        return self.positions[node]

    def distance(self, a: NodeId, b: NodeId) -> float:
        (ax, ay), (bx, by) = self.positions[a], self.positions[b]
        return math.hypot(ax - bx, ay - by)

    def group_sorted(self) -> list[NodeId]:
        return sorted(self.group)


@dataclass(frozen=True)
class ChannelParams:
    """Radio constants; defaults reproduce the simulation parameter table.

    k0 is the free-space reference gain (lambda_c / 4 pi)^2 at the carrier
    frequency; at the default 60 GHz this is about 1.583e-7.
    """

    p_max: float = 1000.0            # mW (30 dBm)
    bandwidth: float = 2.16e9        # Hz
    noise_psd: float = 10 ** (-13.4) / 1e6   # mW/Hz (-134 dBm/MHz)
    path_loss_exp: float = 2.0
    slot: float = 1.8e-5             # s
    mui_factor: float = 1.0
    theta_3db: float = 15.0          # degrees
    eta: float = 0.5
    sigma: float = 1e-12
    carrier_freq: float = 60e9       # Hz
    k0: float = field(default=0.0)   # derived from carrier_freq when left at 0

    def __post_init__(self) -> None:
        if self.k0 == 0.0:
            wavelength = SPEED_OF_LIGHT / self.carrier_freq
            object.__setattr__(self, "k0", (wavelength / (4 * math.pi)) ** 2)
        positive = {
            "p_max": self.p_max,
            "bandwidth": self.bandwidth,
            "noise_psd": self.noise_psd,
            "path_loss_exp": self.path_loss_exp,
            "slot": self.slot,
            "theta_3db": self.theta_3db,
            "carrier_freq": self.carrier_freq,
            "k0": self.k0,
        }
        for name, value in positive.items():
            if value <= 0:
                raise ValueError(f"{name} must be strictly positive, got {value}")
        if not 0 < self.eta < 1:
            raise ValueError(f"eta must lie in (0,1), got {self.eta}")
        if self.sigma < 0:
            raise ValueError(f"sigma must be non-negative, got {self.sigma}")
        if self.mui_factor < 0:
            raise ValueError(f"mui_factor must be non-negative, got {self.mui_factor}")

    @property
    def noise_power(self) -> float:
        """Total thermal noise over the band, N0*W, in mW."""
        return self.noise_psd * self.bandwidth

    def with_overrides(self, **kwargs) -> "ChannelParams":
        if "carrier_freq" in kwargs and "k0" not in kwargs:
            kwargs["k0"] = 0.0  # re-derive from the new carrier
        return replace(self, **kwargs)


@dataclass(frozen=True)
class MulticastDemand:
    """Payload every group member must receive, in bits."""

    bits: float = 1e9

    def __post_init__(self) -> None:
        if self.bits <= 0:
            raise ValueError(f"demand must be positive, got {self.bits}")


def build_topology(region_side: float, group_size: int, seed: int) -> Topology:
    """Place the BS at the region center and group_size UEs uniformly at random.

    The same seed always yields bitwise-identical placements.  UEs landing on
    top of the BS (closer than MIN_BS_SEPARATION) are re-drawn.
    """
    if region_side <= 0:
        raise ValueError(f"region_side must be positive, got {region_side}")
    if group_size < 1:
        raise ValueError(f"group_size must be at least 1, got {group_size}")

    rng = np.random.default_rng(seed)
    center = (region_side / 2.0, region_side / 2.0)
    positions: dict[NodeId, tuple[float, float]] = {BS: center}
    for i in range(group_size):
        while True:
            x, y = rng.uniform(0.0, region_side, size=2)
            if math.hypot(x - center[0], y - center[1]) >= MIN_BS_SEPARATION:
                break
        positions[ue(i)] = (float(x), float(y))
    group = frozenset(ue(i) for i in range(group_size))
    return Topology(positions=positions, region_side=float(region_side), group=group, seed=seed)
