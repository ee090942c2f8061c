"""Directional antenna gains, received power, interference, and link rate.

The antenna is the reference pattern with a Gaussian main lobe and a constant
side-lobe floor.  All gain arithmetic is linear; dB only at the pattern
definition itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import ChannelParams, Link, NodeId, Topology


@dataclass(frozen=True)
class GainPattern:
    """Main-lobe/side-lobe antenna pattern derived from the half-power beamwidth."""

    theta_3db: float  # degrees
    g0_db: float
    gsl_db: float
    theta_ml: float   # main lobe width, degrees

    @classmethod
    def from_theta_3db(cls, theta_3db: float) -> "GainPattern":
        if theta_3db <= 0:
            raise ValueError(f"theta_3db must be positive, got {theta_3db}")
        g0_db = 10.0 * math.log10((1.6162 / math.sin(math.radians(theta_3db / 2.0))) ** 2)
        gsl_db = -0.4111 * math.log(theta_3db) - 10.579
        return cls(theta_3db=theta_3db, g0_db=g0_db, gsl_db=gsl_db, theta_ml=2.6 * theta_3db)

    @property
    def g0_linear(self) -> float:
        return 10.0 ** (self.g0_db / 10.0)

    @property
    def gsl_linear(self) -> float:
        return 10.0 ** (self.gsl_db / 10.0)


def pattern_for(params: ChannelParams) -> GainPattern:
    return GainPattern.from_theta_3db(params.theta_3db)


@dataclass(frozen=True)
class Beamset:
    """One active beam (unit direction) per node taking part in a pairing.

    Endpoints of a link aim at each other; a half-duplex node can appear in
    only one concurrent link, so it carries exactly one boresight.
    """

    boresight: dict[NodeId, tuple[float, float]]

    @classmethod
    def from_links(cls, links: list[Link] | set[Link] | frozenset[Link], topo: Topology) -> "Beamset":
        directions: dict[NodeId, tuple[float, float]] = {}
        for link in sorted(links):
            for node, target in ((link.tx, link.rx), (link.rx, link.tx)):
                if node in directions:
                    raise ValueError(f"{node} takes part in more than one concurrent link")
                nx, ny = topo.position(node)
                tx_, ty_ = topo.position(target)
                norm = math.hypot(tx_ - nx, ty_ - ny)
                if norm == 0.0:
                    raise ValueError(f"{node} and {target} are coincident")
                directions[node] = ((tx_ - nx) / norm, (ty_ - ny) / norm)
        return cls(boresight=directions)

    def off_angle(self, node: NodeId, toward: NodeId, topo: Topology) -> float:
        """Degrees between the node's beam and the direction to `toward`."""
        ux, uy = self.boresight[node]
        nx, ny = topo.position(node)
        tx_, ty_ = topo.position(toward)
        norm = math.hypot(tx_ - nx, ty_ - ny)
        if norm == 0.0:
            raise ValueError("coincident points have no defined direction")
        cos = (ux * (tx_ - nx) + uy * (ty_ - ny)) / norm
        return math.degrees(math.acos(max(-1.0, min(1.0, cos))))


def antenna_gain(theta: float, pattern: GainPattern) -> float:
    """Gain in dB at angle theta (degrees) off boresight.

    Main lobe for theta <= theta_ml/2, side-lobe floor beyond; the jump at the
    lobe edge is part of the reference model and is kept as-is.
    """
    if not 0.0 <= theta <= 180.0:
        raise ValueError(f"theta must lie in [0, 180] degrees, got {theta}")
    if theta <= pattern.theta_ml / 2.0:
        return pattern.g0_db - 3.01 * (2.0 * theta / pattern.theta_3db) ** 2
    return pattern.gsl_db


def antenna_gain_linear(theta: float, pattern: GainPattern) -> float:
    return 10.0 ** (antenna_gain(theta, pattern) / 10.0)


def off_boresight_angle(
    frm: NodeId, boresight_target: NodeId, toward: NodeId, topo: Topology
) -> float:
    """Planar angle (degrees) at `frm` between its boresight and `toward`."""
    fx, fy = topo.position(frm)
    bx, by = topo.position(boresight_target)
    tx, ty = topo.position(toward)
    v1 = (bx - fx, by - fy)
    v2 = (tx - fx, ty - fy)
    n1 = math.hypot(*v1)
    n2 = math.hypot(*v2)
    if n1 == 0.0 or n2 == 0.0:
        raise ValueError("coincident points have no defined direction")
    cos = (v1[0] * v2[0] + v1[1] * v2[1]) / (n1 * n2)
    cos = max(-1.0, min(1.0, cos))
    return math.degrees(math.acos(cos))


def received_power(
    tx: NodeId,
    rx: NodeId,
    gt_db: float,
    gr_db: float,
    pt: float,
    params: ChannelParams,
    topo: Topology,
) -> float:
    """Free-space received power k0 * Gt * Gr * l^-tau * Pt, in mW."""
    if pt < 0:
        raise ValueError(f"transmit power must be non-negative, got {pt}")
    if tx == rx:
        raise ValueError("tx and rx must differ")
    dist = topo.distance(tx, rx)
    if dist == 0.0:
        raise ValueError(f"zero distance between {tx} and {rx}")
    gt = 10.0 ** (gt_db / 10.0)
    gr = 10.0 ** (gr_db / 10.0)
    return params.k0 * gt * gr * dist ** (-params.path_loss_exp) * pt


def cross_gain(
    interferer: Link,
    victim: Link,
    pattern: GainPattern,
    topo: Topology,
    beams: Beamset | None = None,
) -> tuple[float, float]:
    """(Gt, Gr) dB pair seen on the interferer-tx -> victim-rx propagation path.

    The interferer's transmitter aims at its own receiver; the victim's
    receiver aims at its own transmitter.
    """
    if beams is not None:
        gt = antenna_gain(beams.off_angle(interferer.tx, victim.rx, topo), pattern)
        gr = antenna_gain(beams.off_angle(victim.rx, interferer.tx, topo), pattern)
        return gt, gr
    gt = antenna_gain(
        off_boresight_angle(interferer.tx, interferer.rx, victim.rx, topo), pattern
    )
    gr = antenna_gain(
        off_boresight_angle(victim.rx, victim.tx, interferer.tx, topo), pattern
    )
    return gt, gr


def interference_power(
    victim: Link,
    interferers: set[Link] | frozenset[Link] | list[Link],
    powers: dict[Link, float],
    params: ChannelParams,
    topo: Topology,
    pattern: GainPattern | None = None,
    beams: Beamset | None = None,
) -> float:
    """Aggregate interference at the victim's receiver, in mW.

    Each interferer contributes with the off-boresight gains of its own
    beam alignment (an explicit beam set may be passed; by default every
    link's endpoints aim at each other).  Contributions sum linearly and are
    scaled by the MUI factor.  Interferers adjacent to the victim are
    rejected: half-duplex nodes cannot interfere with a link they take part
    in.
    """
    pattern = pattern or pattern_for(params)
    total = 0.0
    for other in sorted(interferers):
        if other == victim:
            raise ValueError("victim listed among interferers")
        if other.adjacent(victim):
            raise ValueError(f"{other} is adjacent to victim {victim}; cannot be concurrent")
        gt, gr = cross_gain(other, victim, pattern, topo, beams)
        total += received_power(other.tx, victim.rx, gt, gr, powers[other], params, topo)
    return params.mui_factor * total


def link_rate(
    link: Link,
    interference: float,
    pt: float,
    params: ChannelParams,
    topo: Topology,
    pattern: GainPattern | None = None,
) -> float:
    """Achievable rate in bit/s with both antennas aligned on the link."""
    if pt < 0 or interference < 0:
        raise ValueError("power and interference must be non-negative")
    pattern = pattern or pattern_for(params)
    pr = received_power(link.tx, link.rx, pattern.g0_db, pattern.g0_db, pt, params, topo)
    sinr = pr / (params.noise_power + interference)
    return params.eta * params.bandwidth * math.log2(1.0 + sinr)
