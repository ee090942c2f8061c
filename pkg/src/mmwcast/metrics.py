"""Evaluation metrics and beam-training overhead accounting."""

from __future__ import annotations

from dataclasses import dataclass, field

from .audit import AuditResult
from .baselines import SerialPlan
from .model import ChannelParams
from .pathplan import PathSet
from .power import PoweredSchedule

Plan = PoweredSchedule | SerialPlan


@dataclass(frozen=True)
class TrainingParams:
    """Beam-training frame timing; defaults follow the short-frame MAC model."""

    rate: float = 2e9               # bit/s
    t_phy: float = 250e-9           # s
    t_sifs: float = 100e-9          # s
    prop_delay: float = 50e-9       # s
    candidate_pairs: int = 10
    training_power: float = 1000.0  # mW (30 dBm)

    @property
    def t_shfr(self) -> float:
        """Short MAC frame air time: PHY header + 14-byte body + propagation."""
        return self.t_phy + 14 * 8 / self.rate + self.prop_delay

    @property
    def t_ack(self) -> float:
        return self.t_shfr


def _link_energies(plan: Plan, params: ChannelParams):
    if isinstance(plan, PoweredSchedule):
        for link in sorted(plan.links):
            yield link, plan.link_energy(link, params)
    else:
        for link in plan.order:
            yield link, plan.link_energy(link, params)


def energy_consumption(plan: Plan, params: ChannelParams) -> float:
    """Total transmit energy of the plan, in mJ."""
    return sum(e for _, e in _link_energies(plan, params))


def energy_ratio(ec_concurrent: float, ec_serial_relay: float) -> float:
    """Concurrent-scheme energy over relay-without-concurrency energy."""
    if ec_serial_relay <= 0:
        raise ValueError("denominator energy must be positive")
    return ec_concurrent / ec_serial_relay


def d2d_ratio(plan: Plan, params: ChannelParams) -> float:
    """Fraction of the plan's energy spent on links transmitted by UEs."""
    total = 0.0
    relayed = 0.0
    for link, energy in _link_energies(plan, params):
        total += energy
        if not link.tx.is_bs:
            relayed += energy
    if total == 0.0:
        return 0.0
    return relayed / total


def training_overhead(paths: PathSet, tp: TrainingParams | None = None) -> tuple[float, float]:
    """(seconds, Joules) of beam training over every relay pair on the paths.

    Per pair: two control frames from the BS announce the candidate beams,
    then each candidate pair costs one probe frame, a SIFS, and an ACK.  Only
    transmit air time draws energy.
    """
    tp = tp or TrainingParams()
    pairs = len(paths.d2d_links())
    time_per_pair = 2 * (tp.t_shfr + tp.t_sifs) + tp.candidate_pairs * (
        tp.t_shfr + tp.t_sifs + tp.t_ack
    )
    air_time_per_pair = 2 * tp.t_shfr + tp.candidate_pairs * (tp.t_shfr + tp.t_ack)
    energy_per_pair = tp.training_power * 1e-3 * air_time_per_pair  # W * s
    return pairs * time_per_pair, pairs * energy_per_pair


@dataclass(frozen=True)
class RunReport:
    """Everything one (scheme, trial) run produces."""

    scheme: str
    seed: int
    ec_mj: float
    d2d_energy_ratio: float
    t_serial: int
    n_pairings: int
    training_time_s: float
    training_energy_j: float
    audit: AuditResult
    shortfall_bits: float
    er: float | None = None          # filled when the relay-serial run is available
    extras: dict[str, float] = field(default_factory=dict)
