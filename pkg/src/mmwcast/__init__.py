"""mmwcast: multicast scheduling simulator for a mmWave small cell.

Pipeline: relay path planning -> contention-graph concurrent scheduling ->
proportional slot allocation and power control, compared against serial
baselines under seeded Monte-Carlo trials.
"""

from .model import (
    BS,
    ChannelParams,
    Link,
    MulticastDemand,
    NodeId,
    Topology,
    build_topology,
    ue,
)
from .channel import (
    Beamset,
    GainPattern,
    antenna_gain,
    link_rate,
    off_boresight_angle,
    received_power,
)
from .pathplan import Path, PathSet, plan_paths
from .contention import ContentionGraph, build_graph, edge_weight
from .scheduler import Pairing, Schedule, greedy_mis, schedule_links
from .power import PoweredSchedule, allocate_slots, link_power, power_control, rate_at_pmax, slots_needed
from .baselines import SerialPlan, d2d_serial, serial_unicast
from .metrics import RunReport, TrainingParams, d2d_ratio, energy_consumption, energy_ratio, training_overhead
from .harness import Experiment, run_experiment, run_trial

__all__ = [
    "BS",
    "Beamset",
    "ChannelParams",
    "ContentionGraph",
    "Experiment",
    "GainPattern",
    "Link",
    "MulticastDemand",
    "NodeId",
    "Pairing",
    "Path",
    "PathSet",
    "PoweredSchedule",
    "RunReport",
    "Schedule",
    "SerialPlan",
    "Topology",
    "TrainingParams",
    "allocate_slots",
    "antenna_gain",
    "build_graph",
    "build_topology",
    "d2d_ratio",
    "d2d_serial",
    "edge_weight",
    "energy_consumption",
    "energy_ratio",
    "greedy_mis",
    "link_power",
    "link_rate",
    "off_boresight_angle",
    "plan_paths",
    "power_control",
    "rate_at_pmax",
    "received_power",
    "run_experiment",
    "run_trial",
    "schedule_links",
    "serial_unicast",
    "slots_needed",
    "training_overhead",
    "ue",
]
