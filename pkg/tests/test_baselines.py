import math

import pytest

from mmwcast.audit import audit_powered, audit_serial
from mmwcast.baselines import (
    d2d_serial,
    serial_energy_continuous,
    serial_rate,
    serial_unicast,
)
from mmwcast.metrics import energy_consumption
from mmwcast.model import BS, ChannelParams, Link, MulticastDemand, Topology, build_topology, ue
from mmwcast.pathplan import plan_paths


def _topo(positions, side=500.0):
    group = frozenset(n for n in positions if not n.is_bs)
    return Topology(positions=positions, region_side=side, group=group, seed=0)


def test_single_user_slot_budget(params, demand):
    topo = _topo({BS: (0.0, 0.0), ue(0): (10.0, 0.0)})
    plan, t_serial = serial_unicast(topo, topo.group, demand, params)
    rate = serial_rate(ue(0), params, topo)
    assert t_serial == math.ceil(demand.bits / (rate * params.slot)) == 1794
    assert plan.power[Link(BS, ue(0))] == params.p_max


def test_equidistant_users_share_equally(params, demand):
    topo = _topo({BS: (0.0, 0.0), ue(0): (10.0, 0.0), ue(1): (0.0, 10.0)})
    plan, t_serial = serial_unicast(topo, topo.group, demand, params)
    slots = [plan.slots[l] for l in plan.order]
    assert slots[0] == slots[1]
    assert t_serial == 2 * slots[0]


def test_five_user_plan_orders_users(five_user_topo, params, demand):
    plan, _ = serial_unicast(five_user_topo, five_user_topo.group, demand, params)
    assert [l.rx for l in plan.order] == [ue(i) for i in range(5)]
    assert all(l.tx == BS for l in plan.order)


def test_serial_energy_is_full_power_slot_quantized(params, demand):
    topo = _topo({BS: (0.0, 0.0), ue(0): (10.0, 0.0), ue(1): (0.0, 17.0)})
    plan, _ = serial_unicast(topo, topo.group, demand, params)
    expected = sum(params.p_max * plan.slots[l] * params.slot for l in plan.order)
    assert energy_consumption(plan, params) == pytest.approx(expected, rel=1e-15)
    # the continuous value is a lower bound of the quantized one per user
    for link in plan.order:
        cont = serial_energy_continuous(link.rx, demand, params, topo)
        assert cont <= params.p_max * plan.slots[link] * params.slot * (1 + 1e-12)


def test_d2d_single_hop_cap_matches_serial_unicast(params, demand):
    topo = build_topology(20.0, 8, seed=21)
    plan, t_serial = serial_unicast(topo, topo.group, demand, params)
    powered, paths = d2d_serial(topo, topo.group, demand, params, h_max=1)
    assert powered.total_slots() == t_serial
    # identical per-user slots and full-power transmission
    for link, lp in powered.links.items():
        assert powered.slots[lp.pairing_index] == plan.slots[Link(BS, link.rx)]
        assert lp.power == pytest.approx(params.p_max, rel=1e-12)
    ec_serial = energy_consumption(plan, params)
    ec_d2d = energy_consumption(powered, params)
    assert ec_d2d == pytest.approx(ec_serial, rel=1e-9)


def test_d2d_two_hop_chain(params, demand):
    topo = _topo({BS: (0.0, 0.0), ue(0): (8.0, 0.0), ue(1): (11.0, 0.0)})
    powered, paths = d2d_serial(topo, topo.group, demand, params, h_max=2)
    assert len(powered.schedule.pairings) == 2
    assert all(len(p.links) == 1 for p in powered.schedule.pairings)
    relay = Link(ue(0), ue(1))
    lp = powered.links[relay]
    assert powered.slots[lp.pairing_index] >= lp.slots_needed


def test_d2d_five_user_layout_serializes_path_links(five_user_topo, params, demand):
    powered, paths = d2d_serial(five_user_topo, five_user_topo.group, demand, params, h_max=6)
    assert len(powered.schedule.pairings) == 5
    assert sorted(powered.links) == sorted(paths.all_links())


def test_d2d_beats_serial_when_all_hops_shorter(params, demand):
    # relay hops strictly shorter than the corresponding BS distances
    for seed in range(6):
        topo = build_topology(20.0, 10, seed=seed)
        powered, paths = d2d_serial(topo, topo.group, demand, params, h_max=6)
        hops_shorter = all(
            topo.distance(l.tx, l.rx) < topo.distance(BS, l.rx)
            for l in paths.all_links()
            if not l.tx.is_bs
        )
        if not hops_shorter:
            continue
        plan, _ = serial_unicast(topo, topo.group, demand, params)
        assert energy_consumption(powered, params) <= energy_consumption(plan, params) * (
            1 + 1e-12
        )


def test_both_baselines_pass_validators(params, demand):
    topo = build_topology(20.0, 9, seed=33)
    plan, t_serial = serial_unicast(topo, topo.group, demand, params)
    serial_audit = audit_serial(plan, topo.group, demand, params, topo, t_serial)
    assert serial_audit.passed, serial_audit.detail

    powered, paths = d2d_serial(topo, topo.group, demand, params, h_max=6)
    powered_audit = audit_powered(powered, paths, topo.group, demand, params, topo)
    assert powered_audit.passed, powered_audit.detail


def test_empty_group_rejected(params, demand):
    topo = build_topology(20.0, 3, seed=0)
    with pytest.raises(ValueError):
        serial_unicast(topo, frozenset(), demand, params)
