import math

import pytest
from hypothesis import given, strategies as st

from mmwcast.channel import link_rate
from mmwcast.model import BS, ChannelParams, Link, MulticastDemand, Topology, ue
from mmwcast.power import (
    InfeasibleScheduleError,
    allocate_slots,
    link_power,
    power_control,
    rate_at_pmax,
    slots_needed,
)
from mmwcast.pathplan import plan_paths
from mmwcast.scheduler import Pairing, schedule_links


def _topo(positions, side=500.0):
    group = frozenset(n for n in positions if not n.is_bs)
    return Topology(positions=positions, region_side=side, group=group, seed=0)


@pytest.fixture(scope="module")
def ten_meter():
    return _topo({BS: (0.0, 0.0), ue(0): (10.0, 0.0)})


@pytest.fixture(scope="module")
def two_link_pairing_topo():
    # two parallel non-adjacent links close enough to interfere
    return _topo(
        {
            BS: (0.0, 0.0),
            ue(0): (10.0, 0.0),
            ue(1): (0.0, 12.0),
            ue(2): (10.0, 12.0),
        }
    )


def test_singleton_rate_equals_clean_link_rate(ten_meter):
    params = ChannelParams()
    link = Link(BS, ue(0))
    pairing = Pairing(index=1, links=frozenset({link}))
    assert rate_at_pmax(link, pairing, params, ten_meter) == pytest.approx(
        link_rate(link, 0.0, params.p_max, params, ten_meter), rel=1e-15
    )
    assert rate_at_pmax(link, pairing, params, ten_meter) == pytest.approx(
        30984144108.118618, rel=1e-12
    )


def test_interferer_strictly_lowers_rate(two_link_pairing_topo):
    params = ChannelParams()
    a = Link(BS, ue(0))
    b = Link(ue(1), ue(2))
    alone = rate_at_pmax(a, Pairing(index=1, links=frozenset({a})), params, two_link_pairing_topo)
    shared = rate_at_pmax(
        a, Pairing(index=1, links=frozenset({a, b})), params, two_link_pairing_topo
    )
    assert shared < alone


def test_membership_required(ten_meter):
    params = ChannelParams()
    link = Link(BS, ue(0))
    with pytest.raises(ValueError):
        rate_at_pmax(link, Pairing(index=1, links=frozenset()), params, ten_meter)


def test_slots_needed_is_ceiling_of_demand_over_throughput(ten_meter):
    params = ChannelParams()
    link = Link(BS, ue(0))
    pairing = Pairing(index=1, links=frozenset({link}))
    rate = rate_at_pmax(link, pairing, params, ten_meter)

    got = slots_needed(link, pairing, MulticastDemand(bits=1e9), params, ten_meter)
    assert got == math.ceil(1e9 / (rate * params.slot)) == 1794

    # demand exactly one slot's worth -> exactly one slot
    one_slot = MulticastDemand(bits=rate * params.slot)
    assert slots_needed(link, pairing, one_slot, params, ten_meter) == 1

    # doubling the demand doubles the need, up to one ceiling unit
    d1 = slots_needed(link, pairing, MulticastDemand(bits=3.3e9), params, ten_meter)
    d2 = slots_needed(link, pairing, MulticastDemand(bits=6.6e9), params, ten_meter)
    assert 2 * d1 - 1 <= d2 <= 2 * d1


def test_allocation_single_pairing_takes_everything():
    slots, rebalanced = allocate_slots({1: 17}, t_serial=400)
    assert slots == {1: 400}
    assert not rebalanced


def test_allocation_symmetric_split():
    slots, _ = allocate_slots({1: 5, 2: 5}, t_serial=10)
    assert slots == {1: 5, 2: 5}


def test_allocation_proportional_with_remainder():
    slots, _ = allocate_slots({1: 1, 2: 2}, t_serial=10)
    assert slots == {1: 3, 2: 7}


def test_allocation_promotes_zero_shares():
    slots, rebalanced = allocate_slots({1: 1, 2: 2000}, t_serial=100)
    assert slots[1] >= 1
    assert sum(slots.values()) == 100
    assert rebalanced


def test_allocation_budget_too_small():
    with pytest.raises(InfeasibleScheduleError):
        allocate_slots({1: 5, 2: 5, 3: 5}, t_serial=2)


def test_allocation_rejects_bad_requirements():
    with pytest.raises(ValueError):
        allocate_slots({}, t_serial=5)
    with pytest.raises(ValueError):
        allocate_slots({1: 0}, t_serial=5)


@given(
    reqs=st.lists(st.integers(min_value=1, max_value=5000), min_size=1, max_size=12),
    extra=st.integers(min_value=0, max_value=10_000),
)
def test_allocation_always_consumes_budget_exactly(reqs, extra):
    requirements = {k + 1: r for k, r in enumerate(reqs)}
    t_serial = len(reqs) + extra
    slots, _ = allocate_slots(requirements, t_serial)
    assert sum(slots.values()) == t_serial
    assert all(v >= 1 for v in slots.values())


def test_power_at_exact_need_is_pmax(ten_meter):
    params = ChannelParams()
    link = Link(BS, ue(0))
    pairing = Pairing(index=1, links=frozenset({link}))
    demand = MulticastDemand(bits=1e9)
    t_need = slots_needed(link, pairing, demand, params, ten_meter)
    lp = link_power(link, pairing, t_need, demand, params, ten_meter)
    assert not lp.clamped
    assert lp.power == pytest.approx(params.p_max, rel=1e-12)
    assert lp.power <= params.p_max


def test_power_value_pinned_at_double_slots(ten_meter):
    params = ChannelParams()
    link = Link(BS, ue(0))
    pairing = Pairing(index=1, links=frozenset({link}))
    demand = MulticastDemand(bits=1e9)
    lp = link_power(link, pairing, 2 * 1794, demand, params, ten_meter)
    # frozen independent evaluation of the closed form (rate halves, noise-only)
    assert lp.power == pytest.approx(0.048067439840288155, rel=1e-12)


def test_power_strictly_decreasing_and_vanishing(ten_meter):
    params = ChannelParams()
    link = Link(BS, ue(0))
    pairing = Pairing(index=1, links=frozenset({link}))
    demand = MulticastDemand(bits=1e9)
    t_need = slots_needed(link, pairing, demand, params, ten_meter)
    powers = [
        link_power(link, pairing, d, demand, params, ten_meter).power
        for d in (t_need, 2 * t_need, 4 * t_need, 16 * t_need, 256 * t_need)
    ]
    assert all(a > b for a, b in zip(powers, powers[1:]))
    assert powers[-1] < 1e-3


def test_energy_decreasing_in_slots(ten_meter):
    params = ChannelParams()
    link = Link(BS, ue(0))
    pairing = Pairing(index=1, links=frozenset({link}))
    demand = MulticastDemand(bits=1e9)
    t_need = slots_needed(link, pairing, demand, params, ten_meter)
    energies = [
        link_power(link, pairing, d, demand, params, ten_meter).power * d * params.slot
        for d in range(t_need, t_need + 40)
    ]
    assert all(a > b for a, b in zip(energies, energies[1:]))


def test_clamp_reports_shortfall(ten_meter):
    params = ChannelParams()
    link = Link(BS, ue(0))
    pairing = Pairing(index=1, links=frozenset({link}))
    demand = MulticastDemand(bits=1e9)
    t_need = slots_needed(link, pairing, demand, params, ten_meter)
    lp = link_power(link, pairing, t_need - 10, demand, params, ten_meter)
    assert lp.clamped
    assert lp.power == params.p_max
    expected_short = demand.bits - lp.rate_pmax * (t_need - 10) * params.slot
    assert lp.shortfall_bits == pytest.approx(expected_short, rel=1e-9)


def test_full_power_control_pass(params, demand):
    from mmwcast.baselines import serial_unicast
    from mmwcast.model import build_topology

    topo = build_topology(20.0, 10, seed=12)
    paths = plan_paths(topo, topo.group, h_max=6)
    schedule = schedule_links(paths, params, topo)
    _, t_serial = serial_unicast(topo, topo.group, demand, params)
    powered = power_control(schedule, demand, params, topo, t_serial)

    assert powered.total_slots() == t_serial
    assert set(powered.links) == set(paths.all_links())
    assert not powered.rebalanced
    for lp in powered.links.values():
        assert 0.0 < lp.power <= params.p_max * (1 + 1e-12)
    # proportional rule: every pairing before the last takes its floor share
    reqs = {
        p.index: max(powered.links[l].slots_needed for l in p.links)
        for p in powered.schedule.pairings
    }
    total = sum(reqs.values())
    indices = sorted(reqs)
    for k in indices[:-1]:
        assert powered.slots[k] == reqs[k] * t_serial // total
    text = powered.to_text(params)
    assert text.startswith(f"t_serial {t_serial}")


def test_power_control_monotone_workload(ten_meter):
    # a slot count below the full-power need must clamp, one above must not
    params = ChannelParams()
    link = Link(BS, ue(0))
    pairing = Pairing(index=1, links=frozenset({link}))
    demand = MulticastDemand(bits=1e9)
    t_need = slots_needed(link, pairing, demand, params, ten_meter)
    assert link_power(link, pairing, t_need - 1, demand, params, ten_meter).clamped
    assert not link_power(link, pairing, t_need + 1, demand, params, ten_meter).clamped
