import pytest

from mmwcast.model import BS, ChannelParams, MulticastDemand, Topology, ue

# Five-user layout reproducing the walked-through example: three relay paths
# BS->D->A, BS->E->C, BS->B and the pairing trace {BS->D}, {BS->E, D->A},
# {BS->B, E->C}.  Spacing is tens of meters so the no-contention pairs stay
# below the default interference threshold.
_SCALE = 15.0
FIG_POSITIONS = {
    BS: (10.0 * _SCALE, 10.0 * _SCALE),
    ue(0): (10.4 * _SCALE, 8.6 * _SCALE),    # "D"
    ue(1): (12.0 * _SCALE, 11.8 * _SCALE),   # "E"
    ue(2): (7.05 * _SCALE, 10.52 * _SCALE),  # "B"
    ue(3): (11.6 * _SCALE, 8.2 * _SCALE),    # "A"
    ue(4): (13.6 * _SCALE, 11.6 * _SCALE),   # "C"
}


@pytest.fixture(scope="session")
def five_user_topo() -> Topology:
    return Topology(
        positions=dict(FIG_POSITIONS),
        region_side=300.0,
        group=frozenset(ue(i) for i in range(5)),
        seed=0,
    )


@pytest.fixture(scope="session")
def params() -> ChannelParams:
    return ChannelParams()


@pytest.fixture(scope="session")
def demand() -> MulticastDemand:
    return MulticastDemand()
