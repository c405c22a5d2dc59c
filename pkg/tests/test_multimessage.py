import pytest

from securegroupcast.synth import (InfeasibleRates, min_bandwidth, multimessage,
                                   oracle_multimessage, region_violation,
                                   verify_multimessage)


def test_boundary_tuple_case1():
    ms = multimessage((1, 1, 1), (1, 1, 1))
    assert ms.bandwidth == 3
    assert verify_multimessage(ms).ok
    assert oracle_multimessage(ms).ok


def test_infeasible_by_first_inequality():
    assert region_violation((1, 1, 1), (1, 1, 2)) == "R1 + R12 <= L1 + L12"
    with pytest.raises(InfeasibleRates) as err:
        multimessage((1, 1, 1), (1, 1, 2))
    assert err.value.inequality == "R1 + R12 <= L1 + L12"


def test_case2_bandwidth_and_oracle():
    # common message outgrows the common key: overflow bits ride twice
    sizes, rates = (2, 2, 1), (1, 1, 2)
    ms = multimessage(sizes, rates)
    assert ms.bandwidth == 1 + 1 + 2 * 2 - 1 == min_bandwidth(sizes, rates)
    rep = verify_multimessage(ms)
    assert rep.ok
    orep = oracle_multimessage(ms)
    assert orep.ok
    assert orep.states == 1 << (1 + 1 + 2 + 2 + 2 + 1)


def test_private_rate_caps():
    # large common key keeps the sum constraints slack, isolating the caps
    assert region_violation((1, 2, 5), (2, 0, 0)) == "R1 <= L1"
    assert region_violation((1, 2, 5), (0, 3, 0)) == "R2 <= L2"
    assert region_violation((1, 2, 0), (-1, 0, 0)) == "rates must be nonnegative"


def test_zero_rates_trivial_scheme():
    ms = multimessage((1, 1, 1), (0, 0, 0))
    assert ms.bandwidth == 0
    assert verify_multimessage(ms).ok


def test_case1_uses_no_private_overflow():
    ms = multimessage((3, 3, 3), (2, 1, 3))
    assert ms.bandwidth == 2 + 1 + 3
    assert verify_multimessage(ms).ok
    assert oracle_multimessage(ms).ok


def test_leakage_detected_on_sabotage():
    # sending W1 in the clear must show up in both verifiers
    import numpy as np
    from securegroupcast.fmatrix import FMatrix
    from securegroupcast.gf import Field
    from securegroupcast.synth.multimessage import MultiMessageScheme
    f2 = Field(2)
    bad = MultiMessageScheme(
        sizes=(1, 1, 1), rates=(1, 0, 0),
        A1=FMatrix(f2, np.array([[1]])), A2=FMatrix.zeros(f2, 1, 0),
        A12=FMatrix.zeros(f2, 1, 0), B=FMatrix.zeros(f2, 1, 3))
    rep = verify_multimessage(bad)
    assert rep.leakage["W1->2"] == 1
    assert rep.leakage["W1W2W12->3"] == 1
    orep = oracle_multimessage(bad)
    assert orep.leakage["W1->2"] == pytest.approx(1.0)
