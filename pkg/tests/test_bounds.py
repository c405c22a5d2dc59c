import random
from fractions import Fraction

from securegroupcast import (KeyConfig, aligned_2of5_key_size, bw_converse,
                             exact_capacity, priority_check, rate_converse,
                             report, set_of)


# -- rate converse ---------------------------------------------------------

def test_rate_converse_unicast_example(ex1):
    assert rate_converse(ex1) == 5  # min(6, 5, 6)


def test_rate_converse_2of4_example(ex3):
    assert rate_converse(ex3) == 5  # min(5, 5, 5, 5)


def test_rate_converse_zero_when_eavesdropper_knows_everything():
    config = KeyConfig.of(3, [1], {(1, 2): 4})
    assert rate_converse(config) == 0


# -- bandwidth converse ---------------------------------------------------------

def test_bw_converse_2of4_example(ex3):
    assert bw_converse(ex3, 5).value == 9


def test_bw_converse_symmetric_example(ex4):
    assert bw_converse(ex4, 6).value == 10


def test_bw_converse_zero_rate(ex3):
    assert bw_converse(ex3, 0).value == 0


def test_bw_converse_multicast_example(ex2):
    assert bw_converse(ex2, 3).value == 6


def test_bw_converse_fig4(fig4):
    assert bw_converse(fig4, Fraction(5, 3)).value == Fraction(10, 3)


def test_bw_converse_at_least_rate_for_positive_rate(ex1, ex2, ex3, ex4, fig4):
    for config in (ex1, ex2, ex3, ex4, fig4):
        r = rate_converse(config)
        if r > 0:
            assert bw_converse(config, r).value >= r


# -- exact capacity dispatch -------------------------------------------------------

def test_exact_unicast(ex1):
    got = exact_capacity(ex1)
    assert (got.setting, got.C, got.beta_star) == ("unicast", 5, 5)


def test_exact_multicast_k4(ex2):
    got = exact_capacity(ex2)
    assert (got.setting, got.C, got.beta_star) == ("multicast", 3, 6)


def test_exact_2of4(ex3):
    got = exact_capacity(ex3)
    assert (got.setting, got.C, got.beta_star) == ("groupcast_2of4", 5, 9)


def test_exact_symmetric(ex4):
    got = exact_capacity(ex4)
    assert (got.setting, got.C, got.beta_star) == ("symmetric", 6, 10)


def test_exact_aligned_2of5(fig4):
    got = exact_capacity(fig4)
    assert got.setting == "aligned_2of5"
    assert got.C == Fraction(5, 3)
    assert got.beta_star == Fraction(10, 3)


def test_exact_aligned_2of5_scaled(fig4):
    got = exact_capacity(fig4.scaled(3))
    assert got.C == 5 and got.beta_star == 10  # integral at key size 3


def test_aligned_2of5_detector_on_relabelings(fig4):
    for perm in [{1: 2, 2: 1, 3: 4, 4: 5, 5: 3}, {1: 1, 2: 2, 3: 5, 4: 3, 5: 4}]:
        detected = aligned_2of5_key_size(fig4.relabeled(perm))
        assert detected is not None and detected[0] == 1


def test_aligned_2of5_detector_rejects_near_misses(fig4):
    # unequal sizes
    cfg = KeyConfig.of(5, [1, 2], {(1,): 2, (1, 2, 3): 1, (1, 4, 5): 1,
                                   (2, 4): 1, (2, 5): 1})
    assert aligned_2of5_key_size(cfg) is None
    # wrong subset structure
    cfg = KeyConfig.of(5, [1, 2], {(1,): 1, (1, 2, 3): 1, (1, 4, 5): 1,
                                   (2, 4): 1, (3, 5): 1})
    assert aligned_2of5_key_size(cfg) is None


def test_exact_none_for_open_shapes():
    config = KeyConfig.of(5, [1, 2], {(1,): 1, (1, 2, 3): 2, (2, 4): 1})
    assert exact_capacity(config) is None


def test_multicast_beta_unknown_for_k5_unequal():
    config = KeyConfig.of(5, [1, 2, 3, 4], {(1,): 1, (2,): 2, (1, 2): 1})
    got = exact_capacity(config)
    assert got.setting == "multicast"
    assert got.beta_star is None


def test_multicast_beta_equal_conditional_entropies():
    config = KeyConfig.of(5, [1, 2, 3, 4], {(1, 2): 1, (3, 4): 1, (1, 3): 1,
                                            (2, 4): 1, (1, 4): 1, (2, 3): 1})
    got = exact_capacity(config)
    assert got.setting == "multicast"
    assert got.C == 3
    assert got.beta_star == 6  # all secure keys counted once


def test_multicast_k4_formula_matches_sum_when_equal():
    # equal conditional entropies force l2 = l1 + l13 - l23, l3 = l1 + l12 - l23
    config = KeyConfig.of(4, [1, 2, 3], {(1,): 2, (2,): 2, (3,): 1, (1, 2): 1,
                                         (1, 3): 2, (2, 3): 2, (1, 2, 3): 1})
    got = exact_capacity(config)
    assert got.beta_star == 2 + 2 + 1 + 1 + 2 + 2 + 1


# -- gap diagnostics -------------------------------------------------------------------

def test_gap_flagged_on_aligned_topology(fig4):
    diag = priority_check(fig4)
    assert diag.gap
    assert diag.rate_upper == 2
    assert diag.exact.C == Fraction(5, 3)


def test_no_gap_on_unicast(ex1):
    diag = priority_check(ex1)
    assert not diag.gap


def test_no_gap_all_zero_keys():
    config = KeyConfig.of(3, [1], {})
    diag = priority_check(config)
    assert not diag.gap and diag.exact.C == 0


def test_report_fields(ex3):
    rep = report(ex3)
    assert rep.rate_upper == 5
    assert rep.bw_lower == 9
    assert rep.exact.C == 5
    assert not rep.gap


# -- structural properties ----------------------------------------------------------------

def random_config(rng, k=None):
    k = k or rng.randint(2, 5)
    qualified = rng.sample(range(1, k + 1), rng.randint(1, k - 1))
    keys = {}
    for m in range(1, 1 << k):
        size = rng.randint(0, 3)
        if size:
            keys[set_of(m)] = size
    return KeyConfig.of(k, qualified, keys)


def test_homogeneity_of_bounds():
    rng = random.Random(12)
    for _ in range(40):
        config = random_config(rng)
        t = rng.randint(0, 4)
        scaled = config.scaled(t)
        assert rate_converse(scaled) == t * rate_converse(config)
        r = rate_converse(config)
        assert bw_converse(scaled, t * r).value == t * bw_converse(config, r).value
        exact = exact_capacity(config)
        exact_t = exact_capacity(scaled)
        if exact is not None and t > 0:
            assert exact_t is not None
            assert exact_t.C == t * exact.C
            if exact.beta_star is not None:
                assert exact_t.beta_star == t * exact.beta_star


def test_relabel_invariance_of_bounds():
    rng = random.Random(34)
    from itertools import permutations
    for _ in range(40):
        config = random_config(rng)
        k = config.K
        perms = [dict(zip(range(1, k + 1), p))
                 for p in permutations(range(1, k + 1))]
        qualified_preserving = [p for p in perms
                                if {p[q] for q in config.qualified} == config.qualified]
        perm = rng.choice(qualified_preserving)
        relabeled = config.relabeled(perm)
        assert rate_converse(relabeled) == rate_converse(config)
        r = rate_converse(config)
        assert bw_converse(relabeled, r).value == bw_converse(config, r).value
        a, b = exact_capacity(config), exact_capacity(relabeled)
        assert (a is None) == (b is None)
        if a is not None:
            assert (a.C, a.beta_star) == (b.C, b.beta_star)


def test_exact_capacity_never_exceeds_rate_converse():
    rng = random.Random(56)
    for _ in range(60):
        config = random_config(rng)
        exact = exact_capacity(config)
        if exact is not None:
            assert exact.C <= rate_converse(config)


def test_bw_lower_never_exceeds_beta_star():
    rng = random.Random(78)
    for _ in range(60):
        config = random_config(rng)
        exact = exact_capacity(config)
        if exact is not None and exact.beta_star is not None:
            assert bw_converse(config, exact.C).value <= exact.beta_star
