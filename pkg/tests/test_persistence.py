from __future__ import annotations

import math
import random

import pytest

from idealtda.complexes import Filtration, SimplicialComplex, vr_filtration
from idealtda.ideals import sr_associated_primes
from idealtda.linalg import GF2, QQ, PrimeField
from idealtda.monomials import LinearPrime, minimal_primes_squarefree
from idealtda.persistence import (
    NoResurrectionError,
    PrimeInterval,
    betti_numbers,
    betti_profile,
    coverage_report,
    jump_witness,
    ph_barcode,
    prime_barcode,
    step_associated_primes,
    witness_between_steps,
    _intervals_from_runs,
)
from idealtda.ideals import stanley_reisner
from idealtda.verify import random_metric

ROOT2 = math.sqrt(2.0)


@pytest.fixture
def three_point_filtration(three_point_dist):
    return vr_filtration(three_point_dist, max_dim=2)


def test_sr_prime_barcode_three_points(three_point_filtration):
    bc = prime_barcode(three_point_filtration, "SR")
    by_prime = {iv.prime: iv for iv in bc.intervals}
    assert by_prime[LinearPrime((2,))].birth == 1.0
    assert by_prime[LinearPrime((2,))].death == ROOT2
    assert by_prime[LinearPrime((3,))].death == ROOT2
    # the three vertex-epoch primes die when the first edges arrive
    for pair in [(1, 2), (1, 3), (2, 3)]:
        assert by_prime[LinearPrime(pair)].birth == 0.0
        assert by_prime[LinearPrime(pair)].death == 1.0
    # full-simplex epoch is emitted and flagged
    zero = by_prime[LinearPrime(())]
    assert zero.birth == ROOT2 and zero.death is None
    assert zero.is_zero_ideal_epoch
    # exactly those two primes die at sqrt(2)
    dying = {iv.prime for iv in bc.intervals if iv.death == ROOT2}
    assert dying == {LinearPrime((2,)), LinearPrime((3,))}


def test_edge_prime_barcode_three_points(three_point_filtration):
    bc = prime_barcode(three_point_filtration, "EDGE")
    by_prime = {iv.prime: iv for iv in bc.intervals}
    assert by_prime[LinearPrime(())].death == 1.0  # edgeless epoch
    assert by_prime[LinearPrime((1,))].birth == 1.0
    assert by_prime[LinearPrime((1,))].death == ROOT2
    assert by_prime[LinearPrime((2, 3))].death is None


def test_single_step_barcode_is_all_infinite(demo_clique_complex):
    f = Filtration.single(demo_clique_complex, t=0.25)
    bc = prime_barcode(f, "SR")
    assert {iv.prime for iv in bc.intervals} == sr_associated_primes(demo_clique_complex)
    assert all(iv.birth == 0.25 and iv.death is None for iv in bc.intervals)


def test_prime_barcode_invariants_on_random_filtrations():
    rng = random.Random(0)
    for _ in range(20):
        n = rng.randint(2, 6)
        f = vr_filtration(random_metric(rng, n))
        for kind in ("SR", "EDGE"):
            bc = prime_barcode(f, kind)
            for iv in bc.intervals:
                assert iv.death is None or iv.birth < iv.death
            # exactly one interval per prime
            primes = [iv.prime for iv in bc.intervals]
            assert len(primes) == len(set(primes))


def test_step_associated_primes_matches_transversal_oracle():
    rng = random.Random(1)
    for _ in range(10):
        n = rng.randint(2, 6)
        f = vr_filtration(random_metric(rng, n))
        per_step = step_associated_primes(f, "SR")
        for (t, K), ass in zip(f.steps, per_step):
            assert ass == minimal_primes_squarefree(stanley_reisner(K))


def test_custom_ideal_family_hook(three_point_filtration):
    bc = prime_barcode(three_point_filtration, ass_fn=sr_associated_primes)
    assert bc.kind == "CUSTOM"
    assert bc.primes() == prime_barcode(three_point_filtration, "SR").primes()


def test_no_resurrection_error_raised_on_corrupt_runs():
    ass = [
        frozenset({LinearPrime((1,))}),
        frozenset(),
        frozenset({LinearPrime((1,))}),
    ]
    with pytest.raises(NoResurrectionError):
        _intervals_from_runs(ass, (0.0, 1.0, 2.0), "SR")


def test_betti_profile_three_points(three_point_filtration):
    prof = betti_profile(three_point_filtration, GF2)
    assert prof.at(0.0, 0) == 3
    assert prof.at(1.0, 0) == 1
    assert prof.at(ROOT2, 0) == 1
    assert prof.at(5.0, 1) == 0
    # contractible from t=1 onward: all higher betti vanish
    assert prof.betti[-1] == (1, 0, 0)


def test_betti_isolated_vertices_and_hollow_triangle():
    K = SimplicialComplex.from_faces(4, [(1,), (2,), (3,), (4,)])
    assert betti_numbers(K, GF2) == [4]
    hollow = SimplicialComplex.from_faces(3, [(1, 2), (1, 3), (2, 3)], close=True)
    assert betti_numbers(hollow, GF2) == [1, 1]
    assert betti_numbers(hollow, QQ) == [1, 1]
    assert betti_numbers(hollow, GF2, reduced=True) == [0, 0, 1]
    filled = SimplicialComplex.from_faces(3, [(1, 2, 3)], close=True)
    assert betti_numbers(filled, GF2) == [1, 0, 0]


def test_betti_fields_agree_on_random_complexes():
    rng = random.Random(2)
    f997 = PrimeField(997)
    for _ in range(15):
        n = rng.randint(1, 6)
        gens = [tuple(sorted(rng.sample(range(1, n + 1), rng.randint(1, min(3, n))))) for _ in range(3)]
        K = SimplicialComplex.from_faces(n, gens + [(1,)], close=True)
        assert betti_numbers(K, GF2) == betti_numbers(K, QQ) == betti_numbers(K, f997)


def test_ph_barcode_three_points(three_point_filtration):
    ph = ph_barcode(three_point_filtration)
    bars0 = list(ph.by_dim[0])
    assert bars0.count((0.0, 1.0)) == 2
    assert bars0.count((0.0, None)) == 1
    # the 1-cycle is created and filled at the same parameter: no dim-1 bar
    assert 1 not in ph.by_dim
    # sqrt(2) is an SR prime endpoint but no PH endpoint
    assert all(abs(e - ROOT2) > 1e-9 for e in ph.finite_endpoints())


def test_ph_barcode_single_vertex():
    f = vr_filtration([[0.0]])
    ph = ph_barcode(f)
    assert ph.by_dim == {0: ((0.0, None),)}


def test_ph_bar_counts_match_betti_profile():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(2, 6)
        f = vr_filtration(random_metric(rng, n))
        ph = ph_barcode(f)
        prof = betti_profile(f, GF2)
        top = f.final().max_dim
        for t in f.params():
            for k in range(top + 1):
                assert ph.count_at(t, k) == prof.at(t, k)


def test_ph_bar_counts_match_betti_profile_over_gf5():
    rng = random.Random(13)
    f5 = PrimeField(5)
    for _ in range(5):
        f = vr_filtration(random_metric(rng, rng.randint(2, 5)))
        ph = ph_barcode(f, f5)
        prof = betti_profile(f, f5)
        for t in f.params():
            for k in range(f.final().max_dim + 1):
                assert ph.count_at(t, k) == prof.at(t, k)


def test_jump_witness_three_points(three_point_filtration):
    w = jump_witness(three_point_filtration, 0, 1.0)
    assert w is not None
    assert w.level == "associated"
    assert w.prime == LinearPrime((2,))
    # witness at a non-critical interior parameter: nothing changes
    assert jump_witness(three_point_filtration, 0, 0.5) is None


def test_jump_witness_validates_range(three_point_filtration):
    with pytest.raises(ValueError):
        jump_witness(three_point_filtration, 0, 0.0)
    with pytest.raises(ValueError):
        jump_witness(three_point_filtration, 0, 2.0)


def test_jump_witness_none_on_constant_segment(three_point_dist):
    # truncating to vertices only freezes the complex at every threshold
    f = vr_filtration(three_point_dist, max_dim=0)
    assert jump_witness(f, 0, 1.0) is None


def test_every_betti_jump_has_witness():
    rng = random.Random(4)
    for _ in range(15):
        n = rng.randint(2, 6)
        f = vr_filtration(random_metric(rng, n))
        prof = betti_profile(f, GF2)
        for i in range(1, len(f.steps)):
            if prof.betti[i] != prof.betti[i - 1]:
                assert witness_between_steps(f, i) is not None


def test_coverage_report_fixtures(three_point_dist, three_point_filtration):
    bc = prime_barcode(three_point_filtration, "SR")
    rep = coverage_report(three_point_dist, bc)
    assert rep.ok and rep.pairs_checked == 3
    two = [[0.0, 3.0], [3.0, 0.0]]
    rep2 = coverage_report(two, prime_barcode(vr_filtration(two), "SR"))
    assert rep2.ok and rep2.pairs_checked == 1


def test_coverage_report_random_and_violation_detection():
    rng = random.Random(5)
    for _ in range(10):
        dist = random_metric(rng, rng.randint(2, 5))
        f = vr_filtration(dist)
        assert coverage_report(dist, prime_barcode(f, "SR")).ok
    # a barcode missing an endpoint is reported
    fake = prime_barcode(vr_filtration([[0.0, 2.0], [2.0, 0.0]]), "SR")
    bad = coverage_report([[0.0, 9.0], [9.0, 0.0]], fake)
    assert not bad.ok and bad.violations == ((1, 2, 4.5),)


def test_prime_interval_alive_at():
    iv = PrimeInterval(LinearPrime((1,)), 1.0, 2.0, "SR")
    assert iv.alive_at(1.0) and iv.alive_at(1.5)
    assert not iv.alive_at(2.0) and not iv.alive_at(0.5)
    forever = PrimeInterval(LinearPrime((1,)), 1.0, None, "SR")
    assert forever.alive_at(100.0)
