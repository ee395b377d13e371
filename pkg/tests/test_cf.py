import random
from fractions import Fraction
from math import gcd

import pytest

from zslen.cf import (
    cf_odd_length,
    cf_regular,
    exceptional_witness,
    min_delta_pair,
    min_delta_sym_quad,
    scan_exceptional,
    sufficient_filters,
)
from zslen.delta_rho import delta_rho_star
from zslen.errors import EngineMismatchError, InputError
from zslen.groups import cyclic
from zslen.lengths import min_delta
from zslen.sequences import SupportSet


def test_cf_regular_examples():
    assert cf_regular(10, 3).quotients == (3, 3)
    assert cf_regular(8, 3).quotients == (2, 1, 2)
    assert cf_regular(17, 4).quotients == (4, 4)
    assert cf_regular(7, 1).quotients == (7,)
    with pytest.raises(InputError):
        cf_regular(10, 4)
    with pytest.raises(InputError):
        cf_regular(3, 5)


def test_cf_odd_length_examples():
    assert cf_odd_length(10, 3).quotients == (3, 2, 1)
    assert cf_odd_length(8, 3).quotients == (2, 1, 2)
    assert cf_odd_length(5, 2).quotients == (2, 1, 1)


def test_cf_reconstruction():
    # dense small range plus a seeded sample up to 10^4
    cases = [(n, a) for n in range(2, 151) for a in range(1, n) if gcd(a, n) == 1]
    rng = random.Random(60)
    for _ in range(3000):
        n = rng.randint(2, 10_000)
        a = rng.randint(1, n - 1)
        if gcd(a, n) == 1:
            cases.append((n, a))
    for n, a in cases:
        reg = cf_regular(n, a)
        odd = cf_odd_length(n, a)
        assert reg.value() == Fraction(n, a)
        assert odd.value() == Fraction(n, a)
        assert reg.is_regular
        assert odd.has_odd_length
        assert all(q >= 1 for q in reg.quotients[1:])


def test_min_delta_pair_examples_match_kernel():
    for n, a, want in [(10, 3, 2), (8, 3, 1), (13, 5, 1)]:
        assert min_delta_pair(n, a) == want
        support = SupportSet.of(cyclic(n), [(1,), (a,)])
        assert min_delta(support) == want


def test_min_delta_pair_bound():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(5, 200)
        a = rng.randint(2, n - 1)
        if gcd(a, n) != 1:
            continue
        value = min_delta_pair(n, a)
        if a == n - 1:
            assert value == n - 2  # support degenerates to {g, -g}
        else:
            assert value < n - 2


def test_min_delta_sym_quad_examples():
    assert min_delta_sym_quad(10, 3) == 2
    assert min_delta_sym_quad(17, 4) == 3
    assert min_delta_sym_quad(8, 3) == 1
    with pytest.raises(InputError):
        min_delta_sym_quad(10, 5)  # a >= n/2 rejected; caller substitutes n-a


def test_exceptional_witness():
    assert exceptional_witness(8) is None
    assert exceptional_witness(17) == 4
    assert exceptional_witness(10) == 3
    assert exceptional_witness(18) is None


def test_witness_matches_star_set_for_small_orders():
    # no witness <=> the star set is exactly {1, n-2}; n = 10 has both a
    # witness and a star set missing 1, which still satisfies the equivalence
    for n in range(8, 27):
        star = delta_rho_star(cyclic(n))
        no_witness = exceptional_witness(n) is None
        assert no_witness == (star == frozenset({1, n - 2})), (n, sorted(star))
        # a witness value always shows up as an extra star member
        a = exceptional_witness(n)
        if a is not None and n % 2 == 0:
            assert min_delta_sym_quad(n, a) in star


def test_scan_small_ranges():
    assert scan_exceptional(8, 9).exceptional == (8,)
    report = scan_exceptional(10, 11)
    assert report.exceptional == ()
    assert report.witnesses == {10: 3}
    with pytest.raises(InputError):
        scan_exceptional(4, 9)


def test_scan_engines_agree_and_shard_invariance():
    base = scan_exceptional(8, 600, engine="both")
    solo = scan_exceptional(8, 600, engine="e1", shards=7)
    inverted = scan_exceptional(8, 600, engine="e2")
    assert base.exceptional == solo.exceptional == inverted.exceptional
    assert base.witnesses == solo.witnesses == inverted.witnesses
    assert base.digest() == solo.digest()


def test_scan_checkpoint_resume(tmp_path):
    ck = tmp_path / "scan.ck"
    first = scan_exceptional(8, 400, engine="e1", shards=4, checkpoint=ck)
    lines = ck.read_text().splitlines()
    assert len(lines) == 4
    for line in lines:
        lo, hi, digest = line.split()
        assert len(digest) == 64
    # resume: completed shards are reused, results identical
    second = scan_exceptional(8, 400, engine="e1", shards=4, checkpoint=ck)
    assert first.exceptional == second.exceptional
    assert first.witnesses == second.witnesses
    # corrupt sidecar forces recomputation, not wrong reuse
    data = ck.with_suffix(ck.suffix + ".data")
    data.write_text(data.read_text().replace('"exceptional": [', '"exceptional": [99999, ', 1))
    third = scan_exceptional(8, 400, engine="e1", shards=4, checkpoint=ck)
    assert third.exceptional == first.exceptional


def test_filters():
    assert "cond1" in sufficient_filters(16)  # 15 composite
    assert sufficient_filters(26) == frozenset({"cond1"})  # 25 composite; 23 prime
    assert sufficient_filters(17) == frozenset({"cond6"})  # 16 is a square
    assert sufficient_filters(14) == frozenset()  # 13 and 11 prime, no pattern
    with pytest.raises(InputError):
        sufficient_filters(4)


def test_filters_imply_witness():
    report = scan_exceptional(8, 800, engine="e1")
    for n in range(8, 801, 2):
        if sufficient_filters(n) & {"cond1", "cond2", "cond3", "cond4"}:
            assert n in report.witnesses, n


def test_engine_mismatch_is_detectable(monkeypatch):
    import zslen.cf as cf_module

    def broken(hi):
        return {}

    monkeypatch.setattr(cf_module, "_scan_inverted", broken)
    with pytest.raises(EngineMismatchError):
        scan_exceptional(8, 40, engine="both")


def test_scan_odd_lower_bound_and_random_subranges():
    rng = random.Random(3)
    report = scan_exceptional(9, 33)
    assert report.exceptional == (12, 14, 18, 20, 30, 32)
    for _ in range(5):
        lo = rng.randint(8, 900)
        hi = lo + rng.randint(0, 300)
        a = scan_exceptional(lo, hi, engine="e1")
        b = scan_exceptional(lo, hi, engine="e2")
        assert a.exceptional == b.exceptional and a.witnesses == b.witnesses
