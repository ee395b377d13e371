import random

import pytest

from zslen.errors import InputError
from zslen.groups import (
    AbelianGroup,
    cyclic,
    direct_sum_with_embeddings,
    make_group,
    parse_group,
)

from oracles import subgroup_generated


def test_make_group_normalizes_to_invariant_chain():
    assert make_group([4]).invariant_factors == (4,)
    assert make_group([2, 3]).invariant_factors == (6,)
    assert make_group([2, 2, 6]).invariant_factors == (2, 2, 6)
    assert make_group([12, 60]).invariant_factors == (12, 60)
    assert make_group([4, 6]).invariant_factors == (2, 12)


def test_make_group_drops_trivial_factors_and_rejects_nonpositive():
    assert make_group([1, 5, 1]).invariant_factors == (5,)
    assert make_group([]).is_trivial
    with pytest.raises(InputError):
        make_group([0])
    with pytest.raises(InputError):
        make_group([-3])


def test_structure_constants():
    G = make_group([2, 2, 6])
    assert G.order() == 24
    assert G.exponent() == 6
    assert G.rank() == 3
    assert G.dstar() == 8  # 1 + 1 + 1 + 5
    assert cyclic(4).exponent() == 4 and cyclic(4).rank() == 1


def test_parse_group():
    assert parse_group("C4") == cyclic(4)
    assert parse_group("c2xc2xc6").invariant_factors == (2, 2, 6)
    assert parse_group("2x3") == cyclic(6)
    with pytest.raises(InputError):
        parse_group("D4")
    with pytest.raises(InputError):
        parse_group("C4+C2")


def test_element_order():
    G = make_group([2, 4])
    assert G.element_order((1, 2)) == 2
    assert cyclic(10).element_order((1,)) == 10
    C8 = cyclic(8)
    assert C8.element_order(C8.scalar_mul(3, (1,))) == 8
    assert cyclic(5).element_order((0,)) == 1


def test_arithmetic_examples():
    C5 = cyclic(5)
    assert C5.neg((0,)) == (0,)
    assert C5.add(C5.scalar_mul(2, (1,)), C5.scalar_mul(3, (1,))) == (0,)
    V = make_group([2, 2])
    assert V.neg((1, 1)) == (1, 1)
    with pytest.raises(InputError):
        C5.add((1,), (1, 0))


def test_generates():
    C4 = cyclic(4)
    assert not C4.generates([(2,)])
    V = make_group([2, 2])
    assert V.generates([(1, 0), (0, 1)])
    C6 = cyclic(6)
    assert C6.generates([(2,), (3,)])
    # cross-check against a plain fixed-point closure
    assert len(subgroup_generated(C6, [(2,), (3,)])) == 6


@pytest.mark.parametrize("factors", [[5], [2, 4], [2, 2, 2], [3, 9], [12]])
def test_random_element_properties(factors):
    rng = random.Random(1234)
    G = make_group(factors)
    elems = G.elements()
    for _ in range(60):
        g = rng.choice(elems)
        h = rng.choice(elems)
        k = rng.choice(elems)
        assert G.exponent() % G.element_order(g) == 0
        assert G.neg(G.neg(g)) == g
        assert G.add(g, h) == G.add(h, g)
        assert G.add(G.add(g, h), k) == G.add(g, G.add(h, k))
    assert G.dstar() <= G.order()


def test_element_enumeration_is_lexicographic():
    G = make_group([2, 3])
    # C6 normalized: single factor, residues 0..5
    assert G.elements() == tuple((r,) for r in range(6))
    H = AbelianGroup((2, 2))
    assert H.elements() == ((0, 0), (0, 1), (1, 0), (1, 1))


def test_direct_sum_embeddings_are_isomorphic_images():
    blocks = [cyclic(8), make_group([4])]
    total, maps = direct_sum_with_embeddings(blocks)
    assert total.invariant_factors == (4, 8)
    images = []
    for blk, embed in zip(blocks, maps):
        for i in range(blk.rank()):
            e = tuple(1 if j == i else 0 for j in range(blk.rank()))
            img = embed(e)
            assert total.element_order(img) == blk.invariant_factors[i]
            images.append(img)
    assert len(subgroup_generated(total, images)) == total.order()


def test_direct_sum_embedding_merges_primes_in_shared_slot():
    # both prime parts of a C6 generator land in the same invariant factor
    total, maps = direct_sum_with_embeddings([make_group([6, 6])])
    g0 = maps[0]((1, 0))
    g1 = maps[0]((0, 1))
    assert total.invariant_factors == (6, 6)
    assert total.element_order(g0) == 6
    assert total.element_order(g1) == 6
    assert len(subgroup_generated(total, [g0, g1])) == 36


def test_trivial_group_is_flagged_and_safe():
    G = parse_group("C1")
    assert G.is_trivial and G.order() == 1
    assert G.exponent() == 1 and G.rank() == 0
    from zslen.delta_rho import delta_rho

    r = delta_rho(G)
    assert r.exact == frozenset() and r.provenance == "trivial"
