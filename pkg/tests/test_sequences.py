import random

import pytest

from zslen.config import ResourceConfig
from zslen.errors import BudgetExceededError, InputError
from zslen.groups import cyclic, make_group
from zslen.sequences import (
    GSequence,
    SupportSet,
    enumerate_atoms,
    full_support,
    g_norm,
    is_atom,
    is_zero_sum,
    max_length_atoms,
    parse_sequence,
    parse_support,
)

from oracles import brute_atoms, brute_is_atom


def seq(group, pairs):
    support = SupportSet.of(group, [g for g, _ in pairs])
    return GSequence.of(support, dict(pairs))


def test_is_zero_sum():
    C5 = cyclic(5)
    sup = SupportSet.of(C5, [(1,)])
    assert is_zero_sum(GSequence(sup, (0,)))  # empty sequence
    assert is_zero_sum(GSequence(sup, (5,)))
    assert not is_zero_sum(GSequence(sup, (4,)))


def test_is_atom_examples():
    C5 = cyclic(5)
    assert is_atom(seq(C5, [((1,), 5)]))
    C4 = cyclic(4)
    assert not is_atom(seq(C4, [((1,), 2), ((3,), 2)]))
    assert is_atom(seq(C4, [((1,), 1), ((3,), 1)]))
    assert is_atom(seq(C4, [((0,), 1)]))
    assert not is_atom(seq(C4, [((0,), 2)]))


@pytest.mark.parametrize("factors,support", [
    ([4], [(1,), (3,)]),
    ([5], [(1,), (2,)]),
    ([6], [(1,), (4,), (3,)]),
    ([2, 2], [(0, 1), (1, 0), (1, 1)]),
    ([8], [(2,), (6,), (0,)]),
])
def test_is_atom_matches_brute_oracle(factors, support):
    G = make_group(factors)
    sup = SupportSet.of(G, support)
    k = len(sup.elements)
    rng = random.Random(99)
    for _ in range(150):
        counts = tuple(rng.randint(0, 4) for _ in range(k))
        got = is_atom(GSequence(sup, counts)) if sum(counts) else False
        assert got == brute_is_atom(sup, counts)


def test_enumerate_atoms_small_symmetric_pair():
    C4 = cyclic(4)
    sup = SupportSet.of(C4, [(1,), (3,)])
    atoms = enumerate_atoms(sup)
    got = {a.multiplicities for a in atoms}
    assert got == {(1, 1), (4, 0), (0, 4)}
    assert atoms.davenport == 4
    assert got == brute_atoms(sup, 4)


@pytest.mark.parametrize("factors,support_size", [
    ([5], 3), ([6], 3), ([7], 2), ([2, 4], 3), ([3, 3], 2), ([9], 2),
])
def test_enumeration_matches_brute_oracle(factors, support_size):
    rng = random.Random(4321)
    G = make_group(factors)
    elems = list(G.elements())
    for _ in range(4):
        sup = SupportSet.of(G, rng.sample(elems, support_size))
        atoms = enumerate_atoms(sup)
        assert {a.multiplicities for a in atoms} == brute_atoms(sup, G.order())


def test_davenport_of_full_groups():
    assert enumerate_atoms(full_support(cyclic(10))).davenport == 10
    assert enumerate_atoms(full_support(make_group([2, 2]))).davenport == 3


def _is_prime_power(n: int) -> bool:
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
        p += 1
    return n > 1


def test_davenport_lower_bound_and_known_equality():
    # equality holds for rank <= 2 and for p-groups; within this pool that
    # covers every group, so the bound is tight throughout
    for factors in ([4], [7], [2, 4], [3, 3], [2, 2, 4], [2, 2, 2], [10]):
        G = make_group(factors)
        D = enumerate_atoms(full_support(G)).davenport
        assert D >= G.dstar()
        if G.rank() <= 2 or _is_prime_power(G.order()):
            assert D == G.dstar()


def test_max_length_atoms_cyclic10():
    atoms = max_length_atoms(cyclic(10))
    assert len(atoms) == 4
    for a in atoms:
        assert a.length == 10
        assert len(a.supp()) == 1
        (g,) = a.supp()
        assert cyclic(10).element_order(g) == 10


def test_max_length_atoms_small():
    V = make_group([2, 2])
    atoms = max_length_atoms(V)
    assert len(atoms) == 1
    assert atoms[0].supp() == ((0, 1), (1, 0), (1, 1))
    assert atoms[0].length == 3
    C3 = cyclic(3)
    atoms = max_length_atoms(C3)
    assert {a.supp()[0] for a in atoms} == {(1,), (2,)}
    assert all(a.length == 3 for a in atoms)


def test_negation_permutes_atoms_of_symmetric_support():
    C8 = cyclic(8)
    sup = SupportSet.of(C8, [(1,), (7,), (3,), (5,)])
    atoms = enumerate_atoms(sup)
    vectors = {a.multiplicities for a in atoms}
    for a in atoms:
        neg = a.negated().restricted(sup)
        assert neg.multiplicities in vectors
        assert neg.length == a.length


def test_g_norm():
    C10 = cyclic(10)
    assert g_norm(seq(C10, [((1,), 10)]), (1,)) == 1
    assert g_norm(seq(C10, [((3,), 10)]), (1,)) == 3
    assert g_norm(seq(C10, [((1,), 7), ((3,), 1)]), (1,)) == 1
    with pytest.raises(InputError):
        g_norm(seq(make_group([2, 4]), [((1, 0), 2)]), (0, 1))


def test_g_norm_integral_on_random_zero_sum():
    rng = random.Random(7)
    C12 = cyclic(12)
    sup = SupportSet.of(C12, [(1,), (5,), (8,), (11,)])
    atoms = enumerate_atoms(sup)
    for _ in range(40):
        total = [0] * len(sup.elements)
        for _ in range(rng.randint(1, 3)):
            pick = rng.choice(atoms.atoms)
            total = [x + y for x, y in zip(total, pick.multiplicities)]
        value = g_norm(GSequence(sup, tuple(total)), (1,))
        assert value >= 0


def test_budget_errors_are_distinct():
    G = cyclic(12)
    with pytest.raises(BudgetExceededError):
        enumerate_atoms(full_support(G), config=ResourceConfig(max_atoms=10))
    with pytest.raises(BudgetExceededError):
        enumerate_atoms(full_support(G), config=ResourceConfig(max_nodes=10))


def test_max_length_cap_restricts_enumeration():
    C10 = cyclic(10)
    sup = SupportSet.of(C10, [(1,), (9,)])
    atoms = enumerate_atoms(sup, config=ResourceConfig(max_length=2))
    assert {a.multiplicities for a in atoms} == {(1, 1)}


def test_parse_support_and_sequence():
    C10 = cyclic(10)
    sup = parse_support(C10, "1,3,7,9")
    assert sup.elements == ((1,), (3,), (7,), (9,))
    assert sup.is_symmetric
    s = parse_sequence(C10, "1^10,9^10")
    assert s.length == 20 and s.is_zero_sum()
    V = make_group([2, 2])
    sup2 = parse_support(V, "(1,0),(0,1),(1,1)")
    assert len(sup2.elements) == 3
    with pytest.raises(InputError):
        parse_support(C10, "1,x")
    with pytest.raises(InputError):
        parse_sequence(V, "3^2")


def test_support_validation():
    C4 = cyclic(4)
    with pytest.raises(InputError):
        SupportSet.of(C4, [])
    sup = SupportSet.of(C4, [(5,), (1,)])  # canonicalized and deduplicated
    assert sup.elements == ((1,),)


def test_products_of_atoms_are_not_atoms():
    rng = random.Random(88)
    for factors in ([6], [2, 4], [3, 3]):
        G = make_group(factors)
        sup = SupportSet.of(G, G.elements())
        atoms = enumerate_atoms(sup)
        for _ in range(30):
            a = rng.choice(atoms.atoms)
            b = rng.choice(atoms.atoms)
            assert not is_atom(a.mul(b))
