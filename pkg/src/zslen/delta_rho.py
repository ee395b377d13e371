"""The central invariant: exact star set, sandwich bounds, theorem dispatch.

The star set collects the minimum distance of every support realizable by an
element of extreme elasticity.  Such supports are exactly the unions of the
(negation-closed) supports of maximal-length atoms, so the scan walks distinct
unions of those support classes.  Two facts keep the walk small:

* enlarging a support divides its minimum distance, so once a union reaches
  value 1 every superset is also 1 and needs no visit;
* over a negation-closed support, the minimum distance divides ``|U| - 2``
  for every atom ``U`` (pair off each element with its negative), so a running
  gcd of atom lengths settles most unions to 1 without touching the kernel.

Values produced by either shortcut coincide with the kernel-lattice value;
the property suite checks this on every build.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .config import ResourceConfig, default_config
from .errors import BudgetExceededError, InputError
from .groups import AbelianGroup, cyclic, direct_sum_with_embeddings, make_group
from .lengths import min_delta_of_atoms
from .sequences import GSequence, SupportSet, enumerate_atoms, full_support


def gcd_closure(values) -> frozenset[int]:
    """All gcds of nonempty subsets (equivalently: pairwise-gcd closure)."""
    vals = {int(v) for v in values}
    if not vals:
        raise InputError("gcd closure of an empty set")
    if any(v < 1 for v in vals):
        raise InputError("gcd closure needs positive integers")
    while True:
        new = {gcd(a, b) for a in vals for b in vals} | vals
        if new == vals:
            return frozenset(vals)
        vals = new


def divisor_closure(values) -> frozenset[int]:
    """Every positive integer dividing some member."""
    vals = set(values)
    out = set()
    for v in vals:
        for d in range(1, int(v) + 1):
            if v % d == 0:
                out.add(d)
    return frozenset(out)


@dataclass(frozen=True)
class QualifyingSupport:
    """A support realizable by an element of extreme elasticity, together
    with the maximal-length atoms witnessing every element of it."""

    support: SupportSet
    generating_atoms: tuple[GSequence, ...]


@dataclass(frozen=True)
class DeltaRhoResult:
    star: frozenset[int]
    exact: frozenset[int] | None
    upper: frozenset[int]
    provenance: str
    conjectured: frozenset[int] | None = None


class _MaxAtomScan:
    """Shared state for scans over unions of maximal-length atom supports."""

    def __init__(self, group: AbelianGroup, config: ResourceConfig):
        if group.order() < 3:
            raise InputError("scan needs a group of order >= 3")
        self.group = group
        self.cfg = config
        self.atoms = enumerate_atoms(full_support(group), config=config)
        self.davenport = self.atoms.davenport
        elems = group.elements()
        self._neg_idx = [group.index_of(group.neg(e)) for e in elems]
        self.max_indices = [
            i for i, length in enumerate(self.atoms.lengths) if length == self.davenport
        ]
        class_masks = sorted(
            {self._sym_mask(self.atoms.supp_masks[i]) for i in self.max_indices}
        )
        self.class_masks = class_masks

    def _sym_mask(self, mask: int) -> int:
        out = mask
        m = mask
        while m:
            low = m & -m
            out |= 1 << self._neg_idx[low.bit_length() - 1]
            m ^= low
        return out

    def support_of_mask(self, mask: int) -> SupportSet:
        elems = self.group.elements()
        members = []
        m = mask
        while m:
            low = m & -m
            members.append(elems[low.bit_length() - 1])
            m ^= low
        return SupportSet.of(self.group, members)

    def min_delta_of_mask(self, mask: int) -> int | None:
        """Minimum distance of the (negation-closed) union ``mask``.

        The gcd-of-lengths shortcut settles the value 1 early; anything else
        falls through to the exact kernel computation.
        """
        indices = self.atoms.restrict_to_mask(mask)
        g = 0
        for i in indices:
            length = self.atoms.lengths[i]
            if length >= 3:
                g = gcd(g, length - 2)
                if g == 1:
                    return 1
        return min_delta_of_atoms(self.atoms, indices)


def qualifying_supports(
    group: AbelianGroup, *, config: ResourceConfig | None = None
) -> list[QualifyingSupport]:
    """All distinct supports of elements with extreme elasticity.

    Materializes every union of the negation-closed supports of maximal-length
    atoms.  Raises a budget error when the number of support classes makes the
    subset walk infeasible; the star-set computation does not go through this
    entry point and survives much larger groups.
    """
    cfg = config or default_config()
    scan = _MaxAtomScan(group, cfg)
    k = len(scan.class_masks)
    if k > 20 or 2**k > cfg.max_supports:
        raise BudgetExceededError("qualifying support subsets", cfg.max_supports)
    unions: dict[int, None] = {}
    masks = scan.class_masks
    union_of: list[int] = [0] * (1 << k)
    for s in range(1, 1 << k):
        low = s & -s
        union_of[s] = union_of[s ^ low] | masks[low.bit_length() - 1]
        unions.setdefault(union_of[s])
    out = []
    for mask in sorted(unions):
        support = scan.support_of_mask(mask)
        gens = tuple(
            scan.atoms.atoms[i]
            for i in scan.max_indices
            if scan._sym_mask(scan.atoms.supp_masks[i]) & ~mask == 0
        )
        out.append(QualifyingSupport(support, gens))
    return out


def delta_rho_star(group: AbelianGroup, *, config: ResourceConfig | None = None) -> frozenset[int]:
    """Exact star set by enumeration over qualifying supports.

    Walks distinct unions of support classes breadth-first, pruning every
    superset of a union whose value is 1 (their value is forced to 1, which
    is already recorded).
    """
    cfg = config or default_config()
    if group.order() <= 2:
        return frozenset()
    scan = _MaxAtomScan(group, cfg)
    values: set[int] = set()
    seen: set[int] = set()
    frontier: list[int] = []

    def visit(mask: int):
        seen.add(mask)
        if len(seen) > cfg.max_supports:
            raise BudgetExceededError("distinct support unions", cfg.max_supports)
        value = scan.min_delta_of_mask(mask)
        if value is None:
            return
        values.add(value)
        if value != 1:
            frontier.append(mask)

    for mask in scan.class_masks:
        if mask not in seen:
            visit(mask)
    while frontier:
        current, frontier = frontier, []
        for u in current:
            for s in scan.class_masks:
                merged = u | s
                if merged != u and merged not in seen:
                    visit(merged)
    return frozenset(values)


_EXCEPTIONAL_CYCLIC_ORDERS = (4, 6, 10)


def one_in_delta_rho(group: AbelianGroup) -> bool:
    """Whether 1 occurs; false exactly for the cyclic orders 4, 6, 10."""
    if group.order() < 3:
        raise InputError("defined for groups of order >= 3")
    return not (group.is_cyclic and group.order() in _EXCEPTIONAL_CYCLIC_ORDERS)


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
        p += 1 if p == 2 else 2
    return True


def delta_rho(group: AbelianGroup, *, config: ResourceConfig | None = None) -> DeltaRhoResult:
    """Star set, divisor-closure upper bound, and the exact set when a
    structure theorem settles it; otherwise sandwich bounds only."""
    cfg = config or default_config()
    if group.order() <= 2:
        empty: frozenset[int] = frozenset()
        return DeltaRhoResult(empty, empty, empty, "trivial")
    factors = group.invariant_factors
    r = group.rank()
    if group.is_cyclic:
        star = delta_rho_star(group, config=cfg)
        return DeltaRhoResult(star, star, divisor_closure(star), "theorem-cyclic")
    if group.is_elementary_2:
        exact = frozenset({1, r - 1})
        return DeltaRhoResult(exact, exact, divisor_closure(exact), "theorem-elem2")
    one = frozenset({1})
    if r == 2:
        return DeltaRhoResult(one, one, one, "theorem-rank2")
    if r == 3 and factors[0] == 2 and factors[1] == 2 and factors[2] >= 4:
        return DeltaRhoResult(one, one, one, "theorem-C2C2C2n")
    if r >= 2 and len(set(factors)) == 1 and _is_prime_power(factors[0]) and factors[0] >= 3:
        return DeltaRhoResult(one, one, one, "theorem-ppower")
    star = delta_rho_star(group, config=cfg)
    conjectured = frozenset({1}) if group.order() > 4 else None
    return DeltaRhoResult(star, None, divisor_closure(star), "sandwich-only", conjectured)


def realize_delta_set(d_list: list[int]) -> tuple[AbelianGroup, list[SupportSet]]:
    """A group and supports realizing the given distances blockwise.

    Each distance d gets its own block: d = 1 uses the order-8 cyclic group
    with support {g, 3g}; d >= 2 uses d-1 independent elements of order 2d
    plus the negated sum.  Blocks are assembled into the canonical direct sum
    and the supports mapped through the assembly embedding; the star set of
    the combined support monoid is the gcd closure of the input list.
    """
    if not d_list:
        raise InputError("need at least one distance")
    blocks: list[AbelianGroup] = []
    local: list[list[tuple[int, ...]]] = []
    for d in d_list:
        if d < 1:
            raise InputError(f"distances must be >= 1, got {d}")
        if d == 1:
            blocks.append(cyclic(8))
            local.append([(1,), (3,)])
        else:
            block = make_group([2 * d] * (d - 1))
            gens = []
            for i in range(d - 1):
                e = [0] * (d - 1)
                e[i] = 1
                gens.append(tuple(e))
            e0 = block.neg(block.element([1] * (d - 1)))
            local.append([e0, *gens])
            blocks.append(block)
    total, embed = direct_sum_with_embeddings(blocks)
    supports = [
        SupportSet.of(total, [embed[i](g) for g in gens]) for i, gens in enumerate(local)
    ]
    return total, supports
