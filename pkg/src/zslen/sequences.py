"""Zero-sum sequences over a support set and the enumeration of atoms.

A sequence is a finite multiset over a fixed, sorted support; atoms are the
minimal zero-sum sequences.  ``enumerate_atoms`` walks the tree of zero-sum-
free sequences in canonical element order, maintaining the set of achievable
subsequence sums as a bitmask over group elements.  A sorted sequence ``S``
is an atom exactly when its sum vanishes and the prefix obtained by dropping
its last element is zero-sum free, so every atom is emitted exactly once,
from its own maximal proper prefix.

Zero-sum-free sequences acquire a fresh subsequence sum with every appended
element, which bounds the search depth by ``|G| - 1`` independently of any
configured cap.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .config import ResourceConfig, default_config
from .errors import BudgetExceededError, InputError
from .groups import AbelianGroup, Element


@dataclass(frozen=True)
class SupportSet:
    """Sorted, duplicate-free subset of a group (zero permitted)."""

    group: AbelianGroup
    elements: tuple[Element, ...]

    @staticmethod
    def of(group: AbelianGroup, elements: Iterable[Element | tuple[int, ...] | list[int]]) -> "SupportSet":
        canon = sorted({group.element(tuple(e)) for e in elements})
        if not canon:
            raise InputError("support set must be nonempty")
        return SupportSet(group, tuple(canon))

    @property
    def is_symmetric(self) -> bool:
        """True iff the support is closed under negation."""
        have = set(self.elements)
        return all(self.group.neg(g) in have for g in self.elements)

    @property
    def contains_zero(self) -> bool:
        return self.group.zero() in self.elements

    def index_of(self, g: Element) -> int:
        return self.elements.index(g)

    def mask(self) -> int:
        """Bitmask of element indices within the full group enumeration."""
        m = 0
        for g in self.elements:
            m |= 1 << self.group.index_of(g)
        return m

    def negated(self) -> "SupportSet":
        return SupportSet.of(self.group, [self.group.neg(g) for g in self.elements])

    def __str__(self) -> str:
        return "{" + ",".join(format_element(g) for g in self.elements) + "}"


@dataclass(frozen=True)
class GSequence:
    """Multiset over a support set, stored as aligned multiplicities."""

    support: SupportSet
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if len(self.multiplicities) != len(self.support.elements):
            raise InputError("multiplicity vector does not match support size")
        if any(m < 0 for m in self.multiplicities):
            raise InputError("multiplicities must be nonnegative")

    @staticmethod
    def of(support: SupportSet, counts: dict[Element, int]) -> "GSequence":
        idx = {g: i for i, g in enumerate(support.elements)}
        mults = [0] * len(support.elements)
        for g, m in counts.items():
            g = support.group.element(g)
            if g not in idx:
                raise InputError(f"element {g} not in support")
            mults[idx[g]] += m
        return GSequence(support, tuple(mults))

    @property
    def length(self) -> int:
        return sum(self.multiplicities)

    def sigma(self) -> Element:
        """Sum of the sequence in the group."""
        G = self.support.group
        total = G.zero()
        for g, m in zip(self.support.elements, self.multiplicities):
            total = G.add(total, G.scalar_mul(m, g))
        return total

    def is_zero_sum(self) -> bool:
        return self.sigma() == self.support.group.zero()

    def v(self, g: Element) -> int:
        """Multiplicity of ``g``."""
        g = self.support.group.element(g)
        try:
            return self.multiplicities[self.support.index_of(g)]
        except ValueError:
            return 0

    def supp(self) -> tuple[Element, ...]:
        return tuple(g for g, m in zip(self.support.elements, self.multiplicities) if m)

    def supp_mask(self) -> int:
        m = 0
        for g, mult in zip(self.support.elements, self.multiplicities):
            if mult:
                m |= 1 << self.support.group.index_of(g)
        return m

    def mul(self, other: "GSequence") -> "GSequence":
        if other.support != self.support:
            raise InputError("sequences must share a support set")
        return GSequence(self.support, tuple(a + b for a, b in zip(self.multiplicities, other.multiplicities)))

    def pow(self, k: int) -> "GSequence":
        if k < 0:
            raise InputError("nonnegative powers only")
        return GSequence(self.support, tuple(k * m for m in self.multiplicities))

    def negated(self) -> "GSequence":
        """The sequence of negated elements, over the negated support."""
        G = self.support.group
        counts = {G.neg(g): m for g, m in zip(self.support.elements, self.multiplicities) if m}
        if not counts:
            return GSequence(self.support, tuple(0 for _ in self.multiplicities))
        neg_support = self.support if self.support.is_symmetric else self.support.negated()
        return GSequence.of(neg_support, counts)

    def restricted(self, support: SupportSet) -> "GSequence":
        """Re-express over another support containing every present element."""
        counts = {g: m for g, m in zip(self.support.elements, self.multiplicities) if m}
        return GSequence.of(support, counts)

    def __str__(self) -> str:
        parts = [
            f"{format_element(g)}^{m}" if m != 1 else format_element(g)
            for g, m in zip(self.support.elements, self.multiplicities)
            if m
        ]
        return " · ".join(parts) if parts else "(empty)"


class AtomSet:
    """A complete list of atoms over a support, with its Davenport constant."""

    def __init__(self, support: SupportSet, atoms: Iterable[GSequence]):
        self.support = support
        self.atoms = tuple(sorted(atoms, key=lambda a: (a.length, a.multiplicities)))
        self.davenport = max((a.length for a in self.atoms), default=0)
        # flat views used by the length/kernel machinery
        self.mult_vectors = tuple(a.multiplicities for a in self.atoms)
        self.lengths = tuple(a.length for a in self.atoms)
        self.supp_masks = tuple(a.supp_mask() for a in self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def restrict_to_mask(self, mask: int) -> list[int]:
        """Indices of atoms whose support lies inside ``mask``."""
        return [i for i, m in enumerate(self.supp_masks) if m & ~mask == 0]


def is_zero_sum(seq: GSequence) -> bool:
    return seq.is_zero_sum()


def _achievable_sums(group: AbelianGroup, items: list[tuple[Element, int]]) -> set[Element]:
    """Sums of all nonempty sub-multisets of ``items``."""
    sums: set[Element] = set()
    for g, m in items:
        for _ in range(m):
            sums = sums | {group.add(s, g) for s in sums} | {g}
    return sums


def is_atom(seq: GSequence) -> bool:
    """True iff the sequence is a minimal nonempty zero-sum sequence."""
    if seq.length == 0 or not seq.is_zero_sum():
        return False
    if seq.length == 1:
        return True
    # drop one copy of the last present element; atom iff the rest is
    # zero-sum free (any proper zero-sum part could be chosen to avoid
    # a single fixed copy)
    G = seq.support.group
    items = [(g, m) for g, m in zip(seq.support.elements, seq.multiplicities) if m]
    g_last, m_last = items[-1]
    items[-1] = (g_last, m_last - 1)
    if items[-1][1] == 0:
        items.pop()
    return G.zero() not in _achievable_sums(G, items)


def _mask_shift_transforms(group: AbelianGroup, elements: tuple[Element, ...]):
    """Bit permutations realizing s -> s + g on subsum masks.

    Group elements are enumerated in mixed radix, so adding a fixed g rotates
    every coordinate independently; each nonzero coordinate becomes one pair
    of masked shifts (non-wrapping bits move up, wrapping bits move down).
    """
    inv = group.invariant_factors
    n = group.order()
    full = (1 << n) - 1
    block = []
    b = 1
    for nj in reversed(inv):
        block.append(b)
        b *= nj
    block.reverse()
    out = []
    for g in elements:
        steps = []
        for r, nj, width in zip(g, inv, block):
            if r == 0:
                continue
            period = nj * width
            low = (nj - r) * width
            pattern = (1 << low) - 1
            keep = 0
            for start in range(0, n, period):
                keep |= pattern << start
            steps.append((keep, r * width, full & ~keep, low))
        out.append(tuple(steps))
    return out


def enumerate_atoms(
    support: SupportSet,
    *,
    config: ResourceConfig | None = None,
) -> AtomSet:
    """Enumerate every atom supported in ``support``.

    Depth-first over sorted zero-sum-free sequences; a node emits an atom when
    the completing element (the negated running sum) lies in the support at or
    after the node's last position.  Raises :class:`BudgetExceededError` when
    the configured atom or node caps are hit, never returning a truncated set.
    """
    cfg = config or default_config()
    G = support.group
    n = G.order()
    max_len = min(cfg.max_length or n, n)
    zero_idx = G.index_of(G.zero())
    zero_bit = 1 << zero_idx
    sup_idx = [G.index_of(g) for g in support.elements]
    k = len(sup_idx)

    neg_of = [G.index_of(G.neg(e)) for e in G.elements()]
    add_to = [[G.index_of(G.add(e, g)) for e in G.elements()] for g in support.elements]
    shifts = _mask_shift_transforms(G, support.elements)

    # position of each group element inside the support, -1 if absent
    pos_of = [-1] * n
    for p, gi in enumerate(sup_idx):
        pos_of[gi] = p

    atoms: list[tuple[int, ...]] = []
    counts = [0] * k
    nodes = 0

    def emit(p: int):
        counts[p] += 1
        atoms.append(tuple(counts))
        counts[p] -= 1
        if len(atoms) > cfg.max_atoms:
            raise BudgetExceededError("atom count", cfg.max_atoms)

    def dfs(last_pos: int, sigma_idx: int, subs: int, length: int):
        nonlocal nodes
        nodes += 1
        if nodes > cfg.max_nodes:
            raise BudgetExceededError("enumeration nodes", cfg.max_nodes)
        p = pos_of[neg_of[sigma_idx]]
        if p >= 0 and p >= last_pos and length + 1 <= max_len:
            emit(p)
        if length + 1 >= max_len:
            return
        for p in range(max(last_pos, 0), k):
            gi = sup_idx[p]
            shifted = subs
            for keep, left, wrap, right in shifts[p]:
                shifted = ((shifted & keep) << left) | ((shifted & wrap) >> right)
            nm = subs | shifted | (1 << gi)
            if nm & zero_bit:
                continue  # a zero-sum subsequence appeared: not extendable
            counts[p] += 1
            dfs(p, add_to[p][sigma_idx], nm, length + 1)
            counts[p] -= 1

    dfs(-1, zero_idx, 0, 0)
    return AtomSet(support, (GSequence(support, m) for m in atoms))


def full_support(group: AbelianGroup) -> SupportSet:
    return SupportSet.of(group, group.elements())


def max_length_atoms(group: AbelianGroup, *, config: ResourceConfig | None = None) -> list[GSequence]:
    """All atoms over the full group of length exactly the Davenport constant."""
    if group.order() < 3:
        raise InputError("maximal-length atoms need a group of order >= 3")
    atom_set = enumerate_atoms(full_support(group), config=config)
    return [a for a in atom_set if a.length == atom_set.davenport]


def davenport_constant(group: AbelianGroup, *, config: ResourceConfig | None = None) -> int:
    return enumerate_atoms(full_support(group), config=config).davenport


def g_norm(seq: GSequence, g: Element) -> int:
    """Sum of discrete logs base ``g`` divided by ord(g), for zero-sum input.

    Each element ``h`` of the sequence must lie in the cyclic subgroup
    generated by ``g``; its log is taken in ``[1, ord(g)]`` (the zero element
    counts as a full period).
    """
    G = seq.support.group
    g = G.element(g)
    order = G.element_order(g)
    logs: dict[Element, int] = {}
    cur = g
    for e in range(1, order + 1):
        logs.setdefault(cur, e)
        cur = G.add(cur, g)
    total = 0
    for h, m in zip(seq.support.elements, seq.multiplicities):
        if not m:
            continue
        if h not in logs:
            raise InputError(f"element {h} outside the subgroup generated by {g}")
        total += m * logs[h]
    if total % order:
        raise InputError("norm is only defined for zero-sum sequences")
    return total // order


# -- literals ---------------------------------------------------------------

def format_element(g: Element) -> str:
    if len(g) == 1:
        return str(g[0])
    return "(" + ",".join(str(r) for r in g) + ")"


def _split_top_level(text: str) -> list[str]:
    """Split on commas that are not inside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise InputError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise InputError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


_TUPLE = re.compile(r"^\(([-\d,\s]*)\)$")


def parse_element(group: AbelianGroup, text: str) -> Element:
    text = text.strip()
    m = _TUPLE.match(text)
    if m:
        coords = [int(t) for t in m.group(1).split(",") if t.strip()]
        return group.element(coords)
    try:
        value = int(text)
    except ValueError:
        raise InputError(f"bad element literal {text!r}") from None
    if group.rank() != 1:
        raise InputError(f"element {text!r} needs {group.rank()} coordinates, e.g. (a,b)")
    return group.element((value,))


def parse_support(group: AbelianGroup, text: str) -> SupportSet:
    """Parse e.g. ``1,3,7,9`` or ``(1,0),(0,1),(1,1)``."""
    return SupportSet.of(group, [parse_element(group, t) for t in _split_top_level(text)])


def parse_sequence(group: AbelianGroup, text: str) -> GSequence:
    """Parse e.g. ``1^10,9^10`` into a sequence over its own support."""
    counts: dict[Element, int] = {}
    for token in _split_top_level(text):
        if "^" in token:
            elem_text, _, mult_text = token.rpartition("^")
            try:
                mult = int(mult_text)
            except ValueError:
                raise InputError(f"bad multiplicity in {token!r}") from None
            if mult < 0:
                raise InputError(f"negative multiplicity in {token!r}")
        else:
            elem_text, mult = token, 1
        g = parse_element(group, elem_text)
        counts[g] = counts.get(g, 0) + mult
    if not counts:
        raise InputError("empty sequence literal")
    support = SupportSet.of(group, counts.keys())
    return GSequence.of(support, counts)
