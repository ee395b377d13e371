"""Finite abelian groups in invariant-factor form.

A group is a product ``C_{n_1} x ... x C_{n_r}`` with ``n_1 | n_2 | ... | n_r``
and every ``n_i >= 2``; the empty product is the trivial group.  Elements are
tuples of residues, one per factor, always kept componentwise reduced.  The
lexicographic order on residue tuples is the canonical element order used by
every enumeration downstream, so it must never change.

All values here are immutable and all operations pure; concurrent use is
unrestricted.
"""

from __future__ import annotations

import re
from math import gcd, lcm, prod

from .errors import InputError

Element = tuple[int, ...]


def _factorint(n: int) -> dict[int, int]:
    """Prime factorization by trial division (inputs here are small)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _invariant_factors(factors: list[int]) -> list[int]:
    """Normalize an arbitrary cyclic-product presentation to a divisor chain.

    Prime-power components are redistributed so that the largest powers of
    every prime land in the last factor, the next largest in the one before,
    and so on; the result is the unique chain n_1 | ... | n_r.
    """
    by_prime: dict[int, list[int]] = {}
    for n in factors:
        for p, e in _factorint(n).items():
            by_prime.setdefault(p, []).append(e)
    depth = max((len(v) for v in by_prime.values()), default=0)
    chain = []
    for slot in range(depth):
        f = 1
        for p, exps in by_prime.items():
            exps.sort(reverse=True)
            if slot < len(exps):
                f *= p ** exps[slot]
        chain.append(f)
    chain.reverse()
    return chain


class AbelianGroup:
    """A finite abelian group, canonicalized to invariant-factor form."""

    __slots__ = ("invariant_factors", "_elements", "_index")

    def __init__(self, invariant_factors: tuple[int, ...]):
        for a, b in zip(invariant_factors, invariant_factors[1:]):
            if b % a:
                raise InputError(f"not a divisor chain: {invariant_factors}")
        if any(n < 2 for n in invariant_factors):
            raise InputError(f"invariant factors must be >= 2: {invariant_factors}")
        self.invariant_factors = tuple(invariant_factors)
        self._elements: tuple[Element, ...] | None = None
        self._index: dict[Element, int] | None = None

    # -- structure ---------------------------------------------------------

    def order(self) -> int:
        return prod(self.invariant_factors)

    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def rank(self) -> int:
        return len(self.invariant_factors)

    def dstar(self) -> int:
        """1 + sum of (n_i - 1); the classical lower bound for the Davenport
        constant, equal to it for rank <= 2 and for p-groups."""
        return 1 + sum(n - 1 for n in self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    @property
    def is_elementary_2(self) -> bool:
        return bool(self.invariant_factors) and self.exponent() == 2

    def p_rank(self, p: int) -> int:
        return sum(1 for n in self.invariant_factors if n % p == 0)

    # -- elements ----------------------------------------------------------

    def zero(self) -> Element:
        return (0,) * self.rank()

    def element(self, residues: tuple[int, ...] | list[int]) -> Element:
        if len(residues) != self.rank():
            raise InputError(
                f"element has {len(residues)} coordinates, group has rank {self.rank()}"
            )
        return tuple(r % n for r, n in zip(residues, self.invariant_factors))

    def elements(self) -> tuple[Element, ...]:
        """All elements in lexicographic order of residue tuples."""
        if self._elements is None:
            elems = [()]
            for n in self.invariant_factors:
                elems = [e + (r,) for e in elems for r in range(n)]
            self._elements = tuple(elems)
        return self._elements

    def index_of(self, g: Element) -> int:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements())}
        return self._index[g]

    def add(self, g: Element, h: Element) -> Element:
        if len(g) != len(h) or len(g) != self.rank():
            raise InputError("rank mismatch in addition")
        return tuple((a + b) % n for a, b, n in zip(g, h, self.invariant_factors))

    def neg(self, g: Element) -> Element:
        if len(g) != self.rank():
            raise InputError("rank mismatch in negation")
        return tuple((-a) % n for a, n in zip(g, self.invariant_factors))

    def scalar_mul(self, k: int, g: Element) -> Element:
        if len(g) != self.rank():
            raise InputError("rank mismatch in scalar multiplication")
        return tuple((k * a) % n for a, n in zip(g, self.invariant_factors))

    def element_order(self, g: Element) -> int:
        """Least k >= 1 with k*g = 0."""
        return lcm(*(n // gcd(a, n) for a, n in zip(g, self.invariant_factors))) if g else 1

    def generates(self, gens) -> bool:
        """True iff the subgroup generated by ``gens`` is the whole group."""
        return len(self.subgroup(gens)) == self.order()

    def subgroup(self, gens) -> frozenset[Element]:
        """Closure of ``gens`` under addition (breadth-first)."""
        zero = self.zero()
        seen = {zero}
        frontier = [zero]
        gens = [self.element(g) for g in gens]
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    s = self.add(h, g)
                    if s not in seen:
                        seen.add(s)
                        nxt.append(s)
            frontier = nxt
        return frozenset(seen)

    # -- protocol ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AbelianGroup) and self.invariant_factors == other.invariant_factors

    def __hash__(self) -> int:
        return hash(self.invariant_factors)

    def __repr__(self) -> str:
        return f"AbelianGroup({self.invariant_factors})"

    def __str__(self) -> str:
        if self.is_trivial:
            return "C1"
        return "x".join(f"C{n}" for n in self.invariant_factors)


def make_group(factors: list[int] | tuple[int, ...]) -> AbelianGroup:
    """Build a group from any list of cyclic orders.

    Non-chain products are normalized (``[2, 3]`` becomes ``C6``).  Factors
    equal to 1 are dropped; factors below 1 are rejected.  The empty product
    is the (flagged) trivial group.
    """
    cleaned = []
    for f in factors:
        if f < 1:
            raise InputError(f"cyclic factor must be >= 1, got {f}")
        if f > 1:
            cleaned.append(int(f))
    return AbelianGroup(tuple(_invariant_factors(cleaned)))


_GROUP_TOKEN = re.compile(r"^c?(\d+)$", re.IGNORECASE)


def parse_group(text: str) -> AbelianGroup:
    """Parse literals like ``C4`` or ``C2xC2xC6`` (case-insensitive)."""
    parts = text.strip().split("x")
    factors = []
    for part in parts:
        m = _GROUP_TOKEN.match(part.strip())
        if not m:
            raise InputError(f"bad group literal {text!r} (expected e.g. C4 or C2xC2xC6)")
        factors.append(int(m.group(1)))
    return make_group(factors)


def cyclic(n: int) -> AbelianGroup:
    return make_group([n])


def direct_sum_with_embeddings(blocks: list[AbelianGroup]):
    """Direct sum of ``blocks`` in canonical form, with explicit embeddings.

    Returns ``(group, maps)`` where ``maps[i]`` sends an element of
    ``blocks[i]`` to its image in the normalized sum.  Normalization merges
    coprime cyclic parts, so each raw generator is re-expressed through its
    prime-power components: the j-th largest power of every prime is routed
    to the j-th largest invariant factor.
    """
    raw: list[int] = []
    origin: list[tuple[int, int]] = []  # raw index -> (block, coordinate)
    for bi, blk in enumerate(blocks):
        for ci, n in enumerate(blk.invariant_factors):
            raw.append(n)
            origin.append((bi, ci))

    by_prime: dict[int, list[tuple[int, int]]] = {}
    for ri, n in enumerate(raw):
        for p, e in _factorint(n).items():
            by_prime.setdefault(p, []).append((e, ri))
    total = make_group(raw)
    inv = total.invariant_factors
    k = len(inv)

    # gen_image[ri] = image of the ri-th raw generator in `total`; prime
    # parts accumulate (several primes of one generator may share a slot)
    gen_image = [list(total.zero()) for _ in raw]
    for p, entries in by_prime.items():
        entries.sort(key=lambda t: (-t[0], t[1]))
        for slot, (e, ri) in enumerate(entries):
            col = k - 1 - slot  # largest invariant factor sits last
            gen_image[ri][col] = (gen_image[ri][col] + inv[col] // p**e) % inv[col]

    maps = []
    for bi, blk in enumerate(blocks):
        cols = [gi for gi, (b, _) in enumerate(origin) if b == bi]

        def embed(g: Element, _cols=tuple(cols)) -> Element:
            img = total.zero()
            for coord, gi in enumerate(_cols):
                img = total.add(img, total.scalar_mul(g[coord], tuple(gen_image[gi])))
            return img

        maps.append(embed)
    return total, maps
