"""Sets of lengths, distance sets, elasticity, and the exact minimum distance.

The minimum distance of a support is computed on the integer kernel of the
atom matrix: a kernel vector splits into the difference of two factorizations
of a common element, so the coordinate-sum functional ranges exactly over the
achievable length differences.  Its gcd over the kernel lattice therefore
equals the gcd of all distances, which is the minimum distance.  The gcd of a
linear functional over a lattice is reached on any generating set, so no
individual factorizations ever need to be expanded.

Rational quantities use :class:`fractions.Fraction` throughout; no floating
point enters any invariant computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .config import ResourceConfig, default_config
from .errors import BudgetExceededError, InputError
from .sequences import AtomSet, GSequence, SupportSet, enumerate_atoms


@dataclass(frozen=True)
class LengthSet:
    """A finite, sorted set of factorization lengths.

    Nonempty by construction; units carry the conventional set {0}.
    """

    values: tuple[int, ...]

    @staticmethod
    def of(values) -> "LengthSet":
        vals = tuple(sorted(set(values)))
        if not vals:
            raise InputError("length sets are nonempty (units get {0})")
        if vals[0] < 0:
            raise InputError("lengths are nonnegative")
        return LengthSet(vals)

    @property
    def min(self) -> int:
        return self.values[0]

    @property
    def max(self) -> int:
        return self.values[-1]

    def rho(self) -> Fraction:
        """Elasticity max/min, with rho({0}) = 1."""
        if self.values == (0,):
            return Fraction(1)
        if self.min == 0:
            raise InputError("0 can only appear in the unit length set {0}")
        return Fraction(self.max, self.min)

    def delta(self) -> tuple[int, ...]:
        """Successive differences."""
        return tuple(b - a for a, b in zip(self.values, self.values[1:]))

    def __contains__(self, k: int) -> bool:
        return k in self.values

    def __iter__(self):
        return iter(self.values)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.values)) + "}"


def sumset(a: LengthSet, b: LengthSet) -> LengthSet:
    return LengthSet.of(x + y for x in a.values for y in b.values)


@dataclass(frozen=True)
class AAPWitness:
    """Decomposition of a set as an almost arithmetical progression.

    Reconstructs ``y + (head ∪ {0, d, ..., ell*d} ∪ tail)`` with
    ``head ⊆ [-M, -1]`` and ``tail ⊆ ell*d + [1, M]``, all offsets relative
    to the shift ``y``.
    """

    y: int
    d: int
    ell: int
    M: int
    head: tuple[int, ...]
    tail: tuple[int, ...]

    def reconstruct(self) -> tuple[int, ...]:
        core = tuple(i * self.d for i in range(self.ell + 1))
        return tuple(sorted(self.y + t for t in self.head + core + self.tail))


def is_aap(lengths: LengthSet, d: int) -> AAPWitness | None:
    """Best AAP decomposition with difference ``d``, or None.

    None exactly when the set is not contained in a single residue class
    mod ``d``.  Among decompositions the central run length is maximized,
    then the bound minimized, then the shift minimized.
    """
    if d < 1:
        raise InputError("difference must be >= 1")
    vals = lengths.values
    if len({v % d for v in vals}) > 1:
        return None
    # maximal runs with step exactly d
    runs: list[tuple[int, int]] = []  # (start index, steps)
    i = 0
    while i < len(vals):
        j = i
        while j + 1 < len(vals) and vals[j + 1] - vals[j] == d:
            j += 1
        runs.append((i, j - i))
        i = j + 1
    best: tuple[int, int, int] | None = None
    best_witness: AAPWitness | None = None
    for start, ell in runs:
        y = vals[start]
        head = tuple(v - y for v in vals[:start])
        tail = tuple(v - y for v in vals[start + ell + 1:])
        M = max([0] + [-t for t in head] + [t - ell * d for t in tail])
        key = (-ell, M, y)
        if best is None or key < best:
            best = key
            best_witness = AAPWitness(y, d, ell, M, head, tail)
    return best_witness


# -- integer kernel of the atom matrix --------------------------------------

def _extgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _functional_gcd(columns, nrows: int) -> int:
    """gcd of the final coordinate over lattice vectors vanishing on the
    first ``nrows`` coordinates; the lattice is spanned by ``columns``
    (integer vectors of size nrows + 1)."""
    pivots: list[list[int] | None] = [None] * nrows
    g = 0
    for col in columns:
        v: list[int] | None = list(col)
        for i in range(nrows):
            if v[i] == 0:
                continue
            p = pivots[i]
            if p is None:
                pivots[i] = v
                v = None
                break
            a, b = p[i], v[i]
            if b % a == 0:
                q = b // a
                for j in range(i, nrows + 1):
                    v[j] -= q * p[j]
            else:
                d, x, y = _extgcd(a, b)
                qa, qb = a // d, b // d
                new_p = [x * pj + y * vj for pj, vj in zip(p, v)]
                new_v = [qa * vj - qb * pj for pj, vj in zip(p, v)]
                pivots[i] = new_p
                v = new_v
        if v is not None:
            g = gcd(g, v[nrows])
    return g


def kernel_basis_of(mult_vectors: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Basis of the full integer kernel {x : sum_j x_j * vec_j = 0}.

    Unimodular row reduction of the vectors augmented with the identity;
    rows whose vector part vanishes carry a basis of the kernel lattice.
    """
    t = len(mult_vectors)
    r = len(mult_vectors[0]) if t else 0
    rows = [list(v) + [1 if j == i else 0 for j in range(t)] for i, v in enumerate(mult_vectors)]
    used = [False] * t
    for col in range(r):
        pivot = None
        for i in range(t):
            if not used[i] and rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        for i in range(pivot + 1, t):
            if used[i] or rows[i][col] == 0:
                continue
            a, b = rows[pivot][col], rows[i][col]
            d, x, y = _extgcd(a, b)
            qa, qb = a // d, b // d
            rp, ri = rows[pivot], rows[i]
            rows[pivot] = [x * u + y * w for u, w in zip(rp, ri)]
            rows[i] = [qa * w - qb * u for u, w in zip(rp, ri)]
        used[pivot] = True
    return [tuple(row[r:]) for i, row in enumerate(rows) if not used[i]]


@dataclass(frozen=True)
class RelationKernel:
    """Atom-exponent matrix (rows = support elements, columns = atoms)
    together with a basis of its integer kernel lattice."""

    atom_matrix: tuple[tuple[int, ...], ...]
    kernel_basis: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_atoms(atoms: AtomSet) -> "RelationKernel":
        cols = atoms.mult_vectors
        r = len(atoms.support.elements)
        matrix = tuple(tuple(c[i] for c in cols) for i in range(r))
        return RelationKernel(matrix, tuple(kernel_basis_of(list(cols))))

    def verify(self) -> bool:
        for b in self.kernel_basis:
            for row in self.atom_matrix:
                if sum(x * c for x, c in zip(b, row)):
                    return False
        return True

    def functional_gcd(self) -> int:
        return gcd(*(abs(sum(b)) for b in self.kernel_basis)) if self.kernel_basis else 0


def min_delta_of_atoms(atoms: AtomSet, atom_indices: list[int] | None = None) -> int | None:
    """Minimum distance of the monoid generated by the given atoms.

    gcd of the coordinate-sum functional over the kernel lattice; None when
    the functional vanishes there (the half-factorial case, empty distance
    set).
    """
    idx = range(len(atoms)) if atom_indices is None else atom_indices
    nrows = len(atoms.support.elements)
    columns = [atoms.mult_vectors[i] + (1,) for i in idx]
    g = _functional_gcd(columns, nrows)
    return g if g else None


def min_delta(support: SupportSet, *, config: ResourceConfig | None = None) -> int | None:
    """Exact min of the distance set of the support, or None when empty."""
    return min_delta_of_atoms(enumerate_atoms(support, config=config))


# -- length sets -------------------------------------------------------------

def _check_same_support(seq: GSequence, atoms: AtomSet):
    if seq.support != atoms.support:
        raise InputError("sequence and atom set must share a support set")


def length_set(seq: GSequence, atoms: AtomSet, *, config: ResourceConfig | None = None) -> LengthSet:
    """Exact set of factorization lengths of a zero-sum sequence.

    Memoized over sub-multisets: every factorization is an atom plus a
    factorization of the remainder, and keying on the remaining multiset
    collapses permuted factorizations.
    """
    cfg = config or default_config()
    _check_same_support(seq, atoms)
    if not seq.is_zero_sum():
        raise InputError("length sets are defined for zero-sum sequences only")
    v0 = seq.multiplicities
    k = len(v0)
    zero = (0,) * k
    usable = [a for a in atoms.mult_vectors if all(x <= y for x, y in zip(a, v0))]
    memo: dict[tuple[int, ...], frozenset[int]] = {zero: frozenset({0})}
    stack = [v0]
    while stack:
        v = stack[-1]
        if v in memo:
            stack.pop()
            continue
        ready = True
        out: set[int] = set()
        for a in usable:
            w = tuple(x - y for x, y in zip(v, a))
            if any(x < 0 for x in w):
                continue
            got = memo.get(w)
            if got is None:
                stack.append(w)
                ready = False
            else:
                out.update(x + 1 for x in got)
        if ready:
            memo[v] = frozenset(out)
            stack.pop()
            if len(memo) > cfg.max_states:
                raise BudgetExceededError("length-set memo entries", cfg.max_states)
    result = memo[v0]
    if not result:
        raise InputError("sequence admits no factorization over the given atoms")
    return LengthSet.of(result)


def _can_factor(v0: tuple[int, ...], vectors: list[tuple[int, ...]], cfg: ResourceConfig) -> bool:
    """Whether ``v0`` is a sum of vectors from the given list."""
    zero = tuple(0 for _ in v0)
    memo: dict[tuple[int, ...], bool] = {zero: True}
    stack = [v0]
    while stack:
        v = stack[-1]
        if v in memo:
            stack.pop()
            continue
        ready = True
        ok = False
        for a in vectors:
            w = tuple(x - y for x, y in zip(v, a))
            if any(x < 0 for x in w):
                continue
            got = memo.get(w)
            if got is None:
                stack.append(w)
                ready = False
            elif got:
                ok = True
                break
        if ok:
            memo[v] = True
            stack.pop()
        elif ready:
            memo[v] = False
            stack.pop()
        if len(memo) > cfg.max_states:
            raise BudgetExceededError("factorization memo entries", cfg.max_states)
    return memo[v0]


def max_elasticity_witness(seq: GSequence, atoms: AtomSet, *, config: ResourceConfig | None = None) -> bool:
    """Whether the sequence realizes the extreme elasticity of its support.

    Equivalent to one factorization entirely into atoms of maximal length and
    one entirely into atoms of length 2.
    """
    cfg = config or default_config()
    _check_same_support(seq, atoms)
    if seq.length == 0:
        return False
    D = atoms.davenport
    longest = [a.multiplicities for a in atoms if a.length == D]
    pairs = [a.multiplicities for a in atoms if a.length == 2]
    return _can_factor(seq.multiplicities, longest, cfg) and _can_factor(seq.multiplicities, pairs, cfg)


@dataclass(frozen=True)
class RhoBound:
    """Elasticity of a support monoid: exact when the support is symmetric,
    otherwise only the general upper bound (flagged)."""

    value: Fraction
    exact: bool
    davenport: int


def rho_of_support(support: SupportSet, *, config: ResourceConfig | None = None) -> RhoBound:
    atoms = enumerate_atoms(support, config=config)
    value = Fraction(atoms.davenport, 2)
    return RhoBound(value, support.is_symmetric, atoms.davenport)
