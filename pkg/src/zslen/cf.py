"""Continued-fraction formulas for cyclic supports and the exceptional scan.

For a cyclic group of order n and a coprime a, the minimum distances of the
supports {g, ag} and {g, ag, -ag, -g} are gcds of partial quotients of n/a.
The scan looks for even n where no a certifies an extra distance value; it
runs two independent engines:

* E1 walks each n and tries every candidate a directly;
* E2 inverts the criterion: it enumerates all quotient lists matching the
  divisibility pattern for a prime t (first and last quotient = 1 mod t,
  interior quotients = 0 mod t) whose continuant stays below the bound, and
  marks the continuants as witnessed.  Continuants grow at least as fast as
  Fibonacci numbers, so the enumeration depth is logarithmic in the bound.

Both engines must agree before a report is produced.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from pathlib import Path

from .config import ResourceConfig
from .errors import EngineMismatchError, InputError


@dataclass(frozen=True)
class CFExpansion:
    """Partial quotients of n/a; reconstructs the fraction exactly."""

    n: int
    a: int
    quotients: tuple[int, ...]

    def __post_init__(self):
        if any(q < 1 for q in self.quotients[1:]) or not self.quotients:
            raise InputError(f"bad quotient list {self.quotients}")
        if self.value() != Fraction(self.n, self.a):
            raise InputError(f"{self.quotients} does not reconstruct {self.n}/{self.a}")

    def value(self) -> Fraction:
        num, den = 1, 0
        for q in reversed(self.quotients):
            num, den = q * num + den, num
        return Fraction(num, den)

    @property
    def is_regular(self) -> bool:
        qs = self.quotients
        return len(qs) == 1 or qs[-1] >= 2

    @property
    def has_odd_length(self) -> bool:
        return len(self.quotients) % 2 == 1


def cf_regular(n: int, a: int) -> CFExpansion:
    """Euclidean expansion of n/a with final quotient >= 2 (single-term for a=1)."""
    if not (n > a >= 1):
        raise InputError(f"need n > a >= 1, got n={n}, a={a}")
    if gcd(n, a) != 1:
        raise InputError(f"need gcd(n, a) = 1, got n={n}, a={a}")
    qs = []
    x, y = n, a
    while y:
        q, r = divmod(x, y)
        qs.append(q)
        x, y = y, r
    return CFExpansion(n, a, tuple(qs))


def cf_odd_length(n: int, a: int) -> CFExpansion:
    """Expansion of n/a with an odd number of quotients.

    From the regular form: keep it if already odd; else split the last
    quotient (q >= 2 becomes q-1, 1), or merge a trailing 1 into its
    predecessor.
    """
    reg = cf_regular(n, a)
    qs = list(reg.quotients)
    if len(qs) % 2 == 0:
        if qs[-1] >= 2:
            qs[-1] -= 1
            qs.append(1)
        else:
            qs.pop()
            qs[-1] += 1
    return CFExpansion(n, a, tuple(qs))


def min_delta_pair(n: int, a: int) -> int:
    """Minimum distance of {g, ag} in a cyclic group of order n.

    gcd of the odd-indexed quotients of the odd-length expansion of n/a;
    always strictly below n - 2.
    """
    if n <= 3:
        raise InputError("need n > 3")
    if not (2 <= a <= n - 1):
        raise InputError(f"need a in [2, n-1], got {a}")
    qs = cf_odd_length(n, a).quotients
    value = 0
    for i in range(1, len(qs), 2):
        value = gcd(value, qs[i])
    # strictly below n-2 except at a = n-1, where the support degenerates to
    # {g, -g} and the value is exactly n-2
    assert 0 < value <= n - 2 and (value < n - 2 or a == n - 1)
    return value


def min_delta_sym_quad(n: int, a: int) -> int:
    """Minimum distance of {g, ag, -ag, -g} for a < n/2.

    gcd(q0 - 1, q1, ..., q_{m-1}, q_m - 1) over the regular expansion of n/a.
    Callers with a >= n/2 should substitute n - a first.
    """
    if n <= 3:
        raise InputError("need n > 3")
    if not 2 <= a or not 2 * a < n:
        raise InputError(f"need 2 <= a < n/2, got a={a}, n={n}")
    qs = cf_regular(n, a).quotients
    value = qs[0] - 1
    for q in qs[1:-1]:
        value = gcd(value, q)
    return gcd(value, qs[-1] - 1)


def _quad_criterion(n: int, a: int) -> int:
    """min_delta_sym_quad with early exit, for the scan inner loop."""
    q, r = divmod(n, a)
    g = q - 1
    x, y = a, r
    while True:
        q, r = divmod(x, y)
        if r == 0:
            return gcd(g, q - 1)
        g = gcd(g, q)
        if g == 1:
            return 1
        x, y = y, r


def exceptional_witness(n: int) -> int | None:
    """Smallest a in [2, n//2], coprime to n, whose quotient-gcd criterion
    exceeds 1; None when no such a exists (and the star set of the cyclic
    group of order n is then contained in {1, n-2})."""
    if n < 3:
        raise InputError("need n >= 3")
    for a in range(2, n // 2 + 1):
        if gcd(a, n) == 1 and _quad_criterion(n, a) > 1:
            return a
    return None


@dataclass(frozen=True)
class ScanReport:
    lo: int
    hi: int
    engine: str
    exceptional: tuple[int, ...]
    witnesses: dict[int, int]

    def __post_init__(self):
        if set(self.exceptional) & self.witnesses.keys():
            raise InputError("exceptional orders cannot carry witnesses")
        if any(n % 2 or n < 8 for n in self.exceptional):
            raise InputError("exceptional orders are even and at least 8")

    def digest(self) -> str:
        payload = ",".join(map(str, self.exceptional))
        return hashlib.sha256(payload.encode()).hexdigest()


def _scan_direct_range(lo: int, hi: int) -> tuple[list[int], dict[int, int]]:
    """E1: trial over a for every even n in [lo, hi]."""
    exceptional: list[int] = []
    witnesses: dict[int, int] = {}
    start = lo if lo % 2 == 0 else lo + 1
    for n in range(start, hi + 1, 2):
        w = exceptional_witness(n)
        if w is None:
            exceptional.append(n)
        else:
            witnesses[n] = w
    return exceptional, witnesses


def _primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, v in enumerate(sieve) if v]


def _scan_inverted(hi: int) -> dict[int, int]:
    """E2: mark every n <= hi admitting a witness, with the smallest one.

    Quotient lists are generated per prime t; the criterion gcd of any
    witnessed pair is divisible by some prime, so prime patterns cover all.
    """
    marked: dict[int, int] = {}
    # minimal pattern continuant is (t+1)^2 + 1
    t_limit = isqrt(hi) + 1
    for t in _primes_up_to(t_limit):
        if (t + 1) ** 2 + 1 > hi:
            break

        def close_or_extend(p1: int, p0: int, q1: int, q0: int):
            # close with a final quotient = 1 mod t, >= 2
            am = t + 1
            while am * p0 + p1 <= hi:
                n = am * p0 + p1
                a = am * q0 + q1
                prev = marked.get(n)
                if prev is None or a < prev:
                    marked[n] = a
                am += t
            # extend with an interior quotient = 0 mod t
            ai = t
            while ai * p0 + p1 <= hi:
                close_or_extend(p0, ai * p0 + p1, q0, ai * q0 + q1)
                ai += t

        a0 = t + 1
        while a0 * (t + 1) + 1 <= hi:
            close_or_extend(1, a0, 0, 1)
            a0 += t
    return marked


def _shard_ranges(lo: int, hi: int, shards: int) -> list[tuple[int, int]]:
    if shards < 1:
        raise InputError("shards must be >= 1")
    total = hi - lo + 1
    size = max(1, -(-total // shards))
    out = []
    start = lo
    while start <= hi:
        end = min(start + size - 1, hi)
        out.append((start, end))
        start = end + 1
    return out


def _load_checkpoint(path: Path) -> dict[tuple[int, int], tuple[str, list[int], dict[int, int]]]:
    done: dict[tuple[int, int], tuple[str, list[int], dict[int, int]]] = {}
    data_path = path.with_suffix(path.suffix + ".data")
    if not path.exists() or not data_path.exists():
        return done
    hashes = {}
    for line in path.read_text().splitlines():
        parts = line.split()
        if len(parts) == 3:
            hashes[(int(parts[0]), int(parts[1]))] = parts[2]
    for line in data_path.read_text().splitlines():
        rec = json.loads(line)
        key = (rec["lo"], rec["hi"])
        if key not in hashes:
            continue
        payload = ",".join(map(str, rec["exceptional"]))
        if hashlib.sha256(payload.encode()).hexdigest() != hashes[key]:
            continue  # stale or corrupt: recompute this shard
        done[key] = (hashes[key], rec["exceptional"], {int(k): v for k, v in rec["witnesses"].items()})
    return done


def _append_checkpoint(path: Path, lo: int, hi: int, exceptional: list[int], witnesses: dict[int, int]):
    payload = ",".join(map(str, exceptional))
    digest = hashlib.sha256(payload.encode()).hexdigest()
    with path.open("a") as fh:
        fh.write(f"{lo} {hi} {digest}\n")
    with path.with_suffix(path.suffix + ".data").open("a") as fh:
        fh.write(json.dumps({"lo": lo, "hi": hi, "exceptional": exceptional, "witnesses": witnesses}) + "\n")


def scan_exceptional(
    lo: int,
    hi: int,
    *,
    engine: str = "both",
    shards: int = 1,
    workers: int = 1,
    checkpoint: str | Path | None = None,
    config: ResourceConfig | None = None,
) -> ScanReport:
    """Even n in [lo, hi] with no witness, plus the witness map for the rest.

    With ``engine="both"`` the direct and inverted engines are both run and
    must agree exactly.  Sharding splits the range for E1; shards may run in
    worker processes and each completed shard is checkpointed.  The merged
    report is independent of shard count and worker count.
    """
    del config  # budget-free: cost is linear in the range for E1
    if not 8 <= lo <= hi:
        raise InputError(f"need 8 <= lo <= hi, got [{lo}, {hi}]")
    if engine not in ("e1", "e2", "both"):
        raise InputError(f"unknown engine {engine!r}")
    ck_path = Path(checkpoint) if checkpoint else None
    done = _load_checkpoint(ck_path) if ck_path else {}

    def run_e1() -> tuple[list[int], dict[int, int]]:
        ranges = _shard_ranges(lo, hi, shards)
        fresh = [r for r in ranges if r not in done]
        results: dict[tuple[int, int], tuple[list[int], dict[int, int]]] = {}
        if workers > 1 and len(fresh) > 1:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = {r: pool.submit(_scan_direct_range, *r) for r in fresh}
                for r in fresh:
                    results[r] = futures[r].result()
        else:
            for r in fresh:
                results[r] = _scan_direct_range(*r)
        exceptional: list[int] = []
        witnesses: dict[int, int] = {}
        for r in ranges:
            if r in done:
                _, exc, wit = done[r]
            else:
                exc, wit = results[r]
                if ck_path:
                    _append_checkpoint(ck_path, r[0], r[1], exc, wit)
            exceptional.extend(exc)
            witnesses.update(wit)
        return sorted(exceptional), witnesses

    def run_e2() -> tuple[list[int], dict[int, int]]:
        marked = _scan_inverted(hi)
        start = lo if lo % 2 == 0 else lo + 1
        exceptional = [n for n in range(start, hi + 1, 2) if n not in marked]
        witnesses = {n: marked[n] for n in range(start, hi + 1, 2) if n in marked}
        return exceptional, witnesses

    if engine == "e1":
        exc, wit = run_e1()
    elif engine == "e2":
        exc, wit = run_e2()
    else:
        exc1, wit1 = run_e1()
        exc2, wit2 = run_e2()
        if exc1 != exc2 or wit1 != wit2:
            raise EngineMismatchError(
                f"scan engines disagree on [{lo}, {hi}]: "
                f"E1 found {len(exc1)} exceptional, E2 found {len(exc2)}"
            )
        exc, wit = exc1, wit1
    return ScanReport(lo, hi, engine, tuple(exc), wit)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def sufficient_filters(n: int) -> frozenset[str]:
    """Which of the five closed-form sufficient conditions hold for n.

    Each condition guarantees a witness (an extra distance value besides 1
    and n-2): cond1-cond4 for even n, cond6 for odd n.
    """
    if n < 5:
        raise InputError("need n >= 5")
    tags = set()
    even = n % 2 == 0
    if even and not _is_prime(n - 1):
        tags.add("cond1")
    if even and n % 3 != 0 and not _is_prime(n - 3):
        tags.add("cond2")
    if even:
        q = 3
        while q * q + 2 * q <= n:
            if _is_prime(q) and n % (q * q) == 2 * q:
                tags.add("cond3")
                break
            q += 2
        q = 3
        while 5 * q + 2 <= n:
            if n % (2 * q + 1) == q:
                tags.add("cond4")
                break
            q += 2
    if not even and n > 5:
        root = isqrt(n - 1)
        if root * root == n - 1:
            tags.add("cond6")
    return frozenset(tags)
