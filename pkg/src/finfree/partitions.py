"""Set partitions of {1..n}: enumeration, lattice operations, Moebius values.

P(n) is ordered by reverse refinement (0_n = all singletons at the bottom,
1_n = one block at the top).  Everything here is exact integer/rational
combinatorics; the closed forms for the Moebius function and the per-type
counts make recursive poset inversion unnecessary.

Enumeration order is restricted-growth-string lexicographic and is part of
the contract: callers may cache against it.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import DimensionError, InputFormatError, SizeCapError
from .util import VarPoly

DEFAULT_N_MAX = 12

# Tables of (blocks, mu, sizes) are memoized per n up to this bound; larger
# ground sets are streamed fresh on every call (Bell(12) alone is 4.2M).
_TABLE_MEMO_CAP = 9

_tables: dict = {}
_tables_lock = threading.Lock()


def _check_cap(n: int, n_max: int) -> None:
    if n < 1:
        raise SizeCapError(n, n_max)
    if n > n_max:
        raise SizeCapError(n, n_max)


@dataclass(frozen=True)
class SetPartition:
    """A partition of {1..n} in canonical form.

    blocks are sorted internally and ordered by least element, so equal
    partitions compare equal and hash equally.
    """

    n: int
    blocks: tuple

    def __post_init__(self):
        seen = [False] * (self.n + 1)
        prev_min = 0
        for block in self.blocks:
            if not block:
                raise InputFormatError("empty block in partition")
            if list(block) != sorted(block):
                raise InputFormatError("block %r not sorted" % (block,))
            if block[0] <= prev_min:
                raise InputFormatError("blocks not ordered by least element")
            prev_min = block[0]
            for e in block:
                if not (1 <= e <= self.n) or seen[e]:
                    raise InputFormatError(
                        "elements of %r do not cover {1..%d} exactly once"
                        % (self.blocks, self.n)
                    )
                seen[e] = True
        if not all(seen[1:]):
            raise InputFormatError("partition does not cover {1..%d}" % self.n)

    @classmethod
    def from_blocks(cls, n, blocks) -> "SetPartition":
        canon = sorted(tuple(sorted(b)) for b in blocks)
        return cls(n, tuple(canon))

    @classmethod
    def from_rgs(cls, rgs) -> "SetPartition":
        """Build from a restricted growth string (0-based labels)."""
        nb = max(rgs) + 1
        buckets = [[] for _ in range(nb)]
        for i, lab in enumerate(rgs):
            buckets[lab].append(i + 1)
        return cls(len(rgs), tuple(tuple(b) for b in buckets))

    @classmethod
    def parse(cls, text: str) -> "SetPartition":
        """Parse the text form "{1,3|2,4}"."""
        t = text.strip()
        if not (t.startswith("{") and t.endswith("}")):
            raise InputFormatError("partition text must look like {1,3|2,4}")
        body = t[1:-1]
        try:
            blocks = [
                tuple(int(x) for x in part.split(","))
                for part in body.split("|")
            ]
        except ValueError as exc:
            raise InputFormatError("bad partition text %r" % text) from exc
        n = max(max(b) for b in blocks)
        return cls.from_blocks(n, blocks)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def block_sizes(self) -> tuple:
        return tuple(len(b) for b in self.blocks)

    def labels(self) -> list:
        """labels()[e] is the block index of element e (index 0 unused)."""
        lab = [0] * (self.n + 1)
        for k, block in enumerate(self.blocks):
            for e in block:
                lab[e] = k
        return lab

    def __str__(self):
        return "{" + "|".join(",".join(str(e) for e in b) for b in self.blocks) + "}"

    def __len__(self):
        return len(self.blocks)


def zero_partition(n: int) -> SetPartition:
    """0_n, the all-singletons partition."""
    return SetPartition(n, tuple((i,) for i in range(1, n + 1)))


def one_partition(n: int) -> SetPartition:
    """1_n, the single-block partition."""
    return SetPartition(n, (tuple(range(1, n + 1)),))


def rgs_strings(n: int):
    """Yield all restricted growth strings of length n, lexicographically.

    s[0] = 0 and s[i] <= 1 + max(s[:i]); one string per partition of {1..n}.
    """
    s = [0] * n
    m = [0] * n
    while True:
        yield tuple(s)
        i = n - 1
        while i > 0 and s[i] > m[i - 1]:
            i -= 1
        if i == 0:
            return
        s[i] += 1
        m[i] = max(m[i - 1], s[i])
        for j in range(i + 1, n):
            s[j] = 0
            m[j] = m[i]


def iter_partitions(n: int, n_max: int = DEFAULT_N_MAX):
    """Yield all of P(n) in RGS-lexicographic order without materializing."""
    _check_cap(n, n_max)
    for rgs in rgs_strings(n):
        yield SetPartition.from_rgs(rgs)


def enumerate_partitions(n: int, n_max: int = DEFAULT_N_MAX) -> list:
    """All of P(n), RGS-lexicographic; length is Bell(n)."""
    return list(iter_partitions(n, n_max))


def is_noncrossing(pi: SetPartition) -> bool:
    """False iff some a<b<c<d has a,c in one block and b,d in another.

    Linear scan: walking 1..n while keeping the stack of unfinished blocks,
    the partition is non-crossing iff no block resurfaces from under the top
    of the stack (well-nestedness).
    """
    lab = pi.labels()
    last = [block[-1] for block in pi.blocks]
    stack = []
    for e in range(1, pi.n + 1):
        b = lab[e]
        if not stack or stack[-1] != b:
            if b in stack:
                return False
            stack.append(b)
        if last[b] == e:
            stack.pop()
    return True


def join(pi: SetPartition, sigma: SetPartition) -> SetPartition:
    """Least upper bound of pi and sigma in reverse refinement order."""
    if pi.n != sigma.n:
        raise DimensionError(
            "join over different ground sets: %d vs %d" % (pi.n, sigma.n)
        )
    n = pi.n
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part in (pi, sigma):
        for block in part.blocks:
            root = find(block[0])
            for e in block[1:]:
                r = find(e)
                if r != root:
                    parent[r] = root
    groups = {}
    for e in range(1, n + 1):
        groups.setdefault(find(e), []).append(e)
    return SetPartition.from_blocks(n, groups.values())


def refines(pi: SetPartition, sigma: SetPartition) -> bool:
    """True iff pi <= sigma (every block of pi lies inside a block of sigma)."""
    if pi.n != sigma.n:
        raise DimensionError(
            "refinement over different ground sets: %d vs %d" % (pi.n, sigma.n)
        )
    lab = sigma.labels()
    for block in pi.blocks:
        first = lab[block[0]]
        for e in block[1:]:
            if lab[e] != first:
                return False
    return True


def mobius_from_zero(pi: SetPartition) -> int:
    """mu(0_n, pi) = product over blocks V of (-1)^{|V|-1} (|V|-1)!."""
    v = 1
    for block in pi.blocks:
        s = len(block)
        v *= (-1) ** (s - 1) * factorial(s - 1)
    return v


def mobius_to_one(pi: SetPartition) -> int:
    """mu(pi, 1_n) = (-1)^{|pi|-1} (|pi|-1)!."""
    r = len(pi.blocks)
    return (-1) ** (r - 1) * factorial(r - 1)


@dataclass(frozen=True)
class PartitionType:
    """r[i-1] = number of blocks of size i; sum of i*r_i is n."""

    n: int
    r: tuple

    def __post_init__(self):
        if len(self.r) != self.n or any(x < 0 for x in self.r):
            raise InputFormatError("type vector must have length n, entries >= 0")
        if sum((i + 1) * x for i, x in enumerate(self.r)) != self.n:
            raise InputFormatError("type vector does not weigh n")

    @classmethod
    def from_sizes(cls, n, sizes) -> "PartitionType":
        r = [0] * n
        for s in sizes:
            r[s - 1] += 1
        return cls(n, tuple(r))

    @property
    def num_blocks(self) -> int:
        return sum(self.r)

    def sizes(self) -> tuple:
        """Block sizes, descending."""
        out = []
        for i in range(self.n, 0, -1):
            out.extend([i] * self.r[i - 1])
        return tuple(out)


def partition_type(pi: SetPartition) -> PartitionType:
    return PartitionType.from_sizes(pi.n, pi.block_sizes())


def mobius_of_type(t: PartitionType) -> int:
    """mu(0_n, pi) for any pi of type t (it only depends on the type)."""
    v = 1
    for i, ri in enumerate(t.r, start=1):
        if ri:
            v *= ((-1) ** (i - 1) * factorial(i - 1)) ** ri
    return v


def count_by_type(t: PartitionType, mode: str = "all") -> int:
    """Number of partitions (all of P(n), or only non-crossing) of type t.

    all:         n! / (prod_i r_i! * prod_i (i!)^{r_i})
    noncrossing: n! / (prod_i r_i! * (n - m + 1)!)   with m blocks total
    """
    n = t.n
    p_r = 1
    for ri in t.r:
        p_r *= factorial(ri)
    if mode == "noncrossing":
        m = t.num_blocks
        num = factorial(n)
        den = p_r * factorial(n - m + 1)
    elif mode == "all":
        num = factorial(n)
        den = p_r
        for i, ri in enumerate(t.r, start=1):
            den *= factorial(i) ** ri
    else:
        raise InputFormatError("mode must be 'all' or 'noncrossing'")
    q, rem = divmod(num, den)
    assert rem == 0, "type count is not integral"
    return q


def iter_types(n: int):
    """All partition types of n (integer partitions of n), deterministic order."""

    def rec(remaining, max_part, sizes):
        if remaining == 0:
            yield PartitionType.from_sizes(n, sizes)
            return
        for part in range(min(remaining, max_part), 0, -1):
            yield from rec(remaining - part, part, sizes + [part])

    yield from rec(n, n, [])


def multiplicative_extension(f, pi: SetPartition) -> Fraction:
    """prod over blocks V of f[|V| - 1], i.e. f indexed 1..n by block size.

    Raises IndexError when f is shorter than the largest block.
    """
    v = Fraction(1)
    for block in pi.blocks:
        v *= Fraction(f[len(block) - 1])
    return v


def block_size_product(sigma: SetPartition) -> int:
    """Product of all block sizes of sigma."""
    v = 1
    for block in sigma.blocks:
        v *= len(block)
    return v


def partition_lattice_charpoly(n: int, n_max: int = DEFAULT_N_MAX) -> VarPoly:
    """Sum over P(n) of mu(0,pi) t^{|pi|}; equals the falling factorial (t)_n.

    Grouped by type: every summand depends on pi only through its type.
    """
    _check_cap(n, n_max)
    coeffs = [0] * (n + 1)
    for t in iter_types(n):
        coeffs[t.num_blocks] += count_by_type(t, "all") * mobius_of_type(t)
    return VarPoly.make("t", coeffs)


def lattice_table(n: int, n_max: int = DEFAULT_N_MAX) -> tuple:
    """Rows (block_bitmasks, num_blocks, mu) for all of P(n), RGS order.

    Bitmask bit e-1 stands for element e.  Memoized for small n with a
    single writer; rows are immutable after publication.
    """
    _check_cap(n, n_max)
    cached = _tables.get(n)
    if cached is not None:
        return cached
    rows = []
    for rgs in rgs_strings(n):
        nb = max(rgs) + 1
        masks = [0] * nb
        mu = 1
        counts = [0] * nb
        for i, lab in enumerate(rgs):
            masks[lab] |= 1 << i
            counts[lab] += 1
        for c in counts:
            mu *= (-1) ** (c - 1) * factorial(c - 1)
        rows.append((tuple(masks), nb, mu))
    table = tuple(rows)
    if n <= _TABLE_MEMO_CAP:
        with _tables_lock:
            _tables.setdefault(n, table)
            table = _tables[n]
    return table


def enumerate_noncrossing(n: int, n_max: int = DEFAULT_N_MAX) -> list:
    """All non-crossing partitions of {1..n}, RGS order; length Catalan(n)."""
    _check_cap(n, n_max)
    return [pi for pi in iter_partitions(n, n_max) if is_noncrossing(pi)]
