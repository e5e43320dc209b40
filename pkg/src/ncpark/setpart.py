"""Classical and type-BC set partition combinatorics.

Noncrossing predicate, Kreweras complementation, the translation between
noncrossing partitions and permutations, the multichain-to-k-divisible
bijection nabla, exact counting formulas, and Reiner's periodic
parenthesization for centrally symmetric partitions.

Ground sets are [n] or +-[n]; the +-[n] boundary order on the disc is
1, 2, ..., n, -1, -2, ..., -n, read clockwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .reflgroup import (
    SignedPerm,
    canonical_blocks,
    factorial,
    partition_refines,
    perm_from_cycles,
)


@dataclass(frozen=True, order=True)
class SetPartition:
    """Partition of [n] (signed=False) or of +-[n] (signed=True).

    Blocks are stored sorted for canonical equality; +-[n] partitions used
    here are centrally symmetric with at most one zero block.
    """

    n: int
    signed: bool
    blocks: tuple[tuple[int, ...], ...]

    @staticmethod
    def of(n: int, blocks, signed: bool = False) -> "SetPartition":
        blocks = canonical_blocks(blocks)
        ground = set(range(1, n + 1))
        if signed:
            ground |= {-i for i in range(1, n + 1)}
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise ValueError("empty block")
            for x in b:
                if x in seen or x not in ground:
                    raise ValueError(f"bad element {x} in {blocks}")
                seen.add(x)
        if seen != ground:
            raise ValueError("blocks do not cover the ground set")
        return SetPartition(n, signed, blocks)

    @staticmethod
    def singletons(n: int, signed: bool = False) -> "SetPartition":
        ground = range(1, n + 1) if not signed else list(range(1, n + 1)) + [-i for i in range(1, n + 1)]
        return SetPartition.of(n, [(x,) for x in ground], signed)

    @staticmethod
    def full(n: int, signed: bool = False) -> "SetPartition":
        ground = range(1, n + 1) if not signed else list(range(1, n + 1)) + [-i for i in range(1, n + 1)]
        return SetPartition.of(n, [tuple(ground)], signed)

    def block_of(self, x: int) -> tuple[int, ...]:
        for b in self.blocks:
            if x in b:
                return b
        raise KeyError(x)

    def refines(self, other: "SetPartition") -> bool:
        return partition_refines(self.blocks, other.blocks)

    def is_centrally_symmetric(self) -> bool:
        bset = {frozenset(b) for b in self.blocks}
        return all(frozenset(-x for x in b) in bset for b in self.blocks)

    def zero_block(self) -> tuple[int, ...] | None:
        for b in self.blocks:
            if frozenset(b) == frozenset(-x for x in b):
                return b
        return None

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))

    def __repr__(self):
        return "{" + format_partition(self) + "}"


# -- literal syntax ---------------------------------------------------------


def circ_position(x: int, n: int) -> int:
    """Index of x in the clockwise boundary order 1..n, -1..-n."""
    return x - 1 if x > 0 else n - x - 1


def parse_partition(text: str, n: int, signed: bool = False) -> SetPartition:
    """Parse the block literal syntax, e.g. "1,-4/2,3/-1,4/-2,-3"."""
    blocks = []
    for chunk in text.split("/"):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError("empty block in literal")
        blocks.append(tuple(int(t) for t in chunk.split(",")))
    return SetPartition.of(n, blocks, signed)


def format_partition(p: SetPartition) -> str:
    key = lambda x: (abs(x), x < 0)
    blocks = [sorted(b, key=key) for b in p.blocks]
    blocks.sort(key=lambda b: (b[0] < 0, abs(b[0])))
    return "/".join(",".join(str(x) for x in b) for b in blocks)


# -- noncrossing predicate ----------------------------------------------------


def _crossing_free(blocks, pos) -> bool:
    """No two blocks interleave around the circle given by position map."""
    indexed = [sorted(pos(x) for x in b) for b in blocks]
    for b1, b2 in itertools.combinations(indexed, 2):
        # b1, b2 cross iff b2 meets both gaps determined by some pair of b1
        inside = outside = False
        for a, b in zip(b1, b1[1:] + b1[:1]):
            lo, hi = (a, b) if a < b else (b, a)
            inside = any(lo < x < hi for x in b2)
            outside = any(not lo < x < hi for x in b2)
            if inside and outside:
                return False
    return True


def is_noncrossing(p: SetPartition) -> bool:
    """Whether the convex hulls of the blocks are disjoint on the disc."""
    return _crossing_free(p.blocks, lambda x: circ_position(x, p.n) if p.signed else x - 1)


# -- Kreweras complementation --------------------------------------------------


def kreweras(p: SetPartition) -> SetPartition:
    """The Kreweras complement on the primed positions 1',1,2',2,...,n',n.

    Primed position i' immediately precedes i on the clockwise circle; the
    complement is the finest-hull maximal partition of the primes avoiding
    the blocks of p.
    """
    if p.signed:
        raise ValueError("kreweras is defined on [n] partitions")
    if not is_noncrossing(p):
        raise ValueError(f"input is not noncrossing: {p!r}")
    n = p.n
    # circle positions: prime i at 2(i-1), unprimed i at 2(i-1)+1
    unprimed = {i: 2 * (i - 1) + 1 for i in range(1, n + 1)}

    def separated(i, j, block) -> bool:
        lo, hi = sorted((2 * (i - 1), 2 * (j - 1)))
        ins = any(lo < unprimed[x] < hi for x in block)
        out = any(not lo < unprimed[x] < hi for x in block)
        return ins and out

    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if not any(separated(i, j, b) for b in p.blocks):
                parent[find(j)] = find(i)
    groups: dict[int, list[int]] = {}
    for i in range(1, n + 1):
        groups.setdefault(find(i), []).append(i)
    return SetPartition.of(n, groups.values())


def rotate_partition(p: SetPartition, step: int = 1) -> SetPartition:
    """Clockwise rotation: each element i moves to i+step around the circle."""
    n = p.n
    if not p.signed:
        blocks = [tuple((x - 1 + step) % n + 1 for x in b) for b in p.blocks]
    else:
        order = list(range(1, n + 1)) + [-i for i in range(1, n + 1)]

        def rot(x):
            return order[(circ_position(x, n) + step) % (2 * n)]

        blocks = [tuple(rot(x) for x in b) for b in p.blocks]
    return SetPartition.of(n, blocks, p.signed)


# -- partitions <-> permutations ------------------------------------------------


def omega(p: SetPartition) -> SignedPerm:
    """The permutation whose cycles are the blocks of p in clockwise order.

    Centrally symmetric partitions of +-[n] yield the signed permutation
    whose cycles are the blocks read in the boundary order; this is the
    noncrossing group element with that coordinate-equality fixed space.
    """
    if not is_noncrossing(p):
        raise ValueError(f"omega needs a noncrossing partition, got {p!r}")
    if not p.signed:
        return perm_from_cycles(p.n, *[tuple(sorted(b)) for b in p.blocks])
    img = list(range(1, p.n + 1))
    for b in p.blocks:
        cyc = sorted(b, key=lambda x: circ_position(x, p.n))
        for a, c in zip(cyc, cyc[1:] + cyc[:1]):
            if a > 0:
                img[a - 1] = c
            else:
                img[-a - 1] = -c
    return SignedPerm(tuple(img))


def pi_of(w: SignedPerm, n: int | None = None) -> SetPartition:
    """Inverse of omega on its image: cycles must be increasing along 1..n."""
    n = n if n is not None else w.n
    blocks = w.cycles()
    for cyc in blocks:
        if list(cyc) != sorted(cyc):
            raise ValueError(f"cycle {cyc} of {w!r} is not increasing")
    return SetPartition.of(n, blocks)


def boundary_delta(ws: tuple[SignedPerm, ...], c: SignedPerm) -> tuple[SignedPerm, ...]:
    """(w1,...,wk) -> (w1^-1 w2, ..., w_{k-1}^-1 wk, wk^-1 c)."""
    out = [ws[i].inverse() * ws[i + 1] for i in range(len(ws) - 1)]
    out.append(ws[-1].inverse() * c)
    return tuple(out)


# -- shuffles and nabla -----------------------------------------------------------


def relabel(p: SetPartition, targets: list[int]) -> list[tuple[int, ...]]:
    """The partition p(B): order-isomorphic copy of p on the index set B."""
    if len(targets) != p.n:
        raise ValueError("target set has wrong size")
    targets = sorted(targets)
    return [tuple(targets[x - 1] for x in b) for b in p.blocks]


def shuffle(ps: tuple[SetPartition, ...]) -> SetPartition:
    """Partition of [kn] generated by p_i placed on {i, i+k, ..., i+(n-1)k}."""
    k = len(ps)
    n = ps[0].n
    blocks = []
    for i, p in enumerate(ps, start=1):
        blocks.extend(relabel(p, [i + j * k for j in range(n)]))
    return SetPartition.of(k * n, blocks)


def nabla(chain: tuple[SetPartition, ...]) -> SetPartition:
    """Bijection from k-multichains of noncrossing partitions of [n] to
    k-divisible noncrossing partitions of [kn]: the Kreweras complement of
    the shuffle of the boundary factors.

    The factor tuple enters the shuffle in its literal order; this is the
    unique slot order that is defined on every multichain and transports
    the cyclic action on multichains to one-step clockwise rotation.
    """
    k = len(chain)
    n = chain[0].n
    for a, b in zip(chain, chain[1:]):
        if not a.refines(b):
            raise ValueError("input is not a refinement multichain")
    c = perm_from_cycles(n, tuple(range(1, n + 1)))
    ws = tuple(omega(p) for p in chain)
    deltas = boundary_delta(ws, c)
    parts = tuple(pi_of(w) for w in deltas)
    mixed = shuffle(parts)
    out = kreweras(mixed)
    if any(len(b) % k for b in out.blocks):
        raise RuntimeError("nabla output is not k-divisible (logic error)")
    return out


def nabla_restriction_positions(n: int, k: int) -> list[int]:
    """The positions {1, k+1, ..., (n-1)k+1} carrying the first chain entry."""
    return [(i - 1) * k + 1 for i in range(1, n + 1)]


def nabla_block_map(pi: SetPartition, first: SetPartition, k: int) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Match blocks of pi = nabla(chain) with blocks of chain[0].

    Sends each block B of pi to the block of chain[0] whose image under
    i -> (i-1)k + 1 lies in B.  Blocks of pi disjoint from the restriction
    positions do not occur (every block meets them).
    """
    n = first.n
    positions = {(i - 1) * k + 1: i for i in range(1, n + 1)}
    out = {}
    for b in pi.blocks:
        src = sorted(positions[x] for x in b if x in positions)
        if not src:
            raise RuntimeError("block misses all restriction positions")
        blk = first.block_of(src[0])
        if tuple(src) != tuple(sorted(blk)):
            raise RuntimeError("restriction is not order isomorphic to the first entry")
        out[b] = blk
    return out


# -- counting ----------------------------------------------------------------


def nc_lambda_count(lam: tuple[int, ...]) -> int:
    """Number of noncrossing partitions of [n] with block sizes lam."""
    lam = tuple(sorted(lam, reverse=True))
    if not lam or any(x < 1 for x in lam):
        raise ValueError(f"malformed partition {lam}")
    n = sum(lam)
    ell = len(lam)
    denom = factorial(n - ell + 1)
    for i in range(1, n + 1):
        denom *= factorial(lam.count(i))
    return factorial(n) // denom


def all_noncrossing_partitions(n: int):
    """All noncrossing partitions of [n], by direct recursive construction.

    The block containing 1 splits the remaining elements into independent
    linear segments, each partitioned recursively.
    """
    for blocks in _nc_on(list(range(1, n + 1))):
        yield SetPartition.of(n, blocks)


def _nc_on(elements: list[int]):
    """Noncrossing partitions of a linearly ordered ground segment."""
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for size in range(0, len(rest) + 1):
        for chosen in itertools.combinations(rest, size):
            block = (first,) + chosen
            bounds = [elements.index(x) for x in block] + [len(elements)]
            segs = [elements[a + 1 : b] for a, b in zip(bounds, bounds[1:])]
            for combo in itertools.product(*[list(_nc_on(s)) for s in segs]):
                blocks = [block]
                for sub in combo:
                    blocks.extend(sub)
                yield blocks


def symmetric_kdiv_count(mu: tuple[int, ...], n: int, k: int, m: int) -> int:
    """Count of m-fold symmetric k-divisible noncrossing partitions of [kn]
    whose non-invariant blocks form mu_j orbits of blocks of size kj.

    The value is (kn/m)(kn/m - 1)...(kn/m - (r-1)) / (mu_1! ... mu_n!)
    with r = sum(mu); any leftover elements form the invariant block.
    """
    if m < 2 or (k * n) % m:
        raise ValueError(f"m = {m} must be >= 2 and divide kn = {k * n}")
    mu = tuple(mu) + (0,) * (n - len(mu))
    r = sum(mu)
    num = 1
    base = Fraction(k * n, m)
    for t in range(r):
        num *= base - t
    denom = 1
    for mj in mu:
        denom *= factorial(mj)
    val = Fraction(num, denom)
    if val.denominator != 1:
        raise RuntimeError("count is not an integer (logic error)")
    return int(val)


def symmetric_kdiv_type(p: SetPartition, k: int, m: int) -> tuple[int, ...] | None:
    """Orbit-type vector of an m-fold symmetric k-divisible partition of [kn].

    Returns None when p is not m-fold symmetric, not k-divisible, or has a
    non-invariant orbit shorter than m.  Entry j-1 counts length-m orbits of
    blocks of size kj.
    """
    N = p.n
    step = N // m
    if any(len(b) % k for b in p.blocks):
        return None
    rot = rotate_partition(p, step)
    if rot != p:
        return None
    n = N // k
    mu = [0] * n
    seen = set()
    for b in p.blocks:
        fb = frozenset(b)
        if fb in seen:
            continue
        orbit = {fb}
        cur = b
        while True:
            cur = tuple((x - 1 + step) % N + 1 for x in cur)
            if frozenset(cur) == fb:
                break
            orbit.add(frozenset(cur))
        seen |= orbit
        if len(orbit) == 1:
            continue
        if len(orbit) != m:
            return None
        mu[len(b) // k - 1] += 1
    return tuple(mu)


# -- type BC ------------------------------------------------------------------


def signed_to_line(x: int, n: int) -> int:
    """The identification +-[n] = [2n]: i -> i, -i -> n + i."""
    return x if x > 0 else n - x


def line_to_signed(x: int, n: int) -> int:
    return x if x <= n else n - x


def to_line_partition(p: SetPartition) -> SetPartition:
    blocks = [tuple(signed_to_line(x, p.n) for x in b) for b in p.blocks]
    return SetPartition.of(2 * p.n, blocks)


def from_line_partition(p: SetPartition, n: int) -> SetPartition:
    blocks = [tuple(line_to_signed(x, n) for x in b) for b in p.blocks]
    return SetPartition.of(n, blocks, signed=True)


@dataclass(frozen=True)
class LabeledPartition:
    """A k-divisible partition with block labels: |B| = k |f(B)|, labels
    partition the label ground set, and f(-B) = -f(B) in the signed case."""

    partition: SetPartition
    labels: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    @staticmethod
    def of(partition: SetPartition, labels: dict) -> "LabeledPartition":
        items = tuple(sorted((tuple(sorted(b)), tuple(sorted(l))) for b, l in labels.items()))
        lp = LabeledPartition(partition, items)
        lp.validate()
        return lp

    def validate(self):
        p = self.partition
        labelled_blocks = [b for b, _ in self.labels]
        if sorted(labelled_blocks) != sorted(p.blocks):
            raise ValueError("labels must cover exactly the blocks")
        sizes = {len(b) // len(l) for b, l in self.labels if l}
        if len(sizes) != 1 or any(len(b) % len(l) for b, l in self.labels):
            raise ValueError("block sizes are not a common multiple of label sizes")
        covered = sorted(x for _, l in self.labels for x in l)
        k = sizes.pop()
        n = p.n // k
        ground = list(range(1, n + 1))
        if p.signed:
            ground += [-i for i in range(1, n + 1)]
        if covered != sorted(ground):
            raise ValueError("labels do not partition the ground set")
        if p.signed:
            lab = dict(self.labels)
            for b, l in self.labels:
                mb = tuple(sorted(-x for x in b))
                if set(lab[mb]) != {-x for x in l}:
                    raise ValueError("labels are not centrally symmetric")

    @property
    def k(self) -> int:
        b, l = self.labels[0]
        return len(b) // len(l)

    def label_of(self, block) -> tuple[int, ...]:
        return dict(self.labels)[tuple(sorted(block))]

    def __repr__(self):
        bits = ", ".join(
            f"{','.join(map(str, b))} -> {{{','.join(map(str, l))}}}" for b, l in self.labels
        )
        return f"Labeled({self.partition!r}; {bits})"


def bc_nabla(chain: tuple[SetPartition, ...], labels: dict) -> LabeledPartition:
    """Labeled nabla for centrally symmetric chains on +-[n].

    The chain is pushed through the +-[n] = [2n] identification, nabla is
    applied there, and the result is pulled back; labels on the blocks of
    the first chain entry transfer along the restriction isomorphism.
    """
    n = chain[0].n
    k = len(chain)
    for p in chain:
        if not p.is_centrally_symmetric():
            raise ValueError("chain entries must be centrally symmetric")
    line_chain = tuple(to_line_partition(p) for p in chain)
    pi_line = nabla(line_chain)
    pi = from_line_partition(pi_line, k * n)
    if not pi.is_centrally_symmetric():
        raise RuntimeError("central symmetry lost under nabla (logic error)")
    block_map = nabla_block_map(pi_line, line_chain[0], k)
    label_in = {tuple(sorted(b)): tuple(sorted(l)) for b, l in labels.items()}
    out_labels = {}
    for b_line, b_first_line in block_map.items():
        b = tuple(sorted(line_to_signed(x, k * n) for x in b_line))
        b_first = tuple(sorted(line_to_signed(x, n) for x in b_first_line))
        out_labels[b] = label_in[b_first]
    return LabeledPartition.of(pi, out_labels)


def openers(p: SetPartition) -> dict[tuple[int, ...], int]:
    """Opener of each nonzero block under the periodic parenthesization.

    Blocks are peeled innermost first: a block is removable once its
    elements are cyclically consecutive among the not-yet-removed
    positions (zero-block positions are never removed and so keep
    blocking).  The opener is the first element of the removed run.
    """
    if not p.signed or not p.is_centrally_symmetric():
        raise ValueError("openers needs a centrally symmetric signed partition")
    if not is_noncrossing(p):
        raise ValueError("openers needs a noncrossing partition")
    n = p.n
    order = list(range(1, n + 1)) + [-i for i in range(1, n + 1)]
    alive = set(order)
    zero = p.zero_block()
    todo = [b for b in p.blocks if b != zero]
    out: dict[tuple[int, ...], int] = {}

    def run_start(b) -> int | None:
        # unique element whose alive predecessor is outside the block, and
        # from which the block is one contiguous alive run
        bset = set(b)
        starts = []
        for x in b:
            pos = circ_position(x, n)
            while True:
                pos = (pos - 1) % (2 * n)
                prev = order[pos]
                if prev in alive:
                    break
            if prev not in bset:
                starts.append(x)
        if len(starts) != 1:
            return None
        pos = circ_position(starts[0], n)
        run = [starts[0]]
        while len(run) < len(b):
            pos = (pos + 1) % (2 * n)
            nxt = order[pos]
            if nxt not in alive:
                continue
            if nxt not in bset:
                return None
            run.append(nxt)
        return starts[0]

    while todo:
        # find every innermost block before removing any: mirror pairs become
        # removable together and must both be read against the same circle
        ready = [(b, run_start(b)) for b in todo]
        ready = [(b, s) for b, s in ready if s is not None]
        if not ready:
            raise RuntimeError(f"no removable block; not noncrossing? {p!r}")
        for b, s in ready:
            out[b] = s
            alive -= set(b)
        removed = {b for b, _ in ready}
        todo = [b for b in todo if b not in removed]
    return out
