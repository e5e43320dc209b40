"""The Fuss noncrossing parking space as an explicit permutation set.

Classes are pairs [w, chain] where the chain is a multichain in NC(W) and
w is reduced to the lexicographically minimal representative of its coset
modulo the isotropy group of the first flat.  Both group actions, the
fixed-point characters, the classical type A models, and the equivariant
function counts behind the type A character argument live here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .reflgroup import (
    DEFAULT_CAP,
    CapExceeded,
    FlatPartition,
    GroupSpec,
    SignedPerm,
    gcd_int,
    group,
)
from . import ncw, setpart


@dataclass(frozen=True, order=True)
class ParkClass:
    """[w, X_1 <= ... <= X_k], stored by the NC multichain below the flats."""

    chain: tuple
    rep: object

    def __repr__(self):
        return f"ParkClass(rep={self.rep!r}, chain={self.chain!r})"


class ParkSpace:
    """Park^NC for one (group, k), with cached action tables."""

    def __init__(self, spec: GroupSpec, k: int, cap: int = DEFAULT_CAP):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.spec = spec
        self.k = k
        self.group = group(spec.family, spec.param, cap)
        total = (k * spec.coxeter_number + 1) ** spec.rank
        if total > cap:
            raise CapExceeded(f"(kh+1)^n = {total} exceeds cap {cap}")
        self.nc = ncw.build_nc(self.group)
        self.c = self.nc.c
        self.chains = self.nc.multichains(k)
        self.chain_index = {ch: i for i, ch in enumerate(self.chains)}
        self._canon: dict[FlatPartition, dict] = {}
        self._gchain: dict[tuple, tuple] = {}
        self._classes = None
        self._index = None
        self._garr = None
        self._nabla_inv = None

    # -- canonicalization ----------------------------------------------------

    def _canon_map(self, flat: FlatPartition) -> dict:
        if flat not in self._canon:
            iso = self.group.isotropy_elements(flat)
            canon = {}
            for w in self.group.elements():
                if w in canon:
                    continue
                for h in iso:
                    canon[w * h] = w
            self._canon[flat] = canon
        return self._canon[flat]

    def make_class(self, chain: tuple, w) -> ParkClass:
        flat = self.nc.flat_of[chain[0]]
        return ParkClass(chain, self._canon_map(flat)[w])

    def classes(self) -> list[ParkClass]:
        if self._classes is None:
            out = []
            for ch in self.chains:
                canon = self._canon_map(self.nc.flat_of[ch[0]])
                out.extend(ParkClass(ch, r) for r in set(canon.values()))
            self._classes = sorted(out)
            self._index = {p: i for i, p in enumerate(self._classes)}
        return self._classes

    def class_index(self, p: ParkClass) -> int:
        self.classes()
        return self._index[p]

    # -- the two actions -------------------------------------------------------

    def act_w(self, v, p: ParkClass) -> ParkClass:
        return self.make_class(p.chain, v * p.rep)

    def act_g(self, p: ParkClass) -> ParkClass:
        u_k = p.chain[-1]
        return self.make_class(self._g_chain(p.chain), p.rep * (u_k * self.c.inverse()))

    def _g_chain(self, chain: tuple) -> tuple:
        if chain not in self._gchain:
            self._gchain[chain] = ncw.g_act_chain(chain, self.group, self.c)
        return self._gchain[chain]

    def act_g_power(self, p: ParkClass, d: int) -> ParkClass:
        for _ in range(d % (self.k * self.spec.coxeter_number)):
            p = self.act_g(p)
        return p

    # -- action tables and characters -----------------------------------------

    def g_table(self) -> list[int]:
        """Permutation of class indices induced by the cyclic generator."""
        if self._garr is None:
            classes = self.classes()
            self._garr = [self._index[self.act_g(p)] for p in classes]
        return self._garr

    def w_table(self, v) -> list[int]:
        classes = self.classes()
        return [self._index[self.act_w(v, p)] for p in classes]

    def fixed_count(self, v, d: int) -> int:
        kh = self.k * self.spec.coxeter_number
        if not 0 <= d < kh:
            raise ValueError(f"d = {d} outside [0, {kh})")
        garr = self.g_table()
        varr = self.w_table(v)
        power = list(range(len(varr)))
        for _ in range(d):
            power = [garr[x] for x in power]
        return sum(1 for i in range(len(varr)) if varr[power[i]] == i)

    def verify_weak(self, threads: int = 1) -> list[dict]:
        """Fixed counts against (kh+1)^mult for one element per conjugacy
        class and every power of the cyclic generator.

        The per-class sweeps are independent; threads > 1 runs them through
        a pool (the caches are prebuilt, so workers only read).
        """
        kh = self.k * self.spec.coxeter_number
        garr = self.g_table()

        def sweep(v):
            varr = self.w_table(v)
            power = list(range(len(varr)))
            rows = []
            for d in range(kh):
                count = sum(1 for i in range(len(varr)) if varr[power[i]] == i)
                mult = self.group.eigenvalue_multiplicity(v, d, kh)
                expected = (kh + 1) ** mult
                rows.append(
                    {
                        "v": repr(v),
                        "d": d,
                        "fixed": count,
                        "expected": expected,
                        "pass": count == expected,
                    }
                )
                power = [garr[x] for x in power]
            return rows

        reps = self.group.conjugacy_class_reps()
        if threads > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=threads) as pool:
                chunks = list(pool.map(sweep, reps))
        else:
            chunks = [sweep(v) for v in reps]
        return [row for chunk in chunks for row in chunk]

    # -- orbit structure ---------------------------------------------------------

    def orbit_decomposition(self) -> dict:
        """Multiplicity of each first-flat orbit type among the W-orbits.

        W-orbits of classes biject with chains.  Type A keys are the block
        size partitions of the first flat; other families key by the
        lexicographically minimal flat in the W-orbit of the first flat.
        """
        out: dict = {}
        for ch in self.chains:
            x1 = self.nc.flat_of[ch[0]]
            if self.spec.family == "A":
                key = tuple(sorted((len(b) for b in x1.blocks), reverse=True))
            else:
                key = min(self.group.act_on_flat(w, x1) for w in self.group.elements())
            out[key] = out.get(key, 0) + 1
        return out

    # -- labeled pictures and type A models ---------------------------------------

    def chain_partitions(self, chain: tuple) -> tuple[setpart.SetPartition, ...]:
        signed = self.spec.family != "A"
        return tuple(
            setpart.SetPartition.of(self.spec.param, self.nc.flat_of[w].blocks, signed=signed)
            for w in chain
        )

    def labeled_pair(self, p: ParkClass) -> setpart.LabeledPartition:
        """The block-labeled k-divisible disc picture of a class (types A, B)."""
        fam = self.spec.family
        parts = self.chain_partitions(p.chain)
        if fam == "A":
            pi = setpart.nabla(parts)
            bmap = setpart.nabla_block_map(pi, parts[0], self.k)
            labels = {b: tuple(p.rep(x) for x in src) for b, src in bmap.items()}
            return setpart.LabeledPartition.of(pi, labels)
        if fam == "B":
            labels = {b: tuple(p.rep(x) for x in b) for b in parts[0].blocks}
            return setpart.bc_nabla(parts, labels)
        raise ValueError(f"no labeled disc picture for family {fam}")

    def from_labeled_pair(self, lp: setpart.LabeledPartition) -> ParkClass:
        """Inverse of labeled_pair: invert nabla for the chain, then read a
        representative off the label sets."""
        chain = self._nabla_index()[lp.partition]
        return self.make_class(chain, rep_from_labels(self, chain, lp))

    def _nabla_index(self) -> dict:
        if self._nabla_inv is None:
            fam = self.spec.family
            n = self.spec.param
            inv = {}
            for ch in self.chains:
                parts = self.chain_partitions(ch)
                if fam == "A":
                    inv[setpart.nabla(parts)] = ch
                else:
                    line = tuple(setpart.to_line_partition(q) for q in parts)
                    inv[setpart.from_line_partition(setpart.nabla(line), self.k * n)] = ch
            self._nabla_inv = inv
        return self._nabla_inv

    def to_classical(self, p: ParkClass) -> tuple[int, ...]:
        """Type A: the k-parking sequence, a_i = least element of the block
        whose label contains i."""
        if self.spec.family != "A":
            raise ValueError("to_classical is a type A operation")
        lp = self.labeled_pair(p)
        out = [0] * self.spec.param
        for b, lab in lp.labels:
            for i in lab:
                out[i - 1] = min(b)
        return tuple(out)

    # -- serialization --------------------------------------------------------

    def class_record(self, p: ParkClass) -> dict:
        if self.spec.family == "I2":
            chain = []
            for w in p.chain:
                flat = self.nc.flat_of[w]
                chain.append(flat.kind if flat.kind != "line" else f"line:{flat.line}")
            rep = ["reflection" if p.rep.refl else "rotation", p.rep.j]
        else:
            chain = [
                setpart.format_partition(q) for q in self.chain_partitions(p.chain)
            ]
            rep = list(p.rep.images)
        return {"chain": chain, "rep": rep}


def build_park(spec: GroupSpec, k: int, cap: int = DEFAULT_CAP) -> ParkSpace:
    return ParkSpace(spec, k, cap)


def rep_from_labels(space: ParkSpace, chain: tuple, lp: setpart.LabeledPartition):
    """Some group element sending each first-flat block to its label set."""
    fam = space.spec.family
    n = space.spec.param
    parts = space.chain_partitions(chain)
    img = [0] * n
    if fam == "A":
        bmap = setpart.nabla_block_map(lp.partition, parts[0], space.k)
        for b, src in bmap.items():
            for s, t in zip(sorted(src), sorted(lp.label_of(b))):
                img[s - 1] = t
        return SignedPerm(tuple(img))
    if fam != "B":
        raise ValueError("labeled pictures exist for types A and B only")
    line = tuple(setpart.to_line_partition(q) for q in parts)
    bmap = setpart.nabla_block_map(setpart.nabla(line), line[0], space.k)
    for b_line, src_line in bmap.items():
        b = tuple(sorted(setpart.line_to_signed(x, space.k * n) for x in b_line))
        src = sorted(setpart.line_to_signed(x, n) for x in src_line)
        lab = sorted(lp.label_of(b))
        if frozenset(src) == frozenset(-x for x in src):
            # zero block: send positive members to one label per +- pair
            for s, t in zip([x for x in src if x > 0], sorted({abs(t) for t in lab})):
                img[s - 1] = t
        else:
            # ascending-to-ascending is mirror consistent across the pair -B
            for s, t in zip(src, lab):
                if s > 0:
                    img[s - 1] = t
                else:
                    img[-s - 1] = -t
    return SignedPerm(tuple(img))


# ---------------------------------------------------------------------------
# classical k-parking functions (type A)


def is_classical_park(seq, n: int, k: int) -> bool:
    """Nondecreasing rearrangement b satisfies b_i <= k(i-1) + 1."""
    if len(seq) != n or any(a < 1 for a in seq):
        return False
    b = sorted(seq)
    return all(b[i] <= k * i + 1 for i in range(n))


def enumerate_classical(n: int, k: int) -> set[tuple[int, ...]]:
    top = k * (n - 1) + 1
    return {
        seq
        for seq in itertools.product(range(1, top + 1), repeat=n)
        if is_classical_park(seq, n, k)
    }


def permute_sequence(w, seq):
    """Coordinate action moving the entry at position i to position w(i);
    equivalently (a_1,...,a_n) -> (a_{w^-1(1)},...,a_{w^-1(n)}).

    This is the left action matching label permutation on disc pictures.
    """
    out = [0] * len(seq)
    for i, a in enumerate(seq, start=1):
        out[w(i) - 1] = a
    return tuple(out)


# ---------------------------------------------------------------------------
# equivariant function counts (type A character argument)


def equivariant_function_count(n: int, k: int, w, d: int) -> int:
    """Brute-force count of functions f: [n] -> [kn] u {0} with
    f(w(j)) = g^d f(j), where g cycles [kn] and fixes 0.

    Asserted against (kn+1)^r where r counts cycles of w with length
    divisible by the order of g^d.
    """
    kn = k * n
    if d % kn == 0:
        raise ValueError("d must be nonzero modulo kn")
    d = d % kn
    m = kn // gcd_int(kn, d)
    wimg = [w(j) for j in range(1, n + 1)]
    count = 0
    for f in itertools.product(range(kn + 1), repeat=n):
        for j in range(n):
            fj = f[j]
            target = 0 if fj == 0 else (fj - 1 + d) % kn + 1
            if f[wimg[j] - 1] != target:
                break
        else:
            count += 1
    r = sum(1 for cyc in w.cycles() if len(cyc) % m == 0)
    if count != (kn + 1) ** r:
        raise RuntimeError(f"equivariant count {count} != (kn+1)^{r} (logic error)")
    return count
