"""Concrete finite reflection groups of types A, B/C, D and I2(m).

Elements are exact value objects: signed permutations for the infinite
families, symbolic rotation/reflection pairs for the dihedral groups.
Eigenvalues are tracked as rational rotation numbers in Q/Z, so every
character count in the rest of the package is integer arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

DEFAULT_CAP = 10**6

FAMILIES = ("A", "B", "D", "I2")


class CapExceeded(RuntimeError):
    """Raised when a full enumeration would exceed the configured cap."""


# ---------------------------------------------------------------------------
# group elements


@dataclass(frozen=True, order=True)
class SignedPerm:
    """A permutation w of +-[n] with w(-i) = -w(i), stored as (w(1),...,w(n)).

    Plain (type A) permutations are the special case with all images
    positive.  Ordering is lexicographic on the image vector, which makes
    canonical coset representatives deterministic.
    """

    images: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        if i > 0:
            return self.images[i - 1]
        return -self.images[-i - 1]

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        # function composition: (u*v)(i) = u(v(i))
        return SignedPerm(tuple(self(other.images[i]) for i in range(len(self.images))))

    def inverse(self) -> "SignedPerm":
        img = [0] * len(self.images)
        for i, j in enumerate(self.images, start=1):
            if j > 0:
                img[j - 1] = i
            else:
                img[-j - 1] = -i
        return SignedPerm(tuple(img))

    def is_positive(self) -> bool:
        return all(j > 0 for j in self.images)

    def neg_count(self) -> int:
        return sum(1 for j in self.images if j < 0)

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycles of w acting on +-[n] (on [n] when w is unsigned).

        Signed permutations yield the full decomposition on +-[n]; each
        cycle starts at its element of smallest absolute value (positive
        preferred), and cycles are sorted by that starting element.
        """
        ground = list(range(1, self.n + 1))
        if not self.is_positive():
            ground += [-i for i in range(1, self.n + 1)]
        seen: set[int] = set()
        out = []
        for start in sorted(ground, key=lambda x: (abs(x), x < 0)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def signed_cycle_pairs(self) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
        """Split the cycle decomposition on +-[n] into (balanced, paired).

        Balanced cycles have support S = -S; paired cycles come in +-
        mirror pairs, of which only the representative containing the
        smaller absolute value is returned.
        """
        balanced, paired = [], []
        seen: set[frozenset] = set()
        for cyc in self.full_cycles():
            supp = frozenset(cyc)
            if supp in seen:
                continue
            if supp == frozenset(-x for x in supp):
                balanced.append(cyc)
                seen.add(supp)
            else:
                paired.append(cyc)
                seen.add(supp)
                seen.add(frozenset(-x for x in supp))
        return balanced, paired

    def full_cycles(self) -> list[tuple[int, ...]]:
        """Cycle decomposition on all of +-[n], even for unsigned w."""
        seen: set[int] = set()
        out = []
        for start in sorted(range(1, self.n + 1)) + sorted(-i for i in range(1, self.n + 1)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        k, w = 1, self
        ident = identity_perm(self.n)
        while w != ident:
            w = w * self
            k += 1
        return k

    def __repr__(self):
        return f"SignedPerm{self.images}"


def identity_perm(n: int) -> SignedPerm:
    return SignedPerm(tuple(range(1, n + 1)))


def perm_from_cycles(n: int, *cycles: tuple[int, ...]) -> SignedPerm:
    """Build a plain permutation of [n] from disjoint cycles."""
    img = list(range(1, n + 1))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b
    return SignedPerm(tuple(img))


def paired_cycle(n: int, cyc: tuple[int, ...]) -> SignedPerm:
    """Signed permutation ((c1,...,cl)) with mirror cycle (-c1,...,-cl)."""
    img = list(range(1, n + 1))

    def set_image(a, b):
        if a > 0:
            img[a - 1] = b
        else:
            img[-a - 1] = -b

    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        set_image(a, b)
        set_image(-a, -b)
    return SignedPerm(tuple(img))


def balanced_cycle(n: int, cyc: tuple[int, ...]) -> SignedPerm:
    """Signed permutation [c1,...,cl] = (c1,...,cl,-c1,...,-cl)."""
    full = tuple(cyc) + tuple(-c for c in cyc)
    img = list(range(1, n + 1))
    for a, b in zip(full, full[1:] + full[:1]):
        if a > 0:
            img[a - 1] = b
        else:
            img[-a - 1] = -b
    return SignedPerm(tuple(img))


@dataclass(frozen=True, order=True)
class DihedralElement:
    """Element of I2(m): rotation c^j, or reflection c^j s in normal form."""

    m: int
    refl: bool
    j: int

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        m = self.m
        if not self.refl:
            return DihedralElement(m, other.refl, (self.j + other.j) % m)
        return DihedralElement(m, not other.refl, (self.j - other.j) % m)

    def inverse(self) -> "DihedralElement":
        if self.refl:
            return self
        return DihedralElement(self.m, False, (-self.j) % self.m)

    def order(self) -> int:
        if self.refl:
            return 2
        if self.j == 0:
            return 1
        return self.m // gcd_int(self.m, self.j)

    def __repr__(self):
        return f"I2({self.m}):{'c^%d s' % self.j if self.refl else 'c^%d' % self.j}"


def gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# group specification


@dataclass(frozen=True)
class GroupSpec:
    """Which group: family in {A, B, D, I2} plus its index parameter.

    GroupSpec("A", n) is A_{n-1} acting on +-free permutations of [n];
    GroupSpec("B", n) is B_n = C_n; GroupSpec("D", n) needs n >= 3;
    GroupSpec("I2", m) needs m >= 3.
    """

    family: str
    param: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.param < 1:
            raise ValueError("parameter must be positive")
        if self.family == "A" and self.param < 2:
            raise ValueError("type A needs n >= 2")
        if self.family == "D" and self.param < 3:
            raise ValueError("type D needs n >= 3")
        if self.family == "I2" and self.param < 3:
            raise ValueError("type I2 needs m >= 3")

    @property
    def rank(self) -> int:
        if self.family == "A":
            return self.param - 1
        if self.family == "I2":
            return 2
        return self.param

    @property
    def coxeter_number(self) -> int:
        f, p = self.family, self.param
        if f == "A":
            return p
        if f == "B":
            return 2 * p
        if f == "D":
            return 2 * p - 2
        return p

    @property
    def degrees(self) -> tuple[int, ...]:
        f, p = self.family, self.param
        if f == "A":
            return tuple(range(2, p + 1))
        if f == "B":
            return tuple(range(2, 2 * p + 1, 2))
        if f == "D":
            return tuple(range(2, 2 * p - 1, 2)) + (p,)
        return (2, p)

    @property
    def order(self) -> int:
        f, p = self.family, self.param
        if f == "A":
            return factorial(p)
        if f == "B":
            return factorial(p) * 2**p
        if f == "D":
            return factorial(p) * 2 ** (p - 1)
        return 2 * p

    def __str__(self):
        if self.family == "A":
            return f"A{self.param - 1}"
        if self.family == "I2":
            return f"I2({self.param})"
        return f"{self.family}{self.param}"


def factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


# ---------------------------------------------------------------------------
# flats


@dataclass(frozen=True, order=True)
class FlatPartition:
    """A flat of the reflection arrangement, in coordinate-equality form.

    Types A/B/D store the set partition of [n] resp. +-[n] (blocks as
    sorted tuples, sorted lexicographically).  I2(m) flats are symbolic:
    kind "plane", "origin", or ("line", j) where line j is the mirror of
    the reflection c^j s.
    """

    family: str
    n: int
    blocks: tuple[tuple[int, ...], ...] = ()
    kind: str = ""
    line: int = -1

    @property
    def dim(self) -> int:
        if self.family == "A":
            return len(self.blocks) - 1
        if self.family == "I2":
            return {"plane": 2, "line": 1, "origin": 0}[self.kind]
        pairs = 0
        for b in self.blocks:
            if frozenset(b) != frozenset(-x for x in b):
                pairs += 1
        return pairs // 2

    def zero_block(self) -> tuple[int, ...] | None:
        for b in self.blocks:
            if frozenset(b) == frozenset(-x for x in b):
                return b
        return None

    def block_of(self, i: int) -> tuple[int, ...]:
        for b in self.blocks:
            if i in b:
                return b
        raise KeyError(i)

    def __repr__(self):
        if self.family == "I2":
            tag = self.kind if self.kind != "line" else f"line{self.line}"
            return f"Flat[I2({self.n}):{tag}]"
        body = "/".join(",".join(str(x) for x in b) for b in self.blocks)
        return f"Flat[{self.family}:{body}]"


def canonical_blocks(blocks) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def partition_refines(p: tuple[tuple[int, ...], ...], q: tuple[tuple[int, ...], ...]) -> bool:
    """True when every block of p lies inside a block of q."""
    where = {}
    for idx, b in enumerate(q):
        for x in b:
            where[x] = idx
    return all(len({where[x] for x in b}) == 1 for b in p)


def merge_partitions(ground, partitions) -> tuple[tuple[int, ...], ...]:
    """Finest common coarsening (join in refinement order) via union-find."""
    parent = {x: x for x in ground}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part in partitions:
        for b in part:
            b = list(b)
            for x in b[1:]:
                rx, r0 = find(x), find(b[0])
                if rx != r0:
                    parent[rx] = r0
    groups: dict[int, list[int]] = {}
    for x in ground:
        groups.setdefault(find(x), []).append(x)
    return canonical_blocks(groups.values())


# ---------------------------------------------------------------------------
# the group object


class ReflectionGroup:
    """Concrete group for a GroupSpec, with cached desk-scale enumerations."""

    def __init__(self, spec: GroupSpec, cap: int = DEFAULT_CAP):
        self.spec = spec
        self.cap = cap
        self._elements = None
        self._reflections = None
        self._conj_reps = None

    # -- basics ------------------------------------------------------------

    @property
    def family(self) -> str:
        return self.spec.family

    @property
    def rank(self) -> int:
        return self.spec.rank

    @property
    def coxeter_number(self) -> int:
        return self.spec.coxeter_number

    def identity(self):
        if self.family == "I2":
            return DihedralElement(self.spec.param, False, 0)
        return identity_perm(self.spec.param)

    def coxeter_element(self):
        """The distinguished Coxeter element of the family."""
        f, p = self.family, self.spec.param
        if f == "A":
            return perm_from_cycles(p, tuple(range(1, p + 1)))
        if f == "B":
            return balanced_cycle(p, tuple(range(1, p + 1)))
        if f == "D":
            return balanced_cycle(p, tuple(range(1, p))) * balanced_cycle(p, (p,))
        return DihedralElement(p, False, 1)

    def contains(self, w) -> bool:
        if self.family == "I2":
            return isinstance(w, DihedralElement) and w.m == self.spec.param
        if not isinstance(w, SignedPerm) or w.n != self.spec.param:
            return False
        if self.family == "A":
            return w.is_positive()
        if self.family == "D":
            return w.neg_count() % 2 == 0
        return True

    def elements(self) -> list:
        if self._elements is None:
            if self.spec.order > self.cap:
                raise CapExceeded(f"|{self.spec}| = {self.spec.order} exceeds cap {self.cap}")
            f, p = self.family, self.spec.param
            if f == "I2":
                els = [DihedralElement(p, r, j) for r in (False, True) for j in range(p)]
            elif f == "A":
                els = [SignedPerm(im) for im in itertools.permutations(range(1, p + 1))]
            else:
                els = []
                for base in itertools.permutations(range(1, p + 1)):
                    for signs in itertools.product((1, -1), repeat=p):
                        if f == "D" and signs.count(-1) % 2 == 1:
                            continue
                        els.append(SignedPerm(tuple(s * b for s, b in zip(signs, base))))
            self._elements = sorted(els)
        return self._elements

    def reflections(self) -> list:
        if self._reflections is None:
            f, p = self.family, self.spec.param
            if f == "I2":
                refls = [DihedralElement(p, True, j) for j in range(p)]
            elif f == "A":
                refls = [perm_from_cycles(p, (i, j)) for i in range(1, p) for j in range(i + 1, p + 1)]
            else:
                refls = [paired_cycle(p, (i, j)) for i in range(1, p) for j in range(i + 1, p + 1)]
                refls += [paired_cycle(p, (i, -j)) for i in range(1, p) for j in range(i + 1, p + 1)]
                if f == "B":
                    refls += [balanced_cycle(p, (i,)) for i in range(1, p + 1)]
            self._reflections = sorted(refls)
        return self._reflections

    # -- flats and lengths ---------------------------------------------------

    def fixed_flat(self, w) -> FlatPartition:
        """The flat V^w as a coordinate-equality partition (or I2 tag)."""
        f, p = self.family, self.spec.param
        if f == "I2":
            if not w.refl:
                kind = "plane" if w.j == 0 else "origin"
                return FlatPartition("I2", p, kind=kind)
            return FlatPartition("I2", p, kind="line", line=w.j)
        if f == "A":
            return FlatPartition("A", p, blocks=canonical_blocks(w.cycles()))
        balanced, paired = w.signed_cycle_pairs()
        blocks = []
        zero: list[int] = []
        for cyc in balanced:
            zero.extend(cyc)
        if zero:
            blocks.append(tuple(zero))
        for cyc in paired:
            blocks.append(cyc)
            blocks.append(tuple(-x for x in cyc))
        return FlatPartition(f, p, blocks=canonical_blocks(blocks))

    def reflection_length(self, w) -> int:
        return self.rank - self.fixed_flat(w).dim

    def absolute_leq(self, u, v) -> bool:
        lu = self.reflection_length(u)
        lv = self.reflection_length(v)
        return lv == lu + self.reflection_length(u.inverse() * v)

    def all_flats(self) -> list[FlatPartition]:
        """Every flat of the arrangement, as fixed spaces of group elements."""
        return sorted({self.fixed_flat(w) for w in self.elements()})

    def flat_leq(self, x: FlatPartition, y: FlatPartition) -> bool:
        """Intersection-lattice order by reverse inclusion: x <= y iff x contains y."""
        if self.family == "I2":
            if x.kind == "plane" or y.kind == "origin":
                return True
            return x == y
        return partition_refines(x.blocks, y.blocks)

    def act_on_flat(self, w, x: FlatPartition) -> FlatPartition:
        if self.family == "I2":
            if x.kind != "line":
                return x
            if not w.refl:
                return FlatPartition("I2", x.n, kind="line", line=(x.line + 2 * w.j) % x.n)
            return FlatPartition("I2", x.n, kind="line", line=(2 * w.j - x.line) % x.n)
        blocks = canonical_blocks(tuple(w(i) for i in b) for b in x.blocks)
        return FlatPartition(x.family, x.n, blocks=blocks)

    def isotropy_contains(self, x: FlatPartition, w) -> bool:
        """True iff w fixes the flat x pointwise."""
        if self.family == "I2":
            if x.kind == "plane":
                return w == self.identity()
            if x.kind == "origin":
                return True
            return w == self.identity() or w == DihedralElement(x.n, True, x.line)
        if not self.contains(w):
            return False
        if self.family == "A":
            where = {i: idx for idx, b in enumerate(x.blocks) for i in b}
            return all(where[w(i)] == where[i] for i in range(1, x.n + 1))
        zero = x.zero_block() or ()
        where = {i: idx for idx, b in enumerate(x.blocks) for i in b}
        for i in range(1, x.n + 1):
            if i in zero:
                if w(i) not in zero:
                    return False
            elif where[w(i)] != where[i]:
                return False
        return True

    def isotropy_elements(self, x: FlatPartition) -> list:
        """All of W_x, generated blockwise (no full group scan needed)."""
        f, p = self.family, self.spec.param
        if f == "I2":
            if x.kind == "plane":
                return [self.identity()]
            if x.kind == "line":
                return sorted([self.identity(), DihedralElement(p, True, x.line)])
            return self.elements()
        if f == "A":
            out = [identity_perm(p)]
            for b in x.blocks:
                new = []
                for w in out:
                    for imgs in itertools.permutations(b):
                        im = list(w.images)
                        for src, dst in zip(b, imgs):
                            im[src - 1] = dst
                        new.append(SignedPerm(tuple(im)))
                out = new
            return sorted(out)
        zero = x.zero_block() or ()
        pos_pairs = [b for b in x.blocks if b != zero and min(abs(t) for t in b) in b]
        out = [identity_perm(p)]
        for b in pos_pairs:
            new = []
            for w in out:
                for imgs in itertools.permutations(b):
                    im = list(w.images)
                    for src, dst in zip(b, imgs):
                        if src > 0:
                            im[src - 1] = dst
                        else:
                            im[-src - 1] = -dst
                    new.append(SignedPerm(tuple(im)))
            out = new
        if zero:
            zpos = [t for t in zero if t > 0]
            new = []
            for w in out:
                for imgs in itertools.permutations(zpos):
                    for signs in itertools.product((1, -1), repeat=len(zpos)):
                        im = list(w.images)
                        for src, dst, s in zip(zpos, imgs, signs):
                            im[src - 1] = s * dst
                        new.append(SignedPerm(tuple(im)))
            out = new
        if f == "D":
            out = [w for w in out if w.neg_count() % 2 == 0]
        return sorted(set(out))

    # -- spectra -------------------------------------------------------------

    def eigenvalue_rotations(self, w) -> tuple[Fraction, ...]:
        """Eigenvalues of w on the reflection representation V, as sorted
        rotation numbers q in [0,1) meaning e^{2 pi i q}."""
        f = self.family
        rots: list[Fraction] = []
        if f == "I2":
            m = self.spec.param
            if w.refl:
                rots = [Fraction(0), Fraction(1, 2)]
            else:
                rots = [Fraction(w.j % m, m), Fraction((-w.j) % m, m)]
        elif f == "A":
            for cyc in w.cycles():
                rots.extend(Fraction(j, len(cyc)) for j in range(len(cyc)))
            rots.remove(Fraction(0))
        else:
            balanced, paired = w.signed_cycle_pairs()
            for cyc in balanced:
                l = len(cyc) // 2
                rots.extend(Fraction(2 * j + 1, 2 * l) for j in range(l))
            for cyc in paired:
                rots.extend(Fraction(j, len(cyc)) for j in range(len(cyc)))
        return tuple(sorted(rots))

    def eigenvalue_multiplicity(self, w, d: int, order: int) -> int:
        """Multiplicity of e^{2 pi i d/order} in the spectrum of w on V."""
        if not 0 <= d < order:
            raise ValueError(f"d = {d} outside [0, {order})")
        target = Fraction(d, order)
        return sum(1 for q in self.eigenvalue_rotations(w) if q == target)

    # -- conjugacy ------------------------------------------------------------

    def conjugacy_class_reps(self) -> list:
        if self._conj_reps is None:
            els = self.elements()
            remaining = set(els)
            reps = []
            while remaining:
                w = min(remaining)
                reps.append(w)
                remaining -= {g * w * g.inverse() for g in els}
            self._conj_reps = reps
        return self._conj_reps


@lru_cache(maxsize=None)
def group(family: str, param: int, cap: int = DEFAULT_CAP) -> ReflectionGroup:
    return ReflectionGroup(GroupSpec(family, param), cap=cap)
