"""Fixed loci of the explicit power maps, with their two group actions.

Points carry exponents of a fixed primitive root of unity of order kh
(types B and D) or km (dihedral), with 0 as a separate symbol; no complex
arithmetic appears anywhere.  The type BC inverse bijections onto the
parking space and the seeded equivariant construction of the dihedral
bijection are implemented and validated rather than trusted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .reflgroup import (
    DEFAULT_CAP,
    CapExceeded,
    DihedralElement,
    GroupSpec,
    group,
)
from . import parkspace, setpart

ZERO = None


@dataclass(frozen=True, order=True)
class LocusPoint:
    """Coordinate vector over {0} u <omega>, exponents mod the root order."""

    order: int
    coords: tuple

    def to_json(self) -> list:
        """JSON array mixing the literal "0" and integer exponents."""
        return ["0" if c is ZERO else int(c) for c in self.coords]

    def __repr__(self):
        body = ",".join("0" if c is ZERO else f"w{c}" for c in self.coords)
        return f"LocusPoint({body};{self.order})"


def locus_order(spec: GroupSpec, k: int) -> int:
    """Order of the root of unity parametrizing nonzero coordinates."""
    if spec.family not in ("B", "D", "I2"):
        raise ValueError("explicit loci exist for families B, D, I2 only")
    return k * spec.coxeter_number


def build_locus(spec: GroupSpec, k: int, cap: int = DEFAULT_CAP) -> list[LocusPoint]:
    """All (kh+1)^n locus points, deterministically ordered."""
    kh = locus_order(spec, k)
    n = spec.rank
    if (kh + 1) ** n > cap:
        raise CapExceeded(f"(kh+1)^n = {(kh + 1) ** n} exceeds cap {cap}")
    values = [ZERO] + list(range(kh))
    return [LocusPoint(kh, coords) for coords in itertools.product(values, repeat=n)]


def locus_act_w(spec: GroupSpec, w, p: LocusPoint) -> LocusPoint:
    kh = p.order
    if spec.family == "I2":
        v1, v2 = p.coords
        if w.refl:
            v1, v2 = v2, v1
        a = w.j
        new1 = v1 if v1 is ZERO else (v1 + diagonal_twist(spec, kh) * a) % kh
        new2 = v2 if v2 is ZERO else (v2 - diagonal_twist(spec, kh) * a) % kh
        return LocusPoint(kh, (new1, new2))
    half = kh // 2
    out = [ZERO] * len(p.coords)
    for i, v in enumerate(p.coords, start=1):
        j = w(i)
        if j > 0:
            out[j - 1] = v
        else:
            out[-j - 1] = v if v is ZERO else (v + half) % kh
    return LocusPoint(kh, tuple(out))


def diagonal_twist(spec: GroupSpec, order: int) -> int:
    # the dihedral rotation scales the diagonal coordinates by the k-th
    # power of the order-km root, k = order/m
    return order // spec.coxeter_number


def locus_act_g(p: LocusPoint, d: int = 1) -> LocusPoint:
    kh = p.order
    return LocusPoint(kh, tuple(v if v is ZERO else (v + d) % kh for v in p.coords))


def locus_fixed_count(spec: GroupSpec, k: int, v, d: int) -> int:
    pts = build_locus(spec, k)
    return sum(1 for p in pts if locus_act_w(spec, v, locus_act_g(p, d)) == p)


def point_dimension(spec: GroupSpec, p: LocusPoint) -> int:
    """Minimum dimension of a flat containing the point.

    Computed from coordinate coincidences: nonzero coordinates cluster by
    equality up to sign; type B zeros pin to the zero block, type D zeros
    only when at least two coordinates vanish.
    """
    if spec.family == "I2":
        v1, v2 = p.coords
        if v1 is ZERO and v2 is ZERO:
            return 0
        if v1 is ZERO or v2 is ZERO:
            return 2
        return 1 if (v1 - v2) % diagonal_twist(spec, p.order) == 0 else 2
    kh = p.order
    half = kh // 2
    nonzero = [v for v in p.coords if v is not ZERO]
    clusters = {min(v, (v + half) % kh) for v in nonzero}
    zeros = len(p.coords) - len(nonzero)
    if spec.family == "B":
        return len(clusters)
    return len(clusters) + (1 if zeros == 1 else 0)


# ---------------------------------------------------------------------------
# type BC bijections


def exponent_to_opener(e: int, half: int) -> int:
    """Exponent in [0, 2*half) as a signed opener in +-[half]."""
    e %= 2 * half
    if 1 <= e <= half:
        return e
    return -(e - half) if e > half else -half  # e == 0 is -omega^half


def opener_to_exponent(o: int, half: int) -> int:
    return o % (2 * half) if o > 0 else (half - o) % (2 * half)


def bc_phi(space: parkspace.ParkSpace, p: parkspace.ParkClass) -> LocusPoint:
    """Type B class to locus point, through openers of the labeled picture."""
    if space.spec.family != "B":
        raise ValueError("bc_phi is a type B/C operation")
    n = space.spec.param
    k = space.k
    kh = 2 * n * k
    lp = space.labeled_pair(p)
    ops = setpart.openers(lp.partition)
    coords = [ZERO] * n
    for b, opener in ops.items():
        e = opener_to_exponent(opener, k * n)
        for t in lp.label_of(b):
            if t > 0:
                coords[t - 1] = e
            else:
                coords[-t - 1] = (e + k * n) % kh
    return LocusPoint(kh, tuple(coords))


def bc_psi(space: parkspace.ParkSpace, pt: LocusPoint) -> parkspace.ParkClass:
    """Locus point to type B class: place parentheses at the openers named
    by the coordinates and close them innermost first with prescribed
    block sizes."""
    if space.spec.family != "B":
        raise ValueError("bc_psi is a type B/C operation")
    n = space.spec.param
    k = space.k
    kn = k * n
    mult: dict[int, int] = {}
    for v in pt.coords:
        if v is ZERO:
            continue
        j = abs(exponent_to_opener(v, kn))
        mult[j] = mult.get(j, 0) + 1
    pi = close_parens(n, k, mult)
    labels = {}
    zero = pi.zero_block()
    if zero is not None:
        labels[zero] = tuple(
            s * (i + 1) for i, v in enumerate(pt.coords) if v is ZERO for s in (1, -1)
        )
    ops = setpart.openers(pi)
    for b, opener in ops.items():
        j = abs(opener)
        sign = 1 if opener > 0 else -1
        lab = []
        for i, v in enumerate(pt.coords, start=1):
            if v is ZERO:
                continue
            o = exponent_to_opener(v, kn)
            if abs(o) != j:
                continue
            lab.append(i if o == sign * j else -i)
        labels[b] = tuple(lab)
    lp = setpart.LabeledPartition.of(pi, labels)
    out = space.from_labeled_pair(lp)
    if bc_phi(space, out) != pt:
        raise RuntimeError("psi did not invert phi (logic error)")
    return out


def close_parens(n: int, k: int, mult: dict[int, int]) -> setpart.SetPartition:
    """The unique centrally symmetric noncrossing partition of +-[kn] whose
    openers are +-j for j in mult, opening blocks of size k*mult[j].

    Left parentheses sit before the named positions; each is closed once
    it can absorb its block size in alive symbols without passing an
    unmatched left parenthesis.  Leftover symbols form the zero block.
    """
    kn = k * n
    order = list(range(1, kn + 1)) + [-i for i in range(1, kn + 1)]
    open_at = []
    for j in sorted(mult):
        open_at += [j, -j]
    unmatched = set(open_at)
    alive = {x: True for x in order}
    blocks = []
    progress = True
    while unmatched and progress:
        progress = False
        for start in sorted(unmatched, key=lambda x: setpart.circ_position(x, kn)):
            target = k * mult[abs(start)]
            run = []
            pos = setpart.circ_position(start, kn)
            ok = True
            for step in range(2 * kn):
                x = order[(pos + step) % (2 * kn)]
                if x in unmatched and x != start:
                    ok = False
                    break
                if alive[x]:
                    run.append(x)
                    if len(run) == target:
                        break
            if ok and len(run) == target:
                blocks.append(tuple(run))
                for x in run:
                    alive[x] = False
                unmatched.discard(start)
                progress = True
    if unmatched:
        raise RuntimeError(f"parenthesization did not close: {unmatched}")
    rest = [x for x in order if alive[x]]
    if rest:
        blocks.append(tuple(rest))
    pi = setpart.SetPartition.of(kn, blocks, signed=True)
    if not setpart.is_noncrossing(pi) or not pi.is_centrally_symmetric():
        raise RuntimeError("parenthesization produced a bad partition")
    return pi


def verify_bc_bijection(spec: GroupSpec, k: int) -> list[dict]:
    """Mutual inversion and equivariance of the type BC pair, exhaustively."""
    space = parkspace.build_park(spec, k)
    pts = build_locus(spec, k)
    report = []
    images = {}
    for p in space.classes():
        images[p] = bc_phi(space, p)
    ok_bij = len(set(images.values())) == len(pts) == len(images)
    report.append({"check": "bijection", "pass": ok_bij})
    bad_inv = [pt for p, pt in images.items() if bc_psi(space, pt) != p]
    row = {"check": "mutual_inverse", "pass": not bad_inv}
    if bad_inv:
        row["witness"] = bad_inv[0].to_json()
    report.append(row)
    gens = list(space.group.reflections()[:2]) + [space.group.coxeter_element()]
    ok_eq = True
    for p, pt in images.items():
        if images[space.act_g(p)] != locus_act_g(pt):
            ok_eq = False
            break
        for v in gens:
            if images[space.act_w(v, p)] != locus_act_w(spec, v, pt):
                ok_eq = False
                break
        if not ok_eq:
            break
    report.append({"check": "equivariance", "pass": ok_eq})
    return report


# ---------------------------------------------------------------------------
# dihedral constructive bijection


def park_stabilizer(space: parkspace.ParkSpace, cls) -> set:
    """All (v, d) in W x Z_kh fixing the class."""
    kh = space.k * space.spec.coxeter_number
    out = set()
    cur = cls
    for d in range(kh):
        for v in space.group.elements():
            if space.act_w(v, cur) == cls:
                out.add((v, d))
        cur = space.act_g(cur)
    return out


def locus_stabilizer(spec: GroupSpec, k: int, pt: LocusPoint) -> set:
    kh = pt.order
    grp = group(spec.family, spec.param)
    out = set()
    cur = pt
    for d in range(kh):
        for v in grp.elements():
            if locus_act_w(spec, v, cur) == pt:
                out.add((v, d))
        cur = locus_act_g(cur)
    return out


def dihedral_bijection(m: int, k: int) -> dict:
    """Equivariant bijection Park -> locus for I2(m), built by extending
    seed assignments orbit by orbit and validated along the way.

    Orbit representatives follow the case analysis: the origin, the
    full-space chain, the mirror chain (both mirror orbits when m is
    even), and the mixed plane/mirror chains.  For each representative
    the two candidate locus points (a coordinate swap apart) are tested by
    recomputing both stabilizers; extension is breadth-first through s, c
    and the cyclic generator, and any conflict is an error.
    """
    spec = GroupSpec("I2", m)
    space = parkspace.build_park(spec, k)
    grp = space.group
    ident = grp.identity()
    s = DihedralElement(m, True, 0)
    c = grp.coxeter_element()
    km = k * m

    def chain_of(flats_word):
        elems = {"V": ident, "H": s, "Hp": DihedralElement(m, True, (m - 1) % m), "0": c}
        return tuple(elems[x] for x in flats_word)

    seeds: list[tuple[parkspace.ParkClass, LocusPoint]] = []

    def seed(word, coords):
        cls = space.make_class(chain_of(word), ident)
        stab = park_stabilizer(space, cls)
        for cand in (LocusPoint(km, coords), LocusPoint(km, coords[::-1])):
            if locus_stabilizer(spec, k, cand) == stab:
                seeds.append((cls, cand))
                return
        raise RuntimeError(f"no stabilizer-matching locus point for {word}")

    seed(["0"] * k, (ZERO, ZERO))
    seed(["V"] * k, (0, ZERO))
    seed(["H"] * k, (0, 0))
    if m % 2 == 0:
        seed(["Hp"] * k, (0, k % km))
        top = k - 1
    else:
        top = k // 2 if k % 2 == 0 else (k - 1) // 2
    for i in range(1, top + 1):
        seed(["V"] + ["H"] * i + ["0"] * (k - i - 1), (0, i % km))

    fwd: dict[parkspace.ParkClass, LocusPoint] = {}
    bwd: dict[LocusPoint, parkspace.ParkClass] = {}

    def put(cls, pt):
        if cls in fwd or pt in bwd:
            if fwd.get(cls) != pt or bwd.get(pt) != cls:
                raise RuntimeError(f"orbit extension conflict at {cls} / {pt}")
            return False
        fwd[cls] = pt
        bwd[pt] = cls
        return True

    frontier = []
    for cls, pt in seeds:
        if put(cls, pt):
            frontier.append((cls, pt))
    gens = [s, c]
    while frontier:
        cls, pt = frontier.pop()
        moves = [(space.act_g(cls), locus_act_g(pt))]
        moves += [(space.act_w(v, cls), locus_act_w(spec, v, pt)) for v in gens]
        for ncls, npt in moves:
            if put(ncls, npt):
                frontier.append((ncls, npt))
    total = (km + 1) ** 2
    if len(fwd) != total or len(bwd) != total or len(fwd) != len(space.classes()):
        raise RuntimeError(
            f"dihedral bijection incomplete: {len(fwd)} of {total} classes mapped"
        )
    return fwd


# ---------------------------------------------------------------------------
# character-level verification


def verify_intermediate_character(spec: GroupSpec, k: int) -> list[dict]:
    """Locus and parking fixed counts against (kh+1)^mult, all classes x d."""
    space = parkspace.build_park(spec, k)
    grp = space.group
    kh = k * spec.coxeter_number
    pts = build_locus(spec, k)
    index = {p: i for i, p in enumerate(pts)}
    garr = [index[locus_act_g(p)] for p in pts]
    report = []
    park_garr = space.g_table()
    for v in grp.conjugacy_class_reps():
        varr = [index[locus_act_w(spec, v, p)] for p in pts]
        pvarr = space.w_table(v)
        power = list(range(len(pts)))
        ppower = list(range(len(pvarr)))
        for d in range(kh):
            locus_fixed = sum(1 for i in range(len(pts)) if varr[power[i]] == i)
            park_fixed = sum(1 for i in range(len(pvarr)) if pvarr[ppower[i]] == i)
            mult = grp.eigenvalue_multiplicity(v, d, kh)
            expected = (kh + 1) ** mult
            report.append(
                {
                    "v": repr(v),
                    "d": d,
                    "locus_fixed": locus_fixed,
                    "park_fixed": park_fixed,
                    "expected": expected,
                    "pass": locus_fixed == park_fixed == expected,
                }
            )
            power = [garr[x] for x in power]
            ppower = [park_garr[x] for x in ppower]
    return report
