import pytest

from ncpark.locus import (
    ZERO,
    LocusPoint,
    bc_phi,
    bc_psi,
    build_locus,
    close_parens,
    dihedral_bijection,
    locus_act_g,
    locus_act_w,
    locus_fixed_count,
    locus_stabilizer,
    park_stabilizer,
    point_dimension,
    verify_bc_bijection,
    verify_intermediate_character,
)
from ncpark.parkspace import build_park
from ncpark.reflgroup import (
    DihedralElement,
    GroupSpec,
    balanced_cycle,
    group,
    paired_cycle,
)
from ncpark.setpart import SetPartition, bc_nabla, parse_partition


def test_build_locus_counts():
    assert len(build_locus(GroupSpec("B", 2), 1)) == 25
    assert len(build_locus(GroupSpec("B", 1), 3)) == 7
    for m in (3, 5, 8):
        for k in (1, 2):
            pts = build_locus(GroupSpec("I2", m), k)
            assert len(pts) == (k * m + 1) ** 2
            # the three strata of the displayed union
            origin = [p for p in pts if p.coords == (ZERO, ZERO)]
            axis = [p for p in pts if (p.coords[0] is ZERO) != (p.coords[1] is ZERO)]
            torus = [p for p in pts if ZERO not in p.coords]
            assert len(origin) == 1
            assert len(axis) == 2 * k * m
            assert len(torus) == (k * m) ** 2
    with pytest.raises(ValueError):
        build_locus(GroupSpec("A", 3), 1)


def test_locus_actions():
    spec = GroupSpec("B", 2)
    p = LocusPoint(4, (ZERO, 3))
    assert locus_act_g(p) == LocusPoint(4, (ZERO, 0))
    # negation is a half-turn of the exponent
    w = balanced_cycle(2, (1,))
    assert locus_act_w(spec, w, LocusPoint(4, (1, ZERO))) == LocusPoint(4, (3, ZERO))
    # dihedral actions: s swaps the diagonal slots, c twists them by +-k
    spec_i = GroupSpec("I2", 5)
    s = DihedralElement(5, True, 0)
    c = DihedralElement(5, False, 1)
    k = 2
    pt = LocusPoint(10, (3, 7))
    assert locus_act_w(spec_i, s, pt) == LocusPoint(10, (7, 3))
    assert locus_act_w(spec_i, c, pt) == LocusPoint(10, ((3 + k) % 10, (7 - k) % 10))
    assert locus_act_g(pt) == LocusPoint(10, (4, 8))


def test_point_dimension():
    b3 = GroupSpec("B", 3)
    assert point_dimension(b3, LocusPoint(6, (ZERO, ZERO, ZERO))) == 0
    assert point_dimension(b3, LocusPoint(6, (1, 1, ZERO))) == 1
    assert point_dimension(b3, LocusPoint(6, (1, 4, ZERO))) == 1  # 4 = 1 + half
    assert point_dimension(b3, LocusPoint(6, (1, 2, ZERO))) == 2
    d3 = GroupSpec("D", 3)
    assert point_dimension(d3, LocusPoint(4, (ZERO, ZERO, ZERO))) == 0
    # a single zero coordinate is unconstrained in type D
    assert point_dimension(d3, LocusPoint(4, (1, 1, ZERO))) == 2
    assert point_dimension(d3, LocusPoint(4, (1, 1, 1))) == 1
    i5 = GroupSpec("I2", 5)
    assert point_dimension(i5, LocusPoint(10, (ZERO, ZERO))) == 0
    assert point_dimension(i5, LocusPoint(10, (4, 2))) == 1  # difference divisible by k
    assert point_dimension(i5, LocusPoint(10, (4, 3))) == 2
    assert point_dimension(i5, LocusPoint(10, (4, ZERO))) == 2


@pytest.mark.parametrize("spec,k", [
    (GroupSpec("B", 2), 2), (GroupSpec("B", 3), 1), (GroupSpec("D", 3), 2), (GroupSpec("I2", 6), 2),
])
def test_stratification(spec, k):
    pts = build_locus(spec, k)
    kh = k * spec.coxeter_number
    dims = [point_dimension(spec, p) for p in pts]
    assert sum(1 for d in dims if d == 0) == 1
    counts = {}
    for d in dims:
        counts[d] = counts.get(d, 0) + 1
    assert sum(counts.values()) == (kh + 1) ** spec.rank
    # every one-dimensional flat carries exactly kh points of the 1-stratum
    grp = group(spec.family, spec.param)
    lines = [x for x in grp.all_flats() if x.dim == 1]
    ones = sum(1 for d in dims if d == 1)
    assert ones == kh * len(lines)


def test_bc_phi_pinned_vectors():
    ps = build_park(GroupSpec("B", 3), 2)
    X1 = parse_partition("1,-3/2,-2/-1,3", 3, signed=True)
    X2 = SetPartition.full(3, signed=True)
    w = paired_cycle(3, (1, 3, -2))
    lp = bc_nabla((X1, X2), {b: tuple(w(x) for x in b) for b in X1.blocks})
    upper = ps.from_labeled_pair(lp)
    assert bc_phi(ps, upper) == LocusPoint(12, (ZERO, 10, 10))

    Y1 = parse_partition("1,2/3/-1,-2/-3", 3, signed=True)
    Y2 = parse_partition("1,2,3/-1,-2,-3", 3, signed=True)
    w2 = paired_cycle(3, (1, -3)) * balanced_cycle(3, (2,))
    lp2 = bc_nabla((Y1, Y2), {b: tuple(w2(x) for x in b) for b in Y1.blocks})
    lower = ps.from_labeled_pair(lp2)
    assert bc_phi(ps, lower) == LocusPoint(12, (10, 7, 7))


def test_bc_psi_worked_example():
    ps = build_park(GroupSpec("B", 4), 2)
    pt = LocusPoint(16, (4, ZERO, 12, 5))
    cls = bc_psi(ps, pt)
    lp = ps.labeled_pair(cls)
    assert lp.partition == parse_partition(
        "1,-4,-7,-8/2,3,-2,-3/4,7,8,-1/5,6/-5,-6", 8, signed=True
    )
    assert set(lp.label_of((-1, 4, 7, 8))) == {1, -3}
    # v_4 = w^5 and {5,6} is opened by +5, so 4 labels the positive block
    assert set(lp.label_of((5, 6))) == {4}
    assert set(lp.label_of((-6, -5))) == {-4}
    assert set(lp.label_of((-3, -2, 2, 3))) == {2, -2}
    assert bc_phi(ps, cls) == pt


def test_close_parens_structure():
    pi = close_parens(4, 2, {4: 2, 5: 1})
    assert pi == parse_partition("1,-4,-7,-8/2,3,-2,-3/4,7,8,-1/5,6/-5,-6", 8, signed=True)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_bc_bijection_b2(k):
    report = verify_bc_bijection(GroupSpec("B", 2), k)
    assert all(r["pass"] for r in report)


@pytest.mark.parametrize("k", [1, 2])
def test_bc_bijection_b3(k):
    report = verify_bc_bijection(GroupSpec("B", 3), k)
    assert all(r["pass"] for r in report)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_dihedral_bijection_small(m, k):
    fwd = dihedral_bijection(m, k)
    assert len(fwd) == (k * m + 1) ** 2
    assert len(set(fwd.values())) == len(fwd)


def test_dihedral_bijection_sizes_from_statement():
    assert len(dihedral_bijection(3, 1)) == 16
    assert len(dihedral_bijection(4, 2)) == 81
    assert len(dihedral_bijection(5, 2)) == 121


def test_dihedral_stabilizer_match():
    # the stabilizer of [1, X 0^(k-1)] for a mirror X equals the stabilizer
    # of its image locus point
    m, k = 5, 2
    fwd = dihedral_bijection(m, k)
    space = build_park(GroupSpec("I2", m), k)
    ident = space.group.identity()
    s = DihedralElement(m, True, 0)
    c = space.c
    chain = (s,) + (c,) * (k - 1)
    cls = space.make_class(chain, ident)
    pt = fwd[cls]
    assert park_stabilizer(space, cls) == locus_stabilizer(GroupSpec("I2", m), k, pt)


@pytest.mark.parametrize("spec,kmax", [
    (GroupSpec("B", 2), 3),
    (GroupSpec("B", 3), 2),
    (GroupSpec("D", 3), 2),
    (GroupSpec("I2", 4), 2),
    (GroupSpec("I2", 7), 2),
])
def test_intermediate_character(spec, kmax):
    for k in range(1, kmax + 1):
        report = verify_intermediate_character(spec, k)
        assert all(r["pass"] for r in report)


def test_locus_point_json():
    assert LocusPoint(12, (ZERO, 10, 3)).to_json() == ["0", 10, 3]


def test_locus_fixed_count_direct():
    spec = GroupSpec("B", 2)
    grp = group("B", 2)
    assert locus_fixed_count(spec, 1, grp.identity(), 0) == 25
    c = grp.coxeter_element()
    # c has eigenvalues of order 4 only: no fixed points except the origin
    assert locus_fixed_count(spec, 1, c, 0) == 1
