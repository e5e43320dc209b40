import cmath
import random

import pytest

from ncpark.qcatalan import (
    CycloInt,
    IntPoly,
    cat_poly,
    chain_orbit_sizes,
    cyclotomic,
    eval_at_root,
    fixed_chain_counts,
    verify_csp,
)
from ncpark.reflgroup import GroupSpec

GRID = [
    ("A", 2),
    ("A", 3),
    ("A", 4),
    ("A", 5),
    ("B", 2),
    ("B", 3),
    ("D", 3),
    ("D", 4),
    ("I2", 3),
    ("I2", 4),
    ("I2", 5),
    ("I2", 6),
    ("I2", 7),
    ("I2", 8),
]


def test_intpoly_arithmetic():
    p = IntPoly.of([1, 2, 1])
    q = IntPoly.of([1, 1])
    assert q * q == p
    assert p.divexact(q) == q
    assert (p - p) == IntPoly.of([])
    assert p(3) == 16
    with pytest.raises(ValueError):
        IntPoly.of([1, 0, 1]).divexact(q)


@pytest.mark.parametrize("m", range(1, 65))
def test_cyclotomic_product(m):
    prod = IntPoly.one()
    for d in range(1, m + 1):
        if m % d == 0:
            prod = prod * cyclotomic(d)
    assert prod == IntPoly.monomial(m) - IntPoly.one()


def test_cyclotomic_small():
    assert cyclotomic(1) == IntPoly.of([-1, 1])
    assert cyclotomic(2) == IntPoly.of([1, 1])
    assert cyclotomic(4) == IntPoly.of([1, 0, 1])
    assert cyclotomic(6) == IntPoly.of([1, -1, 1])


def test_cyclo_int():
    x = CycloInt.from_poly(IntPoly.of([5]), 12)
    assert x.is_integer() and x.as_integer() == 5
    y = CycloInt.from_poly(IntPoly.monomial(1), 4)
    assert not y.is_integer()
    with pytest.raises(ValueError):
        y.as_integer()


def test_cat_poly_values():
    # the A1 factor (1 - q^(kh+d))/(1 - q^d) with d = h = 2
    assert cat_poly(GroupSpec("A", 2), 1) == IntPoly.of([1, 0, 1])
    assert cat_poly(GroupSpec("A", 3), 1)(1) == 5
    assert cat_poly(GroupSpec("A", 3), 2)(1) == 12
    for fam, p in GRID:
        spec = GroupSpec(fam, p)
        for k in (1, 2, 3):
            num = den = 1
            for d in spec.degrees:
                num *= k * spec.coxeter_number + d
                den *= d
            assert cat_poly(spec, k)(1) * den == num


@pytest.mark.parametrize("fam,p", GRID)
def test_cat_poly_palindromic_nonneg(fam, p):
    for k in (1, 2, 3):
        cp = cat_poly(GroupSpec(fam, p), k)
        assert all(c >= 0 for c in cp.coeffs)
        assert cp.is_palindromic()


def test_eval_at_root_examples():
    p = IntPoly.of([1, 1, 1])
    assert eval_at_root(p, 3, 0).as_integer() == 3
    assert eval_at_root(p, 3, 1).as_integer() == 0
    cat = cat_poly(GroupSpec("A", 3), 1)
    assert eval_at_root(cat, 3, 1).as_integer() == 2
    with pytest.raises(ValueError):
        eval_at_root(p, 3, 3)


def test_eval_at_root_matches_float():
    rng = random.Random(7)
    for _ in range(50):
        deg = rng.randrange(0, 12)
        p = IntPoly.of([rng.randrange(-9, 10) for _ in range(deg + 1)])
        m = rng.randrange(1, 13)
        d = rng.randrange(0, m)
        exact = eval_at_root(p, m, d)
        mp = m // (m if d == 0 else __import__("math").gcd(m, d))
        zeta = cmath.exp(2j * cmath.pi / mp)
        approx = p.eval_float(cmath.exp(2j * cmath.pi * d / m))
        back = sum(c * zeta**e for e, c in enumerate(exact.coeffs))
        assert abs(approx - back) < 1e-6


@pytest.mark.parametrize("fam,p", GRID)
@pytest.mark.parametrize("k", [1, 2, 3])
def test_csp(fam, p, k):
    report = verify_csp(GroupSpec(fam, p), k)
    assert all(r["pass"] for r in report)
    assert report[0]["fixed_chains"] == cat_poly(GroupSpec(fam, p), k)(1)


def test_csp_vector_a2():
    assert [r["fixed_chains"] for r in verify_csp(GroupSpec("A", 3), 1)] == [5, 2, 2]


def test_orbit_sizes_partition_the_chains():
    spec = GroupSpec("B", 2)
    sizes = chain_orbit_sizes(spec, 2)
    assert sum(sizes) == 15
    counts = fixed_chain_counts(spec, 2)
    kh = 2 * spec.coxeter_number
    for d in range(kh):
        assert counts[d] == sum(s for s in sizes if d % s == 0)
