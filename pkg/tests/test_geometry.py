"""Finite fields and projective geometry over them."""

import pytest

from steiner_ekr.errors import DomainError
from steiner_ekr.geometry import (
    MAX_FIELD_ORDER,
    field,
    field_for_order,
    hermitian_points,
    is_prime,
    line_points,
    num_pg_lines,
    num_pg_points,
    pg_lines,
    pg_points,
    prime_power,
)


def test_is_prime_small():
    primes = [n for n in range(60) if is_prime(n)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]


def test_prime_power_decomposition():
    assert prime_power(2) == (2, 1)
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(27) == (3, 3)
    assert prime_power(169) == (13, 2)
    for bad in (0, 1, 6, 12, 100):
        with pytest.raises(DomainError):
            prime_power(bad)


def test_field_order_cap():
    with pytest.raises(DomainError):
        field_for_order(MAX_FIELD_ORDER * 2)


def test_gf2_tables():
    f = field(2, 1)
    assert [f.add(a, b) for a in (0, 1) for b in (0, 1)] == [0, 1, 1, 0]
    assert [f.mul(a, b) for a in (0, 1) for b in (0, 1)] == [0, 0, 0, 1]


def test_gf4_multiplication():
    f = field_for_order(4)
    # elements 2 and 3 are the two primitive cube roots of unity
    assert f.mul(2, 2) == 3
    assert f.mul(2, 3) == 1
    assert f.mul(3, 3) == 2
    assert f.pow(2, 3) == 1


def test_field_axioms_by_enumeration():
    for q in (7, 9, 16, 25):
        f = field_for_order(q)
        elems = list(f.elements)
        assert len(elems) == q
        for x in elems:
            if x:
                assert f.mul(x, f.inv(x)) == 1
            for y in elems:
                assert f.mul(x, y) == f.mul(y, x)
                assert f.sub(f.add(x, y), y) == x
        # distributivity on a slice is enough to catch a bad modulus
        for x in elems[:5]:
            for y in elems:
                for z in elems[:5]:
                    assert f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z))


def test_field_edge_operations():
    f = field_for_order(9)
    assert f.pow(0, 0) == 1
    with pytest.raises(ZeroDivisionError):
        f.inv(0)
    for x in f.elements:
        assert f.frobenius(f.frobenius(x)) == x
        assert f.frobenius(x) == f.pow(x, 3)


def test_pg_point_and_line_counts():
    assert num_pg_points(2, 2) == 7 and num_pg_lines(2, 2) == 7
    assert num_pg_points(3, 2) == 15 and num_pg_lines(3, 2) == 35
    assert num_pg_points(3, 3) == 40 and num_pg_lines(3, 3) == 130
    assert num_pg_points(2, 9) == 91 and num_pg_lines(2, 9) == 91
    for dim, q in ((2, 2), (2, 3), (3, 2), (3, 3), (2, 4)):
        points, lines = pg_lines(dim, q)
        assert len(points) == num_pg_points(dim, q)
        assert len(lines) == num_pg_lines(dim, q)
        assert all(len(ln) == q + 1 for ln in lines)


def test_every_point_pair_on_one_line():
    points, lines = pg_lines(3, 2)
    seen = {}
    for idx, ln in enumerate(lines):
        for i, p in enumerate(ln):
            for p2 in ln[i + 1 :]:
                key = (p, p2)
                assert key not in seen, f"pair {key} on lines {seen[key]} and {idx}"
                seen[key] = idx
    n = len(points)
    assert len(seen) == n * (n - 1) // 2


def test_line_points_is_closed_under_span():
    f = field_for_order(3)
    pts = pg_points(f, 2)
    ln = line_points(f, pts[0], pts[1])
    assert len(ln) == 4
    assert pts[0] in ln and pts[1] in ln
    # any two points of the line span it again
    assert set(line_points(f, ln[2], ln[3])) == set(ln)


def test_hermitian_point_counts():
    for q, expect in ((2, 9), (3, 28), (4, 65)):
        assert len(hermitian_points(q)) == expect  # q^3 + 1


def test_hermitian_secant_tangent_dichotomy():
    # every line of PG(2,9) meets the q=3 curve in 1 or q+1 points;
    # 28 tangents (one per curve point) and 63 secants
    q = 3
    points, lines = pg_lines(2, q * q)
    index = {pt: i for i, pt in enumerate(points)}
    curve = {index[pt] for pt in hermitian_points(q)}
    profile = {}
    for ln in lines:
        hits = sum(1 for p in ln if p in curve)
        profile[hits] = profile.get(hits, 0) + 1
    assert profile == {1: 28, 4: 63}
