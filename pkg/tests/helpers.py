"""Shared fixtures-by-hand and independent oracles for the test suite.

The oracles deliberately avoid the library's reduction machinery: the
determinant oracle expands over permutations, and the surface oracle
computes c1^2 from the classical fan-walk rules (adjacent divisors meet
once, self-intersections from the wall relation v_prev + v_next = a*v).
"""

from itertools import permutations

from toricbundles import make_fan, product_fan


def p1():
    return make_fan(1, [[1], [-1]], [[0], [1]])


def p2():
    return make_fan(2, [[1, 0], [0, 1], [-1, -1]], [[0, 1], [0, 2], [1, 2]])


def square_fan():
    return product_fan(p1(), p1())


def dp6():
    return make_fan(
        2,
        [[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]],
        [[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [5, 0]],
    )


def permutation_determinant(m):
    """Determinant by direct expansion over permutations (n <= ~6)."""
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total


def _cyclic_ray_order(fan):
    """Ray indices of a complete surface fan in counterclockwise order."""
    def half(v):
        x, y = v
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    def cross(v, w):
        return v[0] * w[1] - v[1] * w[0]

    import functools

    def cmp(i, j):
        vi, vj = fan.rays[i], fan.rays[j]
        hi, hj = half(vi), half(vj)
        if hi != hj:
            return -1 if hi < hj else 1
        c = cross(vi, vj)
        return 0 if c == 0 else (-1 if c > 0 else 1)

    return sorted(range(fan.ray_count), key=functools.cmp_to_key(cmp))


def surface_c1_squared(fan):
    """Independent c1^2 of a smooth complete surface fan.

    Adjacent toric divisors meet transversally in one point; the
    self-intersection of D_i is -a_i where the cyclic neighbors satisfy
    v_prev + v_next = a_i * v_i.  Then c1^2 = sum of all pairwise products
    = 2 * (number of cones) + sum_i (-a_i).
    """
    assert fan.dim == 2
    order = _cyclic_ray_order(fan)
    r = len(order)
    cones = {frozenset(c) for c in fan.max_cones}
    total_self = 0
    for k, i in enumerate(order):
        prev_ray = fan.rays[order[(k - 1) % r]]
        next_ray = fan.rays[order[(k + 1) % r]]
        assert frozenset({i, order[(k + 1) % r]}) in cones, (
            "cyclically adjacent rays must span a cone in a complete fan"
        )
        v = fan.rays[i]
        s = tuple(a + b for a, b in zip(prev_ray, next_ray))
        coord = 0 if v[0] != 0 else 1
        assert s[coord] % v[coord] == 0, "smooth surface fans have integral walls"
        a = s[coord] // v[coord]
        assert tuple(a * e for e in v) == s
        total_self += -a
    return total_self + 2 * len(cones)
