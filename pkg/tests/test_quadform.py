import random
from fractions import Fraction

from latnaf import quadform as qf


def F(a, b=1):
    return Fraction(a, b)


G_COMPLEX = ((F(2), F(1)), (F(1), F(4)))  # norm form with covering radius^2 8/7
G_GAUSS = ((F(2), F(2)), (F(2), F(4)))
G_ID = ((F(1), F(0)), (F(0), F(1)))


def test_eval_quadratic():
    assert qf.eval_quadratic(G_COMPLEX, (1, 0)) == 2
    assert qf.eval_quadratic(G_COMPLEX, (0, 1)) == 4
    assert qf.eval_quadratic(G_COMPLEX, (1, 1)) == 8
    assert qf.eval_quadratic(G_ID, (3, -4)) == 25


def test_ldl_positive_definite():
    d, u = qf.ldl(G_COMPLEX)
    assert all(x > 0 for x in d)
    # Q(y) = sum_i d[i] * (y_i + sum_{j>i} u[i][j] y_j)^2
    rng = random.Random(1)
    n = 2
    for _ in range(30):
        y = [F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)]
        total = sum(
            (
                d[i] * (y[i] + sum(u[i][j] * y[j] for j in range(i + 1, n))) ** 2
                for i in range(n)
            ),
            F(0),
        )
        assert total == qf.eval_quadratic(G_COMPLEX, y)


def test_ldl_rejects_indefinite():
    assert qf.ldl(((F(1), F(2)), (F(2), F(1)))) is None
    assert qf.ldl(((F(0),),)) is None


def test_enumerate_ball_identity():
    pts = qf.enumerate_ball(G_ID, F(2))
    assert len(pts) == 9
    assert (0, 0) in pts
    assert (1, 1) in pts and (-1, -1) in pts
    assert (2, 0) not in pts
    assert pts == sorted(pts)


def test_enumerate_matches_brute_force():
    rng = random.Random(41)
    for _ in range(25):
        n = rng.randint(1, 3)
        # random SPD Gram: A^T A + I with small integer A
        a = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        g = tuple(
            tuple(
                F(sum(a[k][i] * a[k][j] for k in range(n)) + (i == j))
                for j in range(n)
            )
            for i in range(n)
        )
        bound = F(rng.randint(1, 6))
        got = set(qf.enumerate_ball(g, bound))
        box = range(-6, 7)
        want = set()

        def rec(prefix):
            if len(prefix) == n:
                if qf.eval_quadratic(g, prefix) <= bound:
                    want.add(tuple(prefix))
                return
            for v in box:
                rec(prefix + [v])

        rec([])
        assert got == want


def test_shortest_nonzero():
    assert qf.shortest_nonzero_norm_sq(G_COMPLEX) == 2
    assert qf.shortest_nonzero_norm_sq(G_ID) == 1
    skew = ((F(5), F(3)), (F(3), F(2)))
    assert qf.shortest_nonzero_norm_sq(skew) == 1  # (1, -1) and (-1, 2)


def test_closest_points_tie():
    # both x = (0,0) and x = (1,0) leave t + x at distance 1/2
    winners, best = qf.closest_lattice_points(G_ID, (F(-1, 2), F(0)))
    assert best == F(1, 4)
    assert winners == [(0, 0), (1, 0)]


def test_closest_points_interior():
    t = (F(1, 3), F(1, 3))
    winners, best = qf.closest_lattice_points(G_COMPLEX, t)
    assert len(winners) >= 1
    for w in winners:
        v = tuple(a + b for a, b in zip(t, w))
        assert qf.eval_quadratic(G_COMPLEX, v) == best
    best_brute = min(
        qf.eval_quadratic(G_COMPLEX, (F(1, 3) + x, F(1, 3) + y))
        for x in range(-3, 4)
        for y in range(-3, 4)
    )
    assert best == best_brute


def test_covering_radius_examples():
    assert qf.covering_radius_sq_exact(((F(4),),)) == 1
    assert qf.covering_radius_sq_exact(G_ID) == F(1, 2)
    assert qf.covering_radius_sq_exact(G_COMPLEX) == F(8, 7)
    assert qf.covering_radius_sq_exact(G_GAUSS) == 1
    diag3 = tuple(
        tuple(F(2) if i == j else F(0) for j in range(3)) for i in range(3)
    )
    assert qf.covering_radius_sq_exact(diag3) == F(3, 2)


def test_covering_radius_deep_hole_is_attained():
    """The 2d exact value must equal the max over Voronoi vertices,
    cross-checked by sampling rational points and measuring CVP distance."""
    rng = random.Random(17)
    for g in (G_COMPLEX, G_GAUSS, ((F(3), F(1)), (F(1), F(5)))):
        r_sq = qf.covering_radius_sq_exact(g)
        for _ in range(40):
            t = (F(rng.randint(-12, 12), 8), F(rng.randint(-12, 12), 8))
            _, d = qf.closest_lattice_points(g, t)
            assert d <= r_sq


def test_covering_radius_upper_bound():
    up = qf.covering_radius_sq_upper(G_COMPLEX)
    assert up == F(8, 7)
    big = tuple(
        tuple(F(2) if i == j else F(1) for j in range(4)) for i in range(4)
    )
    loose = qf.covering_radius_sq_upper(big)
    assert loose is not None and loose > 0


def test_min_eigenvalue():
    assert qf.min_eigenvalue_real(G_ID).compare(1) == 0
    diag = ((F(2), F(0)), (F(0), F(3)))
    assert qf.min_eigenvalue_real(diag).compare(2) == 0
    # eigenvalues of G_COMPLEX are 3 +- sqrt(2)
    ev = qf.min_eigenvalue_real(G_COMPLEX)
    iv = ev.interval(96)
    from latnaf.exactreal import sqrt_lower, sqrt_upper

    assert iv.lo <= 3 - sqrt_lower(F(2), 96)
    assert iv.hi >= 3 - sqrt_upper(F(2), 96)
    assert iv.width() < F(1, 2**48)
