"""Shared deterministic random generators for the property suites."""

from fractions import Fraction

from nonsmooth.cover import TORUS_A, TORUS_B, CoverPoint, lift_through
from nonsmooth.plmaps import IntervalMapExpr, ModelTranslation, PLMap
from nonsmooth.projline import MoebiusMap, ProjPoint


def rand_rat(rng, lim=12):
    return Fraction(rng.randint(-lim, lim), rng.randint(1, lim))


def rand_pos_rat(rng, lim=12):
    return Fraction(rng.randint(1, lim), rng.randint(1, lim))


def rand_proj(rng, lim=12, p_inf=0.05):
    if rng.random() < p_inf:
        return ProjPoint.infinity()
    return ProjPoint.from_affine(rand_rat(rng, lim))


def rand_cover(rng, lim=12, sheets=4):
    return CoverPoint(rand_proj(rng, lim), rng.randint(-sheets, sheets))


def rand_sl2(rng, steps=6):
    m = MoebiusMap(1, 0, 0, 1)
    for _ in range(steps):
        k = rng.randint(-3, 3)
        if rng.random() < 0.5:
            m = m.compose(MoebiusMap(1, k, 0, 1))
        else:
            m = m.compose(MoebiusMap(1, 0, k, 1))
    return m


def rand_torus_word_matrix(rng, length=5):
    gens = (TORUS_A, TORUS_B, TORUS_A.inverse(), TORUS_B.inverse())
    m = MoebiusMap(1, 0, 0, 1)
    for _ in range(rng.randint(1, length)):
        m = m.compose(rng.choice(gens))
    return m


def rand_lift(rng):
    # an arbitrary lift (any deck power) of a random word in the two generators
    return lift_through(rand_torus_word_matrix(rng), rng.randint(-2, 2))


def rand_interior(rng, den=720):
    return Fraction(rng.randint(1, den - 1), den)


def rand_plmap(rng, pieces=4):
    xs = sorted({Fraction(rng.randint(1, 23), 24) for _ in range(pieces)})
    ys = sorted({Fraction(rng.randint(1, 23), 24) for _ in range(pieces)})
    k = min(len(xs), len(ys))
    pts = [(Fraction(0), Fraction(0))]
    pts.extend(zip(xs[:k], ys[:k]))
    pts.append((Fraction(1), Fraction(1)))
    return PLMap(pts)


def rand_model(rng, grid=12, powers=3):
    a, b = sorted(rng.sample(range(grid + 1), 2))
    return ModelTranslation((Fraction(a, grid), Fraction(b, grid)),
                            rng.randint(-powers, powers))


def rand_pl_expr(rng, size=3):
    factors = []
    for _ in range(rng.randint(1, size)):
        if rng.random() < 0.5:
            factors.append(rand_plmap(rng))
        else:
            factors.append(rand_model(rng))
    return IntervalMapExpr(tuple(factors))


def rand_word_letters(rng, gens=2, length=6):
    return tuple((rng.randrange(gens), rng.choice((1, -1)))
                 for _ in range(rng.randint(0, length)))


def slope_quotient_oracle(m, x, side, need=3):
    # independent slope oracle: exact difference quotients, shrink the step
    # until the same value appears `need` times in a row
    from nonsmooth.plmaps import RIGHT, as_expr

    e = as_expr(m)
    fx = e.apply(x)
    h = Fraction(1, 16)
    prev, run = None, 0
    for _ in range(300):
        x1 = x + h if side == RIGHT else x - h
        if 0 < x1 < 1:
            q = (e.apply(x1) - fx) / (x1 - x)
            if q == prev:
                run += 1
                if run >= need - 1:
                    return q
            else:
                prev, run = q, 0
        h /= 2
    raise AssertionError("difference quotient did not stabilize at %s" % x)
