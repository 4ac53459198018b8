"""Affine blow-ups of an interval action along a marked point sequence.

Each window is the hull of a point with its generator images, enlarged about
the point and clamped to the unit interval.  Rescaling the window so the
largest generator displacement becomes 1 gives a normalized local picture;
translation deviation and fixed-point persistence are exact statistics of
that picture.  Germs with a C1-like limit flatten to translations, while the
obstructed actions keep a generator fixed point inside every window.
"""

from fractions import Fraction

from .errors import (
    BadInterval,
    Degenerate,
    EmptyDisplacement,
    EmptyGridDomain,
    OutOfDomain,
    Unsupported,
)
from .groupact import UNIT_INTERVAL, MarkedAction, word_eval
from .rational import fmt_rat

ZERO = Fraction(0)
ONE = Fraction(1)


class MoebiusGermMap:
    """Increasing fractional-linear germ x -> (a x + b)/(c x + d), defined
    away from its pole."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        a, b, c, d = (Fraction(v) for v in (a, b, c, d))
        if a * d - b * c <= 0:
            raise BadInterval("germ must be orientation preserving")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("MoebiusGermMap is immutable")

    def apply(self, x):
        x = Fraction(x)
        den = self.c * x + self.d
        if den == 0:
            raise OutOfDomain("germ has a pole at %s" % (x,))
        return (self.a * x + self.b) / den

    def inverse(self) -> "MoebiusGermMap":
        return MoebiusGermMap(self.d, -self.b, -self.c, self.a)

    def __eq__(self, other):
        if not isinstance(other, MoebiusGermMap):
            return NotImplemented
        # projective comparison: rows are already det-positive
        return (self.a * other.d == other.a * self.d
                and self.a * other.b == other.a * self.b
                and self.a * other.c == other.a * self.c
                and self.b * other.c == other.b * self.c
                and self.b * other.d == other.b * self.d
                and self.c * other.d == other.c * self.d)

    def __hash__(self):
        return hash(("germ", self.a, self.b, self.c, self.d))

    def __repr__(self):
        return "MoebiusGermMap(%s, %s, %s, %s)" % (self.a, self.b, self.c, self.d)

    def to_obj(self):
        return {"kind": "germ",
                "matrix": [[fmt_rat(self.a), fmt_rat(self.b)],
                           [fmt_rat(self.c), fmt_rat(self.d)]]}


def parabolic_germ() -> MoebiusGermMap:
    """x -> x/(1+x): parabolic at 0, pushes everything toward the origin."""
    return MoebiusGermMap(1, 0, 1, 1)


def halving_germ() -> MoebiusGermMap:
    """x -> x/2: hyperbolic contraction at 0."""
    return MoebiusGermMap(1, 0, 0, 2)


def germ_action(germ=None) -> MarkedAction:
    return MarkedAction(("a",), (parabolic_germ() if germ is None else germ,),
                        UNIT_INTERVAL)


class Window:
    """One blow-up site: base point, generator hull, enlarged domain."""

    __slots__ = ("index", "point", "hull", "enlarged", "length", "unit")

    def __init__(self, index, point, hull, enlarged, unit):
        point = Fraction(point)
        hull = (Fraction(hull[0]), Fraction(hull[1]))
        enlarged = (Fraction(enlarged[0]), Fraction(enlarged[1]))
        unit = Fraction(unit)
        if not hull[0] <= point <= hull[1]:
            raise BadInterval("base point outside its hull")
        if not (enlarged[0] <= hull[0] and hull[1] <= enlarged[1]):
            raise BadInterval("hull outside the enlarged window")
        if hull[1] - hull[0] <= 0 or unit <= 0:
            raise BadInterval("window must have positive size")
        object.__setattr__(self, "index", int(index))
        object.__setattr__(self, "point", point)
        object.__setattr__(self, "hull", hull)
        object.__setattr__(self, "enlarged", enlarged)
        object.__setattr__(self, "length", hull[1] - hull[0])
        object.__setattr__(self, "unit", unit)

    def __setattr__(self, name, value):
        raise AttributeError("Window is immutable")

    def __repr__(self):
        return "Window(%d, point=%s, hull=%r)" % (self.index, self.point, self.hull)

    def to_obj(self):
        return {"index": self.index,
                "point": fmt_rat(self.point),
                "hull": [fmt_rat(self.hull[0]), fmt_rat(self.hull[1])],
                "enlarged": [fmt_rat(self.enlarged[0]), fmt_rat(self.enlarged[1])],
                "length": fmt_rat(self.length),
                "unit": fmt_rat(self.unit)}


def build_windows(act: MarkedAction, p_seq, enlargement=3):
    """Hull each point with its generator images, then enlarge about the point
    by the given factor, clamped to the unit interval."""
    if act.domain != UNIT_INTERVAL:
        raise Unsupported("windows need an interval action")
    factor = Fraction(enlargement)
    if factor < 1:
        raise ValueError("enlargement factor must be at least 1")
    windows = []
    for index, p in enumerate(p_seq):
        p = act.check_point(p)
        images = [m.apply(p) for m in act.maps]
        unit = max(abs(x - p) for x in images)
        if unit == 0:
            raise EmptyDisplacement(
                "every generator fixes the marked point %s" % (p,))
        lo = min(images + [p])
        hi = max(images + [p])
        enlarged = (max(ZERO, p + factor * (lo - p)),
                    min(ONE, p + factor * (hi - p)))
        windows.append(Window(index, p, (lo, hi), enlarged, unit))
    return tuple(windows)


class RescaledSystem:
    """A window blown up to unit scale: the base point moves to the origin and
    each generator becomes a partial map of the rescaled enlarged window."""

    __slots__ = ("window", "act", "grid", "_bound")

    def __init__(self, window, act, grid):
        if grid < 2:
            raise ValueError("grid resolution must be at least 2")
        object.__setattr__(self, "window", window)
        object.__setattr__(self, "act", act)
        object.__setattr__(self, "grid", int(grid))
        object.__setattr__(self, "_bound", dict(zip(act.names, act.maps)))

    def __setattr__(self, name, value):
        raise AttributeError("RescaledSystem is immutable")

    @property
    def names(self):
        return self.act.names

    @property
    def domain(self):
        w = self.window
        return ((w.enlarged[0] - w.point) / w.unit,
                (w.enlarged[1] - w.point) / w.unit)

    def apply(self, name, x):
        x = Fraction(x)
        lo, hi = self.domain
        if not lo <= x <= hi:
            raise OutOfDomain("%s is outside the rescaled window" % (x,))
        w = self.window
        return (self._bound[name].apply(w.point + w.unit * x) - w.point) / w.unit

    def displacement_at_0(self, name):
        return self.apply(name, ZERO)


def rescale(w: Window, act: MarkedAction, grid=64) -> RescaledSystem:
    """Normalized local picture of the action on a window; the largest
    generator displacement of the origin is exactly 1."""
    rs = RescaledSystem(w, act, grid)
    assert max(abs(rs.displacement_at_0(n)) for n in rs.names) == 1
    return rs


def _grid_points(rs: RescaledSystem, radius, grid):
    radius = Fraction(radius)
    lo, hi = rs.domain
    lo, hi = max(lo, -radius), min(hi, radius)
    if lo > hi:
        raise EmptyGridDomain(
            "window does not meet the requested radius %s" % (radius,))
    span = hi - lo
    return [lo + span * Fraction(k, grid) for k in range(grid + 1)]


def generator_deviation(rs: RescaledSystem, name, radius, grid):
    """Largest |g_hat(x) - x - g_hat(0)| over the rational grid; a lower bound
    for the sup, exact at every sampled point."""
    if grid < 2:
        raise ValueError("grid resolution must be at least 2")
    shift = rs.displacement_at_0(name)
    best = ZERO
    for x in _grid_points(rs, radius, grid):
        dev = abs(rs.apply(name, x) - x - shift)
        if dev > best:
            best = dev
    return best


def translation_deviation(rs: RescaledSystem, radius, grid):
    """How far the rescaled system is from a system of translations."""
    return max(generator_deviation(rs, name, radius, grid)
               for name in rs.names)


def _bisect_displacement(rs, name, a, va, b, refine):
    for _ in range(refine):
        mid = (a + b) / 2
        v = rs.apply(name, mid) - mid
        if v == 0:
            return (mid, mid)
        if (v > 0) == (va > 0):
            a, va = mid, v
        else:
            b = mid
    return (a, b)


def fixed_point_in_window(rs: RescaledSystem, refine=12):
    """Per generator: an exact bracket in the rescaled window across which the
    displacement g_hat(x) - x changes sign (degenerate at an exact zero), or
    None when the displacement keeps one sign at grid granularity."""
    lo, hi = rs.domain
    span = hi - lo
    pts = [lo + span * Fraction(k, rs.grid) for k in range(rs.grid + 1)]
    out = {}
    for name in rs.names:
        vals = [rs.apply(name, x) - x for x in pts]
        if all(v == 0 for v in vals):
            raise Degenerate("generator %s is the identity on the window" % name)
        bracket = None
        for k, v in enumerate(vals):
            if v == 0:
                bracket = (pts[k], pts[k])
                break
            if k and (vals[k - 1] > 0) != (v > 0):
                bracket = _bisect_displacement(
                    rs, name, pts[k - 1], vals[k - 1], pts[k], refine)
                break
        out[name] = bracket
    return out


def hull_displacement(rs: RescaledSystem, w):
    """How far the word moves the base point, in units of the hull length."""
    p = rs.window.point
    return abs(word_eval(rs.act, w, p) - p) / rs.window.length
