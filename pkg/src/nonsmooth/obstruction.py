"""Certificates that an action cannot be conjugated into the C1 world.

Two routes are certified with exact arithmetic: commutator domination over a
point sequence (with a structural extension to all indices via interleaved
fixed-point brackets and deck periodicity), and the derivative witness for the
abelian product action (slopes below one half at midpoints accumulating on a
fixed-point sequence).
"""

from fractions import Fraction

from .cover import COVER_BASEPOINT, CoverPoint, cover_cmp, fixed_point_lift
from .errors import (
    BracketOutsideWindow,
    DegenerateSequence,
    NotCommutatorClass,
    NotFixed,
    SearchExhausted,
    Unsupported,
)
from .groupact import COVER_LINE, UNIT_INTERVAL, Word, word_eval, zz_build, zz_slope_mid
from .plmaps import IntervalMapExpr, RIGHT, anchor, as_expr, cell_midpoint, germ_slope
from .projline import EQUAL, GREATER, LESS, ordering_name
from .rational import fmt_rat

HALF = Fraction(1, 2)


def _cmp_points(domain, x, y):
    if domain == COVER_LINE:
        return cover_cmp(x, y)
    return (x > y) - (x < y)


def _point_obj(x):
    if isinstance(x, CoverPoint):
        return x.to_obj()
    return fmt_rat(x)


class OrderResult:
    """Outcome of comparing two words at a point: where each image landed."""

    __slots__ = ("ordering", "image1", "image2")

    def __init__(self, ordering, image1, image2):
        object.__setattr__(self, "ordering", ordering)
        object.__setattr__(self, "image1", image1)
        object.__setattr__(self, "image2", image2)

    def __setattr__(self, name, value):
        raise AttributeError("OrderResult is immutable")

    @property
    def name(self):
        return ordering_name(self.ordering)

    def to_obj(self):
        return {"ordering": self.name,
                "image1": _point_obj(self.image1),
                "image2": _point_obj(self.image2)}

    def __repr__(self):
        return "OrderResult(%s)" % self.name


def order_cmp(act, w1, w2, p):
    """Compare two words by where they send p; Equal marks a stabilizer coset."""
    image1 = word_eval(act, w1, p)
    image2 = word_eval(act, w2, p)
    return OrderResult(_cmp_points(act.domain, image1, image2), image1, image2)


def is_commutator_class_trivial(w):
    return all(w.exponent_sum(i) == 0 for i in range(w.max_index() + 1))


class DominationRow:
    __slots__ = ("m", "generator", "sign", "moved", "dominator", "ordering",
                 "bracket_route")

    def __init__(self, m, generator, sign, moved, dominator, ordering, bracket_route):
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "generator", generator)
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "moved", moved)
        object.__setattr__(self, "dominator", dominator)
        object.__setattr__(self, "ordering", ordering)
        object.__setattr__(self, "bracket_route", bracket_route)

    def __setattr__(self, name, value):
        raise AttributeError("DominationRow is immutable")

    def to_obj(self):
        return {"m": self.m,
                "generator": self.generator,
                "sign": self.sign,
                "moved": _point_obj(self.moved),
                "dominator": _point_obj(self.dominator),
                "ordering": ordering_name(self.ordering),
                "bracket_route": self.bracket_route}


class InterleavingCertificate:
    """Per-generator fixed-point brackets placed inside one deck window."""

    __slots__ = ("window", "entries", "periodicity_note")

    def __init__(self, window, entries, periodicity_note):
        object.__setattr__(self, "window", window)
        object.__setattr__(self, "entries", tuple(entries))
        object.__setattr__(self, "periodicity_note", periodicity_note)

    def __setattr__(self, name, value):
        raise AttributeError("InterleavingCertificate is immutable")

    def to_obj(self):
        return {
            "window": [self.window[0].to_obj(), self.window[1].to_obj()],
            "brackets": [
                {"generator": name,
                 "lo": bracket.lo.to_obj(),
                 "hi": bracket.hi.to_obj(),
                 "sign_lo": bracket.sign_lo,
                 "sign_hi": bracket.sign_hi,
                 "deck_shift": shift}
                for name, bracket, shift in self.entries
            ],
            "periodicity_note": self.periodicity_note,
        }


class DominationCertificate:
    __slots__ = ("h", "generators", "base", "advancing", "depth", "rows",
                 "valid", "flags", "structural", "interleaving", "normalization")

    def __init__(self, h, generators, base, advancing, depth, rows, valid,
                 flags, structural, interleaving, normalization):
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "generators", tuple(generators))
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "advancing", advancing)
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "valid", valid)
        object.__setattr__(self, "flags", tuple(flags))
        object.__setattr__(self, "structural", structural)
        object.__setattr__(self, "interleaving", interleaving)
        object.__setattr__(self, "normalization", dict(normalization))

    def __setattr__(self, name, value):
        raise AttributeError("DominationCertificate is immutable")

    def to_obj(self):
        return {
            "dominating_word": self.h.to_string(self.generators),
            "generators": list(self.generators),
            "base_point": _point_obj(self.base),
            "advancing_word": self.advancing.to_string(self.generators),
            "depth": self.depth,
            "valid": self.valid,
            "structural": self.structural,
            "flags": list(self.flags),
            "normalization": dict(self.normalization),
            "interleaving": self.interleaving.to_obj() if self.interleaving else None,
            "rows": [r.to_obj() for r in self.rows],
        }


def certify_interleaving(act, window_base=None):
    """Bracket a fixed point of every generator strictly inside the window
    (base, base+1); deck periodicity then repeats the picture on every sheet.
    """
    if act.domain != COVER_LINE:
        raise Unsupported("interleaving certificates need a cover-line action")
    base = COVER_BASEPOINT if window_base is None else window_base
    window = (base, base.deck(1))
    entries = []
    for name, bound in zip(act.names, act.maps):
        fixed, cert = fixed_point_lift(bound.moebius)
        if fixed != bound:
            raise BracketOutsideWindow(
                "generator %s is a deck shift of its fixed-point lift" % name)
        placed = None
        # prefer the smallest deck shift so unshifted brackets win
        for k in sorted(range(-3, 4), key=abs):
            for bracket in cert.brackets:
                moved = bracket.deck(k)
                if (cover_cmp(window[0], moved.lo) == LESS
                        and cover_cmp(moved.hi, window[1]) == LESS):
                    placed = (moved, k)
                    break
            if placed:
                break
        if placed is None:
            raise BracketOutsideWindow(
                "no fixed-point bracket of %s fits inside the window" % name)
        moved, k = placed
        if not moved.degenerate:
            # exact sign re-verification under the bound lift
            if cover_cmp(bound.apply(moved.lo), moved.lo) != moved.sign_lo:
                raise BracketOutsideWindow("stale bracket sign for %s" % name)
            if cover_cmp(bound.apply(moved.hi), moved.hi) != moved.sign_hi:
                raise BracketOutsideWindow("stale bracket sign for %s" % name)
        entries.append((name, moved, k))
    note = ("deck equivariance repeats each bracket inside every window "
            "(base+n, base+n+1), n any integer")
    return InterleavingCertificate(window, entries, note)


def certify_domination(act, h, seq, depth):
    """Comparison table certifying h strictly dominates every generator and
    inverse along the advancing sequence, plus the structural extension when
    the bracket route applies."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if not is_commutator_class_trivial(h):
        raise NotCommutatorClass(
            "dominating word has nonzero exponent sum: %r" % (h.to_obj(),))
    base, advancing = seq
    base = act.check_point(base)
    if word_eval(act, advancing, base) == base:
        raise DegenerateSequence("advancing word fixes the base point")

    structural = False
    interleaving = None
    brackets = {}
    if act.domain == COVER_LINE:
        adv_img = word_eval(act, advancing, base)
        h_img = word_eval(act, h, base)
        deck_step = (adv_img == base.deck(1))
        deck_jump = (h_img.base == base.base and h_img.sheet > base.sheet)
        if deck_step and deck_jump:
            try:
                interleaving = certify_interleaving(act, window_base=base)
            except BracketOutsideWindow:
                interleaving = None
            if interleaving is not None:
                structural = True
                brackets = {name: bracket
                            for name, bracket, _ in interleaving.entries}

    rows = []
    valid = True
    p_m = base
    for m in range(depth + 1):
        dominator = word_eval(act, h, p_m)
        for idx, name in enumerate(act.names):
            for sign in (1, -1):
                moved = act.bound_map(idx, sign).apply(p_m)
                ordering = _cmp_points(act.domain, moved, dominator)
                if ordering != LESS:
                    valid = False
                route = None
                if structural:
                    ceiling = brackets[name].hi.deck(m)
                    route = ordering_name(cover_cmp(moved, ceiling))
                    if cover_cmp(moved, ceiling) != LESS:
                        # the two routes must agree; a miss voids the extension
                        structural = False
                rows.append(DominationRow(m, name, sign, moved, dominator,
                                          ordering, route))
        p_m = word_eval(act, advancing, p_m)

    structural = structural and valid
    flags = []
    if depth == 0:
        flags.append("ShallowDepth")
    if structural:
        flags.append("StructurallyExtended")
    return DominationCertificate(
        h=h, generators=act.names, base=base, advancing=advancing, depth=depth,
        rows=rows, valid=valid, flags=flags, structural=structural,
        interleaving=interleaving, normalization=act.meta)


class SlopeCharacter:
    """Multiplicative character: each generator's exact germ slope at a common
    fixed point."""

    __slots__ = ("point", "side", "table")

    def __init__(self, point, side, table):
        object.__setattr__(self, "point", point)
        object.__setattr__(self, "side", side)
        object.__setattr__(self, "table", dict(table))

    def __setattr__(self, name, value):
        raise AttributeError("SlopeCharacter is immutable")

    def of_word(self, w, names):
        sigma = Fraction(1)
        for idx, exp in w.letters:
            s = self.table[names[idx]]
            sigma *= s if exp > 0 else 1 / s
        return sigma

    def to_obj(self):
        return {"point": fmt_rat(self.point),
                "side": self.side,
                "table": {name: fmt_rat(s) for name, s in sorted(self.table.items())}}


def slope_character(act, p, side=RIGHT):
    if act.domain != UNIT_INTERVAL:
        raise Unsupported("slope characters live on interval actions")
    p = Fraction(p)
    table = {}
    for name, bound in zip(act.names, act.maps):
        expr = as_expr(bound)
        if expr.apply(p) != p:
            raise NotFixed("generator %s moves the base point %s" % (name, p))
        table[name] = germ_slope(expr, p, side)
    return SlopeCharacter(p, side, table)


def word_expr(act, w):
    """Materialize a word of an interval action as a composition expression."""
    factors = []
    for idx, exp in w.letters:
        factors.append(as_expr(act.bound_map(idx, exp)))
    return IntervalMapExpr(tuple(factors))


class ZZWitnessEntry:
    __slots__ = ("index", "power", "slope", "rejected_slope")

    def __init__(self, index, power, slope, rejected_slope):
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "power", power)
        object.__setattr__(self, "slope", slope)
        object.__setattr__(self, "rejected_slope", rejected_slope)

    def __setattr__(self, name, value):
        raise AttributeError("ZZWitnessEntry is immutable")

    def to_obj(self):
        return {"index": self.index,
                "power": self.power,
                "midpoint": fmt_rat(cell_midpoint(self.index)),
                "slope": fmt_rat(self.slope),
                "rejected_slope":
                    None if self.rejected_slope is None else fmt_rat(self.rejected_slope)}


class ZZWitness:
    __slots__ = ("truncation", "cap", "entries", "support", "anchors_checked",
                 "anchors_fixed", "narrative")

    def __init__(self, truncation, cap, entries, support, anchors_checked,
                 anchors_fixed, narrative):
        object.__setattr__(self, "truncation", truncation)
        object.__setattr__(self, "cap", cap)
        object.__setattr__(self, "entries", tuple(entries))
        object.__setattr__(self, "support", dict(support))
        object.__setattr__(self, "anchors_checked", anchors_checked)
        object.__setattr__(self, "anchors_fixed", anchors_fixed)
        object.__setattr__(self, "narrative", narrative)

    def __setattr__(self, name, value):
        raise AttributeError("ZZWitness is immutable")

    @property
    def valid(self):
        return (self.anchors_fixed
                and all(e.slope < HALF for e in self.entries))

    def to_obj(self):
        return {
            "truncation": self.truncation,
            "cap": self.cap,
            "support": {str(i): k for i, k in sorted(self.support.items())},
            "entries": [e.to_obj() for e in self.entries],
            "anchors_checked": list(self.anchors_checked),
            "anchors_fixed": self.anchors_fixed,
            "valid": self.valid,
            "narrative": self.narrative,
        }


_ZZ_NARRATIVE = (
    "For each listed cell the chosen power has one-sided slopes strictly below "
    "1/2 at the cell midpoint.  The midpoints accumulate at 1 while every "
    "anchor is fixed, so the anchors also accumulate at 1.  A C1 conjugate of "
    "the product map would need derivative at most 1/2 along the midpoint "
    "sequence and exactly 1 along the fixed anchor sequence; both limits would "
    "be the derivative at 1, which is impossible.  The product over all cells "
    "is truncated here; each midpoint inequality only consults finitely many "
    "cells, so the truncation certifies the same contradiction."
)


def zz_witness(truncation, cap=64):
    """Search each cell for the least power whose midpoint slope drops below
    one half, then verify the assembled product fixes all nearby anchors."""
    if truncation < 0:
        raise ValueError("truncation radius must be nonnegative")
    if cap < 1:
        raise ValueError("search cap must be positive")
    entries = []
    support = {}
    for i in range(-truncation, truncation + 1):
        found = None
        rejected = None
        for n in range(1, cap + 1):
            slope = zz_slope_mid(zz_build({i: n}), i)
            if slope < HALF:
                found = (n, slope)
                break
            rejected = slope
        if found is None:
            raise SearchExhausted(
                "no power up to %d brings the midpoint slope of cell %d below 1/2"
                % (cap, i))
        power, slope = found
        support[i] = power
        entries.append(ZZWitnessEntry(i, power, slope,
                                      rejected if power > 1 else None))
    product = zz_build(support)
    lo, hi = -truncation - 2, truncation + 2
    anchors_fixed = all(product.apply(anchor(j)) == anchor(j)
                        for j in range(lo, hi + 1))
    return ZZWitness(truncation, cap, entries, support, (lo, hi),
                     anchors_fixed, _ZZ_NARRATIVE)
