"""Free-group words, marked actions, orbits, and the abelian product action.

A MarkedAction binds generator letters to invertible maps over one of two
domains: the covered projective line (cover points) or the unit interval
(rationals).  Words act on the left, so the rightmost letter is applied first.
"""

from fractions import Fraction

from .cover import (
    COVER_BASEPOINT,
    CoverPoint,
    TORUS_A,
    TORUS_B,
    compactify,
    fixed_point_lift,
    uncompactify,
)
from .errors import OutOfDomain, Unsupported, WordSyntaxError
from .plmaps import (
    LEFT,
    RIGHT,
    IntervalMapExpr,
    anchor,
    base_cell_shift,
    cell_midpoint,
    cell_shift,
    chart_index,
    chart_shift,
)

COVER_LINE = "cover-line"
UNIT_INTERVAL = "unit-interval"
DEFAULT_NAMES = ("a", "b")


def _reduce(letters):
    out = []
    for idx, exp in letters:
        idx, exp = int(idx), int(exp)
        if exp not in (1, -1):
            raise WordSyntaxError("letter exponent must be +1 or -1, got %d" % exp)
        if idx < 0:
            raise WordSyntaxError("generator index must be nonnegative, got %d" % idx)
        if out and out[-1] == (idx, -exp):
            out.pop()
        else:
            out.append((idx, exp))
    return tuple(out)


class Word:
    """Freely reduced word in abstract generators, as (index, exponent) letters."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        object.__setattr__(self, "letters", _reduce(letters))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def identity(cls):
        return cls()

    @classmethod
    def generator(cls, index, exp=1):
        return cls(((index, exp),))

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def inverse(self):
        return Word(tuple((i, -e) for i, e in reversed(self.letters)))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return Word(self.letters * n)

    def __len__(self):
        return len(self.letters)

    def exponent_sum(self, index):
        return sum(e for i, e in self.letters if i == index)

    def max_index(self):
        return max((i for i, _ in self.letters), default=-1)

    def to_string(self, names=DEFAULT_NAMES):
        parts = []
        for i, e in self.letters:
            if i >= len(names):
                raise WordSyntaxError("no letter name for generator %d" % i)
            parts.append(names[i] if e > 0 else names[i].upper())
        return "".join(parts)

    def to_obj(self):
        return [[i, e] for i, e in self.letters]

    @classmethod
    def from_obj(cls, obj):
        return cls(tuple((int(i), int(e)) for i, e in obj))

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(("Word", self.letters))

    def __repr__(self):
        return "Word(%r)" % (list(self.letters),)


def commutator(w1, w2):
    return w1 * w2 * w1.inverse() * w2.inverse()


def parse_word(text, names=DEFAULT_NAMES):
    """Parse a word: letters with capitals as inverses, ^n powers, [x,y]
    commutators, parentheses for grouping, whitespace ignored."""
    index = {}
    for i, name in enumerate(names):
        if len(name) != 1 or not name.islower():
            raise WordSyntaxError("letter names must be single lowercase characters")
        index[name] = i
    s = text
    n = len(s)
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < n and s[pos].isspace():
            pos += 1

    def parse_int():
        nonlocal pos
        start = pos
        if pos < n and s[pos] in "+-":
            pos += 1
        if pos >= n or not s[pos].isdigit():
            raise WordSyntaxError("expected an integer at position %d of %r" % (start, text))
        while pos < n and s[pos].isdigit():
            pos += 1
        return int(s[start:pos])

    def expect(ch):
        nonlocal pos
        skip_ws()
        if pos >= n or s[pos] != ch:
            raise WordSyntaxError("expected %r at position %d of %r" % (ch, pos, text))
        pos += 1

    def parse_atom():
        nonlocal pos
        ch = s[pos]
        if ch == "(":
            pos += 1
            w = parse_seq(")")
            expect(")")
            return w
        if ch == "[":
            pos += 1
            first = parse_seq(",")
            expect(",")
            second = parse_seq("]")
            expect("]")
            return commutator(first, second)
        low = ch.lower()
        if low in index:
            pos += 1
            return Word(((index[low], 1 if ch == low else -1),))
        raise WordSyntaxError("unexpected character %r at position %d of %r" % (ch, pos, text))

    def parse_seq(stop):
        nonlocal pos
        acc = Word()
        while True:
            skip_ws()
            if pos >= n:
                if stop is None:
                    return acc
                raise WordSyntaxError("missing %r in %r" % (stop, text))
            if stop is not None and s[pos] == stop:
                return acc
            w = parse_atom()
            skip_ws()
            if pos < n and s[pos] == "^":
                pos += 1
                skip_ws()
                w = w ** parse_int()
            acc = acc * w

    return parse_seq(None)


class MarkedAction:
    """Generator letters bound to invertible maps over a tagged domain."""

    __slots__ = ("names", "maps", "inverses", "domain", "meta")

    def __init__(self, names, maps, domain, meta=None):
        names, maps = tuple(names), tuple(maps)
        if not names or len(names) != len(maps):
            raise Unsupported("need one bound map per generator name")
        if domain not in (COVER_LINE, UNIT_INTERVAL):
            raise Unsupported("unknown domain tag %r" % (domain,))
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "maps", maps)
        object.__setattr__(self, "inverses", tuple(m.inverse() for m in maps))
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "meta", dict(meta or {}))

    def __setattr__(self, name, value):
        raise AttributeError("MarkedAction is immutable")

    def check_point(self, x):
        if self.domain == COVER_LINE:
            if not isinstance(x, CoverPoint):
                raise OutOfDomain("this action moves cover points, got %r" % (x,))
            return x
        if isinstance(x, CoverPoint):
            raise OutOfDomain("this action moves rationals in [0,1], got %r" % (x,))
        return Fraction(x)

    def bound_map(self, index, exp=1):
        return self.maps[index] if exp > 0 else self.inverses[index]

    def parse(self, text):
        return parse_word(text, self.names)


def word_eval(act, w, x):
    """Image of x under the word, rightmost letter first; exact."""
    y = act.check_point(x)
    for idx, exp in reversed(w.letters):
        if idx >= len(act.maps):
            raise WordSyntaxError("word uses generator %d, action has %d" % (idx, len(act.maps)))
        y = act.bound_map(idx, exp).apply(y)
    return y


def orbit_sequence(act, w, x0, n):
    if n < 0:
        raise ValueError("orbit length must be nonnegative")
    out = [act.check_point(x0)]
    for _ in range(n):
        out.append(word_eval(act, w, out[-1]))
    return out


class CompactifiedLift:
    """A lift of the covered line viewed inside (0,1), endpoints fixed."""

    __slots__ = ("lift",)

    def __init__(self, lift):
        object.__setattr__(self, "lift", lift)

    def __setattr__(self, name, value):
        raise AttributeError("CompactifiedLift is immutable")

    def apply(self, x):
        x = Fraction(x)
        if x == 0 or x == 1:
            return x
        return compactify(self.lift.apply(uncompactify(x)))

    def inverse(self):
        return CompactifiedLift(self.lift.inverse())

    def __eq__(self, other):
        return isinstance(other, CompactifiedLift) and self.lift == other.lift

    def __hash__(self):
        return hash(("CompactifiedLift", self.lift))

    def __repr__(self):
        return "CompactifiedLift(%r)" % (self.lift,)


def punctured_torus_action():
    """The two-generator action on the covered line by fixed-point lifts.

    Generators are normalized so the commutator moves the basepoint up one
    sheet; the applied normalization is recorded in the action metadata.
    """
    a, _ = fixed_point_lift(TORUS_A)
    b, _ = fixed_point_lift(TORUS_B)
    k = a.compose(b).compose(a.inverse()).compose(b.inverse())
    moved = k.apply(COVER_BASEPOINT)
    if moved == COVER_BASEPOINT.deck(1):
        names, maps, note = ("a", "b"), (a, b), "identity"
    elif moved == COVER_BASEPOINT.deck(-1):
        # swapping the generators inverts the commutator
        names, maps, note = ("a", "b"), (b, a), "swapped-generators"
    else:
        raise Unsupported("commutator displacement is not one sheet: %r" % (moved,))
    return MarkedAction(names, maps, COVER_LINE,
                        meta={"orientation_normalization": note})


def compactified_action(act):
    if act.domain != COVER_LINE:
        raise Unsupported("only cover-line actions can be compactified")
    meta = dict(act.meta)
    meta["coordinates"] = "compactified"
    return MarkedAction(act.names, tuple(CompactifiedLift(m) for m in act.maps),
                        UNIT_INTERVAL, meta=meta)


class ZZAction:
    """Product of cell translations, one per table entry: identity off the
    listed cells, the k-th power of the cell shift on cell i when table[i]=k."""

    __slots__ = ("table",)

    def __init__(self, support):
        items = support.items() if isinstance(support, dict) else support
        table = {}
        for i, k in items:
            i, k = int(i), int(k)
            if k != 0:
                table[i] = table.get(i, 0) + k
        object.__setattr__(self, "table", {i: k for i, k in table.items() if k != 0})

    def __setattr__(self, name, value):
        raise AttributeError("ZZAction is immutable")

    def apply(self, x):
        x = Fraction(x)
        if not 0 <= x <= 1:
            raise OutOfDomain("point %s outside [0,1]" % x)
        if x == 0 or x == 1:
            return x
        i = chart_index(x)
        k = self.table.get(i, 0)
        if k == 0 or x == anchor(i):
            return x
        return cell_shift(i, k).apply(x)

    def inverse(self):
        return ZZAction({i: -k for i, k in self.table.items()})

    def compose(self, other):
        merged = dict(self.table)
        for i, k in other.table.items():
            merged[i] = merged.get(i, 0) + k
        return ZZAction(merged)

    def as_expr(self):
        return IntervalMapExpr(tuple(cell_shift(i, k)
                                     for i, k in sorted(self.table.items())))

    def to_obj(self):
        return {"support": {str(i): k for i, k in sorted(self.table.items())}}

    @classmethod
    def from_obj(cls, obj):
        return cls({int(i): int(k) for i, k in obj["support"].items()})

    def __eq__(self, other):
        return isinstance(other, ZZAction) and self.table == other.table

    def __hash__(self):
        return hash(("ZZAction", tuple(sorted(self.table.items()))))

    def __repr__(self):
        return "ZZAction(%r)" % (self.table,)


def zz_build(support):
    return ZZAction(support)


def zz_apply(z, x):
    return z.apply(x)


def zz_compose(z1, z2):
    return z1.compose(z2)


def zz_slope_mid(z, i):
    """Slope of the product action at the midpoint of cell i: the chain rule
    through the i-th chart shift, the base cell shift power, and the chart
    shift back.  The midpoint is a breakpoint, so the two one-sided slopes
    differ; the larger one is returned (the derivative exists iff they agree).
    """
    k = z.table.get(int(i), 0)
    if k == 0:
        return Fraction(1)
    p = cell_midpoint(i)
    chain = IntervalMapExpr((chart_shift(i), base_cell_shift(k), chart_shift(-i)))
    return max(chain.one_sided_slope(p, LEFT), chain.one_sided_slope(p, RIGHT))


def zz_letter_action():
    """Letters for the abelian example: a is the chart shift, b the base cell shift."""
    return MarkedAction(("a", "b"), (chart_shift(), base_cell_shift()), UNIT_INTERVAL)
