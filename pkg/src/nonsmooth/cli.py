"""Command surface: certificate reports, renormalization traces, plots, and
orbit/order queries.

Every payload number is an exact rational string; decimal columns come from
integer long division, so identical invocations produce byte-identical
output. The only non-deterministic field is the generated_at header, which
golden comparisons exclude.
"""

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction

from .cover import COVER_BASEPOINT, CoverPoint, line_point
from .errors import (
    Degenerate,
    EmptyDisplacement,
    EmptyGridDomain,
    NonsmoothError,
    SearchExhausted,
)
from .groupact import (
    COVER_LINE,
    MarkedAction,
    UNIT_INTERVAL,
    compactified_action,
    orbit_sequence,
    parse_word,
    punctured_torus_action,
    word_eval,
    zz_letter_action,
)
from .obstruction import certify_domination, order_cmp, zz_witness
from .plmaps import ModelTranslation, PLMap, cell_midpoint
from .projline import ProjPoint
from .rational import fmt_rat, parse_rat, rat_to_decimal
from .renorm import (
    build_windows,
    fixed_point_in_window,
    generator_deviation,
    germ_action,
    rescale,
)

REPORT_VERSION = "1"

USAGE = """usage: nonsmooth <command> [options]

commands:
  certify   emit a JSON certificate report (punctured-torus | zz)
  renorm    emit a CSV renormalization trace for an action
  plot      render a renorm CSV as an SVG deviation chart
  orbit     print an exact orbit, one point per line
  order     compare words by where they move a point

run "nonsmooth <command> --help" for the command's options.
"""


class UsageError(Exception):
    """Malformed arguments or action/point specs; exits with code 2."""


# ---------------------------------------------------------------- specs


def parse_action_spec(text):
    """Accept a bare type name or a JSON record; return (echo, action).

    The echo is the normalized spec with defaults filled in, embedded in
    reports so a run can be reproduced from its output alone.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        obj = {"type": text.strip()}
    if isinstance(obj, str):
        obj = {"type": obj}
    if not isinstance(obj, dict) or "type" not in obj:
        raise UsageError("action spec needs a \"type\" field: %r" % (text,))
    kind = obj["type"]
    try:
        if kind == "punctured-torus":
            return {"type": kind}, punctured_torus_action()
        if kind == "zz":
            truncation = int(obj.get("truncation", 16))
            if truncation < 0:
                raise UsageError("zz truncation must be nonnegative")
            return {"type": kind, "truncation": truncation}, zz_letter_action()
        if kind == "pl":
            points = obj.get("breakpoints", [["0", "0"], ["1", "1"]])
            pts = [(parse_rat(str(x)), parse_rat(str(y))) for x, y in points]
            echo = {"type": kind,
                    "breakpoints": [[fmt_rat(x), fmt_rat(y)] for x, y in pts]}
            return echo, MarkedAction(("a",), (PLMap(pts),), UNIT_INTERVAL)
        if kind == "model-translation":
            support = obj.get("support", ["1/2", "2/3"])
            power = int(obj.get("power", 1))
            lo, hi = (parse_rat(str(v)) for v in support)
            echo = {"type": kind, "support": [fmt_rat(lo), fmt_rat(hi)],
                    "power": power}
            return echo, MarkedAction(
                ("a",), (ModelTranslation((lo, hi), power),), UNIT_INTERVAL)
        if kind == "parabolic-germ":
            return {"type": kind}, germ_action()
    except (ValueError, TypeError) as exc:
        raise UsageError("bad action spec %r: %s" % (text, exc))
    raise UsageError("unknown action type %r" % (kind,))


def parse_point(text, domain):
    """Point literal: "pt", "t=RAT,sheet=INT", or a bare rational."""
    s = text.strip()
    if domain == COVER_LINE:
        if s == "pt":
            return COVER_BASEPOINT
        if s.startswith("t="):
            try:
                t_part, sheet_part = s.split(",")
                t_text = t_part[2:].strip()
                if not sheet_part.strip().startswith("sheet="):
                    raise ValueError("missing sheet field")
                sheet = int(sheet_part.strip()[6:])
                base = (ProjPoint.infinity() if t_text == "inf"
                        else ProjPoint.from_affine(parse_rat(t_text)))
                return CoverPoint(base, sheet)
            except ValueError as exc:
                raise UsageError("bad cover point %r: %s" % (text, exc))
        try:
            return line_point(parse_rat(s))
        except ValueError as exc:
            raise UsageError("bad cover point %r: %s" % (text, exc))
    if s == "pt":
        raise UsageError("\"pt\" is a cover point; this action moves rationals")
    try:
        return parse_rat(s)
    except ValueError as exc:
        raise UsageError("bad rational point %r: %s" % (text, exc))


def format_point(p):
    if isinstance(p, CoverPoint):
        t = "inf" if p.base.is_infinite else fmt_rat(p.base.affine())
        return "t=%s,sheet=%d" % (t, p.sheet)
    return fmt_rat(p)


def split_words(text):
    """Split a word list on top-level commas; commutator commas stay put."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise UsageError("unbalanced ']' in %r" % (text,))
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise UsageError("unbalanced '[' in %r" % (text,))
    parts.append("".join(cur))
    parts = [p.strip() for p in parts]
    if any(not p for p in parts):
        raise UsageError("empty word in %r" % (text,))
    return parts


def default_point(spec, act):
    if act.domain == COVER_LINE:
        return COVER_BASEPOINT
    if spec["type"] == "zz":
        return cell_midpoint(0)
    if spec["type"] == "model-translation":
        # the support endpoints are fixed; start in the middle
        lo, hi = (parse_rat(v) for v in spec["support"])
        return (lo + hi) / 2
    return Fraction(1, 2)


def default_advance(spec):
    return "[a,b]" if spec["type"] == "punctured-torus" else "a"


# ---------------------------------------------------------------- output


def emit_text(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def render_report(report):
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def timestamp():
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


# ---------------------------------------------------------------- commands


def cmd_certify(argv):
    parser = argparse.ArgumentParser(
        prog="nonsmooth certify",
        description="Emit a machine-checkable nonsmoothability certificate.")
    parser.add_argument("target", choices=("punctured-torus", "zz"))
    parser.add_argument("--depth", type=int, default=50,
                        help="domination rows per generator (punctured-torus)")
    parser.add_argument("--truncation", type=int, default=16,
                        help="cell radius of the finite table (zz)")
    parser.add_argument("--out", default=None, help="report path (default stdout)")
    args = parser.parse_args(argv)

    if args.target == "punctured-torus":
        if args.depth < 0:
            parser.error("--depth must be nonnegative")
        act = punctured_torus_action()
        cert = certify_domination(
            act, parse_word("[a,b]^2"), (COVER_BASEPOINT, parse_word("[a,b]")),
            args.depth)
        if not cert.valid:
            verdict = "invalid"
        elif cert.structural:
            verdict = "certified"
        else:
            verdict = "checked-range-only"
        report = {
            "version": REPORT_VERSION,
            "generated_at": timestamp(),
            "action": {"type": "punctured-torus"},
            "depth": args.depth,
            "normalization": cert.normalization,
            "certificate": cert.to_obj(),
            "verdict": verdict,
        }
    else:
        if args.truncation < 0:
            parser.error("--truncation must be nonnegative")
        witness = zz_witness(args.truncation)
        verdict = "certified" if witness.valid else "invalid"
        report = {
            "version": REPORT_VERSION,
            "generated_at": timestamp(),
            "action": {"type": "zz", "truncation": args.truncation},
            "truncation": args.truncation,
            "normalization": {},
            "certificate": witness.to_obj(),
            "verdict": verdict,
        }
    emit_text(render_report(report), args.out)
    return 0 if report["verdict"] != "invalid" else 1


CSV_COLUMNS = ("window_index", "generator", "displacement_at_0",
               "grid_deviation", "fixed_point_bracket_lo",
               "fixed_point_bracket_hi", "grid_deviation_dec")


def cmd_renorm(argv):
    parser = argparse.ArgumentParser(
        prog="nonsmooth renorm",
        description="Blow up an action along a marked orbit; write one CSV "
                    "row per window and generator.")
    parser.add_argument("--action", default="parabolic-germ",
                        help="action spec: bare type name or JSON record")
    parser.add_argument("--windows", type=int, default=8)
    parser.add_argument("--grid", type=int, default=64)
    parser.add_argument("--radius", default="2", help="rational probe radius")
    parser.add_argument("--start", default=None,
                        help="first marked point (default: action-specific)")
    parser.add_argument("--advance", default=None,
                        help="word advancing the marked point (default: "
                             "[a,b] for punctured-torus, a otherwise)")
    parser.add_argument("--out", default=None, help="CSV path (default stdout)")
    args = parser.parse_args(argv)
    if args.windows < 1:
        parser.error("--windows must be positive")
    if args.grid < 2:
        parser.error("--grid must be at least 2")

    spec, act = parse_action_spec(args.action)
    if act.domain == COVER_LINE:
        act = compactified_action(act)
    try:
        radius = parse_rat(args.radius)
    except ValueError as exc:
        raise UsageError("bad radius %r: %s" % (args.radius, exc))
    start = (default_point(spec, act) if args.start is None
             else parse_point(args.start, act.domain))
    advance = act.parse(args.advance if args.advance is not None
                        else default_advance(spec))
    points = orbit_sequence(act, advance, start, args.windows - 1)

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for window in build_windows(act, points):
        rs = rescale(window, act, args.grid)
        brackets = fixed_point_in_window(rs)
        for name in rs.names:
            dev = generator_deviation(rs, name, radius, args.grid)
            bracket = brackets[name]
            writer.writerow((
                window.index,
                name,
                fmt_rat(rs.displacement_at_0(name)),
                fmt_rat(dev),
                "" if bracket is None else fmt_rat(bracket[0]),
                "" if bracket is None else fmt_rat(bracket[1]),
                rat_to_decimal(dev, 12),
            ))
    emit_text(buf.getvalue(), args.out)
    return 0


SVG_WIDTH, SVG_HEIGHT, SVG_MARGIN = 640, 400, 70
SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b")


def _svg_x(i, max_i):
    span = Fraction(max(max_i, 1))
    return SVG_MARGIN + Fraction(i) / span * (SVG_WIDTH - 2 * SVG_MARGIN)


def _svg_y(v, max_v):
    top = max_v if max_v > 0 else Fraction(1)
    return SVG_HEIGHT - SVG_MARGIN - v / top * (SVG_HEIGHT - 2 * SVG_MARGIN)


def _px(q):
    return rat_to_decimal(q, 2)


def cmd_plot(argv):
    parser = argparse.ArgumentParser(
        prog="nonsmooth plot",
        description="Render a renorm CSV as one grid-deviation polyline per "
                    "generator.")
    parser.add_argument("--in", dest="in_path", required=True)
    parser.add_argument("--out", default=None, help="SVG path (default stdout)")
    args = parser.parse_args(argv)

    series = {}
    with open(args.in_path, "r", encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            try:
                idx = int(row["window_index"])
                dev = parse_rat(row["grid_deviation"])
                name = row["generator"]
            except (KeyError, TypeError, ValueError):
                raise UsageError("%s is not a renorm CSV" % (args.in_path,))
            series.setdefault(name, []).append((idx, dev))
    if not series:
        raise UsageError("no data rows in %s" % (args.in_path,))

    max_i = max(i for pts in series.values() for i, _ in pts)
    max_v = max(v for pts in series.values() for _, v in pts)
    top = max_v if max_v > 0 else Fraction(1)
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
        'viewBox="0 0 %d %d">' % (SVG_WIDTH, SVG_HEIGHT, SVG_WIDTH, SVG_HEIGHT),
        '<rect width="%d" height="%d" fill="white"/>' % (SVG_WIDTH, SVG_HEIGHT),
        '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="black"/>' % (
            _px(Fraction(SVG_MARGIN)), _px(Fraction(SVG_HEIGHT - SVG_MARGIN)),
            _px(Fraction(SVG_WIDTH - SVG_MARGIN)),
            _px(Fraction(SVG_HEIGHT - SVG_MARGIN))),
        '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="black"/>' % (
            _px(Fraction(SVG_MARGIN)), _px(Fraction(SVG_HEIGHT - SVG_MARGIN)),
            _px(Fraction(SVG_MARGIN)), _px(Fraction(SVG_MARGIN))),
        '<text x="%d" y="%d" text-anchor="middle">window_index</text>' % (
            SVG_WIDTH // 2, SVG_HEIGHT - SVG_MARGIN // 3),
        '<text x="%d" y="%d" text-anchor="middle" '
        'transform="rotate(-90 %d %d)">grid_deviation</text>' % (
            SVG_MARGIN // 3, SVG_HEIGHT // 2, SVG_MARGIN // 3, SVG_HEIGHT // 2),
        '<text x="%s" y="%d" text-anchor="middle">0</text>' % (
            _px(Fraction(SVG_MARGIN)), SVG_HEIGHT - SVG_MARGIN + 20),
        '<text x="%s" y="%d" text-anchor="middle">%d</text>' % (
            _px(Fraction(SVG_WIDTH - SVG_MARGIN)), SVG_HEIGHT - SVG_MARGIN + 20,
            max_i),
        '<text x="%d" y="%s" text-anchor="end">%s</text>' % (
            SVG_MARGIN - 6, _px(_svg_y(Fraction(0), top) + 4), "0"),
        '<text x="%d" y="%s" text-anchor="end">%s</text>' % (
            SVG_MARGIN - 6, _px(_svg_y(top, top) + 4), rat_to_decimal(top, 4)),
    ]
    for pos, name in enumerate(sorted(series)):
        color = SVG_COLORS[pos % len(SVG_COLORS)]
        pts = " ".join("%s,%s" % (_px(_svg_x(i, max_i)), _px(_svg_y(v, top)))
                       for i, v in sorted(series[name]))
        lines.append('<polyline fill="none" stroke="%s" points="%s"/>' % (
            color, pts))
        lines.append('<text x="%d" y="%d" fill="%s">%s</text>' % (
            SVG_WIDTH - SVG_MARGIN + 8, SVG_MARGIN + 18 * pos + 4, color, name))
    lines.append("</svg>")
    emit_text("\n".join(lines) + "\n", args.out)
    return 0


def cmd_orbit(argv):
    parser = argparse.ArgumentParser(
        prog="nonsmooth orbit",
        description="Print the exact orbit of a point under repeated "
                    "application of a word.")
    parser.add_argument("--action", default="punctured-torus")
    parser.add_argument("--word", default="[a,b]")
    parser.add_argument("--point", default=None,
                        help="pt, t=RAT,sheet=INT, or a rational")
    parser.add_argument("--count", type=int, default=5)
    args = parser.parse_args(argv)
    if args.count < 0:
        parser.error("--count must be nonnegative")

    spec, act = parse_action_spec(args.action)
    point = (default_point(spec, act) if args.point is None
             else parse_point(args.point, act.domain))
    word = act.parse(args.word)
    for n, p in enumerate(orbit_sequence(act, word, point, args.count)):
        sys.stdout.write("%d\t%s\n" % (n, format_point(p)))
    return 0


def cmd_order(argv):
    parser = argparse.ArgumentParser(
        prog="nonsmooth order",
        description="Compare consecutive words by where they move a point; "
                    "one verdict per line.")
    parser.add_argument("--action", default="punctured-torus")
    parser.add_argument("--point", default=None)
    parser.add_argument("--words", required=True,
                        help="comma-separated; commas inside [x,y] are kept")
    args = parser.parse_args(argv)

    spec, act = parse_action_spec(args.action)
    point = (default_point(spec, act) if args.point is None
             else parse_point(args.point, act.domain))
    words = split_words(args.words)
    if len(words) < 2:
        raise UsageError("need at least two words to compare")
    for first, second in zip(words, words[1:]):
        r = order_cmp(act, act.parse(first), act.parse(second), point)
        sys.stdout.write("%s\t%s\t%s\n" % (
            r.name, format_point(r.image1), format_point(r.image2)))
    return 0


# ---------------------------------------------------------------- dispatch


COMMANDS = {
    "certify": cmd_certify,
    "renorm": cmd_renorm,
    "plot": cmd_plot,
    "orbit": cmd_orbit,
    "order": cmd_order,
}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help"):
        sys.stderr.write(USAGE)
        return 0 if argv else 64
    handler = COMMANDS.get(argv[0])
    if handler is None:
        sys.stderr.write("unknown command %r\n%s" % (argv[0], USAGE))
        return 64
    try:
        return handler(argv[1:])
    except SystemExit as exc:
        return 0 if exc.code is None else int(exc.code)
    except (EmptyDisplacement, EmptyGridDomain, SearchExhausted,
            Degenerate) as exc:
        sys.stderr.write("%s: %s\n" % (type(exc).__name__, exc))
        return 1
    except (UsageError, NonsmoothError, ValueError) as exc:
        sys.stderr.write("%s: %s\n" % (type(exc).__name__, exc))
        return 2
    except OSError as exc:
        sys.stderr.write("i/o error: %s\n" % (exc,))
        return 3


if __name__ == "__main__":
    sys.exit(main())
