"""obtool: command-line front end for open book computations.

Open book files are line oriented::

    # comments and blank lines are ignored
    surface g=1 b=1
    word a1 b1^-1 a1
    label right-handed trefoil

Pages produced by plumbing may not have the standard band layout; such files
carry ``generators`` and ``layout`` lines, and curves outside the standard
library are spelled out with ``curve`` lines.  See README.md for the grammar.

Exit codes: 0 success, 2 parse error, 3 validation error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, TextIO

from . import __version__, braidcover, mapclass, openbook, surface as surf, words
from .homology import manifold_invariants
from .openbook import OpenBook
from .surface import Curve, Strand, Surface

EXIT_OK, EXIT_PARSE, EXIT_INVALID = 0, 2, 3
DEFAULT_MAX_WORD_LENGTH = 10**6

PINNED_CONVENTIONS = {
    "basepoint": "boundary component 1",
    "generators": "x1 y1 ... xg yg z1 ... z(b-1)",
    "boundary_word_1": "[x1,y1]...[xg,yg] z1...z(b-1)",
    "boundary_word_j+1": "zj^-1",
    "positive_twist": "turns left",
    "twist_word_order": "t1 ... tk means t1 o ... o tk",
    "defect": "u_j = phi(h_j) h_j^-1",
    "transvection_sign": mapclass.TRANSVECTION_SIGN,
    "braid_lift_sign": braidcover.LIFT_SIGN,
    "burau_convention": braidcover.BURAU_CONVENTION,
}


def convention_fingerprint() -> str:
    blob = json.dumps(PINNED_CONVENTIONS, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


class ParseError(Exception):
    def __init__(self, line: int, col: int, msg: str, path: str | None = None):
        where = f"{path}:{line}:{col}" if path else f"{line}:{col}"
        super().__init__(f"{where}: {msg}")
        self.line, self.col, self.msg = line, col, msg


class InvalidInput(Exception):
    pass


# --- file parsing ------------------------------------------------------------

_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_WORD_TOKEN = re.compile(rf"({_NAME})(\^-1|\^\+?1)?")
_FOOT_TOKEN = re.compile(r"(\d+)([AB])")
_STRAND_TOKEN = re.compile(r"(\d+)([+-])(\d+)/(\d+)")
_INT_FIELD = re.compile(r"([gb])=(-?\d+)")


@dataclass
class _Line:
    no: int
    keyword: str
    tokens: list[tuple[int, str]]  # (column, text)
    raw: str


def _split(text: str) -> list[_Line]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", body)]
        if toks:
            out.append(_Line(no, toks[0][1], toks[1:], raw))
    return out


def parse_open_book(text: str, max_length: int | None = None) -> OpenBook:
    g = b = None
    generators = layout = None
    curves: list[Curve] = []
    word: list[tuple[str, int]] | None = None
    word_cols: list[tuple[int, int]] = []
    label = None
    for ln in _split(text):
        kw = ln.keyword
        if kw == "surface":
            if g is not None:
                raise ParseError(ln.no, 1, "duplicate surface line")
            fields = {}
            for col, tok in ln.tokens:
                m = _INT_FIELD.fullmatch(tok)
                if not m or m.group(1) in fields:
                    raise ParseError(ln.no, col, f"expected g=<int> or b=<int>, got {tok!r}")
                fields[m.group(1)] = int(m.group(2))
            if set(fields) != {"g", "b"}:
                raise ParseError(ln.no, 1, "surface line needs g=<int> and b=<int>")
            g, b = fields["g"], fields["b"]
        elif kw == "generators":
            for col, tok in ln.tokens:
                if not re.fullmatch(_NAME, tok):
                    raise ParseError(ln.no, col, f"bad generator name {tok!r}")
            generators = tuple(t for _, t in ln.tokens)
        elif kw == "layout":
            layout = []
            for col, tok in ln.tokens:
                m = _FOOT_TOKEN.fullmatch(tok)
                if not m:
                    raise ParseError(ln.no, col, f"bad foot {tok!r}, expected <band>A or <band>B")
                layout.append((int(m.group(1)), 0 if m.group(2) == "A" else 1))
        elif kw == "curve":
            if len(ln.tokens) < 2:
                raise ParseError(ln.no, 1, "curve line needs a name and at least one strand")
            col, name = ln.tokens[0]
            if not re.fullmatch(_NAME, name):
                raise ParseError(ln.no, col, f"bad curve name {name!r}")
            strands = []
            for col, tok in ln.tokens[1:]:
                m = _STRAND_TOKEN.fullmatch(tok)
                if not m or int(m.group(4)) == 0:
                    raise ParseError(ln.no, col, f"bad strand {tok!r}, expected <band><+|-><p>/<q>")
                strands.append(Strand(int(m.group(1)), 1 if m.group(2) == "+" else -1,
                                      Fraction(int(m.group(3)), int(m.group(4)))))
            curves.append(Curve(name, tuple(strands)))
        elif kw == "word":
            if word is not None:
                raise ParseError(ln.no, 1, "duplicate word line")
            word = []
            for col, tok in ln.tokens:
                m = _WORD_TOKEN.fullmatch(tok)
                if not m:
                    raise ParseError(ln.no, col, f"bad twist token {tok!r}")
                word.append((m.group(1), -1 if m.group(2) == "^-1" else 1))
                word_cols.append((ln.no, col))
        elif kw == "label":
            label = ln.raw.split("label", 1)[1].split("#", 1)[0].strip() or None
        else:
            raise ParseError(ln.no, 1, f"unknown directive {kw!r}")
    if g is None:
        raise ParseError(1, 1, "missing surface line")
    if word is None:
        word = []
    s = _build_surface(g, b, generators, layout, curves)
    for (name, _), (no, col) in zip(word, word_cols):
        if name not in s.curves:
            raise InvalidInput(f"{no}:{col}: unknown curve {name!r} on {s.describe()}")
    try:
        return OpenBook.from_word(s, word, label, max_length)
    except words.WordLengthExceeded as exc:
        raise InvalidInput(str(exc)) from exc


def _build_surface(g: int, b: int, generators, layout, curves: Sequence[Curve]) -> Surface:
    try:
        if layout is None:
            if generators is not None:
                raise InvalidInput("a generators line requires a layout line")
            s = surf.new_surface(g, b)
            lib = list(s.library)
        else:
            if generators is None:
                raise InvalidInput("a layout line requires a generators line")
            s = Surface(tuple(generators), tuple(layout))
            if (s.genus, s.boundary_count) != (g, b):
                raise InvalidInput(f"layout describes {s.describe()}, not Sigma_{{{g},{b}}}")
            lib = openbook._fresh_boundary_curves(s)
    except surf.SurfaceError as exc:
        raise InvalidInput(str(exc)) from exc
    names = {c.name for c in lib}
    for c in curves:
        if c.name in names:
            raise InvalidInput(f"curve {c.name!r} is already defined")
        if any(not 1 <= st.band <= s.rank for st in c.strands):
            raise InvalidInput(f"curve {c.name!r} uses a band outside 1..{s.rank}")
        problems = s.curve_problems(c)
        if problems:
            raise InvalidInput(f"curve {c.name!r} is not simple: {problems[0]}")
        names.add(c.name)
        lib.append(c)
    return s.with_library(lib)


def _default_library(s: Surface) -> dict[str, Curve]:
    std = surf.standardize(s)
    if std is not None and std[0].layout == s.layout and std[0].generators == s.generators:
        return std[0].curves
    return {c.name: c for c in openbook._fresh_boundary_curves(s)}


def format_open_book(ob: OpenBook) -> str:
    """Canonical file text for an open book."""
    s = ob.surface
    lines = [f"surface g={s.genus} b={s.boundary_count}"]
    default = _default_library(s)
    std = surf.standardize(s)
    if std is None or std[0].layout != s.layout or std[0].generators != s.generators:
        lines.append("generators " + " ".join(s.generators))
        lines.append("layout " + " ".join(f"{k}{'AB'[e]}" for k, e in s.layout))
    seen = set()
    for name, _ in ob.monodromy.twist_word:
        c = s.curve(name)
        if name in seen or default.get(name) == c:
            continue
        seen.add(name)
        strands = " ".join(
            f"{st.band}{'+' if st.direction > 0 else '-'}{st.offset.numerator}/{st.offset.denominator}"
            for st in c.strands
        )
        lines.append(f"curve {name} {strands}")
    lines.append(" ".join(["word"] + [n if e > 0 else f"{n}^-1" for n, e in ob.monodromy.twist_word]))
    if ob.label:
        lines.append(f"label {ob.label}")
    return "\n".join(lines) + "\n"


# --- reports ------------------------------------------------------------------


def open_book_report(ob: OpenBook) -> dict:
    inv = manifold_invariants(ob.monodromy)
    fr = openbook.is_full_connected_sum(ob)
    return {
        "label": ob.label,
        "surface": {"genus": ob.surface.genus, "boundary_count": ob.surface.boundary_count},
        "page_betti": inv.page_betti,
        "manifold_betti": inv.betti,
        "torsion": list(inv.torsion),
        "literal_fixed_dim": inv.literal_fixed_dim,
        "readings_differ": inv.readings_differ,
        "trivial": mapclass.is_trivial(ob.monodromy),
        "s2s1_upper_bound": fr.s2s1_upper_bound,
        "verdict": fr.verdict.value,
        "certificate": fr.certificate,
        "tool_version": __version__,
        "convention_fingerprint": convention_fingerprint(),
    }


def braid_report(b: braidcover.BraidWord, max_length: int | None) -> dict:
    r = braidcover.unlink_obstruction(b, max_length)
    return {
        "n": b.n,
        "braid": str(b),
        "artin_trivial": braidcover.artin_trivial(b),
        "lift_trivial": r.lift_trivial,
        "manifold_betti": r.betti,
        "torsion": list(r.torsion),
        "homological_fixed": r.homological_fixed,
        "verdict": r.verdict.value,
        "certificate": r.witness,
        "tool_version": __version__,
        "convention_fingerprint": convention_fingerprint(),
    }


def _emit(report: dict, keys: Sequence[str], as_json: bool, out: TextIO) -> None:
    if as_json:
        json.dump(report, out, indent=2)
        out.write("\n")
        return
    for k in keys:
        v = report[k]
        if isinstance(v, list):
            v = ", ".join(map(str, v)) or "none"
        out.write(f"{k}: {v}\n")


# --- commands -----------------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from exc


def _load(path: str, max_length: int) -> OpenBook:
    try:
        return parse_open_book(_read(path), max_length)
    except ParseError as exc:
        raise ParseError(exc.line, exc.col, exc.msg, path) from exc
    except InvalidInput as exc:
        raise InvalidInput(f"{path}: {exc}") from exc


def cmd_invariants(args) -> int:
    rep = open_book_report(_load(args.file, args.max_word_length))
    _emit(rep, ["page_betti", "manifold_betti", "torsion", "literal_fixed_dim", "readings_differ", "trivial"],
          args.json, sys.stdout)
    return EXIT_OK


def cmd_s2s1(args) -> int:
    rep = open_book_report(_load(args.file, args.max_word_length))
    _emit(rep, ["page_betti", "manifold_betti", "s2s1_upper_bound", "verdict", "certificate"], args.json, sys.stdout)
    return EXIT_OK


def cmd_trivial(args) -> int:
    rep = open_book_report(_load(args.file, args.max_word_length))
    _emit(rep, ["trivial", "certificate"], args.json, sys.stdout)
    return EXIT_OK


def cmd_braid(args) -> int:
    try:
        b = braidcover.parse_braid(args.word, args.n)
    except braidcover.BraidError as exc:
        raise ParseError(1, 1, f"braid: {exc}") from exc
    if args.action == "lift":
        cover = braidcover.lift_to_cover(b, args.max_word_length)
        sys.stdout.write(format_open_book(cover.open_book))
        return EXIT_OK
    _emit(braid_report(b, args.max_word_length),
          ["n", "artin_trivial", "lift_trivial", "manifold_betti", "torsion", "verdict", "certificate"],
          args.json, sys.stdout)
    return EXIT_OK


def _attach_pair(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    m = re.fullmatch(r"(\d+),(\d+)", text)
    if not m:
        raise InvalidInput(f"attachment must look like 1,2, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def cmd_transform(args) -> int:
    ob = _load(args.file, args.max_word_length)
    if args.kind == "plumb":
        if args.sign not in ("+1", "1", "-1", "+", "-"):
            raise InvalidInput(f"sign must be +1 or -1, got {args.sign!r}")
        sign = -1 if args.sign.startswith("-") else 1
        try:
            new = openbook.hopf_plumb(ob, _attach_pair(args.attach), sign)
        except openbook.PlumbingError as exc:
            raise InvalidInput(str(exc)) from exc
    else:
        new = openbook.boundary_connected_sum(ob, _load(args.other, args.max_word_length))
    sys.stdout.write(format_open_book(new))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--max-word-length", type=int, default=DEFAULT_MAX_WORD_LENGTH,
                        help="abort when a word grows beyond this many letters")

    p = argparse.ArgumentParser(prog="obtool", description="Exact invariants of abstract open books.")
    p.add_argument("--version", action="version", version=f"obtool {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, help_ in [
        ("invariants", cmd_invariants, "H_1 of the manifold and both readings of its Betti number"),
        ("s2s1", cmd_s2s1, "does the manifold have b_1(page) copies of S^2 x S^1?"),
        ("trivial", cmd_trivial, "is the monodromy trivial rel boundary?"),
    ]:
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("file", help="open book file, or - for stdin")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("braid", parents=[common], help="double branched covers of braid closures")
    sp.add_argument("action", choices=["lift", "check"])
    sp.add_argument("-n", type=int, required=True, help="number of strands")
    sp.add_argument("-w", "--word", default="", help='braid word such as "s1 s2^-1"')
    sp.set_defaults(func=cmd_braid)

    sp = sub.add_parser("transform", parents=[common], help="plumb a Hopf band or take a boundary connected sum")
    tsub = sp.add_subparsers(dest="kind", required=True)
    pl = tsub.add_parser("plumb", parents=[common])
    pl.add_argument("file")
    pl.add_argument("attach", nargs="?", help="boundary components joined by the band, e.g. 1,2")
    pl.add_argument("sign", nargs="?", default="+1")
    cs = tsub.add_parser("consum", parents=[common])
    cs.add_argument("file")
    cs.add_argument("other")
    sp.set_defaults(func=cmd_transform)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"obtool: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidInput, surf.CurveError, words.WordLengthExceeded) as exc:
        print(f"obtool: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
