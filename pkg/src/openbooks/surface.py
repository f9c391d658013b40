"""Combinatorial compact oriented surfaces with nonempty boundary.

A surface is modelled as a disk with orientable bands attached along its
boundary circle.  The circle is read counterclockwise starting at the
basepoint ``*``; each band contributes two feet (an ``A`` foot and a ``B``
foot).  The fundamental group at ``*`` is free on the bands: generator ``k``
runs along a chord from ``*`` to the A foot of band ``k``, through the band,
and back from the B foot to ``*``.

Positions on the circle are exact rationals.  Foot ``f`` occupies
``[2f+1, 2f+2]``, the gap after it is ``(2f+2, 2f+3)``, and the last gap wraps
around through the basepoint at ``0``.  A strand entering a foot at offset
``t`` leaves the partner foot at offset ``1 - t`` (bands are untwisted).

Simple closed curves are stored concretely as cyclic lists of strands joined
by chords of the disk.  This is enough to compute Dehn twists exactly (see
:mod:`openbooks.mapclass`).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import words
from .words import Word

HALF = Fraction(1, 2)
PUSH_OFF = Fraction(1, 8)
_OFFSET_GRIDS = (
    (Fraction(1, 4), Fraction(3, 4)),
    tuple(Fraction(k, 8) for k in (1, 3, 5, 7)),
    tuple(Fraction(k, 16) for k in (1, 3, 5, 7, 9, 11, 13, 15)),
)


class SurfaceError(ValueError):
    pass


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class Strand:
    band: int          # 1-based band index
    direction: int     # +1: A -> B, -1: B -> A
    offset: Fraction   # entry offset inside the entry foot

    @property
    def letter(self) -> int:
        return self.band * self.direction


@dataclass(frozen=True)
class Curve:
    name: str
    strands: tuple[Strand, ...]

    @property
    def word(self) -> Word:
        return tuple(s.letter for s in self.strands)

    def renamed(self, name: str) -> "Curve":
        return Curve(name, self.strands)


def _in_arc(x: Fraction, p: Fraction, q: Fraction, length: int) -> bool:
    """True if ``x`` lies in the open counterclockwise arc from ``p`` to ``q``."""
    dx = (x - p) % length
    return 0 < dx < (q - p) % length


def chords_cross(c1: tuple[Fraction, Fraction], c2: tuple[Fraction, Fraction], length: int) -> bool:
    p, q = c1
    r, s = c2
    return _in_arc(r, p, q, length) != _in_arc(s, p, q, length)


@dataclass(frozen=True)
class Surface:
    """Disk-with-bands model of a compact connected oriented surface.

    ``layout`` lists the feet counterclockwise from the basepoint as pairs
    ``(band, end)`` with ``end`` 0 for the A foot and 1 for the B foot.
    """

    generators: tuple[str, ...]
    layout: tuple[tuple[int, int], ...]
    library: tuple[Curve, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        m = len(self.generators)
        if len(set(self.generators)) != m:
            raise SurfaceError("generator names must be distinct")
        if sorted(self.layout) != sorted((k, e) for k in range(1, m + 1) for e in (0, 1)):
            raise SurfaceError("layout must contain each band's A and B foot exactly once")
        if (1 + m - self.boundary_count) % 2:
            raise SurfaceError("inconsistent layout")

    # --- basic invariants -------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def boundary_count(self) -> int:
        return len(self.components)

    @property
    def genus(self) -> int:
        return (1 + self.rank - self.boundary_count) // 2

    @property
    def euler_characteristic(self) -> int:
        return 1 - self.rank

    @property
    def circle_length(self) -> int:
        return 2 * len(self.layout) + 1

    @functools.cached_property
    def foot_of(self) -> dict[tuple[int, int], int]:
        return {fe: i for i, fe in enumerate(self.layout)}

    def partner(self, foot: int) -> int:
        band, end = self.layout[foot]
        return self.foot_of[(band, 1 - end)]

    def position(self, foot: int, offset: Fraction) -> Fraction:
        return Fraction(2 * foot + 1) + offset

    def gap_point(self, gap: int) -> Fraction:
        """Midpoint of the gap after foot ``gap``; the last gap holds ``*``."""
        if gap == len(self.layout) - 1 or not self.layout:
            return Fraction(0)
        return Fraction(4 * gap + 5, 2)

    # --- boundary ---------------------------------------------------------

    def _walk(self, gap: int) -> tuple[int, int]:
        """One step of the counterclockwise boundary walk: (next gap, letter)."""
        nfeet = len(self.layout)
        foot = (gap + 1) % nfeet
        band, end = self.layout[foot]
        letter = band if end == 0 else -band
        return self.partner(foot), letter

    @functools.cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Boundary components as cycles of gap indices.

        Component 1 contains the basepoint gap; the others are ordered by the
        first gap met counterclockwise from ``*``.
        """
        nfeet = len(self.layout)
        if nfeet == 0:
            return ((0,),)
        star = nfeet - 1
        seen: set[int] = set()
        cycles = []
        for start in [star] + list(range(nfeet - 1)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            g, _ = self._walk(start)
            while g != start:
                cyc.append(g)
                seen.add(g)
                g, _ = self._walk(g)
            cycles.append(tuple(cyc))
        return tuple(cycles)

    def component_of_gap(self, gap: int) -> int:
        for j, cyc in enumerate(self.components, start=1):
            if gap in cyc:
                return j
        raise SurfaceError(f"no gap {gap}")

    def first_gap(self, j: int) -> int:
        """Gap holding the reference point of component ``j`` (1-based)."""
        self._check_component(j)
        if j == 1:
            return max(len(self.layout) - 1, 0)
        return min(self.components[j - 1])

    def reference_point(self, j: int) -> Fraction:
        return self.gap_point(self.first_gap(j))

    def boundary_walk(self, start_gap: int, stop_gap: int) -> Word:
        """Letters crossed walking counterclockwise along the boundary."""
        letters = []
        g = start_gap
        while g != stop_gap:
            g, a = self._walk(g)
            letters.append(a)
            if len(letters) > 2 * len(self.layout):
                raise SurfaceError("gaps lie on different boundary components")
        return words.reduce(letters)

    def boundary_word(self, j: int) -> Word:
        """The loop delta_j: along the reference arc to component j, once
        around it with the induced orientation, and back."""
        self._check_component(j)
        if not self.layout:
            return words.EMPTY
        g0 = self.first_gap(j)
        letters = []
        g, a = self._walk(g0)
        letters.append(a)
        while g != g0:
            g, a = self._walk(g)
            letters.append(a)
        return words.reduce(letters)

    def _check_component(self, j: int) -> None:
        if not 1 <= j <= self.boundary_count:
            raise SurfaceError(f"boundary component {j} out of range 1..{self.boundary_count}")

    # --- homology ---------------------------------------------------------

    def abelianize(self, w: Sequence[int]) -> list[int]:
        return words.abelianize(w, self.rank)

    @functools.cached_property
    def intersection_form(self) -> tuple[tuple[int, ...], ...]:
        """Algebraic intersection numbers of the band core curves."""
        m = self.rank
        L = self.circle_length
        ends = {}
        for k in range(1, m + 1):
            ends[k] = (self.position(self.foot_of[(k, 0)], HALF), self.position(self.foot_of[(k, 1)], HALF))
        rows = []
        for k in range(1, m + 1):
            ak, bk = ends[k]
            row = []
            for l in range(1, m + 1):
                al, bl = ends[l]
                if k == l or not chords_cross((ak, bk), (al, bl), L):
                    row.append(0)
                else:
                    row.append(1 if _in_arc(al, ak, bk, L) else -1)
            rows.append(tuple(row))
        return tuple(rows)

    def pairing(self, u: Sequence[int], v: Sequence[int]) -> int:
        om = self.intersection_form
        return sum(u[i] * om[i][j] * v[j] for i in range(self.rank) for j in range(self.rank) if om[i][j])

    # --- curves -----------------------------------------------------------

    @functools.cached_property
    def curves(self) -> dict[str, Curve]:
        return {c.name: c for c in self.library}

    def curve(self, name: str) -> Curve:
        try:
            return self.curves[name]
        except KeyError:
            raise CurveError(f"no curve named {name!r} on this surface") from None

    def strand_ends(self, s: Strand) -> tuple[Fraction, Fraction]:
        """Entry and exit positions of a strand."""
        fa, fb = self.foot_of[(s.band, 0)], self.foot_of[(s.band, 1)]
        f_in, f_out = (fa, fb) if s.direction > 0 else (fb, fa)
        return self.position(f_in, s.offset), self.position(f_out, 1 - s.offset)

    def curve_chords(self, c: Curve) -> list[tuple[Fraction, Fraction]]:
        """Chord i runs from the exit of strand i to the entry of strand i+1."""
        ends = [self.strand_ends(s) for s in c.strands]
        n = len(ends)
        return [(ends[i][1], ends[(i + 1) % n][0]) for i in range(n)]

    def curve_problems(self, c: Curve) -> list[str]:
        """Reasons why ``c`` is not a simple closed curve in this model."""
        problems = []
        used: dict[int, list[Fraction]] = {}
        for s in c.strands:
            if not 1 <= s.band <= self.rank or s.direction not in (1, -1):
                return [f"bad strand {s}"]
            if not 0 < s.offset < 1 or s.offset == HALF:
                problems.append(f"offset {s.offset} of band {s.band} must lie in (0,1) and differ from 1/2")
            fa, fb = self.foot_of[(s.band, 0)], self.foot_of[(s.band, 1)]
            f_in, f_out = (fa, fb) if s.direction > 0 else (fb, fa)
            used.setdefault(f_in, []).append(s.offset)
            used.setdefault(f_out, []).append(1 - s.offset)
        for f, offs in used.items():
            if len(set(offs)) != len(offs):
                problems.append(f"two strands share a position in foot {f}")
        if not c.strands:
            problems.append("empty curve")
            return problems
        chords = self.curve_chords(c)
        L = self.circle_length
        for (i, c1), (j, c2) in itertools.combinations(enumerate(chords), 2):
            if chords_cross(c1, c2, L):
                problems.append(f"chords {i} and {j} cross")
        return problems

    def homology_class(self, c: Curve) -> list[int]:
        return self.abelianize(c.word)

    def realize(self, name: str, word: Sequence[int]) -> Curve:
        """Find offsets making the cyclic band word ``word`` a simple curve."""
        word = tuple(word)
        if not word:
            raise CurveError("empty band word")
        for grid in _OFFSET_GRIDS:
            for offs in itertools.product(grid, repeat=len(word)):
                c = Curve(name, tuple(Strand(abs(a), 1 if a > 0 else -1, t) for a, t in zip(word, offs)))
                if not self.curve_problems(c):
                    return c
        raise CurveError(f"band word {word} has no simple realization in this layout")

    def push_off(self, name: str, j: int) -> Curve:
        """A curve parallel to boundary component ``j``."""
        self._check_component(j)
        if not self.layout:
            raise CurveError("the disk has no essential boundary-parallel curve")
        g0 = self.first_gap(j)
        strands = []
        g = g0
        while True:
            foot = (g + 1) % len(self.layout)
            band, end = self.layout[foot]
            strands.append(Strand(band, 1 if end == 0 else -1, PUSH_OFF))
            g = self.partner(foot)
            if g == g0:
                break
        return Curve(name, tuple(strands))

    def disjoint(self, c: Curve, d: Curve) -> bool:
        """True when ``c`` and ``d`` have disjoint realizations of a simple kind.

        In every band used by both curves, the strands of one curve are
        squeezed to one side of the other's; each choice of sides is tried.
        A True answer is a certificate, False only means none was found (or
        the homology pairing already forbids it).
        """
        if self.pairing(self.homology_class(c), self.homology_class(d)):
            return False
        shared = sorted({st.band for st in c.strands} & {st.band for st in d.strands})
        L = self.circle_length
        for sides in itertools.product((0, 1), repeat=len(shared)):
            side = dict(zip(shared, sides))
            c2 = _squeeze(c, side, 0)
            d2 = _squeeze(d, side, 1)
            if self.curve_problems(c2) or self.curve_problems(d2):
                continue
            if not any(chords_cross(x, y, L) for x in self.curve_chords(c2) for y in self.curve_chords(d2)):
                return True
        return False

    def with_library(self, curves: Iterable[Curve]) -> "Surface":
        return Surface(self.generators, self.layout, tuple(curves))

    def describe(self) -> str:
        return f"Sigma_{{{self.genus},{self.boundary_count}}}"


def _squeeze(c: Curve, side: dict[int, int], which: int) -> Curve:
    """Move the strands of ``c`` in the given bands into half of the foot.

    ``side[band] == which`` puts them in the first half of the A foot (and so
    the second half of the B foot), otherwise in the other halves.
    """
    out = []
    for st in c.strands:
        if st.band not in side:
            out.append(st)
            continue
        t = st.offset if st.direction > 0 else 1 - st.offset  # offset in the A foot
        t = t / 2 if side[st.band] == which else (1 + t) / 2
        out.append(Strand(st.band, st.direction, t if st.direction > 0 else 1 - t))
    return Curve(c.name, tuple(out))


def standard_names(g: int, b: int) -> tuple[str, ...]:
    names = []
    for i in range(1, g + 1):
        names += [f"x{i}", f"y{i}"]
    names += [f"z{j}" for j in range(1, b)]
    return tuple(names)


def standard_layout(g: int, b: int) -> tuple[tuple[int, int], ...]:
    layout = []
    for i in range(g):
        x, y = 2 * i + 1, 2 * i + 2
        layout += [(x, 0), (y, 1), (x, 1), (y, 0)]
    for j in range(b - 1):
        z = 2 * g + j + 1
        layout += [(z, 0), (z, 1)]
    return tuple(layout)


def _standard_library(s: Surface, g: int, b: int) -> list[Curve]:
    idx = {n: i + 1 for i, n in enumerate(s.generators)}
    lib: list[Curve] = []
    for i in range(1, g + 1):
        lib.append(s.realize(f"a{i}", (idx[f"x{i}"],)))
        lib.append(s.realize(f"b{i}", (idx[f"y{i}"],)))
    # c_{2i+1} runs over x_i and x_{i+1} (z1 after the last handle); the
    # detour around y_i keeps it off c_{2i-1}.
    chain: list[tuple[int, ...]] = []
    for i in range(1, g + 1):
        if i == 1:
            chain.append((idx["x1"],))
        else:
            chain.append((idx[f"x{i-1}"], -idx[f"y{i-1}"], -idx[f"x{i}"], idx[f"y{i-1}"]))
        chain.append((idx[f"y{i}"],))
    if b >= 2:
        chain.append((idx[f"x{g}"], -idx[f"y{g}"], -idx["z1"], idx[f"y{g}"]) if g else (idx["z1"],))
    for k, w in enumerate(chain, start=1):
        lib.append(s.realize(f"c{k}", w))
    if s.layout:
        for j in range(1, b + 1):
            lib.append(s.push_off(f"bd{j}", j))
    if (g, b) == (0, 2):
        lib.append(s.realize("core", (idx["z1"],)))
    for j in range(2, b):
        if g:
            lib.append(s.realize(f"s{j}", (idx[f"x{g}"], idx[f"z{j}"])))
    for j in range(1, b - 1):
        lib.append(s.realize(f"t{j}", (idx[f"z{j}"], idx[f"z{j+1}"])))
    return lib


@functools.lru_cache(maxsize=None)
def new_surface(g: int, b: int) -> Surface:
    """The standard surface of genus ``g`` with ``b`` boundary components.

    Generators are x1, y1, ..., xg, yg, z1, ..., z(b-1); the boundary loop at
    the basepoint is ``[x1,y1]...[xg,yg] z1...z(b-1)`` and the loop around
    component ``j+1`` is ``zj^-1``.
    """
    if not isinstance(g, int) or not isinstance(b, int):
        raise SurfaceError("genus and boundary count must be integers")
    if g < 0:
        raise SurfaceError("genus must be non-negative")
    if b < 1:
        raise SurfaceError("an open book page needs at least one boundary component")
    bare = Surface(standard_names(g, b), standard_layout(g, b))
    return bare.with_library(_standard_library(bare, g, b))


def standardize(s: Surface) -> tuple[Surface, tuple[int, ...]] | None:
    """Recognize a layout that is standard up to renaming and flipping bands.

    Returns the standard surface and a letter map: old band ``k`` becomes the
    letter ``sub[k-1]`` (a signed new band index).  ``None`` if the layout is
    not of standard shape.
    """
    lay = s.layout
    n = len(lay)
    i = 0
    handles: list[tuple[int, int, int, int]] = []  # (x band, x flip, y band, y flip)
    zs: list[tuple[int, int]] = []
    while i < n:
        b0 = lay[i][0]
        if i + 1 < n and lay[i + 1][0] == b0:
            zs.append((b0, 1 if lay[i][1] == 0 else -1))
            i += 2
            continue
        if zs or i + 3 >= n:
            return None
        b1 = lay[i + 1][0]
        if lay[i + 2][0] != b0 or lay[i + 3][0] != b1 or b0 == b1:
            return None
        xflip = 1 if lay[i][1] == 0 else -1
        yflip = 1 if lay[i + 1][1] == 1 else -1
        handles.append((b0, xflip, b1, yflip))
        i += 4
    g, b = len(handles), len(zs) + 1
    sub = [0] * s.rank
    for h, (xb, xf, yb, yf) in enumerate(handles):
        sub[xb - 1] = xf * (2 * h + 1)
        sub[yb - 1] = yf * (2 * h + 2)
    for j, (zb, zf) in enumerate(zs):
        sub[zb - 1] = zf * (2 * g + j + 1)
    return new_surface(g, b), tuple(sub)


def relabel_curve(c: Curve, sub: Sequence[int], name: str | None = None) -> Curve:
    strands = []
    for st in c.strands:
        new = sub[st.band - 1]
        strands.append(Strand(abs(new), st.direction * (1 if new > 0 else -1), st.offset))
    return Curve(c.name if name is None else name, tuple(strands))


def match_library(s: Surface, c: Curve) -> str | None:
    """Name of a library curve freely homotopic (unoriented) to ``c``."""
    key = words.cyclic_normal_form(c.word)
    for lc in s.library:
        if words.cyclic_normal_form(lc.word) == key:
            return lc.name
    return None
