"""Mapping classes of a surface relative to its boundary.

A mapping class is stored as the automorphism it induces on the free group
``pi_1(S, *)`` (basepoint on boundary component 1) together with one defect
word per further boundary component: ``u_j = phi(h_j) h_j^-1`` where ``h_j``
is the reference arc from ``*`` to component ``j``.  The pair is a complete
invariant: it is trivial exactly when the monodromy is isotopic to the
identity rel boundary.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import freegroup, words
from .surface import HALF, Curve, CurveError, Surface, chords_cross, _in_arc
from .words import Word

# Sign of the transvection induced by a positive twist:
#   tau_c(v) = v + TRANSVECTION_SIGN * <c, v> * c
# with <,> the band intersection form of the surface.  Pinned by the
# validation suite.
TRANSVECTION_SIGN = -1


class SurfaceMismatch(ValueError):
    pass


TwistLetter = tuple[str, int]


@dataclass(frozen=True)
class MappingClass:
    surface: Surface
    auto: tuple[Word, ...]
    defects: tuple[Word, ...]
    twist_word: tuple[TwistLetter, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.auto) != self.surface.rank:
            raise ValueError("one image per generator is required")
        if len(self.defects) != self.surface.boundary_count - 1:
            raise ValueError("one defect word per boundary component after the first is required")

    def __mul__(self, other: "MappingClass") -> "MappingClass":
        return compose(self, other)

    def __pow__(self, n: int) -> "MappingClass":
        return power(self, n)

    @property
    def word_length(self) -> int:
        return sum(map(len, self.auto)) + sum(map(len, self.defects))

    def describe(self) -> str:
        names = self.surface.generators
        parts = [f"{n} -> {words.format_word(w, names)}" for n, w in zip(names, self.auto)]
        parts += [f"u{j} = {words.format_word(u, names)}" for j, u in enumerate(self.defects, start=2)]
        return "; ".join(parts)


def identity(s: Surface) -> MappingClass:
    return MappingClass(s, tuple((k,) for k in range(1, s.rank + 1)), ((),) * (s.boundary_count - 1))


# --- Dehn twists ---------------------------------------------------------


def _crossing_insertions(s: Surface, curve: Curve, sign: int, p: Fraction, q: Fraction) -> Word:
    """Loops inserted, in order, where the directed chord p->q meets the curve.

    A positive twist turns left onto the curve at each crossing.
    """
    L = s.circle_length
    chords = s.curve_chords(curve)
    word = curve.word
    n = len(word)
    hits = []
    for i, (r, t) in enumerate(chords):
        if not chords_cross((p, q), (r, t), L):
            continue
        right_end = r if _in_arc(r, p, q, L) else t
        left_turn = not _in_arc(t, p, q, L)
        loop = word[i + 1:] + word[:i + 1]
        e = sign if left_turn else -sign
        hits.append(((right_end - p) % L, loop if e > 0 else words.inverse(loop)))
    hits.sort(key=lambda h: h[0])
    return words.mul(*(h[1] for h in hits))


@functools.lru_cache(maxsize=4096)
def _twist_data(s: Surface, curve: Curve, sign: int) -> tuple[tuple[Word, ...], tuple[Word, ...]]:
    star = Fraction(0)
    auto = []
    for k in range(1, s.rank + 1):
        a = s.position(s.foot_of[(k, 0)], HALF)
        b = s.position(s.foot_of[(k, 1)], HALF)
        auto.append(words.mul(
            _crossing_insertions(s, curve, sign, star, a),
            (k,),
            _crossing_insertions(s, curve, sign, b, star),
        ))
    defects = tuple(
        _crossing_insertions(s, curve, sign, star, s.reference_point(j))
        for j in range(2, s.boundary_count + 1)
    )
    return tuple(auto), defects


def twist_along(s: Surface, curve: Curve, sign: int = 1, name: str | None = None) -> MappingClass:
    """Dehn twist about a concretely given simple closed curve."""
    if sign not in (1, -1):
        raise ValueError("twist sign must be +1 or -1")
    problems = s.curve_problems(curve)
    if problems:
        raise CurveError(f"curve {curve.name!r} is not simple: {problems[0]}")
    auto, defects = _twist_data(s, curve, sign)
    return MappingClass(s, auto, defects, ((name or curve.name, sign),))


def twist(s: Surface, name: str, sign: int = 1) -> MappingClass:
    """Dehn twist about the library curve ``name``."""
    return twist_along(s, s.curve(name), sign, name)


def from_twist_word(s: Surface, letters: Iterable[TwistLetter], max_length: int | None = None) -> MappingClass:
    """The composite ``tau_1 o tau_2 o ... o tau_k`` of a twist word."""
    letters = list(letters)
    f = identity(s)
    for name, sign in reversed(letters):
        f = compose(twist(s, name, sign), f, max_length=max_length)
    return MappingClass(s, f.auto, f.defects, tuple(letters))


# --- group law ------------------------------------------------------------


def _check_budget(f: MappingClass, budget: int | None) -> None:
    if budget is None:
        return
    for w in f.auto + f.defects:
        if len(w) > budget:
            raise words.WordLengthExceeded(len(w), budget)


def compose(f: MappingClass, g: MappingClass, max_length: int | None = None) -> MappingClass:
    """``f o g``: apply ``g`` first."""
    if f.surface != g.surface:
        raise SurfaceMismatch("mapping classes live on different surfaces")
    auto = tuple(words.substitute(w, f.auto, max_length) for w in g.auto)
    defects = tuple(
        words.mul(words.substitute(gu, f.auto, max_length), fu) for gu, fu in zip(g.defects, f.defects)
    )
    h = MappingClass(f.surface, auto, defects, f.twist_word + g.twist_word)
    _check_budget(h, max_length)
    return h


def invert(f: MappingClass) -> MappingClass:
    inv = freegroup.invert_automorphism(f.auto)
    if inv is None:
        raise ValueError("data does not define an automorphism")
    defects = tuple(words.inverse(words.substitute(u, inv)) for u in f.defects)
    tw = tuple((n, -e) for n, e in reversed(f.twist_word))
    return MappingClass(f.surface, inv, defects, tw)


def power(f: MappingClass, n: int, max_length: int | None = None) -> MappingClass:
    base = f if n >= 0 else invert(f)
    out = identity(f.surface)
    for _ in range(abs(n)):
        out = compose(base, out, max_length)
    return out


def apply(f: MappingClass, w: Sequence[int], max_length: int | None = None) -> Word:
    for a in w:
        if not 1 <= abs(a) <= f.surface.rank:
            raise ValueError(f"letter {a} is not a generator of this surface")
    return words.substitute(w, f.auto, max_length)


def is_trivial(f: MappingClass) -> bool:
    return all(w == (k,) for k, w in enumerate(f.auto, start=1)) and not any(f.defects)


def nontriviality_witness(f: MappingClass) -> str | None:
    """First generator not fixed, else first nontrivial defect."""
    names = f.surface.generators
    for k, w in enumerate(f.auto, start=1):
        if w != (k,):
            return f"{names[k-1]} -> {words.format_word(w, names)}"
    for j, u in enumerate(f.defects, start=2):
        if u:
            return f"u{j} = {words.format_word(u, names)}"
    return None


def conjugate(f: MappingClass, g: MappingClass) -> MappingClass:
    """``g o f o g^-1``."""
    return compose(compose(g, f), invert(g))


# --- homology of a single class -------------------------------------------


def action_matrix(f: MappingClass) -> list[list[int]]:
    """Column j is the abelianized image of generator j."""
    m = f.surface.rank
    cols = [f.surface.abelianize(w) for w in f.auto]
    return [[cols[j][i] for j in range(m)] for i in range(m)]


# --- validation ------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    check: str
    detail: str


def validate(f: MappingClass, curve: Curve | None = None, sign: int = 1) -> list[Violation]:
    """Check that ``f`` is a genuine mapping class rel boundary.

    With ``curve`` given, also check the abelianized action is the
    transvection of a ``sign`` twist about it.  Returns the violated checks.
    """
    s = f.surface
    out: list[Violation] = []
    m = s.rank
    for k, w in enumerate(f.auto, start=1):
        if any(not 1 <= abs(a) <= m for a in w):
            out.append(Violation("alphabet", f"image of generator {k} uses unknown letters"))
            return out
    if freegroup.invert_automorphism(f.auto) is None:
        out.append(Violation("automorphism", "generator images do not form a basis"))
    if s.layout:
        d1 = s.boundary_word(1)
        if words.substitute(d1, f.auto) != d1:
            out.append(Violation("peripheral", "boundary loop of component 1 is not fixed"))
        for j, u in enumerate(f.defects, start=2):
            dj = s.boundary_word(j)
            if words.substitute(dj, f.auto) != words.conjugate(dj, u):
                out.append(Violation("peripheral", f"boundary loop of component {j} is not carried to its u{j}-conjugate"))
    if curve is not None:
        c = s.homology_class(curve)
        A = action_matrix(f)
        for j in range(m):
            e = [0] * m
            e[j] = 1
            coef = sign * TRANSVECTION_SIGN * s.pairing(c, e)
            expected = [e[i] + coef * c[i] for i in range(m)]
            if [A[i][j] for i in range(m)] != expected:
                out.append(Violation("transvection", f"action on generator {j+1} is not the twist transvection"))
                break
    return out
