"""Braids, their lifts to the double branched cover, and the unlink test.

The double cover of the disk branched at n points is the surface of genus
``(n-1)//2`` with one (n odd) or two (n even) boundary components.  The
half twist sigma_i lifts to a Dehn twist about the chain curve c_i, so the
closure of a braid has the open book (cover, lift) as its double branched
cover.  The n-component unlink has cover #^(n-1) S^2 x S^1, which forces the
lift, and hence the braid, to be trivial.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable

from . import intmat, mapclass, words
from .homology import manifold_invariants
from .intmat import Matrix
from .mapclass import MappingClass
from .openbook import OpenBook
from .surface import Surface, new_surface

# A positive half twist lifts to a positive Dehn twist.
LIFT_SIGN = 1

# How burau_minus_one matches the abelianized lift: the lift's action matrix
# is P B^T P^-1, where B is the Burau matrix and the columns of P are the
# chain curve classes with signs (+, +, -, +, -, +, ...).  Pinned by
# tests/fixtures/burau_convention.json.
BURAU_CONVENTION = "transpose"


class BraidError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple[int, ...]  # +i for sigma_i, -i for its inverse

    def __post_init__(self):
        if self.n < 2:
            raise BraidError("a braid needs at least two strands")
        for a in self.letters:
            if a == 0 or abs(a) >= self.n:
                raise BraidError(f"generator s{abs(a)} out of range for {self.n} strands")

    def __str__(self) -> str:
        return " ".join(f"s{a}" if a > 0 else f"s{-a}^-1" for a in self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.n != other.n:
            raise BraidError("strand counts differ")
        return BraidWord(self.n, self.letters + other.letters)

    @property
    def exponent_sum(self) -> int:
        return sum(1 if a > 0 else -1 for a in self.letters)


_TOKEN = re.compile(r"s(\d+)(\^-1|\^\+?1)?")


def parse_braid(text: str, n: int) -> BraidWord:
    letters = []
    for col, tok in _tokens(text):
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise BraidError(f"column {col}: bad braid token {tok!r}")
        i = int(m.group(1))
        if not 1 <= i < n:
            raise BraidError(f"column {col}: generator s{i} out of range for {n} strands")
        letters.append(-i if m.group(2) == "^-1" else i)
    return BraidWord(n, tuple(letters))


def _tokens(text: str) -> Iterable[tuple[int, str]]:
    for m in re.finditer(r"\S+", text):
        yield m.start() + 1, m.group()


def all_words(n: int, max_length: int) -> Iterable[BraidWord]:
    """Every braid word on n strands up to the given length (unreduced)."""
    gens = [s for i in range(1, n) for s in (i, -i)]
    layer: list[tuple[int, ...]] = [()]
    yield BraidWord(n, ())
    for _ in range(max_length):
        layer = [w + (a,) for w in layer for a in gens]
        for w in layer:
            yield BraidWord(n, w)


# --- Artin action ------------------------------------------------------------


def _artin_generator(n: int, a: int) -> tuple[tuple[int, ...], ...]:
    i = abs(a)
    images = [(k,) for k in range(1, n + 1)]
    if a > 0:
        images[i - 1] = (i, i + 1, -i)
        images[i] = (i,)
    else:
        images[i - 1] = (i + 1,)
        images[i] = (-(i + 1), i, i + 1)
    return tuple(images)


def artin_action(b: BraidWord) -> tuple[tuple[int, ...], ...]:
    """Images of x1..xn under the braid, letters acting left to right on the
    word as automorphisms composed in word order."""
    images = tuple((k,) for k in range(1, b.n + 1))
    for a in b.letters:
        gen = _artin_generator(b.n, a)
        images = tuple(words.substitute(w, images) for w in gen)
    return images


def artin_trivial(b: BraidWord) -> bool:
    return all(w == (k,) for k, w in enumerate(artin_action(b), start=1))


# --- lift to the double branched cover -----------------------------------------


def cover_surface(n: int) -> Surface:
    if n < 2:
        raise BraidError("a braid needs at least two strands")
    return new_surface((n - 1) // 2, 1 if n % 2 else 2)


@dataclass(frozen=True)
class CoverData:
    braid: BraidWord
    surface: Surface
    chain: tuple[str, ...]
    monodromy: MappingClass

    @property
    def open_book(self) -> OpenBook:
        return OpenBook(self.surface, self.monodromy, f"double cover of closure of {str(self.braid) or 'empty braid'}")


def lift_to_cover(b: BraidWord, max_length: int | None = None) -> CoverData:
    s = cover_surface(b.n)
    chain = tuple(f"c{i}" for i in range(1, b.n))
    letters = [(chain[abs(a) - 1], LIFT_SIGN * (1 if a > 0 else -1)) for a in b.letters]
    return CoverData(b, s, chain, mapclass.from_twist_word(s, letters, max_length))


# --- Burau at t = -1 ------------------------------------------------------------


def _burau_generator(n: int, a: int) -> Matrix:
    """Reduced Burau matrix of sigma_i^{+-1} at t = -1."""
    t = -1
    d = n - 1
    i = abs(a) - 1
    m = intmat.identity(d)
    if d == 1:
        m[0][0] = -t
    else:
        m[i][i] = -t
        if i > 0:
            m[i - 1][i] = t
        if i < d - 1:
            m[i + 1][i] = 1
    if a < 0:
        # at t = -1 the generator is I + N with N^2 = 0
        m = [[2 * (r == c) - m[r][c] for c in range(d)] for r in range(d)]
    return m


def burau_minus_one(b: BraidWord) -> Matrix:
    out = intmat.identity(b.n - 1)
    for a in b.letters:
        out = intmat.matmul(out, _burau_generator(b.n, a))
    return out


def burau_for_comparison(b: BraidWord) -> Matrix:
    """Product of the transposed generator matrices in word order, which is
    the transpose of the Burau matrix of the reversed word."""
    return intmat.transpose(burau_minus_one(BraidWord(b.n, b.letters[::-1])))


def chain_basis(n: int) -> Matrix:
    """The matrix P whose columns are the signed chain curve classes."""
    s = cover_surface(n)
    cols = []
    for k in range(1, n):
        sign = -1 if k >= 3 and k % 2 else 1
        cols.append([sign * v for v in s.homology_class(s.curve(f"c{k}"))])
    return intmat.transpose(cols)


def burau_intertwines(b: BraidWord, action: Matrix) -> bool:
    """Exact check ``action P == P B^T`` for the pinned convention."""
    P = chain_basis(b.n)
    return intmat.matmul(action, P) == intmat.matmul(P, burau_for_comparison(b))


# --- unlink obstruction ------------------------------------------------------------


class UnlinkVerdict(str, enum.Enum):
    CLOSURE_MAY_BE_UNLINK = "CLOSURE_MAY_BE_UNLINK"
    CLOSURE_NOT_UNLINK = "CLOSURE_NOT_UNLINK"


@dataclass(frozen=True)
class UnlinkReport:
    n: int
    lift_trivial: bool
    betti: int
    torsion: tuple[int, ...]
    homological_fixed: bool  # betti equals n - 1
    verdict: UnlinkVerdict
    witness: str

    @property
    def homological_gap(self) -> bool:
        return not self.homological_fixed


def unlink_obstruction(b: BraidWord, max_length: int | None = None) -> UnlinkReport:
    """Can the closure of ``b`` be the n-component unlink?

    Only the trivial braid can: a nontrivial lift means the cover is not
    #^(n-1) S^2 x S^1.
    """
    cover = lift_to_cover(b, max_length)
    inv = manifold_invariants(cover.monodromy)
    trivial = mapclass.is_trivial(cover.monodromy)
    fixed = inv.betti == b.n - 1
    if trivial:
        verdict, witness = UnlinkVerdict.CLOSURE_MAY_BE_UNLINK, "braid is trivial"
    else:
        verdict = UnlinkVerdict.CLOSURE_NOT_UNLINK
        lifted = mapclass.nontriviality_witness(cover.monodromy)
        if fixed:
            witness = f"homology blind; lift moves {lifted}"
        else:
            witness = f"b1(cover)={inv.betti} < {b.n - 1}; lift moves {lifted}"
    return UnlinkReport(b.n, trivial, inv.betti, inv.torsion, fixed, verdict, witness)
