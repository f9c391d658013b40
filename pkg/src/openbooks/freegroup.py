"""Automorphism tests for free groups via Stallings folding."""

from __future__ import annotations

from typing import Sequence

from . import words
from .words import Word


class _Graph:
    """Labelled graph whose edges carry elements of the free group on the
    images (the 'lambda' labels), so that reading lambdas along a closed path
    at the basepoint gives its class in pi_1 of the original rose."""

    def __init__(self):
        self.edges: dict[int, list] = {}  # id -> [src, label, dst, lam]
        self.next_id = 0
        self.next_vertex = 1

    def add_edge(self, src: int, label: int, dst: int, lam: Word) -> None:
        self.edges[self.next_id] = [src, label, dst, lam]
        self.next_id += 1

    def ends_at(self, v: int):
        """Yield (edge id, outward letter, other end, outward lambda)."""
        for eid, (a, lab, b, lam) in self.edges.items():
            if a == v:
                yield eid, lab, b, lam
            if b == v:
                yield eid, -lab, a, words.inverse(lam)

    def gauge(self, w: int, g: Word) -> None:
        gi = words.inverse(g)
        for e in self.edges.values():
            a, _, b, lam = e
            if a == w:
                lam = words.mul(gi, lam)
            if b == w:
                lam = words.mul(lam, g)
            e[3] = lam

    def outward(self, eid: int, v: int, letter: int) -> Word:
        a, lab, b, lam = self.edges[eid]
        if letter == lab and a == v:
            return lam
        if letter == -lab and b == v:
            return words.inverse(lam)
        raise KeyError((eid, v, letter))

    def merge_vertex(self, old: int, new: int) -> None:
        for e in self.edges.values():
            if e[0] == old:
                e[0] = new
            if e[2] == old:
                e[2] = new

    def find_fold(self):
        for v in self._vertices():
            seen = {}
            for end in self.ends_at(v):
                eid, letter = end[0], end[1]
                if letter in seen and seen[letter][0] != eid:
                    return v, seen[letter], end
                seen.setdefault(letter, end)
        return None

    def _vertices(self) -> set[int]:
        vs = {0}
        for a, _, b, _ in self.edges.values():
            vs.add(a)
            vs.add(b)
        return vs


def invert_automorphism(images: Sequence[Word]) -> tuple[Word, ...] | None:
    """Inverse of the endomorphism ``x_k -> images[k-1]`` of a free group of
    rank ``len(images)``, or ``None`` if it is not an automorphism."""
    m = len(images)
    if m == 0:
        return ()
    G = _Graph()
    for i, img in enumerate(images, start=1):
        img = words.reduce(img)
        if not img:
            return None
        prev = 0
        for pos, a in enumerate(img):
            last = pos == len(img) - 1
            nxt = 0 if last else G.next_vertex
            if not last:
                G.next_vertex += 1
            lam = (i,) if last else ()
            if a > 0:
                G.add_edge(prev, a, nxt, lam)
            else:
                G.add_edge(nxt, -a, prev, words.inverse(lam))
            prev = nxt
    while True:
        fold = G.find_fold()
        if fold is None:
            break
        v, (e1, _, w1, lam1), (e2, _, w2, lam2) = fold
        if w1 == w2:
            if e1 != e2 and lam1 != lam2:
                return None  # the fold kills a nontrivial element
            del G.edges[e2]
            continue
        # gauge one endpoint (never the basepoint) so the two edges agree
        if w2 not in (0, v):
            t, keep, g = w2, w1, words.mul(words.inverse(lam2), lam1)
        elif w1 not in (0, v):
            t, keep, g = w1, w2, words.mul(words.inverse(lam1), lam2)
        else:
            # {w1, w2} = {0, v} with v != 0
            t = v
            if w2 == v:
                keep, g = w1, words.mul(words.inverse(lam2), lam1)
            else:
                keep, g = w2, words.mul(words.inverse(lam1), lam2)
        G.gauge(t, g)
        letter = fold[1][1]
        if G.outward(e1, v, letter) != G.outward(e2, v, letter):
            raise AssertionError("gauge failed to align folded edges")
        G.merge_vertex(t, keep)
        del G.edges[e2]
    # strip hairs
    while True:
        deg: dict[int, int] = {}
        for a, _, b, _ in G.edges.values():
            deg[a] = deg.get(a, 0) + 1
            deg[b] = deg.get(b, 0) + 1
        leaves = [v for v, d in deg.items() if d == 1 and v != 0]
        if not leaves:
            break
        G.edges = {k: e for k, e in G.edges.items() if e[0] not in leaves and e[2] not in leaves}
    if G._vertices() != {0} or len(G.edges) != m:
        return None
    inv: list[Word | None] = [None] * m
    for a, lab, b, lam in G.edges.values():
        if inv[lab - 1] is not None:
            return None
        inv[lab - 1] = lam
    return tuple(inv)  # type: ignore[arg-type]


def is_automorphism(images: Sequence[Word]) -> bool:
    return invert_automorphism(images) is not None
