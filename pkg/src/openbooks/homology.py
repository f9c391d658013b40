"""Homological invariants of an open book.

``H_1(M; Z)`` is the cokernel of ``[A - I | u_2 ... u_b]`` where ``A`` is the
action of the monodromy on ``H_1(page)`` and the ``u_j`` are abelianized
defect words: the mapping torus kills ``phi(x) x^-1`` and filling binding
component ``j`` kills the loop ``phi(h_j) h_j^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import intmat
from .intmat import Matrix
from .mapclass import MappingClass, action_matrix


@dataclass(frozen=True)
class HomologyAction:
    A: tuple[tuple[int, ...], ...]
    defect_classes: tuple[tuple[int, ...], ...]

    @property
    def presentation(self) -> Matrix:
        m = len(self.A)
        a_minus_i = intmat.sub(self.A, intmat.identity(m))
        return intmat.hstack(a_minus_i, self.defect_classes)


@dataclass(frozen=True)
class ManifoldInvariants:
    betti: int
    torsion: tuple[int, ...]
    page_betti: int
    literal_fixed_dim: int

    @property
    def readings_differ(self) -> bool:
        return self.betti != self.literal_fixed_dim

    def as_pair(self) -> tuple[int, tuple[int, ...]]:
        return self.betti, self.torsion

    @property
    def elementary_divisors(self) -> tuple[int, ...]:
        """Prime powers of the torsion subgroup, sorted; additive under direct sum."""
        return elementary_divisors(self.torsion)


def elementary_divisors(factors) -> tuple[int, ...]:
    out = []
    for d in factors:
        p = 2
        while d > 1:
            if p * p > d:
                out.append(d)
                break
            q = 1
            while d % p == 0:
                d //= p
                q *= p
            if q > 1:
                out.append(q)
            p += 1
    return tuple(sorted(out))


def action_absolute(f: MappingClass) -> Matrix:
    return action_matrix(f)


def homology_action(f: MappingClass) -> HomologyAction:
    A = action_matrix(f)
    defects = tuple(tuple(f.surface.abelianize(u)) for u in f.defects)
    return HomologyAction(tuple(map(tuple, A)), defects)


def h1_presentation(f: MappingClass) -> Matrix:
    """Relation matrix whose cokernel is H_1 of the open book manifold."""
    return homology_action(f).presentation


def literal_fixed_dim(f: MappingClass) -> int:
    """Dimension of the subspace of H_1(page, boundary; Q) fixed by f.

    The intersection pairing makes the relative action the inverse transpose
    of ``A``, whose fixed space has the dimension of ``ker(A - I)``.
    """
    m = f.surface.rank
    return m - intmat.rank(intmat.sub(action_matrix(f), intmat.identity(m)))


def relative_action(f: MappingClass) -> Matrix:
    """Action on H_1(page, boundary) in the dual basis: ``A^{-T}``."""
    from .mapclass import invert

    return intmat.transpose(action_matrix(invert(f)))


def manifold_invariants(f: MappingClass) -> ManifoldInvariants:
    m = f.surface.rank
    pres = h1_presentation(f)
    if m == 0:
        betti, torsion = 0, []
    else:
        betti, torsion = intmat.cokernel(pres, m)
    return ManifoldInvariants(betti, tuple(torsion), m, literal_fixed_dim(f))
