"""Words in a free group.

A word is a tuple of nonzero integers: ``k`` stands for the k-th generator
(1-based) and ``-k`` for its inverse.  Every function here returns freely
reduced words.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Word = tuple[int, ...]

EMPTY: Word = ()


class WordLengthExceeded(RuntimeError):
    """Raised when a computation would produce a word longer than its budget."""

    def __init__(self, length: int, budget: int):
        super().__init__(f"word of length {length} exceeds budget {budget}")
        self.length = length
        self.budget = budget


def reduce(letters: Iterable[int]) -> Word:
    """Freely reduce a sequence of letters."""
    out: list[int] = []
    for a in letters:
        if a == 0:
            raise ValueError("0 is not a generator letter")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def inverse(w: Sequence[int]) -> Word:
    return tuple(-a for a in reversed(w))


def mul(*words: Sequence[int]) -> Word:
    out: list[int] = []
    for w in words:
        for a in w:
            if out and out[-1] == -a:
                out.pop()
            else:
                out.append(a)
    return tuple(out)


def power(w: Sequence[int], n: int) -> Word:
    base = reduce(w) if n >= 0 else inverse(reduce(w))
    return mul(*([base] * abs(n)))


def conjugate(w: Sequence[int], by: Sequence[int]) -> Word:
    """Return ``by * w * by^-1``."""
    return mul(by, w, inverse(by))


def substitute(w: Sequence[int], images: Sequence[Word], budget: int | None = None) -> Word:
    """Apply the endomorphism sending generator k to ``images[k-1]``."""
    out: list[int] = []
    for a in w:
        img = images[a - 1] if a > 0 else inverse(images[-a - 1])
        for b in img:
            if out and out[-1] == -b:
                out.pop()
            else:
                out.append(b)
        if budget is not None and len(out) > budget:
            raise WordLengthExceeded(len(out), budget)
    return tuple(out)


def cyclic_reduce(w: Sequence[int]) -> Word:
    w = reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def cyclic_normal_form(w: Sequence[int]) -> Word:
    """Canonical representative of the conjugacy class of ``w`` or ``w^-1``.

    Used to compare unoriented free homotopy classes of closed curves.
    """
    w = cyclic_reduce(w)
    if not w:
        return w
    candidates = []
    for v in (w, inverse(w)):
        candidates.extend(v[i:] + v[:i] for i in range(len(v)))
    return min(candidates)


def is_conjugate(u: Sequence[int], v: Sequence[int]) -> bool:
    a, b = cyclic_reduce(u), cyclic_reduce(v)
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = a + a
    return any(doubled[i:i + len(b)] == b for i in range(len(a)))


def abelianize(w: Sequence[int], rank: int) -> list[int]:
    vec = [0] * rank
    for a in w:
        if abs(a) > rank:
            raise ValueError(f"letter {a} outside a free group of rank {rank}")
        vec[abs(a) - 1] += 1 if a > 0 else -1
    return vec


def format_word(w: Sequence[int], names: Sequence[str]) -> str:
    if not w:
        return "1"
    return " ".join(names[a - 1] if a > 0 else names[-a - 1] + "^-1" for a in w)


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse tokens like ``x1 y1^-1`` (``1`` or empty means the identity)."""
    index = {n: i + 1 for i, n in enumerate(names)}
    letters: list[int] = []
    for tok in text.split():
        if tok == "1":
            continue
        name, _, exp = tok.partition("^")
        if name not in index:
            raise ValueError(f"unknown generator {name!r}")
        e = int(exp) if exp else 1
        letters.extend([index[name] if e > 0 else -index[name]] * abs(e))
    return reduce(letters)
