import random

import pytest

from openbooks import mapclass
from openbooks.openbook import OpenBook
from openbooks.surface import new_surface


def random_twist_word(rng: random.Random, s, length: int):
    names = sorted(s.curves)
    return [(rng.choice(names), rng.choice((1, -1))) for _ in range(length)]


def random_open_book(rng: random.Random, max_g=2, max_b=2, max_len=6, min_len=0) -> OpenBook:
    while True:
        g, b = rng.randint(0, max_g), rng.randint(1, max_b)
        s = new_surface(g, b)
        if s.curves:
            break
    word = random_twist_word(rng, s, rng.randint(min_len, max_len))
    return OpenBook.from_word(s, word)


def random_class(rng: random.Random, s, max_len=6):
    return mapclass.from_twist_word(s, random_twist_word(rng, s, rng.randint(0, max_len)))


@pytest.fixture
def rng():
    return random.Random(20240611)
