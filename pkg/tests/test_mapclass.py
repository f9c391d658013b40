import pytest

from openbooks import mapclass as mc, words
from openbooks.surface import new_surface

from conftest import random_class, random_twist_word

SURFACES = [(1, 1), (0, 2), (0, 3), (1, 2), (2, 1)]


def test_annulus_twist_is_pure_defect():
    s = new_surface(0, 2)
    t = mc.twist(s, "core", 1)
    assert t.auto == ((1,),)
    assert t.defects == ((-1,),)  # u2 = z1^eps with eps = -1
    assert mc.power(t, 3).defects == ((-1, -1, -1),)


def test_twist_about_a_is_a_transvection():
    s = new_surface(1, 1)
    t = mc.twist(s, "a1", 1)
    A = mc.action_matrix(t)
    assert A[0][0] == 1 and A[1][0] == 0 and A[1][1] == 1
    assert abs(A[0][1]) == 1
    assert mc.validate(t, s.curve("a1"), 1) == []


def test_boundary_twist_is_conjugation():
    s = new_surface(1, 1)
    t = mc.twist(s, "bd1", 1)
    d = s.boundary_word(1)
    for k in (1, 2):
        assert t.auto[k - 1] == words.conjugate((k,), words.inverse(d))
    assert mc.apply(t, (1,)) == words.reduce(words.inverse(d) + (1,) + d)


def test_chain_relation():
    s = new_surface(1, 1)
    f = mc.from_twist_word(s, [("a1", 1), ("b1", 1)] * 6)
    assert f == mc.twist(s, "bd1", 1)
    assert mc.action_matrix(f) == [[1, 0], [0, 1]]
    assert not mc.is_trivial(f)


def test_lantern_relation():
    s = new_surface(0, 4)
    s = s.with_library(s.library + (s.realize("x13", (1, 3)),))
    lhs = mc.from_twist_word(s, [(f"bd{j}", 1) for j in range(1, 5)])
    rhs = mc.from_twist_word(s, [("t1", 1), ("x13", 1), ("t2", 1)])
    assert lhs == rhs
    assert lhs != mc.from_twist_word(s, [("t1", 1), ("t2", 1), ("x13", 1)])


@pytest.mark.parametrize("g,b", SURFACES)
def test_group_laws(rng, g, b):
    s = new_surface(g, b)
    e = mc.identity(s)
    for _ in range(15):
        f, h, k = (random_class(rng, s, 4) for _ in range(3))
        assert mc.compose(f, e) == f == mc.compose(e, f)
        assert mc.compose(mc.compose(f, h), k) == mc.compose(f, mc.compose(h, k))
        assert mc.is_trivial(mc.compose(f, mc.invert(f)))
        assert mc.is_trivial(mc.compose(mc.invert(f), f))
        assert mc.invert(mc.invert(f)) == f


@pytest.mark.parametrize("g,b", SURFACES)
def test_twist_inverse(g, b):
    s = new_surface(g, b)
    for name in s.curves:
        assert mc.invert(mc.twist(s, name, 1)) == mc.twist(s, name, -1)


@pytest.mark.parametrize("g,b", SURFACES)
def test_twist_word_matches_direct_composition(rng, g, b):
    s = new_surface(g, b)
    for _ in range(10):
        word = random_twist_word(rng, s, 5)
        direct = mc.identity(s)
        for name, e in word:
            direct = direct * mc.twist(s, name, e)
        assert mc.from_twist_word(s, word) == direct


@pytest.mark.parametrize("g,b", SURFACES)
def test_apply_is_a_homomorphism(rng, g, b):
    s = new_surface(g, b)
    f = random_class(rng, s, 5)
    for _ in range(20):
        v = tuple(rng.choice([1, -1]) * rng.randint(1, s.rank) for _ in range(4))
        w = tuple(rng.choice([1, -1]) * rng.randint(1, s.rank) for _ in range(4))
        assert mc.apply(f, v + w) == words.mul(mc.apply(f, v), mc.apply(f, w))


@pytest.mark.parametrize("g,b", SURFACES)
def test_triviality_is_conjugation_invariant(rng, g, b):
    s = new_surface(g, b)
    for _ in range(10):
        f, h = random_class(rng, s, 4), random_class(rng, s, 4)
        assert mc.is_trivial(f) == mc.is_trivial(mc.conjugate(f, h))
        assert mc.validate(f) == []


def test_nontrivial_commutator():
    s = new_surface(1, 1)
    a, b = mc.twist(s, "a1"), mc.twist(s, "b1")
    comm = a * b * mc.invert(a) * mc.invert(b)
    assert not mc.is_trivial(comm)
    assert mc.nontriviality_witness(comm).startswith("x1 -> ") or mc.nontriviality_witness(comm).startswith("y1")


def test_boundary_parallel_twists_need_defects():
    s = new_surface(1, 2)
    t = mc.twist(s, "bd2", 1)
    assert all(w == (k,) for k, w in enumerate(t.auto, start=1))
    assert t.defects != ((),)
    assert not mc.is_trivial(t)


def test_validate_flags_bad_data():
    s = new_surface(1, 1)
    bad = mc.MappingClass(s, ((1, 1), (2,)), ())
    assert [v.check for v in mc.validate(bad)][0] == "automorphism"
    swap = mc.MappingClass(s, ((2,), (1,)), ())
    assert "peripheral" in [v.check for v in mc.validate(swap)]
    alien = mc.MappingClass(s, ((3,), (2,)), ())
    assert [v.check for v in mc.validate(alien)] == ["alphabet"]
    wrong_sign = mc.twist(s, "a1", 1)
    assert [v.check for v in mc.validate(wrong_sign, s.curve("a1"), -1)] == ["transvection"]


def test_surface_mismatch_and_budget():
    with pytest.raises(mc.SurfaceMismatch):
        mc.compose(mc.identity(new_surface(1, 1)), mc.identity(new_surface(0, 3)))
    s = new_surface(1, 1)
    with pytest.raises(words.WordLengthExceeded):
        mc.from_twist_word(s, [("a1", 1), ("b1", -1)] * 20, max_length=50)


def test_constructor_checks_shape():
    s = new_surface(0, 3)
    with pytest.raises(ValueError):
        mc.MappingClass(s, ((1,), (2,)), ())
