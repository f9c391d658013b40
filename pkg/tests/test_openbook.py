import pytest

from openbooks import mapclass as mc
from openbooks.homology import manifold_invariants
from openbooks.openbook import (
    OpenBook,
    PlumbingError,
    Verdict,
    boundary_connected_sum,
    hopf_plumb,
    invariants,
    is_full_connected_sum,
)
from openbooks.surface import new_surface

from conftest import random_open_book


def annulus(n):
    s = new_surface(0, 2)
    return OpenBook.from_word(s, [("core", 1 if n > 0 else -1)] * abs(n))


def recomputed(ob):
    return mc.from_twist_word(ob.surface, ob.monodromy.twist_word)


def test_examples():
    assert invariants(annulus(5)).as_pair() == (0, (5,))
    ob = OpenBook.trivial(new_surface(2, 1))
    rep = is_full_connected_sum(ob)
    assert rep.verdict is Verdict.FULL_CONNECTED_SUM and rep.manifold_betti == 4
    rep = is_full_connected_sum(annulus(1))
    assert rep.verdict is Verdict.STRICTLY_FEWER and rep.certificate.startswith("b1(M)=0 < 1")
    chain = OpenBook.from_word(new_surface(1, 1), [("a1", 1), ("b1", 1)] * 6)
    rep = is_full_connected_sum(chain)
    assert rep.verdict is Verdict.STRICTLY_FEWER and not rep.homological_gap
    assert rep.certificate.startswith("nontrivial automorphism; homology blind")
    assert invariants(OpenBook.from_word(new_surface(1, 1), [("a1", 1)])).as_pair() == (1, ())


def test_monodromy_must_match_surface():
    with pytest.raises(ValueError):
        OpenBook(new_surface(1, 1), mc.identity(new_surface(0, 3)))


def test_plumb_disk_gives_hopf_band():
    ob = hopf_plumb(OpenBook.trivial(new_surface(0, 1)))
    assert (ob.surface.genus, ob.surface.boundary_count) == (0, 2)
    assert invariants(ob).as_pair() == (0, ())
    assert ob.monodromy == mc.twist(ob.surface, "core", 1)


@pytest.mark.parametrize("n", [-3, -1, 2, 4])
def test_plumb_annulus_merging(n):
    ob = hopf_plumb(annulus(n), (1, 2))
    assert (ob.surface.genus, ob.surface.boundary_count) == (1, 1)
    assert ob.page_betti == 2
    assert invariants(ob).as_pair() == invariants(annulus(n)).as_pair()
    assert recomputed(ob) == ob.monodromy


@pytest.mark.parametrize("attach", [(1, 1), (2, 2), (1, 2), (2, 1)])
@pytest.mark.parametrize("sign", [1, -1])
def test_plumb_both_routes_agree(attach, sign):
    ob = OpenBook.from_word(new_surface(1, 2), [("a1", 1), ("c3", -1), ("bd2", 1), ("b1", 1)])
    for standard in (True, False):
        p = hopf_plumb(ob, attach, sign, standard=standard)
        merged = attach[0] != attach[1]
        assert p.surface.boundary_count == ob.surface.boundary_count + (-1 if merged else 1)
        assert p.page_betti == ob.page_betti + 1
        assert recomputed(p) == p.monodromy
        assert mc.validate(p.monodromy) == []
        assert invariants(p).as_pair() == invariants(ob).as_pair()


def test_repeated_plumbing_on_general_layouts(rng):
    for _ in range(20):
        ob = random_open_book(rng, max_len=4)
        inv = invariants(ob).as_pair()
        for _ in range(3):
            b = ob.surface.boundary_count
            attach = (rng.randint(1, b), rng.randint(1, b))
            ob = hopf_plumb(ob, attach, rng.choice((1, -1)), standard=rng.random() < 0.5)
            assert invariants(ob).as_pair() == inv
            assert recomputed(ob) == ob.monodromy


def test_plumb_rejects_bad_attachment():
    with pytest.raises(PlumbingError):
        hopf_plumb(annulus(2), (1, 3))
    with pytest.raises(PlumbingError):
        hopf_plumb(annulus(2), (1, 2), sign=2)


def test_boundary_sum_examples():
    t = OpenBook.trivial(new_surface(1, 1))
    s = boundary_connected_sum(t, t)
    assert (s.surface.genus, s.surface.boundary_count) == (2, 1)
    assert is_full_connected_sum(s).verdict is Verdict.FULL_CONNECTED_SUM
    lens = boundary_connected_sum(annulus(2), annulus(3))
    inv = invariants(lens)
    assert inv.betti == 0 and inv.elementary_divisors == (2, 3)
    assert recomputed(lens) == lens.monodromy


def test_boundary_sum_keeps_summands_and_labels(rng):
    for _ in range(30):
        a, b = random_open_book(rng), random_open_book(rng)
        s = boundary_connected_sum(a, b, standard=rng.random() < 0.5)
        assert s.page_betti == a.page_betti + b.page_betti
        assert s.surface.boundary_count == a.surface.boundary_count + b.surface.boundary_count - 1
        assert recomputed(s) == s.monodromy
        ia, ib, isum = invariants(a), invariants(b), invariants(s)
        assert isum.betti == ia.betti + ib.betti
        assert isum.elementary_divisors == tuple(sorted(ia.elementary_divisors + ib.elementary_divisors))
        assert mc.is_trivial(s.monodromy) == (mc.is_trivial(a.monodromy) and mc.is_trivial(b.monodromy))
    named = boundary_connected_sum(OpenBook.trivial(new_surface(0, 1), "S3"), annulus(2))
    assert named.label == "(S3) # (?)"
