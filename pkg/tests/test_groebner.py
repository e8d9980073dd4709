import random

import pytest

from markedbases import groebner as gb
from markedbases.ideals import NotStronglyStableError

from conftest import corpus, ideal, nogbasis_set, poly, random_homogeneous


def test_reduced_basis_of_quadrics(ring_zyx):
    basis = gb.groebner_basis([poly("x*y + y*z", ring_zyx),
                               poly("z^2 + x*z", ring_zyx)])
    assert [str(g) for g in basis.generators] == ["x*y + y*z", "x*z + z^2"]
    # the ideal factors through the plane x + z = 0
    assert gb.gb_member(poly("x*y + y*z", ring_zyx), basis)
    assert gb.gb_member(poly("x^2*y + x*y*z", ring_zyx), basis)


def test_monomial_input_gives_minimal_basis(ring_zyx):
    basis = gb.groebner_basis([poly("x*y", ring_zyx), poly("x*y*z", ring_zyx),
                               poly("z^2", ring_zyx)])
    assert sorted(str(g) for g in basis.generators) == ["x*y", "z^2"]


def test_membership_distinguishes_the_two_quadric_ideals(ring_zyx):
    witness = poly("x^2*z + y^3", ring_zyx)
    first = gb.groebner_basis([poly("x*y + y*z", ring_zyx),
                               poly("z^2 + x*z", ring_zyx)])
    second = gb.groebner_basis([poly("x*y + x^2 - y*z", ring_zyx),
                                poly("z^2 + y^2 - x*z", ring_zyx)])
    assert not gb.gb_member(witness, first)
    assert gb.gb_member(witness, second)  # z*g1 + y*g2 lands on it


def test_ideal_equal(ring_zyx):
    a = [poly("x", ring_zyx)]
    assert gb.ideal_equal(a, a)
    assert gb.ideal_equal(a, [poly("x", ring_zyx), poly("x^2", ring_zyx)])
    assert not gb.ideal_equal(a, [poly("x + y", ring_zyx)])
    assert gb.ideal_equal([], [poly("0", ring_zyx)])


def test_zero_and_unit_ideals(ring_zyx):
    zero = gb.groebner_basis([poly("0", ring_zyx)])
    assert zero.is_zero_ideal()
    assert gb.gb_normal_form(poly("x + y", ring_zyx), zero) == poly("x + y", ring_zyx)
    assert gb.quotient_hilbert_function(zero, 2) == 6
    unit = gb.groebner_basis([poly("x", ring_zyx), poly("x - 1", ring_zyx)])
    assert unit.is_unit_ideal()
    assert gb.quotient_hilbert_function(unit, 3) == 0


def test_normal_form_iff_membership_randomized(ring_zyx):
    rng = random.Random(57)
    for _ in range(25):
        gens = [random_homogeneous(rng, ring_zyx, rng.randint(1, 3))
                for _ in range(2)]
        gens = [g for g in gens if g]
        if not gens:
            continue
        basis = gb.groebner_basis(gens)
        h = random_homogeneous(rng, ring_zyx, rng.randint(1, 4))
        assert gb.gb_member(h, basis) == gb.gb_normal_form(h, basis).is_zero()
        assert gb.gb_member(gens[0] * gens[-1], basis)


def test_quotient_hilbert_function_of_monomial_ideal(ring_zyx):
    basis = gb.groebner_basis([poly("x*y", ring_zyx), poly("z^2", ring_zyx)])
    J = ideal(ring_zyx, "x*y", "z^2")
    for m in range(6):
        assert gb.quotient_hilbert_function(basis, m) == J.hilbert_function(m)


def test_verified_basis_has_head_ideal_hilbert_function(ring_zyx):
    for G in corpus(404, 25, ring_zyx):
        if not G.buchberger_check().ok:
            continue
        basis = gb.groebner_basis([f.poly for f in G.elements])
        for m in range(G.ideal.syzygy_degree_bound() + 1):
            assert gb.quotient_hilbert_function(basis, m) == \
                G.ideal.hilbert_function(m)


def test_marked_membership_agrees_with_oracle(ring_zyx):
    rng = random.Random(58)
    checked = 0
    for G in corpus(505, 20, ring_zyx):
        if not G.buchberger_check().ok:
            continue
        basis = gb.groebner_basis([f.poly for f in G.elements])
        bound = G.ideal.syzygy_degree_bound() + 2
        for _ in range(10):
            m = rng.randint(G.initial_degree, bound)
            h = random_homogeneous(rng, G.ring, m, size=4)
            if rng.random() < 0.5 and h:
                # force a member: a random scaled generator combination
                h = G.elements[rng.randrange(len(G.elements))].poly.term_multiple(
                    next(iter(h.terms)))
                if h.degree() > bound:
                    continue
            assert G.contains(h) == gb.gb_member(h, basis)
            checked += 1
    assert checked >= 50


# -- marked basis extraction --------------------------------------------------------

def test_extract_from_monomial_ideal(ring_zyx):
    J = ideal(ring_zyx, "x^2", "x*y", "y^2")
    result = gb.marked_basis_from_ideal(
        [poly("x^2", ring_zyx), poly("x*y", ring_zyx), poly("y^2", ring_zyx)], J)
    assert result.ok
    assert all(not f.tail_terms() for f in result.marked_set.elements)


def test_extract_recovers_eight_points_basis(ring_zyx):
    G = nogbasis_set(ring_zyx)
    gens = [f.poly for f in G.elements]
    result = gb.marked_basis_from_ideal(gens, G.ideal)
    assert result.ok and result.generates_input
    recovered = {str(f.head): str(f.poly) for f in result.marked_set.elements}
    assert recovered["x*y^2*z"] == "-y^4 + x*y^2*z - x^2*z^2"
    assert sum("+" in p or "-" in p for p in recovered.values()) == 1


def test_extract_refuses_unstable_head_ideal(ring_zyx):
    J = ideal(ring_zyx, "x*y", "z^2")
    with pytest.raises(NotStronglyStableError):
        gb.marked_basis_from_ideal([poly("x*y + y*z", ring_zyx)], J)


def test_extract_relaxed_diagnostics(ring_zyx):
    # the marked set sitting inside (x*y+y*z, z^2+x*z, x*y*z) neither
    # generates it nor is a basis; the relaxed mode reports both facts
    J = ideal(ring_zyx, "x*y", "z^2")
    gens = [poly("x*y + y*z", ring_zyx), poly("z^2 + x*z", ring_zyx),
            poly("x*y*z", ring_zyx)]
    result = gb.marked_basis_from_ideal(gens, J, relaxed=True)
    assert not result.ok
    assert result.generates_input is False
    assert result.hilbert_matches is False
    extracted = {str(f.head): f.poly for f in result.marked_set.elements}
    assert extracted["x*y"] == poly("x*y + y*z", ring_zyx)
    assert extracted["z^2"] == poly("z^2 + x*z", ring_zyx)
    assert any("does not generate" in f for f in result.failures)
    assert any("not a marked basis" in f for f in result.failures)


def test_extract_fails_when_input_too_small(ring_zyx):
    J = ideal(ring_zyx, "x^2", "x*y", "y^2")
    result = gb.marked_basis_from_ideal([poly("x^3", ring_zyx)], J)
    assert not result.ok
    assert any("no expression" in f for f in result.failures)


def test_extract_fails_when_outside_terms_collapse(ring_zyx):
    # x*z - y*z makes two outside terms dependent modulo the input
    J = ideal(ring_zyx, "x^2", "x*y", "y^2")
    gens = [poly("x^2", ring_zyx), poly("x*y", ring_zyx), poly("y^2", ring_zyx),
            poly("x*z - y*z", ring_zyx)]
    result = gb.marked_basis_from_ideal(gens, J)
    assert not result.ok
    assert any("not free" in f for f in result.failures)


def test_extract_round_trip_on_corpus(ring_zyx):
    for G in corpus(606, 15, ring_zyx):
        if not G.buchberger_check().ok:
            continue
        result = gb.marked_basis_from_ideal([f.poly for f in G.elements], G.ideal)
        assert result.ok
        assert {str(f.head): str(f.poly) for f in result.marked_set.elements} == \
            {str(f.head): str(f.poly) for f in G.elements}


def test_lex_order_basis(ring_zyx):
    basis = gb.groebner_basis([poly("x*y - z^2", ring_zyx),
                               poly("y^2 - x*z", ring_zyx)], order="lex")
    assert basis.order == "lex"
    # leading terms under lex use the largest variable first
    from markedbases.rings import lex_key
    for g in basis.generators:
        assert g.leading_term(lex_key) == max(g.terms, key=lex_key)
    assert gb.gb_member(poly("x*y^2 - x^2*z", ring_zyx) * poly("y", ring_zyx), basis)
