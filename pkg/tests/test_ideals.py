import math
import random

import pytest

from markedbases.ideals import (MonomialIdeal, NotStronglyStableError,
                                borel_closure)
from markedbases.rings import min_var, term_quotient

from conftest import ideal, random_stable_ideal, random_term, term


def test_minimal_basis(ring_zyx):
    J = ideal(ring_zyx, "x*y", "x^2*y", "z^2", "x*y*z^2")
    assert {str(t) for t in J.basis} == {"x*y", "z^2"}


def test_rejects_unit_and_zero(ring_zyx):
    with pytest.raises(ValueError):
        MonomialIdeal(ring_zyx, [])
    with pytest.raises(ValueError):
        MonomialIdeal(ring_zyx, [ring_zyx.one()])


def test_contains(ring_zyx):
    J = ideal(ring_zyx, "x*y", "z^2")
    for b in J.basis:
        assert J.contains_term(b)
    assert J.contains_term(term("x*y*z", ring_zyx))
    assert not J.contains_term(term("y^2*z", ring_zyx))


def test_sous_escalier(ring_zyx):
    J = ideal(ring_zyx, "x*y", "z^2")
    assert [str(t) for t in J.sous_escalier(0).terms] == ["1"]
    slice3 = J.sous_escalier(3)
    assert {str(t) for t in slice3.terms} == {"x^3", "y^3", "x^2*z", "y^2*z"}
    assert len(slice3) == 4


def test_partition(ring_zyx):
    rng = random.Random(3)
    for _ in range(10):
        J = random_stable_ideal(rng, ring_zyx)
        for m in range(6):
            inside = J.terms_of_degree(m)
            outside = J.sous_escalier(m).terms
            assert len(inside) + len(outside) == math.comb(m + 2, 2)
            assert not (set(inside) & set(outside))
            assert len(outside) == J.hilbert_function(m)
            assert len(inside) == J.dim(m)


def test_hilbert_values(ring_zyx):
    assert [ideal(ring_zyx, "x*y", "z^2").hilbert_function(m) for m in range(5)] == \
        [1, 3, 4, 4, 4]
    assert [ideal(ring_zyx, "x^2", "x*y", "x*z", "y^2").hilbert_function(m)
            for m in range(4)] == [1, 3, 2, 2]


def test_initial_degree(ring_zyx):
    assert ideal(ring_zyx, "x*y", "z^2").initial_degree() == 2
    assert ideal(ring_zyx, "x^2").initial_degree() == 2
    assert ideal(ring_zyx, "x^4", "x^3*y", "x^2*y^2", "x*y^3", "x^3*z",
                 "x^2*y*z", "x*y^2*z", "y^5").initial_degree() == 4


def test_strong_stability(ring_zyx):
    assert not ideal(ring_zyx, "x*y", "z^2").is_strongly_stable()
    assert ideal(ring_zyx, "x^2", "x*y", "x*z", "y^2").is_strongly_stable()
    assert ideal(ring_zyx, "x^4", "x^3*y", "x^2*y^2", "x*y^3", "x^3*z",
                 "x^2*y*z", "x*y^2*z", "y^5").is_strongly_stable()


def test_stability_violation_reports_move(ring_zyx):
    J = ideal(ring_zyx, "x*y", "z^2")
    violation = J.stability_violation()
    assert violation is not None
    t, i, j, moved = violation
    assert (str(t), str(moved)) == ("x*y", "x^2")
    with pytest.raises(NotStronglyStableError) as err:
        J.require_strongly_stable()
    assert "x*y -> x^2" in str(err.value)


def test_stability_matches_outside_characterization(ring_zyx):
    # generator moves suffice iff every outside term keeps its up-moves outside
    rng = random.Random(5)
    samples = [random_stable_ideal(rng, ring_zyx) for _ in range(8)]
    samples.append(ideal(ring_zyx, "x*y", "z^2"))
    samples.append(ideal(ring_zyx, "x^2", "y^2"))
    for J in samples:
        top = max(t.degree for t in J.basis) + 1
        brute = True
        for m in range(1, top + 1):
            for t in J.terms_of_degree(m):
                for i, e in enumerate(t.exponents):
                    if e == 0:
                        continue
                    for j in range(i + 1, ring_zyx.nvars):
                        vec = list(t.exponents)
                        vec[i] -= 1
                        vec[j] += 1
                        brute = brute and J.contains_term(ring_zyx.term(tuple(vec)))
        assert J.is_strongly_stable() == brute


def test_smallest_variable_quotient_stays_inside(ring_zyx):
    # for strongly stable J and a non-generator t in J, t/min(t) stays in J
    rng = random.Random(9)
    for _ in range(8):
        J = random_stable_ideal(rng, ring_zyx)
        for m in range(J.initial_degree() + 1, J.initial_degree() + 4):
            for t in J.terms_of_degree(m):
                if t in J.basis:
                    continue
                quotient = term_quotient(t, ring_zyx.variable_term(min_var(t)))
                assert J.contains_term(quotient)


def test_borel_closure(ring_zyx):
    J = ideal(ring_zyx, "x^2", "x*y", "y^2")
    assert borel_closure(ring_zyx, J.basis) == J  # fixed point
    assert {str(t) for t in borel_closure(ring_zyx, [term("x*y", ring_zyx)]).basis} == \
        {"x^2", "x*y"}
    assert {str(t) for t in borel_closure(ring_zyx, [term("z^2", ring_zyx)]).basis} == \
        {"x^2", "x*y", "x*z", "y^2", "y*z", "z^2"}


def test_borel_closure_always_stable(ring_zyx):
    rng = random.Random(13)
    for _ in range(25):
        seeds = [random_term(rng, ring_zyx, rng.randint(1, 5)) for _ in range(2)]
        assert borel_closure(ring_zyx, seeds).is_strongly_stable()


def test_pair_degrees_and_bound(ring_zyx):
    assert ideal(ring_zyx, "x^2").pairs() == []
    assert ideal(ring_zyx, "x^2").syzygy_degree_bound() == 2

    J = ideal(ring_zyx, "x^2", "x*y", "y^2")
    degrees = sorted(d for _, d in J.pair_syzygy_degrees())
    assert degrees == [3, 3, 4]
    assert J.syzygy_degree_bound() == 4

    J4 = ideal(ring_zyx, "x^2", "x*y", "x*z", "y^2")
    assert sorted(set(d for _, d in J4.pair_syzygy_degrees())) == [3, 4]


def test_divisor_criterion_refinement(ring_zyx):
    # x*y divides lcm(x^2, y^2) = x^2*y^2 with both sub-lcms of degree 3
    J = ideal(ring_zyx, "x^2", "x*y", "y^2")
    refined = J.pairs(minimal=True)
    heads = {(str(J.basis[i]), str(J.basis[j])) for i, j in refined}
    assert ("x^2", "y^2") not in heads and ("y^2", "x^2") not in heads
    assert len(refined) == 2
    assert J.syzygy_degree_bound(minimal=True) == 3
