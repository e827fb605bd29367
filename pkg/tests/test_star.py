"""Deformed product: generator table, associativity, module laws, involution."""

import random

import pytest

from twistcalc.calculus import CalculusAlgebra, cartesian_frame, weight_frame
from twistcalc.errors import ConfigurationError
from twistcalc.scalars import ScalarRing
from twistcalc.star import (StarContext, braided_commutativity_check,
                            star_bracket, star_dual_frame, star_involution,
                            star_mul, star_pairing)
from twistcalc.submanifold import translation_algebra, weight_symmetry_algebra
from twistcalc.twists import (TwistSeries, build_exponential_twist,
                              build_raising_twist)

from helpers import (closed_star_product, generator_families, oracle_involution,
                     rand_element, rand_monomial, rand_omega_element)

ORDER = 6
RING = ScalarRing()
WALG = CalculusAlgebra(RING, weight_frame())
LIE = weight_symmetry_algebra(RING)
STAR = StarContext(WALG, LIE, build_raising_twist(LIE, "H", "E+", ORDER))
FAMILIES = generator_families(WALG)
INDICES = ("+", "-", "0")


def all_generator_pairs():
    for ufam in FAMILIES:
        for i in INDICES:
            for wfam in FAMILIES:
                for j in INDICES:
                    yield ufam, i, wfam, j


def test_all_81_generator_products_match_the_closed_formula():
    checked = 0
    for ufam, i, wfam, j in all_generator_pairs():
        got = STAR.star(FAMILIES[ufam][i], FAMILIES[wfam][j])
        want = closed_star_product(FAMILIES, ufam, i, wfam, j)
        assert got == want, (ufam, i, wfam, j)
        checked += 1
    assert checked == 81


def test_exact_and_truncated_paths_agree_term_by_term():
    for ufam, i, wfam, j in all_generator_pairs():
        exact = STAR.star(FAMILIES[ufam][i], FAMILIES[wfam][j])
        trunc = STAR.star_truncated(FAMILIES[ufam][i], FAMILIES[wfam][j])
        keys = set(exact.terms) | set(trunc.terms)
        for m in keys:
            assert exact.terms.get(m) == trunc.terms.get(m), (ufam, i, wfam, j)


def test_unit_is_neutral():
    rng = random.Random(4001)
    for _ in range(10):
        e = rand_element(WALG, rng, max_deg=4, terms=3, surds=True)
        assert STAR.star(WALG.one, e) == e
        assert STAR.star(e, WALG.one) == e


def test_associativity_on_random_monomials():
    rng = random.Random(4002)
    for _ in range(100):
        a, b, c = (WALG.element({rand_monomial(WALG, rng, max_deg=4): RING.one})
                   for _ in range(3))
        assert STAR.star(STAR.star(a, b), c) == STAR.star(a, STAR.star(b, c))


def test_module_law_on_random_pairs():
    gens = [LIE.gen(name) for name in LIE.names]
    rng = random.Random(4003)
    for k in range(45):
        a = rand_element(WALG, rng, max_deg=3, terms=2, surds=True)
        b = rand_element(WALG, rng, max_deg=3, terms=2, surds=True)
        h = gens[k % len(gens)]
        assert STAR.module_law_check(h, a, b)


def rand_homogeneous_omega(rng):
    # the braided exchange needs a definite form degree for the Koszul sign,
    # and holds on the sector that is graded-commutative classically
    e = rand_omega_element(WALG, rng, max_deg=3, terms=3, surds=True)
    if not e.terms:
        return WALG.one
    target = rng.choice([m.form_degree() for m in e.terms])
    picked = {m: s for m, s in e.terms.items() if m.form_degree() == target}
    return WALG.element(picked)


def test_braided_commutativity_on_functions_and_forms():
    rng = random.Random(4004)
    for _ in range(40):
        a = rand_homogeneous_omega(rng)
        b = rand_homogeneous_omega(rng)
        report = braided_commutativity_check(a, b, STAR)
        assert report["passed"], report["residual"]


# Derivation-coordinate pairs where the plain braided exchange law cannot
# hold: either the two contract classically (d' differentiates y), or the
# braiding's raising action turns the derivation into one that does
# (E+ |> d0 lands on d_-, E+ |> d- lands on d0).  These pairs obey the
# separate exchange relations with an explicit pairing term instead.
BRAIDED_EXCHANGE_EXCEPTIONS = {
    ("y", "+", "d", "-"), ("y", "-", "d", "+"), ("y", "0", "d", "0"),
    ("d", "-", "y", "+"), ("d", "+", "y", "-"), ("d", "0", "y", "0"),
    ("y", "0", "d", "-"), ("d", "0", "y", "-"),
}


def test_braided_commutativity_on_the_generator_table():
    for ufam, i, wfam, j in all_generator_pairs():
        u, w = FAMILIES[ufam][i], FAMILIES[wfam][j]
        expected = (ufam, i, wfam, j) not in BRAIDED_EXCHANGE_EXCEPTIONS
        assert STAR.check_braided_commutativity(u, w) == expected, \
            (ufam, i, wfam, j)


def test_classical_limit():
    rng = random.Random(4005)
    for _ in range(25):
        a = rand_element(WALG, rng, max_deg=3, terms=2)
        b = rand_element(WALG, rng, max_deg=3, terms=2)
        assert STAR.classical_recovery_check(a, b)


def test_deformed_involution_on_generators():
    # only the "-" member of each family picks up a correction:
    #   (u-)* gains -2 i nu sqrtA (u0)*
    shift = RING.i * RING.nu() * RING.sqrt_a() * (-2)
    for fam in FAMILIES:
        um, u0, up = FAMILIES[fam]["-"], FAMILIES[fam]["0"], FAMILIES[fam]["+"]
        assert STAR.star_involution(um) \
            == oracle_involution(um) + oracle_involution(u0).scale(shift)
        assert STAR.star_involution(u0) == oracle_involution(u0)
        assert STAR.star_involution(up) == oracle_involution(up)


def test_deformed_involution_is_an_antihomomorphism():
    rng = random.Random(4006)
    for _ in range(20):
        a = rand_element(WALG, rng, max_deg=3, terms=2, surds=True)
        b = rand_element(WALG, rng, max_deg=3, terms=2, surds=True)
        lhs = STAR.star_involution(STAR.star(a, b))
        rhs = STAR.star(STAR.star_involution(b), STAR.star_involution(a))
        assert lhs == rhs
        assert STAR.star_involution(STAR.star_involution(a)) == a


def test_deformed_dual_frame_pairs_to_delta():
    vecs, forms = star_dual_frame(STAR)
    for i, v in enumerate(vecs):
        for j, w in enumerate(forms):
            expect = WALG.one if i == j else WALG.zero
            assert star_pairing(v, w, STAR) == expect


def test_gauge_element_transforms_the_derivations():
    # S(beta) |> d_i stays a constant-coefficient combination of derivations
    for i in range(1, 4):
        primed = STAR.gauge_action(WALG.d(i), antipode=True)
        assert primed.nu_component(0) == WALG.d(i)
        for m in primed.terms:
            assert sum(m.d) == 1 and sum(m.x) == 0 and not m.xi


def test_star_bracket_of_symmetry_fields_closes():
    fields = {n: LIE.realized_field(n, WALG) for n in LIE.names}
    two = RING.rational(2)
    assert star_bracket(fields["H"], fields["E+"], STAR) \
        == fields["E+"].scale(two)
    assert star_bracket(fields["H"], fields["E-"], STAR) \
        == fields["E-"].scale(-two)


def test_wrapper_validation():
    other = CalculusAlgebra(RING, cartesian_frame(3))
    with pytest.raises(ConfigurationError, match="different frame"):
        star_mul(other.x(1), WALG.x(1), STAR)
    with pytest.raises(ConfigurationError, match="vector field"):
        star_bracket(WALG.x(1), WALG.d(1), STAR)
    with pytest.raises(ConfigurationError, match="one-form"):
        star_pairing(WALG.d(1), WALG.x(2), STAR)
    # the deformed involution needs a unitary twist; a bare one-sided
    # exponential is a valid series but fails the unitarity identity
    trans = translation_algebra(RING, 2)
    calg2 = CalculusAlgebra(RING, cartesian_frame(2))
    lopsided = trans.tensor_unit(2) + trans.tensor(
        2, {((1, 0), (0, 1)): RING.i * RING.nu()})
    generic = TwistSeries(trans, lopsided, ORDER, kind="generic")
    assert not generic.check_unitary()
    gstar = StarContext(calg2, trans, generic)
    with pytest.raises(ConfigurationError, match="unitary"):
        star_involution(calg2.x(1), gstar)


def test_exponential_star_context_moyal_like_product():
    trans = translation_algebra(RING, 2)
    calg2 = CalculusAlgebra(RING, cartesian_frame(2))
    estar = StarContext(calg2, trans,
                        build_exponential_twist(trans, [("P1", "P2")], ORDER))
    x1, x2 = calg2.x(1), calg2.x(2)
    i_nu = RING.i * RING.nu()
    assert estar.star(x1, x2) - estar.star(x2, x1) == calg2.one.scale(-i_nu)
    rng = random.Random(4007)
    for _ in range(10):
        a, b, c = (rand_element(calg2, rng, max_deg=3, terms=2)
                   for _ in range(3))
        assert estar.star(estar.star(a, b), c) == estar.star(a, estar.star(b, c))
