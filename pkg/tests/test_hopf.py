"""Enveloping-algebra layer: PBW products, Hopf axioms, coordinate action."""

import random
from fractions import Fraction

import pytest

from twistcalc.calculus import CalculusAlgebra, weight_frame
from twistcalc.errors import ConfigurationError
from twistcalc.hopf import LieAlgebraSpec, UEAElement, UEATensor
from twistcalc.scalars import ScalarRing
from twistcalc.submanifold import translation_algebra, weight_symmetry_algebra

from helpers import rand_element, rand_scalar

RING = ScalarRing()
LIE = weight_symmetry_algebra(RING)
WALG = CalculusAlgebra(RING, weight_frame())

EM, H, EP = (LIE.gen(k) for k in LIE.names)


def rand_uea(rng, max_exp=2, terms=3):
    out = {}
    for _ in range(rng.randint(1, terms)):
        exps = tuple(rng.randint(0, max_exp) for _ in range(LIE.dim))
        s = rand_scalar(RING, rng, max_nu=1, surds=False, terms=2)
        acc = out.get(exps, RING.zero) + s
        if acc:
            out[exps] = acc
        else:
            out.pop(exps, None)
    return LIE.element(out)


def rand_uea_tensor(rng, rank=2, max_exp=2, terms=3):
    out = {}
    for _ in range(rng.randint(1, terms)):
        key = tuple(tuple(rng.randint(0, max_exp) for _ in range(LIE.dim))
                    for _ in range(rank))
        s = rand_scalar(RING, rng, max_nu=2, surds=False, terms=2)
        acc = out.get(key, RING.zero) + s
        if acc:
            out[key] = acc
        else:
            out.pop(key, None)
    return LIE.tensor(rank, out)


def test_bracket_table():
    two = RING.rational(2)
    assert H * EP - EP * H == EP.scale(two)
    assert H * EM - EM * H == EM.scale(-two)
    assert EP * EM - EM * EP == -H
    assert LIE.check_jacobi()


def test_pbw_straightening():
    # names are ordered (E-, H, E+); a straightened word keeps that order
    assert (EP * EM).terms == {(1, 0, 1): RING.one, (0, 1, 0): -RING.one}
    assert (EP * H).terms == {(0, 1, 1): RING.one, (0, 0, 1): RING.rational(-2)}
    # associativity of the straightened product on random elements
    rng = random.Random(3001)
    for _ in range(25):
        u, v, w = (rand_uea(rng) for _ in range(3))
        assert (u * v) * w == u * (v * w)


def test_action_is_a_module_structure():
    rng = random.Random(3002)
    for _ in range(25):
        u, v = rand_uea(rng), rand_uea(rng)
        f = rand_element(WALG, rng, max_deg=3, terms=3)
        assert LIE.act(u * v, f) == LIE.act(u, LIE.act(v, f))
        assert LIE.act(u + v, f) == LIE.act(u, f) + LIE.act(v, f)
    assert LIE.act(LIE.one, f) == f


def test_generators_act_as_derivations():
    rng = random.Random(3003)
    for _ in range(25):
        f = rand_element(WALG, rng, max_deg=3, terms=3)
        g = rand_element(WALG, rng, max_deg=3, terms=3)
        for k in range(LIE.dim):
            lhs = LIE.act_gen(k, f * g)
            rhs = LIE.act_gen(k, f) * g + f * LIE.act_gen(k, g)
            assert lhs == rhs
    for k in range(LIE.dim):
        assert LIE.act_gen(k, WALG.one) == WALG.zero


def test_action_realizes_the_bracket():
    rng = random.Random(3004)
    for _ in range(15):
        f = rand_element(WALG, rng, max_deg=3, terms=3)
        for u, v in ((H, EP), (H, EM), (EP, EM)):
            lhs = LIE.act(u.commutator(v), f)
            rhs = LIE.act(u, LIE.act(v, f)) - LIE.act(v, LIE.act(u, f))
            assert lhs == rhs


def test_affine_coordinate_representation():
    assert LIE.check_tau_representation()
    # weights: H |> y± = ±2 y±, H |> y0 = 0
    assert LIE.act(H, WALG.x(1)) == WALG.x(1).scale(RING.rational(2))
    assert LIE.act(H, WALG.x(2)) == WALG.x(2).scale(RING.rational(-2))
    assert LIE.act(H, WALG.x(3)) == WALG.zero
    # ladder moves: E± |> y0 = (1/sqrtA) y±, E± |> y∓ = -2 sqrtA y0
    s, sinv = RING.sqrt_a(), RING.sqrt_a().inverse()
    assert LIE.act(EP, WALG.x(3)) == WALG.x(1).scale(sinv)
    assert LIE.act(EP, WALG.x(2)) == WALG.x(3).scale(-(s * 2))
    assert LIE.act(EP, WALG.x(1)) == WALG.zero
    assert LIE.act(EM, WALG.x(3)) == WALG.x(2).scale(sinv)
    assert LIE.act(EM, WALG.x(1)) == WALG.x(3).scale(-(s * 2))
    # forms carry the same linear representation as coordinates while the
    # derivations carry minus its transpose (the affine row is zero here)
    for k in range(LIE.dim):
        tau = LIE.tau[k]
        for j in range(1, 4):
            form = sum((WALG.xi(mu).scale(tau[mu][j - 1]) for mu in range(2, 4)),
                       WALG.xi(1).scale(tau[1][j - 1]))
            assert LIE.act_gen(k, WALG.xi(j)) == form
        for i in range(1, 4):
            vec = sum((WALG.d(j).scale(-tau[i][j - 1]) for j in range(2, 4)),
                      WALG.d(1).scale(-tau[i][0]))
            assert LIE.act_gen(k, WALG.d(i)) == vec
    # the realized vector fields reproduce the action as commutators
    for name in LIE.names:
        field = LIE.realized_field(name, WALG)
        for i in range(1, 4):
            assert field.commutator(WALG.x(i)) == LIE.act(LIE.gen(name), WALG.x(i))


def test_coproduct_counit_antipode_axioms():
    rng = random.Random(3005)
    for sample in (EM, H, EP, EP * EM, rand_uea(rng), rand_uea(rng)):
        cop = sample.coproduct()
        # coassociativity
        assert cop.coproduct_leg(0) == cop.coproduct_leg(1)
        # counit axiom: (eps (x) id) Delta = id = (id (x) eps) Delta
        left = LIE.zero
        right = LIE.zero
        anti = LIE.zero
        for key, s in cop.terms.items():
            e1, e2 = key
            u1, u2 = LIE.element({e1: RING.one}), LIE.element({e2: RING.one})
            left = left + u2.scale(s * u1.counit())
            right = right + u1.scale(s * u2.counit())
            anti = anti + (u1.antipode() * u2).scale(s)
        assert left == sample
        assert right == sample
        # antipode axiom: m (S (x) id) Delta = eps(.) 1
        assert anti == LIE.one.scale(sample.counit())


def test_antipode_is_an_antihomomorphism():
    rng = random.Random(3006)
    for _ in range(20):
        u, v = rand_uea(rng), rand_uea(rng)
        assert (u * v).antipode() == v.antipode() * u.antipode()


def test_tensor_algebra_operations():
    rng = random.Random(3007)
    for _ in range(20):
        t1 = rand_uea_tensor(rng)
        t2 = rand_uea_tensor(rng)
        assert t1.flip().flip() == t1
        assert (t1 * t2).flip() == t1.flip() * t2.flip()
        prod = t1 * t2
        for order in (0, 1, 2, 3):
            assert t1.mul_truncated(t2, order) == prod.truncate(order)


def test_translation_algebra_is_abelian():
    trans = translation_algebra(RING, 3)
    assert trans.check_jacobi()
    assert trans.check_tau_representation()
    gens = [trans.gen(n) for n in trans.names]
    for u in gens:
        for v in gens:
            assert u * v == v * u


def test_spec_validation_errors():
    with pytest.raises(ConfigurationError):
        LIE.index("nope")
    with pytest.raises(ConfigurationError):
        # brackets must be stored lower-triangle first
        LieAlgebraSpec(RING, ("A", "B"), 1,
                       {(1, 0): {0: RING.one}},
                       [[[RING.zero]] * 2, [[RING.zero]] * 2])
