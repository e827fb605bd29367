"""Shared test utilities: random element generators and slow reference oracles.

The oracles deliberately avoid the library's fast paths: multiplication is
re-derived one generator at a time from the elementary exchange relations, so
agreement with the engine is a genuine two-route check.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Tuple

from twistcalc.calculus import CalcElement, CalcMonomial, CalculusAlgebra
from twistcalc.scalars import GaussianRational, Scalar, ScalarRing


# ---------------------------------------------------------------------------
# random generators (all deterministic via caller-provided random.Random)
# ---------------------------------------------------------------------------

def rand_fraction(rng: random.Random, span: int = 6) -> Fraction:
    num = rng.randint(-span, span)
    den = rng.randint(1, 4)
    return Fraction(num, den)


def rand_gauss(rng: random.Random) -> GaussianRational:
    return GaussianRational(rand_fraction(rng), rand_fraction(rng))


def rand_scalar(ring: ScalarRing, rng: random.Random, max_nu: int = 2,
                surds: bool = True, terms: int = 3) -> Scalar:
    items = []
    for _ in range(rng.randint(1, terms)):
        knu = rng.randint(0, max_nu)
        ks = rng.randint(-1, 2) if surds else 0
        kt = rng.randint(-1, 2) if surds else 0
        kc = rng.randint(-1, 1) if surds else 0
        items.append(((knu, ks, kt, kc), rand_gauss(rng)))
    return ring.build(items)


def rand_monomial(alg: CalculusAlgebra, rng: random.Random,
                  max_deg: int = 3) -> CalcMonomial:
    n = alg.n
    deg = rng.randint(0, max_deg)
    xi: List[int] = []
    x = [0] * n
    d = [0] * n
    for _ in range(deg):
        kind = rng.choice(("xi", "x", "d"))
        i = rng.randint(1, n)
        if kind == "xi":
            if i not in xi:
                xi.append(i)
        elif kind == "x":
            x[i - 1] += 1
        else:
            d[i - 1] += 1
    return CalcMonomial(tuple(sorted(xi)), tuple(x), tuple(d))


def rand_element(alg: CalculusAlgebra, rng: random.Random, max_deg: int = 3,
                 terms: int = 3, max_nu: int = 1, surds: bool = False) -> CalcElement:
    out = alg.zero
    for _ in range(rng.randint(1, terms)):
        m = rand_monomial(alg, rng, max_deg)
        s = rand_scalar(alg.ring, rng, max_nu=max_nu, surds=surds, terms=2)
        out = out + alg.element({m: s})
    return out


# ---------------------------------------------------------------------------
# slow reference multiplication (one generator at a time)
# ---------------------------------------------------------------------------

def _right_mul_x(alg: CalculusAlgebra, terms: dict, i: int) -> dict:
    """terms * x^i using only  d_j x^i = x^i d_j + delta_ij."""
    out: dict = {}
    for m, s in terms.items():
        x = list(m.x)
        x[i - 1] += 1
        _acc(out, CalcMonomial(m.xi, tuple(x), m.d), s)
        if m.d[i - 1]:
            d = list(m.d)
            d[i - 1] -= 1
            _acc(out, CalcMonomial(m.xi, m.x, tuple(d)), s * m.d[i - 1])
    return out


def _right_mul_xi(alg: CalculusAlgebra, terms: dict, i: int) -> dict:
    out: dict = {}
    for m, s in terms.items():
        if i in m.xi:
            continue
        hops = sum(1 for j in m.xi if j > i)
        xi = tuple(sorted(m.xi + (i,)))
        _acc(out, CalcMonomial(xi, m.x, m.d), s * ((-1) ** hops))
    return out


def _right_mul_d(alg: CalculusAlgebra, terms: dict, i: int) -> dict:
    out: dict = {}
    for m, s in terms.items():
        d = list(m.d)
        d[i - 1] += 1
        _acc(out, CalcMonomial(m.xi, m.x, tuple(d)), s)
    return out


def _acc(store: dict, m: CalcMonomial, s: Scalar) -> None:
    acc = store.get(m)
    acc = s if acc is None else acc + s
    if acc:
        store[m] = acc
    else:
        store.pop(m, None)


def monomial_factor_list(m: CalcMonomial) -> List[Tuple[str, int]]:
    """The canonical generator word of a basis monomial."""
    word: List[Tuple[str, int]] = [("xi", i) for i in m.xi]
    for i, p in enumerate(m.x):
        word.extend(("x", i + 1) for _ in range(p))
    for i, r in enumerate(m.d):
        word.extend(("d", i + 1) for _ in range(r))
    return word


def oracle_mul(e1: CalcElement, e2: CalcElement) -> CalcElement:
    """Reference product: fold e2 into e1 one generator at a time."""
    alg = e1.alg
    total = alg.zero
    movers = {"x": _right_mul_x, "xi": _right_mul_xi, "d": _right_mul_d}
    for m2, s2 in e2.terms.items():
        terms = dict(e1.terms.items())
        for kind, i in monomial_factor_list(m2):
            terms = movers[kind](alg, terms, i)
        part = CalcElement(alg, {m: s * s2 for m, s in terms.items() if s * s2})
        total = total + part
    return total


def oracle_involution(e: CalcElement) -> CalcElement:
    """Reference involution: reverse each generator word, star letter-wise."""
    alg = e.alg
    total = alg.zero
    movers = {"x": _right_mul_x, "xi": _right_mul_xi, "d": _right_mul_d}
    for m, s in e.terms.items():
        terms = {CalcMonomial((), (0,) * alg.n, (0,) * alg.n): s.conjugate()}
        sign = 1
        for kind, i in reversed(monomial_factor_list(m)):
            terms = movers[kind](alg, terms, i)
            if kind == "d":
                sign = -sign
        part = CalcElement(alg, {mm: ss * sign for mm, ss in terms.items()})
        total = total + part
    return total


def rand_omega_element(alg: CalculusAlgebra, rng: random.Random,
                       max_deg: int = 3, terms: int = 3,
                       max_nu: int = 1, surds: bool = False) -> CalcElement:
    """Random element of the function-and-form sector (no derivation blocks).

    The surface quotient lives on this sector, so tests of reduction maps
    draw from it; derivation words act through the quotient rather than
    descending to it.
    """
    n = alg.n
    out = alg.zero
    for _ in range(rng.randint(1, terms)):
        deg = rng.randint(0, max_deg)
        fdeg = rng.randint(0, min(n, deg))
        xi = tuple(sorted(rng.sample(range(1, n + 1), fdeg)))
        x = [0] * n
        for _ in range(deg - fdeg):
            x[rng.randint(0, n - 1)] += 1
        m = CalcMonomial(xi, tuple(x), (0,) * n)
        s = rand_scalar(alg.ring, rng, max_nu=max_nu, surds=surds, terms=2)
        out = out + alg.element({m: s})
    return out


# ---------------------------------------------------------------------------
# closed-form references for the weight-frame deformation
# ---------------------------------------------------------------------------

def outer_tensor(u, v):
    """Two-leg tensor u (x) v in the enveloping algebra."""
    alg = u.alg
    ring = alg.ring
    terms = {}
    for e1, s1 in u.terms.items():
        for e2, s2 in v.terms.items():
            key = (e1, e2)
            val = terms.get(key, ring.zero) + s1 * s2
            if val:
                terms[key] = val
            else:
                terms.pop(key, None)
    return alg.tensor(2, terms)


def raising_geometric_series(lie, order: int):
    """Truncated series in the raising generator R = E+.

    Returns (over, inv, one_plus) with, modulo nu^(order+1),
      over     = R / (1 + i nu R) = sum_{m>=1} (-i nu)^(m-1) R^m,
      inv      = 1 / (1 + i nu R) = sum_{m>=0} (-i nu)^m R^m,
      one_plus = 1 + i nu R.
    """
    ring = lie.ring
    i_nu = ring.i * ring.nu()
    r = lie.gen("E+")
    over = lie.zero
    inv = lie.one
    for m in range(1, order + 1):
        over = over + (r ** m).scale((-i_nu) ** (m - 1))
        inv = inv + (r ** m).scale((-i_nu) ** m)
    return over, inv, lie.one + r.scale(i_nu)


def closed_twisted_coproducts(lie, order: int):
    """Closed-form deformed coproducts of E-, H, E+ as truncated series.

    Products inside a tensor leg are taken left to right exactly as the
    series are written; every entry is an independent reference for the
    definitional conjugated coproduct.
    """
    ring = lie.ring
    i_nu = ring.i * ring.nu()
    quarter_nu2 = ring.nu() ** 2 * ring.rational(Fraction(1, 4))
    half = ring.rational(Fraction(1, 2))
    h, ep, em = lie.gen("H"), lie.gen("E+"), lie.gen("E-")
    over, inv, _ = raising_geometric_series(lie, order)
    out = {
        "H": (h.coproduct()
              + outer_tensor(h.scale(-i_nu), over)).truncate(order),
        "E+": (ep.coproduct()
               + outer_tensor(ep.scale(i_nu), ep)).truncate(order),
        "E-": (em.coproduct()
               + outer_tensor(h.scale(-i_nu * half),
                              ((h + over.scale(i_nu)) * inv).truncate(order))
               + outer_tensor(em.scale(-i_nu), over)
               + outer_tensor((h * h).scale(-quarter_nu2),
                              (over * inv).truncate(order))).truncate(order),
    }
    return out


def closed_twisted_antipodes(lie, order: int):
    """Closed-form deformed antipodes of E-, H, E+ as truncated series."""
    ring = lie.ring
    i_nu = ring.i * ring.nu()
    quarter_nu2 = ring.nu() ** 2 * ring.rational(Fraction(1, 4))
    half = ring.rational(Fraction(1, 2))
    h, ep, em = lie.gen("H"), lie.gen("E+"), lie.gen("E-")
    over, inv, one_plus = raising_geometric_series(lie, order)
    t = lambda u: u.truncate(order)
    return {
        "H": t(h.antipode() * one_plus),
        "E+": t(ep.antipode() * inv),
        "E-": (t(em.antipode() * one_plus)
               - t(h.scale(i_nu * half) * one_plus * (h + over.scale(i_nu)))
               + t((h * one_plus * h * ep).scale(quarter_nu2))),
    }


def generator_families(alg: CalculusAlgebra):
    """Weight-frame generator triples, indexed by the raised weight label.

    Families: coordinates ``y``, one-forms ``eta`` and the raised-index
    derivations ``d`` (d+ = 2a d_-, d- = 2a d_+, d0 = d_0), each keyed by
    "+", "-", "0".
    """
    ring = alg.ring
    two_a = ring.sqrt_a() ** 2 * 2
    return {
        "y": {"+": alg.x(1), "-": alg.x(2), "0": alg.x(3)},
        "eta": {"+": alg.xi(1), "-": alg.xi(2), "0": alg.xi(3)},
        "d": {"+": alg.d(2).scale(two_a), "-": alg.d(1).scale(two_a),
              "0": alg.d(3)},
    }


def closed_star_product(families, ufam: str, i: str, wfam: str, j: str) -> CalcElement:
    """Reference deformed product of two weight-frame generators.

    u_i * w_j = u_i w_j
                + i nu (delta_{i,-} - delta_{i,+})
                       u_i ((1/sqrtA) delta_{j,0} w_+ - 2 sqrtA delta_{j,-} w_0)
                + 2 nu^2 delta_{i,+} delta_{j,-} u_+ w_+
    """
    u, w = families[ufam][i], families[wfam][j]
    alg = u.alg
    ring = alg.ring
    i_nu = ring.i * ring.nu()
    out = u * w
    sgn = (1 if i == "-" else 0) - (1 if i == "+" else 0)
    if sgn:
        mid = alg.zero
        if j == "0":
            mid = mid + families[wfam]["+"].scale(ring.sqrt_a().inverse())
        if j == "-":
            mid = mid - families[wfam]["0"].scale(ring.sqrt_a() * 2)
        out = out + (u * mid).scale(i_nu * ring.rational(sgn))
    if i == "+" and j == "-":
        out = out + (families[ufam]["+"] * families[wfam]["+"]).scale(
            ring.nu() ** 2 * 2)
    return out
