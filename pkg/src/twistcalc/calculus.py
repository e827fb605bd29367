"""The graded differential-operator algebra on R^n.

Generators per coordinate i = 1..n: a coordinate x^i, an anticommuting
one-form generator xi^i and a derivation d_i, subject to

    x^i x^j = x^j x^i        xi^i xi^j = -xi^j xi^i       d_i d_j = d_j d_i
    xi^i x^j = x^j xi^i      d_i xi^j = xi^j d_i          d_i x^j - x^j d_i = delta_i^j

(the central unit plays the role of the degree-zero coordinate x^0).  A basis
is given by the normally ordered monomials  xi^A x^p d^r  with A a strictly
increasing index tuple.  Elements carry :class:`~twistcalc.scalars.Scalar`
coefficients on the left.

Two gradings: the form degree |A| and the "sharp" degree |p| - |r|.  The
involution * fixes x and xi, negates d, conjugates coefficients and reverses
products.

A frame names the generators (for parsing/printing) and may assign integer
weights to the coordinates; weights drive the exact evaluation of the
lowering/raising twist in :mod:`twistcalc.star`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ConfigurationError
from .scalars import GaussianRational, Scalar, ScalarRing

__all__ = [
    "Frame", "cartesian_frame", "weight_frame",
    "CalcMonomial", "CalcElement", "CalculusAlgebra",
    "weight_to_cartesian", "cartesian_to_weight",
]


@dataclass(frozen=True)
class Frame:
    """Naming (and optional grading) of the generators of the algebra."""

    name: str
    n: int
    x_labels: Tuple[str, ...]
    xi_labels: Tuple[str, ...]
    d_labels: Tuple[str, ...]
    weights: Optional[Tuple[int, ...]] = None  # H-weights of x/xi; d get the negatives

    def __post_init__(self):
        for labels in (self.x_labels, self.xi_labels, self.d_labels):
            if len(labels) != self.n:
                raise ConfigurationError("frame label count does not match n")
        if self.weights is not None and len(self.weights) != self.n:
            raise ConfigurationError("frame weight count does not match n")


def cartesian_frame(n: int = 3) -> Frame:
    r = range(1, n + 1)
    return Frame(
        name="cartesian", n=n,
        x_labels=tuple(f"x{i}" for i in r),
        xi_labels=tuple(f"xi{i}" for i in r),
        d_labels=tuple(f"d{i}" for i in r),
    )


def weight_frame() -> Frame:
    """Light-cone style frame (+, -, 0) adapted to the diagonal symmetry."""
    return Frame(
        name="weight", n=3,
        x_labels=("y+", "y-", "y0"),
        xi_labels=("eta+", "eta-", "eta0"),
        d_labels=("d_+", "d_-", "d_0"),
        weights=(2, -2, 0),
    )


@dataclass(frozen=True)
class CalcMonomial:
    """Normally ordered basis monomial xi^A x^p d^r."""

    xi: Tuple[int, ...]   # strictly increasing 1-based indices
    x: Tuple[int, ...]    # exponents, length n
    d: Tuple[int, ...]    # exponents, length n

    def form_degree(self) -> int:
        return len(self.xi)

    def sharp_degree(self) -> int:
        return sum(self.x) - sum(self.d)

    def total_degree(self) -> int:
        return len(self.xi) + sum(self.x) + sum(self.d)

    def is_unit(self) -> bool:
        return not self.xi and not any(self.x) and not any(self.d)

    def sort_key(self) -> tuple:
        return (self.total_degree(), self.xi, self.x, self.d)


def _xi_merge(a: Tuple[int, ...], b: Tuple[int, ...]):
    """Merge two increasing index tuples; returns (sign, merged) or None."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    out: List[int] = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return None  # xi^k xi^k = 0
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            # b[j] hops over the remaining entries of a
            if (len(a) - i) % 2:
                sign = -sign
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, tuple(out)


def _weyl_cross(r: Tuple[int, ...], q: Tuple[int, ...]):
    """Expand d^r x^q = sum_k prod_i C(r_i,k_i) C(q_i,k_i) k_i!  x^(q-k) d^(r-k)."""
    ranges = [range(min(ri, qi) + 1) for ri, qi in zip(r, q)]
    for k in itertools.product(*ranges):
        coeff = 1
        for ri, qi, ki in zip(r, q, k):
            if ki:
                coeff *= comb(ri, ki) * comb(qi, ki) * factorial(ki)
        yield k, coeff


def _mono_mul(m1: CalcMonomial, m2: CalcMonomial):
    """Normally order the product m1*m2; yields (monomial, integer coeff)."""
    merged = _xi_merge(m1.xi, m2.xi)
    if merged is None:
        return
    # xi commutes with x and d, so only the xi-xi reordering contributes a sign
    sign, xi = merged
    for k, coeff in _weyl_cross(m1.d, m2.x):
        x = tuple(p + q - ki for p, q, ki in zip(m1.x, m2.x, k))
        d = tuple(r + s - ki for r, s, ki in zip(m1.d, m2.d, k))
        yield CalcMonomial(xi, x, d), sign * coeff


def _mono_involution(m: CalcMonomial):
    """Expand (xi^A x^p d^r)^* in the normally ordered basis.

    Reversal gives (-d)^r x^p xi^A up to the sign of reversing the xi word;
    the d-x block is then reordered with the Weyl relation.
    """
    sign = (-1) ** sum(m.d)
    la = len(m.xi)
    if (la * (la - 1) // 2) % 2:
        sign = -sign
    for k, coeff in _weyl_cross(m.d, m.x):
        x = tuple(p - ki for p, ki in zip(m.x, k))
        d = tuple(r - ki for r, ki in zip(m.d, k))
        yield CalcMonomial(m.xi, x, d), sign * coeff


class CalculusAlgebra:
    """Factory/context for elements over a fixed frame and scalar ring."""

    __slots__ = ("ring", "frame")

    def __init__(self, ring: ScalarRing, frame: Frame):
        self.ring = ring
        self.frame = frame

    @property
    def n(self) -> int:
        return self.frame.n

    # -- constructors -------------------------------------------------------
    def element(self, terms: Dict[CalcMonomial, Scalar]) -> "CalcElement":
        return CalcElement(self, {m: s for m, s in terms.items() if s})

    @property
    def zero(self) -> "CalcElement":
        return CalcElement(self, {})

    @property
    def one(self) -> "CalcElement":
        unit = CalcMonomial((), (0,) * self.n, (0,) * self.n)
        return CalcElement(self, {unit: self.ring.one})

    def _basis(self, kind: str, i: int) -> CalcMonomial:
        if not 1 <= i <= self.n:
            raise ConfigurationError(f"generator index {i} out of range 1..{self.n}")
        zero = (0,) * self.n
        e = tuple(1 if j == i - 1 else 0 for j in range(self.n))
        if kind == "x":
            return CalcMonomial((), e, zero)
        if kind == "xi":
            return CalcMonomial((i,), zero, zero)
        return CalcMonomial((), zero, e)

    def x(self, i: int) -> "CalcElement":
        return CalcElement(self, {self._basis("x", i): self.ring.one})

    def xi(self, i: int) -> "CalcElement":
        return CalcElement(self, {self._basis("xi", i): self.ring.one})

    def d(self, i: int) -> "CalcElement":
        return CalcElement(self, {self._basis("d", i): self.ring.one})

    def monomial(self, xi: Sequence[int] = (), x: Sequence[int] = (),
                 d: Sequence[int] = (), coeff: Optional[Scalar] = None) -> "CalcElement":
        x = tuple(x) if x else (0,) * self.n
        d = tuple(d) if d else (0,) * self.n
        xi = tuple(sorted(xi))
        if len(set(xi)) != len(xi):
            return self.zero
        m = CalcMonomial(xi, x, d)
        return CalcElement(self, {m: coeff if coeff is not None else self.ring.one})

    def __eq__(self, other) -> bool:
        return (isinstance(other, CalculusAlgebra)
                and self.ring == other.ring and self.frame == other.frame)

    def __hash__(self) -> int:
        return hash((self.ring, self.frame))

    def __repr__(self) -> str:
        return f"CalculusAlgebra(n={self.n}, frame={self.frame.name!r}, ring={self.ring!r})"


class CalcElement:
    """Finite Scalar-linear combination of normally ordered monomials."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: CalculusAlgebra, terms: Dict[CalcMonomial, Scalar]):
        self.alg = alg
        self.terms = terms

    def _check(self, other: "CalcElement") -> None:
        if self.alg != other.alg:
            raise ValueError("elements from different algebras")

    # -- linear structure ----------------------------------------------------
    def __add__(self, other: "CalcElement") -> "CalcElement":
        self._check(other)
        terms = dict(self.terms)
        for m, s in other.terms.items():
            acc = terms.get(m)
            acc = s if acc is None else acc + s
            if acc:
                terms[m] = acc
            else:
                terms.pop(m, None)
        return CalcElement(self.alg, terms)

    def __sub__(self, other: "CalcElement") -> "CalcElement":
        return self + (-other)

    def __neg__(self) -> "CalcElement":
        return CalcElement(self.alg, {m: -s for m, s in self.terms.items()})

    def scale(self, scalar) -> "CalcElement":
        if isinstance(scalar, (int,)) or isinstance(scalar, GaussianRational):
            scalar = self.alg.ring.monomial(scalar)
        if not isinstance(scalar, Scalar):
            raise TypeError("scale expects a Scalar, int or GaussianRational")
        if not scalar:
            return self.alg.zero
        terms = {}
        for m, s in self.terms.items():
            v = scalar * s
            if v:
                terms[m] = v
        return CalcElement(self.alg, terms)

    def __rmul__(self, scalar):
        if isinstance(scalar, (int, Scalar, GaussianRational)):
            return self.scale(scalar)
        return NotImplemented

    # -- multiplication ------------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, (int, Scalar, GaussianRational)):
            return self.scale(other)
        self._check(other)
        terms: Dict[CalcMonomial, Scalar] = {}
        for m1, s1 in self.terms.items():
            for m2, s2 in other.terms.items():
                s12 = s1 * s2
                if not s12:
                    continue
                for m, icoeff in _mono_mul(m1, m2):
                    v = s12 * icoeff
                    acc = terms.get(m)
                    acc = v if acc is None else acc + v
                    if acc:
                        terms[m] = acc
                    else:
                        terms.pop(m, None)
        return CalcElement(self.alg, terms)

    def __pow__(self, k: int) -> "CalcElement":
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = self.alg.one
        for _ in range(k):
            out = out * self
        return out

    def commutator(self, other: "CalcElement") -> "CalcElement":
        return self * other - other * self

    # -- involution ----------------------------------------------------------
    def involution(self) -> "CalcElement":
        """The antilinear anti-automorphism fixing x, xi and negating d."""
        terms: Dict[CalcMonomial, Scalar] = {}
        for m, s in self.terms.items():
            sc = s.conjugate()
            for mm, icoeff in _mono_involution(m):
                v = sc * icoeff
                acc = terms.get(mm)
                acc = v if acc is None else acc + v
                if acc:
                    terms[mm] = acc
                else:
                    terms.pop(mm, None)
        return CalcElement(self.alg, terms)

    # -- gradings and filtrations ---------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, CalcElement)
                and self.alg == other.alg and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.alg, frozenset(self.terms.items())))

    def form_degree(self) -> Optional[int]:
        """Common xi-degree, or None if inhomogeneous / zero."""
        degs = {m.form_degree() for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def sharp_degree(self) -> Optional[int]:
        degs = {m.sharp_degree() for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def truncate(self, order: int) -> "CalcElement":
        terms = {}
        for m, s in self.terms.items():
            st = s.truncate(order)
            if st:
                terms[m] = st
        return CalcElement(self.alg, terms)

    def nu_component(self, k: int) -> "CalcElement":
        terms = {}
        for m, s in self.terms.items():
            sk = s.nu_component(k)
            if sk:
                terms[m] = sk
        return CalcElement(self.alg, terms)

    def nu_degree(self) -> int:
        return max((s.nu_degree() for s in self.terms.values()), default=-1)

    def max_total_degree(self) -> int:
        return max((m.total_degree() for m in self.terms), default=0)

    # -- weight grading --------------------------------------------------------
    def monomial_weight(self, m: CalcMonomial) -> int:
        w = self.alg.frame.weights
        if w is None:
            raise ConfigurationError(
                f"frame {self.alg.frame.name!r} carries no weight grading")
        total = sum(w[i - 1] for i in m.xi)
        total += sum(wi * p for wi, p in zip(w, m.x))
        total -= sum(wi * r for wi, r in zip(w, m.d))
        return total

    def weight_decompose(self) -> Dict[int, "CalcElement"]:
        """Split into H-weight homogeneous pieces (weight-graded frames only)."""
        parts: Dict[int, Dict[CalcMonomial, Scalar]] = {}
        for m, s in self.terms.items():
            parts.setdefault(self.monomial_weight(m), {})[m] = s
        return {w: CalcElement(self.alg, t) for w, t in sorted(parts.items())}

    # -- structural helpers ------------------------------------------------------
    def is_function(self) -> bool:
        return all(not m.xi and not any(m.d) for m in self.terms)

    def vector_components(self) -> List["CalcElement"]:
        """Write a vector field as [f_1, .., f_n] with X = sum f_i d_i."""
        comps: List[Dict[CalcMonomial, Scalar]] = [dict() for _ in range(self.alg.n)]
        zero = (0,) * self.alg.n
        for m, s in self.terms.items():
            if m.xi or sum(m.d) != 1:
                raise ValueError("not a vector field with function coefficients")
            i = m.d.index(1)
            comps[i][CalcMonomial((), m.x, zero)] = s
        return [CalcElement(self.alg, t) for t in comps]

    def form_components(self) -> List["CalcElement"]:
        """Write a one-form as [w_1, .., w_n] with omega = sum w_i xi^i."""
        comps: List[Dict[CalcMonomial, Scalar]] = [dict() for _ in range(self.alg.n)]
        zero = (0,) * self.alg.n
        for m, s in self.terms.items():
            if any(m.d) or len(m.xi) != 1:
                raise ValueError("not a one-form with function coefficients")
            i = m.xi[0] - 1
            comps[i][CalcMonomial((), m.x, zero)] = s
        return [CalcElement(self.alg, t) for t in comps]

    def formal_partial(self, i: int) -> "CalcElement":
        """Formal derivative in x^i (for building gradients of functions)."""
        terms: Dict[CalcMonomial, Scalar] = {}
        for m, s in self.terms.items():
            p = m.x[i - 1]
            if not p:
                continue
            x = tuple(q - 1 if j == i - 1 else q for j, q in enumerate(m.x))
            mm = CalcMonomial(m.xi, x, m.d)
            v = s * p
            acc = terms.get(mm)
            acc = v if acc is None else acc + v
            if acc:
                terms[mm] = acc
            else:
                terms.pop(mm, None)
        return CalcElement(self.alg, terms)

    def apply_as_vector(self, f: "CalcElement") -> "CalcElement":
        """X(f) for a vector field X and function f (Weyl-algebra commutator)."""
        return self.commutator(f)

    # -- frame transport ---------------------------------------------------------
    def map_generators(self, target: CalculusAlgebra,
                       x_images: Sequence["CalcElement"],
                       xi_images: Sequence["CalcElement"],
                       d_images: Sequence["CalcElement"]) -> "CalcElement":
        """Algebra map determined by generator images (must preserve relations)."""
        out = target.zero
        for m, s in self.terms.items():
            acc = target.one.scale(s)
            for i in m.xi:
                acc = acc * xi_images[i - 1]
            for i, p in enumerate(m.x):
                for _ in range(p):
                    acc = acc * x_images[i]
            for i, r in enumerate(m.d):
                for _ in range(r):
                    acc = acc * d_images[i]
            out = out + acc
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def to_weight_frame(self, target: "CalculusAlgebra") -> "CalcElement":
        return cartesian_to_weight(self, target)

    def to_cartesian_frame(self, target: "CalculusAlgebra") -> "CalcElement":
        return weight_to_cartesian(self, target)

    def __repr__(self) -> str:
        if not self.terms:
            return "CalcElement(0)"
        bits = []
        for m, s in self.sorted_terms():
            fac = []
            for i in m.xi:
                fac.append(self.alg.frame.xi_labels[i - 1])
            for i, p in enumerate(m.x):
                if p:
                    lab = self.alg.frame.x_labels[i]
                    fac.append(lab if p == 1 else f"{lab}^{p}")
            for i, r in enumerate(m.d):
                if r:
                    lab = self.alg.frame.d_labels[i]
                    fac.append(lab if r == 1 else f"{lab}^{r}")
            mono = " ".join(fac) if fac else "1"
            bits.append(f"({s!r})*{mono}")
        return "CalcElement[" + " + ".join(bits) + "]"


def weight_to_cartesian(elt: CalcElement, cart: CalculusAlgebra) -> CalcElement:
    """Transport from the (+,-,0) frame:  y± = x1 ± t x3,  y0 = x2  (t = sqrtB)."""
    if elt.alg.frame.name != "weight" or cart.frame.name != "cartesian":
        raise ConfigurationError("weight_to_cartesian expects weight -> cartesian")
    ring = cart.ring
    t, tinv = ring.sqrt_b(), ring.sqrt_b().inverse()
    half = ring.rational(Fraction(1, 2))
    x_images = [cart.x(1) + cart.x(3).scale(t), cart.x(1) - cart.x(3).scale(t), cart.x(2)]
    xi_images = [cart.xi(1) + cart.xi(3).scale(t), cart.xi(1) - cart.xi(3).scale(t), cart.xi(2)]
    d_images = [(cart.d(1) + cart.d(3).scale(tinv)).scale(half),
                (cart.d(1) - cart.d(3).scale(tinv)).scale(half),
                cart.d(2)]
    return elt.map_generators(cart, x_images, xi_images, d_images)


def cartesian_to_weight(elt: CalcElement, w: CalculusAlgebra) -> CalcElement:
    """Inverse transport:  x1 = (y+ + y-)/2,  x2 = y0,  x3 = (y+ - y-)/(2t)."""
    if elt.alg.frame.name != "cartesian" or w.frame.name != "weight":
        raise ConfigurationError("cartesian_to_weight expects cartesian -> weight")
    ring = w.ring
    t, tinv = ring.sqrt_b(), ring.sqrt_b().inverse()
    half = ring.rational(Fraction(1, 2))
    x_images = [(w.x(1) + w.x(2)).scale(half), w.x(3),
                (w.x(1) - w.x(2)).scale(half * tinv)]
    xi_images = [(w.xi(1) + w.xi(2)).scale(half), w.xi(3),
                 (w.xi(1) - w.xi(2)).scale(half * tinv)]
    d_images = [w.d(1) + w.d(2), w.d(3), (w.d(1) - w.d(2)).scale(t)]
    return elt.map_generators(w, x_images, xi_images, d_images)
