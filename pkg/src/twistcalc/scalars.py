"""Exact coefficient arithmetic for the deformation engine.

Scalars live in the commutative ring

    Q(i)[nu] [s, s^-1] [t, t^-1] [c, c^-1]

where ``nu`` is the formal deformation parameter (non-negative powers only),
``s`` and ``t`` are square roots of the quadric shape parameters (s^2 = a,
t^2 = b) and ``c`` is the central level of the quadric family, kept symbolic
so that 1/(2c) is exact.

Each of ``s`` and ``t`` has two modes.  If the ring is constructed with a
concrete rational value for ``a`` (resp. ``b``), powers of ``s`` (``t``) are
normalised into {0, 1} using s^2 = a, so e.g. s^-1 becomes (1/a) s.  When the
numeric value is a perfect square of a rational (a=1, a=4, a=9/4, ...) the
surd resolves completely: every power of ``s`` becomes the exact rational
sqrt(a)^k and the generator disappears from the keys.  With ``a=None`` the
generator stays formal and exponents range over all of Z.

Everything is exact: coefficients are Gaussian rationals built on
:class:`fractions.Fraction`.  There is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Iterator, Optional, Tuple, Union

RatLike = Union[int, Fraction]

__all__ = ["GaussianRational", "Scalar", "ScalarRing", "GR_ZERO", "GR_ONE"]


def _rational_sqrt(v: Optional[Fraction]) -> Optional[Fraction]:
    """Exact square root of a positive rational, or None if irrational/absent."""
    if v is None:
        return None
    p, q = isqrt(v.numerator), isqrt(v.denominator)
    if p * p == v.numerator and q * q == v.denominator:
        return Fraction(p, q)
    return None


class GaussianRational:
    """An element of Q(i): re + im*i with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RatLike = 0, im: RatLike = 0):
        object.__setattr__(self, "re", re if isinstance(re, Fraction) else Fraction(re))
        object.__setattr__(self, "im", im if isinstance(im, Fraction) else Fraction(im))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("GaussianRational is immutable")

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: Union["GaussianRational", RatLike]) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return GaussianRational(self.re * other, self.im * other)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other: "GaussianRational") -> "GaussianRational":
        return self * other.inverse()

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # -- structure ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*I" if self.im != 1 else "I"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        istr = "I" if mag == 1 else f"{mag}*I"
        return f"({self.re}{sign}{istr})"


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)

# Exponent key layout: (k_nu, k_s, k_t, k_c).
Key = Tuple[int, int, int, int]


class ScalarRing:
    """Configuration of the coefficient ring (surd modes for s and t).

    ``a`` / ``b``: positive rationals to enable numeric surd folding, or None
    to keep sqrtA / sqrtB fully symbolic (Laurent) generators.
    """

    __slots__ = ("a", "b", "_s_val", "_t_val")

    def __init__(self, a: Optional[RatLike] = None, b: Optional[RatLike] = None):
        self.a = None if a is None else Fraction(a)
        self.b = None if b is None else Fraction(b)
        if self.a is not None and self.a <= 0:
            raise ValueError("shape parameter a must be positive")
        if self.b is not None and self.b <= 0:
            raise ValueError("shape parameter b must be positive")
        self._s_val = _rational_sqrt(self.a)
        self._t_val = _rational_sqrt(self.b)

    # -- canonicalisation ---------------------------------------------------
    def _fold(self, key: Key, coeff: GaussianRational) -> Tuple[Key, GaussianRational]:
        knu, ks, kt, kc = key
        if ks and self._s_val is not None:
            coeff = coeff * (self._s_val ** ks)
            ks = 0
        elif self.a is not None and ks not in (0, 1):
            q, ks = divmod(ks, 2)
            coeff = coeff * (self.a ** q)
        if kt and self._t_val is not None:
            coeff = coeff * (self._t_val ** kt)
            kt = 0
        elif self.b is not None and kt not in (0, 1):
            q, kt = divmod(kt, 2)
            coeff = coeff * (self.b ** q)
        return (knu, ks, kt, kc), coeff

    def build(self, items: Iterable[Tuple[Key, GaussianRational]]) -> "Scalar":
        terms: dict = {}
        for key, coeff in items:
            if key[0] < 0:
                raise ValueError("negative power of nu")
            key, coeff = self._fold(key, coeff)
            acc = terms.get(key)
            acc = coeff if acc is None else acc + coeff
            if acc:
                terms[key] = acc
            else:
                terms.pop(key, None)
        return Scalar(self, terms)

    # -- constructors -------------------------------------------------------
    @property
    def zero(self) -> "Scalar":
        return Scalar(self, {})

    @property
    def one(self) -> "Scalar":
        return Scalar(self, {(0, 0, 0, 0): GR_ONE})

    @property
    def i(self) -> "Scalar":
        return Scalar(self, {(0, 0, 0, 0): GaussianRational(0, 1)})

    def rational(self, p: RatLike) -> "Scalar":
        v = Fraction(p)
        return Scalar(self, {(0, 0, 0, 0): GaussianRational(v)} if v else {})

    def gauss(self, re: RatLike, im: RatLike = 0) -> "Scalar":
        g = GaussianRational(re, im)
        return Scalar(self, {(0, 0, 0, 0): g} if g else {})

    def monomial(self, coeff: Union[GaussianRational, RatLike] = 1,
                 knu: int = 0, ks: int = 0, kt: int = 0, kc: int = 0) -> "Scalar":
        if not isinstance(coeff, GaussianRational):
            coeff = GaussianRational(coeff)
        return self.build([((knu, ks, kt, kc), coeff)])

    def nu(self, k: int = 1) -> "Scalar":
        return self.monomial(1, knu=k)

    def sqrt_a(self, k: int = 1) -> "Scalar":
        return self.monomial(1, ks=k)

    def sqrt_b(self, k: int = 1) -> "Scalar":
        return self.monomial(1, kt=k)

    def c_level(self, k: int = 1) -> "Scalar":
        return self.monomial(1, kc=k)

    # -- identity -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, ScalarRing) and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __repr__(self) -> str:
        return f"ScalarRing(a={self.a}, b={self.b})"


class Scalar:
    """An exact element of the coefficient ring (immutable)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: ScalarRing, terms: dict):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Scalar is immutable")

    def _check(self, other: "Scalar") -> None:
        if self.ring != other.ring:
            raise ValueError("scalars from different rings")

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            acc = terms.get(key)
            acc = coeff if acc is None else acc + coeff
            if acc:
                terms[key] = acc
            else:
                terms.pop(key, None)
        return Scalar(self.ring, terms)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self + (-other)

    def __neg__(self) -> "Scalar":
        return Scalar(self.ring, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other: Union["Scalar", GaussianRational, RatLike]) -> "Scalar":
        if not isinstance(other, Scalar):
            if not isinstance(other, GaussianRational):
                other = GaussianRational(other)
            if not other:
                return Scalar(self.ring, {})
            return Scalar(self.ring, {k: v * other for k, v in self.terms.items()})
        self._check(other)
        items = []
        for (k1, kv1) in self.terms.items():
            for (k2, kv2) in other.terms.items():
                items.append(((k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2], k1[3] + k2[3]),
                              kv1 * kv2))
        return self.ring.build(items)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "Scalar":
        """Inverse of a single-term scalar (unit monomial)."""
        if len(self.terms) != 1:
            raise ZeroDivisionError("only unit monomials are invertible exactly")
        ((knu, ks, kt, kc), coeff), = self.terms.items()
        if knu != 0:
            raise ZeroDivisionError("positive powers of nu are not invertible")
        return self.ring.build([(((0, -ks, -kt, -kc)), coeff.inverse())])

    def conjugate(self) -> "Scalar":
        """Complex conjugation i -> -i (nu, s, t, c are real)."""
        return Scalar(self.ring, {k: v.conjugate() for k, v in self.terms.items()})

    # -- nu-filtration ------------------------------------------------------
    def truncate(self, order: int) -> "Scalar":
        """Drop all terms of nu-degree strictly above `order`."""
        return Scalar(self.ring, {k: v for k, v in self.terms.items() if k[0] <= order})

    def nu_component(self, k: int) -> "Scalar":
        return Scalar(self.ring, {key: v for key, v in self.terms.items() if key[0] == k})

    def nu_degree(self) -> int:
        """Largest nu-exponent present (-1 for the zero scalar)."""
        return max((k[0] for k in self.terms), default=-1)

    def nu_valuation(self) -> int:
        """Smallest nu-exponent present (-1 for the zero scalar)."""
        return min((k[0] for k in self.terms), default=-1)

    # -- structure ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.rational(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def sorted_terms(self) -> Iterator[Tuple[Key, GaussianRational]]:
        return iter(sorted(self.terms.items()))

    def eval_at(self, nu: RatLike, s: RatLike = 1, t: RatLike = 1,
                c: RatLike = 1) -> GaussianRational:
        """Exact evaluation at rational points (oracle helper).

        In numeric surd mode the point must satisfy s^2 = a, t^2 = b.
        """
        s, t, c = Fraction(s), Fraction(t), Fraction(c)
        if self.ring.a is not None and s * s != self.ring.a:
            raise ValueError("s^2 != a at evaluation point")
        if self.ring.b is not None and t * t != self.ring.b:
            raise ValueError("t^2 != b at evaluation point")
        nu = Fraction(nu)
        total = GR_ZERO
        for (knu, ks, kt, kc), coeff in self.terms.items():
            total = total + coeff * (nu ** knu * s ** ks * t ** kt * c ** kc)
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "Scalar(0)"
        bits = []
        for (knu, ks, kt, kc), coeff in self.sorted_terms():
            pieces = [str(coeff)]
            for sym, k in (("nu", knu), ("s", ks), ("t", kt), ("c", kc)):
                if k == 1:
                    pieces.append(sym)
                elif k:
                    pieces.append(f"{sym}^{k}")
            bits.append("*".join(pieces))
        return "Scalar(" + " + ".join(bits) + ")"
