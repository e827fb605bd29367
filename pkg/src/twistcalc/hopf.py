"""Enveloping algebras of coordinate symmetries and their Hopf structure.

A :class:`LieAlgebraSpec` records a finite-dimensional Lie algebra g together
with its affine action on coordinates: for each generator g one (n+1) x n
matrix tau with

    g |> x^i  =  sum_mu  x^mu tau[g][mu][i]        (x^0 = the unit)

PBW monomials are exponent tuples in the declared generator order; products
are straightened via the commutation relations with memoisation on the spec.

The Hopf structure is the standard one on U(g) (primitive generators):
coproduct, counit, antipode, plus the antilinear *-structure given by a
linear star map on generators.  The action on the full differential-operator
algebra extends the coordinate action as a module algebra: forms transform
like coordinates without the affine shift, derivations by the
antipode-transposed linear block, and everything else by the Leibniz rule.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .calculus import CalcElement, CalculusAlgebra
from .errors import ConfigurationError
from .scalars import GaussianRational, Scalar, ScalarRing

__all__ = ["LieAlgebraSpec", "UEAElement", "UEATensor"]

Exps = Tuple[int, ...]


def _scalar_to_json(s: Scalar) -> list:
    return [[list(key), [str(v.re), str(v.im)]] for key, v in s.sorted_terms()]


def _scalar_from_json(ring: ScalarRing, data: list) -> Scalar:
    items = []
    for key, (re, im) in data:
        items.append((tuple(key), GaussianRational(Fraction(re), Fraction(im))))
    return ring.build(items)


class LieAlgebraSpec:
    """Lie algebra with affine coordinate action and *-structure."""

    def __init__(self, ring: ScalarRing, names: Sequence[str], n: int,
                 brackets: Dict[Tuple[int, int], Dict[int, Scalar]],
                 tau: Sequence[Sequence[Sequence[Scalar]]],
                 star_signs: Optional[Sequence[int]] = None):
        self.ring = ring
        self.names = tuple(names)
        self.n = n
        self.dim = len(self.names)
        # brackets stored for i < j only: [e_i, e_j] = sum_k brackets[i,j][k] e_k
        self.brackets = {}
        for (i, j), comps in brackets.items():
            if not i < j:
                raise ConfigurationError("store brackets for i < j only")
            self.brackets[(i, j)] = {k: s for k, s in comps.items() if s}
        # tau[g] is (n+1) x n: rows mu = 0..n, columns i = 1..n
        self.tau = [[list(row) for row in mat] for mat in tau]
        for mat in self.tau:
            if len(mat) != n + 1 or any(len(row) != n for row in mat):
                raise ConfigurationError("tau matrices must be (n+1) x n")
        # e_alpha^* = star_signs[alpha] * e_alpha (anti-Hermitian generators: -1)
        self.star_signs = tuple(star_signs) if star_signs else (-1,) * self.dim
        self._word_cache: Dict[Tuple[int, ...], Dict[Exps, Scalar]] = {}

    # -- identity ------------------------------------------------------------
    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ConfigurationError(f"unknown generator {name!r}") from None

    def bracket(self, i: int, j: int) -> Dict[int, Scalar]:
        """[e_i, e_j] as a map generator-index -> Scalar."""
        if i == j:
            return {}
        if i < j:
            return self.brackets.get((i, j), {})
        return {k: -s for k, s in self.brackets.get((j, i), {}).items()}

    # -- PBW straightening -----------------------------------------------------
    def _straighten(self, word: Tuple[int, ...]) -> Dict[Exps, Scalar]:
        cached = self._word_cache.get(word)
        if cached is not None:
            return cached
        pos = -1
        for p in range(len(word) - 1):
            if word[p] > word[p + 1]:
                pos = p
                break
        if pos < 0:
            exps = [0] * self.dim
            for letter in word:
                exps[letter] += 1
            result = {tuple(exps): self.ring.one}
        else:
            i, j = word[pos], word[pos + 1]
            result: Dict[Exps, Scalar] = {}
            swapped = self._straighten(word[:pos] + (j, i) + word[pos + 2:])
            for e, s in swapped.items():
                _sacc(result, e, s)
            for k, coeff in self.bracket(i, j).items():
                mid = self._straighten(word[:pos] + (k,) + word[pos + 2:])
                for e, s in mid.items():
                    _sacc(result, e, coeff * s)
        self._word_cache[word] = result
        return result

    def _word(self, exps: Exps) -> Tuple[int, ...]:
        out: List[int] = []
        for idx, k in enumerate(exps):
            out.extend([idx] * k)
        return tuple(out)

    def mono_mul(self, e1: Exps, e2: Exps) -> Dict[Exps, Scalar]:
        return self._straighten(self._word(e1) + self._word(e2))

    # -- element constructors ----------------------------------------------------
    @property
    def unit_exps(self) -> Exps:
        return (0,) * self.dim

    @property
    def one(self) -> "UEAElement":
        return UEAElement(self, {self.unit_exps: self.ring.one})

    @property
    def zero(self) -> "UEAElement":
        return UEAElement(self, {})

    def gen(self, name_or_index) -> "UEAElement":
        idx = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        exps = tuple(1 if k == idx else 0 for k in range(self.dim))
        return UEAElement(self, {exps: self.ring.one})

    def element(self, terms: Dict[Exps, Scalar]) -> "UEAElement":
        return UEAElement(self, {e: s for e, s in terms.items() if s})

    def tensor(self, rank: int, terms: Dict[Tuple[Exps, ...], Scalar]) -> "UEATensor":
        return UEATensor(self, rank, {k: s for k, s in terms.items() if s})

    def tensor_unit(self, rank: int = 2) -> "UEATensor":
        return UEATensor(self, rank, {(self.unit_exps,) * rank: self.ring.one})

    # -- structural checks ---------------------------------------------------------
    def check_jacobi(self) -> bool:
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    total = self.zero
                    for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                        inner = self.bracket(b, c)
                        for m, s in inner.items():
                            for r, s2 in self.bracket(a, m).items():
                                total = total + self.gen(r).scale(s * s2)
                    if total:
                        return False
        return True

    def _rho(self, idx: int) -> List[List[Scalar]]:
        """(n+1)x(n+1) matrix of the affine coordinate representation."""
        zero = self.ring.zero
        mat = [[zero for _ in range(self.n + 1)] for _ in range(self.n + 1)]
        for mu in range(self.n + 1):
            for i in range(self.n):
                mat[mu][i + 1] = self.tau[idx][mu][i]
        return mat

    def check_tau_representation(self) -> bool:
        """rho([g,h]) must equal rho(g) rho(h) - rho(h) rho(g)."""
        mats = [self._rho(idx) for idx in range(self.dim)]
        size = self.n + 1

        def matmul(A, B):
            return [[sum((A[m][k] * B[k][i] for k in range(size)), self.ring.zero)
                     for i in range(size)] for m in range(size)]

        for i in range(self.dim):
            for j in range(self.dim):
                comm = matmul(mats[i], mats[j])
                anti = matmul(mats[j], mats[i])
                want = [[self.ring.zero for _ in range(size)] for _ in range(size)]
                for k, s in self.bracket(i, j).items():
                    for mu in range(size):
                        for nu_ in range(size):
                            want[mu][nu_] = want[mu][nu_] + s * mats[k][mu][nu_]
                for mu in range(size):
                    for nu_ in range(size):
                        if comm[mu][nu_] - anti[mu][nu_] != want[mu][nu_]:
                            return False
        return True

    def check_star_structure(self) -> bool:
        """([g,h])^* = [h^*, g^*] for the sign-diagonal star map."""
        for i in range(self.dim):
            for j in range(self.dim):
                lhs = {k: s.conjugate() * self.star_signs[k]
                       for k, s in self.bracket(i, j).items()}
                sgn = self.star_signs[j] * self.star_signs[i]
                rhs = {k: s * sgn for k, s in self.bracket(j, i).items()}
                keys = set(lhs) | set(rhs)
                for k in keys:
                    if lhs.get(k, self.ring.zero) != rhs.get(k, self.ring.zero):
                        return False
        return True

    # -- action on the differential calculus ------------------------------------------
    def act_gen(self, idx: int, elt: CalcElement) -> CalcElement:
        """Action of a single Lie generator: a derivation of the calculus."""
        alg = elt.alg
        if alg.n != self.n:
            raise ConfigurationError("algebra dimension mismatch")
        tau = self.tau[idx]
        x_img = [sum((alg.x(mu).scale(tau[mu][i]) for mu in range(1, self.n + 1)),
                     alg.one.scale(tau[0][i]))
                 for i in range(self.n)]
        xi_img = [sum((alg.xi(mu).scale(tau[mu][i]) for mu in range(1, self.n + 1)),
                      alg.zero)
                  for i in range(self.n)]
        d_img = [sum((alg.d(j).scale(-tau[i + 1][j - 1]) for j in range(1, self.n + 1)),
                     alg.zero)
                 for i in range(self.n)]
        out = alg.zero
        for m, s in elt.terms.items():
            factors: List[CalcElement] = []
            for i in m.xi:
                factors.append(alg.xi(i))
            for i, p in enumerate(m.x):
                factors.extend([alg.x(i + 1)] * p)
            for i, r in enumerate(m.d):
                factors.extend([alg.d(i + 1)] * r)
            images: List[CalcElement] = []
            for i in m.xi:
                images.append(xi_img[i - 1])
            for i, p in enumerate(m.x):
                images.extend([x_img[i]] * p)
            for i, r in enumerate(m.d):
                images.extend([d_img[i]] * r)
            for pos in range(len(factors)):
                piece = alg.one.scale(s)
                for q, f in enumerate(factors):
                    piece = piece * (images[pos] if q == pos else f)
                out = out + piece
        return out

    def act(self, u: "UEAElement", elt: CalcElement) -> CalcElement:
        """Left action of an enveloping-algebra element on the calculus."""
        if u.alg is not self:
            raise ConfigurationError("element from a different algebra")
        alg = elt.alg
        out = alg.zero
        for exps, s in u.terms.items():
            acc = elt
            for letter in reversed(self._word(exps)):
                acc = self.act_gen(letter, acc)
                if not acc:
                    break
            out = out + acc.scale(s)
        return out

    def realized_field(self, idx_or_name, alg: CalculusAlgebra) -> CalcElement:
        """The vector field sum_i (g |> x^i) d_i implementing the generator."""
        idx = idx_or_name if isinstance(idx_or_name, int) else self.index(idx_or_name)
        tau = self.tau[idx]
        out = alg.zero
        for i in range(self.n):
            coeff = sum((alg.x(mu).scale(tau[mu][i]) for mu in range(1, self.n + 1)),
                        alg.one.scale(tau[0][i]))
            out = out + coeff * alg.d(i + 1)
        return out

    # -- JSON round trip ------------------------------------------------------------
    def to_json_dict(self) -> dict:
        return {
            "names": list(self.names),
            "n": self.n,
            "ring": {"a": None if self.ring.a is None else str(self.ring.a),
                     "b": None if self.ring.b is None else str(self.ring.b)},
            "brackets": [[list(key), [[k, _scalar_to_json(s)] for k, s in comps.items()]]
                         for key, comps in sorted(self.brackets.items())],
            "tau": [[[_scalar_to_json(entry) for entry in row] for row in mat]
                    for mat in self.tau],
            "star_signs": list(self.star_signs),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "LieAlgebraSpec":
        ring_cfg = data.get("ring", {})
        a = ring_cfg.get("a")
        b = ring_cfg.get("b")
        ring = ScalarRing(None if a is None else Fraction(a),
                          None if b is None else Fraction(b))
        brackets = {}
        for key, comps in data["brackets"]:
            brackets[tuple(key)] = {k: _scalar_from_json(ring, s) for k, s in comps}
        tau = [[[_scalar_from_json(ring, entry) for entry in row] for row in mat]
               for mat in data["tau"]]
        return cls(ring, data["names"], data["n"], brackets, tau,
                   data.get("star_signs"))


def _sacc(store: dict, key, value: Scalar) -> None:
    acc = store.get(key)
    acc = value if acc is None else acc + value
    if acc:
        store[key] = acc
    else:
        store.pop(key, None)


class UEAElement:
    """Element of U(g) in the PBW basis of the declared generator order."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: LieAlgebraSpec, terms: Dict[Exps, Scalar]):
        self.alg = alg
        self.terms = terms

    def _check(self, other: "UEAElement") -> None:
        if self.alg is not other.alg:
            raise ValueError("elements from different enveloping algebras")

    def __add__(self, other: "UEAElement") -> "UEAElement":
        self._check(other)
        terms = dict(self.terms)
        for e, s in other.terms.items():
            _sacc(terms, e, s)
        return UEAElement(self.alg, terms)

    def __sub__(self, other: "UEAElement") -> "UEAElement":
        return self + (-other)

    def __neg__(self) -> "UEAElement":
        return UEAElement(self.alg, {e: -s for e, s in self.terms.items()})

    def scale(self, scalar) -> "UEAElement":
        if isinstance(scalar, (int, GaussianRational)):
            scalar = self.alg.ring.monomial(scalar)
        if not scalar:
            return self.alg.zero
        return UEAElement(self.alg, {e: scalar * s for e, s in self.terms.items()})

    def __mul__(self, other: "UEAElement") -> "UEAElement":
        if isinstance(other, (int, Scalar, GaussianRational)):
            return self.scale(other)
        self._check(other)
        terms: Dict[Exps, Scalar] = {}
        for e1, s1 in self.terms.items():
            for e2, s2 in other.terms.items():
                s12 = s1 * s2
                if not s12:
                    continue
                for e, s in self.alg.mono_mul(e1, e2).items():
                    _sacc(terms, e, s12 * s)
        return UEAElement(self.alg, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UEAElement":
        out = self.alg.one
        for _ in range(k):
            out = out * self
        return out

    def commutator(self, other: "UEAElement") -> "UEAElement":
        return self * other - other * self

    # -- Hopf structure ------------------------------------------------------
    def counit(self) -> Scalar:
        return self.terms.get(self.alg.unit_exps, self.alg.ring.zero)

    def coproduct(self) -> "UEATensor":
        alg = self.alg
        out: Dict[Tuple[Exps, Exps], Scalar] = {}
        for exps, s in self.terms.items():
            pairs: Dict[Tuple[Exps, Exps], Scalar] = {
                (alg.unit_exps, alg.unit_exps): alg.ring.one}
            for idx, k in enumerate(exps):
                if not k:
                    continue
                new_pairs: Dict[Tuple[Exps, Exps], Scalar] = {}
                for (l, r), coeff in pairs.items():
                    for j in range(k + 1):
                        ln = list(l)
                        rn = list(r)
                        ln[idx] += j
                        rn[idx] += k - j
                        _sacc(new_pairs, (tuple(ln), tuple(rn)), coeff * comb(k, j))
                pairs = new_pairs
            for key, coeff in pairs.items():
                _sacc(out, key, s * coeff)
        return UEATensor(alg, 2, out)

    def antipode(self) -> "UEAElement":
        alg = self.alg
        terms: Dict[Exps, Scalar] = {}
        for exps, s in self.terms.items():
            word = alg._word(exps)
            sign = -1 if len(word) % 2 else 1
            for e, s2 in alg._straighten(tuple(reversed(word))).items():
                _sacc(terms, e, s * s2 * sign)
        return UEAElement(alg, terms)

    def star(self) -> "UEAElement":
        """Antilinear anti-automorphism from the generator star map."""
        alg = self.alg
        terms: Dict[Exps, Scalar] = {}
        for exps, s in self.terms.items():
            word = alg._word(exps)
            sign = 1
            for letter in word:
                sign *= alg.star_signs[letter]
            for e, s2 in alg._straighten(tuple(reversed(word))).items():
                _sacc(terms, e, s.conjugate() * s2 * sign)
        return UEAElement(alg, terms)

    # -- nu bookkeeping --------------------------------------------------------
    def truncate(self, order: int) -> "UEAElement":
        terms = {}
        for e, s in self.terms.items():
            st = s.truncate(order)
            if st:
                terms[e] = st
        return UEAElement(self.alg, terms)

    def nu_component(self, k: int) -> "UEAElement":
        terms = {}
        for e, s in self.terms.items():
            sk = s.nu_component(k)
            if sk:
                terms[e] = sk
        return UEAElement(self.alg, terms)

    def nu_degree(self) -> int:
        return max((s.nu_degree() for s in self.terms.values()), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, UEAElement)
                and self.alg is other.alg and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def act_on(self, elt: CalcElement) -> CalcElement:
        return self.alg.act(self, elt)

    def __repr__(self) -> str:
        if not self.terms:
            return "UEAElement(0)"
        bits = []
        for exps, s in sorted(self.terms.items()):
            mono = " ".join(
                (self.alg.names[i] if k == 1 else f"{self.alg.names[i]}^{k}")
                for i, k in enumerate(exps) if k) or "1"
            bits.append(f"({s!r})*{mono}")
        return "UEA[" + " + ".join(bits) + "]"


class UEATensor:
    """Tensor power of U(g) (rank 2 or 3) with Scalar coefficients."""

    __slots__ = ("alg", "rank", "terms")

    def __init__(self, alg: LieAlgebraSpec, rank: int,
                 terms: Dict[Tuple[Exps, ...], Scalar]):
        self.alg = alg
        self.rank = rank
        self.terms = terms

    def _check(self, other: "UEATensor") -> None:
        if self.alg is not other.alg or self.rank != other.rank:
            raise ValueError("tensor mismatch")

    def __add__(self, other: "UEATensor") -> "UEATensor":
        self._check(other)
        terms = dict(self.terms)
        for k, s in other.terms.items():
            _sacc(terms, k, s)
        return UEATensor(self.alg, self.rank, terms)

    def __sub__(self, other: "UEATensor") -> "UEATensor":
        return self + (-other)

    def __neg__(self) -> "UEATensor":
        return UEATensor(self.alg, self.rank, {k: -s for k, s in self.terms.items()})

    def scale(self, scalar) -> "UEATensor":
        if isinstance(scalar, (int, GaussianRational)):
            scalar = self.alg.ring.monomial(scalar)
        if not scalar:
            return UEATensor(self.alg, self.rank, {})
        return UEATensor(self.alg, self.rank,
                         {k: scalar * s for k, s in self.terms.items()})

    def __mul__(self, other: "UEATensor") -> "UEATensor":
        """Legwise product in U(g)^(x rank)."""
        self._check(other)
        alg = self.alg
        terms: Dict[Tuple[Exps, ...], Scalar] = {}
        for k1, s1 in self.terms.items():
            for k2, s2 in other.terms.items():
                s12 = s1 * s2
                if not s12:
                    continue
                legs = [alg.mono_mul(a, b) for a, b in zip(k1, k2)]
                keys = [[(e, s) for e, s in leg.items()] for leg in legs]
                stack = [((), alg.ring.one)]
                for leg in keys:
                    stack = [(key + (e,), coeff * s)
                             for key, coeff in stack for e, s in leg]
                for key, coeff in stack:
                    _sacc(terms, key, s12 * coeff)
        return UEATensor(alg, self.rank, terms)

    def mul_truncated(self, other: "UEATensor", order: int) -> "UEATensor":
        """Legwise product dropping nu-degrees above `order` as they arise.

        Sound because nu-degrees only ever add; equals (self * other)
        .truncate(order) at a fraction of the intermediate work.
        """
        self._check(other)
        alg = self.alg
        terms: Dict[Tuple[Exps, ...], Scalar] = {}
        vals2 = [(k2, s2, s2.nu_valuation()) for k2, s2 in other.terms.items()]
        for k1, s1 in self.terms.items():
            v1 = s1.nu_valuation()
            for k2, s2, v2 in vals2:
                if v1 + v2 > order:
                    continue
                s12 = (s1 * s2).truncate(order)
                if not s12:
                    continue
                legs = [alg.mono_mul(a, b) for a, b in zip(k1, k2)]
                keys = [[(e, s) for e, s in leg.items()] for leg in legs]
                stack = [((), alg.ring.one)]
                for leg in keys:
                    stack = [(key + (e,), coeff * s)
                             for key, coeff in stack for e, s in leg]
                for key, coeff in stack:
                    _sacc(terms, key, s12 * coeff)
        return UEATensor(alg, self.rank,
                         {k: s.truncate(order) for k, s in terms.items()
                          if s.truncate(order)})

    # -- leg operations -------------------------------------------------------
    def flip(self) -> "UEATensor":
        if self.rank != 2:
            raise ValueError("flip is defined for rank 2")
        return UEATensor(self.alg, 2, {(b, a): s for (a, b), s in self.terms.items()})

    def apply_leg(self, leg: int, op: str) -> "UEATensor":
        """Apply antipode ('S') or star ('*') to one leg (coefficients untouched)."""
        alg = self.alg
        terms: Dict[Tuple[Exps, ...], Scalar] = {}
        for key, s in self.terms.items():
            piece = UEAElement(alg, {key[leg]: alg.ring.one})
            piece = piece.antipode() if op == "S" else piece.star()
            for e, s2 in piece.terms.items():
                newkey = key[:leg] + (e,) + key[leg + 1:]
                _sacc(terms, newkey, s * s2)
        return UEATensor(alg, self.rank, terms)

    def conjugate_coefficients(self) -> "UEATensor":
        return UEATensor(self.alg, self.rank,
                         {k: s.conjugate() for k, s in self.terms.items()})

    def star_both(self) -> "UEATensor":
        """(* x *) on a rank-2 tensor: star each leg, conjugate coefficients."""
        return self.apply_leg(0, "*").apply_leg(1, "*").conjugate_coefficients()

    def coproduct_leg(self, leg: int) -> "UEATensor":
        """Replace one leg by its coproduct (rank 2 -> rank 3)."""
        if self.rank != 2:
            raise ValueError("coproduct_leg implemented for rank 2")
        alg = self.alg
        terms: Dict[Tuple[Exps, ...], Scalar] = {}
        for key, s in self.terms.items():
            delta = UEAElement(alg, {key[leg]: alg.ring.one}).coproduct()
            for (l, r), s2 in delta.terms.items():
                newkey = key[:leg] + (l, r) + key[leg + 1:]
                _sacc(terms, newkey, s * s2)
        return UEATensor(alg, 3, terms)

    def counit_leg(self, leg: int) -> "UEAElement":
        """Contract one leg with the counit (rank 2 -> rank 1)."""
        if self.rank != 2:
            raise ValueError("counit_leg implemented for rank 2")
        alg = self.alg
        terms: Dict[Exps, Scalar] = {}
        for key, s in self.terms.items():
            if key[leg] == alg.unit_exps:
                _sacc(terms, key[1 - leg], s)
        return UEAElement(alg, terms)

    def tensor_with_unit(self, side: str) -> "UEATensor":
        """Rank 2 -> rank 3 by adjoining a unit leg ('left' or 'right')."""
        alg = self.alg
        u = alg.unit_exps
        if side == "left":
            terms = {(u,) + k: s for k, s in self.terms.items()}
        else:
            terms = {k + (u,): s for k, s in self.terms.items()}
        return UEATensor(alg, 3, terms)

    def multiply_legs(self, op_leg: int = 1, antipode_leg: Optional[int] = None) -> "UEAElement":
        """m((id x S)(t)) style contractions for rank-2 tensors."""
        if self.rank != 2:
            raise ValueError("multiply_legs implemented for rank 2")
        alg = self.alg
        out = alg.zero
        for (a, b), s in self.terms.items():
            ua = UEAElement(alg, {a: alg.ring.one})
            ub = UEAElement(alg, {b: alg.ring.one})
            if antipode_leg == 0:
                ua = ua.antipode()
            elif antipode_leg == 1:
                ub = ub.antipode()
            out = out + (ua * ub).scale(s)
        return out

    # -- action ---------------------------------------------------------------
    def pair_apply(self, a: CalcElement, b: CalcElement, combine) -> "CalcElement":
        """sum  coeff * combine(leg1 |> a, leg2 |> b)  for rank-2 tensors."""
        if self.rank != 2:
            raise ValueError("pair_apply implemented for rank 2")
        alg = self.alg
        out = None
        for (e1, e2), s in self.terms.items():
            va = alg.act(UEAElement(alg, {e1: alg.ring.one}), a)
            vb = alg.act(UEAElement(alg, {e2: alg.ring.one}), b)
            piece = combine(va, vb).scale(s)
            out = piece if out is None else out + piece
        return out if out is not None else combine(a, b).scale(alg.ring.zero)

    def pair_transform(self, a: CalcElement, b: CalcElement) -> List[Tuple[CalcElement, CalcElement]]:
        """The list of transformed pairs (leg1 |> a, coeff * (leg2 |> b))."""
        if self.rank != 2:
            raise ValueError("pair_transform implemented for rank 2")
        alg = self.alg
        pairs = []
        for (e1, e2), s in self.terms.items():
            va = alg.act(UEAElement(alg, {e1: alg.ring.one}), a)
            vb = alg.act(UEAElement(alg, {e2: alg.ring.one}), b)
            pairs.append((va, vb.scale(s)))
        return pairs

    # -- nu bookkeeping ---------------------------------------------------------
    def truncate(self, order: int) -> "UEATensor":
        terms = {}
        for k, s in self.terms.items():
            st = s.truncate(order)
            if st:
                terms[k] = st
        return UEATensor(self.alg, self.rank, terms)

    def nu_component(self, k: int) -> "UEATensor":
        terms = {}
        for key, s in self.terms.items():
            sk = s.nu_component(k)
            if sk:
                terms[key] = sk
        return UEATensor(self.alg, self.rank, terms)

    def nu_degree(self) -> int:
        return max((s.nu_degree() for s in self.terms.values()), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, UEATensor) and self.alg is other.alg
                and self.rank == other.rank and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.rank, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        def side(exps):
            return " ".join(
                (self.alg.names[i] if k == 1 else f"{self.alg.names[i]}^{k}")
                for i, k in enumerate(exps) if k) or "1"

        bits = [f"({s!r})*" + " (x) ".join(side(e) for e in key)
                for key, s in sorted(self.terms.items())]
        return "UEATensor[" + (" + ".join(bits) if bits else "0") + "]"
