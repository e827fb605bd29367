"""Shared text grammar: parsing and canonical printing of algebra elements.

One grammar serves fixtures, the command line and golden files.  Atoms name
generators of the active frame (``y+``, ``eta-``, ``d_0``, ``x1``, ``xi2``,
``d3``, ...), the unit ``x0`` (also spelled ``1``), the scalar generators
``nu``, ``I``, ``sqrtA``, ``sqrtB``, ``c`` and rational literals ``p/q``.
Multiplication is either explicit ``*`` or juxtaposition; in *star mode*
``*`` is the deformed product while juxtaposition stays classical, so golden
expressions can mix both.  ``^`` raises to an integer power (negative powers
only for invertible scalar factors).  ``+``, ``-`` and parentheses behave as
usual.

The printer is the inverse normal form used for golden comparisons: each
element is split into (nu-order, monomial) pieces, sorted, scalar factors
joined with ``*`` and generator factors with single spaces, e.g.

    y+ y- + 2*I*nu*sqrtA*y+ y0 + 2*nu^2*y+^2
"""

from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .calculus import CalcElement, CalcMonomial, CalculusAlgebra
from .errors import ConfigurationError
from .scalars import GaussianRational, Scalar

# ---------------------------------------------------------------------------
# lexer
# ---------------------------------------------------------------------------

_PUNCT = ("+", "-", "*", "^", "(", ")")

# upper-index derivation aliases: d+ = 2a d_-, d- = 2a d_+, d0 = d_0
_UPPER_D = {"d+": (2, 2, 2), "d-": (2, 2, 1), "d0": (1, 0, 3)}
# value: (rational factor, sqrtA exponent, lower index)


class Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind
        self.text = text
        self.pos = pos

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"Token({self.kind},{self.text!r}@{self.pos})"


def _atom_table(alg: CalculusAlgebra, lie=None) -> Dict[str, CalcElement]:
    """Map atom spellings to elements of the calculus algebra."""
    frame = alg.frame
    table: Dict[str, CalcElement] = {"x0": alg.one, "1": alg.one}
    for i, lab in enumerate(frame.x_labels, start=1):
        table[lab] = alg.x(i)
    for i, lab in enumerate(frame.xi_labels, start=1):
        table[lab] = alg.xi(i)
    for i, lab in enumerate(frame.d_labels, start=1):
        table[lab] = alg.d(i)
    if frame.name == "weight":
        for spelling, (rat, ks, idx) in _UPPER_D.items():
            coeff = alg.ring.monomial(rat, 0, ks, 0, 0)
            table[spelling] = alg.d(idx).scale(coeff)
    if lie is not None:
        for name in lie.names:
            table[name] = lie.realized_field(name, alg)
    return table


def _scalar_atoms(ring) -> Dict[str, Scalar]:
    return {
        "nu": ring.nu(),
        "I": ring.i,
        "sqrtA": ring.sqrt_a(),
        "sqrtB": ring.sqrt_b(),
        "c": ring.c_level(),
    }


def tokenize(text: str, atom_names: List[str]) -> List[Token]:
    """Longest-match tokenizer over the fixed atom alphabet."""
    # longest spelling wins: 'xi1' beats 'x1', 'd_+' beats 'd0'-style atoms
    names = sorted(atom_names, key=len, reverse=True)
    out: List[Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            # rational literal p/q (no spaces)
            if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                k = j + 1
                while k < n and text[k].isdigit():
                    k += 1
                out.append(Token("number", text[i:k], i))
                i = k
                continue
            out.append(Token("number", text[i:j], i))
            i = j
            continue
        # atoms take precedence over punctuation so 'y+' is one token
        matched = None
        for name in names:
            if text.startswith(name, i):
                matched = name
                break
        if matched:
            out.append(Token("atom", matched, i))
            i += len(matched)
            continue
        if ch in _PUNCT:
            out.append(Token("punct", ch, i))
            i += 1
            continue
        raise ConfigurationError(f"unexpected character {ch!r} at position {i}")
    return out


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

class ExpressionParser:
    """Recursive-descent evaluator over CalcElements.

    ``star`` is an optional binary callable used for the ``*`` operator;
    juxtaposition always multiplies classically.  Pure-scalar subexpressions
    stay exact, so negative powers of invertible scalars work.
    """

    def __init__(self, alg: CalculusAlgebra, lie=None,
                 star: Optional[Callable[[CalcElement, CalcElement],
                                         CalcElement]] = None):
        self.alg = alg
        self.atoms = _atom_table(alg, lie)
        self.scalars = _scalar_atoms(alg.ring)
        self.star = star
        self._names = list(self.atoms) + list(self.scalars)

    # -- public ------------------------------------------------------------
    def parse(self, text: str) -> CalcElement:
        self._toks = tokenize(text, self._names)
        self._pos = 0
        value = self._expr()
        if self._pos != len(self._toks):
            tok = self._toks[self._pos]
            raise ConfigurationError(
                f"trailing input {tok.text!r} at position {tok.pos}")
        return value

    # -- helpers -----------------------------------------------------------
    def _peek(self) -> Optional[Token]:
        if self._pos < len(self._toks):
            return self._toks[self._pos]
        return None

    def _take(self) -> Token:
        tok = self._peek()
        if tok is None:
            raise ConfigurationError("unexpected end of expression")
        self._pos += 1
        return tok

    def _expect(self, text: str) -> None:
        tok = self._take()
        if tok.text != text:
            raise ConfigurationError(
                f"expected {text!r} at position {tok.pos}, got {tok.text!r}")

    # -- grammar -----------------------------------------------------------
    def _expr(self) -> CalcElement:
        tok = self._peek()
        negate = False
        if tok is not None and tok.text in ("+", "-"):
            self._take()
            negate = tok.text == "-"
        value = self._term()
        if negate:
            value = -value
        while True:
            tok = self._peek()
            if tok is None or tok.text not in ("+", "-"):
                return value
            self._take()
            rhs = self._term()
            value = value - rhs if tok.text == "-" else value + rhs

    def _term(self) -> CalcElement:
        value = self._factor()
        while True:
            tok = self._peek()
            if tok is None:
                return value
            if tok.text == "*":
                self._take()
                rhs = self._factor()
                if self.star is not None:
                    value = self.star(value, rhs)
                else:
                    value = value * rhs
                continue
            if tok.kind in ("atom", "number") or tok.text == "(":
                value = value * self._factor()
                continue
            return value

    def _factor(self) -> CalcElement:
        value = self._primary()
        tok = self._peek()
        if tok is not None and tok.text == "^":
            self._take()
            value = self._power(value, self._exponent())
        return value

    def _exponent(self) -> int:
        tok = self._take()
        sign = 1
        if tok.text == "-":
            sign = -1
            tok = self._take()
        if tok.kind != "number" or "/" in tok.text:
            raise ConfigurationError(
                f"integer exponent expected at position {tok.pos}")
        return sign * int(tok.text)

    def _power(self, value: CalcElement, k: int) -> CalcElement:
        if k >= 0:
            return value ** k
        scalar = self._as_scalar(value)
        if scalar is None:
            raise ConfigurationError("negative power of a non-scalar")
        return self.alg.one.scale(scalar.inverse() ** (-k))

    def _as_scalar(self, value: CalcElement) -> Optional[Scalar]:
        if not value.terms:
            return self.alg.ring.zero
        if len(value.terms) == 1:
            (m, s), = value.terms.items()
            if m.is_unit():
                return s
        return None

    def _primary(self) -> CalcElement:
        tok = self._take()
        if tok.text == "(":
            value = self._expr()
            self._expect(")")
            return value
        if tok.text == "-":
            return -self._primary()
        if tok.kind == "number":
            if "/" in tok.text:
                p, q = tok.text.split("/")
                scalar = self.alg.ring.rational(Fraction(int(p), int(q)))
            else:
                scalar = self.alg.ring.rational(int(tok.text))
            return self.alg.one.scale(scalar)
        if tok.kind == "atom":
            if tok.text in self.atoms:
                return self.atoms[tok.text]
            if tok.text in self.scalars:
                return self.alg.one.scale(self.scalars[tok.text])
        raise ConfigurationError(
            f"unknown token {tok.text!r} at position {tok.pos}")


# ---------------------------------------------------------------------------
# printer
# ---------------------------------------------------------------------------

def _gen_factors(m: CalcMonomial, alg: CalculusAlgebra) -> List[str]:
    frame = alg.frame
    parts: List[str] = []
    for i in m.xi:
        parts.append(frame.xi_labels[i - 1])
    for i, e in enumerate(m.x):
        if e == 1:
            parts.append(frame.x_labels[i])
        elif e > 1:
            parts.append(f"{frame.x_labels[i]}^{e}")
    for i, e in enumerate(m.d):
        if e == 1:
            parts.append(frame.d_labels[i])
        elif e > 1:
            parts.append(f"{frame.d_labels[i]}^{e}")
    return parts


def _rat_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _scalar_factors(key: Tuple[int, int, int, int],
                    coeff: GaussianRational) -> Tuple[bool, List[str]]:
    """Split one scalar term into (is_negative, list of '*'-joined factors)."""
    knu, ks, kt, kc = key
    factors: List[str] = []
    if coeff.im == 0:
        mag, imag = coeff.re, False
    elif coeff.re == 0:
        mag, imag = coeff.im, True
    else:
        # generic Gaussian rational: print as a parenthesized unit
        re_s, im_s = _rat_str(abs(coeff.re)), _rat_str(abs(coeff.im))
        sign_re = "-" if coeff.re < 0 else ""
        op = "-" if coeff.im < 0 else "+"
        factors.append(f"({sign_re}{re_s}{op}{im_s}*I)")
        mag, imag = Fraction(1), False
    negative = mag < 0
    mag = abs(mag)
    if mag != 1:
        factors.append(_rat_str(mag))
    if imag:
        factors.append("I")
    for name, k in (("nu", knu), ("sqrtA", ks), ("sqrtB", kt), ("c", kc)):
        if k == 1:
            factors.append(name)
        elif k != 0:
            factors.append(f"{name}^{k}")
    return negative, factors


def render_element(elt: CalcElement) -> str:
    """Canonical text normal form (deterministic golden-file format)."""
    alg = elt.alg
    pieces = []
    for m, s in elt.terms.items():
        for key, coeff in s.terms.items():
            pieces.append((key[0], m.sort_key(), key, m, coeff))
    if not pieces:
        return "0"
    pieces.sort(key=lambda p: (p[0], p[1], p[2]))
    out: List[str] = []
    for _, _, key, m, coeff in pieces:
        negative, factors = _scalar_factors(key, coeff)
        gens = _gen_factors(m, alg)
        if factors and gens:
            body = "*".join(factors) + "*" + " ".join(gens)
        elif gens:
            body = " ".join(gens)
        elif factors:
            body = "*".join(factors)
        else:
            body = "1"
        if not out:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(("- " if negative else "+ ") + body)
    return " ".join(out)


def render_scalar(ring, s: Scalar) -> str:
    """Scalar rendered through the element printer (unit monomial)."""
    from .calculus import CalculusAlgebra, weight_frame

    alg = CalculusAlgebra(ring, weight_frame())
    return render_element(alg.one.scale(s))
