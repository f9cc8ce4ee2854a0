"""Exact arithmetic over the supported field tower.

Supported fields:

* ``F_p`` for a prime ``p`` (residues),
* ``F_{2^k}`` for ``k <= 4`` (bit-packed polynomials modulo a fixed irreducible),
* the rationals (``fractions.Fraction``),
* rational function fields ``F_p(s)`` and ``F_p(s, t)`` (reduced fractions of
  ``flint.nmod_mpoly`` with a monic denominator).

Every element is immutable and canonically represented, so ``==`` and ``hash``
are exact.  Fields are created through :func:`prime_field`,
:func:`binary_field`, :func:`rationals` and :func:`function_field` (or parsed
from a short name with :func:`field_from_name`).
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Optional

import flint
from flint.utils.flint_exceptions import DomainError

MAX_PRIME = 97

# Fixed irreducible polynomials over F_2, one per degree (bit i = coefficient of w^i).
BINARY_MODULI = {1: 0b10, 2: 0b111, 3: 0b1011, 4: 0b10011}


class FieldError(ValueError):
    """Invalid field descriptor or an operation the field does not support."""


class LiteralSyntaxError(ValueError):
    """An element literal that does not conform to the grammar."""

    def __init__(self, message: str, literal: str, pos: int):
        self.literal = literal
        self.pos = pos
        super().__init__(f"{message} at position {pos} in {literal!r}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Field descriptors


@dataclass(frozen=True)
class FieldDescriptor:
    """Description of one field of the tower.

    ``kind`` is one of ``prime``, ``binary``, ``rationals``, ``function_field``.
    ``p`` is the prime (the base prime for function fields, 2 for binary fields),
    ``k`` the extension degree of a binary field, ``variables`` the generator
    names (one for binary fields, one or two for function fields).
    """

    kind: str
    p: int = 0
    k: int = 1
    variables: tuple[str, ...] = ()
    max_prime: int = dc_field(default=MAX_PRIME, compare=False, repr=False)

    def __post_init__(self):
        if self.kind == "prime":
            if not is_prime(self.p) or self.p > self.max_prime:
                raise FieldError(f"prime field needs a prime p <= {self.max_prime}, got {self.p}")
        elif self.kind == "binary":
            if self.p != 2 or self.k not in BINARY_MODULI or len(self.variables) != 1:
                raise FieldError("binary field needs p = 2, 1 <= k <= 4 and one variable name")
        elif self.kind == "rationals":
            if self.p != 0 or self.variables:
                raise FieldError("rationals take no parameters")
        elif self.kind == "function_field":
            if not is_prime(self.p) or self.p > self.max_prime:
                raise FieldError(f"function field needs a prime p <= {self.max_prime}")
            if len(self.variables) not in (1, 2) or len(set(self.variables)) != len(self.variables):
                raise FieldError("function field needs one or two distinct variables")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")
        for v in self.variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                raise FieldError(f"bad variable name {v!r}")

    # -- basic data --------------------------------------------------------

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_finite(self) -> bool:
        return self.kind in ("prime", "binary")

    @property
    def order(self) -> Optional[int]:
        if self.kind == "prime":
            return self.p
        if self.kind == "binary":
            return 2**self.k
        return None

    @property
    def is_perfect(self) -> bool:
        return self.kind != "function_field"

    @property
    def name(self) -> str:
        if self.kind == "prime":
            return f"F{self.p}"
        if self.kind == "binary":
            return f"F{2 ** self.k}"
        if self.kind == "rationals":
            return "Q"
        return f"F{self.p}({','.join(self.variables)})"

    def __str__(self):
        return self.name

    @cached_property
    def _cls(self):
        return {
            "prime": PrimeElement,
            "binary": BinaryElement,
            "rationals": RationalElement,
            "function_field": FunctionElement,
        }[self.kind]

    @cached_property
    def zero(self) -> "FieldElement":
        return self(0)

    @cached_property
    def one(self) -> "FieldElement":
        return self(1)

    def __call__(self, x) -> "FieldElement":
        """Coerce an int, Fraction (rationals only) or element of this field."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldError(f"element of {x.field} used in {self}")
            return x
        return self._cls.from_scalar(self, x)

    def gens(self) -> tuple["FieldElement", ...]:
        """The named generators (variables) of the field."""
        if self.kind == "binary" and self.k > 1:
            return (BinaryElement(self, 0b10),)
        if self.kind == "function_field":
            return tuple(FunctionElement(self, (g, self._poly_one)) for g in self._ctx.gens())
        return ()

    def parse(self, literal: str) -> "FieldElement":
        return parse_element(literal, self)

    # -- finite fields -----------------------------------------------------

    def elements(self) -> list["FieldElement"]:
        """All elements, ordered by raw value (finite fields only)."""
        if not self.is_finite:
            raise FieldError(f"{self} is infinite")
        return [self._cls(self, v) for v in range(self.order)]

    @cached_property
    def least_nonsquare(self) -> Optional["FieldElement"]:
        if self.kind != "prime" or self.p == 2:
            return None
        squares = {(a * a) % self.p for a in range(self.p)}
        return self(min(a for a in range(1, self.p) if a not in squares))

    # -- binary field tables ----------------------------------------------

    @cached_property
    def _bin_tables(self):
        n = 1 << self.k
        mod = BINARY_MODULI[self.k]
        mul = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                r, x, y = 0, a, b
                while y:
                    if y & 1:
                        r ^= x
                    y >>= 1
                    x <<= 1
                    if x & n:
                        x ^= mod
                mul[a][b] = r
        inv = [0] * n
        for a in range(1, n):
            for b in range(1, n):
                if mul[a][b] == 1:
                    inv[a] = b
        # Frobenius is a bijection; sqrt is its inverse.
        sqrt = [0] * n
        for a in range(n):
            sqrt[mul[a][a]] = a
        return mul, inv, sqrt

    # -- function field polynomial context --------------------------------

    @cached_property
    def _ctx(self):
        return flint.nmod_mpoly_ctx.get(self.variables, modulus=self.p)

    @cached_property
    def _poly_one(self):
        return self._ctx.from_dict({(0,) * len(self.variables): 1})

    @cached_property
    def _poly_zero(self):
        return self._ctx.from_dict({})

    # -- randomness ---------------------------------------------------------

    def random(self, rng: random.Random, height: int = 3, nonzero: bool = False) -> "FieldElement":
        """A random element; ``height`` bounds integers (Q) or degrees (F_p(s,t))."""
        while True:
            x = self._random(rng, height)
            if not (nonzero and x.is_zero()):
                return x

    def _random(self, rng, height):
        if self.is_finite:
            return self._cls(self, rng.randrange(self.order))
        if self.kind == "rationals":
            return self(Fraction(rng.randint(-height, height), rng.randint(1, height)))
        nv = len(self.variables)
        terms = {}
        for _ in range(rng.randint(1, height + 1)):
            mono = tuple(rng.randint(0, height) for _ in range(nv))
            terms[mono] = rng.randrange(self.p)
        num = self._ctx.from_dict(terms)
        return FunctionElement.make(self, num, self._poly_one)


@lru_cache(maxsize=None)
def prime_field(p: int) -> FieldDescriptor:
    return FieldDescriptor("prime", p=p)


@lru_cache(maxsize=None)
def binary_field(k: int, var: str = "w") -> FieldDescriptor:
    return FieldDescriptor("binary", p=2, k=k, variables=(var,))


@lru_cache(maxsize=None)
def rationals() -> FieldDescriptor:
    return FieldDescriptor("rationals")


@lru_cache(maxsize=None)
def function_field(p: int, variables: tuple[str, ...] | str) -> FieldDescriptor:
    if isinstance(variables, str):
        variables = tuple(v.strip() for v in variables.replace(",", " ").split())
    return FieldDescriptor("function_field", p=p, variables=tuple(variables))


def field_from_name(name: str) -> FieldDescriptor:
    """Parse a field name.

    Accepted: ``Q``; ``Fp:P``; ``F2k:K``; ``Fpt:P:VARS`` (vars comma separated);
    shorthands ``F5`` (prime), ``F4``/``F8``/``F16`` (binary), ``F2st``/``F3t``
    (function fields with single-letter variables), and ``F2(s,t)``.
    """
    name = name.strip()
    if name == "Q":
        return rationals()
    m = re.fullmatch(r"Fp:(\d+)", name)
    if m:
        return prime_field(int(m.group(1)))
    m = re.fullmatch(r"F2k:(\d+)", name)
    if m:
        return binary_field(int(m.group(1)))
    m = re.fullmatch(r"Fpt:(\d+):([A-Za-z_][\w,]*)", name)
    if m:
        return function_field(int(m.group(1)), tuple(m.group(2).split(",")))
    m = re.fullmatch(r"F(\d+)\(([\w, ]+)\)", name)
    if m:
        return function_field(int(m.group(1)), m.group(2))
    m = re.fullmatch(r"F(\d+)([a-z]*)", name)
    if m:
        q, letters = int(m.group(1)), m.group(2)
        if letters:
            return function_field(q, tuple(letters))
        if is_prime(q):
            return prime_field(q)
        k = q.bit_length() - 1
        if q == 1 << k and k in BINARY_MODULI:
            return binary_field(k)
    raise FieldError(f"unrecognised field name {name!r}")


# ---------------------------------------------------------------------------
# Elements


class FieldElement:
    """Base class of field elements; subclasses implement one field kind."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldDescriptor, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __radd__(self, other):
        return self + other

    def __rmul__(self, other):
        return self * other

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else o - self

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else o / self

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.kind, self.value))

    def __repr__(self):
        return f"{self.field.name}({self})"

    def is_zero(self) -> bool:
        return self == self.field.zero

    def is_one(self) -> bool:
        return self == self.field.one

    def sqrt(self) -> Optional["FieldElement"]:
        return sqrt_if_square(self)


class PrimeElement(FieldElement):
    __slots__ = ()

    @classmethod
    def from_scalar(cls, field, x):
        if isinstance(x, Fraction):
            return cls(field, x.numerator % field.p) / cls(field, x.denominator % field.p)
        return cls(field, int(x) % field.p)

    def __add__(self, other):
        if type(other) is not PrimeElement:
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return PrimeElement(self.field, (self.value + other.value) % self.field.p)

    def __sub__(self, other):
        if type(other) is not PrimeElement:
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return PrimeElement(self.field, (self.value - other.value) % self.field.p)

    def __mul__(self, other):
        if type(other) is not PrimeElement:
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return PrimeElement(self.field, (self.value * other.value) % self.field.p)

    def __neg__(self):
        return PrimeElement(self.field, (-self.value) % self.field.p)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero")
        return PrimeElement(self.field, pow(self.value, -1, self.field.p))

    def is_zero(self):
        return self.value == 0

    def __str__(self):
        return str(self.value)


class BinaryElement(FieldElement):
    __slots__ = ()

    @classmethod
    def from_scalar(cls, field, x):
        if isinstance(x, Fraction):
            if x.denominator % 2 == 0:
                raise ZeroDivisionError("denominator vanishes in characteristic 2")
            x = x.numerator
        return cls(field, int(x) & 1)

    def __add__(self, other):
        if type(other) is not BinaryElement:
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return BinaryElement(self.field, self.value ^ other.value)

    __sub__ = __add__

    def __mul__(self, other):
        if type(other) is not BinaryElement:
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return BinaryElement(self.field, self.field._bin_tables[0][self.value][other.value])

    def __neg__(self):
        return self

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero")
        return BinaryElement(self.field, self.field._bin_tables[1][self.value])

    def is_zero(self):
        return self.value == 0

    def __str__(self):
        if self.value == 0:
            return "0"
        var = self.field.variables[0]
        terms = []
        for i in reversed(range(self.field.k)):
            if self.value >> i & 1:
                terms.append("1" if i == 0 else var if i == 1 else f"{var}^{i}")
        return " + ".join(terms)


class RationalElement(FieldElement):
    __slots__ = ()

    @classmethod
    def from_scalar(cls, field, x):
        return cls(field, Fraction(x))

    def __add__(self, other):
        if type(other) is not RationalElement:
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return RationalElement(self.field, self.value + other.value)

    def __sub__(self, other):
        if type(other) is not RationalElement:
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return RationalElement(self.field, self.value - other.value)

    def __mul__(self, other):
        if type(other) is not RationalElement:
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return RationalElement(self.field, self.value * other.value)

    def __neg__(self):
        return RationalElement(self.field, -self.value)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero")
        return RationalElement(self.field, 1 / self.value)

    def is_zero(self):
        return self.value == 0

    def __str__(self):
        return str(self.value)


class FunctionElement(FieldElement):
    """Element of F_p(vars) as a reduced fraction ``num/den`` with monic ``den``.

    ``value`` is the pair of canonical strings used for hashing; the polynomials
    themselves live in ``num`` and ``den``.
    """

    __slots__ = ("num", "den")

    def __init__(self, field, pair):
        self.field = field
        self.num, self.den = pair
        self.value = None

    @classmethod
    def make(cls, field, num, den):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            return cls(field, (num, field._poly_one))
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
            lc = int(den.leading_coefficient())
            if lc != 1:
                inv = pow(lc, -1, field.p)
                num = num * inv
                den = den * inv
        return cls(field, (num, den))

    @classmethod
    def from_scalar(cls, field, x):
        if isinstance(x, Fraction):
            if x.denominator % field.p == 0:
                raise ZeroDivisionError("denominator vanishes modulo p")
            return cls.from_scalar(field, x.numerator) / cls.from_scalar(field, x.denominator)
        c = int(x) % field.p
        num = field._ctx.from_dict({(0,) * len(field.variables): c}) if c else field._poly_zero
        return cls(field, (num, field._poly_one))

    def __add__(self, other):
        if type(other) is not FunctionElement:
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return FunctionElement(self.field, (self.num + other.num, self.den))
        if self.den == other.den:
            return FunctionElement.make(self.field, self.num + other.num, self.den)
        return FunctionElement.make(
            self.field, self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        if type(other) is not FunctionElement:
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if type(other) is not FunctionElement:
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return FunctionElement(self.field, (self.num * other.num, self.den))
        return FunctionElement.make(self.field, self.num * other.num, self.den * other.den)

    def __neg__(self):
        return FunctionElement(self.field, (-self.num, self.den))

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return FunctionElement.make(self.field, self.den, self.num)

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def __eq__(self, other):
        if type(other) is FunctionElement:
            return self.field == other.field and self.num == other.num and self.den == other.den
        return super().__eq__(other)

    def __hash__(self):
        return hash((self.field.name, str(self.num), str(self.den)))

    def __str__(self):
        num = str(self.num)
        if self.den.is_one():
            return num
        if len(self.num.to_dict()) > 1:
            num = f"({num})"
        den = str(self.den)
        # a bare power of one variable binds tighter than "/"
        if any(ch in den for ch in "*+-"):
            den = f"({den})"
        return f"{num}/{den}"

    def is_polynomial(self) -> bool:
        return self.den.is_one()


# ---------------------------------------------------------------------------
# Literal parsing
#
#   element := sign? product (("+"|"-") product)*
#   product := atom (("*"|"/") atom)*
#   atom    := base ("^" uint)?
#   base    := integer | var | "(" element ")"


_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S)")


def _tokenize(literal: str):
    tokens = []
    for m in _TOKEN.finditer(literal):
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start()))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2), m.start()))
        else:
            tokens.append(("op", m.group(3), m.start()))
    tokens.append(("end", "", len(literal)))
    return tokens


class _Parser:
    def __init__(self, literal: str, field: FieldDescriptor):
        self.literal = literal
        self.field = field
        self.tokens = _tokenize(literal)
        self.i = 0
        self.gens = dict(zip(field.variables, field.gens()))

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise LiteralSyntaxError(msg, self.literal, tok[2])

    def expect(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.error(f"expected {op!r}", tok)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty literal")
        value = self.sum()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return value

    def sum(self):
        negate = False
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            negate = tok[1] == "-"
        value = self.product()
        if negate:
            value = -value
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.product()
                value = value + rhs if tok[1] == "+" else value - rhs
            else:
                return value

    def product(self):
        value = self.atom()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "*/":
                self.take()
                rhs_tok = self.peek()
                rhs = self.atom()
                if tok[1] == "*":
                    value = value * rhs
                else:
                    if rhs.is_zero():
                        raise LiteralSyntaxError("division by zero", self.literal, rhs_tok[2])
                    value = value / rhs
            else:
                return value

    def atom(self):
        value = self.base()
        nxt = self.peek()
        if nxt[0] == "op" and nxt[1] == "^":
            self.take()
            exp = self.take()
            if exp[0] != "int":
                self.error("expected exponent", exp)
            value = value ** int(exp[1])
        return value

    def base(self):
        tok = self.take()
        kind, text, _ = tok
        if kind == "int":
            return self.field(int(text))
        if kind == "var":
            if text not in self.gens:
                self.error(f"unknown variable {text!r} for {self.field}", tok)
            return self.gens[text]
        if kind == "op" and text == "(":
            value = self.sum()
            self.expect(")")
            return value
        self.error("unexpected token", tok)


def parse_element(literal: str, field: FieldDescriptor) -> FieldElement:
    """Parse an element literal in ``field``.

    >>> str(parse_element("7", prime_field(5)))
    '2'
    """
    return _Parser(literal, field).parse()


def format_element(x: FieldElement) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# Square roots and square classes


def _canonical_sign(r: FieldElement) -> FieldElement:
    """Pick the canonical root among ``r`` and ``-r``."""
    f = r.field
    if f.kind == "rationals":
        return r if r.value >= 0 else -r
    if f.kind == "prime":
        return r if r.value <= f.p - r.value else -r
    if f.kind == "function_field" and f.p != 2 and not r.is_zero():
        lc = int(r.num.leading_coefficient())
        return r if lc <= f.p - lc else -r
    return r


def _sqrt_raw(x: FieldElement) -> Optional[FieldElement]:
    f = x.field
    if x.is_zero():
        return x
    if f.kind == "prime":
        if f.p == 2:
            return x
        for r in range(f.p // 2 + 1):
            if r * r % f.p == x.value:
                return f(r)
        return None
    if f.kind == "binary":
        return BinaryElement(f, f._bin_tables[2][x.value])
    if f.kind == "rationals":
        n, d = x.value.numerator, x.value.denominator
        if n < 0:
            return None
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn != n or rd * rd != d:
            return None
        return f(Fraction(rn, rd))
    try:
        num = x.num.sqrt()
        den = x.den.sqrt()
    except DomainError:
        return None
    return FunctionElement.make(f, num, den)


def sqrt_if_square(x: FieldElement, fourth: bool = False) -> Optional[FieldElement]:
    """Canonical square root of ``x`` (or fourth root with ``fourth=True``), else None.

    The canonical root is nonnegative over Q, the residue ``r <= p - r`` over
    F_p, and the root whose numerator has such a leading coefficient over
    F_p(vars) with p odd.  In characteristic 2 roots are unique.
    """
    if not fourth:
        r = _sqrt_raw(x)
        return None if r is None else _canonical_sign(r)
    r = _sqrt_raw(x)
    if r is None:
        return None
    for cand in (r, -r):
        s = _sqrt_raw(cand)
        if s is not None:
            return _canonical_sign(s)
    return None


def is_square(x: FieldElement) -> bool:
    return _sqrt_raw(x) is not None


def factor_int(n: int) -> list[tuple[int, int]]:
    """Prime factorisation of a nonzero integer (sign dropped)."""
    return [(int(p), int(e)) for p, e in flint.fmpz(abs(n)).factor()]


def _squarefree_int(n: int) -> int:
    """Squarefree part of a positive integer."""
    result = 1
    for p, e in factor_int(n):
        if e % 2:
            result *= p
    return result


def square_class_rep(x: FieldElement) -> FieldElement:
    """Canonical representative of the square class ``x F^{x2}``."""
    f = x.field
    if x.is_zero():
        raise ValueError("square class of zero")
    if f.kind == "rationals":
        n = x.value.numerator * x.value.denominator
        sign = -1 if n < 0 else 1
        return f(sign * _squarefree_int(abs(n)))
    if f.kind == "prime":
        if f.p == 2 or is_square(x):
            return f.one
        return f.least_nonsquare
    if f.kind == "binary":
        return f.one
    poly = x.num * x.den
    c, factors = poly.factor_squarefree()
    rep = f._poly_one
    for g, e in factors:
        if e % 2:
            rep = rep * g
    unit = f(int(c))
    if f.p != 2 and not is_square(unit):
        rep = rep * int(prime_field(f.p).least_nonsquare.value)
    return FunctionElement.make(f, rep, f._poly_one)


def same_square_class(x: FieldElement, y: FieldElement) -> bool:
    if x.is_zero() or y.is_zero():
        raise ValueError("square class of zero")
    return is_square(x / y)


# ---------------------------------------------------------------------------
# Coordinates over the subfield of squares (characteristic 2)


def f2_basis(field: FieldDescriptor) -> list[FieldElement]:
    """Monomial basis of F over F^2: {1} for perfect fields, square-free monomials otherwise."""
    if field.characteristic != 2:
        raise FieldError("F^2-coordinates need characteristic 2")
    if field.is_perfect:
        return [field.one]
    gens = field.gens()
    basis = []
    for mask in range(1 << len(gens)):
        m = field.one
        for i, g in enumerate(gens):
            if mask >> i & 1:
                m = m * g
        basis.append(m)
    return basis


def f2_vector(x: FieldElement) -> list[FieldElement]:
    """Coordinates of ``x`` in :func:`f2_basis`; every coordinate is a square."""
    f = x.field
    basis = f2_basis(f)
    if f.is_perfect:
        return [x]
    nv = len(f.variables)
    poly = x.num * x.den
    den2 = x.den * x.den
    parts: dict[int, dict] = {mask: {} for mask in range(1 << nv)}
    for mono, c in poly.to_dict().items():
        mask = sum((e & 1) << i for i, e in enumerate(mono))
        parts[mask][tuple(e - (e & 1) for e in mono)] = int(c)
    return [
        FunctionElement.make(f, f._ctx.from_dict(parts[mask]), den2) if parts[mask] else f.zero
        for mask in range(len(basis))
    ]


def f2_coordinates(x: FieldElement) -> dict[FieldElement, FieldElement]:
    """Nonzero coordinates of ``x`` over F^2, keyed by basis monomial.

    >>> F = function_field(2, "s t"); s, t = F.gens()
    >>> {str(k): str(v) for k, v in f2_coordinates(s**3 * t**2 + 1).items()}
    {'1': '1', 's': 's^2*t^2'}
    """
    return {b: c for b, c in zip(f2_basis(x.field), f2_vector(x)) if not c.is_zero()}
