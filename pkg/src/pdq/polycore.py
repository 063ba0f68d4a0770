"""Sparse polynomials over a prime field.

Monomials are packed into a single Python int: one 16-bit field per
variable (variable 0 in the lowest field) plus a total-degree field on
top.  Multiplication of monomials is integer addition, and divisibility
is a single guarded subtraction.  Exponents are capped at total degree
255 so that no field can carry into its guard bit.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

DEFAULT_MODULUS = 32003
MAX_DEGREE = 255
FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1


class RingMismatchError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def default_modulus() -> int:
    value = os.environ.get("PDQ_MODULUS")
    return int(value) if value else DEFAULT_MODULUS


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int = DEFAULT_MODULUS

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("zero has no inverse in F_p")
        return pow(a, -1, self.p)

    def symmetric(self, a: int) -> int:
        """Representative of ``a`` in (-p/2, p/2]."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.block < 1:
            raise ValueError("elimination order needs a positive block size")

    @classmethod
    def grevlex(cls) -> MonomialOrder:
        return cls("grevlex")

    @classmethod
    def lex(cls) -> MonomialOrder:
        return cls("lex")

    @classmethod
    def elimination(cls, block: int) -> MonomialOrder:
        return cls("elim", block)

    def __str__(self):
        return f"elim({self.block})" if self.kind == "elim" else self.kind


GREVLEX = MonomialOrder.grevlex()


@dataclass(frozen=True)
class Monomial:
    exponents: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.exponents)


class PolynomialRing:
    """k[x_0, ..., x_{n-1}] over F_p with x_0 > x_1 > ... > x_{n-1}."""

    def __init__(self, names: Sequence[str], p: int | None = None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        for name in names:
            if not _IDENT.fullmatch(name):
                raise ValueError(f"invalid variable name {name!r}")
        self.names = names
        self.field = PrimeField(default_modulus() if p is None else p)
        self.p = self.field.p
        n = self.n = len(names)
        self.deg_shift = FIELD_BITS * n
        self.pos_shift = FIELD_BITS * (n + 1)
        self.low = (1 << self.deg_shift) - 1
        self.guard = sum(1 << (FIELD_BITS * i + FIELD_BITS - 1) for i in range(n + 1))
        self.guard_low = self.guard & self.low
        # (x | guard) - m keeps every guard bit iff m divides x; the negative tail
        # also rejects a differing module position.
        self.div_check = self.guard | (-1 << self.pos_shift)
        self.ones = sum(1 << (FIELD_BITS * i) for i in range(n))
        self.mono_mask = (1 << self.pos_shift) - 1
        self._index = {name: i for i, name in enumerate(names)}
        self._keys: dict[MonomialOrder, object] = {}

    # identity -----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and self.names == other.names and self.p == other.p

    def __hash__(self):
        return hash((self.names, self.p))

    def __repr__(self):
        return f"PolynomialRing({list(self.names)!r}, p={self.p})"

    # monomial codec -----------------------------------------------------
    def monomial(self, exps: Sequence[int]) -> int:
        if len(exps) != self.n:
            raise ValueError("exponent vector has wrong length")
        deg = sum(exps)
        if deg > MAX_DEGREE:
            raise OverflowError(f"total degree {deg} exceeds {MAX_DEGREE}")
        m = 0
        for i, e in enumerate(exps):
            if e < 0:
                raise ValueError("negative exponent")
            m |= e << (FIELD_BITS * i)
        return m | (deg << self.deg_shift)

    def exponents(self, m: int) -> tuple[int, ...]:
        return tuple((m >> (FIELD_BITS * i)) & FIELD_MASK for i in range(self.n))

    def mdeg(self, m: int) -> int:
        return (m >> self.deg_shift) & FIELD_MASK

    def mpos(self, m: int) -> int:
        return m >> self.pos_shift

    def divides(self, a: int, b: int) -> bool:
        return ((b | self.guard) - a) & self.div_check == self.guard

    def field_sum(self, m: int) -> int:
        if self.n == 0:
            return 0
        return (((m & self.low) * self.ones) >> (FIELD_BITS * (self.n - 1))) & FIELD_MASK

    def lcm(self, a: int, b: int) -> int:
        """lcm of two monomials (module position taken from ``a``)."""
        sel = ((((a | self.guard) - (b & self.low)) & self.guard_low) >> (FIELD_BITS - 1)) * FIELD_MASK
        fields = (a & sel) | (b & self.low & ~sel)
        return fields | (self.field_sum(fields) << self.deg_shift) | (a & ~self.mono_mask)

    def var_monomial(self, i: int, e: int = 1) -> int:
        return (e << (FIELD_BITS * i)) | (e << self.deg_shift)

    def support(self, m: int) -> frozenset[int]:
        return frozenset(i for i in range(self.n) if (m >> (FIELD_BITS * i)) & FIELD_MASK)

    def order_key(self, order: MonomialOrder = GREVLEX):
        """Integer sort key for monomials (larger key = larger monomial)."""
        key = self._keys.get(order)
        if key is not None:
            return key
        low = self.low
        if order.kind == "grevlex":
            def key(m, low=low):
                return m ^ low
        elif order.kind == "lex":
            n = self.n

            def key(m, n=n):
                k = 0
                for i in range(n):
                    k = (k << FIELD_BITS) | ((m >> (FIELD_BITS * i)) & FIELD_MASK)
                return k
        else:
            b = min(order.block, self.n)
            bmask = (1 << (FIELD_BITS * b)) - 1
            bones = sum(1 << (FIELD_BITS * i) for i in range(b))
            top = FIELD_BITS * (b - 1)
            shift = self.pos_shift

            def key(m, low=low, bmask=bmask, bones=bones, top=top, shift=shift):
                bdeg = (((m & bmask) * bones) >> top) & FIELD_MASK
                return (bdeg << shift) | (m ^ low)
        self._keys[order] = key
        return key

    # constructors ---------------------------------------------------------
    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c: int) -> Polynomial:
        c %= self.p
        return Polynomial(self, {0: c} if c else {})

    def var(self, name: str | int) -> Polynomial:
        i = self._index[name] if isinstance(name, str) else name
        return Polynomial(self, {self.var_monomial(i): 1})

    def gens(self) -> list[Polynomial]:
        return [self.var(i) for i in range(self.n)]

    def index(self, name: str) -> int:
        return self._index[name]

    def from_terms(self, terms: Iterable[tuple[int, Sequence[int]]]) -> Polynomial:
        acc: dict[int, int] = {}
        p = self.p
        for c, exps in terms:
            m = self.monomial(exps)
            v = (acc.get(m, 0) + c) % p
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
        return Polynomial(self, acc)

    def parse(self, text: str) -> Polynomial:
        return _Parser(self, text).parse()

    def __call__(self, text: str) -> Polynomial:
        return self.parse(text)

    def extend(self, new_names: Sequence[str], front: bool = True) -> PolynomialRing:
        names = (tuple(new_names) + self.names) if front else (self.names + tuple(new_names))
        return PolynomialRing(names, self.p)


class Polynomial:
    """Immutable element of a :class:`PolynomialRing`.

    ``terms`` maps packed monomials to nonzero coefficients in [1, p).
    Never mutate it after construction.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Mapping[int, int]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # structure ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no degree")
        return max(self.ring.mdeg(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        mdeg = self.ring.mdeg
        return len({mdeg(m) for m in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(m == 0 for m in self.terms)

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[int, int]]:
        key = self.ring.order_key(order)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def iter_terms(self, order: MonomialOrder = GREVLEX) -> Iterator[tuple[int, Monomial]]:
        exps = self.ring.exponents
        for m, c in self.sorted_terms(order):
            yield c, Monomial(exps(m))

    def leading_term(self, order: MonomialOrder = GREVLEX) -> tuple[int, Monomial]:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        key = self.ring.order_key(order)
        m = max(self.terms, key=key)
        return self.terms[m], Monomial(self.ring.exponents(m))

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        return max(self.terms, key=self.ring.order_key(order))

    def variables(self) -> frozenset[int]:
        out: set[int] = set()
        for m in self.terms:
            out |= self.ring.support(m)
        return frozenset(out)

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError("polynomials live in different rings")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ring = self.ring
        p = ring.p
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, int] = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = ma + mb
                out[m] = (get(m, 0) + ca * cb) % p
        out = {m: c for m, c in out.items() if c}
        if out and max(ring.mdeg(m) for m in out) > MAX_DEGREE:
            raise OverflowError("product exceeds the supported total degree")
        return Polynomial(ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c: int) -> Polynomial:
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: v * c % p for m, v in self.terms.items()})

    def mul_monomial(self, mono: int, c: int = 1) -> Polynomial:
        p = self.ring.p
        return Polynomial(self.ring, {m + mono: v * c % p for m, v in self.terms.items()})

    def monic(self, order: MonomialOrder = GREVLEX) -> Polynomial:
        if not self.terms:
            return self
        c = self.terms[self.leading_monomial(order)]
        return self.scale(self.ring.field.inv(c))

    def homogeneous_part(self, d: int) -> Polynomial:
        mdeg = self.ring.mdeg
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if mdeg(m) == d})

    def evaluate(self, point: Sequence[int]) -> int:
        ring = self.ring
        p = ring.p
        total = 0
        for m, c in self.terms.items():
            v = c
            for i in range(ring.n):
                e = (m >> (FIELD_BITS * i)) & FIELD_MASK
                if e:
                    v = v * pow(point[i], e, p) % p
            total += v
        return total % p

    def substitute(self, images: Sequence[Polynomial]) -> Polynomial:
        """Ring map sending variable i to ``images[i]`` (all in one target ring)."""
        if len(images) != self.ring.n:
            raise ValueError("need one image per variable")
        target = images[0].ring if images else self.ring
        powers: dict[tuple[int, int], Polynomial] = {}
        acc = target.zero()
        for m, c in self.terms.items():
            term = target.constant(c)
            for i in range(self.ring.n):
                e = (m >> (FIELD_BITS * i)) & FIELD_MASK
                if e:
                    pw = powers.get((i, e))
                    if pw is None:
                        pw = powers[(i, e)] = images[i] ** e
                    term = term * pw
            acc = acc + term
        return acc

    def change_ring(self, ring: PolynomialRing) -> Polynomial:
        """Reinterpret in a ring whose variables include all of ours."""
        if ring == self.ring:
            return self
        idx = [ring.index(name) for name in self.ring.names]
        out = {}
        for m, c in self.terms.items():
            exps = [0] * ring.n
            for i, e in enumerate(self.ring.exponents(m)):
                exps[idx[i]] = e
            out[ring.monomial(exps)] = c % ring.p
        return Polynomial(ring, out)

    # comparison / display ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def format_monomial(ring: PolynomialRing, m: int) -> str:
    parts = []
    for name, e in zip(ring.names, ring.exponents(m)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    if not f.terms:
        return "0"
    field = f.ring.field
    out = []
    for m, c in f.sorted_terms(order):
        c = field.symmetric(c)
        sign = "-" if c < 0 else "+"
        c = abs(c)
        mono = format_monomial(f.ring, m)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()]))")


class _Parser:
    """Recursive descent over ``expr := term (('+'|'-') term)*``.

    Juxtaposed factors multiply, so ``2x^2 y`` and ``2*x^2*y`` agree.
    """

    def __init__(self, ring: PolynomialRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = self._tokenize(text)
        self.i = 0

    def _tokenize(self, text):
        tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} in {text!r}")
            num, ident, op = m.groups()
            if num is not None:
                tokens.append(("num", int(num)))
            elif ident is not None:
                tokens.append(("id", ident))
            else:
                tokens.append(("op", "^" if op == "**" else op))
            pos = m.end()
        return tokens

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty polynomial")
        f = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return f

    def expr(self):
        kind, val = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.take()
            negate = val == "-"
        f = self.term()
        if negate:
            f = -f
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                g = self.term()
                f = f + g if val == "+" else f - g
            else:
                return f

    def term(self):
        f = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                f = f * self.factor()
            elif kind in ("num", "id") or (kind == "op" and val == "("):
                f = f * self.factor()
            else:
                return f

    def factor(self):
        kind, val = self.take()
        if kind == "num":
            base = self.ring.constant(val)
        elif kind == "id":
            if val not in self.ring._index:
                raise ParseError(f"unknown variable {val!r}")
            base = self.ring.var(val)
        elif kind == "op" and val == "(":
            base = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError(f"unbalanced parentheses in {self.text!r}")
        elif kind == "op" and val == "-":
            return -self.factor()
        else:
            raise ParseError(f"unexpected token {val!r} in {self.text!r}")
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, exp = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a nonnegative integer in {self.text!r}")
            base = base ** exp
        return base


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def leading_term(f: Polynomial, order: MonomialOrder = GREVLEX) -> tuple[int, Monomial]:
    return f.leading_term(order)
