"""Finite local principal ideal rings of length two and their residue fields.

Two ring families are supported, both with odd residue characteristic p:

* ``zp2:<p>``                 Z/p^2,        uniformizer p
* ``fqu2:<p>:<m>[:<g>]``      F_q[u]/(u^2), uniformizer u, q = p^m,
                              F_q = F_p[x]/(g)

Elements are stored as small integer *codes* so that equality of elements is
integer equality and polynomials/matrices hash cheaply:

* residue field element c_0 + c_1 x + ... : code = sum c_i p^i
* Z/p^2 element: its least nonnegative residue
* a_0 + u a_1 in F_q[u]/(u^2): code = a_0 + q a_1

With these encodings the canonical section of the reduction map is the
identity on codes: ``lift(c) == c`` and ``theta(lift(c)) == c``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from sympy import isprime

from .errors import InvOfNonUnit, RingMismatch, RingSpecError

# Moduli for F_q, little-endian coefficients of a monic irreducible over F_p.
DEFAULT_MODULI = {
    9: (1, 0, 1),       # x^2 + 1
    25: (2, 0, 1),      # x^2 + 2
    27: (1, 2, 0, 1),   # x^3 + 2x + 1
}

_MAX_TABLE_Q = 2048

_TERM = re.compile(r"^(\d*)(?:\*?(x)(?:\^(\d+))?)?\*?(u)?$")


def _parse_terms(text):
    """Split ``"2+x^2u-3xu"`` into ``[(2, 0, 0), (1, 2, 1), (-3, 1, 1)]``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty element")
    if s[0] not in "+-":
        s = "+" + s
    out = []
    for sign, body in re.findall(r"([+-])([^+-]*)", s):
        if "(" in body or ")" in body:
            raise ValueError(f"parentheses are not supported: {text!r}")
        mt = _TERM.match(body)
        if not body or mt is None:
            raise ValueError(f"cannot parse element {text!r}")
        digits, xs, xexp, us = mt.groups()
        if not digits and not xs and not us:
            raise ValueError(f"cannot parse element {text!r}")
        coef = int(digits) if digits else 1
        e = (int(xexp) if xexp else 1) if xs else 0
        out.append((-coef if sign == "-" else coef, e, 1 if us else 0))
    return out


class ResidueField:
    """The finite field F_q = F_p[x]/(g) on integer codes 0..q-1."""

    def __init__(self, p, m=1, g=None):
        self.p = p
        self.m = m
        self.q = p ** m
        self.size = self.q
        if m == 1:
            self.g = None
            self.modulus = p
        else:
            if self.q > _MAX_TABLE_Q:
                raise RingSpecError(f"residue field of order {self.q} is beyond desk scale")
            self.g = tuple(g)
            self.modulus = None
            self._build_tables()

    def __repr__(self):
        return f"ResidueField(F_{self.q})"

    def __eq__(self, other):
        return isinstance(other, ResidueField) and (self.p, self.m, self.g) == (other.p, other.m, other.g)

    def __hash__(self):
        return hash((self.p, self.m, self.g))

    # -- codes <-> coefficient vectors -------------------------------------
    def digits(self, a):
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, ds):
        a = 0
        for d in reversed(ds):
            a = a * self.p + d % self.p
        return a

    def _build_tables(self):
        p, m, q, g = self.p, self.m, self.q, self.g
        digs = [self.digits(a) for a in range(q)]
        self._add = [[self.from_digits([x + y for x, y in zip(da, db)]) for db in digs] for da in digs]
        self._neg = [self.from_digits([-x for x in da]) for da in digs]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * m - 1)
                for i, x in enumerate(digs[a]):
                    if x:
                        for j, y in enumerate(digs[b]):
                            prod[i + j] += x * y
                for k in range(2 * m - 2, m - 1, -1):
                    c = prod[k] % p
                    if c:
                        for j in range(m + 1):
                            prod[k - m + j] -= c * g[j]
                mul[a][b] = mul[b][a] = self.from_digits(prod[:m])
        self._mul = mul
        inv = [0] * q
        for a in range(1, q):
            row = mul[a]
            inv[a] = row.index(1)
        self._inv = inv

    # -- arithmetic ---------------------------------------------------------
    def add(self, a, b):
        if self.modulus:
            return (a + b) % self.modulus
        return self._add[a][b]

    def neg(self, a):
        if self.modulus:
            return -a % self.modulus
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.modulus:
            return a * b % self.modulus
        return self._mul[a][b]

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise InvOfNonUnit("zero has no inverse in the residue field")
        if self.modulus:
            return pow(a, -1, self.modulus)
        return self._inv[a]

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def from_int(self, n):
        return n % self.p

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def is_square(self, a):
        return a == 0 or self.pow(a, (self.q - 1) // 2) == 1

    # -- text ---------------------------------------------------------------
    def parse_elem(self, text):
        a = 0
        for coef, e, ue in _parse_terms(str(text)):
            if ue:
                raise ValueError(f"u is not an element of the residue field: {text!r}")
            if e and self.m == 1:
                raise ValueError(f"x is not defined over the prime field: {text!r}")
            mono = self.pow(self.p, e) if e else 1
            a = self.add(a, self.mul(self.from_int(coef), mono))
        return a

    def format_elem(self, a):
        if self.m == 1:
            return str(a)
        terms = []
        for i, c in reversed(list(enumerate(self.digits(a)))):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "x" if i == 1 else f"x^{i}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) if terms else "0"


@dataclass(frozen=True)
class RingSpec:
    """A length-two local principal ideal ring O_2 (``zp2`` or ``fqu2``).

    Arithmetic methods act on integer codes; use ``ring(value)`` to get an
    :class:`O2Elem` with operator overloading.
    """

    kind: str
    p: int
    m: int = 1
    g: tuple | None = None
    field: ResidueField = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in ("zp2", "fqu2"):
            raise RingSpecError(f"unknown ring kind {self.kind!r}")
        if not isinstance(self.p, int) or not isprime(self.p):
            raise RingSpecError(f"p={self.p} is not prime")
        if self.p == 2:
            raise RingSpecError("even characteristic is not supported")
        if self.m < 1:
            raise RingSpecError("extension degree must be >= 1")
        if self.kind == "zp2" and self.m != 1:
            raise RingSpecError("zp2 rings have m = 1")
        g = self.g
        if self.m == 1:
            if g is not None and tuple(g) not in ((0, 1),):
                raise RingSpecError("a modulus is only meaningful for m > 1")
            g = None
        else:
            if g is None:
                g = DEFAULT_MODULI.get(self.p ** self.m)
                if g is None:
                    raise RingSpecError(f"no built-in modulus for q={self.p ** self.m}; supply g")
            g = tuple(int(c) % self.p for c in g)
            if len(g) != self.m + 1 or g[-1] != 1:
                raise RingSpecError("g must be monic of degree m")
            if not _is_irreducible_mod_p(g, self.p):
                raise RingSpecError(f"g={g} is not irreducible over F_{self.p}")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "field", ResidueField(self.p, self.m, g))

    # -- derived sizes --------------------------------------------------------
    @property
    def q(self):
        return self.p ** self.m

    @property
    def size(self):
        return self.q * self.q

    @property
    def mabs(self):
        """Cardinality of the maximal ideal."""
        return self.q

    @cached_property
    def modulus(self):
        return self.p * self.p if self.kind == "zp2" else None

    @property
    def pi(self):
        return self.p if self.kind == "zp2" else self.q

    def __str__(self):
        if self.kind == "zp2":
            return f"zp2:{self.p}"
        s = f"fqu2:{self.p}:{self.m}"
        if self.m > 1 and self.g != DEFAULT_MODULI.get(self.q):
            s += ":" + ",".join(map(str, self.g))
        return s

    def __call__(self, value):
        if isinstance(value, O2Elem):
            if value.ring != self:
                raise RingMismatch(f"{value.ring} vs {self}")
            return value
        if isinstance(value, str):
            return O2Elem(self, self.parse_elem(value))
        if isinstance(value, tuple):
            a0, a1 = value
            return O2Elem(self, self.from_pair(a0, a1))
        return O2Elem(self, self.from_int(int(value)))

    # -- code arithmetic -------------------------------------------------------
    def from_int(self, n):
        if self.kind == "zp2":
            return n % self.modulus
        return n % self.p

    def from_pair(self, a0, a1):
        """Code of a0 + pi*a1 for residue-field codes a0, a1 (a1 only matters mod pi)."""
        return self.add(self.lift(a0), self.pi_times(a1))

    def pair(self, a):
        """Inverse of :meth:`from_pair` with both parts canonical."""
        if self.kind == "zp2":
            return a % self.p, a // self.p
        return a % self.q, a // self.q

    def theta(self, a):
        return a % (self.p if self.kind == "zp2" else self.q)

    def lift(self, c):
        return c

    def pi_times(self, c):
        """pi * lift(c); depends only on the residue class c."""
        return self.p * c if self.kind == "zp2" else self.q * c

    def div_pi(self, a):
        """The residue class c with a = pi * lift(c); a must lie in the maximal ideal."""
        if self.theta(a):
            raise ValueError("element is not in the maximal ideal")
        return a // (self.p if self.kind == "zp2" else self.q)

    def add(self, a, b):
        if self.kind == "zp2":
            return (a + b) % self.modulus
        F, q = self.field, self.q
        return F.add(a % q, b % q) + q * F.add(a // q, b // q)

    def neg(self, a):
        if self.kind == "zp2":
            return -a % self.modulus
        F, q = self.field, self.q
        return F.neg(a % q) + q * F.neg(a // q)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.kind == "zp2":
            return a * b % self.modulus
        F, q = self.field, self.q
        a0, a1 = a % q, a // q
        b0, b1 = b % q, b // q
        return F.mul(a0, b0) + q * F.add(F.mul(a0, b1), F.mul(a1, b0))

    def is_unit(self, a):
        return self.theta(a) != 0

    def inv(self, a):
        t = self.theta(a)
        if t == 0:
            raise InvOfNonUnit(f"{self.format_elem(a)} is not a unit of {self}")
        y = self.lift(self.field.inv(t))
        # one Newton step y <- y(2 - a y) is exact because m^2 = 0
        return self.mul(y, self.sub(self.from_int(2), self.mul(a, y)))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def elements(self):
        return range(self.size)

    def units(self):
        return [a for a in range(self.size) if self.is_unit(a)]

    def maximal_ideal(self):
        return [self.pi_times(c) for c in range(self.q)]

    # -- text -----------------------------------------------------------------
    def parse_elem(self, text):
        text = str(text).strip()
        if self.kind == "zp2":
            try:
                return int(text) % self.modulus
            except ValueError:
                raise ValueError(f"cannot parse {text!r} as an element of {self}") from None
        F = self.field
        parts = [0, 0]
        for coef, e, ue in _parse_terms(text):
            mono = F.pow(self.p if self.m > 1 else 1, e) if e else 1
            if e and self.m == 1:
                raise ValueError(f"x is not defined over the prime field: {text!r}")
            parts[ue] = F.add(parts[ue], F.mul(F.from_int(coef), mono))
        return self.from_pair(parts[0], parts[1])

    def format_elem(self, a):
        if self.kind == "zp2":
            return str(a)
        F = self.field
        a0, a1 = self.pair(a)

        def wrap(c):
            s = F.format_elem(c)
            return f"({s})" if "+" in s else s

        if not a1:
            return F.format_elem(a0)
        upart = "u" if a1 == 1 else f"{wrap(a1)}u"
        return upart if not a0 else f"{F.format_elem(a0)}+{upart}"


def _is_irreducible_mod_p(g, p):
    """Brute-force irreducibility of a small monic polynomial over F_p."""
    m = len(g) - 1
    for d in range(1, m // 2 + 1):
        for low in product(range(p), repeat=d):
            h = list(low) + [1]
            r = list(g)
            for k in range(m, d - 1, -1):
                c = r[k] % p
                if c:
                    for j in range(d + 1):
                        r[k - d + j] -= c * h[j]
            if all(x % p == 0 for x in r[:d]):
                return False
    return True


def parse_ring(text):
    """Parse ``zp2:<p>`` or ``fqu2:<p>:<m>[:<g little-endian>]``."""
    parts = str(text).strip().split(":")
    try:
        if parts[0] == "zp2" and len(parts) == 2:
            return RingSpec("zp2", int(parts[1]))
        if parts[0] == "fqu2" and len(parts) in (3, 4):
            g = tuple(int(c) for c in parts[3].split(",")) if len(parts) == 4 else None
            return RingSpec("fqu2", int(parts[1]), int(parts[2]), g)
    except ValueError as exc:
        if isinstance(exc, RingSpecError):
            raise
        raise RingSpecError(f"malformed ring spec {text!r}") from exc
    raise RingSpecError(f"malformed ring spec {text!r}")


class _Elem:
    __slots__ = ("_base", "code")

    def __init__(self, base, code):
        self._base = base
        self.code = code

    def _other(self, other):
        if isinstance(other, _Elem):
            if other._base != self._base:
                raise RingMismatch(f"{other._base} vs {self._base}")
            return other.code
        if isinstance(other, int):
            return self._base.from_int(other)
        return NotImplemented

    def _wrap(self, code):
        return type(self)(self._base, code)

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self._base.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self._base.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self._base.sub(b, self.code))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self._base.mul(self.code, b))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(self._base.neg(self.code))

    def __pow__(self, e):
        return self._wrap(self._base.pow(self.code, e))

    def inv(self):
        return self._wrap(self._base.inv(self.code))

    def is_unit(self):
        return self._base.is_unit(self.code)

    def __eq__(self, other):
        if isinstance(other, _Elem):
            return self._base == other._base and self.code == other.code
        if isinstance(other, int):
            return self.code == self._base.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self._base, self.code))

    def __str__(self):
        return self._base.format_elem(self.code)


class KElem(_Elem):
    """Residue field element."""

    __slots__ = ()

    @property
    def field(self):
        return self._base

    @property
    def value(self):
        F = self._base
        return self.code if F.m == 1 else tuple(F.digits(self.code))

    def lift(self, ring):
        if ring.field != self._base:
            raise RingMismatch("residue field does not belong to this ring")
        return O2Elem(ring, ring.lift(self.code))

    def __repr__(self):
        return f"KElem({self}, F_{self._base.q})"


class O2Elem(_Elem):
    """Element of O_2; ``value`` is an int (zp2) or a residue pair (a0, a1)."""

    __slots__ = ()

    @property
    def ring(self):
        return self._base

    @property
    def value(self):
        R = self._base
        if R.kind == "zp2":
            return self.code
        a0, a1 = R.pair(self.code)
        return KElem(R.field, a0), KElem(R.field, a1)

    def theta(self):
        return KElem(self._base.field, self._base.theta(self.code))

    def __repr__(self):
        return f"O2Elem({self}, {self._base})"


def theta(x):
    """Reduction O_2 -> k, on elements (polynomials and matrices have .theta())."""
    return x.theta()


def lift(a, ring):
    """Canonical section k -> O_2."""
    return a.lift(ring)
