"""Dense univariate polynomials over the residue field k and over O_2.

Coefficients are little-endian tuples of element codes (see :mod:`o2power.ring`)
with trailing zeros stripped, so the zero polynomial is the empty tuple.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from math import gcd

from sympy import divisors, mobius

from .errors import (GcdLpViolation, NonMonic, NonMonicDivisor, NotCoprime,
                     NotFundamentalIrreducible, NotIrreducible,
                     PreconditionViolated, ReductionMismatch, RingMismatch,
                     ZeroPolynomial)
from .ring import ResidueField, RingSpec

# exhaustive equal-degree splitting up to this many candidates
EDF_EXHAUSTIVE_LIMIT = 3 ** 6


def _strip(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _conv(B, a, b):
    if not a or not b:
        return ()
    M = getattr(B, "modulus", None)
    n = len(a) + len(b) - 1
    if M:
        out = [0] * n
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return _strip(v % M for v in out)
    if isinstance(B, RingSpec) and B.m == 1:
        # F_p[u]/u^2: work on (a0, a1) integer pairs
        p = B.p
        a0 = [x % p for x in a]
        a1 = [x // p for x in a]
        b0 = [x % p for x in b]
        b1 = [x // p for x in b]
        lo = [0] * n
        hi = [0] * n
        for i in range(len(a)):
            x0, x1 = a0[i], a1[i]
            if x0 or x1:
                for j in range(len(b)):
                    lo[i + j] += x0 * b0[j]
                    hi[i + j] += x0 * b1[j] + x1 * b0[j]
        return _strip(l % p + p * (h % p) for l, h in zip(lo, hi))
    out = [0] * n
    add, mul = B.add, B.mul
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return _strip(out)


class Poly:
    """Polynomial over a coefficient base (a ResidueField or a RingSpec)."""

    __slots__ = ("base", "c")

    def __init__(self, base, coeffs=()):
        self.base = base
        self.c = _strip(coeffs)

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_ints(cls, base, ints):
        return cls(base, [base.from_int(int(v)) for v in ints])

    @classmethod
    def monomial(cls, base, k, coef=1):
        return cls(base, [0] * k + [coef])

    @classmethod
    def t(cls, base):
        return cls(base, (0, 1))

    @classmethod
    def one(cls, base):
        return cls(base, (1,))

    @classmethod
    def parse(cls, base, text):
        """Parse little-endian comma-separated coefficients, e.g. ``7,-6,1``."""
        toks = [s for s in str(text).split(",")]
        if any(not s.strip() for s in toks):
            raise ValueError(f"empty coefficient in {text!r}")
        return cls(base, [base.parse_elem(s.strip()) for s in toks])

    def _new(self, coeffs):
        return type(self)(self.base, coeffs)

    # -- basic properties ---------------------------------------------------
    @property
    def deg(self):
        if not self.c:
            raise ZeroPolynomial("the zero polynomial has no degree")
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    @property
    def lead(self):
        if not self.c:
            raise ZeroPolynomial("the zero polynomial has no leading coefficient")
        return self.c[-1]

    def is_monic(self):
        return bool(self.c) and self.c[-1] == 1

    def is_one(self):
        return self.c == (1,)

    def __eq__(self, other):
        return isinstance(other, Poly) and type(self) is type(other) and self.base == other.base and self.c == other.c

    def __hash__(self):
        return hash((type(self).__name__, self.c))

    def sort_key(self):
        return (len(self.c), self.c)

    def __len__(self):
        return len(self.c)

    def coeff(self, i):
        return self.c[i] if 0 <= i < len(self.c) else 0

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other):
        if isinstance(other, int):
            return self._new((self.base.from_int(other),))
        if not isinstance(other, Poly) or type(other) is not type(self):
            raise RingMismatch(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.base != self.base:
            raise RingMismatch(f"{other.base} vs {self.base}")
        return other

    def __add__(self, other):
        other = self._check(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        add = self.base.add
        return self._new([add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        neg = self.base.neg
        return self._new([neg(x) for x in self.c])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return self._new(_conv(self.base, self.c, other.c))

    __rmul__ = __mul__

    def scale(self, code):
        mul = self.base.mul
        return self._new([mul(code, x) for x in self.c])

    def shift(self, k):
        """Multiply by t^k."""
        return self._new((0,) * k + self.c) if self.c else self

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative exponent")
        r = self._new((1,))
        a = self
        while e:
            if e & 1:
                r = r * a
            e >>= 1
            if e:
                a = a * a
        return r

    def divmod(self, d):
        """Division by a polynomial whose leading coefficient is a unit."""
        d = self._check(d)
        if not d.c:
            raise ZeroPolynomial("division by the zero polynomial")
        B = self.base
        lc = d.c[-1]
        if not B.is_unit(lc):
            raise NonMonicDivisor("divisor leading coefficient is not a unit")
        inv = 1 if lc == 1 else B.inv(lc)
        r = list(self.c)
        dn = len(d.c) - 1
        if len(r) <= dn:
            return self._new(()), self._new(r)
        qt = [0] * (len(r) - dn)
        mul, sub = B.mul, B.sub
        M = getattr(B, "modulus", None)
        dc = d.c
        for k in range(len(r) - 1, dn - 1, -1):
            c = r[k]
            if not c:
                continue
            if inv != 1:
                c = mul(c, inv)
            qt[k - dn] = c
            if M:
                for j in range(dn + 1):
                    r[k - dn + j] = (r[k - dn + j] - c * dc[j]) % M
            else:
                for j in range(dn + 1):
                    if dc[j]:
                        r[k - dn + j] = sub(r[k - dn + j], mul(c, dc[j]))
        return self._new(qt), self._new(r[:dn])

    def __mod__(self, d):
        return self.divmod(d)[1]

    def __floordiv__(self, d):
        return self.divmod(d)[0]

    def exact_div(self, d):
        q, r = self.divmod(d)
        if r.c:
            raise ValueError("division is not exact")
        return q

    def divides(self, other):
        return not (other % self).c

    def derivative(self):
        B = self.base
        return self._new([B.mul(B.from_int(i), x) for i, x in enumerate(self.c)][1:])

    def compose(self, inner, mod=None):
        """self(inner), optionally reduced modulo ``mod`` at every Horner step."""
        inner = self._check(inner)
        r = self._new(())
        for x in reversed(self.c):
            r = r * inner + self._new((x,))
            if mod is not None:
                r = r % mod
        return r

    def subs_power(self, L):
        """self(t^L) by spreading coefficients."""
        if not self.c:
            return self
        out = [0] * ((len(self.c) - 1) * L + 1)
        for i, x in enumerate(self.c):
            out[i * L] = x
        return self._new(out)

    def powmod(self, e, mod):
        r = self._new((1,)) % mod
        a = self % mod
        while e:
            if e & 1:
                r = (r * a) % mod
            e >>= 1
            if e:
                a = (a * a) % mod
        return r

    def eval(self, x):
        B = self.base
        r = 0
        for c in reversed(self.c):
            r = B.add(B.mul(r, x), c)
        return r

    # -- text ---------------------------------------------------------------
    def to_text(self):
        fmt = self.base.format_elem
        return ",".join(fmt(x) for x in self.c) if self.c else "0"

    def pretty(self, var="t"):
        if not self.c:
            return "0"
        fmt = self.base.format_elem
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            x = self.c[i]
            if not x:
                continue
            s = fmt(x)
            if "+" in s:
                s = f"({s})"
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                terms.append(s)
            elif x == 1:
                terms.append(mono)
            else:
                terms.append(f"{s}{mono}")
        return "+".join(terms)

    def __str__(self):
        return self.pretty()

    def __repr__(self):
        return f"{type(self).__name__}({self.pretty()})"

    def to_json(self):
        return [self.base.format_elem(x) for x in self.c]


class PolyK(Poly):
    """Polynomial over the residue field k = F_q."""

    __slots__ = ()

    @property
    def field(self):
        return self.base

    def monic(self):
        if not self.c:
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        lc = self.c[-1]
        return self if lc == 1 else self.scale(self.base.inv(lc))

    def gcd(self, other):
        a, b = self, self._check(other)
        while b.c:
            a, b = b, a % b
        return a.monic() if a.c else a

    def xgcd(self, other):
        """(g, s, t) with s*self + t*other = g monic."""
        other = self._check(other)
        r0, r1 = self, other
        s0, s1 = self._new((1,)), self._new(())
        t0, t1 = self._new(()), self._new((1,))
        while r1.c:
            qt, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - qt * s1
            t0, t1 = t1, t0 - qt * t1
        if not r0.c:
            raise ZeroPolynomial("gcd of two zero polynomials")
        inv = self.base.inv(r0.c[-1])
        return r0.scale(inv), s0.scale(inv), t0.scale(inv)

    def lift(self, ring):
        if ring.field != self.base:
            raise RingMismatch("residue field does not belong to this ring")
        return PolyO2(ring, [ring.lift(x) for x in self.c])

    def pi_times(self, ring):
        """pi * lift(self) as a polynomial over O_2."""
        if ring.field != self.base:
            raise RingMismatch("residue field does not belong to this ring")
        return PolyO2(ring, [ring.pi_times(x) for x in self.c])

    def is_squarefree(self):
        if not self.c:
            raise ZeroPolynomial("zero polynomial")
        if len(self.c) <= 2:
            return True
        return self.gcd(self.derivative()).is_one()


class PolyO2(Poly):
    """Polynomial over O_2."""

    __slots__ = ()

    @property
    def ring(self):
        return self.base

    def theta(self):
        R = self.base
        return PolyK(R.field, [R.theta(x) for x in self.c])

    def div_pi(self):
        """The k-polynomial d with self = pi * lift(d); self must reduce to zero."""
        R = self.base
        return PolyK(R.field, [R.div_pi(x) for x in self.c])

    def in_max_ideal(self):
        R = self.base
        return all(R.theta(x) == 0 for x in self.c)


def poly_k(field, ints):
    return PolyK.from_ints(field, ints)


def poly_o2(ring, ints):
    return PolyO2.from_ints(ring, ints)


# ---------------------------------------------------------------------------
# factorization over k
# ---------------------------------------------------------------------------

def _pth_root(f):
    F = f.base
    p = F.p
    e = F.q // p
    return f._new([F.pow(f.c[i], e) for i in range(0, len(f.c), p)])


def _squarefree_decomposition(f):
    """Monic f -> list of (squarefree monic g, multiplicity i)."""
    out = []
    if f.deg == 0:
        return out
    c = f.gcd(f.derivative())
    w = f.exact_div(c)
    i = 1
    while not w.is_one():
        y = w.gcd(c)
        fac = w.exact_div(y)
        if not fac.is_one():
            out.append((fac, i))
        w = y
        c = c.exact_div(y)
        i += 1
    if not c.is_one():
        p = f.base.p
        for g, j in _squarefree_decomposition(_pth_root(c)):
            out.append((g, j * p))
    return out


def _distinct_degree(f):
    t = PolyK.t(f.base)
    q = f.base.q
    out = []
    h = t % f
    i = 1
    rest = f
    while rest.deg >= 2 * i:
        h = h.powmod(q, rest)
        g = rest.gcd(h - t)
        if not g.is_one():
            out.append((g, i))
            rest = rest.exact_div(g)
            h = h % rest
        i += 1
    if rest.deg > 0:
        out.append((rest, rest.deg))
    return out


def _monic_of_degree(F, d):
    for low in product(range(F.q), repeat=d):
        yield PolyK(F, low + (1,))


def _equal_degree(g, d, rng):
    F = g.base
    k = g.deg // d
    if k == 1:
        return [g]
    if F.q ** d <= EDF_EXHAUSTIVE_LIMIT:
        found = []
        rest = g
        for h in _monic_of_degree(F, d):
            if h.divides(rest):
                found.append(h)
                rest = rest.exact_div(h)
                if len(found) == k - 1:
                    found.append(rest)
                    break
        return found
    # Cantor-Zassenhaus, odd q
    e = (F.q ** d - 1) // 2
    while True:
        a = PolyK(F, [rng.randrange(F.q) for _ in range(g.deg)])
        if len(a.c) <= 1:
            continue
        b = a.powmod(e, g) - 1
        s = g.gcd(b)
        if 0 < s.deg < g.deg:
            return _equal_degree(s, d, rng) + _equal_degree(g.exact_div(s), d, rng)


def k_factor(f, seed=0):
    """Factor a nonzero polynomial over k into monic irreducibles.

    Returns ``[(factor, multiplicity), ...]`` sorted by (degree, coefficients);
    the leading coefficient of ``f`` is dropped.  ``seed`` drives the
    randomized splitting used only for large residue fields.
    """
    if not f.c:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    rng = random.Random(seed)
    f = f.monic()
    mult = {}
    for sq, i in _squarefree_decomposition(f):
        for g, d in _distinct_degree(sq):
            for h in _equal_degree(g, d, rng):
                mult[h] = mult.get(h, 0) + i
    return sorted(mult.items(), key=lambda kv: kv[0].sort_key())


def is_irreducible_k(f):
    if not f.c:
        raise ZeroPolynomial("zero polynomial")
    if f.deg < 1:
        return False
    fs = k_factor(f)
    return len(fs) == 1 and fs[0][1] == 1


# ---------------------------------------------------------------------------
# O_2 division and Hensel splitting
# ---------------------------------------------------------------------------

def monic_divmod(F, G):
    """F = Q*G + R with deg R < deg G; G must be monic."""
    if not G.is_monic():
        raise NonMonicDivisor("divisor must be monic")
    return F.divmod(G)


def inv_mod(P, M):
    """Inverse of P modulo a monic M over O_2 (or over k)."""
    if isinstance(P, PolyK):
        g, s, _ = P.xgcd(M)
        if not g.is_one():
            raise NotCoprime("polynomial is not invertible modulo the divisor")
        return s % M
    R = P.base
    g, s, _ = P.theta().xgcd(M.theta())
    if not g.is_one():
        raise NotCoprime("polynomial is not invertible modulo the divisor")
    y = s.lift(R)
    two = PolyO2(R, (R.from_int(2),))
    return (y * (two - P * y)) % M


def bezout_O2(F, G):
    """(A, B) with A*F + B*G = 1 over O_2; requires coprime reductions."""
    R = F.base
    g, s, t = F.theta().xgcd(G.theta())
    if not g.is_one():
        raise NotCoprime("reductions are not coprime")
    A, B = s.lift(R), t.lift(R)
    M = A * F + B * G - 1
    corr = PolyO2(R, (1,)) - M
    return A * corr, B * corr


def hensel_split(F, g1, g2):
    """Lift a coprime factorization theta(F) = g1*g2 to F = G1*G2 with G1 monic."""
    R = F.base
    if not g1.is_monic():
        raise NonMonic("g1 must be monic")
    if F.theta() != g1 * g2:
        raise ReductionMismatch("theta(F) differs from g1*g2")
    gg, s, t = g1.xgcd(g2)
    if not gg.is_one():
        raise NotCoprime("g1 and g2 are not coprime")
    G1, G2 = g1.lift(R), g2.lift(R)
    delta = (F - G1 * G2).div_pi()
    # delta = a*g2 + b*g1 with deg a < deg g1
    a = (delta * t) % g1
    b = (delta - a * g2).exact_div(g1)
    G1 = G1 + a.pi_times(R)
    G2 = G2 + b.pi_times(R)
    return G1, G2


@dataclass(frozen=True)
class Component:
    """A primary component G of F with theta(G) = f^r.

    ``root`` is the monic fundamental irreducible with root^r = G, or None
    when G is not an r-th power of one.
    """

    G: PolyO2
    f: PolyK
    r: int
    root: PolyO2 | None

    @property
    def certified(self):
        return self.root is not None


@dataclass(frozen=True)
class FundFactorization:
    components: tuple

    @property
    def complete(self):
        return all(c.certified for c in self.components)

    @property
    def factors(self):
        """[(F_i, r_i)] when every component is certified, else None."""
        if not self.complete:
            return None
        return [(c.root, c.r) for c in self.components]

    def product(self):
        out = None
        for c in self.components:
            out = c.G if out is None else out * c.G
        return out

    def to_json(self):
        out = []
        for c in self.components:
            item = {"component": c.G.to_text(), "reduction": c.f.to_text(), "multiplicity": c.r}
            if c.root is not None:
                item["coeffs"] = c.root.to_text()
            else:
                item["coeffs"] = None
                item["status"] = "NotPrimaryPower"
            out.append(item)
        return out


def fundamental_factorization(F):
    """Split monic F along the coprime primary parts of its reduction."""
    if not F.is_monic():
        raise NonMonic("polynomial must be monic")
    fs = k_factor(F.theta())
    comps = []
    rest = F
    for i, (f, r) in enumerate(fs):
        fr = f ** r
        if i == len(fs) - 1:
            G = rest
        else:
            G, rest = hensel_split(rest, fr, rest.theta().exact_div(fr))
        comps.append(Component(G, f, r, is_rth_power_of_fundamental(G, f, r)))
    comps.sort(key=lambda c: (c.f.deg, c.r, (c.root or c.G).c))
    return FundFactorization(tuple(comps))


def is_rth_power_of_fundamental(G, f, r):
    """Monic fundamental irreducible F with F^r = G, or None."""
    R = G.base
    if G.theta() != f ** r:
        raise ReductionMismatch("theta(G) is not f^r")
    F0 = f.lift(R)
    if r == 1:
        return G
    delta = (G - F0 ** r).div_pi()
    if r % R.p == 0:
        return F0 if not delta.c else None
    div = (f ** (r - 1)).scale(f.base.from_int(r))
    qt, rem = delta.divmod(div)
    if rem.c:
        return None
    Fr = F0 + qt.pi_times(R)
    assert Fr ** r == G
    return Fr


# ---------------------------------------------------------------------------
# L-power polynomials
# ---------------------------------------------------------------------------

def _require_irreducible(f):
    if not f.is_monic() or not is_irreducible_k(f):
        raise NotIrreducible(f"{f} is not monic irreducible")


def k_L_power_test(f, L):
    """Does f(t^L) have an irreducible factor of the same degree as f?"""
    _require_irreducible(f)
    if L < 1:
        raise ValueError("L must be positive")
    if f.c == (0, 1):
        return True
    Q = f.base.q ** f.deg
    e = (Q - 1) // gcd(L, Q - 1)
    return PolyK.t(f.base).powmod(e, f).is_one()


def k_L_power_factors(f, L):
    """All monic irreducible factors of f(t^L) of degree deg f, sorted."""
    _require_irreducible(f)
    F = f.base
    d = f.deg
    if f.c == (0, 1):
        return [f]
    Q = F.q ** d
    Lr = L % (Q - 1) or (Q - 1)
    P = f.subs_power(Lr)
    t = PolyK.t(F)
    g = P.gcd(t.powmod(Q, P) - t)
    if g.is_one():
        return []
    return [h for h, _ in k_factor(g) if h.deg == d]


def is_L_power_poly(F, L):
    """Is the monic fundamental irreducible F an L-power polynomial?"""
    f = _check_fundamental(F)
    _check_gcd(F.base, L)
    if f.c == (0, 1):
        return L == 1 or F.c == (0, 1)
    return k_L_power_test(f, L)


def L_power_factor(F, L):
    """A monic fundamental irreducible factor of F(t^L) of degree deg F, or None."""
    f = _check_fundamental(F)
    _check_gcd(F.base, L)
    if L == 1:
        return F
    if f.c == (0, 1):
        return PolyO2.t(F.base) if F.c == (0, 1) else None
    vs = k_L_power_factors(f, L)
    if not vs:
        return None
    FL = F.subs_power(L)
    v = vs[0]
    G1, _ = hensel_split(FL, v, FL.theta().exact_div(v))
    return G1


def _check_fundamental(F):
    if not F.is_monic():
        raise NonMonic("polynomial must be monic")
    f = F.theta()
    if not is_irreducible_k(f):
        raise NotFundamentalIrreducible(f"reduction {f} is not irreducible")
    return f


def _check_gcd(R, L):
    if L < 1:
        raise ValueError("L must be positive")
    if L % R.p == 0:
        raise GcdLpViolation(f"gcd(L={L}, p={R.p}) != 1")


# ---------------------------------------------------------------------------
# root lifting
# ---------------------------------------------------------------------------

def hensel_root_lift_k(h, n):
    """z with z = t mod h and h(z) = 0 mod h^n (Newton iteration over k)."""
    _require_irreducible(h)
    if n < 1:
        raise ValueError("n must be >= 1")
    t = PolyK.t(h.base)
    if n == 1:
        return t
    H = h ** n
    dh = h.derivative()
    z = t % H
    k = 1
    while k < n:
        k = min(2 * k, n)
        Hk = h ** k
        z = (z - h.compose(z, Hk) * inv_mod(dh.compose(z, Hk), Hk)) % Hk
    return z % H


def hensel_root_lift_O2(F, r, z):
    """Lift z to Z over O_2 with theta(Z) = z, Z = t mod F and F(Z) = 0 mod F^r."""
    R = F.base
    f = _check_fundamental(F)
    if r < 1:
        raise ValueError("r must be >= 1")
    t = PolyK.t(f.base)
    if (z - t) % f:
        raise PreconditionViolated("z is not congruent to t modulo theta(F)")
    if f.compose(z) % (f ** r):
        raise PreconditionViolated("theta(F)(z) is not divisible by theta(F)^r")
    T = PolyO2.t(R)
    V = T + F * (z - t).exact_div(f).lift(R)
    dF = F.derivative()
    Fj = F  # F^(j-1)
    for j in range(2, r + 1):
        G = F.compose(V).exact_div(Fj)
        D = inv_mod(dF.compose(V, F), F)
        W0 = (-(G * D)) % F
        V = V + Fj * W0
        Fj = Fj * F
        w = (V.theta() - z).exact_div(f ** j)
        V = V - Fj * w.lift(R)
    return V


# ---------------------------------------------------------------------------
# counting formulas
# ---------------------------------------------------------------------------

def count_N(q, d):
    """Monic irreducibles of degree d over F_q other than t."""
    if d == 1:
        return q - 1
    return sum(mobius(r) * q ** (d // r) for r in divisors(d)) // d


def count_N_kL(q, d, L):
    """L-power irreducibles of degree d over F_q.

    Counted as the elements of the L-th power subgroup of F_{q^d}^x that
    generate F_{q^d}, divided by d.  The subgroup meets F_{q^e}^x in
    gcd(|H|, q^e - 1) elements, so Mobius inversion over subfields gives
    the count.
    """
    if gcd(L, q) != 1:
        raise GcdLpViolation(f"gcd(L={L}, q={q}) != 1")
    if d == 1:
        return (q - 1) // gcd(L, q - 1)
    h = (q ** d - 1) // gcd(L, q ** d - 1)
    total = sum(mobius(s) * gcd(h, q ** (d // s) - 1) for s in divisors(d))
    return total // d


def count_N_O2L(q, mabs, d, L):
    """L-power fundamental irreducibles of degree d over O_2."""
    if d == 1:
        return (q * mabs - mabs) // gcd(L, q - 1)
    return count_N_kL(q, d, L) * mabs ** d
