"""Exact generating functions for regular semisimple / compatible cyclic
probabilities and class counts in GL_n(O_2).

All arithmetic is in :class:`fractions.Fraction`; products over d are
truncated at total degree N, which is exact for coefficients up to N.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from sympy import factorint

from .errors import BadParams
from .poly import count_N, count_N_kL, count_N_O2L

FAMILIES = ("s", "sL", "r", "rL", "cs", "csL", "cr", "crL")
MAX_N = 64


@dataclass(frozen=True)
class Series:
    coefficients: tuple
    family: str
    q: int
    mabs: int
    L: int | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def __getitem__(self, n):
        return self.coefficients[n]

    def __len__(self):
        return len(self.coefficients)

    def to_json(self):
        return [{"n": n, "numerator": str(c.numerator), "denominator": str(c.denominator)}
                for n, c in enumerate(self.coefficients)]

    def to_tsv(self):
        lines = ["n\tnumerator\tdenominator"]
        for n, c in enumerate(self.coefficients):
            lines.append(f"{n}\t{c.numerator}\t{c.denominator}")
        return "\n".join(lines) + "\n"


def _mul(a, b, N):
    out = [Fraction(0)] * (N + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(min(len(b), N + 1 - i)):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def _binom_power(x, E, N):
    """(1 + x)^E truncated, x a series with zero constant term, E >= 0 an integer."""
    out = [Fraction(0)] * (N + 1)
    out[0] = Fraction(1)
    xk = [Fraction(1)] + [Fraction(0)] * N
    # lowest degree of x bounds the useful k
    low = next((i for i, c in enumerate(x) if c), None)
    if low is None:
        return out
    for k in range(1, N // low + 1):
        xk = _mul(xk, x, N)
        c = comb(E, k)
        if not c:
            break
        for i in range(N + 1):
            if xk[i]:
                out[i] += c * xk[i]
    return out


def _check(family, q, mabs, L, N):
    if family not in FAMILIES:
        raise BadParams(f"unknown family {family!r}")
    fac = factorint(q) if q > 1 else {}
    if len(fac) != 1 or 2 in fac:
        raise BadParams(f"q={q} is not an odd prime power")
    if mabs != q:
        raise BadParams("|m| must equal q for length-two rings")
    if not 0 <= N <= MAX_N:
        raise BadParams(f"N must lie in [0, {MAX_N}]")
    if family.endswith("L"):
        if L is None or L < 1:
            raise BadParams("this family needs a positive L")
        p = next(iter(fac))
        if L % p == 0:
            raise BadParams(f"gcd(L={L}, p={p}) != 1")


def _exponent(family, q, mabs, L, d):
    if family.endswith("L"):
        return count_N_O2L(q, mabs, d, L)
    return mabs ** d * count_N(q, d)


def series(family, q, mabs, L=None, N=8):
    """Truncated product expansion of one of the product generating functions."""
    _check(family, q, mabs, L, N)
    out = [Fraction(1)] + [Fraction(0)] * N
    for d in range(1, N + 1):
        E = _exponent(family, q, mabs, L, d)
        x = [Fraction(0)] * (N + 1)
        base = family.rstrip("L")
        if base == "s":
            x[d] = Fraction(1, mabs ** d * (q ** d - 1))
            factor = _binom_power(x, E, N)
        elif base == "r":
            for s in range(1, N // d + 1):
                x[d * s] = Fraction(1, mabs ** (d * s) * q ** ((s - 1) * d) * (q ** d - 1))
            factor = _binom_power(x, E, N)
        elif base == "cs":
            x[d] = Fraction(1)
            factor = _binom_power(x, E, N)
        else:  # cr: (1 - z^d)^(-E)
            factor = [Fraction(0)] * (N + 1)
            for k in range(N // d + 1):
                factor[d * k] = Fraction(comb(E + k - 1, k)) if E else Fraction(int(k == 0))
        out = _mul(out, factor, N)
    return Series(tuple(out), family, q, mabs, L)


def class_counts(family, q, mabs, L=None, N=8):
    """Class-count series (cs, csL, cr, crL); coefficients are integers."""
    if family not in ("cs", "csL", "cr", "crL"):
        raise BadParams(f"{family!r} is not a class-count family")
    s = series(family, q, mabs, L, N)
    assert all(c.denominator == 1 for c in s.coefficients)
    return s


def coprime_series(family, q, mabs, L=None, N=8):
    """The same families counted with pairwise coprime reductions.

    Here each monic irreducible f over k (other than t) contributes one
    factor; its lifts contribute |m|^d classes for every exponent s prime
    to p and a single class when p | s (all lifts then share F^s).
    L-families keep only the L-power f.  This is what an exhaustive census
    of GL_n(O_2) measures.
    """
    _check(family, q, mabs, L, N)
    p = next(iter(factorint(q)))
    base = family.rstrip("L")
    out = [Fraction(1)] + [Fraction(0)] * N
    for d in range(1, N + 1):
        E = count_N_kL(q, d, L) if family.endswith("L") else count_N(q, d)
        lifts = mabs ** d
        x = [Fraction(0)] * (N + 1)
        smax = 1 if base in ("s", "cs") else N // d
        for s in range(1, smax + 1):
            m = lifts if s % p else 1
            if base in ("s", "r"):
                x[d * s] = Fraction(m, mabs ** (d * s) * q ** ((s - 1) * d) * (q ** d - 1))
            else:
                x[d * s] = Fraction(m)
        out = _mul(out, _binom_power(x, E, N), N)
    return Series(tuple(out), family + "_coprime", q, mabs, L)


def gl_order(n, q, mabs):
    """|GL_n(O_2)| = |m|^(n^2) * |GL_n(F_q)| (mabs = 1 gives the field case)."""
    out = mabs ** (n * n)
    for i in range(n):
        out *= q ** n - q ** i
    return out


def shape_sum_rs(n, q, mabs):
    """sum over RS class shapes of (number of classes) / (centralizer order).

    Independent of the product formula: enumerate multisets of degrees and
    count choices of fundamental irreducibles (distinct as polynomials,
    the reading the product formula encodes).
    """
    total = Fraction(0)

    def rec(rem, dmin, acc):
        nonlocal total
        if rem == 0:
            total += acc
            return
        for d in range(dmin, rem + 1):
            pool = mabs ** d * count_N(q, d)
            w = Fraction(1, mabs ** d * (q ** d - 1))
            for k in range(1, rem // d + 1):
                rec(rem - k * d, d + 1, acc * comb(pool, k) * w ** k)

    rec(n, 1, Fraction(1))
    return total
