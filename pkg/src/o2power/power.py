"""Deciding and constructing L-th roots in GL_n(O_2).

For regular semisimple and compatible cyclic A with gcd(L, p) = 1, A is an
L-th power exactly when every fundamental factor of its characteristic
polynomial is an L-power polynomial.  Roots are built blockwise on the
canonical form: over k from a companion of an irreducible factor of f(t^L),
then lifted to O_2 by a single linear Hensel correction.
"""
from __future__ import annotations

from dataclasses import dataclass

from .classify import CC, RS, canonical_cc, canonical_rs, classify
from .errors import (GcdLpViolation, NotAPower, NotInvertible,
                     NotRegularSemisimple, PreconditionViolated,
                     UnsupportedClass)
from .linalg import MatK, MatO2, block_diag, companion, cyclic_vector, krylov, nullspace
from .poly import PolyK, PolyO2, is_L_power_poly, k_L_power_factors


@dataclass(frozen=True)
class PowerDecision:
    is_power: bool
    per_factor: tuple  # ((F_i, r_i, flag), ...)
    witness: MatO2 | None = None
    kind: str = ""

    def to_json(self):
        return {
            "kind": self.kind,
            "is_power": self.is_power,
            "per_factor": [{"coeffs": F.to_text(), "mult": r, "is_L_power": flag}
                           for F, r, flag in self.per_factor],
            "witness": None if self.witness is None else self.witness.to_text(),
        }


def _in_span_of_powers(Ab, Bt):
    """Coefficients a_i (codes) with Bt = sum a_i Ab^i, or None."""
    F = Ab.base
    n = Ab.n
    pows = [MatK.identity(F, n)]
    for _ in range(n - 1):
        pows.append(pows[-1] * Ab)
    # unknowns a_0..a_{n-1}; equations per entry; augmented with -Bt
    rows = []
    for i in range(n):
        for j in range(n):
            rows.append([P.rows[i][j] for P in pows] + [F.neg(Bt.rows[i][j])])
    for x in nullspace(F, rows):
        if x[-1]:
            inv = F.inv(x[-1])
            return [F.mul(inv, c) for c in x[:-1]]
    return None


def _monomial_degree(F):
    """L if F == t^L, else None."""
    if F.is_monic() and all(c == 0 for c in F.c[:-1]):
        return F.deg
    return None


def matrix_hensel_solve(F, A, Btilde):
    """B over O_2 with theta(B) = Btilde and F(B) = A, for regular semisimple A."""
    R = A.ring
    Ab = A.theta()
    if not A.charpoly().theta().is_squarefree():
        raise PreconditionViolated("A is not regular semisimple")
    f = F.theta()
    if Btilde.poly_eval(f) != Ab:
        raise PreconditionViolated("theta(F)(Btilde) != theta(A)")
    dfB = Btilde.poly_eval(f.derivative())
    if not dfB.det():
        raise PreconditionViolated("theta(F')(Btilde) is not invertible")
    coeffs = _in_span_of_powers(Ab, Btilde)
    if coeffs is None:
        raise PreconditionViolated("Btilde does not commute with theta(A)")
    B0 = A.poly_eval(PolyO2(R, coeffs))
    L = _monomial_degree(F)
    FB0 = B0 ** L if L is not None else B0.poly_eval(F)
    C = (FB0 - A).div_pi()
    X = C * dfB.inverse()
    B = B0 - X.pi_times(R)
    return B


def _field_block_decomposition(Ab):
    """(S, factors) with S^-1 Ab S = diag(C_f for f in factors), Ab regular semisimple."""
    F = Ab.base
    chi = Ab.charpoly()
    if not chi.is_squarefree():
        raise NotRegularSemisimple("reduction is not regular semisimple")
    from .poly import k_factor, inv_mod
    factors = [f for f, _ in k_factor(chi)]
    w = cyclic_vector(Ab)
    cols = []
    for f in factors:
        P = chi.exact_div(f)
        e = P * inv_mod(P % f, f)
        v = Ab.poly_eval(e % chi).matvec(w)
        for _ in range(f.deg):
            cols.append(v)
            v = Ab.matvec(v)
    S = MatK.from_columns(F, cols)
    return S, factors


def _companion_root(f, L):
    """D over k with D^L = C_f, or None when f is not an L-power."""
    vs = k_L_power_factors(f, L)
    if not vs:
        return None
    Cv = companion(vs[0])
    M = Cv ** L
    e1 = tuple(1 if i == 0 else 0 for i in range(f.deg))
    K = krylov(M, e1)
    Ki = K.inverse()
    D = Ki * Cv * K
    assert D ** L == companion(f)
    return D


def field_root(Ab, L):
    """Some B with B^L = Ab over k, for regular semisimple Ab; None if none exists."""
    if L == 1:
        return Ab
    S, factors = _field_block_decomposition(Ab)
    Ds = []
    for f in factors:
        D = _companion_root(f, L)
        if D is None:
            return None
        Ds.append(D)
    B = S * block_diag(Ds) * S.inverse()
    assert B ** L == Ab
    return B


def _check(A, L):
    R = A.ring
    if L < 1:
        raise ValueError("L must be positive")
    if L % R.p == 0:
        raise GcdLpViolation(f"gcd(L={L}, p={R.p}) != 1")
    if not A.is_invertible():
        raise NotInvertible("A is not in GL_n(O_2)")


def is_lth_power(A, L, witness=False):
    """Decide whether A is an L-th power (RS and compatible cyclic classes)."""
    _check(A, L)
    rep = classify(A)
    if rep.kind not in (RS, CC):
        raise UnsupportedClass(f"no decision procedure for kind {rep.kind}")
    flags = tuple((F, r, is_L_power_poly(F, L)) for F, r in rep.factors)
    ok = all(flag for _, _, flag in flags)
    W = lth_root(A, L) if witness and ok else None
    return PowerDecision(ok, flags, W, rep.kind)


def _rs_block_root(C, L):
    Bt = field_root(C.theta(), L)
    if Bt is None:
        return None
    t = PolyO2.t(C.ring)
    return matrix_hensel_solve(t ** L, C, Bt)


def lth_root(A, L):
    """An explicit B in GL_n(O_2) with B^L = A."""
    _check(A, L)
    R = A.ring
    n = A.n
    if A.is_identity():
        return A
    rep = classify(A)
    if rep.kind == RS:
        cf = canonical_rs(A)
        roots = []
        for F, _ in cf.blocks:
            B = _rs_block_root(companion(F), L)
            if B is None:
                raise NotAPower(f"{F} is not an {L}-power polynomial")
            roots.append(B)
    elif rep.kind == CC:
        cf = canonical_cc(A)
        roots = []
        for F, r in cf.blocks:
            D = _rs_block_root(companion(F), L)
            if D is None:
                raise NotAPower(f"{F} is not an {L}-power polynomial")
            d = F.deg
            m = d * r
            rows = [[0] * m for _ in range(m)]
            for b in range(r):
                for i in range(d):
                    rows[b * d + i][b * d:(b + 1) * d] = D.rows[i]
                    if b + 1 < r:
                        rows[(b + 1) * d + i][b * d + i] = 1
            Bc = MatO2(R, rows)
            if r == 1:
                roots.append(Bc)
                continue
            cfl = canonical_cc(Bc ** L)
            if cfl.blocks != ((F, r),):
                raise AssertionError("block root does not reproduce the Jordan block")
            T = cfl.conjugator
            roots.append(T.inverse() * Bc * T)
    else:
        raise UnsupportedClass(f"no root construction for kind {rep.kind}")
    S = cf.conjugator
    B = S * block_diag(roots) * S.inverse()
    if B ** L != A:
        raise AssertionError("constructed root fails B^L = A")
    return B
