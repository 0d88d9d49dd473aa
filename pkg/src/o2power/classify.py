"""Classification of matrices over O_2 and their canonical forms.

A matrix is regular semisimple when its reduction has squarefree
characteristic polynomial, and compatible cyclic when its reduction is cyclic
and its characteristic polynomial is a product of powers of pairwise coprime
fundamental irreducibles.  Both classes admit a canonical form with an
explicit conjugator.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import NotCompatibleCyclic, NotRegularSemisimple, UnsupportedClass
from .linalg import MatO2, block_diag, companion, cyclic_vector, is_cyclic_k, jordan_O2
from .poly import (FundFactorization, PolyO2, fundamental_factorization,
                   hensel_root_lift_k, hensel_root_lift_O2, inv_mod)

RS = "RegularSemisimple"
CC = "CompatibleCyclic"
CNC = "CyclicNotCompatible"
OTHER = "Other"


@dataclass(frozen=True)
class ClassReport:
    kind: str
    charpoly: PolyO2
    reduction_charpoly: object
    factorization: FundFactorization | None
    centralizer_order: int | None
    ring: object = None
    n: int = 0

    @property
    def factors(self):
        """[(F_i, r_i)] in canonical order, or None."""
        return self.factorization.factors if self.factorization else None

    def to_json(self):
        return {
            "kind": self.kind,
            "charpoly": self.charpoly.to_text(),
            "reduction_charpoly": self.reduction_charpoly.to_text(),
            "factors": None if self.factors is None else
            [{"coeffs": F.to_text(), "mult": r} for F, r in self.factors],
            "centralizer_order": None if self.centralizer_order is None else str(self.centralizer_order),
        }


@dataclass(frozen=True)
class CanonicalForm:
    form: MatO2
    conjugator: MatO2
    blocks: tuple  # ((F_i, r_i), ...)

    def to_json(self):
        return {
            "form": self.form.to_text(),
            "conjugator": self.conjugator.to_text(),
            "blocks": [{"coeffs": F.to_text(), "mult": r} for F, r in self.blocks],
        }


def classify(A):
    chi = A.charpoly()
    chib = chi.theta()
    factorization = None
    if chib.is_squarefree():
        kind = RS
        factorization = fundamental_factorization(chi)
    elif is_cyclic_k(A.theta()):
        ff = fundamental_factorization(chi)
        if ff.complete:
            kind, factorization = CC, ff
        else:
            kind = CNC
    else:
        kind = OTHER
    report = ClassReport(kind, chi, chib, factorization, None, A.ring, A.n)
    if kind in (RS, CC) and A.is_invertible():
        report = ClassReport(kind, chi, chib, factorization, centralizer_order(report), A.ring, A.n)
    return report


def centralizer_order(report):
    """|Z(A)| in GL_n(O_2) from the block data of an RS or CC class."""
    if report.kind not in (RS, CC):
        raise UnsupportedClass(f"no centralizer formula for kind {report.kind}")
    q = report.ring.q
    mabs = report.ring.mabs
    out = 1
    for F, r in report.factors:
        d = F.deg
        out *= mabs ** (d * r) * q ** (d * (r - 1)) * (q ** d - 1)
    return out


def _block_key(Fr):
    F, r = Fr
    return (F.deg, r, F.c)


def _component_generator(A, w, chi, G):
    """e(A) w where e is the idempotent of the primary component G of chi."""
    P = chi.exact_div(G)
    e = P * inv_mod(P % G, G)
    return A.poly_eval(e % chi).matvec(w)


def _assemble(A, blocks, cols):
    R = A.ring
    S = MatO2.from_columns(R, cols)
    form = block_diag([jordan_O2(F, r) for F, r in blocks])
    Sinv = S.inverse()
    if Sinv * A * S != form:
        raise AssertionError("canonical conjugation identity failed")
    return CanonicalForm(form, S, tuple(blocks))


def canonical_rs(A):
    """Block diagonal of companions of the fundamental factors of chi."""
    rep = classify(A)
    if rep.kind != RS:
        raise NotRegularSemisimple(f"matrix is {rep.kind}")
    chi = rep.charpoly
    blocks = sorted(rep.factors, key=_block_key)
    w = cyclic_vector(A)
    cols = []
    for F, _ in blocks:
        v = _component_generator(A, w, chi, F)
        for _ in range(F.deg):
            cols.append(v)
            v = A.matvec(v)
    return _assemble(A, blocks, cols)


def canonical_cc(A):
    """Block diagonal of J_{O_2,F_i}(r_i) for a compatible cyclic matrix."""
    rep = classify(A)
    if rep.kind not in (CC, RS):
        raise NotCompatibleCyclic(f"matrix is {rep.kind}")
    R = A.ring
    chi = rep.charpoly
    blocks = sorted(rep.factors, key=_block_key)
    w = cyclic_vector(A)
    t = PolyO2.t(R)
    cols = []
    for F, r in blocks:
        G = F ** r
        wi = _component_generator(A, w, chi, G)
        z = hensel_root_lift_k(F.theta(), r)
        Z = hensel_root_lift_O2(F, r, z)
        beta = (t - Z).exact_div(F)
        gamma = (beta * F) % G
        Zm = Z % G
        gj = PolyO2.one(R)
        for _ in range(r):
            zl = PolyO2.one(R)
            for _ in range(F.deg):
                cols.append(A.poly_eval((gj * zl) % G).matvec(wi))
                zl = (zl * Zm) % G
            gj = (gj * gamma) % G
    return _assemble(A, blocks, cols)


def canonical_form(A):
    rep = classify(A)
    if rep.kind == RS:
        return canonical_rs(A)
    if rep.kind == CC:
        return canonical_cc(A)
    raise UnsupportedClass(f"no canonical form for kind {rep.kind}")


def companion_blocks(blocks):
    return block_diag([companion(F) for F, _ in blocks])
