"""Brute-force ground truth at desk scale.

Whole groups GL_n(R) are materialized as numpy arrays of element codes and
all arithmetic goes through precomputed addition/multiplication tables, so
the same code serves O_2 and the residue field.  A matrix is keyed by its
entries read as a base-|R| number (row-major, first entry most significant);
the enumeration order is increasing key order.
"""
from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .classify import CC, CNC, OTHER, RS, classify
from .errors import (BudgetExceeded, GcdLpViolation, MismatchFound, NotInvertible,
                     RingSpecError)
from .linalg import MatK, MatO2
from .poly import PolyO2, is_irreducible_k
from .power import is_lth_power
from .ring import RingSpec

DEFAULT_BUDGET = 10 ** 8


def budget():
    env = os.environ.get("O2POWER_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _perm_sign(p):
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


class Tables:
    """Addition/multiplication tables of a finite commutative base."""

    def __init__(self, base):
        s = base.size
        self.size = s
        self.base = base
        idx = range(s)
        self.add = np.array([[base.add(a, b) for b in idx] for a in idx], dtype=np.int32)
        self.mul = np.array([[base.mul(a, b) for b in idx] for a in idx], dtype=np.int32)
        self.neg = np.array([base.neg(a) for a in idx], dtype=np.int32)
        self.unit = np.array([base.is_unit(a) for a in idx], dtype=bool)


class Group:
    """All of GL_n over a ring or field, as an (order, n, n) code array."""

    def __init__(self, base, n, limit=None):
        self.base = base
        self.n = n
        s = base.size
        self.s = s
        limit = budget() if limit is None else limit
        total = s ** (n * n)
        if total > limit:
            raise BudgetExceeded(f"{total} candidate matrices exceed the budget {limit}")
        self.T = Tables(base)
        idx = np.arange(total, dtype=np.int64)
        ent = np.empty((total, n, n), dtype=np.int32)
        for k in range(n * n):
            ent[:, k // n, k % n] = (idx // s ** (n * n - 1 - k)) % s
        keep = self.T.unit[self.det(ent)]
        self.mats = ent[keep]
        self.keys = idx[keep]
        self.order = len(self.keys)
        self._weights = np.array([s ** (n * n - 1 - k) for k in range(n * n)], dtype=np.int64)
        self._inv = None

    # -- vectorized arithmetic ---------------------------------------------
    def det(self, X):
        T = self.T
        n = X.shape[-1]
        acc = np.zeros(X.shape[0], dtype=np.int32)
        for p in permutations(range(n)):
            term = X[:, 0, p[0]]
            for i in range(1, n):
                term = T.mul[term, X[:, i, p[i]]]
            if _perm_sign(p) < 0:
                term = T.neg[term]
            acc = T.add[acc, term]
        return acc

    def mul(self, X, Y):
        T = self.T
        n = self.n
        if X.ndim == 2:
            X = np.broadcast_to(X, Y.shape)
        if Y.ndim == 2:
            Y = np.broadcast_to(Y, X.shape)
        out = np.empty(np.broadcast_shapes(X.shape, Y.shape), dtype=np.int32)
        for i in range(n):
            for j in range(n):
                acc = T.mul[X[:, i, 0], Y[:, 0, j]]
                for k in range(1, n):
                    acc = T.add[acc, T.mul[X[:, i, k], Y[:, k, j]]]
                out[:, i, j] = acc
        return out

    def power(self, X, e):
        R = np.broadcast_to(np.eye(self.n, dtype=np.int32), X.shape).copy()
        A = X
        while e:
            if e & 1:
                R = self.mul(R, A)
            e >>= 1
            if e:
                A = self.mul(A, A)
        return R

    def inverses(self):
        if self._inv is None:
            self._inv = self.power(self.mats, self.order - 1)
        return self._inv

    def key(self, X):
        n = self.n
        return X.reshape(X.shape[0], n * n).astype(np.int64) @ self._weights

    def key_of(self, M):
        return int(self.key(np.asarray(M.rows, dtype=np.int32)[None])[0])

    def index(self, keys):
        return np.searchsorted(self.keys, keys)

    def to_mat(self, i):
        rows = self.mats[i].tolist()
        cls = MatO2 if isinstance(self.base, RingSpec) else MatK
        return cls(self.base, rows)

    # -- group-theoretic brute force ----------------------------------------
    def image_keys(self, L):
        return np.unique(self.key(self.power(self.mats, L)))

    def conjugates(self, A):
        """Keys of g A g^-1 for every g, in group order."""
        X = self.mul(self.mul(self.mats, A), self.inverses())
        return self.key(X)

    def class_ids(self):
        """Conjugacy class label per element (label = least key in the class).

        Labels are propagated along x -> g x g^-1 for g in a generating set
        until stable, so the cost scales with the number of generators
        rather than the number of classes.
        """
        n = self.n
        perms = []
        for g in _generators(self.base, n):
            X = self.mul(self.mul(g, self.mats), _inverse_small(self.base, g))
            perms.append(self.index(self.key(X)))
        lab = self.keys.copy()
        while True:
            new = lab
            for perm in perms:
                new = np.minimum(new, new[perm])
            if np.array_equal(new, lab):
                return lab
            lab = new


def _additive_generators(base):
    gens, span = [], {0}
    for a in range(base.size):
        if a in span:
            continue
        gens.append(a)
        frontier = list(span)
        while frontier:
            x = frontier.pop()
            for b in gens:
                y = base.add(x, b)
                if y not in span:
                    span.add(y)
                    frontier.append(y)
    return gens


def _generators(base, n):
    """Elementary matrices E_ij(a) and diag(u, 1, ..., 1); together they generate GL_n."""
    out = []
    eye = np.eye(n, dtype=np.int32)
    for i in range(n):
        for j in range(n):
            if i != j:
                for a in _additive_generators(base):
                    g = eye.copy()
                    g[i, j] = a
                    out.append(g)
    for u in base.units():
        if u != 1:
            g = eye.copy()
            g[0, 0] = u
            out.append(g)
    return out


def _inverse_small(base, g):
    cls = MatO2 if isinstance(base, RingSpec) else MatK
    return np.asarray(cls(base, g.tolist()).inverse().rows, dtype=np.int32)


_GROUPS = {}


def group(base, n):
    key = (base, n, budget())
    g = _GROUPS.get(key)
    if g is None:
        g = _GROUPS[key] = Group(base, n)
    return g


def enumerate_gl(spec, n):
    """Yield every element of GL_n(spec) once, in increasing key order."""
    G = group(spec, n)
    for i in range(G.order):
        yield G.to_mat(i)


def power_image(spec, n, L):
    """The set of L-th powers in GL_n(spec) (matrices)."""
    G = group(spec, n)
    keys = G.image_keys(L)
    return {G.to_mat(i) for i in G.index(keys)}


def is_in_power_image(A, L):
    G = group(A.base, A.n)
    return bool(np.isin(G.key_of(A), G.image_keys(L)))


def power_preimage(A, L):
    """All B in GL_n with B^L = A, sorted by key (works over k or O_2)."""
    G = group(A.base, A.n)
    hits = np.nonzero(G.key(G.power(G.mats, L)) == G.key_of(A))[0]
    return [G.to_mat(i) for i in hits]


def element_order(A):
    if not A.is_invertible():
        raise NotInvertible("only invertible matrices have a finite order")
    I = type(A).identity(A.base, A.n)
    X = A
    k = 1
    while X != I:
        X = X * A
        k += 1
    return k


def orbit_and_centralizer(spec, n, A):
    """(orbit size, centralizer size, multiplicative order) by brute force."""
    G = group(spec, n)
    conj = G.conjugates(np.asarray(A.rows, dtype=np.int32))
    orbit = len(np.unique(conj))
    cent = int(np.count_nonzero(conj == G.key_of(A)))
    assert orbit * cent == G.order
    return orbit, cent, element_order(A)


# ---------------------------------------------------------------------------
# GL_2(Z/p^2) similarity class representatives
# ---------------------------------------------------------------------------

def smallest_nonsquare_unit(R):
    squares = {R.mul(u, u) for u in R.units()}
    return min(u for u in R.units() if u not in squares)


def gl2_zp2_families(p, epsilon=None):
    """One representative per parameter tuple of the four families S, D, H, H'.

    Parameters are normalized so that each similarity class appears once:
    D takes alpha < delta; H' takes beta up to sign (and mod p when i = 1).
    ``epsilon`` defaults to the smallest non-square unit.
    """
    if p > 5:
        raise RingSpecError("families are enumerated for p <= 5 only")
    R = RingSpec("zp2", p)
    mod = p * p
    eps = smallest_nonsquare_unit(R) if epsilon is None else epsilon % mod
    if R.is_unit(eps) is False or eps in {R.mul(u, u) for u in R.units()}:
        raise ValueError("epsilon must be a non-square unit")
    units = R.units()
    out = []

    def add(label, params, rows):
        out.append((label, params, MatO2(R, [[x % mod for x in r] for r in rows])))

    for a in units:
        add("S", (a,), [[a, 0], [0, a]])
    for a in units:
        for d in units:
            if a < d:
                i = 0 if (a - d) % p else 1
                add("D", (a, d, i), [[a, 0], [0, d]])
    for a in units:
        for b in range(p):
            add("H", (a, b, 0), [[a, p * b], [1, a]])
        add("H", (a, 0, 1), [[a, 0], [p, a]])
    seen = set()
    for b in units:
        rep = min(b, (-b) % mod)
        if rep in seen:
            continue
        seen.add(rep)
        for a in range(mod):
            if R.is_unit((a * a - eps * rep * rep) % mod):
                add("H'", (a, rep, 0), [[a, eps * rep], [rep, a]])
    seen = set()
    for b in units:
        rep = min(b % p, (-b) % p)
        if rep in seen:
            continue
        seen.add(rep)
        for a in units:
            add("H'", (a, rep, 1), [[a, p * eps * rep], [p * rep, a]])
    return out


def family_partition(p, epsilon=None):
    """Check that the family orbits partition GL_2(Z/p^2); returns a summary."""
    R = RingSpec("zp2", p)
    G = group(R, 2)
    owner = np.full(G.order, -1, dtype=np.int64)
    sizes = {}
    overlaps = 0
    reps = gl2_zp2_families(p, epsilon)
    for j, (label, params, A) in enumerate(reps):
        orb = np.unique(G.conjugates(np.asarray(A.rows, dtype=np.int32)))
        idx = G.index(orb)
        overlaps += int(np.count_nonzero(owner[idx] >= 0))
        owner[idx] = j
        stratum = label if label == "S" else f"{label}:i={params[-1]}"
        sizes.setdefault(stratum, set()).add(len(orb))
    covered = int(np.count_nonzero(owner >= 0))
    return {
        "representatives": len(reps),
        "covered": covered,
        "order": G.order,
        "overlaps": overlaps,
        "partition": overlaps == 0 and covered == G.order,
        "class_sizes": {k: sorted(v) for k, v in sorted(sizes.items())},
    }


# ---------------------------------------------------------------------------
# censuses and theorem checks
# ---------------------------------------------------------------------------

@dataclass
class CensusReport:
    ring: str
    n: int
    totals: dict
    elapsed: float
    order_tag: str = "lexicographic-key"
    mismatches: list = field(default_factory=list)
    theorem: str | None = None
    L: int | None = None

    def to_json(self, timing=False):
        out = {
            "ring": self.ring,
            "n": self.n,
            "totals": {k: str(v) if isinstance(v, int) else v for k, v in self.totals.items()},
            "order": self.order_tag,
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 3)
        if self.theorem:
            out["theorem"] = self.theorem
        if self.L is not None:
            out["L"] = self.L
        if self.theorem or self.mismatches:
            out["mismatches"] = self.mismatches
        return out


class _Classifier:
    """Caches classification by (reduction, characteristic polynomial)."""

    def __init__(self):
        self.kinds = {}
        self.decisions = {}

    def kind(self, A):
        chi = A.charpoly()
        key = (A.theta().rows, chi.c)
        k = self.kinds.get(key)
        if k is None:
            k = self.kinds[key] = classify(A).kind
        return k, chi

    def decide(self, A, chi, L):
        key = (chi.c, L)
        d = self.decisions.get(key)
        if d is None:
            d = self.decisions[key] = is_lth_power(A, L).is_power
        return d


def _kinds(G, clf, lab):
    """Kind per element, classifying one representative per conjugacy class."""
    reps, inv = np.unique(lab, return_inverse=True)
    kinds = np.array([clf.kind(G.to_mat(i))[0] for i in G.index(reps)])
    return kinds[inv]


def census(spec, n, L=None):
    """Counts of RS / CC / other elements and classes, optionally within Im(Phi_L)."""
    t0 = time.time()
    G = group(spec, n)
    clf = _Classifier()
    lab = G.class_ids()
    kinds = _kinds(G, clf, lab)
    rs = kinds == RS
    cc = (kinds == RS) | (kinds == CC)
    totals = {
        "gl": G.order,
        "rs": int(rs.sum()),
        "cc": int(cc.sum()),
        "cc_non_rs": int((kinds == CC).sum()),
        "cyclic_not_compatible": int((kinds == CNC).sum()),
        "other": int((kinds == OTHER).sum()),
        "classes": len(np.unique(lab)),
        "rs_classes": len(np.unique(lab[rs])),
        "cc_classes": len(np.unique(lab[cc])),
    }
    if L is not None:
        img = np.isin(G.keys, G.image_keys(L))
        totals.update({
            "image": int(img.sum()),
            "rs_image": int((rs & img).sum()),
            "cc_image": int((cc & img).sum()),
            "rs_image_classes": len(np.unique(lab[rs & img])),
            "cc_image_classes": len(np.unique(lab[cc & img])),
        })
    return CensusReport(str(spec), n, totals, time.time() - t0, L=L)


def verify_theorem(theorem, spec, n, L, raise_on_mismatch=True):
    """Compare the decision procedure with brute-force image membership.

    T1: all regular semisimple elements.  T2: all compatible cyclic elements
    (regular semisimple ones included).  C44: regular semisimple elements
    with irreducible reduced characteristic polynomial, comparing membership
    in Im(Phi_L) with membership of the reduction in the field image.
    """
    if theorem not in ("T1", "T2", "C44"):
        raise ValueError(f"unknown theorem {theorem!r}")
    if L % spec.p == 0:
        raise GcdLpViolation(f"gcd(L={L}, p={spec.p}) != 1")
    t0 = time.time()
    G = group(spec, n)
    img = np.isin(G.keys, G.image_keys(L))
    if theorem == "C44":
        Gk = group(spec.field, n)
        kimg = set(Gk.image_keys(L).tolist())
    clf = _Classifier()
    checked = agree = powers = 0
    mismatches = []
    for i in range(G.order):
        A = G.to_mat(i)
        kind, chi = clf.kind(A)
        if theorem == "T1" and kind != RS:
            continue
        if theorem == "T2" and kind not in (RS, CC):
            continue
        if theorem == "C44":
            if kind != RS or not is_irreducible_k(chi.theta()):
                continue
            claim = Gk.key_of(A.theta()) in kimg
        else:
            claim = clf.decide(A, chi, L)
        truth = bool(img[i])
        checked += 1
        powers += truth
        if claim == truth:
            agree += 1
        else:
            mismatches.append({"matrix": A.to_text(), "claimed": claim, "brute": truth})
    report = CensusReport(str(spec), n, {"checked": checked, "agree": agree, "powers": powers,
                                         "mismatches": len(mismatches)},
                          time.time() - t0, mismatches=mismatches, theorem=theorem, L=L)
    if mismatches and raise_on_mismatch:
        raise MismatchFound(f"{len(mismatches)} mismatches", report)
    return report


# ---------------------------------------------------------------------------
# fixtures from the worked examples
# ---------------------------------------------------------------------------

def monic_quadratic_divisors(F, irreducible_only=True):
    """Scan all |O_2|^2 monic quadratics and return those dividing F.

    With ``irreducible_only`` only divisors with irreducible reduction are kept.
    """
    R = F.base
    out = []
    for c0 in range(R.size):
        for c1 in range(R.size):
            D = PolyO2(R, (c0, c1, 1))
            if not (F % D).c and (not irreducible_only or is_irreducible_k(D.theta())):
                out.append(D)
    return out


def table1(spec):
    """Monic quadratics over O_2 reducing to t^2 + 1, with irreducibility flags."""
    R = spec
    f = PolyO2.from_ints(R, (1, 0, 1)).theta()
    rows = []
    for c0 in range(R.size):
        for c1 in range(R.size):
            F = PolyO2(R, (c0, c1, 1))
            if F.theta() == f:
                rows.append((F, is_irreducible_k(F.theta())))
    return rows
