"""Exact square matrices over k and O_2.

Entries are element codes stored row-major as a tuple of row tuples.
Determinants and characteristic polynomials use the division-free Berkowitz
recurrence, since O_2 has zero divisors.
"""
from __future__ import annotations

import random
from itertools import product

from .errors import DimMismatch, NonMonic, NotCyclic, NotInvertible, RingMismatch
from .poly import Poly, PolyK, PolyO2, k_factor
from .ring import ResidueField, RingSpec


class Mat:
    __slots__ = ("base", "n", "rows")
    poly_cls = Poly

    def __init__(self, base, rows):
        self.base = base
        self.rows = tuple(tuple(r) for r in rows)
        self.n = len(self.rows)
        if any(len(r) != self.n for r in self.rows):
            raise DimMismatch("matrix must be square")

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_ints(cls, base, rows):
        return cls(base, [[base.from_int(int(x)) for x in r] for r in rows])

    @classmethod
    def identity(cls, base, n):
        return cls(base, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, base, n):
        return cls(base, [[0] * n for _ in range(n)])

    @classmethod
    def scalar(cls, base, n, code):
        return cls(base, [[code if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def parse(cls, base, text):
        """Rows separated by ``;``, entries by ``,``, e.g. ``3,1;5,0``."""
        rows = [r for r in str(text).strip().split(";")]
        return cls(base, [[base.parse_elem(x.strip()) for x in r.split(",")] for r in rows])

    @classmethod
    def from_columns(cls, base, cols):
        n = len(cols)
        return cls(base, [[cols[j][i] for j in range(n)] for i in range(n)])

    def _new(self, rows):
        return type(self)(self.base, rows)

    # -- basics ---------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Mat) and type(self) is type(other) and self.base == other.base and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def key(self):
        return tuple(x for r in self.rows for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def cols(self):
        return [self.col(j) for j in range(self.n)]

    def to_text(self):
        fmt = self.base.format_elem
        return ";".join(",".join(fmt(x) for x in r) for r in self.rows)

    def to_json(self):
        fmt = self.base.format_elem
        return [[fmt(x) for x in r] for r in self.rows]

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"{type(self).__name__}({self.to_text()})"

    def _check(self, other):
        if type(other) is not type(self) or other.base != self.base:
            raise RingMismatch("matrices over different bases")
        if other.n != self.n:
            raise DimMismatch(f"{self.n}x{self.n} vs {other.n}x{other.n}")
        return other

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        add = self.base.add
        return self._new([[add(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        neg = self.base.neg
        return self._new([[neg(x) for x in r] for r in self.rows])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.base.from_int(other))
        other = self._check(other)
        B = self.base
        M = getattr(B, "modulus", None)
        cols = other.cols()
        if M:
            return self._new([[sum(x * y for x, y in zip(r, c)) % M for c in cols] for r in self.rows])
        return self._new([[_dot(B, r, c) for c in cols] for r in self.rows])

    __rmul__ = __mul__

    def scale(self, code):
        mul = self.base.mul
        return self._new([[mul(code, x) for x in r] for r in self.rows])

    def matvec(self, v):
        B = self.base
        return tuple(_dot(B, r, v) for r in self.rows)

    def transpose(self):
        return self._new(self.cols())

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        r = self.identity(self.base, self.n)
        a = self
        while e:
            if e & 1:
                r = r * a
            e >>= 1
            if e:
                a = a * a
        return r

    def is_identity(self):
        return self.rows == self.identity(self.base, self.n).rows

    # -- determinant and friends ---------------------------------------------
    def charpoly(self):
        """det(tI - A), via Berkowitz (no divisions)."""
        B = self.base
        A = self.rows
        add, mul, neg = B.add, B.mul, B.neg
        vect = [1]
        for r in range(self.n):
            # A_r is the leading r x r block, S its column r, R its row r
            S = [A[i][r] for i in range(r)]
            Rw = [A[r][j] for j in range(r)]
            col = [1, neg(A[r][r])]
            x = S
            for _ in range(r):
                col.append(neg(_dot(B, Rw, x)))
                x = [_dot(B, A[i][:r], x) for i in range(r)]
            new = []
            for i in range(r + 2):
                s = 0
                for j in range(min(i + 1, r + 1)):
                    if i - j < len(col):
                        s = add(s, mul(col[i - j], vect[j]))
                new.append(s)
            vect = new
        return self.poly_cls(B, list(reversed(vect)))

    def det(self):
        c = self.charpoly().coeff(0)
        return self.base.neg(c) if self.n % 2 else c

    def is_invertible(self):
        return self.base.is_unit(self.det())

    def inverse(self):
        """Gauss-Jordan elimination with unit pivots."""
        B = self.base
        n = self.n
        M = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)]
        for j in range(n):
            piv = next((i for i in range(j, n) if B.is_unit(M[i][j])), None)
            if piv is None:
                raise NotInvertible("matrix is not invertible")
            M[j], M[piv] = M[piv], M[j]
            inv = B.inv(M[j][j])
            M[j] = [B.mul(inv, x) for x in M[j]]
            for i in range(n):
                if i != j and M[i][j]:
                    c = M[i][j]
                    M[i] = [B.sub(x, B.mul(c, y)) for x, y in zip(M[i], M[j])]
        return self._new([r[n:] for r in M])

    def poly_eval(self, P):
        """P(A) by Horner."""
        B = self.base
        n = self.n
        R = self.zero(B, n)
        for c in reversed(P.c):
            R = R * self
            if c:
                R = self._new([[B.add(x, c) if i == j else x for j, x in enumerate(r)] for i, r in enumerate(R.rows)])
        return R

    def annihilated_by(self, P):
        return not any(any(r) for r in self.poly_eval(P).rows)


class MatK(Mat):
    """Matrix over the residue field k."""

    __slots__ = ()
    poly_cls = PolyK

    @property
    def field(self):
        return self.base

    def lift(self, ring):
        if ring.field != self.base:
            raise RingMismatch("residue field does not belong to this ring")
        return MatO2(ring, [[ring.lift(x) for x in r] for r in self.rows])

    def pi_times(self, ring):
        return MatO2(ring, [[ring.pi_times(x) for x in r] for r in self.rows])

    def rank(self):
        return len(_rref(self.base, [list(r) for r in self.rows])[1])


class MatO2(Mat):
    """Matrix over O_2."""

    __slots__ = ()
    poly_cls = PolyO2

    @property
    def ring(self):
        return self.base

    def theta(self):
        R = self.base
        return MatK(R.field, [[R.theta(x) for x in r] for r in self.rows])

    def div_pi(self):
        R = self.base
        return MatK(R.field, [[R.div_pi(x) for x in r] for r in self.rows])


def _dot(B, r, c):
    M = getattr(B, "modulus", None)
    if M:
        return sum(x * y for x, y in zip(r, c)) % M
    s = 0
    for x, y in zip(r, c):
        if x and y:
            s = B.add(s, B.mul(x, y))
    return s


# ---------------------------------------------------------------------------
# module-level API
# ---------------------------------------------------------------------------

def mat_o2(ring, rows):
    return MatO2.from_ints(ring, rows)


def mat_k(field, rows):
    return MatK.from_ints(field, rows)


def det(A):
    return A.det()


def is_gl(A):
    return A.is_invertible()


def charpoly(A):
    return A.charpoly()


def annihilates(F, A):
    return A.annihilated_by(F)


def block_diag(mats):
    mats = list(mats)
    base = mats[0].base
    n = sum(m.n for m in mats)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for m in mats:
        for i in range(m.n):
            rows[off + i][off:off + m.n] = m.rows[i]
        off += m.n
    return type(mats[0])(base, rows)


def companion(F):
    """Companion matrix: ones on the subdiagonal, last column -c_0..-c_{n-1}."""
    if not F.is_monic():
        raise NonMonic("companion matrix needs a monic polynomial")
    B = F.base
    n = F.deg
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = B.neg(F.coeff(i))
    cls = MatK if isinstance(F, PolyK) else MatO2
    return cls(B, rows)


def jordan_O2(F, r):
    """r diagonal copies of C_F with identity blocks on the block subdiagonal."""
    C = companion(F)
    d = C.n
    n = d * r
    rows = [[0] * n for _ in range(n)]
    for b in range(r):
        for i in range(d):
            rows[b * d + i][b * d:(b + 1) * d] = C.rows[i]
            if b + 1 < r:
                rows[(b + 1) * d + i][b * d + i] = 1
    return type(C)(F.base, rows)


def krylov(A, w):
    """Matrix with columns w, Aw, ..., A^(n-1) w."""
    cols = [tuple(w)]
    for _ in range(A.n - 1):
        cols.append(A.matvec(cols[-1]))
    return type(A).from_columns(A.base, cols)


# -- linear algebra over the field -------------------------------------------

def _rref(F, M):
    """In-place reduced row echelon form; returns (M, pivot columns)."""
    rows = len(M)
    cols = len(M[0]) if M else 0
    piv = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        piv.append(c)
        r += 1
        if r == rows:
            break
    return M, piv


def nullspace(F, M):
    """Basis of {x : M x = 0} over the field F; M is a list of rows."""
    if not M:
        return []
    ncols = len(M[0])
    R, piv = _rref(F, [list(r) for r in M])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        x = [0] * ncols
        x[fc] = 1
        for i, pc in enumerate(piv):
            x[pc] = F.neg(R[i][fc])
        basis.append(x)
    return basis


def _vector_minpoly(A, v):
    """Monic generator of the annihilator of v under A (field case)."""
    F = A.base
    vecs = [tuple(v)]
    while True:
        # look for a dependency among vecs
        M = [[vecs[j][i] for j in range(len(vecs))] for i in range(A.n)]
        ns = nullspace(F, M)
        if ns:
            rel = ns[0]
            return PolyK(F, rel).monic()
        vecs.append(A.matvec(vecs[-1]))


def minpoly_k(A):
    """Minimal polynomial of a matrix over k (lcm of vector minimal polynomials)."""
    F = A.base
    m = PolyK.one(F)
    for i in range(A.n):
        e = [0] * A.n
        e[i] = 1
        mv = _vector_minpoly(A, e)
        m = (m * mv).exact_div(m.gcd(mv))
    return m


def is_cyclic_k(A):
    return minpoly_k(A) == A.charpoly()


def _candidate_vectors(base, n):
    for i in range(n):
        e = [0] * n
        e[i] = 1
        yield tuple(e)
    for v in product(range(base.q), repeat=n):
        if any(v) and not (sum(1 for x in v if x) == 1 and max(v) == 1):
            yield v


def cyclic_vector(A):
    """A vector w whose Krylov matrix is invertible.

    Candidates are e_1..e_n first, then all residue vectors in lexicographic
    order; over O_2 the chosen residue vector is lifted.
    """
    Ab = A.theta() if isinstance(A, MatO2) else A
    if not is_cyclic_k(Ab):
        raise NotCyclic("reduction is not cyclic")
    F = Ab.base
    for v in _candidate_vectors(F, A.n):
        if F.is_unit(krylov(Ab, v).det()):
            return v  # codes: lift is the identity
    raise NotCyclic("no cyclic vector found")  # unreachable for cyclic input


def invariant_factors_k(A):
    """Invariant factors d_1 | d_2 | ... of a matrix over k (degree >= 1 only)."""
    F = A.base
    n = A.n
    parts = []
    for f, mult in k_factor(A.charpoly()):
        d = f.deg
        fA = A.poly_eval(f)
        ranks = [n]
        P = MatK.identity(F, n)
        for _ in range(mult):
            P = P * fA
            ranks.append(P.rank())
        # number of blocks of size >= j is (ranks[j-1] - ranks[j]) / d
        ge = [(ranks[j - 1] - ranks[j]) // d for j in range(1, mult + 1)]
        sizes = []
        for j in range(len(ge)):
            nxt = ge[j + 1] if j + 1 < len(ge) else 0
            sizes += [j + 1] * (ge[j] - nxt)
        sizes.sort(reverse=True)
        parts.append((f, sizes))
    s = max((len(sz) for _, sz in parts), default=0)
    out = []
    for k in range(s):
        g = PolyK.one(F)
        for f, sz in parts:
            if k < len(sz):
                g = g * f ** sz[k]
        out.append(g)
    return list(reversed(out))


def rcf_conjugator_k(A, seed=0):
    """(S, blocks) with S^-1 A S = diag(C_{d_1}, ..., C_{d_s}) over k."""
    F = A.base
    n = A.n
    blocks = invariant_factors_k(A)
    C = block_diag([companion(b) for b in blocks])
    if C == A:
        return MatK.identity(F, n), blocks
    # solve A S - S C = 0 for S (n^2 unknowns, row-major)
    eqs = []
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n)
            for k in range(n):
                row[k * n + j] = F.add(row[k * n + j], A.rows[i][k])
                row[i * n + k] = F.sub(row[i * n + k], C.rows[k][j])
            eqs.append(row)
    basis = nullspace(F, eqs)
    rng = random.Random(seed)
    cands = [b for b in basis]
    while True:
        if cands:
            x = cands.pop(0)
        else:
            x = [0] * (n * n)
            for b in basis:
                c = rng.randrange(F.q)
                x = [F.add(u, F.mul(c, v)) for u, v in zip(x, b)]
        S = MatK(F, [x[i * n:(i + 1) * n] for i in range(n)])
        if S.det():
            assert S.inverse() * A * S == C
            return S, blocks
