"""Smith Normal Form over Z and over F_p[x] with unimodular witnesses.

Pivot rule: among nonzero candidates pick minimal absolute value (over Z) or
minimal (degree, leading coefficient) (over F_p[x]); ties broken by lowest
(row, col).  After clearing a pivot's row and column, the remaining submatrix
is rescanned for non-divisible entries before the diagonal entry is locked,
which keeps entry growth in check.  The whole computation is deterministic.
"""

from __future__ import annotations

import itertools
import json
import math
from fractions import Fraction

from .config import MAX_MINOR_PAIRS, check_guard
from .exactmat import (IntMatrix, UniPolyMatrix, bareiss_det, mat_mul_int,
                       pdivmod_fp, peval, pmul, pnorm, pstr, rank_mod_p)


class SnfError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Invariant-factor profiles
# ---------------------------------------------------------------------------

class FactorProfile:
    """Invariant factors in compressed (value^multiplicity) form.

    Values are ints (over Z) or coefficient tuples (over F_p[x]); consecutive
    equal diagonal values are merged, so values appear in divisibility order.
    """

    def __init__(self, entries):
        self.entries = tuple((v, int(m)) for (v, m) in entries)
        if any(m <= 0 for (_v, m) in self.entries):
            raise SnfError("multiplicities must be positive")

    @classmethod
    def from_diag(cls, diag) -> "FactorProfile":
        entries = []
        for v in diag:
            if entries and entries[-1][0] == v:
                entries[-1][1] += 1
            else:
                entries.append([v, 1])
        return cls(tuple((v, m) for v, m in entries))

    def expand(self) -> list:
        out = []
        for v, m in self.entries:
            out.extend([v] * m)
        return out

    @property
    def total_multiplicity(self) -> int:
        return sum(m for (_v, m) in self.entries)

    def __eq__(self, other):
        return isinstance(other, FactorProfile) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def format(self) -> str:
        parts = []
        for v, m in self.entries:
            vs = pstr(v) if isinstance(v, tuple) else str(v)
            parts.append(vs if m == 1 else f"{vs}^{m}")
        return "(" + ",".join(parts) + ")"

    __repr__ = format


# ---------------------------------------------------------------------------
# Results
# ---------------------------------------------------------------------------

class SnfResult:
    """diag = B * M * C with unimodular B, C; rechecked on construction."""

    def __init__(self, matrix, diag, b, c, ring: str, p: int | None = None):
        self.diag = list(diag)
        self.b = b
        self.c = c
        self.ring = ring
        self.p = p
        self.profile = FactorProfile.from_diag(self.diag)
        self._verify(matrix)

    def _verify(self, matrix):
        if self.ring == "Z":
            prod = mat_mul_int(self.b, mat_mul_int(matrix, self.c))
            n = min(len(matrix), len(matrix[0]) if matrix else 0)
            for i, row in enumerate(prod):
                for j, x in enumerate(row):
                    want = self.diag[i] if (i == j and i < n) else 0
                    if x != want:
                        raise SnfError(f"witness product differs at ({i},{j})")
            for i in range(len(self.diag) - 1):
                a, b = self.diag[i], self.diag[i + 1]
                if a == 0 and b != 0:
                    raise SnfError("zero invariant factor before a nonzero one")
                if a != 0 and b % a != 0:
                    raise SnfError("divisibility chain broken")
            if any(d < 0 for d in self.diag):
                raise SnfError("negative invariant factor")
            if len(matrix) <= 72:
                if abs(bareiss_det(self.b)) != 1 or abs(bareiss_det(self.c)) != 1:
                    raise SnfError("witness matrix is not unimodular")
        else:
            p = self.p
            prod = _poly_mat_mul(self.b, _poly_mat_mul(matrix, self.c, p), p)
            n = min(len(matrix), len(matrix[0]) if matrix else 0)
            for i, row in enumerate(prod):
                for j, x in enumerate(row):
                    want = self.diag[i] if (i == j and i < n) else ()
                    if x != want:
                        raise SnfError(f"witness product differs at ({i},{j})")
            for i in range(len(self.diag) - 1):
                a, b = self.diag[i], self.diag[i + 1]
                if a == () and b != ():
                    raise SnfError("zero invariant factor before a nonzero one")
                if a != () and b != () and pdivmod_fp(b, a, p)[1] != ():
                    raise SnfError("divisibility chain broken")
            for d in self.diag:
                if d and d[-1] != 1:
                    raise SnfError("nonzero invariant factor is not monic")


# ---------------------------------------------------------------------------
# SNF over Z
# ---------------------------------------------------------------------------

def _find_pivot_int(d: list[list[int]], t: int) -> tuple[int, int] | None:
    """Minimal |value| in the trailing submatrix, ties by (row, col)."""
    best = None
    best_a = 0
    nr = len(d)
    nc = len(d[0]) if d else 0
    for i in range(t, nr):
        row = d[i]
        for j in range(t, nc):
            v = row[j]
            if v:
                a = -v if v < 0 else v
                if best is None or a < best_a:
                    best, best_a = (i, j), a
                    if a == 1:
                        return best
    return best


def snf_int(m: IntMatrix) -> SnfResult:
    """Smith Normal Form over Z with witnesses, diag entries nonnegative."""
    if m.p is not None:
        raise SnfError("snf_int expects a matrix over Z")
    d = [row[:] for row in m.data]
    nr, nc = m.rows, m.cols
    b = [[int(i == j) for j in range(nr)] for i in range(nr)]
    ct = [[int(i == j) for j in range(nc)] for i in range(nc)]  # C transposed

    def row_op(i: int, t: int, q: int) -> None:
        d[i] = [a - q * x for a, x in zip(d[i], d[t])]
        b[i] = [a - q * x for a, x in zip(b[i], b[t])]

    def col_op(j: int, t: int, q: int) -> None:
        for row in d:
            row[j] -= q * row[t]
        ct[j] = [a - q * x for a, x in zip(ct[j], ct[t])]

    exhausted = False
    for t in range(min(nr, nc)):
        while True:
            piv = _find_pivot_int(d, t)
            if piv is None:
                exhausted = True
                break
            i0, j0 = piv
            if i0 != t:
                d[t], d[i0] = d[i0], d[t]
                b[t], b[i0] = b[i0], b[t]
            if j0 != t:
                for row in d:
                    row[t], row[j0] = row[j0], row[t]
                ct[t], ct[j0] = ct[j0], ct[t]
            if d[t][t] < 0:
                d[t] = [-x for x in d[t]]
                b[t] = [-x for x in b[t]]
            p = d[t][t]

            dirty = False
            for i in range(t + 1, nr):
                v = d[i][t]
                if v:
                    q = v // p
                    if q:
                        row_op(i, t, q)
                    if d[i][t]:
                        dirty = True
            rowt = d[t]
            for j in range(t + 1, nc):
                v = rowt[j]
                if v:
                    q = v // p
                    if q:
                        col_op(j, t, q)
                    if rowt[j]:
                        dirty = True
            if dirty:
                continue

            # Row and column are clear; enforce divisibility of the rest.
            bad = None
            for i in range(t + 1, nr):
                row = d[i]
                for j in range(t + 1, nc):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            d[t] = [a + x for a, x in zip(d[t], d[bad])]
            b[t] = [a + x for a, x in zip(b[t], b[bad])]
        if exhausted:
            break

    diag = [d[i][i] for i in range(min(nr, nc))]
    c = [list(col) for col in zip(*ct)] if ct else []
    return SnfResult(m.data, diag, b, c, "Z")


# ---------------------------------------------------------------------------
# SNF over F_p[x]
# ---------------------------------------------------------------------------

def _poly_mat_mul(a, bm, p: int):
    if not a or not bm:
        return []
    bt = list(zip(*bm))
    out = []
    for row in a:
        orow = []
        for col in bt:
            acc = ()
            for x, y in zip(row, col):
                if x and y:
                    acc = padd_fp(acc, pmul(x, y, p), p)
            orow.append(acc)
        out.append(orow)
    return out


def _find_pivot_poly(d, t: int) -> tuple[int, int] | None:
    """Minimal (degree, leading coefficient), ties by (row, col)."""
    best = None
    best_key = None
    for i in range(t, len(d)):
        row = d[i]
        for j in range(t, len(row)):
            e = row[j]
            if e:
                key = (len(e) - 1, e[-1])
                if best is None or key < best_key:
                    best, best_key = (i, j), key
                    if key == (0, 1):
                        return best
    return best


def snf_poly(m: UniPolyMatrix) -> SnfResult:
    """Smith Normal Form over F_p[x]; nonzero invariant factors are monic."""
    if m.p is None:
        raise SnfError("snf_poly expects coefficients reduced mod a prime")
    p = m.p
    d = [[e for e in row] for row in m.data]
    nr, nc = m.rows, m.cols
    one = (1,)
    b = [[one if i == j else () for j in range(nr)] for i in range(nr)]
    ct = [[one if i == j else () for j in range(nc)] for i in range(nc)]

    def sub_scaled_row(i, t, q):
        d[i] = [psubq(a, x, q) for a, x in zip(d[i], d[t])]
        b[i] = [psubq(a, x, q) for a, x in zip(b[i], b[t])]

    def sub_scaled_col(j, t, q):
        for row in d:
            row[j] = psubq(row[j], row[t], q)
        ct[j] = [psubq(a, x, q) for a, x in zip(ct[j], ct[t])]

    def psubq(a, x, q):
        # a - q*x mod p
        qx = pmul(q, x, p)
        n = max(len(a), len(qx))
        return pnorm([(a[k] if k < len(a) else 0) - (qx[k] if k < len(qx) else 0)
                      for k in range(n)], p)

    def scale_row(t, u):
        d[t] = [pmul((u,), x, p) for x in d[t]]
        b[t] = [pmul((u,), x, p) for x in b[t]]

    exhausted = False
    for t in range(min(nr, nc)):
        while True:
            piv = _find_pivot_poly(d, t)
            if piv is None:
                exhausted = True
                break
            i0, j0 = piv
            if i0 != t:
                d[t], d[i0] = d[i0], d[t]
                b[t], b[i0] = b[i0], b[t]
            if j0 != t:
                for row in d:
                    row[t], row[j0] = row[j0], row[t]
                ct[t], ct[j0] = ct[j0], ct[t]
            pv = d[t][t]

            dirty = False
            for i in range(t + 1, nr):
                v = d[i][t]
                if v:
                    q, _r = pdivmod_fp(v, pv, p)
                    if q:
                        sub_scaled_row(i, t, q)
                    if d[i][t]:
                        dirty = True
            rowt = d[t]
            for j in range(t + 1, nc):
                v = rowt[j]
                if v:
                    q, _r = pdivmod_fp(v, pv, p)
                    if q:
                        sub_scaled_col(j, t, q)
                    if rowt[j]:
                        dirty = True
            if dirty:
                continue

            bad = None
            for i in range(t + 1, nr):
                row = d[i]
                for j in range(t + 1, nc):
                    if row[j] and pdivmod_fp(row[j], pv, p)[1]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            d[t] = [padd_fp(a, x, p) for a, x in zip(d[t], d[bad])]
            b[t] = [padd_fp(a, x, p) for a, x in zip(b[t], b[bad])]
        e = d[t][t]
        if e and e[-1] != 1:
            scale_row(t, pow(e[-1], -1, p))
        if exhausted:
            break

    diag = [d[i][i] for i in range(min(nr, nc))]
    c = [list(col) for col in zip(*ct)] if ct else []
    return SnfResult(m.data, diag, b, c, "Fp[x]", p)


def padd_fp(a, bpoly, p):
    n = max(len(a), len(bpoly))
    return pnorm([(a[k] if k < len(a) else 0) + (bpoly[k] if k < len(bpoly) else 0)
                  for k in range(n)], p)


# ---------------------------------------------------------------------------
# Oracles and mod-p data
# ---------------------------------------------------------------------------

def minor_gcd_oracle(m: IntMatrix, k: int) -> int:
    """gcd of all k x k minors, by explicit enumeration (gcd of none = 0)."""
    if k < 1 or k > min(m.rows, m.cols):
        raise SnfError("minor size out of range")
    pairs = math.comb(m.rows, k) * math.comb(m.cols, k)
    check_guard(pairs <= MAX_MINOR_PAIRS, f"{pairs} minors to enumerate")
    g = 0
    for rows in itertools.combinations(range(m.rows), k):
        picked = [m.data[i] for i in rows]
        for cols in itertools.combinations(range(m.cols), k):
            sub = [[row[j] for j in cols] for row in picked]
            g = math.gcd(g, bareiss_det(sub))
            if g == 1:
                return 1
    return g


def p_corank(m: IntMatrix, p: int) -> int:
    """n minus the rank of m over F_p; counts invariant factors divisible by p."""
    if m.rows != m.cols:
        raise SnfError("p-corank of a non-square matrix")
    return m.rows - rank_mod_p(m.data, p)


def x_minus_one_multiplicity(r: SnfResult) -> int:
    """Total multiplicity of the factor (x-1) across the invariant factors."""
    if r.ring != "Fp[x]":
        raise SnfError("needs a Smith form over F_p[x]")
    p = r.p
    total = 0
    for poly in r.diag:
        if not poly:
            raise SnfError("zero invariant factor has infinite (x-1) multiplicity")
        while peval(poly, 1) % p == 0:
            poly, rem = pdivmod_fp(poly, (-1 % p, 1), p)
            assert rem == ()
            total += 1
    return total


# ---------------------------------------------------------------------------
# Corank witness lift
# ---------------------------------------------------------------------------

def _int_inverse(data: list[list[int]]) -> list[list[int]]:
    """Exact inverse of a unimodular integer matrix (must be integral)."""
    n = len(data)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(data)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            raise SnfError("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        pk = a[k][k]
        a[k] = [x / pk for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    inv = []
    for row in a:
        out = []
        for x in row[n:]:
            if x.denominator != 1:
                raise SnfError("matrix is not unimodular")
            out.append(int(x))
        inv.append(out)
    return inv


def corank_witness_lift(m: IntMatrix, p: int) -> UniPolyMatrix:
    """A lift over Z[x] whose determinant certifies the p-corank of m.

    With diag(d_1..d_n) = B m C and p | d_i exactly for i > k, the lift is
    B^-1 diag(d_1,...,d_k, x-(1-d_{k+1}),...,x-(1-d_n)) C^-1: it restores m
    at x=1, and det reduced mod p is a unit times (x-1)^(n-k).
    """
    if m.rows != m.cols:
        raise SnfError("needs a square matrix")
    r = snf_int(m)
    if any(d == 0 for d in r.diag):
        raise SnfError("needs a nonsingular matrix")
    k = sum(1 for d in r.diag if d % p)
    if any(d % p == 0 for d in r.diag[:k]):
        raise SnfError("invariant factors out of divisibility order")
    binv = _int_inverse(r.b)
    cinv = _int_inverse(r.c)
    n = m.rows
    lift = []
    for i in range(n):
        if i < k:
            entry = (r.diag[i],)
        else:
            entry = pnorm((r.diag[i] - 1, 1))
        lift.append(entry)
    # B^-1 * diag(lift) scales column i of B^-1 by lift[i]; then right-multiply.
    scaled = [[tuple(binv[i][j] * c for c in lift[j]) for j in range(n)]
              for i in range(n)]
    data = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = ()
            for l in range(n):
                if scaled[i][l] and cinv[l][j]:
                    term = tuple(c * cinv[l][j] for c in scaled[i][l])
                    nmax = max(len(acc), len(term))
                    acc = pnorm([(acc[t] if t < len(acc) else 0)
                                 + (term[t] if t < len(term) else 0)
                                 for t in range(nmax)])
            row.append(acc)
        data.append(row)
    return UniPolyMatrix(data)


# ---------------------------------------------------------------------------
# SNF JSON
# ---------------------------------------------------------------------------

def snf_to_json(r: SnfResult, witnesses: bool = False) -> str:
    if r.ring == "Z":
        profile = [[str(v), m] for (v, m) in r.profile.entries]
        diag = [str(v) for v in r.diag]
    else:
        profile = [[list(v), m] for (v, m) in r.profile.entries]
        diag = [list(v) for v in r.diag]
    doc = {"ring": r.ring, "profile": profile, "diag": diag}
    if r.p:
        doc["p"] = r.p
    if witnesses:
        if r.ring == "Z":
            doc["B"] = [[str(x) for x in row] for row in r.b]
            doc["C"] = [[str(x) for x in row] for row in r.c]
        else:
            doc["B"] = [[list(x) for x in row] for row in r.b]
            doc["C"] = [[list(x) for x in row] for row in r.c]
    return json.dumps(doc)
