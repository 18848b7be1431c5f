"""Exact dense matrices over Z, Z mod p, Z[x]/F_p[x], and sparse multivariate
polynomials; builders for the signed adjacency/Laplacian matrices of an
Adinkra and their colored lifts; exact determinants.

Integer determinants use fraction-free (Bareiss) elimination for small
matrices and a CRT of word-size modular eliminations with a Hadamard bound
for large ones; both paths are exact and deterministic.  Polynomial
determinants over Z[x] are computed by evaluation at degree+1 integer points
followed by exact interpolation.
"""

from __future__ import annotations

import json
import math
import random
from fractions import Fraction

import numpy as np

from .adinkra import Adinkra

# Univariate polynomials are coefficient tuples in ascending degree with no
# trailing zeros; () is the zero polynomial.  Multivariate polynomials are
# dicts {exponent tuple: nonzero int coefficient}.


class MatrixError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Univariate polynomial helpers
# ---------------------------------------------------------------------------

def pnorm(coeffs, p: int | None = None) -> tuple[int, ...]:
    c = [x % p for x in coeffs] if p else list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def padd(a, b, p: int | None = None):
    n = max(len(a), len(b))
    return pnorm([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                  for i in range(n)], p)


def psub(a, b, p: int | None = None):
    n = max(len(a), len(b))
    return pnorm([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                  for i in range(n)], p)


def pmul(a, b, p: int | None = None):
    if not a or not b:
        return ()
    if len(a) == 1:
        return pnorm([a[0] * x for x in b], p)
    if len(b) == 1:
        return pnorm([x * b[0] for x in a], p)
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return pnorm(out, p)


def pdivmod_fp(a, b, p: int):
    """Quotient and remainder in F_p[x]; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        f = a[k + len(b) - 1] * inv % p
        if f:
            q[k] = f
            for i, bi in enumerate(b):
                a[k + i] = (a[k + i] - f * bi) % p
    return pnorm(q, p), pnorm(a, p)


def peval(a, x: int) -> int:
    out = 0
    for c in reversed(a):
        out = out * x + c
    return out


def pstr(a, var: str = "x") -> str:
    if not a:
        return "0"
    terms = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        if k == 0:
            terms.append(f"{c}")
        else:
            xs = var if k == 1 else f"{var}^{k}"
            if c == 1:
                terms.append(xs)
            elif c == -1:
                terms.append(f"-{xs}")
            else:
                terms.append(f"{c}{xs}")
    s = terms[0]
    for t in terms[1:]:
        s += ("-" + t[1:]) if t.startswith("-") else ("+" + t)
    return s


# ---------------------------------------------------------------------------
# Multivariate monomial dicts
# ---------------------------------------------------------------------------

def mp_const(c: int, nvars: int) -> dict:
    return {(0,) * nvars: c} if c else {}


def mp_var(i: int, nvars: int, coeff: int = 1) -> dict:
    e = [0] * nvars
    e[i - 1] = 1
    return {tuple(e): coeff} if coeff else {}


def mp_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def mp_sub(a: dict, b: dict) -> dict:
    return mp_add(a, {k: -v for k, v in b.items()})


def mp_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            s = out.get(k, 0) + va * vb
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def mp_eval(a: dict, values: list[int]) -> int:
    total = 0
    for exps, c in a.items():
        term = c
        for e, v in zip(exps, values):
            if e:
                term *= v ** e
        total += term
    return total


# ---------------------------------------------------------------------------
# Matrix types
# ---------------------------------------------------------------------------

class IntMatrix:
    """Dense matrix over Z (p=None) or over Z mod p (entries reduced)."""

    def __init__(self, data: list[list[int]], p: int | None = None):
        self.data = [list(r) for r in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(r) != self.cols for r in self.data):
            raise MatrixError("ragged rows")
        self.p = p
        if p:
            self.data = [[x % p for x in r] for r in self.data]

    @classmethod
    def identity(cls, n: int, scale: int = 1, p: int | None = None) -> "IntMatrix":
        return cls([[scale if i == j else 0 for j in range(n)] for i in range(n)], p)

    def __getitem__(self, ij):
        return self.data[ij[0]][ij[1]]

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.p == other.p
                and self.data == other.data)

    def transpose(self) -> "IntMatrix":
        return IntMatrix([list(col) for col in zip(*self.data)] if self.data else [],
                         self.p)

    def max_abs(self) -> int:
        return max((abs(x) for r in self.data for x in r), default=0)

    def add(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix([[a + b for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.data, other.data)], self.p)

    def sub(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix([[a - b for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.data, other.data)], self.p)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * x for x in r] for r in self.data], self.p)

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows or self.p != other.p:
            raise MatrixError("dimension or ring mismatch")
        return IntMatrix(mat_mul_int(self.data, other.data), self.p)

    def trace(self) -> int:
        return sum(self.data[i][i] for i in range(min(self.rows, self.cols)))

    def __repr__(self):
        ring = f"Z/{self.p}" if self.p else "Z"
        return f"IntMatrix({self.rows}x{self.cols} over {ring})"


class UniPolyMatrix:
    """Matrix with univariate polynomial entries over Z (p=None) or F_p."""

    def __init__(self, data, p: int | None = None):
        self.p = p
        self.data = [[pnorm(e, p) for e in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(r) != self.cols for r in self.data):
            raise MatrixError("ragged rows")

    def __getitem__(self, ij):
        return self.data[ij[0]][ij[1]]

    def __eq__(self, other):
        return (isinstance(other, UniPolyMatrix) and self.p == other.p
                and self.data == other.data)

    def transpose(self) -> "UniPolyMatrix":
        return UniPolyMatrix([list(c) for c in zip(*self.data)] if self.data else [],
                             self.p)

    def eval_at(self, x: int) -> IntMatrix:
        return IntMatrix([[peval(e, x) for e in row] for row in self.data], self.p)

    def max_degree(self) -> int:
        return max((len(e) - 1 for row in self.data for e in row if e), default=-1)

    def __repr__(self):
        ring = f"F_{self.p}[x]" if self.p else "Z[x]"
        return f"UniPolyMatrix({self.rows}x{self.cols} over {ring})"


class MultiPolyMatrix:
    """Matrix of sparse integer polynomials in x_1..x_nvars."""

    def __init__(self, data, nvars: int):
        self.nvars = nvars
        self.data = [[dict(e) for e in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(r) != self.cols for r in self.data):
            raise MatrixError("ragged rows")

    def __getitem__(self, ij):
        return self.data[ij[0]][ij[1]]

    def __eq__(self, other):
        return (isinstance(other, MultiPolyMatrix) and self.nvars == other.nvars
                and self.data == other.data)

    def transpose(self) -> "MultiPolyMatrix":
        return MultiPolyMatrix([list(c) for c in zip(*self.data)] if self.data else [],
                               self.nvars)

    def mul(self, other: "MultiPolyMatrix") -> "MultiPolyMatrix":
        if self.cols != other.rows or self.nvars != other.nvars:
            raise MatrixError("dimension mismatch")
        bt = other.transpose().data
        out = []
        for arow in self.data:
            orow = []
            for bcol in bt:
                acc: dict = {}
                for ae, be in zip(arow, bcol):
                    if ae and be:
                        acc = mp_add(acc, mp_mul(ae, be))
                orow.append(acc)
            out.append(orow)
        return MultiPolyMatrix(out, self.nvars)

    def sub(self, other: "MultiPolyMatrix") -> "MultiPolyMatrix":
        return MultiPolyMatrix([[mp_sub(a, b) for a, b in zip(ra, rb)]
                                for ra, rb in zip(self.data, other.data)], self.nvars)

    def eval_at(self, values: list[int]) -> IntMatrix:
        return IntMatrix([[mp_eval(e, values) for e in row] for row in self.data])

    def __repr__(self):
        return f"MultiPolyMatrix({self.rows}x{self.cols}, {self.nvars} vars)"


# ---------------------------------------------------------------------------
# Exact multiplication helpers
# ---------------------------------------------------------------------------

_INT64_SAFE = 1 << 62


def mat_mul_int(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    """Exact integer product; uses int64 numpy when magnitudes provably fit."""
    if not a or not b:
        return []
    inner = len(b)
    max_a = max((abs(x) for r in a for x in r), default=0)
    max_b = max((abs(x) for r in b for x in r), default=0)
    if max_a and max_b and max_a * max_b * inner < _INT64_SAFE:
        prod = np.array(a, dtype=np.int64) @ np.array(b, dtype=np.int64)
        return prod.tolist()
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


# ---------------------------------------------------------------------------
# Modular elimination kernels (numpy int64, exact)
# ---------------------------------------------------------------------------

def det_mod_p(data: list[list[int]] | np.ndarray, p: int) -> int:
    """Determinant mod p (p an odd prime < 2^31) by Gaussian elimination."""
    m = np.array(data, dtype=np.int64) % p
    n = m.shape[0]
    det = 1
    for k in range(n):
        col = m[k:, k]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            return 0
        piv = k + int(nz[0])
        if piv != k:
            m[[k, piv]] = m[[piv, k]]
            det = -det
        pivval = int(m[k, k])
        det = det * pivval % p
        if k + 1 < n:
            inv = pow(pivval, -1, p)
            factors = (m[k + 1:, k] * inv) % p
            m[k + 1:, k:] = (m[k + 1:, k:] - factors[:, None] * m[k, k:]) % p
    return det % p


def rank_mod_p(data: list[list[int]], p: int) -> int:
    """Rank over F_p; packed-bit elimination for p=2, numpy otherwise."""
    if p == 2:
        rows = []
        for r in data:
            x = 0
            for v in r:
                x = (x << 1) | (v & 1)
            rows.append(x)
        rank = 0
        for rnk_col in range(len(data[0]) if data else 0):
            bit = 1 << (len(data[0]) - 1 - rnk_col)
            piv = next((i for i in range(rank, len(rows)) if rows[i] & bit), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            for i in range(len(rows)):
                if i != rank and rows[i] & bit:
                    rows[i] ^= rows[rank]
            rank += 1
        return rank
    m = np.array(data, dtype=np.int64) % p
    nr, nc = m.shape
    rank = 0
    for col in range(nc):
        nz = np.nonzero(m[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, col]), -1, p)
        below = m[rank + 1:, col]
        if below.size:
            factors = (below * inv) % p
            m[rank + 1:, col:] = (m[rank + 1:, col:] - factors[:, None] * m[rank, col:]) % p
        rank += 1
        if rank == nr:
            break
    return rank


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
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


def crt_primes(bound: int) -> list[int]:
    """Descending 31-bit primes whose product exceeds `bound`."""
    primes = []
    prod = 1
    candidate = (1 << 31) - 1
    while prod <= bound:
        while not _is_probable_prime(candidate):
            candidate -= 2
        primes.append(candidate)
        prod *= candidate
        candidate -= 2
    return primes


def crt_combine(residues: list[int], primes: list[int]) -> int:
    """Symmetric-range CRT lift of residues mod the given pairwise coprime primes."""
    x, mod = 0, 1
    for r, p in zip(residues, primes):
        t = (r - x) * pow(mod, -1, p) % p
        x += mod * t
        mod *= p
    if x > mod // 2:
        x -= mod
    return x


# ---------------------------------------------------------------------------
# Determinants
# ---------------------------------------------------------------------------

_BAREISS_LIMIT = 72  # above this, integer dets go through the CRT kernel


def bareiss_det(data: list[list[int]]) -> int:
    """Fraction-free elimination; exact over Z."""
    a = [row[:] for row in data]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        pk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            # Columns < k are already zero below the diagonal.
            if aik:
                a[i] = rowi[:k] + [(pk * rowi[j] - aik * rowk[j]) // prev
                                   for j in range(k, n)]
            elif prev != 1:
                a[i] = rowi[:k] + [(pk * x) // prev for x in rowi[k:]]
            else:
                a[i] = rowi[:k] + [pk * x for x in rowi[k:]]
        prev = pk
    return sign * a[n - 1][n - 1]


def hadamard_bound(data: list[list[int]]) -> int:
    """Integer H with |det| <= H (row-norm Hadamard bound)."""
    b2 = 1
    for row in data:
        s = sum(x * x for x in row)
        if s == 0:
            return 0
        b2 *= s
    return math.isqrt(b2) + 1


def det_int(m: IntMatrix) -> int:
    """Exact determinant over Z."""
    if m.p is not None:
        raise MatrixError("det_int expects a matrix over Z")
    if m.rows != m.cols:
        raise MatrixError("determinant of a non-square matrix")
    if m.rows <= _BAREISS_LIMIT:
        return bareiss_det(m.data)
    h = hadamard_bound(m.data)
    if h == 0:
        return 0
    primes = crt_primes(2 * h)
    residues = [det_mod_p(m.data, p) for p in primes]
    return crt_combine(residues, primes)


def int_rank(data: list[list[int]]) -> int:
    """Exact rank over Q via fraction-free elimination."""
    a = [row[:] for row in data]
    nr = len(a)
    nc = len(a[0]) if a else 0
    rank = 0
    prev = 1
    for col in range(nc):
        piv = next((i for i in range(rank, nr) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pk = a[rank][col]
        rowk = a[rank]
        for i in range(rank + 1, nr):
            rowi = a[i]
            aic = rowi[col]
            if aic or prev != 1:
                a[i] = [(pk * rowi[j] - aic * rowk[j]) // prev for j in range(nc)]
        prev = pk
        rank += 1
        if rank == nr:
            break
    return rank


def _poly_degree_bound(m: UniPolyMatrix) -> int:
    """Certified upper bound on deg(det).

    Base bound: sum over rows (and over columns) of the largest entry degree.
    When every entry is linear, writing M = xE + F refines the bound to
    rank(E): any term of det choosing more than rank(E) rows from E vanishes.
    """
    row_bound = sum(max((len(e) - 1 for e in row if e), default=0) for row in m.data)
    col_bound = sum(max((len(m.data[i][j]) - 1 for i in range(m.rows) if m.data[i][j]),
                        default=0) for j in range(m.cols))
    bound = min(row_bound, col_bound)
    if m.max_degree() <= 1:
        lead = [[e[1] if len(e) == 2 else 0 for e in row] for row in m.data]
        bound = min(bound, int_rank(lead))
    return max(bound, 0)


def _poly_coeff_bound(m: UniPolyMatrix) -> int:
    """Every coefficient of det(M) is bounded by prod_i ||row_i||_2 with the
    entry norm sum(|c_k|) (maximum modulus on the unit circle)."""
    b2 = 1
    for row in m.data:
        s = sum(sum(abs(c) for c in e) ** 2 for e in row)
        if s == 0:
            return 0
        b2 *= s
    return math.isqrt(b2) + 1


def _newton_interpolate_fractions(points: list[int], values: list[int]) -> tuple[int, ...]:
    coeffs = [Fraction(v) for v in values]
    n = len(points)
    dd = list(coeffs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (points[i] - points[i - j])
    # Assemble sum dd[k] * prod_{i<k} (x - points[i]).
    poly = [Fraction(0)] * n
    basis = [Fraction(1)]
    for k in range(n):
        for i, b in enumerate(basis):
            poly[i] += dd[k] * b
        new = [Fraction(0)] * (len(basis) + 1)
        for i, b in enumerate(basis):
            new[i] -= b * points[k]
            new[i + 1] += b
        basis = new
    out = []
    for c in poly:
        if c.denominator != 1:
            raise MatrixError("interpolation produced a non-integer coefficient")
        out.append(int(c))
    return pnorm(out)


def _newton_interpolate_mod_p(points: list[int], values: list[int], p: int) -> list[int]:
    n = len(points)
    dd = [v % p for v in values]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) * pow(points[i] - points[i - j], -1, p) % p
    poly = [0] * n
    basis = [1]
    for k in range(n):
        for i, b in enumerate(basis):
            poly[i] = (poly[i] + dd[k] * b) % p
        new = [0] * (len(basis) + 1)
        for i, b in enumerate(basis):
            new[i] = (new[i] - b * points[k]) % p
            new[i + 1] = (new[i + 1] + b) % p
        basis = new
    return poly


def det_poly(m: UniPolyMatrix) -> tuple[int, ...]:
    """Exact determinant of a matrix over Z[x] by evaluation/interpolation."""
    if m.p is not None:
        raise MatrixError("det_poly expects coefficients over Z")
    if m.rows != m.cols:
        raise MatrixError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return (1,)
    d = _poly_degree_bound(m)
    points = list(range(d + 1))
    if n <= _BAREISS_LIMIT:
        values = [bareiss_det(m.eval_at(x).data) for x in points]
        return _newton_interpolate_fractions(points, values)
    bound = _poly_coeff_bound(m)
    primes = crt_primes(2 * bound)
    # Evaluate once per point; reuse across primes (int64-safe for the sizes
    # the CRT path accepts, which is checked below).
    evaluated = []
    for x in points:
        ev = m.eval_at(x)
        if ev.max_abs() >= _INT64_SAFE // (1 << 31):
            evaluated = None
            break
        evaluated.append(np.array(ev.data, dtype=np.int64))
    per_prime = []
    for p in primes:
        if evaluated is None:
            vals = [det_mod_p(m.eval_at(x).data, p) for x in points]
        else:
            vals = [det_mod_p(ev % p, p) for ev in evaluated]
        per_prime.append(_newton_interpolate_mod_p(points, vals, p))
    coeffs = []
    for k in range(d + 1):
        coeffs.append(crt_combine([cp[k] if k < len(cp) else 0 for cp in per_prime],
                                  primes))
    return pnorm(coeffs)


# ---------------------------------------------------------------------------
# Builders from Adinkras
# ---------------------------------------------------------------------------

def adjacency_matrix(a: Adinkra) -> IntMatrix:
    n = a.n_vertices
    data = [[0] * n for _ in range(n)]
    for (u, v, _c), s in a.signature.items():
        data[u][v] = s
        data[v][u] = s
    return IntMatrix(data)


def laplacian_matrix(a: Adinkra) -> IntMatrix:
    m = adjacency_matrix(a)
    for i in range(m.rows):
        for j in range(m.cols):
            m.data[i][j] = -m.data[i][j]
        m.data[i][i] = a.n_colors
    return m


def block_X(a: Adinkra) -> IntMatrix:
    """Boson-to-fermion block: A = [[0, X], [X^T, 0]] under boson-first order."""
    nb = a.n_bosons
    adj = adjacency_matrix(a)
    for u in range(nb):
        for v in range(nb):
            if adj.data[u][v]:
                raise MatrixError("vertex order is not bipartite boson-first")
    return IntMatrix([row[nb:] for row in adj.data[:nb]])


def colored_adjacency(a: Adinkra) -> MultiPolyMatrix:
    n = a.n_vertices
    nv = a.n_colors
    data = [[{} for _ in range(n)] for _ in range(n)]
    for (u, v, c), s in a.signature.items():
        data[u][v] = mp_var(c, nv, s)
        data[v][u] = mp_var(c, nv, s)
    return MultiPolyMatrix(data, nv)


def sigma_poly(n_colors: int) -> dict:
    out = {}
    for i in range(1, n_colors + 1):
        out.update(mp_var(i, n_colors))
    return out


def rho_poly(n_colors: int) -> dict:
    out = {}
    for i in range(1, n_colors + 1):
        e = [0] * n_colors
        e[i - 1] = 2
        out[tuple(e)] = 1
    return out


def colored_laplacian(a: Adinkra) -> MultiPolyMatrix:
    m = colored_adjacency(a)
    sigma = sigma_poly(a.n_colors)
    for i in range(m.rows):
        for j in range(m.cols):
            m.data[i][j] = {k: -v for k, v in m.data[i][j].items()}
        m.data[i][i] = dict(sigma)
    return m


def colored_block_X(a: Adinkra) -> MultiPolyMatrix:
    """Upper-right block of the colored adjacency; all-ones specializes to X."""
    nb = a.n_bosons
    m = colored_adjacency(a)
    return MultiPolyMatrix([row[nb:] for row in m.data[:nb]], a.n_colors)


# ---------------------------------------------------------------------------
# Specialization and reduction
# ---------------------------------------------------------------------------

SYMBOL = "x"


def specialize(m: MultiPolyMatrix, assignment: dict) -> IntMatrix | UniPolyMatrix:
    """Substitute every variable; at most one may be kept symbolic ("x")."""
    if set(assignment) != set(range(1, m.nvars + 1)):
        raise MatrixError(f"assignment must cover variables 1..{m.nvars}")
    symbolic = [i for i, v in assignment.items() if v == SYMBOL]
    if len(symbolic) > 1:
        raise MatrixError("at most one variable may stay symbolic")
    if not symbolic:
        values = [assignment[i] for i in range(1, m.nvars + 1)]
        return m.eval_at(values)
    sym = symbolic[0]
    out = []
    for row in m.data:
        orow = []
        for entry in row:
            coeffs: list[int] = []
            for exps, c in entry.items():
                term = c
                for i, e in enumerate(exps, start=1):
                    if i != sym and e:
                        term *= assignment[i] ** e
                k = exps[sym - 1]
                while len(coeffs) <= k:
                    coeffs.append(0)
                coeffs[k] += term
            orow.append(pnorm(coeffs))
        out.append(orow)
    return UniPolyMatrix(out)


def specialize_first_color(m: MultiPolyMatrix) -> UniPolyMatrix:
    """x_1 = x and every other color 1: the one-variable lift over Z[x]."""
    assignment = {1: SYMBOL}
    assignment.update({i: 1 for i in range(2, m.nvars + 1)})
    result = specialize(m, assignment)
    if isinstance(result, IntMatrix):  # nvars == 0 cannot happen; keep type stable
        raise MatrixError("expected a univariate result")
    return result


def reduce_mod_p(m: IntMatrix | UniPolyMatrix, p: int):
    """Entrywise reduction mod a prime; commutes with specialization."""
    if not _is_probable_prime(p):
        raise MatrixError(f"{p} is not prime")
    if isinstance(m, IntMatrix):
        if m.p is not None:
            raise MatrixError("matrix is already reduced")
        return IntMatrix(m.data, p)
    if isinstance(m, UniPolyMatrix):
        if m.p is not None:
            raise MatrixError("matrix is already reduced")
        return UniPolyMatrix(m.data, p)
    raise MatrixError("unsupported matrix type")


# ---------------------------------------------------------------------------
# Identity checks
# ---------------------------------------------------------------------------

class IdentityReport:
    def __init__(self):
        self.checks: list[tuple[str, bool, str | None]] = []

    def record(self, name: str, ok: bool, detail: str | None = None):
        self.checks.append((name, ok, detail))

    @property
    def ok(self) -> bool:
        return all(ok for (_n, ok, _d) in self.checks)

    def failures(self) -> list[tuple[str, str | None]]:
        return [(n, d) for (n, ok, d) in self.checks if not ok]

    def __repr__(self):
        lines = [f"{'ok ' if ok else 'FAIL'} {n}" + (f": {d}" if d else "")
                 for (n, ok, d) in self.checks]
        return "IdentityReport(\n  " + "\n  ".join(lines) + "\n)"


def _first_difference(a: list[list[int]], b: list[list[int]]) -> str | None:
    for i, (ra, rb) in enumerate(zip(a, b)):
        for j, (x, y) in enumerate(zip(ra, rb)):
            if x != y:
                return f"entry ({i},{j}): {x} != {y}"
    return None


_SYMBOLIC_CHECK_LIMIT = 64


def matrix_identity_check(a: Adinkra, seed: int = 0) -> IdentityReport:
    """A^2 = N I, the Laplacian quadratic, X X^T = X^T X = N I, and the
    colored block identity; symbolic up to 64 vertices, then evaluated at
    seeded random points (degree-2 identities, 3 points each)."""
    rep = IdentityReport()
    n = a.n_vertices
    nc = a.n_colors

    adj = adjacency_matrix(a)
    want = IntMatrix.identity(n, nc)
    got = adj.mul(adj)
    rep.record("adjacency_squared", got == want,
               _first_difference(got.data, want.data))

    lap = laplacian_matrix(a)
    l2 = lap.mul(lap)
    resid = l2.sub(lap.scale(2 * nc)).add(IntMatrix.identity(n, nc * (nc - 1)))
    zero = IntMatrix.identity(n, 0)
    rep.record("laplacian_quadratic", resid == zero,
               _first_difference(resid.data, zero.data))

    x = block_X(a)
    nid = IntMatrix.identity(x.rows, nc)
    xxt = x.mul(x.transpose())
    xtx = x.transpose().mul(x)
    rep.record("X_XT", xxt == nid, _first_difference(xxt.data, nid.data))
    rep.record("XT_X", xtx == nid, _first_difference(xtx.data, nid.data))

    ca = colored_adjacency(a)
    rep.record("colored_all_ones_specialization",
               ca.eval_at([1] * nc) == adj, None)

    if n <= _SYMBOLIC_CHECK_LIMIT:
        rho = rho_poly(nc)
        rho_id = MultiPolyMatrix(
            [[dict(rho) if i == j else {} for j in range(n)] for i in range(n)], nc)
        got_sq = ca.mul(ca)
        rep.record("colored_adjacency_squared", got_sq == rho_id, "symbolic")
        cx = colored_block_X(a)
        half = cx.rows
        rho_id_half = MultiPolyMatrix(
            [[dict(rho) if i == j else {} for j in range(half)] for i in range(half)], nc)
        got_cx = cx.transpose().mul(cx)
        rep.record("colored_X_identity", got_cx == rho_id_half, "symbolic")
    else:
        rng = random.Random(seed)
        cx = colored_block_X(a)
        ok_sq = ok_cx = True
        for _ in range(3):
            vals = [rng.randrange(-10 ** 6, 10 ** 6) for _ in range(nc)]
            r = sum(v * v for v in vals)
            av = ca.eval_at(vals)
            ok_sq &= av.mul(av) == IntMatrix.identity(n, r)
            xv = cx.eval_at(vals)
            ok_cx &= xv.transpose().mul(xv) == IntMatrix.identity(xv.rows, r)
        rep.record("colored_adjacency_squared", ok_sq, "3 random evaluations")
        rep.record("colored_X_identity", ok_cx, "3 random evaluations")
    return rep


# ---------------------------------------------------------------------------
# Matrix JSON
# ---------------------------------------------------------------------------

def matrix_to_json(m) -> str:
    if isinstance(m, IntMatrix):
        doc = {"rows": m.rows, "cols": m.cols,
               "ring": "Fp" if m.p else "Z",
               "entries": [x for row in m.data for x in row]}
        if m.p:
            doc["p"] = m.p
    elif isinstance(m, UniPolyMatrix):
        doc = {"rows": m.rows, "cols": m.cols,
               "ring": "Fp[x]" if m.p else "Z[x]",
               "entries": [list(e) for row in m.data for e in row]}
        if m.p:
            doc["p"] = m.p
    elif isinstance(m, MultiPolyMatrix):
        doc = {"rows": m.rows, "cols": m.cols, "ring": "Z[x1..xN]",
               "nvars": m.nvars,
               "entries": [[[c, list(e)] for e, c in sorted(entry.items())]
                           for row in m.data for entry in row]}
    else:
        raise MatrixError("unsupported matrix type")
    return json.dumps(doc)


def matrix_from_json(text: str):
    doc = json.loads(text)
    rows, cols, ring = doc["rows"], doc["cols"], doc["ring"]
    flat = doc["entries"]
    if len(flat) != rows * cols:
        raise MatrixError("entry count mismatch")
    grid = [flat[i * cols:(i + 1) * cols] for i in range(rows)]
    if ring == "Z":
        return IntMatrix(grid)
    if ring == "Fp":
        return IntMatrix(grid, doc["p"])
    if ring == "Z[x]":
        return UniPolyMatrix(grid)
    if ring == "Fp[x]":
        return UniPolyMatrix(grid, doc["p"])
    if ring == "Z[x1..xN]":
        nvars = doc["nvars"]
        data = [[{tuple(e): c for c, e in entry} for entry in row] for row in grid]
        return MultiPolyMatrix(data, nvars)
    raise MatrixError(f"unknown ring {ring!r}")
