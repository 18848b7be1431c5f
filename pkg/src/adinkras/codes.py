"""Binary linear codes over GF(2) and the packed-bit linear algebra kernel.

Bit vectors of length N are stored as Python ints with coordinate 1 in the
most significant bit, so numeric order on the stored value is exactly
lexicographic order on the bit string.  Matrix rows use the same packing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .config import MAX_COSET_BITS, MAX_ENUM_DIMENSION, check_guard


class CodeError(ValueError):
    """Invalid code construction or unknown code name."""


# ---------------------------------------------------------------------------
# Bit vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class BitVector:
    """Fixed-length vector over GF(2); orders lexicographically."""

    length: int
    value: int

    def __post_init__(self):
        if self.length < 0 or not 0 <= self.value < (1 << max(self.length, 1)):
            raise ValueError(f"value {self.value} does not fit in {self.length} bits")

    @classmethod
    def from_string(cls, bits: str) -> "BitVector":
        bits = "".join(bits.split())
        if bits and set(bits) - {"0", "1"}:
            raise ValueError(f"not a bit string: {bits!r}")
        return cls(len(bits), int(bits, 2) if bits else 0)

    @classmethod
    def from_bits(cls, bits) -> "BitVector":
        value = 0
        n = 0
        for b in bits:
            value = (value << 1) | (b & 1)
            n += 1
        return cls(n, value)

    @classmethod
    def unit(cls, length: int, coordinate: int) -> "BitVector":
        """Standard basis vector e_coordinate (1-based)."""
        if not 1 <= coordinate <= length:
            raise ValueError(f"coordinate {coordinate} out of range 1..{length}")
        return cls(length, 1 << (length - coordinate))

    @classmethod
    def ones(cls, length: int) -> "BitVector":
        return cls(length, (1 << length) - 1)

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    def bit(self, coordinate: int) -> int:
        """Coordinate value, 1-based from the left."""
        return (self.value >> (self.length - coordinate)) & 1

    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.length - i)) & 1 for i in range(1, self.length + 1))

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.value ^ other.value)

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""

    def __repr__(self) -> str:
        return f"BitVector({str(self)!r})"


# ---------------------------------------------------------------------------
# GF(2) matrices with packed rows
# ---------------------------------------------------------------------------

class Gf2Matrix:
    """Dense GF(2) matrix; each row packed into one int, column 0 at the MSB."""

    def __init__(self, rows: int, cols: int, packed: list[int] | None = None):
        self.rows = rows
        self.cols = cols
        self.packed = list(packed) if packed is not None else [0] * rows
        if len(self.packed) != rows:
            raise ValueError("row count mismatch")
        mask = (1 << cols) - 1
        if any(r & ~mask for r in self.packed):
            raise ValueError("row does not fit in column count")

    @classmethod
    def from_rows(cls, rows_of_bits: list) -> "Gf2Matrix":
        vecs = [r if isinstance(r, BitVector) else BitVector.from_bits(r) for r in rows_of_bits]
        if not vecs:
            raise ValueError("cannot infer width of an empty matrix")
        cols = vecs[0].length
        if any(v.length != cols for v in vecs):
            raise ValueError("ragged rows")
        return cls(len(vecs), cols, [v.value for v in vecs])

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, n, [1 << (n - 1 - i) for i in range(n)])

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.packed[i])

    def entry(self, i: int, j: int) -> int:
        return (self.packed[i] >> (self.cols - 1 - j)) & 1

    def mul_vector(self, v: BitVector) -> BitVector:
        """Matrix times column vector."""
        if v.length != self.cols:
            raise ValueError("dimension mismatch")
        out = 0
        for r in self.packed:
            out = (out << 1) | ((r & v.value).bit_count() & 1)
        return BitVector(self.rows, out)

    def stack(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if other.cols != self.cols:
            raise ValueError("dimension mismatch")
        return Gf2Matrix(self.rows + other.rows, self.cols, self.packed + other.packed)

    def rref(self) -> tuple["Gf2Matrix", list[int]]:
        """Reduced row echelon form and the list of pivot columns."""
        work = self.packed[:]
        pivots: list[int] = []
        r = 0
        for j in range(self.cols):
            bit = 1 << (self.cols - 1 - j)
            piv = next((i for i in range(r, len(work)) if work[i] & bit), None)
            if piv is None:
                continue
            work[r], work[piv] = work[piv], work[r]
            for i in range(len(work)):
                if i != r and work[i] & bit:
                    work[i] ^= work[r]
            pivots.append(j)
            r += 1
            if r == len(work):
                break
        return Gf2Matrix(self.rows, self.cols, work), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Gf2Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.packed == other.packed)

    def __repr__(self) -> str:
        body = ", ".join(str(self.row(i)) for i in range(self.rows))
        return f"Gf2Matrix[{body}]"


def gf2_solve(m: Gf2Matrix, rhs: BitVector) -> BitVector | None:
    """One solution x of m x = rhs, or None when the system is infeasible."""
    if rhs.length != m.rows:
        raise ValueError("dimension mismatch")
    # Eliminate on [m | rhs]; the extra column must not become a pivot.
    aug = Gf2Matrix(m.rows, m.cols + 1,
                    [(m.packed[i] << 1) | rhs.bit(i + 1) for i in range(m.rows)])
    red, pivots = aug.rref()
    if m.cols in pivots:
        return None
    x = 0
    for r, j in enumerate(pivots):
        if red.packed[r] & 1:
            x |= 1 << (m.cols - 1 - j)
    return BitVector(m.cols, x)


def gf2_kernel(m: Gf2Matrix) -> list[BitVector]:
    """Basis of the null space {x : m x = 0}, in echelon order."""
    red, pivots = m.rref()
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    for f in free:
        x = 1 << (m.cols - 1 - f)
        fbit = 1 << (m.cols - 1 - f)
        for r, j in enumerate(pivots):
            if red.packed[r] & fbit:
                x |= 1 << (m.cols - 1 - j)
        basis.append(BitVector(m.cols, x))
    return basis


def gf2_span(vectors: list[BitVector], length: int) -> set[int]:
    """All GF(2) combinations of the given vectors, as packed ints."""
    words = {0}
    for v in vectors:
        if v.length != length:
            raise ValueError("length mismatch")
        words |= {w ^ v.value for w in words}
    return words


# ---------------------------------------------------------------------------
# Binary linear codes
# ---------------------------------------------------------------------------

class BinaryCode:
    """A length-N binary linear code given by independent generator rows.

    Codes are immutable; derived facts (codeword list, doubly-even flag,
    minimum weight) are computed on first use and cached.  Two codes compare
    equal iff their generator matrices have the same reduced row echelon form.
    """

    def __init__(self, length: int, generators: list[BitVector]):
        if length < 1:
            raise CodeError("code length must be positive")
        gens = tuple(g if isinstance(g, BitVector) else BitVector.from_string(g)
                     for g in generators)
        if any(g.length != length for g in gens):
            raise CodeError("generator length differs from code length")
        self.length = length
        self.generators = gens
        if gens:
            m = Gf2Matrix(len(gens), length, [g.value for g in gens])
            self._rref, pivots = m.rref()
            if len(pivots) != len(gens):
                raise CodeError("generators are linearly dependent")
        else:
            self._rref = Gf2Matrix(0, length, [])
        self.dimension = len(gens)
        self._codewords: list[int] | None = None
        self._doubly_even: bool | None = None

    # -- derived facts ------------------------------------------------------

    def codewords(self) -> list[int]:
        """All 2^k codewords as packed ints, sorted; guarded at k <= 24."""
        if self._codewords is None:
            check_guard(self.dimension <= MAX_ENUM_DIMENSION,
                        f"codeword enumeration needs 2^{self.dimension} words")
            self._codewords = sorted(gf2_span(list(self.generators), self.length))
        return self._codewords

    def contains(self, v: BitVector) -> bool:
        """Membership via GF(2) solve against the generator matrix."""
        if v.length != self.length:
            raise CodeError("length mismatch")
        if self.dimension == 0:
            return v.value == 0
        gt = Gf2Matrix(self.length, self.dimension,
                       [reduce(lambda acc, g: (acc << 1) | g.bit(i), self.generators, 0)
                        for i in range(1, self.length + 1)])
        return gf2_solve(gt, v) is not None

    def generator_matrix(self) -> Gf2Matrix:
        return Gf2Matrix(self.dimension, self.length, [g.value for g in self.generators])

    def __eq__(self, other) -> bool:
        return (isinstance(other, BinaryCode) and self.length == other.length
                and self._rref == other._rref)

    def __hash__(self):
        return hash((self.length, tuple(self._rref.packed)))

    def __repr__(self) -> str:
        return f"BinaryCode[{self.length},{self.dimension}]"


def is_doubly_even(c: BinaryCode) -> bool:
    """True iff every codeword has weight divisible by 4 (exhaustive)."""
    if c._doubly_even is None:
        c._doubly_even = all(w.bit_count() % 4 == 0 for w in c.codewords())
    return c._doubly_even


def min_weight(c: BinaryCode) -> int:
    """Minimum weight over the 2^k - 1 nonzero codewords."""
    if c.dimension == 0:
        raise CodeError("trivial code has no nonzero codeword")
    return min(w.bit_count() for w in c.codewords() if w)


def contains_all_ones(c: BinaryCode) -> bool:
    return c.contains(BitVector.ones(c.length))


def direct_sum(c1: BinaryCode, c2: BinaryCode) -> BinaryCode:
    """Concatenation code with block-diagonal generator matrix."""
    n = c1.length + c2.length
    gens = [BitVector(n, g.value << c2.length) for g in c1.generators]
    gens += [BitVector(n, g.value) for g in c2.generators]
    return BinaryCode(n, gens)


def cosets(c: BinaryCode, rep_rule: str = "lexmin") -> list[BitVector]:
    """One representative per coset of c in GF(2)^N, sorted lexicographically.

    The default representative is the lexicographically smallest member.
    rep_rule "last_zero" picks the member whose last coordinate is 0 instead;
    it is only defined when that member is unique in every coset.
    """
    n = c.length
    check_guard(n - c.dimension <= MAX_COSET_BITS,
                f"coset enumeration needs 2^{n - c.dimension} representatives")
    words = c.codewords()
    seen = bytearray(1 << n)
    reps = []
    for v in range(1 << n):
        if seen[v]:
            continue
        members = [v ^ w for w in words]
        for u in members:
            seen[u] = 1
        if rep_rule == "lexmin":
            reps.append(v)  # ascending scan: v is the lex-min member
        elif rep_rule == "last_zero":
            ending_zero = [u for u in members if not u & 1]
            if len(ending_zero) != 1:
                raise CodeError("last_zero labeling is ambiguous for this code")
            reps.append(ending_zero[0])
        else:
            raise CodeError(f"unknown rep_rule {rep_rule!r}")
    reps.sort()
    return [BitVector(n, r) for r in reps]


# ---------------------------------------------------------------------------
# The named catalog
# ---------------------------------------------------------------------------

_E7_ROWS = ["1111000", "0011110", "1010101"]
_E8_ROWS = ["11110000", "00111100", "00001111", "10101010"]
_E16_LAST = "1010101010101010"
_GOLAY24_ROWS = [
    "100000000000100111110001",
    "010000000000010011111010",
    "001000000000001001111101",
    "000100000000100100111110",
    "000010000000110010011101",
    "000001000000111001001110",
    "000000100000111100100101",
    "000000010000111110010010",
    "000000001000011111001001",
    "000000000100001111100110",
    "000000000010010101010111",
    "000000000001101010101011",
]


def _d_rows(n: int) -> list[str]:
    # 1111 sliding right by two columns per row; n even, n >= 4.
    return ["0" * (2 * i) + "1111" + "0" * (n - 4 - 2 * i) for i in range(n // 2 - 1)]


def standard_code(name: str, param: int | None = None) -> BinaryCode:
    """Named codes: t^j, d_N (even N >= 4), e_7, e_8, h_8, e_16, golay24.

    `name` accepts the bare family letter with `param`, or the compact
    spelling with the parameter inline ("t3", "d6", "e8", ...).
    """
    name = name.strip().lower().replace("_", "")
    if param is None and len(name) > 1 and name[1:].isdigit():
        family, param = name[0], int(name[1:])
    else:
        family = name
    if family == "t":
        j = 1 if param is None else param
        if j < 1:
            raise CodeError("t^j needs j >= 1")
        return BinaryCode(j, [])
    if family == "d":
        if param is None or param < 4 or param % 2:
            raise CodeError("d_N needs even N >= 4")
        return BinaryCode(param, [BitVector.from_string(r) for r in _d_rows(param)])
    if family == "e" and param == 7:
        return BinaryCode(7, [BitVector.from_string(r) for r in _E7_ROWS])
    if family == "e" and param == 8:
        return BinaryCode(8, [BitVector.from_string(r) for r in _E8_ROWS])
    if family == "h" and param == 8:
        return BinaryCode(8, [BitVector.ones(8)])
    if family == "e" and param == 16:
        rows = _d_rows(16) + [_E16_LAST]
        return BinaryCode(16, [BitVector.from_string(r) for r in rows])
    if family == "golay" and param in (None, 24):
        return BinaryCode(24, [BitVector.from_string(r) for r in _GOLAY24_ROWS])
    raise CodeError(f"unknown code name {name!r}")


def parse_code_name(spec: str) -> BinaryCode:
    """Parse a code expression: named codes joined with '+' for direct sums."""
    parts = [p for p in spec.strip().split("+") if p]
    if not parts:
        raise CodeError("empty code expression")
    code = standard_code(parts[0])
    for part in parts[1:]:
        code = direct_sum(code, standard_code(part))
    return code


def max_doubly_even_dimension(n: int) -> int:
    """Largest dimension of a doubly even code of length n."""
    if n < 1:
        raise CodeError("length must be positive")
    m, p = divmod(n, 8)
    if p <= 3:
        return 4 * m
    if p <= 5:
        return 4 * m + 1
    if p == 6:
        return 4 * m + 2
    return 4 * m + 3


# ---------------------------------------------------------------------------
# Generator-matrix text format
# ---------------------------------------------------------------------------

def parse_generator_text(text: str) -> BinaryCode:
    """One generator per line, '0'/'1' with optional spaces, '#' comments."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        rows.append(BitVector.from_string(line))
    if not rows:
        raise CodeError("no generator rows found")
    if any(r.length != rows[0].length for r in rows):
        raise CodeError("generator rows disagree in length")
    return BinaryCode(rows[0].length, rows)


def format_generator_text(c: BinaryCode) -> str:
    lines = [f"# [{c.length},{c.dimension}] generator matrix"]
    lines += [str(g) for g in c.generators]
    return "\n".join(lines) + "\n"
