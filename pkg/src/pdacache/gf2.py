"""Arithmetic in GF(2^r) and exact linear algebra over it.

Field elements are plain Python ints in [0, 2^r); the binary digits of an
element are the coefficients of a polynomial in the generator alpha, so
addition is bitwise XOR and multiplication is carry-less polynomial
multiplication reduced modulo a fixed irreducible polynomial.

Default irreducible polynomials, one per extension degree, come from the
classic low-weight primitive polynomial table used throughout coding
practice (all entries are verified irreducible by the test suite):

    r=1 : x + 1                      0b11
    r=2 : x^2 + x + 1                0b111
    r=3 : x^3 + x + 1                0b1011
    r=4 : x^4 + x + 1                0b10011
    r=5 : x^5 + x^2 + 1              0b100101
    r=6 : x^6 + x + 1                0b1000011
    r=7 : x^7 + x^3 + 1              0b10001001
    r=8 : x^8 + x^4 + x^3 + x^2 + 1  0b100011101
    ... up to r=16

Fields with r <= 16 precompute log/antilog tables over a multiplicative
generator; table-backed multiplication is observationally identical to the
shift-reduce fallback used for larger degrees.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

_TABLE_LIMIT = 16

#: Fixed default polynomial per extension degree (bit i = coefficient of x^i).
DEFAULT_POLYNOMIALS = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100010001000011,
    15: 0b1000000000000011,
    16: 0b10001000000001011,
}


def poly_str(poly: int) -> str:
    """Human-readable form of a bit-encoded GF(2) polynomial."""
    if poly == 0:
        return "0"
    terms = []
    for i in range(poly.bit_length() - 1, -1, -1):
        if (poly >> i) & 1:
            if i == 0:
                terms.append("1")
            elif i == 1:
                terms.append("x")
            else:
                terms.append(f"x^{i}")
    return " + ".join(terms)


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _pmod(a: int, m: int) -> int:
    """a mod m, both bit-encoded polynomials over GF(2)."""
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _pmulmod(a: int, b: int, m: int) -> int:
    acc = 0
    a = _pmod(a, m)
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a.bit_length() == m.bit_length():
            a ^= m
    return acc


def _pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _pmod(a, b)
    return a


def is_irreducible(poly: int) -> bool:
    """Rabin irreducibility test for a bit-encoded polynomial over GF(2)."""
    r = poly.bit_length() - 1
    if r < 1:
        return False
    if r == 1:
        return True
    x = _pmod(2, poly)
    # x^(2^r) must equal x modulo poly.
    t = x
    for _ in range(r):
        t = _pmulmod(t, t, poly)
    if t != x:
        return False
    # gcd(x^(2^(r/p)) - x, poly) must be trivial for every prime p | r.
    for p in _prime_factors(r):
        t = x
        for _ in range(r // p):
            t = _pmulmod(t, t, poly)
        if _pgcd(t ^ x, poly) != 1:
            return False
    return True


def default_polynomial(r: int) -> int:
    """Fixed default irreducible polynomial of degree r.

    Table-backed for r <= 16; for larger degrees the lexicographically
    smallest irreducible polynomial is located by search, which is
    deterministic and therefore reproducible.
    """
    if r in DEFAULT_POLYNOMIALS:
        return DEFAULT_POLYNOMIALS[r]
    if r < 1:
        raise ValueError(f"extension degree must be >= 1, got {r}")
    for cand in range((1 << r) + 1, 1 << (r + 1), 2):
        if is_irreducible(cand):
            return cand
    raise RuntimeError(f"no irreducible polynomial of degree {r} found")


class GF2m:
    """The finite field GF(2^r) under a fixed irreducible polynomial.

    Elements are ints in [0, 2^r).  All operations are pure; instances are
    immutable and safe to share across threads.
    """

    def __init__(self, r: int, poly: Optional[int] = None):
        if not isinstance(r, int) or r < 1:
            raise ValueError(f"extension degree must be a positive integer, got {r!r}")
        if poly is None:
            poly = default_polynomial(r)
        degree = poly.bit_length() - 1
        if degree != r:
            raise ValueError(
                f"polynomial {poly_str(poly)} has degree {degree}, expected degree {r}"
            )
        if not is_irreducible(poly):
            raise ValueError(f"polynomial {poly_str(poly)} is reducible over GF(2)")
        self.r = r
        self.poly = poly
        self.order = 1 << r
        self._exp: Optional[list[int]] = None
        self._log: Optional[list[int]] = None
        if r <= _TABLE_LIMIT:
            self._build_tables()

    # ------------------------------------------------------------------
    # construction helpers
    # ------------------------------------------------------------------
    def _mul_raw(self, a: int, b: int) -> int:
        """Shift-and-reduce product; reference path independent of tables."""
        acc = 0
        while b:
            if b & 1:
                acc ^= a
            b >>= 1
            a <<= 1
            if a & self.order:
                a ^= self.poly
        return acc

    def _pow_raw(self, a: int, e: int) -> int:
        acc = 1
        while e:
            if e & 1:
                acc = self._mul_raw(acc, a)
            a = self._mul_raw(a, a)
            e >>= 1
        return acc

    def _find_generator(self) -> int:
        n = self.order - 1
        if n == 1:
            return 1
        primes = _prime_factors(n)
        for g in range(2, self.order):
            if all(self._pow_raw(g, n // p) != 1 for p in primes):
                return g
        raise RuntimeError("no multiplicative generator found")  # unreachable

    def _build_tables(self) -> None:
        n = self.order - 1
        g = self._find_generator()
        exp = [0] * (2 * n if n > 1 else 2)
        log = [0] * self.order
        val = 1
        for i in range(n):
            exp[i] = val
            log[val] = i
            val = self._mul_raw(val, g)
        for i in range(n, len(exp)):
            exp[i] = exp[i - n]
        self._exp = exp
        self._log = log

    # ------------------------------------------------------------------
    # field operations
    # ------------------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        """a + b; XOR, and identical to subtraction in characteristic 2."""
        return a ^ b

    sub = add

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        """Multiplicative inverse; raises ZeroDivisionError on 0."""
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self._exp is not None:
            return self._exp[self.order - 1 - self._log[a]]
        return self._pow_raw(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        return self._pow_raw(a, e)

    def elements(self) -> range:
        return range(self.order)

    def check_element(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.order:
            raise ValueError(f"{a!r} is not an element of {self!r}")
        return a

    def spec_json(self) -> dict:
        """Serialized form used inside every report."""
        return {"r": self.r, "poly": hex(self.poly)}

    def __eq__(self, other) -> bool:
        return isinstance(other, GF2m) and (self.r, self.poly) == (other.r, other.poly)

    def __hash__(self) -> int:
        return hash((self.r, self.poly))

    def __repr__(self) -> str:
        return f"GF2m(r={self.r}, poly={hex(self.poly)})"


class GFMatrix:
    """Immutable dense matrix over a GF2m field."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: GF2m, rows: Iterable[Iterable[int]], ncols: Optional[int] = None):
        self.field = field
        mat = tuple(tuple(int(v) for v in row) for row in rows)
        if mat:
            ncols = len(mat[0])
            for row in mat:
                if len(row) != ncols:
                    raise ValueError("ragged rows in matrix")
                for v in row:
                    if not 0 <= v < field.order:
                        raise ValueError(f"entry {v} outside field of order {field.order}")
        elif ncols is None:
            ncols = 0
        self.rows = mat
        self.nrows = len(mat)
        self.ncols = ncols

    # ------------------------------------------------------------------
    @classmethod
    def identity(cls, field: GF2m, n: int) -> "GFMatrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: GF2m, nrows: int, ncols: int) -> "GFMatrix":
        return cls(field, [[0] * ncols for _ in range(nrows)], ncols=ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GFMatrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.ncols == other.ncols
        )

    def __hash__(self) -> int:
        return hash((self.field, self.rows, self.ncols))

    def __repr__(self) -> str:
        return f"GFMatrix({self.nrows}x{self.ncols} over {self.field!r})"

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.rows]

    def transpose(self) -> "GFMatrix":
        return GFMatrix(
            self.field,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "GFMatrix":
        return GFMatrix(
            self.field,
            [[self.rows[i][j] for j in col_idx] for i in row_idx],
            ncols=len(col_idx),
        )

    def augment(self, other: "GFMatrix") -> "GFMatrix":
        if self.nrows != other.nrows:
            raise ValueError(f"row mismatch: {self.nrows} vs {other.nrows}")
        return GFMatrix(
            self.field,
            [self.rows[i] + other.rows[i] for i in range(self.nrows)],
            ncols=self.ncols + other.ncols,
        )

    # ------------------------------------------------------------------
    def __matmul__(self, other: "GFMatrix") -> "GFMatrix":
        if self.ncols != other.nrows:
            raise ValueError(
                f"dimension mismatch: {self.shape} @ {other.shape}"
            )
        f = self.field
        bt = other.transpose().rows
        out = []
        for arow in self.rows:
            orow = []
            for bcol in bt:
                acc = 0
                for a, b in zip(arow, bcol):
                    if a and b:
                        acc ^= f.mul(a, b)
                orow.append(acc)
            out.append(orow)
        return GFMatrix(f, out, ncols=other.ncols)

    def mul_vec(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.ncols:
            raise ValueError(f"vector length {len(vec)} != {self.ncols} columns")
        f = self.field
        out = []
        for row in self.rows:
            acc = 0
            for a, b in zip(row, vec):
                if a and b:
                    acc ^= f.mul(a, b)
            out.append(acc)
        return out

    # ------------------------------------------------------------------
    def _echelon(self) -> tuple[list[list[int]], list[int]]:
        """Row echelon form (copy) and its pivot column list."""
        f = self.field
        rows = [list(r) for r in self.rows]
        pivots: list[int] = []
        prow = 0
        for col in range(self.ncols):
            sel = None
            for i in range(prow, len(rows)):
                if rows[i][col]:
                    sel = i
                    break
            if sel is None:
                continue
            rows[prow], rows[sel] = rows[sel], rows[prow]
            inv = f.inv(rows[prow][col])
            if inv != 1:
                rows[prow] = [f.mul(inv, v) for v in rows[prow]]
            for i in range(len(rows)):
                if i != prow and rows[i][col]:
                    c = rows[i][col]
                    rows[i] = [v ^ f.mul(c, w) for v, w in zip(rows[i], rows[prow])]
            pivots.append(col)
            prow += 1
            if prow == len(rows):
                break
        return rows, pivots

    def rank(self) -> int:
        return len(self._echelon()[1])

    def inverse(self) -> "GFMatrix":
        """Gauss-Jordan inverse; raises ValueError on a singular matrix."""
        if self.nrows != self.ncols:
            raise ValueError(f"cannot invert non-square {self.shape} matrix")
        n = self.nrows
        aug = self.augment(GFMatrix.identity(self.field, n))
        rows, pivots = aug._echelon()
        if pivots[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return GFMatrix(self.field, [row[n:] for row in rows[:n]], ncols=n)

    def null_space(self) -> list[tuple[int, ...]]:
        """Basis of the right null space, as row vectors."""
        rows, pivots = self._echelon()
        pivot_set = set(pivots)
        basis = []
        for free in range(self.ncols):
            if free in pivot_set:
                continue
            vec = [0] * self.ncols
            vec[free] = 1
            for prow, pcol in enumerate(pivots):
                # reduced echelon: pivot rows are normalized to 1
                vec[pcol] = rows[prow][free]
            basis.append(tuple(vec))
        return basis

    def left_null_space(self) -> list[tuple[int, ...]]:
        """Basis of vectors c with c @ M = 0."""
        return self.transpose().null_space()
