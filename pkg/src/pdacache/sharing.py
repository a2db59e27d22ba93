"""Cauchy-matrix share encoding: a non-perfect threshold scheme over GF(2^r).

A file of B bits is split into F-Z equal subfiles (the secret vector) and
mixed with Z uniformly random key components through an F x F Cauchy matrix,
yielding F shares.  All F shares reconstruct the file exactly; any Z or fewer
reveal nothing, because every square submatrix of a Cauchy matrix is
nonsingular.  Each share is 1/(F-Z) of the file size, the floor for schemes
of this kind.

Subfiles are sequences of field symbols and the linear map acts independently
per symbol position, so arbitrary file lengths are supported: a subfile of
F_s bits becomes ceil(F_s/r) symbols, the last carrying the remaining bits
right-justified with zero padding.  Key components are drawn uniformly over
whole field symbols, which keeps every symbol position fully masked even when
r does not divide F_s; when it does (the only case the simulator produces),
a key is exactly F_s bits as the share-size accounting expects.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional, Sequence, Union

from .gf2 import GF2m, GFMatrix

SymbolSeq = tuple[int, ...]


class CauchyMatrix:
    """u x v grid of inverted pairwise sums of two disjoint element sets."""

    def __init__(self, field: GF2m, x_elems: Sequence[int], y_elems: Sequence[int]):
        x = tuple(field.check_element(v) for v in x_elems)
        y = tuple(field.check_element(v) for v in y_elems)
        if len(set(x)) != len(x):
            raise ValueError("x elements must be distinct")
        if len(set(y)) != len(y):
            raise ValueError("y elements must be distinct")
        if set(x) & set(y):
            raise ValueError(f"x and y must be disjoint; both contain {sorted(set(x) & set(y))}")
        self.field = field
        self.x = x
        self.y = y
        self.matrix = GFMatrix(
            field, [[field.inv(xi ^ yj) for yj in y] for xi in x], ncols=len(y)
        )
        self._inverse: Optional[GFMatrix] = None

    @property
    def nrows(self) -> int:
        return len(self.x)

    @property
    def ncols(self) -> int:
        return len(self.y)

    def row(self, i: int) -> tuple[int, ...]:
        return self.matrix.rows[i]

    def inverse(self) -> GFMatrix:
        """Cached inverse; always exists for a square Cauchy matrix."""
        if self._inverse is None:
            self._inverse = self.matrix.inverse()
        return self._inverse

    def to_json(self) -> dict:
        return {
            "field": self.field.spec_json(),
            "x": list(self.x),
            "y": list(self.y),
            "matrix": self.matrix.to_lists(),
        }

    def __repr__(self) -> str:
        return f"CauchyMatrix({self.nrows}x{self.ncols} over {self.field!r})"


def cauchy_matrix(
    field: GF2m,
    nrows: int,
    ncols: int,
    x_elems: Optional[Sequence[int]] = None,
    y_elems: Optional[Sequence[int]] = None,
) -> CauchyMatrix:
    """Build a Cauchy matrix, defaulting to even x and odd y element codes.

    The default picks x = {0, 2, 4, ...} and y = {1, 3, 5, ...}, the smallest
    even/odd split, which is reproducible and guarantees disjointness; it
    requires 2^r >= 2*max(nrows, ncols).
    """
    if nrows < 1 or ncols < 1:
        raise ValueError(f"matrix dimensions must be positive, got {nrows}x{ncols}")
    if field.order < nrows + ncols:
        raise ValueError(
            f"field of order {field.order} cannot host {nrows}+{ncols} distinct elements"
        )
    if x_elems is None and y_elems is None:
        need = 2 * max(nrows, ncols)
        if field.order < need:
            raise ValueError(
                f"field of order {field.order} too small for the default even/odd "
                f"element split; need 2^r >= {need}"
            )
        x_elems = [2 * i for i in range(nrows)]
        y_elems = [2 * i + 1 for i in range(ncols)]
    elif x_elems is None or y_elems is None:
        raise ValueError("provide both x and y element sets, or neither")
    if len(x_elems) != nrows or len(y_elems) != ncols:
        raise ValueError("element set sizes must match the requested dimensions")
    return CauchyMatrix(field, x_elems, y_elems)


# ----------------------------------------------------------------------
# sharing parameters and bit packing
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SharingParams:
    """Shapes of one file's secret, key and share vectors.

    ``threshold`` is the number of shares that reveal nothing (the star count
    Z of the driving PDA); ``shares`` is the total F.
    """

    field: GF2m
    shares: int           # F
    threshold: int        # Z
    file_bits: int        # B
    subfile_bits: int     # F_s = B/(F-Z)
    symbols: int          # symbols per subfile
    tail_bits: int        # meaningful bits in the final symbol

    @property
    def secret_len(self) -> int:
        return self.shares - self.threshold

    @property
    def key_len(self) -> int:
        return self.threshold

    def to_json(self) -> dict:
        return {
            "field": self.field.spec_json(),
            "shares": self.shares,
            "threshold": self.threshold,
            "file_bits": self.file_bits,
            "subfile_bits": self.subfile_bits,
            "symbols_per_subfile": self.symbols,
        }


def sharing_params(field: GF2m, shares: int, threshold: int, file_bits: int) -> SharingParams:
    if shares < 1:
        raise ValueError(f"need at least one share, got {shares}")
    if not 0 <= threshold < shares:
        raise ValueError(f"threshold must be in [0, {shares}), got {threshold}")
    if field.order < 2 * shares:
        raise ValueError(
            f"field of order {field.order} too small for {shares} shares; need 2^r >= {2 * shares}"
        )
    secret_len = shares - threshold
    if file_bits < 1 or file_bits % secret_len:
        raise ValueError(
            f"file size {file_bits} bits must be a positive multiple of {secret_len} subfiles"
        )
    subfile_bits = file_bits // secret_len
    r = field.r
    symbols = -(-subfile_bits // r)
    tail = subfile_bits - (symbols - 1) * r
    return SharingParams(
        field=field,
        shares=shares,
        threshold=threshold,
        file_bits=file_bits,
        subfile_bits=subfile_bits,
        symbols=symbols,
        tail_bits=tail,
    )


def subfile_to_symbols(params: SharingParams, value: int) -> SymbolSeq:
    """Split an F_s-bit value into r-bit symbols, first bits first."""
    if not 0 <= value < (1 << params.subfile_bits):
        raise ValueError(f"subfile value needs more than {params.subfile_bits} bits")
    r = params.field.r
    fs = params.subfile_bits
    out = [
        (value >> (fs - (i + 1) * r)) & ((1 << r) - 1)
        for i in range(params.symbols - 1)
    ]
    out.append(value & ((1 << params.tail_bits) - 1))
    return tuple(out)


def symbols_to_subfile(params: SharingParams, symbols: SymbolSeq) -> int:
    if len(symbols) != params.symbols:
        raise ValueError(f"expected {params.symbols} symbols, got {len(symbols)}")
    r = params.field.r
    value = 0
    for sym in symbols[:-1]:
        value = (value << r) | sym
    tail = symbols[-1]
    if tail >> params.tail_bits:
        raise ValueError("final symbol carries bits beyond the recorded subfile length")
    return (value << params.tail_bits) | tail


def file_to_secret(params: SharingParams, file_value: int) -> tuple[SymbolSeq, ...]:
    """Split a B-bit file value into the F-Z subfile symbol sequences."""
    if not 0 <= file_value < (1 << params.file_bits):
        raise ValueError(f"file value needs more than {params.file_bits} bits")
    fs = params.subfile_bits
    n = params.secret_len
    mask = (1 << fs) - 1
    return tuple(
        subfile_to_symbols(params, (file_value >> (params.file_bits - (i + 1) * fs)) & mask)
        for i in range(n)
    )


def secret_to_file(params: SharingParams, secret: Sequence[SymbolSeq]) -> int:
    if len(secret) != params.secret_len:
        raise ValueError(f"expected {params.secret_len} subfiles, got {len(secret)}")
    value = 0
    for seq in secret:
        value = (value << params.subfile_bits) | symbols_to_subfile(params, seq)
    return value


def symbols_to_int(symbols: SymbolSeq, r: int) -> int:
    """Pack whole r-bit symbols big-endian into one int."""
    value = 0
    for sym in symbols:
        value = (value << r) | sym
    return value


def int_to_symbols(value: int, r: int, count: int) -> SymbolSeq:
    mask = (1 << r) - 1
    return tuple((value >> (r * (count - 1 - i))) & mask for i in range(count))


def random_key_vector(params: SharingParams, rng: random.Random) -> tuple[SymbolSeq, ...]:
    """Z uniformly random subfile-shaped sequences of whole field symbols."""
    r = params.field.r
    return tuple(
        tuple(rng.getrandbits(r) for _ in range(params.symbols))
        for _ in range(params.key_len)
    )


def random_slot_key(params: SharingParams, rng: random.Random) -> SymbolSeq:
    """One uniformly random share-shaped pad sequence."""
    r = params.field.r
    return tuple(rng.getrandbits(r) for _ in range(params.symbols))


def seq_xor(a: SymbolSeq, b: SymbolSeq) -> SymbolSeq:
    if len(a) != len(b):
        raise ValueError(f"sequence length mismatch: {len(a)} vs {len(b)}")
    return tuple(x ^ y for x, y in zip(a, b))


# ----------------------------------------------------------------------
# encode / decode
# ----------------------------------------------------------------------

def encode_shares(
    params: SharingParams,
    G: CauchyMatrix,
    secret: Sequence[SymbolSeq],
    keys: Sequence[SymbolSeq],
) -> tuple[SymbolSeq, ...]:
    """Shares = G applied to the stacked secret and key vector, per position."""
    _check_square(params, G)
    if len(secret) != params.secret_len:
        raise ValueError(f"expected {params.secret_len} subfiles, got {len(secret)}")
    if len(keys) != params.key_len:
        raise ValueError(f"expected {params.key_len} key components, got {len(keys)}")
    stacked = list(secret) + list(keys)
    width = {len(seq) for seq in stacked} or {params.symbols}
    if width != {params.symbols}:
        raise ValueError(f"component lengths {sorted(width)} != {params.symbols} symbols")
    f = params.field
    rows = G.matrix.rows
    out = []
    for i in range(params.shares):
        row = rows[i]
        share = []
        for pos in range(params.symbols):
            acc = 0
            for coeff, seq in zip(row, stacked):
                sym = seq[pos]
                if coeff and sym:
                    acc ^= f.mul(coeff, sym)
            share.append(acc)
        out.append(tuple(share))
    return tuple(out)


def decode_shares(
    params: SharingParams, G: CauchyMatrix, shares: Sequence[SymbolSeq]
) -> tuple[tuple[SymbolSeq, ...], tuple[SymbolSeq, ...]]:
    """Invert the encoding; returns (secret vector, key vector)."""
    _check_square(params, G)
    if len(shares) != params.shares:
        raise ValueError(f"all {params.shares} shares are required, got {len(shares)}")
    f = params.field
    inv_rows = G.inverse().rows
    stacked = []
    for i in range(params.shares):
        row = inv_rows[i]
        comp = []
        for pos in range(params.symbols):
            acc = 0
            for coeff, seq in zip(row, shares):
                sym = seq[pos]
                if coeff and sym:
                    acc ^= f.mul(coeff, sym)
            comp.append(acc)
        stacked.append(tuple(comp))
    return tuple(stacked[: params.secret_len]), tuple(stacked[params.secret_len:])


def _check_square(params: SharingParams, G: CauchyMatrix) -> None:
    if G.field != params.field:
        raise ValueError("matrix field does not match the sharing parameters")
    if G.nrows != params.shares or G.ncols != params.shares:
        raise ValueError(
            f"need a {params.shares}x{params.shares} matrix, got {G.nrows}x{G.ncols}"
        )


# ----------------------------------------------------------------------
# threshold secrecy spot checks
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ThresholdSecrecyReport:
    shares: int
    threshold: int
    subsets_checked: int
    exhaustive: bool
    key_block_failures: tuple[tuple[int, ...], ...]
    square_samples: int
    square_failures: tuple[dict, ...]

    @property
    def ok(self) -> bool:
        return not self.key_block_failures and not self.square_failures

    def to_json(self) -> dict:
        return {
            "shares": self.shares,
            "threshold": self.threshold,
            "subsets_checked": self.subsets_checked,
            "exhaustive": self.exhaustive,
            "key_block_failures": [list(rows) for rows in self.key_block_failures],
            "square_samples": self.square_samples,
            "square_failures": list(self.square_failures),
            "ok": self.ok,
        }


def threshold_secrecy_check(
    G: Union[CauchyMatrix, GFMatrix],
    threshold: int,
    samples: int = 200,
    rng: Optional[random.Random] = None,
    enumerate_cap: int = 1000,
) -> ThresholdSecrecyReport:
    """Rank-check the key-column blocks and sampled square submatrices.

    For every (or, past ``enumerate_cap``, a sample of) threshold-sized row
    subset, the threshold x threshold block under the key columns must have
    full rank; that is the algebraic core of the secrecy argument.  Failures
    are report entries, and any failure means G is not a Cauchy matrix.
    """
    mat = G.matrix if isinstance(G, CauchyMatrix) else G
    F = mat.nrows
    if mat.ncols != F:
        raise ValueError("threshold check expects a square matrix")
    if not 0 < threshold < F:
        raise ValueError(f"threshold must be in (0, {F}), got {threshold}")
    rng = rng or random.Random(0)
    key_cols = list(range(F - threshold, F))

    total = comb(F, threshold)
    exhaustive = total <= enumerate_cap
    if exhaustive:
        subsets = list(combinations(range(F), threshold))
    else:
        subsets = [tuple(sorted(rng.sample(range(F), threshold))) for _ in range(samples)]

    key_failures = []
    for rows in subsets:
        block = mat.submatrix(rows, key_cols)
        if block.rank() != threshold:
            key_failures.append(tuple(r + 1 for r in rows))

    square_failures = []
    for _ in range(samples):
        size = rng.randint(1, min(mat.nrows, mat.ncols))
        rows = sorted(rng.sample(range(mat.nrows), size))
        cols = sorted(rng.sample(range(mat.ncols), size))
        if mat.submatrix(rows, cols).rank() != size:
            square_failures.append(
                {"rows": [r + 1 for r in rows], "cols": [c + 1 for c in cols]}
            )

    return ThresholdSecrecyReport(
        shares=F,
        threshold=threshold,
        subsets_checked=len(subsets),
        exhaustive=exhaustive,
        key_block_failures=tuple(key_failures),
        square_samples=samples,
        square_failures=tuple(square_failures),
    )
