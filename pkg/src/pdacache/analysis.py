"""Rate points, the memory-sharing envelope, and parameter tables.

Every quantity is carried as an exact rational and printed as p/q plus a
4-place decimal, so emitted tables are reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence, Union

Rational = Union[int, Fraction]


def fmt_rational(x: Rational) -> str:
    x = Fraction(x)
    return f"{x} ({float(x):.4f})"


def rational_json(x: Rational) -> dict:
    x = Fraction(x)
    return {"exact": str(x), "decimal": f"{float(x):.4f}"}


# ----------------------------------------------------------------------
# rate-memory points of the subset-based scheme
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class RatePoint:
    M: Fraction
    R: Fraction
    scheme: str
    subpacketization: Optional[int] = None

    def to_json(self) -> dict:
        out = {
            "M": rational_json(self.M),
            "R": rational_json(self.R),
            "scheme": self.scheme,
        }
        if self.subpacketization is not None:
            out["subpacketization"] = self.subpacketization
        return out


def mn_rate_point(users: int, library_size: int, t: int) -> RatePoint:
    """The keyed subset scheme's corner point at parameter t.

    M = N*t/(K-t) + 1 and R = K*(N+M-1)/(N+(K+1)*(M-1)), which simplifies to
    K/(t+1); both are computed and the simplification is asserted.  The
    subpacketization is C(K-1, t).
    """
    K, N = users, library_size
    if K < 2:
        raise ValueError(f"need at least two users, got {K}")
    if N < 1:
        raise ValueError(f"library size must be >= 1, got {N}")
    if not 0 <= t <= K - 2:
        raise ValueError(f"t must be in [0, {K - 2}], got {t}")
    M = Fraction(N * t, K - t) + 1
    R = Fraction(K) * (N + M - 1) / (N + (K + 1) * (M - 1))
    assert R == Fraction(K, t + 1)
    return RatePoint(M=M, R=R, scheme="mn-eq1", subpacketization=comb(K - 1, t))


def mn_endpoint(users: int, library_size: int) -> RatePoint:
    """The far corner M = N*(K-1), served at rate 1 by a separate scheme.

    Only the point is emitted; that endpoint scheme itself is out of scope.
    """
    K, N = users, library_size
    if K < 2 or N < 1:
        raise ValueError("need K >= 2 users and N >= 1 files")
    return RatePoint(M=Fraction(N * (K - 1)), R=Fraction(1), scheme="mn-eq1-endpoint")


def mn_rate_points(users: int, library_size: int) -> list[RatePoint]:
    """All corner points: t = 0 .. K-2 plus the rate-1 endpoint."""
    points = [mn_rate_point(users, library_size, t) for t in range(users - 1)]
    endpoint = mn_endpoint(users, library_size)
    if all(p.M != endpoint.M for p in points):
        points.append(endpoint)
    return points


# ----------------------------------------------------------------------
# lower convex envelope (memory sharing)
# ----------------------------------------------------------------------

class Envelope:
    """Piecewise-linear lower hull of rate points, evaluable at any M."""

    def __init__(self, breakpoints: Sequence[tuple[Fraction, Fraction]]):
        self.breakpoints = tuple(breakpoints)

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return self.breakpoints[0][0], self.breakpoints[-1][0]

    def value(self, memory: Rational) -> Fraction:
        m = Fraction(memory)
        lo, hi = self.domain
        if not lo <= m <= hi:
            raise ValueError(f"memory {m} outside the covered range [{lo}, {hi}]")
        pts = self.breakpoints
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x0 <= m <= x1:
                if x0 == x1:
                    return min(y0, y1)
                return y0 + (y1 - y0) * (m - x0) / (x1 - x0)
        return pts[-1][1]

    def to_json(self) -> dict:
        return {
            "breakpoints": [
                {"M": rational_json(m), "R": rational_json(r)} for m, r in self.breakpoints
            ]
        }


def convex_envelope(points: Sequence[RatePoint]) -> Envelope:
    """Lower convex hull over memory; intermediate points come from sharing."""
    if not points:
        raise ValueError("need at least one rate point")
    best: dict[Fraction, Fraction] = {}
    for p in points:
        m, r = Fraction(p.M), Fraction(p.R)
        if m not in best or r < best[m]:
            best[m] = r
    pts = sorted(best.items())
    if len(pts) == 1:
        return Envelope(pts)
    hull: list[tuple[Fraction, Fraction]] = []
    for p in pts:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            if (x1 - x0) * (p[1] - y0) - (y1 - y0) * (p[0] - x0) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return Envelope(hull)


# ----------------------------------------------------------------------
# comparison tables
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Table1Row:
    """One known PDA family versus the subset scheme at the same memory.

    ``printed`` holds the values the reference table lists; whenever a printed
    value differs from the one the defining formulas give, the field name is
    recorded in ``discrepancies`` and the formula value is authoritative.
    """

    label: str
    parameter: str
    K: int
    F: int
    Z: int
    S: int
    t: int
    M: Fraction
    M_formula: str
    R_mn: Fraction
    R_pda: Fraction
    F_mn: int
    F_pda: int
    printed: dict
    discrepancies: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "pda": self.label,
            "parameter": self.parameter,
            "K": self.K,
            "F": self.F,
            "Z": self.Z,
            "S": self.S,
            "t": self.t,
            "M": rational_json(self.M),
            "M_formula": self.M_formula,
            "R_mn": rational_json(self.R_mn),
            "R_pda": rational_json(self.R_pda),
            "F_mn": self.F_mn,
            "F_pda": self.F_pda,
            "printed": {
                k: (rational_json(v) if isinstance(v, (int, Fraction)) else v)
                for k, v in self.printed.items()
            },
            "discrepancies": list(self.discrepancies),
        }


def _table1_row(
    label: str,
    parameter: str,
    K: int,
    F: int,
    Z: int,
    S: int,
    library_size: int,
    M_formula: str,
    printed: dict,
) -> Table1Row:
    N = library_size
    secret_len = F - Z
    M = Fraction(N * Z, secret_len) + 1
    t_frac = Fraction(K * (M - 1), N + M - 1)
    if t_frac.denominator != 1:
        raise ValueError(
            f"{label}: memory {M} gives non-integer t = {t_frac}; no subset-scheme "
            f"corner point to compare against"
        )
    t = int(t_frac)
    R_mn = Fraction(K, t + 1)
    R_pda = Fraction(S, secret_len)
    F_mn = comb(K - 1, t)
    F_pda = secret_len
    computed = {"R_mn": R_mn, "R_pda": R_pda, "F_mn": F_mn, "F_pda": F_pda}
    discrepancies = tuple(
        name
        for name, value in computed.items()
        if printed.get(name) is not None and Fraction(printed[name]) != Fraction(value)
    )
    return Table1Row(
        label=label,
        parameter=parameter,
        K=K,
        F=F,
        Z=Z,
        S=S,
        t=t,
        M=M,
        M_formula=M_formula,
        R_mn=R_mn,
        R_pda=R_pda,
        F_mn=F_mn,
        F_pda=F_pda,
        printed=printed,
        discrepancies=discrepancies,
    )


def table1_rows(
    q_values: Sequence[int] = (3,),
    n_values: Sequence[int] = (4,),
    library_size: int = 6,
) -> list[Table1Row]:
    """The four-family comparison table, computed from the formulas.

    Rows one, two and four are parameterized by q >= 2, row three by n >= 3.
    Row three's reference subpacketization is printed only as an entropy
    approximation, so the exact binomial is emitted with nothing to flag.
    """
    rows = []
    for q in q_values:
        if q < 2:
            raise ValueError(f"q must be >= 2, got {q}")
        rows.append(
            _table1_row(
                "2-(2q, q, 1, q^2-q)",
                f"q={q}",
                K=2 * q, F=q, Z=1, S=q * q - q,
                library_size=library_size,
                M_formula="1 + N/(q-1)",
                printed={
                    "R_mn": Fraction(2 * q, 3),
                    "R_pda": Fraction(q),
                    "F_mn": (q - 1) * (2 * q - 1),
                    "F_pda": q,
                },
            )
        )
        rows.append(
            _table1_row(
                "2-(2q, q^2-q, (q-1)^2, q)",
                f"q={q}",
                K=2 * q, F=q * q - q, Z=(q - 1) ** 2, S=q,
                library_size=library_size,
                M_formula="1 + N*(q-1)",
                printed={
                    "R_mn": Fraction(2 * q, 2 * q - 1),
                    "R_pda": Fraction(q, q - 1),
                    "F_mn": 2 * q - 1,
                    "F_pda": q,
                },
            )
        )
    for n in n_values:
        if n < 3:
            raise ValueError(f"n must be >= 3, got {n}")
        rows.append(
            _table1_row(
                "3-(C(n,2), n, 2, C(n,3))",
                f"n={n}",
                K=comb(n, 2), F=n, Z=2, S=comb(n, 3),
                library_size=library_size,
                M_formula="1 + 2N/(n-2)",
                printed={
                    "R_mn": Fraction(n - 1, 2),
                    "R_pda": Fraction(n * (n - 1), 6),
                    "F_mn": None,  # reference prints only an entropy approximation
                    "F_pda": n - 2,
                },
            )
        )
    for q in q_values:
        rows.append(
            _table1_row(
                "2-(2q, q^2, q, q^3-q^2)",
                f"q={q}",
                K=2 * q, F=q * q, Z=q, S=q ** 3 - q ** 2,
                library_size=library_size,
                M_formula="1 + N/(q-1)",
                printed={
                    "R_mn": Fraction(q * q, 2 * (q + 1)),
                    "R_pda": Fraction(q),
                    "F_mn": (q - 1) * (2 * q - 1),
                    "F_pda": q * (q - 1),
                },
            )
        )
    return rows


@dataclass(frozen=True)
class Table2Row:
    """Keyed versus unkeyed scheme on the (m+1)-regular q-ary PDA family."""

    q: int
    m: int
    N: int
    K: int
    memory_plain: Fraction
    memory_secret: Fraction
    subpkt_plain: int
    subpkt_secret: int
    rate_plain: Fraction
    rate_secret: Fraction

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "m": self.m,
            "N": self.N,
            "K": self.K,
            "memory": {
                "plain": rational_json(self.memory_plain),
                "secret": rational_json(self.memory_secret),
            },
            "subpacketization": {"plain": self.subpkt_plain, "secret": self.subpkt_secret},
            "rate": {
                "plain": rational_json(self.rate_plain),
                "secret": rational_json(self.rate_secret),
            },
        }


def table2_row(q: int, m: int, library_size: int) -> Table2Row:
    """One row of the with/without-keys comparison, straight from formulas."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    N = library_size
    return Table2Row(
        q=q,
        m=m,
        N=N,
        K=q * (m + 1),
        memory_plain=Fraction(N, q),
        memory_secret=1 + Fraction(N, q - 1),
        subpkt_plain=q ** m,
        subpkt_secret=q ** m - q ** (m - 1),
        rate_plain=Fraction(q - 1),
        rate_secret=Fraction(q),
    )


def table2_rows(pairs: Sequence[tuple[int, int]], library_size: int) -> list[Table2Row]:
    return [table2_row(q, m, library_size) for q, m in pairs]
