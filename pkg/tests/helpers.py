"""Shared fixtures: the worked 4x6 array and a random valid-PDA generator."""

from __future__ import annotations

import random

from pdacache.gf2 import GF2m
from pdacache.pda import PDA, STAR, mn_pda, validate
from pdacache.sharing import CauchyMatrix, cauchy_matrix

EXAMPLE1_TEXT = """\
* 2 * 3 * 1
1 * * 4 2 *
* 4 1 * 3 *
3 * 2 * * 4
"""

EXAMPLE1_GRID = (
    (STAR, 2, STAR, 3, STAR, 1),
    (1, STAR, STAR, 4, 2, STAR),
    (STAR, 4, 1, STAR, 3, STAR),
    (3, STAR, 2, STAR, STAR, 4),
)

#: The 4x4 matrix of the worked example over GF(8) with x^3 + x + 1.
EXAMPLE_G = ((1, 6, 2, 4), (6, 1, 4, 2), (2, 4, 1, 6), (4, 2, 6, 1))


def example1_pda() -> PDA:
    return PDA(EXAMPLE1_GRID)


def example_field() -> GF2m:
    return GF2m(3, 0b1011)


def example_cauchy() -> CauchyMatrix:
    return cauchy_matrix(example_field(), 4, 4)


# ----------------------------------------------------------------------
# validity-preserving transforms for random PDA generation
# ----------------------------------------------------------------------

def vstack(p1: PDA, p2: PDA) -> PDA:
    """Stack two PDAs over the same users; slot labels of p2 are offset."""
    assert p1.K == p2.K
    rows = [list(row) for row in p1.grid]
    rows += [
        [STAR if cell is STAR else cell + p1.S for cell in row] for row in p2.grid
    ]
    return PDA(rows)


def hconcat(p1: PDA, p2: PDA) -> PDA:
    """Place two PDAs with identical (F, Z) side by side; labels offset."""
    assert p1.F == p2.F and p1.Z == p2.Z
    rows = [
        list(r1) + [STAR if cell is STAR else cell + p1.S for cell in r2]
        for r1, r2 in zip(p1.grid, p2.grid)
    ]
    return PDA(rows)


def shuffle_pda(pda: PDA, rng: random.Random) -> PDA:
    """Random row/column permutations and a slot relabeling."""
    rows = list(range(pda.F))
    cols = list(range(pda.K))
    rng.shuffle(rows)
    rng.shuffle(cols)
    labels = list(range(1, pda.S + 1))
    rng.shuffle(labels)
    relabel = {s: labels[s - 1] for s in range(1, pda.S + 1)}
    grid = [
        [
            STAR if pda.grid[j][k] is STAR else relabel[pda.grid[j][k]]
            for k in cols
        ]
        for j in rows
    ]
    return PDA(grid)


def random_valid_pda(rng: random.Random, max_users: int = 5) -> PDA:
    """A random valid PDA: a subset-based array, stacked or concatenated
    with another, then shuffled.  Always validated before returning."""
    users = rng.randint(2, max_users)
    t = rng.randint(0, users - 1)
    base = mn_pda(users, t)
    kind = rng.randrange(3)
    if kind == 1:
        base = vstack(base, mn_pda(users, rng.randint(0, users - 1)))
    elif kind == 2:
        base = hconcat(base, base)
    out = shuffle_pda(base, rng)
    report = validate(out)
    assert report.valid, report.violations
    return out
