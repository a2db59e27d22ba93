"""PDA parsing, validation, construction and derived parameters."""

import random
from fractions import Fraction
from math import comb

import pytest

from pdacache.pda import (
    PDA,
    STAR,
    PdaFormatError,
    derive_params,
    mn_pda,
    parse_pda,
    serialize_pda,
    validate,
)
from helpers import EXAMPLE1_GRID, EXAMPLE1_TEXT, example1_pda, random_valid_pda, vstack


# ----------------------------------------------------------------------
# parsing and serialization
# ----------------------------------------------------------------------

def test_parse_worked_example():
    pda = parse_pda(EXAMPLE1_TEXT)
    assert (pda.K, pda.F, pda.Z, pda.S) == (6, 4, 2, 4)
    assert pda.grid == EXAMPLE1_GRID
    assert pda.relabeling is None


def test_parse_single_cell():
    pda = parse_pda("1")
    assert (pda.K, pda.F, pda.Z, pda.S) == (1, 1, 0, 1)


def test_parse_smallest_star_pattern():
    pda = parse_pda("* 1\n1 *")
    assert (pda.K, pda.F, pda.Z, pda.S) == (2, 2, 1, 1)


def test_parse_comments_and_blank_lines():
    text = "# header\n* 1   # trailing\n\n1 *\n"
    assert parse_pda(text).grid == ((STAR, 1), (1, STAR))


def test_parse_errors():
    with pytest.raises(PdaFormatError, match="ragged"):
        parse_pda("* 1\n1")
    with pytest.raises(PdaFormatError, match="bad token"):
        parse_pda("* x")
    with pytest.raises(PdaFormatError, match="bad token"):
        parse_pda("0 1")
    with pytest.raises(PdaFormatError, match="empty"):
        parse_pda("# nothing\n")


def test_parse_relabels_sparse_labels():
    pda = parse_pda("* 9\n9 *")
    assert pda.S == 1
    assert pda.relabeling == {9: 1}
    assert pda.grid == ((STAR, 1), (1, STAR))
    first_appearance = parse_pda("3 7")
    assert first_appearance.relabeling == {3: 1, 7: 2}
    assert first_appearance.grid == ((1, 2),)


def test_serialize_roundtrip_worked_example():
    pda = example1_pda()
    assert parse_pda(serialize_pda(pda)).grid == pda.grid
    assert serialize_pda(parse_pda("1")) == "1\n"


def test_serialize_roundtrip_random():
    rng = random.Random(2)
    for _ in range(25):
        pda = random_valid_pda(rng)
        again = parse_pda(serialize_pda(pda))
        assert again.grid == pda.grid


# ----------------------------------------------------------------------
# validation
# ----------------------------------------------------------------------

def test_worked_example_is_valid():
    assert validate(example1_pda()).valid


def test_same_row_repeat_violates_c3():
    report = validate(PDA([[1, 1]]))
    assert not report.valid
    assert any(v.condition == "C3" for v in report.violations)


def test_two_by_two_no_cross_is_valid():
    assert validate(PDA([[STAR, 1], [2, STAR]])).valid


def test_unequal_stars_violates_c1():
    report = validate(PDA([[STAR, 1], [1, 1]]))
    assert any(v.condition == "C1" for v in report.violations)


def test_missing_star_cross_violates_c3():
    report = validate(PDA([[1, 2], [2, 1]]))
    cells = {v.cells for v in report.violations if v.condition == "C3"}
    assert ((1, 1), (2, 2)) in cells


def test_label_gap_violates_c2():
    report = validate(PDA([[STAR, 2], [2, STAR]]))
    assert any(v.condition == "C2" for v in report.violations)


def test_validation_report_json():
    obj = validate(PDA([[1, 1]])).to_json()
    assert obj["valid"] is False
    assert obj["violations"][0]["condition"] == "C3"
    assert obj["violations"][0]["cells"] == [[1, 1], [1, 2]]


# ----------------------------------------------------------------------
# regularity
# ----------------------------------------------------------------------

def test_regularity_worked_example():
    assert example1_pda().regularity() == 3


def test_regularity_smallest():
    assert PDA([[STAR, 1], [1, STAR]]).regularity() == 2


def test_regularity_absent_for_mixed_multiplicities():
    mixed = vstack(mn_pda(2, 1), mn_pda(2, 0))
    assert validate(mixed).valid
    assert mixed.regularity() is None


# ----------------------------------------------------------------------
# subset-based construction
# ----------------------------------------------------------------------

def test_mn_pda_4_2_matches_hand_ranking():
    # ranks of the 3-subsets of {1,2,3,4}: {1,2,3}->1 {1,2,4}->2 {1,3,4}->3 {2,3,4}->4
    pda = mn_pda(4, 2)
    assert pda.grid[0] == (STAR, STAR, 1, 2)     # row {1,2}
    assert pda.grid[1] == (STAR, 1, STAR, 3)     # row {1,3}
    assert pda.grid[3] == (1, STAR, STAR, 4)     # row {2,3}
    assert pda.grid[5] == (3, 4, STAR, STAR)     # row {3,4}
    assert (pda.K, pda.F, pda.Z, pda.S) == (4, 6, 3, 4)
    assert pda.regularity() == 3
    assert validate(pda).valid


def test_mn_pda_2_1():
    assert mn_pda(2, 1).grid == ((STAR, 1), (1, STAR))


def test_mn_pda_3_0_single_row():
    assert mn_pda(3, 0).grid == ((1, 2, 3),)


def test_mn_pda_t_equal_k_rejected():
    with pytest.raises(ValueError, match="all-star"):
        mn_pda(3, 3)
    with pytest.raises(ValueError):
        mn_pda(3, -1)


def test_mn_pda_t_equal_k_minus_1_allowed():
    pda = mn_pda(4, 3)
    assert (pda.K, pda.F, pda.Z, pda.S) == (4, 4, 3, 1)
    assert validate(pda).valid


@pytest.mark.parametrize("users", range(1, 7))
def test_mn_pda_parameters_and_slot_multiset(users):
    for t in range(users):
        pda = mn_pda(users, t)
        assert pda.F == comb(users, t)
        assert pda.Z == (comb(users - 1, t - 1) if t >= 1 else 0)
        assert pda.S == comb(users, t + 1)
        assert pda.regularity() == t + 1
        assert validate(pda).valid
        # the slot labels form exactly {1..S}, each appearing t+1 times
        for s in range(1, pda.S + 1):
            assert pda.multiplicity(s) == t + 1


def test_regular_counting_identity():
    # every valid g-regular PDA satisfies S*g = K*(F-Z)
    rng = random.Random(9)
    arrays = [example1_pda()] + [mn_pda(k, t) for k in range(2, 6) for t in range(k)]
    arrays += [random_valid_pda(rng) for _ in range(10)]
    for pda in arrays:
        g = pda.regularity()
        if g is not None:
            assert pda.S * g == pda.K * (pda.F - pda.Z)


# ----------------------------------------------------------------------
# derived parameters
# ----------------------------------------------------------------------

def test_derive_params_worked_example():
    params = derive_params(example1_pda(), 6)
    assert params.M == 7
    assert params.rate_secret == 2
    assert params.rate_plain == 1
    assert params.subpkt_secret == 2
    assert params.subpkt_plain == 4


def test_derive_params_mn_identity():
    for users, t, n in [(4, 2, 4), (6, 3, 6), (5, 1, 7)]:
        params = derive_params(mn_pda(users, t), n)
        assert params.M == Fraction(n * t, users - t) + 1
        assert params.rate_secret == Fraction(users, t + 1)


def test_derive_params_regular_rate():
    for pda in (example1_pda(), mn_pda(5, 2)):
        params = derive_params(pda, 3)
        assert params.rate_secret == Fraction(pda.K, pda.regularity())


def test_derive_params_all_star_rejected():
    with pytest.raises(ValueError, match="F == Z"):
        derive_params(PDA([[STAR], [STAR]]), 2)
    with pytest.raises(ValueError, match="library"):
        derive_params(example1_pda(), 0)
