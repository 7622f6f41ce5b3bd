from fractions import Fraction

import pytest

from conversekit.mat2 import (
    A, D, H, J, L, LIT, P, Q, W,
    InvalidTokenError, MatrixParseError, ProjMat, Word,
    eval_word, find_word, make_special, parse_matrix_list, parse_word,
)


def test_canonical_form_clears_denominators():
    m = ProjMat(4, Fraction(-1, 2), 10, -1)
    assert m.entries == (8, -1, 20, -2)
    assert ProjMat(2, 4, 6, 14) == ProjMat(1, 2, 3, 7)


def test_negation_is_a_different_class():
    assert -ProjMat.identity() != ProjMat.identity()
    assert make_special(Q).is_pm_identity()
    assert not make_special(Q).is_identity()


def test_rejects_nonpositive_determinant():
    with pytest.raises(ValueError):
        ProjMat(1, 2, 2, 1)


@pytest.mark.parametrize(
    "tok, want",
    [
        (P(1), (1, 1, 0, 1)),
        (H(18), (0, -1, 18, 0)),
        (L(20), (8, -1, 20, -2)),
        (J(18), (-2, 1, 18, -10)),
        (W(5), (1, 0, 5, 1)),
    ],
)
def test_special_matrices(tok, want):
    assert make_special(tok).entries == want


def test_invalid_tokens():
    with pytest.raises(InvalidTokenError, match="L18"):
        make_special(L(18))
    with pytest.raises(InvalidTokenError):
        make_special(J(7))


def test_fricke_conjugate_of_translation():
    for N in (1, 4, 11, 18):
        assert eval_word([H(N), P(-1), H(N) ** -1]).entries == (1, 0, N, 1)


def test_half_translation_fricke_square_is_L():
    assert eval_word(parse_word("(P1/2 H24)^2")).entries == (10, -1, 24, -2)
    assert eval_word(parse_word("(P1/2 H24)^2")) == make_special(L(24))


def test_A_times_W18():
    assert eval_word([A, W(18)]).entries == (-11, -1, -54, -5)


def test_parse_word_round_trip():
    w = parse_word("Q (W18 J18)^-2 A^-1 M[7,-2;18,-5]")
    assert str(w) == "Q J18^-1 W18^-1 J18^-1 W18^-1 A^-1 M[7,-2;18,-5]"
    assert parse_word(str(w)) == w
    assert eval_word(parse_word("Q (W18 J18)^-2 A^-1")).entries == (7, -2, 18, -5)


def test_parse_errors():
    with pytest.raises(MatrixParseError):
        ProjMat.parse("1,2;3")
    with pytest.raises(MatrixParseError):
        parse_word("P1 %")


def test_matrix_list_file_format():
    text = "# generators\n1,1;0,1\n\n-1,0;0,-1  # Q\n"
    assert [m.entries for m in parse_matrix_list(text)] == [(1, 1, 0, 1), (-1, 0, 0, -1)]
    with pytest.raises(MatrixParseError, match=":2:"):
        parse_matrix_list("1,1;0,1\n1,x;0,1")


def test_find_word_identity_is_empty():
    assert find_word(ProjMat.identity(), [P(1)], 3) == Word()


def test_find_word_W4():
    w = find_word(make_special(W(4)), [P(-1), H(4)], 7)
    assert len(w) == 3
    assert eval_word(w) == make_special(W(4))


def test_find_word_level18_target():
    target = ProjMat(7, -2, 18, -5)
    w = find_word(target, [Q, W(18), J(18), A], 7)
    assert w is not None and len(w) <= 7
    assert eval_word(w) == target


def test_find_word_not_found():
    assert find_word(ProjMat(7, -2, 18, -5), [P(1)], 3) is None


def test_literal_token_and_power():
    m = ProjMat(7, -1, 36, -5)
    assert eval_word([LIT(m), LIT(m) ** -1]).is_identity()
    assert make_special(D ** 2) == make_special(D) * make_special(D)
