"""Normal ordering engine checked against a single-swap rewriting oracle."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degenstirling.algebra import LAMBDA, LambdaPoly
from degenstirling.weyl import (
    MonomialImage,
    NormalForm,
    apply_to_monomial,
    degenerate_product,
    difference_extract,
    extract_stirling,
    nf_multiply,
)

from .oracles import normal_order_letters, normal_order_power, normal_order_word


def test_defining_relation():
    a = NormalForm.ladder(0, 1)
    cdag = NormalForm.ladder(1, 0)
    assert a * cdag == NormalForm({(1, 1): 1, (0, 0): 1})


def test_number_operator_square():
    num = NormalForm.ladder(1, 1)
    assert num * num == NormalForm({(2, 2): 1, (1, 1): 1})


def test_two_by_two_contraction():
    # a^2 (c^dag)^2 = (c^dag)^2 a^2 + 4 c^dag a + 2
    left = NormalForm.ladder(0, 2)
    right = NormalForm.ladder(2, 0)
    assert left * right == NormalForm({(2, 2): 1, (1, 1): 4, (0, 0): 2})


def test_invalid_powers_rejected():
    with pytest.raises(ValueError):
        NormalForm({(-1, 0): 1})
    with pytest.raises(ValueError):
        NormalForm({(0, Fraction(1, 2)): 1})


def test_zero_coefficients_dropped():
    nf = NormalForm({(1, 1): LAMBDA - LAMBDA, (0, 0): 3})
    assert nf.terms == {(0, 0): LambdaPoly.constant(3)}
    assert nf.coefficient(1, 1) == 0


words = st.lists(st.sampled_from(["c", "a"]), min_size=0, max_size=8).map(tuple)


@settings(max_examples=60, deadline=None)
@given(words)
def test_product_matches_single_swap_rewriting(word):
    nf = NormalForm.identity()
    for letter in word:
        nf = nf * NormalForm.ladder(letter == "c", letter == "a")
    assert nf.terms == {
        key: LambdaPoly.constant(c) for key, c in normal_order_word(word).items()
    }


@settings(max_examples=60, deadline=None)
@given(words)
def test_letter_oracle_agrees_with_rewriting_oracle(word):
    assert normal_order_letters(word) == normal_order_word(word)


@settings(max_examples=30, deadline=None)
@given(words, words, words)
def test_product_is_associative(u, v, w):
    def nf_of(word):
        out = NormalForm.identity()
        for letter in word:
            out = out * NormalForm.ladder(letter == "c", letter == "a")
        return out

    a, b, c = nf_of(u), nf_of(v), nf_of(w)
    assert nf_multiply(nf_multiply(a, b), c) == nf_multiply(a, nf_multiply(b, c))


def test_degenerate_product_simplest_case():
    assert degenerate_product(1, 1, 1) == NormalForm({(1, 1): 1})
    assert degenerate_product(2, 1, 1) == NormalForm(
        {(2, 2): 1, (1, 1): 1 - LAMBDA}
    )


def test_degenerate_product_worked_row():
    nf = degenerate_product(2, 4, 2)
    expected = {
        (8, 4): LambdaPoly.one(),
        (7, 3): LambdaPoly.constant(8),
        (6, 2): 12 - LAMBDA,
        (5, 1): -4 * LAMBDA,
        (4, 0): -2 * LAMBDA,
    }
    assert nf.terms == expected


def test_degenerate_product_lambda_zero_is_plain_power():
    # at l = 0 the k-dependence drops out and the product collapses to
    # ((c^dag)^r a^s)^n
    base = NormalForm.ladder(2, 1)
    power = nf_multiply(nf_multiply(base, base), base)
    assert degenerate_product(3, 2, 1).at_lambda(0) == power


def test_degenerate_product_matches_rewriting_oracle():
    for n, r, s in [(1, 1, 1), (2, 1, 1), (2, 2, 1), (1, 2, 2), (2, 2, 2)]:
        expected = normal_order_power(r, s, n)
        assert degenerate_product(n, r, s).at_lambda(0).terms == {
            key: LambdaPoly.constant(c) for key, c in expected.items()
        }


def test_degenerate_product_validates_arguments():
    with pytest.raises(ValueError):
        degenerate_product(0, 1, 1)
    with pytest.raises(ValueError):
        degenerate_product(1, 1, 2)
    with pytest.raises(ValueError):
        degenerate_product(1, 1, 0)


def test_extract_stirling_worked_row():
    row = extract_stirling(degenerate_product(2, 4, 2), 2, 4, 2)
    assert row == [
        -2 * LAMBDA,
        -4 * LAMBDA,
        12 - LAMBDA,
        LambdaPoly.constant(8),
        LambdaPoly.one(),
    ]


def test_extract_stirling_rejects_off_diagonal():
    with pytest.raises(ValueError):
        extract_stirling(NormalForm.ladder(1, 1), 2, 4, 2)


def test_apply_to_monomial_collapses_to_one_power():
    nf = degenerate_product(2, 4, 2)
    for p in range(4):
        img = apply_to_monomial(nf, p)
        assert set(img.terms) == {p + 4}
    # a lowers x^0 to zero, so only the creation part could have survived
    # and there is none with j = 0 in this product
    assert apply_to_monomial(degenerate_product(1, 2, 1), 0).terms == {}
    assert apply_to_monomial(degenerate_product(1, 2, 1), 1).terms == {
        2: LambdaPoly.one()
    }


def test_apply_to_monomial_number_operator():
    # (c^dag a) x^p keeps the exponent and multiplies by p
    num = NormalForm.ladder(1, 1)
    assert apply_to_monomial(num, 3).terms == {3: LambdaPoly.constant(3)}
    assert apply_to_monomial(num, 0).terms == {}
    assert MonomialImage({}).evaluate_at_one() == LambdaPoly.zero()


def test_difference_extract_reproduces_row():
    for k in range(5):
        assert difference_extract(2, 4, 2, k) == extract_stirling(
            degenerate_product(2, 4, 2), 2, 4, 2
        )[k]
    assert difference_extract(2, 4, 2, 3) == 8


def test_difference_extract_vanishes_past_ns():
    for k in range(5, 9):
        assert difference_extract(2, 4, 2, k) == LambdaPoly.zero()


def test_balanced_product_has_no_net_creation():
    nf = degenerate_product(3, 2, 2)
    assert all(i == j for i, j in nf.terms)
