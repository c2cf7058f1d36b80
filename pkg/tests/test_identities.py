from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from m1plus import (JAY, OMEGA, VAC, DegenerateInput, assemble_relation, central_charge,
                    generator, graded_dim, monomial, nth_product, theta,
                    verify_determinant_lemma, verify_jj_commutator, verify_lie_oj)
from m1plus.identities import (P10_TERMS, P9_TERMS, bareiss_det, determinant_closed_form,
                               determinant_matrix, evaluate_word, jj_expected, run_all,
                               verify_jj_operator)

from oracles import sympy_det

F = Fraction


def test_generators():
    assert generator("omega") == OMEGA == generator("o")
    assert generator("J") == JAY == generator("jay")
    assert generator("vac") == VAC
    with pytest.raises(KeyError):
        generator("x")


def test_generators_are_theta_even():
    assert theta(OMEGA) == OMEGA and theta(JAY) == JAY


def test_word_evaluation():
    # words apply right to left: o-1 J-1 vac = omega_{-1} J
    assert evaluate_word("J-1") == JAY
    assert evaluate_word("o-1") == OMEGA
    assert evaluate_word("o-1 J-1") == nth_product(OMEGA, -1, JAY)
    assert evaluate_word("o-1^2") == nth_product(OMEGA, -1, OMEGA)


@pytest.mark.parametrize("name, weight", [("P9", 9), ("P10", 10)])
def test_relations_vanish(name, weight):
    rep = assemble_relation(name)
    assert rep.passed, rep.summary()
    assert rep.computed == 0
    assert graded_dim(weight) == {9: 30, 10: 42}[weight]


@pytest.mark.parametrize("name, terms", [("P9", P9_TERMS), ("P10", P10_TERMS)])
def test_relation_terms_are_nontrivial(name, terms):
    # each term lives in weight 9 or 10; dropping any term breaks the relation
    from m1plus.identities import evaluate_combination

    for k in range(len(terms)):
        partial = evaluate_combination(terms[:k] + terms[k + 1:])
        assert partial != 0, (name, k)
        assert theta(partial) == partial


def test_assemble_unknown():
    with pytest.raises(KeyError):
        assemble_relation("P11")


def test_lie_oj():
    rep = verify_lie_oj(range(-1, 2), range(-1, 2), max_weight=4)
    assert rep.passed, rep.summary()
    assert rep.computed == nth_product(OMEGA, 0, JAY)


def test_lie_oj_specific_pair():
    from m1plus.identities import verify_lie_oj_operator

    ((label, res),) = verify_lie_oj_operator([2], [3], max_weight=6)
    assert not res, label


def test_jj_commutator():
    rep = verify_jj_commutator()
    assert rep.passed, rep.summary()
    assert len(rep.details) == 11


def test_jj_table_values():
    assert jj_expected(7) == 54 * VAC
    assert jj_expected(6) == 0
    assert jj_expected(5) == 432 * OMEGA
    for k in range(8, 11):
        assert jj_expected(k) == 0
    for k in range(0, 8):
        assert theta(jj_expected(k)) == jj_expected(k)


def test_jj_operator_small():
    rep = verify_jj_operator([(i, j) for i in range(0, 3) for j in range(-1, 2)], max_weight=3)
    assert rep.passed, rep.summary()


def test_report_detects_failure():
    from m1plus.identities import _report

    rep = _report("x", 0, VAC, [("ok", 0 * VAC), ("bad", monomial(1))])
    assert not rep.passed and not rep.pass_
    assert "FAIL" in rep.summary() and "failing=1" in rep.summary()


def test_central_charge():
    assert central_charge() == 1


# -- determinant -------------------------------------------------------------------


def test_determinant_example():
    # n = 1: 3x3 matrix of binomials in x = (2, 0), y = (3, 1)
    m = determinant_matrix(1, [2, 0], [3, 1])
    assert len(m) == 3
    assert bareiss_det(m) == 4 == determinant_closed_form(1, [2, 0], [3, 1])


def test_determinant_trivial():
    assert determinant_closed_form(0, [5], [7]) == 1
    assert bareiss_det(determinant_matrix(0, [5], [7])) == 1
    assert bareiss_det([]) == 1


def test_bareiss_handles_pivot_swaps():
    m = [[F(0), F(1), F(2)], [F(1), F(0), F(3)], [F(4), F(-3), F(8)]]
    assert bareiss_det(m) == sympy_det(m)


distinct = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4),
                    min_size=3, max_size=3, unique=True)


@settings(max_examples=20, deadline=None)
@given(distinct, distinct)
def test_determinant_against_sympy(x, y):
    m = determinant_matrix(2, x, y)
    assert len(m) == 6
    det = bareiss_det(m)
    assert det == sympy_det(m)
    assert det == determinant_closed_form(2, x, y)


@settings(max_examples=20, deadline=None)
@given(distinct, distinct, st.fractions(min_value=-3, max_value=3, max_denominator=3))
def test_determinant_translation_invariant(x, y, c):
    shifted = bareiss_det(determinant_matrix(2, [a + c for a in x], [b - c for b in y]))
    assert shifted == bareiss_det(determinant_matrix(2, x, y))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_determinant_degree(n):
    x = [F(1), F(-2), F(7, 3), F(0)][: n + 1]
    y = [F(5), F(1, 4), F(-3), F(2, 9)][: n + 1]
    t = F(3, 2)
    base = bareiss_det(determinant_matrix(n, x, y))
    scaled = bareiss_det(determinant_matrix(n, [t * a for a in x], [t * b for b in y]))
    assert scaled == base * t ** (n * (n + 1) * (n + 2) // 3)


def test_determinant_lemma_report():
    rep = verify_determinant_lemma(2, [F(1, 2), F(-3), F(5, 7)], [F(2), F(-1, 3), F(4)])
    assert rep.passed
    with pytest.raises(DegenerateInput):
        verify_determinant_lemma(1, [1, 1], [0, 2])
    with pytest.raises(ValueError):
        verify_determinant_lemma(2, [1, 2], [0, 2])


def test_run_all_subset():
    (rep,) = run_all("central_charge")
    assert rep.passed
    with pytest.raises(KeyError):
        run_all("nope")
