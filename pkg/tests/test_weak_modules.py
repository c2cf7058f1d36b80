import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from m1plus import (JAY, OMEGA, VAC, DegenerateType, ModuleVector, NotWhittaker, Sector,
                    SectorError, WhittakerParams, WhittakerType, cmn_table,
                    commutator_expansion, exp_delta, j_eigenvalues, module_mode_action,
                    monomial, whittaker_type_of)
from m1plus.fock import FockVector, basis_upto, vacuum
from m1plus.vertex_ops import nth_product
from m1plus.weak_modules import eigenvalue

from oracles import brute_product, cmn_sympy, oj_double_sum

F = Fraction


def act(u, n, w):
    return module_mode_action(u, n, w)


# -- c_mn -----------------------------------------------------------------------


def test_cmn_examples():
    t = cmn_table(4)
    assert t[0, 0] == 0
    assert t[1, 0] == F(-1, 4)
    assert t[1, 1] == F(1, 16)
    assert (0, 1) in t and (3, 3) not in t


def test_cmn_against_sympy():
    ref = cmn_sympy(6)
    t = cmn_table(6)
    for key in t:
        assert t[key] == ref.get(key, 0), key


def test_cmn_symmetric_and_stable():
    small, big = cmn_table(4), cmn_table(8)
    for (m, n) in big:
        assert big[m, n] == big[n, m]
    for key in small:
        assert small[key] == big[key]
    assert all(m >= 1 and n >= 1 for m, n, _ in big.pairs())


def test_cmn_threaded_access():
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(4) as pool:
        tables = list(pool.map(cmn_table, [3, 7, 5, 9, 2, 6]))
    ref = cmn_table(9)
    for t in tables:
        for key in t:
            assert t[key] == ref[key]


# -- exp_delta ------------------------------------------------------------------


def test_exp_delta_examples():
    assert exp_delta(OMEGA) == {0: OMEGA, 2: F(1, 16) * VAC}
    assert exp_delta(VAC) == {0: VAC}
    assert exp_delta(monomial(1)) == {0: monomial(1)}
    ed = exp_delta(JAY)
    assert set(ed) == {0, 2, 4}
    assert ed[2] == F(3, 4) * monomial(1, 1)
    assert ed[4] == F(3, 128) * VAC


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_exp_delta_shape(seed):
    from m1plus.fock import random_element

    u = random_element(random.Random(seed), max_weight=5)
    ed = exp_delta(u)
    assert ed.get(0, FockVector({})) == u
    assert all(d == 0 or d >= 2 for d in ed)


def test_exp_delta_rejects_twisted():
    with pytest.raises(SectorError):
        exp_delta(monomial(F(1, 2)))


# -- module action ----------------------------------------------------------------

U02 = WhittakerParams.untwisted(0, 2)
T1 = WhittakerParams.twisted(1)


def test_untwisted_eigenvalues():
    u = U02.cyclic()
    assert act(OMEGA, 2, u).proportional_to_cyclic() == 0
    assert act(OMEGA, 3, u).proportional_to_cyclic() == 2
    for i in range(4, 9):
        assert not act(OMEGA, i, u)
    assert eigenvalue(JAY, 7, U02) == 16
    for i in range(8, 12):
        assert not act(JAY, i, u)


def test_twisted_eigenvalues():
    assert eigenvalue(OMEGA, 2, T1) == F(1, 2)
    assert eigenvalue(JAY, 5, T1) == 1
    assert eigenvalue(OMEGA, 1, WhittakerParams.twisted(0)) == F(1, 16)


def test_half_integer_mode_on_untwisted_module_is_zero():
    assert not act(monomial(1), F(1, 2), U02.cyclic())


def test_odd_element_on_twisted_module():
    # the field of h(-1)vac has modes h(n), n half-integral; h(1/2) u = zeta_{1/2} u
    w = T1.cyclic()
    assert act(monomial(1), F(1, 2), w).proportional_to_cyclic() == 1
    assert act(monomial(1), F(-1, 2), w).vector == monomial(F(1, 2))
    assert not act(monomial(1), F(3, 2), w)
    assert not act(monomial(1), 0, w)


def test_module_vectors():
    w = U02.vector("h(-1) u + 2*u")
    assert str(w) == "2*u + h(-1) u"
    assert (w - w).proportional_to_cyclic() == 0
    assert w.proportional_to_cyclic() is None
    with pytest.raises(SectorError):
        ModuleVector(vacuum(Sector.TWISTED), U02)
    with pytest.raises(ValueError):
        w + T1.cyclic()


@pytest.mark.parametrize("zeta", [(0, 2), (1, -1), (F(1, 2), 0, 3)])
def test_untwisted_action_against_brute_force(zeta):
    p = WhittakerParams.untwisted(*zeta)
    zmap = {k: F(z) for k, z in enumerate(zeta)}
    w = p.vector("h(-2) u + 3*h(-1)^2 u + u")
    for elem in (OMEGA, JAY, monomial(2, 1)):
        for n in range(-2, 10):
            assert act(elem, n, w).vector == brute_product(elem, n, w.vector, zmap)


def test_twisted_field_of_h_against_brute_force():
    # for a single h(-1) the exponential correction is trivial
    p = WhittakerParams.twisted(1, 2)
    zmap = {F(1, 2): 1, F(3, 2): 2}
    w = p.vector("h(-1/2) u + u")
    for n2 in range(-5, 6, 2):
        n = F(n2, 2)
        assert act(monomial(2), n, w).vector == brute_product(monomial(2), n, w.vector, zmap)


# -- commutator realization on modules --------------------------------------------------


def module_basis(params, max_weight):
    sector = params.sector
    out = []
    for mono in basis_upto(max_weight, sector):
        out.append(ModuleVector(FockVector({mono: 1}, sector), params))
    return out


@pytest.mark.parametrize("params", [U02, WhittakerParams.untwisted(1, 0, -1), T1,
                                    WhittakerParams.twisted(2, F(1, 3))])
def test_commutator_realized_on_module(params):
    rng = random.Random(7)
    elems = [OMEGA, JAY, monomial(1, 1), monomial(2, 2), monomial(3, 1)]
    vectors = module_basis(params, 2)
    for _ in range(6):
        u, v = rng.choice(elems), rng.choice(elems)
        i, j = rng.randint(-2, 6), rng.randint(-2, 6)
        exp = commutator_expansion(u, i, v, j)
        for w in vectors:
            lhs = act(u, i, act(v, j, w)) - act(v, j, act(u, i, w))
            rhs = 0 * w
            for c, elem, mode in exp:
                rhs = rhs + c * act(elem, mode, w)
            assert lhs.vector == rhs.vector, (str(u), i, str(v), j, str(w))


# -- Whittaker types ----------------------------------------------------------------


def test_type_examples():
    t = whittaker_type_of(U02)
    assert t.s == 3 and t.as_dict() == {2: 0, 3: 2}
    t = whittaker_type_of(T1)
    assert t.s == 2 and t.as_dict() == {2: F(1, 2)}


def test_type_errors():
    with pytest.raises(NotWhittaker):
        whittaker_type_of(WhittakerParams.untwisted(5))
    with pytest.raises(DegenerateType):
        whittaker_type_of(WhittakerParams.untwisted(1, 0))
    with pytest.raises(NotWhittaker):
        WhittakerType(1, (F(1),))
    with pytest.raises(DegenerateType):
        WhittakerType(3, (F(1), F(0)))
    with pytest.raises(ValueError):
        WhittakerType(3, (F(1),))


def nonzero_rationals():
    return st.fractions(min_value=-3, max_value=3, max_denominator=3).filter(bool)


@st.composite
def whittaker_params(draw, max_r=3):
    sector = draw(st.sampled_from([Sector.UNTWISTED, Sector.TWISTED]))
    r = draw(st.integers(1, max_r))
    size = r + 1 if sector is Sector.UNTWISTED else r
    body = draw(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3),
                         min_size=size - 1, max_size=size - 1))
    last = draw(nonzero_rationals())
    return WhittakerParams(sector, tuple(body) + (last,))


@settings(max_examples=20, deadline=None)
@given(whittaker_params())
def test_whittaker_conditions(params):
    t = whittaker_type_of(params)
    w = params.cyclic()
    for i in range(t.s + 1, t.s + 4):
        assert not act(OMEGA, i, w)
    for i in t.indices:
        assert eigenvalue(OMEGA, i, params) == t[i]
    for i in range(2 * t.s + 2, 2 * t.s + 5):
        assert not act(JAY, i, w)
    assert eigenvalue(JAY, 2 * t.s + 1, params) == 4 * t[t.s] ** 2


def test_annihilation_up_to_s7():
    cases = [WhittakerParams.untwisted(1, 2, -1, 1), WhittakerParams.twisted(1, 0, 2),
             WhittakerParams.untwisted(0, 0, 1), WhittakerParams.twisted(3, 1, 1)]
    for p in cases:
        t = whittaker_type_of(p)
        assert t.s <= 7
        w = p.cyclic()
        assert all(not act(OMEGA, i, w) for i in range(t.s + 1, t.s + 3))
        assert all(not act(JAY, i, w) for i in range(2 * t.s + 2, 2 * t.s + 4))
        assert eigenvalue(JAY, 2 * t.s + 1, p) == 4 * t[t.s] ** 2


def test_j_eigenvalues_examples():
    ev = j_eigenvalues(U02)
    assert ev[7] == 16
    assert all(ev[i] == 0 for i in range(8, 10))
    assert j_eigenvalues(T1)[5] == 1


@pytest.mark.parametrize("params", [U02, WhittakerParams.untwisted(1, -1, 2),
                                    WhittakerParams.untwisted(2, 0, 0, 1)])
def test_j_eigen_range_untwisted(params):
    r = params.r
    for i in range(3 * r + 3, 4 * r + 4):
        assert eigenvalue(JAY, i, params) is not None
    assert eigenvalue(JAY, 3 * r + 2, params) is None


@pytest.mark.parametrize("params", [T1, WhittakerParams.twisted(1, 2),
                                    WhittakerParams.twisted(-1, 0, 3)])
def test_j_eigen_range_twisted(params):
    r = params.r
    for i in range(3 * r + 2, 4 * r + 2):
        assert eigenvalue(JAY, i, params) is not None


# -- the omega_{-p1} J_{-p2} vac expansion -------------------------------------------------


@pytest.mark.parametrize("p1", [1, 2, 3])
@pytest.mark.parametrize("p2", [1, 2, 3])
def test_oj_expansion(p1, p2):
    u = nth_product(OMEGA, -p1, nth_product(JAY, -p2, VAC))
    for n in range(p1 + p2 + 4, p1 + p2 + 10):
        assert act(u, n, U02.cyclic()) == oj_double_sum(p1, p2, n, U02, act)
