import random

import pytest
from hypothesis import given, settings, strategies as st

from cartanlie import cartan_lie as cl
from cartanlie import multiindex as mi
from cartanlie.fp_linalg import BudgetExceeded
from cartanlie.truncated_algebra import AlgebraElement, partial


K3 = cl.lie_algebra("K", 5, 3)
H2 = cl.lie_algebra("H", 5, 2)


def test_parameter_validation():
    with pytest.raises(ValueError):
        cl.lie_algebra("K", 5, 4)  # contact n must be odd
    with pytest.raises(ValueError):
        cl.lie_algebra("H", 5, 3)
    with pytest.raises(ValueError):
        cl.lie_algebra("K", 4, 3)  # not prime
    with pytest.raises(ValueError):
        cl.lie_algebra("K", 3, 3)  # too small
    with pytest.raises(ValueError):
        cl.lie_algebra("W", 5, 3)


def test_dimensions():
    assert K3.dim == 125  # p does not divide m+2, nothing omitted
    assert H2.dim == 23
    assert cl.lie_algebra("Hprime", 5, 2).dim == 24
    assert cl.lie_algebra("Kprime", 5, 3).dim == 125


def test_contact_dimension_with_omitted_top():
    # n=7: m=3, p=5 divides m+2, so the top monomial drops out
    K7 = cl.lie_algebra("K", 5, 7)
    assert K7.dim == 5 ** 7 - 1
    assert mi.tau(7, 5) not in K7.index


def test_bracket_examples():
    x1 = (1, 0, 0)
    x3 = (0, 0, 1)
    assert cl.bracket(K3, x3, x1).terms == {x1: 4}  # [x_n, x^a] = deg(a) x^a
    assert cl.bracket(K3, (1, 0, 1), (0, 0, 0)).terms == {x1: 3}
    assert cl.bracket(K3, (0, 0, 0), (1, 0, 1)).terms == {x1: 2}
    got = cl.bracket(H2, (2, 0), (0, 2))
    assert got.terms == {(1, 1): 4}
    # degree-(-1) pair whose pairing lands on a constant: zero in the quotient
    assert cl.bracket(H2, (1, 0), (0, 1)).is_zero()


def test_bracket_rejects_non_basis():
    with pytest.raises(ValueError):
        cl.bracket(H2, (0, 0), (1, 0))  # constants are not in H
    with pytest.raises(ValueError):
        cl.bracket(H2, (4, 4), (1, 0))  # the omitted top monomial
    with pytest.raises(ValueError):
        cl.bracket(K3, (5, 0, 0), (0, 0, 1))


def test_grading():
    assert cl.graded_degree(K3, (0, 0, 0)) == -2
    assert cl.graded_degree(K3, mi.tau(3, 5)) == 14
    assert cl.graded_degree(K3, (0, 0, 1)) == 0
    assert cl.graded_degree(H2, (1, 0)) == -1
    assert cl.degree_range(H2) == (-1, 5)
    assert cl.degree_range(K3) == (-2, 14)


def test_weights():
    assert cl.torus_weight(H2, (2, 0)) == (3,)
    assert cl.torus_weight(K3, (0, 0, 1)) == (0, 0)
    assert cl.torus_weight(K3, (0, 0, 0)) == (0, 3)  # deg -2 mod 5


def test_graded_component_dims():
    assert len(cl.graded_component(K3, 0)) == 4
    assert len(cl.graded_component(H2, 0)) == 3
    assert len(cl.graded_component(K3, -2)) == 1
    assert sum(len(cl.graded_component(H2, d)) for d in range(-1, 6)) == H2.dim


def test_cartan_decomposition():
    dec_k = cl.cartan_decomposition(K3)
    zero_k = (0, 0)
    assert len(dec_k[zero_k]) == 5
    assert all(len(v) == 5 for w, v in dec_k.items())
    assert sum(len(v) for v in dec_k.values()) == K3.dim

    dec_h = cl.cartan_decomposition(H2)
    assert len(dec_h[(0,)]) == 3
    assert all(len(v) == 5 for w, v in dec_h.items() if w != (0,))


def test_bracket_grades_and_weights_add():
    rng = random.Random(5)
    for model in (K3, H2):
        for _ in range(60):
            i, j = rng.randrange(model.dim), rng.randrange(model.dim)
            d = model.degrees[i] + model.degrees[j]
            w = tuple(
                (x + y) % model.p for x, y in zip(model.weights[i], model.weights[j])
            )
            for k, _v in model.bracket_coords(i, j):
                assert model.degrees[k] == d
                assert model.weights[k] == w


@settings(max_examples=150)
@given(st.data())
def test_jacobi_on_random_triples(data):
    """[[a,b],c] + [[b,c],a] + [[c,a],b] = 0."""
    model = data.draw(st.sampled_from((K3, H2)))
    i = data.draw(st.integers(0, model.dim - 1))
    j = data.draw(st.integers(0, model.dim - 1))
    k = data.draw(st.integers(0, model.dim - 1))
    a, b, c = model.basis[i], model.basis[j], model.basis[k]
    total = (
        cl.bracket_poly(model, cl.bracket(model, a, b), AlgebraElement.monomial(model.p, model.n, c))
        + cl.bracket_poly(model, cl.bracket(model, b, c), AlgebraElement.monomial(model.p, model.n, a))
        + cl.bracket_poly(model, cl.bracket(model, c, a), AlgebraElement.monomial(model.p, model.n, b))
    )
    assert total.is_zero()


def test_antisymmetry_via_table():
    table = H2.pair_table()
    for i in range(H2.dim):
        for j in range(H2.dim):
            lhs = dict(H2.bracket_coords(i, j))
            rhs = {k: (H2.p - v) % H2.p for k, v in H2.bracket_coords(j, i)}
            assert lhs == rhs
    assert (0, 0) not in table  # diagonal is empty


def test_pair_table_budget():
    K7 = cl.lie_algebra("K", 5, 7)
    with pytest.raises(BudgetExceeded):
        K7.pair_table()
    # the lazy bracket still answers: [x_n, x_1] = -x_1
    xn = mi.unit(6, 7)
    x1 = mi.unit(0, 7)
    assert cl.bracket(K7, xn, x1).terms == {x1: 4}


def test_commutator_span_spot():
    got = cl.commutator_span(K3, 1, 0)
    assert got["dim"] == got["component_dim"]
    got = cl.commutator_span(H2, 1, -1)
    assert got["dim"] == got["component_dim"] == len(cl.graded_component(H2, 0))


def test_full_commutator():
    assert cl.full_commutator_dim(H2) == H2.dim  # H(2) is perfect
    assert cl.full_commutator_dim(cl.lie_algebra("Hprime", 5, 2)) == 23  # misses x^sigma


def test_nonneg_part():
    H2p = cl.nonneg_part(H2)
    assert H2p.dim == 21
    assert min(H2p.degrees) == 0
    K3p = cl.nonneg_part(K3)
    assert all(d >= 0 for d in K3p.degrees)
    # closed under the bracket: every structure constant stays inside
    table = H2p.pair_table()
    assert all(0 <= k < H2p.dim for hits in table.values() for k, _ in hits)


def test_structure_constants_export():
    data = cl.structure_constants_json(H2)
    assert data["schema"] == 1 and data["dim"] == 23
    assert len(data["basis"]) == 23
    rows = list(cl.structure_constants_entries(H2))
    assert all(v % 5 for *_ijk, v in rows)
    i, j, k, v = rows[0]
    assert dict(H2.bracket_coords(i, j))[k] == v


# -- coefficient modules -------------------------------------------------


def test_module_dims_and_examples():
    adj = cl.adjoint_module(H2)
    amb = cl.ambient_module(H2)
    fun = cl.functions_module(H2)
    assert (adj.dim, amb.dim, fun.dim) == (23, 24, 25)

    # x_1^2 acting on x_2^2 in the functions module: 4*x1*x2
    i = H2.index[(2, 0)]
    w = fun.index[mi.flat_index((0, 2), 5)]
    assert dict(fun.act_on_basis(i, w)) == {fun.index[mi.flat_index((1, 1), 5)]: 4}

    triv = cl.trivial_module(H2)
    assert cl.module_action(triv, (2, 0), {0: 1}) == {}

    top = cl.span_top_module(H2)
    assert top.degrees == [6]


def test_character_module():
    K3p = cl.nonneg_part(K3)
    chi = cl.character_module(K3p)
    assert cl.module_action(chi, (0, 0, 1), {0: 1}) == {0: 3}  # x_n acts by -2
    assert cl.module_action(chi, (1, 0, 1), {0: 1}) == {}
    with pytest.raises(ValueError):
        cl.character_module(K3)  # needs the non-negative part
    with pytest.raises(ValueError):
        cl.character_module(cl.nonneg_part(H2))
    # x_n never lies in the derived subalgebra of the non-negative part,
    # otherwise scaling by the character would not be a Lie action
    xn_pos = K3p.index[(0, 0, 1)]
    for (i, j), hits in K3p.pair_table().items():
        assert xn_pos not in [k for k, _ in hits]


def test_functions_module_rejects_contact():
    with pytest.raises(ValueError):
        cl.functions_module(K3)


def test_module_name_lookup():
    assert cl.module_by_name("adjoint", H2).kind == "adjoint"
    with pytest.raises(ValueError):
        cl.module_by_name("nope", H2)


@settings(max_examples=60)
@given(st.data())
def test_module_representation_law(data):
    """rho([x,y]) = rho(x)rho(y) - rho(y)rho(x) on basis pairs."""
    which = data.draw(st.sampled_from(("adjoint", "ambient", "functions", "trivial", "character")))
    if which == "character":
        model = cl.nonneg_part(K3)
        module = cl.character_module(model)
    elif which == "functions":
        model = H2
        module = cl.functions_module(model)
    else:
        model = data.draw(st.sampled_from((K3, H2)))
        module = cl.module_by_name(which, model)
    i = data.draw(st.integers(0, model.dim - 1))
    j = data.draw(st.integers(0, model.dim - 1))
    w = data.draw(st.integers(0, module.dim - 1))
    vec = {w: 1}
    p = model.p
    lhs = {}
    for k, v in model.bracket_coords(i, j):
        for w2, c in module.act_on_basis(k, w):
            acc = (lhs.get(w2, 0) + v * c) % p
            if acc:
                lhs[w2] = acc
            elif w2 in lhs:
                del lhs[w2]
    rhs = module.act(i, module.act(j, vec))
    for w2, c in module.act(j, module.act(i, vec)).items():
        acc = (rhs.get(w2, 0) - c) % p
        if acc:
            rhs[w2] = acc
        elif w2 in rhs:
            del rhs[w2]
    assert lhs == rhs


def test_contact_depth_action_closed_form():
    """ad(x_i) on the ambient space is sign(i) D_{i'} + x_i D_n for the
    depth-one contact generators; the bracket-derived action must agree."""
    Kp = cl.lie_algebra("Kprime", 5, 3)
    amb = cl.ambient_module(K3)
    for i in (0, 1):
        xi = mi.unit(i, 3)
        ic = 1 - i
        sign = 1 if i == 0 else -1
        for w, b in enumerate(Kp.basis):
            got = dict(amb.act_on_basis(K3.index[xi], w))
            f = AlgebraElement.monomial(5, 3, b)
            expect = partial(f, ic).scale(sign) + AlgebraElement.monomial(5, 3, xi) * partial(f, 2)
            want = {Kp.index[e]: c for e, c in expect.terms.items()}
            assert got == want
