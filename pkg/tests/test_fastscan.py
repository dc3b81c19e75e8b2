"""Compiled scan kernels against their pure-Python twins.

Each kernel gets three kinds of coverage: a clean run on a small instance
where the pure evaluators already proved the answer, a deliberately
corrupted run that must report violations (the scans are not allowed to
pass vacuously), and an element-by-element cross-check of the enumeration
itself where that is feasible.
"""

import random
from itertools import combinations

import numpy as np
import pytest

from cartanlie import _fastscan as fs
from cartanlie import cartan_lie as cl
from cartanlie import cocycles as cc

H2 = cl.lie_algebra("H", 5, 2)
K3 = cl.lie_algebra("K", 5, 3)


def test_structure_table_covers_all_pairs_and_is_cached():
    tab = fs.structure_table(H2)
    assert tab.pairs_checked == 253
    assert tab.indptr.shape == (23 * 23 + 1,)
    assert fs.structure_table(cl.lie_algebra("H", 5, 2)) is tab
    # mirrored entries really are negatives
    dim, p = tab.dim, tab.p
    for i, j in ((0, 5), (3, 17), (10, 22)):
        fwd = {tab.targets[r]: tab.coeffs[r]
               for r in range(tab.indptr[i * dim + j], tab.indptr[i * dim + j + 1])}
        back = {tab.targets[r]: tab.coeffs[r]
                for r in range(tab.indptr[j * dim + i], tab.indptr[j * dim + i + 1])}
        assert back == {t: (-v) % p for t, v in fwd.items()}


def test_jacobi_scan_is_clean_on_the_small_algebras():
    first, bad, checked = fs.jacobi_violations(fs.structure_table(H2))
    assert (first, bad, checked) == (None, 0, 1771)
    first, bad, checked = fs.jacobi_violations(fs.structure_table(K3))
    assert (first, bad, checked) == (None, 0, 317750)
    H2p7 = cl.lie_algebra("H", 7, 2)
    first, bad, checked = fs.jacobi_violations(fs.structure_table(H2p7))
    assert (first, bad, checked) == (None, 0, 16215)


def test_jacobi_scan_detects_a_corrupted_table():
    tab = fs.structure_table(H2)
    bad_tab = fs.StructureTable(H2, tab.indptr, tab.targets,
                                tab.coeffs.copy(), tab.weight_codes,
                                tab.weight_digits, tab.pairs_checked)
    bad_tab.coeffs[0] = (bad_tab.coeffs[0] + 1) % 5
    first, bad, checked = fs.jacobi_violations(bad_tab)
    assert bad > 0 and first is not None


def _pure_closedness_count(cochain, corrupt):
    """Independent triple sweep used to pin the kernel's arithmetic."""
    model = cochain.model
    p = model.p
    values = {}
    for T in combinations(range(model.dim), 2):
        val = {}
        for w, c in cochain.value_on(T).items():
            mon = cochain.module.monomials[w]
            val[model.index[mon]] = c
        if corrupt == T:
            val[0] = (val.get(0, 0) + 1) % p
        if val:
            values[T] = val

    def value(a, b):
        if a == b:
            return {}
        if a < b:
            return values.get((a, b), {})
        return {t: (-c) % p for t, c in values.get((b, a), {}).items()}

    bad = 0
    first = None
    for T in combinations(range(model.dim), 3):
        acc = {}

        def add(vec, s):
            for t, c in vec.items():
                acc[t] = (acc.get(t, 0) + s * c) % p

        i, j, k = T
        for e, v in value(j, k).items():
            for t, c in model.bracket_coords(i, e):
                add({t: v * c}, 1)
        for e, v in value(i, k).items():
            for t, c in model.bracket_coords(j, e):
                add({t: v * c}, -1)
        for e, v in value(i, j).items():
            for t, c in model.bracket_coords(k, e):
                add({t: v * c}, 1)
        for e, v in model.bracket_coords(i, j):
            add({t: v * c for t, c in value(e, k).items()}, -1)
        for e, v in model.bracket_coords(i, k):
            add({t: v * c for t, c in value(e, j).items()}, 1)
        for e, v in model.bracket_coords(j, k):
            add({t: v * c for t, c in value(e, i).items()}, -1)
        if any(c % p for c in acc.values()):
            bad += 1
            if first is None:
                first = T
    return first, bad


def test_closedness_kernel_matches_a_pure_sweep_on_corrupted_input():
    corrupt = (2, 9)
    sq = cc.squaring(H2, (1, 0))
    got_first, got_bad, checked = fs.closedness_violations(sq, corrupt=corrupt)
    assert checked == 1771
    want_first, want_bad = _pure_closedness_count(cc.squaring(H2, (1, 0)), corrupt)
    assert got_bad == want_bad > 0
    assert got_first == want_first


def test_closedness_kernel_is_clean_where_pure_python_proved_it():
    for name in ("Sq:x1", "Sq:x2", "Phi"):
        res = fs.closedness_violations(cc.cochain_by_name(name, H2))
        assert res == (None, 0, 1771), name
    res = fs.closedness_violations(cc.squaring(K3, (0, 0, 0)))
    assert res == (None, 0, 317750)


def test_weight_compatible_restriction_guards_its_hypothesis():
    sq = cc.squaring(H2, (1, 0))
    first, bad, checked = fs.closedness_violations(sq, weight_compatible_only=True)
    assert (first, bad) == (None, 0)
    assert checked == 351  # one torus weight class out of five

    adj = cl.adjoint_module(H2)
    probe = cc.NamedCochain("probe", H2, adj, 2, lambda a, b: {a: 1})
    with pytest.raises(ValueError):
        fs.closedness_violations(probe, weight_compatible_only=True)
    first, bad, checked = fs.closedness_violations(probe)
    assert checked == 1771 and bad > 0


def test_xi_sum_classes_enumerate_the_reachable_totals():
    classes = fs.xi_sum_classes(6, 5)
    assert len(classes) == 6
    for q, r, V in classes:
        assert 0 <= q <= r < 3
        overshoot = [v - 4 for v in V]
        expect = [0] * 6
        for l in (q, q + 3, r, r + 3):
            expect[l] += 1
        assert overshoot == expect


def _slice_twin(model, xi_cochain, V, a_code):
    """Pure re-enumeration of one smallest-argument slice, evaluating d
    through the generic coboundary machinery."""
    p = 5
    digits = [tuple((code // p ** l) % p for l in range(6)) for code in range(p ** 6)]
    sigma_code = p ** 6 - 1
    a = digits[a_code]
    if any(x > v for x, v in zip(a, V)):
        return 0, 0
    d = cc.coboundary(xi_cochain)
    leaves = bad = 0
    for b_code in range(a_code + 1, p ** 6):
        b = digits[b_code]
        if any(x + y > v for x, y, v in zip(a, b, V)):
            continue
        R = tuple(v - x - y for v, x, y in zip(V, a, b))
        if sum(R) < 2:
            continue
        for c_code in range(b_code + 1, p ** 6):
            c = digits[c_code]
            if any(x > rv or rv - x > 4 for x, rv in zip(c, R)):
                continue
            dd = tuple(rv - x for rv, x in zip(R, c))
            d_code = sum(x * p ** l for l, x in enumerate(dd))
            if d_code <= c_code or d_code == sigma_code:
                continue
            leaves += 1
            T = tuple(sorted(model.index[e] for e in (a, b, c, dd)))
            if d.value_on(T):
                bad += 1
    return leaves, bad


def test_xi_quadruple_kernel_matches_the_pure_twin_on_slices():
    """Same leaves, same verdicts, on smallest-argument slices thin enough
    for the quadratic pure enumeration."""
    H6 = cl.lie_algebra("H", 5, 6)
    x = cc.xi(H6)
    q, r, V = fs.xi_sum_classes(6, 5)[1]

    for a_code in (3111, 3616, 3717, 3919):
        viol, leaves, first = fs.xi_quadruple_scan(5, V, q, r, a_code=a_code)
        assert leaves > 100, a_code
        twin_leaves, twin_bad = _slice_twin(H6, x, V, a_code)
        assert (leaves, viol) == (twin_leaves, twin_bad), a_code
        assert viol == 0


def test_xi_quadruple_kernel_is_not_vacuous():
    q, r, V = fs.xi_sum_classes(6, 5)[0]
    viol, leaves, first = fs.xi_quadruple_scan(5, V, q, r, a_code=7)
    flipped, leaves2, first2 = fs.xi_quadruple_scan(5, V, q, r, a_code=7,
                                                    negate01=True)
    assert viol == 0 and first is None
    assert leaves == leaves2 > 100000
    assert flipped > 0 and first2 is not None
