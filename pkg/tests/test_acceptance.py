"""Acceptance gate: one test and one printed line per criterion.

Every assertion here is exact; no tolerances anywhere.  Expected values are
either frozen small numbers checked into the unit suites or closed-form
counts computed independently inside verification_suite.  The slow entries
(the quadruple sweep, the p = 7 brute force, the contact block run) are the
point of the gate and are not skipped.

Run with -s to watch the lines appear; pytest -v mirrors them as test names.
"""

import random

from cartanlie import cartan_lie as cl
from cartanlie import cohomology as co
from cartanlie import verification_suite as vs
from cartanlie.fp_linalg import SparseMatrixFp, kernel_basis, rank

from _dense_oracle import dense_rank

INSTANCES = (("K", 5, 3), ("H", 5, 2), ("H", 7, 2))


def _line(num, desc, ok):
    print("criterion %d %s  %s" % (num, "PASS" if ok else "FAIL", desc),
          flush=True)
    assert ok, "criterion %d failed: %s" % (num, desc)


def _passes(*checks):
    return all(c.status == "pass" for c in checks)


def test_c1_liealgebra_axioms_hold_exhaustively():
    ok = True
    for family, p, n in INSTANCES:
        chk = vs.verify_structure(family, p, n)
        ok = ok and chk.status == "pass"

        model = cl.lie_algebra(family, p, n)
        # Antisymmetry on every ordered pair, diagonal included.
        for i, a in enumerate(model.basis):
            for b in model.basis[i:]:
                s = dict(cl.bracket(model, a, b).terms)
                for t, v in cl.bracket(model, b, a).terms.items():
                    s[t] = (s.get(t, 0) + v) % p
                ok = ok and not any(v % p for v in s.values())

        # Degree and weight additivity plus closure on every table entry.
        for i, j, k, v in cl.structure_constants_entries(model):
            ok = ok and 0 <= k < model.dim and 0 < v < p
            ok = ok and model.degrees[k] == model.degrees[i] + model.degrees[j]
            want = tuple((x + y) % p
                         for x, y in zip(model.weights[i], model.weights[j]))
            ok = ok and model.weights[k] == want
    _line(1, "bracket axioms, grading, closure on K(3), H(2) p=5, H(2) p=7",
          ok)


def test_c2_dimensions_and_cartan_data():
    checks = [
        vs.verify_dimension("K", 5, 3, 125),
        vs.verify_dimension("H", 5, 2, 23),
        vs.verify_dimension("K", 5, 7, 5 ** 7 - 1),
        vs.verify_cartan_blocks("K", 5, 3, 5, 5),
        vs.verify_cartan_blocks("H", 5, 2, 3, 5),
    ]
    _line(2, "basis counts incl. K(7), Cartan blocks, root space dims",
          _passes(*checks))


def test_c3_graded_generation_and_perfectness():
    checks = [vs.verify_graded_generation(f, p, n) for f, p, n in INSTANCES]
    checks.append(vs.verify_perfectness("K", 5, 3))
    _line(3, "degree-one generation at all degrees; K(3) is perfect",
          _passes(*checks))


def test_c4_cocycle_closedness_sweeps():
    checks = []
    for nm in ("Sq:x1", "Sq:x2", "Sq:x3", "Sq:1"):
        checks.append(vs.verify_cocycle_closed(nm, "K", 5, 3))
    for nm in ("Sq:x1", "Sq:x2", "Phi", "PiC:1"):
        checks.append(vs.verify_cocycle_closed(nm, "H", 5, 2))
    for nm in ("Sq:x1", "Sq:x2", "Sq:x3", "Sq:x4", "Pi:1,2", "Pi:1,4",
               "Pi:2,3", "Pi:3,4", "Pi:1", "Pi:2", "Phi"):
        checks.append(vs.verify_cocycle_closed(nm, "H", 5, 4,
                                               restricted=True))
    checks.append(vs.verify_pi_decomposition(5, 4))
    checks.append(vs.verify_phi_top_projection(5, 2))
    checks.append(vs.verify_phi_top_projection(5, 4))
    checks.append(vs.verify_delta_dichotomy(5))
    checks.append(vs.verify_cocycle_closed("Gamma:1,2", "H", 5, 4))
    checks.append(vs.verify_cocycle_closed("Xi", "H", 5, 6))
    _line(4, "closedness/decomposition sweeps incl. the n=6 quadruple scan",
          _passes(*checks))


def test_c5_second_cohomology_theorems():
    checks = [
        vs.verify_theorem_H(5, 2),
        vs.verify_theorem_H(7, 2),
        vs.verify_theorem_K(5, 3),
    ]
    stretch = vs.verify_theorem_H(5, 4, include_stretch=False)
    print("criterion 5 SKIP  n=4 stretch entry: %s (%s)"
          % (stretch.status, stretch.note), flush=True)
    assert stretch.status.startswith("skipped")
    _line(5, "dim H^2 = 3 with generators: H p=5, H p=7 brute, K blocked",
          _passes(*checks))


def test_c6_auxiliary_cohomology():
    checks = vs.verify_auxiliary_cohomology(5)
    assert len(checks) == 5
    _line(6, "trivial/function coefficients, subalgebra split, H^1 = 0",
          _passes(*checks))


def test_c7_filter_soundness():
    checks = vs.verify_reduction_soundness(5)
    assert len(checks) == 2
    _line(7, "weight-zero filter and degree blocks agree with raw runs",
          _passes(*checks))


def test_c8_linear_algebra_oracle_and_determinism():
    rng = random.Random(20260814)
    ok = True
    for trial in range(200):
        p = (5, 7, 101)[trial % 3]
        rows = rng.randrange(1, 301)
        cols = rng.randrange(1, 301)
        density = rng.choice((0.005, 0.02, 0.05))
        ents = []
        for r in range(rows):
            for c in range(cols):
                if rng.random() < density:
                    ents.append((r, c, rng.randrange(1, p)))
        M = SparseMatrixFp(rows, cols, p, ents)
        r_sparse = rank(M)
        ok = ok and r_sparse == dense_rank(M.to_dense(), p)
        if trial % 10 == 0:
            ker = kernel_basis(M)
            ok = ok and len(ker) == cols - r_sparse
            ok = ok and all(M.apply(v) == {} for v in ker)

    model = cl.lie_algebra("H", 5, 2)
    adj = cl.adjoint_module(model)
    runs = []
    for threads in (1, 3):
        rep = co.cohomology_dim(model, adj, 2, weight_zero=True,
                                threads=threads)
        rep.elapsed_ms = 0
        runs.append(rep.to_json())
    ok = ok and runs[0] == runs[1]
    _line(8, "200 random matrices vs dense oracle; thread-count determinism",
          ok)
