"""End-to-end verification ledger over the implemented families.

Every check states its expected value up front, recomputes the actual value
through the public machinery, and records exact equality; arithmetic is over
F_p throughout, so there are no tolerances anywhere.  Checks that would blow
the memory budget degrade to a "skipped: out of budget" entry carrying the
measured estimate instead of silently thinning the claim.

Provenance vocabulary, recorded per check:
  published  the expected value is the one the implemented theory states
  derived    the expected value was pinned by an independent computation
             in this repository (see the test suite for the oracles)
  direct     an exhaustive finite identity; the only sane expectation is
             zero violations
  reported   no trusted expectation exists; the computed value is recorded
             and never gates anything

Status is "pass"/"fail" for gating checks, "reported" for reports, or
"skipped: <reason>".  `all_passing` ignores everything but "fail".
"""

import time
from dataclasses import dataclass
from itertools import combinations

from . import _fastscan as fs
from . import cartan_lie as cl
from . import cocycles as cc
from . import cohomology as co
from . import multiindex as mi
from .fp_linalg import BudgetExceeded, memory_budget

PUBLISHED = "published"
DERIVED = "derived"
DIRECT = "direct"
REPORTED = "reported"

# pure-Python triple sweeps are only reasonable up to this many basis elements
_PURE_SWEEP_DIM_LIMIT = 60


@dataclass
class TheoremCheck:
    ident: str
    statement: str
    expected: object
    computed: object
    provenance: str
    status: str
    elapsed_ms: int = 0
    note: str = ""

    @property
    def gating(self):
        return self.status in ("pass", "fail")

    def to_json(self, timing=False):
        out = {
            "id": self.ident,
            "statement": self.statement,
            "expected": _plain(self.expected),
            "computed": _plain(self.computed),
            "provenance": self.provenance,
            "status": self.status,
        }
        if self.note:
            out["note"] = self.note
        if timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out


def _plain(value):
    if isinstance(value, tuple):
        return [_plain(v) for v in value]
    return value


def _check(ident, statement, expected, computed, provenance, t0, note=""):
    status = "pass" if computed == expected else "fail"
    return TheoremCheck(ident, statement, expected, computed, provenance,
                        status, int((time.monotonic() - t0) * 1000), note)


def _report(ident, statement, expected, computed, t0, note=""):
    return TheoremCheck(ident, statement, expected, computed, REPORTED,
                        "reported", int((time.monotonic() - t0) * 1000), note)


def _skip(ident, statement, reason, t0, note=""):
    return TheoremCheck(ident, statement, None, None, DIRECT,
                        "skipped: %s" % reason,
                        int((time.monotonic() - t0) * 1000), note)


# -- structure ----------------------------------------------------------


def verify_structure(family, p, n):
    """Antisymmetry, grading/weight additivity and closure on all pairs
    (raised, not counted, if violated), plus Jacobi on all basis triples."""
    t0 = time.monotonic()
    model = cl.lie_algebra(family, p, n)
    table = fs.structure_table(model)
    first, bad, checked = fs.jacobi_violations(table)
    note = "%d ordered pairs, %d triples" % (table.pairs_checked, checked)
    if first is not None:
        note += "; first violation at %r" % (first,)
    return _check("01-structure@%s,p=%d,n=%d" % (family, p, n),
                  "bracket table is antisymmetric, additive and Jacobi-closed",
                  0, int(bad), DIRECT, t0, note)


# -- dimensions and Cartan data -----------------------------------------


def verify_dimension(family, p, n, want):
    t0 = time.monotonic()
    model = cl.lie_algebra(family, p, n)
    return _check("02-dimension@%s,p=%d,n=%d" % (family, p, n),
                  "basis count of the simple algebra",
                  want, model.dim, PUBLISHED, t0)


def verify_cartan_blocks(family, p, n, zero_dim, nonzero_dim):
    """The zero-weight block is the Cartan subalgebra; every other weight
    class is a root space and they all share one dimension."""
    t0 = time.monotonic()
    model = cl.lie_algebra(family, p, n)
    dec = cl.cartan_decomposition(model)
    zero = (0,) * len(next(iter(dec)))
    others = sorted({len(v) for w, v in dec.items() if w != zero})
    return _check("03-cartan-blocks@%s,p=%d,n=%d" % (family, p, n),
                  "Cartan block and root space dimensions",
                  (zero_dim, [nonzero_dim]), (len(dec[zero]), others),
                  PUBLISHED, t0,
                  note="%d weight classes" % len(dec))


# -- graded generation --------------------------------------------------


def verify_graded_generation(family, p, n):
    """[g_1, g_d] = g_{d+1} for every degree d up to the top."""
    t0 = time.monotonic()
    model = cl.lie_algebra(family, p, n)
    lo, hi = cl.degree_range(model)
    short = []
    for d in range(lo, hi):
        res = cl.commutator_span(model, 1, d)
        if res["dim"] != res["component_dim"]:
            short.append(d)
    return _check("04-graded-generation@%s,p=%d,n=%d" % (family, p, n),
                  "degree-one part generates each next graded piece",
                  [], short, PUBLISHED, t0,
                  note="d from %d to %d" % (lo, hi - 1))


def verify_perfectness(family, p, n):
    t0 = time.monotonic()
    model = cl.lie_algebra(family, p, n)
    return _check("04-perfectness@%s,p=%d,n=%d" % (family, p, n),
                  "the algebra equals its own derived subalgebra",
                  model.dim, cl.full_commutator_dim(model), PUBLISHED, t0)


def verify_lemmas(family, p, n):
    """Dimension, Cartan-block, graded-generation (and, for the contact
    family, perfectness) claims for one model, expectations from the
    closed-form counts."""
    m = (n - 1) // 2 if family == "K" else n // 2
    if family == "K":
        dim = p ** n - (1 if (m + 2) % p == 0 else 0)
        zero_dim = p ** m
    else:
        dim = p ** n - 2
        zero_dim = p ** m - 2
    checks = [
        verify_dimension(family, p, n, dim),
        verify_cartan_blocks(family, p, n, zero_dim, p ** m),
        verify_graded_generation(family, p, n),
    ]
    if family == "K":
        checks.append(verify_perfectness(family, p, n))
    return checks


# -- cocycle checks -----------------------------------------------------


def _pure_closedness(cochain):
    model = cochain.model
    if model.dim > _PURE_SWEEP_DIM_LIMIT:
        raise BudgetExceeded(
            "pure triple sweep over dim %d; the compiled scan needs "
            "adjoint-type values" % model.dim)
    d = cc.coboundary(cochain)
    first = None
    bad = checked = 0
    for T in combinations(range(model.dim), 3):
        checked += 1
        if d.value_on(T):
            bad += 1
            if first is None:
                first = T
    return first, bad, checked


def verify_cocycle_closed(name, family, p, n, restricted=False):
    """d(cochain) = 0 over basis triples; exhaustive unless restricted,
    then exhaustive over the weight-compatible triples."""
    t0 = time.monotonic()
    ident = "05-cocycle-closed@%s,%s,p=%d,n=%d" % (name, family, p, n)
    statement = "d %s vanishes on the swept triples" % name
    model = cl.lie_algebra(family, p, n)
    cochain = cc.cochain_by_name(name, model)
    if cochain.arity != 2:
        return _verify_three_cocycle(ident, statement, cochain, t0)
    try:
        if cochain.module.kind == "adjoint":
            first, bad, checked = fs.closedness_violations(
                cochain, weight_compatible_only=restricted)
        else:
            first, bad, checked = _pure_closedness(cochain)
    except BudgetExceeded as exc:
        return _skip(ident, statement, "out of budget", t0, note=str(exc))
    note = "%d triples" % checked
    if restricted:
        note += ", weight-compatible only"
    if first is not None:
        note += "; first violation at %r" % (first,)
    return _check(ident, statement, 0, int(bad), DIRECT, t0, note)


def _verify_three_cocycle(ident, statement, cochain, t0):
    """Quadruple sweep for the arity-3 entries, over every exponent total
    where any term of d can be nonzero."""
    model = cochain.model
    name = cochain.name
    if name == "Xi":
        bad = leaves = 0
        for q, r, V in fs.xi_sum_classes(model.n, model.p):
            viol, count, _first = fs.xi_quadruple_scan(model.p, V, q, r)
            bad += viol
            leaves += count
        return _check(ident, statement, 0, int(bad), DIRECT, t0,
                      note="%d quadruples over 6 exponent totals" % leaves)
    if name.startswith("Gamma"):
        quads = _gamma_quadruples(model, cochain)
        d = cc.coboundary(cochain)
        bad = sum(1 for T in quads if d.value_on(T))
        return _check(ident, statement, 0, bad, DIRECT, t0,
                      note="%d quadruples over %d exponent totals"
                           % (len(quads), model.m))
    raise ValueError("no closedness sweep is wired up for %s" % name)


def _gamma_quadruples(model, cochain):
    """All sorted basis quadruples whose exponent total can support a term
    of d(Gamma): the support total plus one conjugate variable pair."""
    n, m, p = model.n, model.m, model.p
    support = cochain.support_total
    quads = []
    for l in range(m):
        V = list(support)
        V[l] += 1
        V[l + m] += 1
        quads.extend(_quadruples_with_total(model, V))
    return quads


def _quadruples_with_total(model, V):
    cands = [a for a in model.basis if all(x <= v for x, v in zip(a, V))]
    out = []
    N = len(cands)
    index = model.index
    for r in range(N):
        a = cands[r]
        for s in range(r + 1, N):
            ab = tuple(x + y for x, y in zip(a, cands[s]))
            if any(x > v for x, v in zip(ab, V)):
                continue
            for t in range(s + 1, N):
                abc = tuple(x + y for x, y in zip(ab, cands[t]))
                if any(x > v for x, v in zip(abc, V)):
                    continue
                d = tuple(v - x for v, x in zip(V, abc))
                if d not in index:
                    continue
                pos = (index[a], index[cands[s]], index[cands[t]], index[d])
                if pos[3] > pos[2]:
                    out.append(pos)
    return out


def verify_pi_decomposition(p=5, n=4):
    """Pi:<i> agrees with PiC:<i> + d g_i on every ordered basis pair."""
    t0 = time.monotonic()
    model = cl.lie_algebra("H", p, n)
    amb = cl.ambient_module(model)
    bad = []
    pairs = 0
    for i in range(1, model.m + 1):
        single = cc.pi_single(model, i, module=amb)
        conj = cc.pi_conjugate(model, i, module=amb)
        dg = cc.coboundary(cc.coboundary_partner(model, i, module=amb))
        for T in combinations(range(model.dim), 2):
            pairs += 1
            want = dict(conj.value_on(T))
            for w, v in dg.value_on(T).items():
                s = (want.get(w, 0) + v) % p
                if s:
                    want[w] = s
                else:
                    want.pop(w, None)
            if single.value_on(T) != want:
                bad.append((i, T))
    return _check("05-pi-decomposition@H,p=%d,n=%d" % (p, n),
                  "one-index Pi differs from its conjugate-pair form by an "
                  "explicit coboundary",
                  [], bad[:3], DIRECT, t0, note="%d pair evaluations" % pairs)


def verify_phi_top_projection(p, n):
    """The ambient-valued Phi never touches the top monomial, so dropping
    to the simple quotient loses nothing."""
    t0 = time.monotonic()
    model = cl.lie_algebra("H", p, n)
    amb = cl.ambient_module(model)
    phi = cc.phi(model, module=amb)
    top = amb.dim - 1
    assert amb.monomials[top] == mi.tau(n, p)
    bad = checked = 0
    want = sum(mi.tau(n, p)) + 6
    for a, b in combinations(range(model.dim), 2):
        if sum(model.basis[a]) + sum(model.basis[b]) != want:
            continue
        checked += 1
        if phi.value_on((a, b)).get(top, 0):
            bad += 1
    return _check("05-phi-top-projection@H,p=%d,n=%d" % (p, n),
                  "Phi has no component on the top monomial",
                  0, bad, DIRECT, t0,
                  note="pairs reaching the top degree: %d" % checked)


def verify_phi_transcription(p=5, n=2):
    """Exactly one of the two candidate Phi transcriptions is alternating
    and closed; the constructor must pick that one."""
    t0 = time.monotonic()
    model = cl.lie_algebra("H", p, n)
    sel = cc.select_phi_variant(model)
    computed = (sel["selected"],
                sel["plain"]["antisymmetric"], sel["plain"]["closed"],
                sel["conjugated"]["antisymmetric"])
    return _check("05-phi-transcription@H,p=%d,n=%d" % (p, n),
                  "variant selection is unambiguous",
                  ("plain", True, True, False), computed, DERIVED, t0,
                  note="selected variant validated on every pair and triple")


def verify_delta_dichotomy(p=5):
    """The degree-reading rule on top-sum pairs alternates exactly in the
    n = -4 congruence: alternating at n=6, not at n=2."""
    t0 = time.monotonic()
    results = {}
    for n in (6, 2):
        model = cl.lie_algebra("H", p, n)
        delta = cc.delta_top(model)
        sig = mi.tau(n, p)
        ok = True
        for a in model.basis:
            b = tuple(s - x for s, x in zip(sig, a))
            if b not in model.index:
                continue
            va = delta.raw(a, b).get(0, 0)
            vb = delta.raw(b, a).get(0, 0)
            if (va + vb) % p:
                ok = False
                break
        results[n] = ok
    return _check("05-delta-dichotomy@H,p=%d" % p,
                  "alternation of the top-degree pairing by congruence class",
                  (True, False), (results[6], results[2]), DERIVED, t0,
                  note="all top-sum pairs at n=6; witness search at n=2")


# -- second cohomology --------------------------------------------------


def verify_theorem_H(p, n, include_stretch=False, threads=1):
    """dim H^2 with adjoint coefficients, plus generator verification.

    n=2 runs the raw complex with no filters: 5.8e3 coordinates at p=5.
    n=4 is the stretch entry and only runs inside the memory budget.
    """
    t0 = time.monotonic()
    ident = "06-adjoint-h2@H,p=%d,n=%d" % (p, n)
    statement = "second adjoint cohomology dimension and generators"
    model = cl.lie_algebra("H", p, n)
    adj = cl.adjoint_module(model)
    if n == 2:
        rep = co.cohomology_dim(model, adj, 2)
        space = co.CochainSpace(model, adj, 2)
        gens = [co.vectorize(space, cc.cochain_by_name(nm, model))
                for nm in ("Sq:x1", "Sq:x2", "Phi")]
        ok = all(co.is_cocycle(space, g) == (True, None) for g in gens)
        ok = ok and not any(co.is_coboundary(space, g)[0] for g in gens)
        ok = ok and co.classes_independent(space, gens)
        return _check(ident, statement, (3, True), (rep.dim_h, ok),
                      PUBLISHED, t0,
                      note="unfiltered complex, %d coordinates; generators "
                           "Sq:x1 Sq:x2 Phi" % rep.dim_c)
    if n == 4:
        if not include_stretch:
            return _skip(ident, statement, "out of budget", t0,
                         note=_stretch_estimate_note(model, adj))
        try:
            rep = co.cohomology_dim(model, adj, 2, weight_zero=True,
                                    representatives=False, threads=threads)
        except BudgetExceeded as exc:
            return _skip(ident, statement, "out of budget", t0, note=str(exc))
        return _check(ident, statement, 11, rep.dim_h, PUBLISHED, t0,
                      note="weight-zero degree blocks")
    raise ValueError("no expected value is wired up for n=%d" % n)


def _stretch_estimate_note(model, module):
    cols = co._estimate_coords(model, module, 2, True)
    # the same sampled-density bound the unfiltered preflight uses
    hits = samples = 0
    for z in range(0, model.dim, max(1, model.dim // 8)):
        for w in range(0, module.dim, max(1, module.dim // 5)):
            hits += len(module.act_on_basis(z, w))
            samples += 1
    per_col = (model.dim - 2) * (hits / samples)
    need = int(cols * per_col) * 64
    return ("~%d weight-zero coordinates, ~%d MiB differential vs %d MiB "
            "budget; rerun with the stretch flag and a raised budget"
            % (cols, need >> 20, memory_budget() >> 20))


def verify_theorem_K(p, n, threads=1):
    """dim H^2 for the contact family through weight-zero degree blocks,
    with the generators pinned to their blocks."""
    t0 = time.monotonic()
    model = cl.lie_algebra("K", p, n)
    adj = cl.adjoint_module(model)
    rep = co.cohomology_dim(model, adj, 2, weight_zero=True, threads=threads)

    low = co.CochainSpace(model, adj, 2, weight_zero=True, degree=-p)
    pair = [co.vectorize(low, cc.squaring(model, mi.unit(i, n)))
            for i in range(n - 1)]
    ok = all(co.is_cocycle(low, g) == (True, None) for g in pair)
    ok = ok and not any(co.is_coboundary(low, g)[0] for g in pair)
    ok = ok and co.classes_independent(low, pair)

    deep = co.CochainSpace(model, adj, 2, weight_zero=True, degree=-2 * p)
    one = co.vectorize(deep, cc.squaring(model, mi.zero(n)))
    ok = ok and co.is_cocycle(deep, one) == (True, None)
    ok = ok and not co.is_coboundary(deep, one)[0]

    return _check("06-adjoint-h2@K,p=%d,n=%d" % (p, n),
                  "second adjoint cohomology dimension and generators",
                  (n, True), (rep.dim_h, ok), PUBLISHED, t0,
                  note="weight-zero degree blocks; generators Sq:x1 Sq:x2 "
                       "at degree %d, Sq:1 at degree %d" % (-p, -2 * p))


# -- auxiliary cohomology -----------------------------------------------


def verify_auxiliary_cohomology(p=5):
    """Trivial/functions/subalgebra coefficients at n=2, plus the split of
    the functions-valued answer into its two independent halves."""
    checks = []
    H2 = cl.lie_algebra("H", p, 2)
    K3 = cl.lie_algebra("K", p, 3)

    t0 = time.monotonic()
    triv = co.cohomology_dim(H2, cl.trivial_module(H2), 2)
    checks.append(_check("07-trivial-h2@H,p=%d,n=2" % p,
                         "second cohomology with trivial coefficients",
                         3, triv.dim_h, PUBLISHED, t0))

    t0 = time.monotonic()
    funcs = co.cohomology_dim(H2, cl.functions_module(H2), 2)
    checks.append(_check("07-functions-h2@H,p=%d,n=2" % p,
                         "second cohomology valued in the ambient functions",
                         6, funcs.dim_h, PUBLISHED, t0))

    t0 = time.monotonic()
    nn = cl.nonneg_part(H2)
    nonneg = co.cohomology_dim(nn, cl.trivial_module(nn), 2)
    checks.append(_check("07-nonneg-trivial-h2@H,p=%d,n=2" % p,
                         "second cohomology of the nonnegative subalgebra",
                         5, nonneg.dim_h, PUBLISHED, t0))

    t0 = time.monotonic()
    checks.append(_check("07-functions-split@H,p=%d,n=2" % p,
                         "functions-valued answer = pair block + "
                         "subalgebra block, both computed independently",
                         funcs.dim_h, 1 + nonneg.dim_h, DERIVED, t0,
                         note="1 = exterior square of the depth-one part"))

    t0 = time.monotonic()
    h1 = co.cohomology_dim(K3, cl.trivial_module(K3), 1)
    checks.append(_check("07-trivial-h1@K,p=%d,n=3" % p,
                         "a perfect algebra has no characters",
                         0, h1.dim_h, PUBLISHED, t0))
    return checks


# -- reduction soundness ------------------------------------------------


def verify_reduction_soundness(p=5):
    """The weight-zero filter and the degree-block split are checked
    against the raw complex on the small instance, not assumed."""
    checks = []
    H2 = cl.lie_algebra("H", p, 2)
    adj = cl.adjoint_module(H2)
    triv = cl.trivial_module(H2)

    t0 = time.monotonic()
    full = co.cohomology_dim(H2, adj, 2, representatives=False)
    filt = co.cohomology_dim(H2, adj, 2, weight_zero=True,
                             representatives=False)
    checks.append(_check("08-filter-equivalence@H,p=%d,n=2" % p,
                         "weight-zero filtered H^2 equals the unfiltered one",
                         full.dim_h, filt.dim_h, DIRECT, t0,
                         note="adjoint coefficients"))

    t0 = time.monotonic()
    unblocked = co.cohomology_dim(H2, triv, 2, representatives=False)
    blocked = co.cohomology_dim(H2, triv, 2, weight_zero=True,
                                representatives=False)
    block_sum = sum(v[3] for v in blocked.blocks.values())
    checks.append(_check("08-block-sum@H,p=%d,n=2" % p,
                         "degree-block dimensions sum to the unblocked H^2",
                         (unblocked.dim_h, unblocked.dim_h),
                         (blocked.dim_h, block_sum), DIRECT, t0,
                         note="trivial coefficients, blocks %s"
                              % sorted(blocked.blocks)))
    return checks


# -- reports ------------------------------------------------------------


def verify_h3_reports(p=5):
    """Third cohomology at n=2: the relative complex must account for the
    whole answer, and the heuristic block count is recorded as a report."""
    checks = []
    H2 = cl.lie_algebra("H", p, 2)

    t0 = time.monotonic()
    full = co.cohomology_dim(H2, cl.trivial_module(H2), 3,
                             representatives=False)
    rel = co.relative_cohomology_dim(H2, 3)
    checks.append(_check("09-relative-h3@H,p=%d,n=2" % p,
                         "relative and absolute third cohomology agree",
                         (3, 3), (full.dim_h, rel.dim_h), DERIVED, t0,
                         note="two independently assembled complexes"))

    t0 = time.monotonic()
    checks.append(_report("09-h3-block-count@H,p=%d,n=2" % p,
                          "heuristic generator count for the third "
                          "cohomology at n=2",
                          2, full.dim_h, t0,
                          note="the count behind the expectation is stated "
                               "without proof and undercounts here; three "
                               "independent assemblies agree on the "
                               "computed value"))
    return checks


def verify_upsilon_report(p=5, n=6):
    """The experimental depth-shifted 3-cochain: evaluated, never asserted."""
    t0 = time.monotonic()
    model = cl.lie_algebra("H", p, n)
    ups = cc.upsilon(model, 1)
    witness = ((4, 2, 2, 0, 1, 0), (4, 2, 2, 0, 2, 2), (1, 1, 0, 4, 2, 2))
    value = ups.evaluate(*witness)
    return _report("09-upsilon@H,p=%d,n=%d" % (p, n),
                   "experimental transcription evaluates deterministically",
                   None, sorted(value.items()), t0,
                   note="witness arguments %s; no closedness claim"
                        % (witness,))


# -- assembly -----------------------------------------------------------


def run_all(include_slow=False, include_stretch=False, threads=1):
    """The curated ledger.  include_slow adds the n=4 triple sweeps and the
    n=6 quadruple sweep (minutes); include_stretch attempts the n=4 block
    cohomology instead of skipping it on the budget estimate."""
    checks = [
        verify_structure("K", 5, 3),
        verify_structure("H", 5, 2),
        verify_structure("H", 7, 2),
        # the n=7 contact model is a basis count only; its structure table
        # is far past the budget
        verify_dimension("K", 5, 7, 5 ** 7 - 1),
    ]
    checks.extend(verify_lemmas("K", 5, 3))
    checks.extend(verify_lemmas("H", 5, 2))
    checks.extend(verify_lemmas("H", 7, 2))
    for name in ("Sq:x1", "Sq:x2", "Sq:x3", "Sq:1"):
        checks.append(verify_cocycle_closed(name, "K", 5, 3))
    for name in ("Sq:x1", "Sq:x2", "Phi", "PiC:1"):
        checks.append(verify_cocycle_closed(name, "H", 5, 2))
    if include_slow:
        for name in ("Sq:x1", "Sq:x2", "Sq:x3", "Sq:x4",
                     "Pi:1,2", "Pi:1,4", "Pi:2,3", "Pi:3,4",
                     "Pi:1", "Pi:2", "Phi"):
            checks.append(verify_cocycle_closed(name, "H", 5, 4,
                                                restricted=True))
        checks.append(verify_pi_decomposition())
        checks.append(verify_cocycle_closed("Xi", "H", 5, 6))
    checks.append(verify_cocycle_closed("Gamma:1,2", "H", 5, 4))
    checks.append(verify_phi_top_projection(5, 2))
    if include_slow:
        checks.append(verify_phi_top_projection(5, 4))
    checks.append(verify_phi_transcription())
    checks.append(verify_delta_dichotomy())
    checks.append(verify_theorem_H(5, 2))
    checks.append(verify_theorem_H(7, 2))
    checks.append(verify_theorem_K(5, 3, threads=threads))
    checks.append(verify_theorem_H(5, 4, include_stretch=include_stretch,
                                   threads=threads))
    checks.extend(verify_auxiliary_cohomology())
    checks.extend(verify_reduction_soundness())
    checks.extend(verify_h3_reports())
    checks.append(verify_upsilon_report())
    checks.sort(key=lambda c: c.ident)
    return checks


def all_passing(checks):
    return not any(c.status == "fail" for c in checks)


def ledger_json(checks, timing=False):
    """Stable serialization: sorted by id, timing off by default so the
    output is byte-identical across runs."""
    return {
        "schema": 1,
        "checks": [c.to_json(timing=timing)
                   for c in sorted(checks, key=lambda c: c.ident)],
        "all_passing": all_passing(checks),
    }


def ledger_table(checks):
    rows = [("id", "status", "expected", "computed", "ms", "note")]
    for c in sorted(checks, key=lambda c: c.ident):
        rows.append((c.ident, c.status, str(_plain(c.expected)),
                     str(_plain(c.computed)), str(c.elapsed_ms), c.note))
    widths = [max(len(r[i]) for r in rows) for i in range(5)]
    lines = []
    for r in rows:
        lead = "  ".join(r[i].ljust(widths[i]) for i in range(5))
        lines.append((lead + "  " + r[5]).rstrip())
    return "\n".join(lines)
