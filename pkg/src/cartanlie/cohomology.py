"""Chevalley-Eilenberg cohomology of the Cartan-type models, degrees 0 to 3.

Cochain coordinates are pairs (T, w): T a strictly increasing tuple of
algebra basis positions, w a module coordinate.  The differential

    (dc)(x_0..x_k) = sum_s (-1)^s x_s . c(.. x_s^ ..)
                   + sum_{s<t} (-1)^{s+t} c([x_s, x_t], .. x_s^ .. x_t^ ..)

is assembled column by column straight from the structure constants.  Both
the bracket and the module actions are graded and weight-homogeneous, so d
preserves the coordinate weight wt(w) - sum wt(T_i) and the coordinate degree
deg(w) - sum deg(T_i); filtered spaces are honest subcomplexes and their
dimensions add up blockwise.

Three elimination routes, picked by size so the 1 GiB default budget is
respected, all deterministic:

* materialized Markowitz (fp_linalg) when the matrix fits comfortably; the
  only route that also produces kernel vectors for representatives;
* streaming left-looking elimination for the big unfiltered ranks;
* the weight-zero space without a fixed degree runs per degree block and
  merges, since the blocks are independent subcomplexes.

Computations that would not fit raise BudgetExceeded up front instead of
ever truncating silently.
"""

import time
from bisect import bisect_left
from dataclasses import dataclass, field
from itertools import combinations

from . import multiindex as mi
from .fp_linalg import (
    BudgetExceeded,
    SparseMatrixFp,
    check_budget,
    hstack,
    kernel_basis,
    memory_budget,
    rank,
    solve_in_image,
    stream_rank,
)

_MARKOWITZ_COL_LIMIT = 60_000
_REP_COL_LIMIT = 60_000


class CochainSpace:
    """Alternating k-cochains on a model with values in a module.

    filter forms: none, weight-zero, or weight-zero with a fixed total
    degree; a bare degree filter is not offered since the degree is only a
    complete invariant inside a weight class.
    """

    __slots__ = ("model", "module", "k", "weight_zero", "degree", "basis", "index")

    def __init__(self, model, module, k, weight_zero=False, degree=None):
        if module.model is not model:
            raise ValueError("module was built over a different model")
        if k < 0 or k > 3:
            raise ValueError("cochain degree %d outside the supported range 0..3" % k)
        if degree is not None and not weight_zero:
            raise ValueError("a degree filter is only offered inside the weight-zero space")
        self.model = model
        self.module = module
        self.k = k
        self.weight_zero = weight_zero
        self.degree = degree

        n_basis = _estimate_coords(model, module, k, weight_zero)
        check_budget(n_basis * 120, "cochain basis for %s" % self.describe())

        self.basis = list(_enumerate_coords(model, module, k, weight_zero, degree))
        self.index = {coord: i for i, coord in enumerate(self.basis)}

    @property
    def dim(self):
        return len(self.basis)

    def describe(self):
        filt = "none"
        if self.weight_zero:
            filt = "weight-zero" if self.degree is None else "weight-zero,degree=%d" % self.degree
        return "C^%d(%s; %s)[%s]" % (self.k, self.model.name, self.module.kind, filt)

    def coordinate_key(self, coord):
        """(weight, degree) of one coordinate; constant on d-orbits."""
        T, w = coord
        model, module = self.model, self.module
        p = model.p
        wt = list(module.weights[w])
        deg = module.degrees[w]
        for t in T:
            tw = model.weights[t]
            for i in range(len(wt)):
                wt[i] = (wt[i] - tw[i]) % p
            deg -= model.degrees[t]
        return tuple(wt), deg

    def block_degrees(self):
        """Sorted degrees of the nonempty weight-zero degree blocks."""
        if not self.weight_zero:
            raise ValueError("degree blocks live inside the weight-zero space")
        return sorted({self.coordinate_key(c)[1] for c in self.basis})


def _estimate_coords(model, module, k, weight_zero):
    total = 1
    n = model.dim
    for i in range(k):
        total = total * (n - i) // (i + 1)
    if weight_zero:
        # weights spread coordinates over about p^m classes
        total = total * max(1, module.dim) // max(1, model.p ** model.m) + 1
        return total
    return total * module.dim


def _module_weight_buckets(module):
    buckets = {}
    for w, wt in enumerate(module.weights):
        buckets.setdefault(wt, []).append(w)
    return buckets


def _enumerate_coords(model, module, k, weight_zero, degree):
    p = model.p
    buckets = _module_weight_buckets(module) if weight_zero else None
    wlen = len(module.weights[0]) if module.dim else 0
    for T in combinations(range(model.dim), k):
        if weight_zero:
            need = [0] * wlen
            dsum = 0
            for t in T:
                tw = model.weights[t]
                for i in range(wlen):
                    need[i] = (need[i] + tw[i]) % p
                dsum += model.degrees[t]
            for w in buckets.get(tuple(need), ()):
                if degree is None or module.degrees[w] - dsum == degree:
                    yield (T, w)
        else:
            for w in range(module.dim):
                yield (T, w)


def _column(space, T, w):
    """The differential of the elementary cochain at (T, w), as a sparse
    dict keyed by (U, w') coordinates of the next cochain space."""
    model, module = space.model, space.module
    p = model.p
    out = {}
    Tset = set(T)

    # a new argument z joins at its sorted position and acts on the value
    for z in range(model.dim):
        if z in Tset:
            continue
        hits = module.act_on_basis(z, w)
        if not hits:
            continue
        pos = bisect_left(T, z)
        sgn = -1 if pos % 2 else 1
        U = T[:pos] + (z,) + T[pos:]
        for w2, v in hits:
            key = (U, w2)
            acc = (out.get(key, 0) + sgn * v) % p
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]

    # two arguments contract onto one slot of T through the bracket
    rev = model.reverse_table()
    for idx_e, e in enumerate(T):
        rest = T[:idx_e] + T[idx_e + 1:]
        rest_set = Tset - {e}
        e_sgn = -1 if idx_e % 2 else 1
        for a, b, v in rev.get(e, ()):
            # a repeated argument makes the alternating cochain vanish
            if a in rest_set or b in rest_set:
                continue
            U = tuple(sorted(rest + (a, b)))
            s = U.index(a)
            t = U.index(b)
            sgn = -1 if (s + t) % 2 else 1
            key = (U, w)
            acc = (out.get(key, 0) + sgn * e_sgn * v) % p
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
    return out

def differential_apply(space, vec):
    """d applied to a sparse cochain vector over space coordinates; the
    result is keyed by raw (U, w') coordinates of degree k+1."""
    p = space.model.p
    out = {}
    for coord, c in vec.items():
        if coord not in space.index:
            raise ValueError("coordinate %r is not in %s" % (coord, space.describe()))
        c %= p
        if not c:
            continue
        T, w = coord
        for key, v in _column(space, T, w).items():
            acc = (out.get(key, 0) + c * v) % p
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
    return out


def differential_matrix(space, target=None):
    """The matrix of d on space, columns in basis order.

    Rows follow target.index when a target space is given (it must carry the
    same filters); otherwise rows are keyed lazily in first-touch order,
    which is deterministic because columns are walked in basis order and
    each column's entries are sorted.
    """
    p = space.model.p
    ents = []
    if target is not None:
        if target.k != space.k + 1:
            raise ValueError("target must be the k+1 space")
        keyer = target.index
        for col, (T, w) in enumerate(space.basis):
            for key, v in sorted(_column(space, T, w).items()):
                r = keyer.get(key)
                if r is None:
                    raise RuntimeError(
                        "differential leaked outside the filtered target at %r" % (key,)
                    )
                ents.append((r, col, v))
        rows = target.dim
    else:
        keyer = {}
        for col, (T, w) in enumerate(space.basis):
            for key, v in sorted(_column(space, T, w).items()):
                r = keyer.get(key)
                if r is None:
                    r = keyer[key] = len(keyer)
                ents.append((r, col, v))
        rows = len(keyer)
    check_budget(len(ents) * 150, "differential matrix for %s" % space.describe())
    return SparseMatrixFp(rows, space.dim, p, ents)


def _stream_columns(space):
    for T, w in space.basis:
        yield _column(space, T, w)


def _sample_column_nnz(space, sample=120):
    if not space.basis:
        return 0
    step = max(1, space.dim // sample)
    picks = space.basis[::step][:sample]
    total = sum(len(_column(space, T, w)) for T, w in picks)
    return total / len(picks)


def _rank_of_differential(space, need_kernel=False):
    """rank(d_k on space), plus the kernel basis when asked for.

    Chooses between materialized Markowitz elimination and the streaming
    engine by estimated footprint; kernels force materialization.
    """
    if space.dim == 0:
        return (0, []) if need_kernel else (0, None)
    est_nnz = _sample_column_nnz(space) * space.dim
    budget = memory_budget()
    if need_kernel or (est_nnz * 200 <= budget and space.dim <= _MARKOWITZ_COL_LIMIT):
        if need_kernel and space.dim > _REP_COL_LIMIT:
            raise BudgetExceeded(
                "kernel extraction on %s (%d columns) is too large; use filters"
                % (space.describe(), space.dim)
            )
        check_budget(est_nnz * 200, "materialized differential on %s" % space.describe())
        M = differential_matrix(space)
        return (rank(M), kernel_basis(M)) if need_kernel else (rank(M), None)
    check_budget(est_nnz * 64, "streamed differential on %s" % space.describe())
    return stream_rank(_stream_columns(space), space.model.p,
                       "streamed differential on %s" % space.describe()), None


@dataclass
class CohomologyReport:
    family: str
    p: int
    n: int
    k: int
    module: str
    filter_desc: str
    dim_c: int
    dim_z: int
    dim_b: int
    dim_h: int
    representatives: list = field(default_factory=list)
    elapsed_ms: int = 0
    notes: list = field(default_factory=list)
    blocks: dict = field(default_factory=dict)
    # raw sparse vectors behind `representatives`; not serialized
    rep_vectors: list = field(default_factory=list, repr=False)

    def to_json(self):
        return {
            "schema": 1,
            "family": self.family,
            "p": self.p,
            "n": self.n,
            "k": self.k,
            "module": self.module,
            "filter": self.filter_desc,
            "dimC": self.dim_c,
            "dimZ": self.dim_z,
            "dimB": self.dim_b,
            "dimH": self.dim_h,
            "representatives": self.representatives,
            "elapsed_ms": self.elapsed_ms,
            "notes": list(self.notes),
            "blocks": {str(d): list(v) for d, v in sorted(self.blocks.items())},
        }


def serialize_cochain(space, vec):
    """A sparse cochain as plain JSON data: argument tuples are 1-based
    multi-index strings, values are module labels."""
    terms = []
    for (T, w) in sorted(vec):
        c = vec[(T, w)] % space.model.p
        if not c:
            continue
        terms.append({
            "args": [mi.unparse(space.model.basis[t]) for t in T],
            "value": space.module.label_text(w),
            "coeff": c,
        })
    return {"terms": terms}


def _representatives_from(space, d_here_kernel, image_cols):
    """Kernel vectors that extend the image to a basis of the cocycles.

    image_cols streams the d_{k-1} columns as dicts over space coordinates.
    Greedy echelon sweep: every returned vector is a cocycle (it came from
    the kernel) and no combination of returned vectors is a coboundary.
    """
    p = space.model.p
    echelon = {}

    def reduce(vec):
        v = dict(vec)
        while v:
            lead = min(v)
            hit = echelon.get(lead)
            if hit is None:
                return lead, v
            f = v[lead]
            for key, val in hit.items():
                w = (v.get(key, 0) - f * val) % p
                if w:
                    v[key] = w
                elif key in v:
                    del v[key]
        return None, None

    for col in image_cols:
        lead, v = reduce(col)
        if lead is not None:
            inv = pow(v[lead], p - 2, p)
            echelon[lead] = {key: val * inv % p for key, val in v.items()}

    reps = []
    for kv in d_here_kernel:
        vec = {space.basis[c]: val for c, val in kv.items()}
        lead, v = reduce(vec)
        if lead is not None:
            inv = pow(v[lead], p - 2, p)
            echelon[lead] = {key: val * inv % p for key, val in v.items()}
            reps.append(vec)
    return reps


def _image_columns(space_below, space):
    """d_{k-1} columns of space_below, re-keyed to space coordinates."""
    for T, w in space_below.basis:
        col = _column(space_below, T, w)
        for key in col:
            if key not in space.index:
                raise RuntimeError("differential leaked outside the filter at %r" % (key,))
        yield col


def _space_below(space):
    if space.k == 0:
        return None
    return CochainSpace(space.model, space.module, space.k - 1,
                        space.weight_zero, space.degree)


def _preflight_budget(model, module, k, weight_zero):
    """Cheap footprint bound, taken before any basis enumeration.

    Unfiltered spaces can be rejected from the column count and a sampled
    action density alone; weight-zero spaces are small enough that the
    exact estimates inside CochainSpace suffice.
    """
    if weight_zero or module.dim == 0:
        return
    cols = 1
    for i in range(k):
        cols = cols * (model.dim - i) // (i + 1)
    cols *= module.dim
    hits = samples = 0
    for z in range(0, model.dim, max(1, model.dim // 8)):
        for w in range(0, module.dim, max(1, module.dim // 5)):
            hits += len(module.act_on_basis(z, w))
            samples += 1
    per_col = (model.dim - k) * (hits / samples) if samples else 1.0
    check_budget(int(cols * max(per_col, 1.0)) * 64,
                 "differential on C^%d(%s; %s)" % (k, model.name, module.kind))


def cohomology_dim(model, module, k, weight_zero=False, degree=None,
                   representatives="auto", threads=1):
    """Full H^k bookkeeping: dim C, Z, B, H plus optional representatives.

    representatives: "auto" drops them when the space is too large to
    materialize, True insists (and may raise BudgetExceeded), False skips.
    The weight-zero space without a fixed degree is processed per degree
    block; blocks are independent subcomplexes so dimensions and
    representatives merge by concatenation.
    """
    t0 = time.monotonic()
    if weight_zero and degree is None:
        return _blocked_cohomology(model, module, k, representatives, threads, t0)

    _preflight_budget(model, module, k, weight_zero)
    space = CochainSpace(model, module, k, weight_zero, degree)
    want_reps = representatives is True or (representatives == "auto" and space.dim <= _REP_COL_LIMIT)
    try:
        rank_k, kernel = _rank_of_differential(space, need_kernel=want_reps)
    except BudgetExceeded:
        if not (want_reps and representatives == "auto"):
            raise
        # kernel extraction would not fit; fall back to rank-only engines
        want_reps = False
        rank_k, kernel = _rank_of_differential(space, need_kernel=False)

    notes = []
    dim_b = 0
    reps = []
    below = _space_below(space)
    if below is not None and below.dim:
        if want_reps:
            dim_b = stream_rank(_image_columns(below, space), model.p,
                                "image of d below %s" % space.describe())
            reps = _representatives_from(space, kernel, _image_columns(below, space))
        else:
            rank_below, _ = _rank_of_differential(below, need_kernel=False)
            dim_b = rank_below
    elif want_reps:
        # nothing below: every kernel vector already represents a class
        reps = [{space.basis[c]: v for c, v in kv.items()} for kv in kernel]
    if not want_reps and representatives == "auto":
        notes.append("representatives skipped: space too large to materialize")

    dim_z = space.dim - rank_k
    dim_h = dim_z - dim_b
    assert dim_h >= 0, "image must sit inside the kernel"
    if want_reps:
        assert len(reps) == dim_h

    return CohomologyReport(
        family=model.family, p=model.p, n=model.n, k=k, module=module.kind,
        filter_desc=space.describe().split("[")[1].rstrip("]"),
        dim_c=space.dim, dim_z=dim_z, dim_b=dim_b, dim_h=dim_h,
        representatives=[serialize_cochain(space, v) for v in reps],
        elapsed_ms=int((time.monotonic() - t0) * 1000),
        notes=notes,
        rep_vectors=reps,
    )


def _blocked_cohomology(model, module, k, representatives, threads, t0):
    probe = CochainSpace(model, module, k, weight_zero=True)
    degrees = probe.block_degrees()
    del probe

    def run(D):
        return cohomology_dim(model, module, k, weight_zero=True, degree=D,
                              representatives=representatives, threads=1)

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            sub = list(pool.map(run, degrees))
    else:
        sub = [run(D) for D in degrees]

    merged = CohomologyReport(
        family=model.family, p=model.p, n=model.n, k=k, module=module.kind,
        filter_desc="weight-zero",
        dim_c=sum(r.dim_c for r in sub),
        dim_z=sum(r.dim_z for r in sub),
        dim_b=sum(r.dim_b for r in sub),
        dim_h=sum(r.dim_h for r in sub),
    )
    for D, r in zip(degrees, sub):
        merged.representatives.extend(r.representatives)
        merged.rep_vectors.extend(r.rep_vectors)
        merged.notes.extend("degree %d: %s" % (D, note) for note in r.notes)
        merged.blocks[D] = (r.dim_c, r.dim_z, r.dim_b, r.dim_h)
    merged.elapsed_ms = int((time.monotonic() - t0) * 1000)
    return merged


def is_cocycle(space, vec):
    """(True, None) when d(vec) = 0, else (False, first violated coordinate)."""
    out = differential_apply(space, vec)
    if not out:
        return True, None
    return False, min(out)


def is_coboundary(space, vec):
    """(True, preimage) or (False, None); rejects non-cocycles outright.

    The preimage is a sparse dict over the k-1 cochain coordinates with
    free variables pinned to zero, so the answer is reproducible.
    """
    ok, witness = is_cocycle(space, vec)
    if not ok:
        raise ValueError("not a cocycle: d(c) is nonzero at %r" % (witness,))
    below = _space_below(space)
    if below is None or below.dim == 0:
        if any(v % space.model.p for v in vec.values()):
            return False, None
        return True, {}
    M = differential_matrix(below, target=space)
    b = {}
    for coord, c in vec.items():
        c %= space.model.p
        if c:
            b[space.index[coord]] = c
    x = solve_in_image(M, b)
    if x is None:
        return False, None
    return True, {below.basis[c]: v for c, v in x.items()}


def vectorize(space, cochain):
    """Coordinates of a named cochain inside a cochain space.

    The cochain must take values inside the filtered space; a nonzero value
    on a coordinate outside it is a domain error, as is any model or module
    mismatch.
    """
    if cochain.model is not space.model and cochain.model.name != space.model.name:
        raise ValueError("cochain lives over %s, space over %s"
                         % (cochain.model.name, space.model.name))
    if cochain.arity != space.k:
        raise ValueError("cochain arity %d, space degree %d" % (cochain.arity, space.k))
    out = {}
    seen = set()
    for T, w in space.basis:
        if T in seen:
            continue
        seen.add(T)
        val = cochain.value_on(T)
        for w2, c in val.items():
            coord = (T, w2)
            if coord not in space.index:
                raise ValueError(
                    "cochain value leaves the filtered space at %r" % (coord,))
            out[coord] = c
    return out


def classes_independent(space, cochains):
    """Whether the given cocycles are linearly independent modulo coboundaries.

    Accepts sparse coordinate dicts or named cochains (vectorized here).
    Checked as one rank comparison: [d_{k-1} | vectors] against d_{k-1}.
    """
    vecs = []
    for c in cochains:
        vecs.append(c if isinstance(c, dict) else vectorize(space, c))
    below = _space_below(space)
    p = space.model.p
    if below is not None and below.dim:
        M = differential_matrix(below, target=space)
    else:
        M = SparseMatrixFp(space.dim, 0, p)
    ents = []
    for j, v in enumerate(vecs):
        for coord, c in v.items():
            if c % p:
                ents.append((space.index[coord], j, c))
    V = SparseMatrixFp(space.dim, len(vecs), p, ents)
    return rank(hstack(M, V)) == rank(M) + len(vecs)


# -- cohomology relative to the depth-one part ---------------------------


def _relative_basis(model, dep, nonneg, k):
    """Basis of the relative k-cochains with trivial coefficients.

    Supported on k-tuples from the non-negative part and invariant under the
    depth-one abelian subalgebra h: for every h and tuple T the sum of c on
    T with one slot bracketed by h must vanish.  Returns (tuples, vectors)
    where vectors are sparse dicts over tuple positions.

    For k = 0 there are no arguments, both conditions are vacuous and the
    constants survive: the relative C^0 is one-dimensional by convention.
    """
    p = model.p
    nonneg_set = set(nonneg)
    tuples = list(combinations(nonneg, k))
    pos = {T: c for c, T in enumerate(tuples)}
    keyer = {}
    ents = []
    # one condition per (h, argument tuple): the slotwise brackets of T
    # under h, resorted, must sum to zero on the cochain
    for T in tuples:
        for h in dep:
            for i, t in enumerate(T):
                rest = T[:i] + T[i + 1:]
                rest_set = set(rest)
                for kk, v in model.bracket_coords(h, t):
                    if kk not in nonneg_set:
                        continue  # c vanishes on tuples touching the depth
                    if kk in rest_set:
                        continue
                    U = tuple(sorted(rest + (kk,)))
                    # sign of sliding kk into place relative to slot i
                    sgn = -1 if (i + bisect_left(U, kk)) % 2 else 1
                    key = (h, T)
                    r = keyer.get(key)
                    if r is None:
                        r = keyer[key] = len(keyer)
                    ents.append((r, pos[U], sgn * v))
    inv = SparseMatrixFp(len(keyer), len(tuples), p, ents)
    return tuples, kernel_basis(inv)


def _relative_image_columns(model, space_full, tuples, vectors, nonneg_set):
    """d of each relative basis vector, as columns over full coordinates.

    The relative complex is closed under d; any leak onto a tuple touching
    the depth-one part would disprove that and is reported loudly.
    """
    p = model.p
    for vec in vectors:
        col = {}
        for c, val in vec.items():
            T = tuples[c]
            for key, v in _column(space_full, T, 0).items():
                acc = (col.get(key, 0) + val * v) % p
                if acc:
                    col[key] = acc
                elif key in col:
                    del col[key]
        for (U, _w) in col:
            if any(u not in nonneg_set for u in U):
                raise RuntimeError(
                    "relative differential leaked onto the depth-one part at %r" % (U,))
        yield col


def relative_cohomology_dim(model, k):
    """H^k of the pair (g, depth-one part) with trivial coefficients.

    Defined for the hamiltonian families, whose depth-one part is abelian
    and spanned by basis monomials.  dim C^0_rel = 1 (constants; see
    _relative_basis), so H^0 = 1 for every model here.
    """
    t0 = time.monotonic()
    if model.is_contact or model.min_degree is not None:
        raise ValueError("the relative complex is set up for full hamiltonian models")
    from .cartan_lie import trivial_module

    triv = trivial_module(model)
    dep = [i for i, d in enumerate(model.degrees) if d < 0]
    nonneg = [i for i, d in enumerate(model.degrees) if d >= 0]
    nonneg_set = set(nonneg)

    tuples_k, vecs_k = _relative_basis(model, dep, nonneg, k)
    space_full = CochainSpace(model, triv, k)
    rank_k = stream_rank(
        _relative_image_columns(model, space_full, tuples_k, vecs_k, nonneg_set),
        model.p, "relative differential at k=%d" % k)

    rank_below = 0
    if k > 0:
        tuples_b, vecs_b = _relative_basis(model, dep, nonneg, k - 1)
        space_below = CochainSpace(model, triv, k - 1)
        rank_below = stream_rank(
            _relative_image_columns(model, space_below, tuples_b, vecs_b, nonneg_set),
            model.p, "relative differential at k=%d" % (k - 1))

    dim_c = len(vecs_k)
    dim_z = dim_c - rank_k
    dim_h = dim_z - rank_below
    assert dim_h >= 0
    return CohomologyReport(
        family=model.family, p=model.p, n=model.n, k=k, module="trivial",
        filter_desc="relative-to-depth-one",
        dim_c=dim_c, dim_z=dim_z, dim_b=rank_below, dim_h=dim_h,
        elapsed_ms=int((time.monotonic() - t0) * 1000),
    )
