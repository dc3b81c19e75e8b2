"""Exact sparse linear algebra over prime fields F_p.

Scalars are plain ints kept in [0, p); there is no scalar wrapper type and no
floating point anywhere.  Intermediate products stay exact because Python
ints are unbounded, so p can be any prime that fits the callers' tables.

Matrices are immutable after construction.  Elimination runs on a private
copy and the factorization is cached on the instance, so rank and kernel
queries on the same matrix share one elimination pass.

Pivot rule, pinned so results are reproducible run to run: Markowitz minimum
fill.  Among live entries the pivot minimizes (row_nnz - 1) * (col_nnz - 1),
ties broken by the lowest (row, col) pair.  Selection is exact: a lazy heap
holds one fresh item per score change, stale items are discarded on pop.
"""

import heapq
import os

DEFAULT_BUDGET_ENV = "CARTANLIE_MEMORY_BUDGET"
_DEFAULT_BUDGET = 1 << 30  # bytes
_BYTES_PER_ENTRY = 96  # rough dict-of-dicts cost per live nonzero
_BYTES_PER_HEAP_ITEM = 80  # one (score, row, col) tuple


class BudgetExceeded(RuntimeError):
    """Raised instead of ever silently truncating a computation."""


def memory_budget():
    """Configured budget in bytes; override via CARTANLIE_MEMORY_BUDGET."""
    raw = os.environ.get(DEFAULT_BUDGET_ENV)
    if raw is None:
        return _DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise ValueError("bad %s=%r, want a byte count" % (DEFAULT_BUDGET_ENV, raw))


def check_budget(estimated_bytes, what):
    budget = memory_budget()
    if estimated_bytes > budget:
        raise BudgetExceeded(
            "%s is too large (~%d MiB > budget %d MiB); use filters or raise %s"
            % (what, estimated_bytes >> 20, budget >> 20, DEFAULT_BUDGET_ENV)
        )


def fp_inv(a, p):
    """Inverse of a mod p via Fermat; zero input is a domain error."""
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod %d" % p)
    return pow(a, p - 2, p)


class SparseMatrixFp:
    """Immutable rows x cols matrix over F_p, entries stored as (r, c) -> v.

    Construction accepts duplicate coordinates and un-normalized values:
    duplicates accumulate mod p and exact zeros are dropped, which is what
    column-assembly code wants.  After construction every stored value is in
    [1, p).
    """

    __slots__ = ("rows", "cols", "p", "entries", "_elim")

    def __init__(self, rows, cols, p, entries=()):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        if p < 2:
            raise ValueError("modulus must be a prime >= 2")
        self.rows = rows
        self.cols = cols
        self.p = p
        data = {}
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError("entry (%d, %d) outside %dx%d" % (r, c, rows, cols))
            v %= p
            if not v:
                continue
            key = (r, c)
            w = (data.get(key, 0) + v) % p
            if w:
                data[key] = w
            elif key in data:
                del data[key]
        self.entries = data
        self._elim = None

    @classmethod
    def from_dense(cls, array, p):
        rows = len(array)
        cols = len(array[0]) if rows else 0
        ents = []
        for r, row in enumerate(array):
            if len(row) != cols:
                raise ValueError("ragged dense input")
            for c, v in enumerate(row):
                if v % p:
                    ents.append((r, c, v))
        return cls(rows, cols, p, ents)

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    @property
    def nnz(self):
        return len(self.entries)

    def transpose(self):
        return SparseMatrixFp(
            self.cols, self.rows, self.p,
            ((c, r, v) for (r, c), v in self.entries.items()),
        )

    def apply(self, vec):
        """Matrix-vector product; vec and result are sparse dicts."""
        out = {}
        p = self.p
        for (r, c), v in self.entries.items():
            x = vec.get(c)
            if x:
                w = (out.get(r, 0) + v * x) % p
                if w:
                    out[r] = w
                elif r in out:
                    del out[r]
        return out

    def _elimination(self):
        if self._elim is None:
            self._elim = _eliminate(self)
        return self._elim


class _Elimination:
    """Frozen pivot rows of one elimination pass.

    pivots[k] = (row, col) in pivot order; pivot_rows[k] is that row's
    content at freeze time (a col -> val dict, pivot value included).  By
    construction pivot row k has no entries at earlier pivot columns, so the
    system back-substitutes in reverse pivot order.
    """

    __slots__ = ("pivots", "pivot_rows", "pivot_b", "residual_ok", "p", "cols")

    def __init__(self, pivots, pivot_rows, pivot_b, residual_ok, p, cols):
        self.pivots = pivots
        self.pivot_rows = pivot_rows
        self.pivot_b = pivot_b
        self.residual_ok = residual_ok
        self.p = p
        self.cols = cols

    @property
    def rank(self):
        return len(self.pivots)

    def free_cols(self):
        used = {c for _, c in self.pivots}
        return [c for c in range(self.cols) if c not in used]

    def back_substitute(self, assign):
        """Complete a partial assignment so every pivot row evaluates to its
        recorded right-hand side (0 when none was tracked)."""
        p = self.p
        for k in range(len(self.pivots) - 1, -1, -1):
            _, c = self.pivots[k]
            row = self.pivot_rows[k]
            acc = self.pivot_b[k] if self.pivot_b is not None else 0
            for cc, vv in row.items():
                if cc != c:
                    x = assign.get(cc)
                    if x:
                        acc -= vv * x
            val = acc % p * fp_inv(row[c], p) % p
            if val:
                assign[c] = val
        return assign


def _eliminate(M, rhs=None):
    p = M.p
    act = {}
    for (r, c), v in M.entries.items():
        act.setdefault(r, {})[c] = v
    colrows = {}
    for r, row in act.items():
        for c in row:
            colrows.setdefault(c, set()).add(r)

    live_nnz = len(M.entries)
    check_budget(live_nnz * _BYTES_PER_ENTRY, "elimination of a %dx%d matrix" % (M.rows, M.cols))

    b = None
    if rhs is not None:
        b = {r: v % p for r, v in rhs.items() if v % p}

    def fresh_heap():
        items = []
        for r, row in act.items():
            rscore = len(row) - 1
            for c in row:
                items.append((rscore * (len(colrows[c]) - 1), r, c))
        heapq.heapify(items)
        return items

    heap = fresh_heap()

    pivots = []
    pivot_rows = []
    pivot_b = [] if b is not None else None
    frozen_nnz = 0
    budget_mask = (1 << 12) - 1

    while heap:
        score, r, c = heapq.heappop(heap)
        row = act.get(r)
        if row is None or c not in row:
            continue
        true = (len(row) - 1) * (len(colrows[c]) - 1)
        if true != score:
            # stale; the push-on-change discipline guarantees a fresh item
            continue

        prow = act.pop(r)
        for cc in prow:
            s = colrows[cc]
            s.discard(r)
            if not s:
                del colrows[cc]
        live_nnz -= len(prow)
        changed_cols = set(prow)
        changed_cols.discard(c)

        pinv = fp_inv(prow[c], p)
        if b is not None:
            pivot_b.append(b.pop(r, 0))

        victims = sorted(colrows.get(c, ()))
        for rr in victims:
            rrow = act[rr]
            f = rrow[c] * pinv % p
            if b is not None and pivot_b[-1]:
                w = (b.get(rr, 0) - f * pivot_b[-1]) % p
                if w:
                    b[rr] = w
                elif rr in b:
                    del b[rr]
            for cc, vv in prow.items():
                cur = rrow.get(cc, 0)
                nv = (cur - f * vv) % p
                if nv:
                    rrow[cc] = nv
                    if not cur:
                        colrows.setdefault(cc, set()).add(rr)
                        changed_cols.add(cc)
                        live_nnz += 1
                else:
                    if cur:
                        del rrow[cc]
                        s = colrows[cc]
                        s.discard(rr)
                        if not s:
                            del colrows[cc]
                        changed_cols.add(cc)
                        live_nnz -= 1
            if not rrow:
                del act[rr]

        pivots.append((r, c))
        pivot_rows.append(prow)
        frozen_nnz += len(prow)

        if len(pivots) & budget_mask == 0:
            check_budget((live_nnz + frozen_nnz) * _BYTES_PER_ENTRY
                         + len(heap) * _BYTES_PER_HEAP_ITEM,
                         "elimination fill-in")

        # push-on-change: any entry whose row or col count moved gets a fresh
        # heap item carrying its current score
        for rr in victims:
            rrow = act.get(rr)
            if rrow:
                rscore = len(rrow) - 1
                for cc in rrow:
                    heapq.heappush(heap, (rscore * (len(colrows[cc]) - 1), rr, cc))
        for cc in changed_cols:
            for rr in colrows.get(cc, ()):
                rrow = act.get(rr)
                if rrow is not None and cc in rrow:
                    heapq.heappush(heap, ((len(rrow) - 1) * (len(colrows[cc]) - 1), rr, cc))

        # Lazy deletion floods the heap with stale items on big eliminations;
        # compaction keeps memory proportional to the live matrix without
        # touching pivot choice, since every live entry is re-pushed at its
        # current score and stale items never act.
        if len(heap) > max(1 << 20, 3 * live_nnz):
            heap = fresh_heap()

    residual_ok = True
    if b is not None:
        residual_ok = not b  # leftover nonzero rhs on a zeroed row: no solution
    return _Elimination(pivots, pivot_rows, pivot_b, residual_ok, p, M.cols)


def rank(M):
    return M._elimination().rank


def kernel_basis(M):
    """Basis of the right null space, one sparse dict col -> val per vector.

    One vector per free column, that column's coordinate set to 1; the list
    is ordered by free column, so output is deterministic.
    """
    elim = M._elimination()
    out = []
    for f in elim.free_cols():
        out.append(elim.back_substitute({f: 1}))
    return out


def solve_in_image(M, b):
    """Solve M x = b; returns a sparse dict, or None when b is not in the
    column space.  b may be a dense sequence of length rows or a sparse dict.
    Free variables are set to 0, so the solution is deterministic.
    """
    if isinstance(b, dict):
        bad = [r for r in b if not 0 <= r < M.rows]
        if bad:
            raise ValueError("rhs coordinate %d outside %d rows" % (bad[0], M.rows))
        rhs = b
    else:
        if len(b) != M.rows:
            raise ValueError("rhs length %d, want %d" % (len(b), M.rows))
        rhs = {r: v for r, v in enumerate(b) if v % M.p}
    elim = _eliminate(M, rhs=rhs)
    if not elim.residual_ok:
        return None
    return elim.back_substitute({})


def stream_rank(columns, p, what="streamed matrix"):
    """Rank of a matrix presented column by column, never materialized.

    Each column is a sparse dict keyed by any totally ordered row labels.
    Left-looking elimination with the pivot pinned to the smallest row label
    of the reduced column, so the result is a deterministic function of the
    column sequence.  Memory holds the echelon vectors only; the budget is
    re-checked as they grow.
    """
    echelon = {}
    nnz = 0
    r = 0
    cols_seen = 0
    for col in columns:
        v = {key: val % p for key, val in col.items() if val % p}
        while v:
            lead = min(v)
            hit = echelon.get(lead)
            if hit is None:
                inv = fp_inv(v[lead], p)
                vec = {key: val * inv % p for key, val in v.items()}
                echelon[lead] = vec
                nnz += len(vec)
                r += 1
                break
            f = v[lead]
            for key, val in hit.items():
                w = (v.get(key, 0) - f * val) % p
                if w:
                    v[key] = w
                elif key in v:
                    del v[key]
        cols_seen += 1
        if cols_seen & 1023 == 0:
            check_budget(nnz * 64, what)
    return r


def hstack(A, B):
    """[A | B]; both must share rows and modulus."""
    if A.rows != B.rows or A.p != B.p:
        raise ValueError("incompatible matrices for hstack")
    ents = [(r, c, v) for (r, c), v in A.entries.items()]
    ents.extend((r, c + A.cols, v) for (r, c), v in B.entries.items())
    return SparseMatrixFp(A.rows, A.cols + B.cols, A.p, ents)
