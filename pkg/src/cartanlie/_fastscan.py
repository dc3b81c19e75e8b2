"""Compiled exhaustive scans over basis tuples.

Pure Python handles the n=2 instances comfortably, but the full contact
Jacobi sweep (3.2e5 triples), the weight-compatible closedness scans at
n=4 (1.6e6 triples times eleven cochains) and above all the quadruple
sweep behind the n=6 3-cocycle need compiled loops.  Everything here is
plain integer arithmetic on flattened structure tables; the test suite
cross-checks each kernel against the pure-Python evaluators on the small
instances and runs deliberately corrupted inputs to prove the scans can
fail.

Sign conventions mirror cocycles._Coboundary exactly: d c (x_0 .. x_k) =
sum_s (-1)^s x_s c(.. omit s ..) + sum_{s<t} (-1)^{s+t} c([x_s, x_t], ..).
"""

import numpy as np
from numba import njit, prange

from . import multiindex as mi

__all__ = [
    "structure_table", "jacobi_violations", "pair_value_table",
    "closedness_violations", "xi_sum_classes", "xi_quadruple_scan",
]


class StructureTable:
    """Flattened bracket table over ordered basis-pair codes i*dim + j.

    Building it sweeps every ordered pair once, which doubles as the
    antisymmetry and grading/weight additivity check on all pairs; a
    violation raises instead of producing a table.
    """

    __slots__ = ("model", "dim", "p", "indptr", "targets", "coeffs",
                 "weight_codes", "weight_digits", "pairs_checked")

    def __init__(self, model, indptr, targets, coeffs, wcodes, wdigits, pairs):
        self.model = model
        self.dim = model.dim
        self.p = model.p
        self.indptr = indptr
        self.targets = targets
        self.coeffs = coeffs
        self.weight_codes = wcodes
        self.weight_digits = wdigits
        self.pairs_checked = pairs


_TABLE_CACHE = {}


def structure_table(model):
    # models are built deterministically, so the name is a sound cache key
    cached = _TABLE_CACHE.get(model.name)
    if cached is not None:
        return cached
    dim, p = model.dim, model.p
    wlen = len(model.weights[0])

    rows = [()] * (dim * dim)
    pairs = 0
    for i in range(dim):
        for j in range(i + 1, dim):
            ent = tuple(model.bracket_coords(i, j))
            pairs += 1
            for t, v in ent:
                if model.degrees[t] != model.degrees[i] + model.degrees[j]:
                    raise RuntimeError("bracket breaks the grading at (%d, %d)" % (i, j))
                for l in range(wlen):
                    if (model.weights[t][l] - model.weights[i][l]
                            - model.weights[j][l]) % p:
                        raise RuntimeError("bracket breaks the weights at (%d, %d)" % (i, j))
            back = {t: v for t, v in model.bracket_coords(j, i)}
            if back != {t: (-v) % p for t, v in ent}:
                raise RuntimeError("bracket is not antisymmetric at (%d, %d)" % (i, j))
            rows[i * dim + j] = ent
            rows[j * dim + i] = tuple((t, (-v) % p) for t, v in ent)

    indptr = np.zeros(dim * dim + 1, dtype=np.int64)
    for code, ent in enumerate(rows):
        indptr[code + 1] = indptr[code] + len(ent)
    targets = np.empty(indptr[-1], dtype=np.int64)
    coeffs = np.empty(indptr[-1], dtype=np.int64)
    k = 0
    for ent in rows:
        for t, v in ent:
            targets[k] = t
            coeffs[k] = v % p
            k += 1

    wdigits = np.array([[w[l] % p for l in range(wlen)] for w in model.weights],
                       dtype=np.int64)
    wcodes = np.zeros(dim, dtype=np.int64)
    for l in range(wlen):
        wcodes = wcodes * p + wdigits[:, l]

    table = StructureTable(model, indptr, targets, coeffs, wcodes, wdigits, pairs)
    _TABLE_CACHE[model.name] = table
    return table


@njit(cache=True)
def _jacobi_kernel(dim, p, indptr, tg, cf):
    acc = np.zeros(dim, dtype=np.int64)
    touched = np.empty(dim, dtype=np.int64)
    first = np.int64(-1)
    bad = np.int64(0)
    checked = np.int64(0)
    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                checked += 1
                nt = 0
                # [i, [j, k]] - [j, [i, k]] + [k, [i, j]]
                for blk in range(3):
                    if blk == 0:
                        outer, lo, hi, sgn = i, indptr[j * dim + k], indptr[j * dim + k + 1], 1
                    elif blk == 1:
                        outer, lo, hi, sgn = j, indptr[i * dim + k], indptr[i * dim + k + 1], -1
                    else:
                        outer, lo, hi, sgn = k, indptr[i * dim + j], indptr[i * dim + j + 1], 1
                    for r in range(lo, hi):
                        e = tg[r]
                        v = cf[r] * sgn
                        lo2 = indptr[outer * dim + e]
                        hi2 = indptr[outer * dim + e + 1]
                        for r2 in range(lo2, hi2):
                            e2 = tg[r2]
                            if acc[e2] == 0:
                                touched[nt] = e2
                                nt += 1
                            acc[e2] += v * cf[r2]
                ok = True
                for r in range(nt):
                    e2 = touched[r]
                    if acc[e2] % p != 0:
                        ok = False
                    acc[e2] = 0
                if not ok:
                    bad += 1
                    if first < 0:
                        first = (np.int64(i) * dim + j) * dim + k
    return first, bad, checked


def jacobi_violations(table):
    """(first violating triple or None, violation count, triples checked)."""
    first, bad, checked = _jacobi_kernel(table.dim, table.p, table.indptr,
                                         table.targets, table.coeffs)
    if first < 0:
        return None, 0, int(checked)
    dim = table.dim
    k = int(first) % dim
    j = (int(first) // dim) % dim
    i = int(first) // (dim * dim)
    return (i, j, k), int(bad), int(checked)


def pair_value_table(cochain, corrupt=None):
    """CSR of an adjoint-valued 2-cochain over sorted-pair codes.

    corrupt=(i, j) adds 1 to one value entry, as a negative control for the
    closedness kernel.
    """
    model = cochain.model
    if cochain.module.monomials is None:
        raise ValueError("pair_value_table needs a monomial-valued cochain")
    pos = {mon: model.index[mon] for mon in cochain.module.monomials
           if mon in model.index}
    dim, p = model.dim, model.p
    indptr = np.zeros(dim * dim + 1, dtype=np.int64)
    ents = []
    for i in range(dim):
        base = i * dim
        for j in range(i + 1, dim):
            val = cochain.value_on((i, j))
            row = []
            for w, c in val.items():
                mon = cochain.module.monomials[w]
                t = pos.get(mon)
                if t is None:
                    raise ValueError("value at (%d, %d) leaves the algebra" % (i, j))
                row.append((t, c))
            if corrupt == (i, j):
                row.append((0, 1))
            indptr[base + j + 1] = len(row)
            ents.append(row)
    # prefix-sum the per-code lengths; lower-triangle codes stay empty, so
    # the sequential fill below lands every row at its own offset
    for code in range(dim * dim):
        indptr[code + 1] += indptr[code]
    targets = np.empty(indptr[-1], dtype=np.int64)
    coeffs = np.empty(indptr[-1], dtype=np.int64)
    k = 0
    for row in ents:
        for t, c in row:
            targets[k] = t
            coeffs[k] = c % p
            k += 1
    return indptr, targets, coeffs


@njit(cache=True)
def _closedness_kernel(dim, p, s_indptr, s_tg, s_cf, v_indptr, v_tg, v_cf,
                       wdig, wlen, restrict):
    # weight buckets: combined code -> positions, built inline
    nclasses = 1
    for _ in range(wlen):
        nclasses *= p
    wcode = np.zeros(dim, dtype=np.int64)
    for i in range(dim):
        for l in range(wlen):
            wcode[i] = wcode[i] * p + wdig[i, l]
    counts = np.zeros(nclasses + 1, dtype=np.int64)
    for i in range(dim):
        counts[wcode[i] + 1] += 1
    for c in range(nclasses):
        counts[c + 1] += counts[c]
    bucket = np.empty(dim, dtype=np.int64)
    fill = counts[:-1].copy()
    for i in range(dim):
        bucket[fill[wcode[i]]] = i
        fill[wcode[i]] += 1

    acc = np.zeros(dim, dtype=np.int64)
    touched = np.empty(dim, dtype=np.int64)
    first = np.int64(-1)
    bad = np.int64(0)
    checked = np.int64(0)

    for i in range(dim):
        for j in range(i + 1, dim):
            if restrict:
                need = np.int64(0)
                for l in range(wlen):
                    need = need * p + (p - (wdig[i, l] + wdig[j, l]) % p) % p
                lo_b, hi_b = counts[need], counts[need + 1]
            else:
                lo_b, hi_b = 0, dim
            for bpos in range(lo_b, hi_b):
                k = bucket[bpos] if restrict else bpos
                if k <= j:
                    continue
                checked += 1
                nt = 0
                # act terms: +[x_i, c(j,k)]  -[x_j, c(i,k)]  +[x_k, c(i,j)]
                for blk in range(3):
                    if blk == 0:
                        outer, a, b, sgn = i, j, k, 1
                    elif blk == 1:
                        outer, a, b, sgn = j, i, k, -1
                    else:
                        outer, a, b, sgn = k, i, j, 1
                    code = a * dim + b
                    for r in range(v_indptr[code], v_indptr[code + 1]):
                        e = v_tg[r]
                        v = v_cf[r] * sgn
                        code2 = outer * dim + e
                        for r2 in range(s_indptr[code2], s_indptr[code2 + 1]):
                            e2 = s_tg[r2]
                            if acc[e2] == 0:
                                touched[nt] = e2
                                nt += 1
                            acc[e2] += v * s_cf[r2]
                # bracket terms: -c([i,j], k)  +c([i,k], j)  -c([j,k], i)
                for blk in range(3):
                    if blk == 0:
                        a, b, u, sgn = i, j, k, -1
                    elif blk == 1:
                        a, b, u, sgn = i, k, j, 1
                    else:
                        a, b, u, sgn = j, k, i, -1
                    code = a * dim + b
                    for r in range(s_indptr[code], s_indptr[code + 1]):
                        e = s_tg[r]
                        v = s_cf[r] * sgn
                        if e == u:
                            continue
                        if e < u:
                            code2 = e * dim + u
                            flip = 1
                        else:
                            code2 = u * dim + e
                            flip = -1
                        for r2 in range(v_indptr[code2], v_indptr[code2 + 1]):
                            e2 = v_tg[r2]
                            if acc[e2] == 0:
                                touched[nt] = e2
                                nt += 1
                            acc[e2] += v * flip * v_cf[r2]
                ok = True
                for r in range(nt):
                    e2 = touched[r]
                    if acc[e2] % p != 0:
                        ok = False
                    acc[e2] = 0
                if not ok:
                    bad += 1
                    if first < 0:
                        first = (np.int64(i) * dim + j) * dim + k
    return first, bad, checked


def closedness_violations(cochain, weight_compatible_only=False, corrupt=None):
    """Scan d(cochain) over basis triples through the compiled kernel.

    With weight_compatible_only the sweep keeps only triples whose total
    torus weight is zero, cutting the count by p**(weight length).  That
    block is where d of a weight-zero cochain meets the weight-zero
    cohomology computations; it is a restriction, not a proof of global
    vanishing, so small instances are swept in full elsewhere.  The values
    must be weight-homogeneous of weight zero for the block to be well
    defined, and that is checked up front.

    Returns (first violating triple or None, violations, triples checked).
    """
    model = cochain.model
    table = structure_table(model)
    v_indptr, v_tg, v_cf = pair_value_table(cochain, corrupt=corrupt)
    wlen = table.weight_digits.shape[1]
    if weight_compatible_only:
        _require_weight_zero_values(table, v_indptr, v_tg)
    first, bad, checked = _closedness_kernel(
        table.dim, table.p, table.indptr, table.targets, table.coeffs,
        v_indptr, v_tg, v_cf, table.weight_digits, wlen,
        weight_compatible_only)
    if first < 0:
        return None, 0, int(checked)
    dim = table.dim
    k = int(first) % dim
    j = (int(first) // dim) % dim
    i = int(first) // (dim * dim)
    return (i, j, k), int(bad), int(checked)


def _require_weight_zero_values(table, v_indptr, v_tg):
    """The weight-compatible restriction is only exhaustive for cochains of
    torus weight zero; anything else must be swept in full."""
    dim, p = table.dim, table.p
    wd = table.weight_digits
    wlen = wd.shape[1]
    for code in range(dim * dim):
        lo, hi = v_indptr[code], v_indptr[code + 1]
        if lo == hi:
            continue
        i, j = code // dim, code % dim
        for r in range(lo, hi):
            t = v_tg[r]
            for l in range(wlen):
                if (wd[t, l] - wd[i, l] - wd[j, l]) % p:
                    raise ValueError(
                        "cochain is not weight-homogeneous of weight zero "
                        "at pair (%d, %d)" % (i, j))


# -- the n = 6 quadruple sweep ------------------------------------------------


def xi_sum_classes(n, p):
    """Exponent totals on which d of the conjugate-pair 3-cocycle can be
    nonzero: the support total plus one bracket pair, indexed by the
    unordered pair-index multiset {q, r}."""
    m = n // 2
    out = []
    for q in range(m):
        for r in range(q, m):
            V = [p - 1] * n
            for l in (q, q + m, r, r + m):
                V[l] += 1
            out.append((q, r, tuple(V)))
    return out


@njit(cache=True, parallel=True)
def _xi_kernel(p, V, q, r, digits, sums, sigma_code, a_lo, a_hi, negate01,
               leaves_out, viol_out, first_out):
    n = 6
    m = 3
    ncodes = digits.shape[0]
    vsum = 0
    for l in range(n):
        vsum += V[l]
    for a in prange(a_lo, a_hi):
        leaves = np.int64(0)
        viol = np.int64(0)
        first = np.int64(-1)
        ok_a = True
        for l in range(n):
            if digits[a, l] > V[l]:
                ok_a = False
                break
        if ok_a and a != 0:
            A0 = digits[a, 0]
            A1 = digits[a, 1]
            A2 = digits[a, 2]
            A3 = digits[a, 3]
            A4 = digits[a, 4]
            A5 = digits[a, 5]
            rest_after_a = vsum - sums[a]
            for b in range(a + 1, ncodes):
                # quick degree cut: c and d must each carry at least 1
                if sums[b] > rest_after_a - 2:
                    continue
                okb = True
                for l in range(n):
                    if digits[b, l] > V[l] - digits[a, l]:
                        okb = False
                        break
                if not okb:
                    continue
                B0 = digits[b, 0]
                B1 = digits[b, 1]
                B2 = digits[b, 2]
                B3 = digits[b, 3]
                B4 = digits[b, 4]
                B5 = digits[b, 5]
                R0 = V[0] - A0 - B0
                R1 = V[1] - A1 - B1
                R2 = V[2] - A2 - B2
                R3 = V[3] - A3 - B3
                R4 = V[4] - A4 - B4
                R5 = V[5] - A5 - B5
                # c runs over digits below R with b < c < d = R - c in the
                # little-endian code order; compare from the top digit down
                for c5 in range(max(0, R5 - (p - 1)), min(p - 1, R5) + 1):
                    d5 = R5 - c5
                    # state vs b: 0 tied, 1 greater
                    if c5 < B5:
                        continue
                    sb5 = 1 if c5 > B5 else 0
                    # state vs d: 0 tied, 1 c smaller
                    if c5 > d5:
                        continue
                    sd5 = 1 if c5 < d5 else 0
                    for c4 in range(max(0, R4 - (p - 1)), min(p - 1, R4) + 1):
                        d4 = R4 - c4
                        if sb5 == 0 and c4 < B4:
                            continue
                        sb4 = 1 if (sb5 == 1 or c4 > B4) else 0
                        if sd5 == 0 and c4 > d4:
                            continue
                        sd4 = 1 if (sd5 == 1 or c4 < d4) else 0
                        for c3 in range(max(0, R3 - (p - 1)), min(p - 1, R3) + 1):
                            d3 = R3 - c3
                            if sb4 == 0 and c3 < B3:
                                continue
                            sb3 = 1 if (sb4 == 1 or c3 > B3) else 0
                            if sd4 == 0 and c3 > d3:
                                continue
                            sd3 = 1 if (sd4 == 1 or c3 < d3) else 0
                            for c2 in range(max(0, R2 - (p - 1)), min(p - 1, R2) + 1):
                                d2 = R2 - c2
                                if sb3 == 0 and c2 < B2:
                                    continue
                                sb2 = 1 if (sb3 == 1 or c2 > B2) else 0
                                if sd3 == 0 and c2 > d2:
                                    continue
                                sd2 = 1 if (sd3 == 1 or c2 < d2) else 0
                                for c1 in range(max(0, R1 - (p - 1)), min(p - 1, R1) + 1):
                                    d1 = R1 - c1
                                    if sb2 == 0 and c1 < B1:
                                        continue
                                    sb1 = 1 if (sb2 == 1 or c1 > B1) else 0
                                    if sd2 == 0 and c1 > d1:
                                        continue
                                    sd1 = 1 if (sd2 == 1 or c1 < d1) else 0
                                    for c0 in range(max(0, R0 - (p - 1)), min(p - 1, R0) + 1):
                                        d0 = R0 - c0
                                        if sb1 == 0 and c0 <= B0:
                                            continue
                                        if sd1 == 0 and c0 >= d0:
                                            continue
                                        # leaf: strict b < c < d guaranteed
                                        ccode = ((((c5 * p + c4) * p + c3) * p + c2) * p + c1) * p + c0
                                        dcode = ((((d5 * p + d4) * p + d3) * p + d2) * p + d1) * p + d0
                                        if dcode == sigma_code:
                                            continue
                                        leaves += 1
                                        total = np.int64(0)
                                        # six (s, t) contractions
                                        for st in range(6):
                                            if st == 0:
                                                s0, s1, s2, s3, s4, s5 = A0, A1, A2, A3, A4, A5
                                                t0, t1, t2, t3, t4, t5 = B0, B1, B2, B3, B4, B5
                                                u0, u1, u2, u3, u4, u5 = c0, c1, c2, c3, c4, c5
                                                sgn = -1
                                            elif st == 1:
                                                s0, s1, s2, s3, s4, s5 = A0, A1, A2, A3, A4, A5
                                                t0, t1, t2, t3, t4, t5 = c0, c1, c2, c3, c4, c5
                                                u0, u1, u2, u3, u4, u5 = B0, B1, B2, B3, B4, B5
                                                sgn = 1
                                            elif st == 2:
                                                s0, s1, s2, s3, s4, s5 = A0, A1, A2, A3, A4, A5
                                                t0, t1, t2, t3, t4, t5 = d0, d1, d2, d3, d4, d5
                                                u0, u1, u2, u3, u4, u5 = B0, B1, B2, B3, B4, B5
                                                sgn = -1
                                            elif st == 3:
                                                s0, s1, s2, s3, s4, s5 = B0, B1, B2, B3, B4, B5
                                                t0, t1, t2, t3, t4, t5 = c0, c1, c2, c3, c4, c5
                                                u0, u1, u2, u3, u4, u5 = A0, A1, A2, A3, A4, A5
                                                sgn = -1
                                            elif st == 4:
                                                s0, s1, s2, s3, s4, s5 = B0, B1, B2, B3, B4, B5
                                                t0, t1, t2, t3, t4, t5 = d0, d1, d2, d3, d4, d5
                                                u0, u1, u2, u3, u4, u5 = A0, A1, A2, A3, A4, A5
                                                sgn = 1
                                            else:
                                                s0, s1, s2, s3, s4, s5 = c0, c1, c2, c3, c4, c5
                                                t0, t1, t2, t3, t4, t5 = d0, d1, d2, d3, d4, d5
                                                u0, u1, u2, u3, u4, u5 = A0, A1, A2, A3, A4, A5
                                                sgn = -1
                                            if negate01 and st == 0:
                                                sgn = -sgn
                                            # only the first two arguments of
                                            # the contraction enter the minor,
                                            # so the third one never appears
                                            for lq in range(2):
                                                l = q if lq == 0 else r
                                                if lq == 1 and r == q:
                                                    break
                                                if l == 0:
                                                    sl, slc, tl, tlc = s0, s3, t0, t3
                                                elif l == 1:
                                                    sl, slc, tl, tlc = s1, s4, t1, t4
                                                else:
                                                    sl, slc, tl, tlc = s2, s5, t2, t5
                                                bco = sl * tlc - slc * tl
                                                if bco % p == 0:
                                                    continue
                                                e0 = s0 + t0
                                                e1 = s1 + t1
                                                e2 = s2 + t2
                                                e3 = s3 + t3
                                                e4 = s4 + t4
                                                e5 = s5 + t5
                                                if l == 0:
                                                    e0 -= 1
                                                    e3 -= 1
                                                elif l == 1:
                                                    e1 -= 1
                                                    e4 -= 1
                                                else:
                                                    e2 -= 1
                                                    e5 -= 1
                                                if (e0 > p - 1 or e1 > p - 1 or e2 > p - 1
                                                        or e3 > p - 1 or e4 > p - 1 or e5 > p - 1):
                                                    continue
                                                tot_e = e0 + e1 + e2 + e3 + e4 + e5
                                                if tot_e == 0 or tot_e == 6 * (p - 1):
                                                    continue  # constants and the top die in the quotient
                                                k0 = r if l == q else q
                                                if k0 == 0:
                                                    minor = e0 * u3 - e3 * u0
                                                elif k0 == 1:
                                                    minor = e1 * u4 - e4 * u1
                                                else:
                                                    minor = e2 * u5 - e5 * u2
                                                total += sgn * bco * minor
                                        if total % p != 0:
                                            viol += 1
                                            if first < 0:
                                                first = ((np.int64(a) * ncodes + b) * ncodes
                                                         + ccode) * ncodes + dcode
        leaves_out[a] = leaves
        viol_out[a] = viol
        first_out[a] = first


def _digit_tables(p, n):
    ncodes = p ** n
    digits = np.empty((ncodes, n), dtype=np.int64)
    for code in range(ncodes):
        c = code
        for l in range(n):
            digits[code, l] = c % p
            c //= p
    sums = digits.sum(axis=1)
    return digits, sums


def xi_quadruple_scan(p, V, q, r, a_code=None, negate01=False):
    """Sweep d(Xi) over all strictly sorted quadruples with total V.

    Restricting to this total is exhaustive: every contraction term of d
    vanishes elsewhere because the cocycle is supported on one exponent
    class.  a_code pins the smallest argument, which the pure-Python twin
    uses for slice-by-slice cross-checks.

    Returns (violations, leaves, first violating quadruple codes or None).
    """
    digits, sums = _digit_tables(p, 6)
    ncodes = digits.shape[0]
    sigma_code = ncodes - 1
    Varr = np.array(V, dtype=np.int64)
    a_lo, a_hi = (1, ncodes - 1) if a_code is None else (a_code, a_code + 1)
    leaves_out = np.zeros(ncodes, dtype=np.int64)
    viol_out = np.zeros(ncodes, dtype=np.int64)
    first_out = np.full(ncodes, -1, dtype=np.int64)
    _xi_kernel(p, Varr, q, r, digits, sums, sigma_code, a_lo, a_hi,
               negate01, leaves_out, viol_out, first_out)
    viol = int(viol_out.sum())
    leaves = int(leaves_out.sum())
    first = None
    hits = np.flatnonzero(first_out >= 0)
    if hits.size:
        code = int(first_out[hits[0]])
        parts = []
        for _ in range(4):
            parts.append(code % ncodes)
            code //= ncodes
        first = tuple(reversed(parts))
    return viol, leaves, first
