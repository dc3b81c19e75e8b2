"""Dense Chevalley-Eilenberg differential, straight from the definition.

Deliberately naive: the matrix of d is assembled block by block from the
alternating-sum formula, with signs obtained by counting inversions rather
than by the insertion bookkeeping the package uses.  Disagreement with the
sparse assembly on any entry is a bug in one of the two.
"""

from itertools import combinations

import numpy as np

from _dense_oracle import dense_rank


def _action_matrix(model, module, z):
    A = np.zeros((module.dim, module.dim), dtype=np.int64)
    for w in range(module.dim):
        for w2, v in module.act_on_basis(z, w):
            A[w2, w] += v
    return A


def dense_differential(model, module, k):
    """Matrix of d_k: rows over C^{k+1} coordinates, columns over C^k.

    Coordinates are ordered tuple-major (combinations order), module-minor,
    matching the package's unfiltered CochainSpace enumeration.
    """
    p = model.p
    md = module.dim
    tuples_k = list(combinations(range(model.dim), k))
    tuples_k1 = list(combinations(range(model.dim), k + 1))
    col_of = {T: i * md for i, T in enumerate(tuples_k)}
    D = np.zeros((len(tuples_k1) * md, len(tuples_k) * md), dtype=np.int64)
    act = {z: _action_matrix(model, module, z) for z in range(model.dim)}
    eye = np.eye(md, dtype=np.int64)

    for r, U in enumerate(tuples_k1):
        row = r * md
        for s in range(k + 1):
            rest = U[:s] + U[s + 1:]
            # action term: (-1)^s  u_s . c(U without slot s)
            sign = -1 if s % 2 else 1
            D[row:row + md, col_of[rest]:col_of[rest] + md] += sign * act[U[s]]
            for t in range(s + 1, k + 1):
                both = U[:s] + U[s + 1:t] + U[t + 1:]
                pair_sign = -1 if (s + t) % 2 else 1
                for y, v in model.bracket_coords(U[s], U[t]):
                    if y in both:
                        continue
                    args = (y,) + both
                    order = sorted(range(k), key=lambda i: args[i])
                    inversions = sum(
                        1
                        for i in range(k)
                        for j in range(i + 1, k)
                        if order[i] > order[j]
                    )
                    sgn = -1 if inversions % 2 else 1
                    T = tuple(args[i] for i in order)
                    c0 = col_of[T]
                    D[row:row + md, c0:c0 + md] += pair_sign * sgn * v * eye
    return D % p


def dense_h_dim(model, module, k):
    """dim H^k over the full unfiltered complex, by two dense ranks."""
    Dk = dense_differential(model, module, k)
    rank_k = dense_rank(Dk, model.p)
    rank_below = 0
    if k > 0:
        rank_below = dense_rank(dense_differential(model, module, k - 1), model.p)
    return Dk.shape[1] - rank_k - rank_below
