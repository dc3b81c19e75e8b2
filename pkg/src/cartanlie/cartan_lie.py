"""The graded contact and hamiltonian Lie algebra families over F_p.

Both families live inside the truncated ring A = F_p[x_1..x_n]/(x_i^p):

* hamiltonian, n = 2m even: the Poisson pairing {f, g} over the 2m paired
  axes.  The full quotient A / constants is tagged "Hprime"; the simple
  algebra "H" also omits the top monomial x^tau, whose bracket coefficient
  vanishes identically (asserted at every bracket, never assumed).
* contact, n = 2m + 1 odd: the pairing over the first 2m axes plus a
  contact correction through the last variable,
      [f, g] = {f, g} + f_n * deg(g) - g_n * deg(f)  applied at x^(a+b-e_n),
  with deg the contact grading |a| + a_n - 2.  "Kprime" is all of A; the
  simple algebra "K" omits x^tau exactly when p divides m + 2, otherwise it
  equals Kprime.

Grading: contact monomials sit in degree |a| + a_n - 2, hamiltonian ones in
|a| - 2.  The torus is spanned by x_i*x_{i'} (and x_n in the contact case);
weights are the eigenvalue tuples (a_{i+m} - a_i mod p, ...), with the
grading degree mod p appended for the contact family.

Models are built once and treated as frozen: basis order is the flat
mixed-radix order of multiindex, so runs are reproducible.  The pairwise
structure-constant table is sealed lazily and refused above 4000 basis
elements; brackets themselves stay lazy so even the largest contact models
answer dimension and spot-check queries without a table.
"""

from . import multiindex as mi
from .fp_linalg import BudgetExceeded, SparseMatrixFp, rank
from .truncated_algebra import AlgebraElement, dh_term

FAMILIES = ("K", "Kprime", "H", "Hprime")
_PAIR_TABLE_LIMIT = 4000


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _check_params(family, p, n):
    if family not in FAMILIES:
        raise ValueError("unknown family %r, want one of %s" % (family, ", ".join(FAMILIES)))
    if not is_prime(p) or p < 5:
        raise ValueError("p=%d rejected: need a prime >= 5" % p)
    if family in ("K", "Kprime"):
        if n < 3 or n % 2 == 0:
            raise ValueError("contact family needs odd n >= 3, got n=%d" % n)
    else:
        if n < 2 or n % 2:
            raise ValueError("hamiltonian family needs even n >= 2, got n=%d" % n)


class LieAlgebraModel:
    """One member of a family at fixed (p, n), with its graded monomial basis.

    min_degree cuts the basis down to the non-negative part when set; the
    bracket code is shared since the grading is additive.
    """

    __slots__ = (
        "family", "p", "n", "m", "min_degree", "basis", "index",
        "degrees", "weights", "_pair_table", "_rev_table", "_excluded_top",
    )

    def __init__(self, family, p, n, min_degree=None):
        _check_params(family, p, n)
        self.family = family
        self.p = p
        self.n = n
        self.m = n // 2
        self.min_degree = min_degree

        top = mi.tau(n, p)
        if family == "H":
            skip = {mi.zero(n), top}
        elif family == "Hprime":
            skip = {mi.zero(n)}
        elif family == "K" and p % (self.m + 2) == 0:
            skip = {top}
        else:
            skip = set()
        # brackets must never leak onto these; checked on every evaluation
        self._excluded_top = top if top in skip else None

        self.basis = []
        self.index = {}
        self.degrees = []
        self.weights = []
        for a in mi.iter_box(n, p):
            if a in skip:
                continue
            d = self._degree_of(a)
            if min_degree is not None and d < min_degree:
                continue
            self.index[a] = len(self.basis)
            self.basis.append(a)
            self.degrees.append(d)
            self.weights.append(self._weight_of(a))
        self._pair_table = None
        self._rev_table = None

    # -- static data ---------------------------------------------------

    @property
    def dim(self):
        return len(self.basis)

    @property
    def is_contact(self):
        return self.family in ("K", "Kprime")

    @property
    def name(self):
        tag = "%s(%d)|p=%d" % (self.family, self.n, self.p)
        if self.min_degree is not None:
            tag += "|deg>=%d" % self.min_degree
        return tag

    def _degree_of(self, a):
        d = sum(a) - 2
        return d + a[-1] if self.is_contact else d

    def _weight_of(self, a):
        p, m = self.p, self.m
        w = tuple((a[m + i] - a[i]) % p for i in range(m))
        if self.is_contact:
            w += (self._degree_of(a) % p,)
        return w

    def __repr__(self):
        return "<LieAlgebraModel %s dim=%d>" % (self.name, self.dim)

    # -- bracket -------------------------------------------------------

    def bracket_raw(self, a, b):
        """[x^a, x^b] as exponent -> coeff over the full box, then projected
        to this model's span.  Raises on a genuine closure violation."""
        p = self.p
        out = dh_term(a, b, p, self.m)
        if self.is_contact:
            last = self.n - 1
            c = (a[last] * self._degree_of(b) - b[last] * self._degree_of(a)) % p
            if c and (a[last] + b[last]) >= 1:
                e = list(mi.add(a, b))
                e[last] -= 1
                if all(x < p for x in e):
                    e = tuple(e)
                    w = (out.get(e, 0) + c) % p
                    if w:
                        out[e] = w
                    elif e in out:
                        del out[e]
        if self.family in ("H", "Hprime"):
            out.pop(mi.zero(self.n), None)  # the quotient by constants
        if self._excluded_top is not None and out.pop(self._excluded_top, 0):
            raise RuntimeError(
                "closure violation: [%r, %r] hit the omitted top monomial in %s"
                % (a, b, self.name)
            )
        return out

    def bracket_coords(self, i, j):
        """Structure constants [e_i, e_j] as ((k, coeff), ...); i, j, k are
        basis positions.  Cached pairwise once the table is sealed."""
        if self._pair_table is not None:
            if i == j:
                return ()
            if i < j:
                return self._pair_table.get((i, j), ())
            return tuple((k, self.p - v) for k, v in self._pair_table.get((j, i), ()))
        raw = self.bracket_raw(self.basis[i], self.basis[j])
        return tuple(sorted((self.index[e], v) for e, v in raw.items()))

    def pair_table(self):
        """Seal and return the full i < j structure table."""
        if self._pair_table is None:
            if self.dim > _PAIR_TABLE_LIMIT:
                raise BudgetExceeded(
                    "structure table for %s (dim %d) is too large; "
                    "use the lazy bracket instead" % (self.name, self.dim)
                )
            table = {}
            for i in range(self.dim):
                ai = self.basis[i]
                for j in range(i + 1, self.dim):
                    raw = self.bracket_raw(ai, self.basis[j])
                    if raw:
                        table[(i, j)] = tuple(
                            sorted((self.index[e], v) for e, v in raw.items())
                        )
            self._pair_table = table
        return self._pair_table

    def reverse_table(self):
        """k -> sorted ((i, j, coeff), ...) with i < j and [e_i, e_j] hitting
        e_k; the transpose view of the structure table that differential
        assembly walks."""
        if self._rev_table is None:
            rev = {}
            for (i, j), hits in self.pair_table().items():
                for k, v in hits:
                    rev.setdefault(k, []).append((i, j, v))
            self._rev_table = {k: tuple(sorted(rows)) for k, rows in rev.items()}
        return self._rev_table


def lie_algebra(family, p, n):
    return LieAlgebraModel(family, p, n)


def nonneg_part(model):
    """The degree >= 0 subalgebra as a model of its own."""
    return LieAlgebraModel(model.family, model.p, model.n, min_degree=0)


# -- public structural queries ------------------------------------------


def basis(model):
    return list(model.basis)


def graded_degree(model, a):
    a = tuple(a)
    if a not in model.index:
        raise ValueError("%r is not a basis monomial of %s" % (a, model.name))
    return model.degrees[model.index[a]]


def torus_weight(model, a):
    a = tuple(a)
    if a not in model.index:
        raise ValueError("%r is not a basis monomial of %s" % (a, model.name))
    return model.weights[model.index[a]]


def graded_component(model, d):
    return [i for i, deg in enumerate(model.degrees) if deg == d]


def degree_range(model):
    return min(model.degrees), max(model.degrees)


def cartan_decomposition(model):
    """weight -> sorted basis positions; the zero weight is the Cartan part."""
    out = {}
    for i, w in enumerate(model.weights):
        out.setdefault(w, []).append(i)
    return out


def bracket(model, a, b):
    """[x^a, x^b] as an algebra element; a, b must be basis monomials."""
    if isinstance(a, AlgebraElement) or isinstance(b, AlgebraElement):
        return bracket_poly(model, _as_element(model, a), _as_element(model, b))
    a, b = tuple(a), tuple(b)
    for e in (a, b):
        if e not in model.index:
            raise ValueError("%r is not a basis monomial of %s" % (e, model.name))
    return AlgebraElement(model.p, model.n, model.bracket_raw(a, b))


def _as_element(model, x):
    if isinstance(x, AlgebraElement):
        if x.p != model.p or x.n != model.n:
            raise ValueError("element context does not match %s" % model.name)
        return x
    return AlgebraElement.monomial(model.p, model.n, tuple(x))


def bracket_poly(model, f, g):
    """Bilinear extension of the bracket to sums of basis monomials."""
    f, g = _as_element(model, f), _as_element(model, g)
    out = AlgebraElement.zero(model.p, model.n)
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            if a not in model.index or b not in model.index:
                raise ValueError("term outside the span of %s" % model.name)
            raw = model.bracket_raw(a, b)
            out = out + AlgebraElement(model.p, model.n, {e: ca * cb * v for e, v in raw.items()})
    return out


def commutator_span(model, d1, d2):
    """Span of [g_{d1}, g_{d2}] inside g_{d1+d2}.

    Returns {"degree", "dim", "component_dim"}; equality of the two dims is
    the surjectivity statement the verification suite checks.
    """
    comp1 = graded_component(model, d1)
    comp2 = graded_component(model, d2)
    target = graded_component(model, d1 + d2)
    pos = {k: r for r, k in enumerate(target)}
    ents = []
    col = 0
    for i in comp1:
        for j in comp2:
            if i == j:
                continue
            hits = model.bracket_coords(i, j)
            if hits:
                for k, v in hits:
                    ents.append((pos[k], col, v))
                col += 1
    M = SparseMatrixFp(len(target), col, model.p, ents)
    return {"degree": d1 + d2, "dim": rank(M), "component_dim": len(target)}


def full_commutator_dim(model):
    """dim [g, g], via the rank of every pairwise bracket at once."""
    ents = []
    col = 0
    for (i, j), hits in model.pair_table().items():
        for k, v in hits:
            ents.append((k, col, v))
        col += 1
    return rank(SparseMatrixFp(model.dim, col, model.p, ents))


def structure_constants_entries(model):
    """(i, j, k, coeff) rows of the sealed i < j table, in order."""
    table = model.pair_table()
    for (i, j) in sorted(table):
        for k, v in table[(i, j)]:
            yield i, j, k, v


def structure_constants_json(model):
    table = model.pair_table()
    return {
        "schema": 1,
        "family": model.family,
        "p": model.p,
        "n": model.n,
        "dim": model.dim,
        "basis": [mi.unparse(a) for a in model.basis],
        "brackets": [
            [i, j, [[k, v] for k, v in table[(i, j)]]] for (i, j) in sorted(table)
        ],
    }


# -- coefficient modules -------------------------------------------------


class CoefficientModule:
    """A finite-dimensional module over one model, presented on a labeled
    basis with the action of algebra basis elements given coordinatewise.

    kind is one of adjoint | ambient | functions | trivial | trivial-top |
    character; see the constructors below for what acts how.
    """

    __slots__ = (
        "kind", "model", "labels", "index", "degrees", "weights",
        "monomials", "_act", "_cache",
    )

    def __init__(self, kind, model, labels, degrees, weights, act, monomials=None):
        self.kind = kind
        self.model = model
        self.labels = labels
        self.index = {lab: w for w, lab in enumerate(labels)}
        self.degrees = degrees
        self.weights = weights
        self.monomials = monomials
        self._act = act
        self._cache = {}

    @property
    def dim(self):
        return len(self.labels)

    @property
    def name(self):
        return self.kind

    def __repr__(self):
        return "<CoefficientModule %s over %s dim=%d>" % (self.kind, self.model.name, self.dim)

    def act_on_basis(self, i, w):
        """x_i . e_w as ((w', coeff), ...); cached per pair."""
        key = (i, w)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache[key] = tuple(self._act(i, w))
        return hit

    def act(self, i, vec):
        """x_i . vec for a sparse module vector {coord: coeff}."""
        p = self.model.p
        out = {}
        for w, c in vec.items():
            for w2, v in self.act_on_basis(i, w):
                acc = (out.get(w2, 0) + c * v) % p
                if acc:
                    out[w2] = acc
                elif w2 in out:
                    del out[w2]
        return out

    def label_text(self, w):
        """Human-readable name of a module coordinate, for reports."""
        if self.monomials is not None:
            return mi.unparse(self.monomials[w])
        return "1"


def adjoint_module(model):
    def act(i, w):
        return model.bracket_coords(i, w)

    return CoefficientModule(
        "adjoint", model, list(range(model.dim)),
        list(model.degrees), list(model.weights), act, monomials=model.basis,
    )


def ambient_module(model):
    """The containing algebra as a module: Kprime over K, Hprime over H.

    The action is the ambient bracket, so monomials excluded from the simple
    algebra reappear here as module coordinates.
    """
    if model.min_degree is not None:
        raise ValueError("ambient module over a truncated model is not defined")
    amb_family = "Kprime" if model.is_contact else "Hprime"
    amb = LieAlgebraModel(amb_family, model.p, model.n)

    def act(i, w):
        raw = amb.bracket_raw(model.basis[i], amb.basis[w])
        return sorted((amb.index[e], v) for e, v in raw.items())

    return CoefficientModule(
        "ambient", model, list(range(amb.dim)),
        list(amb.degrees), list(amb.weights), act, monomials=amb.basis,
    )


def functions_module(model):
    """The whole truncated ring A as a module over a hamiltonian model, the
    action being the Poisson pairing with nothing quotiented away."""
    if model.is_contact or model.min_degree is not None:
        raise ValueError("functions module is defined over full hamiltonian models")
    p, n, m = model.p, model.n, model.m
    box = list(mi.iter_box(n, p))
    pos = {a: w for w, a in enumerate(box)}
    degs = [sum(a) - 2 for a in box]
    wts = [tuple((a[m + i] - a[i]) % p for i in range(m)) for a in box]

    def act(i, w):
        raw = dh_term(model.basis[i], box[w], p, m)
        return sorted((pos[e], v) for e, v in raw.items())

    return CoefficientModule("functions", model, list(range(len(box))), degs, wts, act, monomials=box)


def trivial_module(model):
    zero_w = (0,) * (model.m + 1 if model.is_contact else model.m)
    return CoefficientModule("trivial", model, [0], [0], [zero_w], lambda i, w: ())


def span_top_module(model):
    """The one-dimensional span of the top monomial, with trivial action."""
    top = mi.tau(model.n, model.p)
    zero_w = (0,) * (model.m + 1 if model.is_contact else model.m)
    deg = sum(top) - 2 + (top[-1] if model.is_contact else 0)
    return CoefficientModule("trivial-top", model, [top], [deg], [zero_w], lambda i, w: (), monomials=[top])


def character_module(model):
    """The contact character that sends the grading monomial x_n to -2.

    Only defined over the non-negative contact part: there x_n never lies in
    the derived subalgebra, so scaling by the character is a Lie action.
    """
    if not model.is_contact or model.min_degree != 0:
        raise ValueError("character module lives over the non-negative contact part")
    p = model.p
    xn = mi.unit(model.n - 1, model.n)
    xn_pos = model.index[xn]
    wt = (0,) * model.m + ((-2) % p,)

    def act(i, w):
        return (((0, (p - 2)),) if i == xn_pos else ())

    return CoefficientModule("character", model, [0], [0], [wt], act)


def module_by_name(name, model):
    makers = {
        "adjoint": adjoint_module,
        "ambient": ambient_module,
        "functions": functions_module,
        "trivial": trivial_module,
        "trivial-top": span_top_module,
        "character": character_module,
    }
    if name not in makers:
        raise ValueError("unknown coefficient module %r, want one of %s" % (name, ", ".join(sorted(makers))))
    return makers[name](model)


def module_action(module, a, vec):
    """Action of the basis monomial x^a on a sparse module vector."""
    a = tuple(a)
    if a not in module.model.index:
        raise ValueError("%r is not a basis monomial of %s" % (a, module.model.name))
    return module.act(module.model.index[a], vec)
