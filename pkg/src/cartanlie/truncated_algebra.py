"""The truncated polynomial ring A = F_p[x_1, ..., x_n] / (x_1^p, ..., x_n^p).

A is a p^n-dimensional commutative algebra with monomial basis indexed by the
exponent box of multiindex.  Because d/dx_i kills x_i^p in characteristic p,
the truncation ideal is differentially stable and every derivation formula
below is exact on A, not just up to truncation error.

Elements are value-like: arithmetic returns fresh objects, terms dicts are
never shared.  The text form is "3*x1^2*x2 + x3" with terms sorted by
exponent tuple; "0" is the zero element.
"""

import re

from . import multiindex as mi


class AlgebraElement:
    """Sparse element of A: terms maps exponent tuples to coeffs in [1, p)."""

    __slots__ = ("p", "n", "terms")

    def __init__(self, p, n, terms=None):
        self.p = p
        self.n = n
        clean = {}
        for a, c in (terms or {}).items():
            if len(a) != n:
                raise ValueError("exponent %r has wrong length for n=%d" % (a, n))
            if not mi.in_box(a, p):
                raise ValueError("exponent %r outside the box for p=%d" % (a, p))
            c %= p
            if c:
                clean[tuple(a)] = c
        self.terms = clean

    @classmethod
    def zero(cls, p, n):
        return cls(p, n)

    @classmethod
    def one(cls, p, n):
        return cls(p, n, {mi.zero(n): 1})

    @classmethod
    def monomial(cls, p, n, a, coeff=1):
        return cls(p, n, {tuple(a): coeff})

    def is_zero(self):
        return not self.terms

    def _check_context(self, other):
        if self.p != other.p or self.n != other.n:
            raise ValueError(
                "context mismatch: (p=%d, n=%d) vs (p=%d, n=%d)"
                % (self.p, self.n, other.p, other.n)
            )

    def __add__(self, other):
        self._check_context(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            w = (out.get(a, 0) + c) % self.p
            if w:
                out[a] = w
            elif a in out:
                del out[a]
        return AlgebraElement(self.p, self.n, out)

    def __neg__(self):
        return AlgebraElement(self.p, self.n, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return AlgebraElement(self.p, self.n, {a: v * c for a, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return multiply(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.p == other.p
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.p, self.n, frozenset(self.terms.items())))

    def __repr__(self):
        return "<%s mod %d>" % (format_poly(self), self.p)


def mul_term(a, b, p):
    """Exponent of x^a * x^b, or None when the product truncates to zero."""
    out = mi.add(a, b)
    return out if all(x < p for x in out) else None


def multiply(f, g):
    f._check_context(g)
    p, n = f.p, f.n
    out = {}
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            e = mul_term(a, b, p)
            if e is None:
                continue
            w = (out.get(e, 0) + ca * cb) % p
            if w:
                out[e] = w
            elif e in out:
                del out[e]
    return AlgebraElement(p, n, out)


def partial_term(a, i):
    """d/dx_i on a monomial: (multiplier, shifted exponent), or None at zero."""
    if not a[i]:
        return None
    return a[i], a[:i] + (a[i] - 1,) + a[i + 1:]


def partial(f, i):
    if not 0 <= i < f.n:
        raise IndexError("axis %d out of range for n=%d" % (i, f.n))
    out = {}
    for a, c in f.terms.items():
        hit = partial_term(a, i)
        if hit:
            mult, e = hit
            w = (out.get(e, 0) + c * mult) % f.p
            if w:
                out[e] = w
            elif e in out:
                del out[e]
    return AlgebraElement(f.p, f.n, out)


def dh_term(a, b, p, m):
    """Poisson pairing of two monomials over the first 2m axes.

    Returns exponent -> coeff for sum_j sign(j) * D_j(x^a) * D_j'(x^b),
    truncated to the box.  Axes past 2m (the contact extra variable) do not
    participate, but the exponent tuples keep their full length.
    """
    out = {}
    for j in range(2 * m):
        aj = a[j]
        if not aj:
            continue
        jc = j + m if j < m else j - m
        bjc = b[jc]
        if not bjc:
            continue
        e = list(a)
        e[j] -= 1
        for k in range(len(b)):
            e[k] += b[k]
        e[jc] -= 1
        if any(x >= p for x in e):
            continue
        e = tuple(e)
        c = aj * bjc if j < m else -aj * bjc
        w = (out.get(e, 0) + c) % p
        if w:
            out[e] = w
        elif e in out:
            del out[e]
    return out


def hamiltonian_apply(f, g):
    """Apply the Hamiltonian vector field of f to g.

    The pairing runs over the first 2m axes with m = n // 2; for odd n the
    trailing axis rides along untouched, which is the contact convention.
    """
    f._check_context(g)
    p, n = f.p, f.n
    m = n // 2
    out = {}
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            for e, c in dh_term(a, b, p, m).items():
                w = (out.get(e, 0) + ca * cb * c) % p
                if w:
                    out[e] = w
                elif e in out:
                    del out[e]
    return AlgebraElement(p, n, out)


_FACTOR_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_poly(text, n, p):
    """Read "3*x1^2*x2 + x3" into an element; variables are 1-based.

    A factor with exponent >= p denotes zero in A and drops out, same as the
    ring's own truncation.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    if s == "0":
        return AlgebraElement.zero(p, n)
    s = re.sub(r"(?<=[^+\-*^])-", "+-", s)
    out = AlgebraElement.zero(p, n)
    for chunk in s.split("+"):
        if not chunk:
            raise ValueError("bad polynomial %r" % text)
        sign = 1
        while chunk.startswith("-"):
            sign = -sign
            chunk = chunk[1:]
        factors = chunk.split("*")
        coeff = sign
        if factors[0].isdigit():
            coeff *= int(factors.pop(0))
            if not factors and "*" in chunk:
                raise ValueError("bad term %r in %r" % (chunk, text))
        a = [0] * n
        for tok in factors:
            hit = _FACTOR_RE.match(tok)
            if not hit:
                raise ValueError("bad factor %r in %r" % (tok, text))
            k = int(hit.group(1))
            if not 1 <= k <= n:
                raise ValueError("variable x%d out of range for n=%d" % (k, n))
            a[k - 1] += int(hit.group(2) or 1)
        if any(x >= p for x in a):
            continue
        out = out + AlgebraElement.monomial(p, n, tuple(a), coeff)
    return out


def format_term(a, c):
    factors = []
    for i, e in enumerate(a):
        if e == 1:
            factors.append("x%d" % (i + 1))
        elif e > 1:
            factors.append("x%d^%d" % (i + 1, e))
    if not factors:
        return str(c)
    body = "*".join(factors)
    return body if c == 1 else "%d*%s" % (c, body)


def format_poly(f):
    if not f.terms:
        return "0"
    return " + ".join(format_term(a, f.terms[a]) for a in sorted(f.terms))
