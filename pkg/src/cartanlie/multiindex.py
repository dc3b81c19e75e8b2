"""Exponent-vector bookkeeping for truncated polynomial algebras.

A multi-index is a plain tuple of ints, each entry in [0, p-1]; it stands for
the monomial x_1^{a_1} * ... * x_n^{a_n} in F_p[x_1..x_n] / (x_i^p).  The
conventions used everywhere in this package:

* positions are 0-based in code and 1-based in user-facing text ("2,0,1" is
  the monomial x1^2*x3);
* symplectic machinery assumes the first 2m positions are paired, position j
  with j' = j + m (j < m) or j - m (j >= m); the sign of position j is +1 on
  the first half and -1 on the second;
* the contact family carries one extra trailing position that never enters
  the pairing.

Everything here is context-free arithmetic on tuples: p and m are passed in,
nothing is cached or global.  Scalars are plain ints; values mod p are kept
in [0, p).
"""

from itertools import product


def degree(a):
    return sum(a)


def zero(n):
    return (0,) * n


def unit(i, n):
    """The i-th coordinate vector (0-based i)."""
    if not 0 <= i < n:
        raise IndexError("unit index %d out of range for n=%d" % (i, n))
    return tuple(1 if j == i else 0 for j in range(n))


def tau(n, p):
    """Largest exponent vector in the box, (p-1, ..., p-1)."""
    return (p - 1,) * n


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def subtract(a, b):
    """Entrywise a - b; entries may go negative, callers must check."""
    return tuple(x - y for x, y in zip(a, b))


def dominated_by(b, a):
    """True iff b <= a entrywise.  Strict domination is (<= and !=)."""
    return all(x <= y for x, y in zip(b, a)) and len(a) == len(b)


def in_box(a, p):
    return all(0 <= x <= p - 1 for x in a)


def factorial(a, p):
    """Product of the entrywise factorials, mod p.  Entries must be < p."""
    out = 1
    for x in a:
        if not 0 <= x < p:
            raise ValueError("entry %d outside [0, p)" % x)
        for k in range(2, x + 1):
            out = out * k % p
    return out


def binom(a, b, p):
    """Product of entrywise binomial coefficients C(a_i, b_i), mod p.

    Raises ValueError when b is not dominated by a; with both inside the box
    no Lucas reduction is needed and the product is never spuriously zero.
    """
    if len(a) != len(b):
        raise ValueError("length mismatch %d vs %d" % (len(a), len(b)))
    if not all(0 <= y <= x for x, y in zip(a, b)):
        raise ValueError("binom(%r, %r): lower index not dominated" % (a, b))
    out = 1
    for x, y in zip(a, b):
        num, den = 1, 1
        for k in range(y):
            num = num * (x - k) % p
            den = den * (k + 1) % p
        out = out * num * pow(den, p - 2, p) % p
    return out


def index_sign(j, m):
    """Sign of a single paired position: +1 for j < m, -1 for m <= j < 2m."""
    if not 0 <= j < 2 * m:
        raise IndexError("position %d outside the paired range" % j)
    return 1 if j < m else -1


def conjugate_index(j, m):
    """The partner position j': j+m on the first half, j-m on the second."""
    if not 0 <= j < 2 * m:
        raise IndexError("position %d outside the paired range" % j)
    return j + m if j < m else j - m


def sign_of(a, m):
    """Product of position signs with multiplicity, so (-1)**(second half)."""
    if len(a) != 2 * m:
        raise ValueError("sign_of needs a paired vector of length 2m")
    return -1 if sum(a[m:]) % 2 else 1


def conjugate(a, m=None):
    """Swap the two halves of a paired vector.  An involution."""
    if m is None:
        if len(a) % 2:
            raise ValueError("cannot conjugate an odd-length vector")
        m = len(a) // 2
    elif len(a) != 2 * m:
        raise ValueError("conjugate needs length 2m, got %d" % len(a))
    return a[m:] + a[:m]


def flat_index(a, p):
    """Mixed-radix code of a, little-endian: sum a_i * p**i.

    The box enumerates as codes 0 .. p**n - 1; code 0 is the constant
    monomial and the top code is tau.  Distinguished monomials therefore sit
    at the extreme codes, which keeps basis compaction trivial.
    """
    code = 0
    for x in reversed(a):
        code = code * p + x
    return code


def from_flat(code, n, p):
    out = []
    for _ in range(n):
        code, r = divmod(code, p)
        out.append(r)
    if code:
        raise ValueError("code does not fit in a length-%d box" % n)
    return tuple(out)


def iter_box(n, p):
    """All exponent vectors in flat-index order (position == flat_index)."""
    for rev in product(range(p), repeat=n):
        yield rev[::-1]


def parse(text, n=None):
    """Read "a1,a2,...,an" into a tuple; entries must be non-negative ints."""
    parts = [s.strip() for s in text.split(",")]
    try:
        a = tuple(int(s) for s in parts)
    except ValueError:
        raise ValueError("bad multi-index %r, want comma-separated ints" % text)
    if any(x < 0 for x in a):
        raise ValueError("bad multi-index %r, entries must be >= 0" % text)
    if n is not None and len(a) != n:
        raise ValueError("multi-index %r has %d entries, want %d" % (text, len(a), n))
    return a


def unparse(a):
    return ",".join(str(x) for x in a)
