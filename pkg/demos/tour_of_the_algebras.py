"""A first walk through the two algebra families.

Builds the contact algebra K(3) and the Hamiltonian algebra H(2) over F_5,
prints the numbers that identify them, and exercises the bracket on the
generators that matter later: the depth piece, the torus, and the top.
"""

from cartanlie import cartan_lie as cl
from cartanlie.truncated_algebra import format_poly


def banner(text):
    print()
    print(text)
    print("-" * len(text))


def describe(model):
    lo, hi = cl.degree_range(model)
    dec = cl.cartan_decomposition(model)
    zero = (0,) * len(next(iter(dec)))
    print("%s(%d) over F_%d: dim %d, degrees %d..%d"
          % (model.family, model.n, model.p, model.dim, lo, hi))
    print("Cartan block: dim %d; %d weight classes, root spaces of dim %s"
          % (len(dec[zero]), len(dec),
             sorted({len(v) for w, v in dec.items() if w != zero})))


def show_bracket(model, a, b):
    out = cl.bracket(model, a, b)
    print("  [%s, %s] = %s" % (a, b, format_poly(out)))


banner("The contact algebra K(3) at p = 5")
K = cl.lie_algebra("K", 5, 3)
describe(K)
print("sample brackets (monomials as exponent tuples):")
show_bracket(K, (0, 0, 1), (1, 0, 0))   # contact direction against x1
show_bracket(K, (1, 0, 1), (0, 0, 0))   # degree drop onto the constant
show_bracket(K, (0, 0, 0), (0, 0, 0))   # the constant kills itself
show_bracket(K, (1, 1, 0), (1, 1, 0))   # a torus element squares to zero

banner("The Hamiltonian algebra H(2) at p = 5")
H = cl.lie_algebra("H", 5, 2)
describe(H)
print("the two extreme monomials are gone: no constants, no top power,")
print("which is exactly why dim = 5^2 - 2 = %d." % H.dim)
print("the first bracket lands on the excluded constant, hence 0:")
show_bracket(H, (1, 0), (0, 1))
show_bracket(H, (2, 0), (0, 2))
show_bracket(H, (1, 1), (2, 3))

banner("Graded generation")
print("the degree-one piece rebuilds every higher degree in one step:")
for model in (K, H):
    lo, hi = cl.degree_range(model)
    fails = [d for d in range(lo, hi)
             if (lambda r: r["dim"] != r["component_dim"])(
                 cl.commutator_span(model, 1, d))]
    print("  %s(%d): shortfalls %s" % (model.family, model.n, fails or "none"))

banner("Perfectness of K(3)")
print("dim [K, K] = %d of %d" % (cl.full_commutator_dim(K), K.dim))
