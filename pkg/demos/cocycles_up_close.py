"""The named 2-cochains, evaluated by hand.

Walks the squaring cochains, the pair family Pi, and the top cochain Phi on
small Hamiltonian algebras: what they eat, what they return, and the
identities that the test suite later verifies on every pair.
"""

from cartanlie import cartan_lie as cl
from cartanlie import cocycles as cc

H2 = cl.lie_algebra("H", 5, 2)
H4 = cl.lie_algebra("H", 5, 4)

print("Sq:x1 on H(2): the squaring cochain attached to the monomial x1")
sq = cc.cochain_by_name("Sq:x1", H2)
print("  arity %d, values in the %s module" % (sq.arity, sq.module.kind))
print("  it only fires when the exponents of a and b mesh with x1^p:")
for a, b in (((0, 2), (2, 4)), ((1, 2), (1, 4)), ((0, 1), (1, 0))):
    print("  Sq:x1(%s, %s) -> %s" % (a, b, sq.evaluate(a, b) or "0"))

print()
print("closedness, spot-checked on one triple (the suite sweeps all 1771):")
d = cc.coboundary(sq)
triple = tuple(H2.index[t] for t in ((1, 0), (2, 1), (0, 3)))
print("  d Sq:x1 on basis positions %s = %s"
      % (triple, d.value_on(triple) or "0"))

print()
print("Pi on H(4): the single-index form equals the conjugate-pair form")
print("plus an explicit coboundary, here on one sample pair:")
amb4 = cl.module_by_name("ambient", H4)
pi1 = cc.pi_single(H4, 1, module=amb4)
pic = cc.pi_conjugate(H4, 1, module=amb4)
g1 = cc.coboundary_partner(H4, 1, module=amb4)
a, b = (0, 1, 0, 0), (0, 4, 0, 4)
lhs = pi1.evaluate(a, b)
rhs = dict(pic.evaluate(a, b))
for w, v in cc.coboundary(g1).value_on((H4.index[a], H4.index[b])).items():
    key = amb4.monomials[w]
    rhs[key] = (rhs.get(key, 0) + v) % 5
rhs = {w: v for w, v in rhs.items() if v}
print("  Pi:1  (a, b) = %s" % lhs)
print("  PiC:1 + d g1 = %s" % rhs)
print("  equal: %s" % (lhs == rhs))

print()
print("Phi on H(2): the corner cochain pairs deep monomials with the top")
print("of the ring; its values stay clear of the top monomial x^sigma, so")
print("nothing is lost when the ambient module drops to the simple one:")
amb2 = cl.module_by_name("ambient", H2)
phi = cc.phi(H2, module=amb2)
for a, b in (((2, 1), (2, 4)), ((2, 1), (2, 3))):
    print("  Phi(%s, %s) -> %s" % (a, b, phi.evaluate(a, b)))
top = amb2.dim - 1
want = sum(amb2.monomials[top]) + 6
hits = [(a, b) for i, a in enumerate(H2.basis) for b in H2.basis[i + 1:]
        if sum(a) + sum(b) == want]
print("  pairs reaching the top degree: %d; x^sigma coefficient on each:"
      % len(hits))
for a, b in hits:
    print("    Phi(%s, %s)[x^sigma] = %d"
          % (a, b, phi.value_on((H2.index[a], H2.index[b])).get(top, 0)))

print()
print("Delta: alternating exactly when the rank matches the prime")
witnesses = {
    6: ((3, 4, 0, 4, 0, 3), (1, 0, 4, 0, 4, 1)),
    2: ((2, 2), (2, 2)),
}
for n in (6, 2):
    model = cl.lie_algebra("H", 5, n)
    delta = cc.delta_top(model)
    a, b = witnesses[n]
    raw_ab = delta.raw(a, b).get(0, 0)
    raw_ba = delta.raw(b, a).get(0, 0)
    verdict = "alternating" if (raw_ab + raw_ba) % 5 == 0 else "symmetric"
    print("  n=%d: Delta(a,b) = %d, Delta(b,a) = %d on a split of sigma: %s"
          % (n, raw_ab, raw_ba, verdict))
