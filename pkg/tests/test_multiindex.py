import pytest
from hypothesis import given, strategies as st

from cartanlie import multiindex as mi


PRIMES = (5, 7, 11)


def boxed(p, n_max=4):
    """Strategy: an exponent tuple inside the box for modulus p."""
    return st.lists(st.integers(0, p - 1), min_size=1, max_size=n_max).map(tuple)


def test_frozen_examples():
    assert mi.binom((4, 3), (2, 1), 5) == 3  # 6 * 3 = 18 = 3 mod 5
    assert mi.sign_of((1, 1), 1) == -1
    assert mi.factorial((4, 4), 5) == 1  # (4!)^2 = 576
    assert mi.degree((2, 0, 3)) == 5
    assert mi.conjugate((1, 2, 3, 4)) == (3, 4, 1, 2)
    assert mi.index_sign(0, 2) == 1 and mi.index_sign(3, 2) == -1
    assert mi.conjugate_index(0, 2) == 2 and mi.conjugate_index(3, 2) == 1


def test_domain_errors():
    with pytest.raises(ValueError):
        mi.binom((1, 0), (2, 0), 5)  # not dominated
    with pytest.raises(ValueError):
        mi.binom((1, 0), (1,), 5)
    with pytest.raises(ValueError):
        mi.conjugate((1, 2, 3))  # odd length
    with pytest.raises(ValueError):
        mi.sign_of((1, 2, 3), 1)
    with pytest.raises(IndexError):
        mi.unit(3, 3)
    with pytest.raises(ValueError):
        mi.factorial((5,), 5)


@given(st.data())
def test_binom_factorial_identity(data):
    """binom(a,b) * b! * (a-b)! = a!  (all mod p, b dominated by a)."""
    p = data.draw(st.sampled_from(PRIMES))
    a = data.draw(boxed(p))
    b = tuple(data.draw(st.integers(0, x)) for x in a)
    lhs = mi.binom(a, b, p) * mi.factorial(b, p) * mi.factorial(mi.subtract(a, b), p) % p
    assert lhs == mi.factorial(a, p) % p


@given(st.data())
def test_conjugate_flips_sign_by_degree(data):
    """sign(conj a) = (-1)^|a| * sign(a)."""
    p = data.draw(st.sampled_from(PRIMES))
    m = data.draw(st.integers(1, 3))
    a = tuple(data.draw(st.integers(0, p - 1)) for _ in range(2 * m))
    assert mi.sign_of(mi.conjugate(a, m), m) == (-1) ** mi.degree(a) * mi.sign_of(a, m)


@given(st.data())
def test_conjugate_involution(data):
    m = data.draw(st.integers(1, 4))
    a = tuple(data.draw(st.integers(0, 6)) for _ in range(2 * m))
    assert mi.conjugate(mi.conjugate(a, m), m) == a


def test_flat_index_roundtrip_and_order():
    p, n = 5, 3
    seen = []
    for pos, a in enumerate(mi.iter_box(n, p)):
        assert mi.flat_index(a, p) == pos
        assert mi.from_flat(pos, n, p) == a
        seen.append(a)
    assert len(seen) == p ** n
    assert seen[0] == (0, 0, 0)
    assert seen[-1] == mi.tau(n, p)
    with pytest.raises(ValueError):
        mi.from_flat(p ** n, n, p)


def test_parse_unparse():
    assert mi.parse("2,0,1") == (2, 0, 1)
    assert mi.parse(" 1 , 2 ", n=2) == (1, 2)
    assert mi.unparse((0, 3)) == "0,3"
    with pytest.raises(ValueError):
        mi.parse("1,x")
    with pytest.raises(ValueError):
        mi.parse("1,-2")
    with pytest.raises(ValueError):
        mi.parse("1,2", n=3)


def test_dominated_by():
    assert mi.dominated_by((1, 0), (1, 2))
    assert not mi.dominated_by((2, 0), (1, 2))
    assert not mi.dominated_by((1,), (1, 2))
