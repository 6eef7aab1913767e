import math
import random
from fractions import Fraction

import pytest

from symtriple.errors import (
    BadConstantTerm,
    NonInvertibleConstantTerm,
    NonzeroInnerConstant,
    NotReversible,
    OrderMismatch,
)
from symtriple.exact import ZERO, fe, fe_sym, sample_rational
from symtriple.series import (
    Series,
    antiderivative,
    compose,
    derivative,
    exp0,
    exp_t,
    geometric,
    inverse,
    lagrange_coeff,
    log1,
    log_one_plus,
    pow_general,
    reversion,
    series_arith,
    star,
)

F = Fraction


def rand_series(rng, order, constant=None, bound=6):
    coeffs = [sample_rational(rng, bound) for _ in range(order + 1)]
    if constant is not None:
        coeffs[0] = F(constant)
    return Series(order, coeffs)


def reversion_naive(Fs):
    """Solve F(G(x)) = x coefficient by coefficient; test-only oracle."""
    N = Fs.order
    g = [F(0), F(1) / 1] if False else None
    coeffs = [ZERO, fe(1) / Fs[1]]
    for n in range(2, N + 1):
        partial = Series(n, coeffs + [ZERO] * (n + 1 - len(coeffs)))
        val = compose(Fs.truncate(n), partial)[n]
        coeffs.append(-val / Fs[1])
    return Series(N, coeffs)


def test_mul_basic():
    one_plus = Series(5, [1, 1])
    one_minus = Series(5, [1, -1])
    assert (one_plus * one_minus).coeffs == Series(5, [1, 0, -1]).coeffs


def test_geometric_inverse():
    N = 8
    assert geometric(N) * Series(N, [1, -1]) == Series.constant(1, N)
    assert inverse(Series(N, [1, -1])) == geometric(N)


def test_add_zero_identity():
    rng = random.Random("series:addzero")
    f = rand_series(rng, 7)
    assert series_arith("add", f, Series.constant(0, 7)) == f


def test_order_mismatch():
    with pytest.raises(OrderMismatch):
        Series(3, [1]) + Series(4, [1])


def test_inverse_of_exp():
    N = 9
    inv = inverse(exp_t(N))
    for n in range(N + 1):
        assert inv[n] == F((-1) ** n, math.factorial(n))


def test_inverse_requires_unit():
    with pytest.raises(NonInvertibleConstantTerm):
        inverse(Series(4, [0, 1]))


def test_derivative_antiderivative():
    f = Series(4, [0, 0, 1])  # t^2
    assert derivative(f) == Series(3, [0, 2])
    assert derivative(Series.constant(5, 3)) == Series(2, [])
    g = antiderivative(geometric(5))
    assert g == Series(6, [0] + [F(1, n) for n in range(1, 7)])
    rng = random.Random("series:deriv")
    h = rand_series(rng, 8)
    restored = antiderivative(derivative(h)).truncate(8)
    expect = Series(8, (fe(0),) + h.coeffs[1:])
    assert restored == expect


def test_compose_identity():
    g = geometric(7)
    assert compose(g, Series.identity(7)) == g


def test_compose_exp_log():
    N = 10
    assert compose(exp_t(N), log_one_plus(N)) == Series(N, [1, 1])


def test_compose_rejects_constant():
    with pytest.raises(NonzeroInnerConstant):
        compose(geometric(4), Series(4, [1, 1]))


def test_log_exp_roundtrip_basic():
    N = 8
    assert log1(geometric(N)) == Series(N, [0] + [F(1, n) for n in range(1, N + 1)])
    assert exp0(Series.identity(N)) == exp_t(N)
    with pytest.raises(BadConstantTerm):
        log1(Series(3, [2]))
    with pytest.raises(BadConstantTerm):
        exp0(Series(3, [1]))


def test_exp_log_mutual_inverse_seeded():
    rng = random.Random("series:explog")
    for _ in range(50):
        f = rand_series(rng, 8, constant=1)
        assert exp0(log1(f)) == f
        g = rand_series(rng, 8, constant=0)
        assert log1(exp0(g)) == g


def test_ring_laws_seeded():
    rng = random.Random("series:ring")
    for _ in range(30):
        a = rand_series(rng, 6)
        b = rand_series(rng, 6)
        c = rand_series(rng, 6)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)


def test_pow_general_binomial():
    N = 6
    one_plus = Series(N, [1, 1])
    sqrt = pow_general(one_plus, F(1, 2))
    assert sqrt[0] == 1 and sqrt[1] == F(1, 2) and sqrt[2] == F(-1, 8)
    assert sqrt * sqrt == one_plus


def test_pow_general_square_of_inverse_sqrt():
    N = 8
    one_minus = Series(N, [1, -1])
    h = pow_general(one_minus, F(-1, 2))
    assert h * h == geometric(N)


def test_pow_general_integer_matches_repeated_mul():
    rng = random.Random("series:pow")
    f = rand_series(rng, 7, constant=1)
    assert pow_general(f, 3) == f * f * f
    assert pow_general(f, -2) * f * f == Series.constant(1, 7)
    assert pow_general(f, 0) == Series.constant(1, 7)


def test_pow_additivity_symbolic_specialized():
    # f^(a+b) = f^a * f^b with symbolic exponents, checked via specialization
    rng = random.Random("series:powadd")
    a, b = fe_sym("a"), fe_sym("b")
    f = rand_series(rng, 6, constant=1)
    lhs = pow_general(f, a + 2)
    rhs = pow_general(f, a) * pow_general(f, fe(2))
    assert lhs == rhs
    for _ in range(5):
        s = sample_rational(rng)
        t = sample_rational(rng)
        lhs2 = pow_general(f, s + t)
        rhs2 = pow_general(f, s) * pow_general(f, t)
        assert lhs2 == rhs2


def test_pow_general_requires_unit_head():
    with pytest.raises(BadConstantTerm):
        pow_general(Series(3, [2, 1]), F(1, 2))


def test_reversion_rational_example():
    N = 9
    Fs = Series(N, [0] + [1] * N)       # t/(1-t)
    G = reversion(Fs)
    expect = Series(N, [0] + [F((-1) ** (n - 1)) for n in range(1, N + 1)])
    assert G == expect                   # x/(1+x)
    assert compose(Fs, G) == Series.identity(N)
    assert compose(G, Fs) == Series.identity(N)


def test_reversion_tree_function():
    # F = t e^{-t}  =>  G = tree function with coefficients n^(n-1)/n!
    N = 10
    Fs = Series(N, [fe(0)] + [fe(F((-1) ** (n - 1), math.factorial(n - 1)))
                              for n in range(1, N + 1)])
    G = reversion(Fs)
    for n in range(1, N + 1):
        assert G[n] == F(n ** (n - 1), math.factorial(n))


def test_reversion_matches_naive_and_involution():
    rng = random.Random("series:rev")
    for _ in range(8):
        coeffs = [F(0), sample_rational(rng, nonzero=True)]
        coeffs += [sample_rational(rng) for _ in range(14)]
        Fs = Series(15, coeffs)
        G = reversion(Fs)
        assert G == reversion_naive(Fs)
        assert reversion(G) == Fs
        assert compose(Fs, G) == Series.identity(15)


def test_reversion_preconditions():
    with pytest.raises(NotReversible):
        reversion(Series(4, [1, 1]))
    with pytest.raises(NotReversible):
        reversion(Series(4, [0, 0, 1]))


def test_star_basic():
    N = 12
    assert star(Series.constant(1, N)) == Series.constant(1, N)
    # star((e^{-t}-1)/(-t)) = -log(1-t)/t
    f = Series(N, [F(1, math.factorial(n + 1)) for n in range(N + 1)]).alternate()
    f = f.scale(1)
    sf = star(f)
    assert sf == Series(N, [F(1, n + 1) for n in range(N + 1)])


def test_star_involution_seeded():
    rng = random.Random("series:star")
    for _ in range(20):
        f = rand_series(rng, 20, constant=sample_rational(rng, nonzero=True))
        assert star(star(f)) == f
        assert star(f)[0] == fe(1) / f[0]
    with pytest.raises(NonInvertibleConstantTerm):
        star(Series(3, [0, 1]))


def test_lagrange_plain_delta():
    f = Series(6, [1, 2, 3])
    for n in range(4):
        v = lagrange_coeff(Series.constant(1, 6), f, n, "plain")
        assert v == (1 if n == 0 else 0)


def test_lagrange_matches_reversion():
    rng = random.Random("series:lagrange")
    for _ in range(20):
        N = 10
        f = rand_series(rng, N + 1, constant=sample_rational(rng, nonzero=True))
        phi = rand_series(rng, N + 1)
        G = reversion(Series(N + 1, (fe(0),) + f.coeffs[:N + 1]))
        phiG = compose(phi, G)
        # x G'/G is a power series; [x^n] phi(G) G'/G sits at index n+1 of
        # phi(G) * (x G'/G)
        x_dlogG = derivative(G) * inverse(Series(N, G.coeffs[1:]))
        W = phiG.truncate(N) * x_dlogG
        for n in range(0, N):
            assert lagrange_coeff(phi, f, n, "plain") == phiG[n]
        for n in range(0, N - 1):
            assert lagrange_coeff(phi, f, n, "weighted") == W[n + 1]


def test_lagrange_binomial_closed_form():
    # phi = (1+t)^beta, f = (1+t)^(-alpha): [x^n] phi(G) = beta/(n alpha + beta) C(n alpha + beta, n)
    from symtriple.exact import binom_general
    rng = random.Random("series:lagrangebin")
    N = 3
    for _ in range(6):
        alpha = sample_rational(rng, nonzero=True)
        beta = sample_rational(rng, nonzero=True)
        if 3 * alpha + beta == 0:
            continue
        base = Series(N + 1, [1, 1])
        phi = pow_general(base, beta)
        f = pow_general(base, -alpha)
        got = lagrange_coeff(phi, f, 3, "plain")
        expect = binom_general(3 * alpha + beta, 3) * beta / (3 * alpha + beta)
        assert got == expect


def test_str_format():
    s = Series(3, [1, 0, F(-1, 2)])
    assert str(s) == "1 + (-1/2)*t^2 + O(t^4)"
