#!/usr/bin/env python3
"""Reference values for the C++ tests, computed from the definitions only.

Nothing here shares code or algorithms with the library: Stirling numbers come
from the explicit alternating sum, binomials from math.comb (gmpy2 only speeds up modular powers), limits from exact
values at increasing e. Run it and compare with the constants frozen in the
test sources.
"""
from fractions import Fraction
from math import comb, factorial

import gmpy2


def stirling2(n, k):
    if k == 0:
        return 1 if n == 0 else 0
    s = sum((-1) ** (k - i) * comb(k, i) * i ** n for i in range(k + 1))
    return s // factorial(k)


def stirling2_mod(n, k, m):
    # sum is k! S(n,k); reduce mod m k! and divide
    fk = gmpy2.fac(k)
    big = m * fk
    s = gmpy2.mpz(0)
    for i in range(k + 1):
        term = gmpy2.bincoef(k, i) * gmpy2.powmod(i, n, big)
        s += -term if (k - i) % 2 else term
    return int((s % big) // fk % m)


def stirling1_unsigned(n, k):
    row = [1]
    for m in range(n):
        nxt = [0] * (m + 2)
        for j, v in enumerate(row):
            nxt[j + 1] += v
            nxt[j] += m * v
        row = nxt
    return row[k] if k < len(row) else 0


def nu(x, p):
    if x == 0:
        return None
    x = Fraction(x)
    v, a, b = 0, abs(x.numerator), x.denominator
    while a % p == 0:
        a //= p
        v += 1
    while b % p == 0:
        b //= p
        v -= 1
    return v


def t_partial(n, k, p):
    s = sum((-1) ** i * comb(k, i) * i ** n for i in range(1, k + 1) if i % p)
    return Fraction((-1) ** k * s, factorial(k))


def to_padic(q, p, digits):
    q = Fraction(q)
    m = p ** digits
    return q.numerator * pow(q.denominator, -1, m) % m


def limit_from_exact(p, a, b, c, d, e_values, digits):
    vals = []
    for e in e_values:
        n, k = p ** e * a + c, p ** e * b + d
        vals.append(stirling2_mod(n, k, p ** digits) if 0 <= k <= n else 0)
    return vals


def main():
    print("# exact")
    print("S(20,7) =", stirling2(20, 7))
    print("S(100,37) =", stirling2(100, 37))
    print("|s(10,4)| =", stirling1_unsigned(10, 4))
    print("|s(30,12)| =", stirling1_unsigned(30, 12))
    print("C(100,37) =", comb(100, 37))
    print("S(300,150) mod 1000003 =", stirling2(300, 150) % 1000003)

    print("# stirling mod p^N, (p, N, e, b, d, n)")
    for p, N, e, b, d, n in [
        (2, 6, 10, 1, 3, 3 * 2 ** 20 + 5),
        (3, 5, 6, 1, 2, 2 * 3 ** 12 + 7),
        (5, 4, 5, 2, 4, 3 * 5 ** 9 + 11),
        (3, 6, 8, 1, 0, 3 ** 15),
        (2, 5, 8, 3, 0, 2 ** 20 + 2),
        (3, 4, 5, 2, 0, 3 ** 9 + 1),
    ]:
        k = p ** e * b + d
        print((p, N, e, b, d, n), stirling2_mod(n, k, p ** N))

    print("# small k, (p, N, n, d)")
    for p, N, n, d in [(2, 8, 10 ** 30 + 7, 5), (3, 6, 3 ** 50, 9), (5, 5, 123456789, 12)]:
        print((p, N, n, d), stirling2_mod(n, d, p ** N))

    print("# binomial mod p^N, (p, N, n, k)")
    for p, N, n, k in [
        (2, 10, 10 ** 6 + 3, 333333),
        (3, 7, 10 ** 6, 500000),
        (5, 5, 987654, 123456),
        (7, 4, 10 ** 6 + 1, 31337),
        (3, 6, 3 ** 40 + 5, 1000),
        (2, 12, 2 ** 70 + 12345, 777),
    ]:
        print((p, N, n, k), comb(n, k) % p ** N)

    print("# T_p(d-1,d)")
    for p in (2, 3, 5):
        print(p, [str(t_partial(d - 1, d, p)) for d in range(1, 9)])

    print("# limits from exact values, (p, a, b, c, d): values for e in range")
    cases = [
        ((2, 2, 1, 0, 0), range(5, 10), 6),
        ((2, 3, 1, 0, 0), range(5, 10), 6),
        ((3, 3, 1, 0, 0), range(3, 7), 5),
        ((3, 2, 1, 0, 0), range(3, 7), 5),
        ((2, 2, 1, -2, -3), range(5, 10), 6),
        ((3, 3, 1, 1, 2), range(3, 7), 4),
        ((2, 3, 1, 2, 1), range(5, 10), 5),
        ((3, 3, 1, -1, 2), range(3, 7), 4),
        ((3, 2, 1, 0, 1), range(3, 7), 4),
        ((3, 2, 1, 1, 2), range(3, 7), 4),
    ]
    for (p, a, b, c, d), es, digits in cases:
        print((p, a, b, c, d), digits, limit_from_exact(p, a, b, c, d, es, digits))

    print("# T polynomial values")
    # forward (c, d) = (3, 2): 3 + 3 T_1 + 4 T_2; T_i = T_p(i-1,i) p/(p-1) (a-b)/b
    for p, a, b in [(3, 3, 1), (2, 3, 1), (5, 5, 1)]:
        T = lambda i: t_partial(i - 1, i, p) * Fraction(p, p - 1) * Fraction(a - b, b)
        val = 3 + 3 * T(1) + 4 * T(2)
        print((p, a, b), "3+3T1+4T2 =", val, "padic8 =", to_padic(val, p, 8) if nu(val, p) >= 0 else None)

    print("# f_{i,k}(x) = S(i + x(p-1), k): (p, M, residue, k, i): values at lifted representatives")
    for p, M, r, k, i in [(3, 5, 100, 4, 1), (2, 6, 37, 3, 0), (5, 4, 77, 7, 2)]:
        digits = M + 2 - next(t for t in range(20) if p ** t >= k)
        vals = [stirling2_mod(i + (r + t * p ** M) * (p - 1), k, p ** digits) for t in range(1, 5)]
        print((p, M, r, k, i), digits, vals)


if __name__ == "__main__":
    main()
