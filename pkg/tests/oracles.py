"""Independent reference computations.  Nothing here imports qdissect."""

from fractions import Fraction


def partitions(n, largest=None):
    """Enumerate partitions of n as nonincreasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def eta_product_dp(factors, n):
    """Coefficients 0..n-1 of prod_m prod_k (1 - q^(mk))^(e_m), factor by factor.

    Positive powers multiply by (1 - q^j); negative powers divide, which is the
    running-sum (unbounded knapsack) update f[i] += f[i - j].
    """
    f = [0] * n
    f[0] = 1
    for m, e in factors.items():
        for j in range(m, n, m):
            for _ in range(abs(e)):
                if e > 0:
                    for i in range(n - 1, j - 1, -1):
                        f[i] -= f[i - j]
                else:
                    for i in range(j, n):
                        f[i] += f[i - j]
    return f


def b_dp(n):
    return eta_product_dp({1: -2, 2: -2}, n)


def a_dp(n):
    return eta_product_dp({1: -1, 2: -1}, n)


def p_dp(n):
    return eta_product_dp({1: -1}, n)


def series_div(num, den, n):
    """Power series num/den to n terms with Fractions (den[0] != 0)."""
    num = [Fraction(x) for x in num] + [Fraction(0)] * n
    out = []
    for i in range(n):
        c = (num[i] - sum(out[j] * den[i - j] for j in range(max(0, i - len(den) + 1), i))) / den[0]
        out.append(c)
    return out


def poly_mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        for j, y in enumerate(b[: n - i]):
            out[i + j] += x * y
    return out


def egcd_inverse(a, m):
    """Inverse of a mod m by the extended Euclidean algorithm."""
    r0, r1, s0, s1 = a % m, m, 1, 0
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0 != 1:
        raise ValueError("not invertible")
    return s0 % m


def v3(n):
    k = 0
    while n % 3 == 0:
        n //= 3
        k += 1
    return k
