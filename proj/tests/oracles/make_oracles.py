"""Independent reference values for the unit tests.

Everything here is computed without the C++ library: exact rational
recursions, mpmath quadrature and root finding, scipy matrix exponentials.
Run it to regenerate tests/unit/oracle_values.hpp:

    python3 tests/oracles/make_oracles.py > tests/unit/oracle_values.hpp
"""

from fractions import Fraction

import mpmath as mp
import numpy as np
from scipy.linalg import expm

mp.mp.dps = 40


def quartic_coefficients(order):
    """Ground-state series of p^2 + x^2 + b x^4 via psi = exp(-x^2/2) sum b^k P_k(x).

    P_k = sum_j c[k][j] x^(2j) with c[k][0] = 0 for k >= 1. The order-k
    equation (L - 1) P_k = sum_{i>=1} E_i P_{k-i} - x^4 P_{k-1} uses
    (L - 1) x^(2j) = 4j x^(2j) - 2j(2j-1) x^(2j-2).
    """
    c = [[Fraction(1)]]
    e = [Fraction(1)]
    for k in range(1, order + 1):
        deg = 2 * k
        rhs = [Fraction(0)] * (deg + 1)
        for j, v in enumerate(c[k - 1]):
            rhs[j + 2] -= v
        for i in range(1, k):
            for j, v in enumerate(c[k - i]):
                rhs[j] += e[i] * v
        ck = [Fraction(0)] * (deg + 2)
        for j in range(deg, 0, -1):
            ck[j] = (rhs[j] + (2 * j + 2) * (2 * j + 1) * ck[j + 1]) / (4 * j)
        e.append(rhs[0] - 2 * ck[1])
        c.append(ck[: deg + 1])
    return e


def quartic_ground_state(beta, size=240):
    """Lowest eigenvalue of p^2 + x^2 + beta x^4 in a large oscillator basis."""
    n = np.arange(size + 4)
    a = np.diag(np.sqrt(n[1:]), 1)
    x = (a + a.T) / np.sqrt(2.0)
    x4 = np.linalg.matrix_power(x, 4)[:size, :size]
    h = np.diag(2.0 * np.arange(size) + 1.0) + beta * x4
    return np.linalg.eigvalsh(h)[0]


def psi_sq(kind, x):
    q = 1 + x * x
    if kind == "inv_sqrt":
        return 1 / (mp.pi * q)
    if kind == "inv":
        return 2 / (mp.pi * q * q)
    return abs(x) / (q * q)


def rank_one(kind, beta):
    def secular(E):
        f = lambda x: psi_sq(kind, x) / (beta * x * x - E)
        edge = mp.sqrt(-E / beta)
        return 2 * mp.quad(f, [0, 1, edge, mp.inf]) - 1
    return mp.findroot(secular, (-1.0 + 0.0j).real * 0.99, tol=1e-30)


def wvn_potential(r):
    r = mp.mpf(r)
    u = lambda t: mp.sin(t) / (1 + (2 * t - mp.sin(2 * t)) ** 2)
    return 1 + mp.diff(u, r, 2) / u(r)


def helium(mass_ratio):
    k = 1
    while 4 * k * k < mass_ratio:
        k += 1
    kmax = k - 1
    return kmax, sum(n * n for n in range(1, kmax + 1))


def trotter_error(a, b, t, n):
    exact = expm(t * (a + b))
    step = expm(t * a / n) @ expm(t * b / n)
    return np.linalg.norm(exact - np.linalg.matrix_power(step, n), 2)


def emit(name, value, digits=17):
    if isinstance(value, Fraction):
        print(f"inline constexpr double {name} = {float(value)!r};  // {value}")
    else:
        print(f"inline constexpr double {name} = {mp.nstr(mp.mpf(value), digits)};")


def main():
    print("#pragma once")
    print("// Generated by tests/oracles/make_oracles.py. Do not edit by hand.")
    print()
    print("namespace oracle {")
    print()

    e = quartic_coefficients(25)
    print("inline constexpr double quartic_coeff[] = {")
    for k, v in enumerate(e):
        print(f"    {float(v)!r},  // a_{k}")
    print("};")
    pade = mp.pade([mp.mpf(v.numerator) / v.denominator for v in e[:17]], 8, 8)
    p, q = pade
    z = mp.mpf("0.1")
    emit("quartic_pade_8_8_at_0p1", mp.polyval(p[::-1], z) / mp.polyval(q[::-1], z))
    emit("quartic_ground_at_0p1", quartic_ground_state(0.1))
    emit("quartic_ground_at_0p01", quartic_ground_state(0.01))

    emit("euler_borel_at_1", mp.quad(lambda t: mp.exp(-t) / (1 + t), [0, mp.inf]))
    emit("borel_order2_at_0p05", mp.quad(lambda t: mp.exp(-t - mp.mpf("0.05") * t * t), [0, mp.inf]))
    emit("bender_wu_large_order_n1", 4 * mp.pi ** -1.5 * mp.mpf(1.5) ** 1.5 * mp.gamma(1.5))

    for kind in ("inv_sqrt", "inv", "log_case"):
        for beta, tag in ((mp.mpf("1e-4"), "1em4"), (mp.mpf("1e-3"), "1em3")):
            emit(f"rank_one_{kind}_{tag}", rank_one(kind, beta))

    for r, tag in (("0.5", "0p5"), ("1", "1"), ("2", "2"), ("20", "20"), ("0.002", "0p002"), ("0.0009", "0p0009"), ("0.0005", "0p0005")):
        emit(f"wvn_potential_{tag}", wvn_potential(r))

    for ratio, tag in ((99, "99"), (7294.29954, "alpha"), (1, "1"), (1e6, "1e6")):
        kmax, count = helium(ratio)
        print(f"inline constexpr long helium_kmax_{tag} = {kmax};")
        print(f"inline constexpr long helium_count_{tag} = {count};")

    x, w = np.polynomial.laguerre.laggauss(4)
    print("inline constexpr double laguerre4_nodes[] = {" + ", ".join(repr(float(v)) for v in x) + "};")
    print("inline constexpr double laguerre4_weights[] = {" + ", ".join(repr(float(v)) for v in w) + "};")

    sx = np.array([[0.0, 1.0], [1.0, 0.0]])
    sz = np.array([[1.0, 0.0], [0.0, -1.0]])
    emit("trotter_sx_sz_n8", trotter_error(sx, sz, 1.0, 8))
    emit("trotter_sx_sz_n16", trotter_error(sx, sz, 1.0, 16))

    k, pp = mp.mpf(1), mp.mpf(2)
    emit("angular_kernel_1_2", 2 * mp.pi * mp.quad(lambda u: 1 / (k * k + pp * pp - 2 * k * pp * u), [-1, 1]))
    emit("a9_integral", mp.quad(lambda x: mp.log((1 + x) / (1 - x)) / x, [0, 1]))
    emit("odd_square_sum", mp.nsum(lambda n: 1 / (2 * n - 1) ** 2, [1, mp.inf]))
    emit("berry_phase_theta_1", -mp.pi * (1 - mp.cos(1)))
    emit("gap_bound_0p3_0p4", mp.sqrt(2 - 2 * mp.sqrt(1 - mp.mpf("0.3") ** 2 / mp.mpf("0.4") ** 2)))

    print()
    print("}  // namespace oracle")


if __name__ == "__main__":
    main()
