#!/usr/bin/env python3
"""High-precision reference values frozen into the C++ tests.

Everything here is computed straight from the defining series with mpmath at
40 digits (or exact cyclotomic arithmetic through sympy), sharing no code with
the library. Run it to regenerate the constants printed below.
"""
import mpmath as mp
import sympy as sp

mp.mp.dps = 40
I = mp.mpc(0, 1)


def e(x):
    return mp.exp(2 * mp.pi * I * x)


def theta(z, tau, n=80):
    s = mp.mpc(0)
    for m in range(-n, n):
        nu = m + mp.mpf(1) / 2
        s += mp.exp(mp.pi * I * nu * nu * tau + 2 * mp.pi * I * nu * (z + mp.mpf(1) / 2))
    return s


def mu(u, v, tau, n=80):
    q = e(tau)
    s = mp.mpc(0)
    for m in range(-n, n + 1):
        s += (-1) ** m * mp.exp(2 * mp.pi * I * m * v) * q ** (mp.mpf(m * (m + 1)) / 2) / (1 - e(u) * q ** m)
    return mp.exp(mp.pi * I * u) / theta(v, tau) * s


def v_alpha(A, C, a, tau):
    u = mp.mpf(A) / C * tau + mp.mpf(a) / 2
    pref = I ** (a + 1) * e(-mp.mpf((2 * A - C) ** 2) / (8 * C * C) * tau)
    return pref * mu(u, tau / 2, tau)


def g2_root_exact(z, h, k):
    """Finite g2(z; Q) with Q = exp(pi i h / k), exact in sympy."""
    Q = sp.exp(sp.pi * sp.I * sp.Rational(h, k))
    total = 0
    for n in range(k):
        num = sp.Integer(1)
        for j in range(1, n + 1):
            num *= 1 + Q ** j
        num *= Q ** sp.Rational(n * (n + 1), 2)
        den = sp.Integer(1)
        for j in range(0, n + 1):
            den *= (1 - z * Q ** j) * (1 - Q ** (j + 1) / z)
        total += num / den
    return sp.nsimplify(total) if False else total


def v_alpha_root_mp(A, C, a, h, k, dps=80):
    """V_alpha(h/k) from the terminating g2 sum in mpmath at `dps` digits."""
    with mp.workdps(dps):
        Q = mp.expjpi(mp.mpf(h) / k)
        z = I ** a * mp.expjpi(mp.mpf(A * h) / (C * k))
        num, den, total = mp.mpc(1), mp.mpc(1), mp.mpc(0)
        for n in range(k):
            if n > 0:
                num *= (1 + Q ** n) * Q ** n
            den *= (1 - z * Q ** n) * (1 - Q ** (n + 1) / z)
            total += num / den
        mu_val = I * mp.expjpi(mp.mpf(h) / (4 * k)) * total
        pref = I ** (a + 1) * e(-mp.mpf((2 * A - C) ** 2 * h) / (8 * C * C * k))
        return +(pref * mu_val)


def main():
    tau = I
    print("eta(i) =", mp.gamma(mp.mpf(1) / 4) / (2 * mp.pi ** (mp.mpf(3) / 4)))
    names = ["V11", "V21", "V31", "V4'1", "V4''1", "V51", "V61"]
    tuples = [(1, 4, 1), (1, 4, 0), (1, 3, 1), (1, 12, 0), (5, 12, 0), (1, 6, 1), (1, 3, 0)]
    for name, (A, C, a) in zip(names, tuples):
        val = v_alpha(A, C, a, tau)
        print(f"{name} {A},{C},{a}: {mp.nstr(val.real, 20)} {mp.nstr(val.imag, 20)}")

    # g2 at z = i e^{pi i/3}, qhalf = e^{pi i/2}
    z = sp.I * sp.exp(sp.pi * sp.I / 3)
    val = sp.N(sp.simplify(g2_root_exact(z, 1, 2)), 25)
    print("g2(i e^{pi i/3}; i) =", val)

    # V_(1,3,0)(1/2) from the terminating sum
    A, C, a, h, k = 1, 3, 0, 1, 2
    zz = sp.I ** a * sp.exp(sp.pi * sp.I * sp.Rational(A * h, C * k))
    g = g2_root_exact(zz, h, k)
    mu_val = sp.I * sp.exp(sp.pi * sp.I * sp.Rational(h, 4 * k)) * g
    pref = sp.I ** (a + 1) * sp.exp(2 * sp.pi * sp.I * sp.Rational(-(2 * A - C) ** 2 * h, 8 * C * C * k))
    print("V_(1,3,0)(1/2) =", sp.N(sp.expand(pref * mu_val), 25))
    print("V_(1,3,0)(1/2) mp =", mp.nstr(v_alpha_root_mp(1, 3, 0, 1, 2), 20))

    # heavy cancellation in the terminating sum
    print("V_(1,4,0)(3/125) =", mp.nstr(v_alpha_root_mp(1, 4, 0, 3, 125), 20))
    print("V_(1,4,0)(1/199) =", mp.nstr(v_alpha_root_mp(1, 4, 0, 1, 199, 200), 20))

    # integral shifts and multiplier for alpha = (1,4,1), gamma = [[3,8],[1,3]]
    A, C, a = 1, 4, 1
    x, y, z, w = 3, 8, 1, 3
    P = mp.mpf((2 * A - C) ** 2) / (8 * C * C)
    tau = mp.mpc(0.3, 0.7)
    gt, j = (x * tau + y) / (z * tau + w), z * tau + w
    u, v = mp.mpf(A) / C * tau + mp.mpf(a) / 2, tau / 2
    ut, vt = (mp.mpf(A) / C * gt + mp.mpf(a) / 2) * j, gt / 2 * j
    k, r = mp.nint(mp.im(ut - u) / mp.im(tau)), mp.nint(mp.im(vt - v) / mp.im(tau))
    print("tilde (k,l,r,s) =", k, mp.nstr(mp.re(ut - u - k * tau), 12), r, mp.nstr(mp.re(vt - v - r * tau), 12))
    ex = -P * gt - z * (ut - vt) ** 2 / (2 * j) + (u - v) * (k - r) + (k - r) ** 2 * tau / 2 + P * tau
    print("phi exponent =", mp.nstr(ex, 15))


if __name__ == "__main__":
    main()
