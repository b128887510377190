"""Independent high-precision oracle for the frozen constants in the C++ tests.

Run with `python3 tests/oracles/frozen_values.py`. Uses mpmath at 60 digits and
never calls into the C++ library.
"""
from mpmath import mp, mpf, exp, log, sqrt, erfinv, binomial

mp.dps = 60
MU, SIG = mpf("0.0658"), mpf("0.1690")


def lb_recursive(mu, sig, c, t, K):
    m = [None, mu * t[1]]
    v = [None, sig**2 * t[1]]
    for k in range(2, K + 1):
        a = exp(m[k - 1]) * sum(c[: k - 1])
        b = a / (a + c[k - 1])
        m.append(log((a + c[k - 1]) / sum(c[:k])) + mu * (t[k] - t[k - 1]))
        v.append(b**2 * v[k - 1] + sig**2 * (t[k] - t[k - 1]))
    return m, v


def raw_moments(mu, sig, c, t, K, N):
    """E[R_k^n] for k<=K, n<=N via direct binomial recursion."""
    EX = lambda dt, n: exp(n * mu * dt + n * n * sig**2 * dt / 2)
    Y = [EX(t[1], n) * c[0] ** n for n in range(N + 1)]
    out = {1: [Y[n] / c[0] ** n for n in range(N + 1)]}
    for k in range(2, K + 1):
        dt = t[k] - t[k - 1]
        Y = [EX(dt, n) * sum(binomial(n, j) * c[k - 1] ** (n - j) * Y[j] for j in range(n + 1)) for n in range(N + 1)]
        s = sum(c[:k])
        out[k] = [Y[n] / s**n for n in range(N + 1)]
    return out


def log_error_ub(mom, m_k, Js=range(1, 22, 2)):
    best = None
    ER = mom[1]
    for r in range(801):
        y = exp(mpf(-4) + mpf(r) / 100) * ER
        # central-about-y moments
        cm = [sum(binomial(j, i) * mom[i] * (-y) ** (j - i) for i in range(j + 1)) for j in range(22)]
        acc = log(y)
        for j in range(1, 22):
            acc += cm[j] / ((-1) ** (j - 1) * j * y**j)
            if j % 2 == 1:
                val = acc - m_k
                if best is None or val < best[0]:
                    best = (val, j, r)
    return best


def phi_inv(p):
    return sqrt(2) * erfinv(2 * p - 1)


if __name__ == "__main__":
    print("E[X] n=1 S&P:", exp(MU + SIG**2 / 2))
    K = 60
    c = [mpf(1)] * (K + 1)
    t = [mpf(i) for i in range(K + 1)]
    m, v = lb_recursive(MU, SIG, c, t, K)
    print("m2, v2:", m[2], v[2])
    print("q975 (0,1):", exp(phi_inv(mpf("0.975"))), phi_inv(mpf("0.975")))
    q = [exp(m[k] + phi_inv(mpf("0.025")) * sqrt(v[k])) for k in range(1, 51)]
    kmin = min(range(50), key=lambda i: q[i]) + 1
    cross = next(k for k in range(1, 51) if q[k - 1] > 1)
    print("q025 argmin k:", kmin, " first k with q025>1:", cross)
    for mu in (mpf(1),):
        r1 = log((exp(mu) - 1) / mu) / mu
        r2 = ((2 * mu - 3) * exp(2 * mu) + 4 * exp(mu) - 1) / (2 * mu * (exp(mu) - 1) ** 2)
        print("r1,r2 at mu=1:", r1, r2)
    lim = exp(MU * (exp(2 * MU) + 2 * exp(MU)) / (exp(2 * MU) - 1)) / (exp(MU) - 1)
    print("lsd limit mu=0.0658:", lim)
    print("s_k/k at k=1e4 approx:", 1 - (2 * exp(MU) + 1) / (exp(2 * MU) - 1) / 10000)
    # 3-step moment example
    mom = raw_moments(mpf("0.05"), mpf("0.15"), c, t, 3, 2)
    print("DCA mu=.05 s=.15 E[R3^2]:", mom[3][2])
    mom = raw_moments(MU, SIG, c, t, 50, 21)
    for k in (1, 2, 10, 12, 19, 20, 42, 50):
        print("k", k, "E[R]", mom[k][1], "expected error", mom[k][1] - exp(m[k] + v[k] / 2), "logUB", log_error_ub(mom[k], m[k]))
    print("sharpe k=1:", MU / SIG)
