"""Reference statistics for the data-module tests, from scipy and statsmodels.

The series is deterministic so the C++ test can rebuild it exactly.
"""
import numpy as np
from scipy import special, stats
from statsmodels.stats.diagnostic import lilliefors
from statsmodels.tsa.stattools import acf, pacf

i = np.arange(60)
x = np.sin(1.3 * i) + 0.5 * np.cos(0.7 * i) + 0.01 * i
np.set_printoptions(precision=17)
print("acf", acf(x, nlags=5, adjusted=False, fft=False)[1:])
print("pacf", pacf(x, nlags=5, method="ldb")[1:])
mu, sd = x.mean(), x.std(ddof=1)
ks = stats.kstest(x, "norm", args=(mu, sd), method="asymp")
print("ks", repr(ks.statistic), repr(ks.pvalue))
print("kolmogorov sf", repr(special.kolmogorov(1.0)), repr(special.kolmogorov(0.5)), repr(special.kolmogorov(2.0)))
print("lilliefors", lilliefors(x, dist="norm", pvalmethod="approx"))
for d, n in [(0.05, 150), (0.08, 60), (0.12, 40), (0.2, 30), (0.06, 400)]:
    from statsmodels.stats._lilliefors import pval_lf
    print("pval_lf", d, n, repr(pval_lf(d, n)))


def pval_dallal_wilkinson_stephens(d, n):
    """p > 0.1 continuation on the modified statistic, as in R nortest::lillie.test."""
    p = pval_lf(d, n)
    if p <= 0.1:
        return p
    kk = (np.sqrt(n) - 0.01 + 0.85 / np.sqrt(n)) * d
    if kk <= 0.302:
        return 1.0
    if kk <= 0.5:
        return 2.76773 - 19.828315 * kk + 80.709644 * kk**2 - 138.55152 * kk**3 + 81.218052 * kk**4
    if kk <= 0.9:
        return -4.901232 + 40.662806 * kk - 97.490286 * kk**2 + 94.029866 * kk**3 - 32.355711 * kk**4
    if kk <= 1.31:
        return 6.198765 - 19.558097 * kk + 23.186922 * kk**2 - 12.234627 * kk**3 + 2.423045 * kk**4
    return 0.0


for d, n in [(0.05, 150), (0.08, 60), (0.12, 40), (0.03, 150), (0.02, 100), (0.2, 30), (0.06, 400)]:
    print("lillie", d, n, repr(pval_dallal_wilkinson_stephens(d, n)))
