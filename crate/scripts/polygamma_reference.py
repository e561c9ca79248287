"""Reference values psi^(k)(x) from mpmath, frozen for the polygamma tests.

Usage: python3 scripts/polygamma_reference.py > crates/core/tests/data/polygamma_reference.txt
"""
import mpmath

mpmath.mp.dps = 60
print("# k x psi^(k)(x) (mpmath, 50 significant digits)")
for x in ["0.5", "1", "2.5", "7"]:
    for k in range(0, 21):
        v = mpmath.polygamma(k, mpmath.mpf(x))
        print(k, x, mpmath.nstr(v, 50, min_fixed=1, max_fixed=0))
