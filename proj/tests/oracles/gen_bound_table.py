"""Freezes a high-precision reference table for the margin bound.

Evaluated with mpmath at 50 digits from the exact binary values of the
double inputs. Regenerate with:

    python3 tests/oracles/gen_bound_table.py > tests/bound_oracle_table.inc
"""
import random

import mpmath

mpmath.mp.dps = 50


def reference(rho, d, m, delta):
    rho, delta = mpmath.mpf(rho), mpmath.mpf(delta)
    d, m = mpmath.mpf(d), mpmath.mpf(m)
    first = (2 / rho) * mpmath.sqrt(2 * d * mpmath.log(mpmath.e * m / d) / m)
    second = mpmath.sqrt(mpmath.log(1 / delta) / (2 * m))
    return first + second


def main():
    rng = random.Random(20260115)
    rhos = [0.001, 0.01, 0.05, 0.1, 0.2, 0.25, 0.5, 0.75, 0.9, 1.0]
    deltas = [0.001, 0.01, 0.05, 0.1, 0.5, 1.0]
    print("// Generated by tests/oracles/gen_bound_table.py; do not edit.")
    print("// {rho, d, m, delta, expected}")
    for _ in range(100):
        rho = rng.choice(rhos) if rng.random() < 0.5 else round(rng.uniform(1e-3, 1.0), 6)
        m = rng.choice([1, 2, 10, 50, 100, 500, 1000, 2000, 10000, 126840, 10**6])
        # Stay clear of d ~ e*m, where ln(e m / d) vanishes.
        d = rng.randint(1, max(1, 2 * m)) if m < 1000 else rng.randint(1, 1000)
        delta = rng.choice(deltas)
        value = reference(rho, d, m, delta)
        print(f"{{{rho!r}, {d}, {m}, {delta!r}, {mpmath.nstr(value, 25)}}},")


if __name__ == "__main__":
    main()
