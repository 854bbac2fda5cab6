"""Gram-matrix eigenvalue oracle for machine realizability.

For (zeta, eta, kappa) the apparatus vectors Q0, Q1, Y0, Y1 have a Gram
matrix fixed up to the free overlap q = <Q0|Q1>. A parameter triple is
realizable iff that matrix is PSD for some q. This scans q densely and
then refines with golden-section search (lambda_min is concave in q).
"""
import numpy as np

def gram(z, e, k, q):
    a = 1 - 2 * z
    return np.array([[a, q, k / 2, e / 2],
                     [q, a, e / 2, k / 2],
                     [k / 2, e / 2, z, 0],
                     [e / 2, k / 2, 0, z]])

def best_min_eig(z, e, k):
    a = 1 - 2 * z
    f = lambda q: np.linalg.eigvalsh(gram(z, e, k, q))[0]
    qs = np.linspace(-a, a, 65)
    vals = [f(q) for q in qs]
    i = int(np.argmax(vals))
    lo, hi = qs[max(i - 1, 0)], qs[min(i + 1, len(qs) - 1)]
    g = (np.sqrt(5) - 1) / 2
    for _ in range(60):
        m1 = hi - g * (hi - lo); m2 = lo + g * (hi - lo)
        if f(m1) < f(m2):
            lo = m1
        else:
            hi = m2
    return max(max(vals), f(0.5 * (lo + hi)))

if __name__ == '__main__':
    n = 50
    feas = 0
    for i in range(n + 1):
        z = 0.5 * i / n
        for j in range(n + 1):
            e = j / n
            for k in range(n + 1):
                kk = k / n
                closed = kk * kk + e * e - 4 * z * (1 - 2 * z)
                if closed > 1e-9:
                    continue  # Schur/closed-form says infeasible; spot checks below
                if best_min_eig(z, e, kk) >= -1e-10:
                    feas += 1
    print("feasible rows at 50 steps:", feas, "of", (n + 1) ** 3, feas / (n + 1) ** 3)
    rng = np.random.default_rng(7)
    bad = 0
    for _ in range(3000):
        z, e, k = rng.uniform(0, 0.5), rng.uniform(0, 0.75), rng.uniform(0, 0.75)
        m = k * k + e * e - 4 * z * (1 - 2 * z)
        if abs(m) < 1e-9:
            continue
        bad += (best_min_eig(z, e, k) >= -1e-12) != (m <= 0)
    print("closed vs oracle disagreements on 3000 samples:", bad)
