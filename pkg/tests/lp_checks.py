"""Shared LP soundness helpers for the test suite."""
import numpy as np


def perturbation_gain(sol, trials=1000, seed=0):
    """Largest objective improvement over random feasible perturbations of sol.x."""
    p = sol.problem
    rng = np.random.default_rng(seed)
    x = sol.x
    zero = x <= 1e-12
    best, feasible = -np.inf, 0
    for _ in range(trials):
        d = rng.normal(size=len(x))
        d[zero] = np.abs(d[zero])
        free = ~zero
        if free.any():
            d[free] -= d.sum() / free.sum()
        else:
            d -= d.mean()
        d /= np.linalg.norm(d)
        for step in 10.0 ** -rng.uniform(2, 7, size=1):
            y = x + step * d
            # project back onto the equality
            y += (p.eq_rhs - y.sum()) / len(y)
            if y.min() < 0 or y.max() > 1:
                continue
            if np.min(p.ineq_lhs @ y - p.ineq_rhs) < 0:
                continue
            feasible += 1
            best = max(best, p.objective @ y - sol.objective_value)
    return best, feasible
