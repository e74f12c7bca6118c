"""Published Gap/Std(/Hit) figures for juxtaposition in comparison reports.

Only ibinabc, binabc, disabc and abcbin are implemented in this package;
the GA-SP, BPSO and binAAA columns are reference numbers only.
"""

INSTANCES = (
    "cap71", "cap72", "cap73", "cap74",
    "cap101", "cap102", "cap103", "cap104",
    "cap131", "cap132", "cap133", "cap134",
    "capa", "capb", "capc",
)

# (gap, std) per instance, ABC-variant comparison
ABC_VARIANTS = {
    "binabc": [
        (0.00, 0.00), (0.00, 0.00), (0.00, 0.00), (0.00, 0.00),
        (0.00, 0.00), (0.00, 0.00), (0.00, 0.00), (0.00, 0.00),
        (0.00, 0.00), (0.00, 0.00),
        (1215.00, 200.24),  # printed as is; almost certainly a misplaced decimal
        (0.00, 0.00),
        (2.96, 236833.50), (2.51, 9143.13), (2.58, 82312.70),
    ],
    "disabc": [
        (0.00, 0.00), (0.00, 0.00), (0.00, 0.00), (0.00, 0.00),
        (0.00, 0.00), (0.00, 0.00), (0.00, 0.00), (0.00, 0.00),
        (0.62, 2337.64), (0.09, 813.37), (0.03, 359.03), (0.00, 0.00),
        (0.15, 74782.61), (3.30, 109738.50), (4.70, 95778.78),
    ],
    "abcbin": [
        (0.00, 0.00), (0.00, 0.00), (0.00, 0.00), (0.00, 0.00),
        (0.00, 0.00), (0.00, 0.00), (0.01, 85.67), (0.00, 0.00),
        (0.20, 1065.73), (0.02, 213.28), (0.07, 561.34), (0.00, 0.00),
        (3.17, 268685.20), (2.82, 88452.80), (2.04, 78162.20),
    ],
    "ibinabc": [
        (0.00, 0.00), (0.00, 0.00), (0.00, 0.00), (0.00, 0.00),
        (0.00, 0.00), (0.00, 0.00), (0.00, 0.00), (0.00, 0.00),
        (0.00, 0.00), (0.00, 0.00), (0.00, 0.00), (0.00, 0.00),
        (0.00, 0.00), (0.07, 23762.93), (0.06, 11326.02),
    ],
}

# (gap, std, hit) per instance, other metaheuristics
OTHER_METHODS = {
    "ga-sp": [
        (0.000, 0.000, 30), (0.000, 0.000, 30), (0.067, 899.650, 19), (0.000, 0.000, 30),
        (0.068, 421.655, 11), (0.000, 0.000, 30), (0.064, 505.036, 6), (0.000, 0.000, 30),
        (0.068, 720.877, 16), (0.000, 0.000, 30), (0.091, 685.076, 10), (0.000, 0.000, 30),
        (0.046, 22451.206, 24), (0.584, 66658.649, 9), (0.705, 51848.280, 2),
    ],
    "bpso": [
        (0.000, 0.000, 30), (0.000, 0.000, 30), (0.024, 634.625, 26), (0.009, 500.272, 29),
        (0.043, 428.658, 18), (0.010, 321.588, 28), (0.049, 521.237, 14), (0.041, 1432.239, 28),
        (0.171, 1505.749, 10), (0.058, 1055.238, 21), (0.083, 690.192, 10), (0.195, 2594.211, 18),
        (1.691, 319855.431, 8), (1.403, 135326.728, 5), (1.622, 115156.444, 1),
    ],
    "binaaa": [
        (0.000, 0.000, 30), (0.000, 0.000, 30), (0.000, 0.000, 30), (0.000, 0.000, 30),
        (0.000, 0.000, 30), (0.000, 0.000, 30), (0.000, 0.000, 30), (0.000, 0.000, 30),
        (0.000, 0.000, 30), (0.000, 0.000, 30), (0.000, 0.000, 30), (0.000, 0.000, 30),
        (0.000, 0.000, 30), (0.248, 39224.744, 15), (0.295, 29766.311, 1),
    ],
    "ibinabc": [
        (0.000, 0.000, 30), (0.000, 0.000, 30), (0.000, 0.000, 30), (0.000, 0.000, 30),
        (0.000, 0.000, 30), (0.000, 0.000, 30), (0.000, 0.000, 30), (0.000, 0.000, 30),
        (0.000, 0.000, 30), (0.000, 0.000, 30), (0.000, 0.000, 30), (0.000, 0.000, 30),
        (0.000, 0.000, 30), (0.070, 23762.929, 24), (0.062, 11326.015, 13),
    ],
}


def published(method: str, instance: str) -> dict | None:
    """Published figures for ``method`` on ``instance``, or None if not reported."""
    key = instance.lower()
    if key not in INSTANCES:
        return None
    idx = INSTANCES.index(key)
    out = {}
    if method in ABC_VARIANTS:
        g, s = ABC_VARIANTS[method][idx]
        out.update(gap=g, std=s)
    if method in OTHER_METHODS:
        g, s, h = OTHER_METHODS[method][idx]
        out.update(gap=g, std=s, hit=h)
    return out or None
