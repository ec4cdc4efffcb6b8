"""Frozen reference values for the derivative chains of a1 in hyperbolic space.

``h`` is a1 of the mean-curvature power and ``g`` a1 of the Gauss-curvature power, both with
c = -1. ``i = 1`` differentiates in k1 directly; ``i = 2`` first swaps k1 and k2. Entries map
``(family, i, alpha, anchor)`` to ``{order: value(k)}`` where the derivative in the free
curvature is taken ``order`` times and evaluated at ``k`` (anchor ``"k2"``) or ``1/k``
(anchor ``"1/k2"``). ``TOP`` holds the highest nonconstant derivative as a function of the
free curvature ``x`` and ``k``.

Three entries are known misprints; ``CORRECTED`` holds the values that a1 actually produces.
"""

from fractions import Fraction as R

MEAN, GAUSS = "h", "g"

TABLES = {
    (MEAN, 1, R(1, 3), "k2"): {
        5: lambda k: -R(160, 3) * k * (9 + 2 * k**2),
        4: lambda k: -32 * (4 - 7 * k**2 + 7 * k**4),
        3: lambda k: -32 * k * (k**2 - 1) * (6 * k**2 - 5),
        2: lambda k: -R(32, 9) * (k**2 - 1) ** 2 * (29 * k**2 - 1),
        1: lambda k: -R(16, 3) * k * (k**2 - 1) ** 2 * (8 * k**2 - 5),
        0: lambda k: -16 * k**2 * (k**2 - 1) ** 3,
    },
    (MEAN, 2, R(1, 3), "k2"): {
        6: lambda k: -960 * (-1 + 44 * k**2),
        5: lambda k: -R(160, 3) * k * (-51 + 338 * k**2),
        4: lambda k: -32 * k**2 * (-79 + 187 * k**2),
        3: lambda k: -32 * k * (-3 + 4 * k**2) * (-1 + 13 * k**2),
        2: lambda k: -R(32, 9) * (k**2 - 1) * (-1 - 40 * k**2 + 113 * k**4),
        1: lambda k: -R(16, 3) * k * (k**2 - 1) ** 2 * (16 * k**2 - 1),
        0: lambda k: -16 * k**2 * (k**2 - 1) ** 3,
    },
    (MEAN, 1, R(1, 3), "1/k2"): {
        5: lambda k: -R(160, 3) / k * (18 - 9 * k**2 + 2 * k**4),
        4: lambda k: -R(32, 3) / k**2 * (45 - 33 * k**2 - 11 * k**4 + 11 * k**6),
        3: lambda k: -R(16, 3) / k**3 * (1 - k**2) * (5 + 4 * k**2) * (6 - 3 * k**2 - k**4),
        2: lambda k: -R(8, 3) / k**4 * (1 - k**2) ** 2 * (15 + 24 * k**2 + 3 * k**4 + 2 * k**6),
        1: lambda k: -R(4, 3) / k**5 * (1 - k**2) ** 2 * (6 + 13 * k**2 - 6 * k**4 - 3 * k**6 + 2 * k**8),
        0: lambda k: -R(4, 3) / k**6 * (1 - k**2) ** 4 * (1 + k**2) * (1 + 4 * k**2 + k**4),
    },
    (MEAN, 2, R(1, 3), "1/k2"): {
        6: lambda k: -960 / k**2 * (28 + 13 * k**2 + 2 * k**4),
        5: lambda k: -R(160, 3) / k**3 * (168 + 108 * k**2 + 3 * k**4 + 8 * k**6),
        4: lambda k: -R(32, 3) / k**4 * (210 + 165 * k**2 - 75 * k**4 + 13 * k**6 + 11 * k**8),
        3: lambda k: -R(16, 3) / k**5 * (84 + 75 * k**2 - 105 * k**4 + 4 * k**6 + 13 * k**8 + k**10),
        2: lambda k: -R(8, 3) / k**6 * (1 - k**2) * (28 + 55 * k**2 - 25 * k**4 - 15 * k**6 - 5 * k**8),
        1: lambda k: -R(4, 3) / k**7 * (1 - k**2) ** 2 * (8 + 24 * k**2 - 3 * k**4 - 14 * k**6 - 3 * k**8),
        0: lambda k: -R(4, 3) / k**8 * (1 - k**2) ** 4 * (1 + k**2) * (1 + 4 * k**2 + k**4),
    },
    (MEAN, 1, R(4), "k2"): {
        5: lambda k: -2160 * k * (k**2 - 1),
        4: lambda k: -96 * (5 + 5 * k**2 + 6 * k**4),
        3: lambda k: -456 * k * (k**2 - 1) * (k**2 + 1),
        2: lambda k: -80 * (k**2 - 1) ** 2 * (3 * k**2 + 1),
        1: lambda k: -8 * k * (k**2 - 1) ** 2 * (9 * k**2 - 7),
        0: lambda k: -16 * k**2 * (k**2 - 1) ** 3,
    },
    (MEAN, 2, R(4), "k2"): {
        6: lambda k: -720 * (-5 + 77 * k**2),
        5: lambda k: -240 * k * (-15 + 47 * k**2),
        4: lambda k: -96 * k**2 * (25 + 11 * k**2),
        3: lambda k: -24 * k * (-51 + 60 * k**2 + 7 * k**4),
        2: lambda k: -32 * (k**2 - 1) * (-5 + 9 * k**2 + k**4),
        1: lambda k: -8 * k * (k**2 - 1) ** 2 * (3 + 7 * k**2),
        0: lambda k: -16 * k**2 * (k**2 - 1) ** 3,
    },
    (MEAN, 1, R(4), "1/k2"): {
        5: lambda k: -R(720) / k * (1 - k**2) * (5 + 8 * k**2),
        4: lambda k: -R(24) / k**2 * (75 - 55 * k**2 - 55 * k**4 + 99 * k**6),
        3: lambda k: -R(24) / k**3 * (1 - k**2) * (25 - 20 * k**2 + 6 * k**4 + 15 * k**6),
        2: lambda k: -R(2) / k**4 * (1 - k**2) ** 2 * (75 - 45 * k**2 + 37 * k**4 + 21 * k**6),
        1: lambda k: -R(2) / k**5 * (1 - k**2) ** 2 * (15 - 17 * k**2 + 7 * k**4 + 9 * k**6 - 6 * k**8),
        0: lambda k: -R(1) / k**6 * (1 - k**2) ** 4 * (1 + k**2) * (5 - 2 * k**2 + 5 * k**4),
    },
    (MEAN, 2, R(4), "1/k2"): {
        6: lambda k: -R(720) / k**2 * (140 - 89 * k**2 + 21 * k**4),
        5: lambda k: -R(240) / k**3 * (140 - 141 * k**2 + 63 * k**4 - 30 * k**6),
        4: lambda k: -R(24) / k**4 * (350 - 495 * k**2 + 315 * k**4 - 125 * k**6 + 99 * k**8),
        3: lambda k: -R(24) / k**5 * (70 - 130 * k**2 + 105 * k**4 - 26 * k**6 + 9 * k**8 - 12 * k**10),
        2: lambda k: -R(2) / k**6 * (1 - k**2) * (140 - 187 * k**2 + 128 * k**4 + 46 * k**6 - 52 * k**8 - 11 * k**10),
        1: lambda k: -R(2) / k**7 * (1 - k**2) ** 2 * (20 - 17 * k**2 + 9 * k**4 + 9 * k**6 - 13 * k**8),
        0: lambda k: -R(1) / k**8 * (1 - k**2) ** 4 * (1 + k**2) * (5 - 2 * k**2 + 5 * k**4),
    },
    (GAUSS, 1, R(1), "k2"): {
        1: lambda k: -12 * k**2 * (k**2 - 1) ** 2,
        0: lambda k: -4 * k**3 * (k**2 - 1) ** 2,
    },
    (GAUSS, 2, R(1), "k2"): {
        2: lambda k: -8 * k * (-3 + k**2 + 6 * k**4),
        1: lambda k: -16 * k**4 * (k**2 - 1),
        0: lambda k: -4 * k**3 * (k**2 - 1) ** 2,
    },
    (GAUSS, 1, R(1), "1/k2"): {
        1: lambda k: -R(6) / k**2 * (k**2 - 1) ** 2 * (1 + k**2),
        0: lambda k: -R(2) / k**3 * (k**2 - 1) ** 2 * (1 + k**4),
    },
    (GAUSS, 2, R(1), "1/k2"): {
        2: lambda k: -R(4) / k**3 * (1 + k**2) * (2 - k**2) * (5 - k**2),
        1: lambda k: -R(2) / k**4 * (1 - k**2) * (5 + 2 * k**2 + k**4),
        0: lambda k: -R(2) / k**5 * (1 - k**2) ** 2 * (1 + k**4),
    },
    (GAUSS, 1, R(1, 4), "k2"): {
        2: lambda k: -R(3, 2) * k * (k**2 - 1) * (9 * k**2 - 5),
        1: lambda k: -9 * k**2 * (k**2 - 1) ** 2,
        0: lambda k: -4 * k**3 * (k**2 - 1) ** 2,
    },
    (GAUSS, 2, R(1, 4), "k2"): {
        2: lambda k: -R(1, 2) * k * (-9 - 74 * k**2 + 147 * k**4),
        1: lambda k: -k**2 * (k**2 - 1) * (-3 + 19 * k**2),
        0: lambda k: -4 * k**3 * (k**2 - 1) ** 2,
    },
    (GAUSS, 1, R(1, 4), "1/k2"): {
        2: lambda k: -R(3, 2) / k * (1 - k**2) * (11 - 5 * k**2 - 2 * k**4),
        1: lambda k: -R(3, 4) / k**2 * (1 - k**2) ** 2 * (3 - 2 * k + k**2) * (3 + 2 * k + k**2),
        0: lambda k: -R(2) / k**3 * (1 - k**2) ** 2 * (1 + k**4),
    },
    (GAUSS, 2, R(1, 4), "1/k2"): {
        2: lambda k: -1 / (2 * k**3) * (95 - 42 * k**2 + 27 * k**4 - 16 * k**6),
        1: lambda k: -1 / (4 * k**4) * (1 - k**2) * (43 - 5 * k**2 + 29 * k**4 - 3 * k**6),
        0: lambda k: -R(2) / k**5 * (1 - k**2) ** 2 * (1 + k**4),
    },
}

# (family, i, alpha) -> (order, value(x, k)) for the top derivative in the free curvature x
TOP = {
    (MEAN, 1, R(1, 3)): (6, lambda x, k: R(-960)),
    (MEAN, 2, R(1, 3)): (7, lambda x, k: -13440 * (k + 4 * x)),
    (MEAN, 1, R(4)): (6, lambda x, k: -720 * (5 + 11 * k**2)),
    (MEAN, 2, R(4)): (7, lambda x, k: -20160 * (10 * x - 3 * k)),
    (GAUSS, 1, R(1)): (2, lambda x, k: -12 * ((k**2 + 1) * (x - k) + 2 * k**3 * (k * x - 1))),
    (GAUSS, 2, R(1)): (3, lambda x, k: -12 * (9 * (x**2 - k**2) + 5 * (k * x - 1) + x**2 + 8 * k**3 * x + 7 * k * x)),
    (GAUSS, 1, R(1, 4)): (3, lambda x, k: -R(3, 2) * (5 - 16 * k**2 + 7 * k**4 + 12 * k * x)),
    (GAUSS, 2, R(1, 4)): (3, lambda x, k: -3 * (-5 + 14 * k**3 * x + 25 * x**2 + 6 * k * x * (-4 + 5 * x**2)
                                                + 6 * k**2 * (-1 + 5 * x**2))),
}

# what a1 gives for the three misprinted entries; the sign claims are unaffected
CORRECTED = {
    ((MEAN, 1, R(1, 3), "k2"), 2): lambda k: -R(32, 9) * (k**2 - 1) ** 2 * (29 * k**2 - 5),
    ((MEAN, 2, R(1, 3), "1/k2"), 2): lambda k: -R(8, 3) / k**6 * (1 - k**2) * (28 + 55 * k**2 - 25 * k**4
                                                                              - 15 * k**6 + 5 * k**8),
    ((MEAN, 2, R(4), "k2"), 2): lambda k: -32 * (k**2 - 1) * (4 * k**4 + 9 * k**2 - 5),
}
