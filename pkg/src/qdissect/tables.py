"""Published dissection tables for the cubic partition pair chain.

Each entry: progression, alpha, 2-exponent, beta, modulus (None = exact) and
rows ``(s, t, c)`` in the published order (s descending).
"""

GOLDEN = {
    "table-3n+1": {
        "step": 1, "progression": (3, 1), "alpha": -1, "two_exponent": 6, "beta": 6, "modulus": None,
        "rows": ((2, 0, 2), (-2, 4, 7), (-6, 8, -36), (-10, 12, 27)),
    },
    "table-9n+7": {
        "step": 2, "progression": (9, 7), "alpha": -3, "two_exponent": 24, "beta": 18, "modulus": None,
        "rows": (
            (18, -4, 252), (14, 0, 16254), (10, 4, 54054), (6, 8, 54180),
            (2, 12, -3679992), (-2, 16, 33485805), (-6, 20, -201778452),
            (-10, 24, 846955116), (-14, 28, -2445337188), (-18, 32, 4746831012),
            (-22, 36, -6004220418), (-26, 40, 4706441496), (-30, 44, -2066242608),
            (-34, 48, 387420489),
        ),
    },
    "table-27n+7": {
        "step": 3, "progression": (27, 7), "alpha": -7, "two_exponent": 78, "beta": 54, "modulus": 2187,
        "rows": (
            (74, -24, 252), (70, -20, 504), (66, -16, 918), (62, -12, 2034), (58, -8, 396),
            (54, -4, 1755), (50, 0, 225), (46, 4, 1530), (42, 8, 1701), (38, 12, 1620),
        ),
    },
    "table-81n+61": {
        "step": 4, "progression": (81, 61), "alpha": -21, "two_exponent": 240, "beta": 162, "modulus": 2187,
        "rows": (
            (230, -72, 729), (226, -68, 1458), (218, -60, 1458), (214, -56, 729),
            (194, -36, 729), (190, -32, 1458), (182, -24, 1458), (178, -20, 729),
            (158, 0, 729), (154, 4, 1458), (146, 12, 1458), (142, 16, 729),
        ),
    },
}

# offsets L of b(3^k n + L) for k = 1..8
ELL_SEQUENCE = (1, 7, 7, 61, 61, 547, 547, 4921)
