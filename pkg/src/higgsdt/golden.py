"""Published values of Omega_ell(r) used by the self-test.

Keys are ``(ell, r)``; values map exponents of ``w`` to coefficients.
"""

GOLDEN: dict[tuple[int, int], dict[int, int]] = {
    (1, 1): {2: 1},
    (1, 2): {5: 1},
    (1, 3): {10: 1, 8: 1},
    (1, 4): {17: 1, 15: 1, 13: 3, 11: 2},
    (1, 5): {26: 1, 24: 1, 22: 3, 20: 5, 18: 7, 16: 9, 14: 5},
    (1, 6): {37: 1, 35: 1, 33: 3, 31: 5, 29: 10, 27: 13, 25: 22, 23: 27, 21: 32,
             19: 29, 17: 13},
    (2, 1): {3: 1},
    (2, 2): {9: 1, 7: 1},
    (2, 3): {19: 1, 17: 1, 15: 3, 13: 4, 11: 3},
    (2, 4): {33: 1, 31: 1, 29: 3, 27: 5, 25: 9, 23: 13, 21: 18, 19: 22, 17: 20, 15: 10},
    (2, 5): {51: 1, 49: 1, 47: 3, 45: 5, 43: 10, 41: 15, 39: 26, 37: 38, 35: 56,
             33: 77, 31: 105, 29: 131, 27: 156, 25: 165, 23: 154, 21: 103, 19: 40},
    (2, 6): {73: 1, 71: 1, 69: 3, 67: 5, 65: 10, 63: 16, 61: 28, 59: 42, 57: 68,
             55: 100, 53: 147, 51: 207, 49: 292, 47: 392, 45: 524, 43: 678,
             41: 858, 39: 1050, 37: 1253, 35: 1427, 33: 1537, 31: 1531, 29: 1364,
             27: 1022, 25: 557, 23: 171},
    (3, 1): {4: 1},
    (3, 2): {13: 1, 11: 1, 9: 2},
    (3, 3): {28: 1, 26: 1, 24: 3, 22: 4, 20: 7, 18: 9, 16: 9, 14: 6},
    (3, 4): {49: 1, 47: 1, 45: 3, 43: 5, 41: 9, 39: 13, 37: 22, 35: 30, 33: 45,
             31: 56, 29: 75, 27: 85, 25: 97, 23: 87, 21: 63, 19: 28},
    (3, 5): {76: 1, 74: 1, 72: 3, 70: 5, 68: 10, 66: 15, 64: 26, 62: 38, 60: 60,
             58: 85, 56: 125, 54: 172, 52: 238, 50: 315, 48: 417, 46: 529,
             44: 669, 42: 819, 40: 979, 38: 1130, 36: 1247, 34: 1314, 32: 1274,
             30: 1120, 28: 816, 26: 457, 24: 155},
}

QUICK_MAX_RANK = 3
