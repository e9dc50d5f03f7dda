"""Published DL-trail rows used as regression fixtures.

Each desk-scale row carries the full endpoint data of its differential and
linear characteristics so trails can be re-derived and checked against the
printed component values. Rows for the wide variants only support component
re-verification (middle correlation and composition); their trail searches
are out of desk scale.

Row fields: (cipher, (rd, rm, rl), delta_in, delta_mid, diff_weight,
lambda_mid, lambda_out, lin_weight, mid_log2_abs, total_log2)
mid_log2_abs / total_log2 are the printed 2-decimal magnitudes.

The 15-round Simon32 row prints its lambda pair as (0x0, 0x1000); no trail
with that root exists at the printed weight, while (0x1000, 0x0) is the
4-bit rotation image of the 13-round row's root and connects exactly, so
the corrected pair is used here.
"""

SIMON32_ROWS = [
    ("simon32", (5, 2, 4), (0x8, 0x22), (0x22, 0x8), 8,
     (0x44, 0x10), (0x40, 0x10), 3, 0.0, 14.00),
    ("simon32", (5, 5, 3), (0x800, 0x2208), (0x2200, 0x800), 8,
     (0x0, 0x100), (0x10, 0x45), 4, 0.63, 16.63),
    ("simon32", (5, 5, 3), (0x8, 0x22), (0x22, 0x8), 8,
     (0x100, 0x0), (0x40, 0x110), 2, 2.73, 14.73),
    ("simon32", (5, 3, 5), (0x100, 0x440), (0x440, 0x100), 8,
     (0x2208, 0x800), (0x800, 0x2200), 4, 0.83, 16.83),
    ("simon32", (5, 5, 4), (0x8, 0x22), (0x22, 0x8), 8,
     (0x0, 0x1), (0x400, 0x1101), 5, 0.63, 18.63),
    ("simon32", (4, 6, 4), (0x4, 0x11), (0x4, 0x1), 6,
     (0x0, 0x8000), (0x200, 0x8880), 5, 1.88, 17.88),
    ("simon32", (7, 3, 4), (0x100, 0x645), (0x44, 0x10), 14,
     (0x8000, 0x2), (0x8000, 0x2002), 3, 0.0, 20.00),
    ("simon32", (5, 5, 5), (0x80, 0x220), (0x220, 0x80), 8,
     (0x1000, 0x0), (0x40, 0x1110), 5, 2.73, 20.73),
]

SIMECK32_ROWS = [
    ("simeck32", (5, 2, 5), (0x10, 0x28), (0x28, 0x10), 8,
     (0x5, 0x2), (0x2, 0x5), 4, 0.0, 16.00),
    ("simeck32", (5, 5, 4), (0x2000, 0x7400), (0x400, 0x0), 10,
     (0x100, 0x200), (0x100, 0x288), 3, 0.63, 16.63),
    ("simeck32", (5, 6, 3), (0x100, 0x2a0), (0x20, 0x0), 10,
     (0x10, 0x0), (0x8, 0x14), 2, 1.99, 15.99),
    ("simeck32", (6, 3, 5), (0x4, 0x800a), (0x1, 0x8000), 12,
     (0x5100, 0x2000), (0x2000, 0x5000), 4, 0.0, 20.00),
]

SIMON48_ROWS = [
    ("simon48", (5, 4, 5), (0x8, 0x22), (0x22, 0x8), 8,
     (0x220, 0x80), (0x80, 0x220), 4, 0.58, 16.58),
    ("simon48", (7, 4, 4), (0x80, 0x222), (0x22, 0x8), 14,
     (0x20, 0x80), (0x20, 0x88), 3, 0.19, 20.19),
    ("simon48", (5, 5, 5), (0x8, 0x32), (0x22, 0x8), 8,
     (0x1, 0x0), (0x40000, 0x110001), 5, 0.66, 18.66),
    ("simon48", (7, 3, 5), (0x800, 0x2220), (0x220, 0x80), 14,
     (0x11, 0x4), (0x4, 0x11), 4, 0.0, 22.00),
    ("simon48", (7, 5, 4), (0x400, 0x1110), (0x110, 0x40), 14,
     (0x8, 0x0), (0x800008, 0x200000), 4, 0.66, 22.66),
    ("simon48", (7, 5, 4), (0x400, 0x1110), (0x110, 0x40), 14,
     (0x8, 0x20), (0x8, 0x22), 3, 1.30, 21.30),
    ("simon48", (5, 6, 5), (0x8, 0x32), (0x22, 0x8), 8,
     (0x4, 0x0), (0x100000, 0x440004), 5, 3.01, 21.01),
    ("simon48", (7, 6, 4), (0x80, 0x222), (0x22, 0x8), 14,
     (0x0, 0x1), (0x40000, 0x110001), 5, 0.66, 24.66),
    ("simon48", (6, 6, 5), (0x200, 0x888), (0x20, 0x8), 12,
     (0x4, 0x0), (0x100000, 0x440004), 5, 2.08, 24.08),
    ("simon48", (7, 4, 6), (0x80, 0x222), (0x22, 0x8), 14,
     (0x400000, 0x1), (0x40000, 0x110001), 6, 0.0, 26.00),
    ("simon48", (7, 4, 7), (0x80, 0x222), (0x22, 0x8), 14,
     (0x220, 0x80), (0x8, 0x222), 7, 0.58, 28.58),
]

SIMECK48_ROWS = [
    ("simeck48", (6, 6, 5), (0x80, 0x140), (0x200, 0x140), 12,
     (0x10, 0x0), (0x2, 0x15), 5, 0.37, 22.37),
    ("simeck48", (6, 6, 5), (0x400, 0xa80), (0x100, 0x80), 12,
     (0x28, 0x10), (0x10, 0x28), 4, 2.07, 22.07),
    ("simeck48", (5, 7, 5), (0x800, 0x1500), (0x100, 0x0), 10,
     (0x10, 0x0), (0x2, 0x15), 5, 1.44, 21.44),
    ("simeck48", (8, 4, 5), (0x8000, 0x15000), (0x8000, 0x5000), 18,
     (0x500, 0x200), (0x200, 0x500), 4, 0.0, 26.00),
    ("simeck48", (6, 6, 6), (0x80, 0x140), (0x200, 0x140), 12,
     (0x10, 0x20), (0x4, 0x2a), 6, 0.75, 24.75),
    ("simeck48", (8, 7, 3), (0x80, 0x150), (0x80, 0x50), 18,
     (0x8, 0x0), (0x4, 0xa), 2, 2.06, 24.06),
    ("simeck48", (7, 4, 7), (0x8000, 0x14000), (0x54000, 0x20000), 14,
     (0x2800, 0x1000), (0x400, 0x2a00), 7, 0.0, 28.00),
    ("simeck48", (8, 4, 7), (0x8000, 0x15000), (0x8000, 0x5000), 18,
     (0x500, 0x200), (0x80, 0x540), 7, 0.0, 32.00),
]

DESK_ROWS = SIMON32_ROWS + SIMECK32_ROWS + SIMON48_ROWS + SIMECK48_ROWS

# Wide variants: component re-verification only (middle magnitude and the
# composition of printed columns); full searches are declared out of desk
# scale. Fields: (cipher, (rd, rm, rl), delta_mid, diff_weight, lambda_mid,
# lin_weight, mid_log2_abs, total_log2)
WIDE_ROWS = [
    ("simon64", (5, 6, 5), (0x88, 0x20), 8, (0x4, 0x0), 5, 0.59, 18.59),
    ("simon64", (7, 7, 6), (0x88, 0x20), 14, (0x0, 0x4), 10, 0.58, 34.58),
    ("simon64", (7, 7, 6), (0x88, 0x20), 14, (0x20, 0x80), 6, 7.05, 33.06),
    ("simon64", (8, 6, 6), (0x80, 0x22), 18, (0x80, 0x200), 6, 2.46, 32.46),
    ("simon64", (9, 6, 5), (0x2220, 0x800), 20, (0x200, 0x0), 5, 3.16, 33.16),
    ("simon64", (9, 7, 5), (0x2220, 0x800), 20, (0x800, 0x0), 5, 6.39, 36.39),
    ("simon64", (8, 5, 8), (0x800, 0x220), 18, (0x20, 0x880), 9, 0.91, 36.91),
    ("simon96", (9, 5, 9), (0x44400, 0x10000), 20, (0x222, 0x8), 10,
     0.0, 40.00),
    ("simon96", (10, 6, 9), (0x11100, 0x4000), 26, (0x222, 0x8), 10,
     0.66, 46.66),
    ("simon96", (9, 8, 8), (0x2220, 0x800), 20, (0x20, 0x880), 9,
     6.41, 44.41),
    ("simon96", (11, 6, 9), (0x44400, 0x10000), 30, (0x888, 0x20), 10,
     0.66, 50.66),
    ("simon96", (9, 9, 8), (0x222000, 0x80000), 20, (0x1000, 0x4000), 11,
     8.16, 50.16),
    ("simon128", (10, 9, 12), (0x22200000, 0x8000000), 26,
     (0x10000, 0x440000), 18, 0.70, 62.70),
    ("simon128", (13, 11, 7), (0x22200, 0x8000), 38, (0x100, 0x400), 9,
     5.35, 61.35),
    ("simon128", (13, 9, 9), (0x22200, 0x8000), 38, (0x888, 0x20), 10,
     3.73, 61.73),
    ("simon128", (11, 9, 12), (0x1110000, 0x400000), 30, (0x800, 0x22000),
     18, 0.70, 66.70),
    ("simon128", (13, 10, 9), (0x222000, 0x80000), 38, (0x4400, 0x1000),
     12, 3.61, 65.61),
    ("simon128", (11, 8, 13), (0x1110000, 0x400000), 30, (0x22200, 0x800),
     19, 0.22, 68.22),
    ("simeck64", (7, 7, 8), (0x1400, 0x800), 14, (0x40, 0x280), 9,
     0.44, 32.44),
    ("simeck64", (4, 9, 9), (0x100, 0x80), 6, (0x40, 0x0), 11, 1.04, 29.04),
    ("simeck64", (7, 7, 9), (0x1400, 0x800), 14, (0x100, 0x0), 11,
     0.13, 36.13),
    ("simeck64", (4, 10, 9), (0x100, 0x80), 6, (0x40, 0x0), 11, 4.44, 32.44),
    ("simeck64", (4, 9, 10), (0x100, 0x80), 6, (0x20, 0x40), 12,
     3.04, 33.04),
    ("simeck64", (7, 7, 10), (0x1400, 0x800), 14, (0x100, 0x200), 12,
     0.13, 38.13),
    ("simeck64", (4, 9, 11), (0x100, 0x80), 6, (0x40, 0x0), 14, 1.04, 35.04),
    ("simeck64", (11, 6, 7), (0x28, 0x100), 26, (0x50, 0x20), 7, 0.0, 40.00),
    ("simeck64", (7, 7, 11), (0x1400, 0x800), 14, (0x110, 0x0), 13,
     1.04, 41.04),
    ("simeck64", (11, 7, 7), (0x280, 0x100), 26, (0x28, 0x10), 7,
     1.04, 41.04),
    ("simeck64", (4, 10, 11), (0x10, 0x8), 6, (0x0, 0x4), 16, 1.04, 39.04),
]

# Experimental verification rows from the published table (full scale used
# 2^32 / 2^34 samples and 100 keys; desk scale shrinks both).
EXPERIMENT_ROWS = [
    ("simon32", 11, (0x8, 0x22), (0x40, 0x10), -7.91, 0.3),
    ("simeck32", 12, (0x10, 0x28), (0x2, 0x5), -8.92, 0.3),
    ("simon32", 13, (0x100, 0x440), (0x800, 0x2200), -10.95, 0.4),
]
