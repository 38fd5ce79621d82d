"""Printed values of the published comparison tables, used as test fixtures.

Limit tables hold 5-decimal strings in column order (numeric lower/upper,
normal lower/upper, Clopper-Pearson lower/upper); error tables hold
(side, n, x, error-percent string); accuracy tables hold 8-decimal strings
(lower at k, lower at 2k, upper at k, upper at 2k) for k = 2^20.
"""

TABLE_I = {
    (5, 0): ("0.00421", "0.45925", "0.00000", "0.00000", "0.00000", "0.52181"),
    (5, 1): ("0.04327", "0.64123", "-0.15061", "0.55061", "0.00505", "0.71641"),
    (5, 2): ("0.11811", "0.77722", "-0.02941", "0.82941", "0.05274", "0.85336"),
    (5, 3): ("0.22277", "0.88188", "0.17058", "1.02941", "0.14663", "0.94725"),
    (5, 4): ("0.35876", "0.95672", "0.44938", "1.15061", "0.28358", "0.99494"),
    (5, 5): ("0.54074", "0.99578", "1.00000", "1.00000", "0.47818", "1.00000"),
    (1000, 0): ("0.00002", "0.00367", "0.00000", "0.00000", "0.00000", "0.00368"),
    (1000, 500): ("0.46906", "0.53093", "0.46900", "0.53099", "0.46854", "0.53145"),
    (1000, 1000): ("0.99632", "0.99997", "1.00000", "1.00000", "0.99631", "1.00000"),
}

TABLE_IV = {
    (5, 0): ("0.00083", "0.58648", "0.00000", "0.00000", "0.00000", "0.65342"),
    (5, 1): ("0.01872", "0.74600", "-0.26152", "0.66152", "0.00100", "0.81490"),
    (5, 2): ("0.06627", "0.85640", "-0.16524", "0.96524", "0.02288", "0.91717"),
    (5, 3): ("0.14359", "0.93372", "0.03475", "1.16524", "0.08282", "0.97711"),
    (5, 4): ("0.25399", "0.98127", "0.33847", "1.26152", "0.18509", "0.99899"),
    (5, 5): ("0.41351", "0.99916", "1.00000", "1.00000", "0.34657", "1.00000"),
    (1000, 0): ("0.00000", "0.00527", "0.00000", "0.00000", "0.00000", "0.00528"),
    (1000, 500): ("0.45937", "0.54062", "0.45920", "0.54079", "0.45885", "0.54114"),
    (1000, 1000): ("0.99472", "0.99999", "1.00000", "1.00000", "0.99471", "1.00000"),
}

TABLE_II = (
    ("lower", 5, 3, "-23.428"),
    ("lower", 5, 4, "25.258"),
    ("lower", 1000, 500, "-0.011"),
    ("upper", 5, 1, "-14.131"),
    ("upper", 5, 2, "6.715"),
    ("upper", 1000, 500, "0.010"),
)

TABLE_III = (
    ("lower", 5, 1, "-88.327"),
    ("lower", 5, 2, "-55.344"),
    ("lower", 5, 3, "-34.179"),
    ("lower", 5, 4, "-20.955"),
    ("lower", 5, 5, "-11.569"),
    ("lower", 1000, 500, "-0.109"),
    ("lower", 1000, 1000, "-0.000"),
    ("upper", 5, 0, "13.622"),
    ("upper", 5, 1, "11.724"),
    ("upper", 5, 2, "9.797"),
    ("upper", 5, 3, "7.412"),
    ("upper", 5, 4, "3.994"),
    ("upper", 1000, 0, "0.100"),
    ("upper", 1000, 500, "0.096"),
)

TABLE_V = (
    ("lower", 5, 3, "-75.799"),
    ("lower", 5, 4, "33.261"),
    ("lower", 1000, 500, "-0.035"),
    ("upper", 5, 1, "-11.324"),
    ("upper", 5, 2, "12.709"),
    ("upper", 1000, 500, "0.030"),
)

TABLE_VI = (
    ("lower", 5, 1, "-94.647"),
    ("lower", 5, 2, "-65.477"),
    ("lower", 5, 3, "-42.317"),
    ("lower", 5, 4, "-27.124"),
    ("lower", 5, 5, "-16.188"),
    ("lower", 1000, 500, "-0.113"),
    ("lower", 1000, 1000, "-0.000"),
    ("upper", 5, 0, "11.414"),
    ("upper", 5, 1, "9.235"),
    ("upper", 5, 2, "7.095"),
    ("upper", 5, 3, "4.647"),
    ("upper", 5, 4, "1.805"),
    ("upper", 1000, 0, "0.107"),
    ("upper", 1000, 500, "0.096"),
)

TABLE_VII = {
    (5, 0): ("0.00421047", "0.00421094", "0.45925807", "0.45925807"),
    (5, 1): ("0.04327201", "0.04327201", "0.64123439", "0.64123487"),
    (5, 2): ("0.11811733", "0.11811733", "0.77722167", "0.77722215"),
    (5, 3): ("0.22277832", "0.22277784", "0.88188266", "0.88188266"),
    (5, 4): ("0.35876560", "0.35876512", "0.95672798", "0.95672798"),
    (5, 5): ("0.54074192", "0.54074192", "0.99578952", "0.99578905"),
    (1000, 0): ("0.00002574", "0.00002527", "0.00367832", "0.00367832"),
    (1000, 500): ("0.46906375", "0.46906328", "0.53093624", "0.53093671"),
    (1000, 1000): ("0.99632167", "0.99632167", "0.99997425", "0.99997472"),
}

TABLE_VIII = {
    (5, 0): ("0.00083446", "0.00083494", "0.58648204", "0.58648157"),
    (5, 1): ("0.01872062", "0.01872062", "0.74600696", "0.74600744"),
    (5, 2): ("0.06627941", "0.06627893", "0.85640430", "0.85640430"),
    (5, 3): ("0.14359569", "0.14359569", "0.93372058", "0.93372106"),
    (5, 4): ("0.25399303", "0.25399255", "0.98127937", "0.98127937"),
    (5, 5): ("0.41351795", "0.41351842", "0.99916553", "0.99916505"),
    (1000, 0): ("0.00000476", "0.00000524", "0.00527858", "0.00527906"),
    (1000, 500): ("0.45937061", "0.45937013", "0.54062938", "0.54062986"),
    (1000, 1000): ("0.99472141", "0.99472093", "0.99999523", "0.99999475"),
}
