"""Smoke test for the kappa_py extension module.

Build and install first, e.g. `maturin build -m crates/py/Cargo.toml --release`
followed by `pip install target/wheels/kappa_py-*.whl`.
"""

import cmath
import math
from fractions import Fraction

import kappa_py as kp


def check(cond, what):
    if not cond:
        raise SystemExit(f"FAIL: {what}")
    print(f"ok   {what}")


sl3 = kp.RootSystem("A", 2, "all:1")
check(sl3.kappa() == 1, "kappa of SL(3,R) is 1")
check(len(sl3.positive_roots()) == 3, "A2 has three positive roots")
check(len(sl3.weyl_group()) == 6, "Weyl group of A2 has order 6")
check(sl3.fundamental_weights()[0] == [Fraction(4, 3), Fraction(2, 3)], "fundamental weight in simple-root coordinates")
check(sl3.n([1, 0]) == 3 and sl3.n(["1/2", "-1/2"]) == 2, "n counts non-orthogonal roots")
check(sl3.in_bounded_region([Fraction(1, 2), 0]) and not sl3.in_bounded_region([3, 0]), "bounded region membership")

su23 = kp.RootSystem("BC", 2, "medium:2,short:2,long:1")
check(su23.kappa() == Fraction(7, 2), "kappa of SU(2,3) is 7/2")

table = kp.kappa_table()
check(len(table) >= 40 and all(row[3] for row in table), "default catalog reproduces every kappa")
check(kp.catalog_root_system("complex-E8").kappa() == 57, "complex E8 gives 57")

try:
    kp.RootSystem("A", 0, "all:1")
    check(False, "rank 0 rejected")
except ValueError:
    check(True, "rank 0 rejected")

k, h, nu = kp.iwasawa([[2.0, 1.0], [1.0, 1.0]])
check(abs(h[0] + h[1]) < 1e-12 and abs(nu[1][0]) < 1e-15, "Iwasawa factors")
k1, a, k2 = kp.kak([[2.0, 1.0], [1.0, 1.0]])
check(a[0] >= a[1], "Cartan projection is ordered")

phi = kp.spherical_sl2(0.0, 1.0)
check(0 < phi.real < 1 and abs(phi.imag) < 1e-12, "phi_0(a_1) is in (0, 1)")
check(abs(kp.spherical_sl2(3.0, 1.2) - kp.spherical_sl2(-3.0, 1.2)) < 1e-10, "Weyl symmetry in xi")
value, stderr = kp.spherical_sl3([0.0, 0.0], [0.0, 0.0])
check(abs(value - 1) < 1e-12, "SL(3) value at the identity")

theta = 1.0
check(abs(kp.spherical_compact_su2(20, theta) - kp.legendre(20, math.cos(theta))) < 1e-12, "compact duality")
err = abs(kp.legendre(400, math.cos(theta)) - kp.leading_term_su2(400, theta))
check(err < 1e-4, "Legendre leading term")
lead = kp.leading_term_sl2(1.0, 1.0, 400.0)
check(abs(lead - kp.spherical_sl2(400.0, 1.0)) < 1e-4, "SL(2) leading term")

slope, _, r2 = kp.decay_fit([(t, t ** -0.5) for t in (10, 20, 40, 80, 160, 320, 640, 1280)])
check(abs(slope + 0.5) < 1e-12 and r2 > 0.999, "decay fit")
mean = kp.exp_sum_separation([1, 1], [1, 1], [1, -1], [1.01, -1.01], 1000)
check(mean >= 1.0, "Cesàro mean above half the coefficient mass")

passed, line = kp.run_criterion(1)
print(line)
check(passed, "acceptance criterion 1")
print("all smoke checks passed")
