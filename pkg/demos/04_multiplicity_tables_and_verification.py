"""Multiplicity tables for small star counts, and the verification sweep.

The closed-form tables for r = 2, 3, 4 are hard-coded from their published
coefficient formulas, independent of the fusion arithmetic, so agreement
between the two is a real check.  The verification suite bundles every
invariant of the package over a parameter box.
"""

from verlinde import closed_form_tables, run_verification_suite
from verlinde.oracles import star_choice_class
from verlinde.quantization import quantize_star_block

print("— r = 2 tables (the k mod 4 case split is visible in the endpoints)\n")
for k in (4, 6, 8, 10):
    plus = closed_form_tables(k, 2, "+")
    minus = closed_form_tables(k, 2, "-")
    print(f"k={k:>2}:  Q+ = {plus}")
    print(f"       Q- = {minus}")

print("\n— r = 4 at k = 8: the three choice classes, sizes 1 / 4 / 3\n")
from itertools import product
for bits in product((0, 1), repeat=3):
    psi = (0,) + bits
    label = star_choice_class(4, psi)
    print(f"psi {psi} [{label:<14}]  Q = {quantize_star_block(8, 4, psi)}")

print("\n— verification suite on a small box\n")
report = run_verification_suite(max_k=10, max_r=4, max_h=1)
for check in report.checks:
    status = "PASS" if check.passed else "FAIL"
    print(f"{status}  {check.name}  (deviation {check.deviation:.2e})")
print(f"\noverall: {'all good' if report.passed else 'failures found'}")
