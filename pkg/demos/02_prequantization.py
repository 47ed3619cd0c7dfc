"""Admissibility of surface data and the sign group Gamma.

A genus-h surface with boundary labels m_1..m_s carries a level-k
pre-quantization iff the labels are in range, positive genus forces k
even, and three or more trace-zero labels (m_j = k/2) force 4 | k.  When
it does, the inequivalent pre-quantizations are labeled by the characters
of the finite 2-group Gamma.
"""

from verlinde import (
    SurfaceData,
    check_prequantization,
    enumerate_choices,
    enumerate_gamma,
    phase_factor,
)

print("— admissibility reports\n")
for k, h, labels in [(4, 0, (2, 2, 2)), (6, 0, (3, 3, 3)), (3, 1, ()), (5, 0, (2,))]:
    surface = SurfaceData(k, h, labels)
    report = check_prequantization(surface)
    verdict = "admissible" if report.admissible else f"inadmissible ({report.failure_message()})"
    print(f"k={k} genus={h} labels={list(labels)}: {verdict}")

print("\n— the sign group of three trace-zero classes at k = 4\n")
surface = SurfaceData(4, 0, (2, 2, 2))
gammas = enumerate_gamma(surface)
print(f"|Gamma| = {len(gammas)} = 2^(2h + r - 1):")
for g in gammas:
    print(f"  bits {g.bits}  weight {g.weight}")

print("\n— pre-quantization choices and their phase factors\n")
choices = enumerate_choices(surface)
header = "psi bits      " + "  ".join(f"phi'{g.bits}" for g in gammas)
print(header)
for choice in choices:
    phases = [phase_factor(surface.level, choice, g) for g in gammas]
    print(f"{str(choice.psi_bits):<14}" + "  ".join(f"{p:+10d}" for p in phases))

# A genus factor contributes a (-1)^(k/2) twist for every nontrivial pair.
print("\n— the double at k = 2: nontrivial pairs pick up (-1)^(k/2) = -1\n")
torus = SurfaceData(2, 1, ())
trivial = enumerate_choices(torus)[0]
for g in enumerate_gamma(torus):
    print(f"  gamma {g.bits}: phi' = {phase_factor(2, trivial, g):+d}")
