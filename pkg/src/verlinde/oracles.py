"""Independent brute-force validators for the fusion and quantization code.

Everything here recomputes results along a second route: structure
constants through the Verlinde diagonalization sum, character reduction
through special-point evaluation, star-block quantizations through the
literal multiplicity tables, and classical Verlinde numbers through the
S-matrix power sum.  ``run_verification_suite`` packages all module
invariants into a report over a parameter box.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator, Sequence

import numpy as np

from .fusion_ring import (
    CharacterPoly,
    FusionElement,
    IdempotentVector,
    NonIntegralCoefficient,
    NonIntegralValue,
    _check_level,
    from_idempotent,
    multiply_coeff_vectors,
    reduce_character,
    round_to_integer,
    s_matrix,
)
from .prequant import (
    GammaElement,
    NotAdmissible,
    SurfaceData,
    check_prequantization,
    enumerate_choices,
    enumerate_gamma,
    phase_factor,
)
from .quantization import (
    fs_formula,
    fs_formula_with_phases,
    localization_evaluate,
    quantize_double_su2,
    quantize_star_block,
    quantize_surface,
    reduced_quantization,
    tau_power,
    verlinde_baseline,
    _phase_vector,
)

__all__ = [
    "CheckResult",
    "VerificationReport",
    "structure_constants_verlinde",
    "structure_constants_from_multiply",
    "closed_form_tables",
    "star_choice_class",
    "classical_verlinde_number",
    "sweep_surfaces",
    "run_verification_suite",
]


@dataclass(frozen=True)
class CheckResult:
    name: str
    params: dict
    passed: bool
    deviation: float = 0.0
    tolerance: float = 0.0

    def to_json_dict(self) -> dict:
        return {"name": self.name, "params": self.params, "pass": self.passed,
                "deviation": self.deviation, "tolerance": self.tolerance}


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: CheckResult) -> None:
        self.checks.append(check)

    def to_json_dict(self) -> dict:
        return {"checks": [c.to_json_dict() for c in self.checks], "pass": self.passed}


def structure_constants_verlinde(k: int, tol: float = 1e-6) -> np.ndarray:
    """Fusion coefficients N_ab^c = sum_l S[a,l] S[b,l] S[c,l] / S[0,l].

    The diagonalization route: completely independent of the folding-based
    product.  Raises NonIntegralValue if any entry fails to round.
    """
    _check_level(k)
    smat = s_matrix(k)
    raw = np.einsum("al,bl,cl->abc", smat, smat, smat / smat[0])
    table = np.rint(raw)
    deviation = float(np.abs(raw - table).max())
    if deviation > tol:
        raise NonIntegralValue(
            f"Verlinde sum deviates from integers by {deviation:.3e} at k={k}")
    return table.astype(np.int64)


def structure_constants_from_multiply(k: int) -> np.ndarray:
    """Fusion coefficients read off the exact tau-basis products."""
    _check_level(k)
    table = np.zeros((k + 1, k + 1, k + 1), dtype=np.int64)
    for a in range(k + 1):
        ta = FusionElement.tau(k, a)
        for b in range(a, k + 1):
            coeffs = (ta * FusionElement.tau(k, b)).coeffs
            table[a, b, :] = coeffs
            table[b, a, :] = coeffs
    return table


def classical_verlinde_number(k: int, genus: int, tol: float | None = None) -> int:
    """Classical SU(2) Verlinde number round(sum_l S[0,l]^(2-2g))."""
    _check_level(k)
    if genus < 0:
        raise ValueError(f"genus must be non-negative, got {genus}")
    s0 = s_matrix(k)[0]
    value = math.fsum(float(x) ** (2 - 2 * genus) for x in s0)
    return round_to_integer(value, tol, NonIntegralValue, "Verlinde number")


def _alternating_element(k: int) -> FusionElement:
    coeffs = [0] * (k + 1)
    for m in range(0, k + 1, 2):
        coeffs[m] = 1 if (m // 2) % 2 == 0 else -1
    return FusionElement(k, tuple(coeffs))


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise NotAdmissible(f"inadmissible: {message}")


def _exact_scale(vector: Sequence[int], divisor: int) -> tuple[int, ...]:
    out = []
    for c in vector:
        q, rem = divmod(c, divisor)
        if rem:
            raise NonIntegralValue(f"table entry {c} not divisible by {divisor}")
        out.append(q)
    return tuple(out)


def closed_form_tables(k: int, r: int, choice_class: str) -> FusionElement:
    """Literal multiplicity tables for the star-block quantizations.

    Built from the published closed forms alone (no fusion products):

    * r = 2: "+" has tau_0 + tau_4 + ..., "-" has tau_2 + tau_6 + ...
    * r = 3: coefficient of tau_{2j} is (min(2j, k-2j) + 1 + (4 d - 1)(-1)^j)/4
      with d = 1 for the trivial class and 0 otherwise.
    * r = 4: the base power sum_j (k/2+1-2j^2+jk) tau_{2j} combined with the
      three-case chi coefficient.

    ``choice_class`` "base" returns the plain power (tau_{k/2})^r table.
    """
    k = _check_level(k)
    _require(k % 2 == 0, f"star-block tables need k in 2N, got k={k}")
    if r not in (2, 3, 4):
        raise ValueError(f"tables exist for r in {{2, 3, 4}}, got r={r}")
    if r >= 3:
        _require(k % 4 == 0, f"condition (iii) requires k in 4N (k={k}, r={r})")
    half = k // 2
    coeffs = [0] * (k + 1)

    if choice_class == "base":
        for j in range(half + 1):
            if r == 2:
                coeffs[2 * j] = 1
            elif r == 3:
                coeffs[2 * j] = min(2 * j, k - 2 * j) + 1
            else:
                coeffs[2 * j] = half + 1 - 2 * j * j + j * k
        return FusionElement(k, tuple(coeffs))

    if r == 2:
        if choice_class not in ("+", "-"):
            raise ValueError(f"r=2 classes are '+' and '-', got {choice_class!r}")
        start = 0 if choice_class == "+" else 2
        for m in range(start, k + 1, 4):
            coeffs[m] = 1
        return FusionElement(k, tuple(coeffs))

    if r == 3:
        if choice_class not in ("trivial", "nontrivial"):
            raise ValueError(f"r=3 classes are 'trivial' and 'nontrivial', got {choice_class!r}")
        d = 1 if choice_class == "trivial" else 0
        for j in range(half + 1):
            base = min(2 * j, k - 2 * j) + 1
            coeffs[2 * j] = base + (4 * d - 1) * (-1) ** j
        return FusionElement(k, _exact_scale(coeffs, 4))

    chi_coeff = {
        "trivial": 6 * (-1) ** (k // 4) + (half + 1),
        "sum_zero": -(half + 1),
        "sum_minus_two": 2 * (-1) ** (k // 4 + 1) + (half + 1),
    }.get(choice_class)
    if chi_coeff is None:
        raise ValueError(
            f"r=4 classes are 'trivial', 'sum_zero', 'sum_minus_two', got {choice_class!r}")
    base = closed_form_tables(k, 4, "base")
    chi = _alternating_element(k)
    total = [b + chi_coeff * c for b, c in zip(base.coeffs, chi.coeffs)]
    return FusionElement(k, _exact_scale(total, 8))


def star_choice_class(r: int, psi_bits: Sequence[int]) -> str:
    """Classify a star-block psi by the quantities entering the tables."""
    bits = tuple(int(b) for b in psi_bits)
    if len(bits) != r:
        raise ValueError(f"need {r} psi bits, got {len(bits)}")
    if r == 2:
        return "-" if sum(bits) % 2 else "+"
    if not any(bits):
        return "trivial"
    if r == 3:
        return "nontrivial"
    if r == 4:
        weight2 = [p for p in product((0, 1), repeat=4) if sum(p) == 2]
        total = sum(-1 if sum(a & b for a, b in zip(bits, p)) % 2 else 1 for p in weight2)
        if total == 0:
            return "sum_zero"
        if total == -2:
            return "sum_minus_two"
        return "trivial"
    raise ValueError(f"no classification for r={r}")


def sweep_surfaces(max_k: int, max_r: int, max_h: int,
                   gamma_cap: int = 2**9) -> Iterator[SurfaceData]:
    """Admissible surfaces with labels drawn from {0, 1, k/2, k}.

    The star label k/2 appears up to ``max_r`` times; the remaining pool
    labels appear at most once each.  Surfaces whose sign group exceeds
    ``gamma_cap`` are skipped.
    """
    seen = set()
    for k in range(max_k + 1):
        extras_pool = sorted(m for m in {0, 1, k} if 0 <= m <= k)
        star_counts = range(0, max_r + 1) if k % 2 == 0 else (0,)
        for r in star_counts:
            for h in range(max_h + 1):
                for n_extra in range(len(extras_pool) + 1):
                    for extras in combinations(extras_pool, n_extra):
                        labels = tuple(sorted([k // 2] * r + list(extras)))
                        key = (k, h, labels)
                        if key in seen:
                            continue
                        seen.add(key)
                        surface = SurfaceData(k, h, labels)
                        if not check_prequantization(surface).admissible:
                            continue
                        if surface.gamma_size() > gamma_cap:
                            continue
                        yield surface


# ---------------------------------------------------------------------------
# individual checks


def check_s_matrix_symmetry(max_k: int) -> CheckResult:
    worst = 0.0
    for k in range(max_k + 1):
        smat = s_matrix(k)
        worst = max(worst, float(np.abs(smat - smat.T).max()))
    return CheckResult("s_matrix_symmetry", {"max_k": max_k}, worst < 1e-12, worst, 1e-12)


def check_s_matrix_orthogonality(max_k: int) -> CheckResult:
    worst = 0.0
    for k in range(max_k + 1):
        smat = s_matrix(k)
        worst = max(worst, float(np.abs(smat @ smat.T - np.eye(k + 1)).max()))
    return CheckResult("s_matrix_orthogonality", {"max_k": max_k}, worst < 1e-10, worst, 1e-10)


def check_evaluation_homomorphism(max_k: int, n_pairs: int = 200,
                                  seed: int = 0, tol: float = 1e-8) -> CheckResult:
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(n_pairs):
        k = rng.randint(0, max_k)
        a = FusionElement(k, tuple(rng.randint(-5, 5) for _ in range(k + 1)))
        b = FusionElement(k, tuple(rng.randint(-5, 5) for _ in range(k + 1)))
        ab = a * b
        for l in range(k + 1):
            prod = a.evaluate(l) * b.evaluate(l)
            err = abs(ab.evaluate(l) - prod) / (1.0 + abs(prod))
            worst = max(worst, err)
    return CheckResult("evaluation_homomorphism",
                       {"max_k": max_k, "n_pairs": n_pairs, "seed": seed},
                       worst < tol, worst, tol)


def check_idempotent_products(max_k: int, seed: int = 0, tol: float = 1e-8) -> CheckResult:
    """taut_m taut_n = delta_{mn} taut_m, via float tau-basis products."""
    rng = random.Random(seed)
    worst = 0.0
    for k in range(max_k + 1):
        smat = s_matrix(k)
        pairs = {(m, m) for m in range(k + 1)} if k <= 6 else set()
        while len(pairs) < min((k + 1) ** 2, 12):
            pairs.add((rng.randint(0, k), rng.randint(0, k)))
        for m, n in sorted(pairs):
            cm = (smat[0][m] * smat[:, m]).tolist()
            cn = (smat[0][n] * smat[:, n]).tolist()
            out = multiply_coeff_vectors(k, cm, cn)
            evals = np.asarray(out) @ (smat / smat[0])
            expected = np.zeros(k + 1)
            if m == n:
                expected[m] = 1.0
            worst = max(worst, float(np.abs(evals - expected).max()))
    return CheckResult("idempotent_products", {"max_k": max_k, "seed": seed},
                       worst < tol, worst, tol)


def check_reduce_character(max_k: int) -> CheckResult:
    """Folding-based reduction against evaluation-based reduction."""
    failures = 0
    total = 0
    for k in range(min(max_k, 32) + 1):
        for m in range(4 * (k + 2) + 1):
            chi_m = CharacterPoly.chi(m)
            values = tuple(chi_m.special_point_value(k, l) for l in range(k + 1))
            oracle = from_idempotent(IdempotentVector(k, values))
            total += 1
            if oracle != reduce_character(k, chi_m):
                failures += 1
    return CheckResult("reduce_character_vs_evaluation",
                       {"max_k": min(max_k, 32), "cases": total},
                       failures == 0, float(failures))


def check_structure_constants(max_k: int) -> CheckResult:
    worst = 0
    binary = True
    for k in range(max_k + 1):
        verlinde = structure_constants_verlinde(k)
        exact = structure_constants_from_multiply(k)
        worst = max(worst, int(np.abs(verlinde - exact).max()))
        binary = binary and bool(np.isin(exact, (0, 1)).all())
    return CheckResult("structure_constants", {"max_k": max_k},
                       worst == 0 and binary, float(worst))


def check_gamma_groups(max_k: int, max_r: int, max_h: int) -> CheckResult:
    bad = 0
    cases = 0
    for surface in sweep_surfaces(max_k, max_r, max_h):
        gammas = enumerate_gamma(surface)
        cases += 1
        if len(gammas) != surface.gamma_size() or not gammas[0].is_identity():
            bad += 1
            continue
        if any(g.star_weight % 2 for g in gammas):
            bad += 1
    return CheckResult("gamma_group_enumeration",
                       {"max_k": max_k, "max_r": max_r, "max_h": max_h, "cases": cases},
                       bad == 0, float(bad))


def check_choices(max_k: int, max_r: int, max_h: int) -> CheckResult:
    """Choice count, psi homomorphism property, orthogonality, inequivalence."""
    bad = 0
    cases = 0
    for surface in sweep_surfaces(max_k, max_r, max_h, gamma_cap=2**6):
        gammas = enumerate_gamma(surface)
        choices = enumerate_choices(surface)
        cases += 1
        if len(choices) != len(gammas) or not choices[0].is_trivial():
            bad += 1
            continue
        n = len(gammas)
        bits = np.array([g.bits for g in gammas], dtype=np.int64)
        psis = np.array([c.psi_bits for c in choices], dtype=np.int64)
        values = 1 - 2 * ((psis @ bits.T) % 2)  # (choice, gamma) sign table
        index_of = {g.bits: i for i, g in enumerate(gammas)}
        xor_table = np.array([[index_of[(g1 * g2).bits] for g2 in gammas]
                              for g1 in gammas], dtype=np.intp)
        if not (values[:, xor_table] == values[:, :, None] * values[:, None, :]).all():
            bad += 1
        sums = values.sum(axis=1)
        if sums[0] != n or (len(sums) > 1 and np.abs(sums[1:]).max() > 0):
            bad += 1
        if len({tuple(row) for row in values}) != len(choices):
            bad += 1
    return CheckResult("prequant_choices",
                       {"max_k": max_k, "max_r": max_r, "max_h": max_h, "cases": cases},
                       bad == 0, float(bad))


def check_phase_factors(max_k: int, max_r: int, max_h: int) -> CheckResult:
    """phi'(identity) = 1 and blockwise factorization of phi'.

    psi itself is bilinear, so factorization over the star block and the
    individual doubles only needs checking for the choice-independent part;
    a couple of nontrivial choices ride along as representation coverage.
    """
    bad = 0
    cases = 0
    for surface in sweep_surfaces(max_k, max_r, max_h, gamma_cap=2**6):
        k = surface.level
        gammas = enumerate_gamma(surface)
        choices = enumerate_choices(surface)
        for choice in (choices[0], choices[len(choices) // 2], choices[-1]):
            cases += 1
            if phase_factor(k, choice, gammas[0]) != 1:
                bad += 1
            for gamma in gammas:
                blocks = _support_blocks(surface, gamma)
                if len(blocks) < 2:
                    continue
                prod_phases = 1
                for block in blocks:
                    prod_phases *= phase_factor(k, choice, block)
                if prod_phases != phase_factor(k, choice, gamma):
                    bad += 1
    return CheckResult("phase_factor_blockwise",
                       {"max_k": max_k, "max_r": max_r, "max_h": max_h, "cases": cases},
                       bad == 0, float(bad))


def _support_blocks(surface: SurfaceData, gamma: GammaElement) -> list[GammaElement]:
    """Split gamma into its star-block part and per-double parts."""
    s = surface.num_boundary
    n = surface.num_slots
    blocks = []
    star = [0] * n
    star[:s] = gamma.bits[:s]
    if any(star):
        blocks.append(GammaElement(tuple(star), gamma.star_slots, s))
    for i in range(surface.genus):
        part = [0] * n
        part[s + 2 * i] = gamma.bits[s + 2 * i]
        part[s + 2 * i + 1] = gamma.bits[s + 2 * i + 1]
        if any(part):
            blocks.append(GammaElement(tuple(part), gamma.star_slots, s))
    return blocks


def check_cross_paths(max_k: int, max_r: int, max_h: int,
                      gamma_cap: int = 2**9) -> CheckResult:
    """Closed form vs S-matrix formula vs reduced scalar, over the sweep."""
    bad = 0
    pairs = 0
    negative = 0
    for surface in sweep_surfaces(max_k, max_r, max_h, gamma_cap):
        for choice in enumerate_choices(surface):
            pairs += 1
            closed = quantize_surface(surface, choice)
            through_s = fs_formula(surface, choice)
            if closed.element != through_s.element:
                bad += 1
            if reduced_quantization(surface, choice) != closed.reduced:
                bad += 1
            if any(c < 0 for c in closed.element.coeffs):
                negative += 1
    return CheckResult("cross_path_equality",
                       {"max_k": max_k, "max_r": max_r, "max_h": max_h,
                        "pairs": pairs, "negative_coefficient_results": negative},
                       bad == 0, float(bad))


def check_localization(max_k: int, max_r: int) -> CheckResult:
    worst = 0.0
    for k in range(0, max_k + 1, 2):
        for r in range(0, max_r + 1):
            if r >= 3 and k % 4:
                continue
            for bits in product((0, 1), repeat=max(r - 1, 0)):
                psi = (0,) + bits if r else ()
                element = quantize_star_block(k, r, psi if r >= 2 else ())
                for l in range(k + 1):
                    loc = localization_evaluate(k, r, psi if r >= 2 else (), l)
                    err = abs(loc - element.evaluate(l))
                    worst = max(worst, err / (1.0 + abs(loc)))
    return CheckResult("localization_agreement", {"max_k": max_k, "max_r": max_r},
                       worst < 1e-8, worst, 1e-8)


def check_choice_sum_identity(max_k: int, max_r: int) -> CheckResult:
    """sum over psi of Q_psi equals the plain power (tau_{k/2})^r."""
    bad = 0
    for k in range(0, max_k + 1, 2):
        for r in range(2, min(max_r, 6) + 1):
            if r >= 3 and k % 4:
                continue
            total = FusionElement.zero(k)
            for bits in product((0, 1), repeat=r - 1):
                total = total + quantize_star_block(k, r, (0,) + bits)
            if total != tau_power(k, r):
                bad += 1
    return CheckResult("choice_sum_identity", {"max_k": max_k, "max_r": max_r},
                       bad == 0, float(bad))


def check_r2_pair_identity(max_k: int) -> CheckResult:
    bad = 0
    for k in range(0, max_k + 1, 2):
        if quantize_star_block(k, 2, "+") + quantize_star_block(k, 2, "-") != tau_power(k, 2):
            bad += 1
    return CheckResult("r2_pair_identity", {"max_k": max_k}, bad == 0, float(bad))


def check_midpoint_symmetry(max_k: int) -> CheckResult:
    bad = 0
    for k in range(0, max_k + 1, 4):
        for psi in ((0, 0, 0), (0, 0, 1)):
            coeffs = quantize_star_block(k, 3, psi).coeffs
            if any(coeffs[m] != coeffs[k - m] for m in range(k + 1)):
                bad += 1
    return CheckResult("r3_midpoint_symmetry", {"max_k": max_k}, bad == 0, float(bad))


def check_tables_match(max_k: int) -> CheckResult:
    """Literal multiplicity tables against the block-fusion computation."""
    bad = 0
    for k in range(0, max_k + 1, 2):
        if quantize_star_block(k, 2, "+") != closed_form_tables(k, 2, "+"):
            bad += 1
        if quantize_star_block(k, 2, "-") != closed_form_tables(k, 2, "-"):
            bad += 1
        if tau_power(k, 2) != closed_form_tables(k, 2, "base"):
            bad += 1
        if k % 4:
            continue
        for r in (3, 4):
            if tau_power(k, r) != closed_form_tables(k, r, "base"):
                bad += 1
        class_counts = {"trivial": 0, "sum_zero": 0, "sum_minus_two": 0}
        for bits in product((0, 1), repeat=2):
            psi = (0,) + bits
            label = star_choice_class(3, psi)
            if quantize_star_block(k, 3, psi) != closed_form_tables(k, 3, label):
                bad += 1
        for bits in product((0, 1), repeat=3):
            psi = (0,) + bits
            label = star_choice_class(4, psi)
            class_counts[label] += 1
            if quantize_star_block(k, 4, psi) != closed_form_tables(k, 4, label):
                bad += 1
        if class_counts != {"trivial": 1, "sum_zero": 4, "sum_minus_two": 3}:
            bad += 1
    return CheckResult("closed_form_tables_match", {"max_k": max_k}, bad == 0, float(bad))


def check_classical_verlinde(max_k: int, max_genus: int) -> CheckResult:
    bad = 0
    for k in range(min(max_k, 32) + 1):
        for genus in range(max_genus + 1):
            number = classical_verlinde_number(k, genus)
            baseline = verlinde_baseline(SurfaceData(k, genus, ()))
            if number != baseline.reduced:
                bad += 1
    return CheckResult("classical_verlinde_baseline",
                       {"max_k": min(max_k, 32), "max_genus": max_genus},
                       bad == 0, float(bad))


def check_double_su2_trace(max_k: int) -> CheckResult:
    bad = sum(1 for k in range(max_k + 1) if quantize_double_su2(k).trace != k + 1)
    return CheckResult("double_su2_trace", {"max_k": max_k}, bad == 0, float(bad))


def check_negative_control() -> CheckResult:
    """Flipping any single phase in a star-only r=3 run must be detected."""
    surface = SurfaceData(4, 0, (2, 2, 2))
    undetected = 0
    flips = 0
    for choice in enumerate_choices(surface):
        phases = list(_phase_vector(surface, choice))
        for i in range(len(phases)):
            flips += 1
            corrupted = list(phases)
            corrupted[i] = -corrupted[i]
            try:
                fs_formula_with_phases(surface, corrupted)
            except NonIntegralCoefficient:
                continue
            undetected += 1
    return CheckResult("negative_control_phase_flip",
                       {"surface": surface.to_json_dict(), "flips": flips},
                       undetected == 0, float(undetected))


def run_verification_suite(max_k: int = 20, max_r: int = 5, max_h: int = 2,
                           seed: int = 0) -> VerificationReport:
    """Run every module invariant over the given parameter box.

    Failures are recorded in the report, not raised.  The coefficient
    non-negativity observation rides along inside the cross-path check as a
    count only; it is not a pass/fail criterion.
    """
    report = VerificationReport()
    for check in (
        check_s_matrix_symmetry(max_k),
        check_s_matrix_orthogonality(max_k),
        check_evaluation_homomorphism(max_k, seed=seed),
        check_idempotent_products(max_k, seed=seed),
        check_reduce_character(max_k),
        check_structure_constants(max_k),
        check_gamma_groups(max_k, max_r, max_h),
        check_choices(max_k, max_r, max_h),
        check_phase_factors(max_k, max_r, max_h),
        check_cross_paths(max_k, max_r, max_h),
        check_localization(max_k, max_r),
        check_choice_sum_identity(max_k, max_r),
        check_r2_pair_identity(max_k),
        check_midpoint_symmetry(max_k),
        check_tables_match(max_k),
        check_classical_verlinde(max_k, max_h),
        check_double_su2_trace(max_k),
        check_negative_control(),
    ):
        report.add(check)
    return report
