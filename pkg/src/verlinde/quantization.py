"""Quantization of surface data as an element of the level-k fusion ring.

Three mutually cross-checking routes are implemented:

* ``quantize_surface`` - exact closed-form block fusion.  The surface
  factors into a star block (r copies of the trace-zero class modulo the
  even-parity sign group), plain conjugacy classes, and double factors;
  quantization is multiplicative over blocks, and each block has an exact
  integer formula.
* ``fs_formula`` - the S-matrix (generalized Verlinde) formula, summing
  over Gamma with phase factors phi'(gamma) and the twisted entries
  S^(z)[m,l] (equal to 1 for z = c and to S[m,l] for z = e).  This path is
  floating point; the final integrality rounding doubles as a detector for
  wrong phase conventions.
* ``localization_evaluate`` - the fixed-point sum for the value of a star
  block at a special point.

``reduced_quantization`` computes the scalar (tau_0-coefficient) variant of
the S-matrix formula directly, and ``verlinde_baseline`` the simply
connected SU(2) product with no sign group at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .fusion_ring import (
    FusionElement,
    IdempotentVector,
    NonIntegralValue,
    _check_index,
    _check_level,
    from_idempotent,
    round_to_integer,
    s_matrix,
    special_angle,
)
from .prequant import (
    NotAdmissible,
    PrequantChoice,
    SurfaceData,
    canonicalize_choice,
    enumerate_gamma,
    phase_factor,
    require_admissible,
)

__all__ = [
    "InexactDivision",
    "QuantizationResult",
    "chi_element",
    "tau_power",
    "quantize_star_block",
    "quantize_conjugacy_class",
    "quantize_double_su2",
    "quantize_double_so3",
    "quantize_surface",
    "fs_formula",
    "fs_formula_with_phases",
    "reduced_quantization",
    "verlinde_baseline",
    "localization_evaluate",
]


class InexactDivision(ArithmeticError):
    """A division that integrality theorems promise to be exact was not.

    Reaching this indicates an implementation bug or a wrong phase factor,
    never bad input.
    """


@dataclass(frozen=True)
class QuantizationResult:
    element: FusionElement
    reduced: int
    path: str
    choice: PrequantChoice | None = None

    @classmethod
    def of(cls, element: FusionElement, path: str,
           choice: PrequantChoice | None = None) -> "QuantizationResult":
        return cls(element, element.trace, path, choice)

    def to_json_dict(self) -> dict:
        data = self.element.to_json_dict()
        data["reduced"] = self.reduced
        data["path"] = self.path
        data["choice"] = self.choice.to_json_dict() if self.choice else None
        return data


def _exact_divide(element: FusionElement, divisor: int) -> FusionElement:
    out = []
    for m, c in enumerate(element.coeffs):
        q, rem = divmod(c, divisor)
        if rem:
            raise InexactDivision(
                f"tau_{m} coefficient {c} is not divisible by {divisor}")
        out.append(q)
    return FusionElement(element.level, tuple(out))


def chi_element(k: int) -> FusionElement:
    """The alternating element tau_0 - tau_2 + ... + (-1)^(k/2) tau_k.

    Its evaluations vanish at every special point except t_{k/2}, where the
    value is k/2 + 1.
    """
    k = _check_level(k)
    if k % 2:
        raise ValueError(f"the alternating element needs an even level, got {k}")
    coeffs = [0] * (k + 1)
    for m in range(0, k + 1, 2):
        coeffs[m] = 1 if (m // 2) % 2 == 0 else -1
    return FusionElement(k, tuple(coeffs))


@lru_cache(maxsize=None)
def tau_power(k: int, r: int) -> FusionElement:
    """(tau_{k/2})^r, cached; k must be even for r >= 1."""
    if r == 0:
        return FusionElement.one(k)
    if k % 2:
        raise NotAdmissible(f"tau_{{k/2}} needs an even level, got k={k}")
    return FusionElement.tau(k, k // 2) ** r


def _check_star_admissible(k: int, r: int) -> None:
    if r >= 1 and k % 2:
        raise NotAdmissible(f"inadmissible: condition (ii') requires k in 2N (k={k}, r={r})")
    if r >= 3 and k % 4:
        raise NotAdmissible(f"inadmissible: condition (iii) requires k in 4N (k={k}, r={r})")


def _normalize_star_psi(psi, r: int) -> tuple[int, ...]:
    """Star-slot psi bits in canonical form (first bit 0).

    Accepts the shorthand "+"/"-" for the two r = 2 choices.
    """
    if isinstance(psi, str):
        if psi == "+":
            bits = (0,) * r
        elif psi == "-":
            if r != 2:
                raise ValueError("the +/- shorthand labels the two r=2 choices")
            bits = (0, 1)
        else:
            raise ValueError(f"unknown psi shorthand {psi!r}")
    else:
        bits = tuple(int(b) for b in psi)
        if len(bits) != r:
            raise ValueError(f"need {r} star psi bits, got {len(bits)}")
        if any(b not in (0, 1) for b in bits):
            raise ValueError("psi bits must be 0/1")
        if r and bits[0]:
            bits = tuple(b ^ 1 for b in bits)
    return bits


def _star_gamma_patterns(r: int) -> list[tuple[int, ...]]:
    return [pat for pat in product((0, 1), repeat=r) if sum(pat) % 2 == 0]


@lru_cache(maxsize=None)
def _star_block(k: int, r: int, psi_bits: tuple[int, ...]) -> FusionElement:
    if r == 0:
        return FusionElement.one(k)
    if r == 1:
        return FusionElement.tau(k, k // 2)
    chi = chi_element(k)
    base = tau_power(k, r)
    if r == 2:
        sign = -1 if sum(psi_bits) % 2 else 1
        return _exact_divide(base + sign * chi, 2)
    # r >= 3: exact integer sum over the nontrivial even-parity sign vectors
    half = k // 2
    quarter = k // 4
    total = 0
    for pat in _star_gamma_patterns(r):
        lw = sum(pat)
        if lw == 0:
            continue
        psi_val = -1 if sum(p & b for p, b in zip(psi_bits, pat)) % 2 else 1
        term = psi_val * (half + 1) ** (lw // 2 - 1)
        if (quarter * (r - lw // 2)) % 2:
            term = -term
        total += term
    return _exact_divide(base + total * chi, 2 ** (r - 1))


def quantize_star_block(k: int, r: int, psi=()) -> FusionElement:
    """Quantization of r fused star classes modulo the even sign group.

    r = 0 gives the unit, r = 1 gives tau_{k/2}, r = 2 gives
    (tau_{k/2}^2 +- chi)/2 according to psi, and for r >= 3 (needing k in
    4N) the sign-group sum

        2^(1-r) ( tau_{k/2}^r
                  + chi * sum_{gamma != e} psi(gamma)
                          (k/2+1)^(l(gamma)/2 - 1) (-1)^(k/4 (r - l(gamma)/2)) ).

    All divisions are checked to be exact.
    """
    k = _check_level(k)
    if r < 0:
        raise ValueError(f"star count must be non-negative, got {r}")
    _check_star_admissible(k, r)
    return _star_block(k, r, _normalize_star_psi(psi, r) if r >= 2 else ())


def quantize_conjugacy_class(k: int, m: int) -> FusionElement:
    """tau_m: the quantization of the conjugacy class with label m."""
    _check_index(_check_level(k), m, "m")
    return FusionElement.tau(k, m)


@lru_cache(maxsize=None)
def quantize_double_su2(k: int) -> FusionElement:
    """sum_m tau_m^2, the quantization of the SU(2) double."""
    k = _check_level(k)
    total = FusionElement.zero(k)
    for m in range(k + 1):
        t = FusionElement.tau(k, m)
        total = total + t * t
    return total


@lru_cache(maxsize=None)
def quantize_double_so3(k: int, phi: tuple[int, int] = (0, 0)) -> FusionElement:
    """Quantization of the SO(3) double for the choice phi in Hom(Z x Z, {+-1}).

    The quarter-sum (Q(D(SU2)) + (-1)^(k/2) sum_{gamma != e} phi(gamma) chi)/4,
    exact by construction for even k.
    """
    k = _check_level(k)
    if k % 2:
        raise NotAdmissible(f"inadmissible: the SO(3) double requires k in 2N, got k={k}")
    phi = tuple(int(b) for b in phi)
    if len(phi) != 2 or any(b not in (0, 1) for b in phi):
        raise ValueError(f"phi must be two 0/1 bits, got {phi!r}")
    sign = -1 if (k // 2) % 2 else 1
    phi_sum = 0
    for pair in ((0, 1), (1, 0), (1, 1)):
        phi_sum += -1 if (phi[0] * pair[0] + phi[1] * pair[1]) % 2 else 1
    total = quantize_double_su2(k) + (sign * phi_sum) * chi_element(k)
    return _exact_divide(total, 4)


@lru_cache(maxsize=None)
def _label_product(k: int, labels: tuple[int, ...]) -> FusionElement:
    out = FusionElement.one(k)
    for m in labels:
        out = out * FusionElement.tau(k, m)
    return out


@lru_cache(maxsize=None)
def _star_and_doubles(k: int, r: int, psi_star: tuple[int, ...],
                      phi_pairs: tuple[tuple[int, int], ...]) -> FusionElement:
    out = _star_block(k, r, psi_star)
    for phi in phi_pairs:
        out = out * quantize_double_so3(k, phi)
    return out


def _resolve_choice(surface: SurfaceData, choice: PrequantChoice | None) -> PrequantChoice:
    if choice is None:
        return PrequantChoice((0,) * surface.num_slots)
    return canonicalize_choice(surface, choice.psi_bits)


def _choice_phi_pairs(surface: SurfaceData, choice: PrequantChoice) -> tuple[tuple[int, int], ...]:
    s = surface.num_boundary
    bits = choice.psi_bits
    return tuple((bits[s + 2 * i], bits[s + 2 * i + 1]) for i in range(surface.genus))


def quantize_surface(surface: SurfaceData,
                     choice: PrequantChoice | None = None) -> QuantizationResult:
    """Closed-form quantization: star block x plain classes x doubles."""
    require_admissible(surface)
    choice = _resolve_choice(surface, choice)
    k, r = surface.level, surface.star_count
    psi_star = _normalize_star_psi(
        tuple(choice.psi_bits[j] for j in surface.star_slots), r) if r >= 2 else ()
    phi_pairs = tuple(sorted(_choice_phi_pairs(surface, choice)))
    element = _star_and_doubles(k, r, psi_star, phi_pairs) \
        * _label_product(k, tuple(sorted(surface.nonstar_labels)))
    return QuantizationResult.of(element, "closed_form", choice)


@lru_cache(maxsize=512)
def _fs_gamma_data(surface: SurfaceData):
    """Per-gamma contribution rows of the S-matrix sum, and the identity row.

    Row i holds, for each l in the range of sum_l^(gamma_i), the product
    prod_j S^(gamma_j)[m_j, l] / S[0, l]^(s+2h); non-identity rows are
    supported at l = k/2 only.  The reduced variant (exponent s+2h-2) is a
    scalar per gamma.  Also precomputed: the gamma bit matrix and the
    choice-independent part of the phases, so per-choice work is a couple
    of matrix-vector products.
    """
    k = surface.level
    gammas = tuple(enumerate_gamma(surface))
    smat = s_matrix(k)
    s0 = smat[0]
    exponent = surface.num_slots
    rows = np.zeros((len(gammas), k + 1))
    reduced = np.zeros(len(gammas))
    full = np.ones(k + 1)
    for m in surface.labels:
        full = full * smat[m]
    rows[0] = full / s0 ** exponent
    reduced[0] = math.fsum(full / s0 ** (exponent - 2))
    for i, gamma in enumerate(gammas):
        if i == 0:
            continue
        half = k // 2
        numer = 1.0
        for j, m in enumerate(surface.labels):
            if not gamma.bits[j]:
                numer *= smat[m][half]
        rows[i][half] = numer / s0[half] ** exponent
        reduced[i] = numer / s0[half] ** (exponent - 2)
    bit_matrix = np.array([g.bits for g in gammas], dtype=np.int64)
    trivial = PrequantChoice((0,) * surface.num_slots)
    fixed_signs = np.array([phase_factor(k, trivial, g) for g in gammas], dtype=np.float64)
    for arr in (rows, reduced, bit_matrix, fixed_signs):
        arr.setflags(write=False)
    return gammas, rows, reduced, bit_matrix, fixed_signs


def _phase_vector(surface: SurfaceData, choice: PrequantChoice) -> np.ndarray:
    """phi'(gamma) for every gamma in enumeration order, as +-1 floats."""
    _, _, _, bit_matrix, fixed_signs = _fs_gamma_data(surface)
    psi = np.asarray(choice.psi_bits, dtype=np.int64)
    if psi.shape[0] != bit_matrix.shape[1]:
        raise ValueError("psi functional and gamma have different slot counts")
    psi_values = 1.0 - 2.0 * ((bit_matrix @ psi) % 2)
    return fixed_signs * psi_values


def fs_formula_with_phases(surface: SurfaceData, phases: Sequence[int],
                           tol: float | None = None) -> FusionElement:
    """S-matrix sum with explicitly supplied phases, one per gamma.

    The phases follow the ``enumerate_gamma`` order.  Used to probe phase
    conventions: any wrong sign makes the rounding step raise
    NonIntegralCoefficient.
    """
    gammas, rows, _, _, _ = _fs_gamma_data(surface)
    if len(phases) != len(gammas):
        raise ValueError(f"need {len(gammas)} phases, got {len(phases)}")
    values = np.asarray(phases, dtype=np.float64) @ rows / len(gammas)
    return from_idempotent(IdempotentVector(surface.level, tuple(values)), tol)


def fs_formula(surface: SurfaceData, choice: PrequantChoice | None = None,
               tol: float | None = None) -> QuantizationResult:
    """Quantization through the S-matrix formula (floating point + rounding)."""
    require_admissible(surface)
    choice = _resolve_choice(surface, choice)
    element = fs_formula_with_phases(surface, _phase_vector(surface, choice), tol)
    return QuantizationResult.of(element, "fs_float", choice)


def reduced_quantization(surface: SurfaceData, choice: PrequantChoice | None = None,
                         tol: float | None = None) -> int:
    """The scalar S-matrix sum: quantization of the symplectic quotient."""
    require_admissible(surface)
    choice = _resolve_choice(surface, choice)
    _, _, reduced, _, _ = _fs_gamma_data(surface)
    value = float(_phase_vector(surface, choice) @ reduced) / len(reduced)
    return round_to_integer(value, tol, NonIntegralValue, "reduced quantization")


def verlinde_baseline(surface: SurfaceData) -> QuantizationResult:
    """Simply connected baseline: prod_j tau_{m_j} x (sum_m tau_m^2)^h.

    No sign group acts; the reduced value is the classical SU(2) Verlinde
    number of the labelled surface.
    """
    k = surface.level
    element = _label_product(k, tuple(sorted(surface.labels)))
    if surface.genus:
        element = element * quantize_double_su2(k) ** surface.genus
    return QuantizationResult.of(element, "closed_form")


def localization_evaluate(k: int, r: int, psi, l: int) -> float:
    """Fixed-point value of the star-block quantization at the point t_l.

    Away from l = k/2 only the discrete fixed points contribute,
    2^(1-r) tau_{k/2}(t_l)^r; at l = k/2 each nontrivial sign vector adds a
    torus contribution weighted by its phase.
    """
    k = _check_level(k)
    _check_star_admissible(k, r)
    _check_index(k, l, "l")
    if r == 0:
        return 1.0
    theta = special_angle(k, l)
    tau_val = math.sin((k // 2 + 1) * theta) / math.sin(theta)
    if r == 1:
        return tau_val
    psi_bits = _normalize_star_psi(psi, r)
    half = k // 2
    chi_val = float(half + 1) if l == half else 0.0
    total = 0.0
    if chi_val:
        quarter = k // 4
        for pat in _star_gamma_patterns(r):
            lw = sum(pat)
            if lw == 0:
                continue
            psi_val = -1 if sum(p & b for p, b in zip(psi_bits, pat)) % 2 else 1
            if r >= 3 and (quarter * (r - lw // 2)) % 2:
                psi_val = -psi_val
            total += psi_val * float(half + 1) ** (lw // 2 - 1)
    return (tau_val ** r + chi_val * total) / 2 ** (r - 1)
