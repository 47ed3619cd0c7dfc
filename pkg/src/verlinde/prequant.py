"""Surface data, the finite 2-group Gamma, and pre-quantization choices.

A surface input is a level k, a genus h and boundary labels m_1..m_s with
0 <= m_j <= k; the label m_j = k/2 marks the trace-zero conjugacy class
(the star class).  The group Gamma sits inside Z^(s+2h) for the center
Z = {e, c}: its elements are bit vectors (1 = c) that vanish on non-star
boundary slots and have even parity across the boundary slots.  So
|Gamma| = 2^(2h+r-1) when the star count r >= 1 and 2^(2h) otherwise.

Pre-quantization choices are homomorphisms psi: Gamma -> {+-1}, encoded as
bit functionals psi(gamma) = (-1)^<psi_bits, gamma>.  Two bit vectors give
the same choice iff they agree on Gamma; the canonical representative
zeroes every coordinate the constraints force to act trivially.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Mapping, Sequence

from .fusion_ring import _check_level

__all__ = [
    "SurfaceData",
    "GammaElement",
    "PrequantChoice",
    "AdmissibilityReport",
    "ConditionCheck",
    "NotAdmissible",
    "GroupTooLarge",
    "check_prequantization",
    "require_admissible",
    "enumerate_gamma",
    "enumerate_choices",
    "canonicalize_choice",
    "phase_factor",
    "GAMMA_SIZE_CAP",
]

GAMMA_SIZE_CAP = 2**20


class NotAdmissible(ValueError):
    """The surface carries no level-k pre-quantization (or a phase needs one)."""


class GroupTooLarge(ValueError):
    """Gamma enumeration would exceed the configured size cap."""


def _check_bits(bits: Sequence[int], what: str) -> tuple[int, ...]:
    out = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in out):
        raise ValueError(f"{what} must consist of 0/1 entries, got {bits!r}")
    return out


@dataclass(frozen=True)
class SurfaceData:
    """Genus h surface with boundary labels m_1..m_s at a fixed level."""

    level: int
    genus: int
    labels: tuple[int, ...] = ()

    def __post_init__(self):
        k = _check_level(self.level)
        if self.genus < 0:
            raise ValueError(f"genus must be non-negative, got {self.genus}")
        labels = tuple(int(m) for m in self.labels)
        for m in labels:
            if not 0 <= m <= k:
                raise ValueError(f"label {m} out of range 0..{k}")
        object.__setattr__(self, "level", k)
        object.__setattr__(self, "genus", int(self.genus))
        object.__setattr__(self, "labels", labels)

    @property
    def num_boundary(self) -> int:
        return len(self.labels)

    @property
    def num_slots(self) -> int:
        return len(self.labels) + 2 * self.genus

    @property
    def star_slots(self) -> tuple[int, ...]:
        """Boundary slots carrying the trace-zero class, i.e. 2*m_j = k."""
        return tuple(j for j, m in enumerate(self.labels) if 2 * m == self.level)

    @property
    def star_count(self) -> int:
        return len(self.star_slots)

    @property
    def nonstar_labels(self) -> tuple[int, ...]:
        return tuple(m for m in self.labels if 2 * m != self.level)

    def gamma_size(self) -> int:
        r = self.star_count
        return 2 ** (2 * self.genus + r - 1) if r >= 1 else 2 ** (2 * self.genus)

    def to_json_dict(self) -> dict:
        return {"level": self.level, "genus": self.genus, "labels": list(self.labels)}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "SurfaceData":
        return cls(int(data["level"]), int(data["genus"]),
                   tuple(int(m) for m in data.get("labels", ())))


@dataclass(frozen=True)
class GammaElement:
    """Element of Gamma as a bit vector over the s+2h slots (1 means c)."""

    bits: tuple[int, ...]
    star_slots: tuple[int, ...]
    num_boundary: int

    def __post_init__(self):
        bits = _check_bits(self.bits, "gamma bits")
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "star_slots", tuple(int(j) for j in self.star_slots))
        stars = set(self.star_slots)
        for j in range(self.num_boundary):
            if j not in stars and bits[j]:
                raise ValueError(f"slot {j} is not a star class, bit must be 0")
        if sum(bits[:self.num_boundary]) % 2:
            raise ValueError("boundary bits must have even parity")

    @classmethod
    def identity(cls, surface: SurfaceData) -> "GammaElement":
        return cls((0,) * surface.num_slots, surface.star_slots, surface.num_boundary)

    @classmethod
    def from_surface(cls, surface: SurfaceData, bits: Sequence[int]) -> "GammaElement":
        return cls(tuple(bits), surface.star_slots, surface.num_boundary)

    @property
    def weight(self) -> int:
        """Number of c entries, l(gamma)."""
        return sum(self.bits)

    @property
    def star_weight(self) -> int:
        """Number of c entries on boundary slots (even by the invariant)."""
        return sum(self.bits[:self.num_boundary])

    @property
    def double_pairs(self) -> tuple[tuple[int, int], ...]:
        s = self.num_boundary
        tail = self.bits[s:]
        return tuple((tail[2 * i], tail[2 * i + 1]) for i in range(len(tail) // 2))

    def is_identity(self) -> bool:
        return not any(self.bits)

    def __mul__(self, other: "GammaElement") -> "GammaElement":
        if (self.star_slots, self.num_boundary) != (other.star_slots, other.num_boundary):
            raise ValueError("gamma elements belong to different groups")
        return GammaElement(tuple(a ^ b for a, b in zip(self.bits, other.bits)),
                            self.star_slots, self.num_boundary)


@dataclass(frozen=True)
class PrequantChoice:
    """Pre-quantization label: psi(gamma) = (-1)^<psi_bits, gamma bits>."""

    psi_bits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "psi_bits", _check_bits(self.psi_bits, "psi bits"))

    def psi(self, gamma: GammaElement) -> int:
        if len(self.psi_bits) != len(gamma.bits):
            raise ValueError("psi functional and gamma have different slot counts")
        return -1 if sum(p & b for p, b in zip(self.psi_bits, gamma.bits)) % 2 else 1

    def is_trivial(self) -> bool:
        return not any(self.psi_bits)

    def to_json_dict(self) -> dict:
        return {"psi_bits": list(self.psi_bits)}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "PrequantChoice":
        return cls(tuple(int(b) for b in data["psi_bits"]))


@dataclass(frozen=True)
class ConditionCheck:
    code: str
    description: str
    holds: bool


@dataclass(frozen=True)
class AdmissibilityReport:
    surface: SurfaceData
    conditions: tuple[ConditionCheck, ...]

    @property
    def admissible(self) -> bool:
        return all(c.holds for c in self.conditions)

    @property
    def failures(self) -> tuple[ConditionCheck, ...]:
        return tuple(c for c in self.conditions if not c.holds)

    def failure_message(self) -> str:
        if self.admissible:
            return ""
        return "; ".join(f"condition {c.code} requires {c.description}"
                         for c in self.failures)

    def to_json_dict(self) -> dict:
        return {
            "surface": self.surface.to_json_dict(),
            "admissible": self.admissible,
            "conditions": [
                {"code": c.code, "description": c.description, "holds": c.holds}
                for c in self.conditions
            ],
        }


def check_prequantization(surface: SurfaceData) -> AdmissibilityReport:
    """Decide whether the surface data admits a level-k pre-quantization.

    The conditions: (i) every label lies in 0..k, (ii) positive genus needs
    k even, (iii) three or more star labels need k divisible by 4; a single
    star label already forces k even, which holds automatically since the
    star condition 2*m = k has no solution at odd k.
    """
    k, h, r = surface.level, surface.genus, surface.star_count
    conditions = (
        ConditionCheck("(i)", f"all labels in 0..{k}",
                       all(0 <= m <= k for m in surface.labels)),
        ConditionCheck("(ii)", "k in 2N when genus >= 1",
                       h == 0 or k % 2 == 0),
        ConditionCheck("(iii)", "k in 4N when the star count is >= 3",
                       r < 3 or k % 4 == 0),
        ConditionCheck("(ii')", "k in 2N when the star count is >= 1",
                       r < 1 or k % 2 == 0),
    )
    return AdmissibilityReport(surface, conditions)


def require_admissible(surface: SurfaceData) -> None:
    report = check_prequantization(surface)
    if not report.admissible:
        raise NotAdmissible(f"inadmissible: {report.failure_message()}")


def _star_patterns(r: int) -> Iterator[tuple[int, ...]]:
    # even-parity bit patterns, all-zeros first (lexicographic order)
    for pat in product((0, 1), repeat=r):
        if sum(pat) % 2 == 0:
            yield pat


def enumerate_gamma(surface: SurfaceData, cap: int = GAMMA_SIZE_CAP) -> list[GammaElement]:
    """All elements of Gamma, the identity first."""
    size = surface.gamma_size()
    if size > cap:
        raise GroupTooLarge(f"|Gamma| = {size} exceeds cap {cap}")
    stars = surface.star_slots
    s, h = surface.num_boundary, surface.genus
    out = []
    for star_pat in _star_patterns(len(stars)):
        boundary = [0] * s
        for j, bit in zip(stars, star_pat):
            boundary[j] = bit
        for double_bits in product((0, 1), repeat=2 * h):
            out.append(GammaElement(tuple(boundary) + double_bits, stars, s))
    return out


def canonicalize_choice(surface: SurfaceData, psi_bits: Sequence[int]) -> PrequantChoice:
    """Reduce psi_bits modulo the annihilator of Gamma.

    Bits on non-star boundary slots never see a 1 in Gamma, and flipping all
    star-slot bits at once changes nothing by the parity constraint, so we
    zero the former and force the first star bit to 0.
    """
    bits = list(_check_bits(psi_bits, "psi bits"))
    if len(bits) != surface.num_slots:
        raise ValueError(f"need {surface.num_slots} psi bits, got {len(bits)}")
    stars = surface.star_slots
    star_set = set(stars)
    for j in range(surface.num_boundary):
        if j not in star_set:
            bits[j] = 0
    if stars and bits[stars[0]]:
        for j in stars:
            bits[j] ^= 1
    return PrequantChoice(tuple(bits))


def enumerate_choices(surface: SurfaceData) -> list[PrequantChoice]:
    """Canonical representatives of Hom(Gamma, {+-1}), the trivial one first."""
    require_admissible(surface)
    if surface.gamma_size() > GAMMA_SIZE_CAP:
        raise GroupTooLarge(f"|Gamma| = {surface.gamma_size()} exceeds cap {GAMMA_SIZE_CAP}")
    stars = surface.star_slots
    s, h = surface.num_boundary, surface.genus
    free_stars = stars[1:]
    out = []
    for star_bits in product((0, 1), repeat=len(free_stars)):
        bits = [0] * s
        for j, bit in zip(free_stars, star_bits):
            bits[j] = bit
        for double_bits in product((0, 1), repeat=2 * h):
            out.append(PrequantChoice(tuple(bits) + double_bits))
    return out


def phase_factor(level: int, choice: PrequantChoice, gamma: GammaElement) -> int:
    """Phase phi'(gamma) entering the S-matrix quantization formula.

    Multiplicative over the star block and the double factors:
    psi(gamma) times (-1)^(k*l_star/8) on the star block (when the star
    count is >= 3; for two stars the sign is carried by psi alone), times
    (-1)^(k/2) for every double pair of gamma different from (0,0).
    phi'(identity) = 1 always.
    """
    k = _check_level(level)
    sign = choice.psi(gamma)
    ls = gamma.star_weight
    if ls and len(gamma.star_slots) >= 3:
        num = k * ls
        if num % 8:
            raise NotAdmissible(
                f"phase exponent k*l_star/8 = {num}/8 is not an integer; "
                f"(k={k}, l_star={ls}) needs k in 4N")
        if (num // 8) % 2:
            sign = -sign
    for pair in gamma.double_pairs:
        if pair != (0, 0):
            if k % 2:
                raise NotAdmissible(
                    f"phase exponent k/2 = {k}/2 is not an integer; "
                    "double factors need k in 2N")
            if (k // 2) % 2:
                sign = -sign
    return sign
