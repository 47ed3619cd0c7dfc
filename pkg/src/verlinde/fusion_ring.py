"""Exact arithmetic in R(SU(2)) and the level-k fusion rings R_k(SU(2)).

The representation ring R(SU(2)) is the free Z-module on the irreducible
characters chi_0, chi_1, ... with the Clebsch-Gordan product

    chi_m * chi_n = chi_{m+n} + chi_{m+n-2} + ... + chi_{|m-n|}.

The level-k fusion ring is the quotient by the ideal generated by
chi_{k+1}; it is free on the images tau_0, ..., tau_k.  Characters are
evaluated at the special torus points t_l = j(q^{l+1}), q = exp(i*pi/(k+2)),
where the ideal vanishes, so

    tau_m(t_l) = sin((m+1)(l+1)pi/(k+2)) / sin((l+1)pi/(k+2)).

The Kac-Peterson matrix S[m,l] = (k/2+1)^(-1/2) sin(pi(l+1)(m+1)/(k+2)) is
orthogonal; its columns give the idempotent basis

    taut_l = sum_m S[0,l] S[m,l] tau_m,      taut_m(t_l) = delta_{m,l},

which diagonalizes the fusion product.  All tau-basis coefficients are
arbitrary-precision Python integers; floating point enters only through
evaluation and the basis change, which are cross-checks against the exact
path, never the authority.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

__all__ = [
    "DEFAULT_TOLERANCE",
    "NonIntegralCoefficient",
    "NonIntegralValue",
    "CharacterPoly",
    "FusionElement",
    "IdempotentVector",
    "integrality_tolerance",
    "round_to_integer",
    "reduce_character",
    "s_matrix_entry",
    "s_matrix",
    "to_idempotent",
    "from_idempotent",
]

DEFAULT_TOLERANCE = 1e-6
TOLERANCE_ENV_VAR = "VERLINDE_TOLERANCE"

# Coefficients beyond 53 bits are serialized as decimal strings so that JSON
# consumers relying on IEEE doubles never see them silently truncated.
_JSON_SAFE_BOUND = 2**53


class NonIntegralCoefficient(ArithmeticError):
    """A reconstructed tau-coefficient is not within tolerance of an integer."""


class NonIntegralValue(ArithmeticError):
    """A numeric sum expected to be an integer failed the integrality check."""


def integrality_tolerance() -> float:
    """Integrality tolerance, overridable through VERLINDE_TOLERANCE."""
    raw = os.environ.get(TOLERANCE_ENV_VAR)
    if raw is None:
        return DEFAULT_TOLERANCE
    return float(raw)


def round_to_integer(value: float, tol: float | None = None,
                     exc: type[ArithmeticError] = NonIntegralValue,
                     context: str = "value") -> int:
    """Round ``value`` to the nearest integer, checking it is close enough.

    The allowed deviation scales with the magnitude of the value (floating
    point error in the Verlinde-type sums grows with their size) but is
    capped below 1/2 so a genuinely half-integral result always raises.
    """
    if tol is None:
        tol = integrality_tolerance()
    nearest = round(value)
    allowed = min(tol * (1.0 + abs(value)), 0.499)
    if abs(value - nearest) > allowed:
        raise exc(f"{context} = {value!r} is not integral "
                  f"(deviation {abs(value - nearest):.3e}, allowed {allowed:.3e})")
    return int(nearest)


def _check_level(k: int) -> int:
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise TypeError(f"level must be an integer, got {k!r}")
    if k < 0:
        raise ValueError(f"level must be non-negative, got {k}")
    return int(k)


def _check_index(k: int, idx: int, name: str) -> int:
    if not 0 <= idx <= k:
        raise IndexError(f"{name}={idx} out of range 0..{k}")
    return int(idx)


def special_angle(k: int, l: int) -> float:
    """Torus angle of the special point t_l, i.e. (l+1)*pi/(k+2)."""
    return (l + 1) * math.pi / (k + 2)


def s_matrix_entry(k: int, m: int, l: int) -> float:
    """Kac-Peterson S-matrix entry (k/2+1)^(-1/2) sin(pi(l+1)(m+1)/(k+2))."""
    _check_level(k)
    _check_index(k, m, "m")
    _check_index(k, l, "l")
    return math.sin((m + 1) * special_angle(k, l)) / math.sqrt(k / 2 + 1)


@lru_cache(maxsize=None)
def s_matrix(k: int) -> np.ndarray:
    """The full (k+1) x (k+1) S-matrix as a read-only float array."""
    _check_level(k)
    mm = np.arange(1, k + 2)
    mat = np.sin(np.outer(mm, mm) * (math.pi / (k + 2))) / math.sqrt(k / 2 + 1)
    mat.setflags(write=False)
    return mat


class CharacterPoly:
    """Finitely supported integer combination of SU(2) characters chi_m.

    Stored in canonical sparse form: the coefficient map never contains
    zeros.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        clean: dict[int, int] = {}
        for m, c in (coeffs or {}).items():
            m = int(m)
            c = int(c)
            if m < 0:
                raise ValueError(f"character degree must be non-negative, got {m}")
            if c != 0:
                clean[m] = c
        self.coeffs = clean

    @classmethod
    def chi(cls, m: int, coeff: int = 1) -> "CharacterPoly":
        return cls({m: coeff})

    @classmethod
    def zero(cls) -> "CharacterPoly":
        return cls()

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, CharacterPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "CharacterPoly") -> "CharacterPoly":
        merged = dict(self.coeffs)
        for m, c in other.coeffs.items():
            merged[m] = merged.get(m, 0) + c
        return CharacterPoly(merged)

    def __neg__(self) -> "CharacterPoly":
        return CharacterPoly({m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: "CharacterPoly") -> "CharacterPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return CharacterPoly({m: c * int(other) for m, c in self.coeffs.items()})
        if not isinstance(other, CharacterPoly):
            return NotImplemented
        out: dict[int, int] = {}
        for m, cm in self.coeffs.items():
            for n, cn in other.coeffs.items():
                c = cm * cn
                for j in range(abs(m - n), m + n + 1, 2):
                    out[j] = out.get(j, 0) + c
        return CharacterPoly(out)

    __rmul__ = __mul__

    @property
    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def special_point_value(self, k: int, l: int) -> float:
        """Evaluate at the level-k special point t_l via the Weyl quotient."""
        theta = special_angle(k, _check_index(k, l, "l"))
        denom = math.sin(theta)
        return math.fsum(c * math.sin((m + 1) * theta) for m, c in self.coeffs.items()) / denom

    def __repr__(self):
        if not self.coeffs:
            return "CharacterPoly(0)"
        terms = " + ".join(f"{c}*chi_{m}" for m, c in sorted(self.coeffs.items()))
        return f"CharacterPoly({terms})"


@lru_cache(maxsize=None)
def _fold_table(k: int) -> tuple[tuple[int, int] | None, ...]:
    """Image of chi_j in R_k(SU(2)) for j = 0..2k, as (sign, index) or None.

    Affine folding: with a = (j+1) mod 2(k+2), the character chi_j maps to 0
    when a is 0 or k+2, to +tau_{a-1} when 1 <= a <= k+1, and to
    -tau_{2(k+2)-a-1} when k+2 < a < 2(k+2).
    """
    period = 2 * (k + 2)
    table: list[tuple[int, int] | None] = []
    for j in range(2 * k + 1):
        a = (j + 1) % period
        if a == 0 or a == k + 2:
            table.append(None)
        elif a <= k + 1:
            table.append((1, a - 1))
        else:
            table.append((-1, period - a - 1))
    return tuple(table)


def _fold_degree(k: int, j: int) -> tuple[int, int] | None:
    if j <= 2 * k:
        return _fold_table(k)[j]
    a = (j + 1) % (2 * (k + 2))
    if a == 0 or a == k + 2:
        return None
    if a <= k + 1:
        return (1, a - 1)
    return (-1, 2 * (k + 2) - a - 1)


def multiply_coeff_vectors(k: int, a: Sequence, b: Sequence) -> list:
    """Fusion product of two level-k coefficient vectors.

    Coefficient-type agnostic (exact for ints, approximate for floats): the
    Clebsch-Gordan expansion is folded back into the level-k basis term by
    term.
    """
    fold = _fold_table(k)
    zero = a[0] - a[0] if len(a) else 0
    out = [zero] * (k + 1)
    for m, cm in enumerate(a):
        if not cm:
            continue
        for n, cn in enumerate(b):
            if not cn:
                continue
            c = cm * cn
            for j in range(abs(m - n), m + n + 1, 2):
                f = fold[j]
                if f is not None:
                    out[f[1]] += f[0] * c
    return out


@dataclass(frozen=True)
class FusionElement:
    """Element of R_k(SU(2)) as a dense exact-integer vector in the tau basis."""

    level: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        k = _check_level(self.level)
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != k + 1:
            raise ValueError(f"need {k + 1} coefficients at level {k}, got {len(coeffs)}")
        object.__setattr__(self, "level", k)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, k: int) -> "FusionElement":
        return cls(k, (0,) * (k + 1))

    @classmethod
    def tau(cls, k: int, m: int) -> "FusionElement":
        _check_index(_check_level(k), m, "m")
        return cls(k, tuple(1 if i == m else 0 for i in range(k + 1)))

    @classmethod
    def one(cls, k: int) -> "FusionElement":
        return cls.tau(k, 0)

    def _require_same_level(self, other: "FusionElement"):
        if self.level != other.level:
            raise ValueError(f"level mismatch: {self.level} != {other.level}")

    def __add__(self, other: "FusionElement") -> "FusionElement":
        self._require_same_level(other)
        return FusionElement(self.level, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "FusionElement") -> "FusionElement":
        self._require_same_level(other)
        return FusionElement(self.level, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "FusionElement":
        return FusionElement(self.level, tuple(-x for x in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            c = int(other)
            return FusionElement(self.level, tuple(c * x for x in self.coeffs))
        if not isinstance(other, FusionElement):
            return NotImplemented
        self._require_same_level(other)
        if self._is_unit():
            return other
        if other._is_unit():
            return self
        return FusionElement(self.level,
                             tuple(multiply_coeff_vectors(self.level, self.coeffs, other.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "FusionElement":
        if n < 0:
            raise ValueError("negative powers are not defined in the fusion ring")
        result = FusionElement.one(self.level)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _is_unit(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    @property
    def trace(self) -> int:
        """Coefficient of tau_0, i.e. the multiplicity of the trivial factor."""
        return self.coeffs[0]

    def evaluate(self, l: int) -> float:
        """Value at the special point t_l (the evaluation homomorphism)."""
        k = self.level
        theta = special_angle(k, _check_index(k, l, "l"))
        denom = math.sin(theta)
        return math.fsum(c * math.sin((m + 1) * theta)
                         for m, c in enumerate(self.coeffs) if c) / denom

    def to_json_dict(self) -> dict:
        return {
            "level": self.level,
            "coeffs": [c if abs(c) < _JSON_SAFE_BOUND else str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "FusionElement":
        return cls(int(data["level"]), tuple(int(c) for c in data["coeffs"]))

    def __str__(self):
        terms = []
        for m, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if c == 1:
                terms.append(f"tau_{m}")
            elif c == -1:
                terms.append(f"-tau_{m}")
            else:
                terms.append(f"{c}*tau_{m}")
        if not terms:
            return "0"
        text = terms[0]
        for t in terms[1:]:
            text += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return text


@dataclass(frozen=True)
class IdempotentVector:
    """Values of a fusion element at the special points t_0, ..., t_k.

    Entry l is the coefficient in the idempotent basis taut_l, which equals
    the evaluation at t_l.
    """

    level: int
    values: tuple[float, ...]

    def __post_init__(self):
        k = _check_level(self.level)
        values = tuple(float(v) for v in self.values)
        if len(values) != k + 1:
            raise ValueError(f"need {k + 1} values at level {k}, got {len(values)}")
        object.__setattr__(self, "level", k)
        object.__setattr__(self, "values", values)


def reduce_character(k: int, p: CharacterPoly) -> FusionElement:
    """Image of a character polynomial under R(SU(2)) -> R_k(SU(2))."""
    _check_level(k)
    out = [0] * (k + 1)
    for m, c in p.coeffs.items():
        f = _fold_degree(k, m)
        if f is not None:
            out[f[1]] += f[0] * c
    return FusionElement(k, tuple(out))


def to_idempotent(a: FusionElement) -> IdempotentVector:
    """Expand in the idempotent basis by evaluating at every special point."""
    return IdempotentVector(a.level, tuple(a.evaluate(l) for l in range(a.level + 1)))


def from_idempotent(v: IdempotentVector, tol: float | None = None) -> FusionElement:
    """Recover tau-coefficients sum_l v[l] S[0,l] S[m,l], rounded to integers.

    Raises NonIntegralCoefficient when a coefficient is not integral within
    tolerance; that signals an inconsistent vector (or a wrong phase factor
    upstream), not a numerical hiccup.
    """
    k = v.level
    smat = s_matrix(k)
    weighted = (smat[0] * np.asarray(v.values)) * smat  # row m: v[l] S[0,l] S[m,l]
    coeffs = []
    for m in range(k + 1):
        raw = math.fsum(weighted[m].tolist())
        coeffs.append(round_to_integer(raw, tol, NonIntegralCoefficient,
                                       f"tau_{m} coefficient"))
    return FusionElement(k, tuple(coeffs))
