"""Feature configurations: which attributes a deployed model is allowed to see.

A configuration over m attributes is a bitmask; bit j set means attribute j is
acquired (visible), cleared means it is masked to null at prediction time.
The set of all configurations forms the lattice 2^m ordered by inclusion.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError


@dataclass(frozen=True, order=True)
class FeatureConfiguration:
    """Immutable attribute subset, ordered by (width, mask) for determinism."""

    width: int
    mask: int

    def __post_init__(self) -> None:
        if self.width < 0:
            raise ValidationError(f"width must be >= 0, got {self.width}")
        if not 0 <= self.mask < (1 << self.width):
            raise ValidationError(
                f"mask {self.mask:#x} out of range for width {self.width}"
            )

    @classmethod
    def full(cls, width: int) -> "FeatureConfiguration":
        return cls(width, (1 << width) - 1)

    @classmethod
    def empty(cls, width: int) -> "FeatureConfiguration":
        return cls(width, 0)

    @classmethod
    def from_indices(cls, width: int, indices) -> "FeatureConfiguration":
        mask = 0
        for j in indices:
            if not 0 <= j < width:
                raise ValidationError(f"attribute index {j} out of range 0..{width - 1}")
            mask |= 1 << j
        return cls(width, mask)

    @classmethod
    def from_bits(cls, bits: str) -> "FeatureConfiguration":
        """Parse the export form: one character per attribute, first attribute
        leftmost, '1' = included."""
        if bits == "":
            return cls(0, 0)
        if set(bits) - {"0", "1"}:
            raise ValidationError(f"bit string must contain only 0/1, got {bits!r}")
        mask = 0
        for j, ch in enumerate(bits):
            if ch == "1":
                mask |= 1 << j
        return cls(len(bits), mask)

    def bits(self) -> str:
        return "".join("1" if self.contains(j) else "0" for j in range(self.width))

    def contains(self, j: int) -> bool:
        return bool((self.mask >> j) & 1)

    def indices(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.width) if self.contains(j))

    def popcount(self) -> int:
        return self.mask.bit_count()

    def remove(self, j: int) -> "FeatureConfiguration":
        if not self.contains(j):
            raise ValidationError(f"attribute {j} not in configuration {self.bits()}")
        return FeatureConfiguration(self.width, self.mask & ~(1 << j))

    def add(self, j: int) -> "FeatureConfiguration":
        if not 0 <= j < self.width:
            raise ValidationError(f"attribute index {j} out of range 0..{self.width - 1}")
        return FeatureConfiguration(self.width, self.mask | (1 << j))

    def issubset(self, other: "FeatureConfiguration") -> bool:
        return self.width == other.width and (self.mask & ~other.mask) == 0

    def __iter__(self):
        return iter(self.indices())

    def __len__(self) -> int:
        return self.popcount()

    def __str__(self) -> str:
        return self.bits()
