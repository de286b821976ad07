# coeffkit/torus.py
"""Diagonalizable torus actions as characters in Z^r ⊕ (Z/2)^s, and invariant subcomplexes."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping, Sequence

from .complexes import ChainMap, ComplexError, GradedComplex, subcomplex_inclusion
from .exterior import Blade, blade_indices
from .lie import LiePresentation
from .linalg import unit_vector

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Character:
    free: tuple[int, ...] = ()
    sign: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "free", tuple(int(a) for a in self.free))
        bits = tuple(int(a) for a in self.sign)
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"sign part must be 0/1 bits, got {list(bits)}")
        object.__setattr__(self, "sign", bits)

    @classmethod
    def trivial(cls, r: int, s: int) -> "Character":
        return cls((0,) * r, (0,) * s)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.free), len(self.sign))

    def __add__(self, other: "Character") -> "Character":
        if self.shape != other.shape:
            raise ValueError(f"character shapes differ: {self.shape} vs {other.shape}")
        return Character(tuple(a + b for a, b in zip(self.free, other.free)),
                         tuple((a + b) % 2 for a, b in zip(self.sign, other.sign)))

    def is_trivial(self) -> bool:
        return not any(self.free) and not any(self.sign)

    def padded(self, before: tuple[int, int], after: tuple[int, int]) -> "Character":
        """Embed into a larger character space with zero coordinates around this one."""
        return Character((0,) * before[0] + self.free + (0,) * after[0],
                         (0,) * before[1] + self.sign + (0,) * after[1])


@dataclass(frozen=True)
class WeightAssignment:
    names: tuple[str, ...]
    characters: tuple[Character, ...]

    def __post_init__(self):
        if len(self.names) != len(self.characters):
            raise ValueError("one character per generator is required")
        shapes = {c.shape for c in self.characters}
        if len(shapes) > 1:
            raise ValueError(f"characters must share one (r, s) shape, found {sorted(shapes)}")

    @classmethod
    def from_mapping(cls, names: Sequence[str], chars: Mapping[str, Character]) -> "WeightAssignment":
        missing = [g for g in names if g not in chars]
        if missing:
            raise ValueError(f"no character for generator(s) {missing}")
        extra = sorted(set(chars) - set(names))
        if extra:
            raise ValueError(f"characters for unknown generator(s) {extra}")
        return cls(tuple(names), tuple(chars[g] for g in names))

    @property
    def shape(self) -> tuple[int, int]:
        return self.characters[0].shape if self.characters else (0, 0)

    def trivial(self) -> Character:
        return Character.trivial(*self.shape)


def blade_character(b: Blade, W: WeightAssignment) -> Character:
    """Sum of the characters of the blade's generators."""
    out = W.trivial()
    for i in blade_indices(b):
        if i >= len(W.characters):
            raise ValueError(f"blade index {i} outside the {len(W.characters)} weighted generators")
        out = out + W.characters[i]
    return out


@dataclass
class WeightReport:
    ok: bool
    failures: list[tuple[int, int, int]]

    def lines(self, names: Sequence[str]) -> list[str]:
        if self.ok:
            return ["weights compatible with the bracket."]
        return [f"χ({names[i]}) + χ({names[j]}) ≠ χ({names[k]})" for i, j, k in self.failures]


def check_weight_compatibility(pres: LiePresentation, W: WeightAssignment) -> WeightReport:
    """χ(x_i) + χ(x_j) = χ(x_k) for every nonzero c^k_ij."""
    if W.names != pres.names:
        raise ValueError(f"weights are for {list(W.names)}, presentation has {list(pres.names)}")
    failures = [(i, j, k) for (i, j, k) in pres.constants
                if W.characters[i] + W.characters[j] != W.characters[k]]
    return WeightReport(not failures, failures)


def invariant_complex(C: GradedComplex, W: WeightAssignment, name: str = "") -> tuple[GradedComplex, ChainMap]:
    """Subcomplex spanned by blades of trivial total character, with its inclusion."""
    if not C.is_blade_complex():
        raise ValueError("invariant_complex needs a complex over blades")
    if W.names != C.generators:
        raise ValueError(f"weights are for {list(W.names)}, complex has {list(C.generators)}")
    spaces, labels = [], []
    for p in C.degrees():
        keep = [(i, b) for i, b in enumerate(C.labels[p]) if blade_character(b, W).is_trivial()]
        spaces.append([unit_vector(C.dim(p), i) for i, _ in keep])
        labels.append([b for _, b in keep])
    try:
        sub, inc = subcomplex_inclusion(C, spaces, labels, name or f"{C.name}^T", C.generators)
    except ComplexError as e:
        raise ComplexError(f"d does not restrict to the invariant blades (incompatible weights?): {e}") from e
    log.debug("invariant complex dims %s", sub.dims())
    return sub, inc
