"""Subset weights gamma_u for the unanchored weighted space.

Two forms are supported: product weights (gamma_u is the product of per
coordinate weights) and explicit weights given per nonempty subset. The empty
set always has weight 1 and is never stored. Subsets are frozensets of
1-based coordinate indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from math import prod
from pathlib import Path
from typing import Iterator, Mapping, Sequence

from .errors import DimensionTooLarge, LatticeError, OutOfRange

MAX_SUBSET_DIM = 20

Subset = frozenset


def subsets(s: int, nonempty: bool = True) -> Iterator[frozenset]:
    """All subsets of {1, ..., s}, ordered by size then lexicographically."""
    start = 1 if nonempty else 0
    for size in range(start, s + 1):
        for c in combinations(range(1, s + 1), size):
            yield frozenset(c)


def subset_key(u: frozenset) -> str:
    return ",".join(str(j) for j in sorted(u))


@dataclass(frozen=True)
class WeightScheme:
    kind: str
    s: int
    product_weights: tuple[float, ...] = ()
    explicit_weights: Mapping[frozenset, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.s < 1:
            raise OutOfRange("dimension s must be at least 1")
        if self.kind == "product":
            if len(self.product_weights) != self.s:
                raise OutOfRange(
                    f"expected {self.s} product weights, got {len(self.product_weights)}"
                )
            if any(g < 0 for g in self.product_weights):
                raise OutOfRange("weights must be nonnegative")
        elif self.kind == "explicit":
            if self.s > MAX_SUBSET_DIM:
                raise DimensionTooLarge(f"explicit weights need s <= {MAX_SUBSET_DIM}")
            for u, g in self.explicit_weights.items():
                if not u or not u <= frozenset(range(1, self.s + 1)):
                    raise OutOfRange(f"subset {sorted(u)} is not a nonempty subset of 1..{self.s}")
                if g < 0:
                    raise OutOfRange("weights must be nonnegative")
        else:
            raise LatticeError(f"unknown weight kind {self.kind!r}")

    @classmethod
    def product(cls, gammas: Sequence[float]) -> "WeightScheme":
        gammas = tuple(float(g) for g in gammas)
        return cls("product", len(gammas), product_weights=gammas)

    @classmethod
    def explicit(cls, s: int, weights: Mapping) -> "WeightScheme":
        table = {frozenset(u): float(g) for u, g in weights.items()}
        return cls("explicit", s, explicit_weights=table)

    def gamma(self, u: frozenset) -> float:
        if not u:
            return 1.0
        if self.kind == "product":
            return prod(self.product_weights[j - 1] for j in u)
        return self.explicit_weights.get(frozenset(u), 0.0)

    def items(self) -> Iterator[tuple[frozenset, float]]:
        """Nonempty subsets with their weights (enumerates 2^s - 1 subsets)."""
        if self.s > MAX_SUBSET_DIM:
            raise DimensionTooLarge(f"subset enumeration needs s <= {MAX_SUBSET_DIM}")
        for u in subsets(self.s):
            yield u, self.gamma(u)

    def cardinality_sums(self) -> list[float]:
        """Entry d-1 holds the sum of gamma_u over all u with |u| = d.

        Product weights use the elementary symmetric polynomial recurrence,
        so no subsets are enumerated.
        """
        if self.kind == "product":
            e = [1.0] + [0.0] * self.s
            for g in self.product_weights:
                for d in range(self.s, 0, -1):
                    e[d] += g * e[d - 1]
            return e[1:]
        sums = [0.0] * self.s
        for u, g in self.explicit_weights.items():
            sums[len(u) - 1] += g
        return sums


def parse_weights(spec: str, s: int) -> WeightScheme:
    """Parse a weight spec string.

    Grammar::

        product:g1,g2,...     one weight per coordinate (a single value is
                              broadcast to all s coordinates)
        product-fill:c,p      gamma_j = c * j**(-p)
        explicit:@file.json   {"1": 0.5, "1,2": 0.1, ...}; missing subsets get 0
    """
    kind, sep, body = spec.partition(":")
    if not sep:
        raise LatticeError(f"weight spec {spec!r} lacks a 'kind:' prefix")
    try:
        if kind == "product":
            vals = [float(v) for v in body.split(",") if v.strip()]
            if len(vals) == 1 and s > 1:
                vals = vals * s
            if len(vals) != s:
                raise OutOfRange(f"product weights: expected {s} values, got {len(vals)}")
            return WeightScheme.product(vals)
        if kind == "product-fill":
            c, p = (float(v) for v in body.split(","))
            return WeightScheme.product([c * j ** (-p) for j in range(1, s + 1)])
        if kind == "explicit":
            if not body.startswith("@"):
                raise LatticeError("explicit weights must be given as explicit:@file.json")
            raw = json.loads(Path(body[1:]).read_text())
            table = {
                frozenset(int(j) for j in key.split(",")): float(g) for key, g in raw.items()
            }
            return WeightScheme.explicit(s, table)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, LatticeError):
            raise
        raise LatticeError(f"cannot parse weight spec {spec!r}: {exc}") from exc
    raise LatticeError(f"unknown weight kind {kind!r}")
