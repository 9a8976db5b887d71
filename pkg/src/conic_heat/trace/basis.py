"""Expansion basis terms t^p and t^p·log t, written as short labels."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.typing import ArrayLike, NDArray

from conic_heat.profiles import CLOSED_SPINDLE, Topology

_LOG_SUFFIX = "log t"


@dataclass(frozen=True, order=True)
class BasisTerm:
    power: Fraction
    log: bool = False

    @property
    def label(self) -> str:
        if self.power == 0:
            head = "1"
        elif self.power == 1:
            head = "t"
        else:
            head = f"t^{self.power}"
        if not self.log:
            return head
        if self.power == 0:
            return _LOG_SUFFIX
        return f"{head} {_LOG_SUFFIX}"

    def evaluate(self, t: ArrayLike) -> NDArray[np.float64]:
        x = np.asarray(t, dtype=float)
        values = x ** float(self.power)
        if self.log:
            values = values * np.log(x)
        return values


def parse_term(label: str) -> BasisTerm:
    text = " ".join(label.split())
    log = text.endswith(_LOG_SUFFIX)
    head = text[: -len(_LOG_SUFFIX)].strip() if log else text
    if head in ("", "1"):
        if head == "" and not log:
            raise ValueError("empty basis label")
        power = Fraction(0)
    elif head == "t":
        power = Fraction(1)
    elif head.startswith("t^"):
        try:
            power = Fraction(head[2:])
        except ValueError:
            raise ValueError(f"cannot parse exponent in basis label {label!r}") from None
    else:
        raise ValueError(f"unrecognised basis label {label!r}")
    if power.denominator not in (1, 2):
        raise ValueError(f"basis exponents must be integers or half-integers, got {label!r}")
    return BasisTerm(power=power, log=log)


def parse_basis(labels: Iterable[str]) -> tuple[BasisTerm, ...]:
    terms = tuple(parse_term(label) for label in labels)
    if len(set(terms)) != len(terms):
        raise ValueError("basis labels must be distinct")
    return terms


CAP_BASIS: tuple[str, ...] = ("t^-1", "t^-1/2", "1", "t^1/2", "t", "t^3/2")
CLOSED_BASIS: tuple[str, ...] = ("t^-1", "1", "t^1/2", "t", "t^3/2")

AREA_TERM = BasisTerm(Fraction(-1))
CONSTANT_TERM = BasisTerm(Fraction(0))
HALF_TERM = BasisTerm(Fraction(1, 2))
BOUNDARY_TERM = BasisTerm(Fraction(-1, 2))


def default_basis(topology: Topology) -> tuple[BasisTerm, ...]:
    return parse_basis(CLOSED_BASIS if topology == CLOSED_SPINDLE else CAP_BASIS)


def next_half_power(basis: Sequence[BasisTerm]) -> BasisTerm:
    """The half-integer power just above the highest plain power of ``basis``."""
    plain = [term.power for term in basis if not term.log]
    top = max(plain) if plain else Fraction(-1)
    return BasisTerm(top + Fraction(1, 2))


def design_matrix(basis: Sequence[BasisTerm], t: ArrayLike) -> NDArray[np.float64]:
    return np.column_stack([term.evaluate(t) for term in basis])
