"""Audit reports, witnesses and their JSON form."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..tournament import Tournament

INF = math.inf

#: Properties whose result is a worst-case constant rather than a yes/no answer.
CONSTANT_PROPERTIES = ("nm_lambda", "mnm_delta", "snm_alpha")
BOOLEAN_PROPERTIES = ("condorcet_consistency", "top_cycle_consistency", "monotonicity")
PROPERTIES = BOOLEAN_PROPERTIES + CONSTANT_PROPERTIES

Constant = Fraction | float  # a Fraction, or INF


def normalize_property(name: str) -> str:
    key = name.replace("-", "_")
    if key not in PROPERTIES:
        raise ValueError(f"unknown property {name!r}; expected one of {', '.join(PROPERTIES)}")
    return key


@dataclass(frozen=True)
class Witness:
    """A tournament, the coalition involved and (for pair properties) the adjacent tournament."""

    tournament: Tournament
    coalition: tuple[int, ...]
    adjacent: Tournament | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "tournament": self.tournament.rows(),
            "coalition": list(self.coalition),
            "adjacent": None if self.adjacent is None else self.adjacent.rows(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Witness:
        adjacent = data.get("adjacent")
        return cls(
            Tournament.from_rows(data["tournament"]),
            tuple(data["coalition"]),
            None if adjacent is None else Tournament.from_rows(adjacent),
        )


@dataclass
class AuditReport:
    rule: str
    property: str
    passed: bool
    n: int | None = None
    family: str | None = None
    k: int | None = None
    worst_constant: Constant | None = None
    threshold: Fraction | None = None
    witnesses: list[Witness] = field(default_factory=list)
    checked: int = 0

    @property
    def result(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"rule": self.rule, "property": self.property, "k": self.k}
        if self.family is not None:
            out["family"] = self.family
        out["n"] = self.n
        out["result"] = self.result
        out["worst_constant"] = constant_to_json(self.worst_constant)
        out["worst_constant_float"] = (
            None if self.worst_constant in (None, INF) else float(self.worst_constant)
        )
        out["threshold"] = constant_to_json(self.threshold)
        out["witnesses"] = [w.to_dict() for w in self.witnesses]
        out["checked"] = self.checked
        return out

    def to_json(self, **kwargs: Any) -> str:
        # inf is encoded as a string, so a float inf never reaches the encoder
        kwargs.setdefault("indent", 2)
        return json.dumps(self.to_dict(), allow_nan=False, **kwargs)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> AuditReport:
        return cls(
            rule=data["rule"],
            property=data["property"],
            passed=data["result"] == "pass",
            n=data.get("n"),
            family=data.get("family"),
            k=data.get("k"),
            worst_constant=constant_from_json(data.get("worst_constant")),
            threshold=constant_from_json(data.get("threshold")),
            witnesses=[Witness.from_dict(w) for w in data.get("witnesses", [])],
            checked=data.get("checked", 0),
        )

    @classmethod
    def from_json(cls, text: str) -> AuditReport:
        return cls.from_dict(json.loads(text))


def constant_to_json(value: Constant | None) -> Any:
    if value is None:
        return None
    if value == INF:
        return "inf"
    value = Fraction(value)
    return {"num": value.numerator, "den": value.denominator}


def constant_from_json(data: Any) -> Constant | None:
    if data is None:
        return None
    if data == "inf":
        return INF
    return Fraction(int(data["num"]), int(data["den"]))


def parse_rational(text: str) -> Fraction:
    """``"7/2"``, ``"3"`` or ``"3.5"`` to an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational number: {text!r}") from None


def format_constant(value: Constant | None) -> str:
    if value is None:
        return "-"
    if value == INF:
        return "inf"
    return str(Fraction(value))
