"""JSON solution records: the on-disk form of a solved passage."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from datetime import datetime, timezone

from .errors import ParseError
from .solver import SolutionSeptuple

SCHEMA_FIELDS = ("solid", "x", "y", "alpha", "theta1", "phi1", "theta2", "phi2")


@dataclass(frozen=True)
class SolutionRecord:
    """One solved row: solid name, the seven parameters and provenance.

    Floats round-trip losslessly through JSON (shortest-repr encoding keeps
    all 17 significant digits).
    """

    solid: str
    x: float
    y: float
    alpha: float
    theta1: float
    phi1: float
    theta2: float
    phi2: float
    mu: float | None = None
    margin: float | None = None
    seed: int | None = None
    timestamp: str = ""
    version: str = ""

    def septuple(self) -> SolutionSeptuple:
        return SolutionSeptuple(self.x, self.y, self.alpha,
                                self.theta1, self.phi1, self.theta2, self.phi2)

    @staticmethod
    def from_septuple(solid: str, v: SolutionSeptuple, **extra) -> "SolutionRecord":
        return SolutionRecord(solid=solid, x=v.x, y=v.y, alpha=v.alpha,
                              theta1=v.theta1, phi1=v.phi1,
                              theta2=v.theta2, phi2=v.phi2, **extra)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=1)

    @staticmethod
    def from_json(text: str) -> "SolutionRecord":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise ParseError("expected a JSON object")
        missing = [f for f in SCHEMA_FIELDS if f not in doc]
        if missing:
            raise ParseError(f"missing fields: {missing}")
        known = {f.name for f in SolutionRecord.__dataclass_fields__.values()}
        return SolutionRecord(**{k: v for k, v in doc.items() if k in known})

    @staticmethod
    def load(path) -> "SolutionRecord":
        with open(path, "r", encoding="utf-8") as fh:
            return SolutionRecord.from_json(fh.read())

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())
            fh.write("\n")


def utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")
