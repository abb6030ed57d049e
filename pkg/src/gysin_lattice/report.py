"""Pass/fail records shared by the verification routines and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .algebra import LaurentPoly, RatFun


def _jsonable(x: Any) -> Any:
    if isinstance(x, LaurentPoly):
        return x.to_json_obj()
    if isinstance(x, RatFun):
        return {"num": x.num.to_json_obj(), "den": x.den.to_json_obj()}
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


@dataclass
class Failure:
    input: dict
    lhs: Any = None
    rhs: Any = None

    def to_json_obj(self) -> dict:
        return {"input": _jsonable(self.input), "lhs": _jsonable(self.lhs), "rhs": _jsonable(self.rhs)}

    def sort_key(self) -> str:
        return json.dumps(_jsonable(self.input), sort_keys=True)


@dataclass
class Outcome:
    """Result of checking one identity on one or more instances.

    ``lhs``/``rhs`` hold the two sides when a single instance was checked.
    """

    identity: str
    instances: int = 0
    failures: list = field(default_factory=list)
    lhs: Any = None
    rhs: Any = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def record(self, input: dict, lhs, rhs, equal: bool | None = None) -> bool:
        self.instances += 1
        if equal is None:
            equal = lhs == rhs
        if not equal:
            self.failures.append(Failure(dict(input), lhs, rhs))
        return equal

    def merge(self, other: "Outcome") -> "Outcome":
        self.instances += other.instances
        self.failures.extend(other.failures)
        return self

    def to_json_obj(self) -> dict:
        failures = sorted(self.failures, key=Failure.sort_key)
        obj = {
            "identity": self.identity,
            "instances": self.instances,
            "failures": [f.to_json_obj() for f in failures],
        }
        if failures:
            obj["witness"] = failures[0].to_json_obj()
        return obj
