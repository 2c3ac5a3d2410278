"""Frame definition files and CLI run configurations (JSON).

Frame file fields::

    {"kind": "q", "q": "2", "exclude": ["3"], "base_points": [["1", "1"]]}

Affine frames add ``"h"``, ``"h'"`` and ``"q'"``.  Custom frames describe the
shifts either as affine coefficients ``[a, b]`` (x -> a*x + b) or as a table
``{"table": {"p": "image", ...}}`` and the tension as ``"difference"``,
``"log"``, ``"product"`` (not additive; useful as a negative control) or
``{"potential": {"p": "phi(p)", ...}}``.  Rationals are ``"num/den"`` strings.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Optional

from .derivative import FrameKind, make_preset
from .errors import InvalidParams, ParseError
from .scalars import format_scalar, to_scalar
from .tension import QuantumFrame, ShiftMap, TensionFn

_PARAM_KEYS = {"h": "h", "q": "q", "h'": "h_prime", "q'": "q_prime",
               "h_prime": "h_prime", "q_prime": "q_prime"}


def _base_points(raw) -> Optional[list]:
    if raw is None:
        return None
    if isinstance(raw, dict):
        raw = list(raw.items())
    return [(str(lab), to_scalar(p)) for lab, p in raw]


def frame_from_dict(spec: dict) -> QuantumFrame:
    kind = spec.get("kind")
    if kind is None:
        raise ParseError("frame spec needs a 'kind'")
    exclusions = frozenset(to_scalar(p) for p in spec.get("exclude", []))
    base = _base_points(spec.get("base_points"))
    if kind == "custom":
        frame = _custom_frame(spec, base)
    else:
        params = {}
        for key, value in spec.items():
            if key in _PARAM_KEYS:
                params[_PARAM_KEYS[key]] = to_scalar(value)
        frame = make_preset(FrameKind(kind, **params), base_points=base)
    return _replace(frame, exclusions=frame.exclusions | exclusions, extra={"spec": dict(spec)})


def _replace(frame: QuantumFrame, **changes) -> QuantumFrame:
    values = {f.name: getattr(frame, f.name) for f in fields(frame)}
    values.update(changes)
    return QuantumFrame(**values)


def _shift(raw, name: str) -> ShiftMap:
    if isinstance(raw, dict) and "table" in raw:
        return ShiftMap.table({to_scalar(k): to_scalar(v) for k, v in raw["table"].items()}, name)
    if isinstance(raw, (list, tuple)) and len(raw) == 2:
        return ShiftMap.affine(to_scalar(raw[0]), to_scalar(raw[1]), name)
    raise ParseError(f"cannot read shift {name}: {raw!r}")


def _tension(raw) -> TensionFn:
    if raw in (None, "difference"):
        return TensionFn.difference()
    if raw == "log":
        return TensionFn(lambda p1, p2: math.log(p1) - math.log(p2), "log p1 - log p2")
    if raw == "product":
        return TensionFn(lambda p1, p2: p1 * p2, "p1 * p2")
    if isinstance(raw, dict) and "potential" in raw:
        table = {to_scalar(k): to_scalar(v) for k, v in raw["potential"].items()}
        return TensionFn.from_potential(table.__getitem__, "phi")
    raise ParseError(f"cannot read tension {raw!r}")


def _custom_frame(spec: dict, base) -> QuantumFrame:
    try:
        sigma, tau = _shift(spec["sigma"], "sigma"), _shift(spec["tau"], "tau")
    except KeyError as exc:
        raise ParseError(f"custom frame needs {exc.args[0]!r}") from None
    theta = _tension(spec.get("theta"))
    s = to_scalar(spec["s"]) if "s" in spec else None
    t = to_scalar(spec["t"]) if "t" in spec else None
    domain = None
    tables = [spec[k]["table"] for k in ("sigma", "tau") if isinstance(spec[k], dict)]
    if tables:
        points = {to_scalar(p) for tab in tables for p in list(tab) + list(tab.values())}
        domain = points.__contains__
    return QuantumFrame(sigma, tau, theta, s, t, tuple(base or ()), domain=domain,
                        name=spec.get("name", "custom"), kind=FrameKind("custom"))


def frame_to_dict(frame: QuantumFrame) -> dict:
    if "spec" in frame.extra:
        return dict(frame.extra["spec"])
    kind = frame.kind
    if not isinstance(kind, FrameKind) or kind.tag == "custom":
        raise InvalidParams("only preset frames or frames read from a config dict can be serialised")
    out = {"kind": kind.tag}
    out.update({k: format_scalar(v) for k, v in kind.params().items()})
    if frame.exclusions:
        out["exclude"] = sorted(format_scalar(p) for p in frame.exclusions)
    out["base_points"] = [[lab, format_scalar(p)] for lab, p in frame.base_points]
    return out


def load_frame(path: str) -> QuantumFrame:
    with open(path) as fh:
        return frame_from_dict(json.load(fh))


def dump_frame(frame: QuantumFrame, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(frame_to_dict(frame), fh, indent=2)


@dataclass
class RunConfig:
    """Everything one CLI invocation needs; numbers are kept as text."""

    command: Optional[str] = None
    frame: dict = field(default_factory=dict)
    fn: Optional[str] = None
    points: list = field(default_factory=list)
    order: Optional[int] = None
    max_order: Optional[int] = None
    degree: Optional[int] = None
    family: Optional[str] = None
    suite: Optional[str] = None
    instance: Optional[str] = None
    n: Optional[int] = None
    m: Optional[int] = None
    stride: Optional[int] = None
    samples: Optional[int] = None
    cases: Optional[int] = None
    seed: Optional[int] = None
    show: Optional[str] = None
    matrix: Optional[str] = None
    out: Optional[str] = None
    format: Optional[str] = None

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v not in (None, [], {})}

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ParseError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        try:
            data: Any = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"config is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ParseError("config must be a JSON object")
        return cls.from_dict(data)
