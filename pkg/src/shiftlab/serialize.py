"""JSON schema for shift definitions.

::

    {"family": "two-iso" | "periodic" | "constant" | "power-tower" | "explicit",
     "params": {...},
     "phases": [[re, im], ...],                   # optional, repeated periodically
     "transforms": [{"kind": "aluthge", "lambda": "1/2"}, ...]}   # optional

Exact rationals are strings ``"p/q"``; JSON numbers are floating parameters.
``transforms`` records the provenance of derived shifts and is replayed, in
order, when parsing.  Kinds: ``aluthge`` / ``lambda-mean`` (with
``lambda``), ``mean``, ``scale`` (with ``alpha``).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import DomainError
from .transforms import AluthgeSequence, LambdaMeanSequence, MeanSequence
from .weights import (Constant, Explicit, Periodic, PowerTower, ScaledSequence,
                      Tail, TwoIsoFamily, WeightedShift, WeightSequence,
                      as_number)

__all__ = ["encode_number", "shift_to_dict", "shift_from_dict", "dumps", "loads"]

FAMILIES = ("two-iso", "periodic", "constant", "power-tower", "explicit")


def encode_number(value):
    if isinstance(value, Fraction):
        return str(value)
    return float(value)


def _decode(value, what: str):
    if value is None:
        raise DomainError(f"missing parameter {what!r}")
    if isinstance(value, (list, dict)):
        raise DomainError(f"parameter {what!r} must be a number or rational string")
    return as_number(value)


def _entries(seq) -> dict:
    key = "squares" if seq.squared else "weights"
    return {key: [encode_number(v) for v in seq.values]}


def _family_to_dict(seq: WeightSequence) -> dict:
    if isinstance(seq, Constant):
        params = {"c": encode_number(seq.c)}
    elif isinstance(seq, Periodic):
        params = _entries(seq)
    elif isinstance(seq, TwoIsoFamily):
        params = {"a": encode_number(seq.a)}
    elif isinstance(seq, PowerTower):
        params = {"x": encode_number(seq.x), "lambda": encode_number(seq.lam)}
    elif isinstance(seq, Explicit):
        params = _entries(seq)
        tail = {"rule": seq.tail.rule}
        if seq.tail.rule == "constant":
            tail["c"] = encode_number(seq.tail.value)
        elif seq.tail.rule == "two-iso-extend":
            tail["a"] = encode_number(seq.tail.value)
        params["tail"] = tail
    else:
        raise DomainError(f"cannot serialize sequence of type {type(seq).__name__}")
    return {"family": seq.family, "params": params}


def shift_to_dict(shift) -> dict:
    if isinstance(shift, WeightSequence):
        shift = WeightedShift(shift)
    steps = []
    seq = shift.weights
    while True:
        if isinstance(seq, AluthgeSequence):
            steps.append({"kind": "aluthge", "lambda": encode_number(seq.lam)})
        elif isinstance(seq, LambdaMeanSequence):
            steps.append({"kind": "lambda-mean", "lambda": encode_number(seq.lam)})
        elif isinstance(seq, MeanSequence):
            steps.append({"kind": "mean"})
        elif isinstance(seq, ScaledSequence):
            steps.append({"kind": "scale", "alpha": encode_number(seq.alpha)})
        else:
            break
        seq = seq.base
    doc = _family_to_dict(seq)
    if shift.phases is not None:
        doc["phases"] = [[z.real, z.imag] for z in shift.phases]
    if steps:
        doc["transforms"] = steps[::-1]
    return doc


def _values(params: dict) -> tuple[list, bool]:
    if "weights" in params and "squares" in params:
        raise DomainError("give either 'weights' or 'squares', not both")
    if "squares" in params:
        key, squared = "squares", True
    elif "weights" in params:
        key, squared = "weights", False
    else:
        raise DomainError("missing parameter 'weights' (or 'squares')")
    raw = params[key]
    if not isinstance(raw, list):
        raise DomainError(f"parameter {key!r} must be a list")
    return [_decode(v, key) for v in raw], squared


def _family_from_dict(doc: dict) -> WeightSequence:
    family = doc.get("family")
    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise DomainError("'params' must be an object")
    if family == "constant":
        return Constant(_decode(params.get("c"), "c"))
    if family == "periodic":
        values, squared = _values(params)
        return Periodic(tuple(values), squared)
    if family == "two-iso":
        return TwoIsoFamily(_decode(params.get("a"), "a"))
    if family == "power-tower":
        return PowerTower(_decode(params.get("x"), "x"),
                          _decode(params.get("lambda"), "lambda"))
    if family == "explicit":
        values, squared = _values(params)
        tail = params.get("tail")
        if not isinstance(tail, dict) or "rule" not in tail:
            raise DomainError("explicit sequences need a 'tail' object with a 'rule'")
        rule = tail["rule"]
        if rule == "constant":
            t = Tail.constant(_decode(tail.get("c"), "tail.c"))
        elif rule == "two-iso-extend":
            t = Tail.two_iso_extend(_decode(tail.get("a"), "tail.a"))
        else:
            t = Tail(rule)
        return Explicit(tuple(values), t, squared)
    raise DomainError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def shift_from_dict(doc: dict) -> WeightedShift:
    if not isinstance(doc, dict):
        raise DomainError("a shift definition must be a JSON object")
    seq = _family_from_dict(doc)
    for step in doc.get("transforms", []):
        kind = step.get("kind")
        if kind == "aluthge":
            seq = AluthgeSequence(seq, _decode(step.get("lambda"), "lambda"))
        elif kind == "lambda-mean":
            seq = LambdaMeanSequence(seq, _decode(step.get("lambda"), "lambda"))
        elif kind == "mean":
            seq = MeanSequence(seq)
        elif kind == "scale":
            seq = ScaledSequence(seq, _decode(step.get("alpha"), "alpha"))
        else:
            raise DomainError(f"unknown transform kind {kind!r}")
    phases = doc.get("phases")
    if phases is not None:
        phases = tuple(complex(re, im) for re, im in phases)
    return WeightedShift(seq, phases)


def dumps(shift, **kwargs) -> str:
    return json.dumps(shift_to_dict(shift), sort_keys=True, **kwargs)


def loads(text: str) -> WeightedShift:
    return shift_from_dict(json.loads(text))
