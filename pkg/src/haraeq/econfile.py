"""Economy description files.

JSON with fields a, b, gamma and a types array of {e, f, beta};
rationals may be written as "p/q" strings and are preserved exactly, so
certified runs survive serialisation.  A type may carry an explicit
"sigma" (useful when beta^(1/gamma) has no exact radical form but the
weights themselves are the modelling primitive); it is validated against
beta when both are present.

Example:

    {
      "a": 1, "b": 0, "gamma": 3,
      "types": [
        {"e": "1/49", "f": "48/49", "beta": 216},
        {"e": "48/49", "f": "1/49", "beta": "1/216"}
      ]
    }
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ConfigParse, EconomyInvalid
from .model import ConsumerType, Economy, HaraParams
from .rationals import exact_pow, format_number, is_rational, parse_number

__all__ = ["load_economy", "loads_economy", "dump_economy", "economy_to_mapping"]


def _num(raw, where):
    if isinstance(raw, bool) or raw is None:
        raise ConfigParse(f"{where}: expected a number, got {raw!r}")
    if isinstance(raw, (int, float)):
        return raw
    if isinstance(raw, str):
        try:
            return parse_number(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigParse(f"{where}: bad number {raw!r}") from exc
    raise ConfigParse(f"{where}: expected a number, got {type(raw).__name__}")


def loads_economy(text: str, mode: str = "auto") -> Economy:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParse(f"economy file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigParse("economy file must be a JSON object")
    for key in ("a", "b", "gamma", "types"):
        if key not in doc:
            raise ConfigParse(f"economy file missing field {key!r}")
    unknown = set(doc) - {"a", "b", "gamma", "types", "comment"}
    if unknown:
        raise ConfigParse(f"unknown fields in economy file: {sorted(unknown)}")
    a = _num(doc["a"], "a")
    b = _num(doc["b"], "b")
    gamma = _num(doc["gamma"], "gamma")
    rows = doc["types"]
    if not isinstance(rows, list) or len(rows) < 2:
        raise ConfigParse("types must be an array of at least two entries")

    hara = HaraParams(a, b, gamma)
    types = []
    for idx, row in enumerate(rows):
        if not isinstance(row, dict) or "e" not in row or "f" not in row:
            raise ConfigParse(f"types[{idx}] needs fields e and f")
        if "beta" not in row and "sigma" not in row:
            raise ConfigParse(f"types[{idx}] needs beta or sigma")
        e = _num(row["e"], f"types[{idx}].e")
        f = _num(row["f"], f"types[{idx}].f")
        beta = _num(row["beta"], f"types[{idx}].beta") if "beta" in row else None
        sigma = _num(row["sigma"], f"types[{idx}].sigma") if "sigma" in row else None
        if sigma is None:
            if is_rational(beta) and isinstance(hara.epsilon, Fraction):
                sigma = exact_pow(beta, hara.epsilon)
            if sigma is None:
                sigma = float(beta) ** float(hara.epsilon)
        elif beta is not None:
            drift = abs(float(sigma) - float(beta) ** float(hara.epsilon))
            if drift > 1e-9 * (1.0 + abs(float(sigma))):
                raise EconomyInvalid(
                    f"types[{idx}]: sigma does not match beta^(1/gamma)")
        if beta is None:
            if is_rational(sigma) and is_rational(gamma):
                beta = exact_pow(sigma, Fraction(gamma))
            if beta is None:
                beta = float(sigma) ** float(gamma)
        types.append(ConsumerType(e, f, beta, sigma))
    econ = Economy(hara, tuple(types))

    if mode == "rational" and not econ.is_rational:
        raise EconomyInvalid(
            "rational mode requested but the economy has no exact form; "
            "give rational inputs (and an explicit rational sigma where "
            "beta has no exact root)")
    if mode == "float":
        econ = Economy.from_sigmas(
            float(a), float(b), float(gamma),
            [(float(t.e), float(t.f), float(t.sigma)) for t in econ.types])
    elif mode not in ("auto", "rational"):
        raise ConfigParse(f"unknown mode {mode!r}")
    return econ


def load_economy(path, mode: str = "auto") -> Economy:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigParse(f"cannot read economy file {path}: {exc}") from exc
    return loads_economy(text, mode)


def economy_to_mapping(econ: Economy) -> dict:
    return {
        "a": format_number(econ.hara.a),
        "b": format_number(econ.hara.b),
        "gamma": format_number(econ.hara.gamma),
        "types": [
            {"e": format_number(t.e), "f": format_number(t.f),
             "beta": format_number(t.beta), "sigma": format_number(t.sigma)}
            for t in econ.types
        ],
    }


def dump_economy(econ: Economy, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(economy_to_mapping(econ), fh, indent=2)
        fh.write("\n")
