"""JSON and CSV input/output with reproducibility manifests.

Games, behaviors and KS sets use flat string-keyed JSON tables with
rationals written as "p/q" to avoid float loss.  Every emitted file
embeds a manifest block (tool version, config hash, input hashes) and is
byte-identical across runs with identical configuration.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .games import Alphabet, Behavior, Game

TOOL_VERSION = "0.1.0"


class InputFormatError(ValueError):
    """Malformed input file; message carries field diagnostics."""


def frac_str(value) -> str:
    f = Fraction(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_frac(text, where: str = "") -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputFormatError(f"bad rational {text!r}"
                               + (f" at {where}" if where else "")) from exc


def _key(parts: Iterable[int]) -> str:
    return ",".join(str(p) for p in parts)


def _parse_key(key: str, arity: int, where: str) -> tuple[int, ...]:
    parts = key.split(",")
    if len(parts) != arity:
        raise InputFormatError(f"key {key!r} at {where}: expected {arity} "
                               f"comma-separated symbols")
    try:
        return tuple(int(p) for p in parts)
    except ValueError as exc:
        raise InputFormatError(f"key {key!r} at {where}: non-integer symbol") from exc


# ---------------------------------------------------------------------------
# game and behavior schemas
# ---------------------------------------------------------------------------

def game_to_dict(game: Game) -> dict:
    return {
        "parties": game.parties,
        "inputs": list(game.input_sizes),
        "outputs": list(game.output_sizes),
        "pi": {_key(ins): frac_str(p) for ins, p in sorted(game.pi.items())},
        "V": {_key(outs + ins): v
              for (outs, ins), v in sorted(game.predicate.items())},
        "name": game.name,
    }


def game_from_dict(data: dict) -> Game:
    try:
        parties = int(data["parties"])
        inputs = [int(s) for s in data["inputs"]]
        outputs = [int(s) for s in data["outputs"]]
        pi_raw = data["pi"]
        v_raw = data["V"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"game JSON missing/bad field: {exc}") from exc
    pi = {}
    for key, val in pi_raw.items():
        ins = _parse_key(key, parties, "pi")
        pi[ins] = parse_frac(val, f"pi[{key}]")
    predicate = {}
    for key, val in v_raw.items():
        sym = _parse_key(key, 2 * parties, "V")
        if val not in (0, 1):
            raise InputFormatError(f"V[{key}] = {val!r} is not 0/1")
        predicate[(sym[:parties], sym[parties:])] = int(val)
    return Game(parties, tuple(Alphabet(s) for s in inputs),
                tuple(Alphabet(s) for s in outputs), pi, predicate,
                name=data.get("name", ""))


def behavior_to_dict(behavior: Behavior) -> dict:
    return {
        "parties": behavior.parties,
        "inputs": list(behavior.input_sizes),
        "outputs": list(behavior.output_sizes),
        "P": {f"{_key(outs)}|{_key(ins)}": frac_str(p)
              for (outs, ins), p in sorted(behavior.table.items()) if p},
        "subnormalized": behavior.subnormalized,
    }


def behavior_from_dict(data: dict) -> Behavior:
    try:
        parties = int(data["parties"])
        inputs = tuple(int(s) for s in data["inputs"])
        outputs = tuple(int(s) for s in data["outputs"])
        p_raw = data["P"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"behavior JSON missing/bad field: {exc}") from exc
    table = {}
    for key, val in p_raw.items():
        if "|" not in key:
            raise InputFormatError(f"P key {key!r} lacks the outputs|inputs bar")
        out_key, in_key = key.split("|", 1)
        outs = _parse_key(out_key, parties, "P")
        ins = _parse_key(in_key, parties, "P")
        table[(outs, ins)] = parse_frac(val, f"P[{key}]")
    return Behavior(inputs, outputs, table,
                    subnormalized=bool(data.get("subnormalized", False)))


# ---------------------------------------------------------------------------
# manifests and file emission
# ---------------------------------------------------------------------------

def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def build_manifest(config: dict, input_paths: Sequence[Union[str, Path]] = ()
                   ) -> dict:
    canonical = json.dumps(config, sort_keys=True, default=str)
    inputs = {}
    for path in input_paths:
        p = Path(path)
        inputs[p.name] = sha256_hex(p.read_bytes())
    return {
        "tool_version": TOOL_VERSION,
        "config_hash": sha256_hex(canonical.encode()),
        "input_hashes": inputs,
    }


def write_json(path: Union[str, Path], payload: dict, manifest: dict) -> None:
    body = dict(payload)
    body["manifest"] = manifest
    Path(path).write_text(json.dumps(body, indent=1, sort_keys=True) + "\n")


def csv_text(header: Sequence[str], rows: Iterable[Sequence],
             manifest: Optional[dict] = None) -> str:
    buf = io.StringIO()
    if manifest is not None:
        buf.write(f"# tool_version: {manifest['tool_version']}\n")
        buf.write(f"# config_hash: {manifest['config_hash']}\n")
        for name, digest in sorted(manifest["input_hashes"].items()):
            buf.write(f"# input {name}: {digest}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def write_csv(path: Union[str, Path], header: Sequence[str],
              rows: Iterable[Sequence], manifest: Optional[dict] = None) -> None:
    Path(path).write_text(csv_text(header, rows, manifest))


def guessing_curve_rows(points) -> tuple[list[str], list[list]]:
    """CSV rows for (w, pg) curves: rationals both as p/q and decimal."""
    header = ["w", "pg", "hmin", "w_decimal", "pg_decimal"]
    rows = []
    for w, pg in points:
        rows.append([frac_str(w), frac_str(pg), repr(-math.log2(pg) or 0.0),
                     repr(float(w)), repr(float(pg))])
    return header, rows
