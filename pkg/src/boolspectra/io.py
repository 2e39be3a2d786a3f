"""Text formats for functions, spectra, supports and shipped fixtures.

Bit order is the global one: truth-table index i = sum x_j 2^(n-j), so x1
is the most significant bit.  Hex truth tables list the table MSB-first,
four entries per digit: "8" is the table (1, 0, 0, 0) on F2^2.
Spectrum CSVs carry a header "omega,value" and decimal omega indices.
"""

from __future__ import annotations

import csv
import io as _io
import json
import warnings
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .core import MAX_N, BooleanFunction, WalshSpectrum
from .errors import BadDigit, BadLength, BadRow, ParsevalWarning
from .support import DualFunction, OrderedSupport

HEX_DIGITS = set("0123456789abcdefABCDEF")


# -- truth tables -------------------------------------------------------------


def parse_truth_table_hex(text: str) -> BooleanFunction:
    t = "".join(text.split())
    if t[:2] in ("0x", "0X"):
        t = t[2:]
    if not t:
        raise BadLength("empty truth table")
    bad = next((c for c in t if c not in HEX_DIGITS), None)
    if bad is not None:
        raise BadDigit(f"invalid hex digit {bad!r}")
    size = 4 * len(t)
    if size & (size - 1):
        raise BadLength(f"{len(t)} hex digits is not 2^n/4 for any n >= 2")
    n = size.bit_length() - 1
    if n > MAX_N:
        raise BadLength(f"n={n} exceeds the cap {MAX_N}")
    nibbles = np.frombuffer(t.lower().encode(), dtype=np.uint8)
    vals = np.where(nibbles >= ord("a"), nibbles - ord("a") + 10, nibbles - ord("0")).astype(np.uint8)
    bits = np.unpackbits(vals[:, None], axis=1)[:, 4:].reshape(-1)
    return BooleanFunction(n, bits)


def emit_truth_table_hex(f: BooleanFunction) -> str:
    if f.n < 2:
        raise BadLength("hex tables need n >= 2")
    quads = f.table.reshape(-1, 4).astype(np.uint8)
    vals = (quads[:, 0] << 3) | (quads[:, 1] << 2) | (quads[:, 2] << 1) | quads[:, 3]
    return "".join("0123456789abcdef"[v] for v in vals.tolist())


def function_to_json(f: BooleanFunction) -> dict:
    if f.n >= 2:
        return {"n": f.n, "hex": emit_truth_table_hex(f)}
    return {"n": f.n, "bits": "".join(map(str, f.table.tolist()))}


def function_from_json(obj: dict) -> BooleanFunction:
    if "hex" in obj:
        f = parse_truth_table_hex(obj["hex"])
    elif "bits" in obj:
        bits = obj["bits"]
        if not isinstance(bits, str):
            bits = "".join(str(c) for c in bits)
        if any(c not in "01" for c in bits):
            raise BadDigit("bits must be 0/1")
        size = len(bits)
        if size == 0 or size & (size - 1):
            raise BadLength(f"{size} bits is not a power of two")
        f = BooleanFunction(size.bit_length() - 1, [int(c) for c in bits])
    elif "anf" in obj:
        from .expr import parse_expression

        f = parse_expression(obj["anf"], int(obj["n"]))
    else:
        raise BadRow("function needs one of 'hex', 'bits', 'anf'")
    if "n" in obj and int(obj["n"]) != f.n:
        raise BadLength(f"declared n={obj['n']} but table has n={f.n}")
    return f


# -- spectra ------------------------------------------------------------------


def emit_spectrum_csv(W: WalshSpectrum) -> str:
    out = _io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["omega", "value"])
    for i, v in enumerate(W.values.tolist()):
        w.writerow([i, v])
    return out.getvalue()


def parse_spectrum_csv(text: str) -> WalshSpectrum:
    rows = list(csv.reader(_io.StringIO(text)))
    rows = [r for r in rows if r and any(c.strip() for c in r)]
    if not rows or [c.strip() for c in rows[0]] != ["omega", "value"]:
        raise BadRow("missing header 'omega,value'")
    body = rows[1:]
    size = len(body)
    if size == 0 or size & (size - 1):
        raise BadLength(f"{size} rows is not a power of two")
    vals = np.zeros(size, dtype=np.int64)
    seen = np.zeros(size, dtype=bool)
    for lineno, r in enumerate(body, start=2):
        if len(r) != 2:
            raise BadRow(f"line {lineno}: expected 2 fields")
        try:
            i, v = int(r[0]), int(r[1])
        except ValueError:
            raise BadRow(f"line {lineno}: non-integer field {r!r}") from None
        if not 0 <= i < size or seen[i]:
            raise BadRow(f"line {lineno}: omega {i} out of range or repeated")
        vals[i], seen[i] = v, True
    W = WalshSpectrum(size.bit_length() - 1, vals)
    if not W.parseval_ok():
        warnings.warn("spectrum violates Parseval", ParsevalWarning, stacklevel=2)
    return W


def spectrum_to_json(W: WalshSpectrum) -> list[int]:
    return W.values.tolist()


def spectrum_from_json(values: list[int]) -> WalshSpectrum:
    size = len(values)
    if size == 0 or size & (size - 1):
        raise BadLength(f"{size} values is not a power of two")
    if any(not isinstance(v, int) or isinstance(v, bool) for v in values):
        raise BadRow("spectrum values must be integers")
    return WalshSpectrum(size.bit_length() - 1, np.array(values, dtype=np.int64))


# -- supports and duals ---------------------------------------------------------


def emit_support_json(s: OrderedSupport) -> str:
    return json.dumps(s.to_json())


def parse_support_json(text: str) -> OrderedSupport:
    return OrderedSupport.from_json(json.loads(text))


def emit_dual_json(d: DualFunction) -> str:
    return json.dumps(d.to_json())


def parse_dual_json(text: str) -> DualFunction:
    return DualFunction.from_json(json.loads(text))


# -- fixtures -----------------------------------------------------------------

KINDS = {
    ".tt.hex": "truth-table",
    ".hex": "truth-table",
    ".spec.csv": "spectrum",
    ".support.json": "support",
    ".recipe.json": "recipe",
}


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str
    payload: object
    origin: str = ""


def fixtures_dir() -> Path:
    return Path(str(resources.files("boolspectra") / "fixtures"))


def _kind_of(name: str) -> str:
    for ext in sorted(KINDS, key=len, reverse=True):
        if name.endswith(ext):
            return KINDS[ext]
    raise BadRow(f"unknown fixture extension: {name}")


def parse_payload(kind: str, text: str):
    if kind == "truth-table":
        return parse_truth_table_hex(text)
    if kind == "spectrum":
        return parse_spectrum_csv(text)
    if kind == "support":
        return parse_support_json(text)
    return json.loads(text)


def load_path(path: str | Path):
    path = Path(path)
    return parse_payload(_kind_of(path.name), path.read_text())


def load_fixture(name: str) -> Fixture:
    index = json.loads((fixtures_dir() / "index.json").read_text())
    text = (fixtures_dir() / name).read_text()
    kind = _kind_of(name)
    return Fixture(name, kind, parse_payload(kind, text), index.get(name, ""))


def list_fixtures() -> dict[str, str]:
    return json.loads((fixtures_dir() / "index.json").read_text())
