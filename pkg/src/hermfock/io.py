"""JSON and CSV serialization with 17-significant-digit floats.

Complex numbers are written as ``{"re": ..., "im": ...}`` and multi-indices
as integer arrays. Output is deterministic: identical inputs give
byte-identical files.
"""

import csv
import io as _io
import json
import math

import numpy as np

from .hermite import HermiteExpansion
from .multiindex import multi_indices
from .specs import CoefficientRule, Gaussian, HermiteCombo, Sampled


def fmt(x):
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _plain(obj):
    if isinstance(obj, (bool, np.bool_)) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_plain(v) for v in (obj.tolist() if isinstance(obj, np.ndarray) else obj)]
    if hasattr(obj, "to_dict"):
        return _plain(obj.to_dict())
    if hasattr(obj, "__dict__"):
        return _plain(vars(obj))
    return str(obj)


def _emit(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_emit(v, indent, level + 1) for v in obj) + "]"
        inner = (",\n").join(pad + _emit(v, indent, level + 1) for v in obj)
        return "[\n" + inner + "\n" + end + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        inner = (",\n").join(
            pad + json.dumps(k, ensure_ascii=False) + ": " + _emit(v, indent, level + 1)
            for k, v in obj.items()
        )
        return "{\n" + inner + "\n" + end + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent=2):
    """JSON text with every float written with 17 significant digits."""
    return _emit(_plain(obj), indent, 0) + "\n"


def write_text(path, text):
    if path in (None, "-"):
        import sys

        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def read_json(path_or_text):
    """Parse inline JSON (text starting with ``{``) or a JSON file."""
    s = path_or_text.strip()
    if s.startswith("{") or s.startswith("["):
        return json.loads(s)
    with open(path_or_text, encoding="utf-8") as fh:
        return json.load(fh)


# --- complex values ------------------------------------------------------------------


def parse_complex(v, field="value"):
    if isinstance(v, dict):
        if "re" not in v:
            raise ValueError(f"{field}: complex object needs 're'")
        return complex(float(v["re"]), float(v.get("im", 0.0)))
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, str):
        return complex(v.replace(" ", ""))
    raise ValueError(f"{field}: cannot read {v!r} as a complex number")


def _complex_array(v, field):
    if isinstance(v, dict) and isinstance(v.get("re"), list):
        re = np.asarray(v["re"], float)
        im = np.asarray(v.get("im", np.zeros_like(re)), float)
        return re + 1j * im
    arr = np.asarray(v, dtype=object)
    return np.vectorize(lambda t: parse_complex(t, field), otypes=[complex])(arr)


# --- expansions ------------------------------------------------------------------------


def expansion_to_dict(e):
    ordered = [a for a in multi_indices(e.dim, e.cutoff) if a in e.coeffs]
    out = {
        "dim": e.dim,
        "cutoff": e.cutoff,
        "coeffs": [
            {"alpha": list(a), "re": e.coeffs[a].real, "im": e.coeffs[a].imag} for a in ordered
        ],
    }
    if e.noise_floor:
        out["noise_floor"] = e.noise_floor
    if e.warnings:
        out["warnings"] = list(e.warnings)
    return out


def expansion_from_dict(d):
    for key in ("dim", "cutoff", "coeffs"):
        if key not in d:
            raise ValueError(f"expansion: missing field '{key}'")
    coeffs = {}
    for i, entry in enumerate(d["coeffs"]):
        if "alpha" not in entry:
            raise ValueError(f"expansion: coeffs[{i}] is missing 'alpha'")
        a = tuple(int(v) for v in entry["alpha"])
        coeffs[a] = coeffs.get(a, 0) + complex(float(entry.get("re", 0.0)), float(entry.get("im", 0.0)))
    return HermiteExpansion(
        int(d["dim"]),
        int(d["cutoff"]),
        coeffs,
        float(d.get("noise_floor", 0.0)),
        tuple(d.get("warnings", ())),
    )


# --- function specs ----------------------------------------------------------------------


def spec_from_dict(d):
    """Build a function spec (or an expansion) from its JSON description.

    ``{"type": "gaussian", "A": [[...]], "L": [...], "C": ...}``
    ``{"type": "hermite_combo", "dim": d, "terms": [{"alpha": [...], "re": .., "im": ..}]}``
    ``{"type": "coefficient_rule", "rule": name, "params": {...}, "dim": d}``
    ``{"type": "sampled", "axes": [[...], ...], "values": nested or {"re": .., "im": ..}}``
    An object with ``coeffs`` and no ``type`` is read as an expansion.
    """
    if not isinstance(d, dict):
        raise ValueError("function spec must be a JSON object")
    kind = d.get("type")
    if kind is None and "coeffs" in d:
        kind = "expansion"
    if kind == "expansion":
        return expansion_from_dict(d)
    if kind == "gaussian":
        if "A" not in d:
            raise ValueError("gaussian: missing field 'A'")
        A = _complex_array(d["A"], "A")
        A = np.atleast_2d(A)
        L = None if d.get("L") is None else np.atleast_1d(_complex_array(d["L"], "L"))
        C = parse_complex(d.get("C", 1.0), "C")
        try:
            return Gaussian(A, L, C)
        except ValueError as exc:
            raise ValueError(f"gaussian: field 'A': {exc}") from exc
    if kind == "hermite_combo":
        if "terms" not in d:
            raise ValueError("hermite_combo: missing field 'terms'")
        terms = []
        for i, t in enumerate(d["terms"]):
            if "alpha" not in t:
                raise ValueError(f"hermite_combo: terms[{i}] is missing 'alpha'")
            terms.append((tuple(t["alpha"]), complex(float(t.get("re", 0.0)), float(t.get("im", 0.0)))))
        dim = int(d.get("dim", len(terms[0][0]) if terms else 1))
        return HermiteCombo(tuple(terms), dim)
    if kind == "coefficient_rule":
        if "rule" not in d:
            raise ValueError("coefficient_rule: missing field 'rule'")
        return CoefficientRule(d["rule"], dict(d.get("params", {})), int(d.get("dim", 1)))
    if kind == "sampled":
        for key in ("axes", "values"):
            if key not in d:
                raise ValueError(f"sampled: missing field '{key}'")
        return Sampled(tuple(d["axes"]), _complex_array(d["values"], "values"))
    raise ValueError(f"unknown function spec type {kind!r} (field 'type')")


def spec_to_dict(f):
    if isinstance(f, HermiteExpansion):
        return expansion_to_dict(f)
    if isinstance(f, Gaussian):
        return {"type": "gaussian", "A": f.A.tolist(), "L": f.L.tolist(), "C": f.C}
    if isinstance(f, HermiteCombo):
        return {
            "type": "hermite_combo",
            "dim": f.dim,
            "terms": [{"alpha": list(a), "re": c.real, "im": c.imag} for a, c in f.terms],
        }
    if isinstance(f, CoefficientRule):
        return {"type": "coefficient_rule", "rule": f.rule, "params": f.params, "dim": f.dim}
    if isinstance(f, Sampled):
        return {
            "type": "sampled",
            "axes": [a.tolist() for a in f.axes],
            "values": {"re": f.values.real.tolist(), "im": f.values.imag.tolist()},
        }
    raise TypeError(f"not a function spec: {type(f).__name__}")


# --- CSV -------------------------------------------------------------------------------------


def csv_text(header, rows):
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()
