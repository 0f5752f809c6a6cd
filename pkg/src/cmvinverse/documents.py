"""JSON instance documents.

Complex numbers are ``[re, im]`` pairs.  Unit-circle points are either
``{"angle": radians}`` or ``[re, im]`` pairs of modulus one.

    {"kind": "verblunsky", "n": 3, "alpha": [[0.5, 0], [0, 0.1]], "beta": [1, 0]}
    {"kind": "measure", "points": [{"angle": 0.0}, ...], "masses": [0.5, ...]}
    {"kind": "spectrum", "points": [...]}
    {"kind": "spectrum_pair", "s1": [...], "s2": [...]}
"""

import hashlib
import json

import numpy as np

from .cmv import VerblunskyData, validate
from .errors import RootOffCircle, ValidationError
from .interlace import sort_circular
from .spectral import angle_of, make_measure

KINDS = ("verblunsky", "measure", "spectrum", "spectrum_pair")


class DocumentError(ValidationError):
    pass


def parse_complex(value):
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise DocumentError(f"expected [re, im], got {value!r}")


def dump_complex(z):
    z = complex(z)
    return [float(z.real), float(z.imag)]


def parse_point(value):
    """Angle in ``[0, 2*pi)`` of a serialized unit-circle point."""
    if isinstance(value, dict) and "angle" in value:
        return float(np.mod(float(value["angle"]), 2 * np.pi))
    z = parse_complex(value)
    if abs(abs(z) - 1) > 1e-8:
        raise RootOffCircle(f"point {value!r} is not on the unit circle")
    return float(angle_of(z))


def dump_points(angles):
    return [{"angle": float(a)} for a in np.atleast_1d(angles)]


def dump_data(data):
    return {
        "kind": "verblunsky",
        "n": data.n,
        "alpha": [dump_complex(a) for a in data.alpha],
        "beta": dump_complex(data.beta),
    }


def dump_measure(measure):
    return {
        "kind": "measure",
        "points": dump_points(measure.angles),
        "masses": [float(m) for m in measure.masses],
    }


def parse_document(doc):
    """Validated library objects for a document: ``(kind, payload)``."""
    if not isinstance(doc, dict) or doc.get("kind") not in KINDS:
        raise DocumentError(f"document kind must be one of {KINDS}")
    kind = doc["kind"]
    try:
        if kind == "verblunsky":
            alpha = [parse_complex(a) for a in doc.get("alpha", [])]
            data = VerblunskyData(alpha, parse_complex(doc["beta"]), doc.get("n"))
            validate(data)
            return kind, data
        if kind == "measure":
            angles = [parse_point(p) for p in doc["points"]]
            return kind, make_measure(angles, [float(m) for m in doc["masses"]])
        if kind == "spectrum":
            return kind, sort_circular([parse_point(p) for p in doc["points"]])
        s1 = np.array([parse_point(p) for p in doc["s1"]])
        s2 = np.array([parse_point(p) for p in doc["s2"]])
        return kind, (s1, s2)
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"malformed {kind} document: {exc!r}") from exc


def load_document(path):
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return doc


def digest(doc):
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()
