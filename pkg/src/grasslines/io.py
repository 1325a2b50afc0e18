"""JSON helpers with exact rationals written as strings."""

import json
from pathlib import Path

from .core.matrix import RatMatrix
from .core.rational import format_rational, to_rational

__all__ = ["dumps", "write_json", "read_json", "matrix_to_json", "matrix_from_json", "vector_to_json"]


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(obj, path=None):
    text = dumps(obj)
    if path is None:
        return text
    Path(path).write_text(text, encoding="utf-8")
    return text


def read_json(path):
    return json.loads(Path(path).read_text(encoding="utf-8"))


def matrix_to_json(m):
    return [[format_rational(x) for x in r] for r in m.rows]


def matrix_from_json(obj):
    return RatMatrix([[to_rational(x) for x in r] for r in obj])


def vector_to_json(v):
    return [format_rational(x) for x in v]
