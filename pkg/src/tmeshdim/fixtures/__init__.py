"""Named meshes shipped with the package, addressable as ``builtin:NAME``."""

from __future__ import annotations

import json
from importlib import resources
from typing import Any

from ..mesh.components import GeneralizedTComponent
from ..mesh.model import TMesh, parse_mesh


def names() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files(__name__).iterdir() if p.name.endswith(".json"))


def load_document(name: str) -> dict[str, Any]:
    path = resources.files(__name__) / f"{name}.json"
    if not path.is_file():
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(names())}")
    return json.loads(path.read_text())


def load_mesh(name: str) -> TMesh:
    return parse_mesh(load_document(name))


def load_gt(name: str) -> GeneralizedTComponent:
    return GeneralizedTComponent.from_json(load_document(name))
