"""Versioned JSON persistence for block assemblies.

The on-disk document is strict: exactly the fields below, unknown fields
rejected, so that a saved design re-loads bit-for-bit reproducibly.

    {
      "version": 1,
      "k0": <float, rad/um>,
      "blocks": [{"alpha": <float>, "n": <int>, "d": <float um>,
                  "conjugated": <bool>}, ...],
      "metadata": <string>
    }
"""

from __future__ import annotations

import json
from pathlib import Path

from .blocks import Block, PotentialSpec

__all__ = ["SPEC_VERSION", "spec_to_dict", "spec_from_dict", "save_spec", "load_spec"]

SPEC_VERSION = 1

_BLOCK_FIELDS = {"alpha", "n", "d", "conjugated"}
_TOP_FIELDS = {"version", "k0", "blocks", "metadata"}


class SpecFormatError(ValueError):
    pass


def spec_to_dict(spec: PotentialSpec) -> dict:
    return {
        "version": SPEC_VERSION,
        "k0": spec.k0,
        "blocks": [
            {"alpha": b.alpha, "n": int(b.n), "d": b.d, "conjugated": b.conjugated}
            for b in spec.blocks
        ],
        "metadata": spec.metadata,
    }


def spec_from_dict(doc: dict) -> PotentialSpec:
    if not isinstance(doc, dict):
        raise SpecFormatError("spec document must be a JSON object")
    extra = set(doc) - _TOP_FIELDS
    if extra:
        raise SpecFormatError(f"unknown fields in spec document: {sorted(extra)}")
    missing = _TOP_FIELDS - set(doc)
    if missing:
        raise SpecFormatError(f"missing fields in spec document: {sorted(missing)}")
    if doc["version"] != SPEC_VERSION:
        raise SpecFormatError(f"unsupported spec version {doc['version']!r}")
    if not isinstance(doc["metadata"], str):
        raise SpecFormatError("metadata must be a string")
    k0 = float(doc["k0"])
    blocks = []
    for i, entry in enumerate(doc["blocks"]):
        if not isinstance(entry, dict):
            raise SpecFormatError(f"block {i} must be an object")
        extra = set(entry) - _BLOCK_FIELDS
        if extra:
            raise SpecFormatError(f"unknown fields in block {i}: {sorted(extra)}")
        missing = _BLOCK_FIELDS - set(entry)
        if missing:
            raise SpecFormatError(f"missing fields in block {i}: {sorted(missing)}")
        if not isinstance(entry["n"], int) or isinstance(entry["n"], bool):
            raise SpecFormatError(f"block {i}: n must be an integer")
        if not isinstance(entry["conjugated"], bool):
            raise SpecFormatError(f"block {i}: conjugated must be a boolean")
        blocks.append(
            Block(
                alpha=float(entry["alpha"]),
                n=entry["n"],
                k0=k0,
                d=float(entry["d"]),
                conjugated=entry["conjugated"],
            )
        )
    return PotentialSpec(k0=k0, blocks=tuple(blocks), metadata=doc["metadata"])


def save_spec(spec: PotentialSpec, path: str | Path) -> None:
    Path(path).write_text(json.dumps(spec_to_dict(spec), indent=2) + "\n")


def load_spec(path: str | Path) -> PotentialSpec:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise OSError(f"cannot read spec: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"cannot parse spec: {exc}") from exc
    return spec_from_dict(doc)
