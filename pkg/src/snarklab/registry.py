"""Persisted construction registry.

The builders in :mod:`snarklab.constructions` depend on one searched-for
wiring (how each growth step's six new vertices are joined) and one stub
split (which two boundary stubs form J's marked edge).  Both are frozen
here together with content digests of the finished constructions, so a
code change that silently alters a construction is caught at load time
instead of producing subtly different graphs.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, NamedTuple

REGISTRY_ENV = "SNARK_REGISTRY"
REGISTRY_VERSION = 1

_DEFAULT_PATH = Path(__file__).resolve().parent / "data" / "wirings.json"


class RegistryError(RuntimeError):
    """Missing, malformed, or stale registry file."""


class Registry(NamedTuple):
    version: int
    wiring: dict[str, Any]
    j_split: tuple[str, str]
    digests: dict[str, str]


def registry_path() -> Path:
    override = os.environ.get(REGISTRY_ENV)
    return Path(override) if override else _DEFAULT_PATH


def load_registry(path: Path | None = None) -> Registry:
    p = path or registry_path()
    try:
        obj = json.loads(p.read_text())
    except FileNotFoundError:
        raise RegistryError(
            f"no wiring registry at {p}; run `snarklab registry derive` first"
        ) from None
    except (OSError, json.JSONDecodeError) as exc:
        raise RegistryError(f"unreadable wiring registry {p}: {exc}") from exc
    try:
        version = int(obj["version"])
        wiring = dict(obj["wiring"])
        j_split = tuple(obj["j_split"])
        digests = {str(k): str(v) for k, v in obj["digests"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise RegistryError(f"malformed wiring registry {p}: {exc}") from exc
    if not 1 <= version <= REGISTRY_VERSION:
        raise RegistryError(
            f"registry version {version} not supported (expected 1..{REGISTRY_VERSION})"
        )
    if len(j_split) != 2:
        raise RegistryError("registry j_split must name exactly two stubs")
    return Registry(version, wiring, j_split, digests)  # type: ignore[arg-type]


def save_registry(reg: Registry, path: Path | None = None) -> Path:
    p = path or registry_path()
    p.parent.mkdir(parents=True, exist_ok=True)
    obj = {
        "version": reg.version,
        "wiring": reg.wiring,
        "j_split": list(reg.j_split),
        "digests": dict(sorted(reg.digests.items())),
    }
    p.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    return p
