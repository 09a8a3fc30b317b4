"""Shared plumbing for experiment scripts: dataclass configs from the command line."""
from __future__ import annotations

import argparse
import dataclasses
import json
from pathlib import Path

RESULTS = Path(__file__).resolve().parent.parent / "results"


def parse_config(cls, description: str):
    """Build an argparse parser from a dataclass's fields (scalars and int tuples)."""
    ap = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        default = f.default if f.default is not dataclasses.MISSING else f.default_factory()
        flag = "--" + f.name.replace("_", "-")
        if isinstance(default, tuple):
            ap.add_argument(flag, type=lambda s: tuple(int(x) for x in s.split(",")), default=default)
        elif isinstance(default, bool):
            ap.add_argument(flag, action=argparse.BooleanOptionalAction, default=default)
        else:
            ap.add_argument(flag, type=type(default), default=default)
    return cls(**vars(ap.parse_args()))


def save(name: str, cfg, rows: list[dict]) -> Path:
    RESULTS.mkdir(exist_ok=True)
    path = RESULTS / f"{name}.json"
    path.write_text(json.dumps({"config": dataclasses.asdict(cfg), "rows": rows}, indent=1, default=str) + "\n")
    return path
