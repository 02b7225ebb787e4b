"""TOML experiment configs.

A config holds a ``[graph]`` table, an optional ``[geometry]`` table and an
optional ``[options]`` table::

    [graph]
    vertices = ["v"]
    edges = [
      { id = "e1", range = "v", source = "v" },
      { id = "e2", range = "v", source = "v" },
    ]

    [geometry]
    dimension = 1
    spaces.v = { min = [0], max = [1] }
    maps.e1 = { ratio = "1/3", translation = [0] }
    maps.e2 = { ratio = "1/3", translation = ["2/3"] }

    [options]
    seed = 42

Numbers may be given as strings holding exact fractions (``"1/3"``).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from fractions import Fraction

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import GraphError
from .graph import Graph
from .ifs import MWSystem, Similarity


class ConfigError(ValueError):
    pass


@dataclass
class SystemConfig:
    graph: Graph
    system: MWSystem | None = None
    options: dict = field(default_factory=dict)
    source: str = ""


def _num(x, where) -> float:
    try:
        if isinstance(x, str):
            return float(Fraction(x.strip()))
        if isinstance(x, bool):
            raise TypeError
        return float(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ConfigError(f"{where}: expected a number, got {x!r}") from None


def _vec(xs, d, where) -> tuple:
    if not isinstance(xs, list) or len(xs) != d:
        raise ConfigError(f"{where}: expected a list of {d} numbers")
    return tuple(_num(x, where) for x in xs)


def parse_config(data: dict, source: str = "<config>") -> SystemConfig:
    if "graph" not in data:
        raise ConfigError(f"{source}: missing [graph] table")
    gdata = data["graph"]
    try:
        vertices = [str(v) for v in gdata["vertices"]]
        edges = [(str(e["id"]), str(e["range"]), str(e["source"])) for e in gdata.get("edges", [])]
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"{source}: malformed [graph] table ({exc})") from None
    try:
        graph = Graph(vertices, edges)
    except GraphError as exc:
        raise ConfigError(f"{source}: {exc}") from None

    system = None
    if "geometry" in data:
        geo = data["geometry"]
        d = int(geo.get("dimension", 1))
        spaces, maps = {}, {}
        for v, box in geo.get("spaces", {}).items():
            try:
                spaces[str(v)] = (_vec(box["min"], d, f"spaces.{v}.min"), _vec(box["max"], d, f"spaces.{v}.max"))
            except KeyError as exc:
                raise ConfigError(f"{source}: spaces.{v} lacks {exc}") from None
        for e, m in geo.get("maps", {}).items():
            if "ratio" not in m:
                raise ConfigError(f"{source}: maps.{e} lacks 'ratio'")
            maps[str(e)] = Similarity(
                ratio=_num(m["ratio"], f"maps.{e}.ratio"),
                angle_degrees=_num(m.get("angle_degrees", 0), f"maps.{e}.angle_degrees"),
                reflect=bool(m.get("reflect", False)),
                translation=_vec(m.get("translation", [0] * d), d, f"maps.{e}.translation"),
            )
        system = MWSystem(graph, d, spaces, maps)
    return SystemConfig(graph, system, dict(data.get("options", {})), source)


def load_config(path) -> SystemConfig:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: parse error: {exc}") from None
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    return parse_config(data, str(path))


def loads_config(text: str) -> SystemConfig:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"parse error: {exc}") from None
    return parse_config(data)
