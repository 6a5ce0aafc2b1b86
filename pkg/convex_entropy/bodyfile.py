import json
import logging
import os
from dataclasses import dataclass
from typing import Optional

from .body import Body, TrigSeries, Vector2, disk, ellipse, from_trig
from .errors import BodyFileError
from .grid import DEFAULT_GRID_N

logger = logging.getLogger(__name__)

REPR_TYPES = ("trig", "samples", "disk", "ellipse")


@dataclass
class BodyDefinition:
    name: str
    repr: dict
    grid_n: int = DEFAULT_GRID_N


class BodyFileParser:
    @staticmethod
    def read_definition(filepath: str) -> BodyDefinition:
        """Read a UTF-8 JSON body-definition file."""
        try:
            with open(filepath, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
            raise BodyFileError(f"cannot read body file {filepath}: {e}") from e
        logger.debug("Loaded body definition from %s", filepath)
        return BodyFileParser.parse_definition(data, source=filepath)

    @staticmethod
    def parse_definition(data, source: str = "<body>") -> BodyDefinition:
        if not isinstance(data, dict):
            raise BodyFileError(f"{source}: top level must be a JSON object")
        rep = data.get("repr")
        if not isinstance(rep, dict) or rep.get("type") not in REPR_TYPES:
            raise BodyFileError(
                f"{source}: 'repr' must be an object with type in {', '.join(REPR_TYPES)}"
            )
        name = data.get("name") or os.path.splitext(os.path.basename(source))[0]
        grid_n = data.get("grid_n", DEFAULT_GRID_N)
        if not isinstance(grid_n, int) or isinstance(grid_n, bool):
            raise BodyFileError(f"{source}: grid_n must be an integer, got {grid_n!r}")
        return BodyDefinition(str(name), rep, grid_n)

    @staticmethod
    def build(definition: BodyDefinition, grid_n: Optional[int] = None) -> Body:
        """Construct the body; ``grid_n`` overrides the file's grid size."""
        rep = definition.repr
        n = grid_n or definition.grid_n
        name = definition.name
        try:
            kind = rep["type"]
            if kind == "trig":
                cos, sin = list(rep.get("cos", [])), list(rep.get("sin", []))
                # a shorter list means trailing zero coefficients
                size = max(len(cos), len(sin))
                cos += [0.0] * (size - len(cos))
                sin += [0.0] * (size - len(sin))
                series = TrigSeries(rep["a0"], cos, sin)
                return from_trig(series, n, name=name)
            if kind == "disk":
                return disk(rep["radius"], _vector(rep.get("center")), n, name=name)
            if kind == "ellipse":
                return ellipse(rep["a"], rep["b"], _vector(rep.get("center")), n, name=name)
            values = rep["values"]
            if len(values) != rep.get("n", len(values)):
                raise BodyFileError(
                    f"{name}: 'n' = {rep['n']} but {len(values)} values were given"
                )
            body = Body.from_samples(values, name=name)
            return body.at(grid_n) if grid_n else body
        except KeyError as e:
            raise BodyFileError(f"{name}: missing field {e} for repr type {rep.get('type')!r}") from e
        except (TypeError, ValueError) as e:
            raise BodyFileError(f"{name}: {e}") from e

    @staticmethod
    def load(filepath: str, grid_n: Optional[int] = None) -> Body:
        return BodyFileParser.build(BodyFileParser.read_definition(filepath), grid_n)


def _vector(raw) -> Vector2:
    if raw is None:
        return Vector2()
    if not isinstance(raw, (list, tuple)) or len(raw) != 2:
        raise BodyFileError(f"center must be a two-element list, got {raw!r}")
    return Vector2(raw[0], raw[1])


def samples_document(body: Body) -> dict:
    """Canonical sampled form of a body, as written by ``make-body``."""
    return {
        "name": body.name,
        "repr": {"type": "samples", "n": body.n, "values": [float(v) for v in body.h.values]},
        "grid_n": body.n,
    }


def write_body(body: Body, filepath: str):
    directory = os.path.dirname(filepath)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(filepath, "w", encoding="utf-8", newline="\n") as f:
        json.dump(samples_document(body), f, indent=2)
        f.write("\n")
