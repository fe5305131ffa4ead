"""Black-box model adapters.

A model can be bound either in-process (a registered surrogate callable)
or as an external command that reads a flat key=value parameter file and
writes a flat key=value result file.  Float values are serialized with
repr, which round-trips exactly (shortest decimal, up to 17 significant
digits).

The built-in "toy-crash" surrogate stands in for an impact FEA model: a
planar impactor of mass ``m_impactor`` and speed ``v_impactor`` hits a
tube whose absorbed internal energy is the kinetic energy scaled by a
smooth absorption ratio in [0.6, 1.0].  The ratio decreases with
dimensional-scale and attack-angle perturbations, increases with tube
thickness up to the nominal value, and is exactly 1 at the nominal input
(so nominal energy is 0.5*m*v^2).  It is NOT a physics model; it only
exercises the mixed random/interval input schema at zero cost.
"""

from __future__ import annotations

import subprocess
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, Sequence

import numpy as np

from ..errors import AdapterFailure, SchemaMismatch

__all__ = [
    "ModelAdapter",
    "ExternalAdapter",
    "run_external_model",
    "crash_energy",
    "get_adapter",
    "register_adapter",
    "write_kv",
    "read_kv",
]


@dataclass(frozen=True)
class ModelAdapter:
    """In-process surrogate with a declared input/output schema."""

    name: str
    input_names: tuple
    output_names: tuple
    fn: Callable[[Dict[str, float]], Dict[str, float]]


@dataclass(frozen=True)
class ExternalAdapter:
    """External command adapter.

    ``command`` is an argv list; occurrences of the placeholders
    "{params}" and "{results}" are replaced by the parameter and result
    file paths.
    """

    name: str
    input_names: tuple
    output_names: tuple
    command: tuple

    def __post_init__(self):
        joined = " ".join(self.command)
        if "{params}" not in joined or "{results}" not in joined:
            raise ValueError("command must reference {params} and {results}")


def write_kv(path: Path, values: Dict[str, float]) -> None:
    lines = [f"{k}={repr(float(v))}" for k, v in values.items()]
    Path(path).write_text("\n".join(lines) + "\n")


def read_kv(path: Path) -> Dict[str, float]:
    out = {}
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise SchemaMismatch(f"malformed line {line!r}")
        key, val = line.split("=", 1)
        out[key.strip()] = float(val)
    return out


def run_external_model(adapter, inputs: Dict[str, float]) -> Dict[str, float]:
    """Invoke an adapter on one parameter row and parse declared outputs."""
    missing = [k for k in adapter.input_names if k not in inputs]
    if missing:
        raise SchemaMismatch(f"missing inputs {missing}")
    row = {k: float(inputs[k]) for k in adapter.input_names}
    if isinstance(adapter, ModelAdapter):
        result = adapter.fn(row)
    else:
        with tempfile.TemporaryDirectory(prefix="pbdem-adapter-") as tmp:
            pfile = Path(tmp) / "params.txt"
            rfile = Path(tmp) / "results.txt"
            write_kv(pfile, row)
            argv = [a.replace("{params}", str(pfile))
                     .replace("{results}", str(rfile))
                    for a in adapter.command]
            proc = subprocess.run(argv, capture_output=True, text=True)
            if proc.returncode != 0:
                raise AdapterFailure(
                    f"command exited {proc.returncode}: {proc.stderr[-500:]}")
            if not rfile.exists():
                raise AdapterFailure("command produced no result file")
            result = read_kv(rfile)
    absent = [k for k in adapter.output_names if k not in result]
    if absent:
        raise SchemaMismatch(f"missing outputs {absent}")
    return {k: float(result[k]) for k in adapter.output_names}


# ---------------------------------------------------------------------------
# toy crash surrogate
# ---------------------------------------------------------------------------

_CS = 200.0    # dimensional-scale sensitivity
_CA = 1.5      # attack-angle sensitivity (angles in degrees)
_CT = 100.0    # thickness sensitivity below nominal


def crash_energy(scale_x, scale_y, thickness, angle_x, angle_y,
                 m_impactor, v_impactor):
    """Absorbed internal energy of the toy crash surrogate (vectorized).

    E = 0.5 * m * v^2 * r with r = 0.6 + 0.4 * exp(-d);  d penalizes
    scale/angle deviation quadratically and thickness deficit below the
    nominal thickness (so r saturates at 1 for thick tubes).
    """
    sx = np.asarray(scale_x, dtype=float)
    sy = np.asarray(scale_y, dtype=float)
    th = np.asarray(thickness, dtype=float)
    ax = np.asarray(angle_x, dtype=float)
    ay = np.asarray(angle_y, dtype=float)
    d = (_CS * ((sx - 1.0) ** 2 + (sy - 1.0) ** 2)
         + _CA * (ax * ax + ay * ay)
         + _CT * np.maximum(0.0, 1.0 - th) ** 2)
    ratio = 0.6 + 0.4 * np.exp(-d)
    return 0.5 * np.asarray(m_impactor, dtype=float) \
        * np.asarray(v_impactor, dtype=float) ** 2 * ratio


CRASH_INPUTS = ("scale_x", "scale_y", "thickness", "angle_x", "angle_y",
                "m_impactor", "v_impactor")


def _crash_fn(row: Dict[str, float]) -> Dict[str, float]:
    e = crash_energy(row["scale_x"], row["scale_y"], row["thickness"],
                     row["angle_x"], row["angle_y"], row["m_impactor"],
                     row["v_impactor"])
    return {"internal_energy": float(e)}


_REGISTRY: Dict[str, ModelAdapter] = {}


def register_adapter(adapter: ModelAdapter) -> None:
    _REGISTRY[adapter.name] = adapter


def get_adapter(name: str) -> ModelAdapter:
    if name not in _REGISTRY:
        raise SchemaMismatch(f"no registered adapter {name!r}")
    return _REGISTRY[name]


register_adapter(ModelAdapter(
    name="toy-crash",
    input_names=CRASH_INPUTS,
    output_names=("internal_energy",),
    fn=_crash_fn,
))
