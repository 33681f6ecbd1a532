"""JSON jobs, result serialization, OFF export and the seeded loop generator.

Job documents are JSON objects with a ``command`` and the payload that
command needs::

    {"command": "check",   "lengths": [3, 4, 5, 6]}
    {"command": "realize", "lengths": [3, 4, 5, 6], "angles": [1.5708],
     "unit": "normal", "orientation": "positive", "format": "json"}
    {"command": "normals", "loop": [[1, 1], [-1, 0], [0, -1]]}
    {"command": "invert",  "loop": [[1, 1], [-2, 1], [1, -2]]}
    {"command": "iterate", "loop": [[1, 1], [-1, 0], [0, -1]]}
    {"command": "random",  "dimension": 3, "seed": 42}

``dimension`` is optional wherever a payload fixes it.  Floats are written
with 17 significant digits so every value round-trips bit for bit.
"""
import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (InfeasibleInput, ParseError, SimplexError, UnsupportedDimension,
                     ValidationError)
from .loops import Role, classify, complete_from_main, facet_normals, make_loop, similarity_iterate
from .minkowski import invert_facet_map, realize_simplex
from .realization import ORIENTATIONS, UNITS, VolumeSpec, check_inequalities

COMMANDS = ("check", "realize", "normals", "invert", "iterate", "random")
FORMATS = ("json", "off")

_ALLOWED = {
    "check": {"lengths", "dimension", "unit"},
    "realize": {"lengths", "dimension", "angles", "unit", "orientation", "format"},
    "normals": {"loop", "dimension"},
    "invert": {"loop", "dimension"},
    "iterate": {"loop", "dimension"},
    "random": {"dimension", "seed"},
}
_REQUIRED = {
    "check": {"lengths"},
    "realize": {"lengths"},
    "normals": {"loop"},
    "invert": {"loop"},
    "iterate": {"loop"},
    "random": {"dimension"},
}

MIN_RANDOM_DET = 1e-3
EXIT_OK, EXIT_ERROR, EXIT_INFEASIBLE = 0, 1, 2


@dataclass(frozen=True)
class JobSpec:
    command: str
    dimension: int
    lengths: tuple = None
    loop: tuple = None
    angles: tuple = None
    unit: str = "normal"
    orientation: str = "positive"
    seed: int = None
    output_format: str = "json"


@dataclass
class JobResult:
    status: str
    command: str
    payload: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)
    message: str = None
    realization: object = field(default=None, repr=False, compare=False)

    @property
    def exit_code(self):
        return {"ok": EXIT_OK, "infeasible": EXIT_INFEASIBLE}.get(self.status, EXIT_ERROR)


def _number(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{where}: expected a number, got {value!r}")
    x = float(value)
    if not math.isfinite(x):
        raise ValidationError(f"{where}: non-finite value")
    return x


def _number_list(value, where):
    if not isinstance(value, list):
        raise ValidationError(f"{where}: expected a list of numbers")
    return tuple(_number(x, f"{where}[{i}]") for i, x in enumerate(value))


def _integer(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{where}: expected an integer, got {value!r}")
    return value


def _choice(value, options, where):
    if value not in options:
        raise ValidationError(f"{where}: expected one of {options}, got {value!r}")
    return value


def job_from_dict(doc):
    """Validate a decoded job document; see the module docstring for the schema."""
    if not isinstance(doc, dict):
        raise ValidationError("job document must be a JSON object")
    command = _choice(doc.get("command"), COMMANDS, "command")
    allowed = _ALLOWED[command] | {"command"}
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise ValidationError(f"{command}: unexpected field(s) {unknown}")
    missing = sorted(_REQUIRED[command] - set(doc))
    if missing:
        raise ValidationError(f"{command}: missing field(s) {missing}")

    kw = {"command": command}
    inferred = None
    if "lengths" in doc:
        lengths = _number_list(doc["lengths"], "lengths")
        if len(lengths) < 3:
            raise ValidationError(f"lengths: need at least 3 values, got {len(lengths)}")
        for i, x in enumerate(lengths):
            if x <= 0.0:
                raise ValidationError(f"lengths[{i}]: must be positive, got {x!r}")
        kw["lengths"] = lengths
        inferred = len(lengths) - 1
    if "loop" in doc:
        rows = doc["loop"]
        if not isinstance(rows, list) or not rows:
            raise ValidationError("loop: expected a non-empty list of vectors")
        loop = tuple(_number_list(r, f"loop[{i}]") for i, r in enumerate(rows))
        if any(len(r) != len(loop) - 1 for r in loop):
            raise ValidationError("loop: need n+1 vectors of dimension n")
        kw["loop"] = loop
        inferred = len(loop) - 1
    if "dimension" in doc:
        dim = _integer(doc["dimension"], "dimension")
        if inferred is not None and dim != inferred:
            raise ValidationError(f"dimension: {dim} disagrees with payload dimension {inferred}")
        inferred = dim
    if not linalg.MIN_DIM <= inferred <= linalg.MAX_DIM:
        raise ValidationError(
            f"dimension: {inferred} outside [{linalg.MIN_DIM}, {linalg.MAX_DIM}]")
    kw["dimension"] = inferred
    if "angles" in doc:
        angles = _number_list(doc["angles"], "angles")
        if len(angles) != inferred - 2:
            raise ValidationError(f"angles: dimension {inferred} takes {inferred - 2} angles")
        kw["angles"] = angles
    if "unit" in doc:
        kw["unit"] = _choice(doc["unit"], UNITS, "unit")
    if "orientation" in doc:
        kw["orientation"] = _choice(doc["orientation"], ORIENTATIONS, "orientation")
    if "format" in doc:
        kw["output_format"] = _choice(doc["format"], FORMATS, "format")
    if "seed" in doc:
        seed = _integer(doc["seed"], "seed")
        if not 0 <= seed < 2 ** 64:
            raise ValidationError("seed: must fit in an unsigned 64-bit integer")
        kw["seed"] = seed
    return JobSpec(**kw)


def parse_job(text):
    """Parse a UTF-8 JSON job document (``bytes`` or ``str``)."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return job_from_dict(doc)


def job_to_dict(job):
    doc = {"command": job.command, "dimension": job.dimension}
    if job.lengths is not None:
        doc["lengths"] = list(job.lengths)
    if job.loop is not None:
        doc["loop"] = [list(r) for r in job.loop]
    if job.angles is not None:
        doc["angles"] = list(job.angles)
    if job.command in ("check", "realize"):
        doc["unit"] = job.unit
    if job.command == "realize":
        doc["orientation"] = job.orientation
        doc["format"] = job.output_format
    if job.seed is not None:
        doc["seed"] = job.seed
    return doc


def emit_job(job):
    return dumps(job_to_dict(job))


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def _format_float(x):
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite float {x!r}")
    text = format(x, ".17g")
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def _emit(obj, out):
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, list):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(", ")
            _emit(v, out)
        out.append("]")
    elif isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(k))
            out.append(": ")
            _emit(v, out)
        out.append("}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj):
    """JSON text with every float at 17 significant digits."""
    out = []
    _emit(_plain(obj), out)
    return "".join(out)


def result_to_dict(result):
    doc = {"status": result.status, "command": result.command,
           "payload": result.payload, "diagnostics": result.diagnostics}
    if result.message is not None:
        doc["message"] = result.message
    return doc


def result_to_json(result):
    return dumps(result_to_dict(result)) + "\n"


def random_loop(n, seed=0):
    """Seeded positive vertex loop with main-part entries uniform in ``[-1, 1)``.

    The stream is numpy's Philox4x64-10 keyed directly with ``seed``
    (``Philox(key=seed)``, counter starting at zero); each double is
    ``(next_uint64 >> 11) * 2**-53`` mapped to ``2u - 1``.  Entries fill
    ``v_1, ..., v_n`` in order.  Draws with ``|det| < 1e-3`` are rejected and
    a negative determinant is fixed by negating every first coordinate.
    """
    if not linalg.MIN_DIM <= n <= linalg.MAX_DIM:
        raise UnsupportedDimension(f"dimension {n} outside [{linalg.MIN_DIM}, {linalg.MAX_DIM}]")
    gen = np.random.Generator(np.random.Philox(key=seed))
    while True:
        body = 2.0 * gen.random((n, n)) - 1.0
        det = np.linalg.det(body.T)
        if abs(det) >= MIN_RANDOM_DET:
            break
    if det < 0.0:
        body[:, 0] *= -1.0
    return complete_from_main(body, Role.VERTEX)


def _face_indices(points):
    """Faces of a tetrahedron, each wound counter-clockwise seen from outside."""
    faces = []
    for p in range(4):
        i, j, k = [q for q in range(4) if q != p]
        normal = np.cross(points[j] - points[i], points[k] - points[i])
        if normal @ (points[i] - points[p]) < 0.0:
            j, k = k, j
        faces.append((i, j, k))
    return faces


def export_off(result):
    """ASCII OFF mesh of a realized tetrahedron."""
    points = result.vertices.vectors
    if result.vertices.n != 3:
        raise UnsupportedDimension(f"OFF export needs dimension 3, got {result.vertices.n}")
    lines = ["OFF", "4 4 6"]
    lines += [" ".join(_format_float(float(c)) for c in p) for p in points]
    lines += ["3 " + " ".join(str(i) for i in f) for f in _face_indices(points)]
    return ("\n".join(lines) + "\n").encode("ascii")


def read_off(data):
    """Parse an OFF mesh back into ``(vertices, faces)`` arrays."""
    tokens = [line.split("#")[0].split() for line in data.decode("ascii").splitlines()]
    tokens = [t for t in tokens if t]
    if tokens[0] != ["OFF"]:
        raise ParseError("missing OFF header")
    nv, nf, _ = (int(x) for x in tokens[1])
    verts = np.array([[float(x) for x in t] for t in tokens[2:2 + nv]])
    faces = []
    for t in tokens[2 + nv:2 + nv + nf]:
        k = int(t[0])
        faces.append([int(x) for x in t[1:1 + k]])
    return verts, np.array(faces)


def _loop_payload(loop, name):
    cls = classify(loop)
    return {name: loop.tolist(), "det_main": cls.det_main,
            "affine_independent": cls.affine_independent, "positive": cls.positive}


def _run(job):
    if job.command == "check":
        report = check_inequalities(job.lengths)
        status = "ok" if report.feasible else "infeasible"
        payload = {"feasible": report.feasible, "margin": report.margin,
                   "violating_index": report.violating_index}
        return JobResult(status, job.command, payload, {"margin": report.margin})

    if job.command == "realize":
        spec = VolumeSpec(job.lengths, job.angles, job.unit, job.orientation)
        res = realize_simplex(spec)
        payload = {"vertices": res.vertices.tolist(), "facet_loop": res.facet_loop.tolist(),
                   "facet_lengths": list(res.facet_lengths), "det_vertex": res.det_vertex,
                   "unit": spec.unit}
        diagnostics = {"margin": check_inequalities(spec.lengths).margin,
                       "det_vertex": res.det_vertex, "length_error": res.length_error,
                       "closure_defect": res.closure_defect,
                       "round_trip_error": res.round_trip_error}
        return JobResult("ok", job.command, payload, diagnostics, realization=res)

    if job.command in ("normals", "invert", "iterate"):
        loop = make_loop(job.loop, Role.FACET if job.command == "invert" else Role.VERTEX)
        if job.command == "normals":
            z = facet_normals(loop)
            payload = _loop_payload(z, "facet_loop")
            return JobResult("ok", job.command, payload, {"closure_defect": z.closure_defect()})
        if job.command == "invert":
            v = invert_facet_map(loop)
            err = linalg.relative_error(facet_normals(v).vectors, loop.vectors)
            payload = _loop_payload(v, "vertices")
            return JobResult("ok", job.command, payload, {"round_trip_error": err})
        similar, report = similarity_iterate(loop)
        payload = {"vertices": similar.tolist(), "kappa": report.kappa,
                   "residual": report.residual}
        return JobResult("ok", job.command, payload,
                         {"det_main": classify(loop).det_main, "residual": report.residual})

    loop = random_loop(job.dimension, 0 if job.seed is None else job.seed)
    payload = _loop_payload(loop, "vertices")
    payload["seed"] = 0 if job.seed is None else job.seed
    return JobResult("ok", job.command, payload, {})


def run_job(job, timing=False):
    """Dispatch a job.  Library errors become ``infeasible``/``error`` results.

    Wall-clock timing is added to diagnostics only when ``timing`` is set, so
    default output is reproducible byte for byte.
    """
    start = time.perf_counter()
    try:
        result = _run(job)
    except InfeasibleInput as exc:
        result = JobResult("infeasible", job.command, {}, {}, str(exc))
    except SimplexError as exc:
        result = JobResult("error", job.command, {}, {}, f"{type(exc).__name__}: {exc}")
    if timing:
        result.diagnostics["seconds"] = time.perf_counter() - start
    return result
