"""File formats: XYZ and coordinate-CSV structures in, diagram JSON and
feature CSV out, plus the two-column dataset manifest.

All numeric text is written with 12 significant digits, which makes
write -> read -> write byte-stable and exceeds the precision of any
distance the pipeline produces from Angstrom-scale inputs.
"""

import csv
import io as _io
import json
from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidInput, ParseError
from .geometry import PointCloud
from .persistence import PersistenceDiagram


def _fmt(x):
    return format(float(x) + 0.0, ".12g")  # +0.0 folds negative zero


def _decode(data):
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not valid UTF-8: {exc}") from None
    return data


def parse_xyz(data):
    """Parse XYZ text: count line, comment line, then `label x y z` rows."""
    text = _decode(data)
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("empty file")
    try:
        count = int(lines[0].strip())
    except ValueError:
        raise ParseError(f"expected an atom count, got {lines[0].strip()!r}", line=1) from None
    if count < 1:
        raise ParseError(f"atom count must be positive, got {count}", line=1)
    if len(lines) - 2 != count:
        raise ParseError(
            f"declared {count} atoms but file has {max(len(lines) - 2, 0)} atom lines",
            line=min(len(lines) + 1, count + 3),
        )
    comment = lines[1]
    labels = []
    points = []
    for ln, raw in enumerate(lines[2:], start=3):
        fields = raw.split()
        if len(fields) != 4:
            raise ParseError(f"expected `label x y z`, got {raw!r}", line=ln)
        labels.append(fields[0])
        try:
            points.append(tuple(float(v) for v in fields[1:4]))
        except ValueError:
            raise ParseError(f"non-numeric coordinate in {raw!r}", line=ln) from None
    return PointCloud(points, labels=labels, comment=comment)


def parse_coords_csv(data):
    """Parse `x,y,z` rows with an optional header row."""
    text = _decode(data)
    rows = [
        (ln, row)
        for ln, row in enumerate(csv.reader(_io.StringIO(text)), start=1)
        if row and any(f.strip() for f in row)
    ]
    if not rows:
        raise ParseError("empty file")

    def parse_row(ln, row):
        if len(row) != 3:
            raise ParseError(f"expected 3 fields, got {len(row)}", line=ln)
        try:
            return tuple(float(f) for f in row)
        except ValueError:
            raise ParseError(f"non-numeric coordinate in {row!r}", line=ln) from None

    start = 0
    try:
        parse_row(*rows[0])
    except ParseError:
        start = 1  # header row
    if start == len(rows):
        raise ParseError("no coordinate rows")
    points = [parse_row(ln, row) for ln, row in rows[start:]]
    return PointCloud(points)


def write_diagram_json(diag):
    """Canonical diagram JSON; identical diagrams serialize identically."""
    lines = ["{", '  "homology_dimensions": [0, 1, 2],', '  "points": [']
    pts = []
    for b, d, k in zip(diag.births, diag.deaths, diag.dims):
        pts.append(f'    {{"birth": {_fmt(b)}, "death": {_fmt(d)}, "dim": {int(k)}}}')
    lines.append(",\n".join(pts))
    lines.append("  ],")
    lines.append(f'  "essential_dropped": {diag.essential_dropped},')
    meta_items = []
    for key in sorted(diag.metadata):
        val = diag.metadata[key]
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            enc = json.dumps(str(val))
        elif isinstance(val, int):
            enc = str(val)
        else:
            enc = _fmt(val)
        meta_items.append(f"{json.dumps(key)}: {enc}")
    lines.append('  "metadata": {' + ", ".join(meta_items) + "}")
    lines.append("}")
    if not pts:
        del lines[3]  # no empty line inside the points array
    return ("\n".join(lines) + "\n").encode("utf-8")


def _require(obj, key, types, path):
    if key not in obj:
        raise ParseError("missing key", path=f"{path}.{key}")
    val = obj[key]
    if isinstance(val, bool) or not isinstance(val, types):
        raise ParseError(f"wrong type {type(val).__name__}", path=f"{path}.{key}")
    return val


def read_diagram_json(data):
    """Inverse of :func:`write_diagram_json` (tolerant of formatting)."""
    try:
        obj = json.loads(_decode(data))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(obj, dict):
        raise ParseError("wrong type, expected object", path="$")
    dims_list = _require(obj, "homology_dimensions", list, "$")
    if dims_list != [0, 1, 2]:
        raise ParseError("expected [0, 1, 2]", path="$.homology_dimensions")
    raw_points = _require(obj, "points", list, "$")
    births, deaths, dims = [], [], []
    for i, pt in enumerate(raw_points):
        path = f"$.points[{i}]"
        if not isinstance(pt, dict):
            raise ParseError("wrong type, expected object", path=path)
        births.append(_require(pt, "birth", (int, float), path))
        deaths.append(_require(pt, "death", (int, float), path))
        dims.append(_require(pt, "dim", int, path))
    essential = _require(obj, "essential_dropped", int, "$")
    metadata = _require(obj, "metadata", dict, "$")
    try:
        return PersistenceDiagram(births, deaths, dims, essential, metadata)
    except InvalidInput as exc:
        raise ParseError(str(exc), path="$.points") from None


def write_features_csv(rows):
    """Feature CSV: `id` column plus one named column per vector slot."""
    out = _io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    names = None
    layout = None
    for _, vec in rows:
        if names is None:
            names, layout = vec.names, vec.layout
        elif vec.names != names or vec.layout != layout:
            raise InvalidInput("mixed feature layouts in one table")
    if names is None:
        names = ()
    writer.writerow(["id", *names])
    for rid, vec in rows:
        writer.writerow([rid, *(_fmt(v) for v in vec.values)])
    return out.getvalue().encode("utf-8")


@dataclass(frozen=True)
class DatasetManifest:
    """Ordered (id, path) entries naming the structures of a dataset."""

    entries: tuple
    source_root: Path

    @classmethod
    def load(cls, path):
        path = Path(path)
        root = path.parent
        entries = []
        seen = set()
        with open(path, newline="") as fh:
            for ln, row in enumerate(csv.reader(fh), start=1):
                if not row or not any(f.strip() for f in row):
                    continue
                if len(row) != 2:
                    raise ParseError(f"expected `id,path`, got {row!r}", line=ln)
                rid, rel = row[0].strip(), row[1].strip()
                if ln == 1 and (rid, rel) == ("id", "path"):
                    continue
                if rid in seen:
                    raise ParseError(f"duplicate id {rid!r}", line=ln)
                seen.add(rid)
                target = root / rel
                if not target.exists():
                    raise ParseError(f"no such file: {target}", line=ln)
                entries.append((rid, target))
        return cls(entries=tuple(entries), source_root=root)

    def __len__(self):
        return len(self.entries)
