"""Text formats: matrix specs and the versioned point-cloud document."""

from dataclasses import dataclass, field
import re

import numpy as np

from .dualities import format_matrix
from .errors import MatrixParseError

__all__ = ["parse_matrix", "parse_entry", "format_matrix", "CloudDocument",
           "cloud_document", "read_document", "VERSION"]

VERSION = "numrange-v1"

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_ENTRY = re.compile(rf"(?P<re>[+-]?{_NUM})(?:(?P<im>[+-](?:{_NUM})?)i)?|(?P<im2>[+-]?(?:{_NUM})?)i")


def parse_entry(text):
    """Parse ``RE``, ``RE+IMi``, ``RE-IMi`` or ``IMi`` into a complex number."""
    s = "".join(text.split())
    m = _ENTRY.fullmatch(s)
    if not s or m is None:
        raise MatrixParseError(f"malformed entry {text!r}")
    re_part = m.group("re")
    im_part = m.group("im") if re_part is not None else m.group("im2")
    value = complex(float(re_part) if re_part else 0.0)
    if im_part is not None:
        if im_part in ("", "+", "-"):
            im_part += "1"
        value += 1j * float(im_part)
    return value


def parse_matrix(spec):
    """Parse ``"a,b;c,d"`` into a square complex matrix; whitespace is ignored."""
    s = "".join(str(spec).split())
    if not s:
        raise MatrixParseError("empty matrix")
    rows = s.split(";")
    width = len(rows[0].split(","))
    out = []
    for i, row in enumerate(rows, start=1):
        cells = row.split(",")
        if len(cells) != width:
            noun = "entry" if len(cells) == 1 else "entries"
            raise MatrixParseError(f"row {i} has {len(cells)} {noun}, expected {width}")
        vals = []
        for j, cell in enumerate(cells, start=1):
            try:
                vals.append(parse_entry(cell))
            except MatrixParseError:
                raise MatrixParseError(f"malformed entry {cell!r} at row {i}, column {j}") from None
        out.append(vals)
    if len(out) != width:
        raise MatrixParseError(f"matrix must be square, got {len(out)}x{width}")
    return np.array(out, dtype=complex)


@dataclass
class CloudDocument:
    """Header fields plus points and an optional boundary polyline."""

    p: float
    n: int
    grid: tuple
    matrix: np.ndarray
    points: np.ndarray
    boundary: np.ndarray = None
    extra: dict = field(default_factory=dict)

    def header(self):
        fields = [VERSION, f"p={self.p:.17g}", f"n={self.n}",
                  f"grid={self.grid[0]}x{self.grid[1]}", f"matrix={format_matrix(self.matrix)}"]
        fields += [f"{k}={v}" for k, v in self.extra.items()]
        return " ".join(fields)

    def to_text(self):
        lines = [self.header()]
        lines += [f"{x:.17g} {y:.17g}" for x, y in np.asarray(self.points).reshape(-1, 2)]
        if self.boundary is not None:
            lines.append("boundary")
            lines += [f"{x:.17g} {y:.17g}" for x, y in np.asarray(self.boundary).reshape(-1, 2)]
        return "\n".join(lines) + "\n"


def cloud_document(cloud, boundary=None):
    return CloudDocument(cloud.p, cloud.n, tuple(cloud.resolution), cloud.matrix,
                         cloud.points, boundary)


def _points(lines, start):
    try:
        rows = [tuple(float(v) for v in ln.split()) for ln in lines]
    except ValueError as exc:
        raise MatrixParseError(f"bad point line near line {start}: {exc}") from None
    if any(len(r) != 2 for r in rows):
        raise MatrixParseError(f"point lines must hold two numbers (near line {start})")
    return np.array(rows, dtype=float).reshape(-1, 2)


def read_document(text):
    """Inverse of :meth:`CloudDocument.to_text`; values round-trip exactly."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith(VERSION + " "):
        raise MatrixParseError(f"missing {VERSION} header")
    fields = dict(f.split("=", 1) for f in lines[0].split()[1:])
    try:
        k1, k2 = (int(v) for v in fields.pop("grid").split("x"))
        p, n = float(fields.pop("p")), int(fields.pop("n"))
        matrix = parse_matrix(fields.pop("matrix"))
    except KeyError as exc:
        raise MatrixParseError(f"header lacks field {exc.args[0]}") from None
    body = lines[1:]
    boundary = None
    if "boundary" in body:
        k = body.index("boundary")
        boundary = _points(body[k + 1:], k + 2)
        body = body[:k]
    return CloudDocument(p, n, (k1, k2), matrix, _points(body, 2), boundary, fields)
