"""Text and JSON serialization for matroids and uniform hypergraphs.

MATROID v1 (LF line endings, indices ascending in each line, lines sorted
by bitmask value):

    MATROID v1
    n <int> r <int>
    bases <count>
    <one basis per line: space-separated ascending 0-based indices>

Lines starting with '#' are comments and are ignored by the parser; the
JSON mirror is {"n": ..., "r": ..., "bases": [[...], ...]} with identical
ordering.  HYPERGRAPH v1 mirrors the matroid format with k replacing r and
"edges" replacing "bases".
"""

from __future__ import annotations

import json

from .bitsets import bit_indices, mask_of, popcount
from .hypergraphs import UniformHypergraph
from .matroid import Matroid, MatroidError, exchange_violation


class ParseError(MatroidError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


def _indices(mask: int):
    return list(bit_indices(mask))


def serialize_matroid(M: Matroid, comments=()) -> str:
    lines = ["MATROID v1"]
    lines.extend(f"# {c}" for c in comments)
    lines.append(f"n {M.n} r {M.r}")
    lines.append(f"bases {len(M.bases)}")
    lines.extend(" ".join(map(str, _indices(b))) for b in M.bases)
    return "\n".join(lines) + "\n"


def serialize_matroid_json(M: Matroid) -> str:
    return json.dumps({"n": M.n, "r": M.r, "bases": [_indices(b) for b in M.bases]})


def serialize_hypergraph(H: UniformHypergraph) -> str:
    lines = ["HYPERGRAPH v1", f"n {H.v} k {H.k}", f"edges {len(H.edges)}"]
    lines.extend(" ".join(map(str, _indices(e))) for e in H.edges)
    return "\n".join(lines) + "\n"


def _content_lines(text: str):
    """(line_number, stripped_text) for non-comment, non-blank lines."""
    out = []
    for i, raw in enumerate(text.split("\n"), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append((i, stripped))
    return out


def _parse_header_pair(lineno, text, key1, key2):
    parts = text.split()
    if len(parts) != 4 or parts[0] != key1 or parts[2] != key2:
        raise ParseError(lineno, f"expected '{key1} <int> {key2} <int>', got {text!r}")
    try:
        return int(parts[1]), int(parts[3])
    except ValueError:
        raise ParseError(lineno, f"non-integer value in {text!r}") from None


def _parse_body(lines, magic, key2, count_word):
    if not lines:
        raise ParseError(1, "empty input")
    lineno, header = lines[0]
    if header != magic:
        raise ParseError(lineno, f"malformed header: expected {magic!r}, got {header!r}")
    if len(lines) < 3:
        raise ParseError(lineno, "truncated file: missing size or count line")
    n, r = _parse_header_pair(lines[1][0], lines[1][1], "n", key2)
    cl_no, cl = lines[2][0], lines[2][1]
    parts = cl.split()
    if len(parts) != 2 or parts[0] != count_word or not parts[1].isdigit():
        raise ParseError(cl_no, f"expected '{count_word} <count>', got {cl!r}")
    count = int(parts[1])
    rows = lines[3:]
    if len(rows) != count:
        raise ParseError(cl_no, f"{count_word} count {count} but {len(rows)} rows follow")
    masks = []
    for lineno, row in rows:
        try:
            idx = [int(tok) for tok in row.split()]
        except ValueError:
            raise ParseError(lineno, f"non-integer index in {row!r}") from None
        if any(i < 0 or i >= n for i in idx):
            raise ParseError(lineno, f"index out of range 0..{n - 1} in {row!r}")
        mask = mask_of(idx)
        if popcount(mask) != len(idx):
            raise ParseError(lineno, f"repeated index in {row!r}")
        if len(idx) != r:
            raise ParseError(lineno, f"row has {len(idx)} indices, expected {r}")
        masks.append(mask)
    return n, r, masks


def _check_exchange(n, masks, source="input"):
    if not masks:
        raise MatroidError(f"{source}: bases must be nonempty")
    witness = exchange_violation(n, masks)
    if witness is not None:
        kind, b1, b2 = witness[0], witness[1], witness[2]
        if kind == "exchange":
            raise MatroidError(
                f"{source}: basis-exchange fails for pair {_indices(b1)} / {_indices(b2)}"
                f" at element {witness[3]}"
            )
        raise MatroidError(f"{source}: invalid basis family ({kind} violation)")


def parse_matroid(text: str) -> Matroid:
    """Parse MATROID v1 or its JSON mirror; validates the exchange property."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.lineno, f"bad JSON: {exc.msg}") from None
        try:
            n, r, rows = int(doc["n"]), int(doc["r"]), doc["bases"]
        except (KeyError, TypeError, ValueError):
            raise MatroidError("JSON matroid needs keys n, r, bases") from None
        masks = []
        for row in rows:
            if any(not isinstance(i, int) or i < 0 or i >= n for i in row):
                raise MatroidError(f"index out of range 0..{n - 1} in {row!r}")
            if len(set(row)) != len(row) or len(row) != r:
                raise MatroidError(f"row {row!r} is not an r-set")
            masks.append(mask_of(row))
        _check_exchange(n, masks, "JSON input")
        return Matroid.from_bases(n, masks, validate=False)
    n, r, masks = _parse_body(_content_lines(text), "MATROID v1", "r", "bases")
    _check_exchange(n, masks)
    return Matroid.from_bases(n, masks, validate=False)


def parse_matroid_file(path) -> Matroid:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matroid(fh.read())


def parse_hypergraph(text: str) -> UniformHypergraph:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        doc = json.loads(text)
        return UniformHypergraph.from_edges(
            int(doc["n"]), int(doc["k"]), (mask_of(row) for row in doc["edges"])
        )
    v, k, masks = _parse_body(_content_lines(text), "HYPERGRAPH v1", "k", "edges")
    return UniformHypergraph.from_edges(v, k, masks)
