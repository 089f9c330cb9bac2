"""Reading and writing hypergraphs as ``.hg`` text or JSON.

``.hg`` layout::

    # comment
    3 5          <- rank, vertex count
    1 2 3        <- one edge per line, ascending labels
    3 4 5
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import HypergraphError, ParseError
from .hypergraph import Hypergraph


def format_hg(G: Hypergraph) -> str:
    lines = [f"{G.rank} {G.vertex_count}"]
    lines += [" ".join(map(str, e)) for e in G.edges]
    return "\n".join(lines) + "\n"


def parse_hg(text: str) -> Hypergraph:
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"non-integer token in {raw.strip()!r}", lineno) from None
        if header is None:
            if len(nums) != 2:
                raise ParseError("header must be 'r n'", lineno)
            header = nums
            if header[0] < 1 or header[1] < 0:
                raise ParseError("rank must be >= 1 and vertex count >= 0", lineno)
            continue
        r, n = header
        if len(nums) != r:
            raise ParseError(f"edge has {len(nums)} vertices, expected {r}", lineno)
        if sorted(nums) != nums or len(set(nums)) != r:
            raise ParseError("edge vertices must be strictly ascending", lineno)
        if nums[0] < 1 or nums[-1] > n:
            raise ParseError(f"vertex outside 1..{n}", lineno)
        edges.append((lineno, tuple(nums)))
    if header is None:
        raise ParseError("missing 'r n' header")
    seen = {}
    for lineno, e in edges:
        if e in seen:
            raise ParseError(f"duplicate edge {e} (first on line {seen[e]})", lineno)
        seen[e] = lineno
    return Hypergraph(header[0], header[1], tuple(seen))


def format_json(G: Hypergraph) -> str:
    return json.dumps(G.to_dict())


def parse_json(text: str) -> Hypergraph:
    try:
        data = json.loads(text)
        return Hypergraph.from_dict(data)
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ParseError(f"bad JSON hypergraph: {exc}") from None
    except HypergraphError as exc:
        raise ParseError(str(exc)) from None


def read_graph(path) -> Hypergraph:
    """Read ``.hg`` or JSON, chosen by extension (``.json``) or leading ``{``."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_hg(text)


def write_graph(G: Hypergraph, path) -> Path:
    path = Path(path)
    path.write_text(format_json(G) + "\n" if path.suffix == ".json" else format_hg(G))
    return path


def rational_str(q) -> str:
    """Exact rationals as "p/q" (integers as "p")."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_jsonable(value):
    """Fractions become "p/q" strings; containers are converted recursively."""
    if isinstance(value, Fraction):
        return rational_str(value)
    if isinstance(value, Hypergraph):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "item"):  # numpy scalars
        return value.item()
    return value
