"""DIMACS ``.col`` and graph6 readers and writers.

DIMACS files are 1-based and ``e v v`` encodes a loop. graph6 carries simple
graphs only, so writing a looped graph raises
:class:`~hedetniemi.errors.UnsupportedFeatureError`.
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError, UnsupportedFeatureError
from .graph import Graph

FORMATS = ("dimacs", "graph6")
_G6_HEADER = b">>graph6<<"


def parse_dimacs(data: bytes | str, source: str | None = None) -> Graph:
    text = data.decode("ascii", errors="replace") if isinstance(data, bytes) else data
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno, source)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError(f"expected 'p edge <n> <m>', got {line!r}", lineno, source)
            try:
                n, _m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"non-integer size in {line!r}", lineno, source) from None
            if n < 1:
                raise ParseError("vertex count must be positive", lineno, source)
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge line before problem line", lineno, source)
            if len(parts) != 3:
                raise ParseError(f"expected 'e <u> <v>', got {line!r}", lineno, source)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(f"non-integer endpoint in {line!r}", lineno, source) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"endpoint out of range 1..{n} in {line!r}", lineno, source)
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"unrecognised line {line!r}", lineno, source)
    if n is None:
        raise ParseError("missing problem line 'p edge <n> <m>'", None, source)
    return Graph.from_edges(n, edges)


def serialize_dimacs(G: Graph, comment: str | None = None) -> bytes:
    lines = []
    if comment:
        lines.extend(f"c {part}" for part in comment.splitlines())
    edges = G.edges()
    lines.append(f"p edge {G.n} {len(edges)}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in edges)
    return ("\n".join(lines) + "\n").encode("ascii")


def _g6_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def serialize_graph6(G: Graph) -> bytes:
    if G.has_loops:
        raise UnsupportedFeatureError("graph6 cannot encode loops")
    out = bytearray(_g6_size(G.n))
    acc = nbits = 0
    for j in range(1, G.n):
        for i in range(j):
            acc = (acc << 1) | G.has_edge(i, j)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out) + b"\n"


def parse_graph6(data: bytes | str, source: str | None = None) -> Graph:
    raw = data.encode("ascii") if isinstance(data, str) else data
    raw = raw.strip()
    if raw.startswith(_G6_HEADER):
        raw = raw[len(_G6_HEADER):]
    if b"\n" in raw:
        raise ParseError("expected a single graph6 line", 1, source)
    if not raw or any(b < 63 or b > 126 for b in raw):
        raise ParseError("invalid graph6 characters", 1, source)
    if raw[0] != 126:
        n, body = raw[0] - 63, raw[1:]
    elif len(raw) >= 2 and raw[1] == 126:
        if len(raw) < 8:
            raise ParseError("truncated graph6 size field", 1, source)
        n = 0
        for b in raw[2:8]:
            n = (n << 6) | (b - 63)
        body = raw[8:]
    else:
        if len(raw) < 4:
            raise ParseError("truncated graph6 size field", 1, source)
        n = 0
        for b in raw[1:4]:
            n = (n << 6) | (b - 63)
        body = raw[4:]
    if n < 1:
        raise ParseError("graph6 graph has no vertices", 1, source)
    need = n * (n - 1) // 2
    if len(body) != (need + 5) // 6:
        raise ParseError(f"graph6 body has {len(body)} bytes, expected {(need + 5) // 6}", 1, source)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def parse_graph(data: bytes | str, fmt: str, source: str | None = None) -> Graph:
    if fmt == "dimacs":
        return parse_dimacs(data, source)
    if fmt == "graph6":
        return parse_graph6(data, source)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def serialize_graph(G: Graph, fmt: str) -> bytes:
    if fmt == "dimacs":
        return serialize_dimacs(G)
    if fmt == "graph6":
        return serialize_graph6(G)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def read_graph(path: str | Path, fmt: str | None = None) -> Graph:
    path = Path(path)
    if fmt is None:
        fmt = "graph6" if path.suffix in (".g6", ".graph6") else "dimacs"
    return parse_graph(path.read_bytes(), fmt, source=str(path))
