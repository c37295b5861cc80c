"""Insertion-only signed edge streams: ordering, sign transforms and text I/O.

File format::

    n m
    u v s        (m lines, 0-based ids, s is '+' or '-')

Arrivals are canonicalized to ``u < v`` when parsed or constructed.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .graph import GraphValidationError, SignedGraph, make_graph, validate_edges


class StreamMode(enum.Enum):
    SIGNED_T1 = "signed-t1"
    UNSIGNED_ALL = "unsigned-all"


class ParseError(ValueError):
    def __init__(self, line: int, cause: str):
        super().__init__(f"line {line}: {cause}")
        self.line = line
        self.cause = cause


@dataclass(frozen=True)
class SignedEdgeStream:
    """Ordered, duplicate-free sequence of ``(u, v, sign)`` arrivals with ``u < v``."""

    n: int
    items: tuple

    def __post_init__(self):
        validate_edges(self.n, self.items)
        if any(u > v for u, v, _ in self.items):
            raise GraphValidationError("stream items must be canonical (u < v)")

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[tuple]:
        # every consumer gets its own single-pass iterator
        return iter(self.items)

    @property
    def m(self) -> int:
        return len(self.items)

    def to_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Columns ``(u, v, sign)`` as int64/int64/int8 arrays (kernel input)."""
        if not self.items:
            z = np.zeros(0, dtype=np.int64)
            return z, z.copy(), np.zeros(0, dtype=np.int8)
        a = np.asarray(self.items, dtype=np.int64)
        return (np.ascontiguousarray(a[:, 0]), np.ascontiguousarray(a[:, 1]),
                np.ascontiguousarray(a[:, 2].astype(np.int8)))

    def to_graph(self) -> SignedGraph:
        return make_graph(self.n, self.items)


def make_stream(n: int, items) -> SignedEdgeStream:
    """Build a stream, canonicalizing each arrival to ``u < v``."""
    return SignedEdgeStream(n=n, items=tuple((min(u, v), max(u, v), int(s)) for u, v, s in items))


def to_stream(g: SignedGraph, order_seed) -> SignedEdgeStream:
    """Uniformly random arrival order of the edges of ``g``.

    ``order_seed=None`` keeps the canonical (sorted) edge order.
    """
    if order_seed is None:
        return SignedEdgeStream(n=g.n, items=g.edges)
    perm = np.random.default_rng(order_seed).permutation(g.m)
    return SignedEdgeStream(n=g.n, items=tuple(g.edges[i] for i in perm))


def filter_positive(s: SignedEdgeStream) -> SignedEdgeStream:
    return SignedEdgeStream(n=s.n, items=tuple(e for e in s.items if e[2] > 0))


def filter_negative(s: SignedEdgeStream) -> SignedEdgeStream:
    return SignedEdgeStream(n=s.n, items=tuple(e for e in s.items if e[2] < 0))


def strip_signs(s: SignedEdgeStream) -> SignedEdgeStream:
    return SignedEdgeStream(n=s.n, items=tuple((u, v, 1) for u, v, _ in s.items))


def flip_stream(s: SignedEdgeStream) -> SignedEdgeStream:
    return SignedEdgeStream(n=s.n, items=tuple((u, v, -x) for u, v, x in s.items))


def serialize_stream(s: SignedEdgeStream) -> bytes:
    lines = [f"{s.n} {s.m}"]
    lines.extend(f"{u} {v} {'+' if x > 0 else '-'}" for u, v, x in s.items)
    return ("\n".join(lines) + "\n").encode("ascii")


def serialize_graph(g: SignedGraph) -> bytes:
    """A graph is written as a stream in canonical edge order."""
    return serialize_stream(to_stream(g, None))


def _int(tok: str, line: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(line, f"{what} is not an integer: {tok!r}") from None


def parse_stream(data) -> SignedEdgeStream:
    """Parse the text format; blank lines and ``#`` comments are skipped."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(0, f"not valid UTF-8 ({exc.reason})") from None
    rows = []
    for lineno, raw in enumerate(data.splitlines(), start=1):
        text = raw.split("#", 1)[0].strip()
        if text:
            rows.append((lineno, text.split()))
    if not rows:
        raise ParseError(1, "missing 'n m' header")
    lineno, head = rows[0]
    if len(head) != 2:
        raise ParseError(lineno, "header must be 'n m'")
    n = _int(head[0], lineno, "n")
    m = _int(head[1], lineno, "m")
    if n < 0 or m < 0:
        raise ParseError(lineno, "n and m must be non-negative")
    body = rows[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] + 1 if body else lineno + 1)
        raise ParseError(where, f"header declares {m} edges but file has {len(body)}")
    seen = {}
    items = []
    for lineno, tok in body:
        if len(tok) != 3:
            raise ParseError(lineno, "edge line must be 'u v s'")
        u = _int(tok[0], lineno, "u")
        v = _int(tok[1], lineno, "v")
        if tok[2] not in ("+", "-"):
            raise ParseError(lineno, f"sign must be '+' or '-', got {tok[2]!r}")
        if u == v:
            raise ParseError(lineno, f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(lineno, f"vertex id out of range 0..{n - 1}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(lineno, f"duplicate pair {key} (first on line {seen[key]})")
        seen[key] = lineno
        items.append((key[0], key[1], 1 if tok[2] == "+" else -1))
    return SignedEdgeStream(n=n, items=tuple(items))
