"""Combinatorics of neural codes.

A code lives on neurons ``1..n``; codewords are stored by their supports
(frozensets of 1-based neuron indices), which is the form every operation
in the package actually needs.  Bit strings only appear at the I/O edge.
"""

from __future__ import annotations

import itertools
import json
import re
import warnings
from dataclasses import dataclass, field
from typing import Iterable

Support = frozenset


class CodeParseError(ValueError):
    """Raised for malformed code text.  ``line``/``column`` are 1-based."""

    def __init__(self, kind: str, message: str, line: int | None = None, column: int | None = None):
        self.kind = kind
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{kind}: {message}{where}")


class NotTwoSparse(ValueError):
    pass


def support(word: str) -> frozenset:
    """Indices (1-based) of the 1 bits of a binary string codeword."""
    return frozenset(i + 1 for i, ch in enumerate(word) if ch == "1")


def word_of(sup: Iterable[int], n: int) -> str:
    s = set(sup)
    return "".join("1" if i + 1 in s else "0" for i in range(n))


def _sort_key(sup: frozenset):
    return (len(sup), sorted(sup))


@dataclass(frozen=True)
class NeuralCode:
    """Immutable code on ``n`` neurons; always contains the empty support."""

    n: int
    supports: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("neuron count must be nonnegative")
        sups = frozenset(frozenset(s) for s in self.supports)
        for s in sups:
            for i in s:
                if not (isinstance(i, int) and 1 <= i <= self.n):
                    raise ValueError(f"neuron index {i!r} outside 1..{self.n}")
        object.__setattr__(self, "supports", sups | {frozenset()})

    @classmethod
    def from_words(cls, words: Iterable[str], n: int | None = None) -> "NeuralCode":
        words = list(words)
        if n is None:
            if not words:
                raise ValueError("cannot infer n from an empty word list")
            n = len(words[0])
        for w in words:
            if len(w) != n:
                raise ValueError(f"word {w!r} has width {len(w)}, expected {n}")
            if set(w) - {"0", "1"}:
                raise ValueError(f"word {w!r} is not binary")
        return cls(n, frozenset(support(w) for w in words))

    @property
    def words(self) -> list[str]:
        """Canonical word list: sorted by weight, then lexicographically by support."""
        return [word_of(s, self.n) for s in self.sorted_supports()]

    def sorted_supports(self) -> list[frozenset]:
        return sorted(self.supports, key=_sort_key)

    def __len__(self) -> int:
        return len(self.supports)

    def __contains__(self, item) -> bool:
        if isinstance(item, str):
            return support(item) in self.supports
        return frozenset(item) in self.supports

    def __str__(self) -> str:
        return "{" + ",".join(self.words) + "}"

    def to_json(self) -> dict:
        return {"n": self.n, "words": self.words}

    @classmethod
    def from_json(cls, obj: dict) -> "NeuralCode":
        return cls.from_words(obj["words"], int(obj["n"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def format(self) -> str:
        return ",".join(self.words)

    @property
    def max_weight(self) -> int:
        return max(len(s) for s in self.supports)


_TOKEN = re.compile(r"[^\s,]+")


def parse_code(text: str) -> NeuralCode:
    """Parse whitespace/comma separated binary strings.

    The all-zero word is added (with a warning) if absent.
    """
    tokens = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0]
        for m in _TOKEN.finditer(stripped):
            tokens.append((m.group(0), lineno, m.start() + 1))
    if not tokens:
        raise CodeParseError("EmptyInput", "no codewords found")
    width = len(tokens[0][0])
    for tok, line, col in tokens:
        bad = next((k for k, ch in enumerate(tok) if ch not in "01"), None)
        if bad is not None:
            raise CodeParseError("NonBinaryCharacter", f"{tok[bad]!r} in {tok!r}", line, col + bad)
        if len(tok) != width:
            raise CodeParseError("RaggedWidth", f"{tok!r} has width {len(tok)}, expected {width}", line, col)
    sups = {support(t) for t, _, _ in tokens}
    if frozenset() not in sups:
        warnings.warn("all-zero codeword was absent from input; inserted", stacklevel=2)
    return NeuralCode(width, frozenset(sups))


def code_support(code: NeuralCode) -> frozenset:
    return code.supports


def is_k_sparse(code: NeuralCode, k: int) -> bool:
    return all(len(s) <= k for s in code.supports)


def intersection_violation(code: NeuralCode) -> tuple | None:
    """First (s, t) in canonical order whose intersection is not a support."""
    sups = code.sorted_supports()
    present = code.supports
    for a, b in itertools.combinations(sups, 2):
        if (a & b) not in present:
            return (a, b)
    return None


def is_intersection_complete(code: NeuralCode) -> bool:
    return intersection_violation(code) is None


@dataclass(frozen=True)
class SimplicialComplex:
    n: int
    faces: frozenset

    def __post_init__(self):
        object.__setattr__(self, "faces", frozenset(frozenset(f) for f in self.faces) | {frozenset()})

    def is_downward_closed(self) -> bool:
        for f in self.faces:
            for r in range(len(f)):
                for sub in itertools.combinations(sorted(f), r):
                    if frozenset(sub) not in self.faces:
                        return False
        return True

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.faces) - 1


def simplicial_complex(code: NeuralCode) -> SimplicialComplex:
    faces = set()
    for s in code.supports:
        items = sorted(s)
        for r in range(len(items) + 1):
            faces.update(frozenset(c) for c in itertools.combinations(items, r))
    return SimplicialComplex(code.n, frozenset(faces))


def skeleton(cx: SimplicialComplex, k: int) -> SimplicialComplex:
    return SimplicialComplex(cx.n, frozenset(f for f in cx.faces if len(f) <= k + 1))


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``1..n``."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        es = set()
        for e in self.edges:
            e = frozenset(e)
            if len(e) != 2:
                raise ValueError(f"edge {sorted(e)} is a loop or malformed")
            for v in e:
                if not 1 <= v <= self.n:
                    raise ValueError(f"edge endpoint {v} outside 1..{self.n}")
            es.add(e)
        object.__setattr__(self, "edges", frozenset(es))

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "Graph":
        return cls(n, frozenset(frozenset(p) for p in pairs))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> list[int]:
        return sorted(u for e in self.edges if v in e for u in e if u != v)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.sorted_edges())
        return g

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}


def code_graph(code: NeuralCode) -> Graph:
    return Graph(code.n, frozenset(s for s in code.supports if len(s) == 2))


def graph_full_code(g: Graph) -> NeuralCode:
    sups = {frozenset([v]) for v in g.vertices} | set(g.edges)
    return NeuralCode(g.n, frozenset(sups))


def is_realizable(code: NeuralCode) -> bool:
    """Open convex realizability; decided only for 2-sparse codes."""
    if not is_k_sparse(code, 2):
        raise NotTwoSparse(f"code has a word of weight {code.max_weight}; only 2-sparse codes are classified")
    return is_intersection_complete(code)


def complete_graph(n: int) -> Graph:
    return Graph.from_pairs(n, itertools.combinations(range(1, n + 1), 2))


def complete_multipartite_graph(parts) -> Graph:
    labels = []
    start = 1
    for size in parts:
        labels.append(list(range(start, start + size)))
        start += size
    pairs = [
        (a, b)
        for p, q in itertools.combinations(range(len(labels)), 2)
        for a in labels[p]
        for b in labels[q]
    ]
    return Graph.from_pairs(start - 1, pairs)


def full_subdivision(g: Graph) -> Graph:
    """Replace every edge ``{i, j}`` by a path through a new vertex.

    Subdivision vertices get labels ``n+1, n+2, ...`` in sorted edge order.
    """
    pairs = []
    nxt = g.n + 1
    for a, b in g.sorted_edges():
        pairs += [(a, nxt), (nxt, b)]
        nxt += 1
    return Graph.from_pairs(nxt - 1, pairs)
