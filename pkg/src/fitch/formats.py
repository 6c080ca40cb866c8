"""Textual formats: labeled Newick for edge-labeled trees, the V/A line
format for digraphs, and DOT export for figures.

Serialization is canonical everywhere (sorted vertices and arcs, children
ordered by canonical subtree encoding) so equal objects produce identical
bytes.
"""

from __future__ import annotations

from .digraph import Digraph
from .phylo_tree import EdgeLabeledTree, TreeSpec


class FormatError(ValueError):
    """Parse failure with 1-based line/column location."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


_NEWICK_SPECIAL = set("():,;")


class _NewickParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _loc(self) -> tuple:
        before = self.text[: self.pos]
        line = before.count("\n") + 1
        col = self.pos - (before.rfind("\n") + 1) + 1
        return line, col

    def fail(self, message: str):
        raise FormatError(message, *self._loc())

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.fail(f"expected {ch!r}, found {self.peek()!r}")
        self.pos += 1

    def name(self) -> str:
        start = self.pos
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c in _NEWICK_SPECIAL or c.isspace():
                break
            self.pos += 1
        if self.pos == start:
            self.fail("expected a leaf name")
        return self.text[start:self.pos]

    def label(self) -> int:
        self.skip_ws()
        self.expect(":")
        self.skip_ws()
        c = self.peek()
        if c not in ("0", "1"):
            self.fail("edge label must be 0 or 1")
        self.pos += 1
        return int(c)

    def node(self) -> TreeSpec:
        self.skip_ws()
        if self.peek() == "(":
            self.pos += 1
            children = [(self.node(), self.label())]
            self.skip_ws()
            while self.peek() == ",":
                self.pos += 1
                children.append((self.node(), self.label()))
                self.skip_ws()
            self.expect(")")
            return children
        return self.name()

    def tree(self) -> EdgeLabeledTree:
        spec = self.node()
        self.skip_ws()
        self.expect(";")
        self.skip_ws()
        if self.pos != len(self.text):
            self.fail("trailing content after ';'")
        if isinstance(spec, str):
            self.fail("a tree needs an inner root node")
        try:
            return EdgeLabeledTree.from_spec(spec)
        except ValueError as e:
            raise FormatError(str(e), 1, 1) from e


def parse_newick(text: str) -> EdgeLabeledTree:
    return _NewickParser(text).tree()


def serialize_newick(t: EdgeLabeledTree) -> str:
    """Canonical labeled Newick: children sorted by (subtree encoding,
    label), terminated by ';'."""
    enc: dict = {}
    for v in t.postorder():
        nd = t.nodes[v]
        if nd.is_leaf:
            enc[v] = nd.name
        else:
            parts = sorted(
                (enc[c], t.nodes[c].label) for c in nd.children
            )
            enc[v] = "(" + ",".join(f"{s}:{l}" for s, l in parts) + ")"
    return enc[t.root] + ";"


def parse_graph(text: str) -> Digraph:
    vertices: list = []
    seen: set = set()
    arcs: list = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "V":
            if len(tokens) != 2:
                raise FormatError("V line takes exactly one name", lineno, 1)
            if tokens[1] in seen:
                raise FormatError(f"duplicate vertex {tokens[1]!r}", lineno, 3)
            seen.add(tokens[1])
            vertices.append(tokens[1])
        elif tokens[0] == "A":
            if len(tokens) != 3:
                raise FormatError("A line takes exactly two names", lineno, 1)
            u, v = tokens[1], tokens[2]
            if u == v:
                raise FormatError(f"self-arc on {u!r}", lineno, 3)
            if u not in seen or v not in seen:
                raise FormatError("arc endpoint not declared", lineno, 3)
            arcs.append((u, v))
        else:
            raise FormatError(f"unknown directive {tokens[0]!r}", lineno, 1)
    return Digraph(vertices, arcs)


def serialize_graph(g: Digraph) -> str:
    lines = [f"V {v}" for v in g.vertices]
    lines.extend(f"A {u} {v}" for u, v in sorted(g.arcs))
    return "\n".join(lines) + "\n"


def graph_to_dot(g: Digraph) -> str:
    lines = ["digraph fitch {"]
    for v in g.vertices:
        lines.append(f'  "{v}";')
    for u, v in sorted(g.arcs):
        lines.append(f'  "{u}" -> "{v}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_to_dot(t: EdgeLabeledTree) -> str:
    """Rooted tree as an (undirected-looking) DOT digraph; 1-edges bold red."""
    lines = ["digraph tree {", "  node [shape=point];"]
    for i, nd in enumerate(t.nodes):
        if nd.is_leaf:
            lines.append(f'  n{i} [shape=plaintext, label="{nd.name}"];')
    for i, nd in enumerate(t.nodes):
        if i == t.root:
            continue
        style = ' [color=red, penwidth=2, label="1"]' if nd.label == 1 else ""
        lines.append(f"  n{nd.parent} -> n{i}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
