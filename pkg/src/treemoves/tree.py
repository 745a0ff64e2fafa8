"""Fully-labelled rooted trees.

Every vertex of a tree carries a unique label; the root itself is an
implicit, unlabelled anchor above the unique *top* vertex (the one whose
parent is ``None``).  Children are unordered sets, but all iteration and
serialization happens in lexicographic label order so that output is
deterministic.

The text format is Newick-like with a mandatory label on every node::

    tree  := node ';'
    node  := ( '(' node (',' node)* ')' )? label
    label := any run of characters except '(', ')', ',', ';' and whitespace

Whitespace between tokens is ignored.  ``((d,e,f)b,(g,h)c)a;`` denotes a
tree whose top vertex is ``a`` with children ``b`` (children d, e, f) and
``c`` (children g, h).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "LabelledTree",
    "IsomorphismTable",
    "TreeError",
    "ParseError",
    "DuplicateLabelError",
    "BadLabelError",
    "StructureError",
    "UnknownLabelError",
    "parse_tree",
    "serialize_tree",
    "are_congruent",
    "subtree_isomorphism_table",
]

_FORBIDDEN = set("(),;")


class TreeError(ValueError):
    """Base class for all tree-related errors."""


class ParseError(TreeError):
    """Malformed tree text.  ``position`` is the character offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DuplicateLabelError(TreeError):
    pass


class BadLabelError(TreeError):
    pass


class StructureError(TreeError):
    """Parent map does not describe a single rooted tree."""


class UnknownLabelError(TreeError):
    pass


def _check_label(label):
    if not isinstance(label, str) or not label:
        raise BadLabelError(f"labels must be non-empty strings, got {label!r}")
    if any(c in _FORBIDDEN or c.isspace() for c in label):
        raise BadLabelError(
            f"label {label!r} contains whitespace or one of '(', ')', ',', ';'"
        )


class LabelledTree:
    """Immutable rooted tree whose vertices are all uniquely labelled.

    Constructed from a parent map ``{label: parent_label_or_None}``; exactly
    one label (the top vertex) must map to ``None``.  The map must describe
    a single connected, acyclic tree.
    """

    __slots__ = (
        "_parent",
        "_children",
        "_top",
        "_hash",
        "_sorted_items",
        "_label_tuple_cache",
        "_parent_code_array",
    )

    def __init__(self, parent):
        parent = dict(parent)
        if not parent:
            raise StructureError("a tree needs at least one vertex")
        tops = []
        for label, par in parent.items():
            _check_label(label)
            if par is None:
                tops.append(label)
            elif par not in parent:
                raise StructureError(
                    f"vertex {label!r} has parent {par!r} which is not a vertex"
                )
        if len(tops) != 1:
            raise StructureError(
                f"expected exactly one top vertex, found {len(tops)}: {sorted(tops)!r}"
            )
        top = tops[0]

        kids: dict = {label: [] for label in parent}
        for label, par in parent.items():
            if par is not None:
                kids[par].append(label)

        # reachability from the top vertex proves the map is one tree
        seen = 1
        stack = [top]
        while stack:
            v = stack.pop()
            cs = kids[v]
            seen += len(cs)
            stack.extend(cs)
        if seen != len(parent):
            raise StructureError("parent map contains a cycle or is disconnected")

        children = {label: tuple(sorted(cs)) for label, cs in kids.items()}
        children[None] = (top,)
        self._parent = parent
        self._children = children
        self._top = top
        self._hash = None
        self._sorted_items = None
        self._label_tuple_cache = None
        self._parent_code_array = None

    @property
    def root_child(self):
        """Label of the unique child of the implicit root."""
        return self._top

    @property
    def labels(self):
        """Set-like view of all labels."""
        return self._parent.keys()

    def __len__(self):
        return len(self._parent)

    def __contains__(self, label):
        return label in self._parent

    def parent(self, label):
        """Parent label of ``label`` (``None`` for the top vertex)."""
        try:
            return self._parent[label]
        except KeyError:
            raise UnknownLabelError(f"no vertex labelled {label!r}") from None

    def children(self, label):
        """Children of ``label`` as a lexicographically sorted tuple."""
        try:
            return self._children[label]
        except KeyError:
            raise UnknownLabelError(f"no vertex labelled {label!r}") from None

    def parent_map(self):
        """Copy of the underlying parent map."""
        return dict(self._parent)

    def _parent_items(self):
        """(label, parent) pairs sorted by label; cached.

        Trees over the same label set align positionally, so pairwise
        comparisons run as a single sequential scan.
        """
        if self._sorted_items is None:
            self._sorted_items = sorted(self._parent.items())
        return self._sorted_items

    def _label_tuple(self):
        """All labels as a sorted tuple; cached."""
        if self._label_tuple_cache is None:
            self._label_tuple_cache = tuple(v for v, _ in self._parent_items())
        return self._label_tuple_cache

    def _parent_codes(self):
        """Parent of the i-th label (sorted order) as its sorted index; cached.

        The top vertex gets -1.  Two trees over the same label set share
        the index space, so counting parent disagreements is a single
        vectorised array comparison.
        """
        if self._parent_code_array is None:
            items = self._parent_items()
            index = {label: i for i, (label, _) in enumerate(items)}
            self._parent_code_array = np.fromiter(
                (-1 if p is None else index[p] for _, p in items),
                dtype=np.int64,
                count=len(items),
            )
        return self._parent_code_array

    def preorder(self):
        """Iterative preorder traversal, children in lexicographic order."""
        stack = [self._top]
        while stack:
            v = stack.pop()
            yield v
            stack.extend(reversed(self._children[v]))

    def postorder(self):
        """Iterative postorder traversal, children in lexicographic order."""
        out = []
        stack = [self._top]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(self._children[v])
        return reversed(out)

    def depths(self):
        """Map label -> distance from the top vertex (top vertex is 0)."""
        depth = {self._top: 0}
        stack = [self._top]
        while stack:
            v = stack.pop()
            d = depth[v] + 1
            for c in self._children[v]:
                depth[c] = d
                stack.append(c)
        return depth

    def is_descendant(self, label, ancestor):
        """True if ``label`` is a strict descendant of ``ancestor``."""
        if label not in self._parent:
            raise UnknownLabelError(f"no vertex labelled {label!r}")
        if ancestor not in self._parent:
            raise UnknownLabelError(f"no vertex labelled {ancestor!r}")
        v = self._parent[label]
        while v is not None:
            if v == ancestor:
                return True
            v = self._parent[v]
        return False

    def is_binary(self):
        """True if every vertex has at most two children."""
        return all(len(self._children[v]) <= 2 for v in self._parent)

    def __eq__(self, other):
        if not isinstance(other, LabelledTree):
            return NotImplemented
        return self._parent == other._parent

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._parent.items()))
        return self._hash

    def __repr__(self):
        text = serialize_tree(self)
        if len(text) > 60:
            text = text[:57] + "..."
        return f"LabelledTree({text!r})"


def parse_tree(text):
    """Parse tree text into a :class:`LabelledTree`.

    Raises :class:`ParseError` with a character position on malformed
    input and :class:`DuplicateLabelError` if a label occurs twice.
    """
    # tokenize: single-char punctuation plus maximal label runs
    tokens = []  # (kind, value, position)
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in "(),;":
            tokens.append((c, c, i))
            i += 1
            continue
        j = i
        while j < n and text[j] not in "(),;" and not text[j].isspace():
            j += 1
        tokens.append(("label", text[i:j], i))
        i = j

    # explicit stack instead of recursion: deep path trees are legal input
    stack = [[]]  # stack of children accumulators
    pending = None  # children group waiting for its label
    prev = "start"
    seen = set()
    end_pos = None
    for kind, value, pos in tokens:
        if end_pos is not None:
            raise ParseError("unexpected content after ';'", pos)
        if kind == "(":
            if prev not in ("start", "(", ","):
                raise ParseError("unexpected '('", pos)
            stack.append([])
        elif kind == ",":
            if prev != "label" or len(stack) == 1:
                raise ParseError("unexpected ','", pos)
        elif kind == ")":
            if prev != "label" or len(stack) == 1:
                raise ParseError("unexpected ')'", pos)
            pending = stack.pop()
        elif kind == ";":
            if prev != "label" or len(stack) != 1 or pending is not None:
                raise ParseError("unexpected ';'", pos)
            end_pos = pos
        else:  # label
            if prev not in ("start", "(", ",", ")"):
                raise ParseError(f"unexpected label {value!r}", pos)
            if value in seen:
                raise DuplicateLabelError(f"duplicate label {value!r}")
            seen.add(value)
            group = pending if pending is not None else []
            pending = None
            stack[-1].append((value, group))
        prev = kind if kind != "label" else "label"
    if end_pos is None:
        raise ParseError("missing ';' terminator", len(text))

    parent = {}
    work = [(stack[0][0], None)]  # (node, parent label)
    while work:
        (label, group), par = work.pop()
        parent[label] = par
        for child in group:
            work.append((child, label))
    return LabelledTree(parent)


def serialize_tree(tree):
    """Serialize a tree to its text form, children in lexicographic order.

    ``parse_tree(serialize_tree(t))`` is always congruent to ``t``.
    """
    parts = []
    stack = [("node", tree.root_child)]
    while stack:
        kind, value = stack.pop()
        if kind == "text":
            parts.append(value)
            continue
        kids = tree.children(value)
        if not kids:
            parts.append(value)
            continue
        parts.append("(")
        stack.append(("text", ")" + value))
        for idx, child in enumerate(reversed(kids)):
            stack.append(("node", child))
            if idx != len(kids) - 1:
                stack.append(("text", ","))
    parts.append(";")
    return "".join(parts)


def are_congruent(t1, t2):
    """True iff the trees have the same label set and the same parent map.

    Labels are unique, so an isomorphism preserving every label exists
    exactly when the parent maps coincide.
    """
    return t1 == t2


def _depth_buckets(tree):
    """Vertices grouped by depth, each bucket sorted lexicographically."""
    depth = tree.depths()
    height = max(depth.values()) + 1
    buckets = [[] for _ in range(height)]
    for v in sorted(depth):
        buckets[depth[v]].append(v)
    return buckets


def _canonical_codes(t1, t2):
    """Per-level canonical shape codes, interned jointly across both trees.

    A vertex's code is the sorted tuple of its children's codes, replaced
    by a small integer unique within the level.  Two vertices at the same
    depth get the same code exactly when their subtrees are isomorphic.
    """
    b1, b2 = _depth_buckets(t1), _depth_buckets(t2)
    height = max(len(b1), len(b2))
    code1, code2 = {}, {}
    for level in range(height - 1, -1, -1):
        interned = {}
        for tree, bucket, codes in (
            (t1, b1[level] if level < len(b1) else [], code1),
            (t2, b2[level] if level < len(b2) else [], code2),
        ):
            for v in bucket:
                key = tuple(sorted(codes[c] for c in tree.children(v)))
                codes[v] = interned.setdefault(key, len(interned))
    return b1, b2, code1, code2


@dataclass(eq=False)
class IsomorphismTable:
    """Subtree isomorphism between all vertex pairs of two trees.

    ``iso[i, j]`` is True iff the vertices ``t1_labels[i]`` and
    ``t2_labels[j]`` sit at the same depth and root isomorphic subtrees.
    Vertices at different depths never compare True, mirroring the
    level-by-level construction (the matching recurrence only ever asks
    about same-level pairs).

    The cost layers are filled in by ``treemoves.permutation.mismatch_table``:
    ``D[i, j]`` is the minimum number of label mismatches over subtree
    isomorphisms (``inf`` exactly where ``iso`` is False), ``C`` maps label
    pairs to the conserved labels of one optimal isomorphism, and
    ``matchings`` stores the optimal child matching of every internal pair.
    """

    t1_labels: tuple
    t2_labels: tuple
    iso: np.ndarray
    D: np.ndarray | None = None
    C: dict | None = None
    matchings: dict | None = None

    def __post_init__(self):
        self._index1 = {v: i for i, v in enumerate(self.t1_labels)}
        self._index2 = {v: i for i, v in enumerate(self.t2_labels)}

    def is_isomorphic(self, u, v):
        return bool(self.iso[self._index1[u], self._index2[v]])

    def mismatch_cost(self, u, v):
        return self.D[self._index1[u], self._index2[v]]

    def conserved(self, u, v):
        return self.C[(u, v)]


def _table_parts(t1, t2):
    """Depth buckets, canonical codes and the boolean isomorphism table."""
    b1, b2, code1, code2 = _canonical_codes(t1, t2)
    order1 = tuple(sorted(t1.labels))
    order2 = tuple(sorted(t2.labels))
    idx1 = {v: i for i, v in enumerate(order1)}
    idx2 = {v: i for i, v in enumerate(order2)}
    iso = np.zeros((len(order1), len(order2)), dtype=bool)
    for level in range(min(len(b1), len(b2))):
        if not b1[level] or not b2[level]:
            continue
        rows = np.fromiter((idx1[v] for v in b1[level]), dtype=np.intp)
        cols = np.fromiter((idx2[v] for v in b2[level]), dtype=np.intp)
        c1 = np.fromiter((code1[v] for v in b1[level]), dtype=np.int64)
        c2 = np.fromiter((code2[v] for v in b2[level]), dtype=np.int64)
        iso[np.ix_(rows, cols)] = c1[:, None] == c2[None, :]
    return b1, b2, code1, code2, IsomorphismTable(order1, order2, iso)


def subtree_isomorphism_table(t1, t2):
    """Boolean subtree-isomorphism table over all vertex pairs.

    Computed bottom-up with canonical codes shared across both trees, so
    the whole table costs O(n log n) plus the O(n1*n2) fill.
    """
    return _table_parts(t1, t2)[4]
