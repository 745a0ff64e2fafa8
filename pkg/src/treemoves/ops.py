"""Rearrangement operations: link-and-cut moves and label permutations.

A link-and-cut move detaches a vertex from its current parent and
reattaches it under a new one (which must not be a descendant of the
moved vertex).  A permutation relabels vertices by a bijection on the
label set, leaving the topology untouched.  Both operations return new
trees; both are invertible.

Script text format (one operation per line)::

    move CHILD FROM TO
    perm old>new old>new ...
"""

from __future__ import annotations

from dataclasses import dataclass

from .tree import BadLabelError, LabelledTree, TreeError, UnknownLabelError, _check_label

__all__ = [
    "LinkCutOp",
    "Permutation",
    "OperationSequence",
    "OperationError",
    "WrongParentError",
    "DescendantTargetError",
    "apply_linkcut",
    "apply_permutation",
    "replay_sequence",
    "parse_script",
    "format_script",
]


class OperationError(TreeError):
    """An operation cannot be applied to the given tree."""


class WrongParentError(OperationError):
    pass


class DescendantTargetError(OperationError):
    pass


@dataclass(frozen=True)
class LinkCutOp:
    """Move ``child`` from parent ``source`` to new parent ``target``."""

    child: str
    source: str
    target: str

    def __post_init__(self):
        for label in (self.child, self.source, self.target):
            _check_label(label)
        if len({self.child, self.source, self.target}) != 3:
            raise BadLabelError(
                f"move needs three distinct labels, got "
                f"({self.child!r}, {self.source!r}, {self.target!r})"
            )

    def inverse(self):
        return LinkCutOp(self.child, self.target, self.source)

    def relabelled(self, pi):
        """The equivalent move after permutation ``pi`` has been applied."""
        return LinkCutOp(pi(self.child), pi(self.source), pi(self.target))

    def __str__(self):
        return f"move {self.child} {self.source} {self.target}"


class Permutation:
    """A label bijection stored sparsely: only moved labels appear.

    The stored mapping must permute its own support (keys and values are
    the same set) and contain no fixed points.  ``size`` is the number of
    moved labels.
    """

    __slots__ = ("_map",)

    def __init__(self, mapping=()):
        mapping = dict(mapping)
        for old, new in mapping.items():
            _check_label(old)
            _check_label(new)
            if old == new:
                raise BadLabelError(f"permutation stores fixed point {old!r}")
        if set(mapping) != set(mapping.values()):
            raise BadLabelError(
                "permutation mapping must be a bijection on its own support"
            )
        self._map = mapping

    @property
    def mapping(self):
        return dict(self._map)

    @property
    def support(self):
        return frozenset(self._map)

    @property
    def size(self):
        return len(self._map)

    def __call__(self, label):
        return self._map.get(label, label)

    def __bool__(self):
        return bool(self._map)

    def inverse(self):
        return Permutation({new: old for old, new in self._map.items()})

    def then(self, other):
        """Composition: apply ``self`` first, ``other`` second."""
        support = set(self._map) | set(other._map)
        combined = {}
        for label in support:
            image = other(self(label))
            if image != label:
                combined[label] = image
        return Permutation(combined)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._map == other._map

    def __hash__(self):
        return hash(frozenset(self._map.items()))

    def __repr__(self):
        inner = ", ".join(f"{o}>{n}" for o, n in sorted(self._map.items()))
        return f"Permutation({{{inner}}})"

    def __str__(self):
        pairs = " ".join(f"{o}>{n}" for o, n in sorted(self._map.items()))
        return f"perm {pairs}" if pairs else "perm"


@dataclass(frozen=True)
class OperationSequence:
    """Ordered sequence of moves and permutations."""

    ops: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        for op in self.ops:
            if not isinstance(op, (LinkCutOp, Permutation)):
                raise TypeError(f"not an operation: {op!r}")

    def __iter__(self):
        return iter(self.ops)

    def __len__(self):
        return len(self.ops)

    def __str__(self):
        return format_script(self)


def apply_linkcut(tree, op):
    """Apply one link-and-cut move, returning a new tree.

    The move is valid only if ``op.source`` is the current parent of
    ``op.child`` and ``op.target`` is not a descendant of ``op.child``.
    """
    for label in (op.child, op.source, op.target):
        if label not in tree:
            raise UnknownLabelError(f"no vertex labelled {label!r}")
    if tree.parent(op.child) != op.source:
        raise WrongParentError(
            f"cannot apply {op}: parent of {op.child!r} is "
            f"{tree.parent(op.child)!r}, not {op.source!r}"
        )
    if op.target == op.child or tree.is_descendant(op.target, op.child):
        raise DescendantTargetError(
            f"cannot apply {op}: {op.target!r} is a descendant of {op.child!r}"
        )
    parent = tree.parent_map()
    parent[op.child] = op.target
    return LabelledTree(parent)


def apply_permutation(tree, pi):
    """Relabel vertices by ``pi``, returning a new (isomorphic) tree."""
    missing = pi.support - set(tree.labels)
    if missing:
        raise UnknownLabelError(f"permutation moves unknown labels {sorted(missing)!r}")
    if not pi:
        return tree
    parent = {}
    for label, par in tree.parent_map().items():
        parent[pi(label)] = None if par is None else pi(par)
    return LabelledTree(parent)


def replay_sequence(tree, seq):
    """Apply every operation of ``seq`` in order, validating each one."""
    for op in seq:
        if isinstance(op, LinkCutOp):
            tree = apply_linkcut(tree, op)
        else:
            tree = apply_permutation(tree, op)
    return tree


def parse_script(text):
    """Parse the one-operation-per-line script format."""
    ops = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        kind, args = fields[0], fields[1:]
        if kind == "move":
            if len(args) != 3:
                raise TreeError(f"line {lineno}: move needs CHILD FROM TO: {line!r}")
            ops.append(LinkCutOp(*args))
        elif kind == "perm":
            mapping = {}
            for pair in args:
                old, sep, new = pair.partition(">")
                if not sep or not old or not new:
                    raise TreeError(f"line {lineno}: bad pair {pair!r} (want old>new)")
                if old in mapping:
                    raise TreeError(f"line {lineno}: label {old!r} mapped twice")
                mapping[old] = new
            ops.append(Permutation(mapping))
        else:
            raise TreeError(f"line {lineno}: unknown operation {kind!r}")
    return OperationSequence(tuple(ops))


def format_script(seq):
    """Render a sequence in the script text format (one op per line)."""
    return "\n".join(str(op) for op in seq)
