"""Syntactic and semantic derivation trees.

Trees record derivational history only; the node types deliberately admit
ill-formed trees (wrong child count, mismatched categories). Well-formedness
is a separate check, and generation stages downstream rely on being able to
build ill-formed candidates first and filter later.

Canonical order everywhere is lexicographic by node name, then recursively by
children (:func:`tree_key`); enumeration output, reports, and serialized sets
all follow it so runs are reproducible.
"""

import itertools
import random
import re
from dataclasses import dataclass

from .errors import ComptransError, UnknownNameError
from .model import CompositionalGrammar, SemanticComponent


@dataclass(frozen=True)
class SynLeaf:
    basic: str


@dataclass(frozen=True)
class SynNode:
    rule: str
    children: tuple["SynTree", ...]


SynTree = SynLeaf | SynNode


@dataclass(frozen=True)
class SemLeaf:
    meaning: str


@dataclass(frozen=True)
class SemNode:
    rule: str
    children: tuple["SemTree", ...]


SemTree = SemLeaf | SemNode

Tree = SynTree | SemTree


def tree_name(t: Tree) -> str:
    if isinstance(t, SynLeaf):
        return t.basic
    if isinstance(t, SemLeaf):
        return t.meaning
    return t.rule


def tree_children(t: Tree) -> tuple:
    return () if isinstance(t, (SynLeaf, SemLeaf)) else t.children


def tree_key(t: Tree):
    """Sort key realizing the canonical order."""
    return (tree_name(t), tuple(tree_key(c) for c in tree_children(t)))


def tree_depth(t: Tree) -> int:
    """Depth with leaves at 1."""
    return 1 + max((tree_depth(c) for c in tree_children(t)), default=0)


def syn_cat(g: CompositionalGrammar, t: SynTree) -> str:
    """Category of a syntactic tree: read off the leaf or the top rule only."""
    if isinstance(t, SynLeaf):
        b = g.basic_by_name.get(t.basic)
        if b is None:
            raise UnknownNameError(f"grammar '{g.name}' has no basic expression '{t.basic}'")
        return b.category
    r = g.rule_by_name.get(t.rule)
    if r is None:
        raise UnknownNameError(f"grammar '{g.name}' has no rule '{t.rule}'")
    return r.result


def sem_cat(sc: SemanticComponent, d: SemTree) -> str:
    """Category of a semantic tree, analogous to :func:`syn_cat`."""
    if isinstance(d, SemLeaf):
        m = sc.meaning_by_name.get(d.meaning)
        if m is None:
            raise UnknownNameError(f"semantic component '{sc.name}' has no basic meaning '{d.meaning}'")
        return m.category
    r = sc.rule_by_name.get(d.rule)
    if r is None:
        raise UnknownNameError(f"semantic component '{sc.name}' has no semantic rule '{d.rule}'")
    return r.result


def is_cfg_well_formed(g: CompositionalGrammar, t: SynTree) -> bool:
    """True iff every rule node's argument list equals its children's categories."""
    if isinstance(t, SynLeaf):
        syn_cat(g, t)  # raises on unknown name
        return True
    r = g.rule_by_name.get(t.rule)
    if r is None:
        raise UnknownNameError(f"grammar '{g.name}' has no rule '{t.rule}'")
    if len(t.children) != r.arity:
        for c in t.children:
            syn_cat(g, c)
        return False
    return all(syn_cat(g, c) == cat for c, cat in zip(t.children, r.arg_list)) and all(
        is_cfg_well_formed(g, c) for c in t.children
    )


def is_sem_well_typed(sc: SemanticComponent, d: SemTree) -> bool:
    """True iff every rule node's argument list equals its children's categories."""
    if isinstance(d, SemLeaf):
        sem_cat(sc, d)
        return True
    r = sc.rule_by_name.get(d.rule)
    if r is None:
        raise UnknownNameError(f"semantic component '{sc.name}' has no semantic rule '{d.rule}'")
    if len(d.children) != r.arity:
        for c in d.children:
            sem_cat(sc, c)
        return False
    return all(sem_cat(sc, c) == cat for c, cat in zip(d.children, r.arg_list)) and all(
        is_sem_well_typed(sc, c) for c in d.children
    )


# -- enumeration ------------------------------------------------------------
#
# One engine serves both tree kinds; the *_view functions adapt a grammar or
# a semantic component to (leaves per category, rules per category,
# constructors).


def _syn_view(g: CompositionalGrammar):
    leaves = {c: tuple(sorted(b.name for b in bs)) for c, bs in g.basics_by_category.items()}
    rules = {
        c: tuple(sorted((r.name, r.arg_list) for r in rs)) for c, rs in g.rules_by_result.items()
    }
    return leaves, rules, SynLeaf, SynNode


def _sem_view(sc: SemanticComponent):
    leaves = {c: tuple(sorted(m.name for m in ms)) for c, ms in sc.meanings_by_category.items()}
    rules = {
        c: tuple(sorted((r.name, r.arg_list) for r in rs)) for c, rs in sc.rules_by_result.items()
    }
    return leaves, rules, SemLeaf, SemNode


def _check_cat(cat: str, leaves: dict, owner: str) -> None:
    if cat not in leaves:
        raise UnknownNameError(f"{owner} declares no category '{cat}'")


def _enumerate(view, cat: str, max_depth: int) -> list:
    leaves, rules, make_leaf, make_node = view
    if max_depth < 1:
        raise ComptransError(f"max_depth must be >= 1, got {max_depth}")
    memo: dict[tuple[str, int], list] = {}

    def trees(c: str, depth: int) -> list:
        key = (c, depth)
        got = memo.get(key)
        if got is not None:
            return got
        out = [make_leaf(n) for n in leaves[c]]
        if depth >= 2:
            for name, args in rules[c]:
                for combo in itertools.product(*(trees(a, depth - 1) for a in args)):
                    out.append(make_node(name, combo))
        out.sort(key=tree_key)
        memo[key] = out
        return out

    return trees(cat, max_depth)


def enumerate_syn_trees(g: CompositionalGrammar, cat: str, max_depth: int) -> list[SynTree]:
    """All CFG-well-formed trees of ``cat`` with depth <= ``max_depth``, canonical order."""
    view = _syn_view(g)
    _check_cat(cat, view[0], f"grammar '{g.name}'")
    return _enumerate(view, cat, max_depth)


def enumerate_sem_trees(sc: SemanticComponent, cat: str, max_depth: int) -> list[SemTree]:
    """All well-typed trees of ``cat`` with depth <= ``max_depth``, canonical order."""
    view = _sem_view(sc)
    _check_cat(cat, view[0], f"semantic component '{sc.name}'")
    return _enumerate(view, cat, max_depth)


def _min_depths(view) -> dict[str, int | None]:
    leaves, rules, _, _ = view
    md: dict[str, int | None] = {c: (1 if leaves[c] else None) for c in leaves}
    changed = True
    while changed:
        changed = False
        for c in md:
            for _, args in rules[c]:
                if all(md[a] is not None for a in args):
                    cand = 1 + max(md[a] for a in args)
                    if md[c] is None or cand < md[c]:
                        md[c] = cand
                        changed = True
    return md


def random_sem_tree(sc: SemanticComponent, cat: str, max_depth: int, seed: int) -> SemTree | None:
    """One well-typed tree of ``cat`` with depth <= ``max_depth``, or None.

    Deterministic for a given seed; every returned tree is a member of
    ``enumerate_sem_trees(sc, cat, max_depth)``.
    """
    view = _sem_view(sc)
    leaves, rules, make_leaf, make_node = view
    _check_cat(cat, leaves, f"semantic component '{sc.name}'")
    md = _min_depths(view)
    if md[cat] is None or md[cat] > max_depth:
        return None
    rng = random.Random(seed)

    def grow(c: str, budget: int) -> SemTree:
        options: list[tuple[str, tuple[str, ...] | None]] = [(n, None) for n in leaves[c]]
        if budget >= 2:
            for name, args in rules[c]:
                if all(md[a] is not None and md[a] <= budget - 1 for a in args):
                    options.append((name, args))
        name, args = rng.choice(options)
        if args is None:
            return make_leaf(name)
        return make_node(name, tuple(grow(a, budget - 1) for a in args))

    return grow(cat, max_depth)


# -- serialization ----------------------------------------------------------
#
# Text form: a leaf is its bare name, a node is ``Name(child, child)``.
# JSON form: ``{"basic": n}`` / ``{"meaning": n}`` for leaves and
# ``{"rule": n, "children": [...]}`` for nodes. Round-trips are exact.

_TREE_TOKEN_RE = re.compile(r"[(),]|[^\s(),]+")


def format_tree(t: Tree) -> str:
    if isinstance(t, (SynLeaf, SemLeaf)):
        return tree_name(t)
    return f"{tree_name(t)}({', '.join(format_tree(c) for c in tree_children(t))})"


def _parse_tree(text: str, make_leaf, make_node):
    tokens = _TREE_TOKEN_RE.findall(text)
    pos = 0

    def fail(why: str):
        raise ComptransError(f"cannot parse tree text ({why}): {text!r}")

    def parse():
        nonlocal pos
        if pos >= len(tokens):
            fail("unexpected end")
        name = tokens[pos]
        if name in "(),":
            fail(f"unexpected '{name}'")
        pos += 1
        if pos < len(tokens) and tokens[pos] == "(":
            pos += 1
            children = []
            if pos < len(tokens) and tokens[pos] == ")":
                pos += 1
                return make_node(name, ())
            while True:
                children.append(parse())
                if pos >= len(tokens):
                    fail("missing ')'")
                tok = tokens[pos]
                pos += 1
                if tok == ")":
                    return make_node(name, tuple(children))
                if tok != ",":
                    fail(f"expected ',' or ')', found '{tok}'")
        return make_leaf(name)

    result = parse()
    if pos != len(tokens):
        fail(f"trailing tokens after tree: {tokens[pos:]}")
    return result


def parse_syn_tree(text: str) -> SynTree:
    return _parse_tree(text, SynLeaf, SynNode)


def parse_sem_tree(text: str) -> SemTree:
    return _parse_tree(text, SemLeaf, SemNode)


def tree_to_json(t: Tree) -> dict:
    if isinstance(t, SynLeaf):
        return {"basic": t.basic}
    if isinstance(t, SemLeaf):
        return {"meaning": t.meaning}
    return {"rule": tree_name(t), "children": [tree_to_json(c) for c in tree_children(t)]}


def _tree_from_json(obj, leaf_field: str, make_leaf, make_node):
    if not isinstance(obj, dict):
        raise ComptransError(f"tree JSON must be an object, got {type(obj).__name__}")
    if leaf_field in obj:
        return make_leaf(obj[leaf_field])
    if "rule" in obj:
        children = obj.get("children", [])
        return make_node(
            obj["rule"],
            tuple(_tree_from_json(c, leaf_field, make_leaf, make_node) for c in children),
        )
    raise ComptransError(f"tree JSON needs a '{leaf_field}' or 'rule' key: {obj!r}")


def syn_tree_from_json(obj) -> SynTree:
    return _tree_from_json(obj, "basic", SynLeaf, SynNode)


def sem_tree_from_json(obj) -> SemTree:
    return _tree_from_json(obj, "meaning", SemLeaf, SemNode)
