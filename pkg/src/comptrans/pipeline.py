"""Semantic analysis, semantic generation, and end-to-end translation.

The semantic component acts as the interlingua: analysis maps a source
derivation tree to all of its semantic derivation trees, generation maps a
semantic derivation tree to all target syntactic derivation trees, and only
then are the candidates filtered for CFG-well-formedness. All stages preserve
tree geometry, and every stage output is fully materialized so a trace can be
inspected.
"""

import itertools
from dataclasses import dataclass

from .errors import UnknownNameError
from .model import CompositionalGrammar, GrammarPair
from .parsing import morsynan, morsyngen
from .trees import (
    SemLeaf,
    SemNode,
    SemTree,
    SynLeaf,
    SynNode,
    SynTree,
    enumerate_syn_trees,
    is_cfg_well_formed,
    is_sem_well_typed,
    tree_depth,
    tree_key,
)


def seman(g: CompositionalGrammar, t: SynTree) -> list[SemTree]:
    """All semantic derivation trees of ``t``: interpret each node every way.

    Output trees share the geometry of ``t``; the result is never empty
    because interpretation sets are non-empty by construction.
    """
    if isinstance(t, SynLeaf):
        b = g.basic_by_name.get(t.basic)
        if b is None:
            raise UnknownNameError(f"grammar '{g.name}' has no basic expression '{t.basic}'")
        return [SemLeaf(m) for m in b.meanings]
    r = g.rule_by_name.get(t.rule)
    if r is None:
        raise UnknownNameError(f"grammar '{g.name}' has no rule '{t.rule}'")
    child_sets = [seman(g, c) for c in t.children]
    out = [
        SemNode(m, combo)
        for m in r.meanings
        for combo in itertools.product(*child_sets)
    ]
    out.sort(key=tree_key)
    return out


def semgen(g: CompositionalGrammar, d: SemTree) -> list[SynTree]:
    """All syntactic derivation trees of ``g`` that analyze to ``d``.

    Candidates may be ill-formed; well-formedness is checked downstream. An
    empty result is a legal value and signals incompleteness of ``g`` for
    ``d``, not a failure.
    """
    sc = g.semantics
    if isinstance(d, SemLeaf):
        if d.meaning not in sc.meaning_by_name:
            raise UnknownNameError(f"semantic component '{sc.name}' has no basic meaning '{d.meaning}'")
        return [SynLeaf(b.name) for b in g.basics_with_meaning[d.meaning]]
    if d.rule not in sc.rule_by_name:
        raise UnknownNameError(f"semantic component '{sc.name}' has no semantic rule '{d.rule}'")
    child_sets = [semgen(g, c) for c in d.children]
    out = [
        SynNode(r.name, combo)
        for r in g.rules_with_meaning[d.rule]
        for combo in itertools.product(*child_sets)
    ]
    out.sort(key=tree_key)
    return out


@dataclass(frozen=True)
class TranslationTrace:
    """Every intermediate set of one translation run.

    ``sem_trees`` pairs each semantic derivation tree with its
    well-typedness, ``target_trees`` pairs each candidate with its
    CFG-well-formedness; ``target_utterances`` are generated from exactly the
    well-formed target trees, deduplicated, in canonical order.
    """

    source_utterance: tuple[str, ...]
    source_trees: tuple[SynTree, ...]
    sem_trees: tuple[tuple[SemTree, bool], ...]
    target_trees: tuple[tuple[SynTree, bool], ...]
    target_utterances: tuple[tuple[str, ...], ...]


def translate(pair: GrammarPair, utterance, max_trees: int | None = None) -> TranslationTrace:
    """Compositional translation: analyze, interpret, generate, filter, render."""
    tokens = tuple(utterance)
    source_trees = morsynan(pair.source, tokens, max_trees=max_trees)

    sem_trees = sorted(
        {d for t in source_trees for d in seman(pair.source, t)}, key=tree_key
    )
    sem_flagged = tuple((d, is_sem_well_typed(pair.source.semantics, d)) for d in sem_trees)

    target_trees = sorted(
        {t2 for d in sem_trees for t2 in semgen(pair.target, d)}, key=tree_key
    )
    target_flagged = tuple((t2, is_cfg_well_formed(pair.target, t2)) for t2 in target_trees)

    utterances = sorted({morsyngen(pair.target, t2) for t2, ok in target_flagged if ok})
    return TranslationTrace(
        source_utterance=tokens,
        source_trees=tuple(source_trees),
        sem_trees=sem_flagged,
        target_trees=target_flagged,
        target_utterances=tuple(utterances),
    )


def translate_sem(pair: GrammarPair, d: SemTree) -> list[tuple[str, ...]]:
    """Target utterances for one semantic derivation tree.

    Empty output is an incompleteness witness for ``d``, not an error.
    """
    out = {
        morsyngen(pair.target, t)
        for t in semgen(pair.target, d)
        if is_cfg_well_formed(pair.target, t)
    }
    return sorted(out)


def well_formed_sem_trees(g: CompositionalGrammar, max_depth: int) -> list[SemTree]:
    """All well-formed semantic derivation trees of ``g`` up to ``max_depth``.

    Well-formedness here is the correspondence sense: some CFG-well-formed
    derivation tree of ``g`` analyzes to the semantic tree. Analysis
    preserves depth, so enumerating syntactic trees to the same bound is
    exhaustive.
    """
    out: set[SemTree] = set()
    for cat in sorted(set(g.categories)):
        for t in enumerate_syn_trees(g, cat, max_depth):
            out.update(seman(g, t))
    return sorted(out, key=lambda d: (tree_depth(d), tree_key(d)))


def is_well_formed_sem_tree(g: CompositionalGrammar, d: SemTree) -> bool:
    """Correspondence-based well-formedness of one semantic derivation tree."""
    return d in set(well_formed_sem_trees(g, tree_depth(d)))
