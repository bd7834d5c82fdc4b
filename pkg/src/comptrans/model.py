"""Data model for CFG-based compositional grammars and their shared semantics.

A compositional grammar couples a syntactic component (basic expressions and
syntactic rules over syntactic categories) with an interpretation into a
semantic component (basic meanings and semantic rules over semantic
categories). All values are immutable after construction and safe to share
between threads; every invariant is enforced by :func:`validate_grammar` /
:func:`validate_semantics`, which the file loader calls on everything it
returns.
"""

from dataclasses import dataclass
from functools import cached_property

from .errors import GrammarValidationError, SemanticsMismatchError

#: A surface template is a tuple of items; ``str`` items are literal terminal
#: tokens, ``int`` items are 1-based argument placeholders.
TemplateItem = str | int


@dataclass(frozen=True)
class BasicMeaning:
    """An uninterpreted semantic atom with a semantic category."""

    name: str
    category: str


@dataclass(frozen=True)
class SemRule:
    """A named, typed, uninterpreted operator over meanings."""

    name: str
    arg_list: tuple[str, ...]
    result: str

    @property
    def arity(self) -> int:
        return len(self.arg_list)


@dataclass(frozen=True)
class SemanticComponent:
    """The interlingua: semantic categories, basic meanings, semantic rules."""

    name: str
    categories: tuple[str, ...]
    meanings: tuple[BasicMeaning, ...]
    rules: tuple[SemRule, ...]

    @cached_property
    def meaning_by_name(self) -> dict[str, BasicMeaning]:
        return {m.name: m for m in self.meanings}

    @cached_property
    def rule_by_name(self) -> dict[str, SemRule]:
        return {r.name: r for r in self.rules}

    @cached_property
    def meanings_by_category(self) -> dict[str, tuple[BasicMeaning, ...]]:
        out: dict[str, list[BasicMeaning]] = {c: [] for c in self.categories}
        for m in self.meanings:
            out[m.category].append(m)
        return {c: tuple(ms) for c, ms in out.items()}

    @cached_property
    def rules_by_result(self) -> dict[str, tuple[SemRule, ...]]:
        out: dict[str, list[SemRule]] = {c: [] for c in self.categories}
        for r in self.rules:
            out[r.result].append(r)
        return {c: tuple(rs) for c, rs in out.items()}


@dataclass(frozen=True)
class BasicExpression:
    """A lexical entry: a surface token sequence with a set of meanings."""

    name: str
    category: str
    surface: tuple[str, ...]
    meanings: tuple[str, ...]  # sorted, non-empty


@dataclass(frozen=True)
class SyntacticRule:
    """A named total operation combining typed expressions.

    ``template`` spells out the produced surface: terminals are emitted
    verbatim, placeholder ``i`` is replaced by the utterance of argument
    ``i``. Placeholders may appear in any order relative to ``arg_list``
    (word-order differences) and terminals may be introduced that come from
    no argument (syncategorematic material).
    """

    name: str
    arg_list: tuple[str, ...]
    result: str
    template: tuple[TemplateItem, ...]
    meanings: tuple[str, ...]  # associated semantic rule names, sorted, non-empty

    @property
    def arity(self) -> int:
        return len(self.arg_list)


@dataclass(frozen=True)
class CompositionalGrammar:
    """A syntactic component plus its interpretation into shared semantics."""

    name: str
    categories: tuple[str, ...]
    basics: tuple[BasicExpression, ...]
    rules: tuple[SyntacticRule, ...]
    semantics: SemanticComponent

    @cached_property
    def basic_by_name(self) -> dict[str, BasicExpression]:
        return {b.name: b for b in self.basics}

    @cached_property
    def rule_by_name(self) -> dict[str, SyntacticRule]:
        return {r.name: r for r in self.rules}

    @cached_property
    def basics_by_category(self) -> dict[str, tuple[BasicExpression, ...]]:
        out: dict[str, list[BasicExpression]] = {c: [] for c in self.categories}
        for b in self.basics:
            out[b.category].append(b)
        return {c: tuple(bs) for c, bs in out.items()}

    @cached_property
    def rules_by_result(self) -> dict[str, tuple[SyntacticRule, ...]]:
        out: dict[str, list[SyntacticRule]] = {c: [] for c in self.categories}
        for r in self.rules:
            out[r.result].append(r)
        return {c: tuple(rs) for c, rs in out.items()}

    @cached_property
    def basics_with_meaning(self) -> dict[str, tuple[BasicExpression, ...]]:
        """Basic meaning name -> basic expressions carrying it."""
        out: dict[str, list[BasicExpression]] = {m.name: [] for m in self.semantics.meanings}
        for b in self.basics:
            for m in b.meanings:
                out[m].append(b)
        return {m: tuple(bs) for m, bs in out.items()}

    @cached_property
    def rules_with_meaning(self) -> dict[str, tuple[SyntacticRule, ...]]:
        """Semantic rule name -> syntactic rules carrying it."""
        out: dict[str, list[SyntacticRule]] = {r.name: [] for r in self.semantics.rules}
        for r in self.rules:
            for m in r.meanings:
                out[m].append(r)
        return {m: tuple(rs) for m, rs in out.items()}


@dataclass(frozen=True)
class GrammarPair:
    """A source/target grammar pair communicating through one interlingua."""

    source: CompositionalGrammar
    target: CompositionalGrammar


def _dup(kind: str, names) -> None:
    seen = set()
    for n in names:
        if n in seen:
            raise GrammarValidationError(f"duplicate {kind} '{n}'")
        seen.add(n)


def validate_semantics(sc: SemanticComponent) -> SemanticComponent:
    """Check all semantic-component invariants; return ``sc`` unchanged."""
    _dup("semantic category", sc.categories)
    _dup("basic meaning", (m.name for m in sc.meanings))
    _dup("semantic rule", (r.name for r in sc.rules))
    cats = set(sc.categories)
    for m in sc.meanings:
        if m.category not in cats:
            raise GrammarValidationError(
                f"basic meaning '{m.name}' uses undeclared semantic category '{m.category}'"
            )
    for r in sc.rules:
        if r.arity < 1:
            raise GrammarValidationError(
                f"semantic rule '{r.name}' has arity 0; nullary combiners must be basic meanings"
            )
        for c in (*r.arg_list, r.result):
            if c not in cats:
                raise GrammarValidationError(
                    f"semantic rule '{r.name}' uses undeclared semantic category '{c}'"
                )
    return sc


def _check_template(rule: SyntacticRule) -> None:
    placeholders = [item for item in rule.template if isinstance(item, int)]
    for i in placeholders:
        if not 1 <= i <= rule.arity:
            raise GrammarValidationError(
                f"rule '{rule.name}': placeholder ${i} out of range for arity {rule.arity}"
            )
    for i in range(1, rule.arity + 1):
        n = placeholders.count(i)
        if n == 0:
            raise GrammarValidationError(f"rule '{rule.name}': placeholder ${i} missing from template")
        if n > 1:
            raise GrammarValidationError(f"rule '{rule.name}': placeholder ${i} appears {n} times in template")


def _check_unary_cycles(g: CompositionalGrammar) -> None:
    # Rules whose template is a bare placeholder derive a category from
    # another category over the identical token span; a cycle of them gives
    # some utterance infinitely many derivation trees.
    edges: dict[str, list[tuple[str, str]]] = {}
    for r in g.rules:
        if len(r.template) == 1 and isinstance(r.template[0], int):
            edges.setdefault(r.result, []).append((r.arg_list[0], r.name))
    color: dict[str, int] = {}  # 0 on stack, 1 done

    def visit(cat: str, path: list[str]) -> None:
        color[cat] = 0
        for nxt, rule_name in edges.get(cat, ()):
            if color.get(nxt) == 0:
                cycle = path[path.index(nxt):] if nxt in path else path
                raise GrammarValidationError(
                    "unary terminal-free rule cycle through categories "
                    + " -> ".join([*cycle, nxt])
                    + f" (rule '{rule_name}')"
                )
            if nxt not in color:
                visit(nxt, path + [nxt])
        color[cat] = 1

    for cat in edges:
        if cat not in color:
            visit(cat, [cat])


def validate_grammar(g: CompositionalGrammar) -> CompositionalGrammar:
    """Check all grammar invariants; return ``g`` unchanged."""
    validate_semantics(g.semantics)
    _dup("syntactic category", g.categories)
    _dup("name", (x.name for x in (*g.basics, *g.rules)))
    cats = set(g.categories)
    sc = g.semantics
    for b in g.basics:
        if b.category not in cats:
            raise GrammarValidationError(
                f"basic expression '{b.name}' uses undeclared category '{b.category}'"
            )
        if not b.surface:
            raise GrammarValidationError(f"basic expression '{b.name}' has an empty surface")
        if not b.meanings:
            raise GrammarValidationError(f"basic expression '{b.name}' has no meanings")
        for m in b.meanings:
            if m not in sc.meaning_by_name:
                raise GrammarValidationError(
                    f"basic expression '{b.name}' refers to unknown basic meaning '{m}'"
                )
    for r in g.rules:
        if r.arity < 1:
            raise GrammarValidationError(
                f"rule '{r.name}' has arity 0; zero-argument constructs must be basic expressions"
            )
        for c in (*r.arg_list, r.result):
            if c not in cats:
                raise GrammarValidationError(f"rule '{r.name}' uses undeclared category '{c}'")
        _check_template(r)
        if not r.meanings:
            raise GrammarValidationError(f"rule '{r.name}' has no associated semantic rules")
        for m in r.meanings:
            sem = sc.rule_by_name.get(m)
            if sem is None:
                raise GrammarValidationError(f"rule '{r.name}' refers to unknown semantic rule '{m}'")
            if sem.arity != r.arity:
                raise GrammarValidationError(
                    f"rule '{r.name}' has arity {r.arity} but associated semantic rule "
                    f"'{m}' has arity {sem.arity}"
                )
    _check_unary_cycles(g)
    return g


def validate_pair(source: CompositionalGrammar, target: CompositionalGrammar) -> GrammarPair:
    """Pair two grammars, requiring one identical semantic component."""
    if source.semantics != target.semantics:
        if source.semantics.name != target.semantics.name:
            raise SemanticsMismatchError(
                f"grammars '{source.name}' and '{target.name}' use different semantic "
                f"components ('{source.semantics.name}' vs '{target.semantics.name}')"
            )
        raise SemanticsMismatchError(
            f"grammars '{source.name}' and '{target.name}' both name semantic component "
            f"'{source.semantics.name}' but the declarations differ"
        )
    return GrammarPair(source=source, target=target)
