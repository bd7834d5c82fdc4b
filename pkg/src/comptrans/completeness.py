"""Static completeness checkers and the bounded incompleteness witness search.

The checks answer one question from different angles: given a grammar pair,
is every well-formed source semantic derivation tree guaranteed at least one
well-formed target utterance?

* ``check_homomorphism`` is the necessary condition: every source basic
  meaning and semantic rule has a target counterpart.
* ``check_n1_completeness`` adds the strongest category discipline: one
  target syntactic category per semantic category, inferred from the target
  grammar's own interpretation links.
* ``check_nn_completeness`` relaxes that to category correspondence sets with
  conjunctive/disjunctive labels and checks coverage of every disjunctive
  argument tuple.
* ``validate_labels`` refutes (up to a depth bound) conjunctive labels the
  target grammar cannot honor.
* ``find_incompleteness_witness`` is the ground truth at bounded depth: an
  exhaustive search for a well-formed source semantic derivation tree with no
  translation.

A passing static check is a proof (for n1) or proof-shaped evidence (for nn,
whose labels are validated only up to a bound); a witness is always a real
counterexample.
"""

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

from .errors import CorrespondenceError, TupleCapError
from .model import CompositionalGrammar, GrammarPair
from .pipeline import semgen, translate_sem, well_formed_sem_trees
from .trees import SemTree, enumerate_sem_trees, format_tree, is_cfg_well_formed, syn_cat

CONJUNCTIVE = "conjunctive"
DISJUNCTIVE = "disjunctive"

DEFAULT_TUPLE_CAP = 10**6
DEFAULT_LABEL_DEPTH = 6


@dataclass(frozen=True)
class CorrespondenceEntry:
    """One semantic category's target categories and its label."""

    categories: tuple[str, ...]  # sorted, non-empty
    label: str  # CONJUNCTIVE or DISJUNCTIVE


@dataclass(frozen=True)
class CategoryCorrespondence:
    """Map from semantic categories to sets of target syntactic categories."""

    entries: tuple[tuple[str, CorrespondenceEntry], ...]  # sorted by category

    @cached_property
    def by_category(self) -> dict[str, CorrespondenceEntry]:
        return dict(self.entries)

    def categories_for(self, sem_cat: str) -> tuple[str, ...]:
        entry = self.by_category.get(sem_cat)
        if entry is None:
            raise CorrespondenceError(f"no correspondence declared for semantic category '{sem_cat}'")
        return entry.categories

    def label_for(self, sem_cat: str) -> str:
        entry = self.by_category.get(sem_cat)
        if entry is None:
            raise CorrespondenceError(f"no correspondence declared for semantic category '{sem_cat}'")
        return entry.label


def n1_correspondence(mapping: dict[str, str]) -> CategoryCorrespondence:
    """Wrap a one-to-one category map as singleton, conjunctive sets."""
    return CategoryCorrespondence(
        tuple(
            (sem_cat, CorrespondenceEntry((syn_cat,), CONJUNCTIVE))
            for sem_cat, syn_cat in sorted(mapping.items())
        )
    )


@dataclass(frozen=True)
class Violation:
    """One itemized reason a check failed."""

    kind: str
    message: str
    source: str | None = None      # offending source-grammar basic or rule
    meaning: str | None = None     # basic meaning involved
    rule: str | None = None        # semantic rule involved
    category: str | None = None    # category involved
    arg_tuple: tuple[str, ...] | None = None  # disjunctive-position tuple
    sem_tree: SemTree | None = None


@dataclass(frozen=True)
class CompletenessReport:
    """Verdict plus itemized violations (and, for searches, a witness)."""

    condition: str  # homomorphism | n1 | nn | labels | witness-search
    violations: tuple[Violation, ...] = ()
    witness: SemTree | None = None
    subreports: tuple["CompletenessReport", ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations and self.witness is None

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


def _type_notation(arg_list, result) -> str:
    return f"⟨⟨{','.join(arg_list)}⟩,{result}⟩"


def check_homomorphism(pair: GrammarPair) -> CompletenessReport:
    """Every source basic meaning and semantic rule must have a target carrier."""
    src, tgt = pair.source, pair.target
    violations: list[Violation] = []
    for b in sorted(src.basics, key=lambda x: x.name):
        for m in b.meanings:
            if not tgt.basics_with_meaning[m]:
                violations.append(
                    Violation(
                        kind="uncovered-basic-meaning",
                        message=(
                            f"source basic '{b.name}' carries meaning '{m}' but no basic "
                            f"expression of '{tgt.name}' does"
                        ),
                        source=b.name,
                        meaning=m,
                    )
                )
    for r in sorted(src.rules, key=lambda x: x.name):
        for m in r.meanings:
            if not tgt.rules_with_meaning[m]:
                violations.append(
                    Violation(
                        kind="uncovered-semantic-rule",
                        message=(
                            f"source rule '{r.name}' carries semantic rule '{m}' but no rule "
                            f"of '{tgt.name}' does"
                        ),
                        source=r.name,
                        rule=m,
                    )
                )
    return CompletenessReport(condition="homomorphism", violations=tuple(violations))


def _solve_n1(target: CompositionalGrammar) -> tuple[dict[str, str] | None, list[Violation]]:
    """Propagate every interpretation link into a category map, or explain why none exists."""
    sc = target.semantics
    demands: dict[str, tuple[str, str]] = {}
    violations: list[Violation] = []

    def demand(sem_cat: str, syn_cat: str, why: str) -> None:
        prev = demands.get(sem_cat)
        if prev is None:
            demands[sem_cat] = (syn_cat, why)
        elif prev[0] != syn_cat:
            violations.append(
                Violation(
                    kind="n1-conflict",
                    message=(
                        f"semantic category '{sem_cat}' is constrained to '{prev[0]}' ({prev[1]}) "
                        f"and to '{syn_cat}' ({why})"
                    ),
                    category=sem_cat,
                )
            )

    for b in sorted(target.basics, key=lambda x: x.name):
        for m in b.meanings:
            demand(sc.meaning_by_name[m].category, b.category, f"basic '{b.name}' carries '{m}'")
    for r in sorted(target.rules, key=lambda x: x.name):
        for m in r.meanings:
            sem = sc.rule_by_name[m]
            for i, (sem_arg, syn_arg) in enumerate(zip(sem.arg_list, r.arg_list), start=1):
                demand(sem_arg, syn_arg, f"argument {i} of rule '{r.name}' realizing '{m}'")
            demand(sem.result, r.result, f"result of rule '{r.name}' realizing '{m}'")

    if violations:
        return None, violations

    mapping = {cat: img for cat, (img, _) in demands.items()}
    unconstrained = [c for c in sc.categories if c not in mapping]
    if unconstrained:
        if not target.categories:
            return None, [
                Violation(
                    kind="n1-unconstrained",
                    message=(
                        f"semantic categories {sorted(unconstrained)} are unconstrained and "
                        f"grammar '{target.name}' declares no syntactic category to map them to"
                    ),
                )
            ]
        # no interpretation link mentions these, so any fixed image works
        fallback = min(target.categories)
        for c in unconstrained:
            mapping[c] = fallback
    return mapping, []


def infer_n1_map(target: CompositionalGrammar) -> CategoryCorrespondence | None:
    """The unique one-to-one category correspondence of ``target``, if any."""
    mapping, _ = _solve_n1(target)
    return None if mapping is None else n1_correspondence(mapping)


def check_n1_completeness(pair: GrammarPair) -> CompletenessReport:
    """Completeness via homomorphism plus a one-to-one category correspondence."""
    hom = check_homomorphism(pair)
    _, n1_violations = _solve_n1(pair.target)
    n1 = CompletenessReport(condition="n1", violations=tuple(n1_violations))
    return CompletenessReport(
        condition="n1",
        violations=hom.violations + n1.violations,
        subreports=(hom, n1),
    )


def _require_coverage(pair: GrammarPair, corr: CategoryCorrespondence) -> None:
    sc = pair.source.semantics
    missing = [c for c in sc.categories if c not in corr.by_category]
    if missing:
        raise CorrespondenceError(
            f"correspondence has no entry for semantic categories: {', '.join(sorted(missing))}"
        )
    target_cats = set(pair.target.categories)
    for cat, entry in corr.entries:
        unknown = [c for c in entry.categories if c not in target_cats]
        if unknown:
            raise CorrespondenceError(
                f"correspondence for '{cat}' names categories not declared by grammar "
                f"'{pair.target.name}': {', '.join(unknown)}"
            )


def _nn_typing_violations(pair: GrammarPair, corr: CategoryCorrespondence) -> list[Violation]:
    """The correspondence must be consistent with every target interpretation link."""
    tgt = pair.target
    sc = tgt.semantics
    violations: list[Violation] = []
    for b in sorted(tgt.basics, key=lambda x: x.name):
        for m in b.meanings:
            sem_cat = sc.meaning_by_name[m].category
            if b.category not in corr.categories_for(sem_cat):
                violations.append(
                    Violation(
                        kind="nn-typing-basic",
                        message=(
                            f"target basic '{b.name}' realizes '{m}' at category '{b.category}', "
                            f"which is outside the correspondence set of '{sem_cat}'"
                        ),
                        source=b.name,
                        meaning=m,
                        category=b.category,
                    )
                )
    for r in sorted(tgt.rules, key=lambda x: x.name):
        for m in r.meanings:
            sem = sc.rule_by_name[m]
            for i, (sem_arg, syn_arg) in enumerate(zip(sem.arg_list, r.arg_list), start=1):
                if syn_arg not in corr.categories_for(sem_arg):
                    violations.append(
                        Violation(
                            kind="nn-typing-rule",
                            message=(
                                f"argument {i} of target rule '{r.name}' realizing '{m}' has "
                                f"category '{syn_arg}', outside the correspondence set of '{sem_arg}'"
                            ),
                            source=r.name,
                            rule=m,
                            category=syn_arg,
                        )
                    )
            if r.result not in corr.categories_for(sem.result):
                violations.append(
                    Violation(
                        kind="nn-typing-rule",
                        message=(
                            f"result of target rule '{r.name}' realizing '{m}' has category "
                            f"'{r.result}', outside the correspondence set of '{sem.result}'"
                        ),
                        source=r.name,
                        rule=m,
                        category=r.result,
                    )
                )
    return violations


def _nn_basic_violations(pair: GrammarPair, corr: CategoryCorrespondence) -> list[Violation]:
    tgt = pair.target
    violations: list[Violation] = []
    for m in sorted(tgt.semantics.meanings, key=lambda x: x.name):
        corr_set = corr.categories_for(m.category)
        carriers = {b.category for b in tgt.basics_with_meaning[m.name]}
        if corr.label_for(m.category) == DISJUNCTIVE:
            if not carriers & set(corr_set):
                violations.append(
                    Violation(
                        kind="missing-basic",
                        message=(
                            f"meaning '{m.name}' (disjunctive '{m.category}') has no target basic "
                            f"in any of {{{', '.join(corr_set)}}}"
                        ),
                        meaning=m.name,
                    )
                )
        else:
            for cat in corr_set:
                if cat not in carriers:
                    violations.append(
                        Violation(
                            kind="missing-basic",
                            message=(
                                f"meaning '{m.name}' (conjunctive '{m.category}') has no target "
                                f"basic of category '{cat}'"
                            ),
                            meaning=m.name,
                            category=cat,
                        )
                    )
    return violations


def _nn_rule_violations(
    pair: GrammarPair, corr: CategoryCorrespondence, tuple_cap: int
) -> list[Violation]:
    tgt = pair.target
    violations: list[Violation] = []
    for sem in sorted(tgt.semantics.rules, key=lambda x: x.name):
        labels = [corr.label_for(c) for c in sem.arg_list]
        disj_idx = [i for i, lab in enumerate(labels) if lab == DISJUNCTIVE]
        conj_idx = [i for i, lab in enumerate(labels) if lab == CONJUNCTIVE]
        conj_sets = {i: set(corr.categories_for(sem.arg_list[i])) for i in conj_idx}
        disj_sets = [corr.categories_for(sem.arg_list[i]) for i in disj_idx]
        result_set = corr.categories_for(sem.result)
        result_conj = corr.label_for(sem.result) == CONJUNCTIVE

        n_cases = math.prod(len(s) for s in disj_sets) * (len(result_set) if result_conj else 1)
        if n_cases > tuple_cap:
            raise TupleCapError(
                f"semantic rule '{sem.name}' needs {n_cases} correspondence tuples, "
                f"over the cap of {tuple_cap}",
                tuple_cap,
            )

        candidates = tgt.rules_with_meaning[sem.name]

        def matches(rule, tup, required_result):
            for pos, i in enumerate(disj_idx):
                if rule.arg_list[i] != tup[pos]:
                    return False
            for i in conj_idx:
                if rule.arg_list[i] not in conj_sets[i]:
                    return False
            if required_result is None:
                return rule.result in result_set
            return rule.result == required_result

        for tup in itertools.product(*disj_sets):
            required = list(result_set) if result_conj else [None]
            for req in required:
                if not any(matches(r, tup, req) for r in candidates):
                    shown = req if req is not None else f"any of {{{', '.join(result_set)}}}"
                    violations.append(
                        Violation(
                            kind="missing-rule",
                            message=(
                                f"semantic rule '{sem.name}' : {_type_notation(sem.arg_list, sem.result)}: "
                                f"no target rule carries it with disjunctive argument tuple "
                                f"⟨{','.join(tup)}⟩ and result {shown}"
                            ),
                            rule=sem.name,
                            arg_tuple=tup,
                            category=req,
                        )
                    )
    return violations


def check_nn_completeness(
    pair: GrammarPair,
    corr: CategoryCorrespondence,
    tuple_cap: int = DEFAULT_TUPLE_CAP,
) -> CompletenessReport:
    """Completeness via homomorphism plus a labeled N-N category correspondence.

    The declared labels themselves are only refutable up to a depth bound;
    run :func:`validate_labels` alongside this check.
    """
    _require_coverage(pair, corr)
    hom = check_homomorphism(pair)
    violations = list(hom.violations)
    violations.extend(_nn_typing_violations(pair, corr))
    violations.extend(_nn_basic_violations(pair, corr))
    violations.extend(_nn_rule_violations(pair, corr, tuple_cap))
    return CompletenessReport(condition="nn", violations=tuple(violations), subreports=(hom,))


def validate_labels(
    pair: GrammarPair,
    corr: CategoryCorrespondence,
    max_depth: int = DEFAULT_LABEL_DEPTH,
) -> CompletenessReport:
    """Bounded refutation of the declared conjunctive labels.

    For every well-typed semantic derivation tree of a conjunctive category
    (up to ``max_depth``), the target grammar must generate a well-formed
    tree of every category in the correspondence set. Passing is evidence,
    not proof: deeper trees are not examined.
    """
    _require_coverage(pair, corr)
    tgt = pair.target
    sc = tgt.semantics
    violations: list[Violation] = []
    for sem_cat, entry in corr.entries:
        if entry.label != CONJUNCTIVE or sem_cat not in set(sc.categories):
            continue
        for d in enumerate_sem_trees(sc, sem_cat, max_depth):
            realized = {syn_cat(tgt, t) for t in semgen(tgt, d) if is_cfg_well_formed(tgt, t)}
            for wanted in entry.categories:
                if wanted not in realized:
                    violations.append(
                        Violation(
                            kind="label",
                            message=(
                                f"'{sem_cat}' is labeled conjunctive but {format_tree(d)} has no "
                                f"well-formed target realization of category '{wanted}'"
                            ),
                            category=wanted,
                            sem_tree=d,
                        )
                    )
    return CompletenessReport(condition="labels", violations=tuple(violations))


def find_incompleteness_witness(pair: GrammarPair, max_depth: int) -> SemTree | None:
    """Smallest well-formed source semantic derivation tree with no translation.

    Exhaustive up to ``max_depth``; candidates are tried smallest depth
    first, then in canonical order, so the returned witness is stable and
    minimal. None means every candidate translated.
    """
    for d in well_formed_sem_trees(pair.source, max_depth):
        if not translate_sem(pair, d):
            return d
    return None


def witness_report(pair: GrammarPair, max_depth: int) -> CompletenessReport:
    """The witness search packaged as a report."""
    witness = find_incompleteness_witness(pair, max_depth)
    return CompletenessReport(condition="witness-search", witness=witness)
