"""Completeness checkers, label validation, and witness search."""

import pytest

from comptrans import (
    CONJUNCTIVE,
    DISJUNCTIVE,
    CategoryCorrespondence,
    CorrespondenceEntry,
    CorrespondenceError,
    SemLeaf,
    SemNode,
    TupleCapError,
    check_homomorphism,
    check_n1_completeness,
    check_nn_completeness,
    find_incompleteness_witness,
    format_tree,
    infer_n1_map,
    is_sem_well_typed,
    n1_correspondence,
    parse_file,
    translate_sem,
    validate_labels,
    validate_pair,
    well_formed_sem_trees,
    witness_report,
)

# source carries M1, target rules carry only M2: rule-level coverage fails
# while every interpretation set stays non-empty
TWO_RULE_COMPONENT = """
semantics two-rules
  semcat NPbar DETbar Nbar
  meaning def : DETbar
  meaning cat : Nbar
  mrule M1 : ( DETbar Nbar ) -> NPbar
  mrule M2 : ( DETbar Nbar ) -> NPbar

grammar src2 uses two-rules
  syncat NP DET N
  basic the : DET = "the" => def
  basic cat : N = "cat" => cat
  rule R1 : ( DET N ) -> NP = $1 $2 => M1

grammar tgt2 uses two-rules
  syncat NP2 DET2 N2
  basic le : DET2 = "le" => def
  basic chat : N2 = "chat" => cat
  rule R1p : ( DET2 N2 ) -> NP2 = $1 $2 => M2
"""

EMPTY_GRAMMAR = """
semantics s
  semcat X Y
  meaning x : X
  mrule F : ( X ) -> Y

grammar hollow uses s
  syncat P Q
"""


@pytest.fixture(scope="module")
def rule_gap_pair():
    contents = parse_file(TWO_RULE_COMPONENT)
    by_name = {g.name: g for g in contents.grammars}
    return validate_pair(by_name["src2"], by_name["tgt2"])


def test_homomorphism_identity(identity):
    assert check_homomorphism(identity.pair).verdict == "pass"


def test_homomorphism_enfr(enfr):
    assert check_homomorphism(enfr.pair).verdict == "pass"


def test_homomorphism_rule_violation(rule_gap_pair):
    report = check_homomorphism(rule_gap_pair)
    assert report.verdict == "fail"
    assert [(v.kind, v.source, v.rule) for v in report.violations] == [
        ("uncovered-semantic-rule", "R1", "M1")
    ]


def test_homomorphism_basic_violation(enfr_homviol):
    report = check_homomorphism(enfr_homviol.pair)
    assert report.verdict == "fail"
    assert [(v.kind, v.source, v.meaning) for v in report.violations] == [
        ("uncovered-basic-meaning", "house", "house")
    ]


def test_infer_n1_map_paper(paper_grammar):
    corr = infer_n1_map(paper_grammar)
    assert corr is not None
    assert {cat: entry.categories for cat, entry in corr.entries} == {
        "Abar": ("A",),
        "Bbar": ("B",),
        "Cbar": ("C",),
    }
    assert all(entry.label == CONJUNCTIVE for _, entry in corr.entries)


def test_infer_n1_map_enfr_conflict(enfr):
    assert infer_n1_map(enfr.pair.target) is None
    report = check_n1_completeness(enfr.pair)
    assert report.verdict == "fail"
    conflicted = {v.category for v in report.violations if v.kind == "n1-conflict"}
    assert conflicted == {"DETbar", "Nbar"}


def test_infer_n1_map_unconstrained_fallback():
    g = parse_file(EMPTY_GRAMMAR).grammars[0]
    corr = infer_n1_map(g)
    assert corr is not None
    # nothing pins X or Y; both get the least target category
    assert {cat: entry.categories for cat, entry in corr.entries} == {"X": ("P",), "Y": ("P",)}


def test_n1_passes_on_identity(identity):
    report = check_n1_completeness(identity.pair)
    assert report.verdict == "pass"
    assert {sub.condition for sub in report.subreports} == {"homomorphism", "n1"}


def test_n1_fails_on_broken(enfr_broken):
    assert check_n1_completeness(enfr_broken.pair).verdict == "fail"


def test_nn_passes_on_enfr(enfr):
    assert check_nn_completeness(enfr.pair, enfr.correspondence).verdict == "pass"


def test_nn_fails_on_broken_citing_the_feminine_tuple(enfr_broken):
    report = check_nn_completeness(enfr_broken.pair, enfr_broken.correspondence)
    assert report.verdict == "fail"
    assert [(v.kind, v.rule, v.arg_tuple, v.category) for v in report.violations] == [
        ("missing-rule", "M1", ("Nf",), "NPp")
    ]


def test_nn_reduces_to_n1_on_singleton_conjunctive_sets(identity):
    nn = check_nn_completeness(identity.pair, identity.correspondence)
    n1 = check_n1_completeness(identity.pair)
    assert nn.verdict == n1.verdict == "pass"
    # and the declared singleton correspondence is the inferred map
    assert identity.correspondence == infer_n1_map(identity.pair.target)


def test_nn_typing_bullet_violations(enfr):
    # force NPp outside every correspondence set: rule typing breaks
    corr = CategoryCorrespondence(
        (
            ("DETbar", CorrespondenceEntry(("DETf", "DETm"), CONJUNCTIVE)),
            ("NPbar", CorrespondenceEntry(("DETm",), CONJUNCTIVE)),
            ("Nbar", CorrespondenceEntry(("Nf", "Nm"), DISJUNCTIVE)),
        )
    )
    report = check_nn_completeness(enfr.pair, corr)
    kinds = {v.kind for v in report.violations}
    assert "nn-typing-rule" in kinds


def test_nn_requires_full_coverage(enfr):
    partial = CategoryCorrespondence(
        (("DETbar", CorrespondenceEntry(("DETf", "DETm"), CONJUNCTIVE)),)
    )
    with pytest.raises(CorrespondenceError):
        check_nn_completeness(enfr.pair, partial)


def test_nn_tuple_cap(enfr):
    with pytest.raises(TupleCapError):
        check_nn_completeness(enfr.pair, enfr.correspondence, tuple_cap=1)


def test_nn_missing_basic_on_masc(enfr_masc):
    report = check_nn_completeness(enfr_masc.pair, enfr_masc.correspondence)
    assert report.verdict == "fail"
    assert [(v.kind, v.meaning, v.rule, v.arg_tuple) for v in report.violations] == [
        ("missing-basic", "house", None, None),
        ("missing-rule", None, "M1", ("Nf",)),
    ]


def test_labels_pass_on_enfr(enfr):
    assert validate_labels(enfr.pair, enfr.correspondence, max_depth=3).verdict == "pass"
    assert validate_labels(enfr.pair, enfr.correspondence, max_depth=6).verdict == "pass"


def test_labels_catch_a_mislabeled_noun_category(enfr):
    mislabeled = CategoryCorrespondence(
        (
            ("DETbar", CorrespondenceEntry(("DETf", "DETm"), CONJUNCTIVE)),
            ("NPbar", CorrespondenceEntry(("NPp",), CONJUNCTIVE)),
            ("Nbar", CorrespondenceEntry(("Nf", "Nm"), CONJUNCTIVE)),
        )
    )
    report = validate_labels(enfr.pair, mislabeled, max_depth=3)
    assert report.verdict == "fail"
    failures = {(format_tree(v.sem_tree), v.category) for v in report.violations}
    # cat exists only at Nm, house only at Nf
    assert ("cat", "Nf") in failures
    assert ("house", "Nm") in failures


def test_singleton_sets_are_trivially_conjunctive(identity):
    assert validate_labels(identity.pair, identity.correspondence, max_depth=4).verdict == "pass"


def test_witness_none_on_identity(identity):
    assert find_incompleteness_witness(identity.pair, 4) is None


def test_witness_none_on_enfr(enfr):
    assert find_incompleteness_witness(enfr.pair, 3) is None


def test_witness_on_broken(enfr_broken):
    witness = find_incompleteness_witness(enfr_broken.pair, 3)
    assert witness == SemNode("M1", (SemLeaf("def"), SemLeaf("house")))
    assert translate_sem(enfr_broken.pair, witness) == []
    report = witness_report(enfr_broken.pair, 3)
    assert report.verdict == "fail" and report.witness == witness


def test_necessity_of_homomorphism(enfr_homviol, rule_gap_pair):
    # a reachable homomorphism violation always comes with a witness
    assert check_homomorphism(enfr_homviol.pair).verdict == "fail"
    assert find_incompleteness_witness(enfr_homviol.pair, 6) == SemLeaf("house")
    assert check_homomorphism(rule_gap_pair).verdict == "fail"
    witness = find_incompleteness_witness(rule_gap_pair, 6)
    assert witness == SemNode("M1", (SemLeaf("def"), SemLeaf("cat")))


def test_nn_condition_is_sufficient_not_necessary(enfr_masc):
    # the static check rejects the pair, yet nothing the source derives fails
    assert check_nn_completeness(enfr_masc.pair, enfr_masc.correspondence).verdict == "fail"
    assert find_incompleteness_witness(enfr_masc.pair, 6) is None
    for d in well_formed_sem_trees(enfr_masc.pair.source, 6):
        assert translate_sem(enfr_masc.pair, d)


def test_reported_witnesses_are_source_well_formed(enfr_broken):
    witness = find_incompleteness_witness(enfr_broken.pair, 3)
    assert witness in well_formed_sem_trees(enfr_broken.pair.source, 3)
    assert is_sem_well_typed(enfr_broken.pair.source.semantics, witness)


def test_passing_checks_mean_no_witness_at_bounded_depth(identity, enfr):
    # a passing static check means the exhaustive bounded search finds nothing
    assert check_n1_completeness(identity.pair).verdict == "pass"
    assert find_incompleteness_witness(identity.pair, 6) is None
    assert check_nn_completeness(enfr.pair, enfr.correspondence).verdict == "pass"
    assert validate_labels(enfr.pair, enfr.correspondence, max_depth=6).verdict == "pass"
    assert find_incompleteness_witness(enfr.pair, 6) is None


def test_n1_correspondence_helper():
    corr = n1_correspondence({"X": "P", "Y": "Q"})
    assert corr.categories_for("X") == ("P",)
    assert corr.label_for("Y") == CONJUNCTIVE
    with pytest.raises(CorrespondenceError):
        corr.categories_for("Z")
