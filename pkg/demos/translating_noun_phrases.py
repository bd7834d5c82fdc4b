"""Walk through one translation, stage by stage.

English and French noun-phrase grammars share an interlingua of uninterpreted
meanings (def, cat, house). French determiners and nouns agree in gender, so
the single interlingua combination rule M1 has two French realizations. This
script parses an English utterance, interprets it, generates the French
candidates, and shows how the well-formedness filter picks the agreeing one.

Run from the repository root:  python3 demos/translating_noun_phrases.py
"""

from pathlib import Path

from comptrans import (
    format_tree,
    is_cfg_well_formed,
    load_pair,
    morsyngen,
    morsynan,
    seman,
    semgen,
    translate,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def main():
    loaded = load_pair(FIXTURES / "enfr-np.cgp")
    pair = loaded.pair
    english, french = pair.source, pair.target

    utterance = "the house".split()
    print(f"source utterance: {' '.join(utterance)}\n")

    # 1. morphosyntactic analysis: every derivation tree of the utterance
    parses = morsynan(english, utterance)
    print("analysis:")
    for t in parses:
        print(f"  {format_tree(t)}")

    # 2. semantic analysis: interpret each node every possible way
    sem_trees = [d for t in parses for d in seman(english, t)]
    print("\ninterlingua trees:")
    for d in sem_trees:
        print(f"  {format_tree(d)}")

    # 3. semantic generation: rebuild the tree from French material. Both
    # French rules carry M1 and both determiners mean def, so four candidates
    # come out; only the gender-consistent one is well-formed.
    print("\ngeneration candidates:")
    for d in sem_trees:
        for t in semgen(french, d):
            ok = is_cfg_well_formed(french, t)
            print(f"  {format_tree(t):22} {'well-formed' if ok else 'ill-formed'}")

    # 4. morphosyntactic generation from the survivors
    survivors = [t for d in sem_trees for t in semgen(french, d) if is_cfg_well_formed(french, t)]
    print("\ntranslations:")
    for t in survivors:
        print(f"  {' '.join(morsyngen(french, t))}")

    # the one-call version records all of the above in a trace
    trace = translate(pair, utterance)
    assert trace.target_utterances == (("la", "maison"),)
    print("\ntranslate() agrees:", [" ".join(u) for u in trace.target_utterances])


if __name__ == "__main__":
    main()
