"""Command-line front end.

Exit codes: 0 success or check pass, 1 check fail or witness found, 2 usage
or input error, 3 resource cap exceeded. Output for identical inputs and
flags is byte-identical across runs.
"""

import argparse
import sys
from pathlib import Path

from . import __version__
from .completeness import (
    check_homomorphism,
    check_n1_completeness,
    check_nn_completeness,
    validate_labels,
    witness_report,
)
from .errors import ComptransError, ResourceLimitError
from .loader import LoadedPair, load_pair, parse_file
from .model import CompositionalGrammar, SemanticComponent
from .parsing import morsynan
from .pipeline import translate
from .render import (
    dump_json,
    envelope,
    report_to_json,
    report_to_text,
    trace_to_json,
    trace_to_text,
    trees_to_text,
    FORMAT_VERSION,
)
from .trees import (
    enumerate_sem_trees,
    enumerate_syn_trees,
    format_tree,
    random_sem_tree,
    tree_to_json,
)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_env(paths) -> dict[str, SemanticComponent]:
    env: dict[str, SemanticComponent] = {}
    for p in paths or []:
        for sc in parse_file(_read(p), p, env).semantics:
            env[sc.name] = sc
    return env


def _pick_grammar(contents, name: str | None, path: str) -> CompositionalGrammar:
    if name is not None:
        for g in contents.grammars:
            if g.name == name:
                return g
        raise ComptransError(f"{path}: no grammar named '{name}'")
    if len(contents.grammars) != 1:
        raise ComptransError(
            f"{path}: file declares {len(contents.grammars)} grammars, pick one with --grammar"
        )
    return contents.grammars[0]


def _pick_semantics(contents, name: str | None, path: str) -> SemanticComponent:
    if name is not None:
        for sc in contents.semantics:
            if sc.name == name:
                return sc
        raise ComptransError(f"{path}: no semantic component named '{name}'")
    if len(contents.semantics) != 1:
        raise ComptransError(
            f"{path}: file declares {len(contents.semantics)} semantic components, "
            "pick one with --component"
        )
    return contents.semantics[0]


def _emit(text: str) -> None:
    if text:
        print(text)


# -- subcommands -------------------------------------------------------------


def _cmd_validate(args) -> int:
    files = []
    # semantic components accumulate left to right, so a shared interlingua
    # file can precede the grammar files that use it
    env = _load_env(args.semantics)
    for path in args.paths:
        if path.endswith(".cgp"):
            loaded = load_pair(path)
            entry = {
                "path": path,
                "semantics": [loaded.pair.source.semantics.name],
                "grammars": sorted({loaded.pair.source.name, loaded.pair.target.name}),
                "pair": True,
            }
        else:
            contents = parse_file(_read(path), path, env)
            for sc in contents.semantics:
                env[sc.name] = sc
            entry = {
                "path": path,
                "semantics": [sc.name for sc in contents.semantics],
                "grammars": [g.name for g in contents.grammars],
                "pair": False,
            }
        files.append(entry)
    if args.format == "json":
        _emit(dump_json(envelope("validate", files=files)))
    else:
        for entry in files:
            what = []
            if entry["semantics"]:
                what.append("semantics " + ", ".join(entry["semantics"]))
            if entry["grammars"]:
                kind = "pair" if entry["pair"] else "grammars"
                what.append(f"{kind} " + ", ".join(entry["grammars"]))
            _emit(f"{entry['path']}: OK ({'; '.join(what)})")
    return 0


def _cmd_parse(args) -> int:
    env = _load_env(args.semantics)
    contents = parse_file(_read(args.path), args.path, env)
    grammar = _pick_grammar(contents, args.grammar, args.path)
    tokens = args.utterance.split()
    trees = morsynan(grammar, tokens, category=args.cat, max_trees=args.cap)
    if args.format == "json":
        doc = envelope(
            "parse",
            grammar=grammar.name,
            utterance=tokens,
            category=args.cat,
            trees=[tree_to_json(t) for t in trees],
        )
        _emit(dump_json(doc))
    else:
        _emit(trees_to_text(trees))
    return 0


def _cmd_translate(args) -> int:
    loaded = load_pair(args.path)
    tokens = args.utterance.split()
    trace = translate(loaded.pair, tokens, max_trees=args.cap)
    if args.format == "json":
        doc = envelope(
            "translate",
            source=loaded.pair.source.name,
            target=loaded.pair.target.name,
            utterance=tokens,
            translations=[list(u) for u in trace.target_utterances],
            trace=trace_to_json(trace) if args.trace else None,
        )
        _emit(dump_json(doc))
    elif args.trace:
        _emit(trace_to_text(trace))
    else:
        _emit("\n".join(" ".join(u) for u in trace.target_utterances))
    return 0


def _need_correspondence(loaded: LoadedPair, condition: str):
    if loaded.correspondence is None:
        raise ComptransError(
            f"condition '{condition}' needs correspond blocks, and {loaded.path} declares none"
        )
    return loaded.correspondence


def _cmd_check(args) -> int:
    loaded = load_pair(args.path)
    condition = args.condition
    if condition is None:
        condition = "nn" if loaded.correspondence is not None else "n1"
    if condition == "homomorphism":
        report = check_homomorphism(loaded.pair)
    elif condition == "n1":
        report = check_n1_completeness(loaded.pair)
    elif condition == "nn":
        report = check_nn_completeness(loaded.pair, _need_correspondence(loaded, condition))
    else:
        report = validate_labels(
            loaded.pair, _need_correspondence(loaded, condition), max_depth=args.depth
        )
    if args.format == "json":
        doc = envelope(
            "check",
            source=loaded.pair.source.name,
            target=loaded.pair.target.name,
            report=report_to_json(report),
        )
        _emit(dump_json(doc))
    else:
        heading = (
            f"check {condition} for {loaded.pair.source.name} -> {loaded.pair.target.name}"
        )
        _emit(report_to_text(report, heading))
    return 0 if report.passed else 1


def _cmd_witness(args) -> int:
    loaded = load_pair(args.path)
    report = witness_report(loaded.pair, args.depth)
    if args.format == "json":
        doc = envelope(
            "witness",
            source=loaded.pair.source.name,
            target=loaded.pair.target.name,
            depth=args.depth,
            report=report_to_json(report),
        )
        _emit(dump_json(doc))
    else:
        _emit("none" if report.witness is None else format_tree(report.witness))
    return 0 if report.witness is None else 1


def _cmd_enumerate(args) -> int:
    env = _load_env(args.semantics)
    contents = parse_file(_read(args.path), args.path, env)
    if args.kind == "syn":
        grammar = _pick_grammar(contents, args.grammar, args.path)
        if args.sample is not None:
            raise ComptransError("--sample draws semantic trees; use --kind sem")
        trees = enumerate_syn_trees(grammar, args.cat, args.depth)
    else:
        component = _pick_semantics(contents, args.component, args.path)
        if args.sample is not None:
            trees = []
            for i in range(args.sample):
                t = random_sem_tree(component, args.cat, args.depth, args.seed + i)
                if t is not None:
                    trees.append(t)
        else:
            trees = enumerate_sem_trees(component, args.cat, args.depth)
    if args.format == "json":
        doc = envelope(
            "enumerate",
            kind=args.kind,
            category=args.cat,
            depth=args.depth,
            trees=[tree_to_json(t) for t in trees],
        )
        _emit(dump_json(doc))
    else:
        _emit(trees_to_text(trees))
    return 0


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="comptrans",
        description=(
            "Compositional translation over CFG-based grammars: parse, translate, "
            "and statically check translation completeness."
        ),
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"comptrans {__version__} (report format {FORMAT_VERSION})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("validate", help="load grammar or pair files and report their contents")
    p.add_argument("paths", nargs="+", metavar="FILE")
    p.add_argument("--semantics", action="append", metavar="FILE", help="extra semantics file")
    add_format(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("parse", help="all derivation trees of an utterance")
    p.add_argument("path", metavar="GRAMMAR.cg")
    p.add_argument("--utterance", required=True, help="tokens, whitespace-separated")
    p.add_argument("--cat", help="restrict to one result category")
    p.add_argument("--grammar", help="grammar name if the file declares several")
    p.add_argument("--semantics", action="append", metavar="FILE", help="extra semantics file")
    p.add_argument("--cap", type=_positive_int, help="ambiguity cap (default 10000)")
    add_format(p)
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("translate", help="translate an utterance through a grammar pair")
    p.add_argument("path", metavar="PAIR.cgp")
    p.add_argument("--utterance", required=True)
    p.add_argument("--trace", action="store_true", help="show every intermediate stage")
    p.add_argument("--cap", type=_positive_int, help="ambiguity cap (default 10000)")
    add_format(p)
    p.set_defaults(func=_cmd_translate)

    p = sub.add_parser("check", help="static completeness conditions for a grammar pair")
    p.add_argument("path", metavar="PAIR.cgp")
    p.add_argument(
        "--condition",
        choices=["homomorphism", "n1", "nn", "labels"],
        help="default: nn when the pair declares correspondences, else n1",
    )
    p.add_argument("--depth", type=_positive_int, default=6, help="depth bound for labels")
    add_format(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("witness", help="search for a semantic tree with no translation")
    p.add_argument("path", metavar="PAIR.cgp")
    p.add_argument("--depth", type=_positive_int, default=6)
    add_format(p)
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("enumerate", help="enumerate or sample derivation trees")
    p.add_argument("path", metavar="FILE.cg")
    p.add_argument("--cat", required=True, help="category to enumerate")
    p.add_argument("--depth", type=_positive_int, default=4)
    p.add_argument("--kind", choices=["syn", "sem"], default="syn")
    p.add_argument("--grammar", help="grammar name if the file declares several")
    p.add_argument("--component", help="semantic component name if the file declares several")
    p.add_argument("--semantics", action="append", metavar="FILE", help="extra semantics file")
    p.add_argument("--sample", type=_positive_int, help="draw N random semantic trees")
    p.add_argument("--seed", type=int, default=0)
    add_format(p)
    p.set_defaults(func=_cmd_enumerate)

    return parser


def main(argv=None) -> int:
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            try:
                stream.reconfigure(encoding="utf-8")
            except (ValueError, OSError):
                pass
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (ComptransError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
