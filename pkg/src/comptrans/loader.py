"""Loader for grammar (.cg) and pair (.cgp) files.

Grammar files are UTF-8 and line-based; ``#`` starts a comment and tokens are
whitespace-separated (a comma may trail a token directly). A file holds any
number of blocks:

    semantics <name>
        semcat <Name>...
        meaning <name> : <SemCat>
        mrule <Name> : ( <SemCat>... ) -> <SemCat>
    grammar <name> uses <semantics-name>
        syncat <Name>...
        basic <name> : <SynCat> = "<tok>" ["<tok>"...] => <meaning>[, <meaning>...]
        rule <Name> : ( <SynCat>... ) -> <SynCat> = <item>... => <mrule>[, <mrule>...]

where an ``<item>`` is a quoted terminal ``"<tok>"`` or a placeholder ``$<i>``.

Pair files reference a semantics file and two grammar files by path (relative
to the pair file) and declare the category correspondence:

    semantics <path> [<component-name>]
    source <path> [<grammar-name>]
    target <path> [<grammar-name>]
    correspond <SemCat> -> { <SynCat>... } <conjunctive|disjunctive>

Loading is deterministic: the same bytes always produce structurally equal
values.
"""

import re
from dataclasses import dataclass
from pathlib import Path

from .completeness import CategoryCorrespondence, CorrespondenceEntry
from .errors import GrammarFormatError, GrammarValidationError
from .model import (
    BasicExpression,
    BasicMeaning,
    CompositionalGrammar,
    GrammarPair,
    SemanticComponent,
    SemRule,
    SyntacticRule,
    validate_grammar,
    validate_pair,
    validate_semantics,
)

_NAME_RE = re.compile(r"^[^\W\d][\w'\-]*$")
_PLACEHOLDER_RE = re.compile(r"^\$(\d+)$")


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    column: int
    quoted: bool = False


class _Lexer:
    """Splits one file into per-line token lists with positions."""

    def __init__(self, text: str, path: str | None):
        self.path = path
        self.lines: list[list[Token]] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            self.lines.append(self._lex_line(raw, lineno))

    def _lex_line(self, raw: str, lineno: int) -> list[Token]:
        tokens: list[Token] = []
        i = 0
        n = len(raw)
        while i < n:
            ch = raw[i]
            if ch in " \t":
                i += 1
                continue
            if ch == "#":
                break
            col = i + 1
            if ch == '"':
                j = raw.find('"', i + 1)
                if j < 0:
                    raise GrammarFormatError("unterminated quoted token", self.path, lineno, col)
                body = raw[i + 1:j]
                if not body:
                    raise GrammarFormatError("empty quoted token", self.path, lineno, col)
                if any(c in ' \t"' for c in body):
                    raise GrammarFormatError(
                        "quoted token may not contain whitespace or quotes", self.path, lineno, col
                    )
                tokens.append(Token(body, lineno, col, quoted=True))
                i = j + 1
                continue
            if ch == ",":
                tokens.append(Token(",", lineno, col))
                i += 1
                continue
            j = i
            while j < n and raw[j] not in ' \t#",':
                j += 1
            tokens.append(Token(raw[i:j], lineno, col))
            i = j
        return tokens


class _LineParser:
    """Cursor over one token list, with located errors."""

    def __init__(self, tokens: list[Token], path: str | None, lineno: int):
        self.tokens = tokens
        self.path = path
        self.lineno = lineno
        self.pos = 0

    def error(self, message: str, tok: Token | None = None) -> GrammarFormatError:
        col = tok.column if tok is not None else (self.tokens[-1].column + len(self.tokens[-1].text) if self.tokens else 1)
        return GrammarFormatError(message, self.path, self.lineno, col)

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self, what: str) -> Token:
        tok = self.peek()
        if tok is None:
            raise self.error(f"expected {what} but the line ended")
        self.pos += 1
        return tok

    def expect(self, literal: str) -> Token:
        tok = self.next(f"'{literal}'")
        if tok.quoted or tok.text != literal:
            raise self.error(f"expected '{literal}' but found '{tok.text}'", tok)
        return tok

    def name(self, what: str) -> str:
        tok = self.next(what)
        if tok.quoted or not _NAME_RE.match(tok.text):
            raise self.error(f"expected {what} but found '{tok.text}'", tok)
        return tok.text

    def done(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise self.error(f"unexpected token '{tok.text}'", tok)

    def name_list_to_end(self, what: str) -> list[str]:
        names = [self.name(what)]
        while self.peek() is not None:
            names.append(self.name(what))
        return names

    def comma_names(self, what: str) -> list[str]:
        """``a, b, c`` until end of line."""
        names = [self.name(what)]
        while self.peek() is not None:
            self.expect(",")
            names.append(self.name(what))
        return names

    def paren_names(self, what: str) -> list[str]:
        self.expect("(")
        names = []
        while True:
            tok = self.peek()
            if tok is None:
                raise self.error("expected ')' but the line ended")
            if not tok.quoted and tok.text == ")":
                self.pos += 1
                return names
            names.append(self.name(what))


@dataclass(frozen=True)
class FileContents:
    """Everything declared by one grammar file, in declaration order."""

    semantics: tuple[SemanticComponent, ...]
    grammars: tuple[CompositionalGrammar, ...]


def _sorted_unique(names: list[str], kind: str, err) -> tuple[str, ...]:
    seen = set()
    for n in names:
        if n in seen:
            raise err(f"duplicate {kind} '{n}' in list")
        seen.add(n)
    return tuple(sorted(names))


class _FileParser:
    def __init__(self, text: str, path: str | None, env: dict[str, SemanticComponent] | None):
        self.path = path
        self.env = dict(env or {})
        self.lexer = _Lexer(text, path)
        self.semantics: list[SemanticComponent] = []
        self.local_sem_names: set[str] = set()
        self.grammars: list[CompositionalGrammar] = []
        # current block state
        self.block: str | None = None
        self.block_line: _LineParser | None = None
        self.sem_name = ""
        self.sem_cats: list[str] = []
        self.sem_meanings: list[BasicMeaning] = []
        self.sem_rules: list[SemRule] = []
        self.gr_name = ""
        self.gr_sem: SemanticComponent | None = None
        self.gr_cats: list[str] = []
        self.gr_basics: list[BasicExpression] = []
        self.gr_rules: list[SyntacticRule] = []

    def parse(self) -> FileContents:
        for lineno, tokens in enumerate(self.lexer.lines, start=1):
            if not tokens:
                continue
            lp = _LineParser(tokens, self.path, lineno)
            head = tokens[0]
            if head.quoted:
                raise lp.error("line must start with a directive keyword", head)
            handler = getattr(self, "_dir_" + head.text.replace("-", "_"), None)
            if handler is None:
                raise lp.error(f"unknown directive '{head.text}'", head)
            lp.pos = 1
            try:
                handler(lp)
            except GrammarValidationError as e:
                if e.line is None:
                    raise GrammarValidationError(e.args[0], self.path, lineno) from None
                raise
        self._close_block()
        return FileContents(tuple(self.semantics), tuple(self.grammars))

    # -- block management ---------------------------------------------------

    def _close_block(self) -> None:
        if self.block == "semantics":
            sc = SemanticComponent(
                name=self.sem_name,
                categories=tuple(self.sem_cats),
                meanings=tuple(self.sem_meanings),
                rules=tuple(self.sem_rules),
            )
            try:
                validate_semantics(sc)
            except GrammarValidationError as e:
                raise GrammarValidationError(e.args[0], self.path, self.block_line.lineno) from None
            if sc.name in self.local_sem_names:
                raise GrammarFormatError(
                    f"semantic component '{sc.name}' declared more than once",
                    self.path,
                    self.block_line.lineno,
                )
            # an in-file declaration shadows one supplied through env
            self.local_sem_names.add(sc.name)
            self.env[sc.name] = sc
            self.semantics.append(sc)
        elif self.block == "grammar":
            g = CompositionalGrammar(
                name=self.gr_name,
                categories=tuple(self.gr_cats),
                basics=tuple(self.gr_basics),
                rules=tuple(self.gr_rules),
                semantics=self.gr_sem,
            )
            try:
                validate_grammar(g)
            except GrammarValidationError as e:
                raise GrammarValidationError(e.args[0], self.path, self.block_line.lineno) from None
            if any(g.name == other.name for other in self.grammars):
                raise GrammarFormatError(
                    f"grammar '{g.name}' declared more than once", self.path, self.block_line.lineno
                )
            self.grammars.append(g)
        self.block = None

    def _require_block(self, lp: _LineParser, block: str, directive: str) -> None:
        if self.block != block:
            raise lp.error(f"'{directive}' is only allowed inside a '{block}' block", lp.tokens[0])

    # -- directives ---------------------------------------------------------

    def _dir_semantics(self, lp: _LineParser) -> None:
        self._close_block()
        self.block = "semantics"
        self.block_line = lp
        self.sem_name = lp.name("semantic component name")
        lp.done()
        self.sem_cats, self.sem_meanings, self.sem_rules = [], [], []

    def _dir_grammar(self, lp: _LineParser) -> None:
        self._close_block()
        self.block = "grammar"
        self.block_line = lp
        self.gr_name = lp.name("grammar name")
        lp.expect("uses")
        sem_name = lp.name("semantic component name")
        lp.done()
        sc = self.env.get(sem_name)
        if sc is None:
            raise lp.error(f"grammar '{self.gr_name}' uses unknown semantic component '{sem_name}'")
        self.gr_sem = sc
        self.gr_cats, self.gr_basics, self.gr_rules = [], [], []

    def _dir_semcat(self, lp: _LineParser) -> None:
        self._require_block(lp, "semantics", "semcat")
        self.sem_cats.extend(lp.name_list_to_end("semantic category name"))

    def _dir_meaning(self, lp: _LineParser) -> None:
        self._require_block(lp, "semantics", "meaning")
        name = lp.name("basic meaning name")
        lp.expect(":")
        cat = lp.name("semantic category name")
        lp.done()
        self.sem_meanings.append(BasicMeaning(name, cat))

    def _dir_mrule(self, lp: _LineParser) -> None:
        self._require_block(lp, "semantics", "mrule")
        name = lp.name("semantic rule name")
        lp.expect(":")
        args = lp.paren_names("semantic category name")
        lp.expect("->")
        result = lp.name("semantic category name")
        lp.done()
        self.sem_rules.append(SemRule(name, tuple(args), result))

    def _dir_syncat(self, lp: _LineParser) -> None:
        self._require_block(lp, "grammar", "syncat")
        self.gr_cats.extend(lp.name_list_to_end("syntactic category name"))

    def _dir_basic(self, lp: _LineParser) -> None:
        self._require_block(lp, "grammar", "basic")
        name = lp.name("basic expression name")
        lp.expect(":")
        cat = lp.name("syntactic category name")
        lp.expect("=")
        surface = []
        while True:
            tok = lp.peek()
            if tok is None:
                raise lp.error("expected '=>' before the meaning list")
            if not tok.quoted and tok.text == "=>":
                lp.pos += 1
                break
            if not tok.quoted:
                raise lp.error(f"surface tokens must be quoted, found '{tok.text}'", tok)
            surface.append(tok.text)
            lp.pos += 1
        if not surface:
            raise lp.error(f"basic expression '{name}' has an empty surface")
        meanings = lp.comma_names("basic meaning name")
        self.gr_basics.append(
            BasicExpression(name, cat, tuple(surface), _sorted_unique(meanings, "meaning", lp.error))
        )

    def _dir_rule(self, lp: _LineParser) -> None:
        self._require_block(lp, "grammar", "rule")
        name = lp.name("rule name")
        lp.expect(":")
        args = lp.paren_names("syntactic category name")
        lp.expect("->")
        result = lp.name("syntactic category name")
        lp.expect("=")
        template: list[str | int] = []
        while True:
            tok = lp.peek()
            if tok is None:
                raise lp.error("expected '=>' before the semantic rule list")
            if not tok.quoted and tok.text == "=>":
                lp.pos += 1
                break
            if tok.quoted:
                template.append(tok.text)
            else:
                m = _PLACEHOLDER_RE.match(tok.text)
                if not m:
                    raise lp.error(
                        f"template items are quoted terminals or $<i> placeholders, found '{tok.text}'",
                        tok,
                    )
                idx = int(m.group(1))
                if idx < 1:
                    raise lp.error("placeholder indices start at $1", tok)
                template.append(idx)
            lp.pos += 1
        if not template:
            raise lp.error(f"rule '{name}' has an empty template")
        meanings = lp.comma_names("semantic rule name")
        self.gr_rules.append(
            SyntacticRule(
                name,
                tuple(args),
                result,
                tuple(template),
                _sorted_unique(meanings, "semantic rule", lp.error),
            )
        )


def parse_file(
    text: str,
    path: str | None = None,
    env: dict[str, SemanticComponent] | None = None,
) -> FileContents:
    """Parse one grammar file; ``env`` supplies externally declared semantics."""
    return _FileParser(text, path, env).parse()


def load_grammar(
    text: str,
    path: str | None = None,
    env: dict[str, SemanticComponent] | None = None,
) -> CompositionalGrammar:
    """Load a file expected to declare exactly one grammar, and return it."""
    contents = parse_file(text, path, env)
    if len(contents.grammars) != 1:
        raise GrammarFormatError(
            f"expected exactly one grammar block, found {len(contents.grammars)}", path
        )
    return contents.grammars[0]


def load_grammar_file(path: str | Path, env: dict[str, SemanticComponent] | None = None) -> CompositionalGrammar:
    p = Path(path)
    return load_grammar(p.read_text(encoding="utf-8"), str(p), env)


@dataclass(frozen=True)
class LoadedPair:
    """A pair file resolved to grammars plus its declared correspondence."""

    pair: GrammarPair
    correspondence: CategoryCorrespondence | None
    path: str | None = None


def _pick_semantics(contents: FileContents, name: str | None, path: str, lp: _LineParser) -> SemanticComponent:
    if name is not None:
        for sc in contents.semantics:
            if sc.name == name:
                return sc
        raise lp.error(f"file '{path}' declares no semantic component '{name}'")
    if len(contents.semantics) != 1:
        raise lp.error(
            f"file '{path}' declares {len(contents.semantics)} semantic components; name one explicitly"
        )
    return contents.semantics[0]


def _pick_grammar(contents: FileContents, name: str | None, path: str, lp: _LineParser) -> CompositionalGrammar:
    if name is not None:
        for g in contents.grammars:
            if g.name == name:
                return g
        raise lp.error(f"file '{path}' declares no grammar '{name}'")
    if len(contents.grammars) != 1:
        raise lp.error(f"file '{path}' declares {len(contents.grammars)} grammars; name one explicitly")
    return contents.grammars[0]


def load_pair(path: str | Path) -> LoadedPair:
    """Load a ``.cgp`` pair file and everything it references."""
    p = Path(path)
    text = p.read_text(encoding="utf-8")
    lexer = _Lexer(text, str(p))

    sem_ref: tuple[_LineParser, str, str | None] | None = None
    side_refs: dict[str, tuple[_LineParser, str, str | None]] = {}
    correspond_lines: list[tuple[_LineParser, str, list[str], str]] = []

    for lineno, tokens in enumerate(lexer.lines, start=1):
        if not tokens:
            continue
        lp = _LineParser(tokens, str(p), lineno)
        head = lp.next("directive")
        if head.quoted:
            raise lp.error("line must start with a directive keyword", head)
        if head.text in ("semantics", "source", "target"):
            ref_path = lp.next("file path").text
            name = lp.name("name") if lp.peek() is not None else None
            lp.done()
            if head.text == "semantics":
                if sem_ref is not None:
                    raise lp.error("duplicate 'semantics' line", head)
                sem_ref = (lp, ref_path, name)
            else:
                if head.text in side_refs:
                    raise lp.error(f"duplicate '{head.text}' line", head)
                side_refs[head.text] = (lp, ref_path, name)
        elif head.text == "correspond":
            sem_cat = lp.name("semantic category name")
            lp.expect("->")
            lp.expect("{")
            cats = []
            while True:
                tok = lp.peek()
                if tok is None:
                    raise lp.error("expected '}' but the line ended")
                if not tok.quoted and tok.text == "}":
                    lp.pos += 1
                    break
                cats.append(lp.name("syntactic category name"))
            label = lp.next("'conjunctive' or 'disjunctive'")
            if label.quoted or label.text not in ("conjunctive", "disjunctive"):
                raise lp.error(f"expected 'conjunctive' or 'disjunctive', found '{label.text}'", label)
            lp.done()
            if not cats:
                raise lp.error(f"correspondence set for '{sem_cat}' is empty")
            correspond_lines.append((lp, sem_cat, cats, label.text))
        else:
            raise lp.error(f"unknown directive '{head.text}'", head)

    top = _LineParser([], str(p), 1)
    if sem_ref is None:
        raise top.error("pair file must declare a 'semantics' line")
    for side in ("source", "target"):
        if side not in side_refs:
            raise top.error(f"pair file must declare a '{side}' line")

    def resolve(rel: str) -> Path:
        return (p.parent / rel).resolve()

    lp, rel, name = sem_ref
    sem_path = resolve(rel)
    sem_contents = parse_file(sem_path.read_text(encoding="utf-8"), str(sem_path))
    component = _pick_semantics(sem_contents, name, rel, lp)
    env = {sc.name: sc for sc in sem_contents.semantics}

    grammars = {}
    for side in ("source", "target"):
        lp, rel, name = side_refs[side]
        gpath = resolve(rel)
        contents = parse_file(gpath.read_text(encoding="utf-8"), str(gpath), env)
        grammars[side] = _pick_grammar(contents, name, rel, lp)
        if grammars[side].semantics != component:
            raise lp.error(
                f"{side} grammar '{grammars[side].name}' does not use the pair's semantic "
                f"component '{component.name}'"
            )

    pair = validate_pair(grammars["source"], grammars["target"])

    correspondence = None
    if correspond_lines:
        entries = {}
        target_cats = set(pair.target.categories)
        for lp, sem_cat, cats, label in correspond_lines:
            if sem_cat not in component.categories:
                raise lp.error(f"correspondence names unknown semantic category '{sem_cat}'")
            if sem_cat in entries:
                raise lp.error(f"duplicate correspondence for semantic category '{sem_cat}'")
            for c in cats:
                if c not in target_cats:
                    raise lp.error(
                        f"correspondence for '{sem_cat}' names '{c}', which grammar "
                        f"'{pair.target.name}' does not declare"
                    )
            entries[sem_cat] = CorrespondenceEntry(tuple(sorted(set(cats))), label)
        correspondence = CategoryCorrespondence(tuple(sorted(entries.items())))

    return LoadedPair(pair=pair, correspondence=correspondence, path=str(p))
