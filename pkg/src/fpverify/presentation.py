"""Presentations, the presentation/word-file grammar, and named word tables.

Presentation files look like ``< z, b | z^7, (b^2*z^-1)^3 >``.  Factors are
concatenated with ``*`` or whitespace; an exponent applies to a single
identifier or a parenthesized subword.  ``#`` starts a comment.

Word files hold one entry per line, either ``name = word`` or a bare
``word``.  Every entry contributes one word to the file's list; named entries
can also be used by later lines (and later files sharing the same table).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .words import Word, concat, free_reduce, power


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class WordTableError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    generator_names: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        names = tuple(self.generator_names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for name in names:
            if not _IDENT.fullmatch(name):
                raise ValueError(f"invalid generator name {name!r}")
        rels = []
        for r in self.relators:
            if r.max_generator() >= len(names):
                raise ValueError("relator refers to an unknown generator")
            r = free_reduce(r)
            if r:
                rels.append(r)
        object.__setattr__(self, "generator_names", names)
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def n_generators(self) -> int:
        return len(self.generator_names)

    def generator(self, name: str) -> Word:
        return Word.generator(self.generator_names.index(name))

    def word(self, text: str) -> Word:
        return parse_word(text, self)

    def format_word(self, w: Word) -> str:
        return w.format(self.generator_names)

    def format(self) -> str:
        gens = ", ".join(self.generator_names)
        rels = ", ".join(self.format_word(r) for r in self.relators)
        return f"< {gens} | {rels} >"

    def __str__(self) -> str:
        return self.format()


# --- tokenizer -------------------------------------------------------------

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<int>[0-9]+)|(?P<sym>[<>|,()^*=+\-]))")


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str, line_offset: int = 0) -> list[_Tok]:
    toks = []
    for lineno, line in enumerate(text.split("\n"), start=1 + line_offset):
        line = line.split("#", 1)[0]
        pos = 0
        while pos < len(line):
            if line[pos:].strip() == "":
                break
            m = _TOKEN.match(line, pos)
            if not m:
                while line[pos].isspace():
                    pos += 1
                raise ParseError(f"unexpected character {line[pos]!r}", lineno, pos + 1)
            kind = m.lastgroup
            col = m.start(kind) + 1
            toks.append(_Tok(kind, m.group(kind), lineno, col))
            pos = m.end()
    last_line = text.count("\n") + 1 + line_offset
    toks.append(_Tok("eof", "", last_line, len(text.split("\n")[-1]) + 1))
    return toks


# --- syntax tree -----------------------------------------------------------
# ("name", str, line, col) | ("seq", tuple) | ("pow", node, int)

Node = Union[tuple]


class _Parser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str, tok: _Tok | None = None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.col)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "sym" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            found = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {found!r}")

    def ident(self) -> _Tok:
        if self.tok.kind != "ident":
            self.error(f"expected identifier, found {self.tok.text or 'end of input'!r}")
        tok = self.tok
        self.i += 1
        return tok

    def starts_factor(self) -> bool:
        tok = self.tok
        return (tok.kind == "ident" or (tok.kind == "sym" and tok.text == "(")
                or (tok.kind == "int" and tok.text == "1"))

    def word(self) -> Node:
        if not self.starts_factor():
            self.error(f"expected a word, found {self.tok.text or 'end of input'!r}")
        factors = [self.factor()]
        while True:
            if self.accept("*"):
                factors.append(self.factor())
            elif self.starts_factor():
                factors.append(self.factor())
            else:
                break
        return ("seq", tuple(factors))

    def factor(self) -> Node:
        if self.accept("("):
            atom = self.word()
            self.expect(")")
        elif self.tok.kind == "int":
            # the literal 1 is the empty word
            self.i += 1
            atom = ("seq", ())
        else:
            tok = self.ident()
            atom = ("name", tok.text, tok.line, tok.col)
        if self.accept("^"):
            sign = -1 if self.accept("-") else 1
            if sign == 1:
                self.accept("+")
            if self.tok.kind != "int":
                self.error("expected integer exponent")
            exp = sign * int(self.tok.text)
            self.i += 1
            return ("pow", atom, exp)
        return atom

    def end(self):
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}")


def _evaluate(node: Node, resolve) -> Word:
    kind = node[0]
    if kind == "name":
        return resolve(node)
    if kind == "seq":
        return concat(*(_evaluate(n, resolve) for n in node[1]))
    return power(_evaluate(node[1], resolve), node[2])


def _generator_resolver(names: tuple[str, ...]):
    index = {n: i for i, n in enumerate(names)}

    def resolve(node):
        _, name, line, col = node
        if name not in index:
            raise ParseError(f"unknown generator {name!r}", line, col)
        return Word.generator(index[name])

    return resolve


# --- public parsing --------------------------------------------------------

def parse_presentation(text: str) -> Presentation:
    p = _Parser(_tokenize(text))
    p.expect("<")
    names: list[str] = []
    if p.tok.kind == "ident":
        names.append(p.ident().text)
        while p.accept(","):
            names.append(p.ident().text)
    if len(set(names)) != len(names):
        p.error("duplicate generator name")
    p.expect("|")
    trees = []
    if p.starts_factor():
        trees.append(p.word())
        while p.accept(","):
            trees.append(p.word())
    p.expect(">")
    p.end()
    resolve = _generator_resolver(tuple(names))
    return Presentation(tuple(names), tuple(_evaluate(t, resolve) for t in trees))


def parse_word(text: str, presentation: Presentation, table: WordTable | None = None) -> Word:
    p = _Parser(_tokenize(text))
    tree = p.word()
    p.end()
    if table is None:
        return _evaluate(tree, _generator_resolver(presentation.generator_names))
    return table.evaluate(tree)


def format_presentation(p: Presentation) -> str:
    return p.format()


@dataclass
class WordTable:
    """Named words over an ambient presentation; definitions may refer to
    other definitions and are expanded on demand."""

    presentation: Presentation
    definitions: dict[str, Node] = field(default_factory=dict)

    def define(self, name: str, word: str | Word | Node, *, strict: bool = False):
        if not _IDENT.fullmatch(name):
            raise WordTableError(f"invalid name {name!r}")
        if name in self.presentation.generator_names:
            raise WordTableError(f"{name!r} shadows a generator")
        if name in self.definitions:
            raise WordTableError(f"{name!r} defined twice")
        if isinstance(word, str):
            p = _Parser(_tokenize(word))
            tree = p.word()
            p.end()
        elif isinstance(word, Word):
            tree = ("word", word)
        else:
            tree = word
        if strict:
            self._check_known(tree)
        self.definitions[name] = tree

    def _check_known(self, tree):
        kind = tree[0]
        if kind == "name":
            _, name, line, col = tree
            if name not in self.definitions and name not in self.presentation.generator_names:
                raise ParseError(f"unknown name {name!r}", line, col)
        elif kind == "seq":
            for t in tree[1]:
                self._check_known(t)
        elif kind == "pow":
            self._check_known(tree[1])

    def __contains__(self, name: str) -> bool:
        return name in self.definitions

    def names(self) -> list[str]:
        return list(self.definitions)

    def expand(self, name: str) -> Word:
        return self._expand(name, ())

    def _expand(self, name: str, stack: tuple[str, ...]) -> Word:
        if name in stack:
            raise WordTableError("cyclic definition: " + " -> ".join(stack + (name,)))
        if name not in self.definitions:
            raise WordTableError(f"undefined name {name!r}")
        stack = stack + (name,)
        return self._evaluate(self.definitions[name], stack)

    def _evaluate(self, tree, stack):
        gens = self.presentation.generator_names

        def resolve(node):
            _, nm, line, col = node
            if nm in gens:
                return Word.generator(gens.index(nm))
            if nm not in self.definitions:
                raise ParseError(f"unknown name {nm!r}", line, col)
            return self._expand(nm, stack)

        if tree[0] == "word":
            return tree[1]
        return _evaluate(tree, resolve)

    def evaluate(self, tree) -> Word:
        return self._evaluate(tree, ())

    def word(self, text: str) -> Word:
        return parse_word(text, self.presentation, self)


def read_word_file(text: str, table: WordTable) -> list[Word]:
    """Parse a word file into ``table``; return the file's words in order.

    Forward references are rejected, so a parsed file can never be cyclic.
    """
    words = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        toks = _tokenize(line, lineno - 1)
        if len(toks) >= 3 and toks[0].kind == "ident" and toks[1].text == "=" and toks[1].kind == "sym":
            name_tok = toks[0]
            p = _Parser(toks[2:])
            tree = p.word()
            p.end()
            try:
                table._check_known(tree)
                table.define(name_tok.text, tree)
            except WordTableError as exc:
                raise ParseError(str(exc), name_tok.line, name_tok.col) from None
            words.append(table.expand(name_tok.text))
        else:
            p = _Parser(toks)
            tree = p.word()
            p.end()
            table._check_known(tree)
            words.append(table.evaluate(tree))
    return words


def format_word_file(words: list[Word], presentation: Presentation, names: list[str] | None = None) -> str:
    lines = []
    for i, w in enumerate(words):
        text = presentation.format_word(w)
        lines.append(f"{names[i]} = {text}" if names else text)
    return "\n".join(lines) + "\n"

