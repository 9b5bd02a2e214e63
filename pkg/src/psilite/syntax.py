"""Lossless concrete syntax trees for a tolerant subset of Java.

Every byte of the input ends up in exactly one token, and rendering a tree
concatenates the leaves back into the original text. The parser recognizes
package/import declarations, classes (including nested ones), fields, and
methods; everything else (interfaces, enums, records, stray garbage) is kept
verbatim as opaque token runs so analysis never fails on real-world input.

Offsets throughout are byte offsets into the UTF-8 encoding of the source.
"""

from __future__ import annotations

import hashlib
from bisect import bisect_right
from dataclasses import dataclass, field
from enum import Enum


class TokenKind(Enum):
    KEYWORD = "Keyword"
    IDENTIFIER = "Identifier"
    NUMBER = "Number"
    STRING = "String"
    CHAR = "Char"
    PUNCT = "Punct"
    WHITESPACE = "Whitespace"
    LINE_COMMENT = "LineComment"
    BLOCK_COMMENT = "BlockComment"
    DOC_COMMENT = "DocComment"
    UNKNOWN = "Unknown"


class NodeKind(Enum):
    FILE = "File"
    PACKAGE_DECL = "PackageDecl"
    IMPORT_DECL = "ImportDecl"
    CLASS_DECL = "ClassDecl"
    FIELD_DECL = "FieldDecl"
    METHOD_DECL = "MethodDecl"
    PARAM = "Param"
    TYPE_REF_TEXT = "TypeRefText"
    BODY = "Body"
    TOKEN_RUN = "TokenRun"


TRIVIA_KINDS = frozenset(
    {
        TokenKind.WHITESPACE,
        TokenKind.LINE_COMMENT,
        TokenKind.BLOCK_COMMENT,
        TokenKind.DOC_COMMENT,
    }
)

KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while""".split()
)

PRIMITIVE_TYPES = frozenset(
    {"boolean", "byte", "char", "double", "float", "int", "long", "short"}
)

MODIFIER_KEYWORDS = frozenset(
    """public protected private static final abstract synchronized native
    strictfp transient volatile default""".split()
)

# Longest-match operator/separator table. Order within a length bucket does
# not matter; buckets are tried longest first.
_PUNCT_BY_LENGTH = (
    (b">>>=",),
    (b">>>", b"<<=", b">>=", b"..."),
    (
        b"==", b"!=", b"<=", b">=", b"&&", b"||", b"++", b"--", b"+=", b"-=",
        b"*=", b"/=", b"%=", b"&=", b"|=", b"^=", b"<<", b">>", b"->", b"::",
    ),
    tuple(bytes([c]) for c in b"+-*/%=<>!~?:;,.()[]{}&|^@"),
)

_PUNCT_START = frozenset(op[0] for bucket in _PUNCT_BY_LENGTH for op in bucket)

_WS_BYTES = frozenset(b" \t\r\n\f")
_DIGITS = frozenset(b"0123456789")
_IDENT_START = frozenset(
    b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_$"
)
_IDENT_CONT = _IDENT_START | _DIGITS
_HEX_DIGITS = frozenset(b"0123456789abcdefABCDEF_")


@dataclass(frozen=True, slots=True)
class Token:
    kind: TokenKind
    text: str
    start: int
    end: int
    index: int

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Token({self.kind.value}, {self.text!r}, {self.start}..{self.end})"


def _is_ident_byte(b: int) -> bool:
    return b in _IDENT_CONT or b >= 0x80


def tokenize(source: str) -> list[Token]:
    """Split ``source`` into a total, gap-free token sequence.

    Concatenating the token texts reproduces the input exactly; bytes that
    match no lexical rule become UNKNOWN tokens.
    """
    data = source.encode("utf-8")
    n = len(data)
    tokens: list[Token] = []
    i = 0

    def emit(kind: TokenKind, start: int, end: int) -> None:
        text = data[start:end].decode("utf-8")
        tokens.append(Token(kind, text, start, end, len(tokens)))

    while i < n:
        c = data[i]
        start = i
        if c in _WS_BYTES:
            i += 1
            while i < n and data[i] in _WS_BYTES:
                i += 1
            emit(TokenKind.WHITESPACE, start, i)
        elif c == 0x2F:  # '/'
            nxt = data[i + 1] if i + 1 < n else 0
            if nxt == 0x2F:  # //
                i += 2
                while i < n and data[i] not in (0x0A, 0x0D):
                    i += 1
                emit(TokenKind.LINE_COMMENT, start, i)
            elif nxt == 0x2A:  # /*
                i += 2
                terminated = False
                while i < n:
                    if data[i] == 0x2A and i + 1 < n and data[i + 1] == 0x2F:
                        i += 2
                        terminated = True
                        break
                    i += 1
                text_len = i - start
                is_doc = (
                    terminated
                    and text_len >= 5
                    and data[start : start + 3] == b"/**"
                )
                emit(TokenKind.DOC_COMMENT if is_doc else TokenKind.BLOCK_COMMENT, start, i)
            else:
                i = _lex_punct(data, i)
                emit(TokenKind.PUNCT, start, i)
        elif c == 0x22:  # '"'
            if data[i : i + 3] == b'"""':
                i = _lex_text_block(data, i)
            else:
                i = _lex_quoted(data, i, 0x22)
            emit(TokenKind.STRING, start, i)
        elif c == 0x27:  # "'"
            i = _lex_quoted(data, i, 0x27)
            emit(TokenKind.CHAR, start, i)
        elif c in _DIGITS or (
            c == 0x2E and i + 1 < n and data[i + 1] in _DIGITS
        ):
            i = _lex_number(data, i)
            emit(TokenKind.NUMBER, start, i)
        elif _is_ident_byte(c) and c not in _DIGITS:
            i += 1
            while i < n and _is_ident_byte(data[i]):
                i += 1
            text = data[start:i].decode("utf-8")
            kind = TokenKind.KEYWORD if text in KEYWORDS else TokenKind.IDENTIFIER
            tokens.append(Token(kind, text, start, i, len(tokens)))
        elif c in _PUNCT_START:
            i = _lex_punct(data, i)
            emit(TokenKind.PUNCT, start, i)
        else:
            i += 1
            while i < n and not _starts_any_token(data, i):
                i += 1
            emit(TokenKind.UNKNOWN, start, i)
    return tokens


def _starts_any_token(data: bytes, i: int) -> bool:
    c = data[i]
    return (
        c in _WS_BYTES
        or c in _PUNCT_START
        or c in _DIGITS
        or c in (0x22, 0x27)
        or _is_ident_byte(c)
    )


def _lex_punct(data: bytes, i: int) -> int:
    for bucket in _PUNCT_BY_LENGTH:
        for op in bucket:
            if data.startswith(op, i):
                return i + len(op)
    return i + 1  # unreachable so long as callers check _PUNCT_START


def _lex_quoted(data: bytes, i: int, quote: int) -> int:
    # Tolerant: an unterminated literal ends at the newline or EOF.
    n = len(data)
    i += 1
    while i < n:
        c = data[i]
        if c == 0x5C and i + 1 < n:  # backslash escape
            i += 2
            continue
        if c == quote:
            return i + 1
        if c in (0x0A, 0x0D):
            return i
        i += 1
    return i


def _lex_text_block(data: bytes, i: int) -> int:
    n = len(data)
    i += 3
    while i < n:
        if data[i] == 0x5C and i + 1 < n:
            i += 2
            continue
        if data[i : i + 3] == b'"""':
            return i + 3
        i += 1
    return i


def _lex_number(data: bytes, i: int) -> int:
    n = len(data)
    if data[i] == 0x30 and i + 1 < n and data[i + 1] in (0x78, 0x58):  # 0x
        i += 2
        while i < n and data[i] in _HEX_DIGITS:
            i += 1
        if i < n and data[i] == 0x2E:  # hex float
            i += 1
            while i < n and data[i] in _HEX_DIGITS:
                i += 1
        if i < n and data[i] in (0x70, 0x50):  # p/P exponent
            i = _lex_exponent(data, i)
    elif data[i] == 0x30 and i + 1 < n and data[i + 1] in (0x62, 0x42):  # 0b
        i += 2
        while i < n and data[i] in (0x30, 0x31, 0x5F):
            i += 1
    else:
        while i < n and (data[i] in _DIGITS or data[i] == 0x5F):
            i += 1
        if i < n and data[i] == 0x2E:
            i += 1
            while i < n and (data[i] in _DIGITS or data[i] == 0x5F):
                i += 1
        if i < n and data[i] in (0x65, 0x45):  # e/E
            i = _lex_exponent(data, i)
    if i < n and data[i] in (0x6C, 0x4C, 0x66, 0x46, 0x64, 0x44):  # lLfFdD
        i += 1
    return i


def _lex_exponent(data: bytes, i: int) -> int:
    n = len(data)
    j = i + 1
    if j < n and data[j] in (0x2B, 0x2D):
        j += 1
    if j < n and data[j] in _DIGITS:
        j += 1
        while j < n and (data[j] in _DIGITS or data[j] == 0x5F):
            j += 1
        return j
    return i  # bare 'e' is not an exponent; leave it for the next token


@dataclass(slots=True)
class SyntaxNode:
    """Interior tree node; children mix nodes and tokens in source order."""

    kind: NodeKind
    children: list["SyntaxNode | Token"] = field(default_factory=list)
    name: str | None = None
    info: dict | None = None
    start: int = 0
    end: int = 0

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)

    def seal(self) -> "SyntaxNode":
        if self.children:
            first, last = self.children[0], self.children[-1]
            self.start = first.start if isinstance(first, Token) else first.start
            self.end = last.end if isinstance(last, Token) else last.end
        return self

    def tokens(self):
        """Yield leaf tokens in source order."""
        for child in self.children:
            if isinstance(child, Token):
                yield child
            else:
                yield from child.tokens()

    def walk(self):
        """Yield this node and every descendant node, pre-order."""
        yield self
        for child in self.children:
            if isinstance(child, SyntaxNode):
                yield from child.walk()


@dataclass(slots=True)
class SyntaxTree:
    root: SyntaxNode
    path: str
    source: str
    tokens: list[Token]
    parse_notes: list[tuple[tuple[int, int], str]]
    _newlines: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        data = self.source.encode("utf-8")
        self._newlines = [i for i, b in enumerate(data) if b == 0x0A]

    def line_of(self, offset: int) -> int:
        """1-based line number of a byte offset."""
        return bisect_right(self._newlines, offset - 1) + 1

    def sha256(self) -> str:
        return hashlib.sha256(self.source.encode("utf-8")).hexdigest()


def render(tree: SyntaxTree) -> str:
    return "".join(tok.text for tok in tree.root.tokens())


# ---------------------------------------------------------------------------
# Span-based text edits


@dataclass(frozen=True, slots=True)
class TextEdit:
    start: int
    end: int
    replacement: str

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


class EditError(ValueError):
    pass


class OverlappingEdits(EditError):
    pass


class OutOfBounds(EditError):
    pass


def apply_edits(source: str, edits: list[TextEdit]) -> str:
    """Apply a batch of span edits as if simultaneously.

    Spans are byte offsets against the original text. Two zero-width inserts
    at the same offset are rejected as overlapping (their order would be
    ambiguous); an insert immediately followed by a replacement starting at
    the same offset is fine.
    """
    data = source.encode("utf-8")
    n = len(data)
    for e in edits:
        if not (0 <= e.start <= e.end <= n):
            raise OutOfBounds(f"edit span {e.start}..{e.end} outside 0..{n}")
    ordered = sorted(edits, key=lambda e: (e.start, e.end))
    for prev, cur in zip(ordered, ordered[1:]):
        if cur.start < prev.end or (
            prev.start == cur.start and prev.end == cur.end == prev.start
        ):
            raise OverlappingEdits(
                f"edits {prev.start}..{prev.end} and {cur.start}..{cur.end} overlap"
            )
    pieces: list[bytes] = []
    pos = 0
    for e in ordered:
        pieces.append(data[pos : e.start])
        pieces.append(e.replacement.encode("utf-8"))
        pos = e.end
    pieces.append(data[pos:])
    return b"".join(pieces).decode("utf-8")


# ---------------------------------------------------------------------------
# Shallow expression scanning shared by the analyses
#
# Method bodies are not given a statement grammar; instead the analyses walk
# dotted-name chains and call argument lists straight off the token stream.


_GENERIC_TYPEISH_PUNCT = frozenset({".", ",", "?", "&", "<", ">", ">>", ">>>", "[", "]", "@"})


def scan_generic_group(tokens: list[Token], start: int) -> int | None:
    """If ``tokens[start]`` opens a plausible generic argument group, return
    the index just past its closing ``>``; otherwise None.

    Only type-ish tokens may appear inside (identifiers, dots, commas,
    wildcards, bounds keywords, brackets); anything else means the ``<`` was
    a comparison operator.
    """
    tok = tokens[start]
    if tok.kind is not TokenKind.PUNCT or tok.text != "<":
        return None
    depth = 0
    i = start
    n = len(tokens)
    while i < n:
        t = tokens[i]
        if t.kind in TRIVIA_KINDS:
            i += 1
            continue
        if t.kind is TokenKind.PUNCT and t.text in ("<", ">", ">>", ">>>"):
            for ch in t.text:
                depth += 1 if ch == "<" else -1
                if depth == 0:
                    # '>' chars beyond the closer would belong to an outer
                    # group; a lone group never produces them.
                    return i + 1
                if depth < 0:
                    return None
        elif t.kind is TokenKind.PUNCT and t.text in _GENERIC_TYPEISH_PUNCT:
            pass
        elif t.kind is TokenKind.IDENTIFIER:
            pass
        elif t.kind is TokenKind.KEYWORD and (
            t.text in PRIMITIVE_TYPES or t.text in ("extends", "super")
        ):
            pass
        else:
            return None
        i += 1
    return None


@dataclass(frozen=True, slots=True)
class ChainStep:
    dot_index: int
    name_index: int
    is_call: bool


@dataclass(frozen=True, slots=True)
class Chain:
    head_index: int
    head_is_call: bool
    steps: tuple[ChainStep, ...]


def scan_chains(tokens: list[Token], start: int, end: int) -> list[Chain]:
    """Find dotted-name chains (``head.a.b`` / ``head.m(...)``) in a token
    index range. A chain head is an identifier or ``this`` not preceded by a
    dot; a call step terminates its chain.
    """
    sig = [
        i
        for i in range(start, end)
        if tokens[i].kind not in TRIVIA_KINDS
    ]
    chains: list[Chain] = []
    m = len(sig)
    j = 0
    while j < m:
        idx = sig[j]
        tok = tokens[idx]
        is_head = tok.kind is TokenKind.IDENTIFIER or (
            tok.kind is TokenKind.KEYWORD and tok.text == "this"
        )
        if is_head and j > 0:
            prev = tokens[sig[j - 1]]
            if prev.kind is TokenKind.PUNCT and prev.text == ".":
                is_head = False
        if not is_head:
            j += 1
            continue
        head_is_call = (
            j + 1 < m
            and tokens[sig[j + 1]].kind is TokenKind.PUNCT
            and tokens[sig[j + 1]].text == "("
        )
        steps: list[ChainStep] = []
        k = j + 1
        if not head_is_call:
            while (
                k + 1 < m
                and tokens[sig[k]].kind is TokenKind.PUNCT
                and tokens[sig[k]].text == "."
                and tokens[sig[k + 1]].kind is TokenKind.IDENTIFIER
            ):
                is_call = (
                    k + 2 < m
                    and tokens[sig[k + 2]].kind is TokenKind.PUNCT
                    and tokens[sig[k + 2]].text == "("
                )
                steps.append(ChainStep(sig[k], sig[k + 1], is_call))
                k += 2
                if is_call:
                    break
        chains.append(Chain(idx, head_is_call, tuple(steps)))
        j = k if not head_is_call else j + 1
    return chains


def split_call_args(tokens: list[Token], open_index: int) -> tuple[list[tuple[int, int]], int] | None:
    """Split the argument list opened by the ``(`` at ``open_index``.

    Returns (list of [start, end) token index ranges, index of the closing
    paren), or None if the parens never balance. Commas nested in brackets or
    generic groups do not split.
    """
    assert tokens[open_index].text == "("
    n = len(tokens)
    depth = 1
    i = open_index + 1
    arg_start = i
    ranges: list[tuple[int, int]] = []

    def push(end: int) -> None:
        s, e = arg_start, end
        while s < e and tokens[s].kind in TRIVIA_KINDS:
            s += 1
        while e > s and tokens[e - 1].kind in TRIVIA_KINDS:
            e -= 1
        if s < e:
            ranges.append((s, e))

    while i < n:
        t = tokens[i]
        if t.kind is TokenKind.PUNCT:
            if t.text in ("(", "[", "{"):
                depth += 1
            elif t.text in (")", "]", "}"):
                depth -= 1
                if depth == 0:
                    push(i)
                    return ranges, i
            elif t.text == "," and depth == 1:
                push(i)
                arg_start = i + 1
            elif t.text == "<":
                group_end = scan_generic_group(tokens, i)
                if group_end is not None:
                    i = group_end
                    continue
        i += 1
    return None


# ---------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.n = len(tokens)
        self.i = 0
        self.notes: list[tuple[tuple[int, int], str]] = []

    # -- cursor helpers -----------------------------------------------------

    def _peek_sig(self, offset: int = 0) -> Token | None:
        """Significant token ``offset`` steps ahead, skipping trivia."""
        i = self.i
        seen = 0
        while i < self.n:
            t = self.toks[i]
            if t.kind not in TRIVIA_KINDS:
                if seen == offset:
                    return t
                seen += 1
            i += 1
        return None

    def _take_trivia(self) -> list[Token]:
        out = []
        while self.i < self.n and self.toks[self.i].kind in TRIVIA_KINDS:
            out.append(self.toks[self.i])
            self.i += 1
        return out

    def _advance_into(self, kids: list) -> Token:
        t = self.toks[self.i]
        kids.append(t)
        self.i += 1
        return t

    def _consume_trivia_into(self, kids: list) -> None:
        while self.i < self.n and self.toks[self.i].kind in TRIVIA_KINDS:
            kids.append(self.toks[self.i])
            self.i += 1

    def _note(self, span: tuple[int, int], message: str) -> None:
        self.notes.append((span, message))

    # -- entry point ----------------------------------------------------------

    def parse_file(self) -> SyntaxNode:
        children: list[SyntaxNode | Token] = []
        while True:
            trivia = self._take_trivia()
            if self.i >= self.n:
                children.extend(trivia)
                break
            t = self.toks[self.i]
            decl: SyntaxNode | None = None
            if t.kind is TokenKind.KEYWORD and t.text == "package":
                decl = self._parse_package()
            elif t.kind is TokenKind.KEYWORD and t.text == "import":
                decl = self._parse_import()
            else:
                decl = self._try_parse_type_decl()
                if decl is None:
                    decl = self._recover_top_level()
            if decl.kind is NodeKind.CLASS_DECL:
                rest, doc_tail = _split_doc_tail(trivia)
                children.extend(rest)
                if doc_tail:
                    decl.children[:0] = doc_tail
                    if decl.info is not None:
                        decl.info["doc"] = doc_tail[0]
                    decl.seal()
            else:
                children.extend(trivia)
            children.append(decl)
        root = SyntaxNode(NodeKind.FILE, children)
        root.seal()
        return root

    # -- top-level declarations ----------------------------------------------

    def _parse_package(self) -> SyntaxNode:
        kids: list[SyntaxNode | Token] = []
        self._advance_into(kids)  # 'package'
        name_parts: list[str] = []
        while self.i < self.n:
            self._consume_trivia_into(kids)
            if self.i >= self.n:
                break
            t = self.toks[self.i]
            if t.kind is TokenKind.PUNCT and t.text == ";":
                self._advance_into(kids)
                break
            if t.kind is TokenKind.IDENTIFIER:
                name_parts.append(t.text)
                self._advance_into(kids)
            elif t.kind is TokenKind.PUNCT and t.text == ".":
                self._advance_into(kids)
            else:
                node = SyntaxNode(
                    NodeKind.PACKAGE_DECL, kids, ".".join(name_parts),
                    {"name": ".".join(name_parts)},
                ).seal()
                self._note(node.span, "malformed package declaration")
                return node
        name = ".".join(name_parts)
        return SyntaxNode(NodeKind.PACKAGE_DECL, kids, name, {"name": name}).seal()

    def _parse_import(self) -> SyntaxNode:
        kids: list[SyntaxNode | Token] = []
        self._advance_into(kids)  # 'import'
        parts: list[str] = []
        is_static = False
        wildcard = False
        first = True
        while self.i < self.n:
            self._consume_trivia_into(kids)
            if self.i >= self.n:
                break
            t = self.toks[self.i]
            if t.kind is TokenKind.PUNCT and t.text == ";":
                self._advance_into(kids)
                break
            if first and t.kind is TokenKind.KEYWORD and t.text == "static":
                is_static = True
                self._advance_into(kids)
            elif t.kind is TokenKind.IDENTIFIER:
                parts.append(t.text)
                self._advance_into(kids)
            elif t.kind is TokenKind.PUNCT and t.text == ".":
                self._advance_into(kids)
            elif t.kind is TokenKind.PUNCT and t.text == "*":
                wildcard = True
                self._advance_into(kids)
            else:
                break
            first = False
        target = ".".join(parts)
        info = {"target": target, "wildcard": wildcard, "static": is_static}
        return SyntaxNode(NodeKind.IMPORT_DECL, kids, target, info).seal()

    # -- class declarations ----------------------------------------------------

    def _try_parse_type_decl(self, enclosing: str | None = None) -> SyntaxNode | None:
        """Parse a class declaration, or wrap an interface/enum/record/
        annotation declaration as an opaque TokenRun. None if the cursor is
        not at a type declaration at all.
        """
        save = self.i
        kids: list[SyntaxNode | Token] = []
        mods: list[str] = []
        while self.i < self.n:
            self._consume_trivia_into(kids)
            if self.i >= self.n:
                break
            t = self.toks[self.i]
            if t.kind is TokenKind.PUNCT and t.text == "@":
                nxt = self._peek_sig(1)
                if nxt is not None and nxt.kind is TokenKind.KEYWORD and nxt.text == "interface":
                    return self._consume_opaque_type_decl(kids, save, "annotation type")
                if not self._consume_annotation(kids):
                    self.i = save
                    return None
            elif t.kind is TokenKind.KEYWORD and t.text in MODIFIER_KEYWORDS:
                mods.append(t.text)
                self._advance_into(kids)
            else:
                break
        if self.i >= self.n:
            self.i = save
            return None
        t = self.toks[self.i]
        if t.kind is TokenKind.KEYWORD and t.text == "class":
            return self._finish_class_decl(kids, mods, save)
        if t.kind is TokenKind.KEYWORD and t.text in ("interface", "enum"):
            return self._consume_opaque_type_decl(kids, save, f"{t.text} declaration")
        if (
            t.kind is TokenKind.IDENTIFIER
            and t.text == "record"
            and (nxt := self._peek_sig(1)) is not None
            and nxt.kind is TokenKind.IDENTIFIER
        ):
            return self._consume_opaque_type_decl(kids, save, "record declaration")
        self.i = save
        return None

    def _finish_class_decl(
        self, kids: list, mods: list[str], save: int
    ) -> SyntaxNode | None:
        self._advance_into(kids)  # 'class'
        class_kw = kids[-1]
        self._consume_trivia_into(kids)
        if self.i >= self.n or self.toks[self.i].kind is not TokenKind.IDENTIFIER:
            self.i = save
            return None
        name_tok = self._advance_into(kids)
        # Header (type params, extends, implements): opaque until the body.
        while self.i < self.n:
            t = self.toks[self.i]
            if t.kind is TokenKind.PUNCT and t.text == "{":
                break
            if t.kind is TokenKind.PUNCT and t.text == "<":
                end = scan_generic_group(self.toks, self.i)
                if end is not None:
                    while self.i < end:
                        self._advance_into(kids)
                    continue
            if t.kind is TokenKind.PUNCT and t.text in (";", "}", ")"):
                self.i = save
                return None
            self._advance_into(kids)
        if self.i >= self.n:
            self.i = save
            return None
        body = self._parse_class_body(name_tok.text)
        kids.append(body)
        info = {"mods": mods, "class_kw": class_kw, "doc": None}
        return SyntaxNode(NodeKind.CLASS_DECL, kids, name_tok.text, info).seal()

    def _consume_opaque_type_decl(self, kids: list, save: int, what: str) -> SyntaxNode:
        """Swallow an unsupported type declaration (interface, enum, record,
        @interface) as a TokenRun: header up to '{', then the balanced body.
        """
        del save
        while self.i < self.n:
            t = self.toks[self.i]
            if t.kind is TokenKind.PUNCT and t.text == "{":
                self._consume_balanced_braces(kids)
                break
            if t.kind is TokenKind.PUNCT and t.text == ";":
                self._advance_into(kids)
                break
            self._advance_into(kids)
        node = SyntaxNode(NodeKind.TOKEN_RUN, kids, None, {"reason": what}).seal()
        self._note(node.span, f"{what} kept as opaque region (not analyzed)")
        return node

    def _consume_annotation(self, kids: list) -> bool:
        """Consume ``@Name`` / ``@p.q.Name`` / ``@Name(...)`` as plain tokens."""
        self._advance_into(kids)  # '@'
        self._consume_trivia_into(kids)
        if self.i >= self.n or self.toks[self.i].kind is not TokenKind.IDENTIFIER:
            return False
        self._advance_into(kids)
        while (
            (t := self._peek_sig()) is not None
            and t.kind is TokenKind.PUNCT
            and t.text == "."
            and (n2 := self._peek_sig(1)) is not None
            and n2.kind is TokenKind.IDENTIFIER
        ):
            self._consume_trivia_into(kids)
            self._advance_into(kids)  # '.'
            self._consume_trivia_into(kids)
            self._advance_into(kids)  # name
        t = self._peek_sig()
        if t is not None and t.kind is TokenKind.PUNCT and t.text == "(":
            self._consume_trivia_into(kids)
            depth = 0
            while self.i < self.n:
                tok = self.toks[self.i]
                if tok.kind is TokenKind.PUNCT and tok.text == "(":
                    depth += 1
                elif tok.kind is TokenKind.PUNCT and tok.text == ")":
                    depth -= 1
                    self._advance_into(kids)
                    if depth == 0:
                        break
                    continue
                self._advance_into(kids)
        return True

    def _consume_balanced_braces(self, kids: list) -> None:
        depth = 0
        while self.i < self.n:
            t = self.toks[self.i]
            if t.kind is TokenKind.PUNCT and t.text == "{":
                depth += 1
            elif t.kind is TokenKind.PUNCT and t.text == "}":
                depth -= 1
                self._advance_into(kids)
                if depth == 0:
                    return
                continue
            self._advance_into(kids)
        self._note(
            (kids[0].start if kids else 0, self.toks[-1].end if self.toks else 0),
            "unbalanced braces at end of file",
        )

    # -- class bodies -----------------------------------------------------------

    def _parse_class_body(self, enclosing_simple_name: str) -> SyntaxNode:
        kids: list[SyntaxNode | Token] = []
        self._advance_into(kids)  # '{'
        while True:
            trivia = self._take_trivia()
            if self.i >= self.n:
                kids.extend(trivia)
                self._note(
                    (kids[0].start, kids[-1].end if kids else 0),
                    f"unterminated body of class {enclosing_simple_name}",
                )
                break
            t = self.toks[self.i]
            if t.kind is TokenKind.PUNCT and t.text == "}":
                kids.extend(trivia)
                self._advance_into(kids)
                break
            if t.kind is TokenKind.PUNCT and t.text == ";":
                # stray empty declaration; legal, nothing to analyze
                kids.extend(trivia)
                self._advance_into(kids)
                continue
            member = self._try_parse_type_decl(enclosing_simple_name)
            if member is None:
                member = self._try_parse_member(enclosing_simple_name)
            if member is None:
                member = self._recover_member()
            if member.kind in (NodeKind.CLASS_DECL, NodeKind.FIELD_DECL, NodeKind.METHOD_DECL):
                rest, doc_tail = _split_doc_tail(trivia)
                kids.extend(rest)
                if doc_tail:
                    member.children[:0] = doc_tail
                    if member.info is not None:
                        member.info["doc"] = doc_tail[0]
                    member.seal()
            else:
                kids.extend(trivia)
            kids.append(member)
        return SyntaxNode(NodeKind.BODY, kids).seal()

    def _try_parse_member(self, enclosing_simple_name: str) -> SyntaxNode | None:
        save = self.i
        kids: list[SyntaxNode | Token] = []
        mods: list[str] = []
        while self.i < self.n:
            self._consume_trivia_into(kids)
            if self.i >= self.n:
                self.i = save
                return None
            t = self.toks[self.i]
            if t.kind is TokenKind.PUNCT and t.text == "@":
                if not self._consume_annotation(kids):
                    self.i = save
                    return None
            elif t.kind is TokenKind.KEYWORD and t.text in MODIFIER_KEYWORDS:
                mods.append(t.text)
                self._advance_into(kids)
            else:
                break
        t = self.toks[self.i] if self.i < self.n else None
        if t is None:
            self.i = save
            return None
        if t.kind is TokenKind.PUNCT and t.text == "{":
            # instance or static initializer block; kept but not analyzed
            self._consume_balanced_braces(kids)
            return SyntaxNode(
                NodeKind.TOKEN_RUN, kids, None, {"reason": "initializer block"}
            ).seal()
        if t.kind is TokenKind.PUNCT and t.text == "<":
            end = scan_generic_group(self.toks, self.i)
            if end is None:
                self.i = save
                return None
            while self.i < end:
                self._advance_into(kids)
            self._consume_trivia_into(kids)
            t = self.toks[self.i] if self.i < self.n else None
            if t is None:
                self.i = save
                return None
        # Constructor: the enclosing class's simple name followed by '('.
        if (
            t.kind is TokenKind.IDENTIFIER
            and t.text == enclosing_simple_name
            and (nxt := self._peek_sig(1)) is not None
            and nxt.kind is TokenKind.PUNCT
            and nxt.text == "("
        ):
            name_tok = self._advance_into(kids)
            return self._finish_method(
                kids, mods, name_tok, None, save, is_constructor=True
            )
        tref = self._parse_type_ref()
        if tref is None:
            self.i = save
            return None
        kids.append(tref)
        self._consume_trivia_into(kids)
        if self.i >= self.n or self.toks[self.i].kind is not TokenKind.IDENTIFIER:
            self.i = save
            return None
        name_tok = self._advance_into(kids)
        nxt = self._peek_sig()
        if nxt is not None and nxt.kind is TokenKind.PUNCT and nxt.text == "(":
            return self._finish_method(kids, mods, name_tok, tref, save, is_constructor=False)
        return self._finish_field(kids, mods, name_tok, tref, save)

    def _parse_type_ref(self) -> SyntaxNode | None:
        kids: list[SyntaxNode | Token] = []
        if self.i >= self.n:
            return None
        t = self.toks[self.i]
        if t.kind is TokenKind.KEYWORD and (t.text in PRIMITIVE_TYPES or t.text == "void"):
            self._advance_into(kids)
        elif t.kind is TokenKind.IDENTIFIER:
            self._advance_into(kids)
            while (
                (d := self._peek_sig()) is not None
                and d.kind is TokenKind.PUNCT
                and d.text == "."
                and (n2 := self._peek_sig(1)) is not None
                and n2.kind is TokenKind.IDENTIFIER
            ):
                self._consume_trivia_into(kids)
                self._advance_into(kids)  # '.'
                self._consume_trivia_into(kids)
                self._advance_into(kids)  # name
            g = self._peek_sig()
            if g is not None and g.kind is TokenKind.PUNCT and g.text == "<":
                self._consume_trivia_into(kids)
                end = scan_generic_group(self.toks, self.i)
                if end is None:
                    return None
                while self.i < end:
                    self._advance_into(kids)
        else:
            return None
        while (
            (b := self._peek_sig()) is not None
            and b.kind is TokenKind.PUNCT
            and b.text == "["
            and (b2 := self._peek_sig(1)) is not None
            and b2.kind is TokenKind.PUNCT
            and b2.text == "]"
        ):
            self._consume_trivia_into(kids)
            self._advance_into(kids)
            self._consume_trivia_into(kids)
            self._advance_into(kids)
        text = "".join(
            k.text for k in kids if isinstance(k, Token) and k.kind not in TRIVIA_KINDS
        )
        return SyntaxNode(NodeKind.TYPE_REF_TEXT, kids, text, {"text": text}).seal()

    def _finish_method(
        self,
        kids: list,
        mods: list[str],
        name_tok: Token,
        return_tref: SyntaxNode | None,
        save: int,
        is_constructor: bool,
    ) -> SyntaxNode | None:
        self._consume_trivia_into(kids)
        if self.i >= self.n or self.toks[self.i].text != "(":
            self.i = save
            return None
        self._advance_into(kids)  # '('
        params: list[SyntaxNode] = []
        while True:
            self._consume_trivia_into(kids)
            if self.i >= self.n:
                self.i = save
                return None
            t = self.toks[self.i]
            if t.kind is TokenKind.PUNCT and t.text == ")":
                self._advance_into(kids)
                break
            param = self._parse_param()
            if param is None:
                self.i = save
                return None
            params.append(param)
            kids.append(param)
            self._consume_trivia_into(kids)
            if self.i >= self.n:
                self.i = save
                return None
            t = self.toks[self.i]
            if t.kind is TokenKind.PUNCT and t.text == ",":
                self._advance_into(kids)
            elif t.kind is TokenKind.PUNCT and t.text == ")":
                self._advance_into(kids)
                break
            else:
                self.i = save
                return None
        # throws clause
        nxt = self._peek_sig()
        if nxt is not None and nxt.kind is TokenKind.KEYWORD and nxt.text == "throws":
            self._consume_trivia_into(kids)
            self._advance_into(kids)
            while (
                (t2 := self._peek_sig()) is not None
                and (
                    t2.kind is TokenKind.IDENTIFIER
                    or (t2.kind is TokenKind.PUNCT and t2.text in (".", ","))
                )
            ):
                self._consume_trivia_into(kids)
                self._advance_into(kids)
        nxt = self._peek_sig()
        body_node: SyntaxNode | None = None
        if nxt is not None and nxt.kind is TokenKind.PUNCT and nxt.text == "{":
            self._consume_trivia_into(kids)
            body_kids: list[SyntaxNode | Token] = []
            self._consume_balanced_braces(body_kids)
            body_node = SyntaxNode(NodeKind.BODY, body_kids).seal()
            kids.append(body_node)
        elif nxt is not None and nxt.kind is TokenKind.PUNCT and nxt.text == ";":
            self._consume_trivia_into(kids)
            self._advance_into(kids)
        else:
            self.i = save
            return None
        info = {
            "mods": mods,
            "params": params,
            "return_type": return_tref.info["text"] if return_tref is not None else None,
            "is_constructor": is_constructor,
            "body": body_node,
            "doc": None,
            "name_tok": name_tok,
        }
        return SyntaxNode(NodeKind.METHOD_DECL, kids, name_tok.text, info).seal()

    def _parse_param(self) -> SyntaxNode | None:
        kids: list[SyntaxNode | Token] = []
        while self.i < self.n:
            self._consume_trivia_into(kids)
            if self.i >= self.n:
                return None
            t = self.toks[self.i]
            if t.kind is TokenKind.PUNCT and t.text == "@":
                if not self._consume_annotation(kids):
                    return None
            elif t.kind is TokenKind.KEYWORD and t.text == "final":
                self._advance_into(kids)
            else:
                break
        tref = self._parse_type_ref()
        if tref is None:
            return None
        kids.append(tref)
        type_text = tref.info["text"]
        nxt = self._peek_sig()
        if nxt is not None and nxt.kind is TokenKind.PUNCT and nxt.text == "...":
            self._consume_trivia_into(kids)
            self._advance_into(kids)
            type_text += "..."
        self._consume_trivia_into(kids)
        if self.i >= self.n or self.toks[self.i].kind is not TokenKind.IDENTIFIER:
            return None
        name_tok = self._advance_into(kids)
        while (
            (b := self._peek_sig()) is not None
            and b.kind is TokenKind.PUNCT
            and b.text == "["
            and (b2 := self._peek_sig(1)) is not None
            and b2.text == "]"
        ):
            self._consume_trivia_into(kids)
            self._advance_into(kids)
            self._consume_trivia_into(kids)
            self._advance_into(kids)
            type_text += "[]"
        info = {"type": type_text, "name_tok": name_tok}
        return SyntaxNode(NodeKind.PARAM, kids, name_tok.text, info).seal()

    def _finish_field(
        self, kids: list, mods: list[str], first_name: Token, tref: SyntaxNode, save: int
    ) -> SyntaxNode | None:
        base_type = tref.info["text"]
        declarators: list[dict] = []
        name_tok = first_name
        while True:
            suffix = ""
            while (
                (b := self._peek_sig()) is not None
                and b.kind is TokenKind.PUNCT
                and b.text == "["
                and (b2 := self._peek_sig(1)) is not None
                and b2.text == "]"
            ):
                self._consume_trivia_into(kids)
                self._advance_into(kids)
                self._consume_trivia_into(kids)
                self._advance_into(kids)
                suffix += "[]"
            decl = {"name_tok": name_tok, "type": base_type + suffix, "init": None}
            declarators.append(decl)
            self._consume_trivia_into(kids)
            if self.i >= self.n:
                self.i = save
                return None
            t = self.toks[self.i]
            if t.kind is TokenKind.PUNCT and t.text == "=":
                self._advance_into(kids)
                init_range = self._consume_initializer(kids)
                if init_range is None:
                    self.i = save
                    return None
                decl["init"] = init_range
                self._consume_trivia_into(kids)
                if self.i >= self.n:
                    self.i = save
                    return None
                t = self.toks[self.i]
            if t.kind is TokenKind.PUNCT and t.text == ";":
                self._advance_into(kids)
                break
            if t.kind is TokenKind.PUNCT and t.text == ",":
                self._advance_into(kids)
                self._consume_trivia_into(kids)
                if self.i >= self.n or self.toks[self.i].kind is not TokenKind.IDENTIFIER:
                    self.i = save
                    return None
                name_tok = self._advance_into(kids)
                continue
            self.i = save
            return None
        info = {"mods": mods, "declarators": declarators, "doc": None}
        return SyntaxNode(
            NodeKind.FIELD_DECL, kids, first_name.text, info
        ).seal()

    def _consume_initializer(self, kids: list) -> tuple[int, int] | None:
        """Consume an initializer expression up to a top-level ',' or ';'.

        Returns the [start, end) token index range of the expression.
        """
        start = self.i
        depth = 0
        while self.i < self.n:
            t = self.toks[self.i]
            if t.kind is TokenKind.PUNCT:
                if t.text in ("(", "[", "{"):
                    depth += 1
                elif t.text in (")", "]", "}"):
                    if depth == 0:
                        return None
                    depth -= 1
                elif depth == 0 and t.text in (",", ";"):
                    return (start, self.i) if self.i > start else None
                elif t.text == "<":
                    end = scan_generic_group(self.toks, self.i)
                    if end is not None:
                        while self.i < end:
                            self._advance_into(kids)
                        continue
            self._advance_into(kids)
        return None

    # -- recovery ----------------------------------------------------------------

    def _recover_top_level(self) -> SyntaxNode:
        kids: list[SyntaxNode | Token] = []
        depth = 0
        self._advance_into(kids)
        while self.i < self.n:
            t = self.toks[self.i]
            if t.kind in TRIVIA_KINDS:
                if depth == 0 and self._tl_boundary_ahead():
                    break
                self._advance_into(kids)
                continue
            if t.kind is TokenKind.PUNCT and t.text == "{":
                depth += 1
            elif t.kind is TokenKind.PUNCT and t.text == "}":
                if depth > 0:
                    depth -= 1
                self._advance_into(kids)
                if depth == 0:
                    break
                continue
            elif depth == 0 and t.kind is TokenKind.PUNCT and t.text == ";":
                self._advance_into(kids)
                break
            elif depth == 0 and t.kind is TokenKind.KEYWORD and t.text in (
                "package",
                "import",
                "class",
            ):
                break
            self._advance_into(kids)
        node = SyntaxNode(NodeKind.TOKEN_RUN, kids).seal()
        self._note(node.span, "unrecognized top-level construct")
        return node

    def _tl_boundary_ahead(self) -> bool:
        t = self._peek_sig()
        return (
            t is not None
            and t.kind is TokenKind.KEYWORD
            and t.text in ("package", "import", "class")
        )

    def _recover_member(self) -> SyntaxNode:
        kids: list[SyntaxNode | Token] = []
        depth = 0
        self._advance_into(kids)
        while self.i < self.n:
            t = self.toks[self.i]
            if t.kind is TokenKind.PUNCT and t.text == "{":
                depth += 1
            elif t.kind is TokenKind.PUNCT and t.text == "}":
                if depth == 0:
                    break  # the class's own closing brace
                depth -= 1
                self._advance_into(kids)
                if depth == 0:
                    break
                continue
            elif depth == 0 and t.kind is TokenKind.PUNCT and t.text == ";":
                self._advance_into(kids)
                break
            self._advance_into(kids)
        # trailing trivia stays outside the run
        while kids and isinstance(kids[-1], Token) and kids[-1].kind in TRIVIA_KINDS:
            self.i -= 1
            kids.pop()
        node = SyntaxNode(NodeKind.TOKEN_RUN, kids).seal()
        self._note(node.span, "unrecognized class member")
        return node


def _split_doc_tail(trivia: list[Token]) -> tuple[list[Token], list[Token]]:
    """Split trailing ``[DocComment, whitespace...]`` off a trivia run.

    The doc comment attaches to the following declaration only when nothing
    but whitespace separates them.
    """
    last_doc = None
    for idx, t in enumerate(trivia):
        if t.kind is TokenKind.DOC_COMMENT:
            last_doc = idx
    if last_doc is None:
        return trivia, []
    if all(t.kind is TokenKind.WHITESPACE for t in trivia[last_doc + 1 :]):
        return trivia[:last_doc], trivia[last_doc:]
    return trivia, []


def parse_file(source: str, path: str = "<memory>") -> SyntaxTree:
    """Parse Java source into a lossless tree. Never raises on bad input;
    problem regions are wrapped as token runs and reported in parse_notes.
    """
    tokens = tokenize(source)
    parser = _Parser(tokens)
    root = parser.parse_file()
    return SyntaxTree(root, path, source, tokens, parser.notes)
