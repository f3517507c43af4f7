"""Lexer for the query language.

Tokens keep their raw source slice and offset, so concatenating lexemes
with the original whitespace reproduces the input exactly. Keywords are
case-insensitive; identifiers are case-sensitive. `//` starts a line
comment. String literals take single or double quotes with backslash
escapes (single-quoted is the canonical form the printer emits).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from ..errors import LexError

KEYWORDS = {
    "CREATE", "MATCH", "WHERE", "WITH", "UNWIND", "RETURN", "SET", "DELETE",
    "DETACH", "ORDER", "BY", "LIMIT", "LOAD", "CSV", "HEADERS", "FROM", "AS",
    "CALL", "YIELD", "INDEX", "FOR", "ON", "AND", "OR", "NOT", "IN",
    "DISTINCT", "ASC", "DESC", "TRUE", "FALSE", "NULL",
}

# longest first so <-, <=, <> win over <
OPERATORS = ["<>", "<=", ">=", "<-", "->", "=", "<", ">", "-", "+", "*"]
PUNCTUATION = "(){}[]:,.;"

_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "\\": "\\", "'": "'", '"': '"'}


@dataclass(frozen=True)
class Token:
    kind: str  # keyword | identifier | string | integer | float | punct | operator | parameter
    text: str  # raw source slice
    offset: int
    value: Any = None  # parsed payload for string / integer / float / parameter

    def __repr__(self) -> str:
        return f"Token({self.kind}, {self.text!r}@{self.offset})"


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_"


def _is_ident(ch: str) -> bool:
    return ch.isalnum() or ch == "_"


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if text.startswith("//", i):
            end = text.find("\n", i)
            i = n if end == -1 else end + 1
            continue
        if ch in "'\"":
            quote = ch
            j = i + 1
            parts: list[str] = []
            while j < n:
                c = text[j]
                if c == "\\":
                    if j + 1 >= n:
                        raise LexError("unterminated string", i)
                    parts.append(_ESCAPES.get(text[j + 1], text[j + 1]))
                    j += 2
                    continue
                if c == quote:
                    break
                parts.append(c)
                j += 1
            else:
                raise LexError("unterminated string", i)
            tokens.append(Token("string", text[i:j + 1], i, "".join(parts)))
            i = j + 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            is_float = False
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                is_float = True
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    is_float = True
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            raw = text[i:j]
            if is_float:
                tokens.append(Token("float", raw, i, float(raw)))
            else:
                tokens.append(Token("integer", raw, i, int(raw)))
            i = j
            continue
        if ch == "$":
            j = i + 1
            if j >= n or not _is_ident_start(text[j]):
                raise LexError("expected parameter name after $", i)
            while j < n and _is_ident(text[j]):
                j += 1
            tokens.append(Token("parameter", text[i:j], i, text[i + 1:j]))
            i = j
            continue
        if _is_ident_start(ch):
            j = i
            while j < n and _is_ident(text[j]):
                j += 1
            raw = text[i:j]
            if raw.upper() in KEYWORDS:
                tokens.append(Token("keyword", raw, i, raw.upper()))
            else:
                tokens.append(Token("identifier", raw, i, raw))
            i = j
            continue
        matched = False
        for op in OPERATORS:
            if text.startswith(op, i):
                tokens.append(Token("operator", op, i))
                i += len(op)
                matched = True
                break
        if matched:
            continue
        if ch in PUNCTUATION:
            tokens.append(Token("punct", ch, i))
            i += 1
            continue
        raise LexError(f"unexpected character {ch!r}", i)
    return tokens
