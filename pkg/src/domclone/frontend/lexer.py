"""Tokenizer for Java source files.

Produces a flat token stream with line/column positions. Comments and
whitespace are dropped. `>` is always emitted as a single token; the
parser re-joins adjacent `>` tokens into shift operators where the
expression context calls for it, which sidesteps the classic generics
ambiguity (`List<List<String>>`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class LexError(Exception):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Token:
    kind: str  # ident | keyword | number | string | char | op | eof
    text: str
    line: int
    col: int


KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while true false null""".split()
)

PRIMITIVE_TYPES = frozenset(
    "boolean byte char double float int long short void".split()
)

MODIFIER_WORDS = frozenset(
    """public protected private static final abstract synchronized native
    strictfp transient volatile default sealed non""".split()
)

_OPERATORS = [
    "<<=", "...", "->", "::", "<<", "<=", ">=", "==", "!=", "&&", "||",
    "++", "--", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
    "+", "-", "*", "/", "%", "&", "|", "^", "!", "~", "<", ">", "=",
    "?", ":", ";", ",", ".", "(", ")", "{", "}", "[", "]", "@",
]

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<line_comment>//[^\n]*)
  | (?P<block_comment>/\*(?s:.*?)\*/)
  | (?P<textblock>\"\"\"(?s:.*?)\"\"\")
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<char>'(?:[^'\\\n]|\\.)+')
  | (?P<number>
        0[xX][0-9a-fA-F_]+[lL]?
      | 0[bB][01_]+[lL]?
      | (?:\d[\d_]*)?\.\d[\d_]*(?:[eE][+-]?\d+)?[fFdD]?
      | \d[\d_]*\.?(?:[eE][+-]?\d+)?[fFdDlL]?
    )
  | (?P<ident>[A-Za-z_$][A-Za-z0-9_$]*)
  | (?P<op>%s)
    """
    % "|".join(re.escape(op) for op in _OPERATORS),
    re.VERBOSE,
)


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    line = 1
    col = 1
    n = len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            # Unterminated strings/comments fall through to here too.
            raise LexError(f"unexpected character {source[pos]!r}", line)
        text = m.group(0)
        kind = m.lastgroup
        if kind == "ident":
            tokens.append(Token("keyword" if text in KEYWORDS else "ident", text, line, col))
        elif kind in ("string", "textblock"):
            tokens.append(Token("string", text, line, col))
        elif kind in ("number", "char", "op"):
            tokens.append(Token(kind, text, line, col))
        # ws and comments are skipped, but still advance line/col below
        newlines = text.count("\n")
        if newlines:
            line += newlines
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens
