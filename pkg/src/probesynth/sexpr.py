"""S-expressions for SyGuS-IF v1 files, with source positions for error messages."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Iterator, Union

from .dsl import BV_MASK, Sort, format_literal


class ParseError(Exception):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}" if line else message)
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Symbol:
    name: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Literal:
    value: Any
    sort: Sort
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    def __str__(self) -> str:
        # bare negative numerals are not SMT-LIB, but keep them as written
        if self.sort is Sort.INT and self.value < 0:
            return str(self.value)
        return format_literal(self.value, self.sort)


@dataclass(frozen=True)
class SList:
    items: tuple[Node, ...]
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    def __str__(self) -> str:
        return "(" + " ".join(map(str, self.items)) + ")"

    def __len__(self) -> int:
        return len(self.items)

    def __getitem__(self, i: Any) -> Any:
        return self.items[i]

    def head(self) -> str | None:
        return self.items[0].name if self.items and isinstance(self.items[0], Symbol) else None


Node = Union[Symbol, Literal, SList]

_TOKEN = re.compile(r'''
    (?P<ws>\s+)
  | (?P<comment>;[^\n]*)
  | (?P<open>\()
  | (?P<close>\))
  | (?P<string>"(?:[^"]|"")*")
  | (?P<atom>[^\s()";]+)
''', re.VERBOSE)


def _tokens(text: str) -> Iterator[tuple[str, str, int, int]]:
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError("unterminated string literal", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            yield kind, m.group(), line, pos - line_start + 1
        chunk = m.group()
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()


def _atom(text: str, line: int, col: int) -> Node:
    if re.fullmatch(r"-?\d+", text):
        return Literal(int(text), Sort.INT, line, col)
    if text in ("true", "false"):
        return Literal(text == "true", Sort.BOOL, line, col)
    if text.startswith("#x"):
        try:
            return Literal(int(text[2:], 16) & BV_MASK, Sort.BV, line, col)
        except ValueError:
            raise ParseError(f"bad hex literal {text}", line, col) from None
    if text.startswith("#b"):
        try:
            return Literal(int(text[2:], 2) & BV_MASK, Sort.BV, line, col)
        except ValueError:
            raise ParseError(f"bad binary literal {text}", line, col) from None
    return Symbol(text, line, col)


def parse_all(text: str) -> list[Node]:
    """Parse every top-level S-expression in ``text``."""
    stack: list[tuple[list[Node], int, int]] = []
    top: list[Node] = []
    for kind, tok, line, col in _tokens(text):
        if kind == "open":
            stack.append(([], line, col))
        elif kind == "close":
            if not stack:
                raise ParseError("unexpected ')'", line, col)
            items, l0, c0 = stack.pop()
            node = SList(tuple(items), l0, c0)
            (stack[-1][0] if stack else top).append(node)
        else:
            node = (Literal(tok[1:-1].replace('""', '"'), Sort.STRING, line, col)
                    if kind == "string" else _atom(tok, line, col))
            (stack[-1][0] if stack else top).append(node)
    if stack:
        _, line, col = stack[-1]
        raise ParseError("unbalanced '('", line, col)
    return top


def parse_one(text: str) -> Node:
    nodes = parse_all(text)
    if len(nodes) != 1:
        raise ParseError(f"expected one expression, found {len(nodes)}")
    return nodes[0]
