"""Run-time values, programs and evaluation for the String, BitVec and Circuit domains.

Values are plain Python objects: ``str`` for strings, ``int`` for integers
(wrapped to signed 64-bit), ``bool`` for booleans and ``int`` in
``[0, 2**64)`` for bitvectors. The sort of a value is carried statically by
the grammar nonterminal or operator signature that produced it.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Callable, Mapping, Sequence

BV_WIDTH = 64
BV_MASK = (1 << BV_WIDTH) - 1
BV_SIGN = 1 << (BV_WIDTH - 1)
INT_MIN = -(1 << 63)


class Sort(enum.Enum):
    STRING = "String"
    INT = "Int"
    BOOL = "Bool"
    BV = "(BitVec 64)"

    def __str__(self) -> str:
        return self.value


class MalformedApplication(Exception):
    """An operator was applied to the wrong number or sorts of arguments."""


@dataclass(frozen=True)
class OperatorSig:
    name: str
    arg_sorts: tuple[Sort, ...]
    result_sort: Sort

    @property
    def arity(self) -> int:
        return len(self.arg_sorts)


@dataclass(frozen=True)
class Example:
    inputs: Mapping[str, Any]
    output: Any


def wrap_int(x: int) -> int:
    return ((x - INT_MIN) & BV_MASK) + INT_MIN


def to_signed(x: int) -> int:
    return x - (1 << BV_WIDTH) if x & BV_SIGN else x


def is_sort(value: Any, sort: Sort) -> bool:
    if sort is Sort.STRING:
        return type(value) is str
    if sort is Sort.BOOL:
        return type(value) is bool
    if sort is Sort.INT:
        return type(value) is int and INT_MIN <= value <= BV_MASK >> 1
    return type(value) is int and 0 <= value <= BV_MASK


def values_equal(a: Any, b: Any) -> bool:
    """Tag-and-payload equality (``True`` is not ``1``)."""
    return type(a) is type(b) and a == b


# --- operator catalog -------------------------------------------------------

_IMPLS: dict[OperatorSig, Callable[..., Any]] = {}
_BY_NAME: dict[str, list[OperatorSig]] = {}

S, I, B, BV = Sort.STRING, Sort.INT, Sort.BOOL, Sort.BV


def _register(names: str, args: Sequence[Sort], result: Sort, fn: Callable[..., Any]) -> None:
    canonical, *aliases = names.split()
    sig = OperatorSig(canonical, tuple(args), result)
    _IMPLS[sig] = fn
    for name in (canonical, *aliases):
        _BY_NAME.setdefault(name, []).append(sig)


def _str_at(s: str, i: int) -> str:
    return s[i] if 0 <= i < len(s) else ""


def _str_substr(s: str, i: int, n: int) -> str:
    if i < 0 or n <= 0 or i >= len(s):
        return ""
    return s[i:i + n]


def _str_indexof(s: str, t: str, i: int) -> int:
    if i < 0 or i > len(s):
        return -1
    return s.find(t, i)


def _str_to_int(s: str) -> int:
    if not s or not all("0" <= c <= "9" for c in s):
        return -1
    return wrap_int(int(s))


def _int_to_str(n: int) -> str:
    return str(n) if n >= 0 else ""


_register("str.++ concat", (S, S), S, lambda a, b: a + b)
_register("str.replace replace", (S, S, S), S, lambda s, t, u: s.replace(t, u, 1))
_register("str.substr substr", (S, I, I), S, _str_substr)
_register("str.at at", (S, I), S, _str_at)
_register("str.len len length", (S,), I, len)
_register("str.indexof indexof", (S, S, I), I, _str_indexof)
_register("str.to.int str.to_int to.int", (S,), I, _str_to_int)
_register("int.to.str str.from_int to.str", (I,), S, _int_to_str)
_register("str.contains contains", (S, S), B, lambda s, t: t in s)
_register("str.prefixof prefixof", (S, S), B, lambda x, y: y.startswith(x))
_register("str.suffixof suffixof", (S, S), B, lambda x, y: y.endswith(x))

_register("+", (I, I), I, lambda a, b: wrap_int(a + b))
_register("-", (I, I), I, lambda a, b: wrap_int(a - b))
_register("-", (I,), I, lambda a: wrap_int(-a))
_register("*", (I, I), I, lambda a, b: wrap_int(a * b))
_register("<", (I, I), B, lambda a, b: a < b)
_register("<=", (I, I), B, lambda a, b: a <= b)
_register(">", (I, I), B, lambda a, b: a > b)
_register(">=", (I, I), B, lambda a, b: a >= b)

for _sort in (S, I, B, BV):
    _register("=", (_sort, _sort), B, lambda a, b: a == b)
    _register("ite", (B, _sort, _sort), _sort, lambda c, a, b: a if c else b)

_register("and", (B, B), B, lambda a, b: a and b)
_register("or", (B, B), B, lambda a, b: a or b)
_register("xor", (B, B), B, lambda a, b: a != b)
_register("not", (B,), B, lambda a: not a)
_register("=>", (B, B), B, lambda a, b: (not a) or b)


def _bvudiv(x: int, y: int) -> int:
    return BV_MASK if y == 0 else x // y


def _bvurem(x: int, y: int) -> int:
    return x if y == 0 else x % y


def _bvneg(x: int) -> int:
    return -x & BV_MASK


def _bvsdiv(x: int, y: int) -> int:
    xn, yn = bool(x & BV_SIGN), bool(y & BV_SIGN)
    if not xn and not yn:
        return _bvudiv(x, y)
    if xn and not yn:
        return _bvneg(_bvudiv(_bvneg(x), y))
    if not xn and yn:
        return _bvneg(_bvudiv(x, _bvneg(y)))
    return _bvudiv(_bvneg(x), _bvneg(y))


def _bvsrem(x: int, y: int) -> int:
    xn, yn = bool(x & BV_SIGN), bool(y & BV_SIGN)
    if not xn and not yn:
        return _bvurem(x, y)
    if xn and not yn:
        return _bvneg(_bvurem(_bvneg(x), y))
    if not xn and yn:
        return _bvurem(x, _bvneg(y))
    return _bvneg(_bvurem(_bvneg(x), _bvneg(y)))


def _bvshl(x: int, n: int) -> int:
    return (x << n) & BV_MASK if n < BV_WIDTH else 0


def _bvlshr(x: int, n: int) -> int:
    return x >> n if n < BV_WIDTH else 0


def _bvashr(x: int, n: int) -> int:
    return (to_signed(x) >> min(n, BV_WIDTH - 1)) & BV_MASK


_register("bvand and", (BV, BV), BV, lambda x, y: x & y)
_register("bvor or", (BV, BV), BV, lambda x, y: x | y)
_register("bvxor xor", (BV, BV), BV, lambda x, y: x ^ y)
_register("bvnot not", (BV,), BV, lambda x: x ^ BV_MASK)
_register("bvneg neg", (BV,), BV, _bvneg)
_register("bvadd add", (BV, BV), BV, lambda x, y: (x + y) & BV_MASK)
_register("bvsub sub", (BV, BV), BV, lambda x, y: (x - y) & BV_MASK)
_register("bvmul mul", (BV, BV), BV, lambda x, y: (x * y) & BV_MASK)
_register("bvudiv udiv", (BV, BV), BV, _bvudiv)
_register("bvurem urem", (BV, BV), BV, _bvurem)
_register("bvsdiv sdiv", (BV, BV), BV, _bvsdiv)
_register("bvsrem srem", (BV, BV), BV, _bvsrem)
_register("bvshl shl", (BV, BV), BV, _bvshl)
_register("bvlshr lshr", (BV, BV), BV, _bvlshr)
_register("bvashr ashr", (BV, BV), BV, _bvashr)
_register("bvult ult", (BV, BV), B, lambda x, y: x < y)
_register("bvule ule", (BV, BV), B, lambda x, y: x <= y)
_register("bvugt ugt", (BV, BV), B, lambda x, y: x > y)
_register("bvuge uge", (BV, BV), B, lambda x, y: x >= y)
_register("bvslt slt", (BV, BV), B, lambda x, y: to_signed(x) < to_signed(y))
_register("bvsle sle", (BV, BV), B, lambda x, y: to_signed(x) <= to_signed(y))
_register("bvsgt sgt", (BV, BV), B, lambda x, y: to_signed(x) > to_signed(y))
_register("bvsge sge", (BV, BV), B, lambda x, y: to_signed(x) >= to_signed(y))
# redor returns Bool so BitVec grammars can use it under a Bool nonterminal
_register("bvredor redor", (BV,), B, lambda x: x != 0)


def resolve_operator(name: str, arg_sorts: Sequence[Sort]) -> OperatorSig:
    """Find the overload of ``name`` accepting ``arg_sorts``; raises KeyError."""
    for sig in _BY_NAME.get(name, ()):
        if sig.arg_sorts == tuple(arg_sorts):
            return sig
    raise KeyError(f"no operator {name} over ({' '.join(map(str, arg_sorts))})")


def canonical_names(name: str) -> set[str]:
    """Canonical names of every operator spelled ``name`` (aliases included)."""
    return {sig.name for sig in _BY_NAME.get(name, ())}


def operator_names() -> list[str]:
    return sorted(_BY_NAME)


def operator_impl(sig: OperatorSig) -> Callable[..., Any]:
    return _IMPLS[sig]


def apply_operator(sig: OperatorSig, args: Sequence[Any]) -> Any:
    if len(args) != sig.arity:
        raise MalformedApplication(f"{sig.name} expects {sig.arity} arguments, got {len(args)}")
    for value, sort in zip(args, sig.arg_sorts):
        if not is_sort(value, sort):
            raise MalformedApplication(f"{sig.name}: {value!r} is not of sort {sort}")
    try:
        fn = _IMPLS[sig]
    except KeyError:
        raise MalformedApplication(f"unknown operator {sig}") from None
    return fn(*args)


# --- programs ----------------------------------------------------------------

def format_literal(value: Any, sort: Sort) -> str:
    if sort is Sort.STRING:
        return '"' + value.replace('"', '""') + '"'
    if sort is Sort.BOOL:
        return "true" if value else "false"
    if sort is Sort.BV:
        return f"#x{value:016x}"
    return str(value) if value >= 0 else f"(- {-value})"


class Program:
    """An applied-terminal tree. ``prod`` is a grammar production.

    Subtrees are shared, never copied, so programs must not be mutated.
    """

    __slots__ = ("prod", "children", "size")

    def __init__(self, prod: Any, children: tuple[Program, ...] = ()):
        self.prod = prod
        self.children = children
        size = 1
        for c in children:
            size += c.size
        self.size = size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Program):
            return NotImplemented
        return self.prod is other.prod and self.children == other.children

    def __hash__(self) -> int:
        return hash((self.prod.id, self.children))

    def __repr__(self) -> str:
        return f"Program({self})"

    def __str__(self) -> str:
        prod = self.prod
        if not self.children:
            return prod.name if prod.kind != "lit" else format_literal(prod.value, prod.sort)
        return "(" + " ".join([prod.name, *map(str, self.children)]) + ")"

    def trace(self) -> list[Any]:
        """Productions in leftmost-derivation order."""
        out = []
        stack = [self]
        while stack:
            p = stack.pop()
            out.append(p.prod)
            stack.extend(reversed(p.children))
        return out


def size(p: Program) -> int:
    return p.size


def eval_program(p: Program, env: Mapping[str, Any]) -> Any:
    prod = p.prod
    kind = prod.kind
    if kind == "var":
        return env[prod.name]
    if kind == "lit":
        return prod.value
    return apply_operator(prod.op, [eval_program(c, env) for c in p.children])


def eval_on_examples(p: Program, examples: Sequence[Example]) -> list[Any]:
    return [eval_program(p, e.inputs) for e in examples]
