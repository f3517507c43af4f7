"""Abstract syntax for parsed statements.

Everything is a frozen dataclass over tuples, so two statements compare
structurally (the printer round-trip property relies on this).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


# -- expressions --------------------------------------------------------------

@dataclass(frozen=True)
class Literal:
    value: Any  # None / bool / int / float / str


@dataclass(frozen=True)
class Parameter:
    name: str


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Property:
    subject: Any  # Variable or FuncCall (chains allowed)
    key: str


@dataclass(frozen=True)
class FuncCall:
    name: str  # dotted, e.g. gds.util.asNode
    args: tuple = ()
    distinct: bool = False
    star: bool = False  # count(*)


@dataclass(frozen=True)
class MapLiteral:
    entries: tuple = ()  # ((key, expr), ...)


@dataclass(frozen=True)
class Compare:
    op: str  # = <> < > <= >=
    left: Any
    right: Any


@dataclass(frozen=True)
class And:
    left: Any
    right: Any


@dataclass(frozen=True)
class Or:
    left: Any
    right: Any


@dataclass(frozen=True)
class Not:
    operand: Any


@dataclass(frozen=True)
class InList:
    item: Any
    container: Any


@dataclass(frozen=True)
class Concat:
    left: Any
    right: Any


@dataclass(frozen=True)
class PatternExpr:
    """A pattern used as a WHERE predicate, e.g. (a)-[:COLLEAGUES]-(b)."""

    pattern: "PathPattern"


# -- patterns -----------------------------------------------------------------

@dataclass(frozen=True)
class NodePattern:
    variable: str | None = None
    label: str | None = None
    properties: tuple = ()  # ((key, expr), ...)


@dataclass(frozen=True)
class RelPattern:
    direction: str  # out | in | both
    variable: str | None = None
    type: str | None = None
    properties: tuple = ()


@dataclass(frozen=True)
class PathPattern:
    nodes: tuple = ()  # NodePattern, one more than rels
    rels: tuple = ()
    variable: str | None = None  # path variable (path = shortestPath(...))
    shortest: bool = False  # shortestPath((a)-[*]-(b))


# -- clauses ------------------------------------------------------------------

@dataclass(frozen=True)
class ReturnItem:
    expression: Any
    alias: str | None = None


@dataclass(frozen=True)
class CreateClause:
    patterns: tuple = ()


@dataclass(frozen=True)
class MatchClause:
    patterns: tuple = ()


@dataclass(frozen=True)
class WhereClause:
    condition: Any = None


@dataclass(frozen=True)
class WithClause:
    items: tuple = ()


@dataclass(frozen=True)
class UnwindClause:
    expression: Any = None
    variable: str = ""


@dataclass(frozen=True)
class ReturnClause:
    items: tuple = ()
    distinct: bool = False


@dataclass(frozen=True)
class SetClause:
    assignments: tuple = ()  # ((variable, key, expr), ...)


@dataclass(frozen=True)
class DeleteClause:
    variables: tuple = ()
    detach: bool = False


@dataclass(frozen=True)
class OrderByClause:
    expression: Any = None
    descending: bool = False


@dataclass(frozen=True)
class LimitClause:
    count: int = 0


@dataclass(frozen=True)
class CallClause:
    procedure: str = ""
    args: tuple = ()
    yields: tuple = ()


@dataclass(frozen=True)
class LoadCsvClause:
    url: str = ""
    variable: str = ""


@dataclass(frozen=True)
class CreateIndexClause:
    label: str = ""
    key: str = ""


@dataclass(frozen=True)
class Statement:
    clauses: tuple = ()


AGGREGATE_FUNCTIONS = {"count", "collect"}


def is_aggregate(expr: Any) -> bool:
    """True when the expression contains an aggregate call."""
    if isinstance(expr, FuncCall):
        if expr.name.lower() in AGGREGATE_FUNCTIONS:
            return True
        return any(is_aggregate(a) for a in expr.args)
    if isinstance(expr, Property):
        return is_aggregate(expr.subject)
    if isinstance(expr, (And, Or, Concat)):
        return is_aggregate(expr.left) or is_aggregate(expr.right)
    if isinstance(expr, Compare):
        return is_aggregate(expr.left) or is_aggregate(expr.right)
    if isinstance(expr, InList):
        return is_aggregate(expr.item) or is_aggregate(expr.container)
    if isinstance(expr, Not):
        return is_aggregate(expr.operand)
    return False


def statement_writes(statement: Statement) -> bool:
    """True when executing the statement can mutate the graph."""
    for clause in statement.clauses:
        if isinstance(clause, (CreateClause, SetClause, DeleteClause,
                               LoadCsvClause, CreateIndexClause)):
            return True
    return False
