"""Canonical statement printer; parse(print(ast)) == ast."""

from __future__ import annotations

from . import ast


def _string_literal(value: str) -> str:
    escaped = value.replace("\\", "\\\\").replace("'", "\\'")
    escaped = escaped.replace("\n", "\\n").replace("\t", "\\t").replace("\r", "\\r")
    return f"'{escaped}'"


# precedence levels: OR(1) < AND(2) < NOT(3) < comparison/IN(4) < +(5) < atom(9);
# a child below its context's minimum level gets parentheses, matching how the
# parser associates, so parse(print(ast)) reproduces the tree exactly
def print_expression(expr) -> str:
    return _pr(expr, 0)


def _pr(expr, min_level: int) -> str:
    if isinstance(expr, ast.Or):
        text, level = f"{_pr(expr.left, 1)} OR {_pr(expr.right, 2)}", 1
    elif isinstance(expr, ast.And):
        text, level = f"{_pr(expr.left, 2)} AND {_pr(expr.right, 3)}", 2
    elif isinstance(expr, ast.Not):
        text, level = f"NOT {_pr(expr.operand, 3)}", 3
    elif isinstance(expr, ast.Compare):
        text, level = f"{_pr(expr.left, 5)} {expr.op} {_pr(expr.right, 5)}", 4
    elif isinstance(expr, ast.InList):
        text, level = f"{_pr(expr.item, 5)} IN {_pr(expr.container, 5)}", 4
    elif isinstance(expr, ast.Concat):
        text, level = f"{_pr(expr.left, 5)} + {_pr(expr.right, 6)}", 5
    else:
        text, level = _atom(expr), 9
    if level < min_level:
        return f"({text})"
    return text


def _atom(expr) -> str:
    if isinstance(expr, ast.Literal):
        v = expr.value
        if v is None:
            return "NULL"
        if isinstance(v, bool):
            return "TRUE" if v else "FALSE"
        if isinstance(v, str):
            return _string_literal(v)
        return repr(v)
    if isinstance(expr, ast.Parameter):
        return f"${expr.name}"
    if isinstance(expr, ast.Variable):
        return expr.name
    if isinstance(expr, ast.Property):
        return f"{_pr(expr.subject, 9)}.{expr.key}"
    if isinstance(expr, ast.FuncCall):
        if expr.star:
            return f"{expr.name}(*)"
        inner = ", ".join(print_expression(a) for a in expr.args)
        if expr.distinct:
            inner = f"DISTINCT {inner}"
        return f"{expr.name}({inner})"
    if isinstance(expr, ast.MapLiteral):
        inner = ", ".join(f"{k}: {print_expression(v)}" for k, v in expr.entries)
        return "{" + inner + "}"
    if isinstance(expr, ast.PatternExpr):
        return print_pattern(expr.pattern)
    raise TypeError(f"cannot print {expr!r}")


def _print_map(entries: tuple) -> str:
    inner = ", ".join(f"{k}: {print_expression(v)}" for k, v in entries)
    return " {" + inner + "}"


def print_node(node: ast.NodePattern) -> str:
    out = "("
    if node.variable:
        out += node.variable
    if node.label:
        out += f":{node.label}"
    if node.properties:
        out += _print_map(node.properties)
    return out + ")"


def print_rel(rel: ast.RelPattern) -> str:
    body = ""
    if rel.variable or rel.type or rel.properties:
        body = "["
        if rel.variable:
            body += rel.variable
        if rel.type:
            body += f":{rel.type}"
        if rel.properties:
            body += _print_map(rel.properties)
        body += "]"
    if rel.direction == "in":
        return f"<-{body}-"
    if rel.direction == "out":
        return f"-{body}->"
    return f"-{body}-"


def print_pattern(pattern: ast.PathPattern) -> str:
    prefix = f"{pattern.variable} = " if pattern.variable else ""
    if pattern.shortest:
        a, b = pattern.nodes
        return f"{prefix}shortestPath({print_node(a)}-[*]-{print_node(b)})"
    parts = [print_node(pattern.nodes[0])]
    for rel, node in zip(pattern.rels, pattern.nodes[1:]):
        parts.append(print_rel(rel))
        parts.append(print_node(node))
    return prefix + "".join(parts)


def _print_items(items: tuple) -> str:
    out = []
    for item in items:
        text = print_expression(item.expression)
        if item.alias:
            text += f" AS {item.alias}"
        out.append(text)
    return ", ".join(out)


def print_clause(clause) -> str:
    if isinstance(clause, ast.LoadCsvClause):
        return (
            f"LOAD CSV WITH HEADERS FROM {_string_literal(clause.url)} "
            f"AS {clause.variable}"
        )
    if isinstance(clause, ast.CreateIndexClause):
        return f"CREATE INDEX FOR (n:{clause.label}) ON (n.{clause.key})"
    if isinstance(clause, ast.CreateClause):
        return "CREATE " + ", ".join(print_pattern(p) for p in clause.patterns)
    if isinstance(clause, ast.MatchClause):
        return "MATCH " + ", ".join(print_pattern(p) for p in clause.patterns)
    if isinstance(clause, ast.WhereClause):
        return "WHERE " + print_expression(clause.condition)
    if isinstance(clause, ast.WithClause):
        return "WITH " + _print_items(clause.items)
    if isinstance(clause, ast.UnwindClause):
        return f"UNWIND {print_expression(clause.expression)} AS {clause.variable}"
    if isinstance(clause, ast.ReturnClause):
        distinct = "DISTINCT " if clause.distinct else ""
        return f"RETURN {distinct}" + _print_items(clause.items)
    if isinstance(clause, ast.SetClause):
        parts = [f"{var}.{key} = {print_expression(value)}"
                 for var, key, value in clause.assignments]
        return "SET " + ", ".join(parts)
    if isinstance(clause, ast.DeleteClause):
        head = "DETACH DELETE" if clause.detach else "DELETE"
        return f"{head} " + ", ".join(clause.variables)
    if isinstance(clause, ast.OrderByClause):
        direction = " DESC" if clause.descending else ""
        return f"ORDER BY {print_expression(clause.expression)}{direction}"
    if isinstance(clause, ast.LimitClause):
        return f"LIMIT {clause.count}"
    if isinstance(clause, ast.CallClause):
        args = ", ".join(print_expression(a) for a in clause.args)
        out = f"CALL {clause.procedure}({args})"
        if clause.yields:
            out += " YIELD " + ", ".join(clause.yields)
        return out
    raise TypeError(f"cannot print {clause!r}")


def print_statement(statement: ast.Statement) -> str:
    return " ".join(print_clause(c) for c in statement.clauses)
