"""Recursive-descent parser and binding validation.

The grammar covers exactly the clause set the engine executes: CREATE,
MATCH (with shortestPath), WHERE, WITH, UNWIND, RETURN, SET, DELETE,
DETACH DELETE, ORDER BY, LIMIT, LOAD CSV, CREATE INDEX, and CALL/YIELD.
Validation rejects any variable referenced before a clause binds it.
"""

from __future__ import annotations

from ..errors import ParseError, UnboundVariable
from . import ast
from .tokens import Token, tokenize


class _Parser:
    def __init__(self, tokens: list[Token], source_len: int):
        self.tokens = tokens
        self.pos = 0
        self.end_offset = source_len

    # -- cursor helpers -------------------------------------------------------

    def peek(self, ahead: int = 0) -> Token | None:
        index = self.pos + ahead
        return self.tokens[index] if index < len(self.tokens) else None

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def offset(self) -> int:
        token = self.peek()
        return token.offset if token else self.end_offset

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.offset())

    def advance(self) -> Token:
        token = self.peek()
        if token is None:
            raise self.error("unexpected end of input")
        self.pos += 1
        return token

    def check(self, kind: str, text: str | None = None, ahead: int = 0) -> bool:
        token = self.peek(ahead)
        if token is None or token.kind != kind:
            return False
        if text is not None:
            if kind == "keyword":
                return token.value == text
            return token.text == text
        return True

    def accept(self, kind: str, text: str | None = None) -> Token | None:
        if self.check(kind, text):
            return self.advance()
        return None

    def expect(self, kind: str, text: str | None = None) -> Token:
        token = self.accept(kind, text)
        if token is None:
            want = text or kind
            got = self.peek().text if self.peek() else "end of input"
            raise self.error(f"expected {want}, found {got}")
        return token

    def expect_identifier(self) -> str:
        token = self.peek()
        if token is not None and token.kind == "identifier":
            self.advance()
            return token.value
        raise self.error("expected identifier")

    # -- statement ------------------------------------------------------------

    def statement(self) -> ast.Statement:
        clauses = []
        if self.check("keyword", "LOAD"):
            clauses.append(self.load_csv())
        while not self.at_end():
            if self.accept("punct", ";"):
                if not self.at_end():
                    raise self.error("text after statement terminator")
                break
            clauses.append(self.clause())
        if not clauses:
            raise self.error("empty statement")
        return ast.Statement(tuple(clauses))

    def clause(self):
        token = self.peek()
        if token is None or token.kind != "keyword":
            raise self.error("expected a clause keyword")
        word = token.value
        if word == "CREATE":
            if self.check("keyword", "INDEX", ahead=1):
                return self.create_index()
            return self.create()
        if word == "MATCH":
            return self.match()
        if word == "WHERE":
            self.advance()
            return ast.WhereClause(self.expression())
        if word == "WITH":
            return self.with_clause()
        if word == "UNWIND":
            self.advance()
            expr = self.expression()
            self.expect("keyword", "AS")
            return ast.UnwindClause(expr, self.expect_identifier())
        if word == "RETURN":
            return self.return_clause()
        if word == "SET":
            return self.set_clause()
        if word in ("DELETE", "DETACH"):
            return self.delete_clause()
        if word == "ORDER":
            self.advance()
            self.expect("keyword", "BY")
            expr = self.expression()
            descending = False
            if self.accept("keyword", "DESC"):
                descending = True
            else:
                self.accept("keyword", "ASC")
            return ast.OrderByClause(expr, descending)
        if word == "LIMIT":
            self.advance()
            count = self.expect("integer")
            return ast.LimitClause(count.value)
        if word == "CALL":
            return self.call_clause()
        raise self.error(f"unexpected keyword {word}")

    def load_csv(self) -> ast.LoadCsvClause:
        self.expect("keyword", "LOAD")
        self.expect("keyword", "CSV")
        self.expect("keyword", "WITH")
        self.expect("keyword", "HEADERS")
        self.expect("keyword", "FROM")
        url = self.expect("string")
        self.expect("keyword", "AS")
        return ast.LoadCsvClause(url.value, self.expect_identifier())

    def create_index(self) -> ast.CreateIndexClause:
        self.expect("keyword", "CREATE")
        self.expect("keyword", "INDEX")
        self.expect("keyword", "FOR")
        self.expect("punct", "(")
        self.expect_identifier()  # the node variable is decorative here
        self.expect("punct", ":")
        label = self.expect_identifier()
        self.expect("punct", ")")
        self.expect("keyword", "ON")
        self.expect("punct", "(")
        self.expect_identifier()
        self.expect("punct", ".")
        key = self.expect_identifier()
        self.expect("punct", ")")
        return ast.CreateIndexClause(label, key)

    def create(self) -> ast.CreateClause:
        self.expect("keyword", "CREATE")
        patterns = [self.path_pattern()]
        while self.accept("punct", ","):
            patterns.append(self.path_pattern())
        return ast.CreateClause(tuple(patterns))

    def match(self) -> ast.MatchClause:
        self.expect("keyword", "MATCH")
        patterns = [self.path_pattern()]
        while self.accept("punct", ","):
            patterns.append(self.path_pattern())
        return ast.MatchClause(tuple(patterns))

    def with_clause(self) -> ast.WithClause:
        self.expect("keyword", "WITH")
        items = [self.return_item(require_alias_for_expressions=True)]
        while self.accept("punct", ","):
            items.append(self.return_item(require_alias_for_expressions=True))
        return ast.WithClause(tuple(items))

    def return_clause(self) -> ast.ReturnClause:
        self.expect("keyword", "RETURN")
        distinct = self.accept("keyword", "DISTINCT") is not None
        items = [self.return_item()]
        while self.accept("punct", ","):
            items.append(self.return_item())
        return ast.ReturnClause(tuple(items), distinct)

    def return_item(self, require_alias_for_expressions: bool = False) -> ast.ReturnItem:
        expr = self.expression()
        alias = None
        if self.accept("keyword", "AS"):
            alias = self.expect_identifier()
        elif require_alias_for_expressions and not isinstance(expr, ast.Variable):
            raise self.error("WITH items other than bare variables need AS")
        return ast.ReturnItem(expr, alias)

    def set_clause(self) -> ast.SetClause:
        self.expect("keyword", "SET")
        assignments = []
        while True:
            variable = self.expect_identifier()
            self.expect("punct", ".")
            key = self.expect_identifier()
            self.expect("operator", "=")
            assignments.append((variable, key, self.expression()))
            if not self.accept("punct", ","):
                break
        return ast.SetClause(tuple(assignments))

    def delete_clause(self) -> ast.DeleteClause:
        detach = self.accept("keyword", "DETACH") is not None
        self.expect("keyword", "DELETE")
        names = [self.expect_identifier()]
        while self.accept("punct", ","):
            names.append(self.expect_identifier())
        return ast.DeleteClause(tuple(names), detach)

    def call_clause(self) -> ast.CallClause:
        self.expect("keyword", "CALL")
        name = self.qualified_name()
        self.expect("punct", "(")
        args = []
        if not self.check("punct", ")"):
            args.append(self.expression())
            while self.accept("punct", ","):
                args.append(self.expression())
        self.expect("punct", ")")
        yields: list[str] = []
        if self.accept("keyword", "YIELD"):
            yields.append(self.expect_identifier())
            while self.accept("punct", ","):
                yields.append(self.expect_identifier())
        return ast.CallClause(name, tuple(args), tuple(yields))

    def qualified_name(self) -> str:
        # keyword tokens may appear as name parts (apoc.export.csv.all)
        parts = [self.expect_identifier()]
        while self.check("punct", ".") and (
            self.check("identifier", ahead=1) or self.check("keyword", ahead=1)
        ):
            self.advance()
            parts.append(self.advance().text)
        return ".".join(parts)

    # -- patterns ---------------------------------------------------------------

    def path_pattern(self) -> ast.PathPattern:
        # optional "path =" binding in front of shortestPath(...)
        variable = None
        if (
            self.check("identifier")
            and self.check("operator", "=", ahead=1)
            and self.check("identifier", ahead=2)
            and self.peek(2).value.lower() == "shortestpath"
        ):
            variable = self.advance().value
            self.advance()  # =
        if self.check("identifier") and self.peek().value.lower() == "shortestpath":
            self.advance()
            self.expect("punct", "(")
            first = self.node_pattern()
            self.var_length_rel()
            second = self.node_pattern()
            self.expect("punct", ")")
            return ast.PathPattern((first, second), (), variable, shortest=True)
        nodes = [self.node_pattern()]
        rels = []
        while self.check("operator", "-") or self.check("operator", "<-"):
            rels.append(self.rel_pattern())
            nodes.append(self.node_pattern())
        return ast.PathPattern(tuple(nodes), tuple(rels), variable)

    def var_length_rel(self) -> None:
        self.expect("operator", "-")
        self.expect("punct", "[")
        self.expect("operator", "*")
        self.expect("punct", "]")
        self.expect("operator", "-")

    def node_pattern(self) -> ast.NodePattern:
        self.expect("punct", "(")
        variable = None
        if self.check("identifier"):
            variable = self.advance().value
        label = None
        if self.accept("punct", ":"):
            label = self.expect_identifier()
        properties = ()
        if self.check("punct", "{"):
            properties = self.property_map()
        self.expect("punct", ")")
        return ast.NodePattern(variable, label, properties)

    def rel_pattern(self) -> ast.RelPattern:
        incoming = False
        if self.accept("operator", "<-"):
            incoming = True
        else:
            self.expect("operator", "-")
        variable = None
        type_ = None
        properties = ()
        if self.accept("punct", "["):
            if self.check("identifier"):
                variable = self.advance().value
            if self.accept("punct", ":"):
                type_ = self.expect_identifier()
            if self.check("punct", "{"):
                properties = self.property_map()
            self.expect("punct", "]")
        if incoming:
            self.expect("operator", "-")
            return ast.RelPattern("in", variable, type_, properties)
        if self.accept("operator", "->"):
            return ast.RelPattern("out", variable, type_, properties)
        self.expect("operator", "-")
        return ast.RelPattern("both", variable, type_, properties)

    def property_map(self) -> tuple:
        self.expect("punct", "{")
        entries = []
        if not self.check("punct", "}"):
            while True:
                key = self.expect_identifier()
                self.expect("punct", ":")
                entries.append((key, self.expression()))
                if not self.accept("punct", ","):
                    break
        self.expect("punct", "}")
        return tuple(entries)

    # -- expressions ------------------------------------------------------------

    def expression(self):
        return self.or_expression()

    def or_expression(self):
        left = self.and_expression()
        while self.accept("keyword", "OR"):
            left = ast.Or(left, self.and_expression())
        return left

    def and_expression(self):
        left = self.not_expression()
        while self.accept("keyword", "AND"):
            left = ast.And(left, self.not_expression())
        return left

    def not_expression(self):
        if self.accept("keyword", "NOT"):
            return ast.Not(self.not_expression())
        return self.comparison()

    def comparison(self):
        left = self.additive()
        token = self.peek()
        if token is not None and token.kind == "operator" and token.text in (
            "=", "<>", "<", ">", "<=", ">=",
        ):
            self.advance()
            return ast.Compare(token.text, left, self.additive())
        if self.accept("keyword", "IN"):
            return ast.InList(left, self.additive())
        return left

    def additive(self):
        left = self.operand()
        while self.accept("operator", "+"):
            left = ast.Concat(left, self.operand())
        return left

    def operand(self):
        token = self.peek()
        if token is None:
            raise self.error("expected an expression")
        if token.kind == "string":
            self.advance()
            return ast.Literal(token.value)
        if token.kind in ("integer", "float"):
            self.advance()
            return ast.Literal(token.value)
        if token.kind == "operator" and token.text == "-":
            nxt = self.peek(1)
            if nxt is not None and nxt.kind in ("integer", "float"):
                self.advance()
                self.advance()
                return ast.Literal(-nxt.value)
            raise self.error("expected a number after unary minus")
        if token.kind == "parameter":
            self.advance()
            return ast.Parameter(token.value)
        if token.kind == "keyword" and token.value in ("TRUE", "FALSE", "NULL"):
            self.advance()
            return ast.Literal({"TRUE": True, "FALSE": False, "NULL": None}[token.value])
        if token.kind == "punct" and token.text == "{":
            return ast.MapLiteral(self.property_map())
        if token.kind == "punct" and token.text == "(":
            pattern = self.try_pattern_expression()
            if pattern is not None:
                return pattern
            self.advance()
            inner = self.expression()
            self.expect("punct", ")")
            return inner
        if token.kind == "identifier":
            return self.name_expression()
        raise self.error(f"unexpected token {token.text!r}")

    def try_pattern_expression(self) -> ast.PatternExpr | None:
        """Attempt to read `(a)-[...]-(b)...` at an operand position."""
        saved = self.pos
        try:
            pattern = self.path_pattern()
        except ParseError:
            self.pos = saved
            return None
        if not pattern.rels:
            self.pos = saved
            return None
        return ast.PatternExpr(pattern)

    def name_expression(self):
        parts = [self.expect_identifier()]
        while self.check("punct", ".") and self.check("identifier", ahead=1):
            self.advance()
            parts.append(self.expect_identifier())
        if self.check("punct", "("):
            expr = self.finish_call(".".join(parts))
        else:
            expr: object = ast.Variable(parts[0])
            for key in parts[1:]:
                expr = ast.Property(expr, key)
            return expr
        # postfix property access on a call result: gds.util.asNode(id).name
        while self.check("punct", ".") and self.check("identifier", ahead=1):
            self.advance()
            expr = ast.Property(expr, self.expect_identifier())
        return expr

    def finish_call(self, name: str) -> ast.FuncCall:
        self.expect("punct", "(")
        if self.accept("operator", "*"):
            self.expect("punct", ")")
            return ast.FuncCall(name, star=True)
        distinct = self.accept("keyword", "DISTINCT") is not None
        args = []
        if not self.check("punct", ")"):
            args.append(self.expression())
            while self.accept("punct", ","):
                args.append(self.expression())
        self.expect("punct", ")")
        return ast.FuncCall(name, tuple(args), distinct)


def parse(tokens: list[Token], source_len: int = 0) -> ast.Statement:
    """Parse a token stream and validate variable bindings."""
    parser = _Parser(tokens, source_len)
    statement = parser.statement()
    _validate(statement)
    return statement


def parse_statement(text: str) -> ast.Statement:
    return parse(tokenize(text), len(text))


# -- binding validation -----------------------------------------------------------


def _expression_names(expr, out: set[str]) -> None:
    if isinstance(expr, ast.Variable):
        out.add(expr.name)
    elif isinstance(expr, ast.Property):
        _expression_names(expr.subject, out)
    elif isinstance(expr, ast.FuncCall):
        for a in expr.args:
            _expression_names(a, out)
    elif isinstance(expr, ast.MapLiteral):
        for _, v in expr.entries:
            _expression_names(v, out)
    elif isinstance(expr, (ast.And, ast.Or, ast.Concat)):
        _expression_names(expr.left, out)
        _expression_names(expr.right, out)
    elif isinstance(expr, ast.Compare):
        _expression_names(expr.left, out)
        _expression_names(expr.right, out)
    elif isinstance(expr, ast.InList):
        _expression_names(expr.item, out)
        _expression_names(expr.container, out)
    elif isinstance(expr, ast.Not):
        _expression_names(expr.operand, out)
    elif isinstance(expr, ast.PatternExpr):
        # pattern predicates may only reference bound variables
        for node in expr.pattern.nodes:
            if node.variable:
                out.add(node.variable)
            for _, v in node.properties:
                _expression_names(v, out)
        for rel in expr.pattern.rels:
            for _, v in rel.properties:
                _expression_names(v, out)


def _check_expr(expr, scope: set[str]) -> None:
    names: set[str] = set()
    _expression_names(expr, names)
    for name in sorted(names):
        if name not in scope:
            raise UnboundVariable(name)


def _pattern_map_exprs(pattern: ast.PathPattern):
    for node in pattern.nodes:
        for _, value in node.properties:
            yield value
    for rel in pattern.rels:
        for _, value in rel.properties:
            yield value


def _validate(statement: ast.Statement) -> None:
    scope: set[str] = set()
    return_aliases: set[str] = set()
    for clause in statement.clauses:
        if isinstance(clause, ast.LoadCsvClause):
            scope.add(clause.variable)
        elif isinstance(clause, (ast.MatchClause, ast.CreateClause)):
            for pattern in clause.patterns:
                for value in _pattern_map_exprs(pattern):
                    _check_expr(value, scope)
                for node in pattern.nodes:
                    if node.variable:
                        scope.add(node.variable)
                for rel in pattern.rels:
                    if rel.variable:
                        scope.add(rel.variable)
                if pattern.variable:
                    scope.add(pattern.variable)
        elif isinstance(clause, ast.WhereClause):
            _check_expr(clause.condition, scope)
        elif isinstance(clause, ast.WithClause):
            for item in clause.items:
                _check_expr(item.expression, scope)
            scope = set()
            for item in clause.items:
                if item.alias:
                    scope.add(item.alias)
                elif isinstance(item.expression, ast.Variable):
                    scope.add(item.expression.name)
        elif isinstance(clause, ast.UnwindClause):
            _check_expr(clause.expression, scope)
            scope.add(clause.variable)
        elif isinstance(clause, ast.ReturnClause):
            for item in clause.items:
                _check_expr(item.expression, scope)
                if item.alias:
                    return_aliases.add(item.alias)
        elif isinstance(clause, ast.SetClause):
            for variable, _key, value in clause.assignments:
                if variable not in scope:
                    raise UnboundVariable(variable)
                _check_expr(value, scope)
        elif isinstance(clause, ast.DeleteClause):
            for variable in clause.variables:
                if variable not in scope:
                    raise UnboundVariable(variable)
        elif isinstance(clause, ast.OrderByClause):
            names: set[str] = set()
            _expression_names(clause.expression, names)
            for name in sorted(names):
                if name not in scope and name not in return_aliases:
                    raise UnboundVariable(name)
        elif isinstance(clause, ast.CallClause):
            for arg in clause.args:
                _check_expr(arg, scope)
            scope |= set(clause.yields)
