"""Query language front end: lexer, parser, printer, and executor."""

from .tokens import Token, tokenize
from .parser import parse, parse_statement
from .printer import print_expression, print_statement
from .executor import RowSet, Summary, execute, run_query
from .procedures import PROCEDURES, call_procedure

__all__ = [
    "Token",
    "tokenize",
    "parse",
    "parse_statement",
    "print_statement",
    "print_expression",
    "execute",
    "run_query",
    "RowSet",
    "Summary",
    "PROCEDURES",
    "call_procedure",
]
