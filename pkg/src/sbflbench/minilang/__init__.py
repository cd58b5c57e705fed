"""MiniLang: a small statically typed imperative language hosting the mutants."""
from . import ast
from .analysis import (
    BranchInfo,
    StatementInfo,
    branch_map,
    enumerate_branches,
    enumerate_statements,
    renumber,
    statement_index,
)
from .errors import MiniLangError, ParseError, TypeCheckError
from .parser import parse, parse_file
from .printer import pretty_print, print_expr, print_stmt_head
from .typecheck import check_program

__all__ = [
    "ast",
    "BranchInfo",
    "StatementInfo",
    "branch_map",
    "enumerate_branches",
    "enumerate_statements",
    "renumber",
    "statement_index",
    "MiniLangError",
    "ParseError",
    "TypeCheckError",
    "parse",
    "parse_file",
    "pretty_print",
    "print_expr",
    "print_stmt_head",
    "check_program",
]
