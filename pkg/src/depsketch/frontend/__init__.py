"""Snippet frontend: lexing, parsing, wrapping, and sketch extraction."""

from .analysis import Analysis, AnalysisError, TypeRef, analyze, sketch_source
from .lexer import JavaSyntaxError, Token, tokenize
from .parser import (
    CompilationUnit,
    Origin,
    Snippet,
    parse,
    parse_statements,
    parse_unit,
    wrap,
)

__all__ = [
    "Analysis",
    "AnalysisError",
    "CompilationUnit",
    "JavaSyntaxError",
    "Origin",
    "Snippet",
    "Token",
    "TypeRef",
    "analyze",
    "parse",
    "parse_statements",
    "parse_unit",
    "sketch_source",
    "tokenize",
    "wrap",
]
