"""Grounding relations over time-indexed ontology worlds."""

from ._core import (
    DocumentError,
    World,
    explain,
    format_document,
    list_cases,
    load_case,
    parse_errors,
    rule_catalog,
    run_cli,
)

__all__ = [
    "DocumentError",
    "World",
    "explain",
    "format_document",
    "list_cases",
    "load_case",
    "parse_errors",
    "rule_catalog",
    "run_cli",
]
