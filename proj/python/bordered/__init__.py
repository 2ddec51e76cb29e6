"""Python access to the bordered toolkit.

Documents use the same text format as the command-line tool; commands return
their report as a dict.
"""

import json

from ._bordered import (
    BorderedError,
    Document,
    f2_rank,
    parse_document,
    pmc_report,
    set_threads,
    strand_basis,
)

__all__ = [
    "BorderedError",
    "Document",
    "execute",
    "f2_rank",
    "load",
    "parse_document",
    "pmc_report",
    "run_all",
    "set_threads",
    "strand_basis",
]


def load(path):
    with open(path, encoding="utf-8") as f:
        return parse_document(f.read())


def execute(document, command):
    """Run one command (a string or a list of words); returns (exit_code, report)."""
    args = command.split() if isinstance(command, str) else list(command)
    code, text = document.execute_json(args)
    return code, json.loads(text)


def run_all(document):
    return [json.loads(r) for r in document.run_all_json()]
