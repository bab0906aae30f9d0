"""Script language, executor, report emitter and command line."""

from .ast import Script, print_script
from .emit import to_json, to_text
from .executor import ExecutionError, Report, execute
from .parser import DSLError, DSLSyntaxError, UseBeforeDeclaration, WrongKind, parse

__all__ = [
    "DSLError", "DSLSyntaxError", "ExecutionError", "Report", "Script", "UseBeforeDeclaration",
    "WrongKind", "execute", "parse", "print_script", "to_json", "to_text",
]
