from functools import lru_cache

from tracecode.code import build_code
from tracecode.field import FieldCtx

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def field(p, m, modulus=None):
    return FieldCtx(p, m, modulus)


@lru_cache(maxsize=None)
def code(p, m, modulus=None):
    return build_code(field(p, m, modulus))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
