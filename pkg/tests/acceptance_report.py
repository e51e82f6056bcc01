"""Collects one PASS/FAIL line per acceptance criterion."""

import contextlib

RESULTS: list[str] = []


def report(number: int, title: str, ok: bool, detail: str = "") -> bool:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    RESULTS.append(line)
    print(line)
    return ok


@contextlib.contextmanager
def guarded(number: int, title: str):
    """Report FAIL if the body raises before reaching its own report."""
    before = len(RESULTS)
    try:
        yield
    except Exception as e:
        if len(RESULTS) == before:
            report(number, title, False, f"raised {type(e).__name__}: {e}")
        raise
