"""Collects one pass/fail line per acceptance criterion for the run summary."""

_RESULTS = {}


def record(number: int, title: str, passed: bool, detail: str = "") -> None:
    _RESULTS[number] = (title, passed, detail)


def summary_lines() -> list:
    lines = []
    for number in sorted(_RESULTS):
        title, passed, detail = _RESULTS[number]
        status = "PASS" if passed else "FAIL"
        suffix = f" ({detail})" if detail else ""
        lines.append(f"criterion {number:2d} {title}: {status}{suffix}")
    return lines
