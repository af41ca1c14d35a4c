"""Shared sink for the acceptance gate's one-line verdicts; conftest
replays them in the terminal summary so they survive output capture."""

lines: list[str] = []


def record(line: str) -> None:
    lines.append(line)
