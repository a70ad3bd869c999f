"""Plain-text key files: one ``name=value`` pair per line."""

from __future__ import annotations

import secrets
from os import PathLike

from .chaos import ParameterError, SecretKey

REAL_FIELDS = ("x0", "m", "alpha")
INT_FIELDS = ("n1", "n2", "n3", "n4")
ORDER = ("x0", "m", "n1", "n2", "n3", "n4", "alpha")


class KeyFileError(ValueError):
    pass


def parse_key(text: str) -> SecretKey:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, value = line.partition("=")
        name, value = name.strip(), value.strip()
        if not sep or not value:
            raise KeyFileError(f"line {lineno}: expected name=value, got {raw!r}")
        if name not in ORDER:
            raise KeyFileError(f"line {lineno}: unknown key field {name!r}")
        if name in values:
            raise KeyFileError(f"line {lineno}: duplicate field {name!r}")
        values[name] = value
    missing = [n for n in ORDER if n not in values]
    if missing:
        raise KeyFileError(f"missing key fields: {', '.join(missing)}")
    try:
        # float() is correctly rounded (round-to-nearest) for decimal input
        fields = {n: float(values[n]) for n in REAL_FIELDS}
        fields.update({n: int(values[n]) for n in INT_FIELDS})
    except ValueError as exc:
        raise KeyFileError(str(exc)) from None
    try:
        return SecretKey(**fields)
    except ParameterError as exc:
        raise KeyFileError(str(exc)) from None


def format_key(key: SecretKey) -> str:
    return "".join(f"{n}={getattr(key, n)!r}\n" for n in ORDER)


def read_key(path: str | PathLike) -> SecretKey:
    with open(path, encoding="utf-8") as fh:
        return parse_key(fh.read())


def write_key(key: SecretKey, path: str | PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_key(key))


def fresh_key() -> SecretKey:
    """Default map and stage parameters with a random 15-digit x0."""
    digits = 0
    while digits == 0:
        digits = secrets.randbelow(10**15)
    return SecretKey(x0=float(f"0.{digits:015d}"))
