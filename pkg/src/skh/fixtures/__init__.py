"""Shipped diagram corpus: PD files plus a manifest of move-related pairs."""

from __future__ import annotations

from dataclasses import dataclass
from importlib.resources import files
from pathlib import Path

from ..diagram import SingularDiagram, parse_pd

MOVES = ("RI", "RII", "RIII", "S1", "S2", "S3")


@dataclass(frozen=True)
class FixtureEntry:
    name: str
    filename: str
    pair: str | None = None
    move: str | None = None


def corpus_dir() -> Path:
    return Path(str(files("skh") / "fixtures"))


def load_manifest(directory: Path | None = None) -> list[FixtureEntry]:
    directory = directory or corpus_dir()
    entries: list[FixtureEntry] = []
    for raw in (directory / "manifest.txt").read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        name, filename = parts[0], parts[1]
        pair = move = None
        for extra in parts[2:]:
            key, _, value = extra.partition("=")
            if key == "pair":
                pair = value
            elif key == "move":
                if value not in MOVES:
                    raise ValueError(f"unknown move {value!r} in manifest")
                move = value
            else:
                raise ValueError(f"unknown manifest field {extra!r}")
        entries.append(FixtureEntry(name, filename, pair, move))
    return entries


def fixture_text(name: str, directory: Path | None = None) -> str:
    directory = directory or corpus_dir()
    by_name = {e.name: e for e in load_manifest(directory)}
    return (directory / by_name[name].filename).read_text()


def load_fixture(name: str, directory: Path | None = None) -> SingularDiagram:
    return parse_pd(fixture_text(name, directory))


def load_corpus(directory: Path | None = None) -> dict[str, SingularDiagram]:
    directory = directory or corpus_dir()
    return {
        e.name: parse_pd((directory / e.filename).read_text())
        for e in load_manifest(directory)
    }
