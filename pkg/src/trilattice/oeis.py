"""OEIS b-file handling and verification against sequence A102698.

A102698 is the sequence of exact equilateral-triangle counts in the grids
{0..n}^3, which is what trilattice.counting computes.  This module parses
and emits the OEIS plain-text b-file format ("index value" lines), compares
computed records against a reference file, and fetches reference text either
from a local path, from a URL (with an offline-first cache), or from the
fixture copy shipped inside the package.

The fixture was generated by this package itself (see the comment lines in
the file for the exact command) because the build environment has no
network access; nothing in the test suite depends on oeis.org being
reachable.
"""

from __future__ import annotations

import os
import re
import urllib.request
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

__all__ = [
    "A102698_ID",
    "BFile",
    "ComparisonReport",
    "compare",
    "emit_bfile",
    "fetch_bfile",
    "fixture_bfile",
    "parse_bfile",
]

A102698_ID = "A102698"

_SEQUENCE_ID_RE = re.compile(r"^A\d{6,}$")


@dataclass(frozen=True)
class BFile:
    """An OEIS b-file: ordered (index, value) entries for one sequence."""

    sequence_id: str
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        last = None
        for index, _ in self.entries:
            if last is not None and index <= last:
                raise ValueError(
                    f"b-file indices must be strictly increasing, got {index} after {last}"
                )
            last = index

    @property
    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    @property
    def index_range(self) -> tuple[int, int] | None:
        if not self.entries:
            return None
        return self.entries[0][0], self.entries[-1][0]


def parse_bfile(text: str, sequence_id: str = "") -> BFile:
    """Parse b-file text: "index value" lines, '#' comments and blanks ignored.

    Values are arbitrary-precision integers and are not sanity-checked
    beyond their syntax — the file is the reference, not the computation.
    Malformed lines and non-increasing indices raise ValueError with the
    offending line number.
    """
    entries: list[tuple[int, int]] = []
    last_index: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'index value', got {raw!r}")
        try:
            index, value = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: non-integer field in {raw!r}") from exc
        if last_index is not None and index <= last_index:
            raise ValueError(
                f"line {lineno}: index {index} not greater than previous {last_index}"
            )
        last_index = index
        entries.append((index, value))
    return BFile(sequence_id, tuple(entries))


def emit_bfile(bfile: BFile, comments: Iterable[str] = ()) -> str:
    """Render a BFile back to b-file text (comments first, then entries)."""
    lines = [f"# {comment}" for comment in comments]
    lines.extend(f"{index} {value}" for index, value in bfile.entries)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ComparisonReport:
    """Per-index verdicts from comparing computed records with a b-file.

    ``matched``/``mismatched`` cover the overlapping indices; ``absent``
    lists computed indices the b-file does not reach.  The comparison passes
    iff the overlap is mismatch-free — absences are reported but are not
    failures.
    """

    sequence_id: str
    matched: tuple[int, ...]
    mismatched: tuple[tuple[int, int, int], ...]  # (index, computed, reference)
    absent: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not self.mismatched

    def summary(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        head = (
            f"{verdict}: {len(self.matched)} matched, "
            f"{len(self.mismatched)} mismatched, {len(self.absent)} absent"
        )
        if self.sequence_id:
            head = f"{self.sequence_id} {head}"
        lines = [head]
        for index, computed, reference in self.mismatched[:10]:
            lines.append(f"  mismatch at {index}: computed {computed} != reference {reference}")
        if len(self.mismatched) > 10:
            lines.append(f"  ... {len(self.mismatched) - 10} more mismatches")
        return "\n".join(lines)


def compare(records: Iterable, bfile: BFile) -> ComparisonReport:
    """Compare computed (n, count) records against a reference b-file."""
    reference = bfile.as_dict
    matched: list[int] = []
    mismatched: list[tuple[int, int, int]] = []
    absent: list[int] = []
    for record in records:
        if hasattr(record, "n"):
            n, count = record.n, record.count
        else:
            n, count = record
        if n not in reference:
            absent.append(n)
        elif reference[n] == count:
            matched.append(n)
        else:
            mismatched.append((n, count, reference[n]))
    return ComparisonReport(
        bfile.sequence_id, tuple(matched), tuple(mismatched), tuple(absent)
    )


def _bfile_url(sequence_id: str) -> str:
    return f"https://oeis.org/{sequence_id}/b{sequence_id[1:]}.txt"


def fixture_text() -> str:
    """Raw text of the vendored A102698 b-file."""
    return resources.files("trilattice").joinpath("data/b102698.txt").read_text()


def fixture_bfile() -> BFile:
    """The vendored A102698 b-file, parsed."""
    return parse_bfile(fixture_text(), A102698_ID)


def fetch_bfile(source: str, cache_dir: str | os.PathLike | None = None, timeout: float = 30.0) -> str:
    """Fetch b-file text from a path, a URL, a sequence id, or the fixture.

    Order of interpretation: the literal string "fixture" returns the
    vendored copy; an existing local path is read directly; a bare sequence
    id (e.g. "A102698") is expanded to the conventional oeis.org URL; and
    URLs are downloaded — but a previously cached copy in ``cache_dir``
    (default: the TRILATTICE_CACHE_DIR environment variable) is always
    preferred, so repeat runs stay offline.  Failures raise OSError; an
    empty result is never returned silently.
    """
    if source == "fixture":
        return fixture_text()
    path = Path(source)
    if path.exists():
        return path.read_text()
    if _SEQUENCE_ID_RE.match(source):
        url = _bfile_url(source)
    elif source.startswith(("http://", "https://")):
        url = source
    else:
        raise OSError(f"b-file source {source!r} is neither a file, a URL, nor a sequence id")
    if cache_dir is None:
        cache_dir = os.environ.get("TRILATTICE_CACHE_DIR")
    cache_path = None
    if cache_dir is not None:
        cache_path = Path(cache_dir) / Path(url).name
        if cache_path.exists():
            return cache_path.read_text()
    try:
        with urllib.request.urlopen(url, timeout=timeout) as response:
            text = response.read().decode("utf-8")
    except OSError as exc:
        raise OSError(f"failed to fetch {url}: {exc}") from exc
    if not text.strip():
        raise OSError(f"fetched {url} but the response was empty")
    if cache_path is not None:
        cache_path.parent.mkdir(parents=True, exist_ok=True)
        cache_path.write_text(text)
    return text
