"""On-disk memo for computed complexity values.

One record per line, tab-separated: kind, canonical target, canonical
condition (or "-"), value, witnessing state sequence. Words are written as
digit strings when the alphabet fits (dot-separated otherwise) with an
``@alphabet_size`` suffix; sequences are comma-separated state indices.

The file is append-only; ``compact()`` rewrites it atomically. A corrupt line
is skipped with a warning, never served.
"""

from __future__ import annotations

import os
import tempfile
import warnings
from pathlib import Path

from .words import Word

try:
    import fcntl
except ImportError:  # non-POSIX: appends are still atomic enough per line
    fcntl = None

ENV_CACHE_DIR = "AUTOCOMPLEXITY_CACHE_DIR"
CACHE_FILENAME = "results.tsv"


def format_word(w: Word) -> str:
    if w.alphabet_size <= 10:
        body = "".join(str(s) for s in w.symbols)
    else:
        body = ".".join(str(s) for s in w.symbols)
    return f"{body}@{w.alphabet_size}"


def parse_word(text: str) -> Word:
    body, sep, alpha = text.rpartition("@")
    if not sep or not alpha:
        raise ValueError(f"word field {text!r} lacks an alphabet suffix")
    alphabet_size = int(alpha)
    if not body:
        symbols: tuple[int, ...] = ()
    elif "." in body:
        symbols = tuple(int(p) for p in body.split("."))
    else:
        symbols = tuple(int(c) for c in body)
    return Word(symbols, alphabet_size)


class ResultCache:
    """Memo of (kind, canonical target, canonical condition) -> (value, sequence).

    Keys must already be canonical; ``complexity.compute`` normalizes before
    calling in. With ``directory=None`` the cache is memory-only.
    """

    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory is not None else None
        self._memo: dict[tuple, tuple[int, tuple[int, ...]]] = {}
        self._loaded = self.directory is None

    @classmethod
    def from_environment(cls, override: str | None = None) -> ResultCache | None:
        """Cache at the override path, else at $AUTOCOMPLEXITY_CACHE_DIR, else None."""
        path = override if override is not None else os.environ.get(ENV_CACHE_DIR)
        return cls(path) if path else None

    @property
    def path(self) -> Path | None:
        if self.directory is None:
            return None
        return self.directory / CACHE_FILENAME

    @staticmethod
    def _key(query) -> tuple:
        condition = query.condition
        return (
            query.kind,
            query.target.symbols,
            query.target.alphabet_size,
            None if condition is None else condition.symbols,
            None if condition is None else condition.alphabet_size,
        )

    def _load(self) -> None:
        self._loaded = True
        path = self.path
        if path is None or not path.exists():
            return
        with open(path, "r", encoding="ascii") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    kind, target, condition, value, seq = line.split("\t")
                    tw = parse_word(target)
                    cw = None if condition == "-" else parse_word(condition)
                    key = (
                        kind,
                        tw.symbols,
                        tw.alphabet_size,
                        None if cw is None else cw.symbols,
                        None if cw is None else cw.alphabet_size,
                    )
                    self._memo[key] = (int(value), tuple(int(s) for s in seq.split(",")))
                except (ValueError, IndexError):
                    warnings.warn(f"skipping corrupt cache line {lineno} in {path}")

    def get(self, query) -> tuple[int, tuple[int, ...]] | None:
        if not self._loaded:
            self._load()
        return self._memo.get(self._key(query))

    def put(self, query, value: int, sequence: tuple[int, ...]) -> None:
        if not self._loaded:
            self._load()
        key = self._key(query)
        if self._memo.get(key) == (value, sequence):
            return
        self._memo[key] = (value, tuple(sequence))
        path = self.path
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        line = self._format_line(query, value, sequence)
        with open(path, "a", encoding="ascii") as fh:
            if fcntl is not None:
                fcntl.flock(fh, fcntl.LOCK_EX)
            fh.write(line)
            fh.flush()
            if fcntl is not None:
                fcntl.flock(fh, fcntl.LOCK_UN)

    @staticmethod
    def _format_line(query, value: int, sequence) -> str:
        condition = "-" if query.condition is None else format_word(query.condition)
        seq = ",".join(str(s) for s in sequence)
        return f"{query.kind}\t{format_word(query.target)}\t{condition}\t{value}\t{seq}\n"

    def __len__(self) -> int:
        if not self._loaded:
            self._load()
        return len(self._memo)

    def compact(self) -> None:
        """Rewrite the backing file with one line per key, atomically."""
        if not self._loaded:
            self._load()
        path = self.path
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".cache-", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="ascii") as fh:
                for key in sorted(self._memo, key=repr):
                    kind, tsym, talpha, csym, calpha = key
                    value, seq = self._memo[key]
                    target = format_word(Word(tsym, talpha))
                    condition = "-" if csym is None else format_word(Word(csym, calpha))
                    seq_text = ",".join(str(s) for s in seq)
                    fh.write(f"{kind}\t{target}\t{condition}\t{value}\t{seq_text}\n")
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def clear(self) -> None:
        self._memo.clear()
        self._loaded = True
        path = self.path
        if path is not None and path.exists():
            path.unlink()
