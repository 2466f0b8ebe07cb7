"""Sense inventory, is-a taxonomy and extended sense sets.

The inventory plays the role of the bilingual dictionary: every source word
lists its senses, and every sense lists the target-language words that
translate it.  The taxonomy is a DAG of ``child -> parent`` edges over sense
ids.  An extended sense set adds to a word's base senses every hypernym that
generalizes exactly one of them.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .errors import FormatError, UnknownSenseError, UnknownWordError


@dataclass(frozen=True)
class Sense:
    id: str
    translations: frozenset[str]


class SenseInventory:
    """Maps each source word to its ordered list of senses."""

    def __init__(self, entries: Mapping[str, Iterable[Sense]] | None = None):
        self._entries: dict[str, tuple[Sense, ...]] = {}
        for word, senses in (entries or {}).items():
            senses = tuple(senses)
            if not senses:
                raise ValueError(f"word {word!r} has no senses")
            ids = [s.id for s in senses]
            if len(set(ids)) != len(ids):
                raise ValueError(f"duplicate sense id under word {word!r}")
            for s in senses:
                if not s.translations:
                    raise ValueError(f"sense {s.id!r} of {word!r} has no translation")
            self._entries[word] = senses

    @classmethod
    def from_rows(cls, rows: Iterable[tuple[str, str, Iterable[str]]]) -> "SenseInventory":
        entries: dict[str, list[Sense]] = defaultdict(list)
        for word, sense_id, translations in rows:
            entries[word].append(Sense(sense_id, frozenset(translations)))
        return cls(entries)

    def __contains__(self, word) -> bool:
        return word in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, SenseInventory) and self._entries == other._entries

    def senses(self, word: str) -> tuple[Sense, ...]:
        try:
            return self._entries[word]
        except KeyError:
            raise UnknownWordError(word) from None

    def sense_ids(self, word: str) -> tuple[str, ...]:
        """The base sense set M(w), in dictionary order."""
        return tuple(s.id for s in self.senses(word))

    def is_ambiguous(self, word: str) -> bool:
        return word in self._entries and len(self._entries[word]) > 1

    def rows(self):
        for word, senses in self._entries.items():
            for s in senses:
                yield word, s.id, sorted(s.translations)


def load_inventory(path) -> SenseInventory:
    """Read a dictionary file of ``word<TAB>sense<TAB>tr1,tr2,...`` lines."""
    entries: dict[str, list[Sense]] = defaultdict(list)
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise FormatError("expected word<TAB>sense<TAB>translations", path, line_no)
            word, sense_id, trans = (p.strip() for p in parts)
            if not word or not sense_id or any(ch.isspace() for ch in sense_id):
                raise FormatError("empty word or malformed sense id", path, line_no)
            translations = frozenset(t.strip() for t in trans.split(",") if t.strip())
            if not translations:
                raise FormatError(f"sense {sense_id!r} has no translation", path, line_no)
            if any(s.id == sense_id for s in entries[word]):
                raise FormatError(f"duplicate sense {sense_id!r} for word {word!r}", path, line_no)
            entries[word].append(Sense(sense_id, translations))
    return SenseInventory(entries)


def save_inventory(inv: SenseInventory, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for word, sense_id, translations in inv.rows():
            fh.write(f"{word}\t{sense_id}\t{','.join(translations)}\n")


class Taxonomy:
    """Acyclic is-a graph. ``ancestors(m)`` is the strict transitive closure."""

    def __init__(self, edges: Iterable[tuple[str, str]] = ()):
        self.parents: dict[str, set[str]] = defaultdict(set)
        self.edges = frozenset(edges)
        for child, parent in self.edges:
            if child == parent:
                raise ValueError(f"self-edge on {child!r}")
            self.parents[child].add(parent)
        self._closure: dict[str, frozenset[str]] = {}
        self._check_acyclic()

    def _check_acyclic(self) -> None:
        # iterative three-colour DFS
        state: dict[str, int] = {}
        for start in sorted(self.parents):
            if state.get(start):
                continue
            stack = [(start, iter(sorted(self.parents.get(start, ()))))]
            state[start] = 1
            while stack:
                node, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    state[node] = 2
                    stack.pop()
                elif state.get(nxt) == 1:
                    raise ValueError(f"taxonomy has a cycle through {nxt!r}")
                elif not state.get(nxt):
                    state[nxt] = 1
                    stack.append((nxt, iter(sorted(self.parents.get(nxt, ())))))

    def ancestors(self, m: str) -> frozenset[str]:
        cached = self._closure.get(m)
        if cached is not None:
            return cached
        result: set[str] = set()
        for p in self.parents.get(m, ()):
            result.add(p)
            result |= self.ancestors(p)
        closure = frozenset(result)
        self._closure[m] = closure
        return closure

    def nodes(self) -> set[str]:
        out = set()
        for child, parent in self.edges:
            out.add(child)
            out.add(parent)
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Taxonomy) and self.edges == other.edges

    def __hash__(self):
        return hash(self.edges)


def load_taxonomy(path) -> Taxonomy:
    edges = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not all(p.strip() for p in parts):
                raise FormatError("expected child<TAB>parent", path, line_no)
            edges.append((parts[0].strip(), parts[1].strip()))
    try:
        return Taxonomy(edges)
    except ValueError as exc:
        raise FormatError(str(exc), path) from None


def save_taxonomy(t: Taxonomy, path) -> None:
    Path(path).write_text("".join(f"{c}\t{p}\n" for c, p in sorted(t.edges)), encoding="utf-8")


def isa(t: Taxonomy, m: str, m2: str) -> bool:
    """True iff ``m2`` is a strict hypernym (ancestor) of ``m``."""
    return m2 in t.ancestors(m)


@dataclass(frozen=True)
class ExtendedSenseSet:
    word: str
    base: tuple[str, ...]
    virtual: Mapping[str, str] = field(default_factory=dict)

    @property
    def senses(self) -> tuple[str, ...]:
        """E(w): base senses first, then virtual senses in sorted order."""
        return self.base + tuple(sorted(self.virtual))

    def __contains__(self, m) -> bool:
        return m in self.base or m in self.virtual


def extended_sense_set(inv: SenseInventory, t: Taxonomy, word: str) -> ExtendedSenseSet:
    base = inv.sense_ids(word)
    owners: dict[str, list[str]] = defaultdict(list)
    for m in base:
        for anc in t.ancestors(m):
            owners[anc].append(m)
    virtual = {
        anc: ms[0]
        for anc, ms in owners.items()
        if len(ms) == 1 and anc not in base
    }
    return ExtendedSenseSet(word, base, virtual)


def base_sense_of(ess: ExtendedSenseSet, m: str) -> str:
    if m in ess.base:
        return m
    try:
        return ess.virtual[m]
    except KeyError:
        raise UnknownSenseError(m, ess.word) from None


def wg(t: Taxonomy, m: str, m2: str, alpha):
    """Count-transfer weight from an observed tag ``m2`` to an evaluated tag ``m``.

    1 for identity, ``alpha`` when ``m`` is a hypernym of ``m2``, else 0.
    """
    if m == m2:
        return 1
    if isa(t, m2, m):
        return alpha
    return 0
