"""Possible worlds, contexts and the deniability-variant switch.

A world is a truth-value assignment over a finite atom list.  Atom
lists are kept sorted, and each world has a canonical index: read its
truth vector over the sorted atoms as a binary number, first atom as
the most significant bit.  A context is a nonempty set of worlds over
one atom list, stored as a bit set over world indices.

The text format for contexts is one header line of atom names followed
by one 0/1 string per world (one character per atom, header order).
Lines starting with # are comments.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

_ATOM_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class EmptyInputError(Exception):
    """Empty atom list, world set or context set where one is required."""


class ContextFormatError(Exception):
    """Malformed context file text."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DeniabilityVariant(enum.Enum):
    """Which denial clause governs the intensional implication."""

    GAUKER = "gauker"
    NELSON = "nelson"
    CONNEXIVE = "connexive"

    @classmethod
    def coerce(cls, value: "DeniabilityVariant | str") -> "DeniabilityVariant":
        if isinstance(value, cls):
            return value
        return cls(value)


@dataclass(frozen=True)
class World:
    """A classical valuation over a sorted atom tuple."""

    atoms: tuple[str, ...]
    values: tuple[bool, ...]

    def __post_init__(self):
        if not self.atoms:
            raise EmptyInputError("a world needs at least one atom")
        if len(self.atoms) != len(self.values):
            raise ValueError("atom and value counts differ")
        if list(self.atoms) != sorted(set(self.atoms)):
            # Normalise: sort atoms, permuting values alongside.
            pairs = sorted(zip(self.atoms, self.values))
            names = tuple(a for a, _ in pairs)
            if len(set(names)) != len(names):
                raise ValueError("duplicate atom in world")
            object.__setattr__(self, "atoms", names)
            object.__setattr__(self, "values", tuple(v for _, v in pairs))

    @classmethod
    def from_mapping(cls, assignment: Mapping[str, bool]) -> "World":
        names = tuple(sorted(assignment))
        return cls(names, tuple(bool(assignment[a]) for a in names))

    def value(self, atom: str) -> bool:
        try:
            return self.values[self.atoms.index(atom)]
        except ValueError:
            raise KeyError(atom) from None

    @property
    def index(self) -> int:
        """Truth vector as a binary number, first atom most significant."""
        n = 0
        for v in self.values:
            n = (n << 1) | int(v)
        return n

    def bits(self) -> str:
        return "".join("1" if v else "0" for v in self.values)


def world_from_index(atoms: Sequence[str], index: int) -> World:
    atoms = tuple(atoms)
    k = len(atoms)
    values = tuple(bool((index >> (k - 1 - i)) & 1) for i in range(k))
    return World(atoms, values)


@dataclass(frozen=True)
class Context:
    """A nonempty set of worlds over one sorted atom tuple.

    members is a bit set over world indices (bit i set means the world
    with index i belongs to the context).
    """

    atoms: tuple[str, ...]
    members: int

    def __post_init__(self):
        if not self.atoms:
            raise EmptyInputError("a context needs at least one atom")
        if list(self.atoms) != sorted(set(self.atoms)):
            raise ValueError("context atoms must be sorted and unique")
        limit = 1 << (1 << len(self.atoms))
        if not 0 < self.members < limit:
            raise ValueError("context members out of range or empty")

    @classmethod
    def from_worlds(cls, worlds: Sequence[World]) -> "Context":
        if not worlds:
            raise EmptyInputError("a context needs at least one world")
        atoms = worlds[0].atoms
        mask = 0
        for w in worlds:
            if w.atoms != atoms:
                raise ValueError("worlds over different atom lists")
            mask |= 1 << w.index
        return cls(atoms, mask)

    @classmethod
    def full(cls, atoms: Sequence[str]) -> "Context":
        atoms = tuple(sorted(set(atoms)))
        if not atoms:
            raise EmptyInputError("a context needs at least one atom")
        return cls(atoms, (1 << (1 << len(atoms))) - 1)

    def worlds(self) -> Iterator[World]:
        """Member worlds in ascending index order."""
        mask = self.members
        while mask:
            low = mask & -mask
            yield world_from_index(self.atoms, low.bit_length() - 1)
            mask ^= low

    def __len__(self) -> int:
        return bin(self.members).count("1")

    def __contains__(self, world: World) -> bool:
        return world.atoms == self.atoms and bool(self.members >> world.index & 1)

    def subcontexts(self) -> Iterator["Context"]:
        """All nonempty subcontexts, ascending by member bit set."""
        sub = 0
        while True:
            sub = (sub - self.members) & self.members
            if sub == 0:
                return
            yield Context(self.atoms, sub)


def parse_context(text: str) -> Context:
    atoms: tuple[str, ...] | None = None
    worlds: list[World] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if atoms is None:
            names = tuple(line.split())
            if len(set(names)) != len(names):
                raise ContextFormatError("duplicate atom in header", lineno)
            for name in names:
                if not _ATOM_NAME.fullmatch(name):
                    raise ContextFormatError(f"invalid atom name {name!r}", lineno)
            atoms = names
            continue
        if len(line) != len(atoms) or set(line) - {"0", "1"}:
            raise ContextFormatError(
                f"world line must be {len(atoms)} characters of 0/1", lineno
            )
        if line in seen:
            raise ContextFormatError(f"duplicate world {line!r}", lineno)
        seen.add(line)
        worlds.append(World(atoms, tuple(c == "1" for c in line)))
    if atoms is None:
        raise ContextFormatError("missing atom header line")
    if not worlds:
        raise ContextFormatError("a context needs at least one world")
    return Context.from_worlds(worlds)


def format_context(context: Context) -> str:
    lines = [" ".join(context.atoms)]
    lines.extend(w.bits() for w in context.worlds())
    return "\n".join(lines) + "\n"
