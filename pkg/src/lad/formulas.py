"""Formula AST for a two-layer propositional language.

The base layer L is built from atoms and falsum with the extensional
connectives ~ (negation), /\\ (conjunction), \\/ (disjunction) and =>
(implication).  These are evaluated world by world, classically.

The full language adds the intensional connectives ! (negation),
& (conjunction), | (disjunction) and -> (implication), which are
evaluated at the level of whole contexts.  Intensional connectives may
apply to anything, but extensional connectives only combine L-formulas.
That restriction is enforced at construction time: an extensional node
over a non-L operand raises LayerError and is never representable.

Diamond and the n-ary plus-disjunction are defined symbols, expanded
eagerly into the primitives (there are no AST nodes for them).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Sequence


class LayerError(Exception):
    """An extensional connective was applied to a non-L operand."""

    def __init__(self, message: str, position: int | None = None, offending=None):
        super().__init__(message)
        self.position = position
        self.offending = offending


class PathError(Exception):
    """A subformula path does not exist in the target formula."""


_ATOM_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class Formula:
    """Base class for all formula nodes."""

    __slots__ = ()

    def children(self) -> tuple["Formula", ...]:
        return ()


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not _ATOM_RE.match(self.name):
            raise ValueError(f"invalid atom name: {self.name!r}")


@dataclass(frozen=True)
class Falsum(Formula):
    pass


FALSUM = Falsum()


def _require_l(operand: Formula, op: str) -> None:
    if not is_l_formula(operand):
        raise LayerError(
            f"extensional {op} requires an L-formula operand", offending=operand
        )


@dataclass(frozen=True)
class ExtNeg(Formula):
    operand: Formula

    def __post_init__(self):
        _require_l(self.operand, "~")

    def children(self):
        return (self.operand,)


@dataclass(frozen=True)
class ExtAnd(Formula):
    left: Formula
    right: Formula

    def __post_init__(self):
        _require_l(self.left, "/\\")
        _require_l(self.right, "/\\")

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class ExtOr(Formula):
    left: Formula
    right: Formula

    def __post_init__(self):
        _require_l(self.left, "\\/")
        _require_l(self.right, "\\/")

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class ExtImp(Formula):
    left: Formula
    right: Formula

    def __post_init__(self):
        _require_l(self.left, "=>")
        _require_l(self.right, "=>")

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class IntNeg(Formula):
    operand: Formula

    def children(self):
        return (self.operand,)


@dataclass(frozen=True)
class IntAnd(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class IntOr(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class IntImp(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


_L_ROOTS = (Atom, Falsum, ExtNeg, ExtAnd, ExtOr, ExtImp)
_INT_BINARY = (IntAnd, IntOr, IntImp)


def is_l_formula(phi: Formula) -> bool:
    """True when phi lies in the extensional base layer.

    Because extensional constructors reject non-L operands, checking the
    root suffices: an L-rooted node can only contain L-formulas.
    """
    return isinstance(phi, _L_ROOTS)


def atoms_of(phi: Formula) -> frozenset[str]:
    if isinstance(phi, Atom):
        return frozenset((phi.name,))
    out: set[str] = set()
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            out.add(node.name)
        else:
            stack.extend(node.children())
    return frozenset(out)


def size(phi: Formula) -> int:
    """Number of AST nodes."""
    n = 0
    stack = [phi]
    while stack:
        node = stack.pop()
        n += 1
        stack.extend(node.children())
    return n


def _contains_int_imp(phi: Formula) -> bool:
    if isinstance(phi, IntImp):
        return True
    if is_l_formula(phi):
        return False
    return any(_contains_int_imp(c) for c in phi.children())


def _neg_over_imp(phi: Formula) -> bool:
    if is_l_formula(phi):
        return False
    if isinstance(phi, IntNeg):
        return _contains_int_imp(phi.operand)
    return any(_neg_over_imp(c) for c in phi.children())


def is_safe(phi: Formula) -> bool:
    """Safe formulas: no intensional implication in the scope of an
    intensional negation, unless the whole formula is an implication.

    Safe formulas are persistent (assertibility survives shrinking the
    context), which is what licenses reusing them inside round subproofs
    of the proof calculus.
    """
    if isinstance(phi, IntImp):
        return True
    return not _neg_over_imp(phi)


def e_translate(phi: Formula) -> Formula:
    """Map every intensional connective to its extensional counterpart."""
    if isinstance(phi, (Atom, Falsum)):
        return phi
    if isinstance(phi, ExtNeg):
        return ExtNeg(e_translate(phi.operand))
    if isinstance(phi, IntNeg):
        return ExtNeg(e_translate(phi.operand))
    left, right = (e_translate(c) for c in phi.children())
    if isinstance(phi, (ExtAnd, IntAnd)):
        return ExtAnd(left, right)
    if isinstance(phi, (ExtOr, IntOr)):
        return ExtOr(left, right)
    return ExtImp(left, right)


def subformula_at(phi: Formula, path: Sequence[int]) -> Formula:
    node = phi
    for step in path:
        kids = node.children()
        if not 0 <= step < len(kids):
            raise PathError(f"no child {step} at {node!r}")
        node = kids[step]
    return node


def substitute(chi: Formula, path: Sequence[int], psi: Formula) -> Formula:
    """Replace the subformula of chi at the given child-index path by psi.

    Raises PathError for a dangling path and LayerError when the
    replacement would put a non-L formula under an extensional node.
    """
    path = tuple(path)
    if not path:
        return psi
    step, rest = path[0], path[1:]
    kids = chi.children()
    if not 0 <= step < len(kids):
        raise PathError(f"no child {step} at {chi!r}")
    new_kids = list(kids)
    new_kids[step] = substitute(kids[step], rest, psi)
    cls = type(chi)
    return cls(*new_kids)


def all_paths(phi: Formula) -> Iterator[tuple[int, ...]]:
    """Yield every occurrence path of phi, root first."""
    yield ()
    for i, child in enumerate(phi.children()):
        for sub in all_paths(child):
            yield (i,) + sub


def diamond(phi: Formula) -> Formula:
    """<>phi, defined as !(phi -> _|_)."""
    return IntNeg(IntImp(phi, FALSUM))


def match_diamond(phi: Formula) -> Formula | None:
    if (
        isinstance(phi, IntNeg)
        and isinstance(phi.operand, IntImp)
        and isinstance(phi.operand.right, Falsum)
    ):
        return phi.operand.left
    return None


def _chain(cls, items: Sequence[Formula]) -> Formula:
    if not items:
        raise ValueError("empty chain")
    out = items[-1]
    for item in reversed(items[:-1]):
        out = cls(item, out)
    return out


def cap_chain(items: Sequence[Formula]) -> Formula:
    return _chain(ExtAnd, items)


def cup_chain(items: Sequence[Formula]) -> Formula:
    return _chain(ExtOr, items)


def and_chain(items: Sequence[Formula]) -> Formula:
    return _chain(IntAnd, items)


def or_chain(items: Sequence[Formula]) -> Formula:
    return _chain(IntOr, items)


def plus_disj(operands: Sequence[Formula]) -> Formula:
    """n-ary (+) over L-formulas, n >= 1.

    Expands to (a1 \\/ ... \\/ an) & (<>a1 & ... & <>an).  The operands
    assert that at least one alternative holds everywhere while each
    alternative stays possible.
    """
    ops = list(operands)
    if not ops:
        raise ValueError("(+) needs at least one operand")
    for a in ops:
        if not is_l_formula(a):
            raise LayerError("(+) operands must be L-formulas", offending=a)
    return IntAnd(cup_chain(ops), and_chain([diamond(a) for a in ops]))


def match_plus(phi: Formula) -> tuple[Formula, ...] | None:
    """Recognise an expanded (+) with n >= 2, returning its operands."""
    if not isinstance(phi, IntAnd):
        return None
    union, dias = phi.left, phi.right
    # Try each chain length; the diamond chain pins n uniquely.
    n = 2
    while True:
        ops: list[Formula] = []
        node = union
        ok = True
        for _ in range(n - 1):
            if isinstance(node, ExtOr):
                ops.append(node.left)
                node = node.right
            else:
                ok = False
                break
        if not ok:
            return None
        ops.append(node)
        rest = dias
        matched = True
        for i in range(n):
            if i < n - 1:
                if not isinstance(rest, IntAnd):
                    matched = False
                    break
                head, rest_next = rest.left, rest.right
            else:
                head, rest_next = rest, None
            inner = match_diamond(head)
            if inner is None or inner != ops[i]:
                matched = False
                break
            rest = rest_next
        if matched:
            return tuple(ops)
        n += 1
        # No point growing past what the union chain can supply.
        if n > size(union):
            return None
