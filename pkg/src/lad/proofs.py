"""Fitch-style proof documents: parsing, scoping and rule checking.

File format, one entry per line:

    <markers> <formula> ; <rule> <citations>

Markers give the nesting: one character per open subproof, ``o`` for a
round (suppositional) subproof and ``*`` for a square (case-split)
subproof.  The first line of a subproof carries the rule ``hyp``; a
``hyp`` at the current depth closes the open subproof and starts a
sibling.  Citations are comma separated, either a line number ``n`` or
a closed subproof span ``a-b`` (``a`` may equal ``b``).  ``#`` starts
a comment and line numbers count formula lines only.

Scoping is standard Fitch plus one twist: citing a line from inside a
round subproof is legal only if the line sits inside that subproof too
or its formula is safe (safe formulas survive strengthening of the
supposition, unsafe ones may not).  Square subproofs impose no such
restriction.  Each checked line reports at most one violation; scope
problems win over unsafe imports, which win over rule-schema problems.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .contexts import DeniabilityVariant
from .formulas import (
    ExtAnd,
    ExtImp,
    ExtNeg,
    ExtOr,
    FALSUM,
    Formula,
    IntAnd,
    IntImp,
    IntNeg,
    IntOr,
    diamond,
    is_l_formula,
    is_safe,
    match_diamond,
    plus_disj,
)
from .syntax import ParseError, parse

ROUND = "round"
SQUARE = "square"
_KIND_BY_CHAR = {"o": ROUND, "*": SQUARE}
_CHAR_BY_KIND = {ROUND: "o", SQUARE: "*"}

RULE_MISMATCH = "RULE_MISMATCH"
NOT_L_FORMULA = "NOT_L_FORMULA"
WRONG_SUBPROOF_KIND = "WRONG_SUBPROOF_KIND"
UNSAFE_CITATION = "UNSAFE_CITATION"
CITATION_SCOPE = "CITATION_SCOPE"
MACRO_SHAPE = "MACRO_SHAPE"

# rule name -> (line citations, subproof citations); spans trail lines.
RULE_ARITY = {
    "icap": (2, 0), "ecap1": (1, 0), "ecap2": (1, 0),
    "icup1": (1, 0), "icup2": (1, 0), "ecup": (1, 2),
    "isup": (0, 1), "esup": (2, 0),
    "isim": (0, 1), "esim1": (2, 0), "esim2": (1, 0),
    "iand": (2, 0), "eand1": (1, 0), "eand2": (1, 0),
    "ior1": (1, 0), "ior2": (1, 0), "eor": (1, 2),
    "iimp": (0, 1), "eimp": (2, 0),
    "ineg": (0, 1), "eneg": (2, 0), "efq": (1, 0),
    "nn1": (1, 0), "nn2": (1, 0),
    "nand1": (1, 0), "nand2": (1, 0),
    "nor1": (1, 0), "nor2": (1, 0),
    "nimp1": (1, 0), "nimp2": (1, 0),
    "cem": (0, 0), "diaplus": (1, 0),
}
RULES = frozenset(RULE_ARITY) | {"premise", "hyp"}


class ProofParseError(Exception):
    def __init__(self, message: str, source_line: int | None = None):
        if source_line is not None:
            message = f"line {source_line}: {message}"
        super().__init__(message)
        self.source_line = source_line


@dataclass(frozen=True)
class Citation:
    start: int
    end: int | None = None

    @property
    def is_span(self) -> bool:
        return self.end is not None

    def __str__(self) -> str:
        return f"{self.start}-{self.end}" if self.is_span else str(self.start)


@dataclass(frozen=True)
class ProofLine:
    number: int
    depth: int
    formula: Formula
    rule: str
    citations: tuple[Citation, ...]
    chain: tuple[int, ...]
    source_line: int


@dataclass
class Subproof:
    ident: int
    kind: str
    start: int
    hyp: int
    parent_chain: tuple[int, ...]
    end: int = -1

    @property
    def depth(self) -> int:
        return len(self.parent_chain) + 1


@dataclass(frozen=True)
class Violation:
    line: int
    code: str
    detail: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.code}: {self.detail}"


@dataclass(frozen=True)
class Verdict:
    ok: bool
    violations: tuple[Violation, ...]


@dataclass(frozen=True)
class ProofDoc:
    lines: tuple[ProofLine, ...]
    subproofs: tuple[Subproof, ...]

    def line(self, number: int) -> ProofLine:
        return self.lines[number - 1]

    def span(self, start: int, end: int) -> Subproof | None:
        for s in self.subproofs:
            if s.start == start and s.end == end:
                return s
        return None

    def premises(self) -> list[Formula]:
        return [l.formula for l in self.lines if l.rule == "premise"]

    def conclusion(self) -> Formula:
        last = self.lines[-1]
        if last.depth != 0:
            raise ValueError("proof ends inside a subproof")
        return last.formula


_MARKED = re.compile(r"([*o]+)\s+(.*)$")
_CITE = re.compile(r"(\d+)(?:-(\d+))?$")


def parse_proof(text: str) -> ProofDoc:
    lines: list[ProofLine] = []
    subproofs: list[Subproof] = []
    open_stack: list[Subproof] = []
    seen_body = False

    def close_down(keep: int) -> None:
        while len(open_stack) > keep:
            open_stack.pop().end = len(lines)

    for source_line, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        m = _MARKED.match(stripped)
        if m:
            markers, rest = m.group(1), m.group(2)
        else:
            markers, rest = "", stripped
        depth = len(markers)
        if ";" not in rest:
            raise ProofParseError("missing ';' between formula and rule", source_line)
        formula_text, rule_part = rest.split(";", 1)
        try:
            formula = parse(formula_text)
        except ParseError as exc:
            raise ProofParseError(f"bad formula: {exc}", source_line) from exc
        fields = rule_part.strip().split(None, 1)
        if not fields:
            raise ProofParseError("missing rule name", source_line)
        rule = fields[0]
        if rule not in RULES:
            raise ProofParseError(f"unknown rule {rule!r}", source_line)
        citations: list[Citation] = []
        if len(fields) > 1:
            for token in fields[1].split(","):
                token = token.strip()
                cm = _CITE.fullmatch(token)
                if not cm:
                    raise ProofParseError(f"bad citation {token!r}", source_line)
                start = int(cm.group(1))
                end = int(cm.group(2)) if cm.group(2) else None
                citations.append(Citation(start, end))
        number = len(lines) + 1

        if rule in ("premise", "hyp") and citations:
            raise ProofParseError(f"{rule} takes no citations", source_line)
        if rule == "premise":
            if depth != 0:
                raise ProofParseError("premise inside a subproof", source_line)
            if seen_body:
                raise ProofParseError("premise after a non-premise line", source_line)
        else:
            seen_body = True

        if rule == "hyp":
            if depth == 0:
                raise ProofParseError("hyp outside any subproof", source_line)
            if depth > len(open_stack) + 1:
                raise ProofParseError("marker depth skips a level", source_line)
            close_down(depth - 1)
            for i in range(depth - 1):
                if markers[i] != _CHAR_BY_KIND[open_stack[i].kind]:
                    raise ProofParseError("marker kind mismatch", source_line)
            sub = Subproof(
                ident=len(subproofs),
                kind=_KIND_BY_CHAR[markers[depth - 1]],
                start=number,
                hyp=number,
                parent_chain=tuple(s.ident for s in open_stack),
            )
            subproofs.append(sub)
            open_stack.append(sub)
        else:
            if depth > len(open_stack):
                if depth == len(open_stack) + 1:
                    raise ProofParseError("subproof must start with hyp", source_line)
                raise ProofParseError("marker depth skips a level", source_line)
            close_down(depth)
            for i in range(depth):
                if markers[i] != _CHAR_BY_KIND[open_stack[i].kind]:
                    raise ProofParseError("marker kind mismatch", source_line)

        lines.append(
            ProofLine(
                number=number,
                depth=depth,
                formula=formula,
                rule=rule,
                citations=tuple(citations),
                chain=tuple(s.ident for s in open_stack),
                source_line=source_line,
            )
        )

    if not lines:
        raise ProofParseError("empty proof")
    close_down(0)
    return ProofDoc(tuple(lines), tuple(subproofs))


def accessible(doc: ProofDoc, cited: int, at: int) -> bool:
    """Is plain line ``cited`` usable from line ``at``?"""
    if not 1 <= cited < at <= len(doc.lines):
        return False
    chain_a = doc.line(cited).chain
    chain_x = doc.line(at).chain
    return chain_x[: len(chain_a)] == chain_a


def _innermost_round(doc: ProofDoc, chain: tuple[int, ...]) -> int | None:
    for ident in reversed(chain):
        if doc.subproofs[ident].kind == ROUND:
            return ident
    return None


def check(doc: ProofDoc) -> Verdict:
    violations: list[Violation] = []
    for line in doc.lines:
        if line.rule in ("premise", "hyp"):
            continue
        v = _check_line(doc, line)
        if v is not None:
            violations.append(v)
    return Verdict(not violations, tuple(violations))


def _check_line(doc: ProofDoc, line: ProofLine) -> Violation | None:
    x = line.number

    # Scope pass over every citation, in citation order.
    resolved: list[Formula | Subproof] = []
    for cit in line.citations:
        if cit.is_span:
            sub = doc.span(cit.start, cit.end)
            if (
                sub is None
                or x <= sub.end
                or doc.line(x).chain != sub.parent_chain
            ):
                return Violation(
                    x, CITATION_SCOPE, f"subproof {cit} is not citable from line {x}"
                )
            resolved.append(sub)
        else:
            if not accessible(doc, cit.start, x):
                return Violation(
                    x, CITATION_SCOPE, f"line {cit} is not accessible from line {x}"
                )
            resolved.append(doc.line(cit.start).formula)

    # Unsafe-import pass: only round subproofs restrict what crosses in.
    ring = _innermost_round(doc, line.chain)
    if ring is not None:
        for cit in line.citations:
            if cit.is_span:
                continue
            cited = doc.line(cit.start)
            if ring not in cited.chain and not is_safe(cited.formula):
                return Violation(
                    x,
                    UNSAFE_CITATION,
                    f"line {cit} brings an unsafe formula into a round subproof",
                )

    # Rule schema pass.
    return _check_schema(doc, line, resolved)


def _mismatch(line: ProofLine, why: str) -> Violation:
    return Violation(line.number, RULE_MISMATCH, why)


def _sub_formulas(doc: ProofDoc, sub: Subproof) -> tuple[Formula, Formula] | None:
    """(hypothesis, conclusion) of a subproof, None when the subproof
    never returns to its own depth for a conclusion.
    """
    last = doc.line(sub.end)
    if last.depth != sub.depth:
        return None
    return doc.line(sub.hyp).formula, last.formula


def _check_schema(doc: ProofDoc, line: ProofLine, resolved: list) -> Violation | None:
    rule = line.rule
    x = line.formula
    want_lines, want_spans = RULE_ARITY[rule]
    kinds = [isinstance(r, Subproof) for r in resolved]
    if kinds != [False] * want_lines + [True] * want_spans:
        return _mismatch(
            line,
            f"{rule} wants {want_lines} line citation(s) then "
            f"{want_spans} subproof citation(s)",
        )
    fs = resolved[:want_lines]
    subs: list[Subproof] = resolved[want_lines:]

    need_kind = SQUARE if rule == "eor" else ROUND
    for sub in subs:
        if sub.kind != need_kind:
            return Violation(
                line.number,
                WRONG_SUBPROOF_KIND,
                f"{rule} needs a {need_kind} subproof, {sub.start}-{sub.end} is {sub.kind}",
            )
    pairs = []
    for sub in subs:
        hc = _sub_formulas(doc, sub)
        if hc is None:
            return _mismatch(
                line, f"subproof {sub.start}-{sub.end} has no conclusion at its own depth"
            )
        pairs.append(hc)

    if rule == "icap":
        if isinstance(x, ExtAnd) and x.left == fs[0] and x.right == fs[1]:
            return None
        return _mismatch(line, "conclusion is not the /\\ of the cited lines")
    if rule == "ecap1":
        if isinstance(fs[0], ExtAnd) and x == fs[0].left:
            return None
        return _mismatch(line, "cited line is not a /\\ with this left part")
    if rule == "ecap2":
        if isinstance(fs[0], ExtAnd) and x == fs[0].right:
            return None
        return _mismatch(line, "cited line is not a /\\ with this right part")
    if rule == "icup1":
        if isinstance(x, ExtOr) and x.left == fs[0]:
            return None
        return _mismatch(line, "conclusion is not a \\/ with the cited line on the left")
    if rule == "icup2":
        if isinstance(x, ExtOr) and x.right == fs[0]:
            return None
        return _mismatch(line, "conclusion is not a \\/ with the cited line on the right")
    if rule == "ecup":
        d = fs[0]
        if not isinstance(d, ExtOr):
            return _mismatch(line, "cited line is not a \\/ disjunction")
        if not is_l_formula(x):
            return Violation(line.number, NOT_L_FORMULA, "ecup concludes extensional formulas only")
        (h1, c1), (h2, c2) = pairs
        if h1 == d.left and h2 == d.right and c1 == x and c2 == x:
            return None
        return _mismatch(line, "subproofs do not run from the disjuncts to the conclusion")
    if rule == "isup":
        h, c = pairs[0]
        if isinstance(x, ExtImp) and x.left == h and x.right == c:
            return None
        return _mismatch(line, "conclusion is not hypothesis => subproof conclusion")
    if rule == "esup":
        if isinstance(fs[0], ExtImp) and fs[1] == fs[0].left and x == fs[0].right:
            return None
        return _mismatch(line, "cited lines do not form a => detachment")
    if rule == "isim":
        h, c = pairs[0]
        if c == FALSUM and isinstance(x, ExtNeg) and x.operand == h:
            return None
        return _mismatch(line, "subproof must run from the negated formula to _|_")
    if rule == "esim1":
        if isinstance(fs[1], ExtNeg) and fs[1].operand == fs[0] and x == FALSUM:
            return None
        return _mismatch(line, "cited lines are not a formula and its ~ negation")
    if rule == "esim2":
        f = fs[0]
        if (
            isinstance(f, ExtNeg)
            and isinstance(f.operand, ExtNeg)
            and x == f.operand.operand
        ):
            return None
        return _mismatch(line, "cited line is not the double ~ of the conclusion")
    if rule == "iand":
        if isinstance(x, IntAnd) and x.left == fs[0] and x.right == fs[1]:
            return None
        return _mismatch(line, "conclusion is not the & of the cited lines")
    if rule == "eand1":
        if isinstance(fs[0], IntAnd) and x == fs[0].left:
            return None
        return _mismatch(line, "cited line is not a & with this left part")
    if rule == "eand2":
        if isinstance(fs[0], IntAnd) and x == fs[0].right:
            return None
        return _mismatch(line, "cited line is not a & with this right part")
    if rule == "ior1":
        if isinstance(x, IntOr) and x.left == fs[0]:
            return None
        return _mismatch(line, "conclusion is not a | with the cited line on the left")
    if rule == "ior2":
        if isinstance(x, IntOr) and x.right == fs[0]:
            return None
        return _mismatch(line, "conclusion is not a | with the cited line on the right")
    if rule == "eor":
        d = fs[0]
        if not isinstance(d, IntOr):
            return _mismatch(line, "cited line is not a | disjunction")
        (h1, c1), (h2, c2) = pairs
        if h1 == d.left and h2 == d.right and c1 == x and c2 == x:
            return None
        return _mismatch(line, "subproofs do not run from the disjuncts to the conclusion")
    if rule == "iimp":
        h, c = pairs[0]
        if isinstance(x, IntImp) and x.left == h and x.right == c:
            return None
        return _mismatch(line, "conclusion is not hypothesis -> subproof conclusion")
    if rule == "eimp":
        if isinstance(fs[0], IntImp) and fs[1] == fs[0].left and x == fs[0].right:
            return None
        return _mismatch(line, "cited lines do not form a -> detachment")
    if rule == "ineg":
        h, c = pairs[0]
        if not is_l_formula(h):
            return Violation(
                line.number, NOT_L_FORMULA, "ineg supposes extensional formulas only"
            )
        if c == FALSUM and isinstance(x, IntNeg) and x.operand == h:
            return None
        return _mismatch(line, "subproof must run from the negated formula to _|_")
    if rule == "eneg":
        if isinstance(fs[1], IntNeg) and fs[1].operand == fs[0] and x == FALSUM:
            return None
        return _mismatch(line, "cited lines are not a formula and its ! negation")
    if rule == "efq":
        if fs[0] == FALSUM:
            return None
        return _mismatch(line, "cited line is not _|_")
    if rule == "nn1":
        f = fs[0]
        if isinstance(f, IntNeg) and isinstance(f.operand, IntNeg) and x == f.operand.operand:
            return None
        return _mismatch(line, "cited line is not the double ! of the conclusion")
    if rule == "nn2":
        if isinstance(x, IntNeg) and isinstance(x.operand, IntNeg) and x.operand.operand == fs[0]:
            return None
        return _mismatch(line, "conclusion is not the double ! of the cited line")
    if rule == "nand1":
        f = fs[0]
        if isinstance(f, IntNeg) and isinstance(f.operand, IntAnd):
            want = IntOr(IntNeg(f.operand.left), IntNeg(f.operand.right))
            if x == want:
                return None
        return _mismatch(line, "lines are not a !(... & ...) and its | of negations")
    if rule == "nand2":
        if (
            isinstance(fs[0], IntOr)
            and isinstance(fs[0].left, IntNeg)
            and isinstance(fs[0].right, IntNeg)
            and x == IntNeg(IntAnd(fs[0].left.operand, fs[0].right.operand))
        ):
            return None
        return _mismatch(line, "lines are not a | of negations and its !(... & ...)")
    if rule == "nor1":
        f = fs[0]
        if isinstance(f, IntNeg) and isinstance(f.operand, IntOr):
            want = IntAnd(IntNeg(f.operand.left), IntNeg(f.operand.right))
            if x == want:
                return None
        return _mismatch(line, "lines are not a !(... | ...) and its & of negations")
    if rule == "nor2":
        if (
            isinstance(fs[0], IntAnd)
            and isinstance(fs[0].left, IntNeg)
            and isinstance(fs[0].right, IntNeg)
            and x == IntNeg(IntOr(fs[0].left.operand, fs[0].right.operand))
        ):
            return None
        return _mismatch(line, "lines are not a & of negations and its !(... | ...)")
    if rule == "nimp1":
        f = fs[0]
        if isinstance(f, IntNeg) and isinstance(f.operand, IntImp):
            want = diamond(IntAnd(f.operand.left, IntNeg(f.operand.right)))
            if x == want:
                return None
        return _mismatch(line, "lines are not a !(... -> ...) and its <> unfolding")
    if rule == "nimp2":
        inner = match_diamond(fs[0])
        if (
            inner is not None
            and isinstance(inner, IntAnd)
            and isinstance(inner.right, IntNeg)
            and x == IntNeg(IntImp(inner.left, inner.right.operand))
        ):
            return None
        return _mismatch(line, "lines are not a <> unfolding and its !(... -> ...)")
    if rule == "cem":
        if (
            isinstance(x, IntOr)
            and isinstance(x.left, IntImp)
            and x.left.right == FALSUM
            and x.right == diamond(x.left.left)
        ):
            return None
        return _mismatch(line, "conclusion is not of the shape (phi -> _|_) | <>phi")
    if rule == "diaplus":
        alphas = _diamond_chain(fs[0])
        if alphas is None:
            return Violation(
                line.number, MACRO_SHAPE, "cited line is not a & chain of <> over extensional formulas"
            )
        if x == diamond(plus_disj(alphas)):
            return None
        return Violation(
            line.number, MACRO_SHAPE, "conclusion is not <> of the (+) of the cited possibilities"
        )
    raise AssertionError(f"unhandled rule {rule}")


def _diamond_chain(phi: Formula) -> list[Formula] | None:
    """[a1, ..., an] when phi = <>a1 & ... & <>an (right chained,
    every ai extensional), None otherwise.
    """
    alphas: list[Formula] = []
    node = phi
    while isinstance(node, IntAnd):
        head = match_diamond(node.left)
        if head is None or not is_l_formula(head):
            return None
        alphas.append(head)
        node = node.right
    last = match_diamond(node)
    if last is None or not is_l_formula(last):
        return None
    alphas.append(last)
    return alphas


def verify_sound(
    doc: ProofDoc,
    variant: DeniabilityVariant | str = DeniabilityVariant.GAUKER,
    atom_bound: int | None = None,
) -> bool:
    """Do the premises entail the conclusion semantically?"""
    from .semantics import DEFAULT_ATOM_BOUND, entails

    if atom_bound is None:
        atom_bound = DEFAULT_ATOM_BOUND
    return entails(doc.premises(), doc.conclusion(), variant, atom_bound)
