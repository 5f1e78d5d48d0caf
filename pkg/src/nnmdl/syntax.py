"""Abstract syntax and text grammar for the modal description logic.

Concepts and formulas are immutable trees.  The primitive concept formers are
negation, conjunction, existential role restriction and the indexed box; the
primitive formula formers are negation, conjunction and the indexed box over
subsumptions, concept assertions and role assertions.  Disjunction, the
universal restriction, the diamond, ``top`` and ``bot`` are provided as
constructors that build the primitive trees directly, except that disjunction,
universal restrictions and diamonds keep their own node types so that negation
normal form is representable.

``top`` and ``bot`` are fixed abbreviations over the reserved concept name
``A0``; user input may not mention ``A0`` itself.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

RESERVED_NAME = "A0"


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class CName:
    name: str

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class CNeg:
    sub: "Concept"

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class CAnd:
    left: "Concept"
    right: "Concept"

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class COr:
    left: "Concept"
    right: "Concept"

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class CExists:
    role: str
    sub: "Concept"

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class CForall:
    role: str
    sub: "Concept"

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class CBox:
    agent: int
    sub: "Concept"

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class CDia:
    agent: int
    sub: "Concept"

    def __str__(self) -> str:
        return pretty_print(self)


Concept = Union[CName, CNeg, CAnd, COr, CExists, CForall, CBox, CDia]


@dataclass(frozen=True)
class FCI:
    """Concept inclusion, written ``(C sub D)``."""

    left: Concept
    right: Concept

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class FAssert:
    concept: Concept
    ind: str

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class FRole:
    role: str
    a: str
    b: str

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class FNot:
    sub: "Formula"

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class FAnd:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class FOr:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class FBox:
    agent: int
    sub: "Formula"

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class FDia:
    agent: int
    sub: "Formula"

    def __str__(self) -> str:
        return pretty_print(self)


Formula = Union[FCI, FAssert, FRole, FNot, FAnd, FOr, FBox, FDia]

TOP: Concept = COr(CName(RESERVED_NAME), CNeg(CName(RESERVED_NAME)))
BOT: Concept = CAnd(CName(RESERVED_NAME), CNeg(CName(RESERVED_NAME)))

#: ``false`` as a formula: the unsatisfiable inclusion (top sub bot).
FALSE_F: Formula = FCI(TOP, BOT)
#: ``true`` as a formula: the valid inclusion (bot sub top).
TRUE_F: Formula = FCI(BOT, TOP)


class ParseError(ValueError):
    """Raised on malformed input text, with position information."""


# ---------------------------------------------------------------------------
# Tokenizer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<fand>/\\)
  | (?P<for>\\/)
  | (?P<int>\d+)
  | (?P<word>[A-Za-z][A-Za-z0-9_]*)
  | (?P<punct>[()\[\]<>~&|.,])
    """,
    re.VERBOSE,
)

_KEYWORDS = {"top", "bot", "some", "all", "sub"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Return (kind, value, offset) triples; comments and whitespace dropped."""
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r} at offset {pos}")
        pos = m.end()
        if m.lastgroup == "ws":
            continue
        value = m.group()
        if m.lastgroup == "int":
            out.append(("INT", value, m.start()))
        elif m.lastgroup == "word":
            if value in _KEYWORDS:
                out.append((value, value, m.start()))
            elif value[0].isupper():
                out.append(("CNAME", value, m.start()))
            else:
                out.append(("LNAME", value, m.start()))
        else:
            out.append((value, value, m.start()))
    out.append(("EOF", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, n_agents: int):
        self.toks = _tokenize(text)
        self.pos = 0
        self.n_agents = n_agents

    def peek(self, ahead: int = 0) -> tuple[str, str, int]:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def take(self, kind: str) -> str:
        k, v, off = self.toks[self.pos]
        if k != kind:
            raise ParseError(f"expected {kind} but found {v or 'end of input'!r} at offset {off}")
        self.pos += 1
        return v

    def agent_index(self) -> int:
        off = self.peek()[2]
        i = int(self.take("INT"))
        if not 1 <= i <= self.n_agents:
            raise ParseError(f"agent index {i} out of range 1..{self.n_agents} at offset {off}")
        return i

    def concept_name(self) -> str:
        off = self.peek()[2]
        name = self.take("CNAME")
        if name == RESERVED_NAME:
            raise ParseError(f"concept name {RESERVED_NAME} is reserved (offset {off})")
        return name

    def concept(self) -> Concept:
        k, v, off = self.peek()
        if k == "CNAME":
            return CName(self.concept_name())
        if k == "top":
            self.take("top")
            return TOP
        if k == "bot":
            self.take("bot")
            return BOT
        if k == "~":
            self.take("~")
            return CNeg(self.concept())
        if k == "some":
            self.take("some")
            role = self.take("LNAME")
            self.take(".")
            return CExists(role, self.concept())
        if k == "all":
            self.take("all")
            role = self.take("LNAME")
            self.take(".")
            return CForall(role, self.concept())
        if k == "[":
            self.take("[")
            i = self.agent_index()
            self.take("]")
            return CBox(i, self.concept())
        if k == "<":
            self.take("<")
            i = self.agent_index()
            self.take(">")
            return CDia(i, self.concept())
        if k == "(":
            self.take("(")
            left = self.concept()
            kk, vv, off2 = self.peek()
            if kk == "&":
                self.take("&")
                right = self.concept()
                self.take(")")
                return CAnd(left, right)
            if kk == "|":
                self.take("|")
                right = self.concept()
                self.take(")")
                return COr(left, right)
            raise ParseError(f"expected & or | but found {vv or 'end of input'!r} at offset {off2}")
        raise ParseError(f"expected a concept but found {v or 'end of input'!r} at offset {off}")

    def formula(self) -> Formula:
        k, v, _ = self.peek()
        # role assertion: lowercase name followed by (a, b)
        if k == "LNAME" and self.peek(1)[0] == "(":
            role = self.take("LNAME")
            self.take("(")
            a = self.take("LNAME")
            self.take(",")
            b = self.take("LNAME")
            self.take(")")
            return FRole(role, a, b)
        # concept assertion: a concept applied to (individual); tried first so
        # that prefix operators bind to the smallest expression, e.g.
        # "[1] some req.(Prod & InCatal) (o)" is an assertion of a boxed concept.
        save = self.pos
        try:
            c = self.concept()
            self.take("(")
            ind = self.take("LNAME")
            self.take(")")
            return FAssert(c, ind)
        except ParseError:
            self.pos = save
        if k == "~":
            self.take("~")
            return FNot(self._formula_after_prefix())
        if k == "[":
            self.take("[")
            i = self.agent_index()
            self.take("]")
            return FBox(i, self._formula_after_prefix())
        if k == "<":
            self.take("<")
            i = self.agent_index()
            self.take(">")
            return FDia(i, self._formula_after_prefix())
        if k == "(":
            self.take("(")
            save = self.pos
            try:
                left_c = self.concept()
                self.take("sub")
                right_c = self.concept()
                self.take(")")
                return FCI(left_c, right_c)
            except ParseError:
                self.pos = save
            left = self.formula()
            kk, vv, off = self.peek()
            if kk == "/\\":
                self.take("/\\")
                right = self.formula()
                self.take(")")
                return FAnd(left, right)
            if kk == "\\/":
                self.take("\\/")
                right = self.formula()
                self.take(")")
                return FOr(left, right)
            raise ParseError(f"expected /\\ or \\/ but found {vv or 'end of input'!r} at offset {off}")
        raise ParseError(f"expected a formula but found {v or 'end of input'!r} at offset {self.peek()[2]}")

    def _formula_after_prefix(self) -> Formula:
        # a parenthesized formula is allowed directly under a formula-level
        # prefix operator; without it a boxed assertion like [1](A(a)) would
        # be unwritable, since [1]A(a) asserts the boxed concept
        if self.peek()[0] == "(":
            save = self.pos
            try:
                self.take("(")
                g = self.formula()
                self.take(")")
                return g
            except ParseError:
                self.pos = save
        return self.formula()


def parse_formula(text: str, n_agents: int = 1) -> Formula:
    """Parse one formula from ``text``.

    ``#`` starts a line comment.  Agent indices must lie in ``1..n_agents``.
    Raises :class:`ParseError` on malformed input, out-of-range agent indices
    and any mention of the reserved concept name.
    """
    p = _Parser(text, n_agents)
    f = p.formula()
    k, v, off = p.peek()
    if k != "EOF":
        raise ParseError(f"trailing input {v!r} at offset {off}")
    return f


def parse_concept(text: str, n_agents: int = 1) -> Concept:
    p = _Parser(text, n_agents)
    c = p.concept()
    k, v, off = p.peek()
    if k != "EOF":
        raise ParseError(f"trailing input {v!r} at offset {off}")
    return c


# ---------------------------------------------------------------------------
# Printing


def _wrap_assertion(f: "Formula") -> str:
    # under a prefix operator a bare assertion must be parenthesized, or the
    # operator would be read as part of the asserted concept
    body = pretty_print(f)
    return f"({body})" if isinstance(f, FAssert) else body


def pretty_print(x: Concept | Formula) -> str:
    """Render ``x`` in the text grammar. ``parse_formula(pretty_print(f))``
    returns ``f`` again for every well-formed formula tree."""
    if x == TOP:
        return "top"
    if x == BOT:
        return "bot"
    if isinstance(x, CName):
        return x.name
    if isinstance(x, CNeg):
        return "~" + pretty_print(x.sub)
    if isinstance(x, CAnd):
        return f"({pretty_print(x.left)} & {pretty_print(x.right)})"
    if isinstance(x, COr):
        return f"({pretty_print(x.left)} | {pretty_print(x.right)})"
    if isinstance(x, CExists):
        return f"some {x.role}.{pretty_print(x.sub)}"
    if isinstance(x, CForall):
        return f"all {x.role}.{pretty_print(x.sub)}"
    if isinstance(x, CBox):
        return f"[{x.agent}]{pretty_print(x.sub)}"
    if isinstance(x, CDia):
        return f"<{x.agent}>{pretty_print(x.sub)}"
    if isinstance(x, FCI):
        return f"({pretty_print(x.left)} sub {pretty_print(x.right)})"
    if isinstance(x, FAssert):
        return f"{pretty_print(x.concept)}({x.ind})"
    if isinstance(x, FRole):
        return f"{x.role}({x.a},{x.b})"
    if isinstance(x, FNot):
        return "~" + _wrap_assertion(x.sub)
    if isinstance(x, FAnd):
        return f"({pretty_print(x.left)} /\\ {pretty_print(x.right)})"
    if isinstance(x, FOr):
        return f"({pretty_print(x.left)} \\/ {pretty_print(x.right)})"
    if isinstance(x, FBox):
        return f"[{x.agent}]{_wrap_assertion(x.sub)}"
    if isinstance(x, FDia):
        return f"<{x.agent}>{_wrap_assertion(x.sub)}"
    raise TypeError(f"not a concept or formula: {x!r}")


# ---------------------------------------------------------------------------
# Negation normal form


def _nnf_c(c: Concept) -> Concept:
    if isinstance(c, CName):
        return c
    if isinstance(c, CNeg):
        return _nnf_neg_c(c.sub)
    if isinstance(c, CAnd):
        return CAnd(_nnf_c(c.left), _nnf_c(c.right))
    if isinstance(c, COr):
        return COr(_nnf_c(c.left), _nnf_c(c.right))
    if isinstance(c, CExists):
        return CExists(c.role, _nnf_c(c.sub))
    if isinstance(c, CForall):
        return CForall(c.role, _nnf_c(c.sub))
    if isinstance(c, CBox):
        return CBox(c.agent, _nnf_c(c.sub))
    if isinstance(c, CDia):
        return CDia(c.agent, _nnf_c(c.sub))
    raise TypeError(f"not a concept: {c!r}")


def _nnf_neg_c(c: Concept) -> Concept:
    # keep the fixed abbreviations in canonical shape
    if c == TOP:
        return BOT
    if c == BOT:
        return TOP
    if isinstance(c, CName):
        return CNeg(c)
    if isinstance(c, CNeg):
        return _nnf_c(c.sub)
    if isinstance(c, CAnd):
        return COr(_nnf_neg_c(c.left), _nnf_neg_c(c.right))
    if isinstance(c, COr):
        return CAnd(_nnf_neg_c(c.left), _nnf_neg_c(c.right))
    if isinstance(c, CExists):
        return CForall(c.role, _nnf_neg_c(c.sub))
    if isinstance(c, CForall):
        return CExists(c.role, _nnf_neg_c(c.sub))
    if isinstance(c, CBox):
        return CDia(c.agent, _nnf_neg_c(c.sub))
    if isinstance(c, CDia):
        return CBox(c.agent, _nnf_neg_c(c.sub))
    raise TypeError(f"not a concept: {c!r}")


def to_nnf(f: Formula) -> Formula:
    """Negation normal form.

    Formula negation survives only in front of inclusions and role assertions,
    concept negation only in front of concept names, and every inclusion is
    rewritten to the form ``(top sub C)``.
    """
    if isinstance(f, FCI):
        if f.left == TOP:
            return FCI(TOP, _nnf_c(f.right))
        return FCI(TOP, COr(_nnf_neg_c(f.left), _nnf_c(f.right)))
    if isinstance(f, FAssert):
        return FAssert(_nnf_c(f.concept), f.ind)
    if isinstance(f, FRole):
        return f
    if isinstance(f, FNot):
        return _nnf_neg_f(f.sub)
    if isinstance(f, FAnd):
        return FAnd(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, FOr):
        return FOr(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, FBox):
        return FBox(f.agent, to_nnf(f.sub))
    if isinstance(f, FDia):
        return FDia(f.agent, to_nnf(f.sub))
    raise TypeError(f"not a formula: {f!r}")


def _nnf_neg_f(f: Formula) -> Formula:
    if isinstance(f, FCI):
        return FNot(to_nnf(f))
    if isinstance(f, FAssert):
        return FAssert(_nnf_neg_c(f.concept), f.ind)
    if isinstance(f, FRole):
        return FNot(f)
    if isinstance(f, FNot):
        return to_nnf(f.sub)
    if isinstance(f, FAnd):
        return FOr(_nnf_neg_f(f.left), _nnf_neg_f(f.right))
    if isinstance(f, FOr):
        return FAnd(_nnf_neg_f(f.left), _nnf_neg_f(f.right))
    if isinstance(f, FBox):
        return FDia(f.agent, _nnf_neg_f(f.sub))
    if isinstance(f, FDia):
        return FBox(f.agent, _nnf_neg_f(f.sub))
    raise TypeError(f"not a formula: {f!r}")


def dot_negate(x: Concept | Formula) -> Concept | Formula:
    """Negation followed by renormalization.  An involution on NNF input."""
    if isinstance(x, (CName, CNeg, CAnd, COr, CExists, CForall, CBox, CDia)):
        return _nnf_neg_c(x)
    return _nnf_neg_f(x)


def is_nnf(f: Formula) -> bool:
    def conc_ok(c: Concept) -> bool:
        if isinstance(c, CName):
            return True
        if isinstance(c, CNeg):
            return isinstance(c.sub, CName)
        if isinstance(c, (CAnd, COr)):
            return conc_ok(c.left) and conc_ok(c.right)
        if isinstance(c, (CExists, CForall, CBox, CDia)):
            return conc_ok(c.sub)
        return False

    if isinstance(f, FCI):
        return f.left == TOP and conc_ok(f.right)
    if isinstance(f, FAssert):
        return conc_ok(f.concept)
    if isinstance(f, FRole):
        return True
    if isinstance(f, FNot):
        return isinstance(f.sub, FRole) or (isinstance(f.sub, FCI) and is_nnf(f.sub))
    if isinstance(f, (FAnd, FOr)):
        return is_nnf(f.left) and is_nnf(f.right)
    if isinstance(f, (FBox, FDia)):
        return is_nnf(f.sub)
    return False


# ---------------------------------------------------------------------------
# Fragments and measures


def subformulas(f: Formula) -> Iterator[Formula]:
    """Preorder traversal.  Inclusions and assertions are formula leaves."""
    yield f
    if isinstance(f, FNot):
        yield from subformulas(f.sub)
    elif isinstance(f, (FAnd, FOr)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, (FBox, FDia)):
        yield from subformulas(f.sub)


def subconcepts(c: Concept) -> Iterator[Concept]:
    yield c
    if isinstance(c, CNeg):
        yield from subconcepts(c.sub)
    elif isinstance(c, (CAnd, COr)):
        yield from subconcepts(c.left)
        yield from subconcepts(c.right)
    elif isinstance(c, (CExists, CForall, CBox, CDia)):
        yield from subconcepts(c.sub)


def individuals(f: Formula) -> tuple[str, ...]:
    """Individual names in order of first occurrence."""
    seen: dict[str, None] = {}
    for g in subformulas(f):
        if isinstance(g, FAssert):
            seen.setdefault(g.ind)
        elif isinstance(g, FRole):
            seen.setdefault(g.a)
            seen.setdefault(g.b)
    return tuple(seen)


def role_names(f: Formula) -> frozenset[str]:
    out = set()
    for g in subformulas(f):
        if isinstance(g, FRole):
            out.add(g.role)
        elif isinstance(g, (FCI, FAssert)):
            cs = [g.concept] if isinstance(g, FAssert) else [g.left, g.right]
            for c0 in cs:
                for c in subconcepts(c0):
                    if isinstance(c, (CExists, CForall)):
                        out.add(c.role)
    return frozenset(out)


def agent_indices(x: Concept | Formula) -> frozenset[int]:
    out = set()
    stack: list[Concept | Formula] = [x]
    while stack:
        n = stack.pop()
        if isinstance(n, (CBox, CDia, FBox, FDia)):
            out.add(n.agent)
            stack.append(n.sub)
        elif isinstance(n, (CNeg, FNot)):
            stack.append(n.sub)
        elif isinstance(n, (CAnd, COr, FAnd, FOr, FCI)):
            stack.append(n.left)
            stack.append(n.right)
        elif isinstance(n, (CExists, CForall)):
            stack.append(n.sub)
        elif isinstance(n, FAssert):
            stack.append(n.concept)
    return frozenset(out)


@dataclass(frozen=True)
class Fragment:
    """The closure governing tableau termination and rule premises.

    ``concepts`` is closed under dot negation and contains ``top``;
    ``formulas`` is closed under dot negation.  ``individuals`` keeps first
    occurrence order, which fixes the term order used by the tableau.
    """

    concepts: frozenset
    formulas: frozenset
    roles: frozenset
    individuals: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.concepts) + len(self.formulas) + len(self.roles) + len(self.individuals)


def fragment(f: Formula) -> Fragment:
    """Fragment of an NNF formula."""
    fors = list(dict.fromkeys(subformulas(f)))
    cons: dict[Concept, None] = {}
    for g in fors:
        if isinstance(g, FCI):
            pools = [g.left, g.right]
        elif isinstance(g, FAssert):
            pools = [g.concept]
        else:
            continue
        for c0 in pools:
            for c in subconcepts(c0):
                cons.setdefault(c)
    con_closed = set(cons)
    for c in cons:
        con_closed.add(dot_negate(c))
    con_closed.add(TOP)
    for_closed = set(fors)
    for g in fors:
        for_closed.add(dot_negate(g))
    return Fragment(
        concepts=frozenset(con_closed),
        formulas=frozenset(for_closed),
        roles=role_names(f),
        individuals=individuals(f),
    )


def weight(x: Concept | Formula) -> int:
    """Rule-priority weight; invariant under dot negation."""
    if isinstance(x, CName):
        return 0
    if isinstance(x, CNeg):
        return weight(x.sub)
    if isinstance(x, (CAnd, COr)):
        return weight(x.left) + weight(x.right) + 1
    if isinstance(x, (CExists, CForall, CBox, CDia)):
        return weight(x.sub) + 1
    if isinstance(x, (FCI, FRole)):
        return 0
    if isinstance(x, FAssert):
        return 0
    if isinstance(x, FNot):
        if isinstance(x.sub, (FCI, FRole)):
            return 0
        return weight(x.sub)
    if isinstance(x, (FAnd, FOr)):
        return weight(x.left) + weight(x.right) + 1
    if isinstance(x, (FBox, FDia)):
        return weight(x.sub) + 1
    raise TypeError(f"not a concept or formula: {x!r}")


def ast_size(x: Concept | Formula) -> int:
    """Node count, with the top and bot abbreviations counted as one node."""
    if x == TOP or x == BOT:
        return 1
    if isinstance(x, CName):
        return 1
    if isinstance(x, (CNeg, FNot)):
        return 1 + ast_size(x.sub)
    if isinstance(x, (CAnd, COr, FAnd, FOr)):
        return 1 + ast_size(x.left) + ast_size(x.right)
    if isinstance(x, (CExists, CForall, CBox, CDia, FBox, FDia)):
        return 1 + ast_size(x.sub)
    if isinstance(x, FCI):
        return 1 + ast_size(x.left) + ast_size(x.right)
    if isinstance(x, FAssert):
        return 1 + ast_size(x.concept)
    if isinstance(x, FRole):
        return 1
    raise TypeError(f"not a concept or formula: {x!r}")


def modal_depth(x: Concept | Formula) -> int:
    if isinstance(x, (CBox, CDia, FBox, FDia)):
        return 1 + modal_depth(x.sub)
    if isinstance(x, (CNeg, FNot, CExists, CForall)):
        return modal_depth(x.sub)
    if isinstance(x, (CAnd, COr, FAnd, FOr, FCI)):
        return max(modal_depth(x.left), modal_depth(x.right))
    if isinstance(x, FAssert):
        return modal_depth(x.concept)
    return 0
