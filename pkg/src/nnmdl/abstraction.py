"""Satisfiability for formulas whose concepts are modality-free.

Such a formula splits into a propositional skeleton over its concept
inclusions, concept assertions and role assertions, plus the boxes that
combine them.  Satisfiability then reduces to searching for a valuation of
the skeleton that is consistent on the description-logic side (checked by
handing the induced conjunction of atoms to the tableau, where no modal
rule can fire) and coherent on the neighbourhood side, where coherence is a
family of recursive satisfiability conditions on the boxed subformulas, one
per frame-condition letter.

Diamonds are unfolded to negated boxes during abstraction so that every
modal subformula is visible to the box bookkeeping.  The budget counts
tableau rule applications across all consistency calls of one top-level
decision and is shared by the recursion.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .logics import LogicSpec, canonicalize
from .syntax import (
    CBox,
    CDia,
    FAnd,
    FAssert,
    FBox,
    FCI,
    FDia,
    FNot,
    FOr,
    FRole,
    Formula,
    subconcepts,
)
from .tableau import BudgetExceeded as TableauBudget
from .tableau import solve

DEFAULT_BUDGET = 10**6

_ALC_SPEC = canonicalize("E")


class ModalisedConceptPresent(ValueError):
    """A concept under a modal operator puts the formula outside the fragment."""

    def __init__(self, subterm):
        super().__init__(f"modalised concept in atom: {subterm}")
        self.subterm = subterm


class BudgetExhausted(Exception):
    """The shared rule-application budget ran out mid-decision."""


@dataclass(frozen=True)
class PLetter:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class PNot:
    sub: "PFormula"

    def __str__(self) -> str:
        return f"~{self.sub}"


@dataclass(frozen=True)
class PAnd:
    left: "PFormula"
    right: "PFormula"

    def __str__(self) -> str:
        return f"({self.left} /\\ {self.right})"


@dataclass(frozen=True)
class POr:
    left: "PFormula"
    right: "PFormula"

    def __str__(self) -> str:
        return f"({self.left} \\/ {self.right})"


@dataclass(frozen=True)
class PBox:
    agent: int
    sub: "PFormula"

    def __str__(self) -> str:
        return f"[{self.agent}]{self.sub}"


PFormula = PLetter | PNot | PAnd | POr | PBox


class PropAbstraction:
    """Propositional skeleton of a formula plus the atom/letter bijection.

    Letters are named p1, p2, ... in order of first occurrence; structurally
    equal atoms share a letter.  ``to_formula`` inverts the abstraction,
    modulo the diamond unfolding performed on the way in.
    """

    def __init__(self, prop: PFormula, sigma: tuple):
        self.prop = prop
        self.sigma = sigma
        self.letter_of = {atom: PLetter(name) for name, atom in sigma}
        self.atom_of = {name: atom for name, atom in sigma}

    def to_formula(self, p: PFormula | None = None) -> Formula:
        p = self.prop if p is None else p
        if isinstance(p, PLetter):
            return self.atom_of[p.name]
        if isinstance(p, PNot):
            return FNot(self.to_formula(p.sub))
        if isinstance(p, PAnd):
            return FAnd(self.to_formula(p.left), self.to_formula(p.right))
        if isinstance(p, POr):
            return FOr(self.to_formula(p.left), self.to_formula(p.right))
        return FBox(p.agent, self.to_formula(p.sub))

    def __repr__(self) -> str:
        pairs = ", ".join(f"{n} -> {a}" for n, a in self.sigma)
        return f"PropAbstraction({self.prop} with {pairs})"


def _reject_modalised(concept) -> None:
    for c in subconcepts(concept):
        if isinstance(c, (CBox, CDia)):
            raise ModalisedConceptPresent(c)


def prop_abstract(f: Formula) -> PropAbstraction:
    """Abstract every inclusion, assertion and role atom into a letter."""
    letters: dict[Formula, PLetter] = {}
    sigma: list = []

    def atom(g: Formula) -> PLetter:
        got = letters.get(g)
        if got is not None:
            return got
        if isinstance(g, FCI):
            _reject_modalised(g.left)
            _reject_modalised(g.right)
        elif isinstance(g, FAssert):
            _reject_modalised(g.concept)
        p = PLetter(f"p{len(sigma) + 1}")
        letters[g] = p
        sigma.append((p.name, g))
        return p

    def walk(g: Formula) -> PFormula:
        if isinstance(g, (FCI, FAssert, FRole)):
            return atom(g)
        if isinstance(g, FNot):
            return PNot(walk(g.sub))
        if isinstance(g, FAnd):
            return PAnd(walk(g.left), walk(g.right))
        if isinstance(g, FOr):
            return POr(walk(g.left), walk(g.right))
        if isinstance(g, FBox):
            return PBox(g.agent, walk(g.sub))
        if isinstance(g, FDia):
            return PNot(PBox(g.agent, PNot(walk(g.sub))))
        raise TypeError(f"not a formula: {g!r}")

    return PropAbstraction(walk(f), tuple(sigma))


def prop_subformulas(p: PFormula) -> tuple:
    """Subformulas in preorder, then single negations of the non-negations."""
    seen: dict[PFormula, None] = {}

    def walk(q: PFormula) -> None:
        seen.setdefault(q)
        if isinstance(q, (PNot, PBox)):
            walk(q.sub)
        elif isinstance(q, (PAnd, POr)):
            walk(q.left)
            walk(q.right)

    walk(p)
    for q in list(seen):
        if not isinstance(q, PNot):
            seen.setdefault(PNot(q))
    return tuple(seen)


def _eval(p: PFormula, leaves: dict) -> int:
    if isinstance(p, (PLetter, PBox)):
        return leaves[p]
    if isinstance(p, PNot):
        return 1 - _eval(p.sub, leaves)
    if isinstance(p, PAnd):
        return _eval(p.left, leaves) & _eval(p.right, leaves)
    return _eval(p.left, leaves) | _eval(p.right, leaves)


def iter_valuations(p: PFormula):
    """All valuations of p's closure with value 1 on p, as dicts.

    Letters and boxes are assigned freely in first-occurrence order, truest
    first; the remaining values are forced.
    """
    sub = prop_subformulas(p)
    free = [q for q in sub if isinstance(q, (PLetter, PBox))]
    for bits in product((1, 0), repeat=len(free)):
        leaves = dict(zip(free, bits))
        if _eval(p, leaves) != 1:
            continue
        yield {q: _eval(q, leaves) for q in sub}


class _Session:
    """Shared memo tables and the rule-application countdown."""

    def __init__(self, budget: int):
        self.remaining = budget
        self.memo: dict = {}
        self.sigma_memo: dict = {}

    def charge(self, stats) -> None:
        self.remaining -= max(1, stats.applications)
        if self.remaining < 0:
            raise BudgetExhausted


def _sigma_consistent(nu: dict, sigma: PropAbstraction, session: _Session) -> bool:
    bits = []
    for name, atom in sigma.sigma:
        v = nu.get(PLetter(name))
        if v is not None:
            bits.append((name, atom, v))
    key = frozenset((name, v) for name, _, v in bits)
    got = session.sigma_memo.get(key)
    if got is not None:
        return got
    conj = None
    for _, atom, v in bits:
        lit = atom if v else FNot(atom)
        conj = lit if conj is None else FAnd(conj, lit)
    if conj is None:
        session.sigma_memo[key] = True
        return True
    verdict = solve(conj, _ALC_SPEC, budget=session.remaining)
    if isinstance(verdict, TableauBudget):
        session.remaining = -1
        raise BudgetExhausted
    session.charge(verdict.stats)
    session.sigma_memo[key] = bool(verdict)
    return bool(verdict)


def _boxes_by_agent(sub: tuple, nu: dict) -> list:
    """Per agent, the box contents with the box true and with it false."""
    groups: dict[int, tuple[list, list]] = {}
    for q in sub:
        if isinstance(q, PBox):
            trues, falses = groups.setdefault(q.agent, ([], []))
            (trues if nu[q] else falses).append(q.sub)
    return [(i, *groups[i]) for i in sorted(groups)]


def _conj(parts) -> PFormula:
    out = parts[0]
    for q in parts[1:]:
        out = PAnd(out, q)
    return out


def _disj(parts) -> PFormula:
    out = parts[0]
    for q in parts[1:]:
        out = POr(out, q)
    return out


def _kappa(spec: LogicSpec, sub: tuple) -> int:
    return len(sub) if spec.has("C") else 1


def _subsets(items: list, kappa: int):
    for k in range(1, min(kappa, len(items)) + 1):
        yield from combinations(items, k)


def _check(spec, sigma, nu, p, session) -> int:
    sub = prop_subformulas(p)
    kappa = _kappa(spec, sub)
    for _, trues, falses in _boxes_by_agent(sub, nu):
        for psis in _subsets(trues, kappa):
            for chi in falses:
                body = PAnd(_conj(list(psis)), PNot(chi))
                if not spec.has("M"):
                    body = POr(body, _disj([PAnd(PNot(q), chi) for q in psis]))
                if not _sat(spec, sigma, body, session):
                    return 0
    return 1


def _check_ntpq(spec, sigma, nu, p, session) -> int:
    sub = prop_subformulas(p)
    kappa = _kappa(spec, sub)
    groups = _boxes_by_agent(sub, nu)
    if spec.has("N"):
        for _, _, falses in groups:
            for chi in falses:
                if not _sat(spec, sigma, PNot(chi), session):
                    return 0
    if spec.has("T"):
        for _, trues, _ in groups:
            for psi in trues:
                if nu[psi] == 0:
                    return 0
    if spec.has("P"):
        for _, trues, _ in groups:
            for psis in _subsets(trues, kappa):
                if not _sat(spec, sigma, _conj(list(psis)), session):
                    return 0
    if spec.has("Q"):
        for _, trues, _ in groups:
            for psis in _subsets(trues, kappa):
                if not _sat(spec, sigma, _disj([PNot(q) for q in psis]), session):
                    return 0
    return 1


def _check_d(spec, sigma, nu, p, session) -> int:
    sub = prop_subformulas(p)
    kappa = _kappa(spec, sub)
    for _, trues, _ in _boxes_by_agent(sub, nu):
        pools = list(_subsets(trues, kappa))
        for a in range(len(pools)):
            for b in range(a, len(pools)):
                lhs, rhs = _conj(list(pools[a])), _conj(list(pools[b]))
                body = PAnd(lhs, rhs)
                if not spec.has("M"):
                    body = POr(body, PAnd(PNot(lhs), PNot(rhs)))
                if not _sat(spec, sigma, body, session):
                    return 0
    return 1


def _witness(spec, sigma, p, session):
    """First valuation passing every check, or None."""
    for nu in iter_valuations(p):
        if not _sigma_consistent(nu, sigma, session):
            continue
        if _check(spec, sigma, nu, p, session) != 1:
            continue
        if any(spec.has(x) for x in "NTPQ") and _check_ntpq(spec, sigma, nu, p, session) != 1:
            continue
        if spec.has("D") and _check_d(spec, sigma, nu, p, session) != 1:
            continue
        return nu
    return None


def _sat(spec, sigma, p, session) -> bool:
    key = (spec.name, p)
    got = session.memo.get(key)
    if got is None:
        got = _witness(spec, sigma, p, session) is not None
        session.memo[key] = got
    return got


def sigma_consistent(nu: dict, sigma: PropAbstraction, budget: int = DEFAULT_BUDGET) -> bool:
    """Is the conjunction of atoms induced by nu's letter values satisfiable?

    Modality-free, so the tableau decides it without modal rules; the frame
    letters play no part.  Raises BudgetExhausted.
    """
    return _sigma_consistent(nu, sigma, _Session(budget))


def check(spec, sigma: PropAbstraction, nu: dict, p: PFormula, budget: int = DEFAULT_BUDGET) -> int:
    """Box-content coherence: each true-box bundle stays separable from each
    false box, monotonely or two-sidedly by the M letter."""
    return _check(canonicalize(spec), sigma, nu, p, _Session(budget))


def check_ntpq(spec, sigma: PropAbstraction, nu: dict, p: PFormula, budget: int = DEFAULT_BUDGET) -> int:
    """The unit, reflexivity, no-empty-set and no-unit conditions on nu."""
    return _check_ntpq(canonicalize(spec), sigma, nu, p, _Session(budget))


def check_d(spec, sigma: PropAbstraction, nu: dict, p: PFormula, budget: int = DEFAULT_BUDGET) -> int:
    """The no-complement-pair condition on nu."""
    return _check_d(canonicalize(spec), sigma, nu, p, _Session(budget))


@dataclass(frozen=True)
class FragmentSat:
    valuation: dict
    abstraction: PropAbstraction

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class FragmentUnsat:
    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class FragmentBudgetExceeded:
    def __bool__(self) -> bool:
        return False


def sat_no_modal_concepts(f: Formula, spec, budget: int = DEFAULT_BUDGET):
    """Decide satisfiability of a modal-concept-free formula under spec.

    Enumerates skeleton valuations, keeps the consistent ones and accepts
    the first passing the letter conditions.  The gating mirrors the letter
    set: the unit/reflexivity/no-empty/no-unit pass runs only when one of
    N, T, P, Q is present, the complement-pair pass only when D is.
    """
    spec = canonicalize(spec)
    sigma = prop_abstract(f)
    session = _Session(budget)
    try:
        nu = _witness(spec, sigma, sigma.prop, session)
    except BudgetExhausted:
        return FragmentBudgetExceeded()
    if nu is None:
        return FragmentUnsat()
    return FragmentSat(nu, sigma)
