"""Labelled tableau calculus and depth-first solver.

A completion set is a set of labelled constraints.  Labels are integers
naming worlds; constraints at a label are either formulas, concept
memberships of a term, or (possibly negated) role links between terms.
Terms are the input formula's individuals (ordered by first occurrence)
followed by variables (ordered by index); every individual precedes every
variable.  Variable freshness is judged per label, so an index may recur at
different labels.

Rules split into two priority groups.  The non-generating group (boolean
decompositions, the universal-role rule, the inclusion rule and the T-rule)
is exhausted before any generating rule (the existential-role rule, the
negated-inclusion rule and the modal rules) fires.  Modal rules create one
fresh label per admissible premise combination; a combination is dead as
soon as any existing label witnesses one of its expansions.  Under an
M-logic only the conjunctive expansion of the box/diamond and box/box rules
exists, so only conjunctive witnesses count there.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .logics import LogicSpec, validate
from .syntax import (
    Concept,
    Formula,
    CBox,
    CDia,
    CAnd,
    CExists,
    CForall,
    CName,
    CNeg,
    COr,
    FAnd,
    FAssert,
    FBox,
    FCI,
    FDia,
    FNot,
    FOr,
    FRole,
    TOP,
    dot_negate,
    individuals,
    is_nnf,
    pretty_print,
    to_nnf,
)

DEFAULT_BUDGET = 10**6


# ---------------------------------------------------------------------------
# Terms and constraints


@dataclass(frozen=True)
class Ind:
    name: str
    index: int

    @property
    def key(self):
        return (0, self.index)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Var:
    index: int

    @property
    def key(self):
        return (1, self.index)

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class FC:
    """A formula holding at the label's world."""

    formula: Formula

    def __str__(self) -> str:
        return pretty_print(self.formula)


@dataclass(frozen=True)
class CC:
    """A term falling under a concept at the label's world."""

    concept: Concept
    term: "Ind | Var"

    def __str__(self) -> str:
        return f"{pretty_print(self.concept)}({self.term})"


@dataclass(frozen=True)
class RC:
    role: str
    s: "Ind | Var"
    t: "Ind | Var"

    def __str__(self) -> str:
        return f"{self.role}({self.s},{self.t})"


@dataclass(frozen=True)
class NRC:
    role: str
    s: "Ind | Var"
    t: "Ind | Var"

    def __str__(self) -> str:
        return f"~{self.role}({self.s},{self.t})"


@dataclass(frozen=True)
class TraceStep:
    rule: str
    label: int
    branch: int
    branches: int
    premises: tuple  # (label, payload) keys
    added: tuple  # (label, payload) actually inserted


# ---------------------------------------------------------------------------
# Completion sets


class CompletionSet:
    """Immutable; rule application returns a fresh set."""

    __slots__ = ("entries", "keys", "steps", "next_label", "ind_order", "_views")

    def __init__(self, entries, keys, steps, next_label, ind_order):
        self.entries = entries
        self.keys = keys
        self.steps = steps
        self.next_label = next_label
        self.ind_order = ind_order
        self._views = None

    def _extend(self, new_constraints, step: TraceStep, next_label=None) -> "CompletionSet":
        fresh = [c for c in new_constraints if c not in self.keys]
        step = TraceStep(step.rule, step.label, step.branch, step.branches, step.premises, tuple(fresh))
        return CompletionSet(
            self.entries + tuple(fresh),
            self.keys | set(fresh),
            self.steps + (step,),
            self.next_label if next_label is None else next_label,
            self.ind_order,
        )

    @property
    def labels(self) -> tuple:
        return self.views.labels

    @property
    def views(self) -> "_Views":
        if self._views is None:
            self._views = _Views(self)
        return self._views

    def __contains__(self, constraint) -> bool:
        return constraint in self.keys

    def __len__(self) -> int:
        return len(self.entries)

    def pretty(self) -> str:
        return "\n".join(f"{n} : {p}" for n, p in self.entries)


class _LabelView:
    __slots__ = ("formulas", "concepts", "by_term", "roles", "negroles", "terms", "boxes", "dias", "cis", "ncis")

    def __init__(self):
        self.formulas = {}  # Formula -> insertion index (FC payloads)
        self.concepts = {}  # (Concept, term) -> index
        self.by_term = {}  # term -> set of concepts
        self.roles = {}  # (role, s, t) -> index
        self.negroles = {}  # (role, s, t) -> index
        self.terms = {}  # term -> first index (occurrence via CC/RC/NRC)
        self.boxes = {}  # agent -> list of (index, gamma)
        self.dias = {}  # agent -> list of (index, gamma)
        self.cis = []  # (index, Concept) for (top sub C)
        self.ncis = []  # (index, Concept) for ~(top sub C)


class _Views:
    def __init__(self, T: CompletionSet):
        self.index = {}
        self.labels = []
        self.by_label = {}
        for idx, (n, p) in enumerate(T.entries):
            self.index[(n, p)] = idx
            lv = self.by_label.get(n)
            if lv is None:
                lv = self.by_label[n] = _LabelView()
                self.labels.append(n)
            if isinstance(p, FC):
                lv.formulas[p.formula] = idx
                f = p.formula
                if isinstance(f, FBox):
                    lv.boxes.setdefault(f.agent, []).append((idx, ("f", f.sub)))
                elif isinstance(f, FDia):
                    lv.dias.setdefault(f.agent, []).append((idx, ("f", f.sub)))
                elif isinstance(f, FCI):
                    lv.cis.append((idx, f.right))
                elif isinstance(f, FNot) and isinstance(f.sub, FCI):
                    lv.ncis.append((idx, f.sub.right))
            elif isinstance(p, CC):
                lv.concepts[(p.concept, p.term)] = idx
                lv.by_term.setdefault(p.term, set()).add(p.concept)
                lv.terms.setdefault(p.term, idx)
                c = p.concept
                if isinstance(c, CBox):
                    lv.boxes.setdefault(c.agent, []).append((idx, ("c", c.sub, p.term)))
                elif isinstance(c, CDia):
                    lv.dias.setdefault(c.agent, []).append((idx, ("c", c.sub, p.term)))
            elif isinstance(p, RC):
                lv.roles[(p.role, p.s, p.t)] = idx
                lv.terms.setdefault(p.s, idx)
                lv.terms.setdefault(p.t, idx)
            elif isinstance(p, NRC):
                lv.negroles[(p.role, p.s, p.t)] = idx
                lv.terms.setdefault(p.s, idx)
                lv.terms.setdefault(p.t, idx)
        self.agents = sorted({i for lv in self.by_label.values() for i in (*lv.boxes, *lv.dias)})


# ---------------------------------------------------------------------------
# Payload conversion and helpers


def payload_of(f: Formula, ind_map: dict) -> "FC | CC | RC | NRC":
    """Formulas become constraints; assertions and role literals turn into
    term-level constraints so that every rule sees one representation."""
    if isinstance(f, FAssert):
        return CC(f.concept, ind_map[f.ind])
    if isinstance(f, FRole):
        return RC(f.role, ind_map[f.a], ind_map[f.b])
    if isinstance(f, FNot) and isinstance(f.sub, FRole):
        g = f.sub
        return NRC(g.role, ind_map[g.a], ind_map[g.b])
    return FC(f)


def gamma_conclusion(gamma: tuple, ind_map: dict) -> "FC | CC | RC | NRC":
    if gamma[0] == "f":
        return payload_of(gamma[1], ind_map)
    return CC(gamma[1], gamma[2])


def gamma_negated(gamma: tuple, ind_map: dict) -> "FC | CC | RC | NRC":
    if gamma[0] == "f":
        return payload_of(dot_negate(gamma[1]), ind_map)
    return CC(dot_negate(gamma[1]), gamma[2])


def initialize(f: Formula) -> CompletionSet:
    """Completion set {0 : f}.  Rejects formulas not in negation normal form."""
    if not is_nnf(f):
        raise ValueError("initialize requires a formula in negation normal form")
    ind_order = individuals(f)
    ind_map = {name: Ind(name, i) for i, name in enumerate(ind_order)}
    p = payload_of(f, ind_map)
    step = TraceStep("init", 0, 0, 1, (), ((0, p),))
    return CompletionSet(((0, p),), frozenset({(0, p)}), (step,), 1, ind_order)


def ind_map_of(T: CompletionSet) -> dict:
    return {name: Ind(name, i) for i, name in enumerate(T.ind_order)}


def has_clash(T: CompletionSet) -> bool:
    return clash_info(T) is not None


def clash_info(T: CompletionSet):
    """The first clash in insertion order, or None."""
    best = None

    def consider(i, j, n, a, b):
        nonlocal best
        key = (max(i, j), min(i, j))
        if best is None or key < best[0]:
            best = (key, (n, a, b))

    for n, lv in T.views.by_label.items():
        for idx, c in lv.cis:
            for jdx, d in lv.ncis:
                if c == d:
                    consider(idx, jdx, n, FC(FCI(TOP, c)), FC(FNot(FCI(TOP, d))))
        for (c, x), idx in lv.concepts.items():
            if isinstance(c, CName):
                jdx = lv.concepts.get((CNeg(c), x))
                if jdx is not None:
                    consider(idx, jdx, n, CC(c, x), CC(CNeg(c), x))
        for key, idx in lv.roles.items():
            jdx = lv.negroles.get(key)
            if jdx is not None:
                consider(idx, jdx, n, RC(*key), NRC(*key))
    return best[1] if best else None


def blocker(T: CompletionSet, label: int, x) -> "Var | None":
    """Least variable blocking x at the label, or None."""
    if not isinstance(x, Var):
        return None
    lv = T.views.by_label.get(label)
    if lv is None:
        return None
    mine = lv.by_term.get(x, set())
    best = None
    for v in lv.terms:
        if isinstance(v, Var) and v.key < x.key and mine <= lv.by_term.get(v, set()):
            if best is None or v.key < best.key:
                best = v
    return best


def is_blocked(T: CompletionSet, label: int, x) -> bool:
    return blocker(T, label, x) is not None


def fresh_var(T: CompletionSet, label: int) -> Var:
    lv = T.views.by_label.get(label)
    used = {t.index for t in lv.terms if isinstance(t, Var)} if lv else set()
    i = 0
    while i in used:
        i += 1
    return Var(i)


def fresh_label(T: CompletionSet) -> int:
    return T.next_label


# ---------------------------------------------------------------------------
# Rule instances


@dataclass(frozen=True)
class RuleInstance:
    rule: str
    label: int
    premises: tuple  # (label, payload) keys
    branches: int
    data: tuple = ()


NON_GENERATING = ("R_and", "R_or", "R_cand", "R_cor", "R_forall", "R_ci", "R_lt")
GENERATING = ("R_exists", "R_nci", "R_mod", "R_modn", "R_modp", "R_modq", "R_modd")


def _witnessed(T, payloads) -> bool:
    """Some existing label carries all the given payloads."""
    views = T.views
    for o in views.labels:
        lv = views.by_label[o]
        if all(_present(lv, p) for p in payloads):
            return True
    return False


def _present(lv: _LabelView, p) -> bool:
    if isinstance(p, FC):
        return p.formula in lv.formulas
    if isinstance(p, CC):
        return (p.concept, p.term) in lv.concepts
    if isinstance(p, RC):
        return (p.role, p.s, p.t) in lv.roles
    return (p.role, p.s, p.t) in lv.negroles


def _box_subsets(boxes, with_c: bool):
    """Premise subsets in canonical order: singletons in premise order, then,
    with C in the spec, larger subsets by size then lexicographic index."""
    if not with_c:
        for b in boxes:
            yield (b,)
        return
    for k in range(1, len(boxes) + 1):
        yield from combinations(boxes, k)


def iter_instances(T: CompletionSet, spec: LogicSpec):
    """All applicable rule instances, in canonical priority order."""
    yield from _iter_group(T, spec, NON_GENERATING)
    yield from _iter_group(T, spec, GENERATING)


def _iter_group(T: CompletionSet, spec: LogicSpec, group):
    views = T.views
    ind_map = ind_map_of(T)
    letters = spec.letters
    with_c = "C" in letters
    with_m = "M" in letters
    for rule in group:
        if rule == "R_lt" and "T" not in letters:
            continue
        if rule == "R_modn" and "N" not in letters:
            continue
        if rule == "R_modp" and "P" not in letters:
            continue
        if rule == "R_modq" and "Q" not in letters:
            continue
        if rule == "R_modd" and "D" not in letters:
            continue
        candidates = []
        for n in views.labels:
            lv = views.by_label[n]
            if rule == "R_and":
                for f, idx in lv.formulas.items():
                    if isinstance(f, FAnd):
                        ps = [payload_of(f.left, ind_map), payload_of(f.right, ind_map)]
                        if not all(_present(lv, p) for p in ps):
                            candidates.append(((idx,), RuleInstance(rule, n, ((n, FC(f)),), 1)))
            elif rule == "R_or":
                for f, idx in lv.formulas.items():
                    if isinstance(f, FOr):
                        ps = [payload_of(f.left, ind_map), payload_of(f.right, ind_map)]
                        if not any(_present(lv, p) for p in ps):
                            candidates.append(((idx,), RuleInstance(rule, n, ((n, FC(f)),), 2)))
            elif rule == "R_cand":
                for (c, x), idx in lv.concepts.items():
                    if isinstance(c, CAnd):
                        if not ((c.left, x) in lv.concepts and (c.right, x) in lv.concepts):
                            candidates.append(((idx,), RuleInstance(rule, n, ((n, CC(c, x)),), 1)))
            elif rule == "R_cor":
                for (c, x), idx in lv.concepts.items():
                    if isinstance(c, COr):
                        if (c.left, x) not in lv.concepts and (c.right, x) not in lv.concepts:
                            candidates.append(((idx,), RuleInstance(rule, n, ((n, CC(c, x)),), 2)))
            elif rule == "R_forall":
                for (c, x), idx in lv.concepts.items():
                    if isinstance(c, CForall):
                        for (role, s, t), jdx in lv.roles.items():
                            if role == c.role and s == x and (c.sub, t) not in lv.concepts:
                                candidates.append(
                                    ((idx, jdx), RuleInstance(rule, n, ((n, CC(c, x)), (n, RC(role, s, t))), 1))
                                )
            elif rule == "R_ci":
                for idx, c in lv.cis:
                    if lv.terms:
                        for x in sorted(lv.terms, key=lambda t: t.key):
                            if (c, x) not in lv.concepts:
                                candidates.append(
                                    ((idx, *x.key), RuleInstance(rule, n, ((n, FC(FCI(TOP, c))),), 1, ("old", x)))
                                )
                    else:
                        x = fresh_var(T, n)
                        candidates.append(
                            ((idx,), RuleInstance(rule, n, ((n, FC(FCI(TOP, c))),), 1, ("fresh", x)))
                        )
            elif rule == "R_lt":
                for i in sorted(lv.boxes):
                    for idx, gamma in lv.boxes[i]:
                        concl = gamma_conclusion(gamma, ind_map)
                        if not _present(lv, concl):
                            candidates.append(((idx,), RuleInstance(rule, n, (_box_key(n, i, gamma),), 1)))
            elif rule == "R_exists":
                for (c, x), idx in lv.concepts.items():
                    if isinstance(c, CExists):
                        if is_blocked(T, n, x):
                            continue
                        if any(
                            role == c.role and s == x and (c.sub, t) in lv.concepts
                            for (role, s, t) in lv.roles
                        ):
                            continue
                        candidates.append(((idx,), RuleInstance(rule, n, ((n, CC(c, x)),), 1, (fresh_var(T, n),))))
            elif rule == "R_nci":
                for idx, c in lv.ncis:
                    nc = dot_negate(c)
                    if any((nc, x) in lv.concepts for x in lv.terms):
                        continue
                    candidates.append(
                        ((idx,), RuleInstance(rule, n, ((n, FC(FNot(FCI(TOP, c)))),), 1, (fresh_var(T, n),)))
                    )
            elif rule == "R_mod":
                for i in sorted(set(lv.boxes) & set(lv.dias)):
                    boxes = lv.boxes[i]
                    for didx, delta in lv.dias[i]:
                        for subset in _box_subsets(boxes, with_c):
                            gammas = tuple(g for _, g in subset)
                            concl = [gamma_conclusion(g, ind_map) for g in gammas]
                            concl.append(gamma_conclusion(delta, ind_map))
                            if _witnessed(T, concl):
                                continue
                            if not with_m and any(
                                _witnessed(T, [gamma_negated(g, ind_map), gamma_negated(delta, ind_map)])
                                for g in gammas
                            ):
                                continue
                            k = len(gammas)
                            order = (didx, k, *[j for j, _ in subset])
                            prem = (*[_box_key(n, i, g) for g in gammas], _dia_key(n, i, delta))
                            candidates.append(
                                (order, RuleInstance(rule, n, prem, 1 if with_m else 1 + k, (i, gammas, delta)))
                            )
            elif rule == "R_modn":
                for i in sorted(lv.dias):
                    for idx, delta in lv.dias[i]:
                        if _witnessed(T, [gamma_conclusion(delta, ind_map)]):
                            continue
                        candidates.append(((idx,), RuleInstance(rule, n, (_dia_key(n, i, delta),), 1, (i, delta))))
            elif rule == "R_modp":
                for i in sorted(lv.boxes):
                    for subset in _box_subsets(lv.boxes[i], with_c):
                        gammas = tuple(g for _, g in subset)
                        if _witnessed(T, [gamma_conclusion(g, ind_map) for g in gammas]):
                            continue
                        order = (len(gammas), *[j for j, _ in subset])
                        prem = tuple(_box_key(n, i, g) for g in gammas)
                        candidates.append((order, RuleInstance(rule, n, prem, 1, (i, gammas))))
            elif rule == "R_modq":
                for i in sorted(lv.boxes):
                    for subset in _box_subsets(lv.boxes[i], with_c):
                        gammas = tuple(g for _, g in subset)
                        if any(_witnessed(T, [gamma_negated(g, ind_map)]) for g in gammas):
                            continue
                        order = (len(gammas), *[j for j, _ in subset])
                        prem = tuple(_box_key(n, i, g) for g in gammas)
                        candidates.append((order, RuleInstance(rule, n, prem, len(gammas), (i, gammas))))
            elif rule == "R_modd":
                for i in sorted(lv.boxes):
                    subsets = list(_box_subsets(lv.boxes[i], with_c))
                    for a in range(len(subsets)):
                        for b in range(a, len(subsets)):
                            gammas = tuple(g for _, g in subsets[a])
                            deltas = tuple(g for _, g in subsets[b])
                            concl = [gamma_conclusion(g, ind_map) for g in gammas + deltas]
                            if _witnessed(T, concl):
                                continue
                            if not with_m and any(
                                _witnessed(T, [gamma_negated(g, ind_map), gamma_negated(d, ind_map)])
                                for g in gammas
                                for d in deltas
                            ):
                                continue
                            k, h = len(gammas), len(deltas)
                            order = (
                                k,
                                *[j for j, _ in subsets[a]],
                                h,
                                *[j for j, _ in subsets[b]],
                            )
                            prem = tuple(dict.fromkeys(
                                [*[_box_key(n, i, g) for g in gammas], *[_box_key(n, i, d) for d in deltas]]
                            ))
                            candidates.append(
                                (
                                    order,
                                    RuleInstance(rule, n, prem, 1 if with_m else 1 + k * h, (i, gammas, deltas)),
                                )
                            )
        candidates.sort(key=lambda pair: pair[0])
        for _, inst in candidates:
            yield inst


def _box_key(n: int, agent: int, gamma: tuple):
    if gamma[0] == "f":
        return (n, FC(FBox(agent, gamma[1])))
    return (n, CC(CBox(agent, gamma[1]), gamma[2]))


def _dia_key(n: int, agent: int, gamma: tuple):
    if gamma[0] == "f":
        return (n, FC(FDia(agent, gamma[1])))
    return (n, CC(CDia(agent, gamma[1]), gamma[2]))


def applicable_rules(T: CompletionSet, spec: "LogicSpec | str") -> list:
    return list(iter_instances(T, validate(spec)))


def is_complete(T: CompletionSet, spec: "LogicSpec | str") -> bool:
    return next(iter_instances(T, validate(spec)), None) is None


# ---------------------------------------------------------------------------
# Rule application


def apply_rule(T: CompletionSet, inst: RuleInstance, branch: int = 0) -> CompletionSet:
    """Apply one instance along the chosen branch, returning the new set.

    The caller is responsible for picking an applicable instance (solve and
    applicable_rules do); branch indices are 0-based.
    """
    if not 0 <= branch < inst.branches:
        raise ValueError(f"branch {branch} out of range for {inst.rule} with {inst.branches} branches")
    ind_map = ind_map_of(T)
    n = inst.label
    rule = inst.rule
    step = TraceStep(rule, n, branch, inst.branches, inst.premises, ())

    def formula_premise(idx: int = 0) -> Formula:
        payload = inst.premises[idx][1]
        return payload.formula

    if rule == "R_and":
        f = formula_premise()
        return T._extend([(n, payload_of(f.left, ind_map)), (n, payload_of(f.right, ind_map))], step)
    if rule == "R_or":
        f = formula_premise()
        pick = f.left if branch == 0 else f.right
        return T._extend([(n, payload_of(pick, ind_map))], step)
    if rule == "R_cand":
        p = inst.premises[0][1]
        return T._extend([(n, CC(p.concept.left, p.term)), (n, CC(p.concept.right, p.term))], step)
    if rule == "R_cor":
        p = inst.premises[0][1]
        pick = p.concept.left if branch == 0 else p.concept.right
        return T._extend([(n, CC(pick, p.term))], step)
    if rule == "R_forall":
        p = inst.premises[0][1]
        r = inst.premises[1][1]
        return T._extend([(n, CC(p.concept.sub, r.t))], step)
    if rule == "R_ci":
        c = formula_premise().right
        x = inst.data[1]
        return T._extend([(n, CC(c, x))], step)
    if rule == "R_lt":
        p = inst.premises[0][1]
        if isinstance(p, FC):
            return T._extend([(n, payload_of(p.formula.sub, ind_map))], step)
        return T._extend([(n, CC(p.concept.sub, p.term))], step)
    if rule == "R_exists":
        p = inst.premises[0][1]
        v = inst.data[0]
        return T._extend([(n, RC(p.concept.role, p.term, v)), (n, CC(p.concept.sub, v))], step)
    if rule == "R_nci":
        c = formula_premise().sub.right
        v = inst.data[0]
        return T._extend([(n, CC(dot_negate(c), v))], step)
    if rule == "R_mod":
        _i, gammas, delta = inst.data
        m = fresh_label(T)
        if branch == 0:
            adds = [(m, gamma_conclusion(g, ind_map)) for g in gammas]
            adds.append((m, gamma_conclusion(delta, ind_map)))
        else:
            g = gammas[branch - 1]
            adds = [(m, gamma_negated(g, ind_map)), (m, gamma_negated(delta, ind_map))]
        return T._extend(adds, step, next_label=m + 1)
    if rule == "R_modn":
        _i, delta = inst.data
        m = fresh_label(T)
        return T._extend([(m, gamma_conclusion(delta, ind_map))], step, next_label=m + 1)
    if rule == "R_modp":
        _i, gammas = inst.data
        m = fresh_label(T)
        return T._extend([(m, gamma_conclusion(g, ind_map)) for g in gammas], step, next_label=m + 1)
    if rule == "R_modq":
        _i, gammas = inst.data
        m = fresh_label(T)
        return T._extend([(m, gamma_negated(gammas[branch], ind_map))], step, next_label=m + 1)
    if rule == "R_modd":
        _i, gammas, deltas = inst.data
        m = fresh_label(T)
        if branch == 0:
            adds = [(m, gamma_conclusion(g, ind_map)) for g in (*gammas, *deltas)]
        else:
            j, l = divmod(branch - 1, len(deltas))
            adds = [
                (m, gamma_negated(gammas[j], ind_map)),
                (m, gamma_negated(deltas[l], ind_map)),
            ]
        return T._extend(adds, step, next_label=m + 1)
    raise ValueError(f"unknown rule {rule!r}")


# ---------------------------------------------------------------------------
# Solver


@dataclass
class SolveStats:
    applications: int = 0
    max_labels: int = 0
    max_variables: int = 0
    branch_points: int = 0


@dataclass
class Sat:
    completion: CompletionSet
    model: object
    stats: SolveStats

    def __bool__(self) -> bool:
        return True


@dataclass
class Unsat:
    stats: SolveStats

    def __bool__(self) -> bool:
        return False


@dataclass
class BudgetExceeded:
    stats: SolveStats

    def __bool__(self) -> bool:
        return False


class _OutOfBudget(Exception):
    pass


def solve(f: Formula, spec: "LogicSpec | str", budget: int = DEFAULT_BUDGET):
    """Decide satisfiability of the formula under the spec's frame class.

    The search is depth-first over branch choices with rule instances taken
    in canonical order.  The budget bounds the total number of rule
    applications across the whole search, backtracked branches included.
    On success the verdict carries the open completion set and the model
    extracted from it.
    """
    spec = validate(spec)
    g = to_nnf(f)
    stats = SolveStats()
    root = initialize(g)

    def note(T: CompletionSet):
        stats.max_labels = max(stats.max_labels, len(T.views.by_label))
        nvars = len({t.index for lv in T.views.by_label.values() for t in lv.terms if isinstance(t, Var)})
        stats.max_variables = max(stats.max_variables, nvars)

    def run(T: CompletionSet):
        while True:
            note(T)
            if has_clash(T):
                return None
            inst = next(iter_instances(T, spec), None)
            if inst is None:
                return T
            if inst.branches == 1:
                if stats.applications >= budget:
                    raise _OutOfBudget
                stats.applications += 1
                T = apply_rule(T, inst, 0)
                continue
            stats.branch_points += 1
            for b in range(inst.branches):
                if stats.applications >= budget:
                    raise _OutOfBudget
                stats.applications += 1
                got = run(apply_rule(T, inst, b))
                if got is not None:
                    return got
            return None

    try:
        final = run(root)
    except _OutOfBudget:
        return BudgetExceeded(stats)
    if final is None:
        return Unsat(stats)
    from .model_extract import extract_model

    return Sat(final, extract_model(final, spec), stats)


# ---------------------------------------------------------------------------
# Traces


def trace(T: CompletionSet) -> str:
    """Human-readable, replayable account of how the set was built."""
    lines = []
    for step in T.steps:
        if step.branches > 1:
            tag = f"{step.rule}[{step.branch + 1}/{step.branches}]"
        else:
            tag = step.rule
        for n, p in step.added:
            lines.append(f"{n} : {p}  ({tag})")
    return "\n".join(lines)


def replay(f: Formula, steps, spec: "LogicSpec | str") -> CompletionSet:
    """Rebuild a completion set from a trace, validating every step."""
    spec = validate(spec)
    T = initialize(to_nnf(f))
    for step in steps:
        if step.rule == "init":
            continue
        matching = None
        for inst in iter_instances(T, spec):
            if inst.rule == step.rule and inst.premises == step.premises:
                matching = inst
                break
        if matching is None:
            raise ValueError(f"no applicable instance matches step {step}")
        T = apply_rule(T, matching, step.branch)
    return T
