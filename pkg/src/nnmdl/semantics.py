"""Neighbourhood and relational models and every semantic check.

Worlds carry their own first-order interpretation.  In varying mode the
domains may differ per world; constant mode requires equal domains and rigid
individuals.  Neighbourhood maps are stored either extensionally (a family of
world sets) or intensionally (a list of lower/upper bound intervals plus a
unit flag); intensional maps answer membership directly and are expanded to
families only when a check has to quantify over members, which is refused
beyond EXPANSION_LIMIT worlds.

An element absent from a world's domain belongs to no concept extension
there.  Element-indexed truth sets, which feed neighbourhood membership
under the modal concept clauses, are computed structurally over the full
world set: names, quantifiers and modal atoms index presence world by
world, while negation complements within the whole world set and the
boolean connectives act set-wise.  Under constant domains this agrees with
reading membership off each world's extension; under varying domains the
structural reading is the one the modal rules of inference answer to, and
the two differ only where an element is absent from some world.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .syntax import (
    BOT,
    TOP,
    CAnd,
    CBox,
    CDia,
    CExists,
    CForall,
    CName,
    CNeg,
    COr,
    Concept,
    FAnd,
    FAssert,
    FBox,
    FCI,
    FDia,
    FNot,
    FOr,
    FRole,
    FALSE_F,
    TRUE_F,
    Formula,
)
from .logics import LogicSpec, validate

EXPANSION_LIMIT = 12


class IntensionalTooLarge(ValueError):
    """Expanding an intensional neighbourhood map over this many worlds is refused."""


@dataclass(frozen=True)
class ExplicitFamily:
    sets: frozenset  # frozenset of frozensets of world ids

    def contains(self, alpha: frozenset, all_worlds: frozenset) -> bool:
        return alpha in self.sets

    def members(self, all_worlds: frozenset) -> frozenset:
        return self.sets


@dataclass(frozen=True)
class IntervalFamily:
    """All sets between some lower/upper bound pair, plus the unit if flagged."""

    intervals: tuple  # of (frozenset, frozenset) pairs
    unit: bool = False

    def contains(self, alpha: frozenset, all_worlds: frozenset) -> bool:
        if self.unit and alpha == all_worlds:
            return True
        return any(lb <= alpha <= ub for lb, ub in self.intervals)

    def members(self, all_worlds: frozenset) -> frozenset:
        if len(all_worlds) > EXPANSION_LIMIT:
            raise IntensionalTooLarge(
                f"cannot expand an interval family over {len(all_worlds)} worlds "
                f"(limit {EXPANSION_LIMIT})"
            )
        out = set()
        if self.unit:
            out.add(frozenset(all_worlds))
        universe = tuple(all_worlds)
        for lb, ub in self.intervals:
            if not lb <= ub:
                continue
            free = tuple(ub - lb)
            for k in range(len(free) + 1):
                for extra in combinations(free, k):
                    out.add(lb | frozenset(extra))
        return frozenset(out)


@dataclass
class WorldInterp:
    domain: tuple
    concepts: dict  # name -> frozenset of elements
    roles: dict  # name -> frozenset of (element, element) pairs
    inds: dict  # name -> element


@dataclass
class NbhdModel:
    worlds: tuple
    agents: int
    mode: str  # "varying" | "constant"
    nbhd: dict  # (agent, world) -> family
    interp: dict  # world -> WorldInterp
    _ev: "object" = field(default=None, repr=False, compare=False)

    @property
    def world_set(self) -> frozenset:
        return frozenset(self.worlds)

    def family(self, agent: int, world) -> "ExplicitFamily | IntervalFamily":
        return self.nbhd.get((agent, world), ExplicitFamily(frozenset()))

    def validate(self) -> None:
        if not self.worlds:
            raise ValueError("a model needs at least one world")
        if self.mode not in ("varying", "constant"):
            raise ValueError(f"unknown mode {self.mode!r}")
        for w in self.worlds:
            wi = self.interp[w]
            if not wi.domain:
                raise ValueError(f"world {w!r} has an empty domain")
            dom = set(wi.domain)
            for name, ext in wi.concepts.items():
                if not set(ext) <= dom:
                    raise ValueError(f"concept {name} at world {w!r} leaves the domain")
            for name, pairs in wi.roles.items():
                for d, e in pairs:
                    if d not in dom or e not in dom:
                        raise ValueError(f"role {name} at world {w!r} leaves the domain")
            for name, el in wi.inds.items():
                if el not in dom:
                    raise ValueError(f"individual {name} at world {w!r} denotes outside the domain")
        if self.mode == "constant":
            first = self.interp[self.worlds[0]]
            for w in self.worlds[1:]:
                wi = self.interp[w]
                if set(wi.domain) != set(first.domain):
                    raise ValueError("constant mode requires equal domains")
                if wi.inds != first.inds:
                    raise ValueError("constant mode requires rigid individuals")


@dataclass
class RelationalModel:
    worlds: tuple
    agents: int
    rel: dict  # agent -> frozenset of (world, world) pairs
    interp: dict  # world -> WorldInterp (constant domain, rigid individuals)
    _ev: "object" = field(default=None, repr=False, compare=False)

    @property
    def world_set(self) -> frozenset:
        return frozenset(self.worlds)

    def successors(self, agent: int, world) -> frozenset:
        return frozenset(v for (u, v) in self.rel.get(agent, frozenset()) if u == world)

    def validate(self) -> None:
        if not self.worlds:
            raise ValueError("a model needs at least one world")
        first = self.interp[self.worlds[0]]
        for w in self.worlds:
            wi = self.interp[w]
            if not wi.domain:
                raise ValueError(f"world {w!r} has an empty domain")
            if set(wi.domain) != set(first.domain):
                raise ValueError("relational models have a constant domain")
            if wi.inds != first.inds:
                raise ValueError("relational models have rigid individuals")


# ---------------------------------------------------------------------------
# Evaluation


class _NbhdEval:
    def __init__(self, model: NbhdModel):
        self.m = model
        self.all_worlds = model.world_set
        self.cext: dict = {}
        self.fval: dict = {}
        self.tsets: dict = {}

    def ext(self, w, c: Concept) -> frozenset:
        key = (w, c)
        got = self.cext.get(key)
        if got is not None:
            return got
        wi = self.m.interp[w]
        dom = frozenset(wi.domain)
        if isinstance(c, CName):
            out = frozenset(wi.concepts.get(c.name, ()))
        elif isinstance(c, CNeg):
            out = dom - self.ext(w, c.sub)
        elif isinstance(c, CAnd):
            out = self.ext(w, c.left) & self.ext(w, c.right)
        elif isinstance(c, COr):
            out = self.ext(w, c.left) | self.ext(w, c.right)
        elif isinstance(c, CExists):
            pairs = wi.roles.get(c.role, frozenset())
            targets = self.ext(w, c.sub)
            out = frozenset(d for d, e in pairs if e in targets)
        elif isinstance(c, CForall):
            pairs = wi.roles.get(c.role, frozenset())
            targets = self.ext(w, c.sub)
            bad = frozenset(d for d, e in pairs if e not in targets)
            out = dom - bad
        elif isinstance(c, CBox):
            out = frozenset(
                d for d in dom if self.m.family(c.agent, w).contains(self.truth_set_c(c.sub, d), self.all_worlds)
            )
        elif isinstance(c, CDia):
            out = frozenset(
                d
                for d in dom
                if not self.m.family(c.agent, w).contains(self.truth_set_c(CNeg(c.sub), d), self.all_worlds)
            )
        else:
            raise TypeError(f"not a concept: {c!r}")
        self.cext[key] = out
        return out

    def truth_set_c(self, c: Concept, d) -> frozenset:
        """Worlds the element d counts as falling under c at, structurally:
        complement is taken in the full world set, so absence reads as
        membership in the negation."""
        key = (c, d)
        got = self.tsets.get(key)
        if got is not None:
            return got
        if isinstance(c, CNeg):
            out = self.all_worlds - self.truth_set_c(c.sub, d)
        elif isinstance(c, CAnd):
            out = self.truth_set_c(c.left, d) & self.truth_set_c(c.right, d)
        elif isinstance(c, COr):
            out = self.truth_set_c(c.left, d) | self.truth_set_c(c.right, d)
        else:
            out = frozenset(v for v in self.m.worlds if d in self.ext(v, c))
        self.tsets[key] = out
        return out

    def truth_set_f(self, f: Formula) -> frozenset:
        return frozenset(v for v in self.m.worlds if self.holds(v, f))

    def holds(self, w, f: Formula) -> bool:
        key = (w, f)
        got = self.fval.get(key)
        if got is not None:
            return got
        wi = self.m.interp[w]
        if isinstance(f, FCI):
            out = self.ext(w, f.left) <= self.ext(w, f.right)
        elif isinstance(f, FAssert):
            if f.ind not in wi.inds:
                raise ValueError(f"individual {f.ind!r} is not interpreted at world {w!r}")
            out = wi.inds[f.ind] in self.ext(w, f.concept)
        elif isinstance(f, FRole):
            if f.a not in wi.inds or f.b not in wi.inds:
                raise ValueError(f"individuals of {f.role}({f.a},{f.b}) are not interpreted at world {w!r}")
            out = (wi.inds[f.a], wi.inds[f.b]) in wi.roles.get(f.role, frozenset())
        elif isinstance(f, FNot):
            out = not self.holds(w, f.sub)
        elif isinstance(f, FAnd):
            out = self.holds(w, f.left) and self.holds(w, f.right)
        elif isinstance(f, FOr):
            out = self.holds(w, f.left) or self.holds(w, f.right)
        elif isinstance(f, FBox):
            out = self.m.family(f.agent, w).contains(self.truth_set_f(f.sub), self.all_worlds)
        elif isinstance(f, FDia):
            out = not self.m.family(f.agent, w).contains(
                self.all_worlds - self.truth_set_f(f.sub), self.all_worlds
            )
        else:
            raise TypeError(f"not a formula: {f!r}")
        self.fval[key] = out
        return out


def _nbhd_eval(model: NbhdModel) -> _NbhdEval:
    if model._ev is None:
        model._ev = _NbhdEval(model)
    return model._ev


def concept_extension(model: NbhdModel, world, concept: Concept) -> frozenset:
    if world not in model.interp:
        raise ValueError(f"unknown world {world!r}")
    return _nbhd_eval(model).ext(world, concept)


def formula_holds(model: NbhdModel, world, f: Formula) -> bool:
    if world not in model.interp:
        raise ValueError(f"unknown world {world!r}")
    return _nbhd_eval(model).holds(world, f)


def formula_valid(model: NbhdModel, f: Formula) -> bool:
    return all(formula_holds(model, w, f) for w in model.worlds)


class _RelEval:
    def __init__(self, model: RelationalModel):
        self.m = model
        self.cext: dict = {}
        self.fval: dict = {}
        self.succ = {
            (i, w): frozenset(v for (u, v) in model.rel.get(i, frozenset()) if u == w)
            for i in range(1, model.agents + 1)
            for w in model.worlds
        }

    def ext(self, w, c: Concept) -> frozenset:
        key = (w, c)
        got = self.cext.get(key)
        if got is not None:
            return got
        wi = self.m.interp[w]
        dom = frozenset(wi.domain)
        if isinstance(c, CName):
            out = frozenset(wi.concepts.get(c.name, ()))
        elif isinstance(c, CNeg):
            out = dom - self.ext(w, c.sub)
        elif isinstance(c, CAnd):
            out = self.ext(w, c.left) & self.ext(w, c.right)
        elif isinstance(c, COr):
            out = self.ext(w, c.left) | self.ext(w, c.right)
        elif isinstance(c, CExists):
            pairs = wi.roles.get(c.role, frozenset())
            targets = self.ext(w, c.sub)
            out = frozenset(d for d, e in pairs if e in targets)
        elif isinstance(c, CForall):
            pairs = wi.roles.get(c.role, frozenset())
            targets = self.ext(w, c.sub)
            out = dom - frozenset(d for d, e in pairs if e not in targets)
        elif isinstance(c, CBox):
            vs = self.succ[(c.agent, w)]
            out = frozenset(d for d in dom if all(d in self.ext(v, c.sub) for v in vs))
        elif isinstance(c, CDia):
            vs = self.succ[(c.agent, w)]
            out = frozenset(d for d in dom if any(d in self.ext(v, c.sub) for v in vs))
        else:
            raise TypeError(f"not a concept: {c!r}")
        self.cext[key] = out
        return out

    def holds(self, w, f: Formula) -> bool:
        key = (w, f)
        got = self.fval.get(key)
        if got is not None:
            return got
        wi = self.m.interp[w]
        if isinstance(f, FCI):
            out = self.ext(w, f.left) <= self.ext(w, f.right)
        elif isinstance(f, FAssert):
            out = wi.inds[f.ind] in self.ext(w, f.concept)
        elif isinstance(f, FRole):
            out = (wi.inds[f.a], wi.inds[f.b]) in wi.roles.get(f.role, frozenset())
        elif isinstance(f, FNot):
            out = not self.holds(w, f.sub)
        elif isinstance(f, FAnd):
            out = self.holds(w, f.left) and self.holds(w, f.right)
        elif isinstance(f, FOr):
            out = self.holds(w, f.left) or self.holds(w, f.right)
        elif isinstance(f, FBox):
            out = all(self.holds(v, f.sub) for v in self.succ[(f.agent, w)])
        elif isinstance(f, FDia):
            out = any(self.holds(v, f.sub) for v in self.succ[(f.agent, w)])
        else:
            raise TypeError(f"not a formula: {f!r}")
        self.fval[key] = out
        return out


def _rel_eval(model: RelationalModel) -> _RelEval:
    if model._ev is None:
        model._ev = _RelEval(model)
    return model._ev


def relational_formula_holds(model: RelationalModel, world, f: Formula) -> bool:
    if world not in model.interp:
        raise ValueError(f"unknown world {world!r}")
    return _rel_eval(model).holds(world, f)


def relational_concept_extension(model: RelationalModel, world, c: Concept) -> frozenset:
    if world not in model.interp:
        raise ValueError(f"unknown world {world!r}")
    return _rel_eval(model).ext(world, c)


def relational_formula_valid(model: RelationalModel, f: Formula) -> bool:
    return all(relational_formula_holds(model, w, f) for w in model.worlds)


# ---------------------------------------------------------------------------
# Frame conditions


def expand_neighbourhoods(model: NbhdModel) -> NbhdModel:
    """Copy of the model with every neighbourhood map in extensional form."""
    nbhd = {}
    for key, fam in model.nbhd.items():
        if isinstance(fam, IntervalFamily):
            fam = ExplicitFamily(fam.members(model.world_set))
        nbhd[key] = fam
    return NbhdModel(model.worlds, model.agents, model.mode, nbhd, model.interp)


def _family_sets(model: NbhdModel, agent: int, world) -> frozenset:
    return model.family(agent, world).members(model.world_set)


def check_frame_condition(model: NbhdModel, letter: str, agent: "int | None" = None) -> bool:
    """Does the model's frame satisfy a single condition letter?

    Intensional maps are expanded first; beyond EXPANSION_LIMIT worlds this
    raises IntensionalTooLarge.
    """
    letter = letter.upper()
    if letter == "E":
        return True
    if letter not in "MCNTDPQ":
        raise ValueError(f"unknown condition letter {letter!r}")
    agents = range(1, model.agents + 1) if agent is None else (agent,)
    full = model.world_set
    for i in agents:
        for w in model.worlds:
            fam = _family_sets(model, i, w)
            if letter == "M":
                for alpha in fam:
                    free = tuple(full - alpha)
                    for k in range(len(free) + 1):
                        for extra in combinations(free, k):
                            if alpha | frozenset(extra) not in fam:
                                return False
            elif letter == "C":
                for alpha in fam:
                    for beta in fam:
                        if alpha & beta not in fam:
                            return False
            elif letter == "N":
                if full not in fam:
                    return False
            elif letter == "T":
                if any(w not in alpha for alpha in fam):
                    return False
            elif letter == "D":
                if any(full - alpha in fam for alpha in fam):
                    return False
            elif letter == "P":
                if frozenset() in fam:
                    return False
            elif letter == "Q":
                if full in fam:
                    return False
    return True


def check_logic_conditions(model: NbhdModel, spec: "LogicSpec | str") -> bool:
    spec = validate(spec)
    return all(check_frame_condition(model, letter) for letter in spec.letters)


# ---------------------------------------------------------------------------
# Characteristic principles (instance-bounded)


def _iff(a: Formula, b: Formula) -> Formula:
    return FAnd(FOr(FNot(a), b), FOr(FNot(b), a))


def _implies_f(a: Formula, b: Formula) -> Formula:
    return FOr(FNot(a), b)


def principle_instances(letter: str, agent: int, concepts, formulas) -> list:
    """Instances of a letter's principle over the given test sets.

    Rule-form letters (E, M, N) yield (premise, conclusion) pairs; axiom-form
    letters yield (None, conclusion) pairs.  Validity of a pair in a model
    means: if the premise is valid, the conclusion is valid.
    """
    letter = letter.upper()
    out: list = []
    if letter == "E":
        for c, d in [(c, d) for c in concepts for d in concepts]:
            prem = FAnd(FCI(c, d), FCI(d, c))
            conc = FAnd(FCI(CBox(agent, c), CBox(agent, d)), FCI(CBox(agent, d), CBox(agent, c)))
            out.append((prem, conc))
        for f, g in [(f, g) for f in formulas for g in formulas]:
            out.append((_iff(f, g), _iff(FBox(agent, f), FBox(agent, g))))
    elif letter == "M":
        for c, d in [(c, d) for c in concepts for d in concepts]:
            out.append((FCI(c, d), FCI(CBox(agent, c), CBox(agent, d))))
        for f, g in [(f, g) for f in formulas for g in formulas]:
            out.append((_implies_f(f, g), _implies_f(FBox(agent, f), FBox(agent, g))))
    elif letter == "N":
        for c in concepts:
            out.append((FCI(TOP, c), FCI(TOP, CBox(agent, c))))
        for f in formulas:
            out.append((f, FBox(agent, f)))
    elif letter == "C":
        for c, d in [(c, d) for c in concepts for d in concepts]:
            out.append((None, FCI(CAnd(CBox(agent, c), CBox(agent, d)), CBox(agent, CAnd(c, d)))))
        for f, g in [(f, g) for f in formulas for g in formulas]:
            out.append((None, _implies_f(FAnd(FBox(agent, f), FBox(agent, g)), FBox(agent, FAnd(f, g)))))
    elif letter == "T":
        for c in concepts:
            out.append((None, FCI(CBox(agent, c), c)))
        for f in formulas:
            out.append((None, _implies_f(FBox(agent, f), f)))
    elif letter == "D":
        for c in concepts:
            out.append((None, FCI(CBox(agent, c), CDia(agent, c))))
        for f in formulas:
            out.append((None, _implies_f(FBox(agent, f), FDia(agent, f))))
    elif letter == "P":
        out.append((None, FCI(TOP, CNeg(CBox(agent, BOT)))))
        out.append((None, FNot(FBox(agent, FALSE_F))))
    elif letter == "Q":
        out.append((None, FCI(TOP, CNeg(CBox(agent, TOP)))))
        out.append((None, FNot(FBox(agent, TRUE_F))))
    else:
        raise ValueError(f"unknown condition letter {letter!r}")
    return out


def check_principle(model: NbhdModel, letter: str, concepts=(CName("A"), CName("B")), formulas=None) -> bool:
    """Instance-bounded validity of a letter's principle in a model.

    Checks every instance built from the supplied concept and formula test
    sets, for every agent.  This bounds the principle's schema; it is exact
    for the instances given, no more.
    """
    if formulas is None:
        formulas = tuple(FCI(TOP, c) for c in concepts)
    for agent in range(1, model.agents + 1):
        for prem, conc in principle_instances(letter, agent, concepts, formulas):
            if prem is not None and not formula_valid(model, prem):
                continue
            if not formula_valid(model, conc):
                return False
    return True


def relational_check_principle(
    model: RelationalModel, letter: str, concepts=(CName("A"), CName("B")), formulas=None
) -> bool:
    if formulas is None:
        formulas = tuple(FCI(TOP, c) for c in concepts)
    for agent in range(1, model.agents + 1):
        for prem, conc in principle_instances(letter, agent, concepts, formulas):
            if prem is not None and not relational_formula_valid(model, prem):
                continue
            if not relational_formula_valid(model, conc):
                return False
    return True


# ---------------------------------------------------------------------------
# Agency frames


def validate_agency_frame(worlds, belief: dict, choice: dict, agents: int) -> bool:
    """Check the two-family agency frame conditions.

    ``belief`` and ``choice`` map (agent, world) to neighbourhood families.
    Required: choice families never contain the unit or the empty set; belief
    families are closed under intersection and contain only sets through their
    world; and each belief family is included in the matching choice family.
    """
    full = frozenset(worlds)
    for i in range(1, agents + 1):
        for w in worlds:
            cfam = choice.get((i, w), ExplicitFamily(frozenset())).members(full)
            bfam = belief.get((i, w), ExplicitFamily(frozenset())).members(full)
            if full in cfam or frozenset() in cfam:
                return False
            for alpha in bfam:
                if w not in alpha:
                    return False
                for beta in bfam:
                    if alpha & beta not in bfam:
                        return False
            if not bfam <= cfam:
                return False
    return True


# ---------------------------------------------------------------------------
# JSON


def _family_to_json(fam) -> object:
    if isinstance(fam, ExplicitFamily):
        return sorted([sorted(alpha, key=str) for alpha in fam.sets], key=str)
    return {
        "intervals": [{"lb": sorted(lb, key=str), "ub": sorted(ub, key=str)} for lb, ub in fam.intervals],
        "unit": fam.unit,
    }


def _family_from_json(data) -> "ExplicitFamily | IntervalFamily":
    if isinstance(data, dict):
        ivs = tuple((frozenset(iv["lb"]), frozenset(iv["ub"])) for iv in data.get("intervals", ()))
        return IntervalFamily(intervals=ivs, unit=bool(data.get("unit", False)))
    return ExplicitFamily(frozenset(frozenset(alpha) for alpha in data))


def _interp_to_json(wi: WorldInterp) -> dict:
    return {
        "domain": list(wi.domain),
        "concepts": {name: sorted(ext, key=str) for name, ext in sorted(wi.concepts.items())},
        "roles": {name: sorted([list(p) for p in pairs], key=str) for name, pairs in sorted(wi.roles.items())},
        "inds": dict(sorted(wi.inds.items())),
    }


def _interp_from_json(data: dict) -> WorldInterp:
    return WorldInterp(
        domain=tuple(data["domain"]),
        concepts={name: frozenset(ext) for name, ext in data.get("concepts", {}).items()},
        roles={name: frozenset(tuple(p) for p in pairs) for name, pairs in data.get("roles", {}).items()},
        inds=dict(data.get("inds", {})),
    )


def model_to_json(model: NbhdModel) -> dict:
    return {
        "worlds": list(model.worlds),
        "agents": model.agents,
        "mode": model.mode,
        "nbhd": {
            str(i): {str(w): _family_to_json(model.family(i, w)) for w in model.worlds}
            for i in range(1, model.agents + 1)
        },
        "interp": {str(w): _interp_to_json(model.interp[w]) for w in model.worlds},
    }


def model_from_json(data: dict) -> NbhdModel:
    worlds = tuple(data["worlds"])
    by_key = {str(w): w for w in worlds}
    nbhd = {}
    for agent_s, per_world in data.get("nbhd", {}).items():
        for w_s, fam in per_world.items():
            if w_s not in by_key:
                raise ValueError(f"neighbourhood entry for unknown world {w_s!r}")
            nbhd[(int(agent_s), by_key[w_s])] = _family_from_json(fam)
    interp = {}
    for w_s, wi in data["interp"].items():
        if w_s not in by_key:
            raise ValueError(f"interpretation for unknown world {w_s!r}")
        interp[by_key[w_s]] = _interp_from_json(wi)
    model = NbhdModel(worlds, int(data["agents"]), data.get("mode", "varying"), nbhd, interp)
    model.validate()
    return model


def relational_model_to_json(model: RelationalModel) -> dict:
    return {
        "worlds": list(model.worlds),
        "agents": model.agents,
        "rel": {
            str(i): sorted([list(p) for p in model.rel.get(i, frozenset())], key=str)
            for i in range(1, model.agents + 1)
        },
        "interp": {str(w): _interp_to_json(model.interp[w]) for w in model.worlds},
    }


def relational_model_from_json(data: dict) -> RelationalModel:
    worlds = tuple(data["worlds"])
    by_key = {str(w): w for w in worlds}
    rel = {}
    for agent_s, pairs in data.get("rel", {}).items():
        rel[int(agent_s)] = frozenset((by_key[str(u)], by_key[str(v)]) for u, v in pairs)
    interp = {by_key[w_s]: _interp_from_json(wi) for w_s, wi in data["interp"].items()}
    model = RelationalModel(worlds, int(data["agents"]), rel, interp)
    model.validate()
    return model
