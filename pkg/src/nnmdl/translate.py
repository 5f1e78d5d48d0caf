"""Embedding neighbourhood satisfiability into multi-modal relational K.

``dagger`` rewrites a concept or formula over n agents into one over 3n
agents: each box [i] becomes <i1>([i2] body & [i3] ~body), where the
triple (i1, i2, i3) = (3(i-1)+1, 3(i-1)+2, 3(i-1)+3).  Read relationally,
the i1-successors stand for the neighbourhoods of agent i, the
i2-successors of a neighbourhood-world are its member worlds and the
i3-successors its non-members, so the guarded pattern pins the
neighbourhood to be exactly the truth set of the body.  ``ddagger`` drops
the i3 half, pairing agent i with (2(i-1)+1, 2(i-1)+2); the one-sided
pattern <i1>[i2] is faithful only over supplemented frames, where
membership of a superset is as good as membership of the set itself.

Diamonds are translated by duality (dia = ~box~, with the negations
pushed through), so dagger and ddagger of sugared input stay sugar-free
at the top of each modal step.

The model transformations that witness faithfulness at desk scale are
also here, in both directions for both translations.  Forward maps take a
constant-domain neighbourhood model with extensional (explicitly listed)
neighbourhoods and build a relational model whose worlds are the pairs
(w, 0) for source worlds w and (alpha, 1) for every set alpha appearing
in some neighbourhood; backward maps read neighbourhoods off a relational
model as interval families.  Satisfaction transfers along the maps:
source world w matches target world (w, 0) forwards, and the very same
world backwards.
"""

from __future__ import annotations

from .semantics import (
    ExplicitFamily,
    IntervalFamily,
    NbhdModel,
    RelationalModel,
    WorldInterp,
    check_frame_condition,
)
from .syntax import (
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
    Formula,
    agent_indices,
)

__all__ = [
    "IntensionalInput",
    "NonSupplementedFrame",
    "dagger",
    "ddagger",
    "nbhd_to_relational_dagger",
    "relational_to_nbhd_dagger",
    "nbhd_to_relational_ddagger",
    "relational_to_nbhd_ddagger",
]


class IntensionalInput(ValueError):
    """Forward model maps need every neighbourhood listed set by set."""


class NonSupplementedFrame(ValueError):
    """The ddagger forward map is only sound on supplemented frames."""


# ---------------------------------------------------------------------------
# Syntactic translations


def _cneg(c: Concept) -> Concept:
    if isinstance(c, CNeg):
        return c.sub
    return CNeg(c)


def _fneg(f: Formula) -> Formula:
    if isinstance(f, FNot):
        return f.sub
    return FNot(f)


def _check_agents(x: Concept | Formula, n: int) -> None:
    if n < 1:
        raise ValueError(f"agent count must be positive, got {n}")
    used = agent_indices(x)
    if used and max(used) > n:
        raise ValueError(f"agent {max(used)} out of range for n={n}")


def _dagger_c(c: Concept) -> Concept:
    if isinstance(c, CName):
        return c
    if isinstance(c, CNeg):
        return CNeg(_dagger_c(c.sub))
    if isinstance(c, CAnd):
        return CAnd(_dagger_c(c.left), _dagger_c(c.right))
    if isinstance(c, COr):
        return COr(_dagger_c(c.left), _dagger_c(c.right))
    if isinstance(c, CExists):
        return CExists(c.role, _dagger_c(c.sub))
    if isinstance(c, CForall):
        return CForall(c.role, _dagger_c(c.sub))
    i1 = 3 * (c.agent - 1) + 1
    body = _dagger_c(c.sub)
    if isinstance(c, CBox):
        return CDia(i1, CAnd(CBox(i1 + 1, body), CBox(i1 + 2, _cneg(body))))
    return CBox(i1, COr(CDia(i1 + 1, body), CDia(i1 + 2, _cneg(body))))


def _dagger_f(f: Formula) -> Formula:
    if isinstance(f, FCI):
        return FCI(_dagger_c(f.left), _dagger_c(f.right))
    if isinstance(f, FAssert):
        return FAssert(_dagger_c(f.concept), f.ind)
    if isinstance(f, FRole):
        return f
    if isinstance(f, FNot):
        return FNot(_dagger_f(f.sub))
    if isinstance(f, FAnd):
        return FAnd(_dagger_f(f.left), _dagger_f(f.right))
    if isinstance(f, FOr):
        return FOr(_dagger_f(f.left), _dagger_f(f.right))
    i1 = 3 * (f.agent - 1) + 1
    body = _dagger_f(f.sub)
    if isinstance(f, FBox):
        return FDia(i1, FAnd(FBox(i1 + 1, body), FBox(i1 + 2, _fneg(body))))
    return FBox(i1, FOr(FDia(i1 + 1, body), FDia(i1 + 2, _fneg(body))))


def dagger(x: Concept | Formula, n: int = 1) -> Concept | Formula:
    """Translate ``x`` (over agents 1..n) for evaluation over 3n agents."""
    _check_agents(x, n)
    if isinstance(x, (FCI, FAssert, FRole, FNot, FAnd, FOr, FBox, FDia)):
        return _dagger_f(x)
    return _dagger_c(x)


def _ddagger_c(c: Concept) -> Concept:
    if isinstance(c, CName):
        return c
    if isinstance(c, CNeg):
        return CNeg(_ddagger_c(c.sub))
    if isinstance(c, CAnd):
        return CAnd(_ddagger_c(c.left), _ddagger_c(c.right))
    if isinstance(c, COr):
        return COr(_ddagger_c(c.left), _ddagger_c(c.right))
    if isinstance(c, CExists):
        return CExists(c.role, _ddagger_c(c.sub))
    if isinstance(c, CForall):
        return CForall(c.role, _ddagger_c(c.sub))
    i1 = 2 * (c.agent - 1) + 1
    body = _ddagger_c(c.sub)
    if isinstance(c, CBox):
        return CDia(i1, CBox(i1 + 1, body))
    return CBox(i1, CDia(i1 + 1, body))


def _ddagger_f(f: Formula) -> Formula:
    if isinstance(f, FCI):
        return FCI(_ddagger_c(f.left), _ddagger_c(f.right))
    if isinstance(f, FAssert):
        return FAssert(_ddagger_c(f.concept), f.ind)
    if isinstance(f, FRole):
        return f
    if isinstance(f, FNot):
        return FNot(_ddagger_f(f.sub))
    if isinstance(f, FAnd):
        return FAnd(_ddagger_f(f.left), _ddagger_f(f.right))
    if isinstance(f, FOr):
        return FOr(_ddagger_f(f.left), _ddagger_f(f.right))
    i1 = 2 * (f.agent - 1) + 1
    body = _ddagger_f(f.sub)
    if isinstance(f, FBox):
        return FDia(i1, FBox(i1 + 1, body))
    return FBox(i1, FDia(i1 + 1, body))


def ddagger(x: Concept | Formula, n: int = 1) -> Concept | Formula:
    """Translate ``x`` (over agents 1..n) for evaluation over 2n agents.

    Faithful over supplemented frames only.
    """
    _check_agents(x, n)
    if isinstance(x, (FCI, FAssert, FRole, FNot, FAnd, FOr, FBox, FDia)):
        return _ddagger_f(x)
    return _ddagger_c(x)


# ---------------------------------------------------------------------------
# Model transformations


def _pooled_neighbourhoods(model: NbhdModel) -> list[frozenset]:
    """Every set appearing in any agent's neighbourhood map, deduplicated."""
    seen = set()
    for (agent, world), fam in model.nbhd.items():
        if not isinstance(fam, ExplicitFamily):
            raise IntensionalInput(
                f"neighbourhoods of agent {agent} at world {world!r} are not "
                "extensional; expand_neighbourhoods first"
            )
        seen.update(fam.sets)
    return sorted(seen, key=lambda a: (len(a), sorted(map(repr, a))))


def _forward(model: NbhdModel, triples: bool) -> RelationalModel:
    model.validate()
    if model.mode != "constant":
        raise ValueError("forward model maps need a constant-domain model")
    alphas = _pooled_neighbourhoods(model)
    base = [(w, 0) for w in model.worlds]
    extra = [(a, 1) for a in alphas]
    width = 3 if triples else 2
    rel: dict[int, frozenset] = {}
    for i in range(1, model.agents + 1):
        i1 = width * (i - 1) + 1
        member = set()
        for a in alphas:
            for w in model.worlds:
                if w in a:
                    member.add(((a, 1), (w, 0)))
        rel[i1] = frozenset(
            ((w, 0), (a, 1))
            for w in model.worlds
            for a in model.family(i, w).sets
        )
        rel[i1 + 1] = frozenset(member)
        if triples:
            rel[i1 + 2] = frozenset(
                ((a, 1), (w, 0))
                for a in alphas
                for w in model.worlds
                if w not in a
            )
    first = model.interp[model.worlds[0]]
    blank = WorldInterp(first.domain, {}, {}, first.inds)
    interp = {}
    for w in model.worlds:
        interp[(w, 0)] = model.interp[w]
    for a in alphas:
        interp[(a, 1)] = blank
    out = RelationalModel(
        tuple(base + extra), width * model.agents, rel, interp
    )
    out.validate()
    return out


def nbhd_to_relational_dagger(model: NbhdModel) -> RelationalModel:
    """Relational companion of ``model``; world w becomes (w, 0).

    For every formula f over the model's agents and every world w,
    f holds at w iff dagger(f) holds at (w, 0) in the result.  Requires a
    constant domain and extensional neighbourhoods (IntensionalInput
    otherwise; see expand_neighbourhoods).
    """
    return _forward(model, triples=True)


def nbhd_to_relational_ddagger(model: NbhdModel) -> RelationalModel:
    """Like nbhd_to_relational_dagger but for ddagger.

    The input frame must be supplemented (NonSupplementedFrame otherwise);
    only then does the two-agent pattern characterise membership.
    """
    model.validate()
    if not check_frame_condition(model, "M"):
        raise NonSupplementedFrame(
            "ddagger needs a supplemented (M) neighbourhood frame"
        )
    return _forward(model, triples=False)


def _backward(model: RelationalModel, triples: bool) -> NbhdModel:
    model.validate()
    width = 3 if triples else 2
    if model.agents % width:
        raise ValueError(
            f"expected a multiple of {width} agents, got {model.agents}"
        )
    n = model.agents // width
    everything = model.world_set
    nbhd = {}
    for i in range(1, n + 1):
        i1 = width * (i - 1) + 1
        for w in model.worlds:
            intervals = []
            for v in model.worlds:
                if (w, v) not in model.rel.get(i1, frozenset()):
                    continue
                lower = model.successors(i1 + 1, v)
                upper = everything - model.successors(i1 + 2, v) if triples else everything
                if not lower <= upper:
                    continue  # no set fits between the bounds
                if (lower, upper) not in intervals:
                    intervals.append((lower, upper))
            if intervals:
                nbhd[(i, w)] = IntervalFamily(tuple(intervals))
    out = NbhdModel(model.worlds, n, "constant", nbhd, dict(model.interp))
    out.validate()
    return out


def relational_to_nbhd_dagger(model: RelationalModel) -> NbhdModel:
    """Neighbourhood companion of ``model``, read through dagger's pattern.

    Worlds are unchanged: agent i's neighbourhoods at w are the sets
    containing every i2-successor and no i3-successor of some
    i1-successor of w.  Satisfaction of f here matches satisfaction of
    dagger(f) in the input at the same world.
    """
    return _backward(model, triples=True)


def relational_to_nbhd_ddagger(model: RelationalModel) -> NbhdModel:
    """Like relational_to_nbhd_dagger for ddagger's one-sided pattern.

    Neighbourhoods are all supersets of the i2-successor sets, so the
    resulting frame is always supplemented.
    """
    return _backward(model, triples=False)
