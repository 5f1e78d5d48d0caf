"""Countermodel extraction from open, complete completion sets.

Labels become worlds and the terms at each label become that world's
domain.  Each box constraint pins its content's truth set between a lower
bound (labels where the content is asserted) and an upper bound (labels
where its dotted negation is not); a neighbourhood is any set of worlds
between those bounds, encoded as an interval family.  The interval shape
keeps the model small while still deciding membership exactly; callers
that want listed neighbourhoods can expand them afterwards.
"""

from __future__ import annotations

from .logics import LogicSpec, validate
from .semantics import IntervalFamily, NbhdModel, WorldInterp
from .syntax import CName, agent_indices
from .tableau import (
    CC,
    CompletionSet,
    FC,
    Ind,
    blocker,
    gamma_conclusion,
    gamma_negated,
    ind_map_of,
    _box_subsets,
    _present,
)


def _element_names(T: CompletionSet):
    """Stable string names for terms plus a filler for termless labels."""
    taken = set(T.ind_order)
    prefix = "x"
    while any(name.startswith(prefix) for name in taken):
        prefix += "x"

    def name_of(t) -> str:
        if isinstance(t, Ind):
            return t.name
        return f"{prefix}{t.index}"

    return name_of, f"{prefix}f"


def _chain_root(T: CompletionSet, label: int, t):
    """Follow blockers down to an unblocked term."""
    while True:
        b = blocker(T, label, t)
        if b is None:
            return t
        t = b


def extract_model(T: CompletionSet, spec: "LogicSpec | str") -> NbhdModel:
    """Build the neighbourhood model a completion set describes.

    Meaningful only for open, complete sets; the function itself does not
    check completeness.  The spec must be the one the set was completed
    under, since it decides which bounds and closure devices apply:
    an M spec lifts every upper bound to all worlds, a C spec pools box
    premises so the families intersect properly, an N spec adds the unit.
    """
    spec = validate(spec)
    letters = spec.letters
    views = T.views
    worlds = tuple(views.labels)
    world_set = frozenset(worlds)
    name_of, filler = _element_names(T)
    ind_map = ind_map_of(T)

    agents = 0
    for _n, p in T.entries:
        if isinstance(p, FC):
            agents = max(agents, *agent_indices(p.formula), agents)
        elif isinstance(p, CC):
            agents = max(agents, *agent_indices(p.concept), agents)

    interp = {}
    for n in worlds:
        lv = views.by_label[n]
        terms = sorted(lv.terms, key=lambda t: t.key)
        if terms:
            domain = tuple(name_of(t) for t in terms)
            least = name_of(terms[0])
        else:
            domain = (filler,)
            least = filler
        concepts: dict = {}
        for (c, x), _idx in lv.concepts.items():
            if isinstance(c, CName):
                concepts.setdefault(c.name, set()).add(name_of(x))
        roles: dict = {}
        for (r, s, t) in lv.roles:
            roles.setdefault(r, set()).add((name_of(s), name_of(t)))
        for u in terms:
            root = _chain_root(T, n, u)
            if root is not u:
                for (r, s, t) in lv.roles:
                    if s == root:
                        roles.setdefault(r, set()).add((name_of(u), name_of(t)))
        inds = {}
        for a in T.ind_order:
            inds[a] = a if ind_map[a] in lv.terms else least
        interp[n] = WorldInterp(
            domain=domain,
            concepts={k: frozenset(v) for k, v in concepts.items()},
            roles={k: frozenset(v) for k, v in roles.items()},
            inds=inds,
        )

    with_c = "C" in letters
    with_m = "M" in letters
    unit = "N" in letters
    nbhd = {}
    for n in worlds:
        lv = views.by_label[n]
        for i in range(1, agents + 1):
            intervals = []
            for subset in _box_subsets(lv.boxes.get(i, ()), with_c):
                gammas = [g for _, g in subset]
                lower = frozenset(
                    o
                    for o in worlds
                    if all(_present(views.by_label[o], gamma_conclusion(g, ind_map)) for g in gammas)
                )
                if with_m:
                    upper = world_set
                else:
                    upper = frozenset(
                        o
                        for o in worlds
                        if not any(_present(views.by_label[o], gamma_negated(g, ind_map)) for g in gammas)
                    )
                intervals.append((lower, upper))
            if intervals or unit:
                nbhd[(i, n)] = IntervalFamily(tuple(intervals), unit=unit)

    model = NbhdModel(worlds=worlds, agents=agents, mode="varying", nbhd=nbhd, interp=interp)
    model.validate()
    return model
