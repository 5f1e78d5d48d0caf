"""Brute-force model search over bounded neighbourhood and relational models.

The enumeration is exhaustive within its bounds, deterministic and free of
isomorphism reduction.  Worlds are the integers 0..m-1 and domain elements
the integers 0..k-1.  The stream is ordered as an odometer: world count
ascending, then domain sizes, concept extensions, role extensions and
individual images (each in binary-counter order, later components faster),
and neighbourhood assignments fastest of all, drawn per (agent, world) from a
precomputed table of families that already satisfy the requested frame
conditions, so every yielded model passes check_logic_conditions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .logics import LogicSpec, validate
from .semantics import (
    ExplicitFamily,
    NbhdModel,
    RelationalModel,
    WorldInterp,
    formula_holds,
    relational_formula_holds,
)
from .syntax import (
    RESERVED_NAME,
    CName,
    Formula,
    agent_indices,
    fragment,
    individuals,
    role_names,
    to_nnf,
)

MAX_ENUM_WORLDS = 4
MAX_ENUM_DOMAIN = 4


@dataclass(frozen=True)
class Signature:
    concepts: tuple = ("A", "B")
    roles: tuple = ("r",)
    individuals: tuple = ("a",)
    agents: int = 1


@dataclass(frozen=True)
class Bounds:
    max_worlds: int = 3
    max_domain: int = 2


@dataclass
class OracleSat:
    model: "NbhdModel | RelationalModel"
    world: object
    examined: int

    def __bool__(self) -> bool:
        return True


@dataclass
class NoModelWithinBounds:
    exhausted: bool
    examined: int

    def __bool__(self) -> bool:
        return False


def _check_bounds(bounds: Bounds) -> None:
    if not 1 <= bounds.max_worlds <= MAX_ENUM_WORLDS:
        raise ValueError(f"max_worlds must be in 1..{MAX_ENUM_WORLDS} for brute-force search")
    if not 1 <= bounds.max_domain <= MAX_ENUM_DOMAIN:
        raise ValueError(f"max_domain must be in 1..{MAX_ENUM_DOMAIN} for brute-force search")


def _mask_to_worldset(mask: int, m: int) -> frozenset:
    return frozenset(w for w in range(m) if mask >> w & 1)


def valid_family_masks(m: int, spec: LogicSpec, world: int) -> list[int]:
    """Bitmask encodings of the neighbourhood families over m worlds that
    satisfy the spec's per-world conditions at the given world.

    A family mask has bit s set when the world set encoded by subset mask s
    belongs to the family.
    """
    n_subsets = 1 << m
    full = n_subsets - 1
    letters = spec.letters
    out = []
    for fam in range(1 << n_subsets):
        members = [s for s in range(n_subsets) if fam >> s & 1]
        ok = True
        if "N" in letters and not fam >> full & 1:
            ok = False
        if ok and "P" in letters and fam & 1:
            ok = False
        if ok and "Q" in letters and fam >> full & 1:
            ok = False
        if ok and "T" in letters:
            ok = all(s >> world & 1 for s in members)
        if ok and "D" in letters:
            ok = not any(fam >> (full ^ s) & 1 for s in members)
        if ok and "M" in letters:
            for s in members:
                rest = full ^ s
                extra = rest
                # walk all submasks of the complement
                while True:
                    if not fam >> (s | extra) & 1:
                        ok = False
                        break
                    if extra == 0:
                        break
                    extra = (extra - 1) & rest
                if not ok:
                    break
        if ok and "C" in letters:
            for i, s in enumerate(members):
                for t in members[i:]:
                    if not fam >> (s & t) & 1:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            out.append(fam)
    return out


def _family_from_mask(fam: int, m: int) -> ExplicitFamily:
    return ExplicitFamily(frozenset(_mask_to_worldset(s, m) for s in range(1 << m) if fam >> s & 1))


def _world_interps(sig: Signature, size: int, with_inds: bool) -> list[WorldInterp]:
    domain = tuple(range(size))
    pairs = tuple(product(domain, domain))
    concept_exts = [
        [frozenset(d for d in domain if mask >> d & 1) for mask in range(1 << size)]
        for _ in sig.concepts
    ]
    role_exts = [
        [frozenset(p for j, p in enumerate(pairs) if mask >> j & 1) for mask in range(1 << len(pairs))]
        for _ in sig.roles
    ]
    ind_maps: list[dict]
    if with_inds and sig.individuals:
        ind_maps = [
            dict(zip(sig.individuals, choice)) for choice in product(domain, repeat=len(sig.individuals))
        ]
    else:
        ind_maps = [{}]
    out = []
    for c_choice in product(*concept_exts) if sig.concepts else [()]:
        for r_choice in product(*role_exts) if sig.roles else [()]:
            for inds in ind_maps:
                out.append(
                    WorldInterp(
                        domain=domain,
                        concepts=dict(zip(sig.concepts, c_choice)),
                        roles=dict(zip(sig.roles, r_choice)),
                        inds=inds,
                    )
                )
    return out


def enumerate_models(
    sig: Signature = Signature(),
    bounds: Bounds = Bounds(),
    mode: str = "varying",
    spec: "LogicSpec | str" = "E",
):
    """Yield every model over the signature within the bounds whose frame
    satisfies the spec's conditions.  Lazy; see the module docstring for the
    order."""
    spec = validate(spec)
    _check_bounds(bounds)
    if mode not in ("varying", "constant"):
        raise ValueError(f"unknown mode {mode!r}")
    for m in range(1, bounds.max_worlds + 1):
        worlds = tuple(range(m))
        fam_masks = [valid_family_masks(m, spec, w) for w in range(m)]
        fam_tables = [[_family_from_mask(f, m) for f in masks] for masks in fam_masks]
        nbhd_slots = [(agent, w) for agent in range(1, sig.agents + 1) for w in range(m)]
        nbhd_options = [fam_tables[w] for (_agent, w) in nbhd_slots]
        if mode == "varying":
            interp_cache = {size: _world_interps(sig, size, with_inds=True) for size in range(1, bounds.max_domain + 1)}
            for sizes in product(range(1, bounds.max_domain + 1), repeat=m):
                for interps in product(*[interp_cache[s] for s in sizes]):
                    interp = dict(zip(worlds, interps))
                    for fams in product(*nbhd_options):
                        yield NbhdModel(
                            worlds=worlds,
                            agents=sig.agents,
                            mode=mode,
                            nbhd=dict(zip(nbhd_slots, fams)),
                            interp=interp,
                        )
        else:
            for size in range(1, bounds.max_domain + 1):
                domain = tuple(range(size))
                base = _world_interps(sig, size, with_inds=False)
                ind_maps = (
                    [dict(zip(sig.individuals, choice)) for choice in product(domain, repeat=len(sig.individuals))]
                    if sig.individuals
                    else [{}]
                )
                for inds in ind_maps:
                    for interps in product(base, repeat=m):
                        interp = {
                            w: WorldInterp(domain=wi.domain, concepts=wi.concepts, roles=wi.roles, inds=inds)
                            for w, wi in zip(worlds, interps)
                        }
                        for fams in product(*nbhd_options):
                            yield NbhdModel(
                                worlds=worlds,
                                agents=sig.agents,
                                mode=mode,
                                nbhd=dict(zip(nbhd_slots, fams)),
                                interp=interp,
                            )


def _signature_check(f: Formula, sig: Signature) -> None:
    frag = fragment(to_nnf(f))
    names = {c.name for c in frag.concepts if isinstance(c, CName)} - {RESERVED_NAME}
    if not names <= set(sig.concepts):
        raise ValueError(f"formula mentions concept names outside the signature: {sorted(names - set(sig.concepts))}")
    if not role_names(f) <= set(sig.roles):
        raise ValueError("formula mentions role names outside the signature")
    if not set(individuals(f)) <= set(sig.individuals):
        raise ValueError("formula mentions individuals outside the signature")
    agents = agent_indices(f)
    if agents and max(agents) > sig.agents:
        raise ValueError(f"formula mentions agent {max(agents)} but the signature has {sig.agents}")


def sat_by_enumeration(
    f: Formula,
    spec: "LogicSpec | str" = "E",
    bounds: Bounds = Bounds(),
    mode: str = "varying",
    sig: "Signature | None" = None,
    cap: "int | None" = None,
):
    """Search the bounded stream for a model and world satisfying the formula.

    Returns OracleSat on the first hit (its model verifies by construction:
    the hit is a formula_holds call), else NoModelWithinBounds with
    ``exhausted`` telling whether the stream ran out before any ``cap``.
    """
    spec = validate(spec)
    if sig is None:
        sig = Signature()
    _signature_check(f, sig)
    examined = 0
    for model in enumerate_models(sig, bounds, mode, spec):
        if cap is not None and examined >= cap:
            return NoModelWithinBounds(exhausted=False, examined=examined)
        examined += 1
        for w in model.worlds:
            if formula_holds(model, w, f):
                return OracleSat(model=model, world=w, examined=examined)
    return NoModelWithinBounds(exhausted=True, examined=examined)


def enumerate_relational_models(sig: Signature = Signature(), bounds: Bounds = Bounds()):
    """Yield every relational model within bounds: constant domain, rigid
    individuals, one accessibility relation per agent, same odometer ordering
    with relations fastest."""
    _check_bounds(bounds)
    for m in range(1, bounds.max_worlds + 1):
        worlds = tuple(range(m))
        wpairs = tuple(product(worlds, worlds))
        rel_options = [frozenset(p for j, p in enumerate(wpairs) if mask >> j & 1) for mask in range(1 << len(wpairs))]
        for size in range(1, bounds.max_domain + 1):
            domain = tuple(range(size))
            base = _world_interps(sig, size, with_inds=False)
            ind_maps = (
                [dict(zip(sig.individuals, choice)) for choice in product(domain, repeat=len(sig.individuals))]
                if sig.individuals
                else [{}]
            )
            for inds in ind_maps:
                for interps in product(base, repeat=m):
                    interp = {
                        w: WorldInterp(domain=wi.domain, concepts=wi.concepts, roles=wi.roles, inds=inds)
                        for w, wi in zip(worlds, interps)
                    }
                    for rels in product(rel_options, repeat=sig.agents):
                        yield RelationalModel(
                            worlds=worlds,
                            agents=sig.agents,
                            rel=dict(zip(range(1, sig.agents + 1), rels)),
                            interp=interp,
                        )


def relational_sat_by_enumeration(
    f: Formula,
    bounds: Bounds = Bounds(),
    sig: "Signature | None" = None,
    cap: "int | None" = None,
):
    if sig is None:
        sig = Signature()
    _signature_check(f, sig)
    examined = 0
    for model in enumerate_relational_models(sig, bounds):
        if cap is not None and examined >= cap:
            return NoModelWithinBounds(exhausted=False, examined=examined)
        examined += 1
        for w in model.worlds:
            if relational_formula_holds(model, w, f):
                return OracleSat(model=model, world=w, examined=examined)
    return NoModelWithinBounds(exhausted=True, examined=examined)
