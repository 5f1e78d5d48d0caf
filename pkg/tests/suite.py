"""Deterministic bounded-grammar formula suite shared by the test modules.

Enumerates NNF formulas over one agent, concept names A and B, role r and
individual a, with AST size at most 7 and modal depth at most 2.  Size
classes that would explode are thinned by a fixed stride, so the suite is
stable across runs without any RNG.
"""

from functools import lru_cache

from nnmdl.syntax import (
    BOT,
    CAnd,
    CBox,
    CDia,
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
    ast_size,
    is_nnf,
    modal_depth,
    subconcepts,
    subformulas,
)

MAX_SIZE = 7
MAX_DEPTH = 2
_QUOTA = {1: None, 2: None, 3: None, 4: 110, 5: 130, 6: 140, 7: 150}


def _concepts_by_size(limit: int):
    pools = {1: [CName("A"), CName("B"), TOP, BOT]}
    pools[2] = [CNeg(CName("A")), CNeg(CName("B"))]
    for c in pools[1]:
        pools[2] += [CExists("r", c), CForall("r", c), CBox(1, c), CDia(1, c)]
    for size in range(3, limit + 1):
        grown = []
        for c in pools[size - 1]:
            grown += [CExists("r", c), CForall("r", c)]
            if modal_depth(c) < MAX_DEPTH:
                grown += [CBox(1, c), CDia(1, c)]
        for ls in range(1, size - 1):
            for left in pools[ls]:
                for right in pools[size - 1 - ls]:
                    grown += [CAnd(left, right), COr(left, right)]
        pools[size] = grown
    return pools


def _formula_atoms(cpools):
    atoms = [FRole("r", "a", "a")]
    for size in sorted(cpools):
        for c in cpools[size]:
            if size + 2 <= MAX_SIZE:
                atoms.append(FCI(TOP, c))
            if size + 1 <= MAX_SIZE:
                atoms.append(FAssert(c, "a"))
    return atoms


@lru_cache(maxsize=1)
def formulas() -> tuple:
    cpools = _concepts_by_size(MAX_SIZE - 1)
    pools: dict[int, list] = {s: [] for s in range(1, MAX_SIZE + 1)}
    for atom in _formula_atoms(cpools):
        pools[ast_size(atom)].append(atom)
        negated = FNot(atom)
        if not isinstance(atom, FAssert) and ast_size(negated) <= MAX_SIZE:
            pools[ast_size(negated)].append(negated)
    for size in range(2, MAX_SIZE + 1):
        grown = []
        for f in pools[size - 1]:
            if modal_depth(f) < MAX_DEPTH:
                grown += [FBox(1, f), FDia(1, f)]
        for ls in range(1, size - 1):
            for left in pools[ls]:
                for right in pools[size - 1 - ls]:
                    grown += [FAnd(left, right), FOr(left, right)]
        pools[size].extend(grown)

    out: list = []
    seen = set()
    for size in range(1, MAX_SIZE + 1):
        fresh = []
        for f in pools[size]:
            if f not in seen and modal_depth(f) <= MAX_DEPTH:
                seen.add(f)
                fresh.append(f)
        quota = _QUOTA[size]
        if quota is not None and len(fresh) > quota:
            step = len(fresh) // quota
            fresh = fresh[::step][:quota]
        out.extend(fresh)
    assert all(is_nnf(f) and ast_size(f) <= MAX_SIZE for f in out)
    return tuple(out)


def has_modal_concept(f) -> bool:
    for g in subformulas(f):
        if isinstance(g, FCI):
            pool = [g.left, g.right]
        elif isinstance(g, FAssert):
            pool = [g.concept]
        else:
            continue
        for c0 in pool:
            for c in subconcepts(c0):
                if isinstance(c, (CBox, CDia)):
                    return True
    return False


@lru_cache(maxsize=1)
def formula_level_suite() -> tuple:
    """Suite members whose modalities, if any, sit on formulas only."""
    return tuple(f for f in formulas() if not has_modal_concept(f))
