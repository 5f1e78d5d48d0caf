"""The family of neighbourhood logics, named by frame-condition letters.

A logic is a set of letters drawn from M, C, N, T, D, P, Q on top of the
always-present base E.  Two letter sets can carve out the same frame class;
the derivation rules below (each sound at frame level) identify them:

    M and D entail P;  N and D entail P;  T entails D and P;  C and P entail D.

Combining M with Q trivializes every neighbourhood map, and N together with Q
is outright contradictory, so both are rejected.  Grouping the remaining letter
sets by derivational closure yields exactly 39 distinct logics.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

#: Presentation order; also the tie-break order for canonical names.
LETTERS = ("M", "C", "N", "T", "D", "P", "Q")
_RANK = {letter: i for i, letter in enumerate(LETTERS)}


class InconsistentSpec(ValueError):
    """No frame at all satisfies the requested letters (N with Q)."""


class TrivializingSpec(ValueError):
    """The letters force every neighbourhood map empty (M with Q)."""


@dataclass(frozen=True)
class LogicSpec:
    """A validated logic.  ``letters`` is the literal request (without E);
    ``closure`` adds all derivable letters; ``canonical`` names the class."""

    letters: frozenset
    closure: frozenset
    canonical: str

    @property
    def name(self) -> str:
        return spec_name(self.letters)

    def __str__(self) -> str:
        return self.name

    def has(self, letter: str) -> bool:
        return letter in self.letters


def _parse_letters(spec: "str | frozenset | set | LogicSpec") -> frozenset:
    if isinstance(spec, LogicSpec):
        return spec.letters
    if isinstance(spec, (set, frozenset)):
        letters = {str(x).upper() for x in spec}
    else:
        letters = {ch.upper() for ch in str(spec).strip()}
    letters.discard("E")
    unknown = letters - set(LETTERS)
    if unknown:
        raise ValueError(f"unknown condition letters: {sorted(unknown)}")
    return frozenset(letters)


def derive_closure(letters: frozenset) -> frozenset:
    out = set(letters)
    while True:
        before = len(out)
        if "M" in out and "D" in out:
            out.add("P")
        if "N" in out and "D" in out:
            out.add("P")
        if "T" in out:
            out.update(("D", "P"))
        if "C" in out and "P" in out:
            out.add("D")
        if len(out) == before:
            return frozenset(out)


def spec_name(letters: frozenset) -> str:
    return "E" + "".join(letter for letter in LETTERS if letter in letters)


def validate(spec: "str | frozenset | set | LogicSpec") -> LogicSpec:
    """Check a letter set and return the validated logic.

    The empty set (or the bare string "E") denotes the base logic.  Letter
    order and case are irrelevant.
    """
    letters = _parse_letters(spec)
    if {"N", "Q"} <= letters:
        raise InconsistentSpec("no frame satisfies both N and Q")
    if {"M", "Q"} <= letters:
        raise TrivializingSpec("M with Q forces all neighbourhood maps empty")
    closure = derive_closure(letters)
    return LogicSpec(letters=letters, closure=closure, canonical=spec_name(_canonical_member(closure)))


def _canonical_member(closure: frozenset) -> frozenset:
    """Smallest letter set with the given closure; ties broken in LETTERS order."""
    base = sorted(closure, key=_RANK.__getitem__)
    best = None
    for size in range(len(base) + 1):
        for combo in combinations(base, size):
            cand = frozenset(combo)
            if derive_closure(cand) == closure:
                return cand
    raise AssertionError(f"closure {closure} has no generating subset")


def canonicalize(spec: "str | frozenset | set | LogicSpec") -> LogicSpec:
    """The representative logic of the same frame class.  Idempotent."""
    v = validate(spec)
    return validate(v.canonical)


def implies(stronger, weaker) -> bool:
    """Frame-class inclusion: every frame of ``stronger`` is one of ``weaker``."""
    return derive_closure(_parse_letters(stronger)) >= derive_closure(_parse_letters(weaker))


def all_valid_letter_sets() -> list[frozenset]:
    """Every admissible letter set, smallest first."""
    out = []
    for size in range(len(LETTERS) + 1):
        for combo in combinations(LETTERS, size):
            s = frozenset(combo)
            if {"N", "Q"} <= s or {"M", "Q"} <= s:
                continue
            out.append(s)
    return out


def enumerate_pantheon() -> list[LogicSpec]:
    """The 39 distinct logics, as canonical representatives.

    Derived from the closure rules, not hard-coded; the count is asserted.
    """
    by_closure: dict[frozenset, LogicSpec] = {}
    for letters in all_valid_letter_sets():
        closure = derive_closure(letters)
        if closure not in by_closure:
            by_closure[closure] = canonicalize(letters)
    reps = sorted(
        by_closure.values(),
        key=lambda s: (len(s.letters), tuple(_RANK[x] for x in sorted(s.letters, key=_RANK.__getitem__))),
    )
    assert len(reps) == 39, f"expected 39 logics, derived {len(reps)}"
    return reps


def node_members(spec: "str | frozenset | set | LogicSpec") -> list[LogicSpec]:
    """All admissible letter sets carving out the same frame class."""
    target = derive_closure(_parse_letters(spec))
    return [validate(s) for s in all_valid_letter_sets() if derive_closure(s) == target]
