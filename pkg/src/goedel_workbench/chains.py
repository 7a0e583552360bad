"""Chains (order types of propositional atoms between bot and top), chain
evaluation, the two chain normal forms with Delta, and chain-based
propositional validity."""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .formula import (
    BOT,
    TOP,
    And,
    Atom,
    Bottom,
    Delta,
    Formula,
    Implies,
    Or,
    TopF,
    conjunction,
    disjunction,
    has_quantifier,
    iff,
    less,
    neg,
    prop_atoms,
)


class ChainError(ValueError):
    pass


@dataclass(frozen=True)
class Chain:
    """Blocks from bottom to top.  ``blocks[0]`` holds the atoms equal to
    bot, ``blocks[-1]`` those equal to top; inner blocks are nonempty."""

    blocks: tuple

    def __post_init__(self) -> None:
        blocks = tuple(frozenset(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if len(blocks) < 2:
            raise ChainError("a chain has a bottom and a top block")
        if any(not b for b in blocks[1:-1]):
            raise ChainError("inner blocks must be nonempty")
        seen: set = set()
        for b in blocks:
            if seen & b:
                raise ChainError("atom in two blocks")
            seen |= b

    @property
    def top(self) -> int:
        return len(self.blocks) - 1

    @property
    def atoms(self) -> frozenset:
        return frozenset().union(*self.blocks)

    @property
    def levels(self) -> int:
        return len(self.blocks)

    def block_of(self, atom: str) -> int:
        for k, b in enumerate(self.blocks):
            if atom in b:
                return k
        raise ChainError(f"atom {atom} not in chain")

    def is_restricted(self) -> bool:
        return not self.blocks[-1]

    def sequence(self) -> list[tuple[Formula, int]]:
        """Bot, the atoms block by block, then top, each with its block."""
        out: list[tuple[Formula, int]] = [(BOT, 0)]
        for k, b in enumerate(self.blocks):
            out.extend((Atom(a), k) for a in sorted(b))
        out.append((TOP, self.top))
        return out

    def representative(self, k: int) -> Formula:
        if k == 0:
            return BOT
        if k == self.top:
            return TOP
        return Atom(min(self.blocks[k]))

    def __str__(self) -> str:
        parts = []
        for k, b in enumerate(self.blocks):
            names = sorted(b)
            if k == 0:
                names = ["bot"] + names
            if k == self.top:
                names = names + ["top"]
            parts.append(" == ".join(names))
        return " < ".join(parts)


def _ordered_partitions(items: tuple) -> Iterable[list[frozenset]]:
    if not items:
        yield []
        return
    for r in range(1, len(items) + 1):
        for first in itertools.combinations(items, r):
            rest = tuple(x for x in items if x not in first)
            for tail in _ordered_partitions(rest):
                yield [frozenset(first)] + tail


def enumerate_chains(
    atoms: Iterable[str], restricted: bool = False, max_levels: Optional[int] = None
) -> list[Chain]:
    """Every order type of ``atoms`` relative to bot < top, once each.

    ``restricted`` drops chains with an atom equal to top; ``max_levels``
    bounds the number of blocks (bottom and top blocks included).
    """
    return list(_chains(tuple(sorted(set(atoms))), restricted, max_levels))


@functools.lru_cache(maxsize=256)
def _chains(atoms: tuple, restricted: bool, max_levels: Optional[int]) -> tuple:
    out = []
    for r in range(len(atoms) + 1):
        for bottom in itertools.combinations(atoms, r):
            rest = tuple(a for a in atoms if a not in bottom)
            for t in range(1 if restricted else len(rest) + 1):
                for top in itertools.combinations(rest, t):
                    middle = tuple(a for a in rest if a not in top)
                    for parts in _ordered_partitions(middle):
                        if max_levels is not None and len(parts) + 2 > max_levels:
                            continue
                        out.append(Chain((frozenset(bottom), *parts, frozenset(top))))
    out.sort(key=_chain_key)
    return tuple(out)


def _chain_key(c: Chain):
    return tuple(tuple(sorted(b)) for b in c.blocks), c.levels


def psi_eval(f: Formula, c: Chain) -> int:
    """Block holding the value of quantifier-free ``f`` under the chain."""
    if isinstance(f, Atom):
        if f.args:
            raise ChainError("chains evaluate propositional atoms only")
        return c.block_of(f.pred)
    if isinstance(f, Bottom):
        return 0
    if isinstance(f, TopF):
        return c.top
    if isinstance(f, And):
        return min(psi_eval(f.left, c), psi_eval(f.right, c))
    if isinstance(f, Or):
        return max(psi_eval(f.left, c), psi_eval(f.right, c))
    if isinstance(f, Implies):
        a, b = psi_eval(f.left, c), psi_eval(f.right, c)
        return c.top if a <= b else b
    if isinstance(f, Delta):
        return c.top if psi_eval(f.body, c) == c.top else 0
    raise ChainError("chain evaluation needs a quantifier-free formula")


def chain_formula(c: Chain, with_delta: bool = True) -> Formula:
    """The chain as a formula.

    With Delta the formula is exact: value 1 under interpretations realising
    the chain and 0 otherwise.  Without Delta (restricted semantics) it takes
    value 1 exactly on the chain; strict steps ``a`` below ``b`` are written
    ``(b < a)``.
    """
    seq = c.sequence()
    parts = []
    for (a, ka), (b, kb) in zip(seq, seq[1:]):
        if ka == kb:
            parts.append(Delta(iff(a, b)) if with_delta else iff(a, b))
        else:
            parts.append(neg(Delta(Implies(b, a))) if with_delta else less(b, a))
    return conjunction(parts)


def _atoms_of(f: Formula, atoms: Optional[Iterable[str]]) -> list[str]:
    if has_quantifier(f):
        raise ChainError("chain normal forms need a quantifier-free formula")
    return sorted(set(atoms) if atoms is not None else set(prop_atoms(f)))


def cnf_delta_1(f: Formula, atoms: Optional[Iterable[str]] = None) -> Formula:
    """Disjunction over all chains of (chain and value of f on the chain)."""
    parts = []
    for c in enumerate_chains(_atoms_of(f, atoms)):
        parts.append(And(chain_formula(c, True), c.representative(psi_eval(f, c))))
    return disjunction(parts)


def cnf_delta_2(f: Formula, atoms: Optional[Iterable[str]] = None) -> Formula:
    """Restricted-semantics pruning of the first form: chains on which f is
    top are kept bare, all other disjuncts are deleted."""
    parts = []
    for c in enumerate_chains(_atoms_of(f, atoms), restricted=True):
        if psi_eval(f, c) == c.top:
            parts.append(chain_formula(c, False))
    return disjunction(parts)


def decide_valid_prop(f: Formula, levels: Optional[int] = None) -> bool:
    """Validity over infinite truth sets, or over V_m when ``levels=m``."""
    atoms = _atoms_of(f, None)
    return all(psi_eval(f, c) == c.top for c in _chains(tuple(atoms), False, levels))


def countermodel_chain(f: Formula, levels: Optional[int] = None) -> Optional[Chain]:
    for c in enumerate_chains(_atoms_of(f, None), max_levels=levels):
        if psi_eval(f, c) != c.top:
            return c
    return None


def restricted_equivalent(g: Formula, h: Formula, atoms: Optional[Iterable[str]] = None) -> bool:
    """g and h take value 1 on the same restricted chains."""
    names = set(atoms) if atoms is not None else set(prop_atoms(g)) | set(prop_atoms(h))
    return all(
        (psi_eval(g, c) == c.top) == (psi_eval(h, c) == c.top)
        for c in enumerate_chains(names, restricted=True)
    )


def realize(c: Chain) -> dict:
    """A rational assignment realising the chain: block k gets k/top."""
    from fractions import Fraction

    return {a: Fraction(k, c.top) for k, b in enumerate(c.blocks) for a in b}
