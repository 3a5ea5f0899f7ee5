"""Marginal vectors, cores, tight families, and payoff-array reconstruction.

A payoff vector is a tuple of n Fractions, one per player.  The payoff array
of a game collects its marginal vector along every maximal chain; it is
linear and injective in the game, and a configuration of vectors comes from
a 0-normalized game exactly when the two consistency conditions checked in
game_from_configuration hold.
"""

from __future__ import annotations

from fractions import Fraction
from dataclasses import dataclass

from .errors import ConsistencyError, NotSupermodularError
from .game import Game, is_supermodular
from .poset import players_from_mask

__all__ = [
    "payoff",
    "marginal_vector",
    "tight_sets",
    "zero_coords",
    "TightFamily",
    "tight_family",
    "point_configuration",
    "core_contains",
    "core_vertices",
    "lower_envelope",
    "game_from_configuration",
    "unboundedness_witness",
    "core_h_representation",
]


def payoff(x, mask):
    """Total payoff x(A) of the coalition mask under the vector x."""
    total = Fraction(0)
    m = mask
    while m:
        b = m & -m
        total += x[b.bit_length() - 1]
        m ^= b
    return total


def marginal_vector(v, chain):
    """Increments of v along a maximal chain, indexed by player."""
    x = [Fraction(0)] * v.lattice.poset.n
    prev = Fraction(0)
    for step, player in enumerate(chain.perm, start=1):
        cur = v.value(chain.sets[step])
        x[player - 1] = cur - prev
        prev = cur
    return tuple(x)


def tight_sets(v, chain):
    """Elements where v meets the marginal vector of the chain."""
    x = marginal_vector(v, chain)
    return frozenset(a for a in v.lattice.elements if v.value(a) == payoff(x, a))


def zero_coords(v, chain):
    """Players whose marginal increment along the chain is zero."""
    x = marginal_vector(v, chain)
    return frozenset(i + 1 for i, val in enumerate(x) if not val)


@dataclass(frozen=True)
class TightFamily:
    """Per permutation: the tight elements and the zero-increment players."""

    perms: tuple
    tight: dict
    zeros: dict


def tight_family(v):
    """TightFamily of v over all maximal chains."""
    chains = v.lattice.maximal_chains()
    tight = {}
    zeros = {}
    for c in chains:
        x = marginal_vector(v, c)
        tight[c.perm] = frozenset(
            a for a in v.lattice.elements if v.value(a) == payoff(x, a)
        )
        zeros[c.perm] = frozenset(i + 1 for i, val in enumerate(x) if not val)
    return TightFamily(tuple(c.perm for c in chains), tight, zeros)


def point_configuration(v):
    """The payoff array of v: marginal vector keyed by permutation."""
    return {c.perm: marginal_vector(v, c) for c in v.lattice.maximal_chains()}


def core_contains(v, x):
    """True iff x is efficient and dominates v on every element."""
    x = tuple(Fraction(t) for t in x)
    if payoff(x, v.lattice.top) != v.value(v.lattice.top):
        return False
    return all(payoff(x, a) >= v.value(a) for a in v.lattice.elements)


def core_vertices(v):
    """Vertices of the core of a supermodular game: the distinct marginal
    vectors, in lexicographic order."""
    if not is_supermodular(v):
        raise NotSupermodularError(
            "core vertices coincide with the marginal vectors only for"
            " supermodular games"
        )
    vecs = {marginal_vector(v, c) for c in v.lattice.maximal_chains()}
    return sorted(vecs)


def lower_envelope(v, mask):
    """Minimum of x(A) over the marginal vectors of all chains."""
    v.lattice.position(mask)
    return min(
        payoff(marginal_vector(v, c), mask) for c in v.lattice.maximal_chains()
    )


def _format_perm(perm):
    if all(p <= 9 for p in perm):
        return "".join(str(p) for p in perm)
    return ",".join(str(p) for p in perm)


def game_from_configuration(lattice, config):
    """The 0-normalized game whose payoff array equals config.

    config maps every compatible permutation to a payoff vector.  Raises
    ConsistencyError when two chains disagree on a shared coalition total
    ("shared-element") or when the coordinate added at a principal down-set
    is nonzero ("zero-coordinate").
    """
    chains = lattice.maximal_chains()
    if set(config) != {c.perm for c in chains}:
        raise ValueError(
            "configuration domain must be exactly the compatible permutations"
        )
    n = lattice.poset.n
    totals = {}
    for c in chains:
        y = config[c.perm]
        if len(y) != n:
            raise ValueError(f"vector for {_format_perm(c.perm)} must have {n} entries")
        run = Fraction(0)
        for step, player in enumerate(c.perm, start=1):
            run += Fraction(y[player - 1])
            a = c.sets[step]
            known = totals.get(a)
            if known is None:
                totals[a] = (run, c.perm)
            elif known[0] != run:
                raise ConsistencyError(
                    f"chains {_format_perm(known[1])} and {_format_perm(c.perm)}"
                    f" disagree on coalition {players_from_mask(a)}"
                    f" ({known[0]} vs {run})",
                    kind="shared-element",
                    witness=(known[1], c.perm, a),
                )
    for c in chains:
        y = config[c.perm]
        for step, player in enumerate(c.perm, start=1):
            if c.sets[step] == lattice.poset.principal_down_set(player):
                if Fraction(y[player - 1]):
                    raise ConsistencyError(
                        f"chain {_format_perm(c.perm)} reaches the principal"
                        f" down-set of player {player}, whose coordinate must"
                        f" be zero (got {y[player - 1]})",
                        kind="zero-coordinate",
                        witness=(c.perm, player),
                    )
    vals = [Fraction(0)]
    for a in lattice.elements[1:]:
        if a not in totals:
            raise RuntimeError("element missed by every maximal chain")
        vals.append(totals[a][0])
    return Game(lattice, vals)


def unboundedness_witness(lattice):
    """A nonzero recession direction of the core, or None on flat posets.

    For any strict relation i below j, the vector e_i - e_j sums to zero on
    the full set and is nonnegative on every down-set.
    """
    p = lattice.poset
    for i in range(1, p.n + 1):
        for j in range(1, p.n + 1):
            if i != j and p.leq(i, j):
                x = [Fraction(0)] * p.n
                x[i - 1] = Fraction(1)
                x[j - 1] = Fraction(-1)
                return tuple(x)
    return None


def core_h_representation(v):
    """The core as one efficiency equality plus one inequality per element.

    Rows are 0/1 player-coefficient lists; values stay exact Fractions.
    """
    n = v.lattice.poset.n
    top = v.lattice.top

    def row(mask):
        return [1 if mask >> k & 1 else 0 for k in range(n)]

    inequalities = [
        {"coalition": players_from_mask(a), "coeffs": row(a), "rhs": v.value(a)}
        for a in v.lattice.elements
        if a not in (0, top)
    ]
    return {
        "equality": {"coalition": players_from_mask(top), "coeffs": row(top), "rhs": v.value(top)},
        "inequalities": inequalities,
    }
