"""The lattice of down-sets of a poset: elements, chains, Moebius function.

Meet and join of down-sets are plain intersection and union of masks, so the
lattice stores only the element list (canonically ordered), the
join-irreducible elements with their unique lower covers, and lazily built
caches for chains and Moebius values.  Everything is exact integer work.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import NotComparableError, SizeError
from .poset import Poset, players_from_mask

__all__ = [
    "MaximalChain",
    "DownSetLattice",
    "build_lattice",
    "addable_pairs",
    "DEFAULT_MAX_ELEMENTS",
    "DEFAULT_MAX_CHAINS",
]

DEFAULT_MAX_ELEMENTS = 1 << 20
DEFAULT_MAX_CHAINS = 10**7


class MaximalChain(NamedTuple):
    """A maximal chain of down-sets together with its compatible permutation.

    sets runs from the empty coalition to the full player set, one player
    added per step; perm[k] is the player added at step k+1.
    """

    sets: tuple
    perm: tuple


def _canonical_key(mask):
    return (mask.bit_count(), mask)


class DownSetLattice:
    """All down-sets of a poset, ordered by inclusion.

    elements is a tuple of coalition masks sorted by (cardinality, mask
    value); index 0 is the empty set and the last entry is the full set.
    Instances are immutable after construction; the internal caches are
    write-once and safe for concurrent readers.
    """

    def __init__(self, poset, max_elements=DEFAULT_MAX_ELEMENTS):
        if not isinstance(poset, Poset):
            raise TypeError("poset required")
        self.poset = poset
        n = poset.n
        strict = [poset.strict_down_set(i + 1) for i in range(n)]
        seen = {0}
        queue = [0]
        head = 0
        while head < len(queue):
            a = queue[head]
            head += 1
            for i in range(n):
                bit = 1 << i
                if a & bit or strict[i] & ~a:
                    continue
                b = a | bit
                if b not in seen:
                    seen.add(b)
                    if len(seen) > max_elements:
                        raise SizeError(
                            f"lattice exceeds the cap of {max_elements} elements"
                        )
                    queue.append(b)
        self.elements = tuple(sorted(seen, key=_canonical_key))
        self.index = {a: k for k, a in enumerate(self.elements)}
        self.top = self.elements[-1]
        self.bottom = 0
        # join-irreducible elements are exactly the principal down-sets;
        # each one covers the set obtained by dropping its top player
        self._ji_pred = {}
        for i in range(1, n + 1):
            a = poset.principal_down_set(i)
            self._ji_pred[a] = a & ~(1 << (i - 1))
        if len(self._ji_pred) != n:
            raise RuntimeError("principal down-sets are not pairwise distinct")
        self.join_irreducibles = tuple(sorted(self._ji_pred, key=_canonical_key))
        # every element must be recovered from the principal down-sets it
        # contains; this guards the closure enumeration above
        down = [poset.principal_down_set(i + 1) for i in range(n)]
        for a in self.elements:
            members = 0
            for i in range(n):
                if not down[i] & ~a:
                    members |= 1 << i
            if members != a:
                raise RuntimeError("down-set enumeration produced a non-down-set")
        self._addable = {}
        self._chains = None
        self._mu_fast = {}
        self._mu_rec = {}
        self._pair_table = None

    # -- basic structure ----------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def __contains__(self, mask):
        return mask in self.index

    def __eq__(self, other):
        if not isinstance(other, DownSetLattice):
            return NotImplemented
        return self.poset == other.poset

    __hash__ = None

    def __repr__(self):
        return f"DownSetLattice(n={self.poset.n}, size={len(self.elements)})"

    def position(self, mask):
        """Canonical index of an element; ValueError for non-elements."""
        try:
            return self.index[mask]
        except KeyError:
            raise ValueError(
                f"coalition {players_from_mask(mask)} is not a down-set of the poset"
            ) from None

    def join_irreducible_predecessor(self, a):
        """The unique lower cover of a join-irreducible element."""
        try:
            return self._ji_pred[a]
        except KeyError:
            raise ValueError(
                f"coalition {players_from_mask(a)} is not join-irreducible"
            ) from None

    def addable_mask(self, a):
        """Mask of players that can be added to the down-set a."""
        cached = self._addable.get(a)
        if cached is None:
            self.position(a)
            p = self.poset
            out = 0
            for i in range(p.n):
                bit = 1 << i
                if a & bit:
                    continue
                if p.strict_down_set(i + 1) & ~a:
                    continue
                out |= bit
            self._addable[a] = cached = out
        return cached

    def upper_covers(self, a):
        return [a | b for b in _bits(self.addable_mask(a))]

    def lower_covers(self, a):
        self.position(a)
        p = self.poset
        out = []
        for b in _bits(a):
            i = b.bit_length()
            up_in_a = False
            for c in _bits(a & ~b):
                if p.leq(i, c.bit_length()):
                    up_in_a = True
                    break
            if not up_in_a:
                out.append(a & ~b)
        return out

    def birkhoff_map(self, a):
        """The join-irreducible elements below a, canonically ordered."""
        self.position(a)
        p = self.poset
        return tuple(
            sorted((p.principal_down_set(i) for i in players_from_mask(a)), key=_canonical_key)
        )

    def interval(self, a, b):
        """Elements c with a <= c <= b, canonically ordered."""
        self.position(a)
        self.position(b)
        if a & ~b:
            raise NotComparableError(
                f"{players_from_mask(a)} is not contained in {players_from_mask(b)}"
            )
        return [c for c in self.elements if not (a & ~c or c & ~b)]

    def is_boolean_interval(self, a, b):
        """True iff [a, b] has the full 2^|b\\a| elements."""
        width = (b & ~a).bit_count()
        return len(self.interval(a, b)) == 1 << width

    # -- Moebius function ----------------------------------------------------

    def mobius(self, x, y, *, recursive=False):
        """Moebius value of the ordered pair (x, y); 0 when x is not below y.

        The default path uses the closed form for distributive lattices:
        a sign when [x, y] is Boolean and 0 otherwise.  recursive=True keeps
        the defining recursion available as a cross-check.
        """
        self.position(x)
        self.position(y)
        if x == y:
            return 1
        if x & ~y:
            return 0
        if recursive:
            return self._mobius_recursive(x, y)
        cached = self._mu_fast.get((x, y))
        if cached is None:
            if self.is_boolean_interval(x, y):
                cached = -1 if (y & ~x).bit_count() & 1 else 1
            else:
                cached = 0
            self._mu_fast[(x, y)] = cached
        return cached

    def _mobius_recursive(self, x, y):
        cached = self._mu_rec.get((x, y))
        if cached is not None:
            return cached
        total = 0
        for z in self.elements:
            if z != y and not (x & ~z or z & ~y):
                total += 1 if z == x else self._mobius_recursive(x, z)
        value = -total
        self._mu_rec[(x, y)] = value
        return value

    # -- chains ---------------------------------------------------------------

    def maximal_chains(self, max_chains=DEFAULT_MAX_CHAINS):
        """All maximal chains, in lexicographic order of their permutations.

        The count equals the number of order-compatible permutations; the
        walk aborts with SizeError if it exceeds max_chains.
        """
        if self._chains is None:
            chains = []
            sets = [0]
            perm = []

            def walk(a):
                if a == self.top:
                    if len(chains) >= max_chains:
                        raise SizeError(
                            f"more than {max_chains} maximal chains"
                        )
                    chains.append(MaximalChain(tuple(sets), tuple(perm)))
                    return
                for b in _bits(self.addable_mask(a)):
                    nxt = a | b
                    sets.append(nxt)
                    perm.append(b.bit_length())
                    walk(nxt)
                    sets.pop()
                    perm.pop()

            walk(0)
            self._chains = tuple(chains)
        if len(self._chains) > max_chains:
            raise SizeError(f"more than {max_chains} maximal chains")
        return self._chains

    def chain_from_perm(self, perm):
        """The maximal chain of a compatible permutation; ValueError otherwise."""
        perm = tuple(perm)
        n = self.poset.n
        if sorted(perm) != list(range(1, n + 1)):
            raise ValueError(f"{perm} is not a permutation of 1..{n}")
        sets = [0]
        a = 0
        for p in perm:
            bit = 1 << (p - 1)
            if not self.addable_mask(a) & bit:
                raise ValueError(
                    f"permutation {perm} is not compatible with the order"
                )
            a |= bit
            sets.append(a)
        return MaximalChain(tuple(sets), perm)

    # -- derived tables --------------------------------------------------------

    def incomparable_pairs(self):
        """Index quadruples (ia, ib, iunion, imeet) over incomparable pairs.

        Built once; used by the quadratic game predicates, so this table is
        only meant for desk-scale lattices.
        """
        if self._pair_table is None:
            els = self.elements
            idx = self.index
            table = []
            for ia in range(len(els)):
                a = els[ia]
                for ib in range(ia + 1, len(els)):
                    b = els[ib]
                    if not (a & ~b) or not (b & ~a):
                        continue
                    table.append((ia, ib, idx[a | b], idx[a & b]))
            self._pair_table = tuple(table)
        return self._pair_table


def _bits(mask):
    """Single-bit masks of mask, lowest first."""
    while mask:
        b = mask & -mask
        yield b
        mask ^= b


def build_lattice(poset, max_elements=None):
    """The down-set lattice of a poset, capped at max_elements."""
    if max_elements is None:
        max_elements = DEFAULT_MAX_ELEMENTS
    return DownSetLattice(poset, max_elements=max_elements)


def addable_pairs(lat):
    """Triples (a, i, j): a down-set with two distinct addable players, i < j.

    Canonical order: a in element order, then (i, j) ascending.
    """
    out = []
    for a in lat.elements:
        players = players_from_mask(lat.addable_mask(a))
        for x in range(len(players)):
            for y in range(x + 1, len(players)):
                out.append((a, players[x], players[y]))
    return out
