"""Finite posets on players 1..n and their down-sets.

Players are numbered 1..n externally.  A coalition is an int bitmask in
which bit k-1 stands for player k; the empty coalition is 0.  This 1-based
player / 0-based bit convention is fixed here and relied on everywhere else.
"""

from __future__ import annotations

from .errors import CycleError

__all__ = [
    "Poset",
    "poset_from_covers",
    "poset_from_dict",
    "poset_to_dict",
    "mask_from_players",
    "players_from_mask",
]


def mask_from_players(players, n):
    """Coalition mask for an iterable of players, each in 1..n."""
    mask = 0
    for p in players:
        if not 1 <= p <= n:
            raise IndexError(f"player {p} out of range 1..{n}")
        mask |= 1 << (p - 1)
    return mask


def players_from_mask(mask):
    """Sorted list of the players in a coalition mask."""
    out = []
    player = 1
    while mask:
        if mask & 1:
            out.append(player)
        mask >>= 1
        player += 1
    return out


class Poset:
    """Partial order on {1..n}, stored as the full reflexive closure.

    The internal table keeps, for every player, the bitmask of everything
    below it, so order queries are O(1).  Instances are immutable and can be
    shared freely between threads.  Construct through poset_from_covers.
    """

    __slots__ = ("n", "_down")

    def __init__(self, n, down):
        self.n = n
        self._down = tuple(down)

    def _check_player(self, i):
        if not 1 <= i <= self.n:
            raise IndexError(f"player {i} out of range 1..{self.n}")

    def _check_mask(self, mask):
        if not 0 <= mask < (1 << self.n):
            raise ValueError(f"coalition mask {mask} does not fit {self.n} players")

    def leq(self, i, j):
        """True iff player i lies below (or equals) player j."""
        self._check_player(i)
        self._check_player(j)
        return bool(self._down[j - 1] >> (i - 1) & 1)

    def comparable(self, i, j):
        return self.leq(i, j) or self.leq(j, i)

    def principal_down_set(self, i):
        """Mask of everything below player i, player i included."""
        self._check_player(i)
        return self._down[i - 1]

    def strict_down_set(self, i):
        """Mask of everything strictly below player i."""
        self._check_player(i)
        return self._down[i - 1] & ~(1 << (i - 1))

    def is_down_set(self, mask):
        """True iff the coalition is closed downward under the order."""
        self._check_mask(mask)
        m = mask
        while m:
            b = m & -m
            if self._down[b.bit_length() - 1] & ~mask:
                return False
            m ^= b
        return True

    def covers(self):
        """Cover pairs (i, j), i immediately below j: the transitive reduction."""
        out = []
        for j in range(self.n):
            strict = self._down[j] & ~(1 << j)
            m = strict
            while m:
                b = m & -m
                i = b.bit_length() - 1
                m ^= b
                rest = strict & ~b
                blocked = False
                mm = rest
                while mm:
                    bb = mm & -mm
                    k = bb.bit_length() - 1
                    mm ^= bb
                    if self._down[k] >> i & 1:
                        blocked = True
                        break
                if not blocked:
                    out.append((i + 1, j + 1))
        out.sort()
        return out

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.n == other.n and self._down == other._down

    def __hash__(self):
        return hash((self.n, self._down))

    def __repr__(self):
        return f"Poset(n={self.n}, covers={self.covers()!r})"


def poset_from_covers(n, covers):
    """Poset from cover pairs (i, j) read as "i below j".

    Takes the reflexive-transitive closure, then rejects any antisymmetry
    violation with CycleError.  Out-of-range players raise IndexError.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    down = [1 << k for k in range(n)]
    for i, j in covers:
        for p in (i, j):
            if not isinstance(p, int) or not 1 <= p <= n:
                raise IndexError(f"player {p} out of range 1..{n}")
        if i == j:
            raise CycleError(f"cover ({i}, {j}) relates a player to itself")
        down[j - 1] |= 1 << (i - 1)
    changed = True
    while changed:
        changed = False
        for k in range(n):
            acc = down[k]
            m = acc
            while m:
                b = m & -m
                acc |= down[b.bit_length() - 1]
                m ^= b
            if acc != down[k]:
                down[k] = acc
                changed = True
    for j in range(n):
        for i in range(j + 1, n):
            if down[j] >> i & 1 and down[i] >> j & 1:
                raise CycleError(f"players {i + 1} and {j + 1} lie below each other")
    return Poset(n, down)


def poset_from_dict(data):
    """Poset from the file form {"n": int, "covers": [[i, j], ...]}."""
    if "n" not in data:
        raise ValueError('poset data needs an "n" entry')
    covers = data.get("covers", [])
    return poset_from_covers(int(data["n"]), [tuple(c) for c in covers])


def poset_to_dict(p):
    """File form of a poset; covers are the transitive reduction."""
    return {"n": p.n, "covers": [list(c) for c in p.covers()]}
