"""Geometry of the supermodular cone: extremality, facets, rays, faces.

All computations happen inside the 0-normalized subspace, where the value of
a join-irreducible element equals the value of its unique lower cover.  The
free coordinates are therefore the elements that are neither empty nor
join-irreducible, and their count is the dimension of the cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import qlin
from .errors import LatticeMismatchError, NotSupermodularError, SizeError
from .game import Game, is_supermodular, zero_normalize
from .lattice import addable_pairs
from .marginals import marginal_vector, payoff, tight_family
from .poset import players_from_mask

__all__ = [
    "EqualityPair",
    "FacetTriple",
    "CoreStructure",
    "equality_pairs",
    "payoff_equality_system",
    "game_equality_system",
    "is_extreme",
    "is_extreme_via_games",
    "facet_triples",
    "facet_witness",
    "extreme_rays",
    "cone_dimension",
    "core_structure",
    "face_compare",
    "double_description",
    "DEFAULT_MAX_CONE_ELEMENTS",
]

DEFAULT_MAX_CONE_ELEMENTS = 64


@dataclass(frozen=True, order=True)
class EqualityPair:
    """Unordered incomparable pair on which a game happens to be modular.

    a precedes b in the canonical (cardinality, mask) element order.
    """

    a: int
    b: int


@dataclass(frozen=True)
class FacetTriple:
    """A down-set with two addable players; carries one facet inequality."""

    base: int
    i: int
    j: int

    def masks(self):
        bi = 1 << (self.i - 1)
        bj = 1 << (self.j - 1)
        return self.base | bi | bj, self.base, self.base | bi, self.base | bj

    def value(self, game):
        """Slack of the inequality at a game; nonnegative iff satisfied."""
        both, base, wi, wj = self.masks()
        return game.value(both) + game.value(base) - game.value(wi) - game.value(wj)

    def render(self):
        """Human form such as "v(234) + v(2) >= v(23) + v(24)"."""
        both, base, wi, wj = self.masks()

        def term(mask):
            return "v(" + "".join(str(p) for p in players_from_mask(mask)) + ")"

        lhs = [term(both)] + ([term(base)] if base else [])
        rhs = [term(wi), term(wj)]
        return " + ".join(lhs) + " >= " + " + ".join(rhs)


def equality_pairs(v):
    """All incomparable pairs where v is modular, canonically ordered."""
    els = v.lattice.elements
    vals = v.values
    out = []
    for ia, ib, iu, ii in v.lattice.incomparable_pairs():
        if vals[iu] + vals[ii] == vals[ia] + vals[ib]:
            out.append(EqualityPair(els[ia], els[ib]))
    return out


def _normalized(v):
    if not is_supermodular(v):
        raise NotSupermodularError("extremality is defined for supermodular games")
    w, _ = zero_normalize(v)
    return w


def payoff_equality_system(v, *, reduced=True):
    """Linear system on per-permutation payoff vectors; returns (rows, ncols).

    Unknowns are laid out permutation-major: column k*n + (i-1) is the
    coordinate of player i under the k-th permutation in chain order.  Rows
    equate coalition totals across permutations sharing a tight element and
    pin the zero-increment coordinates.  The game spans an extreme ray of
    the supermodular cone exactly when the solution space of this system is
    one line.

    With reduced=True the pairwise total equations per element are replaced
    by a chain of differences and the pinned columns are eliminated, which
    leaves the solution dimension unchanged.
    """
    w = _normalized(v)
    lat = w.lattice
    n = lat.poset.n
    chains = lat.maximal_chains()
    margs = [marginal_vector(w, c) for c in chains]
    ncols = n * len(chains)

    by_element = {}
    for k, x in enumerate(margs):
        for ei, a in enumerate(lat.elements):
            if a and w.values[ei] == payoff(x, a):
                by_element.setdefault(ei, []).append(k)
    pinned = set()
    for k, x in enumerate(margs):
        for i, val in enumerate(x):
            if not val:
                pinned.add(k * n + i)

    rows = []

    def total_row(ei, k, l):
        row = [0] * ncols
        for p in players_from_mask(lat.elements[ei]):
            row[k * n + p - 1] += 1
            row[l * n + p - 1] -= 1
        return row

    for ei in sorted(by_element):
        ks = by_element[ei]
        if len(ks) < 2:
            continue
        if reduced:
            pairs = zip(ks, ks[1:])
        else:
            pairs = ((ks[x], ks[y]) for x in range(len(ks)) for y in range(x + 1, len(ks)))
        for k, l in pairs:
            rows.append(total_row(ei, k, l))

    if not reduced:
        for col in sorted(pinned):
            row = [0] * ncols
            row[col] = 1
            rows.append(row)
        return rows, ncols

    keep = [c for c in range(ncols) if c not in pinned]
    compressed = []
    seen = set()
    for row in rows:
        short = tuple(row[c] for c in keep)
        if any(short) and short not in seen:
            seen.add(short)
            compressed.append(list(short))
    return compressed, len(keep)


def is_extreme(v, *, reduced=True):
    """Extremality of the ray spanned by the 0-normalization of v.

    The zero game (hence any modular game) is non-extreme by convention.
    """
    w = _normalized(v)
    if w.is_zero():
        return False
    rows, ncols = payoff_equality_system(w, reduced=reduced)
    return ncols - qlin.rank(rows) == 1


def _free_coordinates(lat):
    """Free coordinates of the 0-normalized subspace.

    Returns (free, exprs): free lists the elements that are neither empty
    nor join-irreducible; exprs maps every element to its integer
    coefficient vector over those coordinates (join-irreducible values chain
    down to their lower covers).
    """
    cached = getattr(lat, "_free_coords", None)
    if cached is not None:
        return cached
    ji = set(lat.join_irreducibles)
    free = [a for a in lat.elements[1:] if a not in ji]
    pos = {a: k for k, a in enumerate(free)}
    d = len(free)
    exprs = {0: tuple([0] * d)}
    for a in lat.elements[1:]:
        if a in ji:
            exprs[a] = exprs[lat.join_irreducible_predecessor(a)]
        else:
            unit = [0] * d
            unit[pos[a]] = 1
            exprs[a] = tuple(unit)
    lat._free_coords = (free, exprs)
    return free, exprs


def game_equality_system(v):
    """Modularity constraints of v on the free coordinates; returns (rows, d).

    A 0-normalized game satisfying all of them is a multiple of v exactly
    when v spans an extreme ray, so the solution dimension mirrors
    payoff_equality_system.
    """
    w = _normalized(v)
    free, exprs = _free_coordinates(w.lattice)
    d = len(free)
    rows = []
    seen = set()
    for pair in equality_pairs(w):
        u = exprs[pair.a | pair.b]
        m = exprs[pair.a & pair.b]
        ea = exprs[pair.a]
        eb = exprs[pair.b]
        row = tuple(u[k] + m[k] - ea[k] - eb[k] for k in range(d))
        if any(row) and row not in seen:
            seen.add(row)
            rows.append(list(row))
    return rows, d


def is_extreme_via_games(v):
    """Extremality via the space of games modular on the equality pairs of v."""
    w = _normalized(v)
    if w.is_zero():
        return False
    rows, d = game_equality_system(w)
    return d - qlin.rank(rows) == 1


def facet_triples(lat):
    """The facet-defining triples (base, i, j), canonically ordered."""
    return [FacetTriple(a, i, j) for a, i, j in addable_pairs(lat)]


def facet_witness(lat, triple, eps=Fraction(1)):
    """Game built to violate the inequality of the given triple.

    Values: eps at base+i; zero strictly below base+i, at base+j, and
    strictly above base+i; -eps everywhere else.  On the three-player
    Boolean lattice each witness satisfies every other facet inequality,
    so the facet description is non-redundant there.  On larger Boolean
    lattices this construction is weaker than that: a witness whose base
    is nonempty and leaves some player outside base+{i,j} also violates
    one foreign inequality (see the facet tests for the four-player case).
    """
    _, base, wi, _wj = triple.masks()
    vals = []
    for b in lat.elements:
        if b == wi:
            vals.append(eps)
        elif b & wi == b or b == _wj or b | wi == b:
            vals.append(Fraction(0))
        else:
            vals.append(-eps)
    return Game(lat, vals)


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _reduce(vec):
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g > 1:
        return tuple(x // g for x in vec)
    return tuple(vec)


def double_description(rows, dim):
    """Extreme rays of the pointed cone {z in Q^dim : row . z >= 0}.

    Insertion algorithm over exact integers.  A basis of the ambient space
    acts as the initial lineality: a constraint that meets it pivots one
    basis vector out and turns it into a ray; once orthogonal to the
    remaining lineality, constraints split the rays by sign and adjacent
    plus/minus pairs are combined.  Adjacency is the algebraic test: the
    constraints processed so far that are tight at both rays must have rank
    dim - |lineality| - 2.  Raises ValueError if a lineality direction
    survives every constraint (non-pointed input).
    """
    lin = [[1 if k == t else 0 for k in range(dim)] for t in range(dim)]
    rays = []
    processed = []
    for a in rows:
        sdots = [_dot(a, b) for b in lin]
        pivot = next((t for t, s in enumerate(sdots) if s), None)
        if pivot is not None:
            b0 = lin.pop(pivot)
            s0 = sdots.pop(pivot)
            lin = [
                list(_reduce([s0 * x - sb * y for x, y in zip(b, b0)]))
                for b, sb in zip(lin, sdots)
            ]
            sign = 1 if s0 > 0 else -1
            new_rays = []
            for r in rays:
                t = _dot(a, r)
                new_rays.append(
                    _reduce([abs(s0) * x - sign * t * y for x, y in zip(r, b0)])
                )
            if sign < 0:
                b0 = [-x for x in b0]
            new_rays.append(_reduce(b0))
            rays = new_rays
        else:
            dots = [_dot(a, r) for r in rays]
            plus = [(r, t) for r, t in zip(rays, dots) if t > 0]
            zero = [r for r, t in zip(rays, dots) if t == 0]
            minus = [(r, t) for r, t in zip(rays, dots) if t < 0]
            if minus:
                target = dim - len(lin) - 2

                def tight_mask(r):
                    mask = 0
                    for idx, p in enumerate(processed):
                        if _dot(p, r) == 0:
                            mask |= 1 << idx
                    return mask

                plus_masks = [tight_mask(r) for r, _ in plus]
                minus_masks = [tight_mask(r) for r, _ in minus]
                combos = []
                for (rp, tp), zp in zip(plus, plus_masks):
                    for (rm, tm), zm in zip(minus, minus_masks):
                        common = zp & zm
                        if common.bit_count() < target:
                            continue
                        zrows = [
                            processed[idx]
                            for idx in range(len(processed))
                            if common >> idx & 1
                        ]
                        if qlin.rank(zrows) == target:
                            combos.append(
                                _reduce([tp * xm - tm * xp for xp, xm in zip(rp, rm)])
                            )
                rays = [r for r, _ in plus] + zero + combos
        processed.append(a)
    if lin:
        raise ValueError("the inequality system leaves a lineality space")
    return rays


def extreme_rays(lat, *, max_elements=DEFAULT_MAX_CONE_ELEMENTS, verify=True):
    """Minimal integer generators of the extreme rays of the supermodular
    cone of 0-normalized games, via double description on the facet rows.

    Output is sorted by value tuple.  With verify=True every generator is
    re-checked by both extremality tests before being returned.
    """
    if len(lat.elements) > max_elements:
        raise SizeError(
            f"ray enumeration capped at {max_elements} lattice elements;"
            " pass max_elements to raise the cap"
        )
    free, exprs = _free_coordinates(lat)
    d = len(free)
    if d == 0:
        return []
    rows = []
    for t in facet_triples(lat):
        both, base, wi, wj = t.masks()
        eu, eb, ei, ej = exprs[both], exprs[base], exprs[wi], exprs[wj]
        rows.append([eu[k] + eb[k] - ei[k] - ej[k] for k in range(d)])
    games = []
    for z in double_description(rows, d):
        vals = list(_reduce([_dot(exprs[a], z) for a in lat.elements]))
        games.append(Game(lat, vals))
    games.sort(key=lambda gm: gm.values)
    if verify:
        for gm in games:
            if not (is_extreme(gm) and is_extreme_via_games(gm)):
                raise RuntimeError("an enumerated generator failed the extremality cross-check")
    return games


def cone_dimension(lat, *, max_elements=DEFAULT_MAX_CONE_ELEMENTS):
    """Dimension of the cone of 0-normalized supermodular games.

    Computed as the rank of the enumerated generators and checked against
    the count of free coordinates.
    """
    rays = extreme_rays(lat, max_elements=max_elements)
    dim = qlin.rank([list(g.values) for g in rays]) if rays else 0
    expected = len(lat.elements) - 1 - lat.poset.n
    if dim != expected:
        raise RuntimeError(
            f"ray span has rank {dim}, expected {expected} free coordinates"
        )
    return dim


@dataclass(frozen=True)
class CoreStructure:
    """Tight families of a supermodular game, keyed by permutation."""

    tight: dict


def core_structure(v):
    """CoreStructure of a supermodular game."""
    if not is_supermodular(v):
        raise NotSupermodularError("core structure needs a supermodular game")
    return CoreStructure(dict(tight_family(v).tight))


def face_compare(v, w):
    """Relative position of the cone faces whose relative interiors hold v and w.

    Returns "equal", "below" (the face of v is strictly contained in the
    face of w), "above", or "incomparable".  Tight families reverse the
    order: a smaller face means a larger family.
    """
    if v.lattice is not w.lattice and v.lattice != w.lattice:
        raise LatticeMismatchError("games are bound to different lattices")
    tv = core_structure(v).tight
    tw = core_structure(w).tight
    w_inside_v = all(tw[p] <= tv[p] for p in tv)
    v_inside_w = all(tv[p] <= tw[p] for p in tv)
    if w_inside_v and v_inside_w:
        return "equal"
    if w_inside_v:
        return "below"
    if v_inside_w:
        return "above"
    return "incomparable"
