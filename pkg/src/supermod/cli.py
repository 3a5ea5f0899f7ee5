"""Command line front end.

Every subcommand is a thin adapter around the library: load inputs, call one
or two library functions, serialize.  JSON output is canonical (sorted keys,
rationals as "p/q" strings, coalitions as sorted player lists); table output
uses the compact digit notation for coalitions.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from importlib import resources

from .cone import (
    cone_dimension,
    extreme_rays,
    face_compare,
    facet_triples,
    is_extreme,
    is_extreme_via_games,
)
from .errors import SupermodError
from .game import (
    Game,
    is_modular,
    is_monotone,
    is_nonnegative,
    is_supermodular,
    mobius_transform,
    zero_normalize,
)
from .lattice import DEFAULT_MAX_CHAINS, DEFAULT_MAX_ELEMENTS, build_lattice
from .marginals import (
    core_vertices,
    lower_envelope,
    marginal_vector,
    tight_sets,
    unboundedness_witness,
    zero_coords,
)
from .poset import (
    mask_from_players,
    players_from_mask,
    poset_from_dict,
    poset_to_dict,
)

GOLDEN_RESOURCE = "data/reference_results.json"


# -- serialization helpers ----------------------------------------------------


def coalition_key(mask):
    return json.dumps(players_from_mask(mask), separators=(",", ":"))


def compact(mask):
    players = players_from_mask(mask)
    if not players:
        return "{}"
    if players[-1] <= 9:
        return "".join(str(p) for p in players)
    return "{" + ",".join(str(p) for p in players) + "}"


def format_perm(perm):
    if all(p <= 9 for p in perm):
        return "".join(str(p) for p in perm)
    return ",".join(str(p) for p in perm)


def parse_perm(text):
    t = text.strip()
    if "," in t:
        return tuple(int(x) for x in t.split(","))
    if t.isdigit():
        return tuple(int(ch) for ch in t)
    raise ValueError(f"cannot parse permutation {text!r}")


def parse_coalition(text, n):
    t = text.strip()
    if t.startswith("["):
        players = json.loads(t)
        if not isinstance(players, list) or not all(
            isinstance(p, int) and not isinstance(p, bool) for p in players
        ):
            raise ValueError(f"cannot parse coalition {text!r}")
    elif t in ("", "{}"):
        players = []
    elif t.isdigit():
        players = [int(ch) for ch in t]
    else:
        raise ValueError(f"cannot parse coalition {text!r}")
    return mask_from_players(players, n)


def parse_value(val):
    if isinstance(val, bool):
        raise ValueError("game values must be integers or 'p/q' strings")
    if isinstance(val, int):
        return Fraction(val)
    if isinstance(val, str):
        return Fraction(val)
    raise ValueError(f"game values must be integers or 'p/q' strings, got {val!r}")


def game_payload(game):
    """Nonzero values keyed by coalition, reusable as a game file "values"."""
    return {coalition_key(a): str(v) for a, v in game.to_mapping().items()}


def vector_payload(x):
    return [str(t) for t in x]


def sorted_masks(masks):
    return sorted(masks, key=lambda m: (m.bit_count(), m))


# -- input loading -------------------------------------------------------------


def _read_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def lattice_cap(args):
    cap = getattr(args, "max_lattice", None)
    if cap:
        return cap
    env = os.environ.get("SUPERMOD_MAX_LATTICE")
    if env:
        return int(env)
    return DEFAULT_MAX_ELEMENTS


def chain_cap(args):
    return getattr(args, "max_chains", None) or DEFAULT_MAX_CHAINS


def load_poset(path):
    return poset_from_dict(_read_json(path))

def load_lattice(path, args):
    return build_lattice(load_poset(path), max_elements=lattice_cap(args))


def load_game(path, args):
    data = _read_json(path)
    if not isinstance(data, dict) or "poset" not in data:
        raise ValueError(f'{path}: a game file needs a "poset" entry')
    spec = data["poset"]
    if isinstance(spec, str):
        if not os.path.isabs(spec):
            spec = os.path.join(os.path.dirname(os.path.abspath(path)), spec)
        p = load_poset(spec)
    elif isinstance(spec, dict):
        p = poset_from_dict(spec)
    else:
        raise ValueError('"poset" must be a file name or an inline object')
    lat = build_lattice(p, max_elements=lattice_cap(args))
    mapping = {}
    for key, val in data.get("values", {}).items():
        mapping[parse_coalition(key, p.n)] = parse_value(val)
    return Game.from_values(lat, mapping)


def emit(args, payload, lines=None):
    if getattr(args, "format", "json") == "table" and lines is not None:
        for line in lines:
            print(line)
    else:
        print(json.dumps(payload, sort_keys=True, indent=2))


# -- subcommands ----------------------------------------------------------------


def cmd_poset_show(args):
    p = load_poset(args.poset)
    leq_pairs = [
        [i, j]
        for i in range(1, p.n + 1)
        for j in range(1, p.n + 1)
        if i != j and p.leq(i, j)
    ]
    payload = {
        "n": p.n,
        "covers": [list(c) for c in p.covers()],
        "leq_pairs": leq_pairs,
        "principal_down_sets": {
            str(i): players_from_mask(p.principal_down_set(i)) for i in range(1, p.n + 1)
        },
    }
    lines = [f"n = {p.n}", "covers: " + " ".join(f"{i}<{j}" for i, j in p.covers())]
    for i in range(1, p.n + 1):
        lines.append(f"down({i}) = {compact(p.principal_down_set(i))}")
    emit(args, payload, lines)
    return 0


def cmd_lattice_downsets(args):
    lat = load_lattice(args.poset, args)
    payload = {
        "count": len(lat.elements),
        "downsets": [players_from_mask(a) for a in lat.elements],
    }
    emit(args, payload, [compact(a) for a in lat.elements])
    return 0


def cmd_lattice_chains(args):
    lat = load_lattice(args.poset, args)
    chains = lat.maximal_chains(max_chains=chain_cap(args))
    payload = {
        "count": len(chains),
        "chains": [
            {"perm": format_perm(c.perm), "sets": [players_from_mask(a) for a in c.sets]}
            for c in chains
        ],
    }
    lines = [
        f"{format_perm(c.perm)}: " + " < ".join(compact(a) for a in c.sets)
        for c in chains
    ]
    emit(args, payload, lines)
    return 0


def cmd_lattice_moebius(args):
    lat = load_lattice(args.poset, args)
    x = parse_coalition(args.from_set, lat.poset.n)
    y = parse_coalition(args.to_set, lat.poset.n)
    value = lat.mobius(x, y, recursive=args.recursive)
    payload = {
        "from": players_from_mask(x),
        "to": players_from_mask(y),
        "value": str(value),
    }
    emit(args, payload, [f"mu({compact(x)}, {compact(y)}) = {value}"])
    return 0


_CLASS_CHECKS = {
    "supermodular": is_supermodular,
    "modular": is_modular,
    "monotone": is_monotone,
    "nonnegative": is_nonnegative,
}


def cmd_game_check(args):
    g = load_game(args.game, args)
    result = _CLASS_CHECKS[args.cls](g)
    payload = {"class": args.cls, "result": result}
    emit(args, payload, [f"{args.cls}: {'yes' if result else 'no'}"])
    return 0 if result else 1


def cmd_game_moebius(args):
    g = load_game(args.game, args)
    t = mobius_transform(g, recursive=args.recursive)
    payload = {"values": game_payload(t)}
    lines = [f"{compact(a)}: {v}" for a, v in t.to_mapping().items()]
    emit(args, payload, lines or ["(zero transform)"])
    return 0


def cmd_game_normalize(args):
    g = load_game(args.game, args)
    w, m = zero_normalize(g)
    payload = {"zero_normalized": game_payload(w), "modular": game_payload(m)}
    lines = ["zero-normalized part:"]
    lines += [f"  {compact(a)}: {v}" for a, v in w.to_mapping().items()] or ["  0"]
    lines.append("modular part:")
    lines += [f"  {compact(a)}: {v}" for a, v in m.to_mapping().items()] or ["  0"]
    emit(args, payload, lines)
    return 0


def cmd_core_vertices(args):
    g = load_game(args.game, args)
    verts = core_vertices(g)
    payload = {"count": len(verts), "vertices": [vector_payload(x) for x in verts]}
    emit(args, payload, ["(" + ", ".join(str(t) for t in x) + ")" for x in verts])
    return 0


def cmd_core_tight(args):
    g = load_game(args.game, args)
    chain = g.lattice.chain_from_perm(parse_perm(args.perm))
    x = marginal_vector(g, chain)
    tight = sorted_masks(tight_sets(g, chain))
    payload = {
        "perm": format_perm(chain.perm),
        "marginal": vector_payload(x),
        "tight": [players_from_mask(a) for a in tight],
        "zero_players": sorted(zero_coords(g, chain)),
    }
    lines = [
        f"marginal: (" + ", ".join(str(t) for t in x) + ")",
        "tight: " + " ".join(compact(a) for a in tight),
        "zero players: " + (" ".join(str(i) for i in payload["zero_players"]) or "none"),
    ]
    emit(args, payload, lines)
    return 0


def cmd_core_envelope(args):
    g = load_game(args.game, args)
    mask = parse_coalition(args.coalition, g.lattice.poset.n)
    value = lower_envelope(g, mask)
    payload = {"coalition": players_from_mask(mask), "value": str(value)}
    emit(args, payload, [f"min over chains of x({compact(mask)}) = {value}"])
    return 0


def cmd_core_witness(args):
    lat = load_lattice(args.poset, args)
    x = unboundedness_witness(lat)
    payload = {"witness": vector_payload(x) if x else None}
    lines = (
        ["(" + ", ".join(str(t) for t in x) + ")"] if x else ["no witness: the order is flat"]
    )
    emit(args, payload, lines)
    return 0 if x else 1


def cmd_cone_is_extreme(args):
    g = load_game(args.game, args)
    results = {}
    if args.method in ("system", "both"):
        results["system"] = is_extreme(g)
    if args.method in ("games", "both"):
        results["games"] = is_extreme_via_games(g)
    if len(results) == 2 and results["system"] != results["games"]:
        raise RuntimeError("extremality criteria disagree; please report this")
    extreme = next(iter(results.values()))
    payload = {"extreme": extreme, "method": args.method, **results}
    w, _ = zero_normalize(g)
    if w.is_zero():
        payload["note"] = "0-normalized part is zero; non-extreme by convention"
    lines = [f"extreme: {'yes' if extreme else 'no'}"]
    if "note" in payload:
        lines.append(payload["note"])
    emit(args, payload, lines)
    return 0 if extreme else 1


def cmd_cone_rays(args):
    lat = load_lattice(args.poset, args)
    rays = extreme_rays(lat, max_elements=args.max_cone or len(lat.elements))
    payload = {"count": len(rays), "rays": [game_payload(g) for g in rays]}
    lines = []
    for k, g in enumerate(rays, start=1):
        body = ", ".join(f"{compact(a)}={v}" for a, v in g.to_mapping().items())
        lines.append(f"ray {k}: {body}")
    emit(args, payload, lines or ["(no rays: the cone is trivial)"])
    return 0


def cmd_cone_facets(args):
    lat = load_lattice(args.poset, args)
    triples = facet_triples(lat)
    payload = {
        "count": len(triples),
        "facets": [
            {
                "base": players_from_mask(t.base),
                "i": t.i,
                "j": t.j,
                "inequality": t.render(),
            }
            for t in triples
        ],
    }
    emit(args, payload, [t.render() for t in triples])
    return 0


def cmd_cone_dim(args):
    lat = load_lattice(args.poset, args)
    dim = cone_dimension(lat, max_elements=args.max_cone or len(lat.elements))
    payload = {"dimension": dim, "ambient": len(lat.elements) - 1}
    emit(args, payload, [f"dimension {dim} in ambient {payload['ambient']}"])
    return 0


def cmd_cone_face_compare(args):
    g1 = load_game(args.game1, args)
    g2 = load_game(args.game2, args)
    relation = face_compare(g1, g2)
    emit(args, {"relation": relation}, [relation])
    return 0


# -- reference reproduction -------------------------------------------------------


@dataclass
class RunReport:
    """Outcome of the reference reproduction run."""

    command: str
    inputs: dict
    results: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    generated_at: str = ""

    def passed(self):
        return all(c["pass"] for c in self.checks)

    def first_failure(self):
        return next((c for c in self.checks if not c["pass"]), None)


def _digest(data):
    return hashlib.sha256(data).hexdigest()


def reproduce_paper(golden_path=None, max_lattice=DEFAULT_MAX_ELEMENTS):
    """Recompute the bundled reference results and compare them field by field."""
    if golden_path is None:
        blob = resources.files("supermod").joinpath(GOLDEN_RESOURCE).read_bytes()
    else:
        with open(golden_path, "rb") as fh:
            blob = fh.read()
    golden = json.loads(blob)
    report = RunReport(
        command="reproduce-paper",
        inputs={"golden_sha256": _digest(blob)},
        generated_at=datetime.now(timezone.utc).isoformat(),
    )

    def check(claim, expected, fn):
        try:
            got = fn()
        except Exception as exc:  # a corrupt golden file must fail, not crash
            got = f"error: {type(exc).__name__}: {exc}"
        report.checks.append(
            {"claim": claim, "expected": expected, "got": got, "pass": expected == got}
        )

    ref = golden["hierarchy4"]
    poset = poset_from_dict(ref["poset"])
    report.inputs["hierarchy4_poset_sha256"] = _digest(
        json.dumps(poset_to_dict(poset), sort_keys=True).encode()
    )
    lat = build_lattice(poset, max_elements=max_lattice)
    check("hierarchy4: down-set count", ref["lattice_size"], lambda: len(lat.elements))
    check(
        "hierarchy4: join-irreducible elements",
        ref["join_irreducibles"],
        lambda: [players_from_mask(a) for a in lat.join_irreducibles],
    )
    chains = lat.maximal_chains()
    check(
        "hierarchy4: compatible permutation count",
        len(ref["permutations"]),
        lambda: len(chains),
    )
    check(
        "hierarchy4: permutation sequences",
        ref["permutations"],
        lambda: [format_perm(c.perm) for c in chains],
    )

    detail = ref["detailed_ray"]

    def load_ref_game(table):
        mapping = {
            parse_coalition(key, poset.n): parse_value(val) for key, val in table.items()
        }
        return Game.from_values(lat, mapping)

    def marginal_map():
        ray = load_ref_game(detail["values"])
        return {
            format_perm(c.perm): vector_payload(marginal_vector(ray, c)) for c in chains
        }

    expected_marginals = {
        perm: grp["vector"]
        for grp in detail["marginal_groups"]
        for perm in grp["permutations"]
    }
    check("hierarchy4: detailed ray marginal vectors", expected_marginals, marginal_map)

    def tight_map():
        ray = load_ref_game(detail["values"])
        return {
            format_perm(c.perm): [
                players_from_mask(a) for a in sorted_masks(tight_sets(ray, c))
            ]
            for c in chains
        }

    expected_tight = {
        perm: grp["tight"]
        for grp in detail["tight_groups"]
        for perm in grp["permutations"]
    }
    check("hierarchy4: detailed ray tight families", expected_tight, tight_map)

    ray_tables = ref["extreme_rays"]
    check(
        "hierarchy4: reference generators extreme (payoff system)",
        [True] * len(ray_tables),
        lambda: [is_extreme(load_ref_game(t)) for t in ray_tables],
    )
    check(
        "hierarchy4: reference generators extreme (game-equality system)",
        [True] * len(ray_tables),
        lambda: [is_extreme_via_games(load_ref_game(t)) for t in ray_tables],
    )
    check(
        "hierarchy4: enumerated extreme rays",
        ray_tables,
        lambda: [game_payload(g) for g in extreme_rays(lat)],
    )
    check(
        "hierarchy4: cone dimension",
        [ref["cone_dimension"], ref["ambient_dimension"]],
        lambda: [cone_dimension(lat), len(lat.elements) - 1],
    )
    check(
        "hierarchy4: facet inequalities",
        ref["facet_inequalities"],
        lambda: [t.render() for t in facet_triples(lat)],
    )

    flat = golden["flat4"]
    fposet = poset_from_dict(flat["poset"])
    report.inputs["flat4_poset_sha256"] = _digest(
        json.dumps(poset_to_dict(fposet), sort_keys=True).encode()
    )
    flat_lat = build_lattice(fposet, max_elements=max_lattice)
    check("flat4: down-set count", flat["lattice_size"], lambda: len(flat_lat.elements))
    check(
        "flat4: facet count", flat["facet_count"], lambda: len(facet_triples(flat_lat))
    )
    check(
        "flat4: extreme ray count",
        flat["extreme_ray_count"],
        lambda: len(extreme_rays(flat_lat)),
    )

    passed = sum(1 for c in report.checks if c["pass"])
    report.results = {"checks_passed": passed, "checks_total": len(report.checks)}
    return report


def cmd_reproduce(args):
    report = reproduce_paper(golden_path=args.golden, max_lattice=lattice_cap(args))
    lines = []
    for c in report.checks:
        status = "PASS" if c["pass"] else "FAIL"
        lines.append(f"{status}  {c['claim']}")
        if not c["pass"]:
            lines.append(f"      expected: {c['expected']}")
            lines.append(f"      got:      {c['got']}")
    lines.append(
        f"{report.results['checks_passed']}/{report.results['checks_total']} checks passed"
    )
    emit(args, asdict(report), lines)
    if not report.passed():
        failure = report.first_failure()
        print(f"reproduce-paper: first failing check: {failure['claim']}", file=sys.stderr)
        return 1
    return 0


# -- parser ------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "table"), default="json", help="output format"
    )
    common.add_argument(
        "--max-lattice",
        type=int,
        metavar="N",
        help="cap on lattice size (or env SUPERMOD_MAX_LATTICE)",
    )
    common.add_argument(
        "--max-chains", type=int, metavar="N", help="cap on the number of maximal chains"
    )

    parser = argparse.ArgumentParser(
        prog="supermod",
        description="Exact analysis of supermodular games on lattices of down-sets",
    )
    sub = parser.add_subparsers(dest="group", required=True)

    p_poset = sub.add_parser("poset", help="poset inspection").add_subparsers(
        dest="cmd", required=True
    )
    q = p_poset.add_parser("show", parents=[common], help="closure and principal down-sets")
    q.add_argument("poset")
    q.set_defaults(func=cmd_poset_show)

    p_lat = sub.add_parser("lattice", help="down-set lattice").add_subparsers(
        dest="cmd", required=True
    )
    q = p_lat.add_parser("downsets", parents=[common], help="list all down-sets")
    q.add_argument("poset")
    q.set_defaults(func=cmd_lattice_downsets)
    q = p_lat.add_parser("chains", parents=[common], help="maximal chains and permutations")
    q.add_argument("poset")
    q.set_defaults(func=cmd_lattice_chains)
    q = p_lat.add_parser("moebius", parents=[common], help="Moebius value of a pair")
    q.add_argument("poset")
    q.add_argument("--from", dest="from_set", required=True, metavar="COALITION")
    q.add_argument("--to", dest="to_set", required=True, metavar="COALITION")
    q.add_argument("--recursive", action="store_true", help="use the defining recursion")
    q.set_defaults(func=cmd_lattice_moebius)

    p_game = sub.add_parser("game", help="game predicates and transforms").add_subparsers(
        dest="cmd", required=True
    )
    q = p_game.add_parser("check", parents=[common], help="test a game class")
    q.add_argument("game")
    q.add_argument("--class", dest="cls", required=True, choices=sorted(_CLASS_CHECKS))
    q.set_defaults(func=cmd_game_check)
    q = p_game.add_parser("moebius", parents=[common], help="Moebius transform of a game")
    q.add_argument("game")
    q.add_argument("--recursive", action="store_true", help="use the defining recursion")
    q.set_defaults(func=cmd_game_moebius)
    q = p_game.add_parser("normalize", parents=[common], help="0-normalized + modular split")
    q.add_argument("game")
    q.set_defaults(func=cmd_game_normalize)

    p_core = sub.add_parser("core", help="cores and marginal vectors").add_subparsers(
        dest="cmd", required=True
    )
    q = p_core.add_parser("vertices", parents=[common], help="core vertices (supermodular)")
    q.add_argument("game")
    q.set_defaults(func=cmd_core_vertices)
    q = p_core.add_parser("tight", parents=[common], help="tight sets along one chain")
    q.add_argument("game")
    q.add_argument("--perm", required=True, help='permutation, e.g. "2314"')
    q.set_defaults(func=cmd_core_tight)
    q = p_core.add_parser("envelope", parents=[common], help="minimum marginal total")
    q.add_argument("game")
    q.add_argument("--coalition", required=True, help='coalition, e.g. "[3,4]" or "34"')
    q.set_defaults(func=cmd_core_envelope)
    q = p_core.add_parser("witness", parents=[common], help="core recession direction")
    q.add_argument("poset")
    q.set_defaults(func=cmd_core_witness)

    p_cone = sub.add_parser("cone", help="the supermodular cone").add_subparsers(
        dest="cmd", required=True
    )
    q = p_cone.add_parser("is-extreme", parents=[common], help="extremality of a game")
    q.add_argument("game")
    q.add_argument("--method", choices=("system", "games", "both"), default="both")
    q.set_defaults(func=cmd_cone_is_extreme)
    q = p_cone.add_parser("rays", parents=[common], help="extreme rays of the cone")
    q.add_argument("poset")
    q.add_argument("--max-cone", type=int, metavar="N", help="element cap for enumeration")
    q.set_defaults(func=cmd_cone_rays)
    q = p_cone.add_parser("facets", parents=[common], help="facet inequalities")
    q.add_argument("poset")
    q.set_defaults(func=cmd_cone_facets)
    q = p_cone.add_parser("dim", parents=[common], help="dimension of the cone")
    q.add_argument("poset")
    q.add_argument("--max-cone", type=int, metavar="N", help="element cap for enumeration")
    q.set_defaults(func=cmd_cone_dim)
    q = p_cone.add_parser("face-compare", parents=[common], help="compare two face positions")
    q.add_argument("game1")
    q.add_argument("game2")
    q.set_defaults(func=cmd_cone_face_compare)

    q = sub.add_parser(
        "reproduce-paper",
        parents=[common],
        help="recompute the bundled reference results and verify them",
    )
    q.add_argument("--golden", help="alternative golden results file")
    q.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SupermodError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError, IndexError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
