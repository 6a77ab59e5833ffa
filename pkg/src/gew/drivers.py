"""Verification drivers behind the CLI subcommands. Each returns a list of reports."""

from __future__ import annotations

import json
import math
import random
import re
import time
from pathlib import Path

from .errors import DihedralError, PreconditionError
from .groups import (
    CyclicGroup,
    GeneratingSet,
    Group,
    SurfaceGroup,
    SymmetricGroup,
    ball,
    commutator,
    geodesic,
)
from .lee import LeeCandidate, check_lee_properties
from .parsing import parse_element, parse_group, parse_mixed, parse_system
from .pipeline import RoundTripConfig, observation_equation, run_main_theorem_round_trip
from .report import ERROR, Report, status_of
from .solver import quotient_group, solve_bounded
from .verbal import LawWord, check_corollary4, e_word_membership, witness_template
from .eqsys import Equation, EquationSystem

DEFAULT_SEED = 20240611

SEMIDIRECT = "semidirect(free(b,c), cyclic(a,2), action{b->b^-1, c->c})"
SEMIDIRECT_U = ("(b,a)", "(c,a)", "(c^-1,a)", "(1,a)")
_E3 = ("?x^2", "[?x,(b^2,1)]", "[?x,(c^2,1)]")
SEMIDIRECT_TEMPLATES = {
    "(b,a)": _E3,
    "(c,a)": _E3[:2],
    "(c^-1,a)": _E3[:2],
    "(1,a)": _E3,
}


def _ms(t0) -> float:
    return (time.perf_counter() - t0) * 1000.0


def semidirect_setup(witness_radius: int = 2):
    """Group, generating set, law ``t^2`` and witnessed templates of the semidirect example."""
    H = parse_group(SEMIDIRECT)
    U = GeneratingSet(H, [parse_element(u, H) for u in SEMIDIRECT_U])
    law = LawWord.parse("t^2")
    cache = {}

    def template(text):
        if text not in cache:
            cache[text] = witness_template(H, law, U, parse_mixed(text, H), witness_radius, 1)
        return cache[text]

    ewords = [(parse_element(u, H), [template(t) for t in ts]) for u, ts in SEMIDIRECT_TEMPLATES.items()]
    return H, U, law, ewords


def template_system(H: Group, templates, u) -> EquationSystem:
    """``{E(x) = E(u)}`` over the given templates."""
    eqs = [Equation(t.word, t.evaluate(H, u)) for t in templates]
    return EquationSystem(H, ("x",), tuple(eqs))


def _system_check(H, U, law, u, templates, radius):
    system = template_system(H, templates, u)
    rep = solve_bounded(system, U, radius)
    unique = len(rep.solutions) == 1 and H.equal(rep.solutions[0]["x"], u)
    members = [e_word_membership(t, law, H) for t in templates]
    return unique and all(members), {
        "u": H.format(u),
        "equations": [e.format(H) for e in system.equations],
        "templates_in_verbal_product": members,
        "witnesses": [w.to_json(H, law) for t in templates for w in t.witnesses],
        "search": rep.to_json(timings=False),
        "unique_within_radius": unique,
    }


def verify_example1(radius: int = 3) -> list[Report]:
    H, U, law, ewords = semidirect_setup()
    out = []
    by_u = {H.format(u): (u, ts) for u, ts in ewords}

    t0 = time.perf_counter()
    ba = by_u["(b,a)"][0]
    b2, c2 = parse_element("(b^2,1)", H), parse_element("(c^2,1)", H)
    identities = {
        "(b,a)^2 = (1,1)": H.is_identity(H.power(ba, 2)),
        "[(b,a),(b^2,1)] = (b^4,1)": H.equal(commutator(H, ba, b2), parse_element("(b^4,1)", H)),
        "[(b,a),(c^2,1)] = ([b^-1,c^2],1)": H.equal(
            commutator(H, ba, c2), parse_element("([b^-1,c^2],1)", H)
        ),
    }
    ok, details = _system_check(H, U, law, ba, by_u["(b,a)"][1], radius)
    details["identities"] = identities
    out.append(Report("system for (b,a)", status_of(ok and all(identities.values())),
                      "semidirect example: three templates, unique solution (b,a)", details, _ms(t0)))

    t0 = time.perf_counter()
    parts, ok_all = {}, True
    for key in ("(c,a)", "(c^-1,a)"):
        u, ts = by_u[key]
        ok, parts[key] = _system_check(H, U, law, u, ts, radius)
        ok_all &= ok
    out.append(Report("systems for (c,a) and (c^-1,a)", status_of(ok_all),
                      "semidirect example: two templates each", parts, _ms(t0)))

    t0 = time.perf_counter()
    u, ts = by_u["(1,a)"]
    ok, details = _system_check(H, U, law, u, ts, radius)
    out.append(Report("system for (1,a)", status_of(ok),
                      "semidirect example: three templates, unique solution (1,a)", details, _ms(t0)))
    return out


def _finite_order_generators(G: Group):
    if isinstance(G, SymmetricGroup):
        return GeneratingSet(G, G.transpositions())
    return GeneratingSet.closure(G, G.generators().values())


def verify_observation(group_text: str, f_text: str, radius: int | None = None) -> list[Report]:
    t0 = time.perf_counter()
    G = parse_group(group_text)
    f = parse_element(f_text, G)
    U = _finite_order_generators(G)
    path = geodesic(G, U, f, radius or G.size() or 32)
    if path is None:
        raise PreconditionError(f"{f_text} is not reachable within the search radius")
    if not path:
        path = [U[0], G.inv(U[0])]
    res = observation_equation(G, f, path)
    ok = G.equal(res.equation.lhs.evaluate(res.assignment, G), f) and all(
        math.gcd(res.p, n) == 1 for n in res.orders
    )
    return [Report(
        f"power equation for {f_text}",
        status_of(ok),
        "finite-order decomposition",
        {
            "group": G.describe(),
            "decomposition": [G.format(s) for s in path],
            "orders": list(res.orders),
            "p": res.p,
            "multipliers": list(res.multipliers),
            "equation": res.equation.format(G),
            "assignment": {k: G.format(v) for k, v in res.assignment.items()},
        },
        _ms(t0),
    )]


def check_lee(word: str, radius: int = 2, conjugator_radius: int | None = None) -> list[Report]:
    L = LeeCandidate.parse(word)
    rep = check_lee_properties(L, radius, conjugator_radius=conjugator_radius)
    data = rep.to_json(timings=False)
    t0 = time.perf_counter()
    verified = rep.reverify()
    return [
        Report("L2: value trivial exactly on cyclic tuples", status_of(not rep.l2_counterexamples),
               "Lee property L2", {k: data[k] for k in ("candidate", "radius", "tuples_checked", "l2_count", "l2_counterexamples")},
               rep.elapsed_ms),
        Report("L1: equal nontrivial values are simultaneously conjugate", status_of(not rep.l1_counterexamples),
               "Lee property L1", {k: data[k] for k in ("candidate", "radius", "conjugator_radius", "l1_count", "l1_counterexamples")}),
        Report("counterexamples re-verify", status_of(verified), "direct evaluation and ball conjugator search",
               {"l1_count": data["l1_count"], "l2_count": data["l2_count"]}, _ms(t0)),
    ]


_FACTOR_NAMES = "stuvwpqrmn"


def parse_factors(text: str) -> list[Group]:
    out = []
    for i, tok in enumerate(p.strip() for p in text.split(",")):
        m = re.fullmatch(r"[zZ](\d+)", tok)
        if m is None:
            raise ValueError(f"factor {tok!r}: expected z<n>, e.g. z2")
        n = int(m.group(1))
        if n < 2:
            raise ValueError("factors must be nontrivial")
        out.append(CyclicGroup(_FACTOR_NAMES[i % len(_FACTOR_NAMES)] + ("" if i < len(_FACTOR_NAMES) else str(i)), n))
    return out


def check_freeproduct(factors_text: str, radius: int = 4) -> list[Report]:
    t0 = time.perf_counter()
    factors = parse_factors(factors_text)
    laws = [LawWord.parse(f"t^{f.n}") for f in factors]
    try:
        return [check_corollary4(factors, laws, radius)]
    except DihedralError as exc:
        return [Report(f"free product {factors_text}", ERROR, "free-product verbal pair",
                       {"rejected": str(exc)}, _ms(t0))]


def _random_word(rng: random.Random, gens: int, length: int) -> tuple:
    out: list[int] = []
    while len(out) < length:
        a = rng.choice([s * g for g in range(1, gens + 1) for s in (1, -1)])
        if out and out[-1] == -a:
            continue
        out.append(a)
    return tuple(out)


def check_surface(genus: int = 2, samples: int = 20, seed: int = DEFAULT_SEED, radius: int = 4) -> list[Report]:
    rng = random.Random(seed)
    S = SurfaceGroup(genus)
    R = S.relator
    n = 2 * genus
    reports = []

    t0 = time.perf_counter()
    rotations = [R[i:] + R[:i] for i in range(len(R))]
    rels = rotations + [S.inv(r) for r in rotations]
    basic = all(S.is_trivial(r) for r in rels)
    products = []
    for _ in range(samples):
        word: tuple = ()
        for _ in range(rng.randint(1, 3)):
            s = _random_word(rng, n, rng.randint(0, 5))
            word += S.inv(s) + rng.choice(rels) + s
        products.append(word)
    prod_ok = [S.is_trivial(w) for w in products]
    reports.append(Report(
        "relator words reduce to the identity", status_of(basic and all(prod_ok)),
        "Dehn reduction of relator consequences",
        {"relator": S.format(R), "rotations_and_inverses": len(rels), "conjugate_products": len(products),
         "all_trivial": basic and all(prod_ok),
         "samples": [S.format(w) for w in products[:5]]},
        _ms(t0),
    ))

    t0 = time.perf_counter()
    words = []
    while len(words) < samples:
        w = S.dehn_reduce(_random_word(rng, n, rng.randint(1, 8)))
        if w and w not in words:
            words.append(w)
    nontrivial = [not S.is_trivial(w) for w in words]
    reports.append(Report(
        "Dehn-irreducible words are nontrivial", status_of(all(nontrivial)),
        "Dehn reduction of random words", {"words": [S.format(w) for w in words], "nontrivial": nontrivial},
        _ms(t0),
    ))

    t0 = time.perf_counter()
    U = GeneratingSet.closure(S, S.generators().values())
    pts = ball(S, U, radius)
    nontriv = [x for x in pts if x]
    chosen = rng.sample(nontriv, min(samples, len(nontriv)))
    pairs, failures, certs = 0, [], []
    for g in chosen:
        for h in nontriv:
            if not S.is_identity(commutator(S, g, h)):
                continue
            pairs += 1
            cert = S.common_root(g, h, pts)
            if cert is None:
                failures.append([S.format(g), S.format(h)])
            elif len(certs) < 5:
                u, k1, k2 = cert
                certs.append({"g": S.format(g), "h": S.format(h), "root": S.format(u), "k1": k1, "k2": k2})
    reports.append(Report(
        "commuting pairs share a root", status_of(pairs > 0 and not failures),
        "centralizers in the surface group are cyclic",
        {"ball_radius": radius, "ball_size": len(pts), "sampled": len(chosen), "pairs": pairs,
         "counterexamples": failures, "certificates": certs},
        _ms(t0),
    ))
    return reports


def load_roundtrip_config(path, group: Group) -> tuple[RoundTripConfig, dict]:
    """Config JSON: generators, law, radius, templates {u: [E, ...]}, optional constants."""
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    K = quotient_group(group) if getattr(group, "q_index", None) is not None else group
    consts = {name: parse_element(text, K) for name, text in raw.get("constants", {}).items()}
    U = GeneratingSet(K, [parse_element(u, K, consts) for u in raw["generators"]])
    law = LawWord.parse(raw.get("law", "t"))
    wr = raw.get("witness_radius", 2)
    wl = raw.get("witness_length", 1)
    ewords = []
    for u, temps in raw["templates"].items():
        ewords.append((
            parse_element(u, K, consts),
            [witness_template(K, law, U, parse_mixed(t, K, consts), wr, wl) for t in temps],
        ))
    cfg = RoundTripConfig(
        U=list(U), ewords=ewords, radius=raw.get("radius", 3),
        decompose_radius=raw.get("decompose_radius"), law=law,
    )
    return cfg, raw


def roundtrip(system_path, config_path, radius: int | None = None) -> list[Report]:
    t0 = time.perf_counter()
    S = parse_system(system_path)
    cfg, _ = load_roundtrip_config(config_path, S.group)
    if radius is not None:
        cfg.radius = radius
    res = run_main_theorem_round_trip(S, cfg)
    g = S.group
    return [Report(
        f"round trip {Path(system_path).name}",
        status_of(res.ok),
        "reduce, split over U, templates, search, residue correction",
        {
            "assignment": {k: g.format(v) for k, v in (res.assignment or {}).items()},
            "stages": res.stages,
        },
        _ms(t0),
    )]


__all__ = [
    "DEFAULT_SEED",
    "semidirect_setup",
    "template_system",
    "verify_example1",
    "verify_observation",
    "check_lee",
    "check_freeproduct",
    "check_surface",
    "roundtrip",
    "load_roundtrip_config",
    "parse_factors",
]
