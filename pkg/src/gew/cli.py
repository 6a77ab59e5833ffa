"""``gew`` command line: run verification drivers and print text or JSON reports.

Exit status is 0 exactly when every report entry passes.
"""

from __future__ import annotations

import argparse
import sys

from . import drivers
from .errors import ParseError, PreconditionError
from .report import ERROR, Report, dump


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--no-timings", action="store_true", help="omit timings from JSON output")
    p.add_argument("--seed", type=int, default=drivers.DEFAULT_SEED, help="seed for sampled checks")
    p.add_argument("--radius", type=int, default=None, help="ball radius for searches")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="gew", description="Checks for equations over groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="reproduce worked instances")
    vsub = verify.add_subparsers(dest="target", required=True)
    vsub.add_parser("example1", parents=[common], help="semidirect-product uniqueness systems")
    obs = vsub.add_parser("observation", parents=[common], help="power equation over a finite group")
    obs.add_argument("--group", required=True, help="group description, e.g. 'symmetric(3)'")
    obs.add_argument("--f", required=True, help="target element, e.g. 's1*s2'")

    lee = sub.add_parser("check-lee", parents=[common], help="test L1/L2 for a candidate word")
    lee.add_argument("--word", required=True, help="candidate over z1, z2, ..., e.g. '[z1,z2]'")
    lee.add_argument("--conjugator-radius", type=int, default=None)

    fp = sub.add_parser("check-freeproduct", parents=[common], help="verbal pair search in a free product")
    fp.add_argument("--factors", required=True, help="comma-separated cyclic factors, e.g. z2,z3")

    surf = sub.add_parser("check-surface", parents=[common], help="Dehn-algorithm sampling checks")
    surf.add_argument("--genus", type=int, default=2)
    surf.add_argument("--samples", type=int, default=20)

    rt = sub.add_parser("roundtrip", parents=[common], help="full reduction round trip for a system file")
    rt.add_argument("--system", required=True)
    rt.add_argument("--config", required=True)
    return parser


def run(args) -> list[Report]:
    r = args.radius
    if args.command == "verify":
        if args.target == "example1":
            return drivers.verify_example1(r or 3)
        return drivers.verify_observation(args.group, args.f, r)
    if args.command == "check-lee":
        return drivers.check_lee(args.word, r or 2, args.conjugator_radius)
    if args.command == "check-freeproduct":
        return drivers.check_freeproduct(args.factors, r or 4)
    if args.command == "check-surface":
        return drivers.check_surface(args.genus, args.samples, args.seed, r or 4)
    if args.command == "roundtrip":
        return drivers.roundtrip(args.system, args.config, r)
    raise AssertionError(args.command)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        reports = run(args)
    except (ParseError, PreconditionError, ValueError, NotImplementedError, OSError) as exc:
        reports = [Report(args.command, ERROR, "", {"error": f"{type(exc).__name__}: {exc}"})]
    if args.json:
        print(dump(reports, timings=not args.no_timings))
    else:
        for rep in reports:
            print(rep.to_text())
        passed = sum(r.ok for r in reports)
        print(f"{passed}/{len(reports)} checks passed")
    return 0 if reports and all(r.ok for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
