"""``sim`` command line: run, compare, validate.

Exit codes: 0 success, 2 configuration error, 3 numerical-contract violation,
4 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from majoranon.config import KEYS, parse_config
from majoranon.errors import ConfigError, ContractViolationError, SimulationError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CONTRACT = 3
EXIT_IO = 4

log = logging.getLogger("majoranon")

# keys with a dedicated flag shape; everything else maps 1:1 to --key-name VALUE
_SPECIAL = {"preset", "model", "figures"}


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors as configuration errors."""

    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="FILE", help="flat key = value config file")
    p.add_argument("--preset", help="lowmass, highmass or custom")
    p.add_argument("--model", help="spinor, lattice or device")
    for key in KEYS:
        if key in _SPECIAL:
            continue
        p.add_argument(f"--{key.replace('_', '-')}", dest=key, metavar="VALUE")
    p.add_argument("--no-figures", dest="figures", action="store_const", const="false",
                   help="skip matplotlib PNG figures")
    p.add_argument("--out", required=True, metavar="DIR", help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sim", description="Majoranon simulator: Dirac, Majorana and waveguide-chip evolution.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress and override notices")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="evolve a configured packet and write CSV/PPM/PNG outputs")
    _add_config_flags(run)

    cmp_ = sub.add_parser("compare", help="Majoranon vs Dirac pseudo-energy for one preset")
    _add_config_flags(cmp_)
    cmp_.add_argument("--compare-max", type=float, default=5.0, metavar="ZETA")
    cmp_.add_argument("--compare-step", type=float, default=0.01, metavar="ZETA")

    val = sub.add_parser("validate", help="run the acceptance checks and print a pass/fail table")
    val.add_argument("--only", type=int, nargs="+", metavar="N", help="criterion numbers to run")
    return parser


def _overrides(ns: argparse.Namespace) -> dict:
    return {k: getattr(ns, k) for k in KEYS if getattr(ns, k, None) is not None}


def _print_summary(summary: dict) -> None:
    for key, value in summary.items():
        if key == "files":
            for f in value:
                print(f"wrote {f}")
        elif key == "measurements":
            for m in value:
                print(
                    f"zeta={m['zeta']:g} Z={m['Z_mm']:.3f} mm  <sigma_z>={m['pseudo_energy']:+.6f}"
                    f"  rms_width={m['rms_width']:.6f}"
                )
        else:
            print(f"{key} = {value}")


def _dispatch(ns: argparse.Namespace) -> int:
    from majoranon import runner

    if ns.command == "validate":
        from majoranon.validation import CHECKS, format_table, run_all

        unknown = [n for n in (ns.only or []) if n not in CHECKS]
        if unknown:
            raise ConfigError(f"unknown criterion number(s): {unknown}")
        results = run_all(ns.only)
        print(format_table(results))
        return EXIT_OK if all(r.passed for r in results) else EXIT_CONTRACT

    cfg = parse_config(ns.config, _overrides(ns))
    if ns.command == "run":
        _print_summary(runner.run_experiment(cfg, ns.out))
    else:
        _print_summary(runner.run_compare(cfg, ns.out, ns.compare_max, ns.compare_step))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return _dispatch(ns)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ContractViolationError as exc:
        print(f"numerical contract violated: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SimulationError as exc:
        # invalid physics parameters that slipped past config validation
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
