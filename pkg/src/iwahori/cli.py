"""Command-line front end.

Every subcommand accepts the global flags --p, --m, --prec, --seed, --format
and --config.  A config file holds plain ``key = value`` lines for those same
keys; flags given on the command line win.  Randomness comes from
``random.Random`` seeded with a string derived from --seed, and the seed is
recorded in every report.

Exit status: 0 on success, 1 when a verification fails, 2 on bad input.
"""
import argparse
import json
import sys

from . import harness
from .adlv import f_nu, f_nu_inverse, h_map
from .arith import get_field, parse_series, render_series, solve_twisted
from .coset import classify_double_coset, retract
from .errors import IwahoriError, NotReducible, SeriesSyntaxError
from .hexagon import dumps_hexagon, hexagon_of, render_svg
from .linalg import mat_to_json, parse_mat, render_mat
from .weyl import ORIGIN, P0, parse_weyl, perm_from_name, render_weyl

GRAMMAR = """\
series  = term ("+" term)* ["+" "O(e^" integer ")"]
term    = [coeff "*"] "e^" integer        coeff: integer, or "(t+1)" style over F_{p^m}
matrix  = "[" row ("," row)* "]"          row = "[" series ("," series)* "]"
weyl    = "e^(d,e,f)*w"                   w in 1, s1, s2, s1s2, s2s1, s1s2s1
coweight = "i,j,k"                        e.g. --nu 2,0,-2 (or --nu=-1,0,1)"""

GLOBAL_DEFAULTS = {"p": 5, "m": 1, "prec": 32, "seed": 0, "format": None}


class InputError(Exception):
    pass


def read_config(path):
    out = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc.strerror}") from None
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in GLOBAL_DEFAULTS:
            raise InputError(f"{path}:{n}: unknown key {key!r}")
        out[key] = value if key == "format" else _int(value, key)
    return out


def _int(text, what):
    try:
        return int(text)
    except ValueError:
        raise InputError(f"{what} must be an integer, got {text!r}") from None


def parse_nu(text):
    try:
        nu = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise InputError(f"coweight must look like i,j,k, got {text!r}") from None
    return nu


def _global_parser():
    g = argparse.ArgumentParser(add_help=False)
    sup = argparse.SUPPRESS
    g.add_argument("--p", type=int, default=sup, help="characteristic (default 5)")
    g.add_argument("--m", type=int, default=sup, help="extension degree (default 1)")
    g.add_argument("--prec", type=int, default=sup, help="precision window (default 32)")
    g.add_argument("--seed", type=int, default=sup, help="random seed (default 0)")
    g.add_argument("--format", choices=("text", "json"), default=sup)
    g.add_argument("--config", default=sup, help="key = value file of global flags")
    return g


def build_parser():
    common = _global_parser()
    parser = argparse.ArgumentParser(prog="iwahori", parents=[common],
                                     description="Iwahori double cosets, affine "
                                     "Deligne-Lusztig varieties and their hexagons.",
                                     epilog="input grammar:\n" + GRAMMAR,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    s = add("classify", "the element x with M in I x I")
    s.add_argument("matrix")
    s = add("retract", "the element x with M in w^{-1} U_1 w x I")
    s.add_argument("matrix")
    s.add_argument("--w", required=True)
    s = add("hmap", "g^{-1} e^nu sigma(g)")
    s.add_argument("matrix")
    s.add_argument("--nu", required=True)
    for name, text in (("fnu", "f_nu(g) = g^{-1} e^nu sigma(g) e^{-nu}"),
                       ("fnu-inv", "unipotent g with f_nu(g) = h")):
        s = add(name, text)
        s.add_argument("matrix")
        s.add_argument("--nu", required=True)
    s = add("solve-twisted", "x with e^r sigma(x) - x = a")
    s.add_argument("series")
    s.add_argument("--r", type=int, required=True)
    s = add("hexagon", "the six retractions of gI as apartment points")
    s.add_argument("matrix")
    s.add_argument("--svg", help="write an SVG drawing to this path")
    s.add_argument("--base", choices=("barycenter", "origin"), default="barycenter",
                   help="point of the base alcove the vertices are images of")
    s = add("verify", "verify one case family")
    s.add_argument("--family", required=True, choices=harness.FAMILY_IDS)
    s.add_argument("--subcase")
    s.add_argument("--params", help="'d,e,f;i,j,k' or 'd=..,e=..'; for SL2 'm=1'")
    s.add_argument("--trials", type=int, default=50)
    s = add("verify-all", "verify every family, the empty strata and the closure geometry")
    s.add_argument("--trials", type=int, default=50)
    s.add_argument("--empty-samples", type=int, default=10000)
    s.add_argument("--no-closure", action="store_true")
    s = add("reduce", "reduce (x, nu) to a canonical case family")
    s.add_argument("--x", required=True)
    s.add_argument("--nu", required=True)
    return parser


def resolve(args):
    """Global settings: defaults, then the config file, then flags."""
    settings = dict(GLOBAL_DEFAULTS)
    if getattr(args, "config", None):
        settings.update(read_config(args.config))
    for key in GLOBAL_DEFAULTS:
        if hasattr(args, key):
            settings[key] = getattr(args, key)
    if settings["format"] not in (None, "text", "json"):
        raise InputError(f"format must be text or json, got {settings['format']!r}")
    return settings


def _emit(settings, default_format, text, data):
    fmt = settings["format"] or default_format
    if fmt == "json":
        print(json.dumps(data, indent=2, default=str))
    else:
        print(text)


def _report_out(settings, rep):
    data = rep.to_json()
    data["settings"] = {k: settings[k] for k in ("p", "m", "prec", "seed")}
    _emit(settings, "json", rep.summary(), data)
    return 0 if rep.ok else 1


def _sl2_params(text):
    if not text:
        return (1, 2)
    key, _, value = text.partition("=")
    if key.strip() != "m" or not value:
        raise InputError("SL2 params must look like m=1")
    return (_int(value.strip(), "m"),)


def run(args, settings):
    F = get_field(settings["p"], settings["m"], settings["prec"])
    cmd = args.command
    if cmd == "classify":
        x = classify_double_coset(parse_mat(args.matrix, F))
        _emit(settings, "text", render_weyl(x), {"x": render_weyl(x)})
    elif cmd == "retract":
        x = retract(parse_mat(args.matrix, F), perm_from_name(args.w))
        _emit(settings, "text", render_weyl(x), {"w": args.w, "x": render_weyl(x)})
    elif cmd in ("hmap", "fnu", "fnu-inv"):
        g, nu = parse_mat(args.matrix, F), parse_nu(args.nu)
        op = {"hmap": h_map, "fnu": f_nu, "fnu-inv": f_nu_inverse}[cmd]
        out = op(g, nu)
        _emit(settings, "text", render_mat(out), mat_to_json(out))
    elif cmd == "solve-twisted":
        a = parse_series(args.series, F)
        x = solve_twisted(args.r, a)
        _emit(settings, "text", render_series(x), {"x": render_series(x)})
    elif cmd == "hexagon":
        base = ORIGIN if args.base == "origin" else P0
        h = hexagon_of(parse_mat(args.matrix, F), base)
        if args.svg:
            with open(args.svg, "w") as fh:
                fh.write(render_svg([h]))
        lines = [f"{name}: {render_weyl(h.elt(name))} at "
                 f"({', '.join(str(c) for c in h.point(name))})" for name in h.vertices]
        _emit(settings, "text", "\n".join(lines), json.loads(dumps_hexagon(h)))
    elif cmd == "verify":
        if args.family == "SL2":
            rep = harness.Report("SL2", settings["seed"])
            for m in _sl2_params(args.params):
                rep.add(harness.verify_sl2(m, args.trials, settings["seed"], F))
        else:
            params = harness.parse_params(args.params) if args.params else None
            rep = harness.verify_family(args.family, args.subcase, args.trials,
                                        settings["seed"], params, F)
        return _report_out(settings, rep)
    elif cmd == "verify-all":
        rep = harness.verify_all(args.trials, settings["seed"], F,
                                 empty_samples=args.empty_samples,
                                 closure=not args.no_closure)
        return _report_out(settings, rep)
    elif cmd == "reduce":
        x, nu = parse_weyl(args.x), parse_nu(args.nu)
        try:
            r = harness.reduce_case(x, nu)
        except NotReducible as exc:
            _emit(settings, "text", f"not reducible: {exc}",
                  {"reducible": False, "reason": str(exc)})
            return 1
        data = {"family": r.family, "x": render_weyl(r.x), "nu": list(r.nu),
                "params": list(r.params), "transcript": r.transcript}
        moves = ", ".join(m["move"] + (f" {m['w']}" if "w" in m else "")
                          for m in r.transcript) or "none"
        text = (f"{r.family}\nx = {render_weyl(r.x)}, nu = {tuple(r.nu)}\n"
                f"moves: {moves}")
        _emit(settings, "text", text, data)
    return 0


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        settings = resolve(args)
        return run(args, settings)
    except SeriesSyntaxError as exc:
        print(f"{args.command}: {exc}\ninput grammar:\n{GRAMMAR}", file=sys.stderr)
        return 2
    except (InputError, ValueError, KeyError) as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return 2
    except IwahoriError as exc:
        print(f"{args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
