"""Command line interface with deterministic JSON reports.

Every subcommand prints one JSON document to standard output and
nothing else there; wall-clock timings go to standard error so repeated
runs with the same flags and seed stay byte-identical.  Exit codes: 0
success, 1 a mathematical assertion failed, 2 invalid input, 3 a
resource budget was exceeded.
"""

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from . import __version__, deform, grouprealize, perm
from .braided import DegreeBudgetExceeded, check_braid_equation, make_braiding, quantum_symmetrizer
from .catalog import RACK_NAMES, builtin_cocycle, builtin_rack
from .cocycle import Cocycle2, constant_cocycle
from .freealg import (
    audit_obstructions,
    groebner,
    hilbert_series,
    ideal_from_json,
    ideal_to_json,
    quotient_dim,
)
from .linalg import nullspace_basis
from .quadrel import (
    copointed_lambda_space,
    enumerate_classes,
    hom_vanishing_check,
    pointed_lambda_space,
    quadratic_ideal,
    select_Rprime,
    verify_J2,
)
from .rack import Rack

SCHEMA = "rackalg-report/1"

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3


class CliError(Exception):
    """Carries the exit code alongside the message."""

    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _jsonable(value):
    """Make a report tree printable: Fractions to strings, tuples to
    lists, tuple keys to comma-joined strings."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        out = {}
        for k, v in value.items():
            if isinstance(k, tuple):
                k = ",".join(str(a) for a in k)
            out[str(k)] = _jsonable(v)
        return out
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, bytes):
        return [int(b) for b in value]
    return value


def _poly_doc(poly):
    return [
        {"word": [int(a) for a in w], "coeff": str(c)}
        for w, c in poly.sorted_terms()
    ]


def _load_json_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError("cannot read %s: %s" % (path, exc), EXIT_INVALID)
    except json.JSONDecodeError as exc:
        raise CliError("bad JSON in %s: %s" % (path, exc), EXIT_INVALID)


def _load_rack(args):
    """Return (rack, rack_name or None).  --file wins over --rack."""
    if args.file:
        doc = _load_json_file(args.file)
        try:
            return Rack.from_json(doc), None
        except (KeyError, TypeError) as exc:
            raise CliError("malformed rack document: %s" % exc, EXIT_INVALID)
        except ValueError as exc:
            raise CliError("invalid rack: %s" % exc, EXIT_ASSERTION)
    if args.rack:
        try:
            rack, _ = builtin_rack(args.rack)
        except KeyError as exc:
            raise CliError(str(exc.args[0]), EXIT_INVALID)
        return rack, args.rack
    raise CliError("need --rack or --file", EXIT_INVALID)


def _load_cocycle(args, rack, rack_name):
    spec = args.cocycle
    if spec is None:
        raise CliError("need --cocycle", EXIT_INVALID)
    try:
        if rack_name is not None:
            return builtin_cocycle(rack_name, spec)
        if spec.startswith("const:"):
            return constant_cocycle(rack, Fraction(spec[len("const:"):]))
        raise CliError(
            "cocycle %r needs a builtin rack" % spec, EXIT_INVALID
        )
    except (KeyError, ZeroDivisionError) as exc:
        raise CliError(str(exc), EXIT_INVALID)
    except ValueError as exc:
        raise CliError("invalid cocycle: %s" % exc, EXIT_ASSERTION)


def _flavor(args):
    if args.flavor not in ("V", "W"):
        raise CliError("--flavor must be V or W", EXIT_INVALID)
    return args.flavor


def _complete_gb(polys, args, default_deg=16):
    max_deg = args.max_deg if args.max_deg else default_deg
    gb = groebner(polys, max_deg=max_deg)
    if not gb.complete:
        raise CliError(
            "basis completion hit the degree budget (%s)" % gb.status,
            EXIT_BUDGET,
        )
    return gb


# ---------------------------------------------------------------------------
# subcommand handlers; each returns (payload, ok)


def _cmd_rack_check(args):
    rack, name = _load_rack(args)
    payload = {"rack": name or "file", "n": rack.n, "labels": list(rack.labels)}
    payload.update(rack.properties())
    return payload, True


def _cmd_rack_props(args):
    return _cmd_rack_check(args)


def _cmd_cocycle_check(args):
    rack, name = _load_rack(args)
    if args.file and args.cocycle is None:
        doc = _load_json_file(args.file)
        if "q" not in doc:
            raise CliError("file has no cocycle values", EXIT_INVALID)
        try:
            q = Cocycle2.from_json(doc, rack=rack)
        except (KeyError, TypeError) as exc:
            raise CliError(
                "malformed cocycle document: %s" % exc, EXIT_INVALID
            )
        except ValueError as exc:
            raise CliError("invalid cocycle: %s" % exc, EXIT_ASSERTION)
    else:
        q = _load_cocycle(args, rack, name)
    payload = {
        "rack": name or "file",
        "q": [[str(v) for v in row] for row in q.q],
        "diagonal": [str(q(x, x)) for x in range(rack.n)],
    }
    return payload, True


def _cmd_braid_check(args):
    rack, name = _load_rack(args)
    q = _load_cocycle(args, rack, name)
    space = make_braiding(rack, q, _flavor(args))
    holds = check_braid_equation(space)
    invertible = space.is_invertible()
    payload = {
        "rack": name or "file",
        "flavor": space.flavor,
        "braid_equation": holds,
        "invertible": invertible,
    }
    return payload, holds and invertible


def _cmd_nichols_dim(args):
    rack, name = _load_rack(args)
    q = _load_cocycle(args, rack, name)
    gb = _complete_gb(quadratic_ideal(rack, q, _flavor(args)), args)
    dim = quotient_dim(gb)
    payload = {
        "rack": name or "file",
        "flavor": args.flavor,
        "dim": dim,
        "basis_size": len(gb.elements),
        "status": gb.status,
    }
    return payload, True


def _cmd_nichols_j2(args):
    rack, name = _load_rack(args)
    q = _load_cocycle(args, rack, name)
    flavor = _flavor(args)
    space = make_braiding(rack, q, flavor)
    s2 = quantum_symmetrizer(space, 2)
    kernel = nullspace_basis(s2.dense(), ncols=s2.cols)
    relations = select_Rprime(enumerate_classes(rack), q)
    match = verify_J2(rack, q, flavor)
    payload = {
        "rack": name or "file",
        "flavor": flavor,
        "kernel_dim": len(kernel),
        "relation_count": len(relations),
        "span_match": match,
    }
    return payload, match and len(kernel) == len(relations)


def _cmd_nichols_hilbert(args):
    rack, name = _load_rack(args)
    q = _load_cocycle(args, rack, name)
    gb = _complete_gb(quadratic_ideal(rack, q, _flavor(args)), args)
    up_to = args.max_deg if args.max_deg else 8
    payload = {
        "rack": name or "file",
        "flavor": args.flavor,
        "series": hilbert_series(gb, up_to),
        "dim": quotient_dim(gb),
    }
    return payload, True


def _cmd_gb_run(args):
    if not args.file:
        raise CliError("gb run needs --file with an ideal document", EXIT_INVALID)
    doc = _load_json_file(args.file)
    try:
        names, polys = ideal_from_json(doc)
    except (KeyError, ValueError, TypeError) as exc:
        raise CliError("invalid ideal document: %s" % exc, EXIT_INVALID)
    max_deg = args.max_deg if args.max_deg else 16
    gb = groebner(polys, max_deg=max_deg)
    if not gb.complete:
        raise CliError(
            "basis completion hit the degree budget (%s)" % gb.status,
            EXIT_BUDGET,
        )
    confluent = audit_obstructions(gb)
    payload = {
        "alphabet": names,
        "status": gb.status,
        "basis_size": len(gb.elements),
        "quotient_dim": quotient_dim(gb),
        "obstructions_reduce": confluent,
        "basis": ideal_to_json(names, gb.elements, status=gb.status),
    }
    return payload, bool(confluent)


_FAMILY_FLAG = {
    "Eminus": deform.EMINUS,
    "Echi": deform.ECHI,
    "Etilde": deform.ETILDE,
    "GenericLambda": deform.GENERIC,
}


def _default_params(args):
    if args.file:
        doc = _load_json_file(args.file)
        try:
            return deform.DeformParams.from_json(doc)
        except (KeyError, ValueError, TypeError) as exc:
            raise CliError("invalid parameter document: %s" % exc, EXIT_INVALID)
    family = args.family
    if family not in _FAMILY_FLAG:
        raise CliError(
            "--family must be one of %s" % ", ".join(sorted(_FAMILY_FLAG)),
            EXIT_INVALID,
        )
    family = _FAMILY_FLAG[family]
    n = args.n if args.n else 4
    one = Fraction(1)
    if family == deform.EMINUS:
        return deform.DeformParams.eminus(n, one, one, one)
    if family == deform.ECHI:
        return deform.DeformParams.echi(n, one, one)
    if family == deform.ETILDE:
        return deform.DeformParams.etilde(one, one, one)
    if not args.rack or not args.cocycle:
        raise CliError(
            "GenericLambda needs --rack and --cocycle", EXIT_INVALID
        )
    rack, name = _load_rack(args)
    q = _load_cocycle(args, rack, name)
    space = pointed_lambda_space(rack, q)
    roots = {c.base_pair: one for c in space.free_classes()}
    return deform.DeformParams.generic(
        args.rack, args.cocycle, space.value_map(roots)
    )


def _cmd_deform_verify(args):
    params = _default_params(args)
    try:
        report = deform.verify_nonzero(
            params,
            samples=args.samples,
            seed=args.seed,
            max_deg=args.max_deg if args.max_deg else 16,
        )
    except deform.NonzeroCheckFailed as exc:
        return {"family": params.family, "error": str(exc)}, False
    return report, True


def _cmd_deform_audit(args):
    if args.family and args.family != "Eminus":
        raise CliError("the printed-basis audit is specific to Eminus", EXIT_INVALID)
    if args.file:
        params = _default_params(args)
    else:
        params = deform.DeformParams.eminus(4, Fraction(1), Fraction(1), Fraction(1))
    try:
        report = deform.appendix_membership_audit(params)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INVALID)
    return report, bool(report["all_member"])


def _cmd_deform_params(args):
    rack, name = _load_rack(args)
    q = _load_cocycle(args, rack, name)
    pointed = pointed_lambda_space(rack, q)
    copointed = copointed_lambda_space(rack, q)
    hom = hom_vanishing_check(rack, q)
    payload = {
        "rack": name or "file",
        "pointed": {
            "free_dim": pointed.free_dim,
            "classes": pointed.to_json(),
        },
        "copointed": {
            "free_dim": copointed.free_dim,
            "classes": copointed.to_json(),
        },
        "hom_vanishing": hom,
    }
    return payload, True


def _realization_for(args):
    if not args.rack or not args.cocycle:
        raise CliError("need --rack and --cocycle", EXIT_INVALID)
    try:
        return grouprealize.builtin_realization(args.rack, args.cocycle)
    except (KeyError, grouprealize.RealizationError) as exc:
        raise CliError(str(exc), EXIT_INVALID)


def _cmd_lift_pointed(args):
    realization = _realization_for(args)
    q = realization.induced_cocycle()
    space = pointed_lambda_space(realization.rack, q)
    rng = random.Random(args.seed)
    lam = {}
    for c in space.free_classes():
        lam[c.base_pair] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    try:
        records = deform.pointed_lifting_generators(realization, lam)
    except deform.ConditionViolated as exc:
        return {"error": str(exc)}, False
    payload = {
        "rack": args.rack,
        "cocycle": args.cocycle,
        "free_values": {
            ",".join(str(a) for a in k): str(v) for k, v in lam.items()
        },
        "count": len(records),
        "classes": [
            {
                "class": ",".join(str(a) for a in rec["class"].base_pair),
                "lam": str(rec["lam"]),
                "g": perm.cycle_notation(rec["g"]),
                "relation": _poly_doc(rec["b"]),
            }
            for rec in records
        ],
    }
    return payload, True


_COPOINTED_FAMILY = {
    ("o24", "const:-1"): "TranspMinus",
    ("o24", "chi"): "TranspChi",
    ("o44", "const:-1"): "FourCycles",
}


def _cmd_lift_copointed(args):
    key = (args.rack, args.cocycle)
    if key not in _COPOINTED_FAMILY:
        raise CliError(
            "copointed liftings exist for %s"
            % ", ".join("%s/%s" % k for k in sorted(_COPOINTED_FAMILY)),
            EXIT_INVALID,
        )
    family = _COPOINTED_FAMILY[key]
    rng = random.Random(args.seed)
    if family == "FourCycles":
        inv = deform.fourcycle_inverses()
        pair_values = {}
        lam = [None] * 6
        for i in range(6):
            j = inv[i]
            key2 = (min(i, j), max(i, j))
            if key2 not in pair_values:
                pair_values[key2] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        pairs = sorted(pair_values)
        pair_values[pairs[-1]] = -sum(pair_values[k] for k in pairs[:-1])
        for (i, j), v in pair_values.items():
            lam[i] = v
            lam[j] = v
    else:
        lam = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(5)]
        lam.append(-sum(lam))
    try:
        cl = deform.CopointedLambda(family, lam)
    except deform.NormalizationViolated as exc:
        return {"error": str(exc)}, False
    gens = deform.copointed_lifting_generators(cl)
    rack = cl.rack()
    payload = {
        "family": family,
        "lambda": {rack.labels[i]: str(v) for i, v in enumerate(cl.lam)},
        "quadratic_count": len(gens["quadratic"]),
        "deformed": [
            {
                "x": rack.labels[rec["x"]],
                "poly": _poly_doc(rec["poly"]),
                "f": {
                    perm.cycle_notation(g): str(c)
                    for g, c in sorted(rec["f"].items())
                },
            }
            for rec in gens["deformed"]
        ],
    }
    return payload, True


def _cmd_realize_check(args):
    realization = _realization_for(args)
    reference = builtin_cocycle(args.rack, args.cocycle)
    report = grouprealize.validate_principal(realization, cocycle=reference)
    return report, bool(report["ok"])


def _cmd_realize_dual(args):
    realization = _realization_for(args)
    braiding = grouprealize.dual_braiding_check(realization)
    pointed = grouprealize.comatrix_action_audit(realization, "pointed")
    copointed = grouprealize.comatrix_action_audit(realization, "copointed")
    payload = {
        "braiding": braiding,
        "pointed": pointed,
        "copointed": copointed,
    }
    ok = braiding["ok"] and pointed["ok"] and copointed["ok"]
    return payload, ok


def _cmd_realize_theta(args):
    realization = _realization_for(args)
    report = grouprealize.theta_characters(realization)
    return report, bool(report["ok"])


_HANDLERS = {
    ("rack", "check"): _cmd_rack_check,
    ("rack", "props"): _cmd_rack_props,
    ("cocycle", "check"): _cmd_cocycle_check,
    ("braid", "check"): _cmd_braid_check,
    ("nichols", "dim"): _cmd_nichols_dim,
    ("nichols", "j2"): _cmd_nichols_j2,
    ("nichols", "hilbert"): _cmd_nichols_hilbert,
    ("gb", "run"): _cmd_gb_run,
    ("deform", "verify"): _cmd_deform_verify,
    ("deform", "audit"): _cmd_deform_audit,
    ("deform", "params"): _cmd_deform_params,
    ("lift", "pointed"): _cmd_lift_pointed,
    ("lift", "copointed"): _cmd_lift_copointed,
    ("realize", "check"): _cmd_realize_check,
    ("realize", "dual"): _cmd_realize_dual,
    ("realize", "theta"): _cmd_realize_theta,
}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="rackalg",
        description="exact computations with racks, braidings and their algebras",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rack", help="builtin rack name: %s" % ", ".join(RACK_NAMES))
    common.add_argument("--cocycle", help="builtin cocycle: const:w or chi")
    common.add_argument("--flavor", default="V", help="braiding flavor, V or W")
    common.add_argument("--file", help="JSON input file")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=0)
    common.add_argument("--max-deg", dest="max_deg", type=int, default=0)
    common.add_argument("--json-out", dest="json_out", help="also write the report here")
    common.add_argument("--family", help="deformation family name")
    common.add_argument("--n", type=int, default=0, help="transposition rack size")
    groups = {}
    sub = parser.add_subparsers(dest="group", required=True)
    for group, action in sorted(_HANDLERS):
        if group not in groups:
            gp = sub.add_parser(group)
            groups[group] = gp.add_subparsers(dest="action", required=True)
        groups[group].add_parser(action, parents=[common])
    return parser


def _options_doc(args):
    doc = {"seed": args.seed}
    for key in ("rack", "cocycle", "flavor", "file", "family"):
        value = getattr(args, key, None)
        if value:
            doc[key] = value
    for key in ("samples", "max_deg", "n"):
        value = getattr(args, key, 0)
        if value:
            doc[key] = value
    return doc


def _emit(doc, json_out):
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    sys.stdout.write(text)
    if json_out:
        with open(json_out, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None):
    args = _build_parser().parse_args(argv)
    command = (args.group, args.action)
    handler = _HANDLERS[command]
    started = time.perf_counter()
    doc = {
        "schema": SCHEMA,
        "version": __version__,
        "command": "%s %s" % command,
        "options": _options_doc(args),
    }
    try:
        payload, ok = handler(args)
        code = EXIT_OK if ok else EXIT_ASSERTION
    except CliError as exc:
        payload, ok = {"error": str(exc)}, False
        code = exc.code
    except DegreeBudgetExceeded as exc:
        payload, ok = {"error": str(exc)}, False
        code = EXIT_BUDGET
    doc["ok"] = ok
    doc["report"] = _jsonable(payload)
    _emit(doc, args.json_out)
    elapsed = time.perf_counter() - started
    print("[time] %s %s %.3fs" % (command[0], command[1], elapsed), file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
