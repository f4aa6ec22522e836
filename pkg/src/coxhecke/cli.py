"""Command-line front end: one JSON record per line on stdout.

Exit codes: 0 success, 2 precondition violation or malformed input,
3 budget exceeded, 1 internal error (including a failed certificate replay
or a centre discrepancy).  Diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import centre, conjugation, parabolic
from .elements import ball_enumerate, left_descents, multiply, parse_word, right_descents
from .errors import BudgetExceededError, CoxeterError, ParseError, PreconditionError
from .hecke import HeckeAlgebra
from .records import (
    SCHEMA,
    dumps,
    growth_from_json,
    growth_to_json,
    params_spec_from_json,
    record,
    report_to_json,
    system_from_json,
    word_json,
    zero_propagation_from_json,
    zero_propagation_to_json,
)
from .rings import Rational, parse_parameter_spec
from .system import load_system

EXIT_OK, EXIT_INTERNAL, EXIT_PRECONDITION, EXIT_BUDGET = 0, 1, 2, 3

# (default, hard cap) per budget flag; caps are lifted by --allow-large
BUDGETS = {
    "depth": (20, 200),
    "max_ball": (200_000, 2_000_000),
    "max_closure": (10_000, 1_000_000),
}

# radius caps for the commands whose cost grows with the ball
RADIUS_CAP = 12


class _Failed(Exception):
    """A command produced its records but must exit non-zero."""

    def __init__(self, code):
        self.code = code


def thread_count(flag) -> int:
    if flag:
        return flag
    env = os.environ.get("COXHECKE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise PreconditionError(f"COXHECKE_THREADS must be an integer, got {env!r}") from None
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def _budget(args, name):
    value = getattr(args, name)
    default, cap = BUDGETS[name]
    if value is None:
        return default
    if value <= 0:
        raise PreconditionError(f"--{name.replace('_', '-')} must be positive")
    if value > cap and not args.allow_large:
        raise PreconditionError(
            f"--{name.replace('_', '-')} {value} exceeds the cap {cap}; pass --allow-large to override"
        )
    return value


def _radius(args):
    if args.radius < 0:
        raise PreconditionError("--radius must be non-negative")
    if args.radius > RADIUS_CAP and not args.allow_large:
        raise PreconditionError(f"--radius above {RADIUS_CAP} needs --allow-large")
    return args.radius


def _subset(system, text):
    if text is None:
        return system.generators
    text = text.strip()
    if not text:
        return frozenset()
    if "," in text or any(len(lab) > 1 for lab in system.labels):
        parts = [p.strip() for p in text.split(",") if p.strip()]
    else:
        parts = list(text)
    return system.subset(parts)


def _labels(system, I):
    return [system.labels[i] for i in sorted(I)]


def _element_record(w, **extra):
    return record("element", word=word_json(w), length=w.length, **extra)


def _params(system, text):
    spec = parse_parameter_spec(text) if text else Rational((Fraction(3), Fraction(2)))
    return spec


# --- commands ------------------------------------------------------------------


def cmd_classify(args, system):
    tc = system.classification
    out = tc.to_json(system.labels)
    out["generator_classes"] = [[system.labels[i] for i in cls] for cls in system.generator_classes]
    yield record("classification", **out)


def cmd_nf(args, system):
    w = parse_word(system, args.word)
    yield _element_record(
        w,
        left_descents=_labels(system, left_descents(w)),
        right_descents=_labels(system, right_descents(w)),
    )


def cmd_mul(args, system):
    w = parse_word(system, args.words[0])
    for text in args.words[1:]:
        w = multiply(w, parse_word(system, text))
    yield _element_record(w)


def cmd_ball(args, system):
    cap = _budget(args, "max_ball")
    for w in ball_enumerate(system, _radius(args), cap):
        yield _element_record(w)


def cmd_dcoset(args, system):
    w = parse_word(system, args.word)
    I, J = _subset(system, args.I), _subset(system, args.J)
    d = parabolic.decompose_double_coset(w, I, J)
    assert d.recompose() == w
    yield record(
        "double_coset",
        word=word_json(w),
        I=_labels(system, I),
        J=_labels(system, J),
        wbar=word_json(d.wbar),
        H=_labels(system, d.H),
        u=word_json(d.u),
        v=word_json(d.v),
    )


def cmd_project(args, system):
    v = parse_word(system, args.word)
    base = parse_word(system, args.base)
    J = _subset(system, args.J)
    if not system.is_spherical(J):
        raise PreconditionError("residue type must be spherical")
    p = parabolic.project_to_residue(v, base, J)
    yield record(
        "projection",
        word=word_json(v),
        base=word_json(base),
        J=_labels(system, J),
        projection=word_json(p),
        distance=parabolic.chamber_distance(v, p),
    )


def cmd_uplus(args, system):
    w = parse_word(system, args.word)
    result = conjugation.uplus_bfs(
        w,
        _subset(system, args.subset),
        target_gain=args.gain,
        depth_limit=_budget(args, "depth"),
        size_limit=_budget(args, "max_closure"),
    )
    if isinstance(result, conjugation.GrowthCertificate):
        yield growth_to_json(result)
    elif isinstance(result, conjugation.Exhausted):
        yield record(
            "exhausted", start=word_json(w), gain=args.gain, reachable=[word_json(x) for x in sorted(result.reachable)]
        )
    else:
        yield record("budget_exceeded", start=word_json(w), reason=result.reason, explored=result.explored)
        raise _Failed(EXIT_BUDGET)


def cmd_flatclosure(args, system):
    w = parse_word(system, args.word)
    result = conjugation.flat_closure(w, _budget(args, "max_closure"))
    if isinstance(result, conjugation.BudgetExceeded):
        yield record("budget_exceeded", start=word_json(w), reason=result.reason, explored=result.explored)
        raise _Failed(EXIT_BUDGET)
    yield record("flat_closure", start=word_json(w), members=[word_json(x) for x in sorted(result)])


def cmd_badchamber(args, system):
    w = parse_word(system, args.word)
    v = parse_word(system, args.chamber)
    result = conjugation.w_bad_decide(w, v, _budget(args, "max_closure"))
    base = {"word": word_json(w), "chamber": word_json(v)}
    if isinstance(result, conjugation.NotBad):
        cert = growth_to_json(result.certificate)
        yield record("bad_chamber", status="not_bad", certificate=cert, **base)
    elif isinstance(result, conjugation.Bad):
        yield record("bad_chamber", status="bad", closure=[word_json(x) for x in sorted(result.closure)], **base)
    else:
        yield record("bad_chamber", status="inconclusive", reason=result.reason, **base)
        raise _Failed(EXIT_BUDGET)


def cmd_class(args, system):
    w = parse_word(system, args.word)
    bound = _budget(args, "max_closure")
    result = conjugation.conjugacy_class_bounded(w, bound)
    if isinstance(result, conjugation.ExceedsBound):
        yield record("conjugacy_class", word=word_json(w), status="exceeds_bound", bound=bound)
    else:
        members = sorted(result.members)
        yield record("conjugacy_class", word=word_json(w), status="finite", size=len(members), members=[word_json(x) for x in members])


def cmd_translation(args, system):
    w = parse_word(system, args.word)
    yield record("translation", word=word_json(w), translation=conjugation.is_translation(w))


def _hecke_operand(H, system, text):
    text = text.strip()
    if text.startswith("["):
        try:
            return H.from_json(json.loads(text))
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad Hecke element: {exc}") from None
    return H.t_basis(parse_word(system, text))


def cmd_hecke_mul(args, system):
    H = HeckeAlgebra(system, _params(system, args.params))
    x = _hecke_operand(H, system, args.operands[0])
    for text in args.operands[1:]:
        x = H.multiply(x, _hecke_operand(H, system, text))
    yield record("hecke_element", params=H.params.to_json(), element=x.to_json())


def cmd_commutator(args, system):
    H = HeckeAlgebra(system, _params(system, args.params))
    x = _hecke_operand(H, system, args.element)
    gens = [system.index(args.generator)] if args.generator else range(system.rank)
    for s in gens:
        c = H.commutator_with_generator(s, x)
        yield record("commutator", generator=system.labels[s], params=H.params.to_json(), element=c.to_json(), zero=c.is_zero())


def cmd_centre_dim(args, system):
    problem = centre.CommutantProblem(system, _radius(args), _params(system, args.params))
    dim = centre.centre_dimension_at(problem, _budget(args, "max_ball"), allow_generic_radius=args.allow_large)
    yield record("centre_dimension", radius=args.radius, params=problem.algebra().params.to_json(), dimension=dim)


def cmd_centre_assert(args, system):
    report = centre.assert_centre_trivial_up_to(
        system, _radius(args), _params(system, args.params), seed=args.seed, max_ball=_budget(args, "max_ball")
    )
    yield report_to_json(report)
    if not report["passed"]:
        for d in report["discrepancies"]:
            print(f"discrepancy: {d}", file=sys.stderr)
        raise _Failed(EXIT_INTERNAL)


def _certify_one(rec, system):
    kind = rec.get("type")
    if kind == "growth_certificate":
        cert = growth_from_json(rec, system)
        problems = conjugation.replay_growth_certificate(cert)
        if cert.gain != rec.get("gain", cert.gain):
            problems.append(f"claimed gain {rec['gain']} but the chain gains {cert.gain}")
        return kind, problems
    if kind == "zero_propagation_certificate":
        cert = zero_propagation_from_json(rec, system)
        problems = conjugation.replay_growth_certificate(cert.steps)
        problems += centre.replay_zero_propagation(cert)
        return kind, problems
    if kind == "centre_report":
        sys_ = system or system_from_json(rec["system"])
        problems = []
        for i, c in enumerate(rec.get("certificates", [])):
            _, sub = _certify_one(c, sys_)
            problems += [f"certificate {i}: {p}" for p in sub]
        covered = {tuple(c["target"]) for c in rec.get("certificates", [])}
        for w in ball_enumerate(sys_, rec["N"]):
            if not w.is_identity and tuple(word_json(w)) not in covered:
                problems.append(f"no certificate for {w}")
        H = HeckeAlgebra(sys_, params_spec_from_json(rec["params"]))
        for i, data in enumerate(rec.get("basis", [])):
            x = H.from_json(data)
            for s in range(sys_.rank):
                if not H.commutator_with_generator(s, x).is_zero():
                    problems.append(f"basis vector {i} does not commute with T_{sys_.labels[s]}")
        if rec.get("kernel_dimension") != 1 or not rec.get("passed"):
            problems.append("report does not claim a trivial centre")
        return kind, problems
    raise ParseError(f"cannot certify records of type {kind!r}")


def cmd_certify(args, system):
    failed = False
    with open(args.certificate, encoding="utf-8") as fh:
        lines = [ln for ln in fh if ln.strip()]
    if not lines:
        raise ParseError("certificate file is empty")
    for n, line in enumerate(lines, 1):
        try:
            rec = json.loads(line)
        except ValueError as exc:
            raise ParseError(f"line {n} is not JSON: {exc}") from None
        if not isinstance(rec, dict):
            raise ParseError(f"line {n} is not a JSON object")
        if rec.get("schema") != SCHEMA:
            raise ParseError(f"line {n}: unsupported schema {rec.get('schema')!r}")
        kind, problems = _certify_one(rec, system)
        failed |= bool(problems)
        yield record("certify_result", line=n, certificate_type=kind, valid=not problems, problems=problems)
    if failed:
        raise _Failed(EXIT_INTERNAL)


def cmd_certify_emit(args, system):
    """Certificates for every non-identity element of a ball (used to build certify inputs).

    Translations of affine systems have no certificate and are skipped.
    """
    affine = system.classification.kind == "Affine"
    for w in ball_enumerate(system, _radius(args), _budget(args, "max_ball")):
        if w.is_identity or (affine and conjugation.is_translation(w)):
            continue
        yield zero_propagation_to_json(centre.propagate_vanishing(w))


# --- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--system", help="Coxeter system file (JSON with generators and matrix)")
    common.add_argument("--threads", type=int, default=None, help="worker threads (env COXHECKE_THREADS)")
    common.add_argument("--allow-large", action="store_true", help="lift the hard caps on budgets")
    common.add_argument("--depth", type=int, default=None, help="BFS depth limit (default 20, cap 200)")
    common.add_argument("--max-ball", type=int, default=None, help="ball size cap (default 200000)")
    common.add_argument("--max-closure", type=int, default=None, help="closure/class size cap (default 10000)")

    p = argparse.ArgumentParser(prog="coxhecke", description="Exact Coxeter group and Hecke algebra computations.")
    p.add_argument("--version", action="version", version=SCHEMA)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=func)
        return sp

    add("classify", cmd_classify, "type of the system")
    add("nf", cmd_nf, "normal form, length, descents").add_argument("--word", required=True)
    add("mul", cmd_mul, "product of words").add_argument("words", nargs="+")
    add("ball", cmd_ball, "all elements of length <= radius").add_argument("--radius", type=int, required=True)
    sp = add("dcoset", cmd_dcoset, "double coset decomposition w = u wbar v")
    sp.add_argument("--word", required=True)
    sp.add_argument("--I", required=True)
    sp.add_argument("--J", required=True)
    sp = add("project", cmd_project, "projection of a chamber onto a spherical residue")
    sp.add_argument("--word", required=True)
    sp.add_argument("--base", default="")
    sp.add_argument("--J", required=True)
    sp = add("uplus", cmd_uplus, "growth certificate in the non-decreasing conjugation order")
    sp.add_argument("--word", required=True)
    sp.add_argument("--gain", type=int, default=4)
    sp.add_argument("--subset", default=None, help="restrict conjugating generators")
    add("flatclosure", cmd_flatclosure, "closure under length-preserving conjugation").add_argument("--word", required=True)
    sp = add("badchamber", cmd_badchamber, "is the chamber bad for w")
    sp.add_argument("--word", required=True)
    sp.add_argument("--chamber", default="")
    add("class", cmd_class, "conjugacy class if within --max-closure").add_argument("--word", required=True)
    add("translation", cmd_translation, "translation test (affine systems)").add_argument("--word", required=True)
    sp = add("hecke-mul", cmd_hecke_mul, "product of Hecke elements (words or JSON)")
    sp.add_argument("operands", nargs="+")
    sp.add_argument("--params", default=None, help="generic | laurent:L=1 | rational:a=3,b=2")
    sp = add("commutator", cmd_commutator, "T_s x - x T_s")
    sp.add_argument("--element", required=True)
    sp.add_argument("--generator", default=None)
    sp.add_argument("--params", default=None)
    sp = add("centre-dim", cmd_centre_dim, "dimension of central elements supported in B_N")
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--params", default=None)
    sp = add("centre-assert", cmd_centre_assert, "both routes to a trivial centre up to radius N")
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--params", default=None)
    sp.add_argument("--seed", type=int, default=0)
    add("certify", cmd_certify, "replay a certificate file").add_argument("--certificate", required=True)
    add("certify-emit", cmd_certify_emit, "emit zero-propagation certificates for a ball").add_argument(
        "--radius", type=int, required=True
    )
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PRECONDITION if exc.code else EXIT_OK
    try:
        args.threads = thread_count(args.threads)
        if args.system:
            system = load_system(args.system)
        elif args.command == "certify":
            system = None
        else:
            raise PreconditionError("--system is required")
        if system is not None and args.command in ("centre-assert",):
            tc = system.classification
            if tc.kind != "Indefinite" or not tc.irreducible:
                raise PreconditionError("centre-assert needs an irreducible system of indefinite type")
        if system is not None and args.command == "translation" and system.classification.kind != "Affine":
            raise PreconditionError("translations are defined for affine systems only")
        if system is not None and args.command in ("certify-emit",) and system.classification.kind == "Finite":
            raise PreconditionError("zero propagation needs an infinite system")
        for rec in args.func(args, system):
            out.write(dumps(rec) + "\n")
        out.flush()
        return EXIT_OK
    except _Failed as exc:
        out.flush()
        return exc.code
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (PreconditionError, ParseError, CoxeterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
