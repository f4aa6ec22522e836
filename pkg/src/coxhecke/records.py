"""JSON records emitted by the command line, and their inverses for replay.

Every record carries ``"schema": SCHEMA``.  Words are arrays of generator
labels; the identity is ``[]``.  Certificate records embed the Coxeter
matrix so that a certificate file can be checked on its own.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .centre import ZeroPropagationCertificate
from .conjugation import ConjugationStep, GrowthCertificate
from .elements import Element, from_word
from .errors import ParseError
from .rings import Generic, Laurent, Rational
from .system import CoxeterMatrix, CoxeterSystem

SCHEMA = "coxhecke/1"

__all__ = [
    "SCHEMA",
    "record",
    "dumps",
    "word_json",
    "system_from_json",
    "growth_to_json",
    "growth_from_json",
    "zero_propagation_to_json",
    "zero_propagation_from_json",
    "params_to_json",
    "params_spec_from_json",
    "report_to_json",
]


def record(record_type: str, /, **fields) -> dict:
    out = {"schema": SCHEMA, "type": record_type}
    out.update(fields)
    return out


def dumps(rec: dict) -> str:
    """Canonical single-line JSON (sorted keys, no spaces) for byte-stable output."""
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


def word_json(w: Element) -> list:
    return w.labels()


def system_from_json(data: dict) -> CoxeterSystem:
    try:
        return CoxeterSystem(CoxeterMatrix.from_rows(data["matrix"]), data["generators"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed embedded system: {exc}") from None


def _element(system, labels) -> Element:
    if not isinstance(labels, list):
        raise ParseError("words must be arrays of generator labels")
    return from_word(system, labels)


def _steps_json(system, cert: GrowthCertificate, sides=None) -> list:
    out = []
    for i, st in enumerate(cert.steps):
        item = {
            "generator": system.labels[st.generator],
            "from_word": word_json(st.source),
            "to_word": word_json(st.target),
            "delta": st.delta,
        }
        if sides is not None:
            item["side"] = sides[i]
        out.append(item)
    return out


def growth_to_json(cert: GrowthCertificate) -> dict:
    system = cert.start.system
    return record(
        "growth_certificate",
        system=system.to_json(),
        start=word_json(cert.start),
        gain=cert.gain,
        steps=_steps_json(system, cert),
    )


def _steps_from_json(system, items) -> tuple:
    steps = []
    for item in items:
        try:
            s = system.index(item["generator"])
            steps.append(ConjugationStep(s, _element(system, item["from_word"]), _element(system, item["to_word"])))
        except KeyError as exc:
            raise ParseError(f"certificate step lacks field {exc.args[0]}") from None
    return tuple(steps)


def growth_from_json(rec: dict, system: CoxeterSystem | None = None) -> GrowthCertificate:
    system = system or system_from_json(rec["system"])
    return GrowthCertificate(_element(system, rec["start"]), _steps_from_json(system, rec["steps"]))


def zero_propagation_to_json(cert: ZeroPropagationCertificate) -> dict:
    system = cert.target.system
    return record(
        "zero_propagation_certificate",
        system=system.to_json(),
        target=word_json(cert.target),
        steps=_steps_json(system, cert.steps, cert.sides),
        conclusion=f"x[{cert.target}] = 0",
    )


def zero_propagation_from_json(rec: dict, system: CoxeterSystem | None = None) -> ZeroPropagationCertificate:
    system = system or system_from_json(rec["system"])
    target = _element(system, rec["target"])
    steps = _steps_from_json(system, rec["steps"])
    sides = tuple(item.get("side", "") for item in rec["steps"])
    return ZeroPropagationCertificate(target, GrowthCertificate(target, steps), sides)


def params_to_json(params) -> dict:
    return params.to_json()


def params_spec_from_json(data: dict):
    """Rebuild a parameter spec from :func:`params_to_json` output."""
    ring = data.get("ring")
    classes = data.get("classes", [])
    if ring == "generic":
        return Generic()
    if ring == "rational":
        return Rational({c: (Fraction(p["a"]), Fraction(p["b"])) for c, p in enumerate(classes)})
    if ring == "laurent":
        exps = {}
        for c, p in enumerate(classes):
            terms = p["a"]
            if len(terms) != 1 or terms[0][1] != 1 or p["b"] != [[0, 1]]:
                raise ParseError("laurent parameters must be (v^L, 1)")
            exps[c] = terms[0][0]
        return Laurent(exps)
    raise ParseError(f"unknown parameter ring {ring!r}")


def report_to_json(report: dict) -> dict:
    system = report["system"]
    return record(
        "centre_report",
        system=system.to_json(),
        N=report["N"],
        params=params_to_json(report["params"]),
        second_params=params_to_json(report["second_params"]),
        kernel_dimension=report["kernel_dimension"],
        kernel_dimension_second=report["kernel_dimension_second"],
        basis=[x.to_json() for x in report["basis"]],
        certificates=[zero_propagation_to_json(c) for c in report["certificates"]],
        discrepancies=report["discrepancies"],
        passed=report["passed"],
    )
