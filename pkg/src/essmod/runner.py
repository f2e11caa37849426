"""Instance checking and witness construction behind the CLI.

Reports are plain JSON-able dicts. Every report carries the digest of the
instance it was computed from plus a digest of its own canonical body
(timing excluded), so reruns with the same seed are comparable bit for bit.
"""

from __future__ import annotations

import time
from fractions import Fraction

from . import algebra, fields, modules, serialize
from .errors import PreconditionFailed, SchemaError
from .serialize import (
    SCHEMA,
    element_from_json,
    element_to_json,
    field_spec_from_json,
    frac_to_json,
    ideal_to_json,
    module_element_to_json,
    section_to_json,
    subset_to_json,
)


def _right_ideal_from_payload(payload: dict) -> tuple[algebra.RightIdeal, list]:
    if "support_projection" not in payload:
        raise SchemaError("right_ideal payload needs a support_projection")
    p = element_from_json(payload["support_projection"])
    try:
        ideal = algebra.ideal_from_projection(p)
    except Exception as exc:
        raise SchemaError(f"bad support projection: {exc}") from exc
    gens = [element_from_json(g) for g in payload.get("generators", [])]
    for g in gens:
        if g.shape != ideal.shape:
            raise SchemaError("generator over a different shape")
    return ideal, gens


def _submodule_from_payload(payload: dict) -> modules.Submodule:
    return serialize.submodule_from_json(payload)


def _finish(report: dict, t0: float) -> dict:
    body = dict(report)
    report["digest"] = serialize.digest(body)
    report["timing_ms"] = round((time.perf_counter() - t0) * 1000.0, 3)
    return report


def run_check(doc) -> dict:
    """Decide essentiality of an instance document and report evidence."""
    t0 = time.perf_counter()
    kind, payload = serialize.validate_instance(doc)
    report = {
        "schema": SCHEMA,
        "kind": "check_report",
        "instance_kind": kind,
        "instance_digest": serialize.digest(doc),
    }
    if kind == "right_ideal":
        ideal, _ = _right_ideal_from_payload(payload)
        decision, cert = algebra.is_essential_right_ideal(ideal)
        report["decision"] = decision
        report["certificate"] = _ideal_certificate_json(cert)
        report["checks_ok"] = (
            cert.intersection_dim == 0 if not decision else True
        )
    elif kind == "module_submodule":
        n = _submodule_from_payload(payload)
        decision, cert = modules.is_essential_submodule(n)
        report["decision"] = decision
        report["essential"] = cert.essential
        report["topologically_essential"] = cert.topologically_essential
        cert_doc = {"ideal": _ideal_certificate_json(cert.ideal_certificate)}
        if cert.witness is not None:
            cert_doc["witness"] = module_element_to_json(cert.witness)
            cert_doc["witness_probe_found"] = cert.witness_probe_found
        report["certificate"] = cert_doc
        report["checks_ok"] = decision or cert.witness_probe_found is False
    else:
        spec = field_spec_from_json(payload)
        decision = fields.is_essential_field(spec)
        report["decision"] = decision.essential
        report["defect_set"] = subset_to_json(decision.defect_set)
        report["spanning_probes"] = len(decision.probes)
        report["checks_ok"] = all(p.full for p in decision.probes)
    return _finish(report, t0)


def _ideal_certificate_json(cert: algebra.IdealCertificate) -> dict:
    doc: dict = {"essential": cert.essential}
    if cert.essential:
        doc["identity_error"] = cert.identity_error
    else:
        doc["block"] = cert.block
        doc["vector"] = [serialize.complex_to_json(z) for z in cert.vector]
        doc["rank_one"] = element_to_json(cert.rank_one)
        doc["intersection_dim"] = cert.intersection_dim
    return doc


def run_witness(doc, samples: int = 8, section_index: int = 0) -> dict:
    """Construct and verify the witness objects matching the instance kind."""
    t0 = time.perf_counter()
    kind, payload = serialize.validate_instance(doc)
    report = {
        "schema": SCHEMA,
        "kind": "witness_report",
        "instance_kind": kind,
        "instance_digest": serialize.digest(doc),
    }
    if kind == "right_ideal":
        ideal, gens = _right_ideal_from_payload(payload)
        x = gens[0] if gens else ideal.support_projection
        if x.is_zero(1e-12):
            raise PreconditionFailed("no nonzero generator to build a subideal from")
        w = algebra.closed_subideal(x)
        report["witness"] = {
            "eps": w.eps,
            "a": element_to_json(w.a),
            "p": element_to_json(w.p),
            "fa": element_to_json(w.fa),
            "ideal": ideal_to_json(w.ideal),
            "rank": w.ideal.rank(),
            "fa_p_error": w.fa_p_error,
            "max_probe_error": max(w.probe_errors, default=0.0),
            "max_membership_error": max(w.membership_errors, default=0.0),
        }
        report["checks_ok"] = w.verified and all(e <= 1e-8 for e in w.membership_errors)
    elif kind == "module_submodule":
        n = _submodule_from_payload(payload)
        decision, cert = modules.is_essential_submodule(n)
        report["decision"] = decision
        if decision:
            report["witness"] = None
            report["checks_ok"] = True
        else:
            probe = modules.reformulation_probe(cert.witness, n)
            report["witness"] = {
                "m": module_element_to_json(cert.witness),
                "probe_found": probe.found,
            }
            report["checks_ok"] = probe.found is False
    else:
        spec = field_spec_from_json(payload)
        decision = fields.is_essential_field(spec)
        report["decision"] = decision.essential
        if decision.essential:
            m = spec.generators[section_index % len(spec.generators)]
            w = fields.essential_witness(m, spec.subfield)
            report["witness"] = {
                "kind": "essential",
                "a": section_to_json(w.a),
                "ma": section_to_json(w.ma),
                "support": [frac_to_json(w.support[0]), frac_to_json(w.support[1])],
                "residual_empty": w.residual_empty,
                "ma_nonzero": w.ma_nonzero,
            }
            report["checks_ok"] = w.verified
        else:
            report["witness"] = _non_essential_witnesses(spec, decision, samples)
            report["checks_ok"] = report["witness"]["all_verified"]
    return _finish(report, t0)


def _non_essential_witnesses(spec, decision, samples: int) -> dict:
    closure_interior = decision.defect_set.closure().interior()
    iv = max(closure_interior.intervals, key=lambda i: i.hi - i.lo)
    quarter = (iv.hi - iv.lo) / 4
    lo, hi = iv.lo + quarter, iv.hi - quarter
    xs = _dyadic_samples(lo, hi, samples, decision.defect_set)
    inductive = fields.inductive_witness_section(spec, (lo, hi), xs)
    doc = {
        "kind": "non_essential",
        "interval": [frac_to_json(lo), frac_to_json(hi)],
        "samples": [frac_to_json(x) for x in xs],
        "inductive": {
            "m": section_to_json(inductive.m),
            "lambdas": [frac_to_json(l) for l in inductive.lambdas],
            "picks": list(inductive.picks),
            "sample_defects_verified": inductive.sample_defects_verified,
        },
    }
    lambda_bounds_ok = all(
        Fraction(0) < lam <= Fraction(1, 2 ** j)
        for j, lam in enumerate(inductive.lambdas, start=1)
    )
    direct = None
    for g in spec.generators:
        defect = fields.residual_set(g, spec.subfield)
        if not defect.closure().interior().is_empty():
            w = fields.non_essential_witness(g, spec.subfield)
            direct = {
                "support": [frac_to_json(w.support[0]), frac_to_json(w.support[1])],
                "closure_equal": w.closure_equal,
                "ma_nonzero": w.ma_nonzero,
                "probes_ok": all(p.implication_holds for p in w.probes),
            }
            break
    doc["direct"] = direct
    doc["all_verified"] = (
        inductive.sample_defects_verified
        and lambda_bounds_ok
        and (direct is None or (direct["closure_equal"] and direct["ma_nonzero"] and direct["probes_ok"]))
    )
    return doc


def _dyadic_samples(lo: Fraction, hi: Fraction, count: int, defect) -> list[Fraction]:
    """Distinct dyadic-grid points of (lo, hi) that lie in the defect set."""
    out: list[Fraction] = []
    depth = 3
    while len(out) < count and depth < 24:
        step = (hi - lo) / (1 << depth)
        for i in range(1, (1 << depth)):
            x = lo + i * step
            if x not in out and defect.contains(x):
                out.append(x)
                if len(out) == count:
                    break
        depth += 1
    if len(out) < count:
        raise PreconditionFailed("could not find enough defect samples in the interval")
    return sorted(out)
