"""Property sweeps over the restricted-presentation and small-algebra corpora."""

from __future__ import annotations

from typing import Callable, Iterator

from .corpus import algebra_corpus
from .errors import BadInput, TooLarge
from .liestruct import theorem_2_1_evaluate, theorem_2_2_evaluate
from .radical import radical, radical_brute_oracle
from .restricted import SWEEP_FAMILIES, corollary_evaluate, lemma_3_2_check, sweep_corpus
from .verdicts import SKIPPED

ALGEBRA_FAMILY = "algebra-corpus"


def _pbw(L) -> tuple[str, dict]:
    U = L.u  # build_u validates associativity and the defining relations
    ok = U.dim == L.p**L.dim
    return ("pass" if ok else "fail"), {"dim_u": U.dim}


def _theorem(v) -> tuple[str, dict]:
    payload = {"verdict": v.to_json()}
    if not v.in_hypothesis:
        values = {c["value"] for name, c in v.conditions.items() if ".cond" in name and isinstance(c["value"], bool)}
        payload["anomaly"] = len(values) > 1
    return v.outcome, payload


def _thm22_class(L) -> tuple[str, dict]:
    v = theorem_2_2_evaluate(L.u)
    if not v.in_hypothesis:
        return "outside-hypothesis", {"verdict": v.to_json()}
    units = v.conditions.get("thm2.2.cond2.units_nilpotent", {}).get("value")
    if units is True:
        ok = v.conditions.get("thm2.2.classes_equal", {}).get("value") is True
        return ("pass" if ok else "fail"), {"verdict": v.to_json()}
    return "pass", {"units_nilpotent": units}


def _radical(A) -> tuple[str, dict]:
    J = radical(A).radical
    ok = J == radical_brute_oracle(A)
    return ("pass" if ok else "fail"), {"radical_dim": J.dim}


def _thm21_forward(A) -> tuple[str, dict]:
    """Solvable units over |F| >= 4 force Lie solvability and A/J commutative."""
    if A.field.order < 4:
        return "outside-hypothesis", {}
    v = theorem_2_1_evaluate(A)
    if v.value("thm2.1.cond1") is not True:
        return "pass", {"units_solvable": v.value("thm2.1.cond1")}
    ok = v.value("thm2.1.cond2") is True and v.value("thm2.1.cond3") is True
    return ("pass" if ok else "fail"), {"verdict": v.to_json()}


RESTRICTED_CHECKS: dict[str, Callable] = {
    "pbw": _pbw,
    "lemma3.2": lambda L: _theorem(lemma_3_2_check(L)),
    "thm2.2-class": _thm22_class,
    "cor3.8": lambda L: _theorem(corollary_evaluate(L, "3.8")),
    "cor3.9": lambda L: _theorem(corollary_evaluate(L, "3.9")),
    "cor3.10": lambda L: _theorem(corollary_evaluate(L, "3.10")),
    "radical": lambda L: _radical(L.u),
}

ALGEBRA_CHECKS: dict[str, Callable] = {
    "radical": _radical,
    "thm2.1-forward": _thm21_forward,
    "thm2.2": lambda A: _theorem(theorem_2_2_evaluate(A)),
}

FAMILIES = list(SWEEP_FAMILIES) + [ALGEBRA_FAMILY]


def checks_for(family: str) -> list[str]:
    if family == ALGEBRA_FAMILY:
        return list(ALGEBRA_CHECKS)
    if family in SWEEP_FAMILIES:
        return list(RESTRICTED_CHECKS)
    raise BadInput(f"unknown sweep family {family!r}; known: {', '.join(FAMILIES)}")


def _instances(family: str) -> Iterator:
    if family == ALGEBRA_FAMILY:
        yield from algebra_corpus()
    else:
        yield from sweep_corpus(family)


def run_one(family: str, check: str, index: int, inst) -> dict:
    fn = (ALGEBRA_CHECKS if family == ALGEBRA_FAMILY else RESTRICTED_CHECKS)[check]
    try:
        outcome, payload = fn(inst)
    except TooLarge as exc:
        outcome, payload = SKIPPED, {"reason": str(exc)}
    rec = {"family": family, "check": check, "index": index, "outcome": outcome}
    if outcome in ("fail", "undetermined") or payload.get("anomaly"):
        rec.update(payload)
        rec["instance"] = inst.to_json()
    return rec


def sweep(family: str, check: str, jobs: int = 1) -> tuple[list[dict], dict]:
    """Run ``check`` over a family; returns (non-passing records, summary)."""
    if check not in checks_for(family):
        raise BadInput(f"unknown check {check!r} for {family}; known: {', '.join(checks_for(family))}")
    insts = list(_instances(family))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as pool:
            recs = list(pool.map(run_one, [family] * len(insts), [check] * len(insts), range(len(insts)), insts, chunksize=16))
    else:
        recs = [run_one(family, check, i, inst) for i, inst in enumerate(insts)]
    counts: dict[str, int] = {}
    for r in recs:
        counts[r["outcome"]] = counts.get(r["outcome"], 0) + 1
    summary = {"family": family, "check": check, "instances": len(recs), "counts": dict(sorted(counts.items()))}
    summary["inconsistencies"] = counts.get("fail", 0)
    flagged = [r for r in recs if r["outcome"] != "pass"]
    return flagged, summary
