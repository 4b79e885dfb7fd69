"""The golden-mean example: stationary diagram ``[[1, 1], [1, 0]]`` with ``Delta = (0)``.

Labels follow the two rows of the diagram: ``a`` is interval 1 (length
``lambda_1``), ``b`` interval 2.
"""

from __future__ import annotations

import logging
import math

from .bratteli import BratteliDiagram
from .coding import apply_insertion_rule, first_divergence
from .surface import SingularityData

log = logging.getLogger(__name__)

MATRIX = ((1, 1), (1, 0))
LABELS = ("a", "b")

SQRT5 = math.sqrt(5.0)
LAMBDA_1 = (SQRT5 - 1) / 2
LAMBDA_2 = (3 - SQRT5) / 2
# Perron value of MATRIX squared: the windows shrink by this factor every two steps
EPSILON = (3 + SQRT5) / 2

# reference words for the example
REFERENCE_PRECODE = "babaabaaab"
REFERENCE_CODE = "baabaababababab"
INSERTION_RULE = {("b", "a"): "a", ("a", "a"): "b", ("a", "b"): ""}


def diagram() -> BratteliDiagram:
    return BratteliDiagram.stationary(MATRIX)


def delta() -> SingularityData:
    return SingularityData((0,))


def reference_interval(n: int) -> tuple[float, float]:
    """``[lambda_1 - lambda_1 / eps^n, lambda_1 + lambda_2 / eps^n]``."""
    s = EPSILON**n
    return LAMBDA_1 - LAMBDA_1 / s, LAMBDA_1 + LAMBDA_2 / s


def rule_expansion(precode: str = REFERENCE_PRECODE) -> str:
    """Insert ``a`` into every ``ba``, ``b`` into every ``aa``, nothing into ``ab``."""
    return "".join(apply_insertion_rule(precode, INSERTION_RULE))


def compare_with_reference(word: str, reference: str, name: str) -> int | None:
    """Log and return the first position (1-based) where ``word`` leaves ``reference``."""
    k = first_divergence(word, reference)
    if k is None:
        log.info("%s agrees with the reference on %d symbols", name, min(len(word), len(reference)))
        return None
    log.warning(
        "%s diverges from the reference at symbol %d: %r vs %r",
        name,
        k + 1,
        word[k],
        reference[k],
    )
    return k + 1


def spaced_precode(word: str) -> str:
    """``babaabaaab`` -> ``b a b aa b aaa b``: runs of ``a`` grouped."""
    out = []
    for ch in word:
        if out and ch == "a" and out[-1][-1] == "a":
            out[-1] += ch
        else:
            out.append(ch)
    return " ".join(out)


def demo_text(code_length: int = 40) -> str:
    """Walk through the example and return deterministic text."""
    from .pipeline import RunConfig, build_lamination_report

    report = build_lamination_report(
        diagram(), delta(), RunConfig(code_length=max(code_length, 16), labels=LABELS)
    )
    inv = report.invariants
    lam = report.state["lambda"]
    theta = report.induction["theta"]
    lines = [
        "Golden-mean Bratteli diagram",
        f"  incidence matrix at every level: {[list(r) for r in MATRIX]}  (det = -1)",
        f"  singularity data: (0)  -> genus g = {inv['genus']}, components m = {inv['components']},"
        f" intervals r = {inv['intervals']}",
        "",
        "State vector",
        f"  lambda_1 = (sqrt 5 - 1)/2 = {LAMBDA_1!r}",
        f"  lambda_2 = (3 - sqrt 5)/2 = {LAMBDA_2!r}",
        f"  computed: {lam[0]!r}, {lam[1]!r}",
        "",
        f"Contraction factor eps = (3 + sqrt 5)/2 = {EPSILON!r}",
        "  G_n = [lambda_1 - lambda_1/eps^n, lambda_1 + lambda_2/eps^n]:",
    ]
    for n in range(1, 5):
        lo, hi = reference_interval(n)
        lines.append(f"    n = {n}: [{lo:.15f}, {hi:.15f}]  length {hi - lo:.15f}")
    lines.append("  induction windows after 2n steps (same lengths, left end at theta):")
    windows = {w["step"]: w for w in report.induction["windows"]}
    for n in range(1, 5):
        w = windows[2 * n]
        lines.append(f"    n = {n}: [{w['xi']}, {w['eta']})  length {float(w['length']):.15f}")
    lines += [
        "",
        f"theta = {theta['value']!r} +/- {theta['radius']:.3g}  (lambda_1 = {LAMBDA_1!r})",
        "",
        f"reference pre-code: {spaced_precode(REFERENCE_PRECODE)}",
        f"computed pre-code:  {spaced_precode(report.precode['text'][:10])}",
        "",
        f"reference code:            {REFERENCE_CODE}...",
        f"rule applied to reference: {rule_expansion()}",
        f"computed code:             {report.code['text'][:code_length]}",
    ]
    k = first_divergence(report.code["text"], REFERENCE_CODE)
    if k is not None:
        lines.append(f"  computed code leaves the reference code at symbol {k + 1}")
    lines += [
        "",
        "The computed code is the itinerary of theta under the rotation by lambda_2:",
        "a Sturmian word with p(n) = n + 1, the classical non-periodic recurrent",
        "symbolic geodesic on the torus.",
    ]
    return "\n".join(lines) + "\n"
