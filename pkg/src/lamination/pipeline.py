"""Run every stage from ``(diagram, Delta)`` to the symbolic geodesic and collect a report."""

from __future__ import annotations

import json
import logging
from contextlib import contextmanager
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from typing import Sequence

from . import bratteli, coding, iet as iet_mod, surface
from .bratteli import BratteliDiagram
from .errors import (
    InvalidConfig,
    LaminationError,
    NotErgodic,
    NotUnimodular,
    OrbitHitsDiscontinuity,
    RankMismatch,
)
from .surface import SingularityData

log = logging.getLogger(__name__)

REPORT_VERSION = 1
SIDE_OFFSET = 1e-9  # the itinerary cross-check starts just right of theta
WINDOWS_SHOWN = 8

DISCLAIMER = (
    "Only the arithmetic and symbolic consequences are checked: invariant counts, "
    "unimodularity, the state vector, and a recurrent non-periodic code. The geodesic "
    "lamination on a hyperbolic surface is not constructed."
)
LIMITATIONS = (
    "The permutation is built from the cycle type of Delta; whether it lies in the "
    "Rauzy class realizing Delta is not checked.",
    "The singularity data of the lamination is echoed from the input, not recovered "
    "from the code.",
    "Period, recurrence and complexity checks look at finite prefixes only.",
)


@dataclass(frozen=True)
class RunConfig:
    depth: int = 64  # induction steps
    tol: float = bratteli.DEFAULT_TOL
    diagram_depth: int = bratteli.DEFAULT_DEPTH
    code_length: int = 1000
    precode_length: int = 10
    analysis_length: int = 2000
    analysis_max_n: int = 10
    frequency_tol: float = 1e-2
    labels: tuple[str, ...] | None = None
    output_format: str = "json"

    def __post_init__(self):
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
        problems = []
        if self.depth < 1:
            problems.append("depth must be >= 1")
        if not self.tol > 0:
            problems.append("tol must be > 0")
        if self.diagram_depth < 1:
            problems.append("diagram_depth must be >= 1")
        if self.code_length < 0:
            problems.append("code_length must be >= 0")
        if self.precode_length < 1:
            problems.append("precode_length must be >= 1")
        if self.analysis_max_n < 1:
            problems.append("analysis_max_n must be >= 1")
        if self.analysis_length < max(4, 3 * self.analysis_max_n):
            problems.append("analysis_length must be >= max(4, 3 * analysis_max_n)")
        if self.output_format not in ("json", "text"):
            problems.append("output_format must be 'json' or 'text'")
        if problems:
            raise InvalidConfig("; ".join(problems))

    def to_dict(self) -> dict:
        out = asdict(self)
        out["labels"] = list(self.labels) if self.labels is not None else None
        return out


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class LaminationReport:
    input: dict
    config: dict
    invariants: dict
    unimodular: dict
    ergodicity: dict
    state: dict
    permutation: dict
    induction: dict
    precode: dict
    code: dict | None
    analysis: dict
    theorem_checks: tuple[Check, ...]
    disclaimer: str = DISCLAIMER
    limitations: tuple[str, ...] = LIMITATIONS
    version: int = REPORT_VERSION

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.theorem_checks)

    def check(self, name: str) -> Check:
        return next(c for c in self.theorem_checks if c.name == name)

    def to_dict(self) -> dict:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        out["theorem_checks"] = [asdict(c) for c in self.theorem_checks]
        out["limitations"] = list(self.limitations)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        return render_text(self)


@contextmanager
def _stage(name: str):
    try:
        yield
    except LaminationError as exc:
        if exc.stage is None:
            exc.stage = name
        raise


def _dec(x: Fraction, digits: int = 17) -> str:
    return f"{float(x):.{digits}g}"


def build_lamination_report(
    diagram: BratteliDiagram, delta: SingularityData, config: RunConfig | None = None
) -> LaminationReport:
    config = config or RunConfig()
    checks: list[Check] = []

    with _stage("surface"):
        inv = surface.surface_invariants(delta)
        area = surface.check_area(delta, inv.genus)
    with _stage("rank"):
        if diagram.rank != inv.intervals:
            raise RankMismatch(
                f"diagram rank {diagram.rank} but Delta needs r = 2g + m - 1 = {inv.intervals}"
            )
    checks.append(
        Check(
            "components m = r - 2g + 1",
            inv.intervals - 2 * inv.genus + 1 == inv.components,
            f"r - 2g + 1 = {inv.intervals} - {2 * inv.genus} + 1 = "
            f"{inv.intervals - 2 * inv.genus + 1}, m = {inv.components}",
        )
    )
    checks.append(
        Check(
            "sum k_i = 2g - 2",
            delta.total == 2 * inv.genus - 2,
            f"sum k_i = {delta.total}, 2g - 2 = {2 * inv.genus - 2}",
        )
    )
    checks.append(Check("polygon area = (4g - 4) pi", area.passed, area.detail))

    with _stage("unimodular"):
        uni = bratteli.check_unimodular(diagram, config.diagram_depth)
        if not uni.passed:
            bad = uni.failures[0]
            raise NotUnimodular(f"level {bad.level} has determinant {bad.det}")
    checks.append(Check("unimodular", True, f"|det| = 1 on {len(uni.levels)} distinct levels"))

    with _stage("ergodicity"):
        erg = bratteli.is_strictly_ergodic(diagram, config.diagram_depth, config.tol)
        if not erg.strictly_ergodic:
            raise NotErgodic(f"{erg.verdict.value}: {erg.reason}")
    checks.append(Check("strictly ergodic", True, erg.reason))

    with _stage("state_vector"):
        sv = bratteli.state_vector(diagram, config.diagram_depth, config.tol)

    with _stage("permutation"):
        pi = surface.permutation_from_singularity_data(delta)
    cycles = pi.cycles()
    checks.append(
        Check(
            "permutation irreducible with m cycles",
            pi.is_irreducible() and len(cycles) == inv.components,
            f"{pi.one_line()} has {len(cycles)} cycles",
        )
    )

    with _stage("iet"):
        t = iet_mod.IET.from_permutation(sv.exact, pi)

    with _stage("induction"):
        trace = iet_mod.induce(t, config.depth, config.tol)
        theta = iet_mod.theta_point(trace)
    tele = max(trace.telescoping_error(n) for n in range(len(trace) + 1))
    checks.append(
        Check(
            "telescoping lam = P_n lam^(n)",
            tele == 0.0 and iet_mod.unimodular_steps(trace),
            f"max error {tele:g} over {len(trace)} steps; step and product determinants +-1",
        )
    )

    with _stage("labels"):
        try:
            alphabet = coding.LabelAlphabet.for_surface(inv.genus, inv.components, config.labels)
        except ValueError as exc:
            raise InvalidConfig(str(exc)) from exc

    with _stage("precode"):
        pc = coding.pre_code(trace, theta, config.precode_length)
    with _stage("code"):
        stream = coding.expand_code(pc, trace)
        word = stream.produce(max(config.code_length, config.analysis_length))

    with _stage("analysis"):
        analysis, more = _analyze(t, theta, word[: config.analysis_length], sv, config)
    checks.extend(more)
    checks.append(
        Check(
            "singularity data echoed",
            list(delta.to_json()) == list(SingularityData(delta.ks).to_json()),
            f"Delta = {delta.to_json()} ({inv.components} complementary regions)",
        )
    )

    trace_windows = []
    for n in range(1, min(len(trace), WINDOWS_SHOWN) + 1):
        w = trace.window(n)
        if w is not None:
            trace_windows.append(
                {"step": n, "xi": _dec(w.xi), "eta": _dec(w.eta), "length": _dec(w.length)}
            )

    code_block = None
    if config.code_length > 0:
        prefix = word[: config.code_length]
        code_block = {
            "length": len(prefix),
            "symbols": list(prefix),
            "text": alphabet.render(prefix),
            "determined_by_precode": alphabet.render(stream.determined()),
        }

    return LaminationReport(
        input={
            "diagram_digest": diagram.digest(),
            "diagram": diagram.to_dict(),
            "delta": delta.to_json(),
        },
        config=config.to_dict(),
        invariants={
            "genus": inv.genus,
            "components": inv.components,
            "intervals": inv.intervals,
            "euler_characteristic": inv.euler_characteristic,
            "polygon_sides": list(area.polygon_sides),
        },
        unimodular={
            "passed": uni.passed,
            "levels": [{"level": lv.level, "det": lv.det} for lv in uni.levels],
        },
        ergodicity={
            "verdict": erg.verdict.value,
            "reason": erg.reason,
            "depth_used": erg.depth_used,
        },
        state={
            "lambda": list(sv.lam),
            "tolerance": sv.tolerance_used,
            "depth_used": sv.depth_used,
        },
        permutation={
            "one_line": list(pi.images),
            "cycles": [list(c) for c in cycles],
            "irreducible": pi.is_irreducible(),
            "top": list(t.top),
            "bottom": list(t.bottom),
        },
        induction={
            "orientation": iet_mod.ORIENTATION,
            "steps": len(trace),
            "sides": "".join(s.side[0] for s in trace.steps),
            "contraction_constant": trace.contraction_constant(),
            "telescoping_max_error": tele,
            "last_window_length": _dec(trace.level(len(trace)).total),
            "windows": trace_windows,
            "theta": {"value": theta.value, "radius": theta.radius},
        },
        precode={
            "levels": len(pc),
            "symbols": list(pc.symbols),
            "text": alphabet.render(pc.symbols),
        },
        code=code_block,
        analysis=analysis,
        theorem_checks=tuple(checks),
    )


def _analyze(t, theta, word: Sequence[int], sv, config: RunConfig):
    checks = []
    n_max = config.analysis_max_n
    max_period = len(word) // 4
    period = coding.is_periodic_up_to(word, max_period)
    checks.append(
        Check(
            "code not periodic",
            period is None,
            f"no period <= {max_period} in {len(word)} symbols"
            if period is None
            else f"period {period} found",
        )
    )

    recurrence = [coding.recurrence_check(word, n) for n in range(1, n_max + 1)]
    checks.append(
        Check(
            "factors recur",
            all(r.recurrent for r in recurrence),
            f"max gap R({n_max}) = {recurrence[-1].max_gap}",
        )
    )
    complexity = {n: coding.factor_complexity(word, n) for n in range(1, min(n_max, len(word) // 2) + 1)}

    freqs = coding.letter_frequencies(word, range(1, t.r + 1))
    err = max(abs(float(f) - x) for f, x in zip(freqs, sv.lam))
    checks.append(
        Check(
            "frequencies ≈ λ",
            err <= config.frequency_tol,
            f"max |freq - lambda| = {err:.3g} at length {len(word)} (tol {config.frequency_tol:g})",
        )
    )

    try:
        itinerary = iet_mod.natural_coding(t, theta.value + SIDE_OFFSET, len(word))
        mismatch = coding.first_divergence(word, itinerary)
        itin = {"length": len(word), "side_offset": SIDE_OFFSET, "first_mismatch": mismatch}
        checks.append(
            Check(
                "code = itinerary of theta",
                mismatch is None,
                f"{len(word)} symbols agree"
                if mismatch is None
                else f"first mismatch at index {mismatch}",
            )
        )
    except OrbitHitsDiscontinuity as exc:
        itin = {"length": len(word), "side_offset": SIDE_OFFSET, "first_mismatch": None,
                "skipped": str(exc)}
        log.warning("itinerary cross-check skipped: %s", exc)

    analysis = {
        "length": len(word),
        "period": {"max_period": max_period, "found": period},
        "recurrence": [
            {"n": r.n, "factors": r.factors, "max_gap": r.max_gap, "recurrent": r.recurrent}
            for r in recurrence
        ],
        "complexity": [{"n": n, "p": p} for n, p in complexity.items()],
        "frequencies": {
            "observed": [float(f) for f in freqs],
            "lambda": list(sv.lam),
            "max_error": err,
        },
        "itinerary": itin,
    }
    return analysis, checks


def render_text(report: LaminationReport) -> str:
    inv = report.invariants
    th = report.induction["theta"]
    lines = [
        f"diagram {report.input['diagram_digest'][:12]}  Delta = {report.input['delta']}",
        f"g = {inv['genus']}  m = {inv['components']}  r = {inv['intervals']}"
        f"  chi = {inv['euler_characteristic']}",
        f"ergodicity: {report.ergodicity['verdict']} ({report.ergodicity['reason']})",
        "lambda = " + ", ".join(repr(x) for x in report.state["lambda"]),
        f"permutation: {' '.join(map(str, report.permutation['one_line']))}"
        f"  cycles {report.permutation['cycles']}",
        f"induction: {report.induction['steps']} steps, contraction constant "
        f"{report.induction['contraction_constant']:.4g}",
        f"theta = {th['value']!r} +/- {th['radius']:.3g}",
        f"pre-code: {report.precode['text']}",
    ]
    if report.code is not None:
        lines.append(f"code ({report.code['length']}): {report.code['text']}")
    lines.append("complexity: " + " ".join(f"p({c['n']})={c['p']}" for c in report.analysis["complexity"]))
    lines.append("recurrence: " + " ".join(f"R({r['n']})={r['max_gap']}" for r in report.analysis["recurrence"]))
    lines.append("checks:")
    for c in report.theorem_checks:
        lines.append(f"  [{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail}")
    lines.append(f"note: {report.disclaimer}")
    return "\n".join(lines) + "\n"
