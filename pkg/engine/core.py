"""
Conjecture Engine - batch orchestrator

Ties together all components:
- graph6 ingestion / fixture corpus
- exact solvers (gamma, gamma_e, line graph cross check)
- Theorem 1 uniform scheme: exact expectation, Monte Carlo, derandomization
- Theorem 2 cubic refinement with certificates
- Theorem 3 exchange search on cubic claw-free graphs
- report records and run summary
"""

import logging
import math
import sys
from collections import deque
from concurrent.futures import Future, ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Optional, TextIO

import numpy as np
from mpmath import iv

from .clawfree import exchange_search
from .cubic import theorem2_dominating_set
from .errors import (
    CapExceeded,
    CertificateViolation,
    ConfigError,
    DomcheckError,
    Graph6Error,
    NoImprovement,
    NoImprovingMove,
    PropertyThreeViolation,
    StructureViolation,
)
from .fixtures import FIXTURES
from .graph import Graph, is_claw_free, is_connected, is_cubic, is_regular
from .graph6 import (
    DEFAULT_RETRY_LIMIT,
    GRAPH6_HEADER,
    graph6_str,
    parse_graph6,
    random_regular,
    read_graph6_stream,
    write_graph6,
)
from .report import ReportWriter, Summary, fraction_str
from .schemes import derandomize_conditional, expectation_report, monte_carlo, theorem1_bound, uncovered_set, uniform_scheme
from .solvers import (
    DEFAULT_CAP,
    check_inequality_e1,
    cross_check_line_graph,
    domination_number,
    edge_domination_number,
    is_dominating,
)

logger = logging.getLogger(__name__)

METHODS = ("t1", "t1d", "t2", "t3")
FORMATS = ("jsonl", "csv")
WINDOW_PER_JOB = 4  # graphs submitted ahead per worker

# errors that mean a proof step failed on this instance
_PROOF_FAILURES = (CertificateViolation, PropertyThreeViolation, NoImprovingMove, StructureViolation, NoImprovement)


# ========== Run configuration ==========

@dataclass(frozen=True)
class RunConfig:
    input: Optional[str] = None  # path, "-" for stdin
    fixtures: bool = False
    cap: int = DEFAULT_CAP
    seed: int = 0
    trials: int = 10_000
    methods: tuple = METHODS
    jobs: int = 1
    format: str = "jsonl"
    fail_fast: bool = False
    retry_limit: int = DEFAULT_RETRY_LIMIT

    @classmethod
    def from_config(cls, config: dict, **overrides) -> "RunConfig":
        """Merged config dict (see config.default_config) plus explicit overrides; None means unset"""
        check = config.get("check", {})
        values = {
            "cap": config.get("solver", {}).get("cap", DEFAULT_CAP),
            "retry_limit": config.get("generator", {}).get("retry_limit", DEFAULT_RETRY_LIMIT),
            "seed": check.get("seed", 0),
            "trials": check.get("trials", 10_000),
            "methods": tuple(check.get("methods", METHODS)),
            "jobs": check.get("jobs", 1),
            "format": check.get("format", "jsonl"),
            "fail_fast": check.get("fail_fast", False),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        if isinstance(values.get("methods"), str):
            values["methods"] = tuple(m.strip() for m in values["methods"].split(",") if m.strip())
        return cls(**values).validate()

    def validate(self) -> "RunConfig":
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown:
            raise ConfigError(f"unknown methods: {', '.join(unknown)}")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format: {self.format}")
        if self.cap < 1:
            raise ConfigError("cap must be positive")
        if self.trials < 0:
            raise ConfigError("trials must be non-negative")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")
        if self.input is None and not self.fixtures:
            raise ConfigError("nothing to check: give --input or --fixtures")
        return self

    def to_dict(self) -> dict:
        data = asdict(self)
        data["methods"] = list(self.methods)
        return data


# ========== Records ==========

@dataclass
class ConjectureRecord:
    graph_id: str
    n: int
    delta: Optional[int]
    connected: bool
    claw_free: bool
    graph6: str
    gamma: Optional[int] = None
    gamma_e: Optional[int] = None
    ratio: Optional[Fraction] = None
    conjecture_holds: Optional[bool] = None
    dominating_set: list = field(default_factory=list)
    matching: list = field(default_factory=list)
    line_graph_agrees: Optional[bool] = None
    e1_holds: Optional[bool] = None
    t1_expected: Optional[str] = None
    t1_bound: Optional[str] = None
    t1_sampled: Optional[int] = None
    t1_mc_mean: Optional[float] = None
    t1_mc_agrees: Optional[bool] = None
    t1_derand: Optional[int] = None
    t2: Optional[int] = None
    t2_shortcut: Optional[bool] = None
    t2_expected: Optional[str] = None  # certified E[|B|], summed over components
    t3: Optional[int] = None
    t3_moves: Optional[int] = None
    flags: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    error: Optional[str] = None

    def violate(self, name: str, detail: str) -> None:
        self.violations.append({"name": name, "detail": detail})

    def to_dict(self) -> dict:
        ratio = self.ratio
        return {
            "graph_id": self.graph_id,
            "n": self.n,
            "delta": self.delta,
            "connected": self.connected,
            "claw_free": self.claw_free,
            "gamma": self.gamma,
            "gamma_e": self.gamma_e,
            "ratio": None if ratio is None else f"{ratio.numerator / ratio.denominator:.6f}",
            "ratio_exact": None if ratio is None else fraction_str(ratio),
            "conjecture_holds": self.conjecture_holds,
            "witnesses": {
                "graph6": self.graph6,
                "dominating_set": self.dominating_set,
                "matching": self.matching,
            },
            "line_graph_agrees": self.line_graph_agrees,
            "e1_holds": self.e1_holds,
            "t1_expected": self.t1_expected,
            "t1_bound": self.t1_bound,
            "t1_sampled": self.t1_sampled,
            "t1_mc_mean": self.t1_mc_mean,
            "t1_mc_agrees": self.t1_mc_agrees,
            "t1_derand": self.t1_derand,
            "t2": self.t2,
            "t2_shortcut": self.t2_shortcut,
            "t2_expected": self.t2_expected,
            "t3": self.t3,
            "t3_moves": self.t3_moves,
            "flags": list(self.flags),
            "violations": list(self.violations),
            "error": self.error,
        }


# ========== Per-graph pipeline ==========

def _run_theorem1(g: Graph, record: ConjectureRecord, m, config: RunConfig) -> None:
    scheme = uniform_scheme(m)
    report = expectation_report(g, m, scheme)
    record.t1_expected = str(report.total)
    expected = report.total.to_fraction()

    if record.delta is not None:
        factor = theorem1_bound(record.delta)
        record.t1_bound = fraction_str(factor)
        if record.gamma_e + expected > factor * record.gamma_e:
            record.violate("theorem1_chain", f"{record.gamma_e} + {expected} > {factor} * {record.gamma_e}")

    if "t1" in config.methods and config.trials > 0:
        mc = monte_carlo(g, m, scheme, config.trials, config.seed)
        record.t1_sampled = mc.best_size
        record.t1_mc_mean = round(mc.mean, 6)
        record.t1_mc_agrees = mc.agrees_with(expected)
        if not record.t1_mc_agrees:
            record.flags.append("t1_monte_carlo_disagrees")

    if "t1d" in config.methods:
        d = derandomize_conditional(g, m, scheme)
        chosen = d | uncovered_set(g, m, d)
        record.t1_derand = len(chosen)
        limit = math.floor(record.gamma_e + expected)
        if len(chosen) > limit or not is_dominating(g, chosen):
            record.violate("t1_derand", f"|D u B| = {len(chosen)} > {limit}")


def check_graph(graph_id: str, g: Graph, config: RunConfig) -> ConjectureRecord:
    """Everything the run knows about one graph, as one record"""
    record = ConjectureRecord(
        graph_id=graph_id,
        n=g.n,
        delta=is_regular(g),
        connected=is_connected(g),
        claw_free=is_claw_free(g),
        graph6=graph6_str(g),
    )
    try:
        gamma = domination_number(g, config.cap)
        record.gamma = gamma.value
        record.dominating_set = sorted(gamma.witness)

        if g.edge_count == 0:
            record.flags.append("edgeless")
            return record
        gamma_e = edge_domination_number(g, config.cap)
        m = gamma_e.witness
        record.gamma_e = gamma_e.value
        record.matching = [list(e) for e in m.edges]
        record.ratio = Fraction(record.gamma, record.gamma_e)
        if record.delta is not None:
            record.conjecture_holds = record.gamma <= record.gamma_e
        else:
            record.flags.append("non_regular")

        if g.edge_count <= config.cap:
            record.line_graph_agrees = cross_check_line_graph(g, config.cap).holds
            if not record.line_graph_agrees:
                record.violate("line_graph", "gamma_e, gamma(L) and i(L) disagree")
        else:
            record.flags.append("line_graph_skipped")

        if record.delta is not None:
            record.e1_holds = True
            try:
                check_inequality_e1(g, m)
            except CertificateViolation as e:
                record.e1_holds = False
                record.violate("e1", str(e))

        _run_methods(g, record, m, config)
    except CapExceeded as e:
        record.error = str(e)
    except DomcheckError as e:
        record.error = f"{type(e).__name__}: {e}"

    if record.violations:
        logger.error(f"{graph_id}: {len(record.violations)} violation(s) on {record.graph6}")
    if record.conjecture_holds is False:
        logger.error(f"{graph_id}: counterexample gamma={record.gamma} gamma_e={record.gamma_e} on {record.graph6}")
    logger.info(f"{graph_id}: n={g.n} delta={record.delta} gamma={record.gamma} gamma_e={record.gamma_e}")
    return record


def _run_methods(g: Graph, record: ConjectureRecord, m, config: RunConfig) -> None:
    methods = config.methods
    if "t1" in methods or "t1d" in methods:
        try:
            _run_theorem1(g, record, m, config)
        except _PROOF_FAILURES as e:
            record.violate("t1", str(e))

    cubic = is_cubic(g)
    if "t2" in methods and cubic:
        try:
            result = theorem2_dominating_set(g, m)
            record.t2 = result.size
            record.t2_shortcut = any(c.shortcut for c in result.components)
            record.t2_expected = str(sum(c.certificate.expected_uncovered for c in result.components))
            if result.size < record.gamma:
                record.violate("t2", f"|D| = {result.size} below gamma = {record.gamma}")
        except _PROOF_FAILURES as e:
            name = e.name if isinstance(e, CertificateViolation) else "t2"
            record.violate(name, str(e))

    if "t3" in methods and cubic and record.claw_free:
        try:
            state = exchange_search(g, m)
            record.t3 = len(state.d)
            record.t3_moves = len(state.moves)
            if record.t3 != record.gamma_e or not is_dominating(g, state.d):
                record.violate("t3", f"transversal of size {record.t3} fails to dominate at gamma_e")
        except _PROOF_FAILURES as e:
            record.violate("t3", str(e))


def _check_item(item: tuple[str, Graph, RunConfig]) -> ConjectureRecord:
    graph_id, g, config = item
    return check_graph(graph_id, g, config)


# ========== Engine ==========

class ConjectureEngine:
    """Runs the per-graph pipeline over a corpus and keeps the summary"""

    def __init__(self, config: RunConfig):
        self.config = config.validate()
        self.summary = Summary()
        self.window = WINDOW_PER_JOB * config.jobs
        logger.info(f"ConjectureEngine initialized. methods={','.join(config.methods)} jobs={config.jobs}")

    def iter_inputs(self, stream=None) -> Iterator[tuple[str, Graph]]:
        """Fixtures first (if enabled), then graph6 records; bad records are skipped and counted"""
        if self.config.fixtures:
            for name, factory in FIXTURES.items():
                yield name, factory()
        if self.config.input is None:
            return
        if stream is None:
            if self.config.input == "-":
                stream = sys.stdin.buffer
            else:
                with Path(self.config.input).open("rb") as f:
                    yield from self._parse_stream(f)
                return
        yield from self._parse_stream(stream)

    def _parse_stream(self, stream) -> Iterator[tuple[str, Graph]]:
        for line_no, raw in read_graph6_stream(stream):
            if raw == GRAPH6_HEADER:
                continue
            try:
                yield f"line:{line_no}", parse_graph6(raw)
            except Graph6Error as e:
                self.summary.skip(f"line {line_no}: {type(e).__name__}: {e}")

    def run(self, graphs: Optional[Iterable[tuple[str, Graph]]] = None) -> Iterator[ConjectureRecord]:
        """Records in input order; stops after the first violation when fail_fast is set"""
        items = ((gid, g, self.config) for gid, g in (graphs if graphs is not None else self.iter_inputs()))
        if self.config.jobs == 1:
            yield from self._collect(map(_check_item, items))
            return
        with ProcessPoolExecutor(max_workers=self.config.jobs) as pool:
            try:
                yield from self._collect(self._bounded_map(pool, items))
            finally:
                pool.shutdown(cancel_futures=True)

    def _bounded_map(self, pool: ProcessPoolExecutor, items: Iterable) -> Iterator[ConjectureRecord]:
        """Like pool.map, but with at most `window` graphs in flight"""
        pending: deque[Future] = deque()
        for item in items:
            pending.append(pool.submit(_check_item, item))
            if len(pending) >= self.window:
                yield pending.popleft().result()
        while pending:
            yield pending.popleft().result()

    def _collect(self, records: Iterable[ConjectureRecord]) -> Iterator[ConjectureRecord]:
        for record in records:
            self.summary.add(record)
            yield record
            if self.config.fail_fast and (record.violations or record.conjecture_holds is False):
                logger.warning(f"fail-fast: stopping after {record.graph_id}")
                return


def run_check(config: RunConfig, out: TextIO, stream=None) -> Summary:
    """Check every input graph and write the report; returns the summary"""
    engine = ConjectureEngine(config)
    writer = ReportWriter(out, config.format, config.to_dict())
    for record in engine.run(engine.iter_inputs(stream)):
        writer.write(record)
    writer.finish(engine.summary)
    s = engine.summary
    logger.info(f"checked {s.records} graphs ({s.skipped} skipped, {s.errors} errors); "
                f"counterexamples={len(s.counterexamples)} violations={len(s.certificate_violations)}")
    return s


# ========== Generation ==========

def run_gen(n: int, delta: int, count: int, seed: int, retry_limit: int = DEFAULT_RETRY_LIMIT) -> Iterator[bytes]:
    """`count` graph6 records of random delta-regular graphs, one derived seed each"""
    seeds = np.random.SeedSequence(seed).generate_state(count, dtype=np.uint64) if count else []
    for i, sub_seed in enumerate(seeds):
        g = random_regular(n, delta, int(sub_seed), retry_limit)
        logger.debug(f"generated graph {i + 1}/{count}")
        yield write_graph6(g)


# ========== Threshold ==========

@dataclass(frozen=True)
class ThresholdVerdict:
    delta: int
    holds: bool
    lhs: str
    rhs: str
    precision: int


def joos_threshold(delta: int, precision: int = 53, max_precision: int = 4096) -> ThresholdVerdict:
    """
    (1 + ln(delta + 1)) / (delta + 1) <= delta / (4 delta - 2), decided with
    outward-rounded interval arithmetic. Precision doubles until the two
    intervals separate.
    """
    if delta < 1:
        raise ValueError("delta must be at least 1")
    saved = iv.prec
    try:
        prec = precision
        while True:
            iv.prec = prec
            lhs = (1 + iv.log(iv.mpf(delta + 1))) / (delta + 1)
            rhs = iv.mpf(delta) / (4 * delta - 2)
            verdict = lhs <= rhs
            if verdict is not None:
                return ThresholdVerdict(delta, bool(verdict), str(lhs), str(rhs), prec)
            if prec >= max_precision:
                raise ArithmeticError(f"threshold for delta={delta} undecided at {prec} bits")
            prec *= 2
    finally:
        iv.prec = saved
