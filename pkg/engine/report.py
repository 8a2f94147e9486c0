"""
Report writing

JSON Lines: a header object (schema, version, run config), one object per
record in input order, then a summary object. CSV carries the scalar record
columns only; the summary goes to the log.
"""

import csv
import json
import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, TextIO

logger = logging.getLogger(__name__)

SCHEMA = "domcheck.conjecture-record"
SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COUNTEREXAMPLE = 2
EXIT_CERTIFICATE = 3

CSV_COLUMNS = [
    "graph_id", "graph6", "n", "delta", "connected", "claw_free",
    "gamma", "gamma_e", "ratio", "ratio_exact", "conjecture_holds",
    "line_graph_agrees", "e1_holds",
    "t1_expected", "t1_bound", "t1_sampled", "t1_mc_mean", "t1_mc_agrees",
    "t1_derand", "t2", "t2_shortcut", "t2_expected", "t3", "t3_moves",
    "flags", "violations", "error",
]


def fraction_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


@dataclass
class Summary:
    """Run totals; add() may be called from several threads"""

    records: int = 0
    skipped: int = 0
    errors: int = 0
    regular: int = 0
    cubic: int = 0
    counterexamples: list = field(default_factory=list)
    certificate_violations: list = field(default_factory=list)
    min_ratio: Optional[Fraction] = None
    max_ratio: Optional[Fraction] = None
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def add(self, record) -> None:
        with self._lock:
            self.records += 1
            if record.error:
                self.errors += 1
            if record.delta is not None:
                self.regular += 1
                if record.delta == 3:
                    self.cubic += 1
                if record.ratio is not None:
                    if self.min_ratio is None or record.ratio < self.min_ratio:
                        self.min_ratio = record.ratio
                    if self.max_ratio is None or record.ratio > self.max_ratio:
                        self.max_ratio = record.ratio
            if record.conjecture_holds is False:
                self.counterexamples.append(record.graph_id)
            for violation in record.violations:
                self.certificate_violations.append({"graph_id": record.graph_id, **violation})

    def skip(self, reason: str) -> None:
        with self._lock:
            self.skipped += 1
        logger.warning(f"skipped record: {reason}")

    @property
    def exit_code(self) -> int:
        if self.counterexamples:
            return EXIT_COUNTEREXAMPLE
        if self.certificate_violations:
            return EXIT_CERTIFICATE
        return EXIT_OK

    def to_dict(self) -> dict:
        return {
            "records": self.records,
            "skipped": self.skipped,
            "errors": self.errors,
            "regular": self.regular,
            "cubic": self.cubic,
            "min_ratio": None if self.min_ratio is None else fraction_str(self.min_ratio),
            "max_ratio": None if self.max_ratio is None else fraction_str(self.max_ratio),
            "counterexamples": list(self.counterexamples),
            "certificate_violations": list(self.certificate_violations),
            "exit_code": self.exit_code,
        }


class ReportWriter:
    """Serializes records to an open text stream in the order they arrive"""

    def __init__(self, out: TextIO, fmt: str = "jsonl", config: Optional[dict] = None):
        if fmt not in ("jsonl", "csv"):
            raise ValueError(f"unknown report format: {fmt}")
        self.out = out
        self.fmt = fmt
        self._csv = None
        if fmt == "jsonl":
            self._emit({"schema": SCHEMA, "version": SCHEMA_VERSION, "config": config or {}})
        else:
            self._csv = csv.DictWriter(out, fieldnames=CSV_COLUMNS, extrasaction="ignore", lineterminator="\n")
            self._csv.writeheader()

    def _emit(self, obj: dict) -> None:
        self.out.write(json.dumps(obj, ensure_ascii=False) + "\n")

    def write(self, record) -> None:
        data = record.to_dict()
        if self._csv is None:
            self._emit(data)
            return
        row = dict(data)
        row["flags"] = ";".join(data["flags"])
        row["violations"] = ";".join(v["name"] for v in data["violations"])
        row["graph6"] = data["witnesses"]["graph6"]
        self._csv.writerow({k: "" if v is None else v for k, v in row.items()})

    def finish(self, summary: Summary) -> None:
        if self._csv is None:
            self._emit({"summary": summary.to_dict()})
        self.out.flush()
