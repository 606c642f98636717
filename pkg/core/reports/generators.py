"""
Verification records and report generation.
"""
import json
from abc import ABC, abstractmethod
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class CheckRecord:
    """Outcome of one identity check on one instance."""

    check: str
    instance: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    witness: Optional[Dict[str, Any]] = None
    vacuous: bool = False

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'check': self.check,
            'instance': self.instance,
            'passed': self.passed,
            'vacuous': self.vacuous,
            'details': self.details,
        }
        if self.witness is not None:
            data['witness'] = self.witness
        return data


@dataclass
class VerificationReport:
    records: List[CheckRecord] = field(default_factory=list)
    seed: Optional[int] = None
    parameters: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failures(self) -> List[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def extend(self, records):
        self.records.extend(records)

    def merge(self, other: 'VerificationReport'):
        self.records.extend(other.records)

    def summary(self) -> List[Dict[str, Any]]:
        """Per-check totals in first-seen order."""
        rows: 'OrderedDict[str, Dict[str, Any]]' = OrderedDict()
        for r in self.records:
            row = rows.setdefault(r.check, {'check': r.check, 'total': 0, 'passed': 0, 'failed': 0, 'vacuous': 0})
            row['total'] += 1
            row['passed' if r.passed else 'failed'] += 1
            if r.vacuous:
                row['vacuous'] += 1
        return list(rows.values())


class BaseReportGenerator(ABC):
    """Base class for all report generators."""

    def __init__(self, report: VerificationReport):
        self.report = report

    @abstractmethod
    def generate(self) -> str:
        """Render the report."""
        pass


class JsonLinesReportGenerator(BaseReportGenerator):
    """One JSON object per line: a run header, then one line per check."""

    def header(self) -> Dict[str, Any]:
        return {
            'type': 'run',
            'seed': self.report.seed,
            'parameters': self.report.parameters,
            'checks': len(self.report.records),
            'failures': len(self.report.failures),
        }

    def generate(self) -> str:
        lines = [json.dumps(self.header(), sort_keys=True)]
        for record in self.report.records:
            lines.append(json.dumps({'type': 'check', **record.to_dict()}, sort_keys=True))
        return '\n'.join(lines)


class SummaryTableGenerator(BaseReportGenerator):
    """Fixed-width table of per-check totals."""

    def generate(self) -> str:
        rows = self.report.summary()
        width = max([len('check')] + [len(row['check']) for row in rows])
        lines = [
            f"{'check':<{width}}  {'total':>6}  {'passed':>6}  {'failed':>6}  {'vacuous':>7}",
            '-' * (width + 35),
        ]
        for row in rows:
            lines.append(
                f"{row['check']:<{width}}  {row['total']:>6}  {row['passed']:>6}  "
                f"{row['failed']:>6}  {row['vacuous']:>7}"
            )
        verdict = 'PASS' if self.report.passed else f"FAIL ({len(self.report.failures)} failing check(s))"
        lines.append('-' * (width + 35))
        lines.append(f"result: {verdict}")
        return '\n'.join(lines)
