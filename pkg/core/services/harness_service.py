"""
Seeded instance generation and the verification suite.
"""
import random
from dataclasses import dataclass
from multiprocessing import Pool
from typing import List, Optional, Tuple

import django

from .base_service import BaseService
from .bracket_service import BracketService
from .construction_service import expand_face, theta
from .factor_service import FactorService, perfect_matchings
from .ihmove_service import IHMoveService
from ..diagram import (
    MatchedDiagram, complement_cycles, connected_components, diagram_to_dict,
    find_bridges, mirror, with_matching,
)
from ..error_handlers import handle_service_errors
from ..exceptions import ResourceLimitException, ValidationException, VerificationFailedException
from ..reports.generators import CheckRecord, VerificationReport
from ..validators import ensure_valid

MATCHING_POLICIES = ('random', 'all')


@dataclass(frozen=True)
class GenSpec:
    vertices: int
    seed: int = 0
    matching_policy: str = 'random'

    def validate(self):
        errors = {}
        if self.vertices < 2 or self.vertices % 2:
            errors['vertices'] = f"Must be even and at least 2, got {self.vertices}"
        if self.matching_policy not in MATCHING_POLICIES:
            errors['matching_policy'] = f"Must be one of {', '.join(MATCHING_POLICIES)}"
        if errors:
            raise ValidationException("Invalid generator parameters", field_errors=errors)


def corpus_specs(instances: int, min_size: int, max_size: int, seed: int) -> List[GenSpec]:
    """Sizes cycle through the even values in ``[min_size, max_size]``; instance ``i`` uses ``seed + i``."""
    low = min_size + min_size % 2
    sizes = list(range(low, max_size + 1, 2))
    if not sizes:
        raise ValidationException(f"No even vertex count between {min_size} and {max_size}")
    return [GenSpec(sizes[i % len(sizes)], seed + i) for i in range(instances)]


def _verify_spec(args: Tuple[GenSpec, bool]) -> VerificationReport:
    spec, all_matchings = args
    service = HarnessService(threads=1)
    return service.verify_instance(service.generate(spec), all_matchings=all_matchings)


class HarnessService(BaseService):
    """Runs every identity check over fixtures and generated corpora."""

    def __init__(self, threads: Optional[int] = None, state_limit: Optional[int] = None,
                 enum_limit: Optional[int] = None):
        super().__init__()
        self.threads = threads if threads is not None else self.setting('WORKER_THREADS', 1)
        self.bracket_service = BracketService(state_limit=state_limit, threads=1)
        self.factor_service = FactorService(self.bracket_service, enum_limit=enum_limit)
        self.ihmove_service = IHMoveService(self.bracket_service, self.factor_service)

    def generate(self, spec: GenSpec) -> MatchedDiagram:
        """
        Grow a planar cubic graph from theta by face expansions.

        Deterministic in ``spec``. The matching is drawn from every perfect
        matching of the result, in enumeration order.
        """
        spec.validate()
        rng = random.Random(spec.seed)
        d = with_matching(theta(), [])
        while len(d) < spec.vertices:
            d = expand_face(d, rng)

        matchings = perfect_matchings(d, self.factor_service.matching_cap)
        if not matchings:
            raise VerificationFailedException(
                f"Generated graph with {len(d)} vertices has no perfect matching (seed {spec.seed})",
                failures=[{'check': 'generate', 'seed': spec.seed, 'diagram': diagram_to_dict(d)}],
            )
        chosen = rng.choice(matchings) if spec.matching_policy == 'random' else matchings[0]
        result = with_matching(d, chosen, name=f"gen-n{spec.vertices}-s{spec.seed}")
        return ensure_valid(result)

    # Individual checks

    def check_two_factor_count(self, d: MatchedDiagram) -> CheckRecord:
        value = self.bracket_service.bracket_at_one(d)
        formula = self.factor_service.two_factor_count_formula(d)
        try:
            enumerated = None if d.free_circles else len(self.factor_service.two_factor_enumerate(d))
        except ResourceLimitException:
            enumerated = None
        passed = value == formula and enumerated in (None, formula)
        return CheckRecord(
            'two_factor_count', d.label, passed,
            {'value': value, 'formula': formula, 'enumerated': enumerated},
            witness=None if passed else diagram_to_dict(d),
        )

    def check_odd_cycle_vanishing(self, d: MatchedDiagram) -> CheckRecord:
        cycles = complement_cycles(d)
        if not cycles.has_odd_cycle():
            return CheckRecord('odd_cycle_vanishing', d.label, True, {'lengths': cycles.lengths}, vacuous=True)
        value = self.bracket_service.bracket_at_one(d)
        return CheckRecord(
            'odd_cycle_vanishing', d.label, value == 0, {'lengths': cycles.lengths, 'value': value},
            witness=None if value == 0 else diagram_to_dict(d),
        )

    def check_mirror_invariance(self, d: MatchedDiagram) -> CheckRecord:
        original = self.bracket_service.bracket(d)
        mirrored = self.bracket_service.bracket(mirror(d))
        passed = original == mirrored
        return CheckRecord(
            'mirror_invariance', d.label, passed,
            {'bracket': original.to_text(), 'mirror': mirrored.to_text()},
            witness=None if passed else diagram_to_dict(d),
        )

    def check_component_factorization(self, d: MatchedDiagram) -> CheckRecord:
        state_sum = self.bracket_service.bracket_state_sum(d)
        factored = self.bracket_service.bracket_factored(d)
        passed = state_sum == factored
        return CheckRecord(
            'component_factorization', d.label, passed,
            {'state_sum': state_sum.to_text(), 'factored': factored.to_text()},
            witness=None if passed else diagram_to_dict(d),
        )

    def check_tait(self, d: MatchedDiagram) -> List[CheckRecord]:
        """Tait identity, per-matching decomposition and positivity."""
        polynomial = self.factor_service.tait_polynomial(d)
        value = polynomial.eval_at_one()
        colorings = self.factor_service.tait_colorings_count(d)

        by_matching = self.factor_service.colorings_by_matching(d)
        mismatched = []
        for matching, count in by_matching.items():
            at_one = self.bracket_service.bracket_at_one(with_matching(d, matching))
            if at_one != count:
                mismatched.append({'matching': list(matching), 'bracket_at_one': at_one, 'colorings': count})

        witness = diagram_to_dict(d)
        return [
            CheckRecord('tait_identity', d.label, value == colorings,
                        {'tait': polynomial.to_text(), 'value': value, 'colorings': colorings},
                        witness=None if value == colorings else witness),
            CheckRecord('tait_matching_decomposition', d.label, not mismatched,
                        {'matchings': len(by_matching), 'mismatched': mismatched},
                        witness=witness if mismatched else None),
            CheckRecord('tait_positivity', d.label, value > 0, {'value': value},
                        witness=None if value > 0 else witness),
        ]

    # Suite

    def _matched_checks(self, d: MatchedDiagram, reducible: bool) -> List[CheckRecord]:
        ih = self.ihmove_service
        records = [self.check_two_factor_count(d), self.check_odd_cycle_vanishing(d)]
        for edge in d.matching_edges:
            records.extend(ih.check_ih_relation(d, edge))
        for bubble in ih.detect_bubbles(d):
            records.append(ih.check_bubble(d, bubble))
        records.append(ih.check_bridge(d))
        records.append(ih.check_triangle(d))
        records.append(self.check_mirror_invariance(d))
        records.append(self.check_component_factorization(d))
        records.append(ih.check_face_configuration(d))
        if reducible:
            records.append(ih.check_reduction(d))
        return records

    def verify_instance(self, d: MatchedDiagram, all_matchings: bool = False) -> VerificationReport:
        """
        Every applicable check on ``d``.

        With ``all_matchings`` the matching-dependent checks repeat for each
        perfect matching of the graph. Failures are recorded, not raised.
        """
        ensure_valid(d)
        connected = not d.free_circles and len(connected_components(d)) == 1
        bridgeless = not find_bridges(d)

        variants = [d]
        if all_matchings and d.vertices:
            variants = [
                with_matching(d, m, name=f"{d.label}/m{i}")
                for i, m in enumerate(self.factor_service.enumerate_perfect_matchings(d))
            ]

        report = VerificationReport(parameters={'instance': d.label, 'all_matchings': all_matchings})
        for variant in variants:
            report.extend(self._matched_checks(variant, reducible=connected and bridgeless))

        if connected and bridgeless:
            report.extend(self.check_tait(d))

        for record in report.failures:
            self.logger.warning(f"Check {record.check} failed on {record.instance}", extra={
                'check': record.check, 'instance': record.instance,
            })
        return report

    def run_corpus(self, instances: int, min_size: int, max_size: int, seed: int,
                   all_matchings: bool = False) -> VerificationReport:
        """Generate and verify a seeded corpus; reports merge in instance order."""
        specs = corpus_specs(instances, min_size, max_size, seed)
        jobs = [(spec, all_matchings) for spec in specs]
        self.log_operation("Corpus run", instances=instances, min_size=min_size, max_size=max_size,
                           seed=seed, workers=self.threads)

        if self.threads > 1 and len(jobs) > 1:
            with Pool(processes=self.threads, initializer=django.setup) as pool:
                parts = pool.map(_verify_spec, jobs)
        else:
            parts = [self.verify_instance(self.generate(spec), all_matchings=all_matchings) for spec in specs]

        report = VerificationReport(seed=seed, parameters={
            'instances': instances, 'min_size': min_size, 'max_size': max_size,
            'all_matchings': all_matchings,
        })
        for part in parts:
            report.merge(part)
        return report

    @handle_service_errors("Could not store verification run")
    def persist_report(self, report: VerificationReport, source: str):
        """Store a report as one VerificationRun with its outcomes."""
        from ..models import CheckOutcome, VerificationRun

        def _store():
            run = VerificationRun.objects.create(
                source=source,
                seed=report.seed,
                parameters=report.parameters,
                total_checks=len(report.records),
                failed_checks=len(report.failures),
            )
            CheckOutcome.objects.bulk_create([
                CheckOutcome(
                    run=run,
                    check_name=r.check,
                    instance=r.instance,
                    passed=r.passed,
                    vacuous=r.vacuous,
                    details=r.details,
                    witness=r.witness,
                )
                for r in report.records
            ])
            return run

        run = self.execute_with_transaction(_store)
        self.log_operation("Report stored", run=run.pk, checks=run.total_checks)
        return run
