from django.db import models


class VerificationRun(models.Model):
    """One execution of the verification suite (fixture, file or corpus)."""

    id = models.AutoField(primary_key=True)
    source = models.CharField(max_length=255, db_index=True)
    seed = models.BigIntegerField(null=True, blank=True)
    parameters = models.JSONField(default=dict, blank=True)
    total_checks = models.PositiveIntegerField(default=0)
    failed_checks = models.PositiveIntegerField(default=0)
    created_at = models.DateTimeField(auto_now_add=True, db_index=True)

    class Meta:
        db_table = 'verification_runs'
        verbose_name = 'Verification run'
        verbose_name_plural = 'Verification runs'
        ordering = ['-created_at', '-id']

    @property
    def passed(self) -> bool:
        return self.failed_checks == 0

    def __str__(self):
        status = 'PASS' if self.passed else 'FAIL'
        return f"{self.source} ({self.total_checks} checks, {status})"


class CheckOutcome(models.Model):
    id = models.AutoField(primary_key=True)
    run = models.ForeignKey(VerificationRun, on_delete=models.CASCADE, related_name='outcomes')
    check_name = models.CharField(max_length=64, db_index=True)
    instance = models.CharField(max_length=255)
    passed = models.BooleanField(default=True)
    vacuous = models.BooleanField(default=False)
    details = models.JSONField(default=dict, blank=True)
    witness = models.JSONField(null=True, blank=True)

    class Meta:
        db_table = 'check_outcomes'
        verbose_name = 'Check outcome'
        verbose_name_plural = 'Check outcomes'
        ordering = ['run', 'id']
        indexes = [
            models.Index(fields=['run', 'passed'], name='idx_outcome_run_passed'),
            models.Index(fields=['check_name', 'passed'], name='idx_outcome_check_passed'),
        ]

    def __str__(self):
        return f"{self.check_name} on {self.instance}: {'pass' if self.passed else 'fail'}"
