# Generated by Django 5.2.7 on 2026-10-17 09:12

import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.AutoField(primary_key=True, serialize=False)),
                ('source', models.CharField(db_index=True, max_length=255)),
                ('seed', models.BigIntegerField(blank=True, null=True)),
                ('parameters', models.JSONField(blank=True, default=dict)),
                ('total_checks', models.PositiveIntegerField(default=0)),
                ('failed_checks', models.PositiveIntegerField(default=0)),
                ('created_at', models.DateTimeField(auto_now_add=True, db_index=True)),
            ],
            options={
                'verbose_name': 'Verification run',
                'verbose_name_plural': 'Verification runs',
                'db_table': 'verification_runs',
                'ordering': ['-created_at', '-id'],
            },
        ),
        migrations.CreateModel(
            name='CheckOutcome',
            fields=[
                ('id', models.AutoField(primary_key=True, serialize=False)),
                ('check_name', models.CharField(db_index=True, max_length=64)),
                ('instance', models.CharField(max_length=255)),
                ('passed', models.BooleanField(default=True)),
                ('vacuous', models.BooleanField(default=False)),
                ('details', models.JSONField(blank=True, default=dict)),
                ('witness', models.JSONField(blank=True, null=True)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='outcomes', to='core.verificationrun')),
            ],
            options={
                'verbose_name': 'Check outcome',
                'verbose_name_plural': 'Check outcomes',
                'db_table': 'check_outcomes',
                'ordering': ['run', 'id'],
                'indexes': [models.Index(fields=['run', 'passed'], name='idx_outcome_run_passed'), models.Index(fields=['check_name', 'passed'], name='idx_outcome_check_passed')],
            },
        ),
    ]
