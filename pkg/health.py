#!/usr/bin/env python3
"""
Simple health check script for production deployment verification.
"""
import os
import sys
import django
from pathlib import Path

# Setup Django
BASE_DIR = Path(__file__).resolve().parent
sys.path.append(str(BASE_DIR))
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'bracketlab_project.settings')
django.setup()


def check_health():
    """Run basic health checks."""
    checks = []

    try:
        from django.db import connection
        connection.ensure_connection()
        checks.append("OK   database connection")
    except Exception as e:
        checks.append(f"FAIL database: {e}")
        return False, checks

    try:
        from core.models import VerificationRun
        runs = VerificationRun.objects.count()
        failing = VerificationRun.objects.filter(failed_checks__gt=0).count()
        checks.append(f"OK   models accessible (runs: {runs}, failing: {failing})")
    except Exception as e:
        checks.append(f"FAIL models: {e}")
        return False, checks

    try:
        from core.diagram import load_diagram
        from core.services.bracket_service import BracketService
        from django.conf import settings
        theta = load_diagram(settings.GRAPH_FIXTURE_DIR / 'theta.json')
        text = BracketService().bracket(theta).to_text()
        if text != "z^-2 + 1":
            checks.append(f"FAIL theta bracket: {text}")
            return False, checks
        checks.append("OK   theta bracket")
    except Exception as e:
        checks.append(f"FAIL bracket engine: {e}")
        return False, checks

    try:
        from django.test import Client
        response = Client().get('/health/')
        if response.status_code == 200:
            checks.append("OK   health endpoint responding")
        else:
            checks.append(f"WARN health endpoint status: {response.status_code}")
    except Exception as e:
        checks.append(f"FAIL health endpoint: {e}")

    return True, checks


if __name__ == "__main__":
    print("Running bracketlab health check...")
    success, checks = check_health()

    for check in checks:
        print(check)

    if success:
        print("\nHealth check passed")
        sys.exit(0)
    else:
        print("\nHealth check failed")
        sys.exit(1)
