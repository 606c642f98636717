"""
Production settings for the bracketlab project.

Everything not set here comes from ``settings.py``, which already reads the
evaluation limits (``BRACKET_STATE_LIMIT`` and friends) from the environment.
"""
import copy
import logging
import os

import dj_database_url
from .settings import *
from dotenv import load_dotenv

load_dotenv()

DEBUG = os.getenv('DEBUG', 'False').lower() == 'true'

SECRET_KEY = os.getenv('SECRET_KEY')
if not SECRET_KEY:
    raise ValueError("SECRET_KEY environment variable is required")

ALLOWED_HOSTS = [host for host in os.getenv('ALLOWED_HOSTS', '').split(',') if host]

# Verification runs and outcomes; render.yaml provides DATABASE_URL.
DATABASES = {
    'default': dj_database_url.config(
        default=f"postgres://{os.getenv('DB_USER', 'bracketlab')}:{os.getenv('DB_PASSWORD', '')}"
                f"@{os.getenv('DB_HOST', 'localhost')}:{os.getenv('DB_PORT', '5432')}"
                f"/{os.getenv('DB_NAME', 'bracketlab')}",
        conn_max_age=600,
        conn_health_checks=True,
        ssl_require=os.getenv('DB_USE_SSL', 'False').lower() == 'true',
    )
}

SECURE_SSL_REDIRECT = os.getenv('SECURE_SSL_REDIRECT', 'True').lower() == 'true'
SECURE_HSTS_SECONDS = int(os.getenv('SECURE_HSTS_SECONDS', '31536000'))
SECURE_HSTS_INCLUDE_SUBDOMAINS = True
CORS_ALLOWED_ORIGINS = [origin for origin in os.getenv('CORS_ALLOWED_ORIGINS', '').split(',') if origin]
CSRF_TRUSTED_ORIGINS = [origin for origin in CORS_ALLOWED_ORIGINS if origin.startswith('https://')]

# Brackets are keyed by diagram fingerprint, so every worker shares one cache.
CACHES = {
    'default': {
        'BACKEND': 'django_redis.cache.RedisCache',
        'LOCATION': os.getenv('REDIS_URL', 'redis://127.0.0.1:6379/0'),
        'OPTIONS': {
            'CLIENT_CLASS': 'django_redis.client.DefaultClient',
        },
        'KEY_PREFIX': 'bracketlab',
        'TIMEOUT': int(os.getenv('CACHE_DEFAULT_TIMEOUT', '86400')),
    }
}

# Corpus runs and large state sums fan out over every core unless pinned.
WORKER_THREADS = int(os.getenv('WORKER_THREADS', str(os.cpu_count() or 1)))

STATIC_ROOT = os.path.join(BASE_DIR, 'staticfiles')

# Same stderr logging as development, with timestamps; LOG_FILE adds a file copy.
LOGGING = copy.deepcopy(LOGGING)
LOGGING['handlers']['console']['formatter'] = 'verbose'
LOG_FILE = os.getenv('LOG_FILE')
if LOG_FILE:
    LOGGING['handlers']['file'] = {
        'level': 'INFO',
        'class': 'logging.FileHandler',
        'filename': LOG_FILE,
        'formatter': 'verbose',
    }
    for target in [LOGGING['root'], *LOGGING['loggers'].values()]:
        target['handlers'].append('file')

SENTRY_DSN = os.getenv('SENTRY_DSN')
if SENTRY_DSN:
    import sentry_sdk
    from sentry_sdk.integrations.django import DjangoIntegration
    from sentry_sdk.integrations.logging import LoggingIntegration

    sentry_sdk.init(
        dsn=SENTRY_DSN,
        # Failed checks log at WARNING; only errors become events.
        integrations=[DjangoIntegration(), LoggingIntegration(level=logging.WARNING, event_level=logging.ERROR)],
        traces_sample_rate=float(os.getenv('SENTRY_TRACES_SAMPLE_RATE', '0.1')),
        send_default_pii=False,
        environment=os.getenv('SENTRY_ENVIRONMENT', 'production'),
    )
