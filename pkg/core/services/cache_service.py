"""
Cache service for memoizing invariant computations.
"""
from typing import Any, Callable, Optional
from django.core.cache import cache
from django.conf import settings

from .base_service import BaseService
from ..diagram import MatchedDiagram, fingerprint
from ..laurent import LaurentPoly


class CacheService(BaseService):
    """Service for cache-related operations."""

    def __init__(self):
        super().__init__()
        self.default_timeout = getattr(settings, 'CACHE_DEFAULT_TIMEOUT', 3600)
        self.enabled = getattr(settings, 'BRACKET_CACHE_ENABLED', True)
        self.prefix = 'bracketlab'

    def _make_key(self, key: str) -> str:
        """Create prefixed cache key."""
        return f"{self.prefix}:{key}"

    def get(self, key: str, default: Any = None) -> Any:
        """Get value from cache."""
        if not self.enabled:
            return default
        try:
            return cache.get(self._make_key(key), default)
        except Exception as e:
            self.log_error("Cache get", e, key=key)
            return default

    def set(self, key: str, value: Any, timeout: Optional[int] = None) -> bool:
        """Set value in cache."""
        if not self.enabled:
            return False
        try:
            cache.set(self._make_key(key), value, timeout or self.default_timeout)
            return True
        except Exception as e:
            self.log_error("Cache set", e, key=key)
            return False

    def get_or_set(self, key: str, callable_func: Callable[[], Any], timeout: Optional[int] = None) -> Any:
        """Get value from cache or compute and store it."""
        value = self.get(key)
        if value is None:
            value = callable_func()
            self.set(key, value, timeout)
            self.logger.debug(f"Cache miss: {key}")
        else:
            self.logger.debug(f"Cache hit: {key}")
        return value

    # Invariant-specific helpers. Polynomials are stored in their JSON form
    # so Redis and locmem backends hold the same payload.

    def diagram_key(self, kind: str, d: MatchedDiagram) -> str:
        return f"{kind}:{fingerprint(d)}"

    def get_or_compute_polynomial(self, kind: str, d: MatchedDiagram,
                                  compute: Callable[[], LaurentPoly]) -> LaurentPoly:
        payload = self.get_or_set(self.diagram_key(kind, d), lambda: compute().to_json())
        return LaurentPoly.from_json(payload)
