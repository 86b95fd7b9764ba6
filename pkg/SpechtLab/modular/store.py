import logging
from pathlib import Path

from django.conf import settings
from django.core.cache import caches
from django.core.cache.backends.filebased import FileBasedCache

from . import __version__
from .exceptions import CacheFormatError
from .partitions import as_partition
from .wordspace import GModule

logger = logging.getLogger(__name__)


class ModuleStore:
    """Caches Specht modules and radicals as GModule text across runs."""

    def __init__(self, cache_dir: str | Path | None = None):
        if cache_dir is None:
            self.cache = caches[getattr(settings, 'SPECHT_CACHE_ALIAS', 'modules')]
        else:
            self.cache = FileBasedCache(str(cache_dir), {'TIMEOUT': None})

    @staticmethod
    def key(kind: str, lam, n: int, p: int) -> str:
        return f'{__version__}:{kind}:{as_partition(lam).format(n)}:n{n}:p{p}'

    def get_or_build(self, kind: str, lam, n: int, p: int, build) -> GModule:
        key = self.key(kind, lam, n, p)
        text = self.cache.get(key)
        if text is not None:
            try:
                module = GModule.loads(text)
            except CacheFormatError:
                logger.warning('discarding unreadable cache entry %s', key)
            else:
                logger.debug('cache hit %s', key)
                return module
        logger.debug('cache miss %s', key)
        module = build()
        self.cache.set(key, module.dumps(), None)
        return module

    def clear(self):
        self.cache.clear()
