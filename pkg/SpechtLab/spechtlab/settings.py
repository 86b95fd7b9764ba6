"""
Django settings for the spechtlab project.

The project has no database and no web surface: Django provides the management
command, the file-based module cache and logging configuration. Values can be
overridden from the environment or from an optional ``specht.env`` file next to
the project directory.
"""

from dotenv import load_dotenv
from os import getenv
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Load environment variables from file, when there is one
specht_config = BASE_DIR.parent / 'specht.env'
if specht_config.is_file():
    load_dotenv(specht_config)

SECRET_KEY = getenv('SPECHT_SECRET_KEY', 'spechtlab-local-only')

DEBUG = False

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'modular',
]

# Nothing is persisted in a database; cached modules live in CACHES below.
DATABASES = {}


# Toolkit limits

SPECHT_CACHE_DIR = Path(getenv('SPECHT_CACHE_DIR', BASE_DIR / '.specht-cache'))

SPECHT_CACHE_ALIAS = 'modules'

# n^r words allowed without --override-guard
SPECHT_WORD_LIMIT = int(getenv('SPECHT_WORD_LIMIT', 2 ** 24))

# entries of one dense elimination block; larger closures stop with a ResourceGuardError
SPECHT_BLOCK_LIMIT = int(getenv('SPECHT_BLOCK_LIMIT', 2 ** 26))

SPECHT_SIGMA_WORD_LIMIT = int(getenv('SPECHT_SIGMA_WORD_LIMIT', 2 ** 12))

SPECHT_SIGMA_MAX_RANK = int(getenv('SPECHT_SIGMA_MAX_RANK', 7))

# live columns from which elimination switches to sparse matrices
SPECHT_SPARSE_THRESHOLD = int(getenv('SPECHT_SPARSE_THRESHOLD', 4096))

SPECHT_LOG_LEVEL = getenv('SPECHT_LOG_LEVEL', 'WARNING')


# Cache
# https://docs.djangoproject.com/en/5.2/topics/cache/#filesystem-caching

CACHES = {
    'default': {
        'BACKEND': 'django.core.cache.backends.locmem.LocMemCache',
    },
    SPECHT_CACHE_ALIAS: {
        'BACKEND': 'django.core.cache.backends.filebased.FileBasedCache',
        'LOCATION': str(SPECHT_CACHE_DIR),
        'TIMEOUT': None,
    },
}


# Logging
# https://docs.djangoproject.com/en/5.2/topics/logging/

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'stderr': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'modular': {
            'handlers': ['stderr'],
            'level': SPECHT_LOG_LEVEL,
            'propagate': False,
        },
    },
}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'UNAUTHENTICATED_USER': None,
}
