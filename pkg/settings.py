# Django settings for the nrvq project.
from os import path

# Set the debug values
DEBUG = False

# Full path to the data directory
DEPLOY_PATH = path.dirname(path.realpath(__file__))

USE_TZ = True
TIME_ZONE = 'UTC'
LANGUAGE_CODE = 'en-us'
DEFAULT_CHARSET = 'utf-8'

# Use new test runner
TEST_RUNNER = 'django.test.runner.DiscoverRunner'

INSTALLED_APPS = (
    'main',
    'nss',
    'niqe',
    'pooling',
    'videoio',
    'analysis',
)

# No database is used; the measurement pipeline works on files only
DATABASES = {}

# NIQE model defaults, used by `train` when no flag is given
NIQE_PATCH_SIZE = 96
NIQE_SHARPNESS_FRACTION = 0.75

# Scoring threads when neither --jobs, the manifest nor NRVQ_JOBS says otherwise
NRVQ_DEFAULT_JOBS = 1

# Score increase tolerated between adjacent bitrates of an RD curve
NRVQ_MONOTONIC_TOLERANCE = 0.05

# Frames with a mean luma below this are flagged dark in per-frame reports
NRVQ_DARK_FRAME_LUMA = 16

# Seconds during which a repeated log message is dropped; 0 disables
NRVQ_LOG_DUPLICATE_WINDOW = 10

# Make this unique, and don't share it with anybody.
SECRET_KEY = '00000000000000000000000000000000000000000000000'

# Import local settings
try:
    from local_settings import *
except ImportError:
    pass

# Logging configuration for not getting overspammed by per-frame warnings
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'filters': {
        'duplicates': {
            '()': 'main.log.DuplicateMessageFilter',
            'rate': NRVQ_LOG_DUPLICATE_WINDOW,
        }
    },
    'formatters': {
        'plain': {
            'format': '%(asctime)s -> %(levelname)s: %(message)s',
            'datefmt': '%Y-%m-%d %H:%M:%S',
        }
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'filters': ['duplicates'],
            'formatter': 'plain',
        }
    },
    'loggers': {
        name: {
            'handlers': ['console'],
            'propagate': False,
        } for name in ('nss', 'niqe', 'pooling', 'videoio', 'analysis')
    },
}

# vim: set ts=4 sw=4 et:
