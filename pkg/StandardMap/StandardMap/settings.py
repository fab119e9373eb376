"""
Django settings for StandardMap project.

Generated by 'django-admin startproject' using Django 4.2.

For more information on this file, see
https://docs.djangoproject.com/en/4.2/topics/settings/

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""
import os
from pathlib import Path
from dotenv import load_dotenv

# Connection to .env file
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv('SECRET_KEY', 'standard-map-local-key')

DEBUG = os.getenv('DEBUG', 'False') == 'True'

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'rest_framework',
    'Linearization'
]

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [],
        },
    },
]

# Database
# Nothing is stored; the test runner still expects a configured connection.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}

DEFAULT_AUTO_FIELD = 'django.db.models.AutoField'

# Internationalization
# https://docs.djangoproject.com/en/4.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True

REST_FRAMEWORK = {
    'COERCE_DECIMAL_TO_STRING': False,
    'STRICT_JSON': True,
    'UNICODE_JSON': True,
}

# Analysis defaults; every command flag falls back to these

INVOLUTION_ANALYSIS = {
    'WINDOW': os.getenv('INVOLUTION_WINDOW', '-5,5,-5,5'),
    'GRID': int(os.getenv('INVOLUTION_GRID', '41')),
    'EPSILON': float(os.getenv('INVOLUTION_EPSILON', '0.1')),
    'TOLERANCE': float(os.getenv('INVOLUTION_TOLERANCE', '1e-9')),
    'SCAN': int(os.getenv('INVOLUTION_SCAN', '201')),
    'COLLISION_TOL': float(os.getenv('INVOLUTION_COLLISION_TOL', '1e-6')),
    'LEAF_STEP': float(os.getenv('INVOLUTION_LEAF_STEP', '1e-2')),
    'NEWTON_TOL': float(os.getenv('INVOLUTION_NEWTON_TOL', '1e-10')),
    'NEWTON_MAX_ITER': int(os.getenv('INVOLUTION_NEWTON_MAX_ITER', '50')),
    'CLASS_TOL': float(os.getenv('INVOLUTION_CLASS_TOL', '1e-6')),
    'IM_TOL': float(os.getenv('INVOLUTION_IM_TOL', '1e-9')),
}

# Logging

LOG_LEVEL = os.getenv('LOG_LEVEL', 'WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'Linearization': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}
