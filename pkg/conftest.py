import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'StandardMap.settings')
django.setup()
