"""Bootstrap Django for pytest the same way ``SpechtLab/manage.py`` does."""
import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'spechtlab.settings')
django.setup()
