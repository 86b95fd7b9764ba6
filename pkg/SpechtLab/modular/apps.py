from django.apps import AppConfig
from django.conf import settings


class ModularConfig(AppConfig):
    name = 'modular'
    verbose_name = 'Modular Specht modules'

    def ready(self):
        from . import exactla

        exactla.SPARSE_THRESHOLD = getattr(settings, 'SPECHT_SPARSE_THRESHOLD', exactla.SPARSE_THRESHOLD)
