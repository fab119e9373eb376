from django.apps import AppConfig


class LinearizationConfig(AppConfig):
    name = 'Linearization'
    default_auto_field = 'django.db.models.AutoField'
