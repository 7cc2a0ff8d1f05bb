"""
URL patterns for the components_app.
"""

from django.urls import path
from . import views

urlpatterns = [
    # Health check
    path("health/", views.health_check, name="health-check"),

    # Same handlers as the mseg command
    path("compute/", views.compute, name="compute"),
    path("verify/", views.verify, name="verify"),
]
