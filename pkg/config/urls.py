"""
URL configuration for the multisegment component toolkit.
"""

from django.urls import path, include

urlpatterns = [
    path("", include("components_app.urls")),
]
