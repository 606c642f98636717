from django.urls import path, include

urlpatterns = [
    path('diagrams/', include('api.v1.diagrams.urls')),
    path('verification/', include('api.v1.verification.urls')),
]
