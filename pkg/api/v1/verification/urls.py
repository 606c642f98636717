from django.urls import path
from . import views

urlpatterns = [
    path('runs/', views.VerificationRunListCreateView.as_view(), name='verification-runs'),
    path('runs/<int:pk>/', views.VerificationRunDetailView.as_view(), name='verification-run-detail'),
    path('outcomes/', views.CheckOutcomeListView.as_view(), name='verification-outcomes'),
]
