from django.urls import path
from . import views

urlpatterns = [
    path('bracket/', views.bracket, name='diagram-bracket'),
    path('cube/', views.cube, name='diagram-cube'),
    path('factors/', views.factors, name='diagram-factors'),
    path('tait/', views.tait, name='diagram-tait'),
    path('moves/', views.moves, name='diagram-moves'),
]
