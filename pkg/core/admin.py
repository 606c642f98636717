from django.contrib import admin
from .models import VerificationRun, CheckOutcome


class CheckOutcomeInline(admin.TabularInline):
    model = CheckOutcome
    extra = 0
    fields = ['check_name', 'instance', 'passed', 'vacuous']
    readonly_fields = fields
    can_delete = False
    show_change_link = True


@admin.register(VerificationRun)
class VerificationRunAdmin(admin.ModelAdmin):
    list_display = ['id', 'source', 'seed', 'total_checks', 'failed_checks', 'created_at']
    list_filter = ['created_at']
    search_fields = ['source']
    ordering = ['-created_at']
    readonly_fields = ['created_at']
    inlines = [CheckOutcomeInline]


@admin.register(CheckOutcome)
class CheckOutcomeAdmin(admin.ModelAdmin):
    list_display = ['id', 'run', 'check_name', 'instance', 'passed', 'vacuous']
    list_filter = ['check_name', 'passed', 'vacuous']
    search_fields = ['instance', 'check_name']
    raw_id_fields = ['run']
