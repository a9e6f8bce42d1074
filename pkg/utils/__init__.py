"""
Utilities module for the reverse Schwarz-Pick laboratory.

This module contains utility functions for console output formatting,
report/CSV persistence, and suite configuration loading.
"""

from .output_formatter import (
    print_suite_summary,
    print_evaluation,
    print_chain_report,
    print_falsify_record,
    print_angular_report,
    print_error_summary,
)
from .file_handler import (
    save_report_to_json,
    save_records_to_csv,
    save_rows_to_csv,
    save_result_to_json,
    load_suite_config,
)

__all__ = [
    'print_suite_summary',
    'print_evaluation',
    'print_chain_report',
    'print_falsify_record',
    'print_angular_report',
    'print_error_summary',
    'save_report_to_json',
    'save_records_to_csv',
    'save_rows_to_csv',
    'save_result_to_json',
    'load_suite_config',
]
