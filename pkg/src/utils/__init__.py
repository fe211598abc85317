"""
Utils Module
============

Lecture des arguments et mise en forme des résultats du CLI.
"""

from .helpers import (
    parse_float_list,
    parse_interval,
    sample_interval,
    format_float,
    to_json,
    interval_to_dict,
    rho_to_dict,
    report_to_dict,
    render_mean,
    render_rho,
    render_report,
    render_table_rows,
    render_suites,
)

__all__ = [
    'parse_float_list',
    'parse_interval',
    'sample_interval',
    'format_float',
    'to_json',
    'interval_to_dict',
    'rho_to_dict',
    'report_to_dict',
    'render_mean',
    'render_rho',
    'render_report',
    'render_table_rows',
    'render_suites',
]
