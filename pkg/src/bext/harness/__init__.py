"""Scenario parsing, the example catalog, suite execution, fuzzing and the CLI."""

from .catalog import builtin, builtin_catalog, builtin_names
from .runner import CheckResult, Report, emit_report, fuzz_towers, run_checks
from .scenario import ParseError, Scenario, UnknownCheck, parse_scenario
