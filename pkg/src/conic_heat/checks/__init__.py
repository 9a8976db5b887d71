from conic_heat.checks.registry import (
    INFO,
    REGISTRY,
    CheckInfo,
    CheckResult,
    load_all_checks,
    register,
    run_all_checks,
    run_check,
)

__all__ = [
    "INFO",
    "REGISTRY",
    "CheckInfo",
    "CheckResult",
    "load_all_checks",
    "register",
    "run_all_checks",
    "run_check",
]
