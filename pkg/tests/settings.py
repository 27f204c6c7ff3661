"""
Shared Hypothesis settings, so suites agree on how hard they push.

- STANDARD_SETTINGS: regular property tests.
- SLOW_SETTINGS: properties that run a search per example.
- QUICK_SETTINGS: cheap rejection and round trip checks.
"""

from hypothesis import HealthCheck, settings

STANDARD_SETTINGS = settings(max_examples=100, deadline=None)

SLOW_SETTINGS = settings(
    max_examples=30,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)

QUICK_SETTINGS = settings(max_examples=20, deadline=None)
