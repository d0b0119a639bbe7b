import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

# enumeration-backed strategies can be slow per example; wall clock is
# bounded by the acceptance budgets instead
settings.register_profile(
    "workbench",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("workbench")

sys.path.insert(0, str(Path(__file__).parent))
