# kummer_chow_verifier/checks.py
import json
import logging
import time
import traceback
from typing import Any, Callable, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from .config import RunSettings
from .errors import VerifierError

logging.basicConfig(level=logging.INFO, format='%(asctime)s | %(name)s | %(levelname)s | %(message)s')
logger = logging.getLogger("check_runner")

Status = Literal["pass", "fail", "error"]


class CheckResult(BaseModel):
    name: str
    status: Status
    witness: Dict[str, Any] = Field(default_factory=dict)
    details: Dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


class Report(BaseModel):
    command: str
    parameters: Dict[str, Any]
    checks: List[CheckResult]
    health: str
    wall_time: Optional[float] = None
    table: Optional[List[Dict[str, Any]]] = None

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json", exclude_none=True), ensure_ascii=False, indent=2, sort_keys=True)


def passed(name: str, details: Optional[Dict[str, Any]] = None) -> CheckResult:
    return CheckResult(name=name, status="pass", details=details or {})


def failed(name: str, witness: Dict[str, Any], details: Optional[Dict[str, Any]] = None) -> CheckResult:
    return CheckResult(name=name, status="fail", witness=witness, details=details or {})


def verdict(name: str, ok: bool, witness: Dict[str, Any], details: Optional[Dict[str, Any]] = None) -> CheckResult:
    """Pass/fail result; the witness is only kept on failure."""
    if ok:
        return passed(name, details)
    return failed(name, witness, details)


Check = Callable[[RunSettings], CheckResult]


class CheckSuite:
    """A named group of checks, one per verifiable statement of a module."""

    def __init__(self, name: str, description: str, checks: List[Check]):
        self.name = name
        self.description = description
        self.checks = list(checks)

    def run(self, settings: RunSettings) -> List[CheckResult]:
        logger.info(f"🔍 Running suite {self.name} ({len(self.checks)} checks)")
        results = [run_check(check, settings) for check in self.checks]
        bad = [r.name for r in results if not r.passed]
        if bad:
            logger.error(f"❌ Suite {self.name}: {len(bad)} failing checks: {', '.join(bad)}")
        else:
            logger.info(f"✅ Suite {self.name}: all {len(results)} checks passed")
        return results


def run_check(check: Check, settings: RunSettings) -> CheckResult:
    name = getattr(check, "__name__", "check").removeprefix("check_")
    start = time.perf_counter()
    try:
        result = check(settings)
    except VerifierError as e:
        logger.error(f"❌ {name} raised {type(e).__name__}: {e}")
        result = CheckResult(name=name, status="fail", witness=e.as_witness())
    except Exception as e:
        logger.error(f"❌ {name} crashed: {e}")
        logger.error(traceback.format_exc())
        result = CheckResult(name=name, status="error", witness={"error": type(e).__name__, "message": str(e)})
    elapsed = time.perf_counter() - start
    logger.info(f"📊 {name}: {result.status} in {elapsed:.2f}s")
    return result


def suite_health(results: List[CheckResult]) -> str:
    """healthy when every check passes, unhealthy when one crashed, degraded otherwise."""
    statuses = {r.status for r in results}
    if statuses <= {"pass"}:
        return "healthy"
    if "error" in statuses:
        return "unhealthy"
    return "degraded"
