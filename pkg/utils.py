# --- START OF FILE utils.py ---

import os
import logging

# --- Logging Setup ---
LOG_LEVEL_RAW = os.environ.get("RMSOLVE_LOG_LEVEL", "WARNING")
LOG_LEVEL = logging.getLevelName(LOG_LEVEL_RAW.upper())
if not isinstance(LOG_LEVEL, int):
    LOG_LEVEL = logging.WARNING

logging.basicConfig(level=LOG_LEVEL, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

if LOG_LEVEL_RAW.upper() != logging.getLevelName(LOG_LEVEL):
    logger.warning(f"Invalid RMSOLVE_LOG_LEVEL '{LOG_LEVEL_RAW}', using WARNING.")


# --- Configuration Loading (from Environment Variables) ---
def _int_from_env(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"Invalid {name} '{raw}', using default {default}.")
        return default
    if value <= 0:
        logger.warning(f"{name} non-positive ({value}), using default {default}.")
        return default
    return value


ENUM_BOUND = _int_from_env("RMSOLVE_ENUM_BOUND", 10**6)
LIFT_BOUND = _int_from_env("RMSOLVE_LIFT_BOUND", 10**6)
BRUTE_CAP = _int_from_env("RMSOLVE_BRUTE_CAP", 10**7)
SAMPLE_RETRIES = _int_from_env("RMSOLVE_SAMPLE_RETRIES", 10**4)
PAIR_CAP = _int_from_env("RMSOLVE_PAIR_CAP", 1000)
DEBUG_CHECKS = os.environ.get("RMSOLVE_DEBUG_CHECKS", "0").strip().lower() in ("1", "true", "yes", "on")

logger.debug(f"Enumeration bound: {ENUM_BOUND}, lift bound: {LIFT_BOUND}, brute cap: {BRUTE_CAP}")
logger.debug(f"Sampling retries: {SAMPLE_RETRIES}, probe pair cap: {PAIR_CAP}, debug checks: {DEBUG_CHECKS}")


# --- Exit codes used by the CLI ---
EXIT_OK = 0
EXIT_MATH_FAILURE = 1
EXIT_INPUT_ERROR = 2


# ==============================================================
# ===== Errors =================================================
# ==============================================================
class AlgebraError(Exception):
    """Base class for every error raised by rmsolve."""
    exit_code = EXIT_MATH_FAILURE


# --- Input errors (exit code 2) ---
class InputError(AlgebraError, ValueError):
    exit_code = EXIT_INPUT_ERROR


class InvalidRing(InputError):
    pass


class InvalidElement(InputError):
    pass


class InvalidModulus(InputError):
    pass


class ModulusMismatch(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class InvalidChain(InputError):
    pass


class PreconditionViolated(InputError):
    pass


class SingularInput(InputError):
    pass


class TooLarge(InputError):
    """An enumeration would exceed the configured bound."""

    def __init__(self, what: str, size: int, bound: int):
        super().__init__(f"{what} has {size} elements, above the bound {bound}")
        self.size = size
        self.bound = bound


class DivisionByZero(InputError, ZeroDivisionError):
    pass


# --- Mathematical failures (exit code 1) ---
class MathematicalFailure(AlgebraError, ArithmeticError):
    exit_code = EXIT_MATH_FAILURE


class NotDivisible(MathematicalFailure):
    pass


class NotAUnit(MathematicalFailure):
    pass


class Unsolvable(MathematicalFailure):
    """a·x = b has no solution; ``gcd`` is (a, m), which does not divide ``rhs``."""

    def __init__(self, message: str, gcd=None, rhs=None):
        super().__init__(message)
        self.gcd = gcd
        self.rhs = rhs


class NotAMember(MathematicalFailure):
    pass


class SearchExhausted(MathematicalFailure):
    pass


class SamplingExhausted(MathematicalFailure):
    pass


class InvariantBroken(MathematicalFailure):
    """An exact post-condition check failed. Always a bug."""
    pass

# --- END OF FILE utils.py ---
