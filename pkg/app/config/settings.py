import os
import logging
from dotenv import load_dotenv
from app.core.exceptions import InternalServerError
from app.core.status_codes import ErrorMessages

load_dotenv()


def _int_setting(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise InternalServerError(ErrorMessages.INVALID_SETTING.format(name, raw))
    if value < 0:
        raise InternalServerError(ErrorMessages.INVALID_SETTING.format(name, raw))
    return value


# Fixture discovery

FIXTURES_DIR = os.getenv(
    "GENTLE_FIXTURES",
    os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))), "fixtures")
)

# Caps shared by the CLI, the API and the tests

TRUNCATION = _int_setting("GENTLE_TRUNCATION", 3)
WINDING_CAP = _int_setting("GENTLE_WINDING_CAP", 2)
AREA_CAP = _int_setting("GENTLE_AREA_CAP", 12)
RADIUS = _int_setting("GENTLE_RADIUS", 8)
SEGMENT_PERIODS = _int_setting("GENTLE_SEGMENT_PERIODS", 2)

# Logging

LOG_LEVEL = os.getenv("GENTLE_LOG_LEVEL", "INFO").upper()
if not isinstance(logging.getLevelName(LOG_LEVEL), int):
    raise InternalServerError(ErrorMessages.INVALID_SETTING.format("GENTLE_LOG_LEVEL", LOG_LEVEL))

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
