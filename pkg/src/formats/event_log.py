"""Challenge event logs: ``time, team, instance, solution-path-or-cost`` per line."""

import re
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field

from src.core.exceptions import FormatError, FormatErrorKind

ISO_DURATION = re.compile(
    r"^P(?:(?P<days>\d+(?:\.\d+)?)D)?"
    r"(?:T(?:(?P<hours>\d+(?:\.\d+)?)H)?(?:(?P<minutes>\d+(?:\.\d+)?)M)?"
    r"(?:(?P<seconds>\d+(?:\.\d+)?)S)?)?$",
    re.IGNORECASE,
)


class EventLogLine(BaseModel):
    """One raw event; exactly one of ``cost`` and ``solution_path`` is set."""

    model_config = ConfigDict(frozen=True)

    line: int = Field(..., ge=1)
    time: float = Field(..., ge=0)
    team: str = Field(..., min_length=1)
    instance: str = Field(..., min_length=1)
    cost: int | None = None
    solution_path: Path | None = None


def parse_day_offset(token: str) -> float:
    """Days since challenge start from decimal days or an ISO-8601 duration.

    Examples: ``5``, ``12.25``, ``P5D``, ``P12DT6H``, ``PT36H``.

    Raises:
        ValueError: If the token is neither form or is negative.
    """
    token = token.strip()
    match = ISO_DURATION.match(token)
    if match and token.upper() not in ("P", "PT"):
        parts = {key: float(value) if value else 0.0 for key, value in match.groupdict().items()}
        return (
            parts["days"]
            + parts["hours"] / 24
            + parts["minutes"] / 1440
            + parts["seconds"] / 86400
        )
    value = float(token)
    if value < 0 or value != value:
        raise ValueError(f"day offset {token!r} must be a non-negative number")
    return value


def parse_event_log(text: str, base_dir: Path | None = None) -> list[EventLogLine]:
    """Parse an event log in input order.

    Relative solution paths are resolved against ``base_dir`` (normally the
    directory holding the log).

    Raises:
        FormatError: With the line number of the first malformed event.
    """
    events: list[EventLogLine] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = [token.strip() for token in line.split(",")]
        if len(fields) != 4 or not all(fields):
            raise FormatError(
                "expected 'time, team, instance, solution-or-cost'",
                line=number,
                kind=FormatErrorKind.MALFORMED_LINE,
            )
        time_token, team, instance, payload = fields
        try:
            time = parse_day_offset(time_token)
        except ValueError:
            raise FormatError(
                f"invalid time {time_token!r}", line=number, kind=FormatErrorKind.INVALID_TIME
            ) from None

        if re.fullmatch(r"[+-]?\d+", payload):
            cost = int(payload)
            if cost <= 0:
                raise FormatError(
                    f"cost {cost} must be positive",
                    line=number,
                    kind=FormatErrorKind.INVALID_VALUE,
                )
            events.append(
                EventLogLine(line=number, time=time, team=team, instance=instance, cost=cost)
            )
            continue

        path = Path(payload)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        events.append(
            EventLogLine(
                line=number, time=time, team=team, instance=instance, solution_path=path
            )
        )
    return events
