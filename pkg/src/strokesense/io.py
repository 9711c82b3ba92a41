"""Parsing, validation and serialization of raw 9-channel IMU record streams.

Canonical text format: a header line ``t,ax,ay,az,gx,gy,gz,rx,ry,rz``
followed by one row of 10 decimal fields per sample.  Lines starting with
``#`` are comments; ``# period=<seconds>`` overrides the nominal sample
period (default 0.01 s).  Units: acceleration m/s^2, angular rate deg/s,
orientation deg (Euler).
"""

from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .errors import EmptyInput, MalformedRow, NonMonotonicTime

HEADER = "t,ax,ay,az,gx,gy,gz,rx,ry,rz"
DEFAULT_PERIOD = 0.01
N_CHANNELS = 9
CHANNEL_NAMES = ["ax", "ay", "az", "gx", "gy", "gz", "rx", "ry", "rz"]


@dataclass(frozen=True)
class SampleFrame:
    """One timestamped 9-channel sample."""

    t: float
    acc: tuple
    gyro: tuple
    angle: tuple

    def __post_init__(self):
        vals = (self.t,) + tuple(self.acc) + tuple(self.gyro) + tuple(self.angle)
        if not all(np.isfinite(v) for v in vals):
            raise MalformedRow(f"non-finite value in frame at t={self.t!r}")


@dataclass(frozen=True)
class GapReport:
    """A spacing anomaly between samples ``index`` and ``index + 1``."""

    index: int
    dt: float
    missing: int


class SensorSeries:
    """Immutable ordered stream of 9-channel samples.

    ``channels`` is an (n, 9) array in the order ax..az, gx..gz, rx..rz.
    Timestamps must be strictly increasing; spacing gaps are permitted at
    construction and surfaced by :func:`validate_series`.
    """

    def __init__(self, t, channels, sample_period: float = DEFAULT_PERIOD):
        t = np.asarray(t, dtype=float)
        channels = np.asarray(channels, dtype=float)
        if t.ndim != 1 or channels.shape != (t.shape[0], N_CHANNELS):
            raise MalformedRow(
                f"expected (n,) timestamps and (n, {N_CHANNELS}) channels, "
                f"got {t.shape} and {channels.shape}"
            )
        if t.size == 0:
            raise EmptyInput("series has no samples")
        if not (np.isfinite(t).all() and np.isfinite(channels).all()):
            raise MalformedRow("non-finite sample value")
        if t.size > 1 and not (np.diff(t) > 0).all():
            raise NonMonotonicTime("timestamps must be strictly increasing")
        if sample_period <= 0:
            raise MalformedRow(f"sample_period must be positive, got {sample_period}")
        self._t = t.copy()
        self._channels = channels.copy()
        self._t.setflags(write=False)
        self._channels.setflags(write=False)
        self.sample_period = float(sample_period)

    @property
    def t(self) -> np.ndarray:
        return self._t

    @property
    def channels(self) -> np.ndarray:
        return self._channels

    @property
    def acc(self) -> np.ndarray:
        return self._channels[:, 0:3]

    @property
    def gyro(self) -> np.ndarray:
        return self._channels[:, 3:6]

    @property
    def angle(self) -> np.ndarray:
        return self._channels[:, 6:9]

    def __len__(self) -> int:
        return self._t.shape[0]

    def frame(self, i: int) -> SampleFrame:
        row = self._channels[i]
        return SampleFrame(
            t=float(self._t[i]),
            acc=tuple(row[0:3]),
            gyro=tuple(row[3:6]),
            angle=tuple(row[6:9]),
        )

    def __eq__(self, other):
        if not isinstance(other, SensorSeries):
            return NotImplemented
        return (
            self.sample_period == other.sample_period
            and np.array_equal(self._t, other._t)
            and np.array_equal(self._channels, other._channels)
        )


def parse_series(source: Union[str, Iterable[str]]) -> SensorSeries:
    """Parse the canonical CSV layout into a :class:`SensorSeries`.

    ``source`` may be the whole text, an iterable of lines, or an open
    text file.
    """
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = source

    period = DEFAULT_PERIOD
    ts, rows = [], []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if body.startswith("period="):
                try:
                    period = float(body.split("=", 1)[1])
                except ValueError:
                    raise MalformedRow(f"line {lineno}: bad period directive {line!r}")
            continue
        if line.replace(" ", "") == HEADER:
            continue
        fields = line.split(",")
        if len(fields) != 10:
            raise MalformedRow(f"line {lineno}: expected 10 fields, got {len(fields)}")
        try:
            values = [float(f) for f in fields]
        except ValueError:
            raise MalformedRow(f"line {lineno}: non-numeric field in {line!r}")
        if not all(np.isfinite(v) for v in values):
            raise MalformedRow(f"line {lineno}: non-finite value")
        ts.append(values[0])
        rows.append(values[1:])

    if not rows:
        raise EmptyInput("no data rows in input")
    t = np.array(ts)
    if t.size > 1 and not (np.diff(t) > 0).all():
        raise NonMonotonicTime("timestamps must be strictly increasing")
    return SensorSeries(t, np.array(rows), sample_period=period)


def serialize_series(series: SensorSeries) -> str:
    """Emit the canonical CSV text; round-trips bit-exactly through
    :func:`parse_series` (shortest-repr decimal output)."""
    out = [f"# period={series.sample_period!r}", HEADER]
    for i in range(len(series)):
        vals = [series.t[i]] + list(series.channels[i])
        out.append(",".join(repr(float(v)) for v in vals))
    return "\n".join(out) + "\n"


def validate_series(series: SensorSeries) -> list:
    """Report every adjacent pair whose spacing deviates from the nominal
    period by more than half a period, with the implied missing-row count."""
    p = series.sample_period
    dts = np.diff(series.t)
    reports = []
    for i in np.nonzero(np.abs(dts - p) > 0.5 * p)[0]:
        dt = float(dts[i])
        missing = max(int(round(dt / p)) - 1, 0)
        reports.append(GapReport(index=int(i), dt=dt, missing=missing))
    return reports
