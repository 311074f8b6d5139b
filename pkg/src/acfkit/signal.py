"""Multi-channel time series: standardization, segmentation, labels, synthesis.

A recording is an M-channel, N-frame real matrix with a frame rate. Channels
are standardized individually (zero mean, unit population std) before
correlation features are computed. Sessions are cut into fixed-length
overlapping windows; whole short recordings are kept or dropped by duration
thresholds. The synthetic generator is a delayed vector-autoregressive
process used as a stand-in for clinical recordings.
"""
from __future__ import annotations

import csv
import enum
import json
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import (
    ConstantChannel,
    DataError,
    IoError,
    MismatchedChannels,
    NegativeScore,
    NonFinite,
    TooShort,
    UnstableCoupling,
)

HAMD_THRESHOLD = 7


class DepressionClass(enum.IntEnum):
    """Binary session label. DEPRESSED is class index 0 throughout."""

    DEPRESSED = 0
    NOT_DEPRESSED = 1


def _validate_values(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2:
        raise DataError(f"values must be a 2-D (channels x frames) matrix, got ndim={values.ndim}")
    if values.shape[0] < 1 or values.shape[1] < 1:
        raise DataError(f"values must have at least one channel and one frame, got {values.shape}")
    if not np.all(np.isfinite(values)):
        raise NonFinite("values contain NaN or Inf")
    return values


@dataclass(frozen=True)
class MultiChannelSeries:
    """An M-channel, N-frame signal with a frame rate.

    Invariants: distinct channel names (one per channel), frame_rate_hz > 0,
    all values finite.
    """

    channel_names: tuple[str, ...]
    frame_rate_hz: float
    values: np.ndarray

    def __post_init__(self):
        values = _validate_values(self.values)
        names = tuple(self.channel_names)
        if len(names) != values.shape[0]:
            raise DataError(
                f"{len(names)} channel names for {values.shape[0]} channels"
            )
        if len(set(names)) != len(names):
            raise DataError("channel names must be distinct")
        if not self.frame_rate_hz > 0:
            raise DataError(f"frame_rate_hz must be > 0, got {self.frame_rate_hz}")
        object.__setattr__(self, "channel_names", names)
        object.__setattr__(self, "values", values)

    @property
    def n_channels(self) -> int:
        return self.values.shape[0]

    @property
    def n_frames(self) -> int:
        return self.values.shape[1]

    @property
    def duration_s(self) -> float:
        return self.n_frames / self.frame_rate_hz


@dataclass(frozen=True)
class SegmentationConfig:
    """Windowing rule: window/shift/min lengths in seconds.

    truncate_s, when set, cuts every emitted segment to a fixed length
    (must not exceed min_s so no kept segment is ever too short).
    """

    window_s: float = 20.0
    shift_s: float = 5.0
    min_s: float = 10.0
    truncate_s: float | None = None

    def __post_init__(self):
        if not 0 < self.shift_s <= self.window_s:
            raise DataError(f"need 0 < shift_s <= window_s, got shift={self.shift_s} window={self.window_s}")
        if not 0 < self.min_s <= self.window_s:
            raise DataError(f"need 0 < min_s <= window_s, got min={self.min_s} window={self.window_s}")
        if self.truncate_s is not None and self.truncate_s > self.min_s:
            raise DataError(f"truncate_s must not exceed min_s, got {self.truncate_s} > {self.min_s}")


@dataclass(frozen=True)
class Segment:
    """A windowed slice of a session: M channels x L frames."""

    session_id: str
    start_frame: int
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _validate_values(self.values))
        if self.start_frame < 0:
            raise DataError(f"start_frame must be >= 0, got {self.start_frame}")

    @property
    def n_channels(self) -> int:
        return self.values.shape[0]

    @property
    def n_frames(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class SessionLabel:
    """Session id, raw HAMD score, and the derived binary class."""

    session_id: str
    hamd: int
    label: DepressionClass

    def __post_init__(self):
        if hamd_label(self.hamd) != self.label:
            raise DataError(
                f"label {self.label!r} inconsistent with hamd={self.hamd} (threshold {HAMD_THRESHOLD})"
            )


@dataclass(frozen=True)
class SynthConfig:
    """Delayed vector-autoregressive generator parameters.

    x[t] = coupling @ x[t - coupling_delay] + noise[t], noise iid Gaussian.
    Stationarity requires the spectral radius of coupling to be < 1.
    """

    channels: int
    frames: int
    coupling: np.ndarray
    coupling_delay: int
    noise_std: float = 1.0
    seed: int = 0
    frame_rate_hz: float = 100.0

    def __post_init__(self):
        A = np.asarray(self.coupling, dtype=np.float64)
        if A.shape != (self.channels, self.channels):
            raise MismatchedChannels(f"coupling must be {self.channels}x{self.channels}, got {A.shape}")
        object.__setattr__(self, "coupling", A)
        if self.coupling_delay < 1:
            raise DataError(f"coupling_delay must be >= 1, got {self.coupling_delay}")
        if self.frames <= self.coupling_delay:
            raise DataError(f"frames ({self.frames}) must exceed coupling_delay ({self.coupling_delay})")
        if not self.noise_std > 0:
            raise DataError(f"noise_std must be > 0, got {self.noise_std}")
        if spectral_radius(A) >= 1.0:
            raise UnstableCoupling(f"spectral radius {spectral_radius(A):.4f} >= 1")


def spectral_radius(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(np.linalg.eigvals(np.asarray(matrix, dtype=np.float64)))))


# -- standardization ----------------------------------------------------------

def standardize_values(values: np.ndarray) -> np.ndarray:
    """Zero-mean, unit population-std each row of a channels x frames matrix."""
    values = _validate_values(values)
    mean = values.mean(axis=1, keepdims=True)
    std = values.std(axis=1, keepdims=True)  # population (1/N) convention
    flat = np.where(std.ravel() == 0.0)[0]
    if flat.size:
        raise ConstantChannel(f"zero-variance channel(s) at index {flat.tolist()}")
    return (values - mean) / std


def standardize_channels(series: MultiChannelSeries) -> MultiChannelSeries:
    """Standardize every channel of a series individually.

    Raises ConstantChannel if any channel has zero variance.
    """
    return MultiChannelSeries(
        channel_names=series.channel_names,
        frame_rate_hz=series.frame_rate_hz,
        values=standardize_values(series.values),
    )


# -- segmentation --------------------------------------------------------------

def segment_session(
    series: MultiChannelSeries,
    cfg: SegmentationConfig = SegmentationConfig(),
    session_id: str = "",
) -> list[Segment]:
    """Cut a session into fixed windows.

    Shorter than min_s: dropped (empty list). Between min_s and window_s:
    kept whole as a single segment. Longer: full windows at start offsets
    0, shift, 2*shift, ... while the window fits; the trailing remainder
    is discarded so all windowed segments have equal length.
    """
    duration = series.duration_s
    if duration < cfg.min_s:
        return []
    if duration <= cfg.window_s:
        return [Segment(session_id=session_id, start_frame=0, values=series.values)]
    window = int(cfg.window_s * series.frame_rate_hz)
    shift = int(cfg.shift_s * series.frame_rate_hz)
    segments = []
    start = 0
    while start + window <= series.n_frames:
        segments.append(
            Segment(
                session_id=session_id,
                start_frame=start,
                values=series.values[:, start:start + window],
            )
        )
        start += shift
    return segments


def truncate_fixed(segment: Segment, truncate_s: float, frame_rate_hz: float) -> Segment:
    """Keep only the first floor(truncate_s * frame_rate) frames of a segment."""
    keep = int(truncate_s * frame_rate_hz)
    if segment.n_frames < keep:
        raise TooShort(
            f"segment has {segment.n_frames} frames, need {keep} for {truncate_s}s at {frame_rate_hz}Hz"
        )
    return Segment(
        session_id=segment.session_id,
        start_frame=segment.start_frame,
        values=segment.values[:, :keep],
    )


def hamd_label(hamd: int) -> DepressionClass:
    """Map a HAMD score to the binary class: depressed iff score > 7."""
    if hamd < 0:
        raise NegativeScore(f"HAMD score must be >= 0, got {hamd}")
    if hamd > HAMD_THRESHOLD:
        return DepressionClass.DEPRESSED
    return DepressionClass.NOT_DEPRESSED


# -- synthetic data ------------------------------------------------------------

def generate_var_series(cfg: SynthConfig) -> MultiChannelSeries:
    """Simulate x[t] = A @ x[t - delay] + eps[t], eps ~ N(0, noise_std^2) iid.

    Frames before the coupling delay are pure noise. Bit-reproducible for a
    fixed config (seed included).
    """
    rng = np.random.default_rng(cfg.seed)
    eps = rng.normal(0.0, cfg.noise_std, size=(cfg.channels, cfg.frames))
    x = eps.copy()
    A = cfg.coupling
    d = cfg.coupling_delay
    for t in range(d, cfg.frames):
        x[:, t] += A @ x[:, t - d]
    names = tuple(f"ch{i}" for i in range(cfg.channels))
    return MultiChannelSeries(channel_names=names, frame_rate_hz=cfg.frame_rate_hz, values=x)


def make_labeled_dataset(
    cfg_class0: SynthConfig,
    cfg_class1: SynthConfig,
    sessions_per_class: int,
    duration_range_s: tuple[float, float],
    hamd_range_class0: tuple[int, int] = (8, 24),
    hamd_range_class1: tuple[int, int] = (0, 7),
) -> list[tuple[MultiChannelSeries, SessionLabel]]:
    """Generate a balanced labeled dataset of synthetic sessions.

    cfg_class0 drives DEPRESSED sessions, cfg_class1 NOT_DEPRESSED ones.
    Per-session durations are drawn uniformly from duration_range_s and
    per-session generator seeds are derived from the config seeds, so the
    whole dataset is a pure function of its arguments.
    """
    if cfg_class0.channels != cfg_class1.channels:
        raise MismatchedChannels(
            f"channel counts differ: {cfg_class0.channels} vs {cfg_class1.channels}"
        )
    if cfg_class0.frame_rate_hz != cfg_class1.frame_rate_hz:
        raise MismatchedChannels(
            f"frame rates differ: {cfg_class0.frame_rate_hz} vs {cfg_class1.frame_rate_hz}"
        )
    lo, hi = duration_range_s
    if not 0 < lo <= hi:
        raise DataError(f"bad duration range {duration_range_s}")
    rng = np.random.default_rng([cfg_class0.seed, cfg_class1.seed, sessions_per_class])
    dataset: list[tuple[MultiChannelSeries, SessionLabel]] = []
    per_class = (
        (DepressionClass.DEPRESSED, cfg_class0, hamd_range_class0),
        (DepressionClass.NOT_DEPRESSED, cfg_class1, hamd_range_class1),
    )
    for label, cfg, hamd_range in per_class:
        for i in range(sessions_per_class):
            duration = rng.uniform(lo, hi)
            frames = int(round(duration * cfg.frame_rate_hz))
            hamd = int(rng.integers(hamd_range[0], hamd_range[1] + 1))
            if hamd_label(hamd) != label:
                raise DataError(f"hamd range {hamd_range} inconsistent with class {label.name}")
            session_seed = int(rng.integers(0, 2**63))
            session_cfg = replace(cfg, frames=frames, seed=session_seed)
            series = generate_var_series(session_cfg)
            session_id = f"{label.name.lower()}_{i:03d}"
            dataset.append((series, SessionLabel(session_id, hamd, label)))
    return dataset


def ring_coupling(channels: int, strength: float) -> np.ndarray:
    """Cyclic one-step coupling matrix: channel k drives channel k+1 (mod M)."""
    A = np.zeros((channels, channels))
    for k in range(channels):
        A[(k + 1) % channels, k] = strength
    return A


# -- CSV and manifest I/O -------------------------------------------------------

def write_series_csv(series: MultiChannelSeries, path: str | Path) -> None:
    """One row per frame; header is `t_s` plus the channel names."""
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(("t_s",) + series.channel_names)
            rate = series.frame_rate_hz
            for t in range(series.n_frames):
                writer.writerow([repr(t / rate)] + [repr(v) for v in series.values[:, t]])
    except OSError as exc:
        raise IoError(f"cannot write series CSV {path}: {exc}") from exc


def read_series_csv(path: str | Path, frame_rate_hz: float) -> MultiChannelSeries:
    """Read a per-frame CSV; a leading `t_s` column is ignored for values."""
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if not header:
                raise IoError(f"empty series CSV {path}")
            skip = 1 if header[0] == "t_s" else 0
            names = tuple(header[skip:])
            rows = []
            for lineno, row in enumerate(reader, start=2):
                if len(row) != len(header):
                    raise IoError(f"{path}:{lineno}: expected {len(header)} columns, got {len(row)}")
                try:
                    rows.append([float(v) for v in row[skip:]])
                except ValueError as exc:
                    raise IoError(f"{path}:{lineno}: {exc}") from exc
    except OSError as exc:
        raise IoError(f"cannot read series CSV {path}: {exc}") from exc
    if not rows:
        raise IoError(f"series CSV {path} has no data rows")
    values = np.asarray(rows, dtype=np.float64).T
    return MultiChannelSeries(channel_names=names, frame_rate_hz=frame_rate_hz, values=values)


@dataclass(frozen=True)
class ManifestEntry:
    session_id: str
    csv_path: str
    hamd: int


def write_manifest(entries: list[ManifestEntry], path: str | Path) -> None:
    """Dataset manifest: JSON array of {session_id, csv_path, hamd}."""
    payload = [
        {"session_id": e.session_id, "csv_path": e.csv_path, "hamd": e.hamd}
        for e in entries
    ]
    try:
        Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write manifest {path}: {exc}") from exc


def read_manifest(path: str | Path) -> list[ManifestEntry]:
    path = Path(path)
    try:
        payload = json.loads(path.read_text())
    except OSError as exc:
        raise IoError(f"cannot read manifest {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise IoError(f"malformed manifest {path}: {exc}") from exc
    if not isinstance(payload, list):
        raise IoError(f"manifest {path} must be a JSON array")
    entries = []
    for item in payload:
        try:
            entries.append(
                ManifestEntry(
                    session_id=str(item["session_id"]),
                    csv_path=str(item["csv_path"]),
                    hamd=int(item["hamd"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise IoError(f"malformed manifest entry in {path}: {item!r}") from exc
    return entries
