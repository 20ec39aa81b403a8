"""Moving the repeating pattern of a reference series onto a target.

Both series are segmented into periods independently. The reference's
residual around its trend is averaged per within-period interval, and
that mean pattern is added onto the target's trend, interval by
interval. No cross-sequence phase search takes place: each sequence is
anchored at its own rising crossovers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.polynomial.polynomial as npoly

from .config import SMOOTH_EXPONENTIAL, RunConfig
from .decomposition import (
    RISING,
    PeriodSegmentation,
    TrendModel,
    find_crossovers,
    fit_trend,
    scaled_abscissa,
    validate_periods,
)
from .errors import (
    ChannelMismatchError,
    ConstantSeriesError,
    CycleTransferError,
    FactorLengthMismatchError,
    LengthMismatchError,
    NoCrossoversError,
    PeriodTooShortError,
    SeasonalityNotFoundError,
    SeriesTooShortError,
)
from .seasonality import SeasonalityReport, analyze_series
from .series import (
    MIN_RANGE,
    ScaleParams,
    as_series,
    default_smooth_radius,
    denormalize,
    exponential_smoothing,
    mean_smoothing,
    normalize_minmax,
)
from .tableio import PoseTable

STATUS_TRANSFERRED = "transferred"
STATUS_SKIPPED = "skipped_no_seasonality"
STATUS_PASSTHROUGH = "passthrough"

MIN_TRANSFER_LENGTH = 8


@dataclass(eq=False)
class IntervalMap:
    """Assignment of segmented frames to within-period intervals.

    Each period of length L is cut into ``l_min`` contiguous intervals
    whose sizes differ by at most one, larger ones first. ``frames`` holds
    the covered frame indices in order and ``interval`` the 1-based
    interval index of each. ``counts`` totals the frames per interval over
    all periods.
    """

    l_min: int
    frames: np.ndarray
    interval: np.ndarray
    counts: np.ndarray


@dataclass(eq=False)
class AdditiveFactor:
    """Reference residual (values minus trend) and its per-interval means."""

    frames: np.ndarray
    raw: np.ndarray
    mean_factor: np.ndarray


@dataclass(eq=False)
class RefinedSeries:
    """Transfer output: values = trend + applied_factor, frame by frame.

    ``transferred`` is True where the frame sat inside a detected target
    period; False marks frames filled by periodic extension of the
    interval grid (trend-only frames outside the segmented region).
    """

    values: np.ndarray
    trend: np.ndarray
    applied_factor: np.ndarray
    transferred: np.ndarray


@dataclass(eq=False)
class SequenceDiagnostics:
    """Per-sequence analysis artifacts gathered during a transfer."""

    report: SeasonalityReport
    trend: TrendModel
    segmentation: PeriodSegmentation | None
    scale: ScaleParams
    smooth_radius: int
    failure: str | None = None


@dataclass(eq=False)
class ChannelDiagnostics:
    """What happened to one channel, and every intermediate worth plotting."""

    status: str
    reference: SequenceDiagnostics | None = None
    target: SequenceDiagnostics | None = None
    l_min: int | None = None
    factor: AdditiveFactor | None = None
    detail: str | None = None


def compute_lmin(ref_seg: PeriodSegmentation, target_seg: PeriodSegmentation) -> int:
    """Shortest period length across both segmentations."""
    lengths = np.concatenate([ref_seg.period_lengths, target_seg.period_lengths])
    if lengths.size == 0:
        raise SeasonalityNotFoundError("no periods to derive an interval count from")
    return int(lengths.min())


def _interval_sizes(length: int, l_min: int) -> np.ndarray:
    """Sizes of l_min contiguous intervals covering ``length`` frames.

    Sizes are ceil(length/l_min) for the first length % l_min intervals
    and floor(length/l_min) for the rest. Lengths below l_min leave
    trailing intervals empty, which only ever happens on the periodic
    extension grid.
    """
    q, r = divmod(int(length), int(l_min))
    sizes = np.full(l_min, q, dtype=int)
    sizes[:r] += 1
    return sizes


def build_phi(segmentation: PeriodSegmentation, l_min: int) -> IntervalMap:
    """Map every segmented frame to its within-period interval."""
    l_min = int(l_min)
    if l_min < 1:
        raise ValueError(f"l_min must be >= 1, got {l_min}")
    frames = []
    interval = []
    for start, end in segmentation.periods:
        length = end - start
        if length < l_min:
            raise PeriodTooShortError(
                f"period [{start}, {end}) holds {length} frames, fewer than l_min={l_min}"
            )
        sizes = _interval_sizes(length, l_min)
        frames.append(np.arange(start, end))
        interval.append(np.repeat(np.arange(1, l_min + 1), sizes))
    frames = np.concatenate(frames) if frames else np.empty(0, dtype=int)
    interval = np.concatenate(interval) if interval else np.empty(0, dtype=int)
    counts = np.bincount(interval - 1, minlength=l_min) if interval.size else np.zeros(l_min, int)
    return IntervalMap(l_min=l_min, frames=frames, interval=interval, counts=counts)


def extract_additive(values, trend, segmentation: PeriodSegmentation) -> np.ndarray:
    """Residual values minus trend over the segmented frames only."""
    y = as_series(values)
    t = trend.values if isinstance(trend, TrendModel) else as_series(trend)
    if y.size != t.size:
        raise LengthMismatchError(f"values and trend lengths differ: {y.size} != {t.size}")
    frames = segmentation.covered_frames()
    if frames.size and frames[-1] >= y.size:
        raise LengthMismatchError(
            f"segmentation reaches frame {frames[-1]} but series ends at {y.size - 1}"
        )
    return y[frames] - t[frames]


def mean_additive_factor(residual, interval_map: IntervalMap) -> np.ndarray:
    """Per-interval means of the residual, length l_min."""
    a = as_series(residual, min_len=0 if interval_map.frames.size == 0 else 1)
    if a.size != interval_map.frames.size:
        raise LengthMismatchError(
            f"residual has {a.size} values for {interval_map.frames.size} mapped frames"
        )
    counts = interval_map.counts
    # Empty intervals cannot occur when l_min came from compute_lmin.
    assert np.all(counts > 0), "interval with no samples"
    sums = np.bincount(interval_map.interval - 1, weights=a, minlength=interval_map.l_min)
    return sums / counts


def apply_transfer(
    trend,
    mean_factor,
    interval_map: IntervalMap,
    segmentation: PeriodSegmentation,
    reference_period: float,
) -> RefinedSeries:
    """Add the mean pattern onto a trend, interval by interval.

    Inside detected periods the interval map decides which mean-factor
    entry lands on each frame. Frames outside the segmented region reuse
    the grid periodically with the reference period rounded to the
    nearest whole frame, anchored at the nearest period boundary; those
    frames are flagged as extension rather than genuine transfer.
    """
    t = trend.values if isinstance(trend, TrendModel) else as_series(trend)
    factor = as_series(mean_factor)
    if factor.size != interval_map.l_min:
        raise FactorLengthMismatchError(
            f"mean factor has {factor.size} entries for l_min={interval_map.l_min}"
        )
    n = t.size
    applied = np.empty(n)
    transferred = np.zeros(n, dtype=bool)

    frames = interval_map.frames
    if frames.size and frames[-1] >= n:
        raise LengthMismatchError(
            f"interval map reaches frame {frames[-1]} but trend ends at {n - 1}"
        )
    applied[frames] = factor[interval_map.interval - 1]
    transferred[frames] = True

    l_int = max(1, int(round(reference_period)))
    grid = np.repeat(np.arange(1, interval_map.l_min + 1), _interval_sizes(l_int, interval_map.l_min))
    ends = np.array([end for _, end in segmentation.periods])
    first_start = segmentation.periods[0][0]
    outside = np.nonzero(~transferred)[0]
    if outside.size:
        # Anchor each uncovered frame at the nearest boundary on its left:
        # the first period start for the leading gap, otherwise the end of
        # the preceding period. Python's modulo keeps offsets in range for
        # frames left of the anchor.
        anchor_idx = np.searchsorted(ends, outside, side="right") - 1
        anchors = np.where(anchor_idx < 0, first_start, ends[np.maximum(anchor_idx, 0)])
        offsets = (outside - anchors) % l_int
        applied[outside] = factor[grid[offsets] - 1]
    values = t + applied
    return RefinedSeries(values=values, trend=t.copy(), applied_factor=applied, transferred=transferred)


@dataclass(eq=False)
class _SequenceAnalysis:
    diagnostics: SequenceDiagnostics
    normalized: np.ndarray
    trend_original: np.ndarray


def _analyze_sequence(x: np.ndarray, cfg: RunConfig) -> _SequenceAnalysis:
    """Normalize, detect the cycle, fit the trend, segment into periods.

    Segmentation failures (no crossovers, validation rejecting the
    candidates) are recorded on the diagnostics instead of raised, so the
    caller can fall back to passing the channel through.

    Cycle detection runs on ramp-removed values: a least-squares line is
    subtracted first, because a ramp's spectral leakage into the lowest
    bins can outweigh a genuine cycle whose frequency falls between bins.
    A series with nothing left after ramp removal raises
    ConstantSeriesError just as a flat series does.
    """
    n = x.size
    normalized, scale = normalize_minmax(x)
    t_axis = scaled_abscissa(n)
    ramp = npoly.polyval(t_axis, npoly.polyfit(t_axis, normalized, 1))
    cyclic = normalized - ramp
    if float(np.ptp(cyclic)) < MIN_RANGE:
        raise ConstantSeriesError("series is a plain ramp, no cyclic part to analyze")
    report = analyze_series(cyclic)
    radius = cfg.smooth_radius
    if radius is None:
        radius = default_smooth_radius(report.reference_period)
    if cfg.smooth_kind == SMOOTH_EXPONENTIAL:
        smoothed = exponential_smoothing(normalized, cfg.exp_alpha, radius)
    else:
        smoothed = mean_smoothing(normalized, radius)
    trend = fit_trend(normalized, min(cfg.max_order, n - 1), report.dominant_frequency)

    segmentation = None
    failure = None
    try:
        crossovers = find_crossovers(smoothed, trend)
        rising = [c.index for c in crossovers if c.direction == RISING]
        segmentation = validate_periods(rising, report.reference_period, cfg.alpha)
    except (NoCrossoversError, SeasonalityNotFoundError) as exc:
        failure = str(exc)

    diagnostics = SequenceDiagnostics(
        report=report,
        trend=trend,
        segmentation=segmentation,
        scale=scale,
        smooth_radius=radius,
        failure=failure,
    )
    return _SequenceAnalysis(
        diagnostics=diagnostics,
        normalized=normalized,
        trend_original=denormalize(trend.values, scale),
    )


def transfer_channel(
    reference, target, config: RunConfig | None = None
) -> tuple[RefinedSeries, ChannelDiagnostics]:
    """Refine one target channel using one reference channel.

    Both series are analyzed independently (scale-free steps run on
    normalized values). The reference residual is taken against its trend
    in original units and its per-interval means are added onto the
    target's trend, also in original units, so patterns keep their
    physical amplitude across differently scaled sequences.

    When either sequence fails segmentation the target comes back
    unchanged with status "skipped_no_seasonality".
    """
    cfg = config if config is not None else RunConfig()
    ref_x = as_series(reference)
    tgt_x = as_series(target)
    if ref_x.size < MIN_TRANSFER_LENGTH or tgt_x.size < MIN_TRANSFER_LENGTH:
        raise SeriesTooShortError(
            f"transfer needs at least {MIN_TRANSFER_LENGTH} frames per sequence, "
            f"got {ref_x.size} and {tgt_x.size}"
        )

    ref = _analyze_sequence(ref_x, cfg)
    tgt = _analyze_sequence(tgt_x, cfg)

    if ref.diagnostics.segmentation is None or tgt.diagnostics.segmentation is None:
        reasons = []
        if ref.diagnostics.failure:
            reasons.append(f"reference: {ref.diagnostics.failure}")
        if tgt.diagnostics.failure:
            reasons.append(f"target: {tgt.diagnostics.failure}")
        refined = RefinedSeries(
            values=tgt_x.copy(),
            trend=tgt.trend_original,
            applied_factor=np.zeros(tgt_x.size),
            transferred=np.zeros(tgt_x.size, dtype=bool),
        )
        diag = ChannelDiagnostics(
            status=STATUS_SKIPPED,
            reference=ref.diagnostics,
            target=tgt.diagnostics,
            detail="; ".join(reasons),
        )
        return refined, diag

    ref_seg = ref.diagnostics.segmentation
    tgt_seg = tgt.diagnostics.segmentation
    l_min = compute_lmin(ref_seg, tgt_seg)
    ref_map = build_phi(ref_seg, l_min)
    tgt_map = build_phi(tgt_seg, l_min)
    raw = extract_additive(ref_x, ref.trend_original, ref_seg)
    mean_factor = mean_additive_factor(raw, ref_map)
    refined = apply_transfer(
        tgt.trend_original,
        mean_factor,
        tgt_map,
        tgt_seg,
        tgt.diagnostics.report.reference_period,
    )
    diag = ChannelDiagnostics(
        status=STATUS_TRANSFERRED,
        reference=ref.diagnostics,
        target=tgt.diagnostics,
        l_min=l_min,
        factor=AdditiveFactor(frames=ref_map.frames, raw=raw, mean_factor=mean_factor),
    )
    return refined, diag


def _selected_channels(table: PoseTable, cfg: RunConfig) -> set[str]:
    if cfg.channel_filter is None:
        return set(table.channel_names)
    unknown = sorted(set(cfg.channel_filter) - set(table.channel_names))
    if unknown:
        raise ChannelMismatchError(f"filter names not present in table: {unknown}")
    return set(cfg.channel_filter)


def transfer_table(
    ref_table: PoseTable, target_table: PoseTable, config: RunConfig | None = None
) -> tuple[PoseTable, dict[str, ChannelDiagnostics]]:
    """Refine every selected target channel against its reference twin.

    Channel sets must match exactly. Channels excluded by the config
    filter pass through untouched with status "passthrough"; constant
    channels pass through with status "skipped_no_seasonality". Output
    channels keep the target table's order.
    """
    cfg = config if config is not None else RunConfig()
    if set(ref_table.channel_names) != set(target_table.channel_names):
        only_ref = sorted(set(ref_table.channel_names) - set(target_table.channel_names))
        only_tgt = sorted(set(target_table.channel_names) - set(ref_table.channel_names))
        raise ChannelMismatchError(
            f"channel sets differ; only in reference: {only_ref}, only in target: {only_tgt}"
        )
    selected = _selected_channels(target_table, cfg)

    columns = []
    diagnostics: dict[str, ChannelDiagnostics] = {}
    for name in target_table.channel_names:
        tgt_col = target_table.channel(name)
        if name not in selected:
            columns.append(tgt_col)
            diagnostics[name] = ChannelDiagnostics(status=STATUS_PASSTHROUGH)
            continue
        try:
            refined, diag = transfer_channel(ref_table.channel(name), tgt_col, cfg)
        except ConstantSeriesError as exc:
            columns.append(tgt_col)
            diagnostics[name] = ChannelDiagnostics(status=STATUS_SKIPPED, detail=str(exc))
            continue
        except CycleTransferError as exc:
            raise type(exc)(f"channel {name!r}: {exc}") from exc
        columns.append(refined.values)
        diagnostics[name] = diag

    if columns:
        values = np.column_stack(columns)
    else:
        values = np.empty((target_table.n_frames, 0))
    return PoseTable(list(target_table.channel_names), values), diagnostics


def analyze_table(table: PoseTable, config: RunConfig | None = None) -> dict[str, ChannelDiagnostics]:
    """Run the per-sequence analysis on every selected channel of a table.

    Channels that segment cleanly get status "passthrough" (nothing is
    modified by analysis); ones that fail segmentation or are constant get
    "skipped_no_seasonality"; filtered-out channels get "passthrough" with
    empty diagnostics.
    """
    cfg = config if config is not None else RunConfig()
    selected = _selected_channels(table, cfg)
    out: dict[str, ChannelDiagnostics] = {}
    for name in table.channel_names:
        if name not in selected:
            out[name] = ChannelDiagnostics(status=STATUS_PASSTHROUGH)
            continue
        try:
            analysis = _analyze_sequence(table.channel(name), cfg)
        except ConstantSeriesError as exc:
            out[name] = ChannelDiagnostics(status=STATUS_SKIPPED, detail=str(exc))
            continue
        except CycleTransferError as exc:
            raise type(exc)(f"channel {name!r}: {exc}") from exc
        seq = analysis.diagnostics
        status = STATUS_PASSTHROUGH if seq.segmentation is not None else STATUS_SKIPPED
        out[name] = ChannelDiagnostics(status=status, target=seq, detail=seq.failure)
    return out
