"""Monte-Carlo experiment engine: CEQNR sweeps, metrics, CSV output.

Determinism contract: every trial owns a counter-based RNG seeded by
(master_seed, ceqnr_index, frame_index, approach_id), frames are
processed in fixed blocks of BLOCK_FRAMES, and block partial sums are
reduced in submission order. Identical configuration and seed therefore
produce byte-identical CSV regardless of the worker count.

CEQNR (channel-error-to-quantization-noise ratio) is
10 log10(sigma_e^2 / sigma_q^2) where sigma_q^2 = step^2 / 12 of the
reference quantizer; a value of -inf requests sigma_e = 0 (perfect
correlation).
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass

import numpy as np

from .codes import CodeSpec, DftCode, build_code
from .pgz import ErrorEstimate
from .quantize import QuantizerSpec
from .sources import ChannelSpec, SourceSpec, apply_channel, gauss_markov
from .wyner_ziv import (
    DEFAULT_PARITY_RANGE,
    DEFAULT_SYNDROME_RANGE,
    parity_decode,
    parity_encode,
    syndrome_decode,
    syndrome_encode,
)

__all__ = [
    "TrialRecord",
    "SweepConfig",
    "SweepPoint",
    "SweepResult",
    "run_trial",
    "sweep",
    "write_csv",
    "read_csv",
    "CSV_COLUMNS",
    "BLOCK_FRAMES",
]

APPROACHES = ("syndrome", "parity")
_APPROACH_ID = {"syndrome": 0, "parity": 1}

# Frames per work unit. Part of the byte-determinism contract: partial
# sums are accumulated within a block and blocks are reduced in order,
# so results are independent of how blocks land on workers.
BLOCK_FRAMES = 2048

CSV_COLUMNS = (
    "ceqnr_db",
    "mse_syndrome",
    "mse_parity",
    "sigma_q_sq",
    "loc_freq_syndrome",
    "loc_freq_parity",
    "zero_error_frac",
    "overload_rate",
    "frames",
)


@dataclass(frozen=True)
class TrialRecord:
    """Outcome of one encode/corrupt/decode round trip."""

    approach: str
    frame_mse: float
    localization_correct: bool
    zero_error: bool
    overloads: int
    tx_samples: int
    peak: float
    estimate: ErrorEstimate


@dataclass(frozen=True)
class SweepConfig:
    """Full experiment description; every knob the CLI exposes lives here."""

    n: int = 7
    k: int = 5
    approaches: tuple[str, ...] = ("syndrome", "parity")
    bits: int = 6
    ref_range: tuple[float, float] = (-4.0, 4.0)
    syndrome_range: tuple[float, float] = DEFAULT_SYNDROME_RANGE
    parity_range: tuple[float, float] = DEFAULT_PARITY_RANGE
    ceqnr_db: tuple[float, ...] = (-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0)
    frames: int = 20000
    errors_per_frame: int = 1
    seed: int = 1
    rho: float = 0.9
    reconstruction: str = "projection"
    magnitude_method: str = "ls"
    workers: int = 1

    def __post_init__(self) -> None:
        if not self.approaches or any(a not in APPROACHES for a in self.approaches):
            raise ValueError(f"approaches must be a nonempty subset of {APPROACHES}")
        if len(set(self.approaches)) != len(self.approaches):
            raise ValueError("duplicate approach")
        if not self.ceqnr_db:
            raise ValueError("CEQNR grid must be nonempty")
        if self.frames < 1:
            raise ValueError(f"frames must be >= 1, got {self.frames}")
        if self.seed < 0:
            raise ValueError(f"seed must be nonnegative, got {self.seed}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.reconstruction not in ("projection", "subtract"):
            raise ValueError(f"unknown reconstruction {self.reconstruction!r}")
        if self.magnitude_method not in ("ls", "exact"):
            raise ValueError(f"unknown magnitude method {self.magnitude_method!r}")
        t = (self.n - self.k) // 2
        if self.errors_per_frame > t:
            raise ValueError(
                f"errors_per_frame = {self.errors_per_frame} exceeds t = {t} "
                f"of the ({self.n}, {self.k}) code"
            )
        CodeSpec(self.n, self.k)  # validates n, k (odd, n > k)

    @property
    def reference_quantizer(self) -> QuantizerSpec:
        return QuantizerSpec(self.bits, *self.ref_range)

    def sigma_e(self, ceqnr_db: float) -> float:
        return float(np.sqrt(self.reference_quantizer.sigma_q_sq * 10.0 ** (ceqnr_db / 10.0)))


@dataclass(frozen=True)
class SweepPoint:
    """One CSV row: aggregated metrics at a single CEQNR value."""

    ceqnr_db: float
    mse_syndrome: float
    mse_parity: float
    sigma_q_sq: float
    loc_freq_syndrome: float
    loc_freq_parity: float
    zero_error_frac: float
    overload_rate: float
    frames: int


@dataclass(frozen=True)
class SweepResult:
    points: tuple[SweepPoint, ...]


def run_trial(
    code: DftCode,
    approach: str,
    quantizer: QuantizerSpec,
    ch: ChannelSpec,
    rng: np.random.Generator,
    *,
    source: SourceSpec = SourceSpec(),
    reconstruction: str = "projection",
    magnitude_method: str = "ls",
) -> TrialRecord:
    """One frame end to end: draw source, corrupt, encode, decode, score.

    ``quantizer`` quantizes the transmitted samples of the chosen
    approach. Localization is scored as exact set equality against the
    ground-truth error positions; zero_error means the reconstruction is
    bitwise equal to the source frame.
    """
    if approach == "syndrome":
        x = gauss_markov(source, code.n, rng)
        y, true_locs, _ = apply_channel(x, ch, rng)
        msg = syndrome_encode(code, x, quantizer)
        result = syndrome_decode(
            code, msg, y,
            reconstruction=reconstruction, magnitude_method=magnitude_method,
        )
        peak = 0.0
    elif approach == "parity":
        x = gauss_markov(source, code.k, rng)
        y, true_locs, _ = apply_channel(x, ch, rng)
        msg = parity_encode(code, x, quantizer)
        result = parity_decode(code, msg, y, magnitude_method=magnitude_method)
        peak = msg.peak
    else:
        raise ValueError(f"unknown approach {approach!r}")
    result.localization_correct = set(result.error_estimate.locations) == set(true_locs)
    diff = result.x_hat - x
    return TrialRecord(
        approach=approach,
        frame_mse=float(np.mean(diff * diff)),
        localization_correct=result.localization_correct,
        zero_error=bool(np.array_equal(result.x_hat, x)),
        overloads=msg.overloads,
        tx_samples=msg.bits_used // quantizer.bits,
        peak=peak,
        estimate=result.error_estimate,
    )


# ---------------------------------------------------------------------------
# Block execution. A module-level context keeps the constructed code and
# quantizers alive per worker process; tasks reference it by field name.

_CTX: dict = {}


def _init_worker(cfg: SweepConfig) -> None:
    tx_quant = {
        "syndrome": QuantizerSpec(cfg.bits, *cfg.syndrome_range),
        "parity": QuantizerSpec(cfg.bits, *cfg.parity_range),
    }
    _CTX.clear()
    _CTX.update(
        cfg=cfg,
        code=build_code(cfg.n, cfg.k),
        tx_quant=tx_quant,
        source=SourceSpec(cfg.rho),
    )


def _run_block(task: tuple[int, float, str, int, int]) -> tuple[float, int, int, int, int]:
    """Partial sums over one block of frames: (mse_sum, loc, zero, ovl, tx)."""
    ci, ceqnr_db, approach, start, count = task
    cfg: SweepConfig = _CTX["cfg"]
    ch = ChannelSpec(cfg.errors_per_frame, cfg.sigma_e(ceqnr_db))
    quantizer = _CTX["tx_quant"][approach]
    approach_id = _APPROACH_ID[approach]
    mse_sum = 0.0
    loc = zero = ovl = tx = 0
    for frame in range(start, start + count):
        rng = np.random.default_rng((cfg.seed, ci, frame, approach_id))
        rec = run_trial(
            _CTX["code"], approach, quantizer, ch, rng,
            source=_CTX["source"],
            reconstruction=cfg.reconstruction,
            magnitude_method=cfg.magnitude_method,
        )
        mse_sum += rec.frame_mse
        loc += rec.localization_correct
        zero += rec.zero_error
        ovl += rec.overloads
        tx += rec.tx_samples
    return mse_sum, loc, zero, ovl, tx


def _make_tasks(cfg: SweepConfig) -> list[tuple[int, float, str, int, int]]:
    tasks = []
    for ci, db in enumerate(cfg.ceqnr_db):
        for approach in cfg.approaches:
            for start in range(0, cfg.frames, BLOCK_FRAMES):
                count = min(BLOCK_FRAMES, cfg.frames - start)
                tasks.append((ci, float(db), approach, start, count))
    return tasks


def sweep(config: SweepConfig) -> SweepResult:
    """Run the full experiment grid and aggregate one SweepPoint per CEQNR.

    zero_error_frac and overload_rate pool over every approach that ran
    (the CSV has one column each); per-approach values are obtained by
    sweeping a single approach. Reduction order is fixed by the task
    list, never by worker scheduling.
    """
    tasks = _make_tasks(config)
    if config.workers > 1:
        with multiprocessing.Pool(
            processes=config.workers, initializer=_init_worker, initargs=(config,)
        ) as pool:
            partials = list(pool.imap(_run_block, tasks, chunksize=1))
    else:
        _init_worker(config)
        partials = [_run_block(t) for t in tasks]

    acc: dict[tuple[int, str], list[float]] = {}
    for task, part in zip(tasks, partials):
        ci, _db, approach, _start, _count = task
        slot = acc.setdefault((ci, approach), [0.0, 0, 0, 0, 0])
        for i, v in enumerate(part):
            slot[i] += v

    points = []
    sigma_q_sq = config.reference_quantizer.sigma_q_sq
    for ci, db in enumerate(config.ceqnr_db):
        mse = {"syndrome": float("nan"), "parity": float("nan")}
        loc = {"syndrome": float("nan"), "parity": float("nan")}
        zero_total = ovl_total = tx_total = 0
        for approach in config.approaches:
            mse_sum, loc_cnt, zero_cnt, ovl_cnt, tx_cnt = acc[(ci, approach)]
            mse[approach] = mse_sum / config.frames
            loc[approach] = loc_cnt / config.frames
            zero_total += zero_cnt
            ovl_total += ovl_cnt
            tx_total += tx_cnt
        points.append(
            SweepPoint(
                ceqnr_db=float(db),
                mse_syndrome=mse["syndrome"],
                mse_parity=mse["parity"],
                sigma_q_sq=sigma_q_sq,
                loc_freq_syndrome=loc["syndrome"],
                loc_freq_parity=loc["parity"],
                zero_error_frac=zero_total / (config.frames * len(config.approaches)),
                overload_rate=ovl_total / tx_total if tx_total else 0.0,
                frames=config.frames,
            )
        )
    return SweepResult(points=tuple(points))


def _fmt(value: float) -> str:
    return f"{value:.9g}"


def write_csv(result: SweepResult, path: str) -> None:
    """One header plus one row per CEQNR point; floats carry 9 significant
    digits, which round-trips every metric the suite compares."""
    try:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(",".join(CSV_COLUMNS) + "\n")
            for p in result.points:
                row = [
                    _fmt(p.ceqnr_db),
                    _fmt(p.mse_syndrome),
                    _fmt(p.mse_parity),
                    _fmt(p.sigma_q_sq),
                    _fmt(p.loc_freq_syndrome),
                    _fmt(p.loc_freq_parity),
                    _fmt(p.zero_error_frac),
                    _fmt(p.overload_rate),
                    str(p.frames),
                ]
                fh.write(",".join(row) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write sweep CSV to {path!r}: {exc}") from exc


def read_csv(path: str) -> SweepResult:
    """Inverse of write_csv (up to serialization precision)."""
    try:
        with open(path, "r", encoding="ascii") as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    except OSError as exc:
        raise OSError(f"cannot read sweep CSV from {path!r}: {exc}") from exc
    if not lines or tuple(lines[0].split(",")) != CSV_COLUMNS:
        raise ValueError(f"{path!r} does not carry the expected sweep header")
    points = []
    for ln in lines[1:]:
        cells = ln.split(",")
        if len(cells) != len(CSV_COLUMNS):
            raise ValueError(f"malformed sweep row: {ln!r}")
        points.append(
            SweepPoint(
                ceqnr_db=float(cells[0]),
                mse_syndrome=float(cells[1]),
                mse_parity=float(cells[2]),
                sigma_q_sq=float(cells[3]),
                loc_freq_syndrome=float(cells[4]),
                loc_freq_parity=float(cells[5]),
                zero_error_frac=float(cells[6]),
                overload_rate=float(cells[7]),
                frames=int(cells[8]),
            )
        )
    return SweepResult(points=tuple(points))
