"""Seeded Haar sampling and Monte-Carlo statistics of normalized negativity."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channels import ChannelSpec, apply_local
from .entanglement import NORMALIZED_FLOOR, Bipartition, CutPolicy, enumerate_cuts, negativity
from .errors import DomainError, NumericalError
from .qstate import GhzSpec, PureState, check_num_qubits, density_from_pure, make_generalized_ghz

DEFAULT_BINS = 50
MAX_FAILURE_FRACTION = 0.01


def sample_rng(seed: int, index: int) -> np.random.Generator:
    """Independent Philox stream for sample ``index`` of a run seeded with ``seed``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(index),))
    return np.random.Generator(np.random.Philox(ss))


def haar_random_pure(num_qubits: int, rng: np.random.Generator) -> PureState:
    """Haar-uniform pure state from a normalized complex Gaussian vector."""
    d = 2 ** check_num_qubits(num_qubits)
    re = rng.standard_normal(d)
    im = rng.standard_normal(d)
    return PureState.normalized(num_qubits, re + 1j * im)


@dataclass(frozen=True)
class Histogram:
    edges: np.ndarray
    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def histogram(values, num_bins: int = DEFAULT_BINS, range_max: float | None = None) -> Histogram:
    """Equal-width bins on ``[0, range_max]``.

    A value on an interior edge goes to the bin above it; ``range_max`` itself
    goes to the last bin. Values outside the range are not counted. Without
    ``range_max`` the range is ``1.05 * max(values)`` (or 1 if that is 0).
    """
    if num_bins < 1:
        raise DomainError(f"need at least one bin, got {num_bins}")
    vals = np.asarray(values, dtype=float).ravel()
    if range_max is None:
        top = float(vals.max()) if vals.size else 0.0
        range_max = 1.05 * top if top > 0 else 1.0
    if not range_max > 0:
        raise DomainError(f"histogram range must be positive, got {range_max}")
    edges = np.linspace(0.0, range_max, num_bins + 1)
    counts = np.zeros(num_bins, dtype=np.int64)
    inside = vals[(vals >= 0.0) & (vals <= range_max)]
    idx = np.searchsorted(edges, inside, side="right") - 1
    idx = np.minimum(idx, num_bins - 1)
    np.add.at(counts, idx, 1)
    return Histogram(edges, counts)


@dataclass(frozen=True)
class SampleConfig:
    num_qubits: int
    sample_size: int
    channel: ChannelSpec
    p_grid: tuple
    cut_policy: CutPolicy = CutPolicy.MOST_BALANCED
    seed: int = 0
    normalized_floor: float = NORMALIZED_FLOOR
    initial_state: GhzSpec | None = None
    num_bins: int = DEFAULT_BINS
    threads: int = 1
    backend: str = "lapack"

    def __post_init__(self):
        check_num_qubits(self.num_qubits)
        if self.num_qubits < 2:
            raise DomainError("sampling needs at least 2 qubits")
        if self.sample_size < 1:
            raise DomainError(f"sample_size must be at least 1, got {self.sample_size}")
        grid = tuple(float(p) for p in self.p_grid)
        if not grid:
            raise DomainError("p_grid is empty")
        if any(not 0.0 <= p <= 1.0 for p in grid):
            raise DomainError(f"p_grid values must lie in [0, 1]: {grid}")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise DomainError("p_grid must be strictly increasing")
        if self.initial_state is not None and self.initial_state.num_qubits != self.num_qubits:
            raise DomainError("initial_state size does not match num_qubits")
        if not 0 <= int(self.seed) < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.threads < 1:
            raise DomainError(f"threads must be at least 1, got {self.threads}")
        object.__setattr__(self, "p_grid", grid)
        object.__setattr__(self, "cut_policy", CutPolicy(self.cut_policy))

    @property
    def cuts(self) -> list[Bipartition]:
        return enumerate_cuts(self.num_qubits, self.cut_policy)


@dataclass
class StatRow:
    p: float
    cut: Bipartition
    mean: float
    std: float
    sem: float
    min: float
    max: float
    count: int
    histogram: Histogram


@dataclass
class SampleStats:
    config: SampleConfig
    rows: list[StatRow]
    excluded: dict = field(default_factory=dict)  # cut label -> samples below the floor
    failed: int = 0

    def row(self, p: float, cut: Bipartition | None = None) -> StatRow:
        for r in self.rows:
            if r.p == p and (cut is None or r.cut == cut):
                return r
        raise KeyError((p, cut))

    def excluded_count(self, cut: Bipartition) -> int:
        return self.excluded[cut.label]


def _evolve_sample(config: SampleConfig, cuts, channels, index):
    """Normalized negativities of one sample, shape ``(len(p_grid), len(cuts))``.

    Cuts whose initial negativity is below the floor are NaN. Returns
    ``None`` if the eigensolver fails on this sample.
    """
    if config.initial_state is not None:
        psi = make_generalized_ghz(config.initial_state)
    else:
        psi = haar_random_pure(config.num_qubits, sample_rng(config.seed, index))
    rho0 = density_from_pure(psi)
    out = np.full((len(config.p_grid), len(cuts)), np.nan)
    try:
        initial = [negativity(rho0, cut, config.backend).value for cut in cuts]
        live = [j for j, v in enumerate(initial) if v > config.normalized_floor]
        for i, (p, ch) in enumerate(zip(config.p_grid, channels)):
            if not live:
                break
            if p == 0.0:
                out[i, live] = 1.0
                continue
            rho = apply_local(rho0, ch)
            for j in live:
                out[i, j] = negativity(rho, cuts[j], config.backend).value / initial[j]
    except NumericalError:
        return None
    return out


def run_sample(config: SampleConfig) -> SampleStats:
    """Evolve ``sample_size`` initial states over the p grid and aggregate.

    Work is split over ``config.threads`` workers. Each sample draws from its
    own seeded stream and the reduction runs in sample order, so the result
    does not depend on the worker count.
    """
    cuts = config.cuts
    channels = [config.channel.at(p) for p in config.p_grid]

    def work(index):
        return _evolve_sample(config, cuts, channels, index)

    indices = range(config.sample_size)
    if config.threads == 1:
        results = [work(i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            results = list(pool.map(work, indices))

    failed = sum(r is None for r in results)
    if failed > MAX_FAILURE_FRACTION * config.sample_size:
        raise NumericalError(f"eigensolver failed on {failed} of {config.sample_size} samples")
    good = [r for r in results if r is not None]
    data = np.stack(good) if good else np.full((0, len(config.p_grid), len(cuts)), np.nan)

    rows = []
    excluded = {}
    for j, cut in enumerate(cuts):
        col = data[:, :, j] if data.size else np.empty((0, len(config.p_grid)))
        keep = ~np.isnan(col[:, 0]) if col.shape[0] else np.zeros(0, dtype=bool)
        excluded[cut.label] = int(col.shape[0] - keep.sum())
        for i, p in enumerate(config.p_grid):
            vals = col[keep, i]
            count = int(vals.size)
            if count:
                lo, hi = float(vals.min()), float(vals.max())
                mean = min(hi, max(lo, float(np.mean(vals))))
                std = float(np.std(vals, ddof=1)) if count > 1 else 0.0
            else:
                mean = std = lo = hi = math.nan
            sem = std / math.sqrt(count) if count else math.nan
            rows.append(StatRow(p, cut, mean, std, sem, lo, hi, count, histogram(vals, config.num_bins)))
    return SampleStats(config, rows, excluded, failed)
