"""Experiment configuration, orchestration and CSV output."""

from __future__ import annotations

import enum
import json
import math
import os
import re
from dataclasses import dataclass, field

import numpy as np

from . import __version__, bounds, qstate
from .channels import ChannelSpec, Family, apply_local
from .entanglement import (
    NORMALIZED_FLOOR,
    CutPolicy,
    enumerate_cuts,
    max_negativity,
    negativity,
)
from .errors import ConfigError, DomainError, GhzDecayError, ResourceError
from .qstate import GhzSpec, check_num_qubits, density_from_pure, load_state, make_generalized_ghz
from .sampling import DEFAULT_BINS, SampleConfig, SampleStats, run_sample

DEFAULT_P_GRID = tuple(round(0.05 * i, 10) for i in range(21))
DEFAULT_SCHEDULE = {n: 2000 for n in range(2, 8)} | {8: 500, 9: 500, 10: 100}
PAPER_SCHEDULE = (
    {n: 10000 for n in range(2, 8)} | {8: 5000, 9: 5000, 10: 5000} | {11: 1560, 12: 100, 13: 10, 14: 1}
)
FIG3_P = 0.3


class Kind(str, enum.Enum):
    BOUND = "bound"
    EVOLVE = "evolve"
    SAMPLE = "sample"
    FIG1 = "fig1"
    FIG2 = "fig2"
    FIG3 = "fig3"


_DEFAULT_N = {
    Kind.BOUND: tuple(range(2, 11)),
    Kind.SAMPLE: (4,),
    Kind.FIG1: (2, 3, 4, 5, 6),
    Kind.FIG2: (2, 3, 4, 5, 6),
    Kind.FIG3: tuple(range(2, 11)),
}
_DEFAULT_CHANNEL = {
    Kind.FIG1: Family.DEPOLARIZING,
    Kind.FIG2: Family.DEPOLARIZING,
    Kind.FIG3: Family.DEPHASING,
}
_DEFAULT_CUT = {
    Kind.FIG1: CutPolicy.MOST_BALANCED,
    Kind.FIG2: CutPolicy.LEAST_BALANCED,
    Kind.FIG3: CutPolicy.LEAST_BALANCED,
}

_KEYS = {
    "kind", "N", "p_grid", "p", "channel", "cut_policy", "seed", "schedule", "sample_size",
    "initial_state", "state_file", "families", "normalized_floor", "bins", "threads", "out",
    "max_qubits", "backend",
}
_STATE_KEYS = {"k", "parity", "alpha", "beta"}


@dataclass(frozen=True)
class ExperimentSpec:
    kind: Kind
    num_qubits: tuple
    p_grid: tuple
    channel: ChannelSpec
    cut_policy: CutPolicy
    seed: int = 0
    schedule: object = "default"
    sample_size: int | None = None
    initial_state: GhzSpec | None = None
    state_file: str | None = None
    families: tuple = ()
    normalized_floor: float = NORMALIZED_FLOOR
    bins: int = DEFAULT_BINS
    threads: int = 1
    out: str = "out"
    max_qubits: int = qstate.MAX_QUBITS
    backend: str = "lapack"

    def samples_for(self, n: int) -> int:
        if self.sample_size is not None:
            return self.sample_size
        table = {"default": DEFAULT_SCHEDULE, "paper": PAPER_SCHEDULE}.get(self.schedule, self.schedule)
        if n not in table:
            raise ConfigError(f"sample schedule has no entry for N={n}", key="schedule")
        return int(table[n])

    def to_dict(self) -> dict:
        """Fully resolved config; ``parse_config_dict`` of it gives back an equal spec."""
        out = {
            "kind": self.kind.value,
            "N": list(self.num_qubits),
            "p_grid": list(self.p_grid),
            "channel": self.channel.to_dict(),
            "cut_policy": self.cut_policy.value,
            "seed": self.seed,
            "schedule": self.schedule if isinstance(self.schedule, str)
            else {str(k): v for k, v in sorted(self.schedule.items())},
            "normalized_floor": self.normalized_floor,
            "bins": self.bins,
            "threads": self.threads,
            "out": self.out,
            "max_qubits": self.max_qubits,
            "backend": self.backend,
        }
        if self.sample_size is not None:
            out["sample_size"] = self.sample_size
        if self.initial_state is not None:
            g = self.initial_state
            out["initial_state"] = {
                "k": g.label_k,
                "parity": g.parity,
                "alpha": [g.alpha.real, g.alpha.imag],
                "beta": [g.beta.real, g.beta.imag],
            }
        if self.state_file is not None:
            out["state_file"] = self.state_file
        if self.families:
            out["families"] = [f.value for f in self.families]
        return out

    def echo(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


# -- config parsing --------------------------------------------------------

def _line_of(text: str | None, path: str) -> int | None:
    if not text:
        return None
    pos = 0
    for part in path.split("."):
        m = re.compile(r'"%s"\s*:' % re.escape(part)).search(text, pos)
        if m is None:
            return None
        pos = m.start()
    return text.count("\n", 0, pos) + 1


def _complex(value, key):
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    raise DomainError(f"{key} must be a number or a [re, im] pair")


def _int(value, key):
    if isinstance(value, bool) or not isinstance(value, int):
        raise DomainError(f"{key} must be an integer, got {value!r}")
    return value


def parse_config_dict(obj: dict, text: str | None = None, kind: str | None = None) -> ExperimentSpec:
    """Validate a config mapping and fill defaults.

    ``text`` is the raw file content, used only to report line numbers.
    ``kind`` (from the CLI subcommand) supplies or must match ``obj["kind"]``.
    """
    if not isinstance(obj, dict):
        raise ConfigError("config must be a JSON object", line=1)
    key = None

    def fail(message, k):
        raise ConfigError(message, key=k, line=_line_of(text, k))

    for k in obj:
        if k not in _KEYS:
            fail("unknown config key", k)
    try:
        key = "kind"
        if "kind" in obj:
            spec_kind = Kind(obj["kind"])
            if kind is not None and Kind(kind) is not spec_kind:
                fail(f"config is for '{spec_kind.value}' but '{kind}' was requested", key)
        elif kind is not None:
            spec_kind = Kind(kind)
        else:
            raise ConfigError("'kind' is required", key="kind")

        key = "max_qubits"
        cap = _int(obj.get("max_qubits", qstate.MAX_QUBITS), key)
        if cap < 1:
            raise DomainError("max_qubits must be positive")

        key = "initial_state"
        initial = None
        state_file = None
        if "initial_state" in obj and "state_file" in obj:
            raise DomainError("give either initial_state or state_file, not both")
        if "initial_state" in obj:
            st = obj["initial_state"]
            if not isinstance(st, dict):
                raise DomainError("initial_state must be an object")
            for k in st:
                if k not in _STATE_KEYS:
                    fail("unknown initial_state key", f"initial_state.{k}")
        key = "state_file"
        if "state_file" in obj:
            state_file = str(obj["state_file"])

        key = "N"
        if "N" in obj:
            raw = obj["N"]
            ns = tuple(_int(n, key) for n in (raw if isinstance(raw, list) else [raw]))
        elif spec_kind is Kind.EVOLVE and state_file is None:
            raise DomainError("evolve needs N (optionally with initial_state) or a state_file")
        else:
            ns = _DEFAULT_N.get(spec_kind, ())
        if not ns and state_file is None:
            raise DomainError("N is required")
        if any(n < 1 for n in ns):
            raise DomainError(f"N must be positive: {ns}")
        if spec_kind in (Kind.SAMPLE, Kind.FIG1, Kind.FIG2, Kind.FIG3, Kind.EVOLVE) and any(n < 2 for n in ns):
            raise DomainError("entanglement experiments need N >= 2")
        if spec_kind in (Kind.SAMPLE, Kind.EVOLVE) and len(ns) > 1:
            raise DomainError(f"{spec_kind.value} takes a single N")
        for n in ns:
            if n > cap:
                need = qstate.required_bytes(n)
                raise ResourceError(
                    f"N={n} exceeds max_qubits={cap}; dense evolution needs about "
                    f"{need / 2**30:.2f} GiB ({need} bytes)"
                )

        if "initial_state" in obj:
            key = "initial_state"
            st = obj["initial_state"]
            if len(ns) != 1:
                raise DomainError("initial_state needs a single N")
            initial = GhzSpec(
                ns[0],
                _int(st.get("k", 0), "initial_state.k"),
                _int(st.get("parity", 1), "initial_state.parity"),
                _complex(st.get("alpha", 1 / math.sqrt(2)), "initial_state.alpha"),
                _complex(st.get("beta", 1 / math.sqrt(2)), "initial_state.beta"),
            )

        if spec_kind is Kind.EVOLVE and initial is None and state_file is None:
            if len(ns) != 1:
                raise DomainError("evolve takes a single N")
            initial = GhzSpec.balanced(ns[0])

        key = "p_grid"
        if "p_grid" in obj and "p" in obj:
            raise DomainError("give either p or p_grid, not both")
        if "p" in obj:
            key = "p"
            p = float(obj["p"])
            if not 0.0 <= p <= 1.0:
                raise DomainError(f"p must lie in [0, 1], got {p}")
            grid = (p,)
        elif "p_grid" in obj:
            grid = tuple(float(x) for x in obj["p_grid"])
            if not grid or any(not 0.0 <= x <= 1.0 for x in grid):
                raise DomainError("p_grid values must lie in [0, 1]")
            if any(b <= a for a, b in zip(grid, grid[1:])):
                raise DomainError("p_grid must be strictly increasing")
        elif spec_kind is Kind.FIG3:
            grid = (FIG3_P,)
        else:
            grid = DEFAULT_P_GRID
        if spec_kind is Kind.FIG3 and len(grid) != 1:
            key = "p_grid"
            raise DomainError("fig3 evaluates a single p")

        key = "channel"
        if "channel" in obj:
            ch = obj["channel"]
            if not isinstance(ch, dict):
                raise DomainError("channel must be an object")
            for k in ch:
                if k not in {"family", "p", "nbar", "diffusive"}:
                    fail("unknown channel key", f"channel.{k}")
            if "p" in ch:
                key = "channel.p"
                p = float(ch["p"])
                if not 0.0 <= p <= 1.0:
                    raise DomainError(f"p must lie in [0, 1], got {p}")
                if "p" in obj or "p_grid" in obj:
                    raise DomainError("channel.p conflicts with p/p_grid")
                grid = (p,)
                key = "channel"
            channel = ChannelSpec.from_dict({k: v for k, v in ch.items() if k != "p"})
        else:
            channel = ChannelSpec(_DEFAULT_CHANNEL.get(spec_kind, Family.DEPOLARIZING))
        required = _DEFAULT_CHANNEL.get(spec_kind)
        if required is not None and channel.family is not required:
            raise DomainError(f"{spec_kind.value} is defined for the {required.value} channel")

        key = "cut_policy"
        cut_policy = CutPolicy(obj.get("cut_policy", _DEFAULT_CUT.get(spec_kind, CutPolicy.MOST_BALANCED)))
        if spec_kind in _DEFAULT_CUT and cut_policy is not _DEFAULT_CUT[spec_kind]:
            raise DomainError(f"{spec_kind.value} uses the {_DEFAULT_CUT[spec_kind].value} cut")

        key = "seed"
        seed = _int(obj.get("seed", 0), key)
        if not 0 <= seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")

        key = "schedule"
        schedule = obj.get("schedule", "default")
        if isinstance(schedule, dict):
            schedule = {int(k): _int(v, key) for k, v in schedule.items()}
            if any(v < 1 for v in schedule.values()):
                raise DomainError("schedule sizes must be positive")
        elif schedule not in ("default", "paper"):
            raise DomainError("schedule must be 'default', 'paper' or an {N: size} map")

        key = "sample_size"
        sample_size = obj.get("sample_size")
        if sample_size is not None:
            sample_size = _int(sample_size, key)
            if sample_size < 1:
                raise DomainError("sample_size must be positive")

        key = "families"
        families = tuple(bounds.BoundFamily(f) for f in obj.get("families", ()))

        key = "normalized_floor"
        floor = float(obj.get("normalized_floor", NORMALIZED_FLOOR))
        if not floor >= 0:
            raise DomainError("normalized_floor must be non-negative")
        key = "bins"
        bins = _int(obj.get("bins", DEFAULT_BINS), key)
        if bins < 1:
            raise DomainError("bins must be positive")
        key = "threads"
        threads = _int(obj.get("threads", 1), key)
        if threads < 1:
            raise DomainError("threads must be positive")
        key = "out"
        out = str(obj.get("out", "out"))
        key = "backend"
        backend = obj.get("backend", "lapack")
        if backend not in ("lapack", "ql"):
            raise DomainError(f"unknown backend {backend!r}")
    except ConfigError:
        raise
    except ResourceError:
        raise
    except (DomainError, ValueError, TypeError) as exc:
        raise ConfigError(str(exc), key=key, line=_line_of(text, key)) from None

    return ExperimentSpec(
        kind=spec_kind, num_qubits=ns, p_grid=grid, channel=channel, cut_policy=cut_policy,
        seed=seed, schedule=schedule, sample_size=sample_size, initial_state=initial,
        state_file=state_file, families=families, normalized_floor=floor, bins=bins,
        threads=threads, out=out, max_qubits=cap, backend=backend,
    )


def parse_config(path, kind: str | None = None, overrides: dict | None = None) -> ExperimentSpec:
    """Read a JSON config file. ``overrides`` (e.g. CLI flags) replace file keys."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    if text.strip():
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed JSON: {exc.msg}", line=exc.lineno) from None
    else:
        obj = {}
    if overrides:
        obj = {**obj, **overrides} if isinstance(obj, dict) else obj
    return parse_config_dict(obj, text, kind)


# -- tables ----------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.17g}"
    return str(x)


@dataclass
class Table:
    name: str
    columns: tuple
    rows: list = field(default_factory=list)
    summary: dict | None = None  # written alongside as <name>.json

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [r[i] for r in self.rows]

    def data_lines(self) -> list[str]:
        return [",".join(self.columns)] + [",".join(_fmt(v) for v in r) for r in self.rows]

    def to_csv(self, spec: ExperimentSpec) -> str:
        meta = [
            f"# ghz-decay {__version__}",
            f"# table: {self.name}",
            f"# seed: {spec.seed}",
            f"# config: {spec.echo()}",
        ]
        return "\n".join(meta + self.data_lines()) + "\n"


def data_rows(csv_text: str) -> list[str]:
    """Non-metadata lines of a CSV written by :meth:`Table.to_csv`."""
    return [ln for ln in csv_text.splitlines() if not ln.startswith("#")]


def write_tables(tables, spec: ExperimentSpec, out_dir=None) -> list[str]:
    out_dir = out_dir or spec.out
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory: {exc}", key="out") from None
    paths = []
    for t in tables:
        path = os.path.join(out_dir, f"{t.name}.csv")
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(t.to_csv(spec))
        paths.append(path)
        if t.summary is not None:
            path = os.path.join(out_dir, f"{t.name}.json")
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(t.summary, fh, indent=1, sort_keys=True)
            paths.append(path)
    return paths


# -- experiments -----------------------------------------------------------

def _sample_config(spec: ExperimentSpec, n: int, initial=None, sample_size=None) -> SampleConfig:
    return SampleConfig(
        num_qubits=n,
        sample_size=sample_size or spec.samples_for(n),
        channel=spec.channel,
        p_grid=spec.p_grid,
        cut_policy=spec.cut_policy,
        seed=spec.seed,
        normalized_floor=spec.normalized_floor,
        initial_state=initial,
        num_bins=spec.bins,
        threads=spec.threads,
        backend=spec.backend,
    )


def _relative_bound(family: Family, n: int, p: float) -> float:
    if family is Family.DEPOLARIZING:
        return bounds.bound_depolarizing(n, p)
    if family is Family.DEPHASING:
        return bounds.bound_dephasing(n, p)
    raise DomainError(f"no relative bound for the {family.value} channel")


def _figure_tables(spec: ExperimentSpec, prefix: str) -> list[Table]:
    tables = []
    for n in spec.num_qubits:
        check_num_qubits(n)
        cut = enumerate_cuts(n, spec.cut_policy)[0]
        stats = run_sample(_sample_config(spec, n))
        ghz = run_sample(_sample_config(spec, n, GhzSpec.balanced(n), sample_size=1))
        curve = Table(f"{prefix}_N{n}", (
            "p", "bound", "ghz", "sample_mean", "sample_std", "sample_sem",
            "sample_min", "sample_max", "count", "excluded",
        ))
        hist = Table(f"{prefix}_N{n}_hist", ("p", "bin_lo", "bin_hi", "count"))
        for p in spec.p_grid:
            row = stats.row(p, cut)
            curve.rows.append((
                p, _relative_bound(spec.channel.family, n, p), ghz.row(p, cut).mean,
                row.mean, row.std, row.sem, row.min, row.max, row.count, stats.excluded_count(cut),
            ))
            edges, counts = row.histogram.edges, row.histogram.counts
            for b in range(len(counts)):
                hist.rows.append((p, edges[b], edges[b + 1], counts[b]))
        tables += [curve, hist]
    return tables


def run_fig1(spec: ExperimentSpec) -> list[Table]:
    """Depolarizing, most-balanced cut: bound, balanced-GHZ curve and Haar statistics per N."""
    return _figure_tables(spec, "fig1")


def run_fig2(spec: ExperimentSpec) -> list[Table]:
    return _figure_tables(spec, "fig2")


def run_fig3(spec: ExperimentSpec) -> list[Table]:
    """Dephasing at a single p, least-balanced cut: mean normalized negativity versus N."""
    (p,) = spec.p_grid
    table = Table("fig3", ("N", "p", "sample_size", "mean", "std", "sem", "min", "max",
                           "count", "excluded", "bound"))
    for n in spec.num_qubits:
        check_num_qubits(n)
        cut = enumerate_cuts(n, spec.cut_policy)[0]
        stats = run_sample(_sample_config(spec, n))
        row = stats.row(p, cut)
        table.rows.append((n, p, spec.samples_for(n), row.mean, row.std, row.sem, row.min, row.max,
                           row.count, stats.excluded_count(cut), bounds.bound_dephasing(n, p)))
    return [table]


def run_sample_experiment(spec: ExperimentSpec) -> list[Table]:
    """Long-format statistics, one row per ``(p, cut, statistic)``."""
    (n,) = spec.num_qubits
    stats = run_sample(_sample_config(spec, n, spec.initial_state))
    table = stats_table(stats, f"sample_N{n}")
    table.summary = stats_summary(stats, spec)
    return [table]


def stats_table(stats: SampleStats, name: str) -> Table:
    table = Table(name, ("p", "cut", "statistic", "value"))
    for r in stats.rows:
        for stat in ("mean", "std", "sem", "min", "max", "count"):
            table.rows.append((r.p, r.cut.label, stat, getattr(r, stat)))
        table.rows.append((r.p, r.cut.label, "excluded", stats.excluded[r.cut.label]))
        table.rows.append((r.p, r.cut.label, "failed", stats.failed))
    return table


def stats_summary(stats: SampleStats, spec: ExperimentSpec | None = None) -> dict:
    """JSON-ready summary with config echo, seed and histograms."""
    cfg = stats.config
    return {
        "version": __version__,
        "seed": cfg.seed,
        "config": spec.to_dict() if spec is not None else None,
        "num_qubits": cfg.num_qubits,
        "sample_size": cfg.sample_size,
        "failed": stats.failed,
        "excluded": stats.excluded,
        "rows": [
            {
                "p": r.p, "cut": r.cut.label, "mean": r.mean, "std": r.std, "sem": r.sem,
                "min": r.min, "max": r.max, "count": r.count,
                "histogram": {"edges": r.histogram.edges.tolist(), "counts": r.histogram.counts.tolist()},
            }
            for r in stats.rows
        ],
    }


def _evolve_initial(spec: ExperimentSpec):
    if spec.state_file is not None:
        return load_state(spec.state_file), None
    if spec.initial_state is None:
        raise ConfigError("evolve needs initial_state or state_file", key="initial_state")
    return density_from_pure(make_generalized_ghz(spec.initial_state)), spec.initial_state


def run_evolve(spec: ExperimentSpec) -> list[Table]:
    """Trajectory of one explicit initial state, with the matching bound per row.

    For depolarizing and dephasing the bound is the multiplier times the
    initial negativity; for the thermal bath it multiplies the cut's maximal
    negativity (state-dependent form when the state is a GHZ spec).
    """
    rho0, ghz = _evolve_initial(spec)
    n = rho0.num_qubits
    cuts = enumerate_cuts(n, spec.cut_policy)
    initial = {c: negativity(rho0, c, spec.backend).value for c in cuts}
    table = Table("evolve", ("p", "cut", "negativity", "normalized", "bound_multiplier",
                             "bound", "eigenvalue_floor"))
    ch = spec.channel
    for p in spec.p_grid:
        rho = rho0 if p == 0.0 else apply_local(rho0, ch.at(p))
        if ch.family is Family.THERMAL:
            if ghz is not None:
                mult = bounds.bound_thermal_state_dependent(
                    ghz.alpha, ghz.beta, bounds.hamming_weight(ghz.label_k), n, ch.nbar, p, ch.diffusive)
            else:
                mult = bounds.bound_thermal_uniform(n, ch.nbar, p, ch.diffusive)
        else:
            mult = _relative_bound(ch.family, n, p)
        for c in cuts:
            res = negativity(rho, c, spec.backend)
            init = initial[c]
            normalized = res.value / init if init > spec.normalized_floor else math.nan
            scale = max_negativity(c) if ch.family is Family.THERMAL else init
            table.rows.append((p, c.label, res.value, normalized, mult, mult * scale, res.eigenvalue_floor))
    return [table]


def _bound_families(spec: ExperimentSpec):
    if spec.families:
        return spec.families
    fam = spec.channel.family
    if fam is Family.DEPOLARIZING:
        return (bounds.BoundFamily.DEPOLARIZING_GHZ_DIAG,)
    if fam is Family.DEPHASING:
        return (bounds.BoundFamily.DEPHASING,)
    out = (bounds.BoundFamily.THERMAL_UNIFORM,)
    if spec.initial_state is not None:
        out += (bounds.BoundFamily.THERMAL_STATE_DEPENDENT,)
    return out


def run_bound_table(spec: ExperimentSpec) -> list[Table]:
    table = Table("bounds", ("family", "N", "p", "nbar", "kappa", "multiplier"))
    ch = spec.channel
    nbar = math.inf if ch.diffusive else ch.nbar
    for fam in _bound_families(spec):
        for n in spec.num_qubits:
            if fam is bounds.BoundFamily.DEPOLARIZING_TWO_QUBIT_ANY and n != 2:
                continue
            kwargs = {}
            if fam in (bounds.BoundFamily.THERMAL_UNIFORM, bounds.BoundFamily.THERMAL_STATE_DEPENDENT):
                if ch.family is not Family.THERMAL:
                    raise ConfigError(f"{fam.value} needs a thermal channel", key="channel")
                kwargs = {"nbar": ch.nbar, "diffusive": ch.diffusive}
            kappa = None
            if fam is bounds.BoundFamily.THERMAL_STATE_DEPENDENT:
                g = spec.initial_state
                if g is None:
                    raise ConfigError(f"{fam.value} needs initial_state", key="initial_state")
                if g.num_qubits != n:
                    continue
                kappa = bounds.hamming_weight(g.label_k)
                kwargs.update(alpha=g.alpha, beta=g.beta, kappa=kappa)
            for p in spec.p_grid:
                q = bounds.BoundQuery(fam, n, p, **kwargs)
                table.rows.append((fam.value, n, p, "" if nbar is None else nbar,
                                   "" if kappa is None else kappa, bounds.evaluate(q)))
    return [table]


RUNNERS = {
    Kind.BOUND: run_bound_table,
    Kind.EVOLVE: run_evolve,
    Kind.SAMPLE: run_sample_experiment,
    Kind.FIG1: run_fig1,
    Kind.FIG2: run_fig2,
    Kind.FIG3: run_fig3,
}


def run(spec: ExperimentSpec) -> list[Table]:
    previous = qstate.MAX_QUBITS
    qstate.set_max_qubits(spec.max_qubits)
    try:
        return RUNNERS[spec.kind](spec)
    finally:
        qstate.set_max_qubits(previous)


__all__ = [
    "ExperimentSpec", "GhzDecayError", "Kind", "Table", "data_rows", "parse_config",
    "parse_config_dict", "run", "run_bound_table", "run_evolve", "run_fig1", "run_fig2",
    "run_fig3", "run_sample_experiment", "stats_summary", "stats_table", "write_tables",
]
