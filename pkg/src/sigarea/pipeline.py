"""End-to-end pairwise discovery: scaling, SSAD screening, direction calls.

For every unordered pair of channels the pipeline runs the shuffled-null
band test once (the reverse order is its exact negation) and the shift
variance-ratio test in both orders, then reports each ordered pair.  |SSAD|
is the confidence of a lag/lead link; by default no threshold is applied
and the output is read as a ranking.  Optional extras: a scaled white-noise
control channel, and lagged-regression / cross-mapping baseline columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .baselines import ccm, granger
from .direction import ts_savr, shift_profile
from .errors import SigAreaError
from .nulltest import ssad_pair_detail
from .rng import derive_seed
from .series import Panel, difference, scale_unit_range
from .synth import gen_white_noise


@dataclass(frozen=True)
class RunConfig:
    """Knobs for one discovery run.

    stride=None tiles the series with non-overlapping windows (stride =
    window_length), the default everywhere in this package; set stride=1
    for maximally overlapping windows.  theta=None means rank mode: no
    hard edge threshold, every pair lands in the graph with its
    confidence.  difference_order is applied before scaling; interpolation
    onto a uniform grid happens at CSV load time, not here.
    """

    window_length: int = 10
    n_shuffles: int = 1000
    seed: int = 0
    stride: int | None = None
    rho: float = 1.0
    alpha: float = 0.05
    tau_min: int = -10
    tau_max: int = 10
    theta: float | None = None
    difference_order: int = 0
    add_noise_channel: bool = False
    run_granger: bool = False
    run_ccm: bool = False
    granger_tau_max: int = 10
    pooled: bool = True

    def __post_init__(self) -> None:
        if self.window_length < 2:
            raise ValueError("window_length must be >= 2")
        if self.n_shuffles < 2:
            raise ValueError("n_shuffles must be >= 2")
        if self.stride is not None and self.stride < 1:
            raise ValueError("stride must be >= 1 when given")
        if self.rho <= 0:
            raise ValueError("rho must be positive")
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")
        if self.tau_min > self.tau_max:
            raise ValueError("tau_min must not exceed tau_max")
        if self.theta is not None and not 0 <= self.theta <= 1:
            raise ValueError("theta must lie in [0, 1] when given")
        if self.difference_order < 0:
            raise ValueError("difference_order must be >= 0")
        if self.granger_tau_max < 1:
            raise ValueError("granger_tau_max must be >= 1")

    @property
    def effective_stride(self) -> int:
        return self.window_length if self.stride is None else self.stride


@dataclass(frozen=True)
class PairReport:
    """One ordered pair's scores; ``error`` is set when the pair failed."""

    pair: tuple[str, str]
    ssad: float | None = None
    abs_ssad: float | None = None
    ts_savr: float | None = None
    direction: str | None = None
    edge: bool = False
    granger_min_p: float | None = None
    ccm_max_r2: float | None = None
    error: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "pair", tuple(self.pair))


@dataclass(frozen=True)
class GraphEdge:
    """Directed (or mutual) link between two channels."""

    source: str
    target: str
    label: str
    confidence: float


@dataclass(frozen=True)
class CausalGraph:
    """Channels plus at most one edge record per unordered pair."""

    nodes: tuple[str, ...]
    edges: tuple[GraphEdge, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))


@dataclass(frozen=True)
class PairTrace:
    """Per-window actual areas and null band for one sorted pair."""

    pair: tuple[str, str]
    actual: np.ndarray
    mu: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "pair", tuple(self.pair))
        for name in ("actual", "mu", "lower", "upper"):
            arr = np.array(getattr(self, name), dtype=np.float64, copy=True).reshape(-1)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


@dataclass(frozen=True)
class DiscoveryResult:
    """Everything one run produced, enough to serialize a full report."""

    nodes: tuple[str, ...]
    reports: tuple[PairReport, ...]
    graph: CausalGraph
    traces: Mapping[tuple[str, str], PairTrace]
    config: RunConfig

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "reports", tuple(self.reports))
        object.__setattr__(self, "traces", MappingProxyType(dict(self.traces)))


def _noise_name(taken: tuple[str, ...]) -> str:
    for candidate in ("W", "W_noise"):
        if candidate not in taken:
            return candidate
    raise ValueError("both 'W' and 'W_noise' are taken; rename a channel")


def _prepare(panel: Panel, config: RunConfig) -> Panel:
    prepped = [
        scale_unit_range(difference(s, config.difference_order)) for s in panel.series
    ]
    if config.add_noise_channel:
        name = _noise_name(panel.names)
        noise = gen_white_noise(
            len(prepped[0]), derive_seed(config.seed, "noise"), name
        )
        prepped.append(scale_unit_range(noise))
    return Panel(tuple(prepped))


def _supports(label: str, source: str, target: str) -> bool:
    return label in (f"{source}->{target}", f"{source}<->{target}", f"{target}<->{source}")


def discover(panel: Panel, config: RunConfig | None = None) -> DiscoveryResult:
    """Score every channel pair of the panel.

    Each series is differenced (order 0 = untouched) and scaled; an
    optional white-noise control channel is appended and scaled the same
    way.  Unordered pairs are processed in lexicographic name order with
    per-pair seeds derived from (seed, "pair", sorted names), so results do
    not depend on column order or on how pairs are scheduled.  A failing
    pair is reported with its error message; other pairs are unaffected.
    """
    config = config or RunConfig()
    if len(panel.series) < 2:
        raise ValueError("need at least 2 channels to form pairs")
    scaled = _prepare(panel, config)
    stride = config.effective_stride

    reports: list[PairReport] = []
    edges: list[GraphEdge] = []
    traces: dict[tuple[str, str], PairTrace] = {}
    for i, j in combinations(sorted(scaled.names), 2):
        a, b = scaled.get(i), scaled.get(j)
        pair_seed = derive_seed(config.seed, "pair", i, j)
        try:
            fwd, rev, actual, band = ssad_pair_detail(
                a,
                b,
                window_length=config.window_length,
                n_shuffles=config.n_shuffles,
                seed=pair_seed,
                stride=stride,
                rho=config.rho,
                alpha=config.alpha,
                pooled=config.pooled,
            )
            v_fwd = ts_savr(shift_profile(a, b, config.tau_min, config.tau_max))
            v_rev = ts_savr(shift_profile(b, a, config.tau_min, config.tau_max))
            extras: dict[str, dict[str, float]] = {"granger": {}, "ccm": {}}
            if config.run_granger:
                extras["granger"]["fwd"] = granger(b, a, config.granger_tau_max).min_p
                extras["granger"]["rev"] = granger(a, b, config.granger_tau_max).min_p
            if config.run_ccm:
                extras["ccm"]["fwd"] = ccm(a, b).max_r2
                extras["ccm"]["rev"] = ccm(b, a).max_r2
        except SigAreaError as exc:
            message = f"{type(exc).__name__}: {exc}"
            reports.append(PairReport((i, j), error=message))
            reports.append(PairReport((j, i), error=message))
            continue

        abs_ssad = abs(fwd.score)
        passes = config.theta is None or abs_ssad >= config.theta
        reports.append(
            PairReport(
                (i, j),
                ssad=fwd.score,
                abs_ssad=abs_ssad,
                ts_savr=v_fwd.ratio,
                direction=v_fwd.label,
                edge=config.theta is not None and passes and _supports(v_fwd.label, i, j),
                granger_min_p=extras["granger"].get("fwd"),
                ccm_max_r2=extras["ccm"].get("fwd"),
            )
        )
        reports.append(
            PairReport(
                (j, i),
                ssad=rev.score,
                abs_ssad=abs_ssad,
                ts_savr=v_rev.ratio,
                direction=v_rev.label,
                edge=config.theta is not None and passes and _supports(v_rev.label, j, i),
                granger_min_p=extras["granger"].get("rev"),
                ccm_max_r2=extras["ccm"].get("rev"),
            )
        )
        traces[(i, j)] = PairTrace(
            (i, j), actual.values, band.mu, band.lower, band.upper
        )
        if passes:
            if v_fwd.label == f"{i}->{j}":
                edges.append(GraphEdge(i, j, v_fwd.label, abs_ssad))
            elif v_fwd.label == f"{j}->{i}":
                edges.append(GraphEdge(j, i, v_fwd.label, abs_ssad))
            else:
                edges.append(GraphEdge(i, j, v_fwd.label, abs_ssad))

    graph = CausalGraph(scaled.names, tuple(edges))
    return DiscoveryResult(scaled.names, tuple(reports), graph, traces, config)


def rank_pairs(reports: tuple[PairReport, ...] | list[PairReport]) -> list[PairReport]:
    """Unordered pairs by descending confidence.

    Takes the output of discover (or any report list), keeps one
    representative per unordered pair (the lexicographically forward one),
    and sorts by descending abs_ssad with ties broken by pair name.
    Failed pairs sort last.
    """
    if not reports:
        raise ValueError("no reports to rank")
    forward = [r for r in reports if r.pair[0] < r.pair[1]]
    return sorted(
        forward,
        key=lambda r: (r.abs_ssad is None, -(r.abs_ssad or 0.0), r.pair),
    )
