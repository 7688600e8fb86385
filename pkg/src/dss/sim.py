"""Trace-driven simulation of indicator-guided datastore selection.

Every node of a topology hosts an LRU datastore with a counting Bloom
filter indicator and a miss-ratio estimator. Requests walk a trace; each
request is issued from a uniformly random client node (seeded). The client
collects positive indications from all stores, builds a selection context
out of its own access-cost row and the stores' current miss-ratio
estimates, asks the configured strategy which stores to access, and pays
for every access. If no accessed store holds the item, the miss penalty is
paid and the item is written to its k hash-designated stores.

A run with the ground-truth baseline strategy ("pi": access the single
cheapest store that truly holds the item) under the same seed and trace
provides the normalizer: reported AC and TC divide by the baseline's total
cost, so 1.0 means "as good as never being misled".
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .cbf import CountingBloomFilter, _item_bytes, size_for_target_fpr
from .core import DatastoreProfile, SelectionContext, clamp_mis_ratio
from .datastore import Datastore
from .strategies import (
    Selection,
    select_cpi,
    select_dsalg_knap,
    select_dsalg_pp,
    select_epi,
    select_exhaustive,
    select_pgm,
    select_pot,
)
from .topology import Topology, cost_matrix, default_topology, load_topology
from .workload import load_trace

GROUND_TRUTH_STRATEGY = "pi"

STRATEGIES: dict[str, Callable[[SelectionContext], Selection]] = {
    "cpi": select_cpi,
    "epi": select_epi,
    "pot": select_pot,
    "pp": select_dsalg_pp,
    "umb": select_dsalg_knap,
    "pgm": select_pgm,
    "opt": select_exhaustive,
}

_ALIASES = {
    "dsalg-pp": "pp",
    "dsalg_pp": "pp",
    "dsalg-knap": "umb",
    "dsalg_knap": "umb",
    "exhaustive": "opt",
}

DEFAULT_BENCH_STRATEGIES = ("cpi", "epi", "pot", "umb", "pgm", GROUND_TRUTH_STRATEGY)


def resolve_strategy(name: str) -> str:
    """Canonical strategy key (aliases folded, case-insensitive)."""
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    if key != GROUND_TRUTH_STRATEGY and key not in STRATEGIES:
        known = ", ".join(sorted(STRATEGIES) + [GROUND_TRUTH_STRATEGY])
        raise ValueError(f"unknown strategy {name!r} (known: {known})")
    return key


@dataclass(frozen=True)
class SimConfig:
    """One simulation run: strategy, environment sizes, and the seed."""

    strategy: str
    miss_penalty: float = 100.0
    locations_per_item: int = 1
    store_capacity: int = 1000
    target_fpr: float = 0.02
    alpha: float = 0.5
    big_t: float | None = None
    seed: int = 0
    num_hashes: int = 5

    def __post_init__(self) -> None:
        object.__setattr__(self, "strategy", resolve_strategy(self.strategy))
        if self.miss_penalty < 1.0:
            raise ValueError(f"miss_penalty must be >= 1, got {self.miss_penalty}")
        if self.locations_per_item < 1:
            raise ValueError(
                f"locations_per_item must be >= 1, got {self.locations_per_item}"
            )
        if self.store_capacity < 1:
            raise ValueError(f"store_capacity must be >= 1, got {self.store_capacity}")
        if not (0.0 < self.target_fpr < 1.0):
            raise ValueError(f"target_fpr must lie in (0, 1), got {self.target_fpr}")
        if not (0.0 <= self.alpha <= 1.0):
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")


@dataclass
class SimMetrics:
    """Totals of one run, plus normalized figures once a baseline is known."""

    strategy: str
    miss_penalty: float
    locations_per_item: int
    store_capacity: int
    target_fpr: float
    alpha: float
    seed: int
    requests: int = 0
    access_cost: float = 0.0
    misses: int = 0
    ac_norm: float | None = None
    tc_norm: float | None = None
    log: list | None = None

    @property
    def total_cost(self) -> float:
        return self.access_cost + self.miss_penalty * self.misses

    def normalize_against(self, baseline_total: float) -> None:
        if baseline_total <= 0:
            raise ValueError("baseline total cost must be positive")
        self.ac_norm = self.access_cost / baseline_total
        self.tc_norm = self.total_cost / baseline_total


def designated_stores(item, k: int, n_stores: int, seed: int) -> tuple[int, ...]:
    """The k stores an item hashes to: rendezvous (top-k keyed score) placement.

    Scores are keyed 64-bit digests of the item per store, so placement is
    stable across runs and processes and every store wins roughly uniformly.
    """
    if not (1 <= k <= n_stores):
        raise ValueError(f"k must lie in 1..{n_stores}, got {k}")
    key = (seed & (1 << 64) - 1).to_bytes(8, "little")
    payload = _item_bytes(item)
    scores = []
    for j in range(n_stores):
        digest = hashlib.blake2b(
            payload + j.to_bytes(4, "little"), digest_size=8, key=key
        ).digest()
        scores.append((int.from_bytes(digest, "little"), j))
    scores.sort(key=lambda s: (-s[0], s[1]))
    return tuple(sorted(j for _, j in scores[:k]))


def _build_stores(config: SimConfig, n_stores: int) -> list[Datastore]:
    counters = size_for_target_fpr(
        config.store_capacity, config.target_fpr, config.num_hashes
    )
    stores = []
    for j in range(n_stores):
        indicator = CountingBloomFilter(
            counters, config.num_hashes, seed=config.seed * 1_000_003 + j
        )
        stores.append(Datastore(j, config.store_capacity, indicator))
    return stores


def run(
    config: SimConfig,
    topology: Topology | str | None = None,
    trace: Sequence | str | None = None,
    record_log: bool = False,
) -> SimMetrics:
    """Simulate one strategy over a trace; returns raw (un-normalized) totals."""
    topo = _as_topology(topology)
    items = _as_trace(trace)
    costs = cost_matrix(topo, config.alpha, config.big_t)
    n_stores = len(topo.nodes)
    if config.locations_per_item > n_stores:
        raise ValueError(
            f"locations_per_item {config.locations_per_item} exceeds "
            f"{n_stores} stores"
        )
    stores = _build_stores(config, n_stores)
    strategy_key = config.strategy
    ground_truth = strategy_key == GROUND_TRUTH_STRATEGY
    strategy = None if ground_truth else STRATEGIES[strategy_key]

    rng = np.random.default_rng(config.seed)
    clients = rng.integers(0, n_stores, size=len(items))
    cost_rows = costs.tolist()
    beta = config.miss_penalty
    k = config.locations_per_item
    placements: dict = {}

    metrics = SimMetrics(
        strategy=strategy_key,
        miss_penalty=beta,
        locations_per_item=k,
        store_capacity=config.store_capacity,
        target_fpr=config.target_fpr,
        alpha=config.alpha,
        seed=config.seed,
        requests=len(items),
    )
    log = [] if record_log else None
    access_total = 0.0
    misses = 0

    for item, client in zip(items, clients.tolist()):
        row = cost_rows[client]
        if ground_truth:
            chosen = _cheapest_holder(stores, item, row)
        else:
            profiles = tuple(
                DatastoreProfile(j, float(row[j]), clamp_mis_ratio(s.estimator.estimate))
                for j, s in enumerate(stores)
                if s.indicator.query(item)
            )
            ctx = SelectionContext(profiles, beta)
            chosen = [p.id for p in strategy(ctx)]
        paid = 0.0
        hit = False
        for j in chosen:
            paid += row[j]
            if stores[j].access(item):
                hit = True
        access_total += paid
        if not hit:
            misses += 1
            where = placements.get(item)
            if where is None:
                where = designated_stores(item, k, n_stores, config.seed)
                placements[item] = where
            for j in where:
                if not stores[j].holds(item):
                    stores[j].insert(item)
        if log is not None:
            log.append((item, client, tuple(chosen), paid, hit))

    metrics.access_cost = access_total
    metrics.misses = misses
    metrics.log = log
    return metrics


def _cheapest_holder(stores: list[Datastore], item, row: list) -> list[int]:
    best = None
    best_key = None
    for j, s in enumerate(stores):
        if s.holds(item):
            key = (row[j], j)
            if best_key is None or key < best_key:
                best, best_key = j, key
    return [] if best is None else [best]


def run_with_baseline(
    config: SimConfig,
    topology: Topology | str | None = None,
    trace: Sequence | str | None = None,
) -> tuple[SimMetrics, SimMetrics]:
    """Run a strategy plus its ground-truth twin (same seed and trace);
    returns (strategy metrics, baseline metrics), both normalized."""
    topo = _as_topology(topology)
    items = _as_trace(trace)
    baseline_config = (
        config
        if config.strategy == GROUND_TRUTH_STRATEGY
        else _with_strategy(config, GROUND_TRUTH_STRATEGY)
    )
    baseline = run(baseline_config, topo, items)
    baseline.normalize_against(baseline.total_cost)
    if config.strategy == GROUND_TRUTH_STRATEGY:
        return baseline, baseline
    metrics = run(config, topo, items)
    metrics.normalize_against(baseline.total_cost)
    return metrics, baseline


def run_grid(
    strategies: Sequence[str],
    betas: Sequence[float],
    ks: Sequence[int],
    seeds: Sequence[int],
    topology: Topology | str | None = None,
    trace: Sequence | str | None = None,
    store_capacity: int = 1000,
    target_fpr: float = 0.02,
    alpha: float = 0.5,
    big_t: float | None = None,
) -> list[SimMetrics]:
    """Benchmark grid. The ground-truth baseline runs once per
    (beta, k, seed) cell and normalizes every strategy in that cell."""
    topo = _as_topology(topology)
    items = _as_trace(trace)
    names = [resolve_strategy(s) for s in strategies]
    rows = []
    for beta in betas:
        for k in ks:
            for seed in seeds:
                cell = SimConfig(
                    strategy=GROUND_TRUTH_STRATEGY,
                    miss_penalty=beta,
                    locations_per_item=k,
                    store_capacity=store_capacity,
                    target_fpr=target_fpr,
                    alpha=alpha,
                    big_t=big_t,
                    seed=seed,
                )
                baseline = run(cell, topo, items)
                baseline.normalize_against(baseline.total_cost)
                for name in names:
                    if name == GROUND_TRUTH_STRATEGY:
                        rows.append(baseline)
                        continue
                    metrics = run(_with_strategy(cell, name), topo, items)
                    metrics.normalize_against(baseline.total_cost)
                    rows.append(metrics)
    return rows


METRICS_CSV_HEADER = (
    "strategy,beta,k,S,fpr,alpha,seed,requests,AC,TC,misses,AC_norm,TC_norm"
)


def metrics_csv(rows: Sequence[SimMetrics]) -> str:
    """Render runs as CSV (six significant digits on real-valued columns)."""
    out = [METRICS_CSV_HEADER]
    for m in rows:
        out.append(
            ",".join(
                [
                    m.strategy,
                    format(m.miss_penalty, ".6g"),
                    str(m.locations_per_item),
                    str(m.store_capacity),
                    format(m.target_fpr, ".6g"),
                    format(m.alpha, ".6g"),
                    str(m.seed),
                    str(m.requests),
                    format(m.access_cost, ".6g"),
                    format(m.total_cost, ".6g"),
                    str(m.misses),
                    "" if m.ac_norm is None else format(m.ac_norm, ".6g"),
                    "" if m.tc_norm is None else format(m.tc_norm, ".6g"),
                ]
            )
        )
    return "\n".join(out) + "\n"


def markdown_summary(rows: Sequence[SimMetrics]) -> str:
    """Pivot table of seed-averaged normalized costs per strategy and cell."""
    cells = sorted({(m.miss_penalty, m.locations_per_item) for m in rows})
    names = list(dict.fromkeys(m.strategy for m in rows))
    header = "| strategy | " + " | ".join(
        f"beta={format(b, '.6g')}, k={k}" for b, k in cells
    ) + " |"
    rule = "|" + "---|" * (len(cells) + 1)
    lines = [
        "Normalized cost against the ground-truth baseline "
        "(TC_norm, with AC_norm in parentheses; averaged over seeds):",
        "",
        header,
        rule,
    ]
    for name in names:
        entries = []
        for b, k in cells:
            sample = [
                m
                for m in rows
                if m.strategy == name
                and m.miss_penalty == b
                and m.locations_per_item == k
                and m.tc_norm is not None
            ]
            if not sample:
                entries.append("-")
                continue
            tc = sum(m.tc_norm for m in sample) / len(sample)
            ac = sum(m.ac_norm for m in sample) / len(sample)
            entries.append(f"{tc:.4g} ({ac:.4g})")
        lines.append("| " + name + " | " + " | ".join(entries) + " |")
    return "\n".join(lines) + "\n"


def _with_strategy(config: SimConfig, name: str) -> SimConfig:
    return SimConfig(
        strategy=name,
        miss_penalty=config.miss_penalty,
        locations_per_item=config.locations_per_item,
        store_capacity=config.store_capacity,
        target_fpr=config.target_fpr,
        alpha=config.alpha,
        big_t=config.big_t,
        seed=config.seed,
        num_hashes=config.num_hashes,
    )


def _as_topology(topology: Topology | str | None) -> Topology:
    if topology is None:
        return default_topology()
    if isinstance(topology, Topology):
        return topology
    return load_topology(topology)


def _as_trace(trace: Sequence | str | None):
    if trace is None:
        raise ValueError("a trace (sequence or file path) is required")
    if isinstance(trace, str):
        return load_trace(trace)
    return trace
