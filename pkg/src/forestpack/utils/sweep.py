"""Seeded connectivity-threshold sweeps.

Each trial draws a random multigraph with terminal groups, measures the Steiner
connectivity of every group, then runs exact_pack and decompose_and_pack on it.
Trials depend only on their own seed, so they may run in a process pool; the
records are sorted by instance id before they are reported.
"""

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor

from forestpack.models.errors import InternalInvariantError
from forestpack.models.packing_models import DecomposeConfig, SearchVerdict
from forestpack.models.run_models import (
    REFERENCE_MULTIPLIERS,
    RunConfig,
    SweepParams,
    SweepRecord,
    SweepSummary,
)
from forestpack.utils.decompose import decompose_and_pack
from forestpack.utils.generators import group_connectivities, random_instance
from forestpack.utils.search import exact_pack

logger = logging.getLogger(__name__)


def run_trial(
    instance_id: int, seed: int, n: int, k: int, params: SweepParams, budget: int
) -> SweepRecord:
    """Generate one instance and record both packers' verdicts."""
    start = time.perf_counter()
    instance = random_instance(n, params.t, params.density, seed, params.connectivity)
    graph, terminals = instance.graph, instance.terminals
    connectivities = tuple(group_connectivities(graph, terminals))

    exact = exact_pack(graph, terminals, k, budget=budget)
    config = DecomposeConfig(
        q=params.q, budget=budget, reserve_degree_factor=max(1, params.q - 2)
    )
    driven = decompose_and_pack(graph, terminals, k, config)
    if driven.success and exact.verdict is SearchVerdict.INFEASIBLE:
        logger.critical("Instance %d: driver packed an infeasible one", instance_id)
        raise InternalInvariantError(
            f"decompose_and_pack contradicts exact_pack on instance {instance_id}"
        )

    return SweepRecord(
        instance_id=instance_id,
        seed=seed,
        n=n,
        m=graph.number_of_edges(),
        k=k,
        t=terminals.group_count,
        connectivities=connectivities,
        verdict=exact.verdict,
        decompose="FEASIBLE" if driven.success else "FAIL",
        nodes=exact.nodes,
        elapsed=time.perf_counter() - start,
    )


def _run_trial(args: tuple) -> SweepRecord:
    return run_trial(*args)


def summarize(records: list[SweepRecord]) -> list[SweepSummary]:
    """Compare verdicts against the 2k, 9k and 36k connectivity lines."""
    summaries = []
    for multiplier in REFERENCE_MULTIPLIERS:
        summary = SweepSummary(multiplier)
        for record in records:
            if record.min_connectivity < multiplier * record.k:
                continue
            summary.instances += 1
            summary.feasible += record.verdict is SearchVerdict.FEASIBLE
            summary.timeouts += record.verdict is SearchVerdict.TIMEOUT
        summaries.append(summary)
    return summaries


def run_sweep(
    cfg: RunConfig, params: SweepParams, jobs: int = 1
) -> tuple[list[SweepRecord], list[SweepSummary]]:
    """Run a seeded sweep.

    Args:
        cfg: Run configuration; its seed determines every instance
        params: Generator ranges
        jobs: Worker processes; 1 runs in-process

    Returns:
        tuple: (records sorted by instance id, summary rows)
    """
    rng = random.Random(cfg.seed)
    trials = []
    for instance_id in range(params.count):
        seed = rng.randrange(2**31)
        n = rng.randint(params.n_min, params.n_max)
        k = rng.randint(params.k_min, params.k_max)
        trials.append((instance_id, seed, n, k, params, cfg.budget))

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_trial, trials))
    else:
        records = []
        for trial in trials:
            records.append(run_trial(*trial))
            logger.info("Sweep instance %d/%d done", len(records), params.count)

    records.sort(key=lambda record: record.instance_id)
    return records, summarize(records)
