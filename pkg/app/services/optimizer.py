import csv
import io
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from app.core.config import settings
from app.core.errors import InfeasibleParametersError
from app.schemas.complexity import WeightSequence
from app.schemas.graph import Graph
from app.schemas.optimizer import CostSample, Direction, OptimizerConfig, OptimizerResult, SweepRow
from app.services.graphs import connected_mask, random_connected_graph
from app.services.krylov import cbar, cbar_values

logger = logging.getLogger(__name__)

SEED_VERTEX = 0
MAX_CANDIDATES = 20


def _mask_bits(masks: np.ndarray, width: int) -> np.ndarray:
    """Row r holds the bits of masks[r], least significant first."""
    return ((masks[:, None] >> np.arange(width)) & 1).astype(float)


def _select(values: np.ndarray, valid: np.ndarray, direction: Direction) -> Optional[int]:
    """Index of the extremal valid value; near-ties go to the smallest index."""
    if not valid.any():
        return None
    scores = np.where(valid, values if direction is Direction.MAXIMIZE else -values, -np.inf)
    best = scores.max()
    return int(np.flatnonzero(valid & (scores >= best - settings.IMPROVEMENT_TOL))[0])


def _evaluate(
    build_batch,
    total: int,
    weights: WeightSequence,
    progress: bool = False,
    description: str = "",
) -> Tuple[np.ndarray, np.ndarray]:
    """Connectivity flags and C-bar for masks 0..total-1, evaluated in chunks."""
    values = np.full(total, np.nan)
    valid = np.zeros(total, dtype=bool)
    starts = range(0, total, settings.BATCH_SIZE)
    for start in tqdm(starts, desc=description, unit="chunk", disable=not progress):
        stop = min(total, start + settings.BATCH_SIZE)
        adjacency = build_batch(np.arange(start, stop))
        connected = connected_mask(adjacency, root=SEED_VERTEX)
        valid[start:stop] = connected
        if connected.any():
            values[start:stop][connected] = cbar_values(adjacency[connected], SEED_VERTEX, weights)
    return values, valid


def _best_assignment(
    adjacency: np.ndarray,
    pivot: int,
    candidates: Sequence[int],
    direction: Direction,
    weights: WeightSequence,
) -> Tuple[np.ndarray, Optional[float], int]:
    """Try every on/off pattern of the edges pivot--candidates[j]; keep the extremal connected one."""
    candidates = np.asarray(candidates, dtype=int)

    def build_batch(masks: np.ndarray) -> np.ndarray:
        bits = _mask_bits(masks, len(candidates))
        batch = np.repeat(adjacency[None], len(masks), axis=0)
        batch[:, pivot, candidates] = bits
        batch[:, candidates, pivot] = bits
        return batch

    values, valid = _evaluate(build_batch, 2 ** len(candidates), weights)
    choice = _select(values, valid, direction)
    if choice is None:
        return adjacency, None, int(valid.sum())
    return build_batch(np.array([choice]))[0], float(values[choice]), int(valid.sum())


def _check_move(dimension: int, pivot: int, candidates: Sequence[int]) -> None:
    if not 0 <= pivot < dimension:
        raise ValueError(f"pivot {pivot} out of range for D={dimension}")
    if len(set(candidates)) != len(candidates):
        raise ValueError("candidates must be distinct")
    if pivot in candidates:
        raise ValueError("pivot cannot be its own candidate")
    if any(not 0 <= c < dimension for c in candidates):
        raise ValueError(f"candidate out of range for D={dimension}")
    if len(candidates) > MAX_CANDIDATES:
        raise ValueError(f"at most {MAX_CANDIDATES} candidates, got {len(candidates)}")


def local_move(
    g: Graph,
    pivot: int,
    candidates: Sequence[int],
    direction: Direction,
    weights: Optional[WeightSequence] = None,
) -> Graph:
    """Rewire the pivot's edges to the candidates for the extremal C-bar.

    Assignments that disconnect the graph are skipped; ties go to the
    smallest bitmask, bit j standing for the edge to the j-th smallest
    candidate. The input is returned when no assignment is connected.
    """
    candidates = sorted(int(c) for c in candidates)
    _check_move(g.dimension, pivot, candidates)
    if not candidates:
        return g
    adjacency, value, _ = _best_assignment(
        g.adjacency(), pivot, candidates, direction, weights or WeightSequence.linear()
    )
    if value is None:
        return g
    return Graph.from_adjacency(adjacency)


@dataclass
class _RestartOutcome:
    adjacency: np.ndarray
    cbar: float
    trace: List[CostSample]
    moves: int
    assignments: int


def _run_restart(cfg: OptimizerConfig, index: int, stream: np.random.SeedSequence) -> _RestartOutcome:
    rng = np.random.default_rng(stream)
    D = cfg.dimension
    adjacency = random_connected_graph(D, rng).adjacency()
    current = float(cbar_values(adjacency, SEED_VERTEX, cfg.weights)[0])
    trace = [CostSample(restart=index, round=0, cbar=current)]

    stale = rounds = assignments = 0
    while stale < cfg.max_stale_rounds and (cfg.max_rounds is None or rounds < cfg.max_rounds):
        rounds += 1
        pivot = int(rng.integers(D))
        others = np.delete(np.arange(D), pivot)
        candidates = np.sort(rng.choice(others, size=min(cfg.candidate_count, D - 1), replace=False))

        proposal, value, evaluated = _best_assignment(adjacency, pivot, candidates, cfg.direction, cfg.weights)
        assignments += evaluated
        if value is not None and cfg.direction.improves(value, current, settings.IMPROVEMENT_TOL):
            adjacency, current, stale = proposal, value, 0
            trace.append(CostSample(restart=index, round=rounds, cbar=current))
            continue
        stale += 1
        # equal-cost rewiring keeps the walk moving across plateaus
        if value is not None and not cfg.direction.improves(current, value, settings.IMPROVEMENT_TOL):
            adjacency = proposal

    logger.info(f"restart {index}: cbar={current:.12g} after {rounds} rounds")
    return _RestartOutcome(adjacency, current, trace, rounds, assignments)


def optimize(cfg: OptimizerConfig, progress: bool = False) -> OptimizerResult:
    """Stochastic greedy search for the graph with extremal C-bar at vertex 0.

    Each restart draws from its own stream spawned off ``cfg.rng_seed``, so
    serial and threaded runs give the same result.
    """
    streams = np.random.SeedSequence(cfg.rng_seed).spawn(cfg.restarts)
    jobs = list(enumerate(streams))

    if cfg.max_workers and cfg.max_workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.max_workers) as executor:
            outcomes = list(executor.map(lambda job: _run_restart(cfg, *job), jobs))
    else:
        outcomes = [
            _run_restart(cfg, index, stream)
            for index, stream in tqdm(jobs, desc=f"D={cfg.dimension}", unit="restart", disable=not progress)
        ]

    values = np.array([outcome.cbar for outcome in outcomes])
    best_restart = _select(values, np.ones(len(values), dtype=bool), cfg.direction)
    winner = outcomes[best_restart]
    best_graph = Graph.from_adjacency(winner.adjacency)

    return OptimizerResult(
        best_graph=best_graph,
        best_cbar=cbar(best_graph, SEED_VERTEX, cfg.weights).cbar,
        cost_trace=[sample for outcome in outcomes for sample in outcome.trace],
        best_restart=best_restart,
        moves_evaluated=sum(outcome.moves for outcome in outcomes),
        assignments_evaluated=sum(outcome.assignments for outcome in outcomes),
    )


def brute_force(
    dimension: int,
    direction: Direction,
    weights: Optional[WeightSequence] = None,
    progress: bool = False,
) -> OptimizerResult:
    """Exact extremum over every connected labeled graph on D vertices.

    Graphs are enumerated as bitmasks over the edges (i, j), i < j, in
    lexicographic order; ties go to the smallest mask. D = 7 means 2**21
    graphs and takes minutes.
    """
    if not 2 <= dimension <= settings.BRUTE_FORCE_MAX_D:
        raise InfeasibleParametersError(
            f"brute force supports 2 <= D <= {settings.BRUTE_FORCE_MAX_D}, got {dimension}"
        )
    weights = weights or WeightSequence.linear()
    rows, cols = np.triu_indices(dimension, k=1)

    def build_batch(masks: np.ndarray) -> np.ndarray:
        bits = _mask_bits(masks, len(rows))
        batch = np.zeros((len(masks), dimension, dimension))
        batch[:, rows, cols] = bits
        batch[:, cols, rows] = bits
        return batch

    started = time.time()
    values, valid = _evaluate(build_batch, 2 ** len(rows), weights, progress, description=f"D={dimension}")
    choice = _select(values, valid, direction)
    best_graph = Graph.from_adjacency(build_batch(np.array([choice]))[0])
    logger.info(
        f"brute force D={dimension}: {int(valid.sum())} connected graphs in {time.time() - started:.1f}s"
    )

    best_cbar = cbar(best_graph, SEED_VERTEX, weights).cbar
    return OptimizerResult(
        best_graph=best_graph,
        best_cbar=best_cbar,
        cost_trace=[CostSample(restart=0, round=0, cbar=best_cbar)],
        assignments_evaluated=int(valid.sum()),
    )


def sweep_max(dimensions: Iterable[int], template: OptimizerConfig, progress: bool = False) -> List[SweepRow]:
    """Run the optimizer once per D, reusing every other setting of ``template``."""
    rows = []
    for D in dimensions:
        cfg = OptimizerConfig(**{**template.model_dump(), "dimension": D})
        result = optimize(cfg, progress=progress)
        logger.info(f"sweep D={D}: cbar={result.best_cbar:.12g}")
        rows.append(SweepRow(D=D, cbar=result.best_cbar, graph=result.best_graph))
    return rows


def linear_fit(rows: Sequence[SweepRow]) -> Tuple[float, float]:
    """Least-squares slope and intercept of best C-bar against D."""
    slope, intercept = np.polyfit([row.D for row in rows], [row.cbar for row in rows], 1)
    return float(slope), float(intercept)


def format_edges(g: Graph) -> str:
    return ";".join(f"{i}-{j}" for i, j in g.edges)


def rows_to_csv(rows: Iterable[SweepRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["D", "cbar", "edges"])
    for row in rows:
        writer.writerow([row.D, repr(row.cbar), format_edges(row.graph)])
    return buffer.getvalue()
