"""Grid scans and local refinement of the Leggett-Garg correlator.

The search is two-stage: an exhaustive grid over (L1, delta L) locates the
basin, then a bounded Nelder-Mead simplex on -C polishes the point. C is
cheap and two-dimensional, so no gradients are used.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from ..correlator import BaselineSchedule, lgi_correlator, lgi_surface
from ..errors import ParameterError
from ..oracle import exact_lgi_correlator, exact_lgi_surface
from ..oscillation import OscillationParams
from ..oscillation.models import FloatOrArray
from ..utils.concurrency import resolve_workers
from ..utils.logging import get_logger
from .models import Evaluator, MaximumReport, ScanGrid, ScanSurface, SweepAxis, SweepPoint

logger = get_logger(__name__)

SurfaceFunction = Callable[[OscillationParams, FloatOrArray, FloatOrArray], FloatOrArray]

# Absolute spread of -C across the simplex at convergence.
_SIMPLEX_FATOL = 1e-13


def surface_function(evaluator: Union[Evaluator, str]) -> SurfaceFunction:
    if Evaluator(evaluator) is Evaluator.ORACLE:
        return exact_lgi_surface
    return lgi_surface


def evaluate_point(
    params: OscillationParams, l1: float, dl: float, evaluator: Union[Evaluator, str] = Evaluator.EXPANSION
) -> float:
    """C at one schedule through the point-wise correlator."""
    schedule = BaselineSchedule(l1=float(l1), spacing=float(dl))
    if Evaluator(evaluator) is Evaluator.ORACLE:
        return exact_lgi_correlator(params, schedule).c_total
    return lgi_correlator(params, schedule).c_total


def grid_scan(
    params: OscillationParams,
    grid: ScanGrid,
    evaluator: Union[Evaluator, str] = Evaluator.EXPANSION,
    *,
    workers: Optional[int] = None,
) -> ScanSurface:
    """Evaluate C at every grid node.

    Rows (fixed L1) are split into contiguous blocks and evaluated on a
    thread pool; blocks are stitched back by position, so the surface does
    not depend on the number of workers.
    """
    evaluator = Evaluator(evaluator)
    fn = surface_function(evaluator)
    l1_axis = grid.l1_axis()
    dl_axis = grid.dl_axis()

    n_workers = resolve_workers(workers)
    blocks = [rows for rows in np.array_split(np.arange(grid.l1_steps), min(n_workers, grid.l1_steps)) if rows.size]

    def evaluate_block(rows: np.ndarray) -> np.ndarray:
        block = fn(params, l1_axis[rows][:, None], dl_axis[None, :])
        return np.broadcast_to(np.asarray(block, dtype=float), (rows.size, dl_axis.size))

    started = time.perf_counter()
    if len(blocks) == 1:
        parts = [evaluate_block(blocks[0])]
    else:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            parts = list(pool.map(evaluate_block, blocks))
    values = np.vstack(parts)
    values.setflags(write=False)

    surface = ScanSurface(grid=grid, l1=l1_axis, dl=dl_axis, values=values, evaluator=evaluator)
    l1_best, dl_best, c_best = surface.best()
    logger.info(
        "Scanned %d nodes (%s, %d workers) in %.2fs: grid max C=%.8f at (%.2f, %.2f) km",
        surface.size,
        evaluator.value,
        n_workers,
        time.perf_counter() - started,
        c_best,
        l1_best,
        dl_best,
    )
    return surface


def line_scan(
    params: OscillationParams,
    l1: float,
    dl_min: float,
    dl_max: float,
    dl_steps: int,
    evaluator: Union[Evaluator, str] = Evaluator.EXPANSION,
) -> ScanSurface:
    """C versus delta L at a fixed L1."""
    return grid_scan(params, ScanGrid.line(l1, dl_min, dl_max, dl_steps), evaluator, workers=1)


def refine_maximum(
    params: OscillationParams,
    seed_point: Tuple[float, float],
    evaluator: Union[Evaluator, str] = Evaluator.EXPANSION,
    *,
    tolerance_km: float = 1e-3,
    max_iterations: int = 2000,
    initial_step_km: float = 5.0,
) -> MaximumReport:
    """Polish a grid maximum with a bounded Nelder-Mead simplex on -C.

    Returns the best point found; if the simplex does not settle within
    ``max_iterations`` the report carries ``refined=False``. The reported C
    is never below the seed's.
    """
    seed = np.asarray(seed_point, dtype=float)
    if seed.shape != (2,) or not np.all(np.isfinite(seed)) or np.any(seed < 0.0):
        raise ParameterError(f"Seed point must be two non-negative lengths, got {seed_point!r}")
    evaluator = Evaluator(evaluator)
    fn = surface_function(evaluator)
    seed_value = evaluate_point(params, seed[0], seed[1], evaluator)

    def objective(x: np.ndarray) -> float:
        return -float(fn(params, x[0], x[1]))

    simplex = np.array([seed, seed + [initial_step_km, 0.0], seed + [0.0, initial_step_km]])
    result = minimize(
        objective,
        seed,
        method="Nelder-Mead",
        bounds=[(0.0, None), (0.0, None)],
        options={
            "xatol": tolerance_km,
            "fatol": _SIMPLEX_FATOL,
            "maxiter": max_iterations,
            "initial_simplex": simplex,
        },
    )
    refined = bool(result.success)
    if not refined:
        logger.warning(
            "Refinement from (%.3f, %.3f) km stopped without converging: %s",
            seed[0],
            seed[1],
            result.message,
        )

    l1_star, dl_star = float(result.x[0]), float(result.x[1])
    c_star = evaluate_point(params, l1_star, dl_star, evaluator)
    if c_star < seed_value:
        l1_star, dl_star, c_star = float(seed[0]), float(seed[1]), seed_value

    logger.info(
        "Refined (%.3f, %.3f) -> (%.4f, %.4f) km, C=%.10f after %d evaluations",
        seed[0],
        seed[1],
        l1_star,
        dl_star,
        c_star,
        result.nfev,
    )
    return MaximumReport(
        l1_star=l1_star,
        dl_star=dl_star,
        c_star=c_star,
        evaluations=int(result.nfev) + 2,
        refined=refined,
    )


def refine_spacing(
    params: OscillationParams,
    l1: float,
    seed_dl: float,
    evaluator: Union[Evaluator, str] = Evaluator.EXPANSION,
    *,
    half_width_km: float = 10.0,
    tolerance_km: float = 1e-3,
    max_iterations: int = 500,
) -> MaximumReport:
    """Bounded one-dimensional refinement of delta L with L1 held fixed."""
    evaluator = Evaluator(evaluator)
    fn = surface_function(evaluator)
    seed_value = evaluate_point(params, l1, seed_dl, evaluator)
    lower = max(0.0, seed_dl - half_width_km)
    upper = seed_dl + half_width_km
    if upper <= lower:
        return MaximumReport(l1_star=float(l1), dl_star=float(seed_dl), c_star=seed_value, evaluations=1, refined=True)

    result = minimize_scalar(
        lambda dl: -float(fn(params, l1, dl)),
        bounds=(lower, upper),
        method="bounded",
        options={"xatol": tolerance_km, "maxiter": max_iterations},
    )
    refined = bool(result.success)
    if not refined:
        logger.warning("Spacing refinement at L1=%.3f km did not converge: %s", l1, result.message)

    dl_star = float(result.x)
    c_star = evaluate_point(params, l1, dl_star, evaluator)
    if c_star < seed_value:
        dl_star, c_star = float(seed_dl), seed_value
    return MaximumReport(
        l1_star=float(l1),
        dl_star=dl_star,
        c_star=c_star,
        evaluations=int(result.nfev) + 2,
        refined=refined,
    )


def locate_maximum(
    params: OscillationParams,
    grid: ScanGrid,
    evaluator: Union[Evaluator, str] = Evaluator.EXPANSION,
    *,
    refine: bool = True,
    workers: Optional[int] = None,
    tolerance_km: float = 1e-3,
    max_iterations: int = 2000,
) -> MaximumReport:
    """Grid scan followed, optionally, by simplex refinement of the grid maximum."""
    surface = grid_scan(params, grid, evaluator, workers=workers)
    l1_seed, dl_seed, _ = surface.best()
    if not refine:
        return MaximumReport(
            l1_star=l1_seed,
            dl_star=dl_seed,
            c_star=evaluate_point(params, l1_seed, dl_seed, evaluator),
            evaluations=surface.size,
            refined=False,
        )
    report = refine_maximum(
        params,
        (l1_seed, dl_seed),
        evaluator,
        tolerance_km=tolerance_km,
        max_iterations=max_iterations,
    )
    return MaximumReport(
        l1_star=report.l1_star,
        dl_star=report.dl_star,
        c_star=report.c_star,
        evaluations=report.evaluations + surface.size,
        refined=report.refined,
    )


def locate_spacing_maximum(
    params: OscillationParams,
    l1: float,
    grid: ScanGrid,
    evaluator: Union[Evaluator, str] = Evaluator.EXPANSION,
    *,
    refine: bool = True,
    tolerance_km: float = 1e-3,
) -> MaximumReport:
    """Best delta L at a fixed L1 over the grid's delta-L axis."""
    line = line_scan(params, l1, grid.dl_min, grid.dl_max, grid.dl_steps, evaluator)
    _, dl_seed, c_seed = line.best()
    if not refine or grid.dl_steps == 1:
        return MaximumReport(l1_star=float(l1), dl_star=dl_seed, c_star=c_seed, evaluations=line.size, refined=False)
    report = refine_spacing(
        params,
        l1,
        dl_seed,
        evaluator,
        half_width_km=grid.dl_step,
        tolerance_km=tolerance_km,
    )
    return MaximumReport(
        l1_star=report.l1_star,
        dl_star=report.dl_star,
        c_star=report.c_star,
        evaluations=report.evaluations + line.size,
        refined=report.refined,
    )


def parameter_sweep(
    params: OscillationParams,
    axis: Union[SweepAxis, str],
    values: Sequence[float],
    grid: Optional[ScanGrid] = None,
    *,
    refine: bool = True,
    evaluator: Union[Evaluator, str] = Evaluator.EXPANSION,
    fixed_l1: Optional[float] = None,
    workers: Optional[int] = None,
    tolerance_km: float = 1e-3,
    max_iterations: int = 2000,
) -> List[SweepPoint]:
    """Re-maximize C for each value of one parameter.

    theta13 and delta_cp values are radians; alpha values go through
    ``alpha_override`` so dm31_sq stays fixed.
    """
    axis = SweepAxis(axis)
    grid = grid or ScanGrid.default()
    points: List[SweepPoint] = []
    for value in values:
        swept = axis.apply(params, value)
        maximum = locate_maximum(
            swept,
            grid,
            evaluator,
            refine=refine,
            workers=workers,
            tolerance_km=tolerance_km,
            max_iterations=max_iterations,
        )
        fixed = None
        if fixed_l1 is not None:
            fixed = locate_spacing_maximum(swept, fixed_l1, grid, evaluator, refine=refine, tolerance_km=tolerance_km)
        logger.info(
            "Sweep %s=%.6g: C*=%.8f at (%.3f, %.3f) km",
            axis.value,
            value,
            maximum.c_star,
            maximum.l1_star,
            maximum.dl_star,
        )
        points.append(SweepPoint(axis=axis, value=float(value), maximum=maximum, fixed_l1=fixed))
    return points
