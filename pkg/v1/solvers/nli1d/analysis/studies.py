"""
Convergence studies.

1. delta_study: error against the local solution while both horizons halve at fixed h
2. h_study: error against a fine-mesh nonlocal solution while h halves at fixed horizons
3. jump_study: interface jump under h-refinement or horizon refinement
4. operator_limit_study: |L_δ u − κΔu| at one point while δ halves

Rows are independent solves. With workers > 1 they run in a process pool; the report
always lists them by decreasing parameter.
"""

import functools
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from nli1d.shared_libraries.error_handling import ConfigurationError, NLIError
from nli1d.shared_libraries.error_middleware import create_error_response
from nli1d.shared_libraries.logging_config import get_logger, log_function_call
from nli1d.shared_libraries.types import JumpMode, RunConfig, StudyKind, StudyReport, StudyRow
from nli1d.analysis.norms import jump_magnitude, l2_difference, l2_error, observed_orders
from nli1d.analysis.operators import as_point, local_limit_amplitude, nonlocal_operator_apply
from nli1d.discretization.geometry import commensurate_count
from nli1d.local_reference import local_exact
from nli1d.pipeline import NonlocalSolution, solve_config

logger = get_logger(__name__)

RowResult = Tuple[Optional[float], Optional[dict]]


# --- Row evaluations (module level so a process pool can pickle them) ---

def _delta_error(config: RunConfig) -> float:
    solution = solve_config(config)
    reference = local_exact(config.material(), config.source(), config.a, config.x_gamma, config.b)
    return l2_error(solution, solution.mesh, reference)


def _jump(config: RunConfig) -> float:
    return jump_magnitude(solve_config(config))


def _h_error(fine: NonlocalSolution, config: RunConfig) -> float:
    return l2_difference(solve_config(config), fine)


def _guarded(evaluate: Callable[[RunConfig], float], keep_going: bool, config: RunConfig) -> RowResult:
    try:
        return evaluate(config), None
    except NLIError as e:
        if not keep_going:
            raise
        logger.warning(f"Row failed and was skipped: {type(e).__name__}: {e}")
        return None, create_error_response(e, include_details=True)


def _run_rows(evaluate: Callable[[RunConfig], float], configs: Sequence[RunConfig],
              workers: int, keep_going: bool) -> List[RowResult]:
    task = functools.partial(_guarded, evaluate, keep_going)
    if workers > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(task, configs))
    return [task(config) for config in configs]


def _build_report(kind: StudyKind, config: RunConfig, fixed: dict,
                  params: Sequence[Tuple[float, Optional[float]]], results: Sequence[RowResult]) -> StudyReport:
    quantities = [quantity for quantity, _ in results]
    orders = observed_orders(quantities)
    rows = [
        StudyRow(param1=p1, param2=p2, quantity=quantity, order=order, error=error)
        for (p1, p2), (quantity, error), order in zip(params, results, orders)
    ]
    return StudyReport(kind=kind, kernel=config.kernel, config=config.model_dump(mode="json"), fixed=fixed, rows=rows)


def _descending_pairs(pairs: Iterable[Tuple[float, float]]) -> List[Tuple[float, float]]:
    ordered = sorted({(float(d1), float(d2)) for d1, d2 in pairs}, key=lambda pair: pair[0], reverse=True)
    if not ordered:
        raise ConfigurationError("sweep list is empty", user_message="The sweep list must not be empty.")
    if len({d1 for d1, _ in ordered}) != len(ordered):
        raise ConfigurationError(f"sweep pairs repeat a delta1 value: {ordered}")
    return ordered


def _descending_values(values: Iterable[float]) -> List[float]:
    ordered = sorted({float(v) for v in values}, reverse=True)
    if not ordered:
        raise ConfigurationError("sweep list is empty", user_message="The sweep list must not be empty.")
    return ordered


# --- Studies ---

@log_function_call()
def delta_study(config: RunConfig, pairs: Iterable[Tuple[float, float]],
                workers: int = 1, keep_going: bool = False) -> StudyReport:
    """‖u_h − u_L‖ for each (δ₁, δ₂) at the configuration's h."""
    ordered = _descending_pairs(pairs)
    study_logger = get_logger(__name__, study=StudyKind.DELTA.value, kernel=config.kernel.value)
    study_logger.info(f"delta study: {len(ordered)} rows at h={config.h!r}")

    configs = [config.model_copy(update={"delta1": d1, "delta2": d2}) for d1, d2 in ordered]
    results = _run_rows(_delta_error, configs, workers, keep_going)
    return _build_report(StudyKind.DELTA, config, {"h": config.h}, ordered, results)


@log_function_call()
def h_study(config: RunConfig, hs: Iterable[float], h_fine: Optional[float] = None,
            workers: int = 1, keep_going: bool = False) -> StudyReport:
    """‖u_h − u_{h_fine}‖ for each h at the configuration's horizons."""
    h_fine = config.h_fine if h_fine is None else h_fine
    ordered = _descending_values(hs)
    for h in ordered:
        if h < h_fine:
            raise ConfigurationError(f"h={h!r} is finer than the reference mesh h_fine={h_fine!r}")
        commensurate_count(h, h_fine, "h/h_fine")

    study_logger = get_logger(__name__, study=StudyKind.H.value, kernel=config.kernel.value)
    study_logger.info(f"h study: {len(ordered)} rows against h_fine={h_fine!r}")

    fine = solve_config(config.model_copy(update={"h": h_fine}))
    coarse = [h for h in ordered if h != h_fine]
    configs = [config.model_copy(update={"h": h}) for h in coarse]
    computed = iter(_run_rows(functools.partial(_h_error, fine), configs, workers, keep_going))
    results = [(0.0, None) if h == h_fine else next(computed) for h in ordered]

    params = [(h, None) for h in ordered]
    fixed = {"delta1": config.delta1, "delta2": config.delta2, "h_fine": h_fine}
    return _build_report(StudyKind.H, config, fixed, params, results)


@log_function_call()
def jump_study(mode: JumpMode, config: RunConfig, sweep: Iterable, workers: int = 1,
               keep_going: bool = False) -> StudyReport:
    """
    Jump at the double node.

    FIXED_DELTA_VARY_H sweeps mesh sizes (the jump saturates); FIXED_H_VARY_DELTA sweeps
    (δ₁, δ₂) pairs (the jump decays at first order).
    """
    mode = JumpMode(mode)
    if mode == JumpMode.FIXED_DELTA_VARY_H:
        kind = StudyKind.JUMP_H
        values = _descending_values(sweep)
        params = [(h, None) for h in values]
        configs = [config.model_copy(update={"h": h}) for h in values]
        fixed = {"delta1": config.delta1, "delta2": config.delta2}
    else:
        kind = StudyKind.JUMP_DELTA
        params = _descending_pairs(sweep)
        configs = [config.model_copy(update={"delta1": d1, "delta2": d2}) for d1, d2 in params]
        fixed = {"h": config.h}

    study_logger = get_logger(__name__, study=kind.value, kernel=config.kernel.value)
    study_logger.info(f"jump study ({mode.value}): {len(params)} rows")
    results = _run_rows(_jump, configs, workers, keep_going)
    return _build_report(kind, config, fixed, params, results)


def operator_limit_study(u: Callable, laplacian: Callable, x, kappa: float,
                         deltas: Iterable[float], dim: int) -> StudyReport:
    """|L_δ u(x) − κΔu(x)| with the local-limit amplitude for each δ, largest δ first."""
    ordered = _descending_values(deltas)
    target = kappa * float(laplacian(*as_point(x, dim)))
    quantities = [
        abs(nonlocal_operator_apply(u, x, local_limit_amplitude(kappa, delta, dim), delta, dim) - target)
        for delta in ordered
    ]
    rows = [
        StudyRow(param1=delta, quantity=quantity, order=order)
        for delta, quantity, order in zip(ordered, quantities, observed_orders(quantities))
    ]
    return StudyReport(kind=StudyKind.OPERATOR_LIMIT, fixed={"kappa": kappa, "dim": float(dim)}, rows=rows)

