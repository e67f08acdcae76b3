"""Closed-form complexity values for the graph families with a known Krylov structure.

These are the reference values the numerical pipeline is tested against and
the reference curves drawn next to optimizer results.
"""
import math
from typing import Iterable, List, NamedTuple, Union

import numpy as np

from app.core.errors import InfeasibleParametersError
from app.schemas.family import FamilyPrediction, GraphFamily
from app.services.graphs import glued_tree_dimension, hub_k_regular_feasible

MAX_FIT_SLOPE = 0.66
MAX_FIT_INTERCEPT = -1.31


class HubEigenpair(NamedTuple):
    a_plus: float
    lambda_plus: float
    a_minus: float
    lambda_minus: float


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InfeasibleParametersError(message)


def _param(params: dict, name: str) -> int:
    if name not in params:
        raise InfeasibleParametersError(f"missing family parameter {name!r}")
    return int(params[name])


def hub_eigenpair(dimension: int, k: int) -> HubEigenpair:
    """The two eigenpairs of a hub + k-regular graph of the form a|v0> + sum_i |vi>."""
    _require(0 <= k <= dimension - 2, f"need 0 <= k <= D-2, got D={dimension}, k={k}")
    root = math.sqrt(4 * (dimension - 1) + k * k) / 2
    return HubEigenpair(
        a_plus=-k / 2 + root,
        lambda_plus=k / 2 + root,
        a_minus=-k / 2 - root,
        lambda_minus=k / 2 - root,
    )


def hub_complexity_at_time(dimension: int, k: int, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    pair = hub_eigenpair(dimension, k)
    amplitude = (4 * dimension - 4) / (4 * dimension - 4 + k * k)
    return amplitude * np.sin((pair.lambda_plus - pair.lambda_minus) * np.asarray(t) / 2) ** 2


def hub_cbar(dimension: int, k: int) -> float:
    return 2 * (dimension - 1) / (4 * dimension - 4 + k * k)


def path_kappa(dimension: int) -> List[float]:
    """Krylov occupations of a path graph seeded at one end."""
    if dimension == 1:
        return [1.0]
    ends = 3 / (2 * dimension + 2)
    return [ends] + [1 / (dimension + 1)] * (dimension - 2) + [ends]


def empirical_max_fit(dimension: float) -> float:
    """Linear fit to the largest observed C-bar; a reference line, not a bound."""
    return MAX_FIT_SLOPE * dimension + MAX_FIT_INTERCEPT


def complete_cbar(dimension: int) -> float:
    """Smallest C-bar over connected graphs on D vertices (the complete graph)."""
    return 0.0 if dimension == 1 else 2 * (dimension - 1) / dimension ** 2


def cbar_closed_form(family: Union[GraphFamily, str], **params: int) -> FamilyPrediction:
    family = GraphFamily.parse(family) if isinstance(family, str) else family

    if family is GraphFamily.HUB_K_REGULAR:
        D, k = _param(params, "D"), _param(params, "k")
        _require(hub_k_regular_feasible(D, k), f"no hub + {k}-regular graph on D={D}")
        value = hub_cbar(D, k)
        return FamilyPrediction(
            family=family, parameters={"D": D, "k": k}, dimension=D,
            cbar=value, krylov_dim=2, kappa=[1 - value, value],
        )

    if family is GraphFamily.STAR:
        D = _param(params, "D")
        _require(D >= 2, f"star graph needs D >= 2, got {D}")
        return FamilyPrediction(
            family=family, parameters={"D": D}, dimension=D, cbar=0.5, krylov_dim=2, kappa=[0.5, 0.5],
        )

    if family is GraphFamily.COMPLETE:
        D = _param(params, "D")
        _require(D >= 1, f"complete graph needs D >= 1, got {D}")
        value = complete_cbar(D)
        return FamilyPrediction(
            family=family, parameters={"D": D}, dimension=D, cbar=value,
            krylov_dim=1 if D == 1 else 2, kappa=[1.0] if D == 1 else [1 - value, value],
        )

    if family is GraphFamily.PATH:
        D = _param(params, "D")
        _require(D >= 1, f"path graph needs D >= 1, got {D}")
        return FamilyPrediction(
            family=family, parameters={"D": D}, dimension=D,
            cbar=(D - 1) / 2, krylov_dim=D, kappa=path_kappa(D),
        )

    if family is GraphFamily.M_ARY_TREE:
        m, h = _param(params, "m"), _param(params, "h")
        _require(m >= 2 and h >= 1, f"m-ary tree needs m >= 2 and h >= 1, got m={m}, h={h}")
        D = (m ** h - 1) // (m - 1)
        # a tree is a path in its Krylov basis, one vector per level
        return FamilyPrediction(
            family=family, parameters={"m": m, "h": h}, dimension=D,
            cbar=(h - 1) / 2, krylov_dim=h, kappa=path_kappa(h),
            asymptotic_cbar=0.5 * math.log(D) / math.log(m),
        )

    if family is GraphFamily.GLUED_TREE:
        n = _param(params, "n")
        _require(n >= 1, f"glued tree needs n >= 1, got {n}")
        return FamilyPrediction(
            family=family, parameters={"n": n}, dimension=glued_tree_dimension(n),
            cbar=float(n), krylov_dim=2 * n + 1, kappa=path_kappa(2 * n + 1),
        )

    raise ValueError(f"unknown graph family {family!r}")


def reference_rows(dimensions: Iterable[int]) -> List[dict]:
    """Reference curves for C-bar against D: complete (lower edge), star, path, max fit."""
    rows = []
    for D in dimensions:
        rows.append({
            "D": D,
            "complete": complete_cbar(D),
            "star": 0.5 if D >= 2 else 0.0,
            "path": (D - 1) / 2,
            "binary_tree": 0.5 * math.log2(D + 1) - 0.5,
            "max_fit": empirical_max_fit(D),
        })
    return rows
