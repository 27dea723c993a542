"""
Seeded random ELECTRE classification instances.
Layers are stacked per criterion so the D-chains hold by construction; the
S-based separability is then checked and resampled if needed.
"""

import os
from typing import List, Optional, Sequence

import numpy as np

from assignment import ClassificationInstance
from boundary_system import Boundary, BoundarySystem, validate_condition2, validate_condition3
from electre_model import ElectreModel, ElectreParameters
from relational_core import PerformanceVector

MAX_ATTEMPTS = 50


def random_parameters(rng: np.random.Generator, m: int) -> ElectreParameters:
    q = rng.uniform(0.0, 0.5, size=m).round(2)
    p = (q + rng.uniform(0.2, 1.5, size=m)).round(2)
    u = (p + rng.uniform(0.0, 1.0, size=m)).round(2)
    v = (u + rng.uniform(0.1, 1.0, size=m)).round(2)
    vetoed = rng.random(m) < 0.7
    weights = rng.dirichlet(np.ones(m))
    weights = weights / weights.sum()
    return ElectreParameters(
        weights=tuple(float(w) for w in weights),
        q=tuple(float(t) for t in q),
        p=tuple(float(t) for t in p),
        u=tuple(float(t) if keep else None for t, keep in zip(u, vetoed)),
        v=tuple(float(t) if keep else None for t, keep in zip(v, vetoed)),
        lam=round(float(rng.uniform(0.6, 0.9)), 2),
    )


def _layers(rng: np.random.Generator, params: ElectreParameters, M: int,
            layer_sizes: Sequence[int], safe: bool) -> BoundarySystem:
    q, p = params.q_array, params.p_array
    base = rng.uniform(0.0, 2.0, size=params.m).round(1)
    boundaries = []
    for k in range(1, M):
        layers = []
        for name in ("U", "L"):
            if k > 1 or name == "L":
                if safe:
                    step = p + q + rng.uniform(0.0, 1.0, size=params.m)
                else:
                    step = rng.uniform(q, p + 2 * q + 1.0)
                base = base + step.round(2)
            size = int(rng.choice(layer_sizes))
            jitter = rng.uniform(0.0, 1.0, size=(size, params.m)) * q
            layers.append([
                PerformanceVector(tuple(float(s) for s in (base + row).round(3)), f"b_{name}{k},{i + 1}")
                for i, row in enumerate(jitter)
            ])
        boundaries.append(Boundary(upper=layers[0], lower=layers[1]))
    return BoundarySystem(tuple(f"C{k}" for k in range(1, M + 1)), tuple(boundaries))


def _seed(seed: Optional[int]) -> int:
    return seed if seed is not None else int(os.getenv("ORDINAL_SEED", "2021"))


def random_instance(seed: Optional[int] = None, M: Optional[int] = None, m: Optional[int] = None,
                    layer_sizes: Sequence[int] = (1, 2, 3)) -> ClassificationInstance:
    """Instance whose boundary system passes Conditions 2 and 3"""
    rng = np.random.default_rng(_seed(seed))
    M = M or int(rng.integers(2, 6))
    m = m or int(rng.integers(3, 6))
    params = random_parameters(rng, m)
    model = ElectreModel(params)

    for attempt in range(MAX_ATTEMPTS + 1):
        system = _layers(rng, params, M, layer_sizes, safe=attempt == MAX_ATTEMPTS)
        if validate_condition2(system, model).is_valid and validate_condition3(system, model).is_valid:
            break
    else:
        raise RuntimeError("random boundary system failed validation after the safe layout")

    return ClassificationInstance(
        model=model,
        system=system,
        criterion_names=tuple(f"g{j + 1}" for j in range(m)),
        directions=("max",) * m,
    )


def random_actions(system: BoundarySystem, n: int, seed: Optional[int] = None,
                   margin: float = 1.0) -> List[PerformanceVector]:
    """Real actions drawn inside the envelope of the limiting actions, widened by margin"""
    rng = np.random.default_rng(_seed(seed))
    scores = np.asarray([a.scores for a in system.all_actions()], dtype=float)
    low = scores.min(axis=0) - margin
    high = scores.max(axis=0) + margin
    points = rng.uniform(low, high, size=(n, scores.shape[1])).round(2)
    return [PerformanceVector(tuple(float(s) for s in row), f"r{i + 1}") for i, row in enumerate(points)]
