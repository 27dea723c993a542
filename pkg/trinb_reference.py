"""
ELECTRE TRI-nB and TRI-B reference routines.
Coded directly from the single-layer rules; only an outranking test is used.
"""

from typing import Callable, Sequence

from relational_core import PerformanceVector

Outranks = Callable[[PerformanceVector, PerformanceVector], bool]
Profiles = Sequence[Sequence[PerformanceVector]]


def _strictly(outranks: Outranks, a: PerformanceVector, b: PerformanceVector) -> bool:
    return outranks(a, b) and not outranks(b, a)


def trinb_pseudo_conjunctive(outranks: Outranks, x: PerformanceVector, profiles: Profiles) -> int:
    """profiles[k-1] is B_k; returns a class index in 1..len(profiles)+1"""
    for k in range(len(profiles), 0, -1):
        layer = profiles[k - 1]
        if any(outranks(x, b) for b in layer) and not any(_strictly(outranks, b, x) for b in layer):
            return k + 1
    return 1


def trinb_pseudo_disjunctive(outranks: Outranks, x: PerformanceVector, profiles: Profiles) -> int:
    for k, layer in enumerate(profiles, start=1):
        if any(_strictly(outranks, b, x) for b in layer) and not any(_strictly(outranks, x, b) for b in layer):
            return k
    return len(profiles) + 1


def trib_pessimistic(outranks: Outranks, x: PerformanceVector, profiles: Sequence[PerformanceVector]) -> int:
    for k in range(len(profiles), 0, -1):
        if outranks(x, profiles[k - 1]):
            return k + 1
    return 1


def trib_optimistic(outranks: Outranks, x: PerformanceVector, profiles: Sequence[PerformanceVector]) -> int:
    for k, b in enumerate(profiles, start=1):
        if outranks(b, x) and not outranks(x, b):
            return k
    return len(profiles) + 1
