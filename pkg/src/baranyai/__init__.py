"""Constructions of families of (k, l)-parpartitions that avoid (alpha, beta)-closeness."""

from baranyai.errors import (
    BagCheckFailure,
    ConditionUnmet,
    DomainError,
    InsufficientRoom,
    IntegrityError,
    RepairFailure,
)
from baranyai.graph import Graph, TripleGraphSystem

__all__ = [
    "BagCheckFailure",
    "ConditionUnmet",
    "DomainError",
    "Graph",
    "InsufficientRoom",
    "IntegrityError",
    "RepairFailure",
    "TripleGraphSystem",
]
