class DomainError(ValueError):
    """Input outside an operation's domain."""


class IntegrityError(ValueError):
    """An artifact does not have the structure it claims (e.g. a non-clique block)."""


class RepairFailure(RuntimeError):
    """A repair loop found a defect it could not fix.

    ``defect`` is the offending pair (or position/distance for cycle powers),
    ``candidates_found`` how many swap partners were available.
    """

    def __init__(self, message, defect=None, candidates_found=0, reason=None):
        super().__init__(message)
        self.defect = defect
        self.candidates_found = candidates_found
        self.reason = reason


class BagCheckFailure(RuntimeError):
    """Post-construction scan found a bag; indicates a bug in the construction."""


class ConditionUnmet(RuntimeError):
    """Guaranteed mode was requested but a degree condition fails."""

    def __init__(self, reports):
        failed = [r for r in reports if not r.holds]
        lines = ", ".join(f"{r.name}: {r.lhs} {r.relation} {r.rhs}" for r in failed)
        super().__init__(f"conditions unmet: {lines}")
        self.reports = reports


class InsufficientRoom(ValueError):
    """The complement of the forbidden graph cannot host the requested degrees."""
