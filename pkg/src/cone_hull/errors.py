"""Exception taxonomy shared by all modules.

The CLI maps these onto exit codes: precondition/schema problems exit 2,
enumeration budget overruns exit 3, anything else exits 1.
"""


class ConeHullError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(ConeHullError):
    pass


class EmptyInterior(ConeHullError):
    """The operation needs a full-dimensional input polytope."""


class IdenticalPoints(ConeHullError):
    pass


class ZeroCoordinate(ConeHullError):
    """A point was expected to have all coordinates nonzero."""


class EmptyKernel(ConeHullError):
    """Fiber parameterization requested for a full-dimensional exponent set."""


class BetaInCone(ConeHullError):
    """No escape direction exists: the exponent already lies in the cone."""


class NoFullSupportPiece(ConeHullError):
    """The Reinhardt body has no piece meeting the open torus (C*)^n."""


class PreconditionViolated(ConeHullError):
    """A mathematical hypothesis of the requested operation fails.

    ``clause`` names the violated hypothesis so the CLI can report it.
    """

    def __init__(self, clause: str):
        super().__init__(clause)
        self.clause = clause


class BudgetExceeded(ConeHullError):
    """An enumeration would exceed the configured candidate budget."""


class DivergentOnSample(ConeHullError):
    """A series evaluation overflowed: the sample lies outside the domain
    of convergence (or too close to its boundary)."""


class SchemaError(ConeHullError):
    """Input JSON failed validation; message contains the offending path."""
