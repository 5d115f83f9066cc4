"""Exception taxonomy shared by all modules.

Empty result sets are never signalled through exceptions: an empty
polyhedron or an empty coderivative set is a meaningful mathematical
answer.  Exceptions mark situations where a requested computation is
not justified (missing hypothesis, bad input, unsupported data kind).
"""


class VopsensError(Exception):
    """Base class for all library errors."""


# --- geometry ---------------------------------------------------------------

class PointNotInSet(VopsensError):
    """A tangent/normal cone was requested at a point outside the set."""


class ConeDegenerate(VopsensError):
    """An ordering cone violates a structural requirement (e.g. pointedness)."""


class ConeNotSolid(VopsensError):
    """Weak efficiency was requested for a cone with empty interior."""


# --- problems and parsing ----------------------------------------------------

class SchemaError(VopsensError):
    """A problem document does not conform to the schema.

    ``path`` points at the offending field, e.g. ``objective.x_coef[1]``.
    """

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


class DimensionMismatch(VopsensError):
    """Matrix/vector shapes in a problem are inconsistent."""


class UnsupportedConstraintKind(VopsensError):
    """The operation requires affine (or reduced semi-infinite) constraints."""


class InfeasiblePoint(VopsensError):
    """A proposed base point violates the constraints."""


class NotEfficient(VopsensError):
    """A proposed base point is not efficient; carries a dominating witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# --- efficiency and frontier sampling ----------------------------------------

class EmptyCloud(VopsensError):
    """An efficiency query was made on an empty point cloud."""


class Infeasible(VopsensError):
    """The feasible set is empty at the given parameter."""

    def __init__(self, parameter, message="feasible set is empty"):
        super().__init__(f"{message} at parameter {parameter!r}")
        self.parameter = parameter


class UnboundedScalarization(VopsensError):
    """A weighted-sum objective is unbounded below on the feasible set."""

    def __init__(self, weight):
        super().__init__(f"scalarization unbounded below for weight {weight!r}")
        self.weight = weight


# --- coderivative engine ------------------------------------------------------

class QualificationFailed(VopsensError):
    """The closed-subspace qualification conditions do not hold."""

    def __init__(self, report):
        super().__init__("qualification conditions failed")
        self.report = report


class DominationNotCertified(VopsensError):
    """No (passing) domination certificate is available for the variant."""


class MissingTildeCone(VopsensError):
    """The weak variant needs an auxiliary cone inside the order cone interior."""


class BasePointNotOnGraph(VopsensError):
    """A coderivative was requested at a pair outside the map's graph."""


class NoIntermediatePoint(VopsensError):
    """Chain rule: the intermediate set H(x) ∩ L^{-1}(z) is empty."""


class NoFeasibleSplit(VopsensError):
    """Sum rule: the base value admits no split across the two maps."""


class SubspaceConditionFailed(VopsensError):
    """Sum rule: the cone hull of the domain difference is not a subspace."""


# --- constraint calculus -------------------------------------------------------

class ACQRequired(VopsensError):
    """Multiplier descriptions need the Abadie constraint qualification."""


class BCQRequired(VopsensError):
    """The semi-infinite formula needs the basic constraint qualification."""
