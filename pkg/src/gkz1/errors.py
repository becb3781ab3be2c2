"""Exception hierarchy shared by the whole package.

Construction-time errors (bad configurations, bad parameters) are distinct
from hypothesis violations (valid data outside the regime a construction
supports) and from internal invariant failures, because the CLI maps them to
different exit codes.
"""


class GkzError(Exception):
    """Base class for all library errors."""


class InputError(GkzError):
    """Malformed user input (bad file, unparsable rational, wrong shape)."""


# -- configuration construction -------------------------------------------

class KernelRankNotOne(GkzError):
    """The integer kernel of the point matrix does not have rank one."""


class DependentSubset(GkzError):
    """Some subset of n-1 columns is linearly dependent."""

    def __init__(self, omitted: int):
        self.omitted = omitted
        super().__init__(
            f"columns excluding index {omitted} are linearly dependent"
        )


class ZeroRelationEntry(GkzError):
    """Defensive: a relation entry vanished (cannot occur for valid input)."""


class IndexOutOfRange(GkzError):
    """A facet-functional index pair is not of the positive/negative form."""


class BetaNotInSpan(GkzError):
    """The parameter vector is not a rational combination of the columns."""


class NotInLattice(GkzError):
    """A shift vector u is not an integer combination of the columns."""


# -- hypothesis violations --------------------------------------------------

class NotNonresonant(GkzError):
    """An operation requiring a nonresonant parameter got a resonant one."""

    def __init__(self, witness=None):
        self.witness = witness
        msg = "parameter is resonant"
        if witness is not None:
            i, j, value = witness
            msg += f" (facet pair ({i},{j}) evaluates to integer {value})"
        super().__init__(msg)


class IrregularSingularity(GkzError):
    """x0 = 0 is an irregular singularity; the classification is undefined."""


class NotMinimalSupport(GkzError):
    """The exponent fails minimal negative support for the required index set."""

    def __init__(self, indices, lift):
        self.indices = frozenset(indices)
        self.lift = tuple(lift)
        super().__init__(
            f"no minimal negative support on I={sorted(self.indices)}"
        )


class HypothesisViolated(GkzError):
    """A log-solution hypothesis fails for at least one index set."""

    def __init__(self, failing_sets):
        self.failing_sets = tuple(frozenset(s) for s in failing_sets)
        shown = ", ".join(str(sorted(s)) for s in self.failing_sets)
        super().__init__(f"minimal-support hypothesis fails for I in: {shown}")


class RNotLessThanMultiplicity(GkzError):
    """Requested log degree r is not below the exponent multiplicity."""


class SigmaIntegral(GkzError):
    """The two-solution Gauss oracle needs a nonintegral third parameter."""


# -- coefficient domain ------------------------------------------------------

class ExcludedCase(GkzError):
    """M_{l,s}(v) requested in the regime where the closed form is invalid.

    Reaching this always indicates a precondition bug in the caller.
    """

    def __init__(self, l: int, s: int, v):
        super().__init__(f"M_({l},{s})({v}) has no closed form here")


class DegreeTooLarge(GkzError):
    """Elementary symmetric polynomial degree exceeds the variable count."""


# -- internal invariant failures ---------------------------------------------

class InternalInvariantError(GkzError):
    """A mathematically guaranteed identity failed: implementation bug."""


class CountMismatch(InternalInvariantError):
    """The multiplicity tally does not match the relation-coefficient sum."""


class MismatchDetected(InternalInvariantError):
    """Two series that must agree coefficientwise differ."""

    def __init__(self, z, lhs, rhs):
        self.z = z
        super().__init__(f"series disagree at z={z}: {lhs} != {rhs}")
