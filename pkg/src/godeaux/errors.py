"""Exception types shared across the package."""


class GodeauxError(Exception):
    """Base class for all package errors."""


class DegreeError(GodeauxError):
    """Shape or degree bookkeeping mismatch between graded objects."""


class ZeroFormError(GodeauxError):
    """A zero polynomial was passed where a nonzero form is required."""


class DerivationError(GodeauxError):
    """The symbolic derivation produced something structurally unexpected."""


class SkewError(GodeauxError):
    """A matrix that must be skew-symmetric is not."""


class StiefelError(GodeauxError):
    """A line representative does not have rank 2."""


class SamplingError(GodeauxError):
    """Random point or line sampling ran out of attempts."""


class ParamError(GodeauxError):
    """Parameters of a family lie in its indeterminacy locus."""


class AssemblyError(GodeauxError):
    """No admissible first row of d1 could be recovered."""


class DegenerateLineError(GodeauxError):
    """The e-block has rank at most 2 along the whole line."""


class SingularityError(GodeauxError):
    """A line meets the singular locus of Q."""


class ConfigError(GodeauxError):
    """Invalid configuration or artifact contents."""
