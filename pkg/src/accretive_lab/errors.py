"""Exception taxonomy shared by every module in the package.

Each error names the contract it guards; call sites raise these rather than
letting numpy errors leak through, so the CLI can map failures to exit codes.
"""


class AccretiveLabError(Exception):
    """Base class for all package-specific errors."""


class NotSquare(AccretiveLabError):
    """A matrix argument is not square."""


class DimensionMismatch(AccretiveLabError):
    """Two matrix arguments have incompatible dimensions."""


class NonFiniteEntries(AccretiveLabError):
    """A matrix argument contains NaN or Inf entries."""


class NotHermitian(AccretiveLabError):
    """An argument required to be Hermitian fails the norm test."""


class NotAccretive(AccretiveLabError):
    """An argument required to have positive-semidefinite Hermitian part."""


class ZeroMatrix(AccretiveLabError):
    """An argument required to be nonzero is numerically zero."""


class NegativeAxisIntrusion(AccretiveLabError):
    """The numerical range meets the strictly negative real axis."""


class SpectrumOnCut(AccretiveLabError):
    """The spectrum touches the closed negative real axis (log branch cut)."""


class SingularResolvent(AccretiveLabError):
    """1 + t*a is numerically singular; the transform is undefined."""


class SeriesNotApplicable(AccretiveLabError):
    """The series algorithm was requested outside its admissible set."""


class NonConvergence(AccretiveLabError):
    """A truncated series cannot meet its tail bound within the term cap."""


class NotAContraction(AccretiveLabError):
    """An argument required to have operator norm at most one."""


class NotCommuting(AccretiveLabError):
    """Two arguments required to commute do not."""


class NormBoundExceeded(AccretiveLabError):
    """A composition factor exceeds the unit sup-norm bound."""


class DomainNotFull(AccretiveLabError):
    """A map operation requires the domain to span the full matrix algebra."""


class NotCP(AccretiveLabError):
    """A factorization requires a completely positive map."""


class IllDefinedExtension(AccretiveLabError):
    """The symmetric extension is inconsistent on the selfadjoint part."""


class UnknownProperty(AccretiveLabError):
    """A property id outside the catalogue was requested."""


class InputParseError(AccretiveLabError):
    """An interchange file or blob does not match its schema."""
