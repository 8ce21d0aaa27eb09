"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class SepcanonError(Exception):
    """Base class for all library errors."""


class MalformedInput(SepcanonError, ValueError):
    """Input data does not describe a valid curve, oracle or azimuth file."""


class UnknownEdge(MalformedInput, KeyError):
    pass


class InadmissibleCurve(SepcanonError):
    """The curve violates an analysis precondition (connectivity, stability, genus)."""


class DisconnectedCurve(InadmissibleCurve):
    pass


class UnstableCurve(InadmissibleCurve):
    pass


class GenusTooLow(InadmissibleCurve):
    pass


class NotTwoInseparable(SepcanonError, ValueError):
    pass


class NotABisep(SepcanonError, ValueError):
    pass


class NotAPolyseparator(SepcanonError, ValueError):
    pass


class SeparableCurve(SepcanonError, ValueError):
    pass


class IncompleteOracle(SepcanonError):
    """Raised when moduli facts needed by a computation are missing.

    ``missing`` lists the keys in the ``section[key].field`` notation used by
    ``analyze`` manifests, sorted.
    """

    def __init__(self, missing):
        self.missing = sorted(set(missing))
        super().__init__("incomplete oracle, missing: " + ", ".join(self.missing))


class OracleConflict(MalformedInput):
    """Oracle entries contradict facts that follow from the dual graph."""


class InvariantViolation(SepcanonError, AssertionError):
    """A structure lemma failed at runtime. Always a bug."""


class DegenerateSystem(InvariantViolation):
    pass


class AzimuthError(SepcanonError, ValueError):
    pass


class IncompatibleSingular(AzimuthError):
    pass


class UnderDetermined(AzimuthError):
    pass


class BothSingular(AzimuthError):
    pass


class InconsistentSingular(AzimuthError):
    pass


class NonRegularAzimuth(AzimuthError):
    pass
