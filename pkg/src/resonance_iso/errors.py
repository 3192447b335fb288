class ResonanceError(Exception):
    """Base class for every error raised by this package."""


class InputError(ResonanceError, ValueError):
    """Malformed or rejected input graph."""


class BadRotation(InputError):
    pass


class NotBipartite(InputError):
    pass


class NotTwoConnected(InputError):
    pass


class NotOuterplane(InputError):
    pass


class OddInnerFace(InputError):
    pass


class SharedEdgeMultiplicity(InputError):
    pass


class InvalidSpec(InputError):
    pass


class CapExceeded(ResonanceError):
    pass


class UsageOnSingleFace(ResonanceError):
    pass


class NoReducibleFace(ResonanceError):
    pass


class NotConvex(ResonanceError):
    pass


class CyclicDigraph(ResonanceError):
    pass


class SearchBudgetExceeded(ResonanceError):
    pass


class InternalInvariantViolation(ResonanceError, AssertionError):
    """A structural property that must hold on accepted inputs failed."""


class ThetaNotTransitive(InternalInvariantViolation):
    pass


class MixedFaceLabels(InternalInvariantViolation):
    pass


class NotATree(InternalInvariantViolation):
    pass


class DisagreementDetected(ResonanceError):
    """The isomorphism deciders gave different answers.

    ``bundle`` holds everything needed to reproduce the run.
    """

    def __init__(self, message: str, bundle: dict | None = None):
        super().__init__(message)
        self.bundle = bundle or {}
