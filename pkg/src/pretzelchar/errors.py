"""Exception hierarchy shared by all modules."""


class PretzelError(Exception):
    """Base class for domain errors raised by this package."""


class ZeroResultantError(PretzelError):
    """A resultant vanished identically during elimination."""

    def __init__(self, message, stage=None, pair=None):
        super().__init__(message)
        self.stage = stage
        self.pair = pair


class RootFindingError(PretzelError):
    """Simultaneous iteration did not converge; ``partial`` holds the last iterate."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class InadmissibleTraceError(PretzelError):
    pass


class ReconstructionError(PretzelError):
    pass


class SamplingError(PretzelError):
    pass


class SizeEnvelopeError(PretzelError):
    pass
