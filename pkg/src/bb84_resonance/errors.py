"""Exception types raised across the package."""


class ResonanceError(Exception):
    """Base class for all errors raised by this package."""


class InvalidDimension(ResonanceError):
    pass


class NotHermitian(ResonanceError):
    pass


class InvalidParams(ResonanceError, ValueError):
    pass


class InvalidState(ResonanceError, ValueError):
    pass


class DegenerateAngle(ResonanceError):
    """Eve's two conditional probe states coincide, so the measurement angle is undefined."""


class DegenerateConditioning(ResonanceError):
    """The denominator of a conditional error probability vanishes."""

    def __init__(self, outcome, signal, denominator):
        self.outcome = outcome
        self.signal = signal
        self.denominator = denominator
        super().__init__(
            f"conditioning probability for outcome {outcome} given signal "
            f"{signal!r} is {denominator:.3e}"
        )


class NoFeasiblePoint(ResonanceError):
    pass
