"""Exception hierarchy shared by all casthermo modules."""


class CasthermoError(Exception):
    """Base class for casthermo failures."""


class NumericalError(CasthermoError):
    """A numerical kernel exhausted its budget or could not converge."""


class IntegrandError(NumericalError):
    """An integrand returned NaN or Inf; carries the offending abscissa."""

    def __init__(self, message, x=None):
        super().__init__(message)
        self.x = x


class ConsistencyError(CasthermoError):
    """Two independent evaluation routes disagreed beyond tolerance."""
