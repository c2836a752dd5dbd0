"""Exception types shared across the toolkit."""


class BjbiError(Exception):
    """Base class for all toolkit errors."""


class LightlikeVector(BjbiError):
    """Normalization of a (numerically) lightlike vector was requested."""


class InvalidStrip(BjbiError):
    """Björling data violating a strip invariant; carries the full report."""

    def __init__(self, report):
        self.report = report
        failed = ", ".join(c.name for c in report.checks if not c.passed)
        super().__init__(f"strip validation failed: {failed}")


class ParseError(BjbiError):
    """Malformed input file."""


class NotConstantSpeed(BjbiError):
    pass


class InflectionPoint(BjbiError):
    pass


class EmptyRestriction(BjbiError):
    pass


class DegenerateEverywhere(BjbiError):
    pass


class DegeneratePoint(BjbiError):
    pass


class DegenerateGenerator(BjbiError):
    pass


class NotInjective(BjbiError):
    """Plane projection collides; carries one offending node pair."""

    def __init__(self, msg, pair=None):
        self.pair = pair
        super().__init__(msg)


class InsufficientCoverage(BjbiError):
    pass
