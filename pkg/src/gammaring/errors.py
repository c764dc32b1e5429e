class GammaRingError(Exception):
    pass


class ParseError(GammaRingError, ValueError):
    """Malformed structure or fuzzy-subset document."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class CarrierMismatch(GammaRingError, ValueError):
    pass


class CapExceeded(GammaRingError):
    """A search or closure grew past its configured limit."""
