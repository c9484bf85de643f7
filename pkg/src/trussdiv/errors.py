"""Exception types shared across the library and the CLI."""


class TrussdivError(Exception):
    """Base class for errors raised by this package."""


class GraphLoadError(TrussdivError):
    """Input file is missing, unreadable, or malformed."""


class MemoryCapExceeded(TrussdivError):
    """Materializing all ego-networks would exceed the configured cap."""

    def __init__(self, needed_mb: float, cap_mb: float):
        super().__init__(
            f"ego materialization too large: needs ~{needed_mb:.0f} MB, "
            f"cap is {cap_mb:.0f} MB (raise TRUSSDIV_MEM_CAP_MB to override)"
        )
        self.needed_mb = needed_mb
        self.cap_mb = cap_mb


class IndexFormatError(TrussdivError):
    """Serialized index file does not match the expected container schema."""
