"""Exception types shared across the engine."""


class CapmouseError(Exception):
    """Base class for all engine errors."""


class ConfigError(CapmouseError, ValueError):
    """An engine configuration value is out of range or inconsistent."""


class PpmParseError(CapmouseError, ValueError):
    """A PPM payload could not be parsed; carries the byte offset of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class StreamError(CapmouseError, ValueError):
    """A raw frame stream violated the record format at a record boundary."""


class SequencingError(CapmouseError, RuntimeError):
    """Frames were fed to a session out of order."""


class ProtocolError(CapmouseError):
    """A service client broke the session protocol; the connection is closed."""

    def __init__(self, code: str, detail: str):
        super().__init__(f"{code}: {detail}")
        self.code = code
        self.detail = detail
